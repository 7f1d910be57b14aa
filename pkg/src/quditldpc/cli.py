"""Command-line entry point: ``quditldpc <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 timeout.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__
from .bb import BBSpec, build_bb, check_coprime_flag
from .channel import ExperimentRecord, fit_csv, fit_heuristic, run_experiment
from .distance import EXACT, css_distance
from .gf import parse_field
from .hgp import LacrossSpec, build_lacross
from .search import SearchConfig, code_from_definition, search
from .shyps import TooLarge, weights_table

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_TIMEOUT = 0, 1, 2, 3


class GoldenMismatch(Exception):
    def __init__(self, rows):
        super().__init__(f"{len(rows)} golden row(s) differ: {rows}")
        self.rows = rows


class UsageError(Exception):
    pass


def load_golden(path: str | None = None) -> dict:
    if path:
        return json.loads(Path(path).read_text())
    return json.loads(resources.files("quditldpc").joinpath("data/golden.json").read_text())


def bundled_synthetic() -> ExperimentRecord:
    text = resources.files("quditldpc").joinpath("data/synthetic_fit.json").read_text()
    return ExperimentRecord.from_dict(json.loads(text))


def parse_grid(text: str) -> list[float]:
    """'lo:hi:count' or a comma list."""
    if ":" in text:
        lo, hi, cnt = text.split(":")
        return [float(x) for x in np.linspace(float(lo), float(hi), int(cnt))]
    return [float(x) for x in text.split(",") if x]


def envelope(field: str, inputs: dict, results, t0: float) -> dict:
    return {
        "tool_version": __version__,
        "field": field,
        "inputs": inputs,
        "results": results,
        "timing": {"seconds": round(time.perf_counter() - t0, 4)},
    }


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _emit(obj, out: str | None = None):
    text = json.dumps(obj, indent=1, default=_jsonable)
    if out:
        Path(out).write_text(text + "\n")
    print(text)


def _jsonable(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(type(x))


def _dist_dict(res) -> dict:
    d = res.to_dict()
    d.pop("witness", None)
    return d


# subcommands


def cmd_build(a) -> int:
    t0 = time.perf_counter()
    F = parse_field(a.field)
    if a.family == "bb":
        if not (a.l and a.m and a.A and a.B):
            raise UsageError("bb needs --l --m --A --B")
        coeffs = [int(c) for c in a.coeffs.split(",")] if a.coeffs else None
        spec = BBSpec.from_strings(F, a.l, a.m, a.A, a.B, coeffs)
        d, code = spec.to_dict(), build_bb(spec)
    else:
        if not (a.n_c and a.k and a.alphas):
            raise UsageError("lacross needs --n-c --k --alphas")
        al = tuple(int(x) % F.q for x in a.alphas.split(","))
        spec = LacrossSpec(F, a.n_c, a.k, al, a.boundary)
        d, code = spec.to_dict(), build_lacross(spec)
    if a.out:
        Path(a.out).write_text(json.dumps(d) + "\n")
    _emit(envelope(F.descriptor, {"definition": d}, {"n": code.n, "k": code.k}, t0))
    return EXIT_OK


def cmd_params(a) -> int:
    t0 = time.perf_counter()
    d = _read_json(a.code)
    code = code_from_definition(d)
    wx, wz = code.row_weights()
    res = {"n": code.n, "k": code.k, "max_row_weight": int(max(wx.max(), wz.max()))}
    _emit(envelope(code.F.descriptor, {"code": d}, res, t0))
    return EXIT_OK


def cmd_distance(a) -> int:
    t0 = time.perf_counter()
    d = _read_json(a.code)
    code = code_from_definition(d)
    dx, dz = css_distance(code, a.budget, a.cap, a.seed, a.threads, lex_min=a.lex_min)
    exact = dx.status == EXACT and dz.status == EXACT
    res = {
        "n": code.n,
        "k": code.k,
        "d_X": _dist_dict(dx),
        "d_Z": _dist_dict(dz),
        "d": min(dx.weight, dz.weight) if exact else None,
    }
    inputs = {"code": d, "seed": a.seed, "budget": a.budget, "cap": a.cap}
    _emit(envelope(code.F.descriptor, inputs, res, t0))
    return EXIT_OK if exact else EXIT_TIMEOUT


def cmd_simulate(a) -> int:
    t0 = time.perf_counter()
    d = _read_json(a.code)
    code = code_from_definition(d)
    grid = parse_grid(a.grid)
    rec = run_experiment(code, grid, a.trials, a.seed, code_id=json.dumps(d, sort_keys=True), simulate_z=a.z)
    if a.out:
        Path(a.out).write_text(rec.to_json() + "\n")
    inputs = {"code": d, "grid": grid, "trials": a.trials, "seed": a.seed}
    _emit(envelope(code.F.descriptor, inputs, rec.to_dict(), t0))
    return EXIT_OK if not any(rec.timeouts) else EXIT_TIMEOUT


def cmd_fit(a) -> int:
    t0 = time.perf_counter()
    if a.synthetic:
        rec = bundled_synthetic()
    elif a.inp:
        rec = ExperimentRecord.from_dict(_read_json(a.inp))
    else:
        raise UsageError("fit needs --in or --synthetic")
    fit = fit_heuristic(rec)
    if a.csv:
        Path(a.csv).write_text(fit_csv(rec, fit))
    res = fit.to_dict() | {"exponent": (fit.d_fit + 1) / 2}
    _emit(envelope(rec.field, {"in": a.inp or "bundled synthetic", "seed": rec.seed}, res, t0))
    return EXIT_OK


def cmd_search(a) -> int:
    t0 = time.perf_counter()
    cfg = SearchConfig.from_dict(_read_json(a.config) if a.config else {})
    if a.seed is not None:
        cfg.seed = a.seed
    cfg.threads = a.threads
    found = search(cfg, a.out)
    res = [{"id": e.id, "definition": e.definition, "params": e.params} for e in found]
    fields = ",".join(str(q) for q in cfg.fields)
    _emit(envelope(fields, {"config": vars(cfg), "seed": cfg.seed}, res, t0))
    return EXIT_OK


def run_tables(golden: dict, verify_distance: bool = False, max_n: int = 34, budget: float = 600.0) -> dict:
    """Rebuild every golden row; returns a report with a list of mismatches."""
    rows, bad = [], []
    for i, g in enumerate(golden["table2"]):
        spec = BBSpec.from_strings(parse_field(g["field"]), g["l"], g["m"], g["A"], g["B"])
        code = build_bb(spec)
        got = {"n": code.n, "k": code.k, "w": spec.weight}
        check_coprime_flag(spec, g["coprime"])
        rows.append({"table": 2, "row": i, "field": g["field"], "golden": g, "computed": got})
    for i, g in enumerate(golden["table3"]):
        spec = LacrossSpec.from_dict({**g, "family": "lacross"})
        code = build_lacross(spec)
        wx, wz = code.row_weights()
        got = {"n": code.n, "k": code.k, "w": int(max(wx.max(), wz.max()))}
        rows.append({"table": 3, "row": i, "field": g["field"], "golden": g, "computed": got, "code": code})
    for r in rows:
        g, got = r["golden"], r["computed"]
        kk = g.get("k_code", g["k"]) if r["table"] == 3 else g["k"]
        want = {"n": g["n"], "k": kk}
        if r["table"] == 2:
            want["w"] = g["w"]
        if any(got[key] != v for key, v in want.items()):
            bad.append({"table": r["table"], "row": r["row"], "want": want, "got": got})
        if verify_distance and g["n"] <= max_n:
            code = r.pop("code", None) or build_bb(
                BBSpec.from_strings(parse_field(g["field"]), g["l"], g["m"], g["A"], g["B"])
            )
            dx, dz = css_distance(code, budget, max(g["d"], 4) + 1)
            if dx.status == EXACT and dz.status == EXACT:
                got["d"] = min(dx.weight, dz.weight)
                if got["d"] != g["d"]:
                    bad.append({"table": r["table"], "row": r["row"], "want": {"d": g["d"]}, "got": got})
            else:
                got["d"] = None
                got["d_status"] = "timeout"
        r.pop("code", None)
    return {"rows": rows, "mismatches": bad}


def cmd_tables(a) -> int:
    t0 = time.perf_counter()
    golden = load_golden(a.golden)
    rep = run_tables(golden, a.verify_distance, a.max_n, a.budget)
    for r in rep["rows"]:
        g, c = r["golden"], r["computed"]
        d = f" d={c['d']}" if "d" in c else ""
        print(f"# table {r['table']} row {r['row']}: GF({g['field']}) n={c['n']} k={c['k']} w={c['w']}{d}", file=sys.stderr)
    results = {"rows": [{k: v for k, v in r.items() if k != "golden"} for r in rep["rows"]], "mismatches": rep["mismatches"]}
    _emit(envelope("mixed", {"golden": a.golden or "bundled", "max_n": a.max_n}, results, t0))
    if rep["mismatches"]:
        err = GoldenMismatch(rep["mismatches"])
        print(f"error: {err}", file=sys.stderr)
        return EXIT_VERIFY
    if any(r["computed"].get("d_status") == "timeout" for r in rep["rows"]):
        return EXIT_TIMEOUT
    return EXIT_OK


def cmd_weights(a) -> int:
    try:
        rows = weights_table(a.q, a.r_max, a.r_min)
    except TooLarge as exc:
        raise UsageError(f"too large: {exc}") from exc
    lines = ["r,min_w,max_w"] + [f"{r},{lo},{hi}" for r, lo, hi in rows]
    text = "\n".join(lines) + "\n"
    if a.out:
        Path(a.out).write_text(text)
    sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quditldpc", description="Qudit LDPC code toolkit")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--json", action="store_true", help="machine-readable errors")
    sub = p.add_subparsers(dest="cmd", required=True)

    b = sub.add_parser("build", help="build a code and write its definition")
    b.add_argument("family", choices=["bb", "lacross"])
    b.add_argument("--field", required=True)
    b.add_argument("--l", type=int)
    b.add_argument("--m", type=int)
    b.add_argument("--A")
    b.add_argument("--B")
    b.add_argument("--coeffs", help="g1,g2,d1,d2")
    b.add_argument("--n-c", dest="n_c", type=int)
    b.add_argument("--k", type=int)
    b.add_argument("--alphas", help="a0,a1,a2")
    b.add_argument("--boundary", default="open", choices=["open", "periodic"])
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    s = sub.add_parser("params", help="n and k of a code definition")
    s.add_argument("--code", required=True)
    s.set_defaults(func=cmd_params)

    s = sub.add_parser("distance", help="certify d_X and d_Z")
    s.add_argument("--code", required=True)
    s.add_argument("--budget", type=float, default=600.0)
    s.add_argument("--cap", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--lex-min", action="store_true", help="report the lexicographically smallest witness")
    s.set_defaults(func=cmd_distance)

    s = sub.add_parser("simulate", help="code-capacity Monte Carlo")
    s.add_argument("--code", required=True)
    s.add_argument("--grid", required=True, help="lo:hi:count or comma list")
    s.add_argument("--trials", type=int, default=10000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--z", action="store_true", help="simulate Z errors instead")
    s.add_argument("--out")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("fit", help="fit the heuristic logical error curve")
    s.add_argument("--in", dest="inp")
    s.add_argument("--synthetic", action="store_true", help="use the bundled synthetic record")
    s.add_argument("--csv")
    s.set_defaults(func=cmd_fit)

    s = sub.add_parser("search", help="random code search")
    s.add_argument("--config")
    s.add_argument("--out")
    s.add_argument("--seed", type=int)
    s.add_argument("--threads", type=int, default=1)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("tables", help="rebuild the bundled golden tables")
    s.add_argument("--golden")
    s.add_argument("--verify-distance", action="store_true")
    s.add_argument("--max-n", type=int, default=34)
    s.add_argument("--budget", type=float, default=600.0)
    s.set_defaults(func=cmd_tables)

    s = sub.add_parser("weights", help="simplex parity-check weights per r")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--r-max", type=int, required=True)
    s.add_argument("--r-min", type=int, default=2)
    s.add_argument("--out")
    s.set_defaults(func=cmd_weights)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    try:
        return a.func(a)
    except (UsageError, ValueError, KeyError) as exc:
        if a.json:
            print(json.dumps({"error": type(exc).__name__, "message": str(exc)}))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
