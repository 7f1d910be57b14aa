"""Random code search with k-first filtering and a JSON-lines catalog."""

from __future__ import annotations

import hashlib
import json
import logging
import time
from dataclasses import asdict, dataclass, field
from math import gcd
from pathlib import Path

import numpy as np

from .bb import BBSpec, CssCode, bb_k_coprime, build_bb, normalize_bb, random_bb_spec
from .distance import EXACT, css_distance
from .gf import GF, parse_field
from .hgp import ClassicalCode, DegenerateSeed, LacrossSpec, build_lacross
from .linalg import stack_kernel_intersection
from .poly import BivariatePoly, eval_bivariate

log = logging.getLogger(__name__)

FAMILIES = ("bb", "coprime_bb", "lacross")


class UnsupportedFamily(ValueError):
    pass


@dataclass
class SearchConfig:
    family: str = "bb"
    fields: list = field(default_factory=lambda: [3])
    ell: tuple = (2, 8)
    m: tuple = (2, 8)
    terms: tuple = (3, 3)
    n_c: tuple = (3, 7)
    k_values: tuple = (2, 3)
    boundary: str = "open"
    rate_floor: float = 1 / 50
    distance_floor: int = 4
    samples: int = 100
    seed: int = 0
    distance_budget: float = 60.0
    distance_cap: int = 8
    threads: int = 1
    pinned: dict | None = None  # fixed definition; every sample uses it

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UnsupportedFamily(self.family)
        for lo, hi in (self.ell, self.m, self.n_c):
            if lo > hi or lo < 1:
                raise ValueError(f"empty range ({lo}, {hi})")
        if not self.fields or not self.k_values:
            raise ValueError("empty field or k list")
        if self.rate_floor <= 0 or self.distance_floor <= 0:
            raise ValueError("floors must be positive")

    @classmethod
    def from_dict(cls, d: dict) -> SearchConfig:
        d = dict(d)
        for key in ("ell", "m", "terms", "n_c", "k_values"):
            if key in d:
                d[key] = tuple(d[key])
        return cls(**d)


@dataclass
class CatalogEntry:
    id: str
    definition: dict
    params: dict
    discovery: dict

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> CatalogEntry:
        return cls(**json.loads(line))


def code_from_definition(d: dict) -> CssCode:
    """Build a code from its JSON definition (bb, lacross or explicit css)."""
    fam = d.get("family")
    if fam in ("bb", "coprime_bb"):
        return build_bb(BBSpec.from_dict({**d, "family": "bb"}))
    if fam == "lacross":
        return build_lacross(LacrossSpec.from_dict(d))
    if fam == "css":
        F = parse_field(d["field"])
        return CssCode(F, np.array(d["HX"], dtype=np.int64), np.array(d["HZ"], dtype=np.int64), {"family": "css"})
    raise UnsupportedFamily(str(fam))


def _sorted_normalized(F, P: BivariatePoly) -> BivariatePoly:
    terms = sorted(P.terms)
    if not terms:
        return P
    c = F.inv(terms[0][2])
    return BivariatePoly(P.ell, P.m, tuple((a, b, int(F.mul(c, v))) for a, b, v in terms))


def canonical_form(definition: dict) -> str:
    """Key invariant under A <-> B and under rescaling A or B.

    Scaling one polynomial by c is undone by scaling the matching qudits by c
    (and their Z partners by 1/c), so each polynomial is divided by the
    coefficient of its lowest monomial. Lacross and css use the raw JSON.
    """
    fam = definition.get("family")
    if fam == "lacross":
        raise UnsupportedFamily("lacross has no canonical form; use raw_key")
    if fam not in ("bb", "coprime_bb"):
        raise UnsupportedFamily(str(fam))
    spec = normalize_bb(BBSpec.from_dict({**definition, "family": "bb"}))
    F = spec.F
    A, B = (str(_sorted_normalized(F, P)) for P in (spec.A, spec.B))
    a, b = sorted([A, B])
    return f"{F.descriptor}|{spec.ell}|{spec.m}|{a}|{b}"


def raw_key(definition: dict) -> str:
    return json.dumps(definition, sort_keys=True)


def entry_key(definition: dict) -> str:
    try:
        return canonical_form(definition)
    except UnsupportedFamily:
        return raw_key(definition)


def content_id(definition: dict) -> str:
    return hashlib.sha256(entry_key(definition).encode()).hexdigest()[:16]


def _rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, index])))


def _sample(cfg: SearchConfig, rng: np.random.Generator) -> dict:
    if cfg.pinned is not None:
        return dict(cfg.pinned)
    q = int(rng.choice(cfg.fields))
    F = GF(q)
    if cfg.family == "lacross":
        k = int(rng.choice(cfg.k_values))
        n_c = int(rng.integers(max(cfg.n_c[0], k + 1), max(cfg.n_c[1], k + 1) + 1))
        al = [int(a) for a in rng.integers(1, q, size=3)]
        return LacrossSpec(F, n_c, k, tuple(al), cfg.boundary).to_dict()
    while True:
        ell = int(rng.integers(cfg.ell[0], cfg.ell[1] + 1))
        m = int(rng.integers(cfg.m[0], cfg.m[1] + 1))
        if ell * m < max(cfg.terms):
            continue
        if cfg.family == "coprime_bb" and not (gcd(ell, m) == 1 and gcd(ell * m, F.p) == 1):
            continue
        break
    spec = random_bb_spec(F, ell, m, rng, tuple(cfg.terms))
    d = spec.to_dict()
    if cfg.family == "coprime_bb":
        d["family"] = "coprime_bb"
    return d


def algebraic_k(definition: dict) -> tuple[int, int]:
    """(n, k) without building the full parity-check matrices."""
    fam = definition["family"]
    if fam == "lacross":
        spec = LacrossSpec.from_dict(definition)
        seed = ClassicalCode(spec.F, spec.seed_matrix())
        if spec.boundary == "open" and seed.rank != spec.n_c - spec.k:
            raise DegenerateSeed("seed rank")
        return seed.n**2 + seed.nT**2, seed.k**2 + seed.kT**2
    spec = BBSpec.from_dict({**definition, "family": "bb"})
    n = 2 * spec.ell * spec.m
    if spec.is_coprime:
        return n, bb_k_coprime(spec)
    A = eval_bivariate(spec.F, spec.A)
    B = eval_bivariate(spec.F, spec.B)
    return n, 2 * stack_kernel_intersection(spec.F, A, B).shape[0]


def evaluate(definition: dict, cfg: SearchConfig) -> dict | None:
    """Parameters if the definition passes both floors, else None."""
    n, k = algebraic_k(definition)
    if k == 0 or k / (2 * n) < cfg.rate_floor:
        return None
    code = code_from_definition(definition)
    if (code.n, code.k) != (n, k):
        raise AssertionError(f"algebraic ({n}, {k}) vs built ({code.n}, {code.k})")
    dx, dz = css_distance(code, cfg.distance_budget, cfg.distance_cap, threads=cfg.threads)
    lbx = dx.weight if dx.status == EXACT else dx.certified_lower_bound
    lbz = dz.weight if dz.status == EXACT else dz.certified_lower_bound
    if min(lbx, lbz) < cfg.distance_floor:
        # too light, or the floor could not be certified within budget
        return None
    exact = dx.status == EXACT and dz.status == EXACT
    return {
        "n": n,
        "k": k,
        "d": min(dx.weight, dz.weight) if exact else None,
        "d_lower_bound": min(lbx, lbz),
        "d_status": "exact" if exact else "lower_bound_only",
        "rate": k / (2 * n),
    }


def search(cfg: SearchConfig, out: str | Path | None = None) -> list[CatalogEntry]:
    """Sample, filter by k, certify d, dedupe, and optionally append to a catalog file.

    Every definition is evaluated at most once; rejected ones are remembered too.
    """
    seen = set()
    if out is not None and Path(out).exists():
        seen = {entry_key(e.definition) for e in read_catalog(out)}
    found = []
    for i in range(cfg.samples):
        t0 = time.perf_counter()
        rng = _rng(cfg.seed, i)
        try:
            d = _sample(cfg, rng)
            key = entry_key(d)
            if key in seen:
                continue
            seen.add(key)
            params = evaluate(d, cfg)
        except (DegenerateSeed, ValueError) as exc:
            log.info("sample %d skipped: %s", i, exc)
            continue
        if params is None:
            continue
        e = CatalogEntry(
            content_id(d), d, params, {"seed": cfg.seed, "sample": i, "wall_time": time.perf_counter() - t0}
        )
        found.append(e)
        if out is not None:
            with open(out, "a") as fh:
                fh.write(e.to_json() + "\n")
    return found


def read_catalog(path: str | Path) -> list[CatalogEntry]:
    with open(path) as fh:
        return [CatalogEntry.from_json(line) for line in fh if line.strip()]


def reverify(entry: CatalogEntry, budget: float = 600.0, cap: int = 10) -> bool:
    """Rebuild from the definition alone and confirm (n, k) and d."""
    code = code_from_definition(entry.definition)
    if (code.n, code.k) != (entry.params["n"], entry.params["k"]):
        return False
    dx, dz = css_distance(code, budget, cap)
    if entry.params["d_status"] == "exact":
        return dx.status == EXACT and dz.status == EXACT and min(dx.weight, dz.weight) == entry.params["d"]
    lb = min(dx.weight if dx.exact else dx.certified_lower_bound, dz.weight if dz.exact else dz.certified_lower_bound)
    return lb >= entry.params["d_lower_bound"]
