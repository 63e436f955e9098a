"""Seeded random ideals, the per-ideal verification report and the conjecture scan."""

from __future__ import annotations

import json
import random
from collections.abc import Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .core import (
    MonomialIdeal,
    PreconditionError,
    box,
    contains,
    dimension_oracle,
    is_subideal,
    minimalize,
    monomials_of_degree,
)
from .homology import (
    RATIONALS,
    FieldConfig,
    depth,
    has_linear_resolution,
    krull_dimension,
    skeleton_depth_profile,
)
from .poset import build_poset, dimension_from_poset, rho
from .skeleton import (
    layer_decomposition,
    nested_chain_consistent,
    skeleton_chain,
    verify_layer_direct_sum,
)
from .stanley import (
    SearchBudget,
    check_hreg_conjecture,
    check_sdepth_skeleton_monotonicity,
    check_stanley_conjecture,
)

EXIT_PASS, EXIT_FINDING, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3


def random_ideal(seed, n: int, max_gens: int, max_exp: int) -> MonomialIdeal:
    """Deterministic random proper monomial ideal; never the unit ideal."""
    if n < 1 or max_gens < 1 or max_exp < 1:
        raise ValueError("random_ideal parameters must be positive")
    rng = random.Random(f"ideal/{seed}/{n}/{max_gens}/{max_exp}")
    count = rng.randint(1, max_gens)
    gens = []
    for _ in range(count):
        while True:
            a = tuple(rng.randint(0, max_exp) for _ in range(n))
            if any(a):
                break
        gens.append(a)
    return minimalize(n, gens)


def random_suite(name: str, count: int, n_min: int, n_max: int, max_gens: int, max_exp: int) -> list:
    """``count`` seeded ideals, arity drawn per index from [n_min, n_max]."""
    out = []
    for k in range(count):
        n = random.Random(f"suite/{name}/{k}").randint(n_min, n_max)
        out.append(random_ideal(f"{name}/{k}", n, max_gens, max_exp))
    return out


def random_linear_ideal(seed, n: int, max_gens: int, max_deg: int, attempts: int = 200) -> MonomialIdeal:
    """Seeded equigenerated ideal with a linear resolution (rejection sampling)."""
    rng = random.Random(f"linear/{seed}/{n}/{max_gens}/{max_deg}")
    for _ in range(attempts):
        # Degree >= 2 and >= 2 generators keep the sample away from trivial cases.
        d = rng.randint(min(2, max_deg), max_deg)
        pool = list(monomials_of_degree(n, d))
        gens = rng.sample(pool, rng.randint(min(2, len(pool)), min(max_gens, len(pool))))
        I = minimalize(n, gens)
        if has_linear_resolution(I):
            return I
    raise RuntimeError("no ideal with linear resolution found")


def dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


@dataclass(frozen=True)
class VerifyConfig:
    g: tuple | None = None
    field: FieldConfig = RATIONALS
    budget: SearchBudget = SearchBudget()


def _check(name: str, ok, detail=None) -> dict:
    status = {True: "pass", False: "fail", None: "inconclusive"}[ok]
    out = {"name": name, "status": status}
    if detail is not None:
        out["detail"] = detail
    return out


def run_verify(I: MonomialIdeal, config: VerifyConfig = VerifyConfig()) -> tuple:
    """Run every skeleton/homology/partition check on I; returns (exit code, report)."""
    if I.is_unit:
        raise PreconditionError("the unit ideal is not a valid input")
    field, budget = config.field, config.budget
    chain = skeleton_chain(I, config.g)
    g, d = chain.g, chain.d
    checks = []

    p = build_poset(I, None, g)
    checks.append(_check("dimension_formula", dimension_from_poset(p) == dimension_oracle(I),
                         {"poset": dimension_from_poset(p), "oracle": dimension_oracle(I)}))

    enlarged = tuple(e + 1 for e in g)
    worst = max((rho(b, g) for b in box(enlarged) if not contains(I, b)), default=-1)
    checks.append(_check("rho_bound", worst <= d, {"max_rho_outside_ideal": worst, "dim": d}))

    dims_ok = all(krull_dimension(chain[j]) == j for j in range(d + 1))
    nested = all(is_subideal(chain[j], chain[j - 1]) for j in range(1, d + 1))
    checks.append(_check("skeleton_dimensions", dims_ok and nested and nested_chain_consistent(chain)))

    layers = {}
    layer_rows = []
    layers_ok = True
    for j in range(1, d + 1):
        summands = layer_decomposition(I, g, j)
        layers[j] = summands
        rep = verify_layer_direct_sum(I, g, j, summands)
        t = depth(chain[j], chain[j - 1], field)
        cyclic = [(depth(s.ann, None, field), krull_dimension(s.ann)) for s in summands]
        ok = bool(rep) and t == j and all(a == b == j for a, b in cyclic)
        layers_ok &= ok
        layer_rows.append({"j": j, "summands": len(summands), "depth": t, "direct_sum": bool(rep)})
    checks.append(_check("layer_decomposition", layers_ok, layer_rows))

    quotient_rows = []
    qok = True
    for j in range(d):
        t = depth(I, chain[j], field)
        qok &= t >= j + 1
        quotient_rows.append({"j": j, "depth": t})
    checks.append(_check("skeleton_quotient_depth", qok, quotient_rows))

    profile = skeleton_depth_profile(I, g, field)
    t = depth(I, None, field)
    via = max(j for j, _, cm in profile if cm)
    all_cm_below = all(cm for j, _, cm in profile if j <= t)
    checks.append(_check("depth_via_skeletons", via == t and all_cm_below,
                         {"depth": t, "via_skeletons": via,
                          "chain": [{"j": j, "depth": dj, "cm": cm} for j, dj, cm in profile]}))

    depths = {j: dj for j, dj, _ in profile}
    mono = all(depths[j - 1] <= depths[j] <= t for j in range(1, d + 1))
    checks.append(_check("depth_monotone", mono))

    mono_rep = check_sdepth_skeleton_monotonicity(I, g, budget)
    checks.append(_check("sdepth_skeleton_monotone", _status(mono_rep["status"]),
                         {"sdepth": mono_rep["sdepth"],
                          "skeletons": [{"j": r["j"], "sdepth": r["sdepth"], "completed_valid": r["completed_valid"]}
                                        for r in mono_rep["skeletons"]]}))

    st = check_stanley_conjecture(I, g, field, budget)
    checks.append(_check("stanley_inequality", _status(st["status"]),
                         {"depth": st["depth"], "sdepth": st["sdepth"], "witness": st["sdepth_search"]["witness"]}))

    if I.is_zero:
        checks.append({"name": "hreg_vs_reg", "status": "skipped", "detail": "zero ideal"})
    else:
        jh = check_hreg_conjecture(I, None, field, budget)
        checks.append(_check("hreg_vs_reg", _status(jh["status"]),
                             {"hreg": jh["hreg"], "reg": jh["reg"],
                              "linear_truncation_degree": jh["linear_truncation_degree"],
                              "chain": jh["truncation_chain"]}))

    report = {
        "ideal": {"n": I.arity, "gens": [list(a) for a in I.generators]},
        "g": list(g),
        "field": field.label,
        "dim": d,
        "depth": t,
        "skeleton_chain": chain.to_json(layers),
        "checks": checks,
    }
    statuses = {c["status"] for c in checks}
    if "fail" in statuses:
        code = EXIT_FINDING
    elif "inconclusive" in statuses:
        code = EXIT_INCONCLUSIVE
    else:
        code = EXIT_PASS
    report["status"] = {EXIT_PASS: "pass", EXIT_FINDING: "fail", EXIT_INCONCLUSIVE: "inconclusive"}[code]
    return code, report


def _status(s: str):
    return {"pass": True, "fail": False, "inconclusive": None}[s]


# -- conjecture scan --------------------------------------------------------------


@dataclass(frozen=True)
class ScanConfig:
    seed: int = 0
    count: int = 50
    n: int | None = None  # None: drawn from [2, 5]
    max_gens: int = 6
    max_exp: int = 3
    field: FieldConfig = RATIONALS
    budget: SearchBudget = SearchBudget(max_nodes=20000)
    jobs: int = 1


def scan_instance(seed: int, k: int, n: int | None, max_gens: int, max_exp: int) -> MonomialIdeal:
    rng = random.Random(f"scan/{seed}/{k}")
    arity = n if n is not None else rng.randint(2, 5)
    return random_ideal(f"{seed}/{k}", arity, max_gens, max_exp)


def _scan_one(args) -> dict:
    cfg, k = args
    I = scan_instance(cfg.seed, k, cfg.n, cfg.max_gens, cfg.max_exp)
    row = {"index": k, "n": I.arity, "gens": [list(a) for a in I.generators]}
    try:
        st = check_stanley_conjecture(I, None, cfg.field, cfg.budget)
        row.update(depth=st["depth"], sdepth=st["sdepth"], stanley=st["status"])
    except Exception as exc:  # per-instance failures are logged, not fatal
        row.update(stanley="error", stanley_error=str(exc))
    try:
        jh = check_hreg_conjecture(I, None, cfg.field, cfg.budget, chain=False)
        row.update(reg=jh["reg"], hreg=jh["hreg"], hreg_bound=jh["status"])
    except Exception as exc:
        row.update(hreg_bound="error", hreg_bound_error=str(exc))
    return row


def run_scan(cfg: ScanConfig) -> Iterator[dict]:
    """Yield one result row per seeded instance, in index order."""
    work = [(cfg, k) for k in range(cfg.count)]
    if cfg.jobs > 1 and cfg.count > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            yield from pool.map(_scan_one, work)
    else:
        for item in work:
            yield _scan_one(item)


def is_violation(row: dict) -> bool:
    return row.get("stanley") == "fail" or row.get("hreg_bound") == "fail"

