"""``skel`` command-line entry point."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .core import (
    ArityError,
    IdealFormatError,
    MonomialIdeal,
    PreconditionError,
    dimension_oracle,
    format_monomial,
    parse_ideal,
)
from .harness import (
    EXIT_FINDING,
    EXIT_INCONCLUSIVE,
    EXIT_INPUT,
    EXIT_PASS,
    ScanConfig,
    VerifyConfig,
    dumps,
    is_violation,
    run_scan,
    run_verify,
)
from .homology import (
    FieldConfig,
    betti_table,
    depth_via_skeletons,
    has_linear_resolution,
    regularity,
    regularity_via_truncations,
)
from .poset import build_poset, dimension_from_poset, partition_to_decomposition
from .skeleton import layer_decomposition, skeleton_chain
from .stanley import SearchBudget, hreg, sdepth

COMMANDS = ("dim", "depth", "sdepth", "hreg", "reg", "skeletons", "layers", "verify", "scan", "decompose")


@dataclass(frozen=True)
class RunConfig:
    command: str
    path: str | None = None
    g: tuple | None = None
    field: FieldConfig = FieldConfig()
    seed: int = 0
    jobs: int = 1
    budget: SearchBudget = SearchBudget()
    output: str = "text"
    timing: bool = False
    target: str | None = None
    count: int = 50
    n: int | None = None
    max_exp: int = 3
    max_gens: int = 6


def _parse_g(text: str) -> tuple:
    try:
        g = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad cap vector {text!r}") from None
    if any(e < 0 for e in g):
        raise argparse.ArgumentTypeError("cap entries must be nonnegative")
    return g


def _parse_field(text: str) -> FieldConfig:
    try:
        return FieldConfig.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="skel", description="Skeleton ideals, depth, Stanley depth and h-regularity of monomial ideals.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("file", nargs="?", help="ideal file ('ring n' / 'gen e1 ... en')")
    ap.add_argument("--g", type=_parse_g, help="cap vector a1,...,an (default: join of generators, at least 1)")
    ap.add_argument("--field", type=_parse_field, default=FieldConfig(), help="q (default) or fp:P")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--budget-points", type=int, default=200)
    ap.add_argument("--time-limit-ms", type=int, default=0)
    ap.add_argument("--max-nodes", type=int, default=None, help="search node budget (scan default 20000)")
    ap.add_argument("--json", action="store_true")
    ap.add_argument("--timing", action="store_true", help="include wall-clock times in JSON (not reproducible)")
    ap.add_argument("--target", choices=("quotient", "ideal"),
                    help="module for sdepth/hreg/decompose: S/I or I (defaults: sdepth S/I, hreg I)")
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--n", type=int, default=None)
    ap.add_argument("--max-exp", type=int, default=3)
    ap.add_argument("--max-gens", type=int, default=6)
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    if ns.jobs < 1:
        raise ValueError("--jobs must be positive")
    max_nodes = ns.max_nodes
    if max_nodes is None:
        max_nodes = 20000 if ns.command == "scan" else 0
    return RunConfig(
        command=ns.command,
        path=ns.file,
        g=ns.g,
        field=ns.field,
        seed=ns.seed,
        jobs=ns.jobs,
        budget=SearchBudget(ns.budget_points, ns.time_limit_ms, max_nodes),
        output="json" if ns.json else "text",
        timing=ns.timing,
        target=ns.target,
        count=ns.count,
        n=ns.n,
        max_exp=ns.max_exp,
        max_gens=ns.max_gens,
    )


def _emit(cfg: RunConfig, obj: dict, text: str) -> None:
    if cfg.output == "json":
        sys.stdout.write(json.dumps(obj, indent=2) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _fmt_ideal(I: MonomialIdeal) -> str:
    return str(I)


def _module(cfg: RunConfig, I: MonomialIdeal, default: str):
    target = cfg.target or default
    if target == "ideal":
        if I.is_zero:
            raise PreconditionError("the zero ideal is the zero module")
        return MonomialIdeal.zero(I.arity), I, "I"
    if I.is_unit:
        raise PreconditionError("S/S is the zero module")
    return I, None, "S/I"


def cmd_dim(cfg, I):
    p = build_poset(I, None, cfg.g)
    d = dimension_from_poset(p)
    obj = {"n": I.arity, "g": list(p.g), "dim": d, "dim_oracle": dimension_oracle(I)}
    _emit(cfg, obj, f"dim S/I = {d} (brute-force oracle: {obj['dim_oracle']})")
    return EXIT_PASS


def cmd_depth(cfg, I):
    if I.is_unit:
        raise PreconditionError("S/S is the zero module")
    t = betti_table(I, None, cfg.field, cfg.jobs)
    via = depth_via_skeletons(I, cfg.g, cfg.field)
    obj = t.to_json()
    obj["depth_via_skeletons"] = via
    lines = [f"depth S/I = {t.depth} (pdim {t.pdim}, field {cfg.field.label})",
             f"max j with S/I_j Cohen-Macaulay = {via}"]
    _emit(cfg, obj, "\n".join(lines))
    return EXIT_PASS


def cmd_reg(cfg, I):
    t = betti_table(MonomialIdeal.zero(I.arity), I, cfg.field, cfg.jobs)
    r = regularity(I, cfg.field)
    obj = t.to_json()
    obj.update(reg_ideal=r, reg_via_truncations=regularity_via_truncations(I, cfg.field),
               linear_resolution=has_linear_resolution(I, cfg.field))
    lines = [f"reg I = {r}", f"least j with I_>=j j-linear = {obj['reg_via_truncations']}",
             f"linear resolution: {'yes' if obj['linear_resolution'] else 'no'}"]
    _emit(cfg, obj, "\n".join(lines))
    return EXIT_PASS


def _search_output(cfg, res, p, name, label):
    obj = res.to_json(p.g, cfg.timing)
    obj = {"module": label, name: res.value, **obj}
    obj["decomposition"] = partition_to_decomposition(p, res.witness).to_json()
    lines = [f"{name} {label} = {res.value}" + ("" if res.optimal else f" (best known, not certified: {res.note})")]
    for iv in res.witness:
        lines.append(f"  [{format_monomial(iv.low)}, {format_monomial(iv.high)}]")
    _emit(cfg, obj, "\n".join(lines))
    return EXIT_PASS if res.optimal else EXIT_INCONCLUSIVE


def cmd_sdepth(cfg, I):
    inner, outer, label = _module(cfg, I, "quotient")
    p = build_poset(inner, outer, cfg.g)
    return _search_output(cfg, sdepth(inner, outer, cfg.g, cfg.budget, poset=p), p, "sdepth", label)


def cmd_hreg(cfg, I):
    inner, outer, label = _module(cfg, I, "ideal")
    p = build_poset(inner, outer, cfg.g)
    return _search_output(cfg, hreg(inner, outer, cfg.g, cfg.budget, poset=p), p, "hreg", label)


def cmd_decompose(cfg, I):
    inner, outer, label = _module(cfg, I, "quotient")
    p = build_poset(inner, outer, cfg.g)
    res = sdepth(inner, outer, cfg.g, cfg.budget, poset=p)
    dec = partition_to_decomposition(p, res.witness)
    obj = {"module": label, "sdepth": res.value, "optimal": res.optimal,
           "partition": res.witness.to_json(p.g), **dec.to_json(), "hreg_of_decomposition": dec.hreg}
    lines = [f"Stanley decomposition of {label} (sdepth {dec.sdepth}):"]
    for c, Z in dec.spaces:
        lines.append(f"  {format_monomial(c)} * K[{', '.join(f'x{k + 1}' for k in sorted(Z))}]")
    _emit(cfg, obj, "\n".join(lines))
    return EXIT_PASS if res.optimal else EXIT_INCONCLUSIVE


def cmd_skeletons(cfg, I, with_layers=False):
    chain = skeleton_chain(I, cfg.g)
    layers = {j: layer_decomposition(I, chain.g, j) for j in range(1, chain.d + 1)} if with_layers else None
    obj = chain.to_json(layers)
    lines = [f"d = {chain.d}, g = {list(chain.g)}"]
    for j in range(chain.d, -1, -1):
        lines.append(f"I_{j} = {_fmt_ideal(chain[j])}")
        if layers and j >= 1:
            for s in layers[j]:
                Z = ", ".join(f"x{k + 1}" for k in sorted(s.Z))
                lines.append(f"    summand x^{list(s.b_min)}  Z = {{{Z}}}  M = {_fmt_ideal(s.ann)}")
    _emit(cfg, obj, "\n".join(lines))
    return EXIT_PASS


def cmd_verify(cfg, I):
    code, report = run_verify(I, VerifyConfig(cfg.g, cfg.field, cfg.budget))
    lines = [f"ideal {_fmt_ideal(I)}  dim {report['dim']}  depth {report['depth']}"]
    for c in report["checks"]:
        lines.append(f"{c['status'].upper():13s} {c['name']}")
        if c["name"] == "depth_via_skeletons":
            chain = ", ".join(f"{r['j']}->{'CM' if r['cm'] else 'not CM'}" for r in c["detail"]["chain"])
            lines.append(f"              depth chain: {chain}")
    _emit(cfg, report, "\n".join(lines))
    return code


def cmd_scan(cfg):
    scfg = ScanConfig(seed=cfg.seed, count=cfg.count, n=cfg.n, max_gens=cfg.max_gens, max_exp=cfg.max_exp,
                      field=cfg.field, budget=cfg.budget, jobs=cfg.jobs)
    for row in run_scan(scfg):
        sys.stdout.write(dumps(row) + "\n")
        if is_violation(row):
            sys.stdout.flush()
            sys.stderr.write("!" * 60 + "\nVIOLATION FOUND: " + dumps(row) + "\n" + "!" * 60 + "\n")
            return EXIT_FINDING
    return EXIT_PASS


HANDLERS = {
    "dim": cmd_dim,
    "depth": cmd_depth,
    "reg": cmd_reg,
    "sdepth": cmd_sdepth,
    "hreg": cmd_hreg,
    "decompose": cmd_decompose,
    "skeletons": cmd_skeletons,
    "layers": lambda cfg, I: cmd_skeletons(cfg, I, with_layers=True),
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    ap = build_parser()
    ns = ap.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        if cfg.command == "scan":
            return cmd_scan(cfg)
        if cfg.path is None:
            ap.error(f"{cfg.command} needs an ideal file")
        with open(cfg.path) as fh:
            I = parse_ideal(fh.read())
        if cfg.g is not None and len(cfg.g) != I.arity:
            raise ArityError(f"--g has {len(cfg.g)} entries, ring has {I.arity} variables")
        return HANDLERS[cfg.command](cfg, I)
    except (IdealFormatError, ArityError, PreconditionError, OSError, ValueError) as exc:
        sys.stderr.write(f"skel: error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
