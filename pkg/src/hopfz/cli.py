"""Command-line interface: ``hopfz <command> ...``.

Every command prints either human-readable text or, with ``--machine``,
one ``key=value`` record per line.  The exit status is 0 when everything
checked passed, 1 when some check failed and 2 on a usage or input error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .evaluator import (DEFAULT_BEAD_CAP, DEFAULT_WIDTH_ENTRIES, BackendMismatch, EvalConfig,
                        GraphTooLarge, WidthBudgetExceeded, invariant_record)
from .exact import Field
from .groups import InvalidGroup, get_group
from .heisenberg import HeisenbergDouble, identity_report
from .homcount import (DEFAULT_NODE_BUDGET, SearchBudgetExceeded, abelianization, format_abelian,
                       search_homs)
from .hopf import (AlgebraTooLarge, DegeneratePairing, IntegralSpaceDimension, UnsupportedAlgebra,
                   builtin_algebras, cointegral_report, get_algebra, is_counimodular, is_involutory,
                   is_unimodular, normalize_integrals, validate_hopf)
from .moves import DEFAULT_VERTEX_BUDGET, MoveBrokeGraph, fuzz
from .ograph import InvalidGraph, OGraph, ParseError, connected_sum, lens, parse, pi1, validate

DEFAULT_FUZZ_STEPS = 100


@dataclass(frozen=True)
class Config:
    field: Field
    bead_cap: int = DEFAULT_BEAD_CAP
    width_budget: int = DEFAULT_WIDTH_ENTRIES
    node_budget: int = DEFAULT_NODE_BUDGET
    vertex_budget: int = DEFAULT_VERTEX_BUDGET
    steps: int = DEFAULT_FUZZ_STEPS
    seed: int = 0
    machine: bool = False
    verbose: int = 0

    def __post_init__(self):
        for key in ("bead_cap", "width_budget", "node_budget", "vertex_budget"):
            if getattr(self, key) < 1:
                raise ValueError(f"{key} must be positive")
        if self.steps < 0:
            raise ValueError("steps must be non-negative")

    @property
    def eval_config(self) -> EvalConfig:
        return EvalConfig(bead_cap=self.bead_cap, width_budget=self.width_budget)


# ---------------------------------------------------------------- sources


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
            continue
        depth += ch == "("
        depth -= ch == ")"
        if depth < 0:
            raise ValueError(f"unbalanced parentheses in {text!r}")
        cur.append(ch)
    if depth:
        raise ValueError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def resolve_graph(source: str) -> OGraph:
    """``lens:p``, ``sum(A,B)`` with nesting, or a path to an o-graph file."""
    s = source.strip()
    if s.startswith("lens:"):
        return lens(int(s[5:]))
    if s.startswith("sum(") and s.endswith(")"):
        parts = _split_top(s[4:-1])
        if len(parts) != 2:
            raise ValueError(f"sum takes two graphs, got {len(parts)}")
        return connected_sum(resolve_graph(parts[0]), resolve_graph(parts[1]))
    path = Path(s)
    if not path.exists():
        raise FileNotFoundError(f"no graph file {s!r} (expected lens:p, sum(A,B) or a path)")
    return parse(path.read_text())


def format_scalar(field: Field, x) -> str:
    num, den = field.lift(x)
    if field.is_rational:
        return str(num) if den == 1 else f"{num}/{den}"
    return str(num)


class Output:
    def __init__(self, machine: bool):
        self.machine = machine

    def record(self, human: str, **fields) -> None:
        if self.machine:
            print(" ".join(f"{k}={_machine_value(v)}" for k, v in fields.items()))
        else:
            print(human)

    def text(self, line: str) -> None:
        if not self.machine:
            print(line)


def _machine_value(v) -> str:
    if isinstance(v, bool):
        return "PASS" if v else "FAIL"
    if isinstance(v, (list, tuple)):
        return ",".join(map(str, v))
    return str(v).replace(" ", "")


def _verdict(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


# ---------------------------------------------------------------- commands


def cmd_hopf_validate(args, cfg: Config, out: Output) -> int:
    H = get_algebra(args.algebra, cfg.field)
    axioms = validate_hopf(H)
    for name, ok in axioms.items():
        out.record(f"{name} {_verdict(ok)}", algebra=H.name, check=name, result=ok)
    flags = {"involutory": is_involutory(H), "unimodular": is_unimodular(H),
             "counimodular": is_counimodular(H)}
    for name, ok in flags.items():
        out.record(f"{name} {'yes' if ok else 'no'}", algebra=H.name, flag=name,
                   value="yes" if ok else "no")
    if all(axioms.values()):
        data = normalize_integrals(H)
        for key in ("mu_R", "mu_L", "e_L", "e_R"):
            vals = [format_scalar(H.field, x) for x in getattr(data, key)]
            out.record(f"{key} = [{', '.join(vals)}]", algebra=H.name, integral=key, coords=vals)
        for side, ok in cointegral_report(H).items():
            out.record(f"e_R is a {side} cointegral: {'yes' if ok else 'no'}", algebra=H.name,
                       cointegral=side, value="yes" if ok else "no")
    return 0 if all(axioms.values()) else 1


def cmd_hopf_identities(args, cfg: Config, out: Output) -> int:
    H = get_algebra(args.algebra, cfg.field)
    report = identity_report(HeisenbergDouble(H))
    for name, ok in report.items():
        out.record(f"{name} {_verdict(ok)}", algebra=H.name, identity=name, result=ok)
    failed = [k for k, v in report.items() if not v]
    if failed:
        print(f"failed identities: {', '.join(failed)}", file=sys.stderr)
    return 1 if failed else 0


def cmd_ograph_validate(args, cfg: Config, out: Output) -> int:
    g = resolve_graph(args.graph)
    report = validate(g)
    for name, ok in report.items():
        out.record(f"{name} {_verdict(ok)}", graph=g.name or args.graph, condition=name, result=ok)
    out.record(f"regions {report.regions} (vertices + 1 = {report.n + 1})",
               graph=g.name or args.graph, regions=report.regions, n=report.n)
    return 0 if report.ok else 1


def _algebra_list(source: str, field: Field) -> list[tuple[str, object]]:
    if source == "all":
        return sorted(builtin_algebras(field).items())
    return sorted((name, get_algebra(name, field)) for name in source.split(","))


def cmd_invariant(args, cfg: Config, out: Output) -> int:
    g = resolve_graph(args.graph)
    for name, H in _algebra_list(args.algebra, cfg.field):
        r = invariant_record(g, H, cfg.eval_config)
        for w in r.warnings:
            print(f"warning: {w}", file=sys.stderr)
        value = format_scalar(H.field, r.value)
        out.record(value if not args.verbose else
                   f"{value}  (algebra {H.name or name}, width {r.width}, "
                   f"backends {'+'.join(r.backends)}, {r.seconds:.3f}s)",
                   graph=r.graph or args.graph, algebra=H.name or name, field=r.field,
                   value=value, width=r.width, backends=r.backends,
                   seconds=f"{r.seconds:.3f}")
    return 0


def cmd_pi1(args, cfg: Config, out: Output) -> int:
    g = resolve_graph(args.graph)
    P = pi1(g)
    rank, torsion = abelianization(P)
    if out.machine:
        print(f"graph={g.name or args.graph} generators={P.ngens} relations={len(P.relations)} "
              f"abelianization={format_abelian(rank, torsion).replace(' ', '')}")
    else:
        print(P)
        print(f"abelianization: {format_abelian(rank, torsion)}")
    return 0


def cmd_homcount(args, cfg: Config, out: Output) -> int:
    g = resolve_graph(args.graph)
    G = get_group(args.group)
    P = pi1(g)
    res = search_homs(P, G, cfg.node_budget, max_witnesses=args.witnesses if args.verbose else 0)
    out.record(str(res.count), graph=g.name or args.graph, group=G.name, count=res.count,
               nodes=res.nodes)
    for w in res.witnesses:
        out.text("  " + " ".join(f"{P.names[i]}={x}" for i, x in enumerate(w)))
    return 0


def cmd_check(args, cfg: Config, out: Output) -> int:
    g = resolve_graph(args.graph)
    G = get_group(args.group)
    H = get_algebra(args.group, cfg.field)
    z = invariant_record(g, H, cfg.eval_config).value
    count = search_homs(pi1(g), G, cfg.node_budget).count
    ok = z == H.field(count)
    zs = format_scalar(H.field, z)
    out.record(f"{_verdict(ok)} Z = {zs}, #Hom = {count}", graph=g.name or args.graph,
               group=G.name, invariant=zs, homcount=count, result=ok)
    return 0 if ok else 1


def cmd_fuzz(args, cfg: Config, out: Output) -> int:
    g = resolve_graph(args.graph)
    algebras = _algebra_list(args.algebra, cfg.field)
    trail = fuzz(g, cfg.seed, cfg.steps, cfg.vertex_budget)
    ec = EvalConfig(bead_cap=cfg.bead_cap, width_budget=cfg.width_budget, cross_check=False)
    reference = None
    constant = True
    for k, step in enumerate(trail):
        values = []
        for name, H in algebras:
            try:
                values.append(format_scalar(H.field, invariant_record(step.graph, H, ec).value))
            except WidthBudgetExceeded as exc:
                print(f"step {k}: {name} skipped ({exc})", file=sys.stderr)
                values.append(None)
        if reference is None:
            reference = values
        changed = [name for (name, _), v, r in zip(algebras, values, reference)
                   if v is not None and r is not None and v != r]
        constant &= not changed
        zs = " ".join(f"{name}={v}" for (name, _), v in zip(algebras, values))
        out.record(f"{k:4d} {step.kind:22s} n={step.graph.n:<3d} {zs}",
                   step=k, kind=step.kind, n=step.graph.n,
                   **{f"Z[{name}]": v for (name, _), v in zip(algebras, values)})
        if changed:
            print(f"step {k} ({step.kind}) changed Z for {', '.join(changed)}", file=sys.stderr)
    out.record(f"{_verdict(constant)} {len(trail) - 1} steps, Z constant: "
               f"{'yes' if constant else 'no'}", steps=len(trail) - 1, result=constant)
    return 0 if constant else 1


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=os.environ.get("HOPFZ_FIELD", "Q"),
                        help="Q or Fp:<p> (default Q)")
    common.add_argument("--budget-bead", type=int, default=DEFAULT_BEAD_CAP,
                        help="largest vertex count for the bead cross-check")
    common.add_argument("--budget-width", type=int, default=DEFAULT_WIDTH_ENTRIES,
                        help="largest dim^(1+width) the contraction may allocate")
    common.add_argument("--budget-nodes", type=int, default=DEFAULT_NODE_BUDGET,
                        help="node budget of the homomorphism search")
    common.add_argument("--machine", action="store_true", help="key=value output")
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(prog="hopfz", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    hopf = sub.add_parser("hopf", help="Hopf algebra checks")
    hsub = hopf.add_subparsers(dest="action", required=True)
    h = hsub.add_parser("validate", parents=[common], help="axioms, flags and integrals")
    h.add_argument("algebra")
    h.set_defaults(func=cmd_hopf_validate)
    h = hsub.add_parser("identities", parents=[common], help="pentagon, 0-2 and MP identities")
    h.add_argument("algebra")
    h.set_defaults(func=cmd_hopf_identities)

    og = sub.add_parser("ograph", help="o-graph checks")
    osub = og.add_subparsers(dest="action", required=True)
    o = osub.add_parser("validate", parents=[common], help="N1/N2/C1/C2/C3 report")
    o.add_argument("graph")
    o.set_defaults(func=cmd_ograph_validate)

    c = sub.add_parser("invariant", parents=[common], help="exact Z(graph; algebra)")
    c.add_argument("graph")
    c.add_argument("algebra", help="name, comma-separated names, file path or 'all'")
    c.set_defaults(func=cmd_invariant)

    c = sub.add_parser("pi1", parents=[common], help="presentation and abelianization")
    c.add_argument("graph")
    c.set_defaults(func=cmd_pi1)

    c = sub.add_parser("homcount", parents=[common], help="count homomorphisms into a group")
    c.add_argument("graph")
    c.add_argument("group")
    c.add_argument("--witnesses", type=int, default=10, help="witness cap with -v")
    c.set_defaults(func=cmd_homcount)

    c = sub.add_parser("check", parents=[common], help="Z over Q[G] against #Hom(pi1, G)")
    c.add_argument("graph")
    c.add_argument("group")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("fuzz", parents=[common], help="seeded random walk of local moves")
    c.add_argument("graph")
    c.add_argument("algebra", help="name, comma-separated names or 'all'")
    c.add_argument("--steps", type=int, default=DEFAULT_FUZZ_STEPS)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--vertex-budget", type=int, default=DEFAULT_VERTEX_BUDGET)
    c.set_defaults(func=cmd_fuzz)
    return p


_INPUT_ERRORS = (ParseError, InvalidGraph, InvalidGroup, UnsupportedAlgebra, DegeneratePairing,
                 IntegralSpaceDimension, AlgebraTooLarge, GraphTooLarge, WidthBudgetExceeded,
                 SearchBudgetExceeded, KeyError, ValueError, FileNotFoundError)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = Config(field=Field.parse(args.field), bead_cap=args.budget_bead,
                     width_budget=args.budget_width, node_budget=args.budget_nodes,
                     vertex_budget=getattr(args, "vertex_budget", DEFAULT_VERTEX_BUDGET),
                     steps=getattr(args, "steps", DEFAULT_FUZZ_STEPS),
                     seed=getattr(args, "seed", 0), machine=args.machine, verbose=args.verbose)
        return args.func(args, cfg, Output(cfg.machine))
    except (BackendMismatch, MoveBrokeGraph) as exc:
        print(f"FAIL {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except _INPUT_ERRORS as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
