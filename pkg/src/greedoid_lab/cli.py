"""``greedoid-lab`` command line.

Exit codes: 0 when every requested check passes (or output was written), 1 when
a property is violated (the witness is printed), 2 for usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .analysis import is_interval, is_optimistic
from .constructions import (
    GraphInvalid,
    NotSubcardinal,
    ValidationFailed,
    double_shelling,
    is_antimatroid,
    poset_antimatroid,
    trim,
    ubg,
)
from .core import AxiomViolation, EmptyFamily, GreedoidError, NotInterval, NotNormal
from .fixtures import (
    FixtureError,
    format_greedoid,
    load_greedoid,
    load_rank,
    parse_graph,
    parse_poset,
    parse_weights,
)
from .flats import NotALattice, check_forking, flat_lattice, is_semimodular, kernels_intersection_closed
from .greatest import ITEM_NAMES, ITEMS, audit_equivalences
from .harness import export_dot, greedy_basis, survey
from .polymatroid import (
    NotARepresentation,
    check_galois,
    check_polymatroid,
    is_aligned,
    is_representation,
    verify_aligned_consequences,
)

OK, VIOLATED, USAGE = 0, 1, 2


class Usage(Exception):
    pass


def _fmt(g, w):
    """Readable witness: masks become sets, tuples of ids become words."""
    alpha = g.alphabet

    def conv(x):
        if isinstance(x, bool) or x is None or isinstance(x, str):
            return x
        if isinstance(x, int):
            return alpha.format_set(x)
        if isinstance(x, tuple):
            return tuple(conv(y) for y in x)
        return x

    return conv(w)


def _word(g, w):
    return g.alphabet.format_word(w)


def _report(name, check, g=None, fmt=None):
    if check.ok:
        print(f"{name}\tpass")
        return True
    w = fmt(check.witness) if fmt else (_fmt(g, check.witness) if g is not None else check.witness)
    print(f"{name}\tFAIL\t{w}")
    return False


# --- subcommands ----------------------------------------------------------------

CHECK_PROPS = ("normal", "interval", "optimism", "antimatroid", "semimodular", "kernel-meet", "forking")


def cmd_check(args):
    g = load_greedoid(args.fixture)
    props = _split(args.props, CHECK_PROPS)
    ok = True
    for p in props:
        if p == "normal":
            ok &= _report("normal", _check(g.loop_mask == 0, g.loop_mask), g)
        elif p == "interval":
            ok &= _report("interval", is_interval(g), g)
        elif p == "optimism":
            ok &= _report("optimism", is_optimistic(g), g,
                          lambda w: f"letter {g.alphabet.letters[w[0]]} word {_word(g, w[1])}")
        elif p == "antimatroid":
            ok &= _report("antimatroid", is_antimatroid(g), g)
        else:
            try:
                lat = flat_lattice(g)
            except (NotInterval, NotNormal) as exc:
                print(f"{p}\tFAIL\t{exc}")
                ok = False
                continue
            fn = {"semimodular": is_semimodular, "kernel-meet": kernels_intersection_closed,
                  "forking": check_forking}[p]
            ok &= _report(p, fn(lat), g, lambda w: _flat_witness(lat, w))
    return OK if ok else VIOLATED


def _flat_witness(lat, w):
    """Flat ids become ``[least member]``; a forking witness also carries a feasible set and a letter."""
    alpha = lat.greedoid.alphabet

    def flat(i):
        return "[" + alpha.format_set(lat.flats[i].members[0]) + "]"

    if isinstance(w[0], str):
        return f"{w[0]} {flat(w[1][0])} {flat(w[1][1])}"
    if len(w) == 4:
        i, j, mu, x = w
        return f"{flat(i)} {flat(j)} set {alpha.format_set(mu)} letter {alpha.letters[x]}"
    return f"{flat(w[0])} {flat(w[1])}"


def _check(ok, witness):
    from .core import Check

    return Check(ok, None if ok else witness)


def cmd_lattice(args):
    g = load_greedoid(args.fixture)
    lat = flat_lattice(g)
    alpha = g.alphabet
    print("id\trank\tkernel\tcontinuations\tmembers")
    for f in lat.flats:
        members = " ".join(alpha.format_set(m) for m in f.members)
        print(f"{f.id}\t{f.rank}\t{alpha.format_set(f.kernel)}\t{alpha.format_set(f.gamma)}\t{members}")
    print("covers\t" + " ".join(f"{i}<{j}" for i, j in lat.covers))
    if args.dot:
        Path(args.dot).write_text(export_dot(lat))
    return OK


REP_CHECKS = ("polymatroid", "representation", "aligned", "galois", "consequences")


def cmd_rep(args):
    g = load_greedoid(args.greedoid)
    rho = load_rank(args.rank, g.alphabet)
    checks = _split(args.check, REP_CHECKS)
    ok = True
    for c in checks:
        if c == "polymatroid":
            ok &= _report("polymatroid", check_polymatroid(rho), g)
        elif c == "representation":
            ok &= _report("representation", is_representation(rho, g), g)
        elif c == "aligned":
            try:
                ok &= _report("aligned", is_aligned(rho, g), g)
            except NotARepresentation as exc:
                print(f"aligned\tFAIL\tnot a representation, witness {_fmt(g, exc.witness)}")
                ok = False
        elif c == "galois":
            try:
                pair = check_galois(rho, g)
            except NotARepresentation as exc:
                print(f"galois\tFAIL\tnot a representation, witness {_fmt(g, exc.witness)}")
                ok = False
                continue
            ok &= _report("adjunction", pair.adjunction, g)
            ok &= _report("cover-preserving", pair.cover_preserving, g)
            # insertion and isomorphism are informative; they may fail for aligned pairs
            _report("insertion", pair.insertion, g)
            _report("isomorphism", pair.isomorphism, g)
        elif c == "consequences":
            report = verify_aligned_consequences(rho, g)
            for name, chk in report.entries.items():
                ok &= _report(name, chk, g)
    return OK if ok else VIOLATED


def cmd_audit(args):
    g = load_greedoid(args.fixture)
    m = audit_equivalences(g, budget=args.budget)
    print("item\tvalue\tdescription")
    for i in ITEMS:
        print(f"{i}\t{m.items[i]}\t{ITEM_NAMES[i]}")
    failed = m.failed_implications()
    for i, j in failed:
        print(f"implication {i}=>{j}\tFAIL")
    if args.report:
        lines = [f"item\t{i}\t{m.items[i]}" for i in ITEMS]
        lines += [f"implication\t{i}=>{j}\t{v}" for (i, j), v in sorted(m.implications.items())]
        Path(args.report).write_text("\n".join(lines) + "\n")
    if failed and args.emit_counterexample:
        out = Path(args.emit_counterexample)
        out.mkdir(parents=True, exist_ok=True)
        name = Path(args.fixture).stem + ".greedoid"
        items = " ".join(f"{i}={m.items[i]}" for i in ITEMS)
        reason = "; ".join(f"{i}=>{j} fails" for i, j in failed)
        (out / name).write_text(format_greedoid(g, [f"reason: {reason}", f"items: {items}"]))
    return VIOLATED if failed else OK


def cmd_survey(args):
    rep = survey(args.n, out_dir=args.out, dedup=not args.labelled, budget=args.budget,
                 workers=args.workers)
    print(rep.table())
    print(f"instances: {rep.total}; counterexamples: {len(rep.counterexamples)}")
    if args.report:
        Path(args.report).write_text("\n".join(rep.lines()) + "\n")
    return OK


def cmd_construct(args):
    kind = args.kind
    files = args.files
    need = {"ubg": 1, "poset-anti": 1, "double-shelling": 1, "trim": 2}[kind]
    if len(files) != need:
        raise Usage(f"construct {kind} takes {need} file(s)")
    if kind == "ubg":
        g = ubg(parse_graph(Path(files[0]).read_text()))
    elif kind == "poset-anti":
        g = poset_antimatroid(parse_poset(Path(files[0]).read_text()))
    elif kind == "double-shelling":
        g = double_shelling(parse_poset(Path(files[0]).read_text()))
    else:
        a = load_greedoid(files[1])
        rho = load_rank(files[0], a.alphabet)
        g = trim(rho, a)
    sys.stdout.write(format_greedoid(g))
    return OK


def cmd_greedy(args):
    g = load_greedoid(args.fixture)
    w = parse_weights(g.alphabet, args.weights)
    print(_word(g, greedy_basis(g, w)))
    return OK


def cmd_export(args):
    g = load_greedoid(args.fixture)
    if args.rank:
        rho = load_rank(args.rank, g.alphabet)
        text = export_dot(check_galois(rho, g))
    else:
        text = export_dot(flat_lattice(g))
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return OK


def _split(raw, allowed):
    items = [x.strip() for x in raw.split(",") if x.strip()]
    bad = [x for x in items if x not in allowed]
    if bad:
        raise Usage(f"unknown property {bad[0]!r}; choose from {', '.join(allowed)}")
    return items


def build_parser():
    p = argparse.ArgumentParser(prog="greedoid-lab", description="Greedoid and polymatroid workbench.")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("check", help="property checks on a greedoid fixture")
    s.add_argument("fixture")
    s.add_argument("--props", default="normal,interval,optimism",
                   help="comma list from: " + ",".join(CHECK_PROPS))
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("lattice", help="print the lattice of flats")
    s.add_argument("fixture")
    s.add_argument("--dot", help="write the Hasse diagram as DOT")
    s.set_defaults(fn=cmd_lattice)

    s = sub.add_parser("rep", help="check a rank table against a greedoid")
    s.add_argument("greedoid")
    s.add_argument("rank")
    s.add_argument("--check", default="representation", help="comma list from: " + ",".join(REP_CHECKS))
    s.set_defaults(fn=cmd_rep)

    s = sub.add_parser("audit", help="decide the five equivalent conditions")
    s.add_argument("fixture")
    s.add_argument("--budget", type=int, default=200_000)
    s.add_argument("--report", help="write a tab-separated report")
    s.add_argument("--emit-counterexample", metavar="DIR")
    s.set_defaults(fn=cmd_audit)

    s = sub.add_parser("survey", help="audit every normal greedoid on n letters")
    s.add_argument("n", type=int, choices=range(0, 5))
    s.add_argument("--out", help="directory for counterexample fixtures")
    s.add_argument("--report", help="write a tab-separated report")
    s.add_argument("--labelled", action="store_true", help="do not merge letter permutations")
    s.add_argument("--budget", type=int, default=200_000)
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(fn=cmd_survey)

    s = sub.add_parser("construct", help="build a greedoid fixture")
    s.add_argument("kind", choices=["ubg", "poset-anti", "double-shelling", "trim"])
    s.add_argument("files", nargs="+", help="graph, poset, or: matroid-rank antimatroid")
    s.set_defaults(fn=cmd_construct)

    s = sub.add_parser("greedy", help="greedy basis for letter weights")
    s.add_argument("fixture")
    s.add_argument("--weights", required=True, help="e.g. a=3,b=2,c=1")
    s.set_defaults(fn=cmd_greedy)

    s = sub.add_parser("export", help="DOT for the flat lattice, or the Galois pair with --rank")
    s.add_argument("fixture")
    s.add_argument("--rank")
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except (Usage, FixtureError, OSError, GraphInvalid, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (AxiomViolation, EmptyFamily) as exc:
        print(f"greedoid axioms\tFAIL\t{exc}")
        return VIOLATED
    except (NotInterval, NotNormal, NotALattice, NotSubcardinal, ValidationFailed) as exc:
        print(f"FAIL\t{exc}")
        return VIOLATED
    except GreedoidError as exc:
        print(f"FAIL\t{exc}")
        return VIOLATED


if __name__ == "__main__":
    sys.exit(main())
