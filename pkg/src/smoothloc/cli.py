"""Command-line entry point.

Exit status: 0 on success, 1 when a check fails or an object is structurally
invalid, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from pathlib import Path

from .bits import bits
from .bruns_lakser import JoinSemilattice, enumerate_AU
from .catalog import named_frame
from .errors import FormatError, LatticeError, NoLiftError
from .formats import parse_dot, parse_lattice, parse_morphism, to_dot
from .order import FiniteFrame, FinitePoset, build_frame, verify_heyting_laws
from .reports import FAIL

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Bad input file or name; maps to exit status 2."""


def _read_poset(ref: str, base: Path | None = None) -> FinitePoset:
    """A lattice file (text format, or DOT by extension) or a built-in name."""
    path = Path(ref)
    candidates = [path] if base is None else [base / ref, base / f"{ref}.lat", path]
    for p in candidates:
        if p.is_file():
            text = p.read_text()
            return parse_dot(text) if p.suffix == ".dot" else parse_lattice(text)
    try:
        return named_frame(ref).poset
    except KeyError:
        raise UsageError(f"no lattice file or built-in frame named {ref!r}") from None


def _frame(ref: str, base: Path | None = None) -> FiniteFrame:
    return build_frame(_read_poset(ref, base))


def _morphism(ref: str):
    from .lifts import FrameMorphism

    path = Path(ref)
    if not path.is_file():
        raise UsageError(f"no morphism file {ref!r}")
    spec = parse_morphism(path.read_text())
    L, M = _frame(spec.dom, path.parent), _frame(spec.cod, path.parent)
    table = dict(spec.mapping)
    if sorted(table) != list(range(L.n)):
        raise FormatError(f"morphism must map every element 0..{L.n - 1} exactly once")
    return FrameMorphism(L, M, [table[i] for i in range(L.n)], name=spec.name)


def _print_witness(w) -> None:
    print(f"witness: {w}")


# subcommands --------------------------------------------------------------------------


def cmd_validate(args) -> int:
    L = _frame(args.frame)
    laws = verify_heyting_laws(L)
    failed = sorted(k for k, v in laws.items() if not v)
    print(f"{L.name}: {L.n} elements, distributive lattice")
    if failed:
        print(f"Heyting laws failing: {', '.join(failed)}")
        for k in failed:
            _print_witness((k, laws[k].witness))
        return EXIT_FAIL
    print("Heyting laws H1-H12 verified")
    return EXIT_OK


def cmd_sublocales(args) -> int:
    from .sublocales import closed_joins, enumerate_sublocales, open_meets, smooth_sublocales

    L = _frame(args.frame)
    SL = enumerate_sublocales(L)
    pick = {
        "all": lambda: (list(range(len(SL))), "sublocales"),
        "smooth": lambda: (list(smooth_sublocales(L, SL).indices), "smooth sublocales"),
        "closed-joins": lambda: (list(closed_joins(L, SL).indices), "joins of closed sublocales"),
        "open-meets": lambda: (list(open_meets(L, SL).indices), "intersections of open sublocales"),
    }
    ids, noun = pick[args.which]()
    print(f"{len(ids)} {noun}")
    for i in ids:
        print(f"  {SL[i].format()}")
    return EXIT_OK


def cmd_lc(args) -> int:
    from .lc import lc_elements

    L = _frame(args.frame)
    LC = lc_elements(L)
    print(f"{LC.n} locally closed sublocales (canonical pairs)")
    for i, p in enumerate(LC.pairs):
        print(f"  {p.format(L)}  = {LC.sublocale(i).format()}")
    return EXIT_OK


def cmd_bruns_lakser(args) -> int:
    S = JoinSemilattice(_read_poset(args.semilattice))
    au = enumerate_AU(S)
    law = au.verify_frame_law()
    print(f"{len(au)} admissible upper sets of {S.name or 'S'} ({S.n} elements)")
    for U in au.elements:
        print("  {" + ",".join(S.label(x) for x in bits(U)) + "}")
    if not law:
        print("frame law fails")
        _print_witness(law.witness)
        return EXIT_FAIL
    print("AU(S) is a frame; verified")
    return EXIT_OK


def cmd_iso(args) -> int:
    from .correspondence import correspondence, iso_table
    from .errors import IsoFailure
    from .sublocales import enumerate_sublocales

    L = _frame(args.frame)
    head = "S_b ≅ AU(LC)" if args.flavor == "smooth" else "S_c ≅ AU(L)"
    try:
        iso = iso_table(L, args.flavor)
    except IsoFailure as exc:
        print(f"{head}: failed ({exc})")
        _print_witness(exc.witness)
        return EXIT_FAIL
    corr = correspondence(L, args.flavor)
    SL = enumerate_sublocales(L)
    print(f"{head}: {len(iso)} ↔ {len(iso)}, verified")
    for s, u in iso.pairs:
        print(f"  {SL[s].format()}  ↔  {{{','.join(corr.index.label(x) for x in bits(u))}}}")
    return EXIT_OK


def cmd_lift(args) -> int:
    from .lifts import build_sb_lift, check_s_lift, check_WDc, check_WDo

    f = _morphism(args.morphism)
    if args.target == "sb":
        try:
            lift = build_sb_lift(f)
        except NoLiftError as exc:
            print(f"no lift: {exc}")
            _print_witness(exc.witness)
            return EXIT_FAIL
        print("lift exists; verified (" + ", ".join(sorted(lift.checks)) + ")")
        for src, dst in lift.rows():
            print(f"  {src}  ↦  {dst}")
        return EXIT_OK
    if args.target in ("sc", "so"):
        label, v = ("WDc", check_WDc(f)) if args.target == "sc" else ("WDo", check_WDo(f))
        if not v:
            print(f"{label} fails; no lift")
            _print_witness(v.witness)
            return EXIT_FAIL
        print(f"{label} holds; lift exists ({v.witness['states']} reachable states checked)")
        return EXIT_OK
    records = check_s_lift(f)
    for r in records:
        print(f"  {r['check']}: {r['status']}")
    if any(r["status"] == FAIL for r in records):
        return EXIT_FAIL
    print("WDs holds; generator assignment verified")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .checks import suite_jobs
    from .corpus import CorpusSpec, run_suite

    n = args.max_size
    spec = CorpusSpec(
        max_frame_size=n,
        max_semilattice_size=min(6, n),
        topology_points=min(4, n // 2),
        morphism_frame_size=min(6, n),
        seed=args.seed,
        extra_fixtures=tuple((Path(p).stem, Path(p).read_text()) for p in args.fixture),
    )
    records = run_suite(suite_jobs(spec), out=args.out, workers=args.workers)
    by_check = Counter((r["check"], r["status"]) for r in records)
    for (check, status), count in sorted(by_check.items()):
        print(f"{check:40s} {status:15s} {count}")
    fails = [r for r in records if r["status"] == FAIL]
    print(f"{len(records)} records, {len(fails)} failed")
    for r in fails[:10]:
        print(f"  FAIL {r['id']} {r['check']}: {r['witness']}")
    return EXIT_FAIL if fails else EXIT_OK


def cmd_hasse(args) -> int:
    from .lc import lc_elements
    from .sublocales import enumerate_sublocales, smooth_sublocales

    P = _read_poset(args.object)
    if args.of == "object":
        print(to_dot(P), end="")
        return EXIT_OK
    L = build_frame(P)
    if args.of == "sublocales":
        Q = enumerate_sublocales(L).poset()
    elif args.of == "smooth":
        Q = smooth_sublocales(L).poset()
    elif args.of == "lc":
        Q = lc_elements(L).poset
    else:
        au = enumerate_AU(lc_elements(L))
        Q = au.frame.poset
    print(to_dot(Q), end="")
    return EXIT_OK


# parser -------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="smoothloc", description="Sublocales, smooth sublocales and lifting checks on finite frames.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check that a lattice is a frame and verify the Heyting laws")
    s.add_argument("frame")
    s.set_defaults(run=cmd_validate)

    s = sub.add_parser("sublocales", help="list sublocales")
    s.add_argument("frame")
    s.add_argument("--which", choices=["all", "smooth", "closed-joins", "open-meets"], default="all")
    s.set_defaults(run=cmd_sublocales)

    s = sub.add_parser("lc", help="list the locally closed sublocales as canonical pairs")
    s.add_argument("frame")
    s.set_defaults(run=cmd_lc)

    s = sub.add_parser("bruns-lakser", help="admissible upper sets of a join-semilattice")
    s.add_argument("semilattice")
    s.set_defaults(run=cmd_bruns_lakser)

    s = sub.add_parser("iso", help="verify the completion isomorphism")
    s.add_argument("frame")
    s.add_argument("--flavor", choices=["smooth", "closed"], default="smooth")
    s.set_defaults(run=cmd_iso)

    s = sub.add_parser("lift", help="decide whether a frame map lifts")
    s.add_argument("morphism")
    s.add_argument("--target", choices=["sb", "sc", "so", "s"], default="sb")
    s.set_defaults(run=cmd_lift)

    s = sub.add_parser("verify", help="run every registered check over the corpus")
    s.add_argument("--max-size", type=int, default=8)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", default=None)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--fixture", action="append", default=[], help="extra lattice file to include")
    s.set_defaults(run=cmd_verify)

    s = sub.add_parser("hasse", help="Hasse diagram as DOT")
    s.add_argument("object")
    s.add_argument("--format", choices=["dot"], default="dot")
    s.add_argument("--of", choices=["object", "sublocales", "smooth", "lc", "au-lc"], default="object")
    s.set_defaults(run=cmd_hasse)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (UsageError, FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LatticeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        if exc.witness is not None:
            print(f"witness: {exc.witness}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
