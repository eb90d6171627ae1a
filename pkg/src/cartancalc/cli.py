"""Command-line front end.

Exit status: 0 on success, 1 when a verification/regression check fails,
2 on input errors (unreadable file, parse error, invalid presentation).
Output is deterministic for fixed inputs and seed; JSON output carries a
versioned schema with rational coefficients as "p/q" strings.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from .cyclic import CyclicComplex, check_cyclic_cartan
from .derivations import DerComplex
from .dsl import SourceDocument, element_to_source, parse_algebra, presentation_hash
from .errors import CartanError, ParseError
from .fixtures import DEFAULT_REPRODUCE, FIXTURE_NAMES, fixture_text
from .hochschild import HochschildComplex
from .loop import AlgebraComplex, bv_on_cohomology, pairing_matrix
from .reproduce import CHECKERS
from .results import (
    CheckReport,
    CheckRow,
    CohomologyRow,
    CohomologyTable,
    MatrixReport,
    Report,
    frac_str,
    serialize_result,
)
from .suite import run_identity_suite


def _load(path: str) -> SourceDocument:
    if path in FIXTURE_NAMES:
        return parse_algebra(fixture_text(path))
    return parse_algebra(Path(path).read_text(encoding="utf-8"))


def _coh_table(complex_, degrees, title, with_reps, to_element, name="H") -> CohomologyTable:
    rows = []
    for n in degrees:
        space = complex_.cohomology(n)
        basis = ()
        if with_reps and space.dimension:
            basis = tuple(
                element_to_source(to_element(n, rep)) for rep in space.representatives
            )
        rows.append(CohomologyRow(n, space.dimension, basis))
    return CohomologyTable(title, rows, name=name)


def main(argv: Optional[List[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="cartancalc",
        description="Exact computations with Sullivan presentations: loop"
        " models, Cartan calculus operators, Hochschild and cyclic complexes.",
    )
    parser.add_argument("--format", choices=("table", "json"), default="table")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        if name != "reproduce":
            p.add_argument("input", help=".cdga file (or a fixture name)")
        p.add_argument("--max-degree", type=int, default=12)
        p.add_argument("--seed", type=int, default=0)
        return p

    p = add("cohomology", "cohomology of the presented algebra")
    p.add_argument("--reps", action="store_true", help="print representatives")
    p = add("loop", "cohomology of the free-loop-space model")
    p.add_argument("--reps", action="store_true")
    p.add_argument("--bv", action="store_true", help="print the BV operator matrices")
    p = add("hodge", "cohomology of the word-length k part of the loop model")
    p.add_argument("-k", type=int, default=1)
    p.add_argument("--reps", action="store_true")
    p = add("der-homology", "homology of the derivation Lie algebra (degrees >= 2)")
    p.add_argument("--reps", action="store_true")
    p = add("cartan-check", "randomized verification of all calculus identities")
    p.add_argument("--trials", type=int, default=25)
    p = add("hochschild", "dimensions of the Hochschild homology")
    p = add("cyclic", "cohomology of (L[u], d + u s)")
    p.add_argument("--check", action="store_true",
                   help="also run the contraction-homotopy checks for each"
                   " derivation declared in the file")
    p.add_argument("--trials", type=int, default=10)
    p = add("pairing", "the evaluation pairing non-degeneracy check")
    p.add_argument("-k", type=int, default=0)
    p.add_argument("-n", type=int, default=0)
    p = add("reproduce", "re-derive the worked examples shipped as fixtures")
    p.add_argument("fixture", help=f"one of: {', '.join(FIXTURE_NAMES)}, or 'all'")
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("--heavy", action="store_true",
                   help="include the formal-dimension-228 fixture (and allow"
                   " it when named explicitly)")

    args = parser.parse_args(argv)

    try:
        return _dispatch(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CartanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    if args.command == "reproduce":
        return _cmd_reproduce(args)

    doc = _load(args.input)
    report = Report(
        command=args.command,
        input_name=args.input,
        presentation_hash=presentation_hash(doc),
        options={"max_degree": args.max_degree},
        seed=args.seed,
    )
    nmax = args.max_degree
    ok = True

    if args.command == "cohomology":
        cx = AlgebraComplex(doc.algebra)
        report.records.append(
            _coh_table(
                cx,
                range(nmax + 1),
                "cohomology of the presented algebra",
                args.reps,
                cx.from_vector,
            )
        )
    elif args.command == "loop":
        model = doc.loop()
        cx = model.complex
        report.records.append(
            _coh_table(
                cx, range(nmax + 1), "loop model cohomology", args.reps, cx.from_vector
            )
        )
        if args.bv:
            for n in range(1, nmax + 1):
                sl = bv_on_cohomology(model, n)
                if not sl.source_labels and not sl.target_labels:
                    continue
                entries = tuple(
                    tuple(sl.columns[j].get(i, 0) for j in range(len(sl.source_labels)))
                    for i in range(len(sl.target_labels))
                )
                report.records.append(
                    MatrixReport(
                        f"BV operator H^{n} -> H^{n-1}",
                        sl.target_labels,
                        sl.source_labels,
                        entries,
                    )
                )
    elif args.command == "hodge":
        model = doc.loop()
        report.options["k"] = args.k
        cx = model.hodge(args.k)
        report.records.append(
            _coh_table(
                cx,
                range(nmax + 1),
                f"loop model cohomology, word length {args.k}",
                args.reps,
                cx.from_vector,
            )
        )
    elif args.command == "der-homology":
        cx = DerComplex(doc.algebra)
        rows = []
        for n in range(2, nmax + 1):
            space = cx.cohomology(-n)
            basis = ()
            if args.reps and space.dimension:
                basis = tuple(
                    str(cx.from_vector(-n, rep)) for rep in space.representatives
                )
            rows.append(CohomologyRow(n, space.dimension, basis))
        report.records.append(
            CohomologyTable(
                "derivation Lie algebra homology (homological degrees)",
                rows,
                name="H",
                homological=True,
            )
        )
    elif args.command == "cartan-check":
        rep = run_identity_suite(
            doc.algebra, max_degree=nmax, trials=args.trials, seed=args.seed
        )
        report.options["trials"] = args.trials
        report.records.append(rep)
        ok = rep.ok
    elif args.command == "hochschild":
        cx = HochschildComplex(doc.algebra)
        report.records.append(
            _coh_table(
                cx,
                range(nmax + 1),
                "Hochschild homology dimensions (by total degree)",
                False,
                None,
                name="HH",
            )
        )
    elif args.command == "cyclic":
        model = doc.loop()
        cx = CyclicComplex(model)
        report.records.append(
            _coh_table(
                cx,
                range(nmax + 1),
                "cyclic (u-extended) cohomology",
                False,
                None,
                name="HC",
            )
        )
        if args.check:
            report.options["trials"] = args.trials
            for name in sorted(doc.derivations):
                lines = check_cyclic_cartan(
                    model, doc.derivations[name], nmax, args.trials, args.seed
                )
                rep = CheckReport(
                    f"contraction homotopy checks for {name}",
                    [CheckRow(l.name, l.ok, l.witness) for l in lines],
                )
                report.records.append(rep)
                ok = ok and rep.ok
    elif args.command == "pairing":
        model = doc.loop()
        report.options.update({"k": args.k, "n": args.n})
        res = pairing_matrix(model, args.k, args.n)
        notes = (
            f"square: {res.square}",
            f"full rank: {res.full_rank}",
            f"top degree: {res.top_degree}",
        )
        report.records.append(
            MatrixReport(
                f"evaluation pairing, word length {res.k}, twist {res.n}"
                f" ({res.rows} x {res.cols})",
                tuple(f"f{i}" for i in range(res.rows)),
                tuple(f"a{j}" for j in range(res.cols)),
                res.matrix,
                notes,
            )
        )
        ok = res.square and res.full_rank
    else:  # pragma: no cover
        raise CartanError(f"unhandled command {args.command}")

    sys.stdout.write(serialize_result(report, args.format))
    return 0 if ok else 1


def _cmd_reproduce(args) -> int:
    if args.fixture == "all":
        names = list(DEFAULT_REPRODUCE) + (["elliptic228"] if args.heavy else [])
    else:
        if args.fixture not in FIXTURE_NAMES:
            print(
                f"error: unknown fixture {args.fixture!r};"
                f" available: {', '.join(FIXTURE_NAMES)}",
                file=sys.stderr,
            )
            return 2
        if args.fixture == "elliptic228" and not args.heavy:
            print(
                "error: the 228-dimensional fixture is gated behind --heavy"
                " (set --max-degree to choose the cap)",
                file=sys.stderr,
            )
            return 2
        names = [args.fixture]
    ok = True
    for name in names:
        doc = _load(name)
        kwargs = {"trials": args.trials, "seed": args.seed}
        if args.max_degree != 12:
            kwargs["max_degree"] = args.max_degree
        rep = CHECKERS[name](doc, **kwargs)
        report = Report(
            command="reproduce",
            input_name=name,
            presentation_hash=presentation_hash(doc),
            options={k: v for k, v in kwargs.items() if k != "trials"} | {"trials": args.trials},
            seed=args.seed,
            records=[rep],
        )
        sys.stdout.write(serialize_result(report, args.format))
        ok = ok and rep.ok
    return 0 if ok else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
