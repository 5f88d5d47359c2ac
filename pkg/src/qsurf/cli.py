"""Command-line front end.

Exit codes: 0 success, 1 parse error, 2 unsupported word, 3 numerical
verification failure, 4 invalid flags.
"""

from __future__ import annotations

import argparse
import json
import sys

from .curves import circle_windings, earring, numeric_circle_windings, zeta_curve
from .errors import (
    NotPairedError,
    ParseError,
    UnsupportedWordError,
)
from .ktheory import kgroups, kgroups_json
from .operators import BlockKind, block_label, build_generator, spectrum_report
from .verification import VerifyConfig, run_all
from .words import (
    SPHERE_INVARIANT,
    SurfaceKind,
    classify,
    is_isomorphic,
    pair_structure,
    parse_word,
    quantum_invariant,
)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_UNSUPPORTED = 2
EXIT_VERIFY = 3
EXIT_FLAGS = 4


class _FlagError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _FlagError(message)


def _emit_json(data) -> None:
    sys.stdout.write(json.dumps(data, indent=2) + "\n")


def _classify_payload(cls, invariant) -> dict:
    payload: dict = {"kind": cls.kind.value}
    if cls.kind is SurfaceKind.ORIENTABLE:
        payload["g"] = cls.genus
        payload["k"] = 0
    elif cls.kind is SurfaceKind.NON_ORIENTABLE:
        payload["n"] = cls.euler_genus
        payload["k"] = cls.k
    payload.update(
        {
            "N": cls.N,
            "euler_characteristic": cls.euler_characteristic,
            "vertex_classes": cls.vertex_count,
            "invariant": list(invariant),
        }
    )
    return payload


def cmd_classify(args) -> int:
    word = parse_word(args.word)
    cls = classify(word)
    if cls.kind is SurfaceKind.UNSUPPORTED:
        print(f"unsupported word: {cls.reason}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    invariant = quantum_invariant(word)
    if args.json:
        _emit_json(_classify_payload(cls, invariant))
        return EXIT_OK
    chi = cls.euler_characteristic
    if cls.kind is SurfaceKind.ORIENTABLE:
        head = f"orientable genus {cls.genus}"
    elif cls.kind is SurfaceKind.NON_ORIENTABLE:
        head = f"non-orientable Euler genus {cls.euler_genus} (k={cls.k})"
    else:
        head = "sphere"
    print(
        f"{head}, invariant ({invariant[0]},{invariant[1]}), chi={chi}, "
        f"vertex classes {cls.vertex_count}"
    )
    return EXIT_OK


def cmd_kgroups(args) -> int:
    cls = classify(parse_word(args.word))
    if cls.kind is SurfaceKind.UNSUPPORTED:
        print(f"unsupported word: {cls.reason}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    _emit_json(kgroups_json(kgroups(cls)))
    return EXIT_OK


def cmd_iso(args) -> int:
    mode = "classical" if args.classical else "quantum"
    a, b = parse_word(args.word1), parse_word(args.word2)
    result = is_isomorphic(a, b, mode)
    if args.json:
        _emit_json(
            {
                "mode": mode,
                "isomorphic": result,
                "invariants": [list(quantum_invariant(a)), list(quantum_invariant(b))],
            }
        )
    else:
        print("true" if result else "false")
    return EXIT_OK


def cmd_windings(args) -> int:
    ps = pair_structure(parse_word(args.word))
    combinatorial = circle_windings(ps)
    payload = {
        "per_circle": list(combinatorial.per_circle),
        "around_zero": combinatorial.around_zero,
    }
    match = True
    if args.samples is not None:
        if args.samples < 16:
            print("error: --samples must be >= 16", file=sys.stderr)
            return EXIT_FLAGS
        numeric = numeric_circle_windings(zeta_curve(ps, args.samples), earring(ps.N))
        match = numeric == combinatorial
        payload.update(
            {
                "samples_per_arc": args.samples,
                "numeric_per_circle": list(numeric.per_circle),
                "numeric_around_zero": numeric.around_zero,
                "match": match,
            }
        )
    if args.json:
        _emit_json(payload)
    else:
        per = ", ".join(str(v) for v in combinatorial.per_circle)
        print(f"per_circle ({per})")
        print(f"around_zero {combinatorial.around_zero}")
        if args.samples is not None:
            print(f"numeric match at {args.samples} samples/arc: {str(match).lower()}")
    if not match:
        print("numeric windings disagree with combinatorial windings", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_spectrum(args) -> int:
    if args.dim < 4:
        print("error: --dim must be >= 4", file=sys.stderr)
        return EXIT_FLAGS
    invariant = quantum_invariant(parse_word(args.word))
    if invariant == SPHERE_INVARIANT:
        print(
            "unsupported word: the sphere has no wedge spectrum model",
            file=sys.stderr,
        )
        return EXIT_UNSUPPORTED
    N, k = invariant
    report = spectrum_report(build_generator(N, k, args.dim), earring(N))
    with open(args.out, "w", encoding="utf-8") as fp:
        fp.write("re,im,block,deviation,kind\n")
        for blk in report.blocks:
            if blk.eigenvalues is not None:
                for lam, dev in zip(blk.eigenvalues, blk.eigen_deviations):
                    fp.write(
                        f"{lam.real:.17g},{lam.imag:.17g},{blk.block_index},"
                        f"{dev:.17g},eigenvalue\n"
                    )
            if blk.artifact_eigenvalues is not None:
                for lam in blk.artifact_eigenvalues:
                    fp.write(
                        f"{lam.real:.17g},{lam.imag:.17g},{blk.block_index},,artifact\n"
                    )
            curve = blk.symbol_curve
            for v in curve.values:
                dev = abs(abs(v - report.target.circle(blk.block_index)[0])
                          - report.target.circle(blk.block_index)[1])
                fp.write(
                    f"{v.real:.17g},{v.imag:.17g},{blk.block_index},{dev:.17g},symbol\n"
                )
    if args.json:
        _emit_json(
            {
                "invariant": [N, k],
                "dim": args.dim,
                "out": args.out,
                "max_deviation": report.max_deviation,
                "max_symbol_deviation": report.max_symbol_deviation,
                "blocks": [
                    {
                        "block": blk.block_index,
                        "label": block_label(blk.spec),
                        "bilateral": blk.spec.kind is BlockKind.BILATERAL,
                    }
                    for blk in report.blocks
                ],
            }
        )
    else:
        print(f"max_deviation {report.max_deviation:.17g}")
        print(f"max_symbol_deviation {report.max_symbol_deviation:.17g}")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.dim < 4:
        print("error: --dim must be >= 4", file=sys.stderr)
        return EXIT_FLAGS
    if args.tol <= 0:
        print("error: --tol must be positive", file=sys.stderr)
        return EXIT_FLAGS
    cfg = VerifyConfig(dim=args.dim, tol=args.tol, corrupt_weight=args.corrupt_weight)
    results = run_all(cfg)
    passed = sum(1 for r in results if r.passed)
    if args.json:
        _emit_json(
            {
                "dim": args.dim,
                "tol": args.tol,
                "passed": passed == len(results),
                "checks": [
                    {
                        "module": r.module,
                        "name": r.name,
                        "passed": r.passed,
                        "detail": r.detail,
                    }
                    for r in results
                ],
            }
        )
    else:
        wm = max(len(r.module) for r in results)
        wn = max(len(r.name) for r in results)
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            print(f"{status}  {r.module:<{wm}}  {r.name:<{wn}}  {r.detail}")
        print(f"{passed}/{len(results)} checks passed (dim={args.dim}, tol={args.tol:g})")
    return EXIT_OK if passed == len(results) else EXIT_VERIFY


def build_parser() -> _Parser:
    parser = _Parser(
        prog="qsurf",
        description=(
            "Classify closed quantum surfaces from boundary words, compute "
            "their K-groups, windings, and truncated operator spectra."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="surface type and quantum invariant")
    p.add_argument("word")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("kgroups", help="K-groups with generator presentations (JSON)")
    p.add_argument("word")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_kgroups)

    p = sub.add_parser("iso", help="compare two words")
    p.add_argument("word1")
    p.add_argument("word2")
    p.add_argument("--classical", action="store_true", help="compare homeomorphism type")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("windings", help="per-circle winding vector")
    p.add_argument("word")
    p.add_argument("--samples", type=int, default=None, help="verify numerically at N samples/arc")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_windings)

    p = sub.add_parser("spectrum", help="truncated generator spectrum vs target circles")
    p.add_argument("word")
    p.add_argument("--dim", type=int, default=256, help="per-block truncation dimension")
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", help="run the full invariant suite")
    p.add_argument("--dim", type=int, default=256)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--json", action="store_true")
    p.add_argument("--corrupt-weight", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _FlagError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FLAGS
    except SystemExit as exc:  # --help
        return 0 if exc.code in (0, None) else EXIT_FLAGS
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (NotPairedError, UnsupportedWordError) as exc:
        print(f"unsupported word: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())
