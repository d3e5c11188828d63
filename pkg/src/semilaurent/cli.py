"""Command-line interface.

Exit codes: 0 for success / all checks passing, 1 for mathematical failures
(verification reports that are not ok, untrivializable input, ...), 2 for
usage errors. Reports are canonical JSON on stdout; outputs are byte-identical
for identical (input, seed, precision, version).
"""

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .cocycles import Semigroup, verify_cocycle, verify_certificate, twist
from .corpus import GENERATOR_VERSION_HASH, round_trip_case
from .errors import SemilaurentError
from .jsonio import (
    canonical_dumps,
    decode_certificate,
    decode_cocycle,
    decode_gauge,
    encode_certificate,
    encode_cocycle,
)
from .localsolve import classify_degree_one, trivialize
from .pgl import (
    PGLDegreeOneClass,
    _random_transform,
    cremona_identities,
    h_functional_equation_check,
    omega_class_check,
    verify_chain_rule,
)
from .ratfunc import parse_rational
from .rng import SplitMix64
from .scalars import FieldDescriptor

USAGE_ERROR = 2
MATH_FAILURE = 1


def _parse_field(text):
    if text in ("q", "Q", "rationals"):
        return FieldDescriptor.rationals()
    if text.startswith("cyclo:"):
        return FieldDescriptor.cyclotomic(int(text.split(":", 1)[1]))
    raise argparse.ArgumentTypeError(
        f"field must be 'q' or 'cyclo:N', got {text!r}"
    )


def _parse_precision(text):
    value = int(text)
    if value < 8:
        raise argparse.ArgumentTypeError("precision must be at least 8")
    return value


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        print(f"error: no such file: {path}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR) from None
    except json.JSONDecodeError as exc:
        print(f"error: {path} is not valid JSON: {exc}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR) from None


def _emit(report_obj, out=None):
    text = canonical_dumps(report_obj)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    sys.stdout.write(text)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="semilaurent",
        description=(
            "Exact gauge trivialization of semi-linear matrix cocycles over "
            "Laurent series fields, plus symbolic projective/Cremona checks. "
            "Rational-function inputs use integer literals, variables x1..xn "
            "and the operators + - * / ^ with parentheses."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check cocycle compatibility")
    p.add_argument("cocycle", help="cocycle JSON file")
    p.add_argument("--precision", type=_parse_precision, default=None)

    p = sub.add_parser("twist", help="apply a gauge to a cocycle")
    p.add_argument("cocycle")
    p.add_argument("gauge", help="gauge JSON file (a series matrix)")
    p.add_argument("--out", default=None)

    p = sub.add_parser("trivialize", help="compute a trivialization certificate")
    p.add_argument("cocycle")
    p.add_argument("--precision", type=_parse_precision, default=None)
    p.add_argument("--trials", type=int, default=32, help="cyclic vector trials")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)

    p = sub.add_parser("classify", help="classify a rank-1 cocycle")
    p.add_argument("cocycle")
    p.add_argument("--precision", type=_parse_precision, default=None)

    p = sub.add_parser("verify-cert", help="check a certificate against a cocycle")
    p.add_argument("cocycle")
    p.add_argument("certificate")

    p = sub.add_parser("pgl-check", help="degree-one chain rule on random or given transforms")
    p.add_argument("--n", type=int, default=2, help="projective dimension")
    p.add_argument("--m", type=int, default=None, help="class power (default n+1)")
    p.add_argument(
        "--character",
        default="canonical",
        help="'trivial', 'canonical', or 'det:J' for an explicit determinant power",
    )
    p.add_argument("--pairs", type=int, default=10, help="random transforms to draw")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--entries-bound", type=int, default=3)
    p.add_argument("--transforms", default=None,
                   help="JSON file with a list of (n+1)x(n+1) integer matrices")
    p.add_argument("--omega", action="store_true",
                   help="also compare the Jacobian cocycle against the m=n+1 formula")
    p.add_argument("--field", type=_parse_field, default=FieldDescriptor.rationals())

    p = sub.add_parser("cremona-check", help="verify the birational generator identities")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--field", type=_parse_field, default=FieldDescriptor.rationals())

    p = sub.add_parser("h-check", help="functional equations for a matrix h(t)")
    p.add_argument("matrix", help="JSON file: {\"entries\": [[\"t^2\", ...], ...]} "
                                  "with x1 as the variable")
    p.add_argument("--field", type=_parse_field, default=FieldDescriptor.rationals())

    p = sub.add_parser("gen-corpus", help="write seeded twisted-constant cocycles")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--semigroup", required=True, help="comma-separated generators")
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--precision", type=_parse_precision, default=64)
    p.add_argument("--field", type=_parse_field, default=FieldDescriptor.rationals())
    p.add_argument("--out", required=True, help="output directory")
    return parser


def _cmd_verify(args):
    c = decode_cocycle(_load_json(args.cocycle))
    if args.precision:
        c = c.truncate(args.precision)
    report = verify_cocycle(c)
    _emit({"check": "cocycle", **report.as_dict()})
    return 0 if report.ok else MATH_FAILURE


def _cmd_twist(args):
    c = decode_cocycle(_load_json(args.cocycle))
    g = decode_gauge(_load_json(args.gauge), c.field)
    twisted = twist(c, g)
    _emit(encode_cocycle(twisted), out=args.out)
    return 0


def _cmd_trivialize(args):
    c = decode_cocycle(_load_json(args.cocycle))
    cert = trivialize(
        c, target_prec=args.precision, max_trials=args.trials, seed=args.seed
    )
    _emit(encode_certificate(cert), out=args.out)
    return 0


def _cmd_classify(args):
    c = decode_cocycle(_load_json(args.cocycle))
    cls, red = classify_degree_one(c, args.precision)
    from .jsonio import encode_scalar, encode_series_matrix

    report = {
        "check": "degree-one",
        "slope": [str(cls.slope.numerator), str(cls.slope.denominator)],
        "exactSlope": [
            str(red.exact_slope.numerator),
            str(red.exact_slope.denominator),
        ],
        "characterValues": {
            str(p): encode_scalar(v) for p, v in cls.character_values.items()
        },
        "monomialExponents": {str(p): e for p, e in red.exponents.items()},
        "reductionGauge": encode_series_matrix(red.gauge.matrix),
        "trivializingGauge": (
            encode_series_matrix(red.trivializing_gauge.matrix)
            if red.trivializing_gauge is not None
            else None
        ),
    }
    _emit(report)
    return 0


def _cmd_verify_cert(args):
    c = decode_cocycle(_load_json(args.cocycle))
    cert = decode_certificate(_load_json(args.certificate), c.semigroup, c.field)
    report = verify_certificate(c, cert)
    _emit({"check": "certificate", **report.as_dict()})
    return 0 if report.ok else MATH_FAILURE


def _parse_character(text, n, m):
    if text == "trivial":
        return PGLDegreeOneClass(m, None)
    if text == "canonical":
        return PGLDegreeOneClass.canonical(n, m)
    if text.startswith("det:"):
        return PGLDegreeOneClass(m, int(text.split(":", 1)[1]))
    raise SystemExit(USAGE_ERROR)


def _cmd_pgl_check(args):
    field = args.field
    n = args.n
    m = args.m if args.m is not None else n + 1
    cls = _parse_character(args.character, n, m)
    if args.transforms:
        from .pgl import ProjectiveTransform

        data = _load_json(args.transforms)
        transforms = [
            ProjectiveTransform.from_int_rows(field, rows) for rows in data
        ]
    else:
        rng = SplitMix64(args.seed)
        transforms = [
            _random_transform(field, n, rng, args.entries_bound)
            for _ in range(args.pairs)
        ]
    report = verify_chain_rule(transforms, cls)
    out = report.as_dict()
    out["n"] = n
    out["m"] = m
    out["character"] = args.character
    ok = report.ok
    if args.omega:
        omega = omega_class_check(field, n)
        out["omega"] = omega.as_dict()
        ok = ok and omega.ok
    _emit(out)
    return 0 if ok else MATH_FAILURE


def _cmd_cremona(args):
    report = cremona_identities(args.field, args.n)
    _emit(report.as_dict())
    return 0 if report.ok else MATH_FAILURE


def _cmd_h_check(args):
    data = _load_json(args.matrix)
    entries = data["entries"] if isinstance(data, dict) else data
    parsed = [
        [parse_rational(args.field, 1, text) for text in row] for row in entries
    ]
    report = h_functional_equation_check(parsed)
    _emit(report.as_dict())
    return 0 if report.as_dict()["ok"] else MATH_FAILURE


def _cmd_gen_corpus(args):
    semigroup = Semigroup([int(g) for g in args.semigroup.split(",")])
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = {
        "generator": GENERATOR_VERSION_HASH,
        "version": __version__,
        "dim": args.dim,
        "semigroup": list(semigroup.generators),
        "precision": args.precision,
        "seed": args.seed,
        "cases": [],
    }
    for k in range(args.count):
        seed = args.seed + k
        _, _, cocycle = round_trip_case(
            semigroup, args.field, args.dim, seed, args.precision
        )
        name = f"cocycle_dim{args.dim}_seed{seed}.json"
        (out_dir / name).write_text(
            canonical_dumps(encode_cocycle(cocycle)), encoding="utf-8"
        )
        manifest["cases"].append({"file": name, "seed": seed})
    (out_dir / "manifest.json").write_text(
        canonical_dumps(manifest), encoding="utf-8"
    )
    sys.stdout.write(canonical_dumps({"written": args.count, "dir": str(out_dir)}))
    return 0


_COMMANDS = {
    "verify": _cmd_verify,
    "twist": _cmd_twist,
    "trivialize": _cmd_trivialize,
    "classify": _cmd_classify,
    "verify-cert": _cmd_verify_cert,
    "pgl-check": _cmd_pgl_check,
    "cremona-check": _cmd_cremona,
    "h-check": _cmd_h_check,
    "gen-corpus": _cmd_gen_corpus,
}


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except SemilaurentError as exc:
        _emit({"ok": False, "error": type(exc).__name__, "message": str(exc)})
        return MATH_FAILURE


if __name__ == "__main__":
    sys.exit(main())
