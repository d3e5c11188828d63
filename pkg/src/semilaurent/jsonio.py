"""JSON encoding of every value type, and canonical byte output.

Coefficient integers are decimal strings (arbitrary size, no 64-bit
ambiguity); structural integers (dims, exponents, precisions, generators)
are plain JSON numbers. Encoding is canonical: sorted keys, compact
separators, one trailing newline, so identical inputs give identical bytes.
"""

import json

from .cocycles import (
    ConstantRepresentation,
    GaugeTransform,
    Semigroup,
    SemigroupCocycle,
    TrivializationCertificate,
)
from .matrices import ConstantMatrix, SeriesMatrix
from .scalars import FieldDescriptor, Scalar
from .series import LaurentSeries


def canonical_dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


# -- encoders -------------------------------------------------------------------


def encode_field(field):
    return {"kind": field.kind, "conductor": field.conductor}


def encode_scalar(s):
    return {
        "field": encode_field(s.field),
        "coeffs": [[str(c.numerator), str(c.denominator)] for c in s.coeffs],
    }


def encode_series(s):
    return {
        "valuation": s.valuation,
        "prec": s.prec,
        "coeffs": [encode_scalar(c) for c in s.coeffs],
    }


def encode_series_matrix(m):
    return {
        "dim": m.dim,
        "entries": [[encode_series(s) for s in row] for row in m.rows],
    }


def encode_constant_matrix(m):
    return {
        "dim": m.dim,
        "entries": [[encode_scalar(s) for s in row] for row in m.rows],
    }


def encode_cocycle(c):
    return {
        "semigroup": list(c.semigroup.generators),
        "dim": c.dim,
        "values": {str(p): encode_series_matrix(m) for p, m in c.values.items()},
    }


def encode_certificate(cert):
    return {
        "gauge": encode_series_matrix(cert.gauge.matrix),
        "constant": {
            str(p): encode_constant_matrix(m)
            for p, m in cert.constant.values.items()
        },
        "checkedPrecision": cert.checked_precision,
    }


# -- decoders -------------------------------------------------------------------


def decode_field(obj):
    kind = obj["kind"]
    conductor = int(obj.get("conductor", 1))
    if kind == "rationals":
        return FieldDescriptor.rationals()
    return FieldDescriptor.cyclotomic(conductor)


def decode_scalar(obj):
    field = decode_field(obj["field"])
    coeffs = obj["coeffs"]
    if len(coeffs) != field.degree:
        raise ValueError(
            f"scalar has {len(coeffs)} coordinates; {field!r} needs {field.degree}"
        )
    from ._ratcoeff import rat

    return Scalar(field, tuple(rat(int(n), int(d)) for n, d in coeffs))


def decode_series_in_field(obj, field):
    prec = int(obj["prec"])
    valuation = int(obj["valuation"])
    coeffs = [decode_scalar(c) for c in obj["coeffs"]]
    return LaurentSeries(field, valuation, coeffs, prec)


def _matrix_field(obj):
    for row in obj["entries"]:
        for entry in row:
            if entry["coeffs"]:
                return decode_field(entry["coeffs"][0]["field"])
    raise ValueError(
        "cannot infer the coefficient field from an all-zero matrix"
    )


def decode_series_matrix(obj, field=None):
    if field is None:
        field = _matrix_field(obj)
    rows = [
        [decode_series_in_field(e, field) for e in row] for row in obj["entries"]
    ]
    m = SeriesMatrix(field, rows)
    if m.dim != int(obj["dim"]):
        raise ValueError("matrix dim field disagrees with entry count")
    return m


def decode_constant_matrix(obj, field=None):
    scalars = [[decode_scalar(e) for e in row] for row in obj["entries"]]
    if field is None:
        field = scalars[0][0].field
    m = ConstantMatrix(field, scalars)
    if m.dim != int(obj["dim"]):
        raise ValueError("matrix dim field disagrees with entry count")
    return m


def decode_cocycle(obj, field=None):
    semigroup = Semigroup([int(g) for g in obj["semigroup"]])
    values = {}
    for key, mat_obj in obj["values"].items():
        values[int(key)] = decode_series_matrix(mat_obj, field)
        if field is None:
            field = values[int(key)].field
    c = SemigroupCocycle(semigroup, values)
    if c.dim != int(obj["dim"]):
        raise ValueError("cocycle dim field disagrees with the matrices")
    return c


def decode_gauge(obj, field=None):
    return GaugeTransform(decode_series_matrix(obj, field))


def decode_certificate(obj, semigroup, field=None):
    gauge = decode_gauge(obj["gauge"], field)
    constants = {
        int(p): decode_constant_matrix(m, gauge.field)
        for p, m in obj["constant"].items()
    }
    rep = ConstantRepresentation(semigroup, constants)
    return TrivializationCertificate(gauge, rep, int(obj["checkedPrecision"]))
