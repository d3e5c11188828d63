"""Seeded generation of test material: commuting constant representations,
twisted cocycles, and random integral matrices for the solver exercises.

Everything is deterministic in the seed, via the library's own generator.
"""

import hashlib

from . import __version__
from .cocycles import (
    ConstantRepresentation,
    induce_constant,
    random_gauge,
    twist,
)
from .matrices import ConstantMatrix, SeriesMatrix
from .rng import SplitMix64
from .series import LaurentSeries

GENERATOR_VERSION_HASH = hashlib.sha256(
    f"semilaurent-corpus-{__version__}".encode()
).hexdigest()[:16]


def random_unimodular(field, dim, rng, complexity=4, bound=2):
    """Product of integer elementary matrices; determinant is 1 or -1."""
    m = ConstantMatrix.identity(field, dim)
    for _ in range(complexity):
        i = rng.randint(0, dim - 1)
        j = rng.randint(0, dim - 1)
        if dim > 1:
            while j == i:
                j = rng.randint(0, dim - 1)
        rows = [list(r) for r in ConstantMatrix.identity(field, dim).rows]
        if dim > 1:
            rows[i][j] = field.scalar(rng.nonzero_int(bound))
        m = m * ConstantMatrix(field, rows)
    return m


def random_commuting_rep(semigroup, field, dim, seed, style=None):
    """Commuting invertible constants with eigenvalues in the field.

    Styles: 'diagonal' conjugates independent diagonal matrices with small
    nonzero rational entries; 'unipotent' takes scalars times powers of one
    unipotent Jordan block. Both families commute and split over the field.
    """
    rng = SplitMix64(seed)
    if style is None:
        style = "diagonal" if seed % 2 == 0 else "unipotent"
    basis = random_unimodular(field, dim, rng)
    basis_inv = basis.invert()
    values = {}
    if style == "diagonal":
        for p in semigroup.generators:
            rows = [
                [field.zero() for _ in range(dim)] for _ in range(dim)
            ]
            for i in range(dim):
                rows[i][i] = field.scalar(rng.nonzero_int(3))
            values[p] = basis * ConstantMatrix(field, rows) * basis_inv
    elif style == "unipotent":
        jordan_rows = [
            [field.scalar(1 if j == i or j == i + 1 else 0) for j in range(dim)]
            for i in range(dim)
        ]
        jordan = ConstantMatrix(field, jordan_rows)
        for p in semigroup.generators:
            lam = field.scalar(rng.nonzero_int(3))
            power = jordan.power(rng.randint(1, max(1, dim - 1)))
            values[p] = basis * power.scale(lam) * basis_inv
    else:
        raise ValueError(f"unknown style {style!r}")
    return ConstantRepresentation(semigroup, values)


def round_trip_case(semigroup, field, dim, seed, prec):
    """One (constant rep, gauge, twisted cocycle) triple for round trips.

    Substitutions t -> t^q amplify gauge valuations q-fold, so semigroups
    with a large generator get gauges that are integral with unit determinant;
    small semigroups get genuine Laurent gauges with t-power diagonals.
    """
    rep = random_commuting_rep(semigroup, field, dim, seed)
    big = max(semigroup.generators) > 6
    gauge = random_gauge(
        dim,
        field,
        seed=seed ^ 0xC0FFEE,
        complexity=3 if big else 4,
        prec=prec,
        exp_bound=2 if big else 1,
        unit_only=big,
    )
    cocycle = twist(induce_constant(rep, prec), gauge)
    return rep, gauge, cocycle


def random_integral_matrix(field, dim, rng, prec, degree=3, bound=2,
                           invertible_at_zero=True):
    """Random matrix over k[[t]] with polynomial entries; the constant term is
    either invertible or (with invertible_at_zero False) singular, while the
    matrix stays invertible over k((t))."""
    while True:
        rows = []
        for i in range(dim):
            row = []
            for j in range(dim):
                terms = {}
                for e in range(degree + 1):
                    c = rng.randint(-bound, bound)
                    if c:
                        terms[e] = c
                row.append(LaurentSeries.from_terms(field, terms, prec))
            rows.append(row)
        m = SeriesMatrix(field, rows)
        det = m.determinant()
        if det.is_zero():
            continue
        const = m.constant_matrix()
        const_invertible = bool(const.determinant())
        if invertible_at_zero and const_invertible:
            return m
        if not invertible_at_zero and not const_invertible:
            return m
