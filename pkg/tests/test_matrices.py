import pytest

from semilaurent.errors import FieldExtensionRequired, SingularWithinPrecision
from semilaurent.matrices import (
    ConstantMatrix,
    SeriesMatrix,
    common_eigenvector,
    eigenvector_in_field,
    simultaneous_triangularize,
    stable_decomposition,
)
from semilaurent.rng import SplitMix64
from semilaurent.scalars import FieldDescriptor
from semilaurent.series import LaurentSeries

Q = FieldDescriptor.rationals()
Z4 = FieldDescriptor.cyclotomic(4)


def sm(field, rows, prec=12):
    return SeriesMatrix(
        field,
        [[LaurentSeries.from_terms(field, terms, prec) for terms in row] for row in rows],
    )


def test_identity_and_swap():
    a = sm(Q, [[{0: 3}, {1: 1}], [{0: 0}, {2: -1}]])
    ident = SeriesMatrix.identity(Q, 2, 12)
    assert (ident * a).agrees_with(a)
    swap = sm(Q, [[{}, {0: 1}], [{0: 1}, {}]])
    assert (swap * swap).agrees_with(ident)


def test_unipotent_inverse():
    m = sm(Q, [[{0: 1}, {1: 1}], [{}, {0: 1}]])
    inv = m.invert()
    assert inv.rows[0][1] == LaurentSeries.from_terms(Q, {1: -1}, 12)
    assert (m * inv).agrees_with(SeriesMatrix.identity(Q, 2, 12))


def test_diagonal_t_inverse():
    m = sm(Q, [[{1: 1}, {}], [{}, {1: 1}]])
    inv = m.invert()
    assert inv.rows[0][0].valuation == -1
    assert (inv * m).agrees_with(SeriesMatrix.identity(Q, 2, 10))


def test_singular_detected():
    m = sm(Q, [[{0: 1}, {0: 1}], [{0: 1}, {0: 1}]])
    with pytest.raises(SingularWithinPrecision):
        m.invert()


def test_inverse_random_small_dims():
    rng = SplitMix64(31)
    for dim in (1, 2, 3, 4):
        for _ in range(4):
            rows = []
            for _i in range(dim):
                row = []
                for _j in range(dim):
                    terms = {rng.randint(-2, 4): rng.randint(-2, 2) for _ in range(3)}
                    row.append(terms)
                rows.append(row)
            m = sm(Q, rows, 20)
            if m.determinant().is_zero():
                continue
            inv = m.invert()
            ident = SeriesMatrix.identity(Q, dim, 20)
            assert (m * inv).agrees_with(ident)
            assert (inv * m).agrees_with(ident)


def test_substitute_power_entrywise():
    m = sm(Q, [[{1: 1}, {0: 2}], [{}, {-1: 1}]])
    out = m.substitute_power(2)
    assert out.rows[0][0].valuation == 2
    assert out.rows[1][1].valuation == -2


def test_stable_decomposition_identity_and_zero():
    ident = ConstantMatrix.identity(Q, 3)
    basis, r = stable_decomposition(ident)
    assert r == 3
    zero = ConstantMatrix.from_int_rows(Q, [[0, 0], [0, 0]])
    basis, r = stable_decomposition(zero)
    assert r == 0


def test_stable_decomposition_example():
    c = ConstantMatrix.from_int_rows(Q, [[1, 0], [1, 0]])
    basis, r = stable_decomposition(c)
    assert r == 1
    conj = basis.invert() * c * basis
    # block diagonal: invertible 1x1 then nilpotent 1x1
    assert conj.rows[0][1] == Q.zero()
    assert conj.rows[1][0] == Q.zero()
    assert conj.rows[0][0] == Q.one()
    assert conj.rows[1][1] == Q.zero()


def test_stable_decomposition_properties_random():
    rng = SplitMix64(404)
    for _ in range(12):
        dim = rng.randint(2, 4)
        c = ConstantMatrix.from_int_rows(
            Q, [[rng.randint(-2, 2) for _ in range(dim)] for _ in range(dim)]
        )
        basis, r = stable_decomposition(c)
        conj = basis.invert() * c * basis
        top = ConstantMatrix(Q, [row[:r] for row in conj.rows[:r]]) if r else None
        bottom = (
            ConstantMatrix(Q, [row[r:] for row in conj.rows[r:]]) if r < dim else None
        )
        for i in range(dim):
            for j in range(dim):
                if (i < r) != (j < r):
                    assert not conj.rows[i][j]
        if top is not None:
            assert top.determinant()
        if bottom is not None:
            assert bottom.is_nilpotent()


def test_charpoly():
    m = ConstantMatrix.from_int_rows(Q, [[2, 0], [0, 3]])
    assert [c.rational_value() for c in m.charpoly()] == [6, -5, 1]


def test_eigenvector_examples():
    lam, v = eigenvector_in_field(ConstantMatrix.from_int_rows(Q, [[2, 0], [0, 3]]))
    assert lam == Q.scalar(2)
    assert v == [Q.one(), Q.zero()]

    rot_q = ConstantMatrix.from_int_rows(Q, [[0, -1], [1, 0]])
    assert eigenvector_in_field(rot_q) is None

    rot = ConstantMatrix.from_int_rows(Z4, [[0, -1], [1, 0]])
    lam, v = eigenvector_in_field(rot)
    assert rot.mul_vector(v) == [lam * x for x in v]
    assert lam * lam == Z4.scalar(-1)


def test_eigenvector_exactness_random():
    rng = SplitMix64(11)
    for _ in range(10):
        dim = rng.randint(2, 3)
        diag = [[Q.scalar(rng.nonzero_int(3)) if i == j else Q.zero() for j in range(dim)] for i in range(dim)]
        while True:
            s = ConstantMatrix.from_int_rows(
                Q,
                [[1 if i == j else rng.randint(-1, 1) for j in range(dim)] for i in range(dim)],
            )
            if s.determinant():
                break
        m = s * ConstantMatrix(Q, diag) * s.invert()
        pair = eigenvector_in_field(m)
        assert pair is not None
        lam, v = pair
        assert m.mul_vector(v) == [lam * x for x in v]


def test_simultaneous_triangularize():
    m1 = ConstantMatrix.from_int_rows(Q, [[2, 1], [0, 2]])
    m2 = ConstantMatrix.from_int_rows(Q, [[3, 5], [0, 3]])
    t = simultaneous_triangularize([m1, m2])
    ti = t.invert()
    for m in (m1, m2):
        conj = ti * m * t
        assert not conj.rows[1][0]


def test_simultaneous_triangularize_needs_field():
    rot = ConstantMatrix.from_int_rows(Q, [[0, -1], [1, 0]])
    ident = ConstantMatrix.identity(Q, 2)
    with pytest.raises(FieldExtensionRequired):
        simultaneous_triangularize([rot, ident])


def test_common_eigenvector_commuting():
    d1 = ConstantMatrix.from_int_rows(Q, [[1, 0, 0], [0, 1, 0], [0, 0, 5]])
    d2 = ConstantMatrix.from_int_rows(Q, [[2, 0, 0], [0, 3, 0], [0, 0, 3]])
    v = common_eigenvector([d1, d2])
    for m in (d1, d2):
        image = m.mul_vector(v)
        # image proportional to v
        ratio = None
        for a, b in zip(image, v):
            if b:
                ratio = a / b
                break
        assert all(a == ratio * b for a, b in zip(image, v))
