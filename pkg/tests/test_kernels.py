"""The compiled kernels must agree with the pure-Python reference exactly."""

from fractions import Fraction

from semilaurent import _kernels_py, kernels
from semilaurent.rng import SplitMix64


def _random_coeffs(rng, length):
    return [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(length)]


def test_backend_identified():
    assert kernels.IMPLEMENTATION in ("cython", "python")


def test_convolve_parity():
    rng = SplitMix64(1)
    for _ in range(20):
        a = _random_coeffs(rng, rng.randint(1, 12))
        b = _random_coeffs(rng, rng.randint(1, 12))
        out_len = rng.randint(1, 20)
        fast = kernels.convolve_trunc(list(a), list(b), out_len, Fraction(0))
        ref = _kernels_py.convolve_trunc(list(a), list(b), out_len, Fraction(0))
        assert fast == ref


def test_invert_unit_parity():
    rng = SplitMix64(2)
    for _ in range(20):
        a = _random_coeffs(rng, rng.randint(1, 10))
        if not a[0]:
            a[0] = Fraction(1)
        out_len = rng.randint(1, 16)
        fast = kernels.invert_unit_trunc(list(a), out_len, Fraction(1))
        ref = _kernels_py.invert_unit_trunc(list(a), out_len, Fraction(1))
        assert fast == ref
        # convolution of a with its inverse gives 1 within the window
        conv = _kernels_py.convolve_trunc(list(a), fast, out_len, Fraction(0))
        assert conv[0] == 1 and not any(conv[1:])


def test_polymul_reduce_parity():
    rng = SplitMix64(3)
    # reduction modulo x^4 = -1 (the 8th cyclotomic polynomial)
    deg = 4
    rows = [[Fraction(0)] * deg for _ in range(deg - 1)]
    rows[0][0] = Fraction(-1)
    rows[1][1] = Fraction(-1)
    rows[2][2] = Fraction(-1)
    for _ in range(20):
        a = _random_coeffs(rng, deg)
        b = _random_coeffs(rng, deg)
        fast = kernels.polymul_reduce(list(a), list(b), rows, deg, Fraction(0))
        ref = _kernels_py.polymul_reduce(list(a), list(b), rows, deg, Fraction(0))
        assert fast == ref
