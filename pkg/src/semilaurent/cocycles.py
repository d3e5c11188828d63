"""Matrix cocycles for multiplicative subsemigroups of N acting by t -> t^p.

A cocycle assigns to each semigroup generator p an invertible series matrix
f_p(t); values at composite elements follow the extension rule
f_{pq}(t) = f_p(t) * f_q(t^p), which is well defined exactly when the
generator values satisfy the compatibility relation

    f_p(t) * f_q(t^p) = f_q(t) * f_p(t^q).

This left-to-right convention is load-bearing: every algorithm downstream
assumes it, and the opposite convention silently breaks them all.

Twisting by a gauge g sends f_p to g(t)^{-1} * f_p(t) * g(t^p); twisting by g
then by h equals twisting once by the pointwise product g(t)h(t).
"""

from dataclasses import dataclass
from math import gcd

from .errors import DimMismatch, FieldMismatch, PreconditionViolated
from .matrices import SeriesMatrix
from .rng import SplitMix64
from .series import LaurentSeries


class Semigroup:
    """Multiplicative closure of a set of integer generators >= 2."""

    __slots__ = ("generators", "_members")

    def __init__(self, generators):
        gens = sorted(set(int(g) for g in generators))
        if not gens:
            raise PreconditionViolated("semigroup needs at least one generator")
        if gens[0] < 2:
            raise PreconditionViolated("generators must be >= 2")
        self.generators = tuple(gens)
        self._members = {g: g for g in gens}

    def d(self):
        """gcd of (s - 1) over the generators; controls degree-one torsion."""
        out = 0
        for g in self.generators:
            out = gcd(out, g - 1)
        return out

    def __contains__(self, x):
        return self._factor_step(x) is not None

    def _factor_step(self, x):
        """Smallest generator g with x/g in the closure (or x == g); memoized."""
        if x in self._members:
            return self._members[x]
        if x < min(self.generators):
            return None
        for g in self.generators:
            if x % g == 0:
                rest = x // g
                if rest == 1 or self._factor_step(rest) is not None:
                    self._members[x] = g
                    return g
        return None

    def coprime_pair(self):
        """Some pair of coprime generators >= 2, or None."""
        gens = self.generators
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                if gcd(gens[i], gens[j]) == 1:
                    return gens[i], gens[j]
        return None

    def __repr__(self):
        return f"Semigroup{self.generators}"

    def __eq__(self, other):
        return isinstance(other, Semigroup) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)


class GaugeTransform:
    """An invertible series matrix acting on cocycles by twisting."""

    __slots__ = ("matrix", "_inverse")

    def __init__(self, matrix, inverse=None):
        self.matrix = matrix
        self._inverse = inverse

    @classmethod
    def identity(cls, field, dim, prec):
        ident = SeriesMatrix.identity(field, dim, prec)
        return cls(ident, ident)

    def inverse_matrix(self):
        if self._inverse is None:
            self._inverse = self.matrix.invert()
        return self._inverse

    def compose(self, other):
        """Gauge equal to twisting by self first, then by other."""
        return GaugeTransform(self.matrix * other.matrix)

    @property
    def dim(self):
        return self.matrix.dim

    @property
    def field(self):
        return self.matrix.field

    def __repr__(self):
        return f"GaugeTransform({self.matrix!r})"


class SemigroupCocycle:
    """Generator-indexed family p -> f_p(t) of invertible series matrices."""

    __slots__ = ("semigroup", "dim", "field", "values", "_extended")

    def __init__(self, semigroup, values):
        if not values:
            raise PreconditionViolated("cocycle needs generator values")
        gens = semigroup.generators
        if sorted(values) != list(gens):
            raise PreconditionViolated(
                f"values must cover exactly the generators {gens}"
            )
        dims = {m.dim for m in values.values()}
        fields = {m.field for m in values.values()}
        if len(dims) != 1:
            raise DimMismatch("generator values have mixed dimensions")
        if len(fields) != 1:
            raise FieldMismatch("generator values have mixed fields")
        self.semigroup = semigroup
        self.dim = dims.pop()
        self.field = fields.pop()
        self.values = dict(values)
        self._extended = {}

    def value_at(self, s):
        """f_s for any s in the semigroup, via the extension rule."""
        if s in self.values:
            return self.values[s]
        if s in self._extended:
            return self._extended[s]
        g = self.semigroup._factor_step(s)
        if g is None:
            raise PreconditionViolated(f"{s} is not in {self.semigroup!r}")
        rest = s // g
        if rest == 1:
            out = self.values[g]
        else:
            out = self.values[g] * self.value_at(rest).substitute_power(g)
        self._extended[s] = out
        return out

    def min_precision(self):
        return min(m.min_precision() for m in self.values.values())

    def truncate(self, prec):
        return SemigroupCocycle(
            self.semigroup,
            {p: m.truncate(prec) for p, m in self.values.items()},
        )

    def is_constant(self):
        return all(m.is_constant() for m in self.values.values())


class ConstantRepresentation:
    """Commuting invertible constant matrices indexed by the generators."""

    __slots__ = ("semigroup", "dim", "field", "values")

    def __init__(self, semigroup, values, check=True):
        gens = semigroup.generators
        if sorted(values) != list(gens):
            raise PreconditionViolated(
                f"values must cover exactly the generators {gens}"
            )
        dims = {m.dim for m in values.values()}
        if len(dims) != 1:
            raise DimMismatch("mixed dimensions")
        self.semigroup = semigroup
        self.dim = dims.pop()
        self.field = next(iter(values.values())).field
        self.values = dict(values)
        if check:
            mats = [values[g] for g in gens]
            for m in mats:
                m.invert()  # raises if singular
            for i in range(len(mats)):
                for j in range(i + 1, len(mats)):
                    if not mats[i].commutes_with(mats[j]):
                        raise PreconditionViolated(
                            f"values at {gens[i]} and {gens[j]} do not commute"
                        )


@dataclass
class TrivializationCertificate:
    """Gauge plus constant representation; checkable to checked_precision."""

    gauge: GaugeTransform
    constant: ConstantRepresentation
    checked_precision: int


@dataclass
class PairCheck:
    p: int
    q: int
    ok: bool
    first_violation_exponent: int | None
    checked_to: int


@dataclass
class CocycleReport:
    ok: bool
    pairs: list

    def as_dict(self):
        return {
            "ok": self.ok,
            "pairs": [
                {
                    "p": pc.p,
                    "q": pc.q,
                    "ok": pc.ok,
                    "first_violation_exponent": pc.first_violation_exponent,
                    "checked_to": pc.checked_to,
                }
                for pc in self.pairs
            ],
        }


@dataclass
class GeneratorCheck:
    p: int
    ok: bool
    first_violation_exponent: int | None
    checked_to: int


@dataclass
class CertificateReport:
    ok: bool
    generators: list

    def as_dict(self):
        return {
            "ok": self.ok,
            "generators": [
                {
                    "p": gc.p,
                    "ok": gc.ok,
                    "first_violation_exponent": gc.first_violation_exponent,
                    "checked_to": gc.checked_to,
                }
                for gc in self.generators
            ],
        }


def first_nonzero_exponent(mat):
    """Lowest exponent at which any entry of a series matrix is nonzero."""
    best = None
    for row in mat.rows:
        for s in row:
            if not s.is_zero():
                v = s.valuation_of()
                if best is None or v < best:
                    best = v
    return best


def verify_cocycle(c):
    """Check compatibility on every ordered generator pair.

    Violations are report content, not exceptions; each pair records the first
    violated coefficient exponent.
    """
    gens = c.semigroup.generators
    checks = []
    ok = True
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            p, q = gens[i], gens[j]
            fp = c.values[p]
            fq = c.values[q]
            lhs = fp * fq.substitute_power(p)
            rhs = fq * fp.substitute_power(q)
            diff = lhs - rhs
            checked_to = diff.min_precision()
            violation = first_nonzero_exponent(diff)
            pair_ok = violation is None
            ok = ok and pair_ok
            checks.append(PairCheck(p, q, pair_ok, violation, checked_to))
    return CocycleReport(ok, checks)


def twist(c, gauge):
    """Coboundary action: f_p -> g(t)^{-1} f_p(t) g(t^p)."""
    if gauge.dim != c.dim:
        raise DimMismatch("gauge dimension mismatch")
    if gauge.field != c.field:
        raise FieldMismatch("gauge field mismatch")
    ginv = gauge.inverse_matrix()
    out = {}
    for p, fp in c.values.items():
        out[p] = ginv * fp * gauge.matrix.substitute_power(p)
    return SemigroupCocycle(c.semigroup, out)


def induce_constant(rep, prec):
    """Constant representation viewed as a cocycle at the given precision."""
    return SemigroupCocycle(
        rep.semigroup,
        {
            p: SeriesMatrix.from_constant(m, prec)
            for p, m in rep.values.items()
        },
    )


def random_gauge(dim, field, seed, complexity, prec, coeff_bound=2, exp_bound=2,
                 unit_only=False):
    """Seeded invertible gauge: diagonal of unit constants and t-powers times
    `complexity` random elementary matrices with Laurent-monomial entries.

    complexity 0 gives the identity; the determinant is always a unit constant
    times a power of t. With unit_only the diagonal carries no t-powers and
    the elementary exponents are nonnegative, so the gauge stays in
    GL_N k[[t]] with unit determinant (needed when the semigroup has large
    generators, where gauge valuations multiply through t -> t^q).
    """
    rng = SplitMix64(seed)
    if complexity == 0:
        return GaugeTransform.identity(field, dim, prec)
    zero = LaurentSeries.zero(field, prec)
    exp_lo = 0 if unit_only else -exp_bound

    def monomial(c, e):
        return LaurentSeries.t_power(field, e, prec, field.scalar(c))

    diag_rows = []
    for i in range(dim):
        row = [zero] * dim
        u = rng.nonzero_int(coeff_bound)
        a = 0 if unit_only else rng.randint(-exp_bound, exp_bound)
        row[i] = monomial(u, a)
        diag_rows.append(row)
    g = SeriesMatrix(field, diag_rows)
    if dim == 1:
        for _ in range(complexity):
            c = rng.nonzero_int(coeff_bound)
            e = rng.randint(1, max(1, exp_bound))
            factor = SeriesMatrix(
                field, [[LaurentSeries.from_terms(field, {0: 1, e: c}, prec)]]
            )
            g = g * factor
        return GaugeTransform(g)
    for _ in range(complexity):
        i = rng.randint(0, dim - 1)
        j = rng.randint(0, dim - 1)
        while j == i:
            j = rng.randint(0, dim - 1)
        c = rng.nonzero_int(coeff_bound)
        e = rng.randint(exp_lo, exp_bound)
        elem = SeriesMatrix.identity(field, dim, prec)
        rows = [list(r) for r in elem.rows]
        rows[i][j] = monomial(c, e)
        g = g * SeriesMatrix(field, rows)
    return GaugeTransform(g)


def verify_certificate(c, cert):
    """Recompute gauge^{-1} f_p gauge(t^p) and compare against the constants,
    up to the certificate's checked precision."""
    g = cert.gauge
    ginv = g.inverse_matrix()
    checks = []
    ok = True
    for p in c.semigroup.generators:
        transported = ginv * c.values[p] * g.matrix.substitute_power(p)
        target = SeriesMatrix.from_constant(
            cert.constant.values[p], cert.checked_precision
        )
        diff = (transported - target).truncate(cert.checked_precision)
        checked_to = min(diff.min_precision(), cert.checked_precision)
        violation = first_nonzero_exponent(diff)
        if violation is not None and violation >= checked_to:
            violation = None
        gen_ok = violation is None
        ok = ok and gen_ok
        checks.append(GeneratorCheck(p, gen_ok, violation, checked_to))
    return CertificateReport(ok, checks)
