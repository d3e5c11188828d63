"""Degree-one cocycles of projective transformation groups, and the Cremona
and h-function identities.

A projective transform A = (A_ij) acts on the function field by

    x_j -> (A_{1j} x_1 + ... + A_{nj} x_n + A_{n+1,j}) / w_A,
    w_A = A_{1,n+1} x_1 + ... + A_{n,n+1} x_n + A_{n+1,n+1},

so that acting by A and then reading off functions satisfies
phi_{AB} = phi_A o phi_B (checked by the convention regression test).

Degree-one classes are w_A^{-m} up to a character of the determinant. The
denominator power alone is a perfect cocycle modulo constants for every m;
an honest k^x-valued cocycle on the projective group exists exactly when
(n+1) | m, realized by the canonical determinant power det(A)^{m/(n+1)}
(the Jacobian cocycle of top-degree forms, for m = n+1).
"""

from dataclasses import dataclass

from .errors import DimMismatch, SingularWithinPrecision
from .matrices import ConstantMatrix
from .ratfunc import MultiPoly, RationalFunction, jacobian_det


class ProjectiveTransform:
    """Invertible (n+1) x (n+1) matrix modulo scalars; the representative is
    normalized so the first nonzero entry in row-major order is 1."""

    __slots__ = ("mat", "n")

    def __init__(self, mat):
        lead = None
        for row in mat.rows:
            for entry in row:
                if entry:
                    lead = entry
                    break
            if lead is not None:
                break
        if lead is None:
            raise SingularWithinPrecision("zero matrix is not a transform")
        if lead != mat.field.one():
            mat = mat.scale(lead.inverse())
        mat.invert()  # raises if singular
        self.mat = mat
        self.n = mat.dim - 1

    @classmethod
    def from_int_rows(cls, field, rows):
        return cls(ConstantMatrix.from_int_rows(field, rows))

    @property
    def field(self):
        return self.mat.field

    def __eq__(self, other):
        return isinstance(other, ProjectiveTransform) and self.mat == other.mat

    def __hash__(self):
        return hash(self.mat)

    def determinant(self):
        return self.mat.determinant()

    def compose(self, other):
        """Transform whose action on functions is self's then... precisely:
        transform_action(compose(a, b), f) == transform_action(a,
        transform_action(b, f))."""
        if self.n != other.n:
            raise DimMismatch("projective dimensions differ")
        return ProjectiveTransform(self.mat * other.mat)

    def denominator_form(self):
        """The affine form w_A from the last matrix column, as a MultiPoly."""
        n = self.n
        field = self.field
        terms = {}
        for i in range(n):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = self.mat.rows[i][n]
        terms[(0,) * n] = self.mat.rows[n][n]
        return MultiPoly(field, n, terms)

    def images(self):
        """Fractional-linear images of x_1, ..., x_n."""
        n = self.n
        field = self.field
        den = self.denominator_form()
        out = []
        for j in range(n):
            terms = {}
            for i in range(n):
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = self.mat.rows[i][j]
            terms[(0,) * n] = self.mat.rows[n][j]
            out.append(RationalFunction(MultiPoly(field, n, terms), den))
        return out

    def __repr__(self):
        return f"ProjectiveTransform({self.mat!r})"


def transform_action(transform, f):
    """Substitute the fractional-linear images into f."""
    return f.substitute(transform.images())


@dataclass
class PGLDegreeOneClass:
    """Integer power m of the inverse denominator form, together with a
    character evaluated on determinants: None is the trivial character, an
    integer j is the power map det^j, and a dict maps determinant keys to
    explicit values."""

    m: int
    character: object = None

    def character_value(self, transform):
        det = transform.determinant()
        if self.character is None:
            return transform.field.one()
        if isinstance(self.character, int):
            return det ** self.character
        key = det.key()
        if key not in self.character:
            raise KeyError(f"character not defined at determinant {det!r}")
        return self.character[key]

    @classmethod
    def canonical(cls, n, m):
        """The canonical class of slope m: carries the determinant power
        det^(m/(n+1)) when (n+1) | m (an honest cocycle), and the bare
        denominator power otherwise (no lift exists)."""
        if m % (n + 1) == 0:
            return cls(m, m // (n + 1))
        return cls(m)


def degree_one_cocycle_value(transform, cls):
    """character(det A) times w_A^{-m} on the normalized representative."""
    field = transform.field
    den = RationalFunction.from_poly(transform.denominator_form())
    value = den ** (-cls.m)
    chi = cls.character_value(transform)
    if chi != field.one():
        value = RationalFunction(value.num.scale(chi), value.den)
    return value


@dataclass
class ChainRuleFailure:
    left_index: int
    right_index: int
    lhs: RationalFunction
    rhs: RationalFunction


@dataclass
class ChainRuleReport:
    ok: bool
    pairs_checked: int
    failures: list

    def as_dict(self):
        return {
            "check": "chain-rule",
            "ok": self.ok,
            "pairs_checked": self.pairs_checked,
            "failures": [
                {
                    "left": f.left_index,
                    "right": f.right_index,
                    "lhs": f.lhs.pretty(),
                    "rhs": f.rhs.pretty(),
                }
                for f in self.failures
            ],
        }


def verify_chain_rule(transforms, cls):
    """Check f_{AB} = f_A * (A applied to f_B) for all ordered pairs.

    f_{AB} is evaluated on the normalized representative of the composition,
    so the test detects classes that are not well defined on the projective
    group (the scalar ambiguity of the product representative survives in
    w^{-m} unless the character compensates it).
    """
    failures = []
    count = 0
    for i, a in enumerate(transforms):
        for j, b in enumerate(transforms):
            count += 1
            ab = a.compose(b)
            lhs = degree_one_cocycle_value(ab, cls)
            rhs = degree_one_cocycle_value(a, cls) * transform_action(
                a, degree_one_cocycle_value(b, cls)
            )
            if lhs != rhs:
                failures.append(ChainRuleFailure(i, j, lhs, rhs))
    return ChainRuleReport(not failures, count, failures)


def find_chain_rule_witness(cls, n, field, rng, max_tries=64, bound=3):
    """Search random transform pairs for a chain-rule violation; returns the
    failing pair or None."""
    for _ in range(max_tries):
        a = _random_transform(field, n, rng, bound)
        b = _random_transform(field, n, rng, bound)
        report = verify_chain_rule([a, b], cls)
        if not report.ok:
            return a, b
    return None


def _random_transform(field, n, rng, bound):
    while True:
        rows = [
            [rng.randint(-bound, bound) for _ in range(n + 1)] for _ in range(n + 1)
        ]
        mat = ConstantMatrix.from_int_rows(field, rows)
        if mat.determinant():
            return ProjectiveTransform(mat)


# -- the Jacobian (top-degree form) class ----------------------------------------


@dataclass
class OmegaSample:
    name: str
    ok: bool
    det_exponent: int | None


@dataclass
class OmegaReport:
    ok: bool
    m: int
    samples: list

    def as_dict(self):
        return {
            "check": "omega-class",
            "ok": self.ok,
            "m": self.m,
            "samples": [
                {"name": s.name, "ok": s.ok, "det_exponent": s.det_exponent}
                for s in self.samples
            ],
        }


def omega_generator_sample(field, n):
    """Documented generating sample: a translation, a scaling, the inversion
    swap, the coordinate swap (n >= 2), and the g0 involution."""
    out = []
    ident = [[1 if i == j else 0 for j in range(n + 1)] for i in range(n + 1)]
    translation = [row[:] for row in ident]
    translation[n][0] = 1  # x_1 -> x_1 + 1
    out.append(("translation", translation))
    scaling = [row[:] for row in ident]
    scaling[0][0] = 2
    out.append(("scaling", scaling))
    inversion = [row[:] for row in ident]
    if n == 1:
        inversion = [[0, 1], [1, 0]]
    else:
        # iota_01: (x_1, ..., x_n) -> (1/x_1, x_2/x_1, ..., x_n/x_1)
        inversion = [[0] * (n + 1) for _ in range(n + 1)]
        inversion[0][n] = 1
        inversion[n][0] = 1
        for i in range(1, n):
            inversion[i][i] = 1
    out.append(("inversion", inversion))
    if n >= 2:
        swap = [row[:] for row in ident]
        swap[0][0] = swap[1][1] = 0
        swap[0][1] = swap[1][0] = 1
        out.append(("swap", swap))
    g0 = [[0] * (n + 1) for _ in range(n + 1)]
    # (x_1, ..., x_n) -> (x_1/(x_1 - 1), ..., x_n/(x_1 - 1))
    for i in range(n):
        g0[i][i] = 1
    g0[0][n] = 1
    g0[n][n] = -1
    out.append(("g0", g0))
    return [(name, ProjectiveTransform.from_int_rows(field, rows)) for name, rows in out]


def omega_class_check(field, n):
    """Verify that the Jacobian cocycle of the top-degree form equals the
    m = n+1 denominator-power formula up to the determinant character."""
    samples = []
    ok = True
    cls = PGLDegreeOneClass(n + 1, None)
    for name, tr in omega_generator_sample(field, n):
        jac = jacobian_det(tr.images())
        formula = degree_one_cocycle_value(tr, cls)
        ratio = jac / formula
        det = tr.determinant()
        expo = None
        if ratio.is_constant() and ratio.constant_value() == det:
            expo = 1
        sample_ok = expo == 1
        ok = ok and sample_ok
        samples.append(OmegaSample(name, sample_ok, expo))
    return OmegaReport(ok, n + 1, samples)


# -- birational maps and the Cremona identities ----------------------------------


class BirationalMap:
    """A tuple of rational-function images of the coordinates."""

    __slots__ = ("images", "n")

    def __init__(self, images):
        self.images = list(images)
        self.n = len(images)

    @classmethod
    def identity(cls, field, n):
        return cls([RationalFunction.variable(field, n, i) for i in range(n)])

    def apply(self, f):
        return f.substitute(self.images)

    def compose(self, other):
        """Map with apply(f) == self.apply(other.apply(f))."""
        return BirationalMap([self.apply(im) for im in other.images])

    def __eq__(self, other):
        return (
            isinstance(other, BirationalMap)
            and self.n == other.n
            and all(a == b for a, b in zip(self.images, other.images))
        )

    def __hash__(self):
        raise TypeError("BirationalMap is unhashable")

    def is_identity(self):
        field = self.images[0].field
        return self == BirationalMap.identity(field, self.n)

    def verify_inverse(self, candidate):
        return self.compose(candidate).is_identity() and candidate.compose(
            self
        ).is_identity()

    def __repr__(self):
        return "BirationalMap(" + ", ".join(im.pretty() for im in self.images) + ")"


def cremona_generators(field, n):
    """The named maps: sigma, xi, iota_{01}, iota_{1j}, g0, s0, s1."""
    if n < 2:
        raise DimMismatch("the Cremona identities need n >= 2")
    x = [RationalFunction.variable(field, n, i) for i in range(n)]
    one = RationalFunction.constant(field, n, 1)

    sigma = BirationalMap([one / x[0]] + x[1:])
    xi = BirationalMap([one / x[0], x[1] / x[0]] + x[2:])
    iota01 = BirationalMap([one / x[0]] + [x[j] / x[0] for j in range(1, n)])

    def iota_1j(j):
        # swaps x_1 and x_j (1-based); j == 1 is the identity
        images = list(x)
        if j != 1:
            images[0], images[j - 1] = x[j - 1], x[0]
        return BirationalMap(images)

    s0 = BirationalMap([one / xi_ for xi_ in x])
    s1 = BirationalMap([one / x[0]] + [x[j] / (x[0] * x[0]) for j in range(1, n)])
    g0 = BirationalMap([x[j] / (x[0] - one) for j in range(n)])
    return {
        "sigma": sigma,
        "xi": xi,
        "iota01": iota01,
        "iota_1j": iota_1j,
        "s0": s0,
        "s1": s1,
        "g0": g0,
    }


@dataclass
class CremonaReport:
    ok: bool
    n: int
    identities: list

    def as_dict(self):
        return {
            "check": "cremona-identities",
            "ok": self.ok,
            "n": self.n,
            "identities": [
                {"name": name, "ok": flag} for name, flag in self.identities
            ],
        }


def cremona_identities(field, n):
    """Check, by exact composition of substitutions:
    (i) sigma^2 = xi^2 = id, (ii) s1 = iota01 sigma iota01,
    (iii) s1 = g0 s0 g0 s0 g0, (iv) s0 = prod_j iota_1j sigma iota_1j."""
    g = cremona_generators(field, n)
    sigma, xi, iota01 = g["sigma"], g["xi"], g["iota01"]
    s0, s1, g0 = g["s0"], g["s1"], g["g0"]
    checks = []

    checks.append(("sigma^2 = id", sigma.compose(sigma).is_identity()))
    checks.append(("xi^2 = id", xi.compose(xi).is_identity()))
    checks.append(
        ("s1 = iota01 sigma iota01", iota01.compose(sigma.compose(iota01)) == s1)
    )
    word = g0.compose(s0.compose(g0.compose(s0.compose(g0))))
    checks.append(("s1 = g0 s0 g0 s0 g0", word == s1))
    prod = BirationalMap.identity(field, n)
    for j in range(1, n + 1):
        i1j = g["iota_1j"](j)
        prod = prod.compose(i1j.compose(sigma.compose(i1j)))
    checks.append(("s0 = prod_j iota_1j sigma iota_1j", prod == s0))

    return CremonaReport(all(flag for _, flag in checks), n, checks)


# -- functional equations for matrix-valued h -------------------------------------


def _rf_mat_mul(a, b):
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = a[i][0] * b[0][j]
            for k in range(1, n):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def _rf_mat_eq(a, b):
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def _rf_mat_identity(field, nvars, n):
    return [
        [
            RationalFunction.constant(field, nvars, 1 if i == j else 0)
            for j in range(n)
        ]
        for i in range(n)
    ]


@dataclass
class HEquationReport:
    multiplicative: bool
    composite: bool
    inversion: bool

    def as_dict(self):
        return {
            "check": "h-equations",
            "multiplicative": self.multiplicative,
            "composite": self.composite,
            "inversion": self.inversion,
            "ok": self.multiplicative and self.composite and self.inversion,
        }


def h_functional_equation_check(entries):
    """Check three identities for a square matrix h of univariate rational
    functions, symbolically in two independent variables:

        h(x) h(y) = h(xy)                              (multiplicative)
        h(x) h(y) = h(xy - x + 1) h(xy (xy - x + 1)^{-1})   (composite)
        h(x^{-1}) = h(x)^{-1}                          (inversion)
    """
    n = len(entries)
    field = entries[0][0].field
    for row in entries:
        if len(row) != n:
            raise DimMismatch("h must be a square matrix")
        for f in row:
            if f.nvars != 1:
                raise DimMismatch("h entries must be univariate")

    x = RationalFunction.variable(field, 2, 0)
    y = RationalFunction.variable(field, 2, 1)
    one = RationalFunction.constant(field, 2, 1)

    def h_at(arg):
        return [[f.substitute([arg]) for f in row] for row in entries]

    hx = h_at(x)
    hy = h_at(y)
    lhs = _rf_mat_mul(hx, hy)

    multiplicative = _rf_mat_eq(lhs, h_at(x * y))

    u = x * y - x + one
    composite = _rf_mat_eq(lhs, _rf_mat_mul(h_at(u), h_at(x * y / u)))

    inv_prod = _rf_mat_mul(h_at(one / x), hx)
    inversion = _rf_mat_eq(inv_prod, _rf_mat_identity(field, 2, n))

    return HEquationReport(multiplicative, composite, inversion)
