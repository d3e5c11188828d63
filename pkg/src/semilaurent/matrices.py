"""Dense square matrices over Laurent series, and exact constant matrices.

SeriesMatrix is the workhorse for gauge computations in GL_N k((t));
ConstantMatrix handles the exact linear algebra over the coefficient field
(echelon forms, characteristic polynomials, Fitting decomposition, eigenpairs,
simultaneous triangularization of commuting families).
"""

from .errors import (
    DimMismatch,
    FieldExtensionRequired,
    FieldMismatch,
    SingularWithinPrecision,
)
from .scalars import poly_roots_in_field
from .series import LaurentSeries


class SeriesMatrix:
    """N x N matrix of LaurentSeries over a common field."""

    __slots__ = ("field", "dim", "rows")

    def __init__(self, field, rows):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        for r in rows:
            if len(r) != n:
                raise DimMismatch("matrix must be square")
            for s in r:
                if s.field != field:
                    raise FieldMismatch("entry field differs from matrix field")
        self.field = field
        self.dim = n
        self.rows = rows

    # -- constructors ---------------------------------------------------------

    @classmethod
    def identity(cls, field, dim, prec):
        one = LaurentSeries.one(field, prec)
        zero = LaurentSeries.zero(field, prec)
        return cls(
            field,
            [[one if i == j else zero for j in range(dim)] for i in range(dim)],
        )

    @classmethod
    def zeros(cls, field, dim, prec):
        zero = LaurentSeries.zero(field, prec)
        return cls(field, [[zero] * dim for _ in range(dim)])

    @classmethod
    def from_constant(cls, cmat, prec):
        return cls(
            cmat.field,
            [
                [LaurentSeries.from_scalar(c, prec) for c in row]
                for row in cmat.rows
            ],
        )

    def _check(self, other):
        if self.field != other.field:
            raise FieldMismatch("field mismatch")
        if self.dim != other.dim:
            raise DimMismatch(f"{self.dim} vs {other.dim}")

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        return SeriesMatrix(
            self.field,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
        )

    def __sub__(self, other):
        self._check(other)
        return SeriesMatrix(
            self.field,
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
        )

    def __neg__(self):
        return SeriesMatrix(self.field, [[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, SeriesMatrix):
            self._check(other)
            n = self.dim
            cols = list(zip(*other.rows))
            out = []
            for i in range(n):
                row = []
                for j in range(n):
                    acc = self.rows[i][0] * cols[j][0]
                    for k in range(1, n):
                        acc = acc + self.rows[i][k] * cols[j][k]
                    row.append(acc)
                out.append(row)
            return SeriesMatrix(self.field, out)
        return NotImplemented

    def mul_vector(self, vec):
        """Matrix times column vector (list of LaurentSeries)."""
        if len(vec) != self.dim:
            raise DimMismatch("vector length mismatch")
        out = []
        for i in range(self.dim):
            acc = self.rows[i][0] * vec[0]
            for k in range(1, self.dim):
                acc = acc + self.rows[i][k] * vec[k]
            out.append(acc)
        return out

    def substitute_power(self, p):
        return self.map_entries(lambda s: s.substitute_power(p))

    def map_entries(self, fn):
        return SeriesMatrix(self.field, [[fn(a) for a in r] for r in self.rows])

    def truncate(self, prec):
        return self.map_entries(lambda s: s.truncate(prec))

    def min_precision(self):
        return min(s.prec for r in self.rows for s in r)

    def is_zero(self):
        return all(s.is_zero() for r in self.rows for s in r)

    def is_constant(self):
        return all(s.is_constant() for r in self.rows for s in r)

    def constant_matrix(self):
        """Constant terms as a ConstantMatrix (entries must be integral)."""
        return ConstantMatrix(
            self.field,
            [[s.constant_term() for s in r] for r in self.rows],
        )

    def agrees_with(self, other, upto=None):
        return all(
            a.agrees_with(b, upto)
            for ra, rb in zip(self.rows, other.rows)
            for a, b in zip(ra, rb)
        )

    def invert(self):
        """Inverse; adjugate over determinant for small dimensions, Gauss
        elimination beyond that.

        The adjugate route is much tighter on t-adic precision (entries are
        plain products of the inputs, divided once by the determinant) and is
        also faster on the sparse polynomial entries this library produces."""
        n = self.dim
        if n <= 4:
            det = self.determinant()
            if det.is_zero():
                raise SingularWithinPrecision("determinant vanishes within precision")
            det_inv = det.invert()
            if n == 1:
                return SeriesMatrix(self.field, [[det_inv]])
            adj = [[None] * n for _ in range(n)]
            for i in range(n):
                for j in range(n):
                    minor = [
                        [self.rows[r][c] for c in range(n) if c != j]
                        for r in range(n) if r != i
                    ]
                    cof = _det_expansion(minor)
                    if (i + j) % 2:
                        cof = -cof
                    adj[j][i] = cof * det_inv
            return SeriesMatrix(self.field, adj)
        return self._invert_elimination()

    def _invert_elimination(self):
        """Gauss-Jordan with minimal-valuation pivoting."""
        n = self.dim
        work = [list(r) for r in self.rows]
        prec_cap = min(s.prec for r in work for s in r)
        ident = SeriesMatrix.identity(self.field, n, prec_cap)
        aug = [list(ident.rows[i]) for i in range(n)]
        for col in range(n):
            pivot = None
            pivot_val = None
            for r in range(col, n):
                s = work[r][col]
                if s.is_zero():
                    continue
                v = s.valuation_of()
                if pivot is None or v < pivot_val:
                    pivot, pivot_val = r, v
            if pivot is None:
                raise SingularWithinPrecision(
                    f"no usable pivot in column {col} within precision"
                )
            work[col], work[pivot] = work[pivot], work[col]
            aug[col], aug[pivot] = aug[pivot], aug[col]
            inv = work[col][col].invert()
            work[col] = [s * inv for s in work[col]]
            aug[col] = [s * inv for s in aug[col]]
            for r in range(n):
                if r == col:
                    continue
                factor = work[r][col]
                if factor.is_zero():
                    continue
                work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
        return SeriesMatrix(self.field, aug)

    def determinant(self):
        """Determinant within precision; cofactor expansion for small
        dimensions, elimination beyond."""
        if self.dim <= 4:
            return _det_expansion([list(r) for r in self.rows])
        return self._determinant_elimination()

    def _determinant_elimination(self):
        n = self.dim
        work = [list(r) for r in self.rows]
        det = LaurentSeries.one(self.field, min(s.prec for r in work for s in r))
        sign = 1
        for col in range(n):
            pivot = None
            pivot_val = None
            for r in range(col, n):
                s = work[r][col]
                if s.is_zero():
                    continue
                v = s.valuation_of()
                if pivot is None or v < pivot_val:
                    pivot, pivot_val = r, v
            if pivot is None:
                prec = min(s.prec for rr in work for s in rr)
                return LaurentSeries.zero(self.field, prec)
            if pivot != col:
                work[col], work[pivot] = work[pivot], work[col]
                sign = -sign
            pv = work[col][col]
            det = det * pv
            inv = pv.invert()
            for r in range(col + 1, n):
                factor = work[r][col]
                if factor.is_zero():
                    continue
                factor = factor * inv
                work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
        if sign < 0:
            det = -det
        return det

    def __repr__(self):
        body = "; ".join(
            "[" + ", ".join(s.pretty() for s in r) + "]" for r in self.rows
        )
        return f"SeriesMatrix({body})"


def _det_expansion(rows):
    """Determinant of a small series matrix by Laplace expansion along the
    first row; avoids the precision loss of repeated eliminations."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = None
    for j in range(n):
        entry = rows[0][j]
        minor = [[rows[i][c] for c in range(n) if c != j] for i in range(1, n)]
        term = entry * _det_expansion(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc


class ConstantMatrix:
    """N x N matrix of exact Scalars."""

    __slots__ = ("field", "dim", "rows")

    def __init__(self, field, rows):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        for r in rows:
            if len(r) != n:
                raise DimMismatch("matrix must be square")
        self.field = field
        self.dim = n
        self.rows = rows

    @classmethod
    def identity(cls, field, dim):
        one = field.one()
        zero = field.zero()
        return cls(
            field,
            [[one if i == j else zero for j in range(dim)] for i in range(dim)],
        )

    @classmethod
    def from_int_rows(cls, field, int_rows):
        return cls(field, [[field.scalar(v) for v in row] for row in int_rows])

    def _check(self, other):
        if self.field != other.field:
            raise FieldMismatch("field mismatch")
        if self.dim != other.dim:
            raise DimMismatch(f"{self.dim} vs {other.dim}")

    def __eq__(self, other):
        return (
            isinstance(other, ConstantMatrix)
            and self.field == other.field
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.rows))

    def __add__(self, other):
        self._check(other)
        return ConstantMatrix(
            self.field,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
        )

    def __sub__(self, other):
        self._check(other)
        return ConstantMatrix(
            self.field,
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
        )

    def __neg__(self):
        return ConstantMatrix(self.field, [[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, ConstantMatrix):
            self._check(other)
            n = self.dim
            cols = list(zip(*other.rows))
            return ConstantMatrix(
                self.field,
                [
                    [
                        sum(
                            (self.rows[i][k] * cols[j][k] for k in range(1, n)),
                            self.rows[i][0] * cols[j][0],
                        )
                        for j in range(n)
                    ]
                    for i in range(n)
                ],
            )
        return NotImplemented

    def scale(self, scalar):
        return ConstantMatrix(self.field, [[a * scalar for a in r] for r in self.rows])

    def mul_vector(self, vec):
        n = self.dim
        out = []
        for i in range(n):
            acc = self.rows[i][0] * vec[0]
            for k in range(1, n):
                acc = acc + self.rows[i][k] * vec[k]
            out.append(acc)
        return out

    def transpose(self):
        return ConstantMatrix(self.field, list(zip(*self.rows)))

    def commutes_with(self, other):
        return self * other == other * self

    def power(self, e):
        result = ConstantMatrix.identity(self.field, self.dim)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self):
        return not any(a for r in self.rows for a in r)

    def is_nilpotent(self):
        return self.power(self.dim).is_zero()

    def determinant(self):
        det = self.field.one()
        work = [list(r) for r in self.rows]
        n = self.dim
        for col in range(n):
            pivot = next((r for r in range(col, n) if work[r][col]), None)
            if pivot is None:
                return self.field.zero()
            if pivot != col:
                work[col], work[pivot] = work[pivot], work[col]
                det = -det
            pv = work[col][col]
            det = det * pv
            inv = pv.inverse()
            for r in range(col + 1, n):
                if work[r][col]:
                    factor = work[r][col] * inv
                    work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
        return det

    def invert(self):
        n = self.dim
        work = [list(r) for r in self.rows]
        aug = [list(ConstantMatrix.identity(self.field, n).rows[i]) for i in range(n)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if work[r][col]), None)
            if pivot is None:
                raise SingularWithinPrecision("constant matrix is singular")
            work[col], work[pivot] = work[pivot], work[col]
            aug[col], aug[pivot] = aug[pivot], aug[col]
            inv = work[col][col].inverse()
            work[col] = [a * inv for a in work[col]]
            aug[col] = [a * inv for a in aug[col]]
            for r in range(n):
                if r != col and work[r][col]:
                    factor = work[r][col]
                    work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
                    aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
        return ConstantMatrix(self.field, aug)

    def rank(self):
        return len(_row_echelon([list(r) for r in self.rows])[0])

    def column_space_basis(self):
        """Column vectors spanning the image, from the pivot columns."""
        _, pivots = _row_echelon([list(r) for r in self.rows])
        cols = list(zip(*self.rows))
        return [list(cols[j]) for j in pivots]

    def kernel_basis(self):
        """Basis of the right kernel, unit free variables, deterministic."""
        rows, pivots = _row_echelon([list(r) for r in self.rows])
        n = self.dim
        free = [j for j in range(n) if j not in pivots]
        basis = []
        zero = self.field.zero()
        one = self.field.one()
        for f in free:
            vec = [zero] * n
            vec[f] = one
            # rows are fully reduced, so each pivot variable reads off directly
            for row, pj in zip(rows, pivots):
                if row[f]:
                    vec[pj] = -row[f]
            basis.append(vec)
        return basis

    def charpoly(self):
        """Characteristic polynomial, low-to-high, monic (Faddeev-LeVerrier).

        Exact over any characteristic-zero field; the divisions are by the
        integers 2..N only.
        """
        n = self.dim
        field = self.field
        coeffs_high_first = [field.one()]
        M = self
        c = -M.trace()
        coeffs_high_first.append(c)
        for k in range(2, n + 1):
            M = self * (M + ConstantMatrix.identity(field, n).scale(c))
            c = -(M.trace() / field.scalar(k))
            coeffs_high_first.append(c)
        coeffs_high_first.reverse()
        return coeffs_high_first  # index e holds the coefficient of T^e

    def trace(self):
        acc = self.rows[0][0]
        for i in range(1, self.dim):
            acc = acc + self.rows[i][i]
        return acc

    def __repr__(self):
        body = "; ".join("[" + ", ".join(repr(a) for a in r) + "]" for r in self.rows)
        return f"ConstantMatrix({body})"


def _row_echelon(rows):
    """Reduced row echelon form in place; returns (nonzero rows, pivot cols)."""
    if not rows:
        return [], []
    n_cols = len(rows[0])
    pivots = []
    r = 0
    for col in range(n_cols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [a * inv for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def stable_decomposition(c):
    """Fitting decomposition of a constant matrix.

    Returns (basis_change, rank_stable): the basis change has the image of c^N
    first and the kernel of c^N after it, so the conjugated matrix is block
    diagonal with an invertible rank_stable block and a nilpotent complement.
    """
    n = c.dim
    cn = c.power(n)
    image = cn.column_space_basis()
    kernel = cn.kernel_basis()
    if len(image) + len(kernel) != n:
        raise AssertionError("rank-nullity failure in stable decomposition")
    cols = image + kernel
    basis = ConstantMatrix(c.field, list(zip(*cols))) if cols else ConstantMatrix.identity(c.field, n)
    if n and basis.determinant() == c.field.zero():
        raise AssertionError("stable decomposition produced a singular basis")
    return basis, len(image)


def eigenvector_in_field(c):
    """Smallest in-field eigenvalue (documented coordinate order) and a kernel
    vector, or None when the characteristic polynomial has no root in the
    field."""
    roots = poly_roots_in_field(c.charpoly())
    if not roots:
        return None
    lam = roots[0][0]
    shifted = c - ConstantMatrix.identity(c.field, c.dim).scale(lam)
    kernel = shifted.kernel_basis()
    if not kernel:
        raise AssertionError("eigenvalue without eigenvector")
    vec = kernel[0]
    # normalize: first nonzero coordinate 1
    lead = next(a for a in vec if a)
    inv = lead.inverse()
    return lam, [a * inv for a in vec]


def common_eigenvector(mats):
    """A vector that is an eigenvector of every matrix in a commuting family.

    Raises FieldExtensionRequired when some restricted characteristic
    polynomial has no root in the field.
    """
    field = mats[0].field
    n = mats[0].dim
    # spanning columns of the current invariant subspace, as column vectors
    space = [
        [field.one() if i == j else field.zero() for i in range(n)]
        for j in range(n)
    ]
    for m in mats:
        if len(space) == 1:
            break
        restricted = _restrict(m, space, field)
        pair = eigenvector_in_field(restricted)
        if pair is None:
            raise FieldExtensionRequired(
                "no eigenvalue in the declared field; characteristic polynomial "
                + _poly_pretty(restricted.charpoly()),
                charpoly=restricted.charpoly(),
            )
        lam = pair[0]
        shifted = restricted - ConstantMatrix.identity(field, restricted.dim).scale(lam)
        coords = shifted.kernel_basis()
        space = [_combine(space, coord, field) for coord in coords]
    return space[0]


def _restrict(m, space, field):
    """Matrix of m on the span of `space` (columns), in those coordinates."""
    k = len(space)
    images = [m.mul_vector(v) for v in space]
    # solve space * X = images  (space has full column rank k)
    n = len(space[0])
    aug = [[space[j][i] for j in range(k)] + [images[j][i] for j in range(k)] for i in range(n)]
    rows, pivots = _row_echelon(aug)
    if len(pivots) != k or any(p >= k for p in pivots):
        raise AssertionError("restriction basis is degenerate")
    sol = [[field.zero()] * k for _ in range(k)]
    for row, pj in zip(rows, pivots):
        for j in range(k):
            sol[pj][j] = row[k + j]
    return ConstantMatrix(field, sol)

def _combine(space, coord, field):
    n = len(space[0])
    out = [field.zero()] * n
    for c, v in zip(coord, space):
        if c:
            for i in range(n):
                if v[i]:
                    out[i] = out[i] + c * v[i]
    return out


def extend_to_basis(field, vectors, dim):
    """Complete independent column vectors to a basis with coordinate vectors.

    Picks coordinate vectors at the non-pivot positions of the echelon form,
    so the result is always invertible and deterministic.
    """
    if not vectors:
        return ConstantMatrix.identity(field, dim)
    # echelonize the vectors as rows; their pivot columns are the coordinate
    # positions already covered, so the complementary coordinate vectors work
    rowsT = [list(v) for v in vectors]
    _, pivot_rows = _row_echelon([r[:] for r in rowsT])
    cols = [list(v) for v in vectors]
    zero = field.zero()
    one = field.one()
    for i in range(dim):
        if i not in pivot_rows and len(cols) < dim:
            e = [zero] * dim
            e[i] = one
            cols.append(e)
    basis = ConstantMatrix(field, list(zip(*cols)))
    if basis.determinant() == field.zero():
        raise AssertionError("basis completion failed")
    return basis


def simultaneous_triangularize(mats):
    """Constant basis change making every matrix of a commuting family upper
    triangular; raises FieldExtensionRequired when eigenvalues are missing."""
    field = mats[0].field
    n = mats[0].dim
    if n == 1:
        return ConstantMatrix.identity(field, 1)
    v = common_eigenvector(mats)
    basis1 = extend_to_basis(field, [v], n)
    inv1 = basis1.invert()
    conj = [inv1 * m * basis1 for m in mats]
    quotients = [
        ConstantMatrix(field, [row[1:] for row in m.rows[1:]]) for m in conj
    ]
    sub = simultaneous_triangularize(quotients)
    lift_rows = []
    zero = field.zero()
    one = field.one()
    for i in range(n):
        row = []
        for j in range(n):
            if i == 0 and j == 0:
                row.append(one)
            elif i == 0 or j == 0:
                row.append(zero)
            else:
                row.append(sub.rows[i - 1][j - 1])
        lift_rows.append(row)
    return basis1 * ConstantMatrix(field, lift_rows)


def _poly_pretty(coeffs):
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if not c:
            continue
        if e == 0:
            parts.append(c.pretty())
        elif e == 1:
            parts.append(f"({c.pretty()})*T")
        else:
            parts.append(f"({c.pretty()})*T^{e}")
    return " + ".join(parts) if parts else "0"
