"""Exact rational linear algebra.

Everything here works over ``fractions.Fraction``.  Matrices are dense and
immutable; vectors are plain lists.  Pivoting always takes the first nonzero
entry, so every decomposition (and every representative chosen for a
quotient) is reproducible.
"""

from fractions import Fraction

Q = Fraction
ZERO = Q(0)
ONE = Q(1)


def q(value):
    """Coerce an int, Fraction or "p/q" string to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Q(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(c in text for c in ".eE"):
            raise ValueError(f"bad rational literal {value!r}")
        return Q(text)
    raise TypeError(f"cannot read {type(value).__name__} as an exact rational")


def is_zero_vector(v):
    return all(c == 0 for c in v)


def vec_add(u, v):
    return [a + b for a, b in zip(u, v)]


def vec_sub(u, v):
    return [a - b for a, b in zip(u, v)]


def vec_scale(c, v):
    return [c * a for a in v]


def dot(u, v):
    s = ZERO
    for a, b in zip(u, v):
        if a and b:
            s += a * b
    return s


class RationalMatrix:
    """Dense matrix with exact rational entries."""

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, rows, ncols=None):
        rows = tuple(tuple(q(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("need ncols for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        self.nrows = len(rows)
        self.ncols = ncols
        self._rows = rows

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns, nrows):
        columns = list(columns)
        return cls([[c[i] for c in columns] for i in range(nrows)], len(columns))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def row(self, i):
        return list(self._rows[i])

    def rows(self):
        return [list(r) for r in self._rows]

    def column(self, j):
        return [r[j] for r in self._rows]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self):
        return RationalMatrix.from_columns(self._rows, self.ncols)

    T = property(transpose)

    def apply(self, v):
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch in matrix-vector product")
        return [dot(r, v) for r in self._rows]

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch in matrix product")
        cols = other.columns()
        return RationalMatrix([[dot(r, c) for c in cols] for r in self._rows], other.ncols)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RationalMatrix([vec_add(a, b) for a, b in zip(self._rows, other._rows)], self.ncols)

    def __sub__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RationalMatrix([vec_sub(a, b) for a, b in zip(self._rows, other._rows)], self.ncols)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = q(c)
        return RationalMatrix([[c * x for x in r] for r in self._rows], self.ncols)

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def is_zero(self):
        return all(x == 0 for r in self._rows for x in r)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._rows)
        return f"RationalMatrix({self.nrows}x{self.ncols}: [{body}])"


def _rref_rows(rows, ncols):
    """Reduce a list of row lists in place; returns the pivot columns."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            inv = 1 / piv
            rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return pivots


def rref(m):
    """Reduced row echelon form and pivot columns."""
    rows = m.rows()
    pivots = _rref_rows(rows, m.ncols)
    return RationalMatrix(rows, m.ncols), pivots


def _kernel_from_rref(rows, pivots, ncols):
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -rows[i][f]
        basis.append(v)
    return basis


class Decomposition:
    def __init__(self, rank, kernel, image, pivots):
        self.rank = rank
        self.kernel = kernel
        self.image = image
        self.pivots = pivots

    def __iter__(self):
        return iter((self.rank, self.kernel, self.image, self.pivots))


def rref_decompose(m):
    """Rank, kernel, image (spanned by pivot columns) and pivots of ``m``."""
    rows = m.rows()
    pivots = _rref_rows(rows, m.ncols)
    kernel = Subspace(m.ncols, _kernel_from_rref(rows, pivots, m.ncols), independent=True)
    image = Subspace(m.nrows, [m.column(p) for p in pivots], independent=True)
    return Decomposition(len(pivots), kernel, image, pivots)


def rank(m):
    if m.nrows == 0 or m.ncols == 0:
        return 0
    return len(_rref_rows(m.rows(), m.ncols))


class NoSolution(ValueError):
    pass


class LinearSolver:
    """Precomputed elimination for repeated solves with one matrix."""

    def __init__(self, m):
        self.matrix = m
        n = m.nrows
        aug = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(m.rows())]
        pivots = []
        r = 0
        for c in range(m.ncols):
            if r == n:
                break
            p = next((i for i in range(r, n) if aug[i][c] != 0), None)
            if p is None:
                continue
            aug[r], aug[p] = aug[p], aug[r]
            inv = 1 / aug[r][c]
            aug[r] = [x * inv for x in aug[r]]
            for i in range(n):
                if i != r and aug[i][c]:
                    f = aug[i][c]
                    aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
            pivots.append(c)
            r += 1
        self.pivots = pivots
        self.rank = len(pivots)
        self._transform = [row[m.ncols:] for row in aug]

    def solve(self, b):
        if len(b) != self.matrix.nrows:
            raise ValueError("right-hand side has wrong length")
        eb = [dot(t, b) for t in self._transform]
        if any(x != 0 for x in eb[self.rank:]):
            raise NoSolution("right-hand side is not in the image")
        x = [ZERO] * self.matrix.ncols
        for k, p in enumerate(self.pivots):
            x[p] = eb[k]
        return x

    def solvable(self, b):
        eb = [dot(t, b) for t in self._transform[self.rank:]]
        return all(x == 0 for x in eb)


def solve_linear(m, b):
    """Particular solution of m x = b with free variables set to zero."""
    return LinearSolver(m).solve([q(x) for x in b])


def inverse(m):
    if m.nrows != m.ncols:
        raise ValueError("only square matrices are invertible")
    s = LinearSolver(m)
    if s.rank != m.nrows:
        raise ZeroDivisionError("matrix is singular")
    n = m.nrows
    # rows of the transform are exactly the inverse once the matrix is full rank
    cols = [s.solve([ONE if i == j else ZERO for i in range(n)]) for j in range(n)]
    return RationalMatrix.from_columns(cols, n)


class _RowSolver:
    """Coordinates in an independent family via d independent rows.

    Cost per solve is d^2 plus one sparse check of the remaining rows,
    instead of a dense pass over the whole ambient space.
    """

    def __init__(self, vectors, n):
        d = len(vectors)
        _, rows = rref(RationalMatrix(vectors, n))
        self.rows = rows
        square = RationalMatrix([[v[r] for v in vectors] for r in rows], d)
        self.inv = inverse(square).rows()
        self.cols = [[(i, x) for i, x in enumerate(v) if x] for v in vectors]
        self.n = n

    def solve(self, b):
        if len(b) != self.n:
            raise ValueError("right-hand side has wrong length")
        br = [b[r] for r in self.rows]
        x = [dot(row, br) for row in self.inv]
        out = [ZERO] * self.n
        for c, col in zip(x, self.cols):
            if c:
                for i, y in col:
                    out[i] += c * y
        if any(a != bb for a, bb in zip(out, b)):
            raise NoSolution("vector is not in the subspace")
        return x


class Subspace:
    """Column span of an independent family inside Q^ambient_dim."""

    def __init__(self, ambient_dim, vectors, independent=False):
        vectors = [[q(x) for x in v] for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValueError("vector length differs from ambient dimension")
        if not independent and vectors:
            m = RationalMatrix.from_columns(vectors, ambient_dim)
            piv = rref(m)[1]
            vectors = [vectors[p] for p in piv]
        self.ambient_dim = ambient_dim
        self.vectors = vectors
        self._solver = None

    @classmethod
    def zero(cls, n):
        return cls(n, [], independent=True)

    @classmethod
    def full(cls, n):
        return cls(n, [[ONE if i == j else ZERO for i in range(n)] for j in range(n)], independent=True)

    @property
    def dim(self):
        return len(self.vectors)

    @property
    def basis(self):
        return RationalMatrix.from_columns(self.vectors, self.ambient_dim)

    def _get_solver(self):
        if self._solver is None:
            self._solver = _RowSolver(self.vectors, self.ambient_dim)
        return self._solver

    def contains(self, v):
        if not self.vectors:
            return is_zero_vector(v)
        try:
            self._get_solver().solve(v)
        except NoSolution:
            return False
        return True

    def coordinates(self, v):
        if not self.vectors:
            if not is_zero_vector(v):
                raise NoSolution("vector is not in the zero subspace")
            return []
        return self._get_solver().solve(v)

    def contains_subspace(self, other):
        return all(self.contains(v) for v in other.vectors)

    def sum(self, other):
        return Subspace(self.ambient_dim, self.vectors + other.vectors)

    def intersection(self, other):
        if not self.vectors or not other.vectors:
            return Subspace.zero(self.ambient_dim)
        # solve sum a_i u_i - sum b_j v_j = 0
        m = RationalMatrix.from_columns(self.vectors + [vec_scale(-1, v) for v in other.vectors], self.ambient_dim)
        ker = rref_decompose(m).kernel
        k = self.dim
        out = []
        for c in ker.vectors:
            w = [ZERO] * self.ambient_dim
            for a, u in zip(c[:k], self.vectors):
                if a:
                    w = vec_add(w, vec_scale(a, u))
            out.append(w)
        return Subspace(self.ambient_dim, out)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self.dim == other.dim and self.contains_subspace(other))

    def __repr__(self):
        return f"Subspace(dim {self.dim} in Q^{self.ambient_dim})"


class QuotientSpace:
    """ambient / divisor with representatives taken from ambient basis directions."""

    def __init__(self, ambient, divisor):
        if divisor.ambient_dim != ambient.ambient_dim:
            raise ValueError("subspaces live in different spaces")
        if not ambient.contains_subspace(divisor):
            raise ValueError("divisor is not contained in the ambient subspace")
        self.ambient = ambient
        self.divisor = divisor
        coords = [ambient.coordinates(v) for v in divisor.vectors]
        n = ambient.dim
        if coords:
            red, piv = rref(RationalMatrix(coords, n))
            self._red = [red.row(i) for i in range(len(piv))]
        else:
            piv = []
            self._red = []
        self._pivots = piv
        pset = set(piv)
        self._free = [c for c in range(n) if c not in pset]
        self.representatives = [ambient.vectors[c] for c in self._free]

    @property
    def dim(self):
        return len(self._free)

    def project(self, v):
        """Coordinates of the class of v with respect to the representatives."""
        c = self.ambient.coordinates(v)
        for row, p in zip(self._red, self._pivots):
            f = c[p]
            if f:
                c = [a - f * b for a, b in zip(c, row)]
        return [c[j] for j in self._free]

    def lift(self, coords):
        out = [ZERO] * self.ambient.ambient_dim
        for a, r in zip(coords, self.representatives):
            if a:
                out = vec_add(out, vec_scale(a, r))
        return out

    def is_zero(self, v):
        return is_zero_vector(self.project(v))

    def __repr__(self):
        return f"QuotientSpace(dim {self.dim} = {self.ambient.dim} - {self.divisor.dim})"


def quotient_space(ambient, divisor):
    return QuotientSpace(ambient, divisor)


class PairingQuotient:
    """Q^N / ker M for a full-row-rank d x N matrix M.

    Representatives are the standard basis vectors at the pivot columns of
    M; the class of v has coordinates M_piv^{-1} M v.  Same interface as
    ``QuotientSpace`` but never forms the (large) kernel.
    """

    def __init__(self, m):
        self.matrix = m
        _, pivots = rref(m)
        if len(pivots) != m.nrows:
            raise ValueError("pairing matrix does not have full row rank")
        self.pivots = pivots
        n = m.ncols
        self.representatives = [[ONE if i == p else ZERO for i in range(n)] for p in pivots]
        self._solver = LinearSolver(RationalMatrix.from_columns([m.column(p) for p in pivots], m.nrows))

    @property
    def dim(self):
        return len(self.pivots)

    def project(self, v):
        return self._solver.solve(self.matrix.apply(v))

    def lift(self, coords):
        out = [ZERO] * self.matrix.ncols
        for a, p in zip(coords, self.pivots):
            out[p] = q(a)
        return out

    def is_zero(self, v):
        return is_zero_vector(self.matrix.apply(v))

    def __repr__(self):
        return f"PairingQuotient(dim {self.dim} of Q^{self.matrix.ncols})"


class SparseEchelon:
    """Incremental reduced echelon form over sparse rows (dict col -> value).

    Used for large, very redundant homogeneous systems such as the Leibniz
    conditions defining multiderivations.
    """

    def __init__(self, ncols):
        self.ncols = ncols
        self.rows = {}  # pivot column -> row dict, pivot entry 1, zero at other pivots

    def add(self, row):
        row = {c: q(v) for c, v in row.items() if v}
        for p in [c for c in row if c in self.rows]:
            f = row.get(p)
            if not f:
                continue
            for c, v in self.rows[p].items():
                nv = row.get(c, ZERO) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        if not row:
            return False
        p = min(row)
        inv = 1 / row[p]
        row = {c: v * inv for c, v in row.items()}
        for other in self.rows.values():
            f = other.get(p)
            if f:
                for c, v in row.items():
                    nv = other.get(c, ZERO) - f * v
                    if nv:
                        other[c] = nv
                    else:
                        other.pop(c, None)
        self.rows[p] = row
        return True

    @property
    def rank(self):
        return len(self.rows)

    def kernel(self):
        pivots = sorted(self.rows)
        pset = set(pivots)
        basis = []
        for f in range(self.ncols):
            if f in pset:
                continue
            v = [ZERO] * self.ncols
            v[f] = ONE
            for p in pivots:
                c = self.rows[p].get(f)
                if c:
                    v[p] = -c
            basis.append(v)
        return Subspace(self.ncols, basis, independent=True)
