"""Graded commutative algebras with an odd differential, and BV checks.

Homogeneous elements are sparse dicts ``basis index -> coefficient`` and
always travel together with their degree.
"""

from .dgla import AxiomReport, CheckResult
from .graded import ExteriorAlgebra, merge_words
from .ratlin import ZERO, ONE, RationalMatrix


def _sign(e):
    return -1 if e % 2 else 1


def _acc(out, c, coeff):
    v = out.get(c, ZERO) + coeff
    if v:
        out[c] = v
    else:
        out.pop(c, None)


def _axpy(out, s, u):
    for c, v in u.items():
        _acc(out, c, s * v)


class GradedAlgebra:
    """Graded algebra given by a basis product ``(i, a, j, b) -> {c: coeff}``."""

    def __init__(self, dims, mul_basis, labels=None, unit=None):
        self.dims = {int(d): int(n) for d, n in dims.items() if n}
        self._mul_basis = mul_basis
        self._cache = {}
        self.labels = labels
        self.unit = unit  # (degree 0 index) if known

    def dim(self, i):
        return self.dims.get(i, 0)

    @property
    def degrees(self):
        return sorted(self.dims)

    def mul_basis(self, i, a, j, b):
        key = (i, a, j, b)
        hit = self._cache.get(key)
        if hit is None:
            hit = {} if not self.dim(i + j) else self._mul_basis(i, a, j, b)
            self._cache[key] = hit
        return hit

    def mul(self, i, u, j, v):
        out = {}
        for a, x in u.items():
            for b, y in v.items():
                for c, w in self.mul_basis(i, a, j, b).items():
                    _acc(out, c, x * y * w)
        return out


class ExteriorProductAlgebra(GradedAlgebra):
    """The exterior algebra on n generators, degree p spanned by sorted words."""

    def __init__(self, n, labels=None):
        self.ext = ExteriorAlgebra(n)
        dims = {p: self.ext.dim(p) for p in range(n + 1)}
        super().__init__(dims, self._mul, labels, unit=0)

    def _mul(self, i, a, j, b):
        s, K = merge_words(self.ext.basis(i)[a], self.ext.basis(j)[b])
        if not s:
            return {}
        return {self.ext.index(K): ONE if s > 0 else -ONE}


class BvAlgebra:
    def __init__(self, algebra, delta, name=""):
        """``delta`` maps degree i to a matrix B^i -> B^{i-1}; missing means zero."""
        self.algebra = algebra
        self.delta = dict(delta)
        for i, m in self.delta.items():
            if m.shape != (algebra.dim(i - 1), algebra.dim(i)):
                raise ValueError(f"delta in degree {i} has shape {m.shape}")
        self.name = name
        self._dcache = {}

    def dim(self, i):
        return self.algebra.dim(i)

    @property
    def degrees(self):
        return self.algebra.degrees

    def delta_basis(self, i, a):
        key = (i, a)
        hit = self._dcache.get(key)
        if hit is None:
            m = self.delta.get(i)
            hit = {}
            if m is not None:
                for c in range(m.nrows):
                    w = m[c, a]
                    if w:
                        hit[c] = w
            self._dcache[key] = hit
        return hit

    def apply_delta(self, i, u):
        out = {}
        for a, x in u.items():
            for c, w in self.delta_basis(i, a).items():
                _acc(out, c, x * w)
        return out

    def mul(self, i, u, j, v):
        return self.algebra.mul(i, u, j, v)

    def derived_bracket(self, i, u, j, v):
        """(-1)^|a| (delta(a c) - delta(a) c - (-1)^|a| a delta(c)), degree i + j - 1."""
        out = dict(self.apply_delta(i + j, self.mul(i, u, j, v)))
        _axpy(out, -1, self.mul(i - 1, self.apply_delta(i, u), j, v))
        _axpy(out, -_sign(i), self.mul(i, u, j - 1, self.apply_delta(j, v)))
        if i % 2:
            out = {c: -x for c, x in out.items()}
        return out


def _basis(b):
    return [(i, a) for i in b.degrees for a in range(b.dim(i))]


def order2_defect(b, i, u, j, v, k, w):
    """Left side of the seven-term order-2 identity for homogeneous a, b, c."""
    A = b.algebra
    ab = A.mul(i, u, j, v)
    abc = A.mul(i + j, ab, k, w)
    ac = A.mul(i, u, k, w)
    bc = A.mul(j, v, k, w)
    da = b.apply_delta(i, u)
    db = b.apply_delta(j, v)
    dc = b.apply_delta(k, w)
    out = dict(b.apply_delta(i + j + k, abc))
    _axpy(out, -1, A.mul(i + j - 1, b.apply_delta(i + j, ab), k, w))
    _axpy(out, 1, A.mul(i - 1, da, j + k, bc))
    _axpy(out, -_sign(i), A.mul(i, u, j + k - 1, b.apply_delta(j + k, bc)))
    _axpy(out, -_sign((i + 1) * j), A.mul(j, v, i + k - 1, b.apply_delta(i + k, ac)))
    _axpy(out, _sign(i), A.mul(i + j - 1, A.mul(i, u, j - 1, db), k, w))
    _axpy(out, _sign(i + j), A.mul(i + j, ab, k - 1, dc))
    return out


def check_order2(b, max_total_degree=None):
    """Seven-term order-2 identity on every ordered homogeneous basis triple.

    Same terms as ``order2_defect``, with products and deltas of basis
    pairs cached.
    """
    res = CheckResult("order2", True)
    A = b.algebra
    basis = _basis(b)
    top = max(b.degrees) if b.degrees else 0
    limit = top + 1 if max_total_degree is None else min(top + 1, max_total_degree)
    one = {}
    pair = {}

    def single(i, x):
        key = (i, x)
        if key not in one:
            one[key] = ({x: ONE}, b.apply_delta(i, {x: ONE}))
        return one[key]

    def prod(i, x, j, y):
        key = (i, x, j, y)
        if key not in pair:
            p = A.mul(i, {x: ONE}, j, {y: ONE})
            pair[key] = (p, b.apply_delta(i + j, p), A.mul(i, {x: ONE}, j - 1, single(j, y)[1]))
        return pair[key]

    for (i, x) in basis:
        u, da = single(i, x)
        for (j, y) in basis:
            if i + j > limit:
                continue
            v = {y: ONE}
            ab, dab, a_db = prod(i, x, j, y)
            for (k, z) in basis:
                if i + j + k > limit:
                    continue
                res.checked += 1
                w, dc = single(k, z)
                bc, dbc, _ = prod(j, y, k, z)
                _, dac, _ = prod(i, x, k, z)
                out = dict(b.apply_delta(i + j + k, A.mul(i + j, ab, k, w)))
                _axpy(out, -1, A.mul(i + j - 1, dab, k, w))
                _axpy(out, 1, A.mul(i - 1, da, j + k, bc))
                _axpy(out, -_sign(i), A.mul(i, u, j + k - 1, dbc))
                _axpy(out, -_sign((i + 1) * j), A.mul(j, v, i + k - 1, dac))
                _axpy(out, _sign(i), A.mul(i + j - 1, a_db, k, w))
                _axpy(out, _sign(i + j), A.mul(i + j, ab, k - 1, dc))
                if out:
                    res.passed = False
                    res.witness = ((i, x), (j, y), (k, z))
                    return res
    return res


def check_delta_squared(b):
    res = CheckResult("delta_squared", True)
    for i in b.degrees:
        m1 = b.delta.get(i)
        m2 = b.delta.get(i - 1)
        if m1 is None or m2 is None:
            continue
        res.checked += b.dim(i)
        prod = m2 @ m1
        if not prod.is_zero():
            res.passed = False
            res.witness = (i, next(a for a in range(prod.ncols) if any(prod.column(a))))
            break
    return res


def check_bracket_jacobi(b):
    """Graded Jacobi for the derived bracket, shifted degrees |a| - 1."""
    skew = CheckResult("bracket_skew", True)
    basis = _basis(b)
    degs = set(b.degrees)
    for (i, x) in basis:
        for (j, y) in basis:
            if (i + j - 1) not in degs:
                continue
            skew.checked += 1
            lhs = b.derived_bracket(i, {x: ONE}, j, {y: ONE})
            rhs = b.derived_bracket(j, {y: ONE}, i, {x: ONE})
            s = -_sign((i - 1) * (j - 1))
            if lhs != {c: s * v for c, v in rhs.items()}:
                skew.passed = False
                skew.witness = ((i, x), (j, y))
                break
        if not skew.passed:
            break
    res = CheckResult("bracket_jacobi", True)
    pair = {}

    def br(i, x, j, y):
        key = (i, x, j, y)
        if key not in pair:
            pair[key] = b.derived_bracket(i, {x: ONE}, j, {y: ONE})
        return pair[key]

    n = len(basis)
    for p in range(n):
        i, x = basis[p]
        for r in range(p if skew.passed else 0, n):
            j, y = basis[r]
            for s in range(r if skew.passed else 0, n):
                k, z = basis[s]
                if (i + j + k - 2) not in degs:
                    continue
                res.checked += 1
                out = {}
                for (d1, e1), (d2, e2), (d3, e3) in (((k, z), (i, x), (j, y)),
                                                      ((j, y), (k, z), (i, x)),
                                                      ((i, x), (j, y), (k, z))):
                    inner = br(d2, e2, d3, e3)
                    if not inner:
                        continue
                    sg = _sign((d1 - 1) * (d3 - 1))
                    _axpy(out, sg, b.derived_bracket(d1, {e1: ONE}, d2 + d3 - 1, inner))
                if out:
                    res.passed = False
                    res.witness = ((i, x), (j, y), (k, z))
                    return skew, res
            if not res.passed:
                break
    return skew, res


def check_algebra(A):
    """Graded commutativity and associativity on basis pairs and triples."""
    comm = CheckResult("graded_commutative", True)
    basis = [(i, a) for i in A.degrees for a in range(A.dim(i))]
    for (i, a) in basis:
        for (j, b) in basis:
            comm.checked += 1
            lhs = A.mul_basis(i, a, j, b)
            rhs = A.mul_basis(j, b, i, a)
            s = _sign(i * j)
            if lhs != {c: s * v for c, v in rhs.items()}:
                comm.passed = False
                comm.witness = ((i, a), (j, b))
                break
        if not comm.passed:
            break
    assoc = CheckResult("associative", True)
    top = max(A.degrees) if A.degrees else 0
    for (i, a) in basis:
        for (j, b) in basis:
            if i + j > top:
                continue
            ab = A.mul_basis(i, a, j, b)
            for (k, c) in basis:
                if i + j + k > top:
                    continue
                assoc.checked += 1
                lhs = A.mul(i + j, ab, k, {c: ONE})
                rhs = A.mul(i, {a: ONE}, j + k, A.mul_basis(j, b, k, c))
                if lhs != rhs:
                    assoc.passed = False
                    assoc.witness = ((i, a), (j, b), (k, c))
                    return comm, assoc
    return comm, assoc


def check_bv_axioms(b, max_total_degree=None, jacobi=True):
    report = AxiomReport()
    comm, assoc = check_algebra(b.algebra)
    report.results += [comm, assoc, check_delta_squared(b), check_order2(b, max_total_degree)]
    if jacobi:
        report.results += list(check_bracket_jacobi(b))
    return report


def derived_bracket(b, i, u, j, v):
    return b.derived_bracket(i, u, j, v)


def zero_delta(algebra):
    return {i: RationalMatrix.zeros(algebra.dim(i - 1), algebra.dim(i)) for i in algebra.degrees if algebra.dim(i - 1)}
