"""Differential graded Lie algebras given by structure constants.

Elements of a fixed degree are dense lists of rationals.  The bracket is a
table ``(i, j) -> {(a, b): {c: coeff}}``; a missing ordered pair is recovered
from the swapped one through ``[a, b] = (-1)**(|a||b|+1) [b, a]``.
"""

from dataclasses import dataclass, field

from .graded import GradedVectorSpace
from .ratlin import ZERO, RationalMatrix, Subspace, q, rref_decompose


def _sign(e):
    return -1 if e % 2 else 1


@dataclass
class CheckResult:
    name: str
    passed: bool
    checked: int = 0
    witness: object = None

    def as_dict(self):
        return {"name": self.name, "passed": self.passed, "checked": self.checked,
                "witness": None if self.witness is None else str(self.witness)}


@dataclass
class AxiomReport:
    results: list = field(default_factory=list)

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    def __getitem__(self, name):
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def as_dict(self):
        return {"passed": self.passed, "checks": [r.as_dict() for r in self.results]}


def _acc(out, c, coeff):
    v = out.get(c, ZERO) + coeff
    if v:
        out[c] = v
    else:
        out.pop(c, None)


class Dgla:
    def __init__(self, dims, brackets=None, differential=None, labels=None, name=""):
        self.dims = {int(d): int(n) for d, n in dims.items() if n}
        self.brackets = {}
        for key, table in (brackets or {}).items():
            self.brackets[key] = {ab: {c: q(v) for c, v in res.items() if v} for ab, res in table.items()}
        self.differential = dict(differential or {})
        for i, m in self.differential.items():
            if m.shape != (self.dim(i + 1), self.dim(i)):
                raise ValueError(f"differential in degree {i} has shape {m.shape}")
        self.labels = labels
        self.name = name
        self._cache = {}

    def dim(self, i):
        return self.dims.get(i, 0)

    @property
    def degrees(self):
        return sorted(self.dims)

    @property
    def space(self):
        labels = self.labels or {i: [f"v{i}_{a}" for a in range(n)] for i, n in self.dims.items()}
        return GradedVectorSpace(labels)

    def bracket_basis(self, i, a, j, b):
        """[e^i_a, e^j_b] as a sparse dict over the basis of degree i + j."""
        key = (i, a, j, b)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        table = self.brackets.get((i, j))
        res = table.get((a, b)) if table else None
        if res is None:
            other = self.brackets.get((j, i))
            swapped = other.get((b, a)) if other else None
            if swapped is not None:
                s = _sign(i * j + 1)
                res = {c: s * v for c, v in swapped.items()}
            else:
                res = {}
        self._cache[key] = res
        return res

    def bracket(self, i, u, j, v):
        n = self.dim(i + j)
        out = [ZERO] * n
        if not n:
            return out
        for a, x in enumerate(u):
            if not x:
                continue
            for b, y in enumerate(v):
                if not y:
                    continue
                for c, w in self.bracket_basis(i, a, j, b).items():
                    out[c] += x * y * w
        return out

    def bracket_sparse(self, i, u, j, v):
        out = {}
        for a, x in u.items():
            for b, y in v.items():
                for c, w in self.bracket_basis(i, a, j, b).items():
                    _acc(out, c, x * y * w)
        return out

    def d_matrix(self, i):
        m = self.differential.get(i)
        if m is None:
            return RationalMatrix.zeros(self.dim(i + 1), self.dim(i))
        return m

    def d(self, i, u):
        m = self.differential.get(i)
        if m is None:
            return [ZERO] * self.dim(i + 1)
        return m.apply(u)

    def d_sparse(self, i, u):
        m = self.differential.get(i)
        out = {}
        if m is None:
            return out
        for a, x in u.items():
            for c in range(m.nrows):
                w = m[c, a]
                if w:
                    _acc(out, c, x * w)
        return out

    def ad_matrix(self, i, x, j):
        """Matrix of v -> [x, v] from degree j to degree i + j, for x of degree i."""
        cols = []
        for b in range(self.dim(j)):
            e = [ZERO] * self.dim(j)
            e[b] = q(1)
            cols.append(self.bracket(i, x, j, e))
        return RationalMatrix.from_columns(cols, self.dim(i + j))

    def twisted_d_matrix(self, x, j):
        """d_x = d + [x, .] on degree j, x in degree 1."""
        return self.d_matrix(j) + self.ad_matrix(1, x, j)

    def with_bracket_entry(self, i, a, j, b, value):
        """Copy with one structure constant overwritten (negative controls)."""
        tables = {k: {ab: dict(r) for ab, r in t.items()} for k, t in self.brackets.items()}
        tables.setdefault((i, j), {})[(a, b)] = dict(value)
        return Dgla(self.dims, tables, self.differential, self.labels, self.name + "*")


def _basis_elements(g):
    out = []
    for i in g.degrees:
        for a in range(g.dim(i)):
            out.append((i, a))
    return out


def check_dgla_axioms(g):
    """Exhaustive check of d^2 = 0, skew-symmetry, Leibniz and Jacobi."""
    report = AxiomReport()
    basis = _basis_elements(g)
    degs = set(g.degrees)

    # d^2 = 0
    res = CheckResult("d_squared", True)
    for i in g.degrees:
        if g.dim(i + 2) and g.dim(i + 1):
            m = g.d_matrix(i + 1) @ g.d_matrix(i)
            res.checked += g.dim(i)
            if not m.is_zero():
                col = next(a for a in range(m.ncols) if any(x != 0 for x in m.column(a)))
                res.passed = False
                res.witness = (i, col)
                break
    report.results.append(res)

    # graded skew-symmetry
    res = CheckResult("skew_symmetry", True)
    for (i, a) in basis:
        for (j, b) in basis:
            if (i + j) not in degs:
                continue
            res.checked += 1
            lhs = g.bracket_basis(i, a, j, b)
            rhs = g.bracket_basis(j, b, i, a)
            s = _sign(i * j + 1)
            if lhs != {c: s * v for c, v in rhs.items()}:
                res.passed = False
                res.witness = ((i, a), (j, b))
                break
        if not res.passed:
            break
    report.results.append(res)

    # Leibniz: d[a,b] = [da,b] + (-1)^|a| [a,db]
    res = CheckResult("leibniz", True)
    if g.differential:
        for (i, a) in basis:
            for (j, b) in basis:
                if (i + j) not in degs and (i + j + 1) not in degs:
                    continue
                res.checked += 1
                ab = g.bracket_basis(i, a, j, b)
                lhs = g.d_sparse(i + j, ab)
                r1 = g.bracket_sparse(i + 1, g.d_sparse(i, {a: 1}), j, {b: 1})
                r2 = g.bracket_sparse(i, {a: 1}, j + 1, g.d_sparse(j, {b: 1}))
                out = dict(lhs)
                for c, v in r1.items():
                    _acc(out, c, -v)
                for c, v in r2.items():
                    _acc(out, c, -_sign(i) * v)
                if out:
                    res.passed = False
                    res.witness = ((i, a), (j, b))
                    break
            if not res.passed:
                break
    report.results.append(res)

    # Jacobi: (-1)^{|a||c|}[a,[b,c]] + cyclic = 0.  The cyclic sum is
    # invariant under rotation and changes by a global sign under a
    # transposition once skew-symmetry holds, so non-decreasing triples suffice.
    res = CheckResult("jacobi", True)
    sorted_only = report["skew_symmetry"].passed
    n = len(basis)
    for x in range(n):
        i, a = basis[x]
        for y in range(x if sorted_only else 0, n):
            j, b = basis[y]
            for z in range(y if sorted_only else 0, n):
                k, c = basis[z]
                if (i + j + k) not in degs:
                    continue
                res.checked += 1
                out = {}
                for (p, e), (r, f), (s, h) in (((i, a), (j, b), (k, c)),
                                               ((j, b), (k, c), (i, a)),
                                               ((k, c), (i, a), (j, b))):
                    inner = g.bracket_basis(r, f, s, h)
                    if not inner:
                        continue
                    sg = _sign(p * s)
                    for t, v in g.bracket_sparse(p, {e: 1}, r + s, inner).items():
                        _acc(out, t, sg * v)
                if out:
                    res.passed = False
                    res.witness = ((i, a), (j, b), (k, c))
                    break
            if not res.passed:
                break
        if not res.passed:
            break
    report.results.append(res)
    return report


def mc_residual(g, x):
    """dx + 1/2 [x, x] for x of degree 1."""
    if len(x) != g.dim(1):
        raise ValueError("x must be an element of degree 1")
    dx = g.d(1, x)
    xx = g.bracket(1, x, 1, x)
    return [a + b / 2 for a, b in zip(dx, xx)]


def mc_parts(g, x):
    """(dx, [x, x]) separately; both vanish on MC elements of a cone flavor."""
    return g.d(1, x), g.bracket(1, x, 1, x)


def is_mc(g, x):
    return all(c == 0 for c in mc_residual(g, x))


@dataclass
class McElement:
    value: list
    residual: list

    @property
    def is_mc(self):
        return all(c == 0 for c in self.residual)


def mc_element(g, x):
    x = [q(c) for c in x]
    return McElement(x, mc_residual(g, x))


def gauge_vector(g, x, lam):
    """d(lam) + [x, lam] for x in degree 1 and lam in degree 0."""
    if len(x) != g.dim(1) or len(lam) != g.dim(0):
        raise ValueError("degree mismatch in gauge_vector")
    return [a + b for a, b in zip(g.d(0, lam), g.bracket(1, x, 0, lam))]


def orbit_tangent_space(g, x):
    """Image of lam -> d_x lam in degree 1."""
    if not is_mc(g, x):
        raise ValueError("orbit tangent space needs an MC element")
    m = g.twisted_d_matrix(x, 0)
    if m.ncols == 0:
        return Subspace.zero(g.dim(1))
    return rref_decompose(m).image
