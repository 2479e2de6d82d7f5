"""Chevalley-Eilenberg complexes and the MCP structure on central extensions.

Forms on g are stored by their values on sorted basis words, so the
coefficient of e_I^v is alpha(e_{i1}, ..., e_{ip}).  The CE differential is

    d alpha(x_0, ..., x_p) = sum_{i<j} (-1)^{i+j} alpha([x_i, x_j], x_0, ..^i..^j.., x_p)

and the boundary delta on chains is its transpose under the delta pairing.
"""

from .bv import ExteriorProductAlgebra
from .dgla import Dgla
from .graded import ExteriorAlgebra, sort_sign
from .mcp import McpStructure, TRIVIAL_BRACKET, linear_space_sampler, random_rational
from .ratlin import (ZERO, ONE, LinearSolver, NoSolution, QuotientSpace, RationalMatrix, Subspace, dot,
                     inverse, q, rank, rref_decompose)


class LieAlgebraError(ValueError):
    pass


class LieAlgebra:
    """Structure constants c_{ij}^k with [e_i, e_j] = sum_k c_{ij}^k e_k (0-based)."""

    def __init__(self, dim, brackets, labels=None, inner_product=None, name=""):
        self.dim = int(dim)
        self.name = name
        self.labels = labels or [f"e{i + 1}" for i in range(self.dim)]
        table = [[dict() for _ in range(self.dim)] for _ in range(self.dim)]
        given = {}
        for (i, j), res in brackets.items():
            for k, c in res.items():
                c = q(c)
                if not (0 <= i < self.dim and 0 <= j < self.dim and 0 <= k < self.dim):
                    raise LieAlgebraError(f"index out of range in c_({i + 1},{j + 1})^{k + 1}")
                given[(i, j, k)] = c
        for (i, j, k), c in given.items():
            if i == j and c:
                raise LieAlgebraError(f"antisymmetry violated: c_({i + 1},{i + 1})^{k + 1} = {c}")
            other = given.get((j, i, k))
            if other is not None and other != -c:
                a, b = sorted((i, j))
                raise LieAlgebraError(f"antisymmetry violated at indices ({a + 1},{b + 1},{k + 1})")
            if c:
                table[i][j][k] = c
                table[j][i][k] = -c
        self.table = table
        self.inner_product = (RationalMatrix.identity(self.dim) if inner_product is None
                              else inner_product)
        if self.inner_product != self.inner_product.T:
            raise LieAlgebraError("inner product is not symmetric")
        if rank(self.inner_product) != self.dim:
            raise LieAlgebraError("inner product is degenerate")
        w = self.jacobi_witness()
        if w is not None:
            raise LieAlgebraError(f"Jacobi identity fails at basis triple {tuple(i + 1 for i in w)}")

    def structure_constants(self):
        return {(i, j): dict(self.table[i][j]) for i in range(self.dim) for j in range(i + 1, self.dim)
                if self.table[i][j]}

    def bracket(self, u, v):
        out = [ZERO] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                for k, c in self.table[i][j].items():
                    out[k] += a * b * c
        return out

    def basis_vector(self, i):
        return [ONE if k == i else ZERO for k in range(self.dim)]

    def jacobi_witness(self):
        n = self.dim
        E = [self.basis_vector(i) for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    a = self.bracket(E[i], self.bracket(E[j], E[k]))
                    b = self.bracket(E[j], self.bracket(E[k], E[i]))
                    c = self.bracket(E[k], self.bracket(E[i], E[j]))
                    if any(x + y + z for x, y, z in zip(a, b, c)):
                        return (i, j, k)
        return None

    def derived_algebra(self):
        vecs = [self.bracket(self.basis_vector(i), self.basis_vector(j))
                for i in range(self.dim) for j in range(i + 1, self.dim)]
        return Subspace(self.dim, [v for v in vecs if any(v)])

    def is_unimodular(self):
        # tr ad_x = 0 for all x
        return all(sum(self.table[i][k].get(k, ZERO) for k in range(self.dim)) == 0 for i in range(self.dim))


class CEComplex:
    """d on forms and delta on chains of a Lie algebra, per degree."""

    def __init__(self, g):
        self.g = g
        self.ext = ExteriorAlgebra(g.dim)
        n = g.dim
        self.d = {p: self._d_matrix(p) for p in range(n)}   # forms p -> p + 1
        self.delta = {p + 1: self.d[p].T for p in range(n)}  # chains p + 1 -> p

    def _form_value(self, I, k, rest):
        s, w = sort_sign((k,) + tuple(rest))
        return s if s and w == I else 0

    def _d_matrix(self, p):
        g, ext = self.g, self.ext
        src, dst = ext.basis(p), ext.basis(p + 1)
        rows = [[ZERO] * len(src) for _ in dst]
        for r, J in enumerate(dst):
            for a in range(len(J)):
                for b in range(a + 1, len(J)):
                    br = g.table[J[a]][J[b]]
                    if not br:
                        continue
                    rest = J[:a] + J[a + 1:b] + J[b + 1:]
                    sgn = -1 if (a + b) % 2 else 1
                    for k, c in br.items():
                        s, w = sort_sign((k,) + rest)
                        if s:
                            rows[r][ext.index(w)] += sgn * s * c
        return RationalMatrix(rows, len(src))

    def apply_d(self, alpha):
        """d on a form given as a dict word -> coefficient."""
        p = len(next(iter(alpha))) if alpha else 0
        return self.ext.from_dense(p + 1, self.d[p].apply(self.ext.to_dense(p, alpha)))

    def apply_delta(self, chain):
        p = len(next(iter(chain))) if chain else 0
        if p == 0:
            return {}
        return self.ext.from_dense(p - 1, self.delta[p].apply(self.ext.to_dense(p, chain)))

    def betti(self):
        """Cohomology dimensions b_p = dim ker d_p - rank d_{p-1}."""
        n = self.g.dim
        ranks = {p: rank(self.d[p]) for p in range(n)}
        return [self.ext.dim(p) - ranks.get(p, 0) - ranks.get(p - 1, 0) for p in range(n + 1)]

    def homology(self):
        """Homology dimensions from the boundary: dim ker delta_p - rank delta_{p+1}."""
        n = self.g.dim
        ranks = {p: rank(self.delta[p]) for p in range(1, n + 1)}
        return [self.ext.dim(p) - ranks.get(p, 0) - ranks.get(p + 1, 0) for p in range(n + 1)]

    def cocycles(self, p):
        if p >= self.g.dim:
            return Subspace.full(self.ext.dim(p))
        return rref_decompose(self.d[p]).kernel

    def coboundaries(self, p):
        if p == 0:
            return Subspace.zero(1)
        return rref_decompose(self.d[p - 1]).image


def ce_differential(g):
    return CEComplex(g)


def ce_dgla(g, cx=None):
    cx = cx or CEComplex(g)
    n = g.dim
    dims = {i: cx.ext.dim(i + 1) for i in range(-1, n)}
    diff = {i: cx.d[i + 1] for i in range(-1, n - 1)}
    labels = {i: [w for w in cx.ext.basis(i + 1)] for i in range(-1, n)}
    return Dgla(dims, {}, diff, labels=labels, name=f"CE({g.name})")


def build_ce_mcp(g, signed=False, name=None, scale=1):
    """(wedge g^v [-1], d, 0), B = wedge g, delta pairing.

    With ``signed`` the pairing in degree i carries (-1)^(i+1); the default
    plain pairing is the one under which delta(e1 ^ e2) = -e3 on h3.
    ``scale`` multiplies every pairing (a volume normalisation).
    """
    cx = CEComplex(g)
    L = ce_dgla(g, cx)
    B = ExteriorProductAlgebra(g.dim)
    pairings = {}
    for i in L.degrees:
        s = -1 if (signed and (i + 1) % 2) else 1
        pairings[i] = RationalMatrix.identity(L.dim(i)).scale(s * q(scale))
    Z2 = cx.cocycles(2) if g.dim >= 2 else Subspace.zero(0)
    full = Subspace.full(cx.ext.dim(2))
    off = [v for v in full.vectors if not Z2.contains(v)]

    def non_mc(rng, count):
        pts = []
        for _ in range(count if off else 0):
            v = list(off[rng.randrange(len(off))])
            for b in Z2.vectors:
                c = random_rational(rng)
                v = [x + c * y for x, y in zip(v, b)]
            pts.append(v)
        return pts
    s = McpStructure(L, B, pairings, TRIVIAL_BRACKET, k_constant=0, name=name or f"ce:{g.name}",
                     mc_sampler=linear_space_sampler(Z2.vectors) if Z2.vectors else None,
                     non_mc_sampler=non_mc)
    s.complex = cx
    s.lie = g
    return s


def mc_set(s):
    """For a trivial-bracket MCP the MC set is the space of closed elements of L^1."""
    return rref_decompose(s.dgla.d_matrix(1)).kernel if s.dgla.dim(2) else Subspace.full(s.m)


# --- the extension algebra ------------------------------------------------

def _induced_gram(G, ext, p):
    words = ext.basis(p)
    rows = []
    for I in words:
        row = []
        for J in words:
            sub = RationalMatrix([[G[i, j] for j in J] for i in I], len(J)) if p else None
            row.append(_det(sub) if p else ONE)
        rows.append(row)
    return RationalMatrix(rows, len(words))


def _det(m):
    rows = m.rows()
    n = len(rows)
    det = ONE
    for c in range(n):
        p = next((r for r in range(c, n) if rows[r][c] != 0), None)
        if p is None:
            return ZERO
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        det *= rows[c][c]
        for r in range(c + 1, n):
            f = rows[r][c] / rows[c][c]
            if f:
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[c])]
    return det


class ExtensionAlgebra:
    """Lie algebra on wedge^2 g / delta wedge^3 g with [[a, b]] = delta a ^ delta b."""

    def __init__(self, g):
        self.g = g
        cx = self.cx = CEComplex(g)
        ext = cx.ext
        n = g.dim
        self.d2 = cx.delta.get(2, RationalMatrix.zeros(n, 0))
        self.d3 = cx.delta.get(3, RationalMatrix.zeros(ext.dim(2), 0))
        full = Subspace.full(ext.dim(2))
        im3 = rref_decompose(self.d3).image if self.d3.ncols else Subspace.zero(ext.dim(2))
        self.quotient = QuotientSpace(full, im3)
        self.cycles2 = rref_decompose(self.d2).kernel if self.d2.ncols else Subspace.full(ext.dim(2))
        self.rank_delta2 = rank(self.d2) if self.d2.ncols else 0
        self.rank_delta3 = rank(self.d3) if self.d3.ncols else 0
        self.b2 = self.cycles2.dim - self.rank_delta3
        self.derived = g.derived_algebra()
        self.table = {}
        reps = self.quotient.representatives
        for a, u in enumerate(reps):
            for b, v in enumerate(reps):
                self.table[(a, b)] = self.quotient.project(self.bracket(u, v))

    @property
    def dim(self):
        return self.quotient.dim

    def bracket(self, u, v):
        ext = self.cx.ext
        du = ext.from_dense(1, self.d2.apply(u))
        dv = ext.from_dense(1, self.d2.apply(v))
        return ext.to_dense(2, ext.wedge(du, dv))

    def phi(self, u):
        """The map -delta to g."""
        return [-c for c in self.d2.apply(u)]

    def dimension_identity(self):
        return self.dim, self.b2, self.derived.dim

    def is_abelian(self):
        return all(not any(v) for v in self.table.values())

    def center_check(self):
        """delta-closed classes are central."""
        for z in self.cycles2.vectors:
            for u in self.quotient.representatives:
                if not self.quotient.is_zero(self.bracket(z, u)):
                    return False
        return True

    def phi_is_homomorphism(self):
        reps = self.quotient.representatives
        for u in reps:
            for v in reps:
                if self.phi(self.bracket(u, v)) != self.g.bracket(self.phi(u), self.phi(v)):
                    return False
        return True

    def structure_constants_via_phi(self):
        """If -delta is an isomorphism onto g, structure constants of the quotient in
        the basis phi^{-1}(e_k); compare with g's own table."""
        if self.b2 != 0 or self.derived.dim != self.g.dim:
            return None
        n = self.g.dim
        reps = self.quotient.representatives
        M = RationalMatrix.from_columns([self.phi(u) for u in reps], n)
        Minv = inverse(M)
        basis = [self.quotient.lift(Minv.column(k)) for k in range(n)]
        consts = {}
        for i in range(n):
            for j in range(n):
                cls = self.quotient.project(self.bracket(basis[i], basis[j]))
                consts[(i, j)] = M.apply(cls)
        return consts

    # Hodge data with respect to g's inner product
    def hodge(self):
        ext = self.cx.ext
        G1 = self.g.inner_product
        G2 = _induced_gram(G1, ext, 2)
        G3 = _induced_gram(G1, ext, 3)
        n2 = ext.dim(2)
        # delta^*_2 : g -> wedge^2 g,  <delta* u, w>_2 = <u, delta w>_1
        dstar2 = inverse(G2) @ self.d2.T @ G1
        harmonic_dim = None
        if self.d3.ncols:
            dstar3 = inverse(G3) @ self.d3.T @ G2
            ker3 = rref_decompose(dstar3).kernel
        else:
            ker3 = Subspace.full(n2)
        harmonic = self.cycles2.intersection(ker3)
        harmonic_dim = harmonic.dim
        im3 = rref_decompose(self.d3).image if self.d3.ncols else Subspace.zero(n2)
        imstar = rref_decompose(dstar2).image
        total = harmonic.sum(im3).sum(imstar)
        orth = all(dot(u, G2.apply(v)) == 0 for A, B in ((harmonic, im3), (harmonic, imstar), (im3, imstar))
                   for u in A.vectors for v in B.vectors)
        return {"harmonic": harmonic_dim, "exact": im3.dim, "coexact": imstar.dim,
                "sums_to_total": total.dim == n2 and harmonic_dim + im3.dim + imstar.dim == n2,
                "orthogonal": orth, "dstar": dstar2, "gram2": G2, "coexact_space": imstar}

    def normalized_section(self):
        """s : [g,g] -> wedge^2 g with (-delta) s = id, s = -delta^*(delta delta^*)^{-1}."""
        h = self.hodge()
        dstar = h["dstar"]
        DD = self.d2 @ dstar
        sols = LinearSolver(DD)
        basis = self.derived.vectors

        def section(a):
            w = sols.solve(a)  # delta delta^* w = a
            return [-c for c in dstar.apply(w)]
        return section, basis, h

    def projection_identity(self):
        """pi([[s a, s b]]) = s[a, b] on a basis of [g,g], pi the orthogonal projection to delta^* g."""
        section, basis, h = self.normalized_section()
        G2 = h["gram2"]
        cospace = h["coexact_space"]
        vecs = cospace.vectors
        if not vecs:
            return True
        gram = RationalMatrix([[dot(u, G2.apply(v)) for v in vecs] for u in vecs], len(vecs))
        gs = LinearSolver(gram)

        def proj(w):
            c = gs.solve([dot(u, G2.apply(w)) for u in vecs])
            out = [ZERO] * len(w)
            for a, v in zip(c, vecs):
                out = [x + a * y for x, y in zip(out, v)]
            return out
        for a in basis:
            for b in basis:
                lhs = proj(self.bracket(section(a), section(b)))
                rhs = section(self.g.bracket(a, b))
                if lhs != rhs:
                    return False
        for a in basis:
            if self.phi(section(a)) != a:
                return False
        return True

    def splits(self):
        """Whether 0 -> H -> Q -> [g,g] -> 0 has a Lie algebra section."""
        section, basis, _ = self.normalized_section()
        Qs = self.quotient
        H = Subspace(Qs.dim, [Qs.project(z) for z in self.cycles2.vectors])
        Hb = H.vectors
        k, hdim = len(basis), len(Hb)
        if not k or not hdim:
            return True
        Dsub = Subspace(self.g.dim, basis, independent=True)
        # unknown c[r][t]: c(basis_r) = sum_t c[r][t] Hb[t]
        rows, rhs = [], []
        for a in basis:
            for b in basis:
                ab = self.g.bracket(a, b)
                coords = Dsub.coordinates(ab)
                T = [x - y for x, y in zip(Qs.project(self.bracket(section(a), section(b))),
                                           Qs.project(section(ab)))]
                for comp in range(Qs.dim):
                    row = [ZERO] * (k * hdim)
                    for r in range(k):
                        for t in range(hdim):
                            row[r * hdim + t] += coords[r] * Hb[t][comp]
                    rows.append(row)
                    rhs.append(T[comp])
        try:
            LinearSolver(RationalMatrix(rows, k * hdim)).solve(rhs)
            return True
        except NoSolution:
            return False


def extension_algebra(g):
    return ExtensionAlgebra(g)


def lie_poisson_matrix(s, x):
    """Oracle for the Poisson tensor on Z^2 at X = d xi: Pi(a, b) = -xi([phi a, phi b]), phi = -delta."""
    g = s.lie
    cx = s.complex
    xi = LinearSolver(cx.d[1]).solve(list(x))
    n2 = cx.ext.dim(2)
    E = [[ONE if i == j else ZERO for i in range(n2)] for j in range(n2)]
    phis = [[-c for c in cx.delta[2].apply(e)] for e in E]
    return RationalMatrix([[-dot(xi, g.bracket(phis[a], phis[b])) for b in range(n2)] for a in range(n2)], n2)
