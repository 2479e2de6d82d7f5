"""Commutative Frobenius algebras, skew multiderivations and the Poisson cone.

A p-cochain F : wedge^p A -> A is stored flat: the coefficient of e_c in
F(e_I) sits at index ``word_index(I) * n + c``.  Chains a (x) e_I in
A (x) wedge^p A use the same flat index, so the evaluation pairing
(F, a (x) e_I) = <F(e_I), a> is a plain matrix.

Two models of the BV side are provided:

* ``printed_delta`` is the two-sum operator on all of A (x) wedge A, with
  the factor 2 kept;
* ``build_frobenius_mcp`` uses skew multiderivations as L and the quotient
  of A (x) wedge A by their annihilator as B, with delta the exact adjoint
  of [X, .].  The two differ by twice the contraction with the modular
  derivation of X.
"""

from itertools import combinations
from math import factorial

from .bv import BvAlgebra, GradedAlgebra
from .dgla import CheckResult, Dgla
from .graded import ExteriorAlgebra, merge_words, sort_sign
from .mcp import McpStructure, TRIVIAL_DIFFERENTIAL, random_rational
from .poly import Polynomial
from .ratlin import (Q, ZERO, ONE, LinearSolver, NoSolution, PairingQuotient, RationalMatrix, SparseEchelon,
                     Subspace, dot, q, rank)


class FrobeniusError(ValueError):
    pass


class FrobeniusAlgebra:
    """Multiplication e_i e_j = sum_k m_ij^k e_k and an invariant form."""

    def __init__(self, dim, mult, form, unit=None, labels=None, name=""):
        self.dim = n = int(dim)
        self.name = name
        self.labels = labels or [f"e{i}" for i in range(n)]
        table = [[{} for _ in range(n)] for _ in range(n)]
        for (i, j), res in mult.items():
            for k, c in res.items():
                c = q(c)
                if c:
                    table[i][j][k] = c
        self.table = table
        self.form = form if isinstance(form, RationalMatrix) else RationalMatrix(form, n)
        if unit is None:
            unit = self._find_unit()
        self.unit = [q(c) for c in unit]
        self._validate()

    def _find_unit(self):
        rows = []
        rhs = []
        for j in range(self.dim):
            for k in range(self.dim):
                rows.append([self.table[i][j].get(k, ZERO) for i in range(self.dim)])
                rhs.append(ONE if j == k else ZERO)
        try:
            return LinearSolver(RationalMatrix(rows, self.dim)).solve(rhs)
        except NoSolution:
            raise FrobeniusError("algebra has no unit") from None

    def _validate(self):
        n = self.dim
        for i in range(n):
            for j in range(n):
                if self.table[i][j] != self.table[j][i]:
                    raise FrobeniusError(f"not commutative at ({self.labels[i]}, {self.labels[j]})")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    e = [self.basis_vector(t) for t in (i, j, k)]
                    if self.mul(self.mul(e[0], e[1]), e[2]) != self.mul(e[0], self.mul(e[1], e[2])):
                        raise FrobeniusError(f"not associative at {tuple(self.labels[t] for t in (i, j, k))}")
        for i in range(n):
            if self.mul(self.unit, self.basis_vector(i)) != self.basis_vector(i):
                raise FrobeniusError("unit element does not act as identity")
        if self.form != self.form.T:
            raise FrobeniusError("form is not symmetric")
        if rank(self.form) != n:
            raise FrobeniusError("form is degenerate")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    e = [self.basis_vector(t) for t in (i, j, k)]
                    if self.inner(self.mul(e[0], e[1]), e[2]) != self.inner(e[0], self.mul(e[1], e[2])):
                        raise FrobeniusError("form is not invariant")

    def basis_vector(self, i):
        return [ONE if k == i else ZERO for k in range(self.dim)]

    def mul(self, u, v):
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

    def inner(self, u, v):
        return dot(u, self.form.apply(v))

    def trace(self, u):
        return self.inner(u, self.unit)

    @classmethod
    def truncated_polynomial(cls, exponents, name=""):
        """k[x_1..x_r]/(x_1^{n_1}, ..., x_r^{n_r}) with <a, b> = top coefficient of ab."""
        monos = [()]
        for n_i in exponents:
            monos = [m + (k,) for m in monos for k in range(n_i)]
        monos.sort(key=lambda m: (sum(m), tuple(-k for k in m)))
        index = {m: i for i, m in enumerate(monos)}
        top = tuple(n_i - 1 for n_i in exponents)
        mult = {}
        for a in monos:
            for b in monos:
                c = tuple(x + y for x, y in zip(a, b))
                if all(x < n_i for x, n_i in zip(c, exponents)):
                    mult[(index[a], index[b])] = {index[c]: 1}
        n = len(monos)
        form = [[ZERO] * n for _ in range(n)]
        for a in monos:
            for b in monos:
                if tuple(x + y for x, y in zip(a, b)) == top:
                    form[index[a]][index[b]] = ONE
        names = "xyzuvw"

        def label(m):
            parts = [names[i] + (f"^{k}" if k > 1 else "") for i, k in enumerate(m) if k]
            return "".join(parts) or "1"
        return cls(n, mult, RationalMatrix(form, n), unit=[ONE if i == index[(0,) * len(exponents)] else ZERO for i in range(n)],
                   labels=[label(m) for m in monos],
                   name=name or "trunc" + "".join(str(n_i) for n_i in exponents))

    def product(self, other, name=""):
        """Direct product A x A' with the sum of the two forms."""
        n, m = self.dim, other.dim
        mult = {}
        for (src, off) in ((self, 0), (other, n)):
            for i in range(src.dim):
                for j in range(src.dim):
                    if src.table[i][j]:
                        mult[(i + off, j + off)] = {k + off: c for k, c in src.table[i][j].items()}
        form = [[ZERO] * (n + m) for _ in range(n + m)]
        for (src, off) in ((self, 0), (other, n)):
            for i in range(src.dim):
                for j in range(src.dim):
                    form[i + off][j + off] = src.form[i, j]
        return FrobeniusAlgebra(n + m, mult, RationalMatrix(form, n + m), unit=self.unit + other.unit,
                                labels=[f"{s}" for s in self.labels] + [f"{s}'" for s in other.labels],
                                name=name or f"{self.name}x{other.name}")


# --- alternating cochains ---------------------------------------------------

class Cochains:
    """Alternating cochains wedge^p A -> A and chains A (x) wedge^p A, flat."""

    def __init__(self, A):
        self.A = A
        self.n = A.dim
        self.ext = ExteriorAlgebra(A.dim)

    def size(self, p):
        return self.ext.dim(p) * self.n

    def value(self, F, seq):
        """F(e_{s1}, ..., e_{sp}) for an arbitrary sequence of basis indices."""
        s, w = sort_sign(seq)
        if not s:
            return [ZERO] * self.n
        base = self.ext.index(w) * self.n
        if s > 0:
            return list(F[base:base + self.n])
        return [-c for c in F[base:base + self.n]]

    def insert(self, F, v, rest):
        """F(v, e_rest) for a vector v."""
        out = [ZERO] * self.n
        for k, c in enumerate(v):
            if c:
                val = self.value(F, (k,) + tuple(rest))
                for t, x in enumerate(val):
                    if x:
                        out[t] += c * x
        return out

    def bracket(self, F, p, G, r):
        """Alternated Gerstenhaber bracket of a p-cochain and an r-cochain.

        Equal to p! r! / s! times the shuffle sums, s = p + r - 1.
        """
        s = p + r - 1
        if s < 0:
            return []
        out = [ZERO] * self.size(s)
        c = Q(factorial(p) * factorial(r), factorial(s))
        sign = -1 if (p - 1) * (r - 1) % 2 else 1
        for w, J in enumerate(self.ext.basis(s)):
            val = [ZERO] * self.n
            for (P, pp, R, rr, sg) in ((F, p, G, r, 1), (G, r, F, p, -sign)):
                if pp == 0:
                    continue
                for S in combinations(range(s), rr):
                    Sc = [i for i in range(s) if i not in S]
                    sh, _ = sort_sign(tuple(S) + tuple(Sc))
                    inner = self.value(R, tuple(J[i] for i in S)) if rr else list(R)
                    term = self.insert(P, inner, tuple(J[i] for i in Sc))
                    for t, x in enumerate(term):
                        if x:
                            val[t] += sg * sh * x
            base = w * self.n
            for t in range(self.n):
                out[base + t] = c * val[t]
        return out

    def pairing_matrix(self, p, vectors, scale=1):
        """scale * <F(e_I), e_a> for F in ``vectors`` against every chain a (x) e_I."""
        G = self.A.form.scale(scale) if scale != 1 else self.A.form
        rows = []
        for F in vectors:
            row = [ZERO] * self.size(p)
            for w in range(self.ext.dim(p)):
                base = w * self.n
                val = F[base:base + self.n]
                gv = G.T.apply(val)
                for a in range(self.n):
                    row[base + a] = gv[a]
            rows.append(row)
        return RationalMatrix(rows, self.size(p))

    def chain_product(self, p, u, r, v):
        """(a (x) e_I) ^ (b (x) e_J) = ab (x) e_I ^ e_J on flat dense chains."""
        n = self.n
        out = [ZERO] * self.size(p + r)
        for iu, x in enumerate(u):
            if not x:
                continue
            I, a = self.ext.basis(p)[iu // n], iu % n
            for iv, y in enumerate(v):
                if not y:
                    continue
                J, b = self.ext.basis(r)[iv // n], iv % n
                s, K = merge_words(I, J)
                if not s:
                    continue
                base = self.ext.index(K) * n
                for c, m in self.A.table[a][b].items():
                    out[base + c] += s * x * y * m
        return out

    def chain_basis(self, p, I, a):
        v = [ZERO] * self.size(p)
        v[self.ext.index(tuple(I)) * self.n + a] = ONE
        return v


def skew_multiderivations_direct(A, p, cochains=None):
    """Alternating p-cochains that are derivations in the first argument, by a direct solve.

    Alternation then makes them derivations in every argument.
    """
    C = cochains or Cochains(A)
    n = A.dim
    size = C.size(p)
    if p == 0:
        return Subspace.full(size)
    if p > n:
        return Subspace.zero(0)
    ech = SparseEchelon(size)
    ext = C.ext
    for rest in ext.basis(p - 1):
        for a in range(n):
            for b in range(a, n):
                # F(e_a e_b, rest) - e_a F(e_b, rest) - e_b F(e_a, rest) = 0, component t
                rows = [dict() for _ in range(n)]
                for k, m in A.table[a][b].items():
                    s, w = sort_sign((k,) + rest)
                    if s:
                        base = ext.index(w) * n
                        for t in range(n):
                            rows[t][base + t] = rows[t].get(base + t, ZERO) + s * m
                for (u, v) in ((a, b), (b, a)):
                    s, w = sort_sign((v,) + rest)
                    if not s:
                        continue
                    base = ext.index(w) * n
                    # (e_u * F(e_v, rest))_t = sum_c F_c m_{u c}^t
                    for c in range(n):
                        for t, m in A.table[u][c].items():
                            rows[t][base + c] = rows[t].get(base + c, ZERO) - s * m
                for row in rows:
                    ech.add(row)
    return ech.kernel()


def _extend_multiderivations(C, lower, p):
    """Skew p-multiderivations from the (p-1)-ones.

    An alternating F is a multiderivation exactly when every slice
    F(e_a, .) is one, so F is parametrised by F(e_a, .) = sum_k c_ak D_k and
    only the alternation constraints remain to be solved.
    """
    n = C.n
    ext = C.ext
    D = lower.vectors
    d = len(D)
    if not d:
        return Subspace.zero(C.size(p))
    nunk = n * d

    def slice_rows(a, J, sign):
        # rows (per component t) of sign * S_a(J) as linear forms in c
        base = ext.index(J) * n
        rows = [dict() for _ in range(n)]
        for k, Dk in enumerate(D):
            for t in range(n):
                v = Dk[base + t]
                if v:
                    rows[t][a * d + k] = sign * v
        return rows

    ech = SparseEchelon(nunk)
    for J in ext.basis(p - 1):
        for a in J:
            for row in slice_rows(a, J, 1):
                ech.add(row)
    for K in ext.basis(p):
        first = slice_rows(K[0], K[1:], 1)
        for i in range(1, p):
            other = slice_rows(K[i], K[:i] + K[i + 1:], -1 if i % 2 else 1)
            for r1, r2 in zip(first, other):
                row = dict(r2)
                for c, v in r1.items():
                    row[c] = row.get(c, ZERO) - v
                ech.add(row)
    out = []
    for c in ech.kernel().vectors:
        F = [ZERO] * C.size(p)
        for w, K in enumerate(ext.basis(p)):
            a, J = K[0], K[1:]
            base_j = ext.index(J) * n
            for k, Dk in enumerate(D):
                coef = c[a * d + k]
                if coef:
                    for t in range(n):
                        F[w * n + t] += coef * Dk[base_j + t]
        out.append(F)
    return Subspace(C.size(p), out)


def skew_multiderivations(A, p, cochains=None):
    """Alternating p-cochains that are derivations in each argument."""
    C = cochains or Cochains(A)
    if p <= 1 or p > A.dim:
        return skew_multiderivations_direct(A, p, C)
    return _extend_multiderivations(C, skew_multiderivations(A, p - 1, C), p)


def pairing_scale(p):
    """(-1)^{p(p+1)/2} p!.

    The factor p! pairs an alternating map with the unnormalised
    alternation f_1 ^ ... ^ f_p; the sign makes the adjoint of [X, .]
    agree with the printed two-sum operator (up to the modular term)
    in every degree.
    """
    return (-1 if (p * (p + 1) // 2) % 2 else 1) * factorial(p)


# --- the dgla of skew multiderivations -----------------------------------

class FrobeniusModel:
    """L^{p-1} = skew p-multiderivations, B^p = chains modulo their annihilator."""

    def __init__(self, A):
        self.A = A
        self.C = C = Cochains(A)
        self.der = {}
        for p in range(0, A.dim + 1):
            if p <= 1:
                D = skew_multiderivations_direct(A, p, C)
            else:
                D = _extend_multiderivations(C, self.der[p - 1], p)
            if not D.dim:
                break
            self.der[p] = D
        self.top = max(self.der)
        self.dgla = self._build_dgla()
        self.scales = {p: pairing_scale(p) for p in self.der}
        self.pair_full = {p: C.pairing_matrix(p, D.vectors, self.scales[p]) for p, D in self.der.items()}
        self.quotients = {}
        for p, M in self.pair_full.items():
            self.quotients[p] = PairingQuotient(M)
        self.algebra = GradedAlgebra({p: Qp.dim for p, Qp in self.quotients.items()}, self._mul_basis)
        self.pairings = {}
        for p, Qp in self.quotients.items():
            cols = [self.pair_full[p].apply(r) for r in Qp.representatives]
            self.pairings[p - 1] = RationalMatrix.from_columns(cols, self.der[p].dim)

    def _build_dgla(self):
        C = self.C
        dims = {p - 1: D.dim for p, D in self.der.items()}
        brackets = {}
        for p, Dp in self.der.items():
            for r, Dr in self.der.items():
                s = p + r - 1
                if s not in self.der or (r - 1, p - 1) in brackets:
                    continue
                table = {}
                for a, F in enumerate(Dp.vectors):
                    for b, G in enumerate(Dr.vectors):
                        H = C.bracket(F, p, G, r)
                        if not any(H):
                            continue
                        coords = self.der[s].coordinates(H)
                        table[(a, b)] = {c: v for c, v in enumerate(coords) if v}
                brackets[(p - 1, r - 1)] = table
        return Dgla(dims, brackets, {}, name=f"Der({self.A.name})")

    def _mul_basis(self, i, a, j, b):
        Qi, Qj = self.quotients[i], self.quotients[j]
        if i + j not in self.quotients:
            return {}
        prod = self.C.chain_product(i, Qi.representatives[a], j, Qj.representatives[b])
        coords = self.quotients[i + j].project(prod)
        return {c: v for c, v in enumerate(coords) if v}

    def element(self, p, coords):
        """Cochain of the multiderivation with the given coordinates in L^{p-1}."""
        D = self.der[p]
        out = [ZERO] * self.C.size(p)
        for c, v in zip(coords, D.vectors):
            if c:
                out = [x + c * y for x, y in zip(out, v)]
        return out

    def coordinates(self, p, F):
        return self.der[p].coordinates(F)

    def chain_class(self, p, chain):
        return self.quotients[p].project(chain)


def _cone_equations(model):
    """Components of [X, X] for X = sum t_k X_k, as quadratic polynomials."""
    g = model.dgla
    m = g.dim(1)
    t = Polynomial.variables(m)
    if not g.dim(2):
        return []
    zero = Polynomial(m)
    return [e + zero for e in g.bracket(1, t, 1, t)]


class PoissonCone:
    def __init__(self, model):
        self.model = model
        self.ambient_dim = model.dgla.dim(1)
        self.equations = [e for e in _cone_equations(model)]

    @property
    def identically_zero(self):
        return not any(self.equations)

    def contains(self, x):
        x = [q(c) for c in x]
        return all(not e.evaluate(x) for e in self.equations)

    def is_homogeneous_quadratic(self):
        return all(e.is_homogeneous(2) for e in self.equations)


def poisson_cone(A_or_model):
    model = A_or_model if isinstance(A_or_model, FrobeniusModel) else FrobeniusModel(A_or_model)
    return PoissonCone(model)


def sample_cone_points(model, rng, count, tries=200):
    """Rational cone points: lines through coordinate axes and random points that happen to lie on it.

    Points are built from random rational combinations of those cone
    generators found by a search over small sparse vectors; every point
    returned is checked exactly.
    """
    cone = PoissonCone(model)
    m = cone.ambient_dim
    if not m:
        return [[]]
    if cone.identically_zero:
        return [[random_rational(rng) for _ in range(m)] for _ in range(count)]
    pts = []
    attempts = 0
    while len(pts) < count and attempts < tries * count:
        attempts += 1
        support = rng.sample(range(m), rng.randint(1, m))
        x = [ZERO] * m
        for k in support:
            x[k] = random_rational(rng)
        if any(x) and cone.contains(x):
            pts.append(x)
    return pts


# --- the MCP structure --------------------------------------------------

def build_frobenius_mcp(A, name=None, cone_sampler=None):
    model = FrobeniusModel(A)
    cone = PoissonCone(model)

    def mc(rng, count):
        if cone_sampler is not None:
            return cone_sampler(model, rng, count)
        return sample_cone_points(model, rng, count)

    def non_mc(rng, count):
        m = cone.ambient_dim
        out = []
        tries = 0
        while len(out) < count and tries < 100 * count and not cone.identically_zero:
            tries += 1
            x = [random_rational(rng) for _ in range(m)]
            if not cone.contains(x):
                out.append(x)
        return out
    s = McpStructure(model.dgla, model.algebra, model.pairings, TRIVIAL_DIFFERENTIAL, k_constant=ONE,
                     name=name or f"frobenius:{A.name}", mc_sampler=mc, non_mc_sampler=non_mc)
    s.model = model
    s.cone = cone
    return s


# --- the printed operator on the full chain space -------------------------

def x_bracket(C, X, u, v):
    """[e_u, e_v]_X for a 2-cochain X."""
    return C.value(X, (u, v))


def printed_delta(C, X, p):
    """Matrix of the two-sum operator A (x) wedge^p A -> A (x) wedge^{p-1} A, factor 2 kept."""
    n = C.n
    ext = C.ext
    rows = [[ZERO] * C.size(p) for _ in range(C.size(p - 1))]
    for w, I in enumerate(ext.basis(p)):
        for a in range(n):
            col = w * n + a
            for i in range(p):
                sg = 2 if i % 2 == 0 else -2  # (-1)^{(i+1)+1}, 1-based i+1
                rest = I[:i] + I[i + 1:]
                br = x_bracket(C, X, a, I[i])
                base = ext.index(rest) * n
                for t, c in enumerate(br):
                    if c:
                        rows[base + t][col] += sg * c
            for i in range(p):
                for j in range(i + 1, p):
                    sg = 2 if (i + j) % 2 == 0 else -2
                    rest = I[:i] + I[i + 1:j] + I[j + 1:]
                    br = x_bracket(C, X, I[i], I[j])
                    for k, c in enumerate(br):
                        if not c:
                            continue
                        s, K = merge_words((k,), rest)
                        if s:
                            rows[ext.index(K) * n + a][col] += sg * s * c
    return RationalMatrix(rows, C.size(p))


class FullChainAlgebra(GradedAlgebra):
    """A (x) wedge^* A with (a (x) e_I)(b (x) e_J) = ab (x) e_I ^ e_J."""

    def __init__(self, C, top=None):
        self.C = C
        top = C.n if top is None else top
        super().__init__({p: C.size(p) for p in range(top + 1)}, self._mul)

    def _mul(self, i, a, j, b):
        C = self.C
        n = C.n
        I, x = C.ext.basis(i)[a // n], a % n
        J, y = C.ext.basis(j)[b // n], b % n
        s, K = merge_words(I, J)
        if not s:
            return {}
        base = C.ext.index(K) * n
        return {base + c: s * m for c, m in self.C.A.table[x][y].items()}


def frobenius_bv(A, X, top=None):
    """BV algebra on A (x) wedge^{<= top} A with the printed operator for the 2-cochain X."""
    C = Cochains(A)
    alg = FullChainAlgebra(C, top)
    delta = {p: printed_delta(C, X, p) for p in alg.degrees if p >= 1}
    return BvAlgebra(alg, delta, name=f"printed:{A.name}")


def printed_rho(C, X, a, f1):
    """a [f1, .]_X as a 1-cochain."""
    out = []
    for u in range(C.n):
        out += C.A.mul(C.A.basis_vector(a), x_bracket(C, X, f1, u))
    return out


def commutator(C, F, G):
    """FG - GF for 1-cochains."""
    n = C.n

    def apply(M, v):
        out = [ZERO] * n
        for k, c in enumerate(v):
            if c:
                for t in range(n):
                    out[t] += c * M[k * n + t]
        return out
    out = []
    for u in range(n):
        e = C.A.basis_vector(u)
        out += [x - y for x, y in zip(apply(F, apply(G, e)), apply(G, apply(F, e)))]
    return out


def _printed_property3_terms(A, X):
    """(basis quadruple, [rho f, rho g], rho [f, g]_B) over basis pairs of A (x) A."""
    C = Cochains(A)
    bv = frobenius_bv(A, X, top=2)
    n = A.dim
    for a in range(n):
        for f1 in range(n):
            for b in range(n):
                for g1 in range(n):
                    fi, gi = f1 * n + a, g1 * n + b
                    br = bv.derived_bracket(1, {fi: ONE}, 1, {gi: ONE})
                    rhs = [ZERO] * (n * n)
                    for idx, c in br.items():
                        f, aa = divmod(idx, n)
                        r = printed_rho(C, X, aa, f)
                        rhs = [x + c * y for x, y in zip(rhs, r)]
                    lhs = commutator(C, printed_rho(C, X, a, f1), printed_rho(C, X, b, g1))
                    yield (A.labels[a], A.labels[f1], A.labels[b], A.labels[g1]), lhs, rhs


def check_printed_property3(A, X, k=Q(1, 2)):
    """[rho f, rho g] = k rho [f, g]_B on all basis pairs of A (x) A, printed operator."""
    res = CheckResult("printed_property3", True)
    for quad, lhs, rhs in _printed_property3_terms(A, X):
        res.checked += 1
        if lhs != [k * y for y in rhs]:
            res.passed = False
            res.witness = quad
            return res
    return res


def printed_property3_ratios(A, X):
    """(number of basis pairs with a nonzero side, set of ratios lhs/rhs).

    A ratio set {k} with a positive count means the printed constant is
    determined by the data and equals k; "undefined" marks lhs != 0 = rhs.
    """
    count, ratios = 0, set()
    for _, lhs, rhs in _printed_property3_terms(A, X):
        if any(lhs) or any(rhs):
            count += 1
        for l, r in zip(lhs, rhs):
            if r:
                ratios.add(l / r)
            elif l:
                ratios.add("undefined")
    return count, ratios


def gerstenhaber_consistency(A, X):
    """Compare [a (x) f1, b (x) g1]_B with 2ab (x) [f1, g1]_X.

    Returns (holds for a = b = 1, first failing basis quadruple or None).
    """
    C = Cochains(A)
    bv = frobenius_bv(A, X, top=2)
    n = A.dim
    unit = next(i for i, c in enumerate(A.unit) if c)
    unit_ok = A.unit == A.basis_vector(unit)
    witness = None
    ok_unit = True
    for a in range(n):
        for f1 in range(n):
            for b in range(n):
                for g1 in range(n):
                    br = bv.derived_bracket(1, {f1 * n + a: ONE}, 1, {g1 * n + b: ONE})
                    got = [ZERO] * C.size(1)
                    for idx, c in br.items():
                        got[idx] = c
                    ab = A.mul(A.basis_vector(a), A.basis_vector(b))
                    fg = x_bracket(C, X, f1, g1)
                    want = [ZERO] * C.size(1)
                    for k, c in enumerate(fg):
                        for t, d in enumerate(ab):
                            if c and d:
                                want[k * n + t] += 2 * c * d
                    if got != want:
                        if unit_ok and a == unit and b == unit:
                            ok_unit = False
                        if witness is None:
                            witness = (A.labels[a], A.labels[f1], A.labels[b], A.labels[g1])
    return ok_unit and unit_ok, witness


def check_multiplicative_relation(A, X):
    """The relation [ab, c]_X = [a, b]_X c on basis triples; returns CheckResult."""
    C = Cochains(A)
    n = A.dim
    res = CheckResult("ab_c_relation", True)
    for a in range(n):
        for b in range(n):
            ab = A.mul(A.basis_vector(a), A.basis_vector(b))
            for c in range(n):
                res.checked += 1
                lhs = [ZERO] * n
                for k, v in enumerate(ab):
                    if v:
                        lhs = [x + v * y for x, y in zip(lhs, x_bracket(C, X, k, c))]
                rhs = A.mul(x_bracket(C, X, a, b), A.basis_vector(c))
                if lhs != rhs:
                    res.passed = False
                    res.witness = (A.labels[a], A.labels[b], A.labels[c])
                    return res
    return res


def check_printed_adjointness(A, X, multiderivations_only=False, max_p=None):
    """(d_X F, f) = (F, delta f) with d_X = [X, .] on skew cochains and the printed delta."""
    C = Cochains(A)
    res = CheckResult("printed_adjointness", True)
    top = A.dim if max_p is None else max_p
    for p in range(0, top):
        if multiderivations_only:
            space = skew_multiderivations(A, p, C).vectors
        else:
            space = Subspace.full(C.size(p)).vectors
        if not space:
            continue
        D = printed_delta(C, X, p + 1)
        P_hi = C.pairing_matrix(p + 1, [C.bracket(X, 2, F, p) for F in space])
        P_lo = C.pairing_matrix(p, space)
        lhs = P_hi
        rhs = P_lo @ D
        res.checked += lhs.nrows * lhs.ncols
        if lhs != rhs:
            res.passed = False
            for r in range(lhs.nrows):
                for c in range(lhs.ncols):
                    if lhs[r, c] != rhs[r, c]:
                        I, a = C.ext.basis(p + 1)[c // C.n], c % C.n
                        res.witness = {"degree": p, "chain": (A.labels[a], tuple(A.labels[i] for i in I)),
                                       "lhs": lhs[r, c], "rhs": rhs[r, c]}
                        return res
    return res


def modular_derivation(A, X):
    """phi with <phi(a), b> = tr([a, b]_X), tr(u) = <u, 1>."""
    C = Cochains(A)
    n = A.dim
    Ginv = LinearSolver(A.form)
    out = []
    for a in range(n):
        row = [A.trace(x_bracket(C, X, a, b)) for b in range(n)]
        out += Ginv.solve(row)
    return out


def contraction_matrix(C, phi, p):
    """i_phi(a (x) f1 ^ ... ^ fp) = sum (-1)^{i+1} a phi(f_i) (x) (f without f_i)."""
    n = C.n
    ext = C.ext
    rows = [[ZERO] * C.size(p) for _ in range(C.size(p - 1))]
    for w, I in enumerate(ext.basis(p)):
        for a in range(n):
            col = w * n + a
            for i in range(p):
                sg = 1 if i % 2 == 0 else -1
                rest = I[:i] + I[i + 1:]
                val = C.A.mul(C.A.basis_vector(a), phi[I[i] * n:(I[i] + 1) * n])
                base = ext.index(rest) * n
                for t, c in enumerate(val):
                    if c:
                        rows[base + t][col] += sg * c
    return RationalMatrix(rows, C.size(p))


def cone_poisson_tensor(s):
    """Pi(e_a, e_b) on B^2 as cubic polynomials in the coordinates of L^1."""
    from .mcp import symbolic_point
    p = symbolic_point(s)
    n = s.algebra.dim(2)
    E = [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    deltas = [p.delta(2, e) for e in E]
    return [[p.pair(1, p.x, p.wedge(1, deltas[a], 1, deltas[b])) for b in range(n)] for a in range(n)]
