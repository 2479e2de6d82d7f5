"""MCP structures: a dgla L, a graded commutative algebra B and pairings
L^i x B^{i+1} -> Q.

For an element X of L^1 everything is derived from the pairings:

* delta_X is the adjoint of d_X = d + [X, .];
* rho_X : B^1 -> L^0 is defined by (X, a ^ b) = (rho_X a, b);
* nu_X = d_X rho_X delta_X : B^2 -> L^1;
* Pi(a, b) = (X, delta_X a ^ delta_X b);
* O_{X,beta} is defined by (A, O alpha) = ([A, rho_X delta_X beta], alpha).

X may be a list of rationals or of ``Polynomial`` objects; in the second
case all of the above are evaluated as polynomial maps on L^1.
"""

import random
from dataclasses import dataclass, field

from .bv import BvAlgebra, check_bv_axioms
from .dgla import CheckResult, is_mc
from .poly import Polynomial
from .ratlin import (Q, ZERO, ONE, QuotientSpace, RationalMatrix, Subspace, dot, inverse, q,
                     rref_decompose)

TRIVIAL_BRACKET = "trivial-bracket"
TRIVIAL_DIFFERENTIAL = "trivial-differential"


def _sign(e):
    return -1 if e % 2 else 1


def _to_sparse(v):
    return {i: c for i, c in enumerate(v) if c}


def _to_dense(u, n):
    out = [ZERO] * n
    for i, c in u.items():
        out[i] = c
    return out


def _gapply(m, v):
    """Matrix times a vector of rationals or polynomials."""
    out = []
    for i in range(m.nrows):
        s = ZERO
        for j, x in enumerate(v):
            if x:
                w = m[i, j]
                if w:
                    s = s + w * x
        out.append(s)
    return out


class McpStructure:
    def __init__(self, dgla, algebra, pairings, flavor, k_constant=None, name="",
                 mc_sampler=None, non_mc_sampler=None, sub_dgla=None, notes=None):
        self.dgla = dgla
        self.algebra = algebra
        self.flavor = flavor
        self.k_constant = None if k_constant is None else q(k_constant)
        self.name = name
        self.notes = notes or {}
        self.pairings = {}
        self.pairing_inverse = {}
        for i in dgla.degrees:
            if dgla.dim(i) != algebra.dim(i + 1):
                raise ValueError(f"dim L^{i} = {dgla.dim(i)} but dim B^{i + 1} = {algebra.dim(i + 1)}")
        for j in algebra.degrees:
            if algebra.dim(j) != dgla.dim(j - 1):
                raise ValueError(f"B^{j} has no partner in L^{j - 1}")
        for i, m in pairings.items():
            if not dgla.dim(i):
                continue
            if m.shape != (dgla.dim(i), algebra.dim(i + 1)):
                raise ValueError(f"pairing in degree {i} has shape {m.shape}")
            try:
                self.pairing_inverse[i] = inverse(m)
            except ZeroDivisionError:
                raise ValueError(f"pairing in degree {i} is degenerate") from None
            self.pairings[i] = m
        for i in dgla.degrees:
            if i not in self.pairings:
                raise ValueError(f"missing pairing in degree {i}")
        self.mc_sampler = mc_sampler
        self.non_mc_sampler = non_mc_sampler
        self.sub_dgla = sub_dgla  # optional dict degree -> Subspace of L^degree
        self._lin = {}

    @property
    def m(self):
        return self.dgla.dim(1)

    def pair(self, i, u, beta):
        """(u, beta) for u in L^i and beta in B^{i+1}, dense vectors."""
        if not self.dgla.dim(i):
            return ZERO
        return dot(u, self.pairings[i].apply(beta))

    def _adjoint(self, j, D):
        """delta : B^j -> B^{j-1} adjoint to D : L^{j-2} -> L^{j-1}."""
        n_out, n_in = self.algebra.dim(j - 1), self.algebra.dim(j)
        if not n_out or not n_in:
            return RationalMatrix.zeros(n_out, n_in)
        return self.pairing_inverse[j - 2] @ D.T @ self.pairings[j - 1]

    def delta_matrix(self, x, j):
        D = self.dgla.twisted_d_matrix([q(c) for c in x], j - 2) if self.dgla.dim(j - 2) else None
        if D is None:
            return RationalMatrix.zeros(self.algebra.dim(j - 1), self.algebra.dim(j))
        return self._adjoint(j, D)

    def linear_parts(self, j):
        """delta_X on B^j as (constant matrix, [matrix for each basis vector of L^1])."""
        if j not in self._lin:
            g = self.dgla
            if not g.dim(j - 2) or not self.algebra.dim(j - 1):
                z = RationalMatrix.zeros(self.algebra.dim(j - 1), self.algebra.dim(j))
                self._lin[j] = (z, [z] * self.m)
            else:
                const = self._adjoint(j, g.d_matrix(j - 2))
                parts = []
                for k in range(self.m):
                    e = [ZERO] * self.m
                    e[k] = ONE
                    parts.append(self._adjoint(j, g.ad_matrix(1, e, j - 2)))
                self._lin[j] = (const, parts)
        return self._lin[j]

    def rho_matrix(self, x):
        """rho_X : B^1 -> L^0 for numeric X."""
        n1, n0 = self.algebra.dim(1), self.dgla.dim(0)
        if not n1 or not n0 or not self.m:
            return RationalMatrix.zeros(n0, n1)
        w = self.pairings[1].T.apply([q(c) for c in x])
        A = self.algebra
        cols = []
        PinvT = self.pairing_inverse[0].T
        for a in range(n1):
            r = [ZERO] * n1
            for b in range(n1):
                s = ZERO
                for c, v in A.mul_basis(1, a, 1, b).items():
                    s += v * w[c]
                r[b] = s
            cols.append(PinvT.apply(r))
        return RationalMatrix.from_columns(cols, n0)

    def point(self, x):
        return McpPoint(self, x)

    def sample_mc(self, count, seed=0):
        rng = random.Random(seed)
        if self.mc_sampler is None:
            return [[ZERO] * self.m]
        return self.mc_sampler(rng, count)

    def sample_non_mc(self, count, seed=0):
        rng = random.Random(seed)
        if self.non_mc_sampler is None:
            return []
        return self.non_mc_sampler(rng, count)


class McpPoint:
    """All MCP data at one element X of L^1 (numeric or polynomial)."""

    def __init__(self, s, x):
        self.s = s
        self.symbolic = any(isinstance(c, Polynomial) for c in x)
        self.x = list(x) if self.symbolic else [q(c) for c in x]
        if len(self.x) != s.m:
            raise ValueError("X must lie in L^1")
        self._delta = {}
        self._rho = None
        self._nu = None

    # --- delta ---------------------------------------------------------
    def delta_matrix(self, j):
        if self.symbolic:
            raise TypeError("no matrix for a symbolic point")
        if j not in self._delta:
            self._delta[j] = self.s.delta_matrix(self.x, j)
        return self._delta[j]

    def delta(self, j, beta):
        """delta_X beta for beta in B^j (dense)."""
        if not self.symbolic:
            return self.delta_matrix(j).apply(beta) if self.s.algebra.dim(j - 1) else []
        const, parts = self.s.linear_parts(j)
        out = _gapply(const, beta)
        for xk, mk in zip(self.x, parts):
            if xk:
                out = [a + xk * b for a, b in zip(out, _gapply(mk, beta))]
        return out

    # --- products and pairings -----------------------------------------
    def wedge(self, i, u, j, v):
        A = self.s.algebra
        n = A.dim(i + j)
        out = [ZERO] * n
        for a, x in enumerate(u):
            if not x:
                continue
            for b, y in enumerate(v):
                if not y:
                    continue
                for c, w in A.mul_basis(i, a, j, b).items():
                    out[c] = out[c] + w * x * y
        return out

    def pair(self, i, u, beta):
        if not self.s.dgla.dim(i):
            return ZERO
        return dot(u, _gapply(self.s.pairings[i], beta))

    # --- rho, nu -------------------------------------------------------
    def rho_matrix(self):
        if self._rho is None:
            self._rho = self.s.rho_matrix(self.x)
        return self._rho

    def rho(self, a):
        if not self.symbolic:
            return self.rho_matrix().apply(a)
        s = self.s
        n1 = s.algebra.dim(1)
        w = _gapply(s.pairings[1].T, self.x)
        r = [ZERO] * n1
        for ai, av in enumerate(a):
            if not av:
                continue
            for b in range(n1):
                for c, v in s.algebra.mul_basis(1, ai, 1, b).items():
                    if w[c]:
                        r[b] = r[b] + av * v * w[c]
        return _gapply(s.pairing_inverse[0].T, r)

    def d_x(self, i, u):
        g = self.s.dgla
        out = g.d(i, u) if not self.symbolic else _gapply(g.d_matrix(i), u)
        br = g.bracket(1, self.x, i, u)
        return [a + b for a, b in zip(out, br)]

    def nu_matrix(self):
        if self._nu is None:
            s = self.s
            n2, m = s.algebra.dim(2), s.m
            if not n2 or not m or not s.dgla.dim(0):
                self._nu = RationalMatrix.zeros(m, n2)
            else:
                dx0 = s.dgla.twisted_d_matrix(self.x, 0)
                self._nu = dx0 @ self.rho_matrix() @ self.delta_matrix(2)
        return self._nu

    def nu(self, beta):
        if not self.symbolic:
            return self.nu_matrix().apply(beta)
        return self.d_x(0, self.rho(self.delta(2, beta)))

    # --- Poisson tensor ------------------------------------------------
    def poisson(self, a, b):
        """Pi(a, b) = (X, delta a ^ delta b) for a, b in B^2."""
        da, db = self.delta(2, a), self.delta(2, b)
        return self.pair(1, self.x, self.wedge(1, da, 1, db))

    def poisson_matrix(self):
        n = self.s.algebra.dim(2)
        E = [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
        deltas = [self.delta(2, e) for e in E]
        return RationalMatrix([[self.pair(1, self.x, self.wedge(1, deltas[i], 1, deltas[j]))
                                for j in range(n)] for i in range(n)], n)

    # --- O operators ---------------------------------------------------
    def o_apply(self, beta, alpha):
        """O_{X,beta} alpha."""
        s = self.s
        V = self.rho(self.delta(2, beta))
        w = _gapply(s.pairings[1], alpha)
        g = s.dgla
        m = s.m
        out = [ZERO] * m
        for A in range(m):
            e = [ZERO] * m
            e[A] = ONE
            br = g.bracket(1, e, 0, V)
            out[A] = dot(br, w) if not self.symbolic else sum((b * c for b, c in zip(br, w) if b and c), ZERO)
        return _gapply(s.pairing_inverse[1].T, out)

    def o_matrix(self, beta):
        n = self.s.algebra.dim(2)
        cols = []
        for j in range(n):
            e = [ZERO] * n
            e[j] = ONE
            cols.append(self.o_apply(beta, e))
        return RationalMatrix.from_columns(cols, n)

    # --- functions on L^1 ---------------------------------------------
    def D(self, grad):
        """The element Df of B^2 determined by (A, Df) = A . grad f."""
        return _gapply(self.s.pairing_inverse[1], grad)

    def hess_dual(self, H, V):
        """D^2 f(V, .) as an element of B^2, H the Hessian matrix (rows of values)."""
        hv = [sum((h * v for h, v in zip(row, V) if h and v), ZERO) for row in H]
        return _gapply(self.s.pairing_inverse[1], hv)

    def gradient_data(self, f):
        if self.symbolic:
            grad = f.gradient()
            H = f.hessian()
        else:
            grad = [p.evaluate(self.x) for p in f.gradient()]
            H = [[p.evaluate(self.x) for p in row] for row in f.hessian()]
        return grad, H

    def bracket_gradient(self, f, g, fdata=None, gdata=None):
        """D{f,g} by the five-term formula."""
        gf, Hf = fdata or self.gradient_data(f)
        gg, Hg = gdata or self.gradient_data(g)
        Df, Dg = self.D(gf), self.D(gg)
        dDf, dDg = self.delta(2, Df), self.delta(2, Dg)
        t1 = self.wedge(1, dDf, 1, dDg)
        t2 = self.o_apply(Dg, Df)
        t3 = self.o_apply(Df, Dg)
        t4 = self.hess_dual(Hf, self.nu(Dg))
        t5 = self.hess_dual(Hg, self.nu(Df))
        return [a - b + c - d + e for a, b, c, d, e in zip(t1, t2, t3, t4, t5)]

    def bracket_value(self, f, g):
        gf, _ = self.gradient_data(f)
        gg, _ = self.gradient_data(g)
        return self.poisson(self.D(gf), self.D(gg))


def poisson_eval(s, x, a, b):
    return McpPoint(s, x).poisson(a, b)


def adjoint_delta(s, x):
    p = McpPoint(s, x)
    return {j: p.delta_matrix(j) for j in s.algebra.degrees if s.algebra.dim(j - 1)}


def rho_map(s, x):
    return McpPoint(s, x).rho_matrix()


def nu_map(s, x):
    return McpPoint(s, x).nu_matrix()


def o_operator(s, x, beta):
    return McpPoint(s, x).o_matrix(beta)


def jacobiator(s, x, f, g, h):
    """{f,{g,h}} + {g,{h,f}} + {h,{f,g}} at x, inner gradients from the five-term formula.

    x may also be an ``McpPoint``, which keeps its cached maps across calls.
    """
    p = x if isinstance(x, McpPoint) else McpPoint(s, x)
    data = {id(f): p.gradient_data(f), id(g): p.gradient_data(g), id(h): p.gradient_data(h)}
    D = {k: p.D(v[0]) for k, v in data.items()}
    total = ZERO
    for u, v, w in ((f, g, h), (g, h, f), (h, f, g)):
        inner = p.bracket_gradient(v, w, data[id(v)], data[id(w)])
        total += p.poisson(D[id(u)], inner)
    return total


def symbolic_point(s):
    return McpPoint(s, Polynomial.variables(s.m))


def poisson_polynomial(s, f, g):
    """{f, g} = Pi(Df, Dg) as a polynomial on L^1."""
    return symbolic_point(s).bracket_value(f, g)


def five_term_polynomial(s, f, g):
    """The five-term expression for D{f,g} as a B^2-valued polynomial map."""
    return symbolic_point(s).bracket_gradient(f, g)


def gradient_from_polynomial(s, F):
    """D F as a B^2-valued polynomial, via exact differentiation."""
    if not isinstance(F, Polynomial):
        F = Polynomial.constant(s.m, F)
    return _gapply(s.pairing_inverse[1], F.gradient())


# --- verification ---------------------------------------------------------

def bv_at(s, x):
    p = McpPoint(s, x)
    delta = {j: p.delta_matrix(j) for j in s.algebra.degrees if s.algebra.dim(j - 1)}
    return BvAlgebra(s.algebra, delta, name=f"{s.name}@X")


def check_adjointness(s, x):
    """(d_x u, beta) = (u, delta_x beta) on all basis pairs."""
    res = CheckResult("adjointness", True)
    p = McpPoint(s, x)
    g = s.dgla
    for i in g.degrees:
        if not g.dim(i + 1):
            continue
        D = g.twisted_d_matrix(p.x, i)
        dm = p.delta_matrix(i + 2)
        lhs = D.T @ s.pairings[i + 1]
        rhs = s.pairings[i] @ dm
        res.checked += lhs.nrows * lhs.ncols
        if lhs != rhs:
            res.passed = False
            res.witness = i
            break
    return res


def bracket_b1(s, p, a, b):
    """Gerstenhaber bracket of a, b in B^1 for delta_X."""
    bv = BvAlgebra(s.algebra, {j: p.delta_matrix(j) for j in (1, 2) if s.algebra.dim(j - 1)})
    return _to_dense(bv.derived_bracket(1, _to_sparse(a), 1, _to_sparse(b)), s.algebra.dim(1))


def property3_data(s, x):
    """List of (a, b, [rho a, rho b], rho [a, b]_B) over basis pairs of B^1."""
    p = McpPoint(s, x)
    n1 = s.algebra.dim(1)
    rho = p.rho_matrix()
    bv = BvAlgebra(s.algebra, {j: p.delta_matrix(j) for j in (1, 2) if s.algebra.dim(j - 1)})
    out = []
    for a in range(n1):
        for b in range(n1):
            ra, rb = rho.column(a), rho.column(b)
            lhs = s.dgla.bracket(0, ra, 0, rb) if s.dgla.dim(0) else []
            br = _to_dense(bv.derived_bracket(1, {a: ONE}, 1, {b: ONE}), n1)
            rhs = rho.apply(br) if s.dgla.dim(0) else []
            out.append((a, b, lhs, rhs))
    return out


def infer_k(s, x):
    """The constant k with [rho a, rho b] = k rho[a,b]_B, if one exists.

    Returns (consistent, k); k is None when every rho[a,b]_B vanishes.
    """
    data = property3_data(s, x)
    k = None
    for _, _, lhs, rhs in data:
        for l, r in zip(lhs, rhs):
            if r and k is None:
                k = l / r
    if k is None:
        return all(not any(lhs) for _, _, lhs, _ in data), None
    return all(l == k * r for _, _, lhs, rhs in data for l, r in zip(lhs, rhs)), k


def check_property3(s, x, k=None):
    k = s.k_constant if k is None else q(k)
    res = CheckResult("property3", True)
    for a, b, lhs, rhs in property3_data(s, x):
        res.checked += 1
        if any(l != k * r for l, r in zip(lhs, rhs)):
            res.passed = False
            res.witness = (a, b)
            break
    return res


def check_property1(s, x):
    """d_X X = 0."""
    g = s.dgla
    dx = g.d(1, x)
    br = g.bracket(1, x, 1, x)
    ok = all(a + b == 0 for a, b in zip(dx, br))
    return CheckResult("property1", ok, 1, None if ok else "d_X X != 0")


@dataclass
class McpReport:
    name: str
    points: int = 0
    results: list = field(default_factory=list)

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    def as_dict(self):
        return {"name": self.name, "points": self.points, "passed": self.passed,
                "checks": [r.as_dict() for r in self.results]}


def _merge(results, new):
    for r in new:
        old = next((o for o in results if o.name == r.name), None)
        if old is None:
            results.append(CheckResult(r.name, r.passed, r.checked, r.witness))
        else:
            old.checked += r.checked
            if old.passed and not r.passed:
                old.passed = False
                old.witness = r.witness


def verify_mcp(s, points=None, bv_points=2, seed=0, order2_degree=None):
    """Definition checks (1)-(3), adjointness and the anchor identity at MC points."""
    if points is None:
        points = s.sample_mc(4, seed)
    rep = McpReport(s.name, len(points))
    for n, x in enumerate(points):
        if not is_mc(s.dgla, x):
            rep.results.append(CheckResult("sample_is_mc", False, 1, x))
            continue
        checks = [check_property1(s, x), check_adjointness(s, x), check_property3(s, x)]
        bv = bv_at(s, x)
        if n < bv_points:
            checks += check_bv_axioms(bv, max_total_degree=order2_degree, jacobi=False).results
        else:
            from .bv import check_delta_squared
            checks.append(check_delta_squared(bv))
        checks.append(check_anchor(s, x))
        _merge(rep.results, checks)
    return rep


def check_anchor(s, x):
    """Pi antisymmetric, Pi(a,b) = (nu a, b), Pi(z, .) = 0 for z in Z^2."""
    res = CheckResult("anchor", True)
    p = McpPoint(s, x)
    n = s.algebra.dim(2)
    if not n:
        return res
    P = p.poisson_matrix()
    nu = p.nu_matrix()
    for a in range(n):
        for b in range(n):
            res.checked += 1
            eb = [ONE if i == b else ZERO for i in range(n)]
            if P[a, b] != -P[b, a] or P[a, b] != s.pair(1, nu.column(a), eb):
                res.passed = False
                res.witness = (a, b)
                return res
    Z = conormal_space(s, x)
    for z in Z.vectors:
        row = [dot(z, P.column(b)) for b in range(n)]
        if any(row):
            res.passed = False
            res.witness = ("conormal", z)
            return res
    return res


# --- orbit data -------------------------------------------------------

def conormal_space(s, x):
    """Z^2(B_X) = ker delta_X on B^2."""
    p = McpPoint(s, x)
    n = s.algebra.dim(2)
    if not s.algebra.dim(1):
        return Subspace.full(n)
    return rref_decompose(p.delta_matrix(2)).kernel


def cycles(s, p, j):
    n = s.algebra.dim(j)
    if not s.algebra.dim(j - 1):
        return Subspace.full(n)
    return rref_decompose(p.delta_matrix(j)).kernel


def boundaries(s, p, j):
    n = s.algebra.dim(j)
    if not s.algebra.dim(j + 1):
        return Subspace.zero(n)
    return rref_decompose(p.delta_matrix(j + 1)).image


def orbit_tangent(s, x):
    g = s.dgla
    if not g.dim(0):
        return Subspace.zero(g.dim(1))
    return rref_decompose(g.twisted_d_matrix([q(c) for c in x], 0)).image


def flow_velocity(s, x, f):
    """xdot = d_X rho_X delta_X Df(X)."""
    p = McpPoint(s, x)
    grad, _ = p.gradient_data(f)
    return p.nu(p.D(grad))


@dataclass
class FlowStep:
    x: list
    velocity: list
    x_next: list
    conservation: object       # (xdot, Df), must vanish
    residual_linear: list      # linear coefficient in h of the MC residual of x + h xdot
    value_linear: object       # linear coefficient in h of f(x + h xdot)
    in_orbit_tangent: bool


def flow_step(s, x, f, h):
    x = [q(c) for c in x]
    h = q(h)
    p = McpPoint(s, x)
    grad, _ = p.gradient_data(f)
    Df = p.D(grad)
    v = p.nu(Df)
    conservation = s.pair(1, v, Df)
    # exact expansion in a step variable t
    t = Polynomial.variable(1, 0)
    xt = [Polynomial.constant(1, a) + t * b for a, b in zip(x, v)]
    g = s.dgla
    dx = _gapply(g.d_matrix(1), xt) if g.dim(2) else []
    xx = g.bracket(1, xt, 1, xt) if g.dim(2) else []
    res = [a + b * Polynomial.constant(1, Q(1, 2)) for a, b in zip(dx, xx)]
    residual_linear = [r.coefficient((1,)) if isinstance(r, Polynomial) else ZERO for r in res]
    ft = f.evaluate(xt)
    value_linear = ft.coefficient((1,)) if isinstance(ft, Polynomial) else ZERO
    T = orbit_tangent(s, x)
    x_next = [a + h * b for a, b in zip(x, v)]
    return FlowStep(x, v, x_next, conservation, residual_linear, value_linear, T.contains(v))


# --- cotangent and isotropy algebras --------------------------------------

@dataclass
class QuotientLieAlgebra:
    """Structure constants on quotient representatives, keyed by degree pairs."""
    quotients: dict
    table: dict
    shift: int = 0
    notes: dict = field(default_factory=dict)

    def dims(self):
        return {j: Q.dim for j, Q in self.quotients.items() if Q.dim}

    @property
    def total_dim(self):
        return sum(self.dims().values())

    def is_abelian(self):
        return all(not any(v) for v in self.table.values())


def _quotient_bracket_table(s, p, quotients, bracket, degs_out):
    table = {}
    for i, Qi in quotients.items():
        for j, Qj in quotients.items():
            k = degs_out(i, j)
            if k not in quotients:
                continue
            for a, ra in enumerate(Qi.representatives):
                for b, rb in enumerate(Qj.representatives):
                    table[(i, a, j, b)] = quotients[k].project(bracket(i, ra, j, rb))
    return table


def cotangent_algebra(s, x):
    """c_X on B^2/Z^2 and the graded algebra on (B/Z)[-2], with the homology extension."""
    p = McpPoint(s, x)
    A = s.algebra

    def br(i, u, j, v):
        out = p.wedge(i - 1, p.delta(i, u), j - 1, p.delta(j, v))
        return [-c for c in out] if i % 2 else out

    quotients = {}
    full_quot = {}
    homology = {}
    for j in A.degrees:
        Z = cycles(s, p, j)
        Bd = boundaries(s, p, j)
        quotients[j] = QuotientSpace(Subspace.full(A.dim(j)), Z)
        full_quot[j] = QuotientSpace(Subspace.full(A.dim(j)), Bd)
        homology[j] = Z.dim - Bd.dim
    graded = _quotient_bracket_table(s, p, quotients, br, lambda i, j: i + j - 2)
    ext = _quotient_bracket_table(s, p, full_quot, br, lambda i, j: i + j - 2)
    c2 = {k: v for k, v in graded.items() if k[0] == 2 and k[2] == 2}
    cX = QuotientLieAlgebra({2: quotients[2]} if 2 in quotients else {}, c2, 2)
    graded_alg = QuotientLieAlgebra(quotients, graded, 2)
    ext_alg = QuotientLieAlgebra(full_quot, ext, 2, {"homology": homology})
    return {"c": cX, "graded": graded_alg, "extension": ext_alg, "homology": homology, "point": p,
            "bracket": br}


def check_graded_jacobi(alg, bracket):
    """Graded Jacobi of a QuotientLieAlgebra, recomputing nested brackets from lifts."""
    res = CheckResult("graded_jacobi", True)
    Qs = alg.quotients
    degs = sorted(Qs)
    sh = alg.shift
    for i in degs:
        for j in degs:
            for k in degs:
                t = i + j + k - 2 * sh
                if t not in Qs or not Qs[t].dim:
                    continue
                for a, ra in enumerate(Qs[i].representatives):
                    for b, rb in enumerate(Qs[j].representatives):
                        for c, rc in enumerate(Qs[k].representatives):
                            res.checked += 1
                            acc = None
                            for (d1, u), (d2, v), (d3, w) in (((i, ra), (j, rb), (k, rc)),
                                                              ((j, rb), (k, rc), (i, ra)),
                                                              ((k, rc), (i, ra), (j, rb))):
                                inner_deg = d2 + d3 - sh
                                if inner_deg not in Qs:
                                    continue
                                inner = Qs[inner_deg].lift(Qs[inner_deg].project(bracket(d2, v, d3, w)))
                                outer = bracket(d1, u, inner_deg, inner)
                                sg = _sign((d1 - sh) * (d3 - sh))
                                outer = [sg * c_ for c_ in outer]
                                acc = outer if acc is None else [a_ + b_ for a_, b_ in zip(acc, outer)]
                            if acc is not None and not Qs[t].is_zero(acc):
                                res.passed = False
                                res.witness = ((i, a), (j, b), (k, c))
                                return res
    return res


def isotropy_algebra(s, x):
    """h_X and j_X on ker nu_X, modulo Z^2 plus the annihilator of a sub-dgla if present."""
    p = McpPoint(s, x)
    n = s.algebra.dim(2)
    nu = p.nu_matrix()
    ker = rref_decompose(nu).kernel if n else Subspace.zero(0)
    Z = conormal_space(s, x)
    divisor = Z
    if s.sub_dgla is not None and 1 in s.sub_dgla:
        divisor = Z.sum(annihilator(s, 1, s.sub_dgla[1]))
    if not ker.contains_subspace(divisor):
        raise ValueError("divisor is not inside ker nu")
    Qk = QuotientSpace(ker, divisor)

    def plain(u, v):
        return p.wedge(1, p.delta(2, u), 1, p.delta(2, v))

    def jbr(u, v):
        base = plain(u, v)
        return [a + b - c for a, b, c in zip(base, p.o_apply(u, v), p.o_apply(v, u))]

    reps = Qk.representatives
    closure_h = all(not any(nu.apply(plain(u, v))) for u in reps for v in reps)
    closure_j = all(ker.contains(jbr(u, v)) for u in reps for v in reps)
    h_table = {(a, b): Qk.project(plain(u, v)) if closure_h else None
               for a, u in enumerate(reps) for b, v in enumerate(reps)}
    j_table = {(a, b): Qk.project(jbr(u, v)) if closure_j else None
               for a, u in enumerate(reps) for b, v in enumerate(reps)}
    return {"quotient": Qk, "h": h_table, "j": j_table, "closure_h": closure_h, "closure_j": closure_j,
            "plain": plain, "j_bracket": jbr, "point": p}


def check_lie_table(Qk, bracket):
    """Antisymmetry and Jacobi on quotient representatives for a degree-0 bracket."""
    res = CheckResult("lie", True)
    reps = Qk.representatives
    for u in reps:
        for v in reps:
            res.checked += 1
            if not Qk.is_zero([a + b for a, b in zip(bracket(u, v), bracket(v, u))]):
                res.passed = False
                res.witness = "antisymmetry"
                return res
    for u in reps:
        for v in reps:
            for w in reps:
                res.checked += 1
                acc = None
                for a, b, c in ((u, v, w), (v, w, u), (w, u, v)):
                    inner = Qk.lift(Qk.project(bracket(b, c)))
                    out = bracket(a, inner)
                    acc = out if acc is None else [x + y for x, y in zip(acc, out)]
                if not Qk.is_zero(acc):
                    res.passed = False
                    res.witness = "jacobi"
                    return res
    return res


def annihilator(s, i, sub):
    """{beta in B^{i+1} : (u, beta) = 0 for all u in sub}."""
    n = s.algebra.dim(i + 1)
    if not sub.vectors:
        return Subspace.full(n)
    rows = [s.pairings[i].T.apply(u) for u in sub.vectors]
    return rref_decompose(RationalMatrix(rows, n)).kernel


# --- samplers -------------------------------------------------------------

def random_rational(rng, num=5, den=3):
    return q(rng.randint(-num, num)) / rng.randint(1, den)


def linear_space_sampler(basis):
    """Sampler over a linear space given by basis vectors."""
    def sample(rng, count):
        out = []
        for _ in range(count):
            v = [ZERO] * len(basis[0]) if basis else []
            for b in basis:
                c = random_rational(rng)
                v = [x + c * y for x, y in zip(v, b)]
            out.append(v)
        return out
    return sample

