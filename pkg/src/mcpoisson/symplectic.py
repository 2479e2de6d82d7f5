"""Symplectic Lie algebras as invariant-form models.

A symplectic model is a unimodular Lie algebra g of dimension 2n with a
closed nondegenerate omega in wedge^2 g^v.  Everything acts on invariant
forms (values on sorted words, as in ``ce``) and invariant multivectors:

* pi is the bivector with pi^# o omega^# = id, i.e. pi_ij = (W^{-1})_ij for
  W_ij = omega(e_i, e_j); with this convention iota_pi omega = -n;
* d^L = [iota_pi, d] = iota_pi d - d iota_pi lowers degree by one;
* mu = omega^n / n!, *Y = iota_Y mu and delta = -*^{-1} d *;
* integrals are top coefficients: int f mu = f mu_top.

Integration by parts needs d = 0 into the top degree, which is why g
must be unimodular.  The Betti numbers are those of the invariant
complex; identifying them with those of a nilmanifold is a modelling
assumption, not something the code relies on.
"""

from dataclasses import dataclass, field
from math import factorial

from .ce import CEComplex, build_ce_mcp
from .dgla import CheckResult, Dgla
from .bv import ExteriorProductAlgebra
from .graded import ExteriorAlgebra, merge_words
from .mcp import (McpPoint, McpStructure, TRIVIAL_DIFFERENTIAL, annihilator, conormal_space,
                  isotropy_algebra, random_rational)
from .poly import Polynomial
from .ratlin import (ZERO, ONE, NoSolution, QuotientSpace, RationalMatrix, Subspace, inverse, q, rank,
                     rref_decompose, solve_linear)


class SymplecticError(ValueError):
    pass


def _zeros(r, c):
    return RationalMatrix.zeros(r, c)


def _kernel(m):
    if not m.ncols:
        return Subspace.zero(0)
    if not m.nrows:
        return Subspace.full(m.ncols)
    return rref_decompose(m).kernel


def _image(m):
    if not m.ncols or not m.nrows:
        return Subspace.zero(m.nrows)
    return rref_decompose(m).image


class SymplecticLieModel:
    def __init__(self, lie, omega, name=""):
        self.lie = lie
        self.name = name or lie.name
        N = lie.dim
        if N % 2:
            raise SymplecticError("a symplectic Lie algebra has even dimension")
        self.n = N // 2
        if not lie.is_unimodular():
            raise SymplecticError("the invariant model needs a unimodular Lie algebra")
        self.cx = cx = CEComplex(lie)
        self.ext = ext = cx.ext
        if isinstance(omega, dict):
            omega_dict = {tuple(sorted(k)): q(v) for k, v in omega.items() if q(v)}
            for k in list(omega_dict):
                if len(k) != 2:
                    raise SymplecticError(f"omega entry {k} is not a pair")
            self.omega = ext.to_dense(2, omega_dict)
        else:
            self.omega = [q(c) for c in omega]
        if len(self.omega) != ext.dim(2):
            raise SymplecticError("omega has the wrong number of coefficients")
        if any(cx.d[2].apply(self.omega)) if N > 2 else False:
            raise SymplecticError("omega is not closed")
        W = [[ZERO] * N for _ in range(N)]
        for (i, j), c in zip(ext.basis(2), self.omega):
            W[i][j] = c
            W[j][i] = -c
        self.W = RationalMatrix(W, N)
        if rank(self.W) != N:
            raise SymplecticError("omega is degenerate")
        self.P = inverse(self.W)
        self.pi = [self.P[i, j] for (i, j) in ext.basis(2)]
        od = ext.from_dense(2, self.omega)
        power = {(): ONE}
        for _ in range(self.n):
            power = ext.wedge(power, od)
        self.mu = ext.to_dense(N, {k: v / factorial(self.n) for k, v in power.items()})
        self.mu_top = self.mu[0]
        self._build_operators()

    # --- operators ---------------------------------------------------------
    def dim(self, p):
        return self.ext.dim(p)

    def d(self, p):
        """d : forms of degree p -> p + 1."""
        if 0 <= p < self.lie.dim:
            return self.cx.d[p]
        return _zeros(self.dim(p + 1), self.dim(p))

    def _build_operators(self):
        ext, N = self.ext, self.lie.dim
        pid = ext.from_dense(2, self.pi)
        self.iota_pi = {}
        for p in range(N + 1):
            cols = [ext.to_dense(p - 2, ext.interior_multivector(pid, {I: ONE})) if p >= 2 else []
                    for I in ext.basis(p)]
            self.iota_pi[p] = RationalMatrix.from_columns(cols, self.dim(p - 2)) if cols else _zeros(
                self.dim(p - 2), 0)
        self.dlam = {}
        for p in range(N + 1):
            m = _zeros(self.dim(p - 1), self.dim(p))
            if p + 1 <= N:
                m = m + self.iota_pi[p + 1] @ self.d(p)
            if p >= 2:
                m = m - self.d(p - 2) @ self.iota_pi[p]
            self.dlam[p] = m
        mud = ext.from_dense(N, self.mu)
        self.star = {}
        for p in range(N + 1):
            cols = [ext.to_dense(N - p, ext.interior_multivector({J: ONE}, mud)) for J in ext.basis(p)]
            self.star[p] = RationalMatrix.from_columns(cols, self.dim(N - p))
        self.delta_star = {}
        self.delta = {}
        for p in range(1, N + 1):
            self.delta_star[p] = -(inverse(self.star[p - 1]) @ self.d(N - p) @ self.star[p])
            # exact adjoint of d under the signed pairing; the star formula
            # agrees with it up to (-1)^p on p-vectors
            self.delta[p] = -self.d(p - 1).T

    def ddlam(self, p):
        """d d^L on degree p (maps p -> p)."""
        if p == 0:
            return _zeros(1, 1)
        return self.d(p - 1) @ self.dlam[p]

    def apply_dlam(self, p, v):
        return self.dlam[p].apply(v)

    def pairing(self, p):
        """(alpha, V) = (-1)^p iota_V alpha mu_top for alpha a p-form, V a p-vector."""
        return RationalMatrix.identity(self.dim(p)).scale((-1) ** p * self.mu_top)

    def wedge(self, p, u, r, v):
        ext = self.ext
        return ext.to_dense(p + r, ext.wedge(ext.from_dense(p, u), ext.from_dense(r, v)))

    def omega_flat(self, v):
        """omega^#(v) = iota_v omega."""
        return self.ext.to_dense(1, self.ext.interior_vector(v, self.ext.from_dense(2, self.omega)))

    def pi_sharp(self, a):
        """pi^#(a) = iota_a pi for a 1-form a."""
        return self.ext.to_dense(1, self.ext.interior_vector(a, self.ext.from_dense(2, self.pi)))

    def lower(self, p, V):
        """The p-form obtained from a p-vector by omega^# in every slot."""
        ext = self.ext
        out = {}
        flats = [self.omega_flat([ONE if k == i else ZERO for k in range(self.lie.dim)])
                 for i in range(self.lie.dim)]
        for J, c in ext.from_dense(p, V).items():
            term = {(): c}
            for j in J:
                term = ext.wedge(term, ext.from_dense(1, flats[j]))
            for k, v in term.items():
                out[k] = out.get(k, ZERO) + v
        return ext.to_dense(p, out)

    def volume_preserving(self, p):
        """Multivectors Y of degree p with d iota_Y mu = 0."""
        return _kernel(self.d(self.lie.dim - p) @ self.star[p])

    # --- identities --------------------------------------------------------
    def check_identities(self):
        res = []
        N = self.lie.dim
        ok = (self.W @ self.P) == RationalMatrix.identity(N)
        units = [list(e) for e in RationalMatrix.identity(N).rows()]
        sharp = all(self.pi_sharp(self.omega_flat(e)) == e for e in units)
        res.append(CheckResult("pi_inverts_omega", ok and sharp, N))
        r = CheckResult("dlam_squared", True)
        for p in range(2, N + 1):
            r.checked += 1
            if not (self.dlam[p - 1] @ self.dlam[p]).is_zero():
                r.passed, r.witness = False, p
                break
        res.append(r)
        r = CheckResult("d_dlam_anticommute", True)
        for p in range(1, N + 1):
            r.checked += 1
            lhs = self.d(p - 1) @ self.dlam[p]
            if p + 1 <= N:
                lhs = lhs + self.dlam[p + 1] @ self.d(p)
            if not lhs.is_zero():
                r.passed, r.witness = False, p
                break
        res.append(r)
        r = CheckResult("delta_adjoint_to_d", True)
        for p in range(1, N + 1):
            lhs = self.d(p - 1).T @ self.pairing(p)       # (d alpha, V)
            rhs = self.pairing(p - 1) @ self.delta[p]      # (alpha, delta V)
            r.checked += lhs.nrows * lhs.ncols
            if lhs != rhs:
                r.passed, r.witness = False, p
                break
        res.append(r)
        r = CheckResult("delta_star_formula_up_to_sign", True)
        for p in range(1, N + 1):
            r.checked += 1
            if self.delta[p] != self.delta_star[p].scale((-1) ** p):
                r.passed, r.witness = False, p
                break
        res.append(r)
        top = self.d(N - 2) @ self.star[2]
        r = CheckResult("pi_volume_preserving", not any(top.apply(self.pi)), 1)
        res.append(r)
        return res


def build_symplectic_model(lie, omega, name=""):
    return SymplecticLieModel(lie, omega, name)


# --- cohomology ------------------------------------------------------------

@dataclass
class CohomologyReport:
    betti: list
    h_dlam: list
    h_ddlam: list
    k_dims: dict             # shifted degree i -> dim k^i (forms of degree i + 2)
    injective: list          # H_{d^L} -> H_{dd^L} injective per form degree
    hard_lefschetz: bool
    lefschetz_table: list
    nondegenerate: object = None
    notes: dict = field(default_factory=dict)

    @property
    def inequality_holds(self):
        return all(h >= b for h, b in zip(self.h_ddlam, self.betti))

    @property
    def equality(self):
        return self.h_ddlam == self.betti

    @property
    def k_dim(self):
        return sum(self.k_dims.values())

    def as_dict(self):
        return {"betti": [int(x) for x in self.betti], "h_dlam": self.h_dlam, "h_ddlam": self.h_ddlam,
                "k": {str(i): d for i, d in sorted(self.k_dims.items())}, "hard_lefschetz": self.hard_lefschetz,
                "lefschetz": self.lefschetz_table, "injective": self.injective,
                "orbit_poisson_nondegenerate": self.nondegenerate}


def _spaces(m, p):
    """ker dd^L, im d + im d^L, ker d^L + im d on forms of degree p."""
    n = m.dim(p)
    ker_dd = _kernel(m.ddlam(p)) if p else Subspace.full(n)
    im_d = _image(m.d(p - 1)) if p else Subspace.zero(n)
    im_l = _image(m.dlam[p + 1]) if p + 1 <= m.lie.dim else Subspace.zero(n)
    ker_l = _kernel(m.dlam[p]) if p else Subspace.full(n)
    return ker_dd, im_d.sum(im_l), ker_l.sum(im_d), ker_l, im_l


def betti_numbers(m):
    return m.cx.betti()


def dd_lambda_cohomology(m, with_orbit=True):
    N = m.lie.dim
    betti = betti_numbers(m)
    h_l, h_dd, inj, kd = [], [], [], {}
    for p in range(N + 1):
        ker_dd, S, T, ker_l, im_l = _spaces(m, p)
        h_l.append(ker_l.dim - im_l.dim)
        h_dd.append(ker_dd.dim - S.dim)
        # H_{d^L} -> H_{dd^L} is injective iff ker d^L meets im d + im d^L only in im d^L
        meet = ker_l.dim + S.dim - ker_l.sum(S).dim
        inj.append(meet == im_l.dim)
        k = ker_dd.dim - T.dim
        if k:
            kd[p - 2] = k
    hl, table = hard_lefschetz(m)
    rep = CohomologyReport(betti, h_l, h_dd, kd, inj, hl, table)
    if with_orbit:
        rep.nondegenerate = orbit_poisson_nondegenerate(m)
    return rep


def hard_lefschetz(m):
    """[omega^k] ^ : H^{n-k} -> H^{n+k} for k = 0..n; returns (all iso, table)."""
    n = m.n
    table = []
    ok = True
    power = [ONE]
    powers = {0: power}
    for k in range(1, n + 1):
        power = m.wedge(2 * (k - 1), power, 2, m.omega)
        powers[k] = power
    betti = betti_numbers(m)
    for k in range(n + 1):
        lo, hi = n - k, n + k
        Z = _kernel(m.d(lo)) if lo < m.lie.dim else Subspace.full(m.dim(lo))
        B = _image(m.d(hi - 1)) if hi else Subspace.zero(m.dim(hi))
        images = [m.wedge(2 * k, powers[k], lo, z) for z in Z.vectors]
        r = Subspace(m.dim(hi), images + B.vectors).dim - B.dim
        iso = r == betti[lo] == betti[hi]
        ok = ok and iso
        table.append({"k": k, "source": lo, "target": hi, "rank": r, "b_source": betti[lo],
                      "b_target": betti[hi], "iso": iso})
    return ok, table


# --- the graded Lie algebras on H_{dd^L} and k ------------------------------

class KAlgebra:
    """[[a, b]] = (-1)^|a| d^L a ^ d^L b on H_{dd^L}[-2] and its quotient k.

    Degrees are form degrees internally; the shifted degree of a p-form is
    p - 2.
    """

    def __init__(self, m):
        self.m = m
        N = m.lie.dim
        self.hdd = {}
        self.k = {}
        self.divisor = {}
        self.ker_dd = {}
        self.ker_l = {}
        for p in range(N + 1):
            ker_dd, S, T, ker_l, _ = _spaces(m, p)
            self.ker_dd[p] = ker_dd
            self.divisor[p] = S
            self.ker_l[p] = ker_l
            self.hdd[p] = QuotientSpace(ker_dd, S)
            self.k[p] = QuotientSpace(ker_dd, T)

    def bracket(self, p, u, r, v):
        m = self.m
        N = m.lie.dim
        if not (1 <= p <= N and 1 <= r <= N) or p + r - 2 > N:
            return [ZERO] * m.dim(p + r - 2)
        a = m.dlam[p].apply(u)
        b = m.dlam[r].apply(v)
        out = m.wedge(p - 1, a, r - 1, b)
        return [-c for c in out] if p % 2 else out

    def dims(self):
        return {p - 2: Qp.dim for p, Qp in self.k.items() if Qp.dim}

    def support(self):
        return sorted(self.dims())

    def table(self, which="k"):
        """Nonzero structure constants on representatives of k (or of H_{dd^L} with
        ``which="hdd"``): (shifted p, a, shifted r, b) -> coordinates."""
        quot = self.k if which == "k" else self.hdd
        out = {}
        for p, Qp in quot.items():
            for r, Qr in quot.items():
                t = p + r - 2
                if not Qp.dim or not Qr.dim or t not in quot:
                    continue
                for a, u in enumerate(Qp.representatives):
                    for b, v in enumerate(Qr.representatives):
                        c = quot[t].project(self.bracket(p, u, r, v))
                        if any(c):
                            out[(p - 2, a, r - 2, b)] = c
        return out

    def _reps(self, quot):
        return [(p, v) for p, Qp in quot.items() for v in Qp.representatives]

    def check_well_defined(self):
        """Brackets of ker dd^L land in ker dd^L; divisor brackets land in the divisor."""
        res = CheckResult("hdd_bracket_well_defined", True)
        reps = [(p, v) for p, K in self.ker_dd.items() for v in K.vectors]
        divs = [(p, v) for p, S in self.divisor.items() for v in S.vectors]
        for p, u in reps:
            for r, v in reps:
                t = p + r - 2
                if t not in self.ker_dd:
                    continue
                res.checked += 1
                if not self.ker_dd[t].contains(self.bracket(p, u, r, v)):
                    res.passed, res.witness = False, ("closure", p, r)
                    return res
        for p, u in divs:
            for r, v in reps:
                t = p + r - 2
                if t not in self.ker_dd:
                    continue
                res.checked += 1
                if not self.divisor[t].contains(self.bracket(p, u, r, v)):
                    res.passed, res.witness = False, ("divisor", p, r)
                    return res
        return res

    def check_two_step(self):
        """[[a, [[b, c]]]] in im d + im d^L for all representatives of H_{dd^L}.

        Only d^L of the inner bracket enters the outer one, so inner
        brackets with d^L-closed values are skipped after counting.
        """
        res = CheckResult("two_step_nilpotent", True)
        m = self.m
        N = m.lie.dim
        reps = self._reps(self.hdd)
        outer = [(p, m.dlam[p].apply(a)) for p, a in reps if p >= 1]
        outer = [(p, x) for p, x in outer if any(x)]
        for r, b in reps:
            for s, c in reps:
                t_in = r + s - 2
                res.checked += len(reps)
                if not 1 <= t_in <= N:
                    continue
                y = m.dlam[t_in].apply(self.bracket(r, b, s, c))
                if not any(y):
                    continue
                for p, x in outer:
                    t = p + t_in - 2
                    if t > N:
                        continue
                    out = m.wedge(p - 1, x, t_in - 1, y)
                    if p % 2:
                        out = [-v for v in out]
                    if any(out) and not self.divisor[t].contains(out):
                        res.passed, res.witness = False, (p, r, s)
                        return res
        return res

    def check_center(self):
        """Classes from ker d^L bracket to zero with everything."""
        res = CheckResult("dlam_classes_central", True)
        reps = [(p, v) for p, K in self.ker_dd.items() for v in K.vectors]
        for p, K in self.ker_l.items():
            for z in K.vectors:
                for r, v in reps:
                    if p + r - 2 > self.m.lie.dim or p + r - 2 < 0:
                        continue
                    res.checked += 1
                    if any(self.bracket(p, z, r, v)):
                        res.passed, res.witness = False, (p, r)
                        return res
        return res

    def check_antisymmetry(self):
        res = CheckResult("graded_antisymmetry", True)
        reps = self._reps(self.hdd)
        for p, a in reps:
            for r, b in reps:
                if p + r - 2 < 0:
                    continue
                res.checked += 1
                lhs = self.bracket(p, a, r, b)
                rhs = self.bracket(r, b, p, a)
                s = -1 if ((p - 2) * (r - 2)) % 2 == 0 else 1
                if lhs != [s * x for x in rhs]:
                    res.passed, res.witness = False, (p, r)
                    return res
        return res

    def checks(self):
        return [self.check_well_defined(), self.check_antisymmetry(), self.check_two_step(), self.check_center()]


def k_algebra(m):
    return KAlgebra(m)


# --- MCP structures ---------------------------------------------------------

def build_forms_mcp(m):
    """Closed 2-forms: L = invariant forms [-1] with d, B = multivectors."""
    s = build_ce_mcp(m.lie, signed=True, name=f"forms:{m.name}", scale=m.mu_top)
    s.model = m
    return s


def schouten_dgla(lie, name=None):
    """Invariant multivectors wedge^{i+1} g in degree i with the Schouten bracket.

    [X_1..X_p, Y_1..Y_q] = sum (-1)^{a+b} [X_a, Y_b] ^ X_1..^a..X_p ^ Y_1..^b..Y_q.
    """
    N = lie.dim
    ext = ExteriorAlgebra(N)
    dims = {i: ext.dim(i + 1) for i in range(-1, N)}
    brackets = {}
    for p in range(1, N + 1):
        for r in range(p, N + 1):
            t = p + r - 1
            if t > N:
                continue
            table = {}
            for a, I in enumerate(ext.basis(p)):
                for b, J in enumerate(ext.basis(r)):
                    out = {}
                    for x in range(p):
                        for y in range(r):
                            br = lie.table[I[x]][J[y]]
                            if not br:
                                continue
                            rest = I[:x] + I[x + 1:]
                            s1, K = merge_words(rest, J[:y] + J[y + 1:])
                            if not s1:
                                continue
                            sg = -1 if (x + y) % 2 else 1
                            for k, c in br.items():
                                s2, L = merge_words((k,), K)
                                if s2:
                                    idx = ext.index(L)
                                    out[idx] = out.get(idx, ZERO) + sg * s1 * s2 * c
                    out = {c: v for c, v in out.items() if v}
                    if out:
                        table[(a, b)] = out
            brackets[(p - 1, r - 1)] = table
    return Dgla(dims, brackets, {}, name=name or f"Schouten({lie.name})")


def build_poisson_mcp(m):
    """Poisson bivectors: L = multivectors [-1] with Schouten, B = forms, k = 1."""
    N = m.lie.dim
    L = schouten_dgla(m.lie)
    B = ExteriorProductAlgebra(N)
    pairings = {i: m.pairing(i + 1) for i in L.degrees}
    sub = {i: m.volume_preserving(i + 1) for i in L.degrees}
    Z2 = _kernel(m.d(2))

    def mc(rng, count):
        pts = []
        tries = 0
        while len(pts) < count and tries < 50 * count:
            tries += 1
            w = [ZERO] * m.dim(2)
            for z in Z2.vectors:
                c = random_rational(rng)
                w = [a + c * b for a, b in zip(w, z)]
            P = _inverse_bivector(m, w)
            if P is None:
                continue
            c = random_rational(rng) or ONE
            pts.append([c * x for x in P])
        return pts

    def non_mc(rng, count):
        pts = []
        tries = 0
        while len(pts) < count and tries < 50 * count:
            tries += 1
            x = [random_rational(rng) for _ in range(L.dim(1))]
            if any(L.bracket(1, x, 1, x)):
                pts.append(x)
        return pts

    s = McpStructure(L, B, pairings, TRIVIAL_DIFFERENTIAL, k_constant=1, name=f"poisson:{m.name}",
                     mc_sampler=mc, non_mc_sampler=non_mc, sub_dgla=sub)
    s.model = m
    return s


def _inverse_bivector(m, w):
    N = m.lie.dim
    W = [[ZERO] * N for _ in range(N)]
    for (i, j), c in zip(m.ext.basis(2), w):
        W[i][j] = c
        W[j][i] = -c
    W = RationalMatrix(W, N)
    if rank(W) != N:
        return None
    P = inverse(W)
    return [P[i, j] for (i, j) in m.ext.basis(2)]


def check_sub_dgla(s):
    """The volume-preserving multivectors are closed under the bracket."""
    res = CheckResult("sub_dgla_closed", True)
    L, sub = s.dgla, s.sub_dgla
    for i, Si in sub.items():
        for j, Sj in sub.items():
            if i + j not in sub:
                continue
            for u in Si.vectors:
                for v in Sj.vectors:
                    res.checked += 1
                    if not sub[i + j].contains(L.bracket(i, u, j, v)):
                        res.passed, res.witness = False, (i, j)
                        return res
    return res


def check_nu_compatible(s, x):
    """nu_X(B^2) lies in the sub-dgla."""
    res = CheckResult("nu_in_sub_dgla", True)
    nu = McpPoint(s, x).nu_matrix()
    for c in range(nu.ncols):
        res.checked += 1
        if not s.sub_dgla[1].contains(nu.column(c)):
            res.passed, res.witness = False, c
            break
    return res


def modular_vector(m, X):
    """phi with iota_phi mu = d iota_X mu for a bivector X."""
    N = m.lie.dim
    rhs = (m.d(N - 2) @ m.star[2]).apply(X)
    return inverse(m.star[1]).apply(rhs)


def poisson_delta_formula(m, X, p):
    """[iota_X, d] - iota_phi on p-forms, the closed form of the adjoint of [X, .]."""
    ext = m.ext
    N = m.lie.dim
    Xd = ext.from_dense(2, X)
    phi = modular_vector(m, X)

    def iota_X(r):
        cols = [ext.to_dense(r - 2, ext.interior_multivector(Xd, {I: ONE})) for I in ext.basis(r)]
        return RationalMatrix.from_columns(cols, m.dim(r - 2)) if r >= 2 else _zeros(m.dim(r - 2), m.dim(r))
    out = _zeros(m.dim(p - 1), m.dim(p))
    if p + 1 <= N:
        out = out + iota_X(p + 1) @ m.d(p)
    if p >= 2:
        out = out - m.d(p - 2) @ iota_X(p)
    cols = [ext.to_dense(p - 1, ext.interior_vector(phi, {I: ONE})) for I in ext.basis(p)]
    if cols and p >= 1:
        out = out - RationalMatrix.from_columns(cols, m.dim(p - 1))
    return out


def orbit_poisson_nondegenerate(m):
    """Whether the Poisson tensor at pi is nondegenerate on B^2 / (Z^2 + annihilator)."""
    s = build_poisson_mcp(m)
    x = m.pi
    P = McpPoint(s, x).poisson_matrix()
    div = conormal_space(s, x).sum(annihilator(s, 1, s.sub_dgla[1]))
    return rank(P) == m.dim(2) - div.dim


def isotropy_comparison(m):
    """Compare j at pi (sub-dgla isotropy algebra) with k^0 and its bracket -[[ , ]]."""
    s = build_poisson_mcp(m)
    iso = isotropy_algebra(s, m.pi)
    Kq = iso["quotient"]
    K = KAlgebra(m)
    k0 = K.k[2]
    same_space = (Kq.ambient.contains_subspace(k0.ambient) and k0.ambient.contains_subspace(Kq.ambient)
                  and Kq.divisor.contains_subspace(k0.divisor) and k0.divisor.contains_subspace(Kq.divisor))
    res = CheckResult("j_equals_minus_k0", same_space, 0, None if same_space else "spaces differ")
    if same_space:
        jbr = iso["j_bracket"]
        for u in Kq.representatives:
            for v in Kq.representatives:
                res.checked += 1
                diff = [a + b for a, b in zip(jbr(u, v), K.bracket(2, u, 2, v))]
                if not Kq.is_zero(diff):
                    res.passed, res.witness = False, "bracket"
                    return res
    ann = annihilator(s, 1, s.sub_dgla[1])
    exact = _image(m.d(1))
    res_ann = CheckResult("annihilator_is_exact", ann.contains_subspace(exact) and exact.contains_subspace(ann), 1)
    return [res, res_ann], iso


# --- the flow --------------------------------------------------------------

@dataclass
class SymplecticFlowStep:
    omega: list
    increment: list        # dd^L beta
    omega_next: list
    closed: bool
    primitive: list        # gamma with d gamma = dd^L beta
    same_class: bool
    determinant: object    # det of omega + t dd^L beta as a polynomial in t
    nondegenerate: bool


def _det_poly(M):
    n = len(M)
    if n == 0:
        return Polynomial.constant(1, 1)
    if n == 1:
        return M[0][0]
    total = Polynomial(1)
    for j in range(n):
        if not M[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det_poly(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def symplectic_flow_step(m, beta, h):
    """omega' = omega + h d d^L beta, with closedness, class and nondegeneracy checks."""
    h = q(h)
    beta = [q(c) for c in beta]
    inc = m.ddlam(2).apply(beta)
    new = [a + h * b for a, b in zip(m.omega, inc)]
    closed = not any(m.d(2).apply(new)) if m.lie.dim > 2 else True
    try:
        gamma = solve_linear(m.d(1), inc)
        same = True
    except NoSolution:
        gamma, same = None, False
    N = m.lie.dim
    t = Polynomial.variable(1, 0)
    M = [[Polynomial(1) for _ in range(N)] for _ in range(N)]
    for (i, j), a, b in zip(m.ext.basis(2), m.omega, inc):
        e = Polynomial.constant(1, a) + t * b
        M[i][j] = e
        M[j][i] = -e
    det = _det_poly(M)
    nondeg = det.evaluate([h]) != 0
    return SymplecticFlowStep(list(m.omega), inc, new, closed, gamma, same, det, nondeg)


def forms_flow_velocity(m, W):
    """nu_omega(W) for the forms MCP at omega, W a bivector in B^2."""
    s = build_forms_mcp(m)
    return McpPoint(s, m.omega).nu(W)
