"""Polynomials with rational coefficients in a fixed number of variables.

Used for functions on L^1 (hamiltonians, Poisson brackets as polynomials)
and for exact expansions in a step size h.
"""

from itertools import combinations_with_replacement

from .ratlin import ZERO, q


def _exp_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


class Polynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {}
        for e, c in (terms or {}).items():
            if len(e) != nvars:
                raise ValueError("exponent length differs from number of variables")
            c = q(c)
            if c:
                self.terms[tuple(e)] = self.terms.get(tuple(e), ZERO) + c
        self.terms = {e: c for e, c in self.terms.items() if c}

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def variables(cls, nvars):
        return [cls.variable(nvars, i) for i in range(nvars)]

    @classmethod
    def random(cls, nvars, degree, rng, nterms=None, coeff_range=3):
        """Random polynomial of exact total degree ``degree`` (integer coefficients)."""
        monos = []
        for d in range(degree + 1):
            for combo in combinations_with_replacement(range(nvars), d):
                e = [0] * nvars
                for i in combo:
                    e[i] += 1
                monos.append(tuple(e))
        top = [m for m in monos if sum(m) == degree]
        if nterms is None or nterms >= len(monos):
            chosen = monos
        else:
            chosen = rng.sample(monos, nterms)
        terms = {}
        for m in chosen:
            c = rng.randint(-coeff_range, coeff_range)
            if c:
                terms[m] = c
        if degree > 0 and not any(sum(m) == degree for m in terms):
            terms[rng.choice(top)] = rng.choice([-2, -1, 1, 2])
        return cls(nvars, terms)

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("polynomials in different numbers of variables")
            return other
        return Polynomial.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, ZERO) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        p = Polynomial(self.nvars)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = Polynomial(self.nvars)
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = q(other)
            p = Polynomial(self.nvars)
            p.terms = {e: c * v for e, v in self.terms.items()} if c else {}
            return p
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _exp_add(e1, e2)
                v = out.get(e, ZERO) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        p = Polynomial(self.nvars)
        p.terms = out
        return p

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (1 / q(other))

    def __pow__(self, k):
        out = Polynomial.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        return self.terms == Polynomial.constant(self.nvars, other).terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    @property
    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, d):
        return all(sum(e) == d for e in self.terms)

    def diff(self, i):
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Polynomial(self.nvars, out)

    def gradient(self):
        return [self.diff(i) for i in range(self.nvars)]

    def hessian(self):
        g = self.gradient()
        return [[gi.diff(j) for j in range(self.nvars)] for gi in g]

    def __call__(self, point):
        return self.evaluate(point)

    def evaluate(self, point):
        """Value at a point whose entries may be rationals or polynomials."""
        if len(point) != self.nvars:
            raise ValueError("point has the wrong number of coordinates")
        total = ZERO
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x ** k if not isinstance(x, Polynomial) else t * (x ** k)
            total = total + t
        return total

    def coefficient(self, e):
        return self.terms.get(tuple(e), ZERO)

    def coefficients_in(self, i):
        """Coefficients as a polynomial in variable i: {power: Polynomial}."""
        out = {}
        for e, c in self.terms.items():
            f = list(e)
            k = f[i]
            f[i] = 0
            out.setdefault(k, {})[tuple(f)] = c
        return {k: Polynomial(self.nvars, t) for k, t in out.items()}

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def univariate_coefficients(p):
    """For a one-variable polynomial, the list of coefficients by power."""
    if p.nvars != 1:
        raise ValueError("expected a polynomial in one variable")
    d = max(p.degree, 0)
    return [p.coefficient((k,)) for k in range(d + 1)]


def parse_polynomial(text, nvars):
    """Parse an expression in x1..xn with exact rational coefficients."""
    import sympy

    syms = sympy.symbols(" ".join(f"x{i + 1}" for i in range(nvars)), seq=True)
    try:
        expr = sympy.sympify(text, locals={str(s): s for s in syms}, rational=True)
    except (sympy.SympifyError, SyntaxError, TypeError) as exc:
        raise ValueError(f"cannot parse polynomial {text!r}: {exc}") from None
    extra = expr.free_symbols - set(syms)
    if extra:
        raise ValueError(f"unknown symbols in polynomial: {sorted(map(str, extra))}")
    poly = sympy.Poly(expr, *syms, domain="QQ")
    terms = {}
    for monom, coeff in poly.terms():
        terms[tuple(monom)] = q(f"{coeff.numerator}/{coeff.denominator}")
    return Polynomial(nvars, terms)
