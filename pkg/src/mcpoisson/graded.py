"""Graded vector spaces and exterior algebras.

Basis words of an exterior power are strictly increasing index tuples.
Elements of an exterior algebra are dicts ``word -> coefficient``.
Sign rules:

* ``e_I ^ e_J`` is the parity of sorting the concatenation ``I J`` (zero if
  the words overlap);
* ``iota_{e_i}`` removes ``i`` with sign ``(-1)**position``;
* ``iota_{y1 ^ ... ^ yp} = iota_{yp} o ... o iota_{y1}``;
* ``<e_I^v, e_J> = delta_{IJ}``.
"""

from itertools import combinations
from math import comb

from .ratlin import ZERO, ONE, q


class GradedVectorSpace:
    """Finite-dimensional graded space: degree -> basis labels."""

    def __init__(self, degrees):
        self.degrees = {int(d): list(labels) for d, labels in degrees.items()}

    def dim(self, degree):
        return len(self.degrees.get(degree, ()))

    @property
    def total_dim(self):
        return sum(len(v) for v in self.degrees.values())

    def shift(self, s):
        """V[s] with V[s]^i = V^{i+s}: degree i of V is relabelled i - s."""
        return GradedVectorSpace({d - s: labels for d, labels in self.degrees.items()})

    def support(self):
        return sorted(d for d, v in self.degrees.items() if v)

    def __repr__(self):
        return "GradedVectorSpace(" + ", ".join(f"{d}:{len(v)}" for d, v in sorted(self.degrees.items())) + ")"


class GradedElement:
    """Finitely supported map (degree, label) -> rational."""

    def __init__(self, coefficients=None):
        self.coefficients = {}
        for key, c in (coefficients or {}).items():
            c = q(c)
            if c:
                self.coefficients[key] = c

    @property
    def degrees(self):
        return sorted({d for d, _ in self.coefficients})

    @property
    def degree(self):
        ds = self.degrees
        if len(ds) > 1:
            raise ValueError("element is not homogeneous")
        return ds[0] if ds else None

    def __add__(self, other):
        out = dict(self.coefficients)
        for k, v in other.coefficients.items():
            out[k] = out.get(k, ZERO) + v
        return GradedElement(out)

    def __eq__(self, other):
        return isinstance(other, GradedElement) and self.coefficients == other.coefficients

    def __repr__(self):
        return f"GradedElement({self.coefficients})"


def sort_sign(seq):
    """(sign, sorted tuple) for a sequence of distinct indices; sign 0 on repeats."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0, None
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return (-1 if inv % 2 else 1), tuple(sorted(seq))


def merge_words(I, J):
    """e_I ^ e_J = sign * e_K; returns (sign, K) or (0, None)."""
    if set(I) & set(J):
        return 0, None
    inv = 0
    for i in I:
        for j in J:
            if i > j:
                inv += 1
    return (-1 if inv % 2 else 1), tuple(sorted(I + J))


def words(n, p):
    return list(combinations(range(n), p))


def _add_into(acc, key, c):
    v = acc.get(key, ZERO) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


class ExteriorAlgebra:
    """The exterior algebra on a base space of dimension n (0-based indices)."""

    def __init__(self, n):
        self.n = n
        self._words = {p: words(n, p) for p in range(n + 1)}
        self._index = {p: {w: i for i, w in enumerate(ws)} for p, ws in self._words.items()}

    def basis(self, p):
        return self._words.get(p, [])

    def index(self, word):
        return self._index[len(word)][word]

    def dim(self, p):
        return comb(self.n, p) if 0 <= p <= self.n else 0

    def space(self, labels=None, dual=False):
        def name(w):
            base = [labels[i] if labels else f"e{i + 1}" for i in w]
            if not w:
                return "1"
            return "^".join(b + ("*" if dual else "") for b in base)
        return GradedVectorSpace({p: [name(w) for w in self._words[p]] for p in range(self.n + 1)})

    def _check(self, a):
        for w in a:
            if any(i < 0 or i >= self.n for i in w):
                raise ValueError(f"word {w} outside base dimension {self.n}")

    def wedge(self, a, b):
        self._check(a)
        self._check(b)
        out = {}
        for I, x in a.items():
            for J, y in b.items():
                s, K = merge_words(I, J)
                if s:
                    _add_into(out, K, s * x * y)
        return out

    def interior(self, i, a):
        """iota_{e_i} a."""
        out = {}
        for I, x in a.items():
            if i in I:
                pos = I.index(i)
                _add_into(out, I[:pos] + I[pos + 1:], -x if pos % 2 else x)
        return out

    def interior_vector(self, v, a):
        """iota_v a for v a dense vector of the base space."""
        out = {}
        for i, c in enumerate(v):
            if c:
                for k, x in self.interior(i, a).items():
                    _add_into(out, k, c * x)
        return out

    def interior_multivector(self, Y, a):
        """iota_Y a with iota_{y1^...^yp} = iota_{yp} o ... o iota_{y1}."""
        out = {}
        for J, y in Y.items():
            cur = dict(a)
            for j in J:
                cur = self.interior(j, cur)
            for k, x in cur.items():
                _add_into(out, k, y * x)
        return out

    def pairing(self, alpha, Y):
        """<alpha, Y> with <e_I^v, e_J> = delta_{IJ}; both must be homogeneous of one degree."""
        da = {len(w) for w in alpha}
        dy = {len(w) for w in Y}
        if len(da) > 1 or len(dy) > 1 or (da and dy and da != dy):
            raise ValueError("pairing needs elements of one equal degree")
        s = ZERO
        for w, c in alpha.items():
            y = Y.get(w)
            if y:
                s += c * y
        return s

    def to_dense(self, p, a):
        v = [ZERO] * self.dim(p)
        idx = self._index[p]
        for w, c in a.items():
            if len(w) != p:
                raise ValueError("element has the wrong degree")
            v[idx[w]] += c
        return v

    def from_dense(self, p, v):
        return {w: c for w, c in zip(self._words[p], v) if c}

    def basis_element(self, word):
        return {tuple(word): ONE}


def wedge_product(a, b, algebra):
    return algebra.wedge(a, b)


def interior_product(v, a, algebra):
    return algebra.interior_vector(v, a)


def dual_pairing(alpha, Y, algebra):
    return algebra.pairing(alpha, Y)


def shifted_degree(degree, shift):
    """Degree of an element of V viewed in V[shift]."""
    return degree - shift
