"""Algebra cards: JSON descriptions of Lie algebras, Frobenius algebras and
symplectic models, and the catalog of cards shipped with the package.

Indices in cards are 1-based and rationals are strings such as "-3/2" (plain
JSON integers are accepted too, floats never).  Layout by kind:

* lie:        "brackets": [[i, j, k, c], ...] meaning c_ij^k, optional
              "inner_product" (square matrix);
* frobenius:  "multiplication": [[i, j, k, c], ...] meaning e_i e_j has c on
              e_k, "form" (square matrix), optional "unit" (vector);
* symplectic: "brackets" as for lie and "omega": [[i, j, c], ...] meaning c e^i ^ e^j.

Bracket and product entries need only be given for i < j (i <= j for
products); the loader fills in the other half and rejects conflicts.
"""

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .ce import LieAlgebra, LieAlgebraError
from .frobenius import FrobeniusAlgebra, FrobeniusError
from .ratlin import RationalMatrix
from .symplectic import SymplecticError, SymplecticLieModel

KINDS = ("lie", "frobenius", "symplectic")
_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")
_COMMON = ("name", "kind", "dimension", "labels", "description")
_FIELDS = {
    "lie": {"required": ("brackets",), "optional": ("inner_product",)},
    "frobenius": {"required": ("multiplication", "form"), "optional": ("unit",)},
    "symplectic": {"required": ("brackets", "omega"), "optional": ()},
}


class CardError(ValueError):
    """A card that cannot be read: bad JSON, bad schema, bad rational or failed axiom."""


def parse_rational(value, where):
    if isinstance(value, bool) or isinstance(value, float):
        raise CardError(f"{where}: bad rational literal {value!r} (write rationals as strings 'p/q')")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.match(value):
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError:
            pass
    raise CardError(f"{where}: bad rational literal {value!r}")


def format_rational(c):
    return str(Fraction(c))


def _index(value, dim, where):
    if isinstance(value, bool) or not isinstance(value, int):
        raise CardError(f"{where}: index must be an integer, got {value!r}")
    if not 1 <= value <= dim:
        raise CardError(f"{where}: index {value} out of range 1..{dim}")
    return value - 1


def _list(raw, key, where):
    v = raw.get(key)
    if not isinstance(v, list):
        raise CardError(f"{where}: field '{key}' must be a list")
    return v


def _entries(raw, key, arity, dim):
    out = []
    for n, entry in enumerate(_list(raw, key, key)):
        where = f"{key}[{n}]"
        if not isinstance(entry, list) or len(entry) != arity + 1:
            raise CardError(f"{where}: expected [{', '.join('ijk'[:arity])}, coefficient]")
        idx = tuple(_index(v, dim, where) for v in entry[:arity])
        out.append((idx, parse_rational(entry[arity], where)))
    return out


def _matrix(raw, key, dim):
    rows = _list(raw, key, key)
    if len(rows) != dim or any(not isinstance(r, list) or len(r) != dim for r in rows):
        raise CardError(f"{key}: expected a {dim}x{dim} matrix")
    return [[parse_rational(c, f"{key}[{i}][{j}]") for j, c in enumerate(r)] for i, r in enumerate(rows)]


def _fill(entries, symmetric, key):
    """Complete a table (i, j, k) -> c from entries given in either order."""
    table = {}
    for (i, j, k), c in entries:
        if i == j and not symmetric:
            if c:
                raise CardError(f"antisymmetry violated: {key} entry c_({i + 1},{i + 1})^{k + 1} = {c}")
            continue
        for a, b, val in ((i, j, c), (j, i, c if symmetric else -c)):
            old = table.get((a, b, k))
            if old is not None and old != val:
                lo, hi = sorted((i, j))
                what = "commutativity" if symmetric else "antisymmetry"
                raise CardError(f"{what} violated at indices ({lo + 1},{hi + 1},{k + 1})")
            table[(a, b, k)] = val
    return table


@dataclass
class AlgebraCard:
    name: str
    kind: str
    dimension: int
    labels: list
    description: str = ""
    structure: dict = field(default_factory=dict)     # (i, j, k) -> c, 0-based, both orders
    form: list = None
    inner_product: list = None
    unit: list = None
    omega: dict = field(default_factory=dict)         # (i, j) -> c with i < j
    source: str = ""
    _built: object = field(default=None, repr=False, compare=False)

    # --- construction of the underlying objects ---------------------------
    def lie(self):
        if self.kind not in ("lie", "symplectic"):
            raise CardError(f"{self.name}: a {self.kind} card has no Lie algebra")
        brackets = {}
        for (i, j, k), c in self.structure.items():
            if i < j and c:
                brackets.setdefault((i, j), {})[k] = c
        ip = None if self.inner_product is None else RationalMatrix(self.inner_product, self.dimension)
        return LieAlgebra(self.dimension, brackets, labels=self.labels, inner_product=ip, name=self.name)

    def frobenius(self):
        if self.kind != "frobenius":
            raise CardError(f"{self.name}: a {self.kind} card has no Frobenius algebra")
        mult = {}
        for (i, j, k), c in self.structure.items():
            if c:
                mult.setdefault((i, j), {})[k] = c
        return FrobeniusAlgebra(self.dimension, mult, RationalMatrix(self.form, self.dimension),
                                unit=self.unit, labels=self.labels, name=self.name)

    def symplectic(self):
        if self.kind != "symplectic":
            raise CardError(f"{self.name}: a {self.kind} card has no symplectic form")
        return SymplecticLieModel(self.lie(), dict(self.omega), name=self.name)

    def build(self):
        """The validated object for this card (cached)."""
        if self._built is None:
            self._built = {"lie": self.lie, "frobenius": self.frobenius, "symplectic": self.symplectic}[self.kind]()
        return self._built

    # --- canonical form -------------------------------------------------
    def to_dict(self):
        d = {"name": self.name, "kind": self.kind, "dimension": self.dimension, "labels": list(self.labels)}
        if self.description:
            d["description"] = self.description
        if self.kind in ("lie", "symplectic"):
            d["brackets"] = [[i + 1, j + 1, k + 1, format_rational(c)]
                             for (i, j, k), c in sorted(self.structure.items()) if i < j and c]
        if self.kind == "frobenius":
            d["multiplication"] = [[i + 1, j + 1, k + 1, format_rational(c)]
                                   for (i, j, k), c in sorted(self.structure.items()) if i <= j and c]
            d["form"] = [[format_rational(c) for c in row] for row in self.form]
            if self.unit is not None:
                d["unit"] = [format_rational(c) for c in self.unit]
        if self.inner_product is not None:
            d["inner_product"] = [[format_rational(c) for c in row] for row in self.inner_product]
        if self.kind == "symplectic":
            d["omega"] = [[i + 1, j + 1, format_rational(c)] for (i, j), c in sorted(self.omega.items()) if c]
        return d


def _dump(obj, pad=""):
    """JSON with sorted keys and one line per innermost list."""
    inner = pad + "  "
    if isinstance(obj, dict):
        items = [f"{inner}{json.dumps(k)}: {_dump(obj[k], inner)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}" if items else "{}"
    if isinstance(obj, list) and any(isinstance(v, (list, dict)) for v in obj):
        return "[\n" + ",\n".join(inner + _dump(v, inner) for v in obj) + "\n" + pad + "]"
    return json.dumps(obj)


def serialize(card):
    """Canonical JSON text of a card."""
    return _dump(card.to_dict()) + "\n"


def card_from_dict(raw, source=""):
    if not isinstance(raw, dict):
        raise CardError("card must be a JSON object")
    for key in ("name", "kind", "dimension"):
        if key not in raw:
            raise CardError(f"missing field '{key}'")
    kind = raw["kind"]
    if kind not in KINDS:
        raise CardError(f"kind: unknown kind {kind!r}, expected one of {', '.join(KINDS)}")
    schema = _FIELDS[kind]
    allowed = set(_COMMON) | set(schema["required"]) | set(schema["optional"])
    unknown = sorted(set(raw) - allowed)
    if unknown:
        raise CardError(f"unknown field(s) for a {kind} card: {', '.join(unknown)}")
    for key in schema["required"]:
        if key not in raw:
            raise CardError(f"missing field '{key}'")
    if not isinstance(raw["name"], str) or not raw["name"]:
        raise CardError("name: must be a non-empty string")
    dim = raw["dimension"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise CardError(f"dimension: must be a positive integer, got {dim!r}")
    labels = raw.get("labels") or [f"e{i + 1}" for i in range(dim)]
    if not isinstance(labels, list) or len(labels) != dim or not all(isinstance(s, str) for s in labels):
        raise CardError(f"labels: expected {dim} strings")
    card = AlgebraCard(raw["name"], kind, dim, labels, raw.get("description", ""), source=source)
    if kind in ("lie", "symplectic"):
        card.structure = _fill(_entries(raw, "brackets", 3, dim), False, "brackets")
    if kind == "frobenius":
        card.structure = _fill(_entries(raw, "multiplication", 3, dim), True, "multiplication")
        card.form = _matrix(raw, "form", dim)
        if "unit" in raw:
            u = _list(raw, "unit", "unit")
            if len(u) != dim:
                raise CardError(f"unit: expected {dim} entries")
            card.unit = [parse_rational(c, f"unit[{i}]") for i, c in enumerate(u)]
    if "inner_product" in raw:
        card.inner_product = _matrix(raw, "inner_product", dim)
    if kind == "symplectic":
        omega = {}
        for (i, j), c in _entries(raw, "omega", 2, dim):
            if i == j:
                if c:
                    raise CardError(f"omega: diagonal entry ({i + 1},{i + 1}) must vanish")
                continue
            key, c = ((i, j), c) if i < j else ((j, i), -c)
            omega[key] = omega.get(key, Fraction(0)) + c
        card.omega = {k: c for k, c in omega.items() if c}
    try:
        card.build()
    except (LieAlgebraError, FrobeniusError, SymplecticError) as exc:
        raise CardError(f"{card.name}: {exc}") from None
    return card


def load_card(path):
    """Read, parse and validate a card file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise CardError(f"{path}: cannot read card: {exc.strerror or exc}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CardError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        return card_from_dict(raw, source=str(path))
    except CardError as exc:
        raise CardError(f"{path}: {exc}") from None


# --- the shipped catalog ---------------------------------------------------

def _card_dir():
    return resources.files("mcpoisson") / "cards"


def catalog_paths():
    return sorted((p for p in _card_dir().iterdir() if p.name.endswith(".json")), key=lambda p: p.name)


def catalog_card(name):
    path = _card_dir() / f"{name}.json"
    if not path.is_file():
        raise CardError(f"no card named {name!r} in the catalog")
    return load_card(path)


def resolve_card(ref):
    """A path to a card file, or the name of a catalog card."""
    p = Path(ref)
    if p.suffix == ".json" or p.exists():
        return load_card(p)
    return catalog_card(ref)


def list_catalog():
    """Rows (name, kind, dimension, description) for every shipped card."""
    rows = []
    for p in catalog_paths():
        raw = json.loads(p.read_text())
        rows.append((raw["name"], raw["kind"], raw["dimension"], raw.get("description", "")))
    return rows
