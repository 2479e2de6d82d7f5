import json
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from mcpoisson.catalog import (CardError, card_from_dict, catalog_card, catalog_paths, format_rational,
                               list_catalog, load_card, parse_rational, resolve_card, serialize)

H3 = {"name": "h3", "kind": "lie", "dimension": 3, "brackets": [[1, 2, 3, "1"]]}


def test_catalog_size_and_kinds():
    rows = list_catalog()
    assert len(rows) >= 12
    assert {k for _, k, _, _ in rows} == {"lie", "frobenius", "symplectic"}
    assert len({n for n, _, _, _ in rows}) == len(rows)


@pytest.mark.parametrize("path", catalog_paths(), ids=lambda p: p.name)
def test_shipped_cards_are_canonical(path):
    card = load_card(path)
    assert serialize(card) == path.read_text()
    assert card.name + ".json" == path.name


def test_heisenberg_and_kodaira_thurston_cards():
    g = catalog_card("heisenberg3").build()
    assert g.bracket(g.basis_vector(0), g.basis_vector(1)) == [0, 0, 1]
    m = catalog_card("kodaira_thurston").build()
    assert not any(m.d(2).apply(m.omega))


def test_antisymmetry_error_names_indices():
    raw = dict(H3, brackets=[[1, 2, 3, "1"], [2, 1, 3, "1"]])
    with pytest.raises(CardError, match=r"antisymmetry violated at indices \(1,2,3\)"):
        card_from_dict(raw)


def test_consistent_reverse_entry_accepted():
    raw = dict(H3, brackets=[[1, 2, 3, "1"], [2, 1, 3, "-1"]])
    assert serialize(card_from_dict(raw)) == serialize(card_from_dict(H3))


@pytest.mark.parametrize("raw, message", [
    (dict(H3, brackets=[[1, 2, 3, 0.5]]), "bad rational literal 0.5"),
    (dict(H3, brackets=[[1, 2, 3, "1.5"]]), "bad rational"),
    (dict(H3, brackets=[[1, 2, 4, "1"]]), "out of range"),
    (dict(H3, brackets=[[1, 2, "1"]]), "expected"),
    (dict(H3, kind="group"), "unknown kind"),
    (dict(H3, extra=1), "unknown field"),
    ({"name": "x", "kind": "lie"}, "missing field 'dimension'"),
    (dict(H3, dimension=0), "positive integer"),
    (dict(H3, labels=["a"]), "labels"),
    ({"name": "w", "kind": "symplectic", "dimension": 4, "brackets": [], "omega": [[1, 2, "1"]]}, "degenerate"),
    ({"name": "j", "kind": "lie", "dimension": 3,
      "brackets": [[1, 2, 3, "1"], [2, 3, 2, "1"], [1, 3, 1, "1"]]}, "Jacobi"),
])
def test_bad_cards_rejected(raw, message):
    with pytest.raises(CardError, match=message):
        card_from_dict(raw)


def test_bad_json_reports_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"name": "x",\n  "kind": }')
    with pytest.raises(CardError, match="line 2, column"):
        load_card(p)


def test_resolve_by_name_and_path(tmp_path):
    p = tmp_path / "mine.json"
    p.write_text(json.dumps(H3))
    assert resolve_card(str(p)).name == "h3"
    assert resolve_card("sl2").labels == ["h", "e", "f"]
    with pytest.raises(CardError, match="no card named"):
        resolve_card("no_such_card")


@given(st.fractions(max_denominator=1000))
def test_rational_literals_round_trip(c):
    assert parse_rational(format_rational(c), "x") == c


@pytest.mark.parametrize("bad", [0.25, True, None, "1e3", "", "1/0", [1]])
def test_parse_rational_rejects(bad):
    with pytest.raises(CardError):
        parse_rational(bad, "x")


def test_parse_rational_accepts_ints_and_fractions():
    assert parse_rational(3, "x") == 3
    assert parse_rational(" -7/21 ", "x") == F(-1, 3)
