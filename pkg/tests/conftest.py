"""Shared, cached builders so the structures are constructed once per session."""

import time
from functools import lru_cache

from mcpoisson.catalog import catalog_card
from mcpoisson.ce import LieAlgebra, build_ce_mcp
from mcpoisson.frobenius import FrobeniusAlgebra, build_frobenius_mcp
from mcpoisson.symplectic import build_forms_mcp, build_poisson_mcp


@lru_cache(maxsize=None)
def card(name):
    return catalog_card(name)


@lru_cache(maxsize=None)
def built(name):
    return card(name).build()


@lru_cache(maxsize=None)
def structure(flavor, name):
    """flavor in ce, frobenius, forms, poisson."""
    obj = built(name)
    return {"ce": build_ce_mcp, "frobenius": build_frobenius_mcp,
            "forms": build_forms_mcp, "poisson": build_poisson_mcp}[flavor](obj)


def h3():
    return LieAlgebra(3, {(0, 1): {2: 1}}, name="h3")


def sl2():
    # h, e, f with [h,e] = 2e, [h,f] = -2f, [e,f] = h
    return LieAlgebra(3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}, name="sl2")


def kxy():
    return FrobeniusAlgebra.truncated_polynomial((2, 2), name="kxy")


def unit(n, i):
    return [1 if k == i else 0 for k in range(n)]


# acceptance criteria results, filled by test_acceptance and printed at the end
ACCEPTANCE = {}


def pytest_sessionstart(session):
    session.config._mcp_start = time.perf_counter()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        tr.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    start = getattr(config, "_mcp_start", None)
    if start is not None:
        tr.write_line(f"total runtime: {time.perf_counter() - start:.1f} s (budget 60 s)")
