"""Reports: run the exact checks of each module on an algebra card.

A report is a list of sections; each section holds pass/fail checks and
plain data (dimensions, tables).  Reports depend only on the card, the
suite, the seed and the package version, so their JSON is byte-stable.
"""

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .bv import check_bv_axioms, check_delta_squared
from .ce import CEComplex, build_ce_mcp, ce_dgla, extension_algebra
from .dgla import CheckResult, check_dgla_axioms
from .frobenius import (Cochains, build_frobenius_mcp, check_multiplicative_relation, check_printed_adjointness,
                        check_printed_property3, frobenius_bv, gerstenhaber_consistency, modular_derivation,
                        printed_delta, printed_property3_ratios)
from .mcp import bv_at, infer_k, jacobiator, verify_mcp
from .poly import Polynomial
from .symplectic import (KAlgebra, build_forms_mcp, build_poisson_mcp, check_nu_compatible, check_sub_dgla,
                         dd_lambda_cohomology, forms_flow_velocity, isotropy_comparison, schouten_dgla,
                         symplectic_flow_step)

SUITES = {
    "lie": ("dgla", "mcp", "extensions"),
    "frobenius": ("dgla", "mcp", "frobenius"),
    "symplectic": ("dgla", "mcp", "symplectic"),
}
ALL_SUITES = ("dgla", "mcp", "extensions", "frobenius", "symplectic", "all")
# the printed chain model lives on A (x) wedge^{<=3} A; its exhaustive checks
# are run when dim A is at most this
PRINTED_MAX_DIM = 6


class ReportError(ValueError):
    """The requested suite does not apply to the card."""


def jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, dict):
        return {str(k) if not isinstance(k, tuple) else ",".join(map(str, k)): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    return str(v)


@dataclass
class Section:
    name: str
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def check(self, name, ok, checked=1, witness=None):
        self.checks.append(CheckResult(name, bool(ok), checked, None if ok else witness))

    def add(self, results, prefix=""):
        for r in results:
            self.checks.append(CheckResult(prefix + r.name, r.passed, r.checked, r.witness))

    def as_dict(self):
        return {"name": self.name, "passed": self.passed,
                "checks": [c.as_dict() for c in self.checks], "data": jsonable(self.data)}


@dataclass
class Report:
    card: str
    kind: str
    suite: str
    seed: int
    version: str = __version__
    sections: list = field(default_factory=list)

    @property
    def passed(self):
        return all(s.passed for s in self.sections)

    @property
    def exit_code(self):
        return 0 if self.passed else 1

    def as_dict(self):
        return {"card": self.card, "kind": self.kind, "suite": self.suite, "seed": self.seed,
                "version": self.version, "passed": self.passed,
                "sections": [s.as_dict() for s in self.sections]}

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"

    def to_table(self):
        rows = [("section", "check", "result", "checked", "witness")]
        for s in self.sections:
            for c in s.checks:
                rows.append((s.name, c.name, "PASS" if c.passed else "FAIL", str(c.checked),
                             "" if c.witness is None else str(c.witness)))
        widths = [max(len(r[i]) for r in rows) for i in range(4)]
        lines = [f"card {self.card} ({self.kind}), suite {self.suite}, seed {self.seed}, version {self.version}", ""]
        for r in rows:
            lines.append("  ".join(x.ljust(w) for x, w in zip(r[:4], widths)) + ("  " + r[4] if r[4] else ""))
        for s in self.sections:
            if s.data:
                lines.append("")
                lines.append(f"[{s.name}]")
                for k in sorted(s.data):
                    lines.append(f"  {k}: {json.dumps(jsonable(s.data[k]), sort_keys=True)}")
        lines.append("")
        lines.append("RESULT: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines) + "\n"


# --- shared pieces ---------------------------------------------------------

def _cubic(nvars, rng):
    return Polynomial.random(nvars, 3, rng, nterms=4)


def _mcp_section(name, s, points, seed, jacobi_triples=2, bv_points=1):
    sec = Section(name)
    rep = verify_mcp(s, points, bv_points=bv_points)
    sec.add(rep.results)
    ks = []
    consistent = True
    for x in points:
        ok, k = infer_k(s, x)
        consistent = consistent and ok and (k is None or k == s.k_constant)
        ks.append(k)
    sec.check("k_constant", consistent, len(points), ks)
    rng = random.Random(seed)
    if s.m:
        bad = None
        count = 0
        for x in points:
            for _ in range(jacobi_triples):
                f, g, h = (_cubic(s.m, rng) for _ in range(3))
                count += 1
                if jacobiator(s, x, f, g, h):
                    bad = bad or x
        sec.check("jacobiator_zero", bad is None, count, bad)
    sec.data.update({"points": len(points), "k": s.k_constant, "k_inferred": ks,
                     "dims_L": {i: s.dgla.dim(i) for i in s.dgla.degrees}})
    return sec


# --- Lie cards ---------------------------------------------------------------

def _lie_dgla(g):
    sec = Section("dgla")
    L = ce_dgla(g)
    sec.add(check_dgla_axioms(L).results)
    sec.data["betti"] = [int(b) for b in CEComplex(g).betti()]
    return sec


def _lie_mcp(g, seed):
    s = build_ce_mcp(g)
    pts = [[0] * s.m] + s.sample_mc(2, seed)
    return _mcp_section("mcp", s, pts, seed)


def _lie_extensions(g):
    sec = Section("extensions")
    E = extension_algebra(g)
    dim, b2, der = E.dimension_identity()
    sec.check("dimension_identity", dim == b2 + der, 1, (dim, b2, der))
    sec.check("cycles_central", E.center_check())
    sec.check("phi_homomorphism", E.phi_is_homomorphism())
    h = E.hodge()
    sec.check("hodge_decomposition", h["sums_to_total"] and h["orthogonal"])
    sec.check("projection_identity", E.projection_identity())
    consts = E.structure_constants_via_phi()
    if consts is not None:
        ok = all(consts[(i, j)] == g.bracket(g.basis_vector(i), g.basis_vector(j))
                 for i in range(g.dim) for j in range(g.dim))
        sec.check("isomorphic_to_g_via_phi", ok, g.dim ** 2)
    sec.data.update({"dim": dim, "b2": b2, "dim_derived": der, "abelian": E.is_abelian(), "splits": E.splits(),
                     "harmonic": h["harmonic"], "exact": h["exact"], "coexact": h["coexact"]})
    return sec


# --- Frobenius cards ---------------------------------------------------------

def _frobenius_dgla(model):
    sec = Section("dgla")
    sec.add(check_dgla_axioms(model.dgla).results)
    sec.data["dims_multiderivations"] = {p + 1: model.dgla.dim(p) for p in model.dgla.degrees}
    return sec


def _frobenius_sections(A, seed, wanted):
    s = build_frobenius_mcp(A)
    model, cone = s.model, s.cone
    out = []
    if "dgla" in wanted:
        out.append(_frobenius_dgla(model))
    pts = s.sample_mc(2, seed) if s.m else []
    if "mcp" in wanted:
        out.append(_mcp_section("mcp", s, [[0] * s.m] + pts, seed))
    if "frobenius" in wanted:
        sec = Section("frobenius")
        sec.check("cone_homogeneous_quadratic", cone.is_homogeneous_quadratic())
        sec.check("cone_samples_on_cone", all(cone.contains(x) for x in pts), len(pts))
        sec.data.update({"biderivation_dim": s.m, "cone_identically_zero": cone.identically_zero,
                         "cone_equations": len([e for e in cone.equations if e])})
        non = s.sample_non_mc(1, seed)
        if non:
            sec.check("delta_squared_fails_off_cone", not check_delta_squared(bv_at(s, non[0])).passed, 1, non[0])
        if s.m and A.dim <= PRINTED_MAX_DIM:
            C = Cochains(A)
            X = model.element(2, pts[-1])
            bv = frobenius_bv(A, X, top=3 if A.dim >= 3 else A.dim)
            sec.add(check_bv_axioms(bv, max_total_degree=3, jacobi=False).results, "printed_")
            sec.add([check_printed_property3(A, X)])
            count, ratios = printed_property3_ratios(A, X)
            sec.data["printed_property3_nonzero_pairs"] = count
            sec.data["printed_property3_ratios"] = sorted(str(r) for r in ratios)
            sec.add([check_printed_adjointness(A, X, multiderivations_only=True, max_p=2)])
            ok, w = gerstenhaber_consistency(A, X)
            sec.check("gerstenhaber_unit_consistency", ok)
            sec.data["gerstenhaber_decomposable_witness"] = w
            sec.add([check_multiplicative_relation(A, X)])
            D1 = printed_delta(C, X, 1)
            images = {}
            for col in range(D1.ncols):
                v = D1.column(col)
                if any(v):
                    f, a = divmod(col, A.dim)
                    images[f"{A.labels[a]}(x){A.labels[f]}"] = _named(A, v)
            sec.data["printed_delta_degree1"] = images
            sec.data["modular_derivation_zero"] = not any(modular_derivation(A, X))
            sec.data["sample_point"] = pts[-1]
        elif s.m:
            sec.data["printed_model"] = f"skipped: dim A = {A.dim} > {PRINTED_MAX_DIM}"
        out.append(sec)
    return out


def _named(A, v):
    return {A.labels[i]: c for i, c in enumerate(v) if c}


# --- symplectic cards ------------------------------------------------------

def _symplectic_dgla(m):
    sec = Section("dgla")
    sec.add(check_dgla_axioms(ce_dgla(m.lie)).results, "ce_")
    sec.add(check_dgla_axioms(schouten_dgla(m.lie)).results, "schouten_")
    return sec


def _symplectic_mcp(m, seed):
    forms = build_forms_mcp(m)
    poisson = build_poisson_mcp(m)
    a = _mcp_section("mcp_forms", forms, [list(m.omega)] + forms.sample_mc(1, seed), seed)
    b = _mcp_section("mcp_poisson", poisson, [list(m.pi)] + poisson.sample_mc(1, seed), seed)
    return [a, b]


def _symplectic_main(m):
    sec = Section("symplectic")
    sec.add(m.check_identities())
    rep = dd_lambda_cohomology(m)
    N, n = m.lie.dim, m.n
    sec.check("h_ddlam_at_least_betti", rep.inequality_holds, N + 1)
    low = [p for p in (0, 1, N - 1, N) if rep.h_ddlam[p] != rep.betti[p]]
    sec.check("h_ddlam_equals_betti_in_degrees_0_1", all(p > 1 for p in low), 2, low)
    k0 = rep.k_dims.get(0, 0)
    sec.check("k0_dim_is_h2_minus_b2", k0 == rep.h_ddlam[2] - rep.betti[2], 1, (k0, rep.h_ddlam[2], rep.betti[2]))
    three = (rep.equality, rep.hard_lefschetz, rep.k_dim == 0)
    sec.check("equality_iff_lefschetz_iff_k_zero", len(set(three)) == 1, 1, three)
    sec.check("orbit_nondegenerate_iff_h2_equals_b2",
              rep.nondegenerate == (rep.h_ddlam[2] == rep.betti[2]), 1, (rep.nondegenerate, rep.h_ddlam[2]))
    # statements that rest on H_{d^L} -> H_{dd^L} being injective
    bad = [p for p, ok in enumerate(rep.injective) if not ok]
    sec.check("h_dlam_injects_into_h_ddlam", not bad, N + 1, {"form_degrees": bad})
    diff = sum(h - l for h, l in zip(rep.h_ddlam, rep.h_dlam))
    sec.check("k_dim_is_sum_of_differences", rep.k_dim == diff, 1, (rep.k_dim, diff))
    outside = [i for i in rep.k_dims if not 0 <= i <= 2 * n - 4]
    sec.check("k_supported_in_degrees_0_to_2n_minus_4", not outside, 1, {"degrees": outside})
    K = KAlgebra(m)
    sec.add(K.checks())
    poisson = build_poisson_mcp(m)
    sec.add([check_sub_dgla(poisson), check_nu_compatible(poisson, m.pi)])
    comp, _ = isotropy_comparison(m)
    sec.add(comp)
    # the dd^L flow and the forms MCP flow at omega
    ok = True
    checked = 0
    for j in range(m.dim(2)):
        W = [Fraction(int(i == j)) for i in range(m.dim(2))]
        checked += 1
        if forms_flow_velocity(m, W) != m.ddlam(2).apply(m.lower(2, W)):
            ok = False
    sec.check("forms_flow_is_ddlam", ok, checked)
    steps = []
    flow_ok = True
    for j in range(m.dim(2)):
        beta = [Fraction(int(i == j)) for i in range(m.dim(2))]
        st = symplectic_flow_step(m, beta, Fraction(1, 10))
        flow_ok = flow_ok and st.closed and st.same_class
        if any(st.increment):
            steps.append({"beta": j, "increment": st.increment, "nondegenerate": st.nondegenerate,
                          "determinant": repr(st.determinant)})
    sec.check("flow_step_closed_same_class", flow_ok, m.dim(2))
    sec.data.update(rep.as_dict())
    sec.data["k_dims"] = {i: d for i, d in sorted(rep.k_dims.items())}
    sec.data["k_table"] = {",".join(map(str, key)): v for key, v in sorted(K.table().items())}
    sec.data["hdd_table"] = {",".join(map(str, key)): v for key, v in sorted(K.table("hdd").items())}
    sec.data["flow_steps"] = steps
    return sec


# --- entry point -----------------------------------------------------------

def run_report(card, suite="all", seed=0):
    if suite not in ALL_SUITES:
        raise ReportError(f"unknown suite {suite!r}; choose from {', '.join(ALL_SUITES)}")
    applicable = SUITES[card.kind]
    if suite != "all" and suite not in applicable:
        raise ReportError(f"suite {suite!r} does not apply to a {card.kind} card; "
                          f"applicable: {', '.join(applicable + ('all',))}")
    wanted = applicable if suite == "all" else (suite,)
    rep = Report(card.name, card.kind, suite, seed)
    obj = card.build()
    if card.kind == "lie":
        if "dgla" in wanted:
            rep.sections.append(_lie_dgla(obj))
        if "mcp" in wanted:
            rep.sections.append(_lie_mcp(obj, seed))
        if "extensions" in wanted:
            rep.sections.append(_lie_extensions(obj))
    elif card.kind == "frobenius":
        rep.sections.extend(_frobenius_sections(obj, seed, wanted))
    else:
        if "dgla" in wanted:
            rep.sections.append(_symplectic_dgla(obj))
        if "mcp" in wanted:
            rep.sections.extend(_symplectic_mcp(obj, seed))
        if "symplectic" in wanted:
            rep.sections.append(_symplectic_main(obj))
    return rep
