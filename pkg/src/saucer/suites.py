"""Verification suites behind the `saucer verify` subcommand.

Every suite is a list of named checks closed over a seed; sampling labels
keep the random streams independent and reproducible, so a fixed seed yields
identical reports.
"""
from __future__ import annotations

import numpy as np

from . import catalogs, fibration, gl2, planner, structure, symmetry
from .chart import (E_FRAME, Z_FRAME, AmbientConfig, OutsideChart,
                    ambient_from_chart, ambient_nondegeneracy_pair,
                    chart_from_ambient, contact_covector,
                    contact_nondegeneracy)
from .forms import VectorField, constant_field
from .maneuvers import (ATTACKING_METRIC_FIELD, LANDING_METRIC_FIELD,
                        ManeuverMode, attacking_metric, constraint_residuals,
                        g2_coframe, invariant_two_form_dist)
from .reports import Check, CheckResult, SuiteReport, run_checks
from .sampling import rng_for, sample_chart_points, sample_vectors

SUITE_NAMES = ("config", "structure", "gl2", "symmetry", "fibration", "planner")


def _result(name: str, worst: float, tol: float, detail: str = "") -> CheckResult:
    return CheckResult(name, bool(worst <= tol), float(worst), detail, tol)


# -- config suite ----------------------------------------------------------------

def _config_checks(seed: int) -> list[Check]:
    def contact_constant() -> CheckResult:
        pts = sample_chart_points(100, seed, "config.contact")
        worst = max(abs(contact_nondegeneracy(p) - 2.0) for p in pts)
        return _result("contact-constant", worst, 1e-9, "100 points, target 2")

    def ambient_triple() -> CheckResult:
        pts = sample_chart_points(25, seed, "config.ambient")
        worst = max(abs(l - r) for l, r in map(ambient_nondegeneracy_pair, pts))
        return _result("ambient-triple-match", worst, 1e-7, "25 points")

    def roundtrip() -> CheckResult:
        pts = sample_chart_points(100, seed, "config.roundtrip")
        worst = max(float(np.max(np.abs(chart_from_ambient(ambient_from_chart(p)) - p)))
                    for p in pts)
        return _result("chart-roundtrip", worst, 1e-12, "100 points")

    def rejection() -> CheckResult:
        bad = AmbientConfig(r=np.zeros(3), n=np.array([1.0, 0.0, 0.0]))
        try:
            chart_from_ambient(bad)
        except OutsideChart:
            return CheckResult("outside-chart-rejected", True, None,
                               "equatorial normal raises")
        return CheckResult("outside-chart-rejected", False, None,
                           "no exception for n_z = 0")

    def duality() -> CheckResult:
        pts = sample_chart_points(50, seed, "config.duality")
        worst = 0.0
        for p in pts:
            C = g2_coframe(p)
            for j, Z in enumerate(Z_FRAME):
                col = C @ Z.value(p)
                target = np.zeros(4)
                target[j] = 1.0
                worst = max(worst, float(np.max(np.abs(col - target))))
            w = contact_covector(p)
            for E in E_FRAME:
                worst = max(worst, abs(float(w @ E.value(p))))
        return _result("frame-duality", worst, 1e-12,
                       "coframe vs Z frame; w0 annihilates the distribution")

    return [("contact-constant", contact_constant),
            ("ambient-triple-match", ambient_triple),
            ("chart-roundtrip", roundtrip),
            ("outside-chart-rejected", rejection),
            ("frame-duality", duality)]


# -- structure suite -------------------------------------------------------------

def _structure_checks(seed: int) -> list[Check]:
    def split_operator() -> CheckResult:
        K = structure.attacking_k_operator()
        target = np.diag([1.0, 1.0, -1.0, -1.0])
        worst = float(np.max(np.abs(K.matrix - target)))
        worst = max(worst, float(np.max(np.abs(K.matrix @ K.matrix - np.eye(4)))))
        return _result("split-operator", worst, 1e-14, "K and K^2 exact")

    def split_null() -> CheckResult:
        K = structure.attacking_k_operator()
        plus, minus = structure.eigen_split(K)
        p = np.zeros(5)
        G, W = attacking_metric(p), invariant_two_form_dist(p)
        worst = 0.0
        for basis in (plus, minus):
            if basis.shape[1] != 2:
                return CheckResult("split-eigenbundles", False, None,
                                   f"bundle rank {basis.shape[1]} != 2")
            for M in (G, W):
                worst = max(worst, float(np.max(np.abs(basis.T @ M @ basis))))
        return _result("split-eigenbundles", worst, 1e-10,
                       "both bundles null for g and Lagrangean for the 2-form")

    def landing_square() -> CheckResult:
        pts = sample_chart_points(200, seed, "structure.landing")
        worst = 0.0
        for p in pts:
            K = structure.landing_k_operator(p)
            expected = -1.0 / (1.0 + p[3] ** 2 + p[4] ** 2)
            worst = max(worst, abs(K.square_scalar - expected) / abs(expected))
        return _result("landing-square-scalar", worst, 1e-9,
                       "raw K^2 = -(1+a^2+b^2)^{-1} Id, relative")

    def landing_orientation() -> CheckResult:
        pts = sample_chart_points(100, seed, "structure.orientation")
        worst = 0.0
        for p in pts:
            K = structure.landing_k_operator(p)
            Z1, _ = structure.landing_frame_z(p)
            resid = np.linalg.norm(K.matrix @ Z1 - 1j * Z1) / np.linalg.norm(Z1)
            worst = max(worst, float(resid))
        return _result("landing-orientation", worst, 1e-9, "K Z1 = +i Z1")

    def levi() -> CheckResult:
        pts = sample_chart_points(100, seed, "structure.levi")
        for p in pts:
            L = structure.levi_form(p)
            if L.signature != (1, 1):
                return CheckResult("levi-form", False, None,
                                   f"signature {L.signature} at {p.round(3)}")
        origin = structure.levi_form(np.zeros(5))
        worst = abs(origin.c_value - 2.0)
        one = structure.levi_form(np.array([0.0, 0.0, 0.0, 1.0, 1.0]))
        worst = max(worst, abs(one.c_value - 2.0 * (3.0 + 1j * np.sqrt(3.0))))
        return _result("levi-form", worst, 1e-12,
                       "signature (1,1) at 100 points; pinned values")

    def stabilizer_dimensions() -> CheckResult:
        G, W = structure.attacking_pair_e()
        sol_pair = structure.solve_infinitesimal_stabilizer([G, W])
        U, W2 = structure.quartic_mode_pair()
        sol_quartic = structure.solve_infinitesimal_stabilizer([U, W2])
        sol_omega = structure.solve_infinitesimal_stabilizer([W2])
        dims = (sol_pair.dimension, sol_quartic.dimension, sol_omega.dimension)
        ok = dims == (5, 4, 11)
        worst = max(sol_pair.residual, sol_quartic.residual, sol_omega.residual)
        return CheckResult("stabilizer-dimensions", ok, worst,
                           f"dims {dims}, expected (5, 4, 11)")

    def stabilizer_span() -> CheckResult:
        G, W = structure.attacking_pair_e()
        sol = structure.solve_infinitesimal_stabilizer([G, W])
        ok = all(sol.contains(Y) for Y in structure.STABILIZER_BASIS)
        table = structure.verify_commutation_table(structure.STABILIZER_BASIS,
                                                   structure.STABILIZER_TABLE)
        U, W2 = structure.quartic_mode_pair()
        solq = structure.solve_infinitesimal_stabilizer([U, W2])
        eye2 = np.eye(2)
        for r in range(2):
            for s in range(2):
                A = np.outer(eye2[r], eye2[s])
                ok = ok and solq.contains(gl2.gl2_action_derivative(A))
        return CheckResult("stabilizer-span", ok and table <= 1e-10, table,
                           "printed basis and Sym^3 image lie in the solutions")

    return [("split-operator", split_operator),
            ("split-eigenbundles", split_null),
            ("landing-square-scalar", landing_square),
            ("landing-orientation", landing_orientation),
            ("levi-form", levi),
            ("stabilizer-dimensions", stabilizer_dimensions),
            ("stabilizer-span", stabilizer_span)]


# -- gl2 suite --------------------------------------------------------------------

def _gl2_checks(seed: int) -> list[Check]:
    def dual_route() -> CheckResult:
        X = sample_vectors(1000, 4, seed, "gl2.dual")
        worst = 0.0
        for v in X:
            a = gl2.quartic_upsilon(v)
            b = gl2.quartic_upsilon_det(v)
            worst = max(worst, abs(a - b) / max(1.0, abs(a), abs(b)))
        return _result("quartic-dual-route", worst, 1e-10,
                       "det L vs expanded polynomial, 1000 samples")

    def polarization() -> CheckResult:
        X = sample_vectors(200, 4, seed, "gl2.polar")
        worst = 0.0
        for v in X:
            u = gl2.quartic_upsilon(v)
            worst = max(worst, abs(gl2.upsilon_polarized(v, v, v, v) - u)
                        / max(1.0, abs(u)))
            t = float(np.einsum("ijkl,i,j,k,l", gl2.UPSILON_TENSOR, v, v, v, v))
            worst = max(worst, abs(t - u) / max(1.0, abs(u)))
        return _result("polarization-diagonal", worst, 1e-10,
                       "4-linear extension restores the quartic")

    def spinor_route() -> CheckResult:
        X = sample_vectors(100, 4, seed, "gl2.spinor")
        worst = max(float(np.max(np.abs(gl2.endomorphism_L(v)
                                        - gl2.endomorphism_L_spinor(v)))) for v in X)
        return _result("endomorphism-spinor-route", worst, 1e-12,
                       "closed form vs epsilon contractions")

    def equivariance() -> CheckResult:
        rng = rng_for(seed, "gl2.equivariance")
        worst = 0.0
        for _ in range(50):
            alpha = rng.uniform(-1.0, 1.0, size=(2, 2))
            beta = rng.uniform(-1.0, 1.0, size=(2, 2))
            if abs(np.linalg.det(alpha)) < 0.05 or abs(np.linalg.det(beta)) < 0.05:
                continue
            worst = max(worst, float(np.max(np.abs(
                gl2.gl2_action(alpha @ beta)
                - gl2.gl2_action(alpha) @ gl2.gl2_action(beta)))))
            X = rng.uniform(-1.0, 1.0, size=4)
            lhs = gl2.quartic_upsilon(gl2.gl2_action(alpha) @ X)
            rhs = float(np.linalg.det(alpha)) ** 6 * gl2.quartic_upsilon(X)
            worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs)))
        lam = 1.7
        scal = gl2.gl2_action(np.diag([lam, lam])) - lam ** 3 * np.eye(4)
        worst = max(worst, float(np.max(np.abs(scal))))
        return _result("action-equivariance", worst, 1e-8,
                       "morphism property, det^6 scaling, central scaling")

    def classification() -> CheckResult:
        rng = rng_for(seed, "gl2.classify")
        total = correct = 0
        for _ in range(300):
            t = rng.uniform(-1.5, 1.5)
            s = rng.uniform(0.2, 2.0) * rng.choice([-1.0, 1.0])
            total += 1
            correct += gl2.classify_direction(s * gl2.cubic_point(t)) is gl2.NullClass.TYPE_N
        for _ in range(300):
            t = rng.uniform(-1.5, 1.5)
            s = rng.uniform(0.1, 1.0) * rng.choice([-1.0, 1.0])
            total += 1
            correct += gl2.classify_direction(gl2.tangent_point(t, s)) is gl2.NullClass.TYPE_II
        for _ in range(400):
            X = rng.uniform(-2.0, 2.0, size=4)
            total += 1
            correct += gl2.classify_direction(X) is gl2.NullClass.NOT_NULL
        rate = correct / total
        return CheckResult("null-classification", rate >= 0.99, rate,
                           f"{correct}/{total} labeled samples")

    return [("quartic-dual-route", dual_route),
            ("polarization-diagonal", polarization),
            ("endomorphism-spinor-route", spinor_route),
            ("action-equivariance", equivariance),
            ("null-classification", classification)]


# -- symmetry suite ----------------------------------------------------------------

def _symmetry_checks(seed: int) -> list[Check]:
    def catalog_residuals(name: str, label: str) -> CheckResult:
        pts = sample_chart_points(12, seed, f"symmetry.{label}")
        worst = 0.0
        worst_field = ""
        for X in catalogs.catalog(label):
            if label == "g2":
                rep = symmetry.g2_symmetry_residual(X, pts)
            else:
                metric = (ATTACKING_METRIC_FIELD if label == "attacking"
                          else LANDING_METRIC_FIELD)
                rep = symmetry.legendrean_symmetry_residual(X, metric, pts)
            m = max(rep.contact, rep.membership)
            if m > worst:
                worst, worst_field = m, X.id
        return _result(name, worst, 1e-7, f"worst field {worst_field}")

    def ranks() -> CheckResult:
        pts = sample_chart_points(10, seed, "symmetry.rank")
        got = tuple(symmetry.catalog_rank(catalogs.catalog(lbl), pts)
                    for lbl in ("attacking", "landing", "g2"))
        return CheckResult("catalog-ranks", got == (15, 15, 14), None,
                           f"ranks {got}, expected (15, 15, 14)")

    def closure() -> CheckResult:
        worst = 0.0
        for lbl in ("attacking", "landing", "g2"):
            fields = catalogs.catalog(lbl)
            pa = sample_chart_points(10, seed, f"symmetry.close.{lbl}.a")
            pb = sample_chart_points(10, seed, f"symmetry.close.{lbl}.b")
            sa = symmetry.extract_structure_constants(fields, pa)
            sb = symmetry.extract_structure_constants(fields, pb)
            worst = max(worst, sa.misfit, sb.misfit)
            scale = max(1.0, float(np.max(np.abs(sa.c))))
            worst = max(worst, float(np.max(np.abs(sa.c - sb.c))) / scale)
        return _result("structure-constant-closure", worst, 1e-6,
                       "misfit and agreement across disjoint point sets")

    def killing() -> CheckResult:
        expected = {"attacking": "sl4", "landing": "su22", "g2": "g2-split"}
        detail = []
        ok = True
        worst = 0.0
        for lbl, model_name in expected.items():
            fields = catalogs.catalog(lbl)
            pts = sample_chart_points(10, seed, f"symmetry.killing.{lbl}")
            sc = symmetry.extract_structure_constants(fields, pts)
            diag = symmetry.killing_diagnostics(sc)
            model = symmetry.reference_model(model_name)
            ok = ok and diag.signature == model.killing_signature
            ok = ok and len(fields) == model.dimension
            worst = max(worst, diag.jacobi)
            detail.append(f"{lbl}: {diag.signature} vs {model.name} "
                          f"{model.killing_signature}")
        return CheckResult("killing-signatures", ok and worst <= 1e-8, worst,
                           "; ".join(detail))

    def negative_controls() -> CheckResult:
        pts = sample_chart_points(10, seed, "symmetry.negative")
        da = constant_field("da-dir", [0.0, 0.0, 0.0, 1.0, 0.0])
        rep = symmetry.legendrean_symmetry_residual(da, ATTACKING_METRIC_FIELD, pts)
        ok = rep.contact > 1e-2 and rep.membership < 1e-10
        euler = VectorField(
            "euler", 5,
            lambda p: np.array([p[0], p[1], p[2], 0.0, 0.0]),
            lambda p: np.diag([1.0, 1.0, 1.0, 0.0, 0.0]))
        worstq = max(symmetry.quartic_membership_residual(euler, p) for p in pts)
        ok = ok and worstq > 1e-3
        return CheckResult("negative-controls", ok, worstq,
                           f"da contact {rep.contact:.3g}, membership "
                           f"{rep.membership:.3g}; euler quartic {worstq:.3g}")

    return [("attacking-catalog", lambda: catalog_residuals("attacking-catalog", "attacking")),
            ("landing-catalog", lambda: catalog_residuals("landing-catalog", "landing")),
            ("g2-catalog", lambda: catalog_residuals("g2-catalog", "g2")),
            ("catalog-ranks", ranks),
            ("structure-constant-closure", closure),
            ("killing-signatures", killing),
            ("negative-controls", negative_controls)]


# -- fibration suite ----------------------------------------------------------------

def _fibration_checks(seed: int) -> list[Check]:
    def eds() -> CheckResult:
        worst = 0.0
        for chart_name in ("x", "y"):
            pts = sample_vectors(25, 6, seed, f"fibration.eds.{chart_name}")
            worst = max(worst, fibration.eds_residual(chart_name, pts))
        return _result("structure-equations", worst, 1e-7, "both charts, 25 points")

    def roundtrip() -> CheckResult:
        pts = sample_vectors(100, 6, seed, "fibration.roundtrip")
        worst = 0.0
        for p in pts:
            worst = max(worst, float(np.max(np.abs(
                fibration.x_from_y(fibration.y_from_x(p)) - p))))
            worst = max(worst, float(np.max(np.abs(
                fibration.y_from_x(fibration.x_from_y(p)) - p))))
        example = fibration.y_from_x(np.array([0.0, 0.0, 0.0, 0.0, 1.0, 1.0]))
        target = np.array([-1.0, 1.0, -1.0, 1.0, 1.0, 1.0])
        worst = max(worst, float(np.max(np.abs(example - target))))
        return _result("transition-roundtrip", worst, 1e-12,
                       "100 points plus the pinned example")

    def duality() -> CheckResult:
        worst = 0.0
        for chart_name in ("x", "y"):
            pts = sample_vectors(25, 6, seed, f"fibration.dual.{chart_name}")
            for p in pts:
                C = fibration.coframe(chart_name, p)
                F = fibration.frame(chart_name, p)
                worst = max(worst, float(np.max(np.abs(C @ F - np.eye(6)))))
        return _result("coframe-frame-duality", worst, 1e-12, "both charts")

    def commutators() -> CheckResult:
        worst = 0.0
        for chart_name in ("x", "y"):
            pts = sample_vectors(10, 6, seed, f"fibration.comm.{chart_name}")
            worst = max(worst, fibration.verify_frame_commutators(chart_name, pts))
        return _result("frame-commutators", worst, 1e-8, "seven stated brackets")

    def joystick() -> CheckResult:
        rng = rng_for(seed, "fibration.joystick")
        worst_ang = 0.0
        worst_contact = 0.0
        for _ in range(6):
            u = list(rng.uniform(-1.0, 1.0, size=3))
            w = [float(rng.uniform(0.8, 1.5)), float(rng.uniform(-0.2, 0.2))]
            run = fibration.run_joystick(u, w, duration=2.0, n_steps=200)
            worst_ang = max(worst_ang, run.report.max_angular)
            worst_contact = max(worst_contact, run.report.max_contact)
        ok = worst_ang <= 1e-5 and worst_contact <= 1e-8
        return CheckResult("joystick-certification", ok, worst_ang,
                           f"6 runs; worst contact {worst_contact:.3g}")

    def cubic_example() -> CheckResult:
        run = fibration.run_joystick(1.0, 1.0, duration=1.5, n_steps=300)
        t = run.engine.times
        worst = float(np.max(np.abs(run.engine.states[:, 0] + t ** 3)))
        return _result("cubic-example", worst, 1e-10,
                       "unit controls trace y0 = -t^3")

    def singular_lift() -> CheckResult:
        curve = fibration.integrate_d2_curve(1.0, [1.0, -1.0], 2.0, 100)
        try:
            fibration.lift_curve(curve)
        except fibration.LiftSingular:
            return CheckResult("lift-singularity-detected", True, None,
                               "w crossing zero raises")
        return CheckResult("lift-singularity-detected", False, None,
                           "no exception for w -> 0")

    return [("structure-equations", eds),
            ("transition-roundtrip", roundtrip),
            ("coframe-frame-duality", duality),
            ("frame-commutators", commutators),
            ("joystick-certification", joystick),
            ("cubic-example", cubic_example),
            ("lift-singularity-detected", singular_lift)]


# -- planner suite -------------------------------------------------------------------

_PLAN_MODES = (ManeuverMode.ATTACKING, ManeuverMode.LANDING, ManeuverMode.G2_STRICT)


def _planner_checks(seed: int) -> list[Check]:
    def generating() -> CheckResult:
        worst = np.inf
        min_rank = 5
        for mode in _PLAN_MODES:
            pts = sample_chart_points(40, seed, f"planner.rank.{mode.value}")
            rep = planner.bracket_generating_report(mode, pts)
            min_rank = min(min_rank, rep.min_rank)
            worst = min(worst, rep.worst_fifth_singular)
        return CheckResult("bracket-generating", min_rank == 5, worst,
                           f"family + pairwise brackets span at rank {min_rank}")

    def attacking_identity() -> CheckResult:
        pts = sample_chart_points(25, seed, "planner.id.attacking")
        worst = planner.distinguished_bracket_residual(ManeuverMode.ATTACKING, pts)
        return _result("attacking-bracket-identity", worst, 1e-8, "[Y2,Y3] = 3 dz")

    def g2_identity() -> CheckResult:
        pts = sample_chart_points(25, seed, "planner.id.g2")
        worst = planner.distinguished_bracket_residual(ManeuverMode.G2_STRICT, pts)
        return _result("g2-bracket-identity", worst, 1e-8, "[Y2,Y1] = dz")

    def landing_depth3() -> CheckResult:
        pts = sample_chart_points(25, seed, "planner.id.landing")
        worst = planner.landing_nested_bracket_norm(pts)
        return _result("landing-depth3-vanishes", worst, 1e-6,
                       "the depth-3 expression is identically zero")

    def landing_depth2() -> CheckResult:
        pts = sample_chart_points(25, seed, "planner.depth2")
        low = min(min(planner.landing_depth2_contact_values(p)) for p in pts)
        return CheckResult("landing-depth2-transversal", low >= 0.5, low,
                           "contact values of [Y2,Y4] and [Y1,Y3] stay >= 1")

    def rectangles() -> CheckResult:
        worst = 0.0
        for mode, coeff in ((ManeuverMode.ATTACKING, 3.0),
                            (ManeuverMode.G2_STRICT, 1.0)):
            p0 = sample_chart_points(1, seed, f"planner.rect.{mode.value}")[0]
            (i, j), _ = planner._RECTANGLE[mode]
            for eps in (0.2, 0.1, 0.05):
                p = p0.copy()
                for k, s in ((i, eps), (j, eps), (i, -eps), (j, -eps)):
                    p = planner.flow(mode, k, p, s)
                ratio = (p[2] - p0[2]) / eps ** 2
                worst = max(worst, abs(ratio - coeff) / coeff)
        return _result("rectangle-asymptotics", worst, 1e-8,
                       "z displacement / eps^2 hits the bracket coefficient")

    def plans() -> CheckResult:
        worst_gap = 0.0
        worst_resid = 0.0
        n_legs = 0
        for mode in _PLAN_MODES:
            pts = sample_chart_points(6, seed, f"planner.plan.{mode.value}", box=0.8)
            for k in range(3):
                start, goal = pts[2 * k], pts[2 * k + 1]
                plan = planner.plan_path(mode, start, goal, tol=1e-3)
                if not plan.success:
                    return CheckResult("plan-and-replay", False, None,
                                       f"{mode.value} plan failed at pair {k}")
                worst_gap = max(worst_gap, float(np.max(np.abs(plan.gap))))
                traj = planner.replay(plan)
                end_err = float(np.max(np.abs(traj.endpoint - plan.achieved)))
                rep = constraint_residuals(traj)
                worst_resid = max(worst_resid, rep.max_contact, rep.max_nullity,
                                  end_err)
                n_legs += len(plan.legs)
        ok = worst_gap < 1e-3 and worst_resid < 1e-8
        return CheckResult("plan-and-replay", ok, worst_gap,
                           f"9 pairs, {n_legs} legs, replay residual "
                           f"{worst_resid:.3g}")

    def plan_example() -> CheckResult:
        plan = planner.plan_path(ManeuverMode.ATTACKING, np.zeros(5),
                                 np.array([0.0, 0.0, 0.0, 0.0, 1.0]))
        ok = (plan.success and len(plan.legs) == 1 and plan.legs[0][0] == 0
              and abs(plan.legs[0][1] + 1.0 / 3.0) < 1e-9)
        detail = f"legs {[(k, round(s, 6)) for k, s in plan.legs]}"
        return CheckResult("plan-example", ok, None, detail)

    return [("bracket-generating", generating),
            ("attacking-bracket-identity", attacking_identity),
            ("g2-bracket-identity", g2_identity),
            ("landing-depth3-vanishes", landing_depth3),
            ("landing-depth2-transversal", landing_depth2),
            ("rectangle-asymptotics", rectangles),
            ("plan-and-replay", plans),
            ("plan-example", plan_example)]


_BUILDERS = {
    "config": _config_checks,
    "structure": _structure_checks,
    "gl2": _gl2_checks,
    "symmetry": _symmetry_checks,
    "fibration": _fibration_checks,
    "planner": _planner_checks,
}


_CATALOG_MODELS = {"attacking": "sl4", "landing": "su22", "g2": "g2-split"}


def catalog_report(label: str, seed: int) -> dict:
    """Focused symmetry-catalog report: per-field residuals, structure
    constants, Killing signature against the matrix-model oracle."""
    name = {"g2s": "g2", "g2d": "g2"}.get(label, label)
    if name not in _CATALOG_MODELS:
        raise ValueError(f"unknown catalog {label!r}; expected one of "
                         f"{tuple(_CATALOG_MODELS)}")
    fields = catalogs.catalog(name)
    pts = sample_chart_points(12, seed, f"symmetry.catalog.{name}")
    residuals = {}
    for X in fields:
        if name == "g2":
            rep = symmetry.g2_symmetry_residual(X, pts)
        else:
            metric = (ATTACKING_METRIC_FIELD if name == "attacking"
                      else LANDING_METRIC_FIELD)
            rep = symmetry.legendrean_symmetry_residual(X, metric, pts)
        residuals[X.id] = float(max(rep.contact, rep.membership))
    sc_pts = sample_chart_points(10, seed, f"symmetry.catalog.{name}.sc")
    sc = symmetry.extract_structure_constants(fields, sc_pts)
    diag = symmetry.killing_diagnostics(sc)
    model = symmetry.reference_model(_CATALOG_MODELS[name])
    passed = (max(residuals.values()) < 1e-7 and sc.misfit < 1e-8
              and diag.signature == model.killing_signature
              and len(fields) == model.dimension)
    return {
        "catalog": name,
        "seed": seed,
        "dimension": len(fields),
        "field_residuals": residuals,
        "structure_constants": [[[float(v) for v in row] for row in block]
                                for block in sc.c],
        "closure_misfit": float(sc.misfit),
        "jacobi_residual": float(diag.jacobi),
        "killing_signature": list(diag.signature),
        "oracle": {"model": model.name,
                   "killing_signature": list(model.killing_signature),
                   "dimension": model.dimension},
        "pass": bool(passed),
    }


def run_suite(name: str, seed: int, jobs: int = 4) -> SuiteReport:
    if name not in _BUILDERS:
        raise ValueError(f"unknown suite {name!r}; expected one of {SUITE_NAMES}")
    checks = _BUILDERS[name](seed)
    return SuiteReport(name, seed, run_checks(checks, jobs))


def run_suites(names, seed: int, jobs: int = 4) -> list[SuiteReport]:
    return [run_suite(name, seed, jobs) for name in names]
