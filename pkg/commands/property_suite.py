"""``property-suite``: randomized identity checks across every engine module.

All draws come from one ``numpy.random.Generator`` seeded by ``--seed`` so
a fixed configuration reproduces the same report byte for byte.
"""

from fractions import Fraction
from typing import Any, Callable, Dict, List, Sequence, Tuple

import numpy as np
import sympy

from app_types.report_types import CommandReport, Failure
from lie_rotor import circle_action_s2, momentum_map_angular
from manifold_geometry import (
    Observable,
    SymplecticStructure,
    canonical_one_form_residual,
    complex_structure_residual,
    cotangent,
    duality_residuals,
    kahler_compatibility,
    plane,
    sphere,
    symplectic_structures,
    three_sphere,
    torus,
)
from multivector_core import MetricSignature, Multivector, inner, pseudoscalar, reverse, wedge
from rigid_body_sim import InertiaOperator, RigidBodyState, convergence_study
from scalar_ring import ExactBackend, format_rational
from settings import settings_manager
from utils import performance_monitor

from . import BaseCommand, check, failures_from_checks, iter_failures
from .algebra import lie_report, parse_algebra_name
from .brst import brst_report
from .geometry import geometry_report
from .rigid_body import rigid_body_run
from .run_config import HamiltonianSpec, RunConfig, TermSpec

KERNEL_SIGNATURES: Tuple[Tuple[str, Callable[[], MetricSignature]], ...] = (
    ("euclidean:2", lambda: MetricSignature.euclidean(2)),
    ("euclidean:3", lambda: MetricSignature.euclidean(3)),
    ("euclidean:4", lambda: MetricSignature.euclidean(4)),
    ("minkowski:4", lambda: MetricSignature.minkowski("nonstandard")),
    ("symplectic:2", lambda: MetricSignature.symplectic_darboux(1)),
    ("symplectic:4", lambda: MetricSignature.symplectic_darboux(2)),
)

SUITE_ALGEBRAS = ("so3", "lorentz:std", "lorentz:nonstd", "un:1", "un:2", "un:3", "gln:1", "gln:2", "gln:3")

BRST_CASES = 20
MAX_BRST_DEGREE = 4
SYMPLECTIC_POINTS = 5
EXACT_FIELD_STEP = 0.5
MIN_CONVERGENCE_ORDER = 3.0
THREE_SPHERE_GRID = 4


# ---------------------------------------------------------------- kernel


def random_rational(rng: np.random.Generator, nonzero: bool = False) -> Fraction:
    numerator = int(rng.integers(1, 5)) * int(rng.choice([-1, 1])) if nonzero else int(rng.integers(-4, 5))
    return Fraction(numerator, int(rng.integers(1, 4)))


def random_multivector(signature: MetricSignature, backend: ExactBackend, rng: np.random.Generator, terms: int = 3) -> Multivector:
    size = 1 << signature.dim
    masks = rng.choice(size, size=min(terms, size), replace=False)
    return Multivector(signature, backend, {int(m): random_rational(rng, nonzero=True) for m in masks})


def random_blade(signature: MetricSignature, backend: ExactBackend, rng: np.random.Generator) -> Multivector:
    grade = int(rng.integers(0, signature.dim + 1))
    indices = rng.choice(signature.dim, size=grade, replace=False)
    mask = sum(1 << int(i) for i in indices)
    return Multivector(signature, backend, {mask: random_rational(rng, nonzero=True)})


def random_vector(dim: int, rng: np.random.Generator) -> List[Fraction]:
    return [random_rational(rng, nonzero=True) for _ in range(dim)]


def kernel_signature_suite(signature: MetricSignature, rng: np.random.Generator, samples: int) -> Dict[str, Any]:
    """Associativity, grade structure and (symmetric kinds only) reversion on random triples."""
    backend = ExactBackend()
    counts = {"associativity": 0, "grades": 0, "reversion": 0}
    check_reversion = signature.kind == "symmetric"
    for _ in range(samples):
        a, b, c = (random_multivector(signature, backend, rng) for _ in range(3))
        if a.star(b).star(c) != a.star(b.star(c)):
            counts["associativity"] += 1
        if check_reversion and reverse(a.star(b)) != reverse(b).star(reverse(a)):
            counts["reversion"] += 1
        x, y = random_blade(signature, backend, rng), random_blade(signature, backend, rng)
        r, s = x.grade, y.grade
        allowed = {r + s - 2 * k for k in range(min(r, s) + 1)}
        if not set(x.star(y).grades()) <= allowed:
            counts["grades"] += 1
    return {
        "samples": samples,
        "kind": signature.kind,
        "reversion_checked": check_reversion,
        "failures": counts,
        "passed": not any(counts.values()),
    }


def euclidean_identities(rng: np.random.Generator, samples: int) -> Dict[str, Any]:
    """``s_i * s_j = eta_ij + s_i ^ s_j``, quaternion units and ``a * b = a . b + I * (a x b)``."""
    signature = MetricSignature.euclidean(3)
    backend = ExactBackend()
    basis = [Multivector.generator(signature, backend, i) for i in range(3)]
    generator_failures = sum(
        1
        for i in range(3)
        for j in range(3)
        if basis[i].star(basis[j]) != inner(basis[i], basis[j]) + wedge(basis[i], basis[j])
    )

    units = [Multivector.blade(signature, backend, pair, -1) for pair in ([1, 2], [2, 0], [0, 1])]
    minus_one = Multivector.scalar(signature, backend, -1)
    quaternion_ok = all(q.star(q) == minus_one for q in units) and units[0].star(units[1]).star(units[2]) == minus_one

    volume = pseudoscalar(signature, backend)
    cross_failures = 0
    for _ in range(samples):
        u, v = random_vector(3, rng), random_vector(3, rng)
        a = Multivector.vector(signature, backend, u)
        b = Multivector.vector(signature, backend, v)
        cross = [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
        expected = inner(a, b) + volume.star(Multivector.vector(signature, backend, cross))
        if a.star(b) != expected:
            cross_failures += 1
    passed = generator_failures == 0 and quaternion_ok and cross_failures == 0
    return {
        "generator_failures": generator_failures,
        "quaternion_relations": quaternion_ok,
        "cross_product_failures": cross_failures,
        "samples": samples,
        "passed": passed,
    }


def kernel_suite(rng: np.random.Generator, samples: int) -> Dict[str, Any]:
    results = {label: kernel_signature_suite(build(), rng, samples) for label, build in KERNEL_SIGNATURES}
    results["euclidean_identities"] = euclidean_identities(rng, min(samples, 100))
    return results


# --------------------------------------------------------------- algebras


def algebra_suite() -> Dict[str, Any]:
    out = {}
    for name in SUITE_ALGEBRAS:
        kind, options = parse_algebra_name(name)
        report, _, failures = lie_report(kind, options)
        out[name] = {"dim": len(report["generators"]), "jacobi_failures": report["jacobi_failures"], "passed": not failures}
    return out


# ------------------------------------------------------------------- BRST


def random_hamiltonian(rng: np.random.Generator) -> HamiltonianSpec:
    """One to three monomials of total degree 1..4 in ``d <= 2`` degrees of freedom."""
    dof = int(rng.integers(1, 3))
    terms = []
    for _ in range(int(rng.integers(1, 4))):
        exponents = [0] * (2 * dof)
        for _ in range(int(rng.integers(1, MAX_BRST_DEGREE + 1))):
            exponents[int(rng.integers(0, 2 * dof))] += 1
        coefficient = format_rational(random_rational(rng, nonzero=True))
        terms.append(TermSpec(coefficient=coefficient, q=exponents[:dof], p=exponents[dof:]))
    return HamiltonianSpec(degrees_of_freedom=dof, terms=terms)


def brst_suite(rng: np.random.Generator, cases: int) -> Dict[str, Any]:
    results = {}
    for index in range(cases):
        spec = random_hamiltonian(rng)
        report, mismatches = brst_report(spec)
        vanishing = all(entry["vanishes"] for entry in report["brackets"].values())
        results[f"case{index + 1}"] = {
            "hamiltonian": report["hamiltonian"],
            "degrees_of_freedom": spec.degrees_of_freedom,
            "equations_match": not mismatches,
            "brackets_vanish": vanishing,
            "passed": not mismatches and vanishing,
        }
    return results


# --------------------------------------------------------------- geometry


def geometry_suite(grid: int) -> Dict[str, Any]:
    """Surface charts on the full grid, the three-sphere on at most ``THREE_SPHERE_GRID`` points per axis."""
    out = {}
    charts = (
        ("sphere:1", sphere(1.0), grid),
        ("sphere:2", sphere(2.0), grid),
        ("torus:2:1", torus(2.0, 1.0), grid),
        ("sphere3:1", three_sphere(1.0), min(grid, THREE_SPHERE_GRID)),
    )
    for label, chart, points in charts:
        result = geometry_report(chart, points)
        rows = result["rows"]
        worst = {
            column: max(row[column] for row in rows)
            for column in ("christoffel_agreement", "compatibility", "cartan_residual", "ricci_identity_residual", "bianchi_residual")
        }
        if result["expected_curvature"] is not None and "K" in rows[0]:
            worst["K"] = max(abs(row["K"] - result["expected_curvature"]) for row in rows)
        elif result["expected_curvature"] is not None:
            target = chart.dim * (chart.dim - 1) * result["expected_curvature"]
            worst["ricci_scalar"] = max(abs(row["ricci_scalar"] - target) for row in rows)
        out[label] = {"points": result["points"], "max_residuals": worst, "failures": len(result["failures"]), "passed": not result["failures"]}
    return out


# ------------------------------------------------------------- symplectic


def random_observable(chart, rng: np.random.Generator, max_degree: int = 3) -> Observable:
    """Integer polynomial of degree ``<= max_degree``; its hamiltonian field is at most quadratic."""
    symbols = sympy.symbols(chart.coordinate_names)
    expression = sympy.Integer(0)
    for _ in range(int(rng.integers(2, 5))):
        monomial = sympy.Integer(int(rng.integers(1, 4)) * int(rng.choice([-1, 1])))
        for _ in range(int(rng.integers(1, max_degree + 1))):
            monomial = monomial * symbols[int(rng.integers(0, len(symbols)))]
        expression = expression + monomial
    return Observable(expression, chart)


def flat_symplectic_checks(structure: SymplecticStructure, rng: np.random.Generator) -> Dict[str, Dict[str, Any]]:
    chart = structure.chart
    exact_tol = settings_manager.get("tolerances.symplectic", 1e-10)
    forms_tol = settings_manager.get("tolerances.forms", 1e-6)
    f, g, h = (random_observable(chart, rng) for _ in range(3))
    points = rng.uniform(-1.0, 1.0, size=(SYMPLECTIC_POINTS, chart.dim))

    contraction = max(structure.contraction_residual(h, x) for x in points)
    homomorphism = max(structure.bracket_homomorphism_residual(f, g, x, EXACT_FIELD_STEP) for x in points)
    lie = max(structure.lie_derivative_residual(h, x, EXACT_FIELD_STEP) for x in points)
    bracket_forms = max(abs(structure.poisson_bracket(f, g, x) - structure.poisson_bracket_tensor(f, g, x)) for x in points)
    duality = [duality_residuals(structure, x) for x in points]
    return {
        "contraction": check(contraction, exact_tol),
        "bracket_homomorphism": check(homomorphism, exact_tol),
        "lie_derivative": check(lie, exact_tol),
        "bracket_forms": check(bracket_forms, exact_tol),
        "complex_structure": check(complex_structure_residual(structure, points[0]), exact_tol),
        "canonical_one_form": check(max(canonical_one_form_residual(structure, x) for x in points), forms_tol),
        "duality_one_form": check(max(d["one_form"] for d in duality), exact_tol),
        "duality_two_form": check(max(d["two_form"] for d in duality), exact_tol),
    }


def noether_suite() -> Dict[str, Any]:
    """Planar angular momentum of the isotropic oscillator along its RK4 flow."""
    chart = cotangent(plane(2))
    structure = symplectic_structures(chart)
    h = Observable("(q1**2 + q2**2 + p1**2 + p2**2)/2", chart)
    f = Observable("q1*p2 - q2*p1", chart)
    return structure.noether_check(h, f, [1.0, 0.2, -0.3, 0.8])


def symplectic_suite(rng: np.random.Generator, grid: int) -> Dict[str, Any]:
    out: Dict[str, Any] = {}
    for dof in (1, 2, 3):
        structure = symplectic_structures(cotangent(plane(dof)))
        checks = flat_symplectic_checks(structure, rng)
        kahler = kahler_compatibility(dof)
        checks["kahler"] = {"passed": kahler["passed"]}
        out[f"dof{dof}"] = {"checks": checks, "passed": all(c["passed"] for c in checks.values())}
    out["noether"] = noether_suite()
    momentum = momentum_map_angular()
    out["momentum_map"] = {"passed": momentum.passed, "equivariance": momentum.equivariance_residuals}
    out["circle_action"] = circle_action_s2(grid)
    return out


# ------------------------------------------------------------- rigid body


def rigid_body_suite(rng: np.random.Generator) -> Dict[str, Any]:
    moments = (1.0, 2.0, 3.0)
    l0 = [float(v) for v in rng.uniform(0.2, 1.0, size=3)]
    report, _ = rigid_body_run(moments, l0)
    study = convergence_study(RigidBodyState.initial(l0), InertiaOperator.principal(moments))
    order = min(study["orders"])
    report["checks"]["convergence_order"] = {"value": order, "tolerance": MIN_CONVERGENCE_ORDER, "passed": order >= MIN_CONVERGENCE_ORDER}
    cloud = InertiaOperator.from_mass_samples([1.0] * 4, [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0]])
    mass_error = float(np.max(np.abs(np.array(cloud.moments) - np.array([2.0, 2.0, 4.0]))))
    report["checks"]["mass_samples"] = check(mass_error, 1e-12)
    report["convergence"] = study
    report["passed"] = all(c["passed"] for c in report["checks"].values())
    return report


# ---------------------------------------------------------------- command


def _suite_failures(name: str, results: Dict[str, Any]) -> List[Failure]:
    failures: List[Failure] = []
    for key, value in results.items():
        if isinstance(value, dict) and "passed" in value and not value["passed"]:
            failures.append({"check": f"{name}:{key}", "message": f"{name} suite check {key} failed"})
    return failures


def run_suites(seed: int, samples: int, grid: int, only: Sequence[str] = ()) -> Dict[str, Any]:
    """Runs the named suites (all when ``only`` is empty) from one seeded generator."""
    rng = np.random.default_rng(seed)
    runners: Dict[str, Callable[[], Dict[str, Any]]] = {
        "kernel": lambda: kernel_suite(rng, samples),
        "algebra": algebra_suite,
        "brst": lambda: brst_suite(rng, min(BRST_CASES, samples)),
        "geometry": lambda: geometry_suite(grid),
        "symplectic": lambda: symplectic_suite(rng, grid),
        "rigid_body": lambda: rigid_body_suite(rng),
    }
    results = {}
    for name, runner in runners.items():
        if only and name not in only:
            continue
        with performance_monitor(f"property-suite:{name}"):
            results[name] = runner()
    return results


class PropertySuiteCommand(BaseCommand):
    """Command for the randomized property suites"""

    def __init__(self):
        super().__init__(name="property-suite", description="Runs randomized identity checks for every module")
        self.parameters = {
            "seed": "int",  # Generator seed
            "samples": "int",  # Random triples per kernel signature
            "suites": "list",  # Optional subset of suite names
        }

    def execute(self, config: RunConfig) -> CommandReport:
        only = tuple(config.parameters.get("suites", ()))
        results = run_suites(config.seed, config.samples, config.grid, only)
        failures = iter_failures(_suite_failures(name, value) for name, value in results.items())
        if "rigid_body" in results:
            failures += failures_from_checks(results["rigid_body"]["checks"], "rigid_body:")
        self.logger.info(f"Property suites finished with {len(failures)} failures")
        return self.build_report(config, {"seed": config.seed, "samples": config.samples, "suites": results}, failures)
