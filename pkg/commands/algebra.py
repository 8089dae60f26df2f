"""``algebra NAME``: Clifford product tables and bivector Lie algebras."""

from typing import Any, Dict, List, Tuple

from app_types.report_types import AlgebraReport, CommandReport, Failure
from exceptions import InputSpecError
from lie_rotor import BivectorAlgebra, complex_structure, jacobi_residuals, make_algebra
from multivector_core import MetricSignature, Multivector, commutator_product, multiplication_table
from scalar_ring import format_rational

from . import BaseCommand
from .run_config import RunConfig

MAX_CLIFFORD_DIM = 6
MAX_PAIRED_N = 4

LORENTZ_METRICS = {"std": "standard", "nonstd": "nonstandard"}


def clifford_signature(dim: int, kind: str) -> MetricSignature:
    if kind == "euclid":
        return MetricSignature.euclidean(dim)
    if kind in ("minkowski", "minkowski-std"):
        if dim != 4:
            raise InputSpecError(f"Minkowski signatures are four-dimensional, got {dim}", "algebra")
        return MetricSignature.minkowski("standard" if kind == "minkowski-std" else "nonstandard")
    if kind == "symplectic":
        if dim % 2:
            raise InputSpecError(f"Symplectic signatures need an even dimension, got {dim}", "algebra")
        return MetricSignature.symplectic_darboux(dim // 2)
    raise InputSpecError(f"Unknown Clifford signature {kind!r}", "algebra")


def parse_algebra_name(name: str) -> Tuple[str, Dict[str, Any]]:
    """``clifford:d:kind``, ``so3``, ``lorentz:std|nonstd``, ``un:n`` or ``gln:n``.

    Raises:
        InputSpecError: For any other name.
    """
    parts = name.strip().split(":")
    head = parts[0]
    try:
        if head == "clifford" and len(parts) == 3:
            dim = int(parts[1])
            if not 1 <= dim <= MAX_CLIFFORD_DIM:
                raise InputSpecError(f"Clifford dimension must be 1..{MAX_CLIFFORD_DIM}", "algebra")
            return "clifford", {"dim": dim, "kind": parts[2]}
        if head == "so3" and len(parts) == 1:
            return "so3", {}
        if head == "lorentz" and len(parts) <= 2:
            metric = parts[1] if len(parts) == 2 else "nonstd"
            if metric not in LORENTZ_METRICS:
                raise InputSpecError(f"Lorentz metric must be std or nonstd, got {metric!r}", "algebra")
            return "lorentz", {"metric": LORENTZ_METRICS[metric]}
        if head in ("un", "gln") and len(parts) == 2:
            n = int(parts[1])
            if not 1 <= n <= MAX_PAIRED_N:
                raise InputSpecError(f"{head} needs 1 <= n <= {MAX_PAIRED_N}", "algebra")
            return head, {"n": n}
    except ValueError as e:
        raise InputSpecError(f"Malformed algebra name {name!r}", "algebra", e) from e
    raise InputSpecError(f"Unknown algebra {name!r}", "algebra")


def _format_terms(terms: Dict[int, Any], labels: List[str]) -> str:
    if not terms:
        return "0"
    return " + ".join(f"{format_rational(c)}*{labels[mask]}" for mask, c in terms.items())


def blade_labels(signature: MetricSignature) -> List[str]:
    names = signature.generator_names
    return ["".join(names[i] for i in range(signature.dim) if mask >> i & 1) or "1" for mask in range(1 << signature.dim)]


def clifford_report(dim: int, kind: str) -> Tuple[AlgebraReport, List[Dict[str, Any]]]:
    signature = clifford_signature(dim, kind)
    labels = blade_labels(signature)
    rows = [
        {"left": labels[a], "right": labels[b], "product": _format_terms(terms, labels)}
        for a, b, terms in multiplication_table(signature)
    ]
    report: AlgebraReport = {
        "algebra": f"clifford:{dim}:{kind}",
        "signature": signature.name,
        "kind": signature.kind,
        "blades": labels,
    }
    return report, rows


def complex_structure_residuals(algebra: BivectorAlgebra) -> Dict[str, Multivector]:
    """``B x J`` for every u(n) generator; all vanish."""
    j = complex_structure(algebra)
    return {name: commutator_product(b, j) for name, b in zip(algebra.names, algebra.generators)}


def lie_report(kind: str, options: Dict[str, Any]) -> Tuple[Dict[str, Any], List[Dict[str, Any]], List[Failure]]:
    algebra = make_algebra(kind, options.get("n", 2), options.get("metric", "nonstandard"))
    report = algebra.to_rows()
    jacobi = jacobi_residuals(algebra)
    report["jacobi_failures"] = len(jacobi)
    failures: List[Failure] = [
        {
            "check": "jacobi",
            "message": f"Jacobi identity fails for {algebra.names[i]}, {algebra.names[j]}, {algebra.names[k]}",
        }
        for i, j, k, _ in jacobi
    ]
    if kind == "un":
        residuals = complex_structure_residuals(algebra)
        report["complex_structure_commutators"] = residuals
        failures += [
            {"check": "complex_structure", "message": f"{name} x J = {value}"}
            for name, value in residuals.items()
            if not value.is_zero
        ]
    return report, report["structure_constants"], failures


class AlgebraCommand(BaseCommand):
    """Command for multiplication tables and bivector algebras"""

    def __init__(self):
        super().__init__(name="algebra", description="Emits Clifford product tables or structure constants")
        self.parameters = {"name": "str"}  # clifford:d:kind, so3, lorentz:std|nonstd, un:n, gln:n

    def execute(self, config: RunConfig) -> CommandReport:
        if not config.name:
            raise InputSpecError("algebra needs a NAME", "algebra")
        kind, options = parse_algebra_name(config.name)
        self.logger.info(f"Building algebra {config.name}")
        if kind == "clifford":
            report, rows = clifford_report(options["dim"], options["kind"])
            return self.build_report(config, report, [], rows)
        report, rows, failures = lie_report(kind, options)
        return self.build_report(config, report, failures, rows)
