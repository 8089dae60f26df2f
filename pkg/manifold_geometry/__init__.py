"""Differential geometry on embedded vector manifolds, evaluated pointwise on charts."""

from .brackets import (
    directional_derivative,
    graded_symmetry_residual,
    jacobi_lie_bracket,
    jacobi_lie_bracket_ambient,
    jacobi_lie_bracket_field,
    schouten_nijenhuis,
    schouten_nijenhuis_field,
    super_jacobi_residual,
)
from .charts import (
    Chart,
    ChartSpec,
    chart_from_spec,
    cotangent,
    cylinder,
    load_chart,
    plane,
    sphere,
    three_sphere,
    torus,
    torus_gaussian_curvature,
)
from .connection import (
    christoffel,
    christoffel_extrinsic,
    christoffel_metric,
    christoffel_report,
    compatibility_residual,
    covariant_derivative,
    metric_derivatives,
)
from .curvature import (
    CurvatureReport,
    curvature,
    curvature_bivector,
    curvature_operator,
    first_cartan_residual,
    gaussian_curvature,
    ricci_identity_residual,
    ricci_scalar,
    ricci_tensor,
    riemann,
    second_bianchi_residual,
    shape_bivector,
    shape_report,
)
from .fields import (
    ComponentField,
    Components,
    constant_field,
    random_polynomial_field,
    scalar_field,
    vector_components,
    vector_field,
)
from .forms import (
    FormField,
    cartan_magic,
    coderivative,
    coordinate_free_exterior_derivative,
    dd_residual,
    divergence_coderivative,
    evaluate_on,
    exterior_derivative,
    exterior_derivative_field,
    hodge,
    hodge_field,
    interior_product,
    interior_product_field,
    lie_derivative,
    volume_form,
    wedge_forms,
)
from .frames import FrameData, frames_at, metric_at
from .noncoordinate import (
    NonCoordinateReport,
    coordinate_frame,
    frame_structure_summary,
    noncoordinate_frame,
    sphere_orthonormal_frame,
)
from .projector import (
    idempotence_residual,
    normal_part,
    normal_projection,
    project,
    project_at,
    projection_matrix,
    tangent_pseudoscalar,
)
from .symplectic import (
    Observable,
    SymplecticStructure,
    canonical_one_form,
    canonical_one_form_residual,
    complex_structure_residual,
    darboux_omega,
    duality_one_form,
    duality_residuals,
    duality_two_form,
    kahler_compatibility,
    symplectic_structures,
)
from .tables import geometry_row, geometry_table, grid_points, table_failures

__all__ = [
    "Chart",
    "ChartSpec",
    "ComponentField",
    "Components",
    "CurvatureReport",
    "FormField",
    "FrameData",
    "NonCoordinateReport",
    "Observable",
    "SymplecticStructure",
    "canonical_one_form",
    "canonical_one_form_residual",
    "cartan_magic",
    "chart_from_spec",
    "christoffel",
    "christoffel_extrinsic",
    "christoffel_metric",
    "christoffel_report",
    "coderivative",
    "compatibility_residual",
    "complex_structure_residual",
    "constant_field",
    "coordinate_frame",
    "coordinate_free_exterior_derivative",
    "cotangent",
    "covariant_derivative",
    "curvature",
    "curvature_bivector",
    "curvature_operator",
    "cylinder",
    "darboux_omega",
    "dd_residual",
    "directional_derivative",
    "divergence_coderivative",
    "duality_one_form",
    "duality_residuals",
    "duality_two_form",
    "evaluate_on",
    "exterior_derivative",
    "exterior_derivative_field",
    "first_cartan_residual",
    "frame_structure_summary",
    "frames_at",
    "gaussian_curvature",
    "geometry_row",
    "geometry_table",
    "graded_symmetry_residual",
    "grid_points",
    "hodge",
    "hodge_field",
    "idempotence_residual",
    "interior_product",
    "interior_product_field",
    "jacobi_lie_bracket",
    "jacobi_lie_bracket_ambient",
    "jacobi_lie_bracket_field",
    "kahler_compatibility",
    "lie_derivative",
    "load_chart",
    "metric_at",
    "metric_derivatives",
    "noncoordinate_frame",
    "normal_part",
    "normal_projection",
    "plane",
    "project",
    "project_at",
    "projection_matrix",
    "random_polynomial_field",
    "ricci_identity_residual",
    "ricci_scalar",
    "ricci_tensor",
    "riemann",
    "scalar_field",
    "schouten_nijenhuis",
    "schouten_nijenhuis_field",
    "second_bianchi_residual",
    "shape_bivector",
    "shape_report",
    "sphere",
    "sphere_orthonormal_frame",
    "super_jacobi_residual",
    "symplectic_structures",
    "table_failures",
    "tangent_pseudoscalar",
    "three_sphere",
    "torus",
    "torus_gaussian_curvature",
    "vector_components",
    "vector_field",
    "wedge_forms",
]
