"""KO-theory, Grothendieck-Witt and Witt groups of even-cell varieties."""

from .catalog import (SpaceData, build, exceptional, expected_table, grassmannian, point,
                      projective_space, quadric, rho, spinor, symplectic_grassmannian)
from .dga_cohomology import cohomology_dims, cohomology_representatives
from .formats import emit, parse_presentation_file, write_presentation_file
from .graded_algebra import Element, Presentation, basis_of_degree, multiply, normal_form, poincare_dims
from .ko import KOTable, gw_w_groups, ko_groups, ko_table, render
from .steenrod import Differential, SqAction, sq2, verify_d_squared_zero

__all__ = [
    "Differential", "Element", "KOTable", "Presentation", "SpaceData", "SqAction",
    "basis_of_degree", "build", "cohomology_dims", "cohomology_representatives", "emit",
    "exceptional", "expected_table", "grassmannian", "gw_w_groups", "ko_groups", "ko_table",
    "multiply", "normal_form", "parse_presentation_file", "poincare_dims", "point",
    "projective_space", "quadric", "render", "rho", "spinor", "sq2", "symplectic_grassmannian",
    "verify_d_squared_zero", "write_presentation_file",
]
