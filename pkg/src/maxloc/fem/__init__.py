"""P1 finite elements for torsion, ground state and affine forcing on convex domains."""
from .assembly import SparseSystem, assemble, assemble_full, element_mass, element_stiffness
from .locate import fit_quadratic, locate_max
from .mesh import Mesh, mesh_polygon, read_polygon_file, refine
from .solvers import (AffineProblem, Field, first_eigenvalue, pcg, solve_affine,
                      solve_groundstate, solve_torsion)

__all__ = [
    "AffineProblem", "Field", "Mesh", "SparseSystem", "assemble", "assemble_full",
    "element_mass", "element_stiffness", "first_eigenvalue", "fit_quadratic",
    "locate_max", "mesh_polygon", "pcg", "read_polygon_file", "refine",
    "solve_affine", "solve_groundstate", "solve_torsion",
]
