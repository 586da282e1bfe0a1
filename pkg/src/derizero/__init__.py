"""derizero: exact representation-theory toolkit for the derived-dimension-zero
decision on finite-dimensional algebras.

Layers, bottom up: exact linear algebra (`linalg`), algebras presented by
quivers with relations (`algebra`), module theory with Krull-Schmidt
decomposition (`modules`), graded algebras and the window census (`graded`),
trivial extensions (`trivext`), bounded complexes of projectives
(`complexes`), and the verdict pipeline (`derdim`).
"""

from .field import Field, GF, QQ
from .linalg import ExactMatrix, rref, solve, kernel_basis
from .algebra import (Algebra, QuiverPresentation, build_algebra,
                      dual_bimodule, cartan_matrix, cartan_coxeter,
                      AlgebraError, CoxeterUndefinedError)
from .modules import (Module, hom_space, krull_schmidt, is_indecomposable,
                      lift_idempotent, projective_cover, syzygy,
                      injective_hull, cosyzygy, gldim, module_isomorphic,
                      simple_module, projective_module, injective_module,
                      regular_module, random_module)
from .graded import (GradedAlgebra, GradedModule, trivially_graded,
                     degree_shift, forget, bounds, graded_syzygy,
                     graded_cosyzygy, syzygy_bottom_report,
                     cosyzygy_top_report, syzygy_orbit, window_census,
                     graded_simple, graded_projective)
from .trivext import TrivialExtension, trivial_extension, check_selfinjective
from .complexes import (ProjComplex, is_minimal, minimal_decomposition,
                        htp_ideal, ks_decompose_complex, brutal_truncate,
                        minimal_resolution, strong_gldim_search,
                        census_indecomposables, random_complex,
                        complex_isomorphic, stalk_complex, BudgetError)
from .derdim import (Verdict, derdim_upper_bound, dynkin_filter,
                     decide_derdim_zero, crosscheck_trivext)

__all__ = [
    "Field", "GF", "QQ", "ExactMatrix", "rref", "solve", "kernel_basis",
    "Algebra", "QuiverPresentation", "build_algebra", "dual_bimodule",
    "cartan_matrix", "cartan_coxeter", "AlgebraError",
    "CoxeterUndefinedError",
    "Module", "hom_space", "krull_schmidt", "is_indecomposable",
    "lift_idempotent", "projective_cover", "syzygy", "injective_hull",
    "cosyzygy", "gldim", "module_isomorphic", "simple_module",
    "projective_module", "injective_module", "regular_module",
    "random_module",
    "GradedAlgebra", "GradedModule", "trivially_graded", "degree_shift",
    "forget", "bounds", "graded_syzygy", "graded_cosyzygy",
    "syzygy_bottom_report", "cosyzygy_top_report", "syzygy_orbit",
    "window_census", "graded_simple", "graded_projective",
    "TrivialExtension", "trivial_extension", "check_selfinjective",
    "ProjComplex", "is_minimal", "minimal_decomposition", "htp_ideal",
    "ks_decompose_complex", "brutal_truncate", "minimal_resolution",
    "strong_gldim_search", "census_indecomposables", "random_complex",
    "complex_isomorphic", "stalk_complex", "BudgetError",
    "Verdict", "derdim_upper_bound", "dynkin_filter", "decide_derdim_zero",
    "crosscheck_trivext",
]
