"""Exact computations with trivial extension algebras ``L + C`` of finite-dimensional algebras.

The main entry points are :func:`asid_verdict` (is ``L + C`` Iwanaga-Gorenstein,
and with which asid number), :func:`enumerate_ind_cm` (its Cohen-Macaulay
modules) and :func:`classify_asid_bimodules` (brute-force search over small
bimodules).
"""

from .algebra import FDAlgebra, PathPresentation, Quiver, build_path_algebra
from .bimodule import Bimodule
from .classify import ClassificationRun, classify_asid_bimodules, enumerate_thick_subcats_dynkin, negative_search
from .complexes import Complex
from .engine import (AsidReport, Caps, CMReport, analyze_tensor_bimodule, asid_verdict, enumerate_ind_cm,
                     k0_rank_report)
from .graded import GradedModule, TrivialExtension, build_trivial_extension
from .linalg import Field, Matrix
from .modules import FDModule
from .specfile import load_spec, parse_spec

__version__ = "0.1.0"

__all__ = [
    "AsidReport", "Bimodule", "CMReport", "Caps", "ClassificationRun", "Complex", "FDAlgebra", "FDModule",
    "Field", "GradedModule", "Matrix", "PathPresentation", "Quiver", "TrivialExtension",
    "analyze_tensor_bimodule", "asid_verdict", "build_path_algebra", "build_trivial_extension",
    "classify_asid_bimodules", "enumerate_ind_cm", "enumerate_thick_subcats_dynkin", "k0_rank_report",
    "load_spec", "negative_search", "parse_spec",
]
