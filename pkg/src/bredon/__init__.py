"""Exact Bredon cohomology of finite C_{p^n}-CW complexes with rational
coefficient systems, and the Eilenberg-MacLane bookkeeping built on it."""

from .cohomology import (CochainComplex, CohomologyRow, CohomologyTable, cochain_complex,
                         cohomology, cohomology_table, euler_characteristic, quotient_oracle)
from .corpus import builtin, corpus
from .gcw import (GCWComplex, RepresentationDescriptor, fixed_points, quotient, rep_sphere,
                  restrict, smash, validate_complex, wedge)
from .homotopy import (EMDecomposition, EMFactor, LGoodVerdict, lgood_check, loop_shift,
                       mapping_decomposition, nullification_truncate)
from .orbitcat import (CoefficientSystem, GroupSpec, OrbitMorphism, compose, constant_system,
                       hom_set, validate_system)

__version__ = "0.1.0"
