"""Khovanov chain complexes: full cube and the tangle scan."""

from .graded import (BAR_NATAN, LEE, LEE_REDUCED, NONE, Deformation,
                     DeformationMismatch, GradedComplex, NonUnitPivot,
                     deformation_for, dump, gauss_cancel, load, simplify,
                     verify_d_squared)
from .cube import CubeTooLarge, build_full_cube
from .tangle import (ResourceCapExceeded, deloop, scan_build, scan_order,
                     scan_reduced, scan_tangle)
