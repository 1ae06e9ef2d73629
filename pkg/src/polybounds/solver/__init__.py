"""Reference spectra: analytic, Galerkin, and Bessel-root."""
from .bessel import RootCountError, bessel_i, bessel_j, clamped_disk_char, clamped_disk_roots
from .eig import EigenConvergenceError, EigResult, NotPositiveDefiniteError, gen_sym_eig
from .galerkin import GramSet, clamped_basis_grams
from .spectra import (
    ConvergenceError,
    default_basis_size,
    disk_clamped_plate_spectrum,
    eigenfunction_moments,
    interval_buckling_eig,
    interval_buckling_spectrum,
    interval_polyharmonic_eig,
    interval_polyharmonic_spectrum,
    rectangle_spectrum,
    sphere_closed_spectrum,
    sphere_multiplicity,
)
