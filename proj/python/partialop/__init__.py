"""Spectra and resolvents of partial operators.

Grid functions are 1-D complex numpy arrays sampled on a uniform grid of
[0, 1]. Functionals are lists of ``(point, weight)`` atoms.
"""

from ._partialop import (
    Error,
    ClosedFormBounds,
    NeumannBounds,
    NeumannResult,
    ResolveRecord,
    ScanCell,
    SpectralClassification,
    apply_functional,
    classify_restricted,
    classify_shift,
    closed_form_bounds,
    graph_norm,
    h_zeta,
    invert_near_identity,
    invert_perturbed,
    k_zeta,
    k_zeta_norm_exact,
    neumann_bounds,
    norm_sandwich_check,
    operator_norm,
    resolve_derivative,
    residual_ode,
    resolvent_shift,
    run_scan,
    run_suite,
    spectrum_member,
)

EXAMPLE1 = []
EXAMPLE2 = [(0.0, 1.0)]
EXAMPLE3 = [(0.5, 1.0), (0.0, -1.0)]

__all__ = [name for name in dir() if not name.startswith("_")]
