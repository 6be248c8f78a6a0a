"""Quantum critical point detectors for spin-1/2 chains."""

import pkgutil

# In a build tree the compiled module sits in a sibling qcpd/ directory.
__path__ = pkgutil.extend_path(__path__, __name__)

from ._qcpd import (  # noqa: E402
    XState,
    build_xstate,
    coherence_entropy,
    estimate_qcp,
    extrapolate_to_zero,
    log_spectrum,
    max_mean_fidelity,
    min_mean_trace_distance,
    quantum_discord,
    simulate_protocol,
    spectrum_eigenvalues,
    sweep,
    thermal_correlators,
    xxz_delta1,
    xxz_delta2,
    xy_thermo_correlators,
)

SWEEP_COLUMNS = (
    "param,kT,z,xx,yy,zz,qd,theta_star,sqc_x,sqc_y,sqc_z,lqc_x,lqc_y,lqc_z,"
    "lqc_x_divergent,lqc_y_divergent,lqc_z_divergent,fmax_ext,fmax_branch,dmin_int,dmin_branch"
).split(",")

__all__ = [name for name in dir() if not name.startswith("_") and name != "pkgutil"]
