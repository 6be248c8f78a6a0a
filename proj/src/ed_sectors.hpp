#pragma once

#include "qcpd/models.hpp"

namespace qcpd::detail {

/// Block diagonalization in momentum sectors combined with total-Sz sectors
/// (when jx == jy) or spin-flip parity sectors otherwise. Returns the
/// translation-averaged bond observables per eigenstate.
ThermalSolution diagonalize_sectors(const ModelSpec& spec);

}  // namespace qcpd::detail
