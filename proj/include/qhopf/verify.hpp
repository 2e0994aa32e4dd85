#pragma once

#include "qhopf/datum.hpp"
#include "qhopf/report.hpp"

namespace qhopf {

CheckReport verify_quasi_bialgebra(const QuasiHopfDatum& d, const CheckOptions& opts = {});
CheckReport verify_quasi_hopf(const QuasiHopfDatum& d, const CheckOptions& opts = {});
/// Throws MissingR when d has no R-matrix.
CheckReport verify_quasitriangular(const QuasiHopfDatum& d, const CheckOptions& opts = {});

/// All layers up to and including `level`. The ribbon layer runs is_ribbon
/// on the datum's v.
CheckReport verify_level(const QuasiHopfDatum& d, Level level, const CheckOptions& opts = {});

}  // namespace qhopf
