#pragma once

#include <optional>

#include "qhopf/datum.hpp"
#include "qhopf/report.hpp"

namespace qhopf {

struct DrinfeldElements {
  SparseTensor u;
  SparseTensor u_inv;
  std::optional<SparseTensor> u_tilde;
};

/// u = Σ S(ȲβS(Z̄)) S(t) α s X̄ and its inverse. A non-invertible u throws
/// InternalInconsistency.
const DrinfeldElements& drinfeld_u(const QuasiHopfDatum& d);

/// ε(u) = 1, S²(a) = u a u⁻¹, Δ(u) = F⁻¹ (S⊗S)(F') (u⊗u) (R'R)⁻¹.
CheckReport check_drinfeld_props(const QuasiHopfDatum& d, const CheckOptions& opts = {});

/// u_x = x S(x⁻¹) u with u_x formed in modify_antipode(d, x).
CheckReport check_u_under_modification(const QuasiHopfDatum& d, const SparseTensor& x,
                                       const CheckOptions& opts = {});

/// ũ = Σ Z̄ s β S(t) S(S(X̄) α Ȳ), checked against the Drinfel'd element of
/// op_cop(d); throws InternalInconsistency when they differ.
const SparseTensor& u_tilde(const QuasiHopfDatum& d);
SparseTensor u_tilde_formula(const QuasiHopfDatum& d);

/// ũ by both routes and u = S(ũ).
CheckReport check_u_tilde(const QuasiHopfDatum& d, const CheckOptions& opts = {});

}  // namespace qhopf
