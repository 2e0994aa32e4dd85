#pragma once

#include "qhopf/datum.hpp"
#include "qhopf/report.hpp"

namespace qhopf {

struct DerivedElements {
  SparseTensor gamma;
  SparseTensor delta;
  SparseTensor F;
  SparseTensor F_inv;
};

/// γ and δ by their defining double sums. The alternative double sums are
/// evaluated as well; disagreement throws InternalInconsistency.
const SparseTensor& gamma_element(const QuasiHopfDatum& d);
const SparseTensor& delta_element(const QuasiHopfDatum& d);
SparseTensor gamma_alternative(const QuasiHopfDatum& d);
SparseTensor delta_alternative(const QuasiHopfDatum& d);

/// F and F⁻¹ by their explicit formulas, checked against each other.
const DerivedElements& bigF(const QuasiHopfDatum& d);

CheckReport check_F_compat(const QuasiHopfDatum& d, const CheckOptions& opts = {});

/// S_x = x S(·) x⁻¹, α_x = xα, β_x = βx⁻¹. R and v are kept.
QuasiHopfDatum modify_antipode(const QuasiHopfDatum& d, const SparseTensor& x);

/// The x with d_prime = modify_antipode(d, x).
SparseTensor recover_modifier(const QuasiHopfDatum& d, const QuasiHopfDatum& d_prime);

/// γ_x = (x⊗x)γ, δ_x = δ(x⁻¹⊗x⁻¹), F_x = (x⊗x)FΔ(x⁻¹), with the left-hand
/// sides formed from scratch in modify_antipode(d, x).
CheckReport check_modification_laws(const QuasiHopfDatum& d, const SparseTensor& x,
                                    const CheckOptions& opts = {});

/// Reversed coproduct, associator Σ Z̄⊗Ȳ⊗X̄, inverse antipode. R' is carried
/// over when it is an R-matrix for the result.
QuasiHopfDatum coopposite(const QuasiHopfDatum& d);

/// Opposite product, reversed coproduct, associator Σ Z⊗Y⊗X, same antipode,
/// α and β exchanged, same R.
QuasiHopfDatum op_cop(const QuasiHopfDatum& d);

/// γ, δ and F of coopposite(d) against (S⁻¹⊗S⁻¹) of those of d.
CheckReport check_coopposite(const QuasiHopfDatum& d, const CheckOptions& opts = {});

// Helpers shared by the other modules.
SparseTensor apply_S_legs(const QuasiHopfDatum& d, const SparseTensor& t, std::initializer_list<int> legs);
SparseTensor apply_Sinv_legs(const QuasiHopfDatum& d, const SparseTensor& t,
                             std::initializer_list<int> legs);

}  // namespace qhopf
