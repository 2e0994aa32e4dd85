#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qhopf/datum.hpp"
#include "qhopf/report.hpp"

namespace qhopf {

struct RTwistElements {
  SparseTensor alpha_hat;    // Σ S(s̄)αt̄
  SparseTensor beta_hat;     // Σ sβS(t)
  SparseTensor alpha_check;  // Σ S(t)αs
  SparseTensor beta_check;   // Σ t̄βS(s̄)
  SparseTensor u_hat;
  SparseTensor u_hat_inv;
  SparseTensor u_check;
  SparseTensor u_check_inv;
};

/// All eight elements by their explicit formulas. The displayed inverses and
/// the relations S(a) = ûS⁻¹(a)û⁻¹, α̂ = ûS⁻¹(α), β̂ = S⁻¹(β)û⁻¹ (and the
/// ǔ analogues) are verified; failure throws InternalInconsistency.
const RTwistElements& rtwist_elements(const QuasiHopfDatum& d);

/// The same relations as named checks, plus the evaluation/coevaluation
/// lemma, u = ǔ = S(û⁻¹), ǎ = S(α)u and ûS⁻¹(ǔ) = 1.
CheckReport check_rtwist_relations(const QuasiHopfDatum& d, const CheckOptions& opts = {});

/// Exchanging R with R'⁻¹ exchanges (α̂, β̂, û) with (ǎ, β̌, ǔ).
CheckReport check_rtwist_symmetry(const QuasiHopfDatum& d, const CheckOptions& opts = {});

/// Elements of the R-twist family formed in op_cop(d) against their
/// counterparts in d.
CheckReport check_opcop_table(const QuasiHopfDatum& d, const CheckOptions& opts = {});

/// Nonzero, central, Δ(v) = (R'R)(v⊗v), S(v) = v; derived ε(v) = 1. Throws
/// InternalInconsistency when the defining checks pass but v is singular.
CheckReport is_ribbon(const QuasiHopfDatum& d, const SparseTensor& v, const CheckOptions& opts = {});

/// v²ǎ = α̂ and v²β̂ = β̌.
CheckReport check_ribbon_lemma(const QuasiHopfDatum& d, const SparseTensor& v,
                               const CheckOptions& opts = {});

/// v⁻² = uS(u), with the intermediate step v² = ûǔ⁻¹.
CheckReport check_main_theorem(const QuasiHopfDatum& d, const SparseTensor& v,
                               const CheckOptions& opts = {});

/// Basis of the center of A.
std::vector<SparseTensor> center(const QuasiHopfDatum& d);

enum class Provenance { user, closed_form, solver };
std::string to_string(Provenance p);

struct RibbonCandidate {
  SparseTensor v;
  Provenance provenance;
};

enum class RibbonStrategy { automatic, blocks, center };
RibbonStrategy parse_strategy(std::string_view text);

struct RibbonSearch {
  std::vector<RibbonCandidate> candidates;  // sorted by coordinates
  std::string region;                       // what was enumerated
  std::uint64_t examined = 0;
};

/// Elements passing is_ribbon. With block metadata the central square roots of
/// (uS(u))⁻¹ are found block by block; otherwise all |K|^dim Z(A) central
/// elements are enumerated and tested against the axioms directly. The
/// enumerated region must not exceed `budget` (BudgetExceeded otherwise, and
/// always over Q).
RibbonSearch find_ribbon(const QuasiHopfDatum& d, std::uint64_t budget,
                         RibbonStrategy strategy = RibbonStrategy::automatic);

}  // namespace qhopf
