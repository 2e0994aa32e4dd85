#pragma once

#include <cstdint>

#include "qhopf/datum.hpp"
#include "qhopf/report.hpp"

namespace qhopf {

struct Twist {
  SparseTensor T;
  SparseTensor T_inv;
};

/// Inverts T and checks (ε⊗id)(T) = (id⊗ε)(T) = 1; throws InvalidTwist.
Twist make_twist(const QuasiHopfDatum& d, const SparseTensor& T);

/// Δ_T = TΔT⁻¹, Φ_T = (1⊗T)(id⊗Δ)(T)Φ(Δ⊗id)(T⁻¹)(T⁻¹⊗1), α_T = Σ S(f̄)αḡ,
/// β_T = Σ fβS(g), R_T = T'RT⁻¹. Product, counit and antipode are unchanged.
QuasiHopfDatum twist(const QuasiHopfDatum& d, const Twist& t);

/// SplitMix64, the generator behind every seeded construction.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

/// A random scalar: uniform over F_p, or an integer in [-3, 3] over Q.
Scalar random_scalar(SplitMix64& rng, const Field& field);

/// A random element of A with `terms` random coordinates.
SparseTensor random_element(SplitMix64& rng, const QuasiHopfDatum& d, int arity, int terms);

/// A random invertible element of A (retries until invert succeeds).
SparseTensor random_invertible(const QuasiHopfDatum& d, std::uint64_t seed);

/// Deterministic counit-normalized invertible twist. Throws Exhausted.
Twist random_twist(const QuasiHopfDatum& d, std::uint64_t seed);

/// The three transformation laws for γ_T, δ_T, F_T.
CheckReport check_twist_elements(const QuasiHopfDatum& d, const Twist& t, const CheckOptions& opts = {});

/// u computed in twist(d, T) equals u of d.
CheckReport check_u_twist_invariance(const QuasiHopfDatum& d, const Twist& t,
                                     const CheckOptions& opts = {});

/// The antipode as an isomorphism from op_cop(d) to the twist of d by ε(β)F.
CheckReport opcop_twist_iso(const QuasiHopfDatum& d, const CheckOptions& opts = {});

}  // namespace qhopf
