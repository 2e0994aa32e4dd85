#pragma once

#include <string>
#include <vector>

#include "qhopf/datum.hpp"

namespace qhopf {

/// Z_{n1} x ... x Z_{nr}; elements are indexed in mixed radix, identity 0.
class FiniteAbelianGroup {
 public:
  explicit FiniteAbelianGroup(std::vector<int> factors);
  /// "Z2", "Z3", "Z2xZ2", ...
  static FiniteAbelianGroup parse(std::string_view name);

  const std::vector<int>& factors() const noexcept { return factors_; }
  int order() const noexcept { return order_; }
  std::vector<int> element(int index) const;
  int index(const std::vector<int>& element) const;
  int add(int a, int b) const;
  int neg(int a) const;
  std::string name() const;

 private:
  std::vector<int> factors_;
  int order_;
};

/// Normalized 3-cocycle ω: G³ → K^×.
struct Cocycle3 {
  FiniteAbelianGroup group;
  Field field;
  std::vector<Scalar> values;  // values[(a*|G| + b)*|G| + c]
  int q = 0;

  const Scalar& operator()(int a, int b, int c) const {
    const int n = group.order();
    return values[(static_cast<std::size_t>(a) * n + b) * n + c];
  }
  bool is_trivial() const;
};

/// Throws PreconditionError unless ω is normalized and satisfies the cocycle
/// identity for all quadruples.
void verify_cocycle(const Cocycle3& omega);

/// ω(a,b,c) = ζ_n^{q·a·⌊(b+c)/n⌋} on Z_n. Throws NoSuchRoot.
Cocycle3 cocycle_zn(int n, int q, const Field& field);
/// Product of the cyclic cocycles with the same q on every factor.
Cocycle3 cocycle_for(const FiniteAbelianGroup& g, int q, const Field& field);
Cocycle3 trivial_cocycle(const FiniteAbelianGroup& g, const Field& field);

/// Multiplication table of a finite group: mul[a*n + b], identity 0.
struct GroupTable {
  std::string name;
  int order;
  std::vector<int> mul;
  std::vector<int> inv;
};
GroupTable table_of(const FiniteAbelianGroup& g);
GroupTable symmetric_group_s3();

/// K[G] with Δ(g) = g⊗g, S(g) = g⁻¹, trivial Φ and R = 1⊗1.
QuasiHopfDatum group_algebra(const GroupTable& g, const Field& field);
/// Functions on G with associator Σ ω(g,h,k)⁻¹ δ_g⊗δ_h⊗δ_k. Hopf level.
QuasiHopfDatum function_algebra(const Cocycle3& omega);
/// Twisted double D^ω(G) for abelian G, with block metadata. With trivial ω
/// the closed-form ribbon element is attached as v.
QuasiHopfDatum dpr_double(const Cocycle3& omega);
/// Sweedler's four-dimensional Hopf algebra over Q with R₀.
QuasiHopfDatum sweedler();

struct NamedExample {
  std::string name;
  QuasiHopfDatum datum;
};

/// kind ∈ {group, function, dpr, sweedler}.
QuasiHopfDatum build_example(std::string_view kind, std::string_view group, int q, const Field& field);

/// The example data used by the acceptance suite: K[Z2], F(Z2)_ω, F(Z3)_ω,
/// Sweedler, D(Z2), D^ω(Z2), D(Z3), D^ω(Z3).
std::vector<NamedExample> standard_examples();

}  // namespace qhopf
