#pragma once

#include <cstdint>
#include <initializer_list>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "qhopf/linalg.hpp"
#include "qhopf/scalar.hpp"

namespace qhopf {

/// Mixed-radix encoding of a multi-index (i_1,...,i_k) in [0,n)^k; the
/// numeric order of keys is the lexicographic order of multi-indices.
using Key = std::uint64_t;

struct Entry {
  Key key;
  Scalar value;
};

/// Element of A^{⊗k} stored as its nonzero coordinates in the tensor basis
/// e_{i_1}⊗...⊗e_{i_k}. Arity 0 is the ground field. Entries are kept sorted
/// by key and never hold zeros, so equality is coordinate equality.
class SparseTensor {
 public:
  SparseTensor(Field field, int dim, int arity);

  static SparseTensor from_entries(Field field, int dim, int arity,
                                   const std::vector<std::pair<std::vector<int>, Scalar>>& entries);
  static SparseTensor basis(Field field, int dim, int index);
  static SparseTensor constant(const Scalar& value, int dim);

  const Field& field() const noexcept { return field_; }
  int dim() const noexcept { return dim_; }
  int arity() const noexcept { return arity_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  bool is_zero() const noexcept { return entries_.empty(); }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  /// Number of basis slots, dim^arity.
  Key slots() const noexcept { return slots_; }
  Key key_of(std::span<const int> indices) const;
  std::vector<int> indices_of(Key key) const;
  int leg_index(Key key, int leg) const;

  Scalar at(std::span<const int> indices) const;
  Scalar at_key(Key key) const;

  /// Value of an arity-0 tensor.
  Scalar scalar_value() const;

  SparseTensor scaled(const Scalar& factor) const;
  SparseTensor operator-() const;
  friend SparseTensor operator+(const SparseTensor& a, const SparseTensor& b);
  friend SparseTensor operator-(const SparseTensor& a, const SparseTensor& b);
  friend bool operator==(const SparseTensor& a, const SparseTensor& b);
  friend bool operator!=(const SparseTensor& a, const SparseTensor& b) { return !(a == b); }

 private:
  friend class TensorBuilder;

  Field field_;
  int dim_;
  int arity_;
  Key slots_;
  std::vector<Entry> entries_;
};

/// Accumulates coordinates of a tensor; duplicate keys are summed.
class TensorBuilder {
 public:
  TensorBuilder(Field field, int dim, int arity);

  void add(Key key, const Scalar& value);
  void add(std::span<const int> indices, const Scalar& value);
  void add(const SparseTensor& t, const Scalar& factor);
  SparseTensor build() &&;

 private:
  SparseTensor shape_;
  bool dense_;
  std::vector<Scalar> values_;
  std::vector<char> touched_;
  std::vector<Key> order_;
  std::vector<Entry> pending_;
};

struct Term {
  int index;
  Scalar coeff;
};

/// A finite-dimensional associative unital algebra given by structure
/// constants: e_i e_j = Σ coeff·e_index over product(i, j).
class Algebra {
 public:
  Algebra(Field field, int dim, std::vector<std::vector<Term>> table, SparseTensor unit);

  const Field& field() const noexcept { return field_; }
  int dim() const noexcept { return dim_; }
  const std::vector<Term>& product(int i, int j) const {
    return table_[static_cast<std::size_t>(i) * dim_ + j];
  }
  const SparseTensor& unit() const noexcept { return unit_; }
  /// Unit of A^{⊗arity}.
  SparseTensor one(int arity) const;
  Algebra opposite() const;

  friend bool operator==(const Algebra& a, const Algebra& b);

 private:
  Field field_;
  int dim_;
  std::vector<std::vector<Term>> table_;
  SparseTensor unit_;
};

/// Linear map A → A^{⊗out_arity}, stored as the image of each basis vector.
class LinearMap {
 public:
  LinearMap(Field field, int dim, int out_arity, std::vector<std::vector<Entry>> rows);

  static LinearMap identity(Field field, int dim);
  /// m[i][j] is the coefficient of e_j in f(e_i).
  static LinearMap from_matrix(Field field, const linalg::DenseMatrix& m);

  const Field& field() const noexcept { return field_; }
  int dim() const noexcept { return dim_; }
  int out_arity() const noexcept { return out_arity_; }
  const std::vector<Entry>& row(int i) const { return rows_[static_cast<std::size_t>(i)]; }

  /// Image of one basis vector as a tensor of arity out_arity.
  SparseTensor image(int i) const;
  /// Applies the map to an element of A.
  SparseTensor operator()(const SparseTensor& x) const;

  /// Matrix form for out_arity 1.
  linalg::DenseMatrix matrix() const;

  friend bool operator==(const LinearMap& a, const LinearMap& b);

 private:
  Field field_;
  int dim_;
  int out_arity_;
  std::vector<std::vector<Entry>> rows_;
};

/// One map per leg; nullptr leaves that leg untouched.
using LegMaps = std::vector<const LinearMap*>;

/// Componentwise product in A^{⊗k}. Throws ArityMismatch for unequal arities.
SparseTensor mult(const Algebra& algebra, const SparseTensor& a, const SparseTensor& b);
/// Left-to-right product of several factors.
SparseTensor mult(const Algebra& algebra,
                  std::initializer_list<std::reference_wrapper<const SparseTensor>> factors);

SparseTensor apply_legs(const SparseTensor& t, const LegMaps& maps);
SparseTensor apply_leg(const SparseTensor& t, int leg, const LinearMap& map);
/// Applies the same map to every leg.
SparseTensor apply_all(const SparseTensor& t, const LinearMap& map);

SparseTensor flip(const SparseTensor& t, int i, int j);
/// Leg j of the result is leg perm[j] of t.
SparseTensor permute(const SparseTensor& t, std::span<const int> perm);
SparseTensor permute(const SparseTensor& t, std::initializer_list<int> perm);
/// Tensor product a ⊗ b; an arity-0 factor acts as a scalar.
SparseTensor concat(const SparseTensor& a, const SparseTensor& b);

/// Two-sided inverse in A^{⊗k}, found by solving L_t x = 1 for the left
/// multiplication operator. Throws NotInvertible.
SparseTensor invert(const Algebra& algebra, const SparseTensor& t);

/// A factor of a folded product: either a leg of the input tensor or a
/// fixed element of A.
struct Factor {
  int leg = -1;
  const SparseTensor* element = nullptr;
};
inline Factor leg(int i) { return Factor{i, nullptr}; }
inline Factor elem(const SparseTensor& e) { return Factor{-1, &e}; }

/// Output leg j of the result is the ordered product of spec[j]; summed over
/// the entries of t. Every input leg must be used exactly once.
using FoldSpec = std::vector<std::vector<Factor>>;
SparseTensor fold(const Algebra& algebra, const SparseTensor& t, const FoldSpec& spec);

/// For P of arity 2k and M of arity k: Σ P_{(1..k)} · M · P_{(k+1..2k)}.
SparseTensor sandwich(const Algebra& algebra, const SparseTensor& p, const SparseTensor& m);

/// Multiplies consecutive groups of legs: group sizes must sum to the arity.
SparseTensor multiply_legs(const Algebra& algebra, const SparseTensor& t,
                           std::span<const int> group_sizes);

}  // namespace qhopf
