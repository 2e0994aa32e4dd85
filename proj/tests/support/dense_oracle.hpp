#pragma once

// Naive dense evaluator used as an independent reference. It reads the
// structure constants once and then works on flat coefficient arrays, looping
// over every index tuple.

#include <optional>
#include <vector>

#include "qhopf/datum.hpp"
#include "qhopf/tensor.hpp"

namespace oracle {

using qhopf::Field;
using qhopf::Scalar;

struct Dense {
  Field field;
  int n;
  int k;
  std::vector<Scalar> c;  // size n^k, row-major in the legs

  Dense(Field f, int n_, int k_);
  Scalar& at(const std::vector<int>& idx);
  const Scalar& at(const std::vector<int>& idx) const;
};

struct DenseAlgebra {
  Field field;
  int n;
  std::vector<Scalar> m;  // m[(i*n + j)*n + k] = coefficient of e_k in e_i e_j
  std::vector<Scalar> unit;

  explicit DenseAlgebra(const qhopf::Algebra& a);
  DenseAlgebra opposite() const;
};

// A linear map A -> A^{⊗out}, stored densely: img[i] is f(e_i).
struct DenseMap {
  int out;
  std::vector<Dense> img;

  explicit DenseMap(const qhopf::LinearMap& f);
};

Dense to_dense(const qhopf::SparseTensor& t);
qhopf::SparseTensor to_sparse(const Dense& d);

Dense one(const DenseAlgebra& a, int k);
Dense mul(const DenseAlgebra& a, const Dense& x, const Dense& y);
Dense tensor(const Dense& x, const Dense& y);
// Each map may be null for the identity.
Dense apply(const Dense& x, const std::vector<const DenseMap*>& maps);
Dense add(const Dense& x, const Dense& y);
Dense scale(const Dense& x, const Scalar& s);
Dense swap01(const Dense& x);
// Input leg i becomes output leg pos[i].
Dense arrange(const Dense& x, const std::vector<int>& pos);
// Inverse by brute-force Gauss-Jordan on the dense left-multiplication matrix.
Dense invert(const DenseAlgebra& a, const Dense& x);

// Elements of A of the form e_i.
Dense basis(Field f, int n, int i);

// The structure of a datum in dense form. Φ⁻¹ is taken from the engine and
// checked here with the oracle's own product before any formula uses it.
struct DenseDatum {
  DenseAlgebra alg;
  DenseMap delta;
  DenseMap S;
  Dense alpha;
  Dense beta;
  Dense phi;
  Dense phi_inv;
  std::optional<Dense> R;

  explicit DenseDatum(const qhopf::QuasiHopfDatum& d);
};

// γ, δ, F, F⁻¹ and u evaluated term by term from their defining double sums.
Dense gamma(const DenseDatum& d);
Dense delta(const DenseDatum& d);
Dense bigF(const DenseDatum& d);
Dense bigF_inv(const DenseDatum& d);
Dense drinfeld_u(const DenseDatum& d);

}  // namespace oracle
