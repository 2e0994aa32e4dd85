#include "support/mutation.hpp"

#include <stdexcept>

#include "qhopf/twisting.hpp"

namespace mutation {

using namespace qhopf;

std::string name(Target t) {
  switch (t) {
    case Target::phi: return "Phi";
    case Target::R: return "R";
    case Target::S: return "S";
    case Target::alpha: return "alpha";
    case Target::beta: return "beta";
  }
  return "?";
}

namespace {

Scalar nonzero(SplitMix64& rng, const Field& f) {
  while (true) {
    Scalar s = random_scalar(rng, f);
    if (!s.is_zero()) return s;
  }
}

SparseTensor bump(SplitMix64& rng, const SparseTensor& t) {
  Key key;
  if (!t.is_zero() && rng.below(2) == 0) {
    key = t.entries()[rng.below(t.nnz())].key;
  } else {
    key = rng.below(t.slots());
  }
  TensorBuilder b(t.field(), t.dim(), t.arity());
  b.add(t, Scalar::one(t.field()));
  b.add(key, nonzero(rng, t.field()));
  return std::move(b).build();
}

}  // namespace

QuasiHopfDatum mutate(const QuasiHopfDatum& d, Target target, std::uint64_t seed) {
  SplitMix64 rng(seed * 0x100000001b3ULL + static_cast<std::uint64_t>(target));
  DatumParts p = d.parts();
  p.phi_inverse.reset();
  switch (target) {
    case Target::phi: p.phi = bump(rng, p.phi); break;
    case Target::R:
      if (!p.R) throw std::invalid_argument("no R to mutate");
      p.R = bump(rng, *p.R);
      break;
    case Target::S: {
      const int row = static_cast<int>(rng.below(static_cast<std::uint64_t>(d.dim())));
      std::vector<std::vector<Entry>> rows;
      for (int i = 0; i < d.dim(); ++i) {
        rows.push_back(i == row ? bump(rng, d.antipode().image(i)).entries() : d.antipode().row(i));
      }
      p.antipode = LinearMap(d.field(), d.dim(), 1, std::move(rows));
      break;
    }
    case Target::alpha: p.alpha = bump(rng, p.alpha); break;
    case Target::beta: p.beta = bump(rng, p.beta); break;
  }
  return QuasiHopfDatum(std::move(p));
}

}  // namespace mutation
