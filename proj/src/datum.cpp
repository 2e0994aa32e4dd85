#include "qhopf/datum.hpp"

#include <cstdio>

#include "qhopf/io.hpp"

namespace qhopf {

std::string to_string(Level level) {
  switch (level) {
    case Level::bialgebra: return "bialgebra";
    case Level::hopf: return "hopf";
    case Level::qt: return "qt";
    case Level::ribbon: return "ribbon";
  }
  return "?";
}

Level parse_level(std::string_view text) {
  if (text == "bialgebra") return Level::bialgebra;
  if (text == "hopf") return Level::hopf;
  if (text == "qt") return Level::qt;
  if (text == "ribbon") return Level::ribbon;
  throw std::invalid_argument("unknown level '" + std::string(text) + "'");
}

namespace {

void require_element(const SparseTensor& t, const Field& f, int dim, int arity, const char* what) {
  if (!(t.field() == f)) throw FieldMismatch(std::string(what) + " lives over a different field");
  if (t.dim() != dim) throw ShapeError(std::string(what) + " has the wrong dimension");
  if (t.arity() != arity) {
    throw ShapeError(std::string(what) + " must have arity " + std::to_string(arity) + ", got " +
                     std::to_string(t.arity()));
  }
}

void require_map(const LinearMap& m, const Field& f, int dim, int out_arity, const char* what) {
  if (!(m.field() == f)) throw FieldMismatch(std::string(what) + " lives over a different field");
  if (m.dim() != dim || m.out_arity() != out_arity) {
    throw ShapeError(std::string(what) + " has the wrong shape");
  }
}

}  // namespace

QuasiHopfDatum::QuasiHopfDatum(DatumParts parts)
    : parts_(std::make_shared<const DatumParts>(std::move(parts))), cache_(std::make_shared<Cache>()) {
  const Field& f = field();
  const int n = dim();
  require_map(parts_->delta, f, n, 2, "coproduct");
  require_map(parts_->epsilon, f, n, 0, "counit");
  require_map(parts_->antipode, f, n, 1, "antipode");
  require_element(parts_->phi, f, n, 3, "associator");
  require_element(parts_->alpha, f, n, 1, "alpha");
  require_element(parts_->beta, f, n, 1, "beta");
  if (parts_->R) require_element(*parts_->R, f, n, 2, "R");
  if (parts_->v) require_element(*parts_->v, f, n, 1, "v");
  if (parts_->phi_inverse) require_element(*parts_->phi_inverse, f, n, 3, "phi_inverse");
}

const SparseTensor& QuasiHopfDatum::R() const {
  if (!parts_->R) throw MissingR();
  return *parts_->R;
}

Level QuasiHopfDatum::top_level() const noexcept {
  if (parts_->v) return Level::ribbon;
  if (parts_->R) return Level::qt;
  return Level::hopf;
}

SparseTensor QuasiHopfDatum::mul(const SparseTensor& a, const SparseTensor& b) const {
  return qhopf::mult(algebra(), a, b);
}

SparseTensor QuasiHopfDatum::mul(
    std::initializer_list<std::reference_wrapper<const SparseTensor>> f) const {
  return qhopf::mult(algebra(), f);
}

Scalar QuasiHopfDatum::eps(const SparseTensor& x) const {
  if (x.arity() != 1) throw ArityMismatch("counit of a tensor of arity != 1");
  return epsilon()(x).scalar_value();
}

const SparseTensor& QuasiHopfDatum::phi_inv() const {
  return cached<SparseTensor>("phi_inv", [this] {
    if (parts_->phi_inverse) {
      const SparseTensor& h = *parts_->phi_inverse;
      const SparseTensor unit = one(3);
      if (mul(phi(), h) == unit && mul(h, phi()) == unit) return h;
    }
    return invert(algebra(), phi());
  });
}

const LinearMap& QuasiHopfDatum::antipode_inv() const {
  return cached<LinearMap>("antipode_inv", [this] {
    auto m = linalg::inverse(antipode().matrix(), field());
    if (!m) throw NotInvertible("antipode is not bijective");
    return LinearMap::from_matrix(field(), *m);
  });
}

const SparseTensor& QuasiHopfDatum::R_inv() const {
  return cached<SparseTensor>("R_inv", [this] { return invert(algebra(), R()); });
}

const LinearMap& QuasiHopfDatum::delta_cop() const {
  return cached<LinearMap>("delta_cop", [this] {
    return map_from(*this, [this](int i) { return flip(delta().image(i), 0, 1); }, 2);
  });
}

const std::string& QuasiHopfDatum::hash() const {
  return cached<std::string>("hash", [this] {
    const std::string text = to_json(*this).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
  });
}

bool operator==(const QuasiHopfDatum& a, const QuasiHopfDatum& b) {
  const DatumParts& x = a.parts();
  const DatumParts& y = b.parts();
  return x.algebra == y.algebra && x.delta == y.delta && x.epsilon == y.epsilon && x.phi == y.phi &&
         x.antipode == y.antipode && x.alpha == y.alpha && x.beta == y.beta && x.R == y.R &&
         x.v == y.v;
}

LinearMap map_from(const QuasiHopfDatum& d, const std::function<SparseTensor(int)>& image,
                   int out_arity) {
  std::vector<std::vector<Entry>> rows(static_cast<std::size_t>(d.dim()));
  for (int i = 0; i < d.dim(); ++i) {
    const SparseTensor t = image(i);
    if (t.arity() != out_arity) throw ArityMismatch("map_from: image has the wrong arity");
    rows[i] = t.entries();
  }
  return LinearMap(d.field(), d.dim(), out_arity, std::move(rows));
}

}  // namespace qhopf
