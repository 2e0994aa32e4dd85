#include "qhopf/examples.hpp"

#include <charconv>

#include "qhopf/verify.hpp"
#include "qhopf/ribbon.hpp"

namespace qhopf {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int> factors) : factors_(std::move(factors)), order_(1) {
  if (factors_.empty()) factors_.push_back(1);
  for (int n : factors_) {
    if (n < 1) throw std::invalid_argument("invariant factors must be positive");
    order_ *= n;
  }
}

FiniteAbelianGroup FiniteAbelianGroup::parse(std::string_view name) {
  std::vector<int> factors;
  while (!name.empty()) {
    if (name.front() != 'Z') throw std::invalid_argument("group names look like Z2 or Z2xZ3");
    name.remove_prefix(1);
    int n = 0;
    auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), n);
    if (ec != std::errc() || n < 1) throw std::invalid_argument("bad cyclic factor in group name");
    name.remove_prefix(static_cast<std::size_t>(ptr - name.data()));
    factors.push_back(n);
    if (!name.empty()) {
      if (name.front() != 'x') throw std::invalid_argument("group factors are separated by 'x'");
      name.remove_prefix(1);
      if (name.empty()) throw std::invalid_argument("dangling 'x' in group name");
    }
  }
  if (factors.empty()) throw std::invalid_argument("empty group name");
  return FiniteAbelianGroup(std::move(factors));
}

std::vector<int> FiniteAbelianGroup::element(int index) const {
  std::vector<int> e(factors_.size());
  for (std::size_t i = factors_.size(); i-- > 0;) {
    e[i] = index % factors_[i];
    index /= factors_[i];
  }
  return e;
}

int FiniteAbelianGroup::index(const std::vector<int>& e) const {
  int idx = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) idx = idx * factors_[i] + e[i];
  return idx;
}

int FiniteAbelianGroup::add(int a, int b) const {
  auto x = element(a);
  const auto y = element(b);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = (x[i] + y[i]) % factors_[i];
  return index(x);
}

int FiniteAbelianGroup::neg(int a) const {
  auto x = element(a);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = (factors_[i] - x[i]) % factors_[i];
  return index(x);
}

std::string FiniteAbelianGroup::name() const {
  std::string s;
  for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? "xZ" : "Z") + std::to_string(factors_[i]);
  return s;
}

bool Cocycle3::is_trivial() const {
  for (const Scalar& v : values) {
    if (!v.is_one()) return false;
  }
  return true;
}

void verify_cocycle(const Cocycle3& w) {
  const FiniteAbelianGroup& G = w.group;
  const int n = G.order();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (!w(0, a, b).is_one() || !w(a, 0, b).is_one() || !w(a, b, 0).is_one()) {
        throw PreconditionError("cocycle is not normalized");
      }
      for (int c = 0; c < n; ++c) {
        if (w(a, b, c).is_zero()) throw PreconditionError("cocycle takes the value 0");
        for (int e = 0; e < n; ++e) {
          const Scalar lhs = w(b, c, e) * w(a, G.add(b, c), e) * w(a, b, c);
          const Scalar rhs = w(G.add(a, b), c, e) * w(a, b, G.add(c, e));
          if (lhs != rhs) throw PreconditionError("cocycle identity fails");
        }
      }
    }
  }
}

Cocycle3 cocycle_zn(int n, int q, const Field& field) {
  if (n < 1 || q < 0 || q >= n) throw std::invalid_argument("cocycle_zn needs n >= 1 and 0 <= q < n");
  Cocycle3 w{FiniteAbelianGroup({n}), field, {}, q};
  const Scalar zeta = root_of_unity(field, static_cast<unsigned>(n));
  w.values.reserve(static_cast<std::size_t>(n) * n * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) w.values.push_back(zeta.pow(static_cast<std::int64_t>(q) * a * ((b + c) / n)));
    }
  }
  verify_cocycle(w);
  return w;
}

Cocycle3 cocycle_for(const FiniteAbelianGroup& G, int q, const Field& field) {
  std::vector<Cocycle3> parts;
  for (int n : G.factors()) parts.push_back(cocycle_zn(n, q % n, field));
  const int order = G.order();
  Cocycle3 w{G, field, {}, q};
  w.values.reserve(static_cast<std::size_t>(order) * order * order);
  for (int a = 0; a < order; ++a) {
    const auto ea = G.element(a);
    for (int b = 0; b < order; ++b) {
      const auto eb = G.element(b);
      for (int c = 0; c < order; ++c) {
        const auto ec = G.element(c);
        Scalar v = Scalar::one(field);
        for (std::size_t i = 0; i < parts.size(); ++i) v *= parts[i](ea[i], eb[i], ec[i]);
        w.values.push_back(v);
      }
    }
  }
  verify_cocycle(w);
  return w;
}

Cocycle3 trivial_cocycle(const FiniteAbelianGroup& G, const Field& field) {
  const std::size_t n = static_cast<std::size_t>(G.order());
  return Cocycle3{G, field, std::vector<Scalar>(n * n * n, Scalar::one(field)), 0};
}

GroupTable table_of(const FiniteAbelianGroup& g) {
  GroupTable t{g.name(), g.order(), {}, {}};
  for (int a = 0; a < g.order(); ++a) {
    for (int b = 0; b < g.order(); ++b) t.mul.push_back(g.add(a, b));
    t.inv.push_back(g.neg(a));
  }
  return t;
}

GroupTable symmetric_group_s3() {
  // Permutations of {0,1,2} in lexicographic order; index 0 is the identity.
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto find = [&](const std::array<int, 3>& x) {
    return static_cast<int>(std::find(perms.begin(), perms.end(), x) - perms.begin());
  };
  GroupTable t{"S3", 6, {}, {}};
  for (const auto& a : perms) {
    for (const auto& b : perms) t.mul.push_back(find({a[b[0]], a[b[1]], a[b[2]]}));
    std::array<int, 3> inv{};
    for (int i = 0; i < 3; ++i) inv[a[i]] = i;
    t.inv.push_back(find(inv));
  }
  return t;
}

namespace {

using Rows = std::vector<std::vector<Entry>>;

void require_pass(const CheckReport& r, const std::string& what) {
  if (!r.passed()) {
    for (const Check& c : r.checks()) {
      if (c.status == Status::fail) {
        throw InternalInconsistency(what + " fails its verifier at " + c.name);
      }
    }
  }
}

SparseTensor element_of(const Field& f, int n, const std::vector<std::pair<int, Scalar>>& coords) {
  TensorBuilder b(f, n, 1);
  for (const auto& [i, v] : coords) b.add(static_cast<Key>(i), v);
  return std::move(b).build();
}

Scalar pow_sign(const Scalar& v, int sign) { return sign > 0 ? v : v.inverse(); }

struct DprConvention {
  bool invert_phi;
  bool invert_theta;
};

QuasiHopfDatum dpr_with(const Cocycle3& w, DprConvention conv) {
  const FiniteAbelianGroup& G = w.group;
  const Field& f = w.field;
  const int m = G.order();
  const int n = m * m;
  const int sp = conv.invert_phi ? -1 : 1;
  const int st = conv.invert_theta ? -1 : 1;
  auto idx = [m](int g, int x) { return g * m + x; };
  auto om = [&](int a, int b, int c) { return pow_sign(w(a, b, c), st); };
  auto theta = [&](int g, int x, int y) { return om(g, x, y) * om(x, y, g) / om(x, g, y); };
  auto gt = [&](int x, int h, int k) { return om(h, k, x) * om(x, h, k) / om(h, x, k); };
  const Scalar one = Scalar::one(f);

  std::vector<std::vector<Term>> table(static_cast<std::size_t>(n) * n);
  for (int g = 0; g < m; ++g) {
    for (int x = 0; x < m; ++x) {
      for (int y = 0; y < m; ++y) {
        table[static_cast<std::size_t>(idx(g, x)) * n + idx(g, y)].push_back({idx(g, G.add(x, y)), theta(g, x, y)});
      }
    }
  }
  std::vector<std::pair<int, Scalar>> unit;
  for (int g = 0; g < m; ++g) unit.emplace_back(idx(g, 0), one);

  Rows delta(static_cast<std::size_t>(n));
  Rows eps(static_cast<std::size_t>(n));
  Rows antipode(static_cast<std::size_t>(n));
  for (int g = 0; g < m; ++g) {
    for (int x = 0; x < m; ++x) {
      const int i = idx(g, x);
      for (int h = 0; h < m; ++h) {
        const int k = G.add(g, G.neg(h));
        delta[i].push_back({static_cast<Key>(idx(h, x)) * n + idx(k, x), gt(x, h, k)});
      }
      if (g == 0) eps[i].push_back({0, one});
      const int ng = G.neg(g);
      const int nx = G.neg(x);
      antipode[i].push_back({static_cast<Key>(idx(ng, nx)), (theta(ng, x, nx) * gt(x, g, ng)).inverse()});
    }
  }
  TensorBuilder phi(f, n, 3);
  TensorBuilder phi_inv(f, n, 3);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      for (int c = 0; c < m; ++c) {
        const Scalar v = pow_sign(w(a, b, c), sp);
        phi.add(std::vector<int>{idx(a, 0), idx(b, 0), idx(c, 0)}, v.inverse());
        phi_inv.add(std::vector<int>{idx(a, 0), idx(b, 0), idx(c, 0)}, v);
      }
    }
  }
  std::vector<std::pair<int, Scalar>> beta;
  for (int g = 0; g < m; ++g) beta.emplace_back(idx(g, 0), pow_sign(w(g, G.neg(g), g), sp));
  TensorBuilder R(f, n, 2);
  for (int g = 0; g < m; ++g) {
    for (int h = 0; h < m; ++h) R.add(std::vector<int>{idx(g, 0), idx(h, g)}, one);
  }

  nlohmann::json blocks = nlohmann::json::array();
  for (int g = 0; g < m; ++g) {
    nlohmann::json b = nlohmann::json::array();
    for (int x = 0; x < m; ++x) b.push_back(idx(g, x));
    blocks.push_back(std::move(b));
  }
  DatumParts parts{
      Algebra(f, n, std::move(table), element_of(f, n, unit)),
      LinearMap(f, n, 2, std::move(delta)),
      LinearMap(f, n, 0, std::move(eps)),
      std::move(phi).build(),
      LinearMap(f, n, 1, std::move(antipode)),
      element_of(f, n, unit),
      element_of(f, n, beta),
      std::move(R).build(),
      std::nullopt,
      nlohmann::json{{"kind", "dpr"},
                     {"group", G.name()},
                     {"q", w.q},
                     {"convention", {{"invert_phi", conv.invert_phi}, {"invert_theta", conv.invert_theta}}},
                     {"blocks", std::move(blocks)}},
      std::move(phi_inv).build(),
  };
  return QuasiHopfDatum(std::move(parts));
}

}  // namespace

QuasiHopfDatum group_algebra(const GroupTable& g, const Field& f) {
  const int n = g.order;
  const Scalar one = Scalar::one(f);
  std::vector<std::vector<Term>> table(static_cast<std::size_t>(n) * n);
  Rows delta(n), eps(n), antipode(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a) * n + b].push_back({g.mul[a * n + b], one});
    delta[a].push_back({static_cast<Key>(a) * n + a, one});
    eps[a].push_back({0, one});
    antipode[a].push_back({static_cast<Key>(g.inv[a]), one});
  }
  const SparseTensor e = SparseTensor::basis(f, n, 0);
  DatumParts parts{
      Algebra(f, n, std::move(table), e),
      LinearMap(f, n, 2, std::move(delta)),
      LinearMap(f, n, 0, std::move(eps)),
      concat(concat(e, e), e),
      LinearMap(f, n, 1, std::move(antipode)),
      e,
      e,
      concat(e, e),
      std::nullopt,
      nlohmann::json{{"kind", "group"}, {"group", g.name}},
      std::nullopt,
  };
  QuasiHopfDatum d(std::move(parts));
  require_pass(verify_level(d, Level::qt), "group algebra");
  return d;
}

QuasiHopfDatum function_algebra(const Cocycle3& w) {
  const FiniteAbelianGroup& G = w.group;
  const Field& f = w.field;
  const int n = G.order();
  const Scalar one = Scalar::one(f);
  std::vector<std::vector<Term>> table(static_cast<std::size_t>(n) * n);
  Rows delta(n), eps(n), antipode(n);
  std::vector<std::pair<int, Scalar>> unit, beta;
  for (int g = 0; g < n; ++g) {
    table[static_cast<std::size_t>(g) * n + g].push_back({g, one});
    for (int h = 0; h < n; ++h) delta[g].push_back({static_cast<Key>(h) * n + G.add(g, G.neg(h)), one});
    if (g == 0) eps[g].push_back({0, one});
    antipode[g].push_back({static_cast<Key>(G.neg(g)), one});
    unit.emplace_back(g, one);
    beta.emplace_back(g, w(g, G.neg(g), g));
  }
  TensorBuilder phi(f, n, 3), phi_inv(f, n, 3);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        phi.add(std::vector<int>{a, b, c}, w(a, b, c).inverse());
        phi_inv.add(std::vector<int>{a, b, c}, w(a, b, c));
      }
    }
  }
  DatumParts parts{
      Algebra(f, n, std::move(table), element_of(f, n, unit)),
      LinearMap(f, n, 2, std::move(delta)),
      LinearMap(f, n, 0, std::move(eps)),
      std::move(phi).build(),
      LinearMap(f, n, 1, std::move(antipode)),
      element_of(f, n, unit),
      element_of(f, n, beta),
      std::nullopt,
      std::nullopt,
      nlohmann::json{{"kind", "function"}, {"group", G.name()}, {"q", w.q}},
      std::move(phi_inv).build(),
  };
  QuasiHopfDatum d(std::move(parts));
  require_pass(verify_level(d, Level::hopf), "function algebra");
  return d;
}

QuasiHopfDatum dpr_double(const Cocycle3& w) {
  for (DprConvention conv : {DprConvention{false, false}, DprConvention{false, true},
                             DprConvention{true, false}, DprConvention{true, true}}) {
    QuasiHopfDatum d = dpr_with(w, conv);
    if (!verify_level(d, Level::qt).passed()) continue;
    if (!w.is_trivial()) return d;
    // v = Σ_g δ_g⊗g, which is its own inverse when every g has order 2
    const int m = w.group.order();
    std::vector<std::pair<int, Scalar>> coords;
    for (int g = 0; g < m; ++g) coords.emplace_back(g * m + g, Scalar::one(w.field));
    const SparseTensor v = element_of(w.field, m * m, coords);
    DatumParts parts = d.parts();
    parts.v = v;
    parts.metadata["v_provenance"] = to_string(Provenance::closed_form);
    QuasiHopfDatum with_v(std::move(parts));
    require_pass(is_ribbon(with_v, v), "closed-form ribbon element");
    return with_v;
  }
  throw InternalInconsistency("no convention makes the twisted double pass the verifiers");
}

QuasiHopfDatum sweedler() {
  const Field q = Field::rational();
  const Scalar one = Scalar::one(q);
  const Scalar minus = Scalar(q, -1);
  // basis: 0 = 1, 1 = g, 2 = x, 3 = gx
  std::vector<std::vector<Term>> table(16);
  auto set = [&](int a, int b, int c, const Scalar& s) { table[a * 4 + b].push_back({c, s}); };
  for (int a = 0; a < 4; ++a) {
    set(0, a, a, one);
    if (a) set(a, 0, a, one);
  }
  set(1, 1, 0, one);
  set(1, 2, 3, one);
  set(1, 3, 2, one);
  set(2, 1, 3, minus);
  set(3, 1, 2, minus);
  Rows delta(4), eps(4), antipode(4);
  delta[0] = {{0, one}};
  delta[1] = {{1 * 4 + 1, one}};
  delta[2] = {{2 * 4 + 0, one}, {1 * 4 + 2, one}};
  delta[3] = {{3 * 4 + 1, one}, {0 * 4 + 3, one}};
  eps[0] = {{0, one}};
  eps[1] = {{0, one}};
  antipode[0] = {{0, one}};
  antipode[1] = {{1, one}};
  antipode[2] = {{3, minus}};
  antipode[3] = {{2, one}};
  const Scalar half = Scalar::parse(q, "1/2");
  const SparseTensor R = SparseTensor::from_entries(
      q, 4, 2, {{{0, 0}, half}, {{0, 1}, half}, {{1, 0}, half}, {{1, 1}, -half}});
  const SparseTensor e = SparseTensor::basis(q, 4, 0);
  DatumParts parts{
      Algebra(q, 4, std::move(table), e),
      LinearMap(q, 4, 2, std::move(delta)),
      LinearMap(q, 4, 0, std::move(eps)),
      concat(concat(e, e), e),
      LinearMap(q, 4, 1, std::move(antipode)),
      e,
      e,
      R,
      std::nullopt,
      nlohmann::json{{"kind", "sweedler"}},
      std::nullopt,
  };
  QuasiHopfDatum d(std::move(parts));
  require_pass(verify_level(d, Level::qt), "Sweedler algebra");
  return d;
}

QuasiHopfDatum build_example(std::string_view kind, std::string_view group, int q, const Field& field) {
  if (kind == "sweedler") return sweedler();
  if (kind == "group" && group == "S3") return group_algebra(symmetric_group_s3(), field);
  const FiniteAbelianGroup G = FiniteAbelianGroup::parse(group);
  if (kind == "group") return group_algebra(table_of(G), field);
  const Cocycle3 w = q == 0 ? trivial_cocycle(G, field) : cocycle_for(G, q, field);
  if (kind == "function") return function_algebra(w);
  if (kind == "dpr") return dpr_double(w);
  throw std::invalid_argument("unknown example kind '" + std::string(kind) + "'");
}

std::vector<NamedExample> standard_examples() {
  const Field f7 = Field::prime(7);
  std::vector<NamedExample> out;
  out.push_back({"K[Z2]", build_example("group", "Z2", 0, f7)});
  out.push_back({"F(Z2)_w", build_example("function", "Z2", 1, f7)});
  out.push_back({"F(Z3)_w", build_example("function", "Z3", 1, f7)});
  out.push_back({"Sweedler", sweedler()});
  out.push_back({"D(Z2)", build_example("dpr", "Z2", 0, f7)});
  out.push_back({"D^w(Z2)", build_example("dpr", "Z2", 1, f7)});
  out.push_back({"D(Z3)", build_example("dpr", "Z3", 0, f7)});
  out.push_back({"D^w(Z3)", build_example("dpr", "Z3", 1, f7)});
  return out;
}

}  // namespace qhopf
