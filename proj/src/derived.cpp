#include "qhopf/derived.hpp"

#include "qhopf/verify.hpp"

namespace qhopf {

SparseTensor apply_S_legs(const QuasiHopfDatum& d, const SparseTensor& t, std::initializer_list<int> legs) {
  LegMaps maps(static_cast<std::size_t>(t.arity()), nullptr);
  for (int l : legs) maps.at(l) = &d.antipode();
  return apply_legs(t, maps);
}

SparseTensor apply_Sinv_legs(const QuasiHopfDatum& d, const SparseTensor& t,
                             std::initializer_list<int> legs) {
  LegMaps maps(static_cast<std::size_t>(t.arity()), nullptr);
  for (int l : legs) maps.at(l) = &d.antipode_inv();
  return apply_legs(t, maps);
}

namespace {

SparseTensor gamma_direct(const QuasiHopfDatum& d) {
  const LinearMap& S = d.antipode();
  // Σ S(Y)S(X̄)αȲ Z(1) ⊗ S(X)αZ̄ Z(2)
  const SparseTensor mid =
      fold(d.algebra(), apply_legs(d.phi_inv(), {&S, nullptr, nullptr}),
           {{leg(0), elem(d.alpha()), leg(1)}, {elem(d.alpha()), leg(2)}});
  const SparseTensor outer = permute(apply_legs(d.phi(), {&S, &S, &d.delta()}), {1, 0, 2, 3});
  return sandwich(d.algebra(), outer, mid);
}

SparseTensor delta_direct(const QuasiHopfDatum& d) {
  const LinearMap& S = d.antipode();
  // Σ X(1)X̄βS(Z) ⊗ X(2)ȲβS(Z̄)S(Y)
  const SparseTensor mid = fold(d.algebra(), apply_legs(d.phi_inv(), {nullptr, nullptr, &S}),
                                {{leg(0), elem(d.beta())}, {leg(1), elem(d.beta()), leg(2)}});
  const SparseTensor outer = permute(apply_legs(d.phi(), {&d.delta(), &S, &S}), {0, 1, 3, 2});
  return sandwich(d.algebra(), outer, mid);
}

}  // namespace

SparseTensor gamma_alternative(const QuasiHopfDatum& d) {
  const LinearMap& S = d.antipode();
  // Σ S(X̄(2))S(Y)αZȲ ⊗ S(X̄(1))S(X)αZ̄
  const SparseTensor mid = fold(d.algebra(), apply_legs(d.phi(), {&S, &S, nullptr}),
                                {{leg(1), elem(d.alpha()), leg(2)}, {leg(0), elem(d.alpha())}});
  const SparseTensor outer =
      apply_S_legs(d, apply_legs(d.phi_inv(), {&d.delta_cop(), nullptr, nullptr}), {0, 1});
  return sandwich(d.algebra(), outer, mid);
}

SparseTensor delta_alternative(const QuasiHopfDatum& d) {
  const LinearMap& S = d.antipode();
  // Σ X̄βS(Z)S(Z̄(2)) ⊗ ȲXβS(Y)S(Z̄(1))
  const SparseTensor mid = fold(d.algebra(), apply_legs(d.phi(), {nullptr, &S, &S}),
                                {{elem(d.beta()), leg(2)}, {leg(0), elem(d.beta()), leg(1)}});
  const SparseTensor outer =
      apply_S_legs(d, apply_legs(d.phi_inv(), {nullptr, nullptr, &d.delta_cop()}), {2, 3});
  return sandwich(d.algebra(), outer, mid);
}

const SparseTensor& gamma_element(const QuasiHopfDatum& d) {
  return d.cached<SparseTensor>("gamma", [&d] {
    SparseTensor g = gamma_direct(d);
    if (g != gamma_alternative(d)) {
      throw InternalInconsistency("the two formulas for gamma disagree");
    }
    return g;
  });
}

const SparseTensor& delta_element(const QuasiHopfDatum& d) {
  return d.cached<SparseTensor>("delta", [&d] {
    SparseTensor x = delta_direct(d);
    if (x != delta_alternative(d)) {
      throw InternalInconsistency("the two formulas for delta disagree");
    }
    return x;
  });
}

const DerivedElements& bigF(const QuasiHopfDatum& d) {
  return d.cached<DerivedElements>("F", [&d] {
    const LinearMap& S = d.antipode();
    const SparseTensor& gamma = gamma_element(d);
    const SparseTensor& delta = delta_element(d);
    // F = Σ (S(X̄(2))⊗S(X̄(1))) γ Δ(ȲβS(Z̄))
    const SparseTensor q = fold(d.algebra(), apply_legs(d.phi_inv(), {nullptr, nullptr, &S}),
                                {{leg(0)}, {leg(1), elem(d.beta()), leg(2)}});
    const SparseTensor pf = apply_S_legs(d, apply_legs(q, {&d.delta_cop(), &d.delta()}), {0, 1});
    SparseTensor F = sandwich(d.algebra(), pf, gamma);
    // F⁻¹ = Σ Δ(S(X̄)αȲ) δ (S(Z̄(2))⊗S(Z̄(1)))
    const SparseTensor r = fold(d.algebra(), apply_legs(d.phi_inv(), {&S, nullptr, nullptr}),
                                {{leg(0), elem(d.alpha()), leg(1)}, {leg(2)}});
    const SparseTensor pi = apply_S_legs(d, apply_legs(r, {&d.delta(), &d.delta_cop()}), {2, 3});
    SparseTensor F_inv = sandwich(d.algebra(), pi, delta);
    const SparseTensor unit = d.one(2);
    if (d.mul(F, F_inv) != unit || d.mul(F_inv, F) != unit) {
      throw InternalInconsistency("F times its displayed inverse is not 1⊗1");
    }
    return DerivedElements{gamma, delta, std::move(F), std::move(F_inv)};
  });
}

CheckReport check_F_compat(const QuasiHopfDatum& d, const CheckOptions& opts) {
  CheckReport report;
  const Algebra& A = d.algebra();
  std::vector<std::pair<std::string, CheckFn>> tasks;
  tasks.emplace_back("F.inverse", [&](CheckBuilder& b) {
    const DerivedElements& e = bigF(d);
    b.equal(d.mul(e.F, e.F_inv), d.one(2), "F F^-1");
    b.equal(d.mul(e.F_inv, e.F), d.one(2), "F^-1 F");
  });
  tasks.emplace_back("F.gamma", [&](CheckBuilder& b) {
    const DerivedElements& e = bigF(d);
    b.equal(e.gamma, d.mul(e.F, d.D(d.alpha())));
  });
  tasks.emplace_back("F.delta", [&](CheckBuilder& b) {
    const DerivedElements& e = bigF(d);
    b.equal(e.delta, d.mul(d.D(d.beta()), e.F_inv));
  });
  tasks.emplace_back("F.antipode_coproduct", [&](CheckBuilder& b) {
    const DerivedElements& e = bigF(d);
    for (int a = 0; a < d.dim(); ++a) {
      const SparseTensor lhs = d.D(d.S(d.basis(a)));
      const SparseTensor twisted = apply_all(flip(d.delta().image(a), 0, 1), d.antipode());
      if (!b.equal(lhs, mult(A, {e.F_inv, twisted, e.F}), "a=" + std::to_string(a))) return;
    }
  });
  tasks.emplace_back("F.antipode_associator", [&](CheckBuilder& b) {
    const DerivedElements& e = bigF(d);
    const SparseTensor lhs = apply_all(permute(d.phi(), {2, 1, 0}), d.antipode());
    const SparseTensor f1 = concat(d.one(1), e.F);
    const SparseTensor f2 = apply_leg(e.F, 1, d.delta());
    const SparseTensor f4 = apply_leg(e.F_inv, 0, d.delta());
    const SparseTensor f5 = concat(e.F_inv, d.one(1));
    b.equal(lhs, mult(A, {f1, f2, d.phi(), f4, f5}));
  });
  report.run_all(tasks, opts);
  return report;
}

QuasiHopfDatum modify_antipode(const QuasiHopfDatum& d, const SparseTensor& x) {
  const SparseTensor x_inv = d.inv(x);
  DatumParts parts = d.parts();
  parts.antipode = map_from(
      d,
      [&](int i) {
        const SparseTensor s = d.antipode().image(i);
        return mult(d.algebra(), {x, s, x_inv});
      },
      1);
  parts.alpha = d.mul(x, d.alpha());
  parts.beta = d.mul(d.beta(), x_inv);
  parts.phi_inverse = d.phi_inv();
  return QuasiHopfDatum(std::move(parts));
}

SparseTensor recover_modifier(const QuasiHopfDatum& d, const QuasiHopfDatum& d_prime) {
  const DatumParts& a = d.parts();
  const DatumParts& b = d_prime.parts();
  if (!(a.algebra == b.algebra) || !(a.delta == b.delta) || !(a.epsilon == b.epsilon) ||
      a.phi != b.phi) {
    throw PreconditionError("the two data differ outside the antipode layer");
  }
  const Algebra& A = d.algebra();
  // x = Σ S'(X̄)α'ȲβS(Z̄),  x⁻¹ = Σ S(X̄)αȲβ'S'(Z̄)
  const SparseTensor x =
      fold(A, apply_legs(d.phi_inv(), {&d_prime.antipode(), nullptr, &d.antipode()}),
           {{leg(0), elem(d_prime.alpha()), leg(1), elem(d.beta()), leg(2)}});
  const SparseTensor x_inv =
      fold(A, apply_legs(d.phi_inv(), {&d.antipode(), nullptr, &d_prime.antipode()}),
           {{leg(0), elem(d.alpha()), leg(1), elem(d_prime.beta()), leg(2)}});
  if (d.mul(x, x_inv) != d.one() || d.mul(x_inv, x) != d.one()) {
    throw InternalInconsistency("recovered modifier is not inverted by the displayed formula");
  }
  for (int i = 0; i < d.dim(); ++i) {
    const SparseTensor s = d.antipode().image(i);
    if (d_prime.antipode().image(i) != mult(A, {x, s, x_inv})) {
      throw InternalInconsistency("antipodes are not related by the recovered modifier");
    }
  }
  if (d_prime.alpha() != d.mul(x, d.alpha()) || d_prime.beta() != d.mul(d.beta(), x_inv)) {
    throw InternalInconsistency("alpha/beta are not related by the recovered modifier");
  }
  return x;
}

CheckReport check_modification_laws(const QuasiHopfDatum& d, const SparseTensor& x,
                                    const CheckOptions& opts) {
  CheckReport report;
  const Algebra& A = d.algebra();
  const SparseTensor x_inv = d.inv(x);
  const QuasiHopfDatum dx = modify_antipode(d, x);
  const SparseTensor xx = concat(x, x);
  const SparseTensor xx_inv = concat(x_inv, x_inv);
  report.run("modification.gamma", [&](CheckBuilder& b) {
    b.equal(gamma_element(dx), d.mul(xx, gamma_element(d)));
  }, opts);
  report.run("modification.delta", [&](CheckBuilder& b) {
    b.equal(delta_element(dx), d.mul(delta_element(d), xx_inv));
  }, opts);
  report.run("modification.F", [&](CheckBuilder& b) {
    const SparseTensor dxi = d.D(x_inv);
    b.equal(bigF(dx).F, mult(A, {xx, bigF(d).F, dxi}));
  }, opts);
  return report;
}

QuasiHopfDatum coopposite(const QuasiHopfDatum& d) {
  DatumParts parts = d.parts();
  parts.delta = d.delta_cop();
  parts.phi = permute(d.phi_inv(), {2, 1, 0});
  parts.phi_inverse = permute(d.phi(), {2, 1, 0});
  parts.antipode = d.antipode_inv();
  parts.alpha = d.Sinv(d.alpha());
  parts.beta = d.Sinv(d.beta());
  parts.R.reset();
  QuasiHopfDatum base(parts);
  if (!d.has_R()) return base;
  parts.R = flip(d.R(), 0, 1);
  QuasiHopfDatum with_r(std::move(parts));
  if (verify_quasitriangular(with_r).passed()) return with_r;
  return base;
}

QuasiHopfDatum op_cop(const QuasiHopfDatum& d) {
  DatumParts parts = d.parts();
  parts.algebra = d.algebra().opposite();
  parts.delta = d.delta_cop();
  parts.phi = permute(d.phi(), {2, 1, 0});
  parts.phi_inverse = permute(d.phi_inv(), {2, 1, 0});
  std::swap(parts.alpha, parts.beta);
  return QuasiHopfDatum(std::move(parts));
}

CheckReport check_coopposite(const QuasiHopfDatum& d, const CheckOptions& opts) {
  CheckReport report;
  const QuasiHopfDatum c = coopposite(d);
  report.run("coopposite.gamma", [&](CheckBuilder& b) {
    b.equal(gamma_element(c), d.Sinv(gamma_element(d)));
  }, opts);
  report.run("coopposite.delta", [&](CheckBuilder& b) {
    b.equal(delta_element(c), d.Sinv(delta_element(d)));
  }, opts);
  report.run("coopposite.F", [&](CheckBuilder& b) {
    b.equal(bigF(c).F, d.Sinv(bigF(d).F));
  }, opts);
  return report;
}

}  // namespace qhopf
