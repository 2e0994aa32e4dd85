#include "qhopf/drinfeld.hpp"

#include "qhopf/derived.hpp"

namespace qhopf {

namespace {

SparseTensor u_formula(const QuasiHopfDatum& d) {
  const LinearMap& S = d.antipode();
  // q = Σ X̄ ⊗ S(ȲβS(Z̄)),  r = Σ s ⊗ S(t)
  const SparseTensor q = apply_legs(fold(d.algebra(), apply_legs(d.phi_inv(), {nullptr, nullptr, &S}),
                                         {{leg(0)}, {leg(1), elem(d.beta()), leg(2)}}),
                                    {nullptr, &S});
  const SparseTensor r = apply_legs(d.R(), {nullptr, &S});
  return fold(d.algebra(), concat(q, r), {{leg(1), leg(3), elem(d.alpha()), leg(2), leg(0)}});
}

}  // namespace

const DrinfeldElements& drinfeld_u(const QuasiHopfDatum& d) {
  return d.cached<DrinfeldElements>("u", [&d] {
    SparseTensor u = u_formula(d);
    try {
      SparseTensor u_inv = d.inv(u);
      return DrinfeldElements{std::move(u), std::move(u_inv), std::nullopt};
    } catch (const NotInvertible&) {
      throw InternalInconsistency("Drinfel'd element is not invertible");
    }
  });
}

CheckReport check_drinfeld_props(const QuasiHopfDatum& d, const CheckOptions& opts) {
  CheckReport report;
  const Algebra& A = d.algebra();
  report.run("drinfeld.counit", [&](CheckBuilder& b) {
    b.equal(d.eps(drinfeld_u(d).u), Scalar::one(d.field()));
  }, opts);
  report.run("drinfeld.S_squared", [&](CheckBuilder& b) {
    const DrinfeldElements& e = drinfeld_u(d);
    for (int a = 0; a < d.dim(); ++a) {
      const SparseTensor ea = d.basis(a);
      if (!b.equal(d.S(d.S(ea)), mult(A, {e.u, ea, e.u_inv}), "a=" + std::to_string(a))) return;
    }
  }, opts);
  report.run("drinfeld.coproduct", [&](CheckBuilder& b) {
    const DrinfeldElements& e = drinfeld_u(d);
    const DerivedElements& f = bigF(d);
    const SparseTensor sfp = d.S(flip(f.F, 0, 1));
    const SparseTensor uu = concat(e.u, e.u);
    const SparseTensor rr_inv = d.inv(d.mul(flip(d.R(), 0, 1), d.R()));
    b.equal(d.D(e.u), mult(A, {f.F_inv, sfp, uu, rr_inv}));
  }, opts);
  return report;
}

CheckReport check_u_under_modification(const QuasiHopfDatum& d, const SparseTensor& x,
                                       const CheckOptions& opts) {
  CheckReport report;
  report.run("modification.u", [&](CheckBuilder& b) {
    const QuasiHopfDatum dx = modify_antipode(d, x);
    const SparseTensor sx = d.S(d.inv(x));
    b.equal(drinfeld_u(dx).u, d.mul({x, sx, drinfeld_u(d).u}));
  }, opts);
  return report;
}

SparseTensor u_tilde_formula(const QuasiHopfDatum& d) {
  const LinearMap& S = d.antipode();
  // Σ Z̄ s β S(t) S(Ȳ) S(α) S²(X̄)
  const SparseTensor phi = apply_legs(d.phi_inv(), {&S, &S, nullptr});
  const SparseTensor ss_phi = apply_leg(phi, 0, S);
  const SparseTensor r = apply_legs(d.R(), {nullptr, &S});
  const SparseTensor s_alpha = d.S(d.alpha());
  return fold(d.algebra(), concat(ss_phi, r),
              {{leg(2), leg(3), elem(d.beta()), leg(4), leg(1), elem(s_alpha), leg(0)}});
}

const SparseTensor& u_tilde(const QuasiHopfDatum& d) {
  return d.cached<SparseTensor>("u_tilde", [&d] {
    SparseTensor t = u_tilde_formula(d);
    if (t != drinfeld_u(op_cop(d)).u) {
      throw InternalInconsistency("u-tilde formula disagrees with the op-cop Drinfel'd element");
    }
    return t;
  });
}

CheckReport check_u_tilde(const QuasiHopfDatum& d, const CheckOptions& opts) {
  CheckReport report;
  report.run("u_tilde.opcop", [&](CheckBuilder& b) {
    b.equal(u_tilde_formula(d), drinfeld_u(op_cop(d)).u);
  }, opts);
  report.run("u_tilde.antipode", [&](CheckBuilder& b) {
    b.equal(drinfeld_u(d).u, d.S(u_tilde(d)));
  }, opts);
  return report;
}

}  // namespace qhopf
