#include "qhopf/twisting.hpp"

#include <algorithm>

#include "qhopf/derived.hpp"
#include "qhopf/drinfeld.hpp"

namespace qhopf {

Twist make_twist(const QuasiHopfDatum& d, const SparseTensor& T) {
  if (T.arity() != 2 || T.dim() != d.dim()) throw InvalidTwist("twist must be an element of A⊗A");
  if (apply_legs(T, {&d.epsilon(), nullptr}) != d.one() ||
      apply_legs(T, {nullptr, &d.epsilon()}) != d.one()) {
    throw InvalidTwist("twist is not counit-normalized");
  }
  try {
    return Twist{T, d.inv(T)};
  } catch (const NotInvertible&) {
    throw InvalidTwist("twist is not invertible");
  }
}

QuasiHopfDatum twist(const QuasiHopfDatum& d, const Twist& t) {
  const Algebra& A = d.algebra();
  const LinearMap& S = d.antipode();
  DatumParts parts = d.parts();
  parts.delta = map_from(
      d,
      [&](int i) {
        const SparseTensor di = d.delta().image(i);
        return mult(A, {t.T, di, t.T_inv});
      },
      2);

  const SparseTensor one_t = concat(d.one(), t.T);
  const SparseTensor id_d_t = apply_leg(t.T, 1, d.delta());
  const SparseTensor d_id_ti = apply_leg(t.T_inv, 0, d.delta());
  const SparseTensor ti_one = concat(t.T_inv, d.one());
  parts.phi = mult(A, {one_t, id_d_t, d.phi(), d_id_ti, ti_one});
  const SparseTensor t_one = concat(t.T, d.one());
  const SparseTensor d_id_t = apply_leg(t.T, 0, d.delta());
  const SparseTensor id_d_ti = apply_leg(t.T_inv, 1, d.delta());
  const SparseTensor one_ti = concat(d.one(), t.T_inv);
  parts.phi_inverse = mult(A, {t_one, d_id_t, d.phi_inv(), id_d_ti, one_ti});

  parts.alpha = fold(A, apply_legs(t.T_inv, {&S, nullptr}), {{leg(0), elem(d.alpha()), leg(1)}});
  parts.beta = fold(A, apply_legs(t.T, {nullptr, &S}), {{leg(0), elem(d.beta()), leg(1)}});
  if (d.has_R()) {
    const SparseTensor t21 = flip(t.T, 0, 1);
    parts.R = mult(A, {t21, d.R(), t.T_inv});
  }
  return QuasiHopfDatum(std::move(parts));
}

Scalar random_scalar(SplitMix64& rng, const Field& field) {
  if (field.is_prime()) return Scalar(field, static_cast<long long>(rng.below(field.characteristic())));
  return Scalar(field, static_cast<long long>(rng.below(7)) - 3);
}

SparseTensor random_element(SplitMix64& rng, const QuasiHopfDatum& d, int arity, int terms) {
  TensorBuilder b(d.field(), d.dim(), arity);
  std::vector<int> idx(static_cast<std::size_t>(arity));
  for (int k = 0; k < terms; ++k) {
    for (int& i : idx) i = static_cast<int>(rng.below(static_cast<std::uint64_t>(d.dim())));
    b.add(std::span<const int>(idx), random_scalar(rng, d.field()));
  }
  return std::move(b).build();
}

SparseTensor random_invertible(const QuasiHopfDatum& d, std::uint64_t seed) {
  SplitMix64 rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const SparseTensor x = random_element(rng, d, 1, d.dim());
    try {
      d.inv(x);
      return x;
    } catch (const NotInvertible&) {
    }
  }
  throw Exhausted("no invertible element found after 1000 samples");
}

Twist random_twist(const QuasiHopfDatum& d, std::uint64_t seed) {
  const Field& f = d.field();
  if (f.is_prime() && f.characteristic() < 5) throw PreconditionError("random_twist needs at least 5 field elements");
  SplitMix64 rng(seed);
  // P = id - 1·ε kills the counit on each leg, so T₁ has (ε⊗id)(T₁) = (id⊗ε)(T₁) = 0.
  std::vector<std::vector<Entry>> rows(static_cast<std::size_t>(d.dim()));
  for (int i = 0; i < d.dim(); ++i) {
    const SparseTensor img = d.basis(i) - d.one().scaled(d.eps(d.basis(i)));
    rows[i] = img.entries();
  }
  const LinearMap P(f, d.dim(), 1, std::move(rows));
  const std::uint64_t limit = f.is_prime() ? f.characteristic() : 64;
  // Dense draws first; sparser ones leave fewer eigenvalues to avoid.
  for (int draw = 0; draw < 64; ++draw) {
    const int terms = std::max(1, d.dim() >> (draw / 8));
    const SparseTensor t1 = apply_legs(random_element(rng, d, 2, terms), {&P, &P});
    if (t1.is_zero()) continue;
    for (std::uint64_t lambda = 1; lambda < limit; ++lambda) {
      const Scalar scale = Scalar(f, static_cast<long long>(lambda)).inverse();
      const SparseTensor T = d.one(2) + t1.scaled(scale);
      try {
        return make_twist(d, T);
      } catch (const InvalidTwist&) {
      }
    }
  }
  throw Exhausted("no invertible normalized twist for seed " + std::to_string(seed));
}

CheckReport check_twist_elements(const QuasiHopfDatum& d, const Twist& t, const CheckOptions& opts) {
  CheckReport report;
  const Algebra& A = d.algebra();
  const QuasiHopfDatum dt = twist(d, t);
  const SparseTensor st_p = d.S(flip(t.T, 0, 1));
  const SparseTensor st_p_inv = d.S(flip(t.T_inv, 0, 1));
  report.run("twist.gamma", [&](CheckBuilder& b) {
    const SparseTensor lhs = mult(A, {st_p, gamma_element(dt), t.T});
    const SparseTensor outer = apply_S_legs(d, apply_legs(t.T_inv, {&d.delta_cop(), &d.delta()}), {0, 1});
    b.equal(lhs, sandwich(A, outer, gamma_element(d)));
  }, opts);
  report.run("twist.delta", [&](CheckBuilder& b) {
    const SparseTensor lhs = mult(A, {t.T_inv, delta_element(dt), st_p_inv});
    const SparseTensor outer = apply_S_legs(d, apply_legs(t.T, {&d.delta(), &d.delta_cop()}), {2, 3});
    b.equal(lhs, sandwich(A, outer, delta_element(d)));
  }, opts);
  report.run("twist.F", [&](CheckBuilder& b) {
    b.equal(bigF(dt).F, mult(A, {st_p_inv, bigF(d).F, t.T_inv}));
  }, opts);
  return report;
}

CheckReport check_u_twist_invariance(const QuasiHopfDatum& d, const Twist& t, const CheckOptions& opts) {
  CheckReport report;
  report.run("twist.u", [&](CheckBuilder& b) {
    b.equal(drinfeld_u(twist(d, t)).u, drinfeld_u(d).u);
  }, opts);
  return report;
}

CheckReport opcop_twist_iso(const QuasiHopfDatum& d, const CheckOptions& opts) {
  CheckReport report;
  const Algebra& A = d.algebra();
  const LinearMap& S = d.antipode();
  const Scalar eb = d.eps(d.beta());
  const Scalar ea = d.eps(d.alpha());
  const SparseTensor T = bigF(d).F.scaled(eb);
  report.run("opcop.twist_normalized", [&](CheckBuilder& b) {
    b.equal(apply_legs(T, {&d.epsilon(), nullptr}), d.one(), "left");
    b.equal(apply_legs(T, {nullptr, &d.epsilon()}), d.one(), "right");
  }, opts);
  const Twist tw = make_twist(d, T);
  const QuasiHopfDatum dt = twist(d, tw);
  const QuasiHopfDatum oc = op_cop(d);
  report.run("opcop.product", [&](CheckBuilder& b) {
    for (int i = 0; i < d.dim(); ++i) {
      for (int j = 0; j < d.dim(); ++j) {
        // S(a ·op b) = S(a) S(b)
        const SparseTensor lhs = d.S(oc.mul(d.basis(i), d.basis(j)));
        if (!b.equal(lhs, d.mul(S.image(i), S.image(j)), "i=" + std::to_string(i) + ",j=" + std::to_string(j))) {
          return;
        }
      }
    }
  }, opts);
  report.run("opcop.coproduct", [&](CheckBuilder& b) {
    for (int a = 0; a < d.dim(); ++a) {
      const SparseTensor lhs = apply_all(oc.delta().image(a), S);
      if (!b.equal(lhs, dt.D(S.image(a)), "a=" + std::to_string(a))) return;
    }
  }, opts);
  report.run("opcop.associator", [&](CheckBuilder& b) {
    b.equal(apply_all(oc.phi(), S), dt.phi());
  }, opts);
  report.run("opcop.alpha_beta", [&](CheckBuilder& b) {
    b.equal(d.S(d.beta()), dt.alpha().scaled(eb * eb), "S(beta)");
    b.equal(d.S(d.alpha()), dt.beta().scaled(ea * ea), "S(alpha)");
  }, opts);
  if (d.has_R()) {
    report.run("opcop.R", [&](CheckBuilder& b) { b.equal(apply_all(oc.R(), S), dt.R()); }, opts);
    report.run("opcop.u_tilde", [&](CheckBuilder& b) {
      const SparseTensor x = d.one().scaled(eb * eb);
      const SparseTensor sx = d.S(d.inv(x));
      const SparseTensor& ut = drinfeld_u(dt).u;
      const SparseTensor s_ut = d.S(u_tilde(d));
      b.equal(s_ut, mult(A, {x, sx, ut}), "x S(x^-1) u_T");
      b.equal(s_ut, drinfeld_u(d).u, "u");
    }, opts);
  }
  return report;
}

}  // namespace qhopf
