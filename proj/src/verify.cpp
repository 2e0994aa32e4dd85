#include "qhopf/verify.hpp"

#include "qhopf/derived.hpp"
#include "qhopf/ribbon.hpp"

namespace qhopf {

namespace {

std::string at(int a) { return "a=" + std::to_string(a); }

}  // namespace

CheckReport verify_quasi_bialgebra(const QuasiHopfDatum& d, const CheckOptions& opts) {
  const Algebra& A = d.algebra();
  const int n = d.dim();
  std::vector<std::pair<std::string, CheckFn>> tasks;
  tasks.emplace_back("algebra.associativity", [&](CheckBuilder& b) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const SparseTensor ij = d.mul(d.basis(i), d.basis(j));
        for (int k = 0; k < n; ++k) {
          const SparseTensor lhs = d.mul(ij, d.basis(k));
          const SparseTensor rhs = d.mul(d.basis(i), d.mul(d.basis(j), d.basis(k)));
          if (!b.equal(lhs, rhs, "i=" + std::to_string(i) + ",j=" + std::to_string(j) +
                                     ",k=" + std::to_string(k))) {
            return;
          }
        }
      }
    }
  });
  tasks.emplace_back("algebra.unit", [&](CheckBuilder& b) {
    for (int i = 0; i < n; ++i) {
      if (!b.equal(d.mul(d.one(), d.basis(i)), d.basis(i), "left, " + at(i))) return;
      if (!b.equal(d.mul(d.basis(i), d.one()), d.basis(i), "right, " + at(i))) return;
    }
  });
  tasks.emplace_back("coproduct.homomorphism", [&](CheckBuilder& b) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const SparseTensor lhs = d.D(d.mul(d.basis(i), d.basis(j)));
        const SparseTensor rhs = d.mul(d.delta().image(i), d.delta().image(j));
        if (!b.equal(lhs, rhs, "i=" + std::to_string(i) + ",j=" + std::to_string(j))) return;
      }
    }
  });
  tasks.emplace_back("coproduct.unital", [&](CheckBuilder& b) { b.equal(d.D(d.one()), d.one(2)); });
  tasks.emplace_back("counit.homomorphism", [&](CheckBuilder& b) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const Scalar lhs = d.eps(d.mul(d.basis(i), d.basis(j)));
        const Scalar rhs = d.eps(d.basis(i)) * d.eps(d.basis(j));
        if (!b.equal(lhs, rhs, "i=" + std::to_string(i) + ",j=" + std::to_string(j))) return;
      }
    }
  });
  tasks.emplace_back("counit.unital", [&](CheckBuilder& b) {
    b.equal(d.eps(d.one()), Scalar::one(d.field()));
  });
  tasks.emplace_back("associator.invertible", [&](CheckBuilder& b) {
    const SparseTensor& inv = d.phi_inv();
    b.equal(d.mul(d.phi(), inv), d.one(3), "phi phi^-1");
    b.equal(d.mul(inv, d.phi()), d.one(3), "phi^-1 phi");
  });
  tasks.emplace_back("quasi_coassociativity", [&](CheckBuilder& b) {
    for (int a = 0; a < n; ++a) {
      const SparseTensor da = d.delta().image(a);
      const SparseTensor left = apply_leg(da, 1, d.delta());
      const SparseTensor right = apply_leg(da, 0, d.delta());
      if (!b.equal(d.mul(left, d.phi()), d.mul(d.phi(), right), at(a))) return;
    }
  });
  tasks.emplace_back("pentagon", [&](CheckBuilder& b) {
    const SparseTensor& phi = d.phi();
    const SparseTensor lhs = d.mul(apply_leg(phi, 2, d.delta()), apply_leg(phi, 0, d.delta()));
    const SparseTensor one_phi = concat(d.one(1), phi);
    const SparseTensor mid = apply_leg(phi, 1, d.delta());
    const SparseTensor phi_one = concat(phi, d.one(1));
    b.equal(lhs, mult(A, {one_phi, mid, phi_one}));
  });
  tasks.emplace_back("counitality", [&](CheckBuilder& b) {
    for (int a = 0; a < n; ++a) {
      const SparseTensor da = d.delta().image(a);
      if (!b.equal(apply_legs(da, {&d.epsilon(), nullptr}), d.basis(a), "left, " + at(a))) return;
      if (!b.equal(apply_legs(da, {nullptr, &d.epsilon()}), d.basis(a), "right, " + at(a))) return;
    }
  });
  tasks.emplace_back("counit_associator_axiom", [&](CheckBuilder& b) {
    b.equal(apply_legs(d.phi(), {nullptr, &d.epsilon(), nullptr}), d.one(2));
  });
  tasks.emplace_back("counit_associator_property", [&](CheckBuilder& b) {
    b.equal(apply_legs(d.phi(), {&d.epsilon(), nullptr, nullptr}), d.one(2), "first leg");
    b.equal(apply_legs(d.phi(), {nullptr, nullptr, &d.epsilon()}), d.one(2), "third leg");
  });
  CheckReport report;
  report.run_all(tasks, opts);
  return report;
}

CheckReport verify_quasi_hopf(const QuasiHopfDatum& d, const CheckOptions& opts) {
  const Algebra& A = d.algebra();
  const int n = d.dim();
  const LinearMap& S = d.antipode();
  std::vector<std::pair<std::string, CheckFn>> tasks;
  tasks.emplace_back("antipode.anti_automorphism", [&](CheckBuilder& b) {
    if (!linalg::inverse(S.matrix(), d.field())) {
      b.fail("antipode is not bijective");
      return;
    }
    if (!b.equal(d.S(d.one()), d.one(), "S(1)")) return;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const SparseTensor lhs = d.S(d.mul(d.basis(i), d.basis(j)));
        const SparseTensor rhs = d.mul(S.image(j), S.image(i));
        if (!b.equal(lhs, rhs, "i=" + std::to_string(i) + ",j=" + std::to_string(j))) return;
      }
    }
  });
  tasks.emplace_back("antipode.left_equation", [&](CheckBuilder& b) {
    for (int a = 0; a < n; ++a) {
      const SparseTensor lhs = fold(A, apply_legs(d.delta().image(a), {&S, nullptr}),
                                    {{leg(0), elem(d.alpha()), leg(1)}});
      if (!b.equal(lhs, d.alpha().scaled(d.eps(d.basis(a))), at(a))) return;
    }
  });
  tasks.emplace_back("antipode.right_equation", [&](CheckBuilder& b) {
    for (int a = 0; a < n; ++a) {
      const SparseTensor lhs = fold(A, apply_legs(d.delta().image(a), {nullptr, &S}),
                                    {{leg(0), elem(d.beta()), leg(1)}});
      if (!b.equal(lhs, d.beta().scaled(d.eps(d.basis(a))), at(a))) return;
    }
  });
  tasks.emplace_back("duality.phi", [&](CheckBuilder& b) {
    const SparseTensor lhs = fold(A, apply_legs(d.phi(), {nullptr, &S, nullptr}),
                                  {{leg(0), elem(d.beta()), leg(1), elem(d.alpha()), leg(2)}});
    b.equal(lhs, d.one());
  });
  tasks.emplace_back("duality.phi_inverse", [&](CheckBuilder& b) {
    const SparseTensor lhs = fold(A, apply_legs(d.phi_inv(), {&S, nullptr, &S}),
                                  {{leg(0), elem(d.alpha()), leg(1), elem(d.beta()), leg(2)}});
    b.equal(lhs, d.one());
  });
  tasks.emplace_back("counit_antipode", [&](CheckBuilder& b) {
    for (int a = 0; a < n; ++a) {
      if (!b.equal(d.eps(S.image(a)), d.eps(d.basis(a)), at(a))) return;
    }
  });
  tasks.emplace_back("counit_alpha_beta", [&](CheckBuilder& b) {
    b.equal(d.eps(d.alpha()) * d.eps(d.beta()), Scalar::one(d.field()));
  });
  CheckReport report;
  report.run_all(tasks, opts);
  return report;
}

CheckReport verify_quasitriangular(const QuasiHopfDatum& d, const CheckOptions& opts) {
  const SparseTensor& R = d.R();
  const Algebra& A = d.algebra();
  const int n = d.dim();
  std::vector<std::pair<std::string, CheckFn>> tasks;
  tasks.emplace_back("R.invertible", [&](CheckBuilder& b) {
    const SparseTensor& inv = d.R_inv();
    b.equal(d.mul(R, inv), d.one(2), "R R^-1");
    b.equal(d.mul(inv, R), d.one(2), "R^-1 R");
  });
  tasks.emplace_back("quasi_cocommutativity", [&](CheckBuilder& b) {
    for (int a = 0; a < n; ++a) {
      const SparseTensor da = d.delta().image(a);
      if (!b.equal(d.mul(flip(da, 0, 1), R), d.mul(R, da), at(a))) return;
    }
  });
  tasks.emplace_back("hexagon.left", [&](CheckBuilder& b) {
    const SparseTensor yzx = permute(d.phi(), {1, 2, 0});
    const SparseTensor s1t = permute(concat(R, d.one(1)), {0, 2, 1});
    const SparseTensor xzy = permute(d.phi_inv(), {0, 2, 1});
    const SparseTensor one_r = concat(d.one(1), R);
    b.equal(apply_leg(R, 0, d.delta()), mult(A, {yzx, s1t, xzy, one_r, d.phi()}));
  });
  tasks.emplace_back("hexagon.right", [&](CheckBuilder& b) {
    const SparseTensor zxy = permute(d.phi_inv(), {2, 0, 1});
    const SparseTensor s1t = permute(concat(R, d.one(1)), {0, 2, 1});
    const SparseTensor yxz = permute(d.phi(), {1, 0, 2});
    const SparseTensor r_one = concat(R, d.one(1));
    b.equal(apply_leg(R, 1, d.delta()), mult(A, {zxy, s1t, yxz, r_one, d.phi_inv()}));
  });
  tasks.emplace_back("R.counit_left", [&](CheckBuilder& b) {
    b.equal(apply_legs(R, {&d.epsilon(), nullptr}), d.one(1));
  });
  tasks.emplace_back("R.counit_right", [&](CheckBuilder& b) {
    b.equal(apply_legs(R, {nullptr, &d.epsilon()}), d.one(1));
  });
  tasks.emplace_back("R.antipode", [&](CheckBuilder& b) {
    const DerivedElements& e = bigF(d);
    const SparseTensor Fp = flip(e.F, 0, 1);
    b.equal(d.S(R), mult(A, {Fp, R, e.F_inv}));
  });
  CheckReport report;
  report.run_all(tasks, opts);
  return report;
}

CheckReport verify_level(const QuasiHopfDatum& d, Level level, const CheckOptions& opts) {
  CheckReport report = verify_quasi_bialgebra(d, opts);
  if (level >= Level::hopf) report.append(verify_quasi_hopf(d, opts));
  if (level >= Level::qt) {
    if (!d.has_R()) {
      report.run("R.present", [](CheckBuilder& b) { b.fail("datum has no R-matrix"); }, opts);
      return report;
    }
    report.append(verify_quasitriangular(d, opts));
  }
  if (level >= Level::ribbon) {
    if (!d.v()) {
      report.run("ribbon.present", [](CheckBuilder& b) { b.fail("datum has no ribbon element v"); }, opts);
    } else {
      report.append(is_ribbon(d, *d.v(), opts));
    }
  }
  return report;
}

}  // namespace qhopf
