#include "qhopf/ribbon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qhopf/derived.hpp"
#include "qhopf/drinfeld.hpp"

namespace qhopf {

namespace {

RTwistElements rtwist_raw(const QuasiHopfDatum& d) {
  const Algebra& A = d.algebra();
  const LinearMap& S = d.antipode();
  const LinearMap& Si = d.antipode_inv();
  const SparseTensor& R = d.R();
  const SparseTensor& R_inv = d.R_inv();
  RTwistElements e{
      fold(A, apply_legs(R_inv, {&S, nullptr}), {{leg(0), elem(d.alpha()), leg(1)}}),
      fold(A, apply_legs(R, {nullptr, &S}), {{leg(0), elem(d.beta()), leg(1)}}),
      fold(A, apply_legs(R, {nullptr, &S}), {{leg(1), elem(d.alpha()), leg(0)}}),
      fold(A, apply_legs(R_inv, {&S, nullptr}), {{leg(1), elem(d.beta()), leg(0)}}),
      SparseTensor(d.field(), d.dim(), 1),
      SparseTensor(d.field(), d.dim(), 1),
      SparseTensor(d.field(), d.dim(), 1),
      SparseTensor(d.field(), d.dim(), 1),
  };
  const SparseTensor si_alpha = d.Sinv(d.alpha());
  const SparseTensor si_beta = d.Sinv(d.beta());
  const SparseTensor phi_left = apply_legs(d.phi(), {&Si, nullptr, &S});
  const SparseTensor phi_right = apply_legs(d.phi(), {&S, nullptr, &Si});
  // Σ S(Z) a Y S⁻¹(β) S⁻¹(X)  and  Σ S⁻¹(Z) S⁻¹(α) Y b S(X)
  auto forward = [&](const SparseTensor& a) {
    return fold(A, phi_left, {{leg(2), elem(a), leg(1), elem(si_beta), leg(0)}});
  };
  auto backward = [&](const SparseTensor& b) {
    return fold(A, phi_right, {{leg(2), elem(si_alpha), leg(1), elem(b), leg(0)}});
  };
  e.u_hat = forward(e.alpha_hat);
  e.u_hat_inv = backward(e.beta_hat);
  e.u_check = forward(e.alpha_check);
  e.u_check_inv = backward(e.beta_check);
  return e;
}

// Each relation of one R-twist side: (name, lhs, rhs).
void side_relations(CheckBuilder& b, const QuasiHopfDatum& d, const SparseTensor& alpha_x,
                    const SparseTensor& beta_x, const SparseTensor& u, const SparseTensor& u_inv) {
  b.equal(d.mul(u, u_inv), d.one(), "u u^-1");
  b.equal(d.mul(u_inv, u), d.one(), "u^-1 u");
  for (int a = 0; a < d.dim(); ++a) {
    const SparseTensor sia = d.Sinv(d.basis(a));
    if (!b.equal(d.antipode().image(a), d.mul({u, sia, u_inv}), "S(a), a=" + std::to_string(a))) break;
  }
  b.equal(alpha_x, d.mul(u, d.Sinv(d.alpha())), "alpha");
  b.equal(beta_x, d.mul(d.Sinv(d.beta()), u_inv), "beta");
}

}  // namespace

const RTwistElements& rtwist_elements(const QuasiHopfDatum& d) {
  return d.cached<RTwistElements>("rtwist", [&d] {
    RTwistElements e = rtwist_raw(d);
    CheckBuilder hat("hat", false);
    side_relations(hat, d, e.alpha_hat, e.beta_hat, e.u_hat, e.u_hat_inv);
    CheckBuilder check("check", false);
    side_relations(check, d, e.alpha_check, e.beta_check, e.u_check, e.u_check_inv);
    if (hat.failed() || check.failed()) {
      throw InternalInconsistency("R-twist relations fail on a datum that claims to be quasitriangular");
    }
    return e;
  });
}

CheckReport check_rtwist_relations(const QuasiHopfDatum& d, const CheckOptions& opts) {
  CheckReport report;
  report.run("rtwist.hat", [&](CheckBuilder& b) {
    const RTwistElements e = rtwist_raw(d);
    side_relations(b, d, e.alpha_hat, e.beta_hat, e.u_hat, e.u_hat_inv);
  }, opts);
  report.run("rtwist.check", [&](CheckBuilder& b) {
    const RTwistElements e = rtwist_raw(d);
    side_relations(b, d, e.alpha_check, e.beta_check, e.u_check, e.u_check_inv);
  }, opts);
  report.run("rtwist.evaluation", [&](CheckBuilder& b) {
    const RTwistElements& e = rtwist_elements(d);
    b.equal(d.Sinv(e.alpha_check), d.mul(e.u_hat_inv, d.alpha()), "S^-1(alpha_check)");
    b.equal(d.Sinv(e.alpha_hat), d.mul(e.u_check_inv, d.alpha()), "S^-1(alpha_hat)");
  }, opts);
  report.run("rtwist.coevaluation", [&](CheckBuilder& b) {
    const RTwistElements& e = rtwist_elements(d);
    b.equal(d.Sinv(e.beta_check), d.mul(d.beta(), e.u_hat), "S^-1(beta_check)");
    b.equal(d.Sinv(e.beta_hat), d.mul(d.beta(), e.u_check), "S^-1(beta_hat)");
  }, opts);
  report.run("rtwist.drinfeld", [&](CheckBuilder& b) {
    const RTwistElements& e = rtwist_elements(d);
    const SparseTensor& u = drinfeld_u(d).u;
    b.equal(u, e.u_check, "u = u_check");
    b.equal(u, d.S(e.u_hat_inv), "u = S(u_hat^-1)");
  }, opts);
  report.run("rtwist.alpha_check", [&](CheckBuilder& b) {
    const RTwistElements& e = rtwist_elements(d);
    b.equal(e.alpha_check, d.mul(d.S(d.alpha()), drinfeld_u(d).u));
  }, opts);
  report.run("rtwist.central_product", [&](CheckBuilder& b) {
    const RTwistElements& e = rtwist_elements(d);
    b.equal(d.mul(e.u_hat, d.Sinv(e.u_check)), d.one());
  }, opts);
  return report;
}

CheckReport check_rtwist_symmetry(const QuasiHopfDatum& d, const CheckOptions& opts) {
  CheckReport report;
  report.run("rtwist.symmetry", [&](CheckBuilder& b) {
    DatumParts parts = d.parts();
    parts.R = flip(d.R_inv(), 0, 1);
    const QuasiHopfDatum swapped(std::move(parts));
    const RTwistElements e = rtwist_raw(d);
    const RTwistElements s = rtwist_raw(swapped);
    b.equal(s.alpha_hat, e.alpha_check, "alpha_hat");
    b.equal(s.beta_hat, e.beta_check, "beta_hat");
    b.equal(s.u_hat, e.u_check, "u_hat");
    b.equal(s.alpha_check, e.alpha_hat, "alpha_check");
    b.equal(s.beta_check, e.beta_hat, "beta_check");
    b.equal(s.u_check, e.u_hat, "u_check");
  }, opts);
  return report;
}

CheckReport check_opcop_table(const QuasiHopfDatum& d, const CheckOptions& opts) {
  CheckReport report;
  report.run("opcop.table", [&](CheckBuilder& b) {
    const RTwistElements e = rtwist_raw(d);
    const RTwistElements o = rtwist_raw(op_cop(d));
    b.equal(o.alpha_hat, e.beta_check, "alpha_hat");
    b.equal(o.beta_hat, e.alpha_check, "beta_hat");
    b.equal(o.alpha_check, e.beta_hat, "alpha_check");
    b.equal(o.beta_check, e.alpha_hat, "beta_check");
    b.equal(o.u_hat, e.u_check_inv, "u_hat");
    b.equal(o.u_check, e.u_hat_inv, "u_check");
  }, opts);
  return report;
}

CheckReport is_ribbon(const QuasiHopfDatum& d, const SparseTensor& v, const CheckOptions& opts) {
  CheckReport report;
  report.run("ribbon.nonzero", [&](CheckBuilder& b) {
    if (v.is_zero()) b.fail("v = 0");
  }, opts);
  report.run("ribbon.central", [&](CheckBuilder& b) {
    for (int a = 0; a < d.dim(); ++a) {
      if (!b.equal(d.mul(v, d.basis(a)), d.mul(d.basis(a), v), "a=" + std::to_string(a))) return;
    }
  }, opts);
  report.run("ribbon.coproduct", [&](CheckBuilder& b) {
    const SparseTensor rr = d.mul(flip(d.R(), 0, 1), d.R());
    b.equal(d.D(v), d.mul(rr, concat(v, v)));
  }, opts);
  report.run("ribbon.antipode", [&](CheckBuilder& b) { b.equal(d.S(v), v); }, opts);
  report.run("ribbon.counit", [&](CheckBuilder& b) { b.equal(d.eps(v), Scalar::one(d.field())); }, opts);
  const bool defining = report.passed();
  report.run("ribbon.invertible", [&](CheckBuilder& b) {
    try {
      d.inv(v);
    } catch (const NotInvertible&) {
      b.fail("v is not invertible");
    }
  }, opts);
  if (defining && !report.passed()) {
    throw InternalInconsistency("ribbon axioms hold but v is not invertible");
  }
  return report;
}

CheckReport check_ribbon_lemma(const QuasiHopfDatum& d, const SparseTensor& v, const CheckOptions& opts) {
  CheckReport report;
  report.run("ribbon.lemma", [&](CheckBuilder& b) {
    const RTwistElements& e = rtwist_elements(d);
    const SparseTensor v2 = d.mul(v, v);
    b.equal(d.mul(v2, e.alpha_check), e.alpha_hat, "v^2 alpha_check = alpha_hat");
    b.equal(d.mul(v2, e.beta_hat), e.beta_check, "v^2 beta_hat = beta_check");
  }, opts);
  return report;
}

CheckReport check_main_theorem(const QuasiHopfDatum& d, const SparseTensor& v, const CheckOptions& opts) {
  CheckReport report;
  report.run("ribbon.theorem", [&](CheckBuilder& b) {
    const SparseTensor v_inv = d.inv(v);
    const SparseTensor& u = drinfeld_u(d).u;
    b.equal(d.mul(v_inv, v_inv), d.mul(u, d.S(u)), "v^-2 = u S(u)");
  }, opts);
  report.run("ribbon.theorem_step", [&](CheckBuilder& b) {
    const RTwistElements& e = rtwist_elements(d);
    b.equal(d.mul(v, v), d.mul(e.u_hat, e.u_check_inv), "v^2 = u_hat u_check^-1");
  }, opts);
  return report;
}

std::vector<SparseTensor> center(const QuasiHopfDatum& d) {
  const int n = d.dim();
  const Algebra& A = d.algebra();
  // Row (i, m): Σ_k z_k ([e_k e_i]_m - [e_i e_k]_m) = 0.
  std::vector<linalg::SparseRow> rows;
  std::vector<Scalar> acc(static_cast<std::size_t>(n) * n, Scalar::zero(d.field()));
  for (int i = 0; i < n; ++i) {
    std::fill(acc.begin(), acc.end(), Scalar::zero(d.field()));
    for (int k = 0; k < n; ++k) {
      for (const Term& t : A.product(k, i)) acc[static_cast<std::size_t>(t.index) * n + k] += t.coeff;
      for (const Term& t : A.product(i, k)) acc[static_cast<std::size_t>(t.index) * n + k] -= t.coeff;
    }
    for (int m = 0; m < n; ++m) {
      linalg::SparseRow row;
      for (int k = 0; k < n; ++k) {
        const Scalar& c = acc[static_cast<std::size_t>(m) * n + k];
        if (!c.is_zero()) row.emplace_back(k, c);
      }
      if (!row.empty()) rows.push_back(std::move(row));
    }
  }
  std::vector<SparseTensor> basis;
  for (const auto& vec : linalg::null_space(std::move(rows), n, d.field())) {
    TensorBuilder b(d.field(), n, 1);
    for (int k = 0; k < n; ++k) b.add(static_cast<Key>(k), vec[k]);
    basis.push_back(std::move(b).build());
  }
  return basis;
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::user: return "user";
    case Provenance::closed_form: return "closed-form";
    case Provenance::solver: return "solver";
  }
  return "?";
}

RibbonStrategy parse_strategy(std::string_view text) {
  if (text == "auto") return RibbonStrategy::automatic;
  if (text == "blocks") return RibbonStrategy::blocks;
  if (text == "center") return RibbonStrategy::center;
  throw std::invalid_argument("unknown ribbon strategy '" + std::string(text) + "'");
}

namespace {

// Odometer over F_p^k; returns false after the last vector.
bool advance(std::vector<std::uint32_t>& digits, std::uint32_t p) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < p) return true;
    digits[i] = 0;
  }
  return false;
}

double power_of(double base, std::size_t exponent) { return std::pow(base, static_cast<double>(exponent)); }

std::vector<std::vector<int>> blocks_of(const QuasiHopfDatum& d) {
  std::vector<std::vector<int>> blocks;
  const auto& meta = d.metadata();
  if (!meta.contains("blocks") || !meta["blocks"].is_array()) return blocks;
  std::vector<int> seen(static_cast<std::size_t>(d.dim()), 0);
  for (const auto& blk : meta["blocks"]) {
    std::vector<int> b;
    for (const auto& i : blk) {
      const int k = i.get<int>();
      if (k < 0 || k >= d.dim() || seen[k]++) throw ShapeError("malformed block metadata");
      b.push_back(k);
    }
    blocks.push_back(std::move(b));
  }
  for (int s : seen) {
    if (s != 1) throw ShapeError("block metadata does not partition the basis");
  }
  return blocks;
}

SparseTensor restrict_to(const SparseTensor& x, const std::vector<int>& block) {
  TensorBuilder b(x.field(), x.dim(), 1);
  for (int i : block) b.add(static_cast<Key>(i), x.at_key(static_cast<Key>(i)));
  return std::move(b).build();
}

bool coordinates_less(const SparseTensor& a, const SparseTensor& b) {
  for (int i = 0; i < a.dim(); ++i) {
    const Scalar x = a.at_key(static_cast<Key>(i));
    const Scalar y = b.at_key(static_cast<Key>(i));
    if (x == y) continue;
    return x.to_rational() < y.to_rational();
  }
  return false;
}

}  // namespace

RibbonSearch find_ribbon(const QuasiHopfDatum& d, std::uint64_t budget, RibbonStrategy strategy) {
  const Field& f = d.field();
  const SparseTensor& u = drinfeld_u(d).u;
  const SparseTensor c = d.inv(d.mul(u, d.S(u)));
  RibbonSearch out;
  std::vector<SparseTensor> squares;  // candidates handed to is_ribbon

  std::vector<std::vector<int>> blocks;
  if (strategy != RibbonStrategy::center) blocks = blocks_of(d);
  if (strategy == RibbonStrategy::blocks && blocks.empty()) {
    throw PreconditionError("datum carries no block metadata");
  }

  if (!f.is_prime()) {
    throw BudgetExceeded("exhaustive ribbon search is impossible over an infinite field",
                         std::numeric_limits<double>::infinity());
  }
  const std::uint32_t p = f.characteristic();

  if (!blocks.empty()) {
    // Blocks are orthogonal ideals, so v² = c splits into v_B² = c_B.
    double required = 0;
    for (const auto& blk : blocks) required += power_of(p, blk.size());
    if (required > static_cast<double>(budget)) {
      throw BudgetExceeded("blockwise search needs " + std::to_string(required) + " points", required);
    }
    std::vector<std::vector<SparseTensor>> roots;
    std::string region = "blocks";
    for (const auto& blk : blocks) {
      const SparseTensor cb = restrict_to(c, blk);
      std::vector<SparseTensor> found;
      std::vector<std::uint32_t> digits(blk.size(), 0);
      do {
        TensorBuilder b(f, d.dim(), 1);
        for (std::size_t i = 0; i < blk.size(); ++i) {
          b.add(static_cast<Key>(blk[i]), Scalar(f, static_cast<long long>(digits[i])));
        }
        SparseTensor x = std::move(b).build();
        ++out.examined;
        if (d.mul(x, x) == cb) found.push_back(std::move(x));
      } while (advance(digits, p));
      region += " F_" + std::to_string(p) + "^" + std::to_string(blk.size());
      roots.push_back(std::move(found));
    }
    std::vector<std::size_t> pick(roots.size(), 0);
    const bool any_empty = std::any_of(roots.begin(), roots.end(), [](const auto& r) { return r.empty(); });
    if (!any_empty) {
      while (true) {
        SparseTensor v(f, d.dim(), 1);
        for (std::size_t i = 0; i < roots.size(); ++i) v = v + roots[i][pick[i]];
        squares.push_back(std::move(v));
        std::size_t i = roots.size();
        while (i-- > 0 && ++pick[i] == roots[i].size()) pick[i] = 0;
        if (i == static_cast<std::size_t>(-1)) break;
      }
    }
    out.region = region;
  } else {
    const std::vector<SparseTensor> z = center(d);
    const double required = power_of(p, z.size());
    if (required > static_cast<double>(budget)) {
      throw BudgetExceeded("center enumeration needs " + std::to_string(required) + " points", required);
    }
    std::vector<std::uint32_t> digits(z.size(), 0);
    do {
      TensorBuilder b(f, d.dim(), 1);
      for (std::size_t i = 0; i < z.size(); ++i) {
        if (digits[i] != 0) b.add(z[i], Scalar(f, static_cast<long long>(digits[i])));
      }
      SparseTensor v = std::move(b).build();
      ++out.examined;
      // Every central element is tested against the axioms; the theorem is not used here.
      if (!v.is_zero() && d.eps(v).is_one() && d.S(v) == v) squares.push_back(std::move(v));
    } while (advance(digits, p));
    out.region = "center F_" + std::to_string(p) + "^" + std::to_string(z.size());
  }

  for (SparseTensor& v : squares) {
    if (v.is_zero()) continue;
    if (is_ribbon(d, v).passed()) out.candidates.push_back({std::move(v), Provenance::solver});
  }
  std::sort(out.candidates.begin(), out.candidates.end(),
            [](const RibbonCandidate& a, const RibbonCandidate& b) { return coordinates_less(a.v, b.v); });
  return out;
}

}  // namespace qhopf
