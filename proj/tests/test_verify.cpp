#include <doctest.h>

#include "qhopf/errors.hpp"
#include "qhopf/examples.hpp"
#include "qhopf/verify.hpp"
#include "support/dense_oracle.hpp"
#include "support/mutation.hpp"

using namespace qhopf;

namespace {

const Field f7 = Field::prime(7);

DatumParts parts_of(const QuasiHopfDatum& d) { return d.parts(); }

const Check& must_find(const CheckReport& r, const std::string& name) {
  const Check* c = r.find(name);
  REQUIRE_MESSAGE(c != nullptr, name);
  return *c;
}

// Pentagon and both hexagons with the oracle's dense products.
struct OracleAxioms {
  bool pentagon;
  bool hexagon_left;
  bool hexagon_right;
};

OracleAxioms oracle_axioms(const QuasiHopfDatum& q) {
  using namespace oracle;
  const DenseDatum d(q);
  const DenseAlgebra& a = d.alg;
  const Dense u1 = one(a, 1);
  const Dense& phi = d.phi;
  const Dense lhs = mul(a, apply(phi, {nullptr, nullptr, &d.delta}), apply(phi, {&d.delta, nullptr, nullptr}));
  const Dense rhs = mul(a, mul(a, tensor(u1, phi), apply(phi, {nullptr, &d.delta, nullptr})), tensor(phi, u1));
  OracleAxioms out{to_sparse(lhs) == to_sparse(rhs), true, true};
  if (!d.R) return out;
  const Dense& R = *d.R;
  const Dense& bar = d.phi_inv;
  auto chain = [&](std::initializer_list<Dense> fs) {
    Dense r = one(a, 3);
    for (const Dense& f : fs) r = mul(a, r, f);
    return r;
  };
  // (Δ⊗id)(R) = (Y⊗Z⊗X)(s⊗1⊗t)(X̄⊗Z̄⊗Ȳ)(1⊗s⊗t)(X⊗Y⊗Z)
  const Dense left = chain({arrange(phi, {2, 0, 1}), arrange(tensor(R, u1), {0, 2, 1}), arrange(bar, {0, 2, 1}),
                            tensor(u1, R), phi});
  out.hexagon_left = to_sparse(apply(R, {&d.delta, nullptr})) == to_sparse(left);
  // (id⊗Δ)(R) = (Z̄⊗X̄⊗Ȳ)(s⊗1⊗t)(Y⊗X⊗Z)(s⊗t⊗1)(X̄⊗Ȳ⊗Z̄)
  const Dense right = chain({arrange(bar, {1, 2, 0}), arrange(tensor(R, u1), {0, 2, 1}), arrange(phi, {1, 0, 2}),
                             tensor(R, u1), bar});
  out.hexagon_right = to_sparse(apply(R, {nullptr, &d.delta})) == to_sparse(right);
  return out;
}

}  // namespace

TEST_CASE("trivial and classical examples pass") {
  const QuasiHopfDatum k = build_example("group", "Z2", 0, f7);
  CHECK(verify_quasi_bialgebra(k).passed());
  CHECK(verify_quasi_hopf(k).passed());
  CHECK(verify_quasitriangular(k).passed());
  CHECK(verify_quasi_hopf(sweedler()).passed());
  CHECK(verify_quasitriangular(sweedler()).passed());
  // On K[Z2] the antipode is the identity.
  CHECK(k.antipode() == LinearMap::identity(f7, 2));
}

TEST_CASE("counit-associator and R counit on every example") {
  for (const auto& ex : standard_examples()) {
    const QuasiHopfDatum& d = ex.datum;
    CHECK(apply_legs(d.phi(), {nullptr, &d.epsilon(), nullptr}) == d.one(2));
    if (d.has_R()) {
      CHECK(apply_legs(d.R(), {&d.epsilon(), nullptr}) == d.one(1));
      CHECK(apply_legs(d.R(), {nullptr, &d.epsilon()}) == d.one(1));
    }
  }
}

TEST_CASE("F(Z2) with the sign cocycle") {
  const Cocycle3 w = cocycle_zn(2, 1, f7);
  CHECK(w(1, 1, 1) == Scalar(f7, 6));
  CHECK(w(0, 1, 1).is_one());
  CHECK(w(1, 0, 1).is_one());
  CHECK(w(1, 1, 0).is_one());
  const QuasiHopfDatum d = function_algebra(w);
  CHECK(d.phi() != d.one(3));
  CHECK(d.mul(d.phi(), d.phi()) == d.one(3));
  CHECK(verify_quasi_bialgebra(d).passed());
  CHECK(verify_quasi_hopf(d).passed());
  CHECK(oracle_axioms(d).pentagon);

  // Flip one sign of Φ.
  DatumParts p = parts_of(d);
  p.phi_inverse.reset();
  const std::vector<int> at{0, 1, 1};
  p.phi = p.phi - SparseTensor::from_entries(f7, 2, 3, {{at, p.phi.at(at) + p.phi.at(at)}});
  const QuasiHopfDatum flipped(std::move(p));
  const CheckReport r = verify_quasi_bialgebra(flipped);
  const Check& pent = must_find(r, "pentagon");
  CHECK(pent.status == Status::fail);
  REQUIRE(pent.witness.has_value());
  CHECK(pent.witness->index.size() == 4);
  CHECK_FALSE(oracle_axioms(flipped).pentagon);
}

TEST_CASE("dropping the cocycle factor from beta breaks duality") {
  const QuasiHopfDatum d = function_algebra(cocycle_zn(2, 1, f7));
  DatumParts p = parts_of(d);
  p.beta = d.one();
  const CheckReport r = verify_quasi_hopf(QuasiHopfDatum(std::move(p)));
  CHECK(must_find(r, "duality.phi").status == Status::fail);
}

TEST_CASE("Sweedler with alpha = 0 breaks duality") {
  DatumParts p = parts_of(sweedler());
  p.alpha = SparseTensor(p.alpha.field(), 4, 1);
  const CheckReport r = verify_quasi_hopf(QuasiHopfDatum(std::move(p)));
  CHECK(must_find(r, "duality.phi").status == Status::fail);
}

TEST_CASE("engine verifiers agree with the dense oracle on pentagon and hexagons") {
  for (const auto& ex : standard_examples()) {
    CAPTURE(ex.name);
    const OracleAxioms o = oracle_axioms(ex.datum);
    CHECK(o.pentagon);
    CHECK(o.hexagon_left);
    CHECK(o.hexagon_right);
    if (ex.datum.has_R()) {
      const CheckReport r = verify_quasitriangular(ex.datum);
      CHECK(must_find(r, "hexagon.left").status == Status::pass);
      CHECK(must_find(r, "hexagon.right").status == Status::pass);
      CHECK(must_find(r, "R.antipode").status == Status::pass);
    }
  }
}

TEST_CASE("hexagon mutations are seen by both the engine and the oracle") {
  const QuasiHopfDatum d = build_example("dpr", "Z2", 1, f7);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const QuasiHopfDatum m = mutation::mutate(d, mutation::Target::R, seed);
    const CheckReport r = verify_quasitriangular(m);
    const OracleAxioms o = oracle_axioms(m);
    CHECK(o.hexagon_left == (must_find(r, "hexagon.left").status == Status::pass));
    CHECK(o.hexagon_right == (must_find(r, "hexagon.right").status == Status::pass));
    CHECK_FALSE(r.passed());
  }
}

TEST_CASE("every single-coefficient mutation is detected") {
  using mutation::Target;
  for (const auto& ex : standard_examples()) {
    const Level level = ex.datum.top_level() == Level::ribbon ? Level::qt : ex.datum.top_level();
    std::vector<Target> targets{Target::phi, Target::S, Target::alpha, Target::beta};
    if (ex.datum.has_R()) targets.push_back(Target::R);
    for (Target t : targets) {
      for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const CheckReport r = verify_level(mutation::mutate(ex.datum, t, seed), level);
        CAPTURE(ex.name);
        CAPTURE(mutation::name(t));
        CAPTURE(seed);
        CHECK(r.failures() >= 1);
      }
    }
  }
}

TEST_CASE("report witnesses and verbose diffs") {
  const QuasiHopfDatum d = sweedler();
  DatumParts p = parts_of(d);
  p.beta = d.one().scaled(Scalar(d.field(), 2));
  const QuasiHopfDatum broken(std::move(p));
  const CheckReport quiet = verify_quasi_hopf(broken);
  const CheckReport loud = verify_quasi_hopf(broken, CheckOptions{true, 1});
  const Check& c = must_find(loud, "duality.phi");
  CHECK(c.status == Status::fail);
  CHECK_FALSE(c.diff.empty());
  CHECK(must_find(quiet, "duality.phi").diff.empty());
  CHECK(quiet.to_json().is_array());
  CHECK(quiet.to_text().find("duality.phi") != std::string::npos);
}

TEST_CASE("parallel and serial runs give the same report") {
  const QuasiHopfDatum d = build_example("dpr", "Z3", 1, f7);
  const CheckReport serial = verify_level(d, Level::qt, CheckOptions{false, 1});
  const CheckReport parallel = verify_level(d, Level::qt, CheckOptions{false, 4});
  CHECK(serial.to_json() == parallel.to_json());
}

TEST_CASE("ribbon level without v") {
  const CheckReport r = verify_level(build_example("dpr", "Z2", 1, f7), Level::ribbon);
  CHECK(must_find(r, "ribbon.present").status == Status::fail);
  const CheckReport no_r = verify_level(build_example("function", "Z2", 1, f7), Level::qt);
  CHECK(must_find(no_r, "R.present").status == Status::fail);
  CHECK_THROWS_AS(verify_quasitriangular(build_example("function", "Z2", 1, f7)), MissingR);
}
