#include <doctest.h>

#include "qhopf/derived.hpp"
#include "qhopf/errors.hpp"
#include "qhopf/examples.hpp"
#include "qhopf/twisting.hpp"
#include "qhopf/verify.hpp"
#include "support/dense_oracle.hpp"

using namespace qhopf;

namespace {

const Field f7 = Field::prime(7);

QuasiHopfDatum dw_z2() { return build_example("dpr", "Z2", 1, f7); }

QuasiHopfDatum with_alpha_beta(const QuasiHopfDatum& d, const SparseTensor& a, const SparseTensor& b) {
  DatumParts p = d.parts();
  p.alpha = a;
  p.beta = b;
  return QuasiHopfDatum(std::move(p));
}

}  // namespace

TEST_CASE("Hopf case collapses gamma, delta and F") {
  for (const QuasiHopfDatum& d : {build_example("group", "Z2", 0, f7), sweedler(),
                                  build_example("function", "Z3", 0, f7)}) {
    CHECK(gamma_element(d) == d.one(2));
    CHECK(delta_element(d) == d.one(2));
    CHECK(bigF(d).F == d.one(2));
    CHECK(bigF(d).F_inv == d.one(2));
    CHECK(check_F_compat(d).passed());
  }
}

TEST_CASE("trivial associator with general alpha and beta gives gamma = alpha⊗alpha") {
  // K[Z3] is commutative, so scaling α by c and β by c⁻¹ keeps the antipode equations.
  const QuasiHopfDatum base = build_example("group", "Z3", 0, f7);
  const SparseTensor a = base.basis(1) + base.basis(0);
  const SparseTensor b = base.inv(a);
  const QuasiHopfDatum d = with_alpha_beta(base, a, b);
  CHECK(gamma_element(d) == concat(a, a));
  CHECK(delta_element(d) == concat(b, b));
  CHECK(gamma_alternative(d) == concat(a, a));
  CHECK(delta_alternative(d) == concat(b, b));
}

TEST_CASE("gamma, delta, F and F⁻¹ agree with the dense oracle") {
  for (const auto& ex : standard_examples()) {
    CAPTURE(ex.name);
    const oracle::DenseDatum dd(ex.datum);
    CHECK(gamma_element(ex.datum) == oracle::to_sparse(oracle::gamma(dd)));
    CHECK(delta_element(ex.datum) == oracle::to_sparse(oracle::delta(dd)));
    CHECK(bigF(ex.datum).F == oracle::to_sparse(oracle::bigF(dd)));
    CHECK(bigF(ex.datum).F_inv == oracle::to_sparse(oracle::bigF_inv(dd)));
  }
}

TEST_CASE("alternative formulas for gamma and delta") {
  const QuasiHopfDatum d = dw_z2();
  CHECK(gamma_alternative(d) == gamma_element(d));
  CHECK(delta_alternative(d) == delta_element(d));
  const DerivedElements& e = bigF(d);
  CHECK(d.mul(e.F, e.F_inv) == d.one(2));
  CHECK(d.mul(e.F_inv, e.F) == d.one(2));
  CHECK(e.F != d.one(2));
}

TEST_CASE("F compatibility fails after a mutation of F") {
  const QuasiHopfDatum d = dw_z2();
  const DerivedElements& e = bigF(d);
  const SparseTensor bumped = e.F + SparseTensor::from_entries(f7, d.dim(), 2, {{{0, 0}, Scalar(f7, 1)}});
  CHECK(bumped != e.F);
  CHECK(d.mul(bumped, d.D(d.alpha())) != gamma_element(d));
}

TEST_CASE("antipode modification") {
  const QuasiHopfDatum d = dw_z2();
  CHECK(modify_antipode(d, d.one()) == d);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SparseTensor x = random_invertible(d, seed);
    const QuasiHopfDatum dx = modify_antipode(d, x);
    CHECK(verify_quasi_hopf(dx).passed());
    CHECK(modify_antipode(dx, d.inv(x)) == d);
    CHECK(recover_modifier(d, dx) == x);
    CHECK(check_modification_laws(d, x).passed());
  }
  CHECK(recover_modifier(d, d) == d.one());
  CHECK_THROWS_AS(recover_modifier(d, build_example("dpr", "Z2", 0, f7)), PreconditionError);
}

TEST_CASE("modification on a noncommutative example") {
  const QuasiHopfDatum d = sweedler();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SparseTensor x = random_invertible(d, seed);
    CHECK(recover_modifier(d, modify_antipode(d, x)) == x);
    CHECK(check_modification_laws(d, x).passed());
  }
}

TEST_CASE("coopposite and op_cop are involutions") {
  for (const auto& ex : standard_examples()) {
    CAPTURE(ex.name);
    const QuasiHopfDatum c = coopposite(ex.datum);
    CHECK(verify_quasi_hopf(c).passed());
    CHECK(coopposite(c).parts().phi == ex.datum.phi());
    CHECK(coopposite(c).antipode() == ex.datum.antipode());
    CHECK(coopposite(c).delta() == ex.datum.delta());
    CHECK(op_cop(op_cop(ex.datum)) == ex.datum);
    CHECK(check_coopposite(ex.datum).passed());
    if (ex.datum.has_R()) CHECK(verify_level(op_cop(ex.datum), Level::qt).passed());
  }
}

TEST_CASE("op_cop of a commutative cocommutative datum only swaps alpha and beta") {
  const QuasiHopfDatum d = build_example("group", "Z3", 0, f7);
  const QuasiHopfDatum oc = op_cop(d);
  CHECK(oc.algebra() == d.algebra());
  CHECK(oc.delta() == d.delta());
  CHECK(oc.phi() == d.phi());
  CHECK(oc.alpha() == d.beta());
  CHECK(oc.beta() == d.alpha());
}

TEST_CASE("coopposite of a cocommutative Hopf algebra changes only the antipode layer") {
  const QuasiHopfDatum d = build_example("group", "Z3", 0, f7);
  const QuasiHopfDatum c = coopposite(d);
  CHECK(c.delta() == d.delta());
  CHECK(c.phi() == d.phi());
  CHECK(c.antipode() == d.antipode_inv());
}
