#include "doctest.h"

#include <random>

#include "qhopf/tensor.hpp"
#include "support/dense_oracle.hpp"

using namespace qhopf;

namespace {

// Group algebra of Z_n: e_i e_j = e_{i+j}.
Algebra cyclic_group_algebra(Field f, int n) {
  std::vector<std::vector<Term>> table(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) table[i * n + j].push_back({(i + j) % n, Scalar::one(f)});
  }
  return Algebra(f, n, std::move(table), SparseTensor::basis(f, n, 0));
}

// Functions on Z_n: δ_i δ_j = [i=j] δ_i.
Algebra function_algebra(Field f, int n) {
  std::vector<std::vector<Term>> table(static_cast<std::size_t>(n * n));
  TensorBuilder unit(f, n, 1);
  for (int i = 0; i < n; ++i) {
    table[i * n + i].push_back({i, Scalar::one(f)});
    unit.add(Key(i), Scalar::one(f));
  }
  return Algebra(f, n, std::move(table), std::move(unit).build());
}

// Upper triangular 2x2 matrices: basis E11, E12, E22 (non-commutative).
Algebra triangular(Field f) {
  std::vector<std::vector<Term>> table(9);
  const Scalar one = Scalar::one(f);
  table[0 * 3 + 0] = {{0, one}};
  table[0 * 3 + 1] = {{1, one}};
  table[1 * 3 + 2] = {{1, one}};
  table[2 * 3 + 2] = {{2, one}};
  TensorBuilder unit(f, 3, 1);
  unit.add(Key(0), one);
  unit.add(Key(2), one);
  return Algebra(f, 3, std::move(table), std::move(unit).build());
}

SparseTensor random_tensor(std::mt19937_64& rng, Field f, int n, int k, int terms) {
  TensorBuilder b(f, n, k);
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int t = 0; t < terms; ++t) {
    for (int& i : idx) i = static_cast<int>(rng() % n);
    b.add(std::span<const int>(idx), Scalar(f, static_cast<long long>(rng() % 11) - 5));
  }
  return std::move(b).build();
}

// Coproduct of the group algebra, Δ(e_i) = e_i ⊗ e_i.
LinearMap grouplike_delta(Field f, int n) {
  std::vector<std::vector<Entry>> rows(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) rows[i].push_back({Key(i) * n + i, Scalar::one(f)});
  return LinearMap(f, n, 2, std::move(rows));
}

}  // namespace

TEST_CASE("unit and orthogonal idempotents") {
  const Field f = Field::prime(7);
  const Algebra fz2 = function_algebra(f, 2);
  const SparseTensor d0 = SparseTensor::basis(f, 2, 0);
  const SparseTensor d1 = SparseTensor::basis(f, 2, 1);
  CHECK(mult(fz2, d0, d0) == d0);
  CHECK(mult(fz2, d0, d1).is_zero());
  std::mt19937_64 rng(1);
  for (int k = 1; k <= 3; ++k) {
    const SparseTensor t = random_tensor(rng, f, 2, k, 5);
    CHECK(mult(fz2, fz2.one(k), t) == t);
    CHECK(mult(fz2, t, fz2.one(k)) == t);
  }
}

TEST_CASE("sign associator is self-inverse") {
  const Field f = Field::prime(7);
  const Algebra fz2 = function_algebra(f, 2);
  TensorBuilder b(f, 2, 3);
  for (int a = 0; a < 2; ++a) {
    for (int c = 0; c < 2; ++c) {
      for (int d = 0; d < 2; ++d) {
        const bool minus = a == 1 && c + d >= 2;
        b.add(std::vector<int>{a, c, d}, Scalar(f, minus ? -1 : 1));
      }
    }
  }
  const SparseTensor phi = std::move(b).build();
  CHECK(mult(fz2, phi, phi) == fz2.one(3));
  CHECK(invert(fz2, phi) == phi);
  CHECK(invert(fz2, fz2.one(3)) == fz2.one(3));
  CHECK_THROWS_AS(invert(fz2, SparseTensor(f, 2, 3)), NotInvertible);
}

TEST_CASE("arity mismatch and shape errors") {
  const Field f = Field::prime(7);
  const Algebra a = cyclic_group_algebra(f, 3);
  CHECK_THROWS_AS(mult(a, a.one(1), a.one(2)), ArityMismatch);
  CHECK_THROWS_AS(apply_legs(a.one(2), {nullptr}), ShapeError);
  CHECK_THROWS_AS(flip(a.one(2), 0, 0), ShapeError);
  CHECK_THROWS_AS(SparseTensor::from_entries(f, 3, 1, {{{3}, Scalar::one(f)}}), ShapeError);
}

TEST_CASE("flip and permute") {
  const Field f = Field::prime(11);
  std::mt19937_64 rng(7);
  const SparseTensor t = random_tensor(rng, f, 3, 3, 12);
  CHECK(flip(flip(t, 0, 1), 0, 1) == t);
  CHECK(permute(permute(t, {1, 2, 0}), {2, 0, 1}) == t);
  const SparseTensor a = SparseTensor::basis(f, 3, 1);
  const SparseTensor b = SparseTensor::basis(f, 3, 2);
  CHECK(flip(concat(a, b), 0, 1) == concat(b, a));
  for (const Entry& e : t.entries()) {
    const auto idx = t.indices_of(e.key);
    const std::vector<int> moved{idx[1], idx[2], idx[0]};
    CHECK(permute(t, {1, 2, 0}).at(moved) == e.value);
  }
}

TEST_CASE("mult and apply_legs agree with the dense oracle") {
  const Field f = Field::prime(13);
  std::mt19937_64 rng(99);
  const std::vector<Algebra> algebras{cyclic_group_algebra(f, 3), function_algebra(f, 4),
                                      triangular(f)};
  for (const Algebra& alg : algebras) {
    const oracle::DenseAlgebra dense(alg);
    const int n = alg.dim();
    const LinearMap delta = grouplike_delta(f, n);
    linalg::DenseMatrix m(n, std::vector<Scalar>(n, Scalar::zero(f)));
    for (auto& row : m) {
      for (auto& v : row) v = Scalar(f, static_cast<long long>(rng() % 13));
    }
    const LinearMap s = LinearMap::from_matrix(f, m);
    const oracle::DenseMap ddelta(delta);
    const oracle::DenseMap ds(s);
    for (int trial = 0; trial < 20; ++trial) {
      const int k = 1 + trial % 3;
      const SparseTensor x = random_tensor(rng, f, n, k, 6);
      const SparseTensor y = random_tensor(rng, f, n, k, 6);
      CHECK(mult(alg, x, y) == oracle::to_sparse(oracle::mul(dense, oracle::to_dense(x),
                                                             oracle::to_dense(y))));
      LegMaps legs(static_cast<std::size_t>(k), nullptr);
      std::vector<const oracle::DenseMap*> dlegs(static_cast<std::size_t>(k), nullptr);
      legs[0] = &delta;
      dlegs[0] = &ddelta;
      if (k > 1) {
        legs[k - 1] = &s;
        dlegs[k - 1] = &ds;
      }
      CHECK(apply_legs(x, legs) == oracle::to_sparse(oracle::apply(oracle::to_dense(x), dlegs)));
    }
  }
}

TEST_CASE("mult is associative and homomorphic legs commute with it") {
  const Field f = Field::prime(13);
  std::mt19937_64 rng(5);
  const Algebra alg = triangular(f);
  const Algebra grp = cyclic_group_algebra(f, 3);
  const LinearMap delta = grouplike_delta(f, 3);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 1 + trial % 3;
    const SparseTensor a = random_tensor(rng, f, 3, k, 5);
    const SparseTensor b = random_tensor(rng, f, 3, k, 5);
    const SparseTensor c = random_tensor(rng, f, 3, k, 5);
    CHECK(mult(alg, mult(alg, a, b), c) == mult(alg, a, mult(alg, b, c)));
    CHECK(apply_leg(mult(grp, a, b), 0, delta) ==
          mult(grp, apply_leg(a, 0, delta), apply_leg(b, 0, delta)));
  }
}

TEST_CASE("invert is two-sided") {
  const Field f = Field::prime(7);
  std::mt19937_64 rng(3);
  const Algebra alg = triangular(f);
  int inverted = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const SparseTensor t = alg.one(2) + random_tensor(rng, f, 3, 2, 3);
    try {
      const SparseTensor inv = invert(alg, t);
      CHECK(mult(alg, t, inv) == alg.one(2));
      CHECK(mult(alg, inv, t) == alg.one(2));
      ++inverted;
    } catch (const NotInvertible&) {
    }
  }
  CHECK(inverted > 0);
}

TEST_CASE("fold, sandwich and multiply_legs") {
  const Field f = Field::prime(13);
  std::mt19937_64 rng(11);
  const Algebra alg = triangular(f);
  const oracle::DenseAlgebra dense(alg);
  const SparseTensor c = random_tensor(rng, f, 3, 1, 2);
  for (int trial = 0; trial < 10; ++trial) {
    const SparseTensor t = random_tensor(rng, f, 3, 3, 5);
    // fold {{2, c, 0}, {1}}: Σ t_{abd} (e_d c e_a) ⊗ e_b
    TensorBuilder expect(f, 3, 2);
    for (const Entry& e : t.entries()) {
      const auto idx = t.indices_of(e.key);
      const SparseTensor ed = SparseTensor::basis(f, 3, idx[2]);
      const SparseTensor ea = SparseTensor::basis(f, 3, idx[0]);
      const SparseTensor left = mult(alg, {ed, c, ea});
      expect.add(concat(left, SparseTensor::basis(f, 3, idx[1])), e.value);
    }
    CHECK(fold(alg, t, {{leg(2), elem(c), leg(0)}, {leg(1)}}) == std::move(expect).build());

    const int sizes[] = {2, 1};
    TensorBuilder grouped(f, 3, 2);
    for (const Entry& e : t.entries()) {
      const auto idx = t.indices_of(e.key);
      const SparseTensor ab = mult(alg, SparseTensor::basis(f, 3, idx[0]), SparseTensor::basis(f, 3, idx[1]));
      grouped.add(concat(ab, SparseTensor::basis(f, 3, idx[2])), e.value);
    }
    CHECK(multiply_legs(alg, t, sizes) == std::move(grouped).build());

    const SparseTensor p = random_tensor(rng, f, 3, 4, 6);
    const SparseTensor m = random_tensor(rng, f, 3, 2, 4);
    oracle::Dense sum(f, 3, 2);
    for (const Entry& e : p.entries()) {
      const auto idx = p.indices_of(e.key);
      const SparseTensor l = concat(SparseTensor::basis(f, 3, idx[0]), SparseTensor::basis(f, 3, idx[1]));
      const SparseTensor r = concat(SparseTensor::basis(f, 3, idx[2]), SparseTensor::basis(f, 3, idx[3]));
      const oracle::Dense prod = oracle::mul(
          dense, oracle::mul(dense, oracle::to_dense(l), oracle::to_dense(m)), oracle::to_dense(r));
      sum = oracle::add(sum, oracle::scale(prod, e.value));
    }
    CHECK(sandwich(alg, p, m) == oracle::to_sparse(sum));
  }
  CHECK_THROWS_AS(fold(alg, random_tensor(rng, f, 3, 2, 3), {{leg(0)}}), ShapeError);
}

TEST_CASE("rational tensors") {
  const Field q = Field::rational();
  const Algebra alg = cyclic_group_algebra(q, 2);
  const SparseTensor half = SparseTensor::from_entries(
      q, 2, 1, {{{0}, Scalar::parse(q, "1/2")}, {{1}, Scalar::parse(q, "1/2")}});
  CHECK(mult(alg, half, half) == half);
  CHECK((half - half).is_zero());
  CHECK(half.scaled(Scalar(q, 2)) == alg.one(1) + SparseTensor::basis(q, 2, 1));
}
