#include <doctest.h>

#include <random>

#include "qhopf/derived.hpp"
#include "qhopf/drinfeld.hpp"
#include "qhopf/dsl.hpp"
#include "qhopf/errors.hpp"
#include "qhopf/examples.hpp"
#include "qhopf/ribbon.hpp"
#include "support/dense_oracle.hpp"
#include "support/mutation.hpp"

using namespace qhopf;

namespace {

const Field f7 = Field::prime(7);

bool holds(const QuasiHopfDatum& d, const std::string& source) {
  const dsl::ExprPtr e = dsl::parse(source);
  return dsl::Evaluator(d).check(*e, source).status == Status::pass;
}

const QuasiHopfDatum& dw_z2() {
  static const QuasiHopfDatum d = dpr_double(cocycle_zn(2, 1, f7));
  return d;
}

// Random syntax trees for the round-trip property; arities are not respected.
class TreeGen {
 public:
  explicit TreeGen(std::uint64_t seed) : rng_(seed) {}

  dsl::ExprPtr make(int depth) {
    auto e = std::make_shared<dsl::Expr>();
    const int pick = depth <= 0 ? below(3) : below(11);
    switch (pick) {
      case 0:
        e->kind = dsl::Kind::name;
        e->text = pick_of({"R", "Phi", "one_2", "alpha_hat_opcop", "F_x", "u", "Tinv", "v"});
        break;
      case 1:
        e->kind = dsl::Kind::scalar;
        e->text = below(2) ? std::to_string(below(50)) : std::to_string(below(9)) + "/" + std::to_string(1 + below(9));
        break;
      case 2:
        e->kind = dsl::Kind::basis;
        e->text = below(2) ? std::string("i") : std::to_string(below(9));
        break;
      case 3:
      case 4:
        e->kind = below(2) ? dsl::Kind::product : dsl::Kind::concat;
        e->args = {make(depth - 1), make(depth - 1)};
        break;
      case 5:
        e->kind = dsl::Kind::neg;
        e->args = {make(depth - 1)};
        break;
      case 6:
        e->kind = dsl::Kind::inv;
        e->args = {make(depth - 1)};
        break;
      case 7:
        e->kind = dsl::Kind::flip;
        e->ints = {below(4), below(4)};
        e->args = {make(depth - 1)};
        break;
      case 8: {
        e->kind = dsl::Kind::map;
        const int k = 1 + below(4);
        for (int i = 0; i < k; ++i) e->legs.push_back(pick_of({"id", "S", "Sinv", "eps", "D", "Dcop", "S_x"}));
        e->args = {make(depth - 1)};
        break;
      }
      default: {
        e->kind = pick == 9 ? dsl::Kind::perm : dsl::Kind::mult;
        const int k = 1 + below(5);
        for (int i = 0; i < k; ++i) e->ints.push_back(below(6));
        e->args = {make(depth - 1)};
        break;
      }
    }
    return e;
  }

  dsl::ExprPtr equation(int depth) {
    auto e = std::make_shared<dsl::Expr>();
    e->kind = dsl::Kind::equals;
    e->args = {make(depth), make(depth)};
    return e;
  }

 private:
  int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  std::string pick_of(std::initializer_list<const char*> options) {
    return *(options.begin() + below(static_cast<int>(options.size())));
  }

  std::mt19937_64 rng_;
};

}  // namespace

TEST_CASE("parsing reference examples") {
  const dsl::ExprPtr counit = dsl::parse("map[eps,id](R) == one_1");
  CHECK(counit->kind == dsl::Kind::equals);
  CHECK(dsl::arity(*counit->args[0]) == 1);
  CHECK(dsl::arity(*counit->args[1]) == 1);

  const dsl::ExprPtr ss = dsl::parse("map[S,S](R) == Fp * R * inv(F)");
  REQUIRE(ss->args[1]->kind == dsl::Kind::product);
  CHECK(ss->args[1]->args[0]->kind == dsl::Kind::product);
  CHECK(ss->args[1]->args[1]->kind == dsl::Kind::inv);
  CHECK(dsl::arity(*ss) == 2);

  CHECK_THROWS_AS(dsl::arity(*dsl::parse("R * alpha")), ArityError);
  CHECK(dsl::arity(*dsl::parse("R # R")) == 4);
  CHECK(dsl::arity(*dsl::parse("R * R")) == 2);
}

TEST_CASE("whitespace does not matter") {
  CHECK(dsl::same(*dsl::parse("map[S,S](R)==Fp*R*inv(F)"), *dsl::parse("  map[ S , S ] ( R )\n==  Fp *R*  inv( F ) ")));
}

TEST_CASE("parse errors carry line and column") {
  auto error_at = [](const std::string& src) -> std::pair<int, int> {
    try {
      dsl::parse(src);
    } catch (const ParseError& e) {
      return {e.line(), e.column()};
    }
    return {0, 0};
  };
  CHECK(error_at("map[S,S](R") == std::pair{1, 11});
  CHECK(error_at("R ** R") == std::pair{1, 4});
  CHECK(error_at("R *\n  )") == std::pair{2, 3});
  CHECK(error_at("R $ R") == std::pair{1, 3});
  CHECK(error_at("flip(R, 0)") == std::pair{1, 10});
  CHECK(error_at("R == R == R") == std::pair{1, 8});
  CHECK(error_at("1/") == std::pair{1, 3});
  CHECK(error_at("") == std::pair{1, 1});
}

TEST_CASE("arity errors") {
  for (const char* bad : {"flip(R, 0, 2)", "perm[0,0](R)", "perm[0](R)", "mult[1](R)", "mult[0,2](R)",
                          "map[S](R)", "map[D,D,D](R)", "R == alpha", "inv(R == R)", "R # (R == R)"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(dsl::arity(*dsl::parse(bad)), ArityError);
  }
  CHECK(dsl::arity(*dsl::parse("map[eps,D,Dcop](Phi)")) == 4);
  CHECK(dsl::arity(*dsl::parse("mult[2,1](Phi)")) == 2);
  CHECK(dsl::arity(*dsl::parse("2 * R")) == 2);
  CHECK(dsl::arity(*dsl::parse("R # 2")) == 2);
}

TEST_CASE("unknown names") {
  CHECK_THROWS_AS(dsl::arity(*dsl::parse("Foo")), UndefinedName);
  CHECK_THROWS_AS(dsl::arity(*dsl::parse("R_sideways")), UndefinedName);
  CHECK_THROWS_AS(dsl::arity(*dsl::parse("map[Q](alpha)")), UndefinedName);

  const QuasiHopfDatum fz2 = function_algebra(cocycle_zn(2, 1, f7));
  const dsl::Evaluator ev(fz2);
  CHECK_THROWS_AS(ev.value(*dsl::parse("R")), UndefinedName);
  CHECK_THROWS_AS(ev.value(*dsl::parse("alpha_hat")), UndefinedName);
  CHECK_THROWS_AS(ev.value(*dsl::parse("basis(j)")), UndefinedName);
  CHECK_THROWS_AS(ev.value(*dsl::parse("basis(4)")), UndefinedName);
  CHECK_THROWS_AS(dsl::Evaluator(dw_z2()).value(*dsl::parse("v")), UndefinedName);
}

TEST_CASE("required layers") {
  CHECK(dsl::required_level(*dsl::parse("Phi * PhiInv == one_3")) == Level::bialgebra);
  CHECK(dsl::required_level(*dsl::parse("map[S](alpha) == beta")) == Level::hopf);
  CHECK(dsl::required_level(*dsl::parse("alpha_hat == alpha")) == Level::qt);
  CHECK(dsl::required_level(*dsl::parse("map[S](v) == v")) == Level::ribbon);
}

TEST_CASE("evaluation examples") {
  for (const auto& ex : standard_examples()) {
    CAPTURE(ex.name);
    const dsl::Evaluator ev(ex.datum);
    CHECK(ev.value(*dsl::parse("one_2 * one_2")) == ex.datum.one(2));
    if (ex.datum.has_R()) CHECK(holds(ex.datum, "u == ucheck"));
  }
  CHECK(holds(dw_z2(), "map[S,S](R)==Fp*R*inv(F)"));
  CHECK_FALSE(holds(dw_z2(), "map[S,S](R) == Fp * Rp * inv(F)"));
}

TEST_CASE("scalars") {
  const QuasiHopfDatum h = sweedler();
  const dsl::Evaluator ev(h);
  CHECK(ev.value(*dsl::parse("1/2 * one_1")) == h.scalar(Scalar::parse(h.field(), "1/2")));
  CHECK(ev.value(*dsl::parse("-1 * -1")).scalar_value() == Scalar::one(h.field()));
  CHECK(ev.value(*dsl::parse("inv(4)")).scalar_value() == Scalar::parse(h.field(), "1/4"));
  CHECK(holds(h, "2 * alpha == alpha # 2"));
  CHECK(holds(h, "-(R * Rinv) == -1 * one_2"));
  CHECK(holds(dw_z2(), "3 * 5 == 1"));  // in F7
}

TEST_CASE("basis variables range over the basis") {
  const QuasiHopfDatum& d = dw_z2();
  const dsl::Evaluator ev(d);
  CHECK(dsl::variables(*dsl::parse("basis(a) * basis(b) == basis(b) * basis(a) * basis(2)")) ==
        std::vector<std::string>{"a", "b"});
  CHECK(ev.check(*dsl::parse("one_1 * basis(i) == basis(i)"), "unit").status == Status::pass);
  const Check c =
      dsl::Evaluator(sweedler()).check(*dsl::parse("basis(i) * basis(j) == basis(j) * basis(i)"), "commutative");
  REQUIRE(c.status == Status::fail);
  REQUIRE(c.witness);
  CHECK(c.witness->context.find("i=") != std::string::npos);
  CHECK(c.witness->context.find("j=") != std::string::npos);
  const Check verbose = ev.check(*dsl::parse("basis(i) == one_1"), "all", true);
  CHECK(verbose.diff.size() > 1);
}

TEST_CASE("suffixes select derived data") {
  const QuasiHopfDatum& d = dw_z2();
  const dsl::Evaluator ev(d, 5);
  const SparseTensor x = random_invertible(d, 5);
  CHECK(ev.value(*dsl::parse("alpha_x")) == modify_antipode(d, x).alpha());
  CHECK(ev.value(*dsl::parse("gamma_cop")) == gamma_element(coopposite(d)));
  CHECK(ev.value(*dsl::parse("u_opcop")) == drinfeld_u(op_cop(d)).u);
  // The last suffix is applied first.
  CHECK(ev.value(*dsl::parse("alpha_hat_opcop")) == rtwist_elements(op_cop(d)).alpha_hat);
  CHECK(ev.value(*dsl::parse("alpha_x_cop")) == modify_antipode(coopposite(d), x).alpha());
  CHECK(ev.value(*dsl::parse("map[S_x](alpha)")) == modify_antipode(d, x).S(d.alpha()));
}

TEST_CASE("print then parse is the identity on random trees") {
  TreeGen gen(2024);
  for (int n = 0; n < 500; ++n) {
    const dsl::ExprPtr e = n % 2 ? gen.equation(4) : gen.make(5);
    const std::string text = dsl::print(*e);
    CAPTURE(text);
    const dsl::ExprPtr back = dsl::parse(text);
    CHECK(dsl::same(*e, *back));
    CHECK(dsl::print(*back) == text);
  }
}

TEST_CASE("printer output") {
  CHECK(dsl::print(*dsl::parse("(one_1#Phi)*map[id,D,id](Phi)*(Phi#one_1)")) ==
        "(one_1 # Phi) * map[id,D,id](Phi) * (Phi # one_1)");
  CHECK(dsl::print(*dsl::parse("flip(R,0,1)")) == "flip(R, 0, 1)");
  CHECK(dsl::print(*dsl::parse("-(R*R)")) == "-(R * R)");
  CHECK(dsl::print(*dsl::parse("R*(R*R)")) == "R * (R * R)");
  CHECK(dsl::print(*dsl::parse("(R*R)*R")) == "R * R * R");
}

TEST_CASE("shipped corpus") {
  const auto lines = dsl::parse_corpus(dsl::shipped_corpus());
  REQUIRE(lines.size() >= 100);

  SUBCASE("round trip") {
    for (const auto& line : lines) {
      CAPTURE(line.source);
      const std::string printed = dsl::print(*line.expr);
      CHECK(dsl::same(*dsl::parse(printed), *line.expr));
      CHECK(dsl::same(*dsl::parse(line.source), *line.expr));
    }
  }

  SUBCASE("every layer is represented") {
    std::map<Level, int> count;
    for (const auto& line : lines) ++count[line.level];
    for (Level l : {Level::bialgebra, Level::hopf, Level::qt, Level::ribbon}) CHECK(count[l] > 0);
  }

  SUBCASE("all true on every example at its layer") {
    for (const auto& ex : standard_examples()) {
      CAPTURE(ex.name);
      const CheckReport report = dsl::run_corpus(lines, ex.datum, 11, CheckOptions{false, 4});
      REQUIRE(report.checks().size() == lines.size());
      for (std::size_t k = 0; k < lines.size(); ++k) {
        const Check& c = report.checks()[k];
        CAPTURE(c.name);
        if (lines[k].level <= ex.datum.top_level()) {
          CHECK(c.status == Status::pass);
          if (c.witness) CAPTURE(c.witness->message);
        } else {
          CHECK(c.status == Status::skipped);
        }
      }
    }
  }
}

TEST_CASE("corpus is independent of the seed") {
  const auto lines = dsl::parse_corpus(dsl::shipped_corpus());
  for (std::uint64_t seed : {1, 2, 3}) {
    CHECK(dsl::run_corpus(lines, dw_z2(), seed).passed());
  }
}

TEST_CASE("corpus detects broken data") {
  const auto lines = dsl::parse_corpus(dsl::shipped_corpus());
  const QuasiHopfDatum& d = dw_z2();
  for (auto target : {mutation::Target::phi, mutation::Target::R, mutation::Target::S, mutation::Target::alpha,
                      mutation::Target::beta}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      CAPTURE(mutation::name(target));
      CAPTURE(seed);
      CHECK_FALSE(dsl::run_corpus(lines, mutation::mutate(d, target, seed)).passed());
    }
  }
}

TEST_CASE("corpus formulas agree with the dense oracle") {
  const auto lines = dsl::parse_corpus(dsl::shipped_corpus());
  auto formula = [&](const std::string& prefix) {
    for (const auto& line : lines) {
      if (line.source.starts_with(prefix)) return line.expr->args[1];
    }
    FAIL("no corpus line starting with " << prefix);
    return dsl::ExprPtr{};
  };
  for (const auto& ex : standard_examples()) {
    CAPTURE(ex.name);
    const oracle::DenseDatum dd(ex.datum);
    const dsl::Evaluator ev(ex.datum);
    CHECK(ev.value(*formula("gamma == mult[4,3](perm[4,")) == oracle::to_sparse(oracle::gamma(dd)));
    CHECK(ev.value(*formula("delta == mult[3,4](perm[0,4,")) == oracle::to_sparse(oracle::delta(dd)));
    CHECK(ev.value(*formula("F == mult")) == oracle::to_sparse(oracle::bigF(dd)));
    CHECK(ev.value(*formula("Finv == mult")) == oracle::to_sparse(oracle::bigF_inv(dd)));
    if (ex.datum.has_R()) {
      CHECK(ev.value(*formula("u == mult[5]")) == oracle::to_sparse(oracle::drinfeld_u(dd)));
    }
  }
}

TEST_CASE("corpus parse errors report the corpus line") {
  try {
    dsl::parse_corpus("# header\nR == R\n\n  R * (R\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() == 9);
  }
  CHECK_THROWS_AS(dsl::parse_corpus("R == alpha\n"), ArityError);
}
