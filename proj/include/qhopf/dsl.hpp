#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qhopf/datum.hpp"
#include "qhopf/report.hpp"
#include "qhopf/twisting.hpp"

namespace qhopf::dsl {

enum class Kind { name, basis, scalar, neg, product, concat, inv, flip, map, perm, mult, equals };

/// Syntax tree node. `text` holds the name, scalar literal or basis index;
/// `legs` the map[...] entries; `ints` the flip/perm/mult integers.
struct Expr {
  Kind kind;
  std::string text;
  std::vector<std::shared_ptr<const Expr>> args;
  std::vector<std::string> legs;
  std::vector<int> ints;
  int line = 1;
  int column = 1;
};
using ExprPtr = std::shared_ptr<const Expr>;

/// Structural equality; source positions are ignored.
bool same(const Expr& a, const Expr& b);

/// Throws ParseError.
ExprPtr parse(std::string_view source);
std::string print(const Expr& e);

/// Arity of a term, or of either side of an equation. Throws ArityError or
/// UndefinedName.
int arity(const Expr& e);
/// Lowest layer whose data every name in `e` needs.
Level required_level(const Expr& e);
/// Index variables used in basis(...), in order of first appearance.
std::vector<std::string> variables(const Expr& e);

using Bindings = std::map<std::string, int>;

/// Evaluates expressions against one datum. Suffixes on names select a derived
/// datum: _x (antipode modified by x), _T (twisted by T), _cop, _opcop, _hat
/// (twisted by R), _check (twisted by R'^{-1}) and _eF (twisted by ε(β)F). The
/// last suffix is applied first. x and T are drawn from `seed`.
class Evaluator {
 public:
  explicit Evaluator(QuasiHopfDatum d, std::uint64_t seed = 0);

  const QuasiHopfDatum& datum() const noexcept { return root_; }
  /// Value of a term. Throws UndefinedName, ArityError.
  SparseTensor value(const Expr& e, const Bindings& bindings = {}) const;
  /// Verdict on an equation, quantified over the basis for each variable.
  Check check(const Expr& e, const std::string& name, bool verbose = false) const;
  void check_into(CheckBuilder& b, const Expr& e, bool verbose = false) const;

 private:
  struct Frame;
  const Frame& frame(const std::vector<std::string>& suffixes) const;
  const SparseTensor& x() const;
  const Twist& T() const;
  SparseTensor named(const std::string& name) const;
  const LinearMap* legmap(const std::string& name) const;

  QuasiHopfDatum root_;
  std::uint64_t seed_;
  mutable std::mutex mutex_;
  mutable std::map<std::string, std::shared_ptr<const Frame>> frames_;
  mutable std::optional<SparseTensor> x_;
  mutable std::optional<Twist> T_;
};

struct CorpusLine {
  int line;
  std::string source;
  ExprPtr expr;
  Level level;
};

/// One identity per non-blank line; '#' starts a comment. Throws ParseError
/// with the corpus line number.
std::vector<CorpusLine> parse_corpus(std::string_view text);
/// The corpus compiled into the library.
std::string_view shipped_corpus();

/// One check per line, named by its printed form; lines above the datum's
/// top layer are skipped.
CheckReport run_corpus(const std::vector<CorpusLine>& lines, const QuasiHopfDatum& d,
                       std::uint64_t seed = 0, const CheckOptions& opts = {});

}  // namespace qhopf::dsl
