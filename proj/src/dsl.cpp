#include "qhopf/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "qhopf/derived.hpp"
#include "qhopf/drinfeld.hpp"
#include "qhopf/errors.hpp"
#include "qhopf/ribbon.hpp"
#include "corpus_data.hpp"

namespace qhopf::dsl {

namespace {

// ---- lexer ----

enum class Tok { ident, number, lparen, rparen, lbracket, rbracket, comma, star, hash, eqeq, minus, end };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const int l = line;
    const int col = column;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::ident, std::string(src.substr(i, j - i)), l, col});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '/') {
        std::size_t k = j + 1;
        while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
        if (k == j + 1) throw ParseError("expected denominator", line, column + static_cast<int>(k - i));
        j = k;
      }
      out.push_back({Tok::number, std::string(src.substr(i, j - i)), l, col});
      advance(j - i);
      continue;
    }
    if (c == '=' && i + 1 < src.size() && src[i + 1] == '=') {
      out.push_back({Tok::eqeq, "==", l, col});
      advance(2);
      continue;
    }
    Tok kind;
    switch (c) {
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      case '[': kind = Tok::lbracket; break;
      case ']': kind = Tok::rbracket; break;
      case ',': kind = Tok::comma; break;
      case '*': kind = Tok::star; break;
      case '#': kind = Tok::hash; break;
      case '-': kind = Tok::minus; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", l, col);
    }
    out.push_back({kind, std::string(1, c), l, col});
    advance(1);
  }
  out.push_back({Tok::end, "", line, column});
  return out;
}

std::string describe(const Token& t) { return t.kind == Tok::end ? "end of input" : "'" + t.text + "'"; }

// ---- parser ----

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  ExprPtr parse_all() {
    ExprPtr e = expr();
    if (peek().kind != Tok::end) fail("unexpected " + describe(peek()));
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token take() { return tokens_[pos_++]; }
  [[noreturn]] void fail(const std::string& reason) const {
    throw ParseError(reason, peek().line, peek().column);
  }
  Token expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what + ", found " + describe(peek()));
    return take();
  }

  static std::shared_ptr<Expr> node(Kind kind, const Token& at) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->line = at.line;
    e->column = at.column;
    return e;
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    if (peek().kind != Tok::eqeq) return lhs;
    auto e = node(Kind::equals, take());
    e->args = {lhs, term()};
    return e;
  }

  ExprPtr term() {
    ExprPtr lhs = factor();
    while (peek().kind == Tok::star || peek().kind == Tok::hash) {
      const Kind kind = peek().kind == Tok::star ? Kind::product : Kind::concat;
      auto e = node(kind, take());
      e->args = {lhs, factor()};
      lhs = e;
    }
    return lhs;
  }

  int integer() {
    const Token t = expect(Tok::number, "an integer");
    if (t.text.find('/') != std::string::npos) throw ParseError("expected an integer", t.line, t.column);
    try {
      return std::stoi(t.text);
    } catch (const std::out_of_range&) {
      throw ParseError("integer out of range", t.line, t.column);
    }
  }

  ExprPtr factor() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::minus: {
        auto e = node(Kind::neg, take());
        e->args = {factor()};
        return e;
      }
      case Tok::number: {
        auto e = node(Kind::scalar, t);
        e->text = take().text;
        return e;
      }
      case Tok::lparen: {
        take();
        ExprPtr inner = expr();
        expect(Tok::rparen, "')'");
        return inner;
      }
      case Tok::ident: break;
      default: fail("expected an expression, found " + describe(t));
    }
    const Token id = take();
    const bool call = peek().kind == Tok::lparen;
    const bool indexed = peek().kind == Tok::lbracket;
    if (id.text == "inv" && call) {
      take();
      auto e = node(Kind::inv, id);
      e->args = {expr()};
      expect(Tok::rparen, "')'");
      return e;
    }
    if (id.text == "flip" && call) {
      take();
      auto e = node(Kind::flip, id);
      e->args = {expr()};
      expect(Tok::comma, "','");
      e->ints.push_back(integer());
      expect(Tok::comma, "','");
      e->ints.push_back(integer());
      expect(Tok::rparen, "')'");
      return e;
    }
    if (id.text == "basis" && call) {
      take();
      auto e = node(Kind::basis, id);
      if (peek().kind == Tok::number) {
        e->text = std::to_string(integer());
      } else {
        e->text = expect(Tok::ident, "an index").text;
      }
      expect(Tok::rparen, "')'");
      return e;
    }
    if ((id.text == "map" || id.text == "perm" || id.text == "mult") && indexed) {
      take();
      auto e = node(id.text == "map" ? Kind::map : id.text == "perm" ? Kind::perm : Kind::mult, id);
      do {
        if (e->kind == Kind::map) {
          e->legs.push_back(expect(Tok::ident, "a leg map").text);
        } else {
          e->ints.push_back(integer());
        }
      } while (peek().kind == Tok::comma && (take(), true));
      expect(Tok::rbracket, "']'");
      expect(Tok::lparen, "'('");
      e->args = {expr()};
      expect(Tok::rparen, "')'");
      return e;
    }
    auto e = node(Kind::name, id);
    e->text = id.text;
    return e;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// ---- names ----

const std::set<std::string>& suffixes() {
  static const std::set<std::string> s = {"x", "T", "cop", "opcop", "hat", "check", "eF"};
  return s;
}

struct NameInfo {
  int arity;
  Level level;
};

const std::map<std::string, NameInfo>& constants() {
  static const std::map<std::string, NameInfo> table = {
      {"one_1", {1, Level::bialgebra}}, {"one_2", {2, Level::bialgebra}},
      {"one_3", {3, Level::bialgebra}}, {"one_4", {4, Level::bialgebra}},
      {"Phi", {3, Level::bialgebra}},   {"PhiInv", {3, Level::bialgebra}},
      {"T", {2, Level::bialgebra}},     {"Tinv", {2, Level::bialgebra}},
      {"alpha", {1, Level::hopf}},      {"beta", {1, Level::hopf}},
      {"gamma", {2, Level::hopf}},      {"delta", {2, Level::hopf}},
      {"F", {2, Level::hopf}},          {"Finv", {2, Level::hopf}},
      {"Fp", {2, Level::hopf}},         {"x", {1, Level::hopf}},
      {"xinv", {1, Level::hopf}},       {"R", {2, Level::qt}},
      {"Rinv", {2, Level::qt}},         {"Rp", {2, Level::qt}},
      {"u", {1, Level::qt}},            {"uhat", {1, Level::qt}},
      {"ucheck", {1, Level::qt}},       {"utilde", {1, Level::qt}},
      {"v", {1, Level::ribbon}},
  };
  return table;
}

const std::map<std::string, NameInfo>& leg_maps() {
  static const std::map<std::string, NameInfo> table = {
      {"id", {1, Level::bialgebra}}, {"eps", {0, Level::bialgebra}}, {"D", {2, Level::bialgebra}},
      {"Dcop", {2, Level::bialgebra}}, {"S", {1, Level::hopf}}, {"Sinv", {1, Level::hopf}},
  };
  return table;
}

Level suffix_level(const std::string& s) {
  if (s == "hat" || s == "check") return Level::qt;
  return Level::hopf;
}

struct SplitName {
  std::string base;
  std::vector<std::string> suffixes;  // as written, left to right
};

std::optional<SplitName> split_name(const std::string& name, const std::map<std::string, NameInfo>& bases) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto u = name.find('_', start);
    parts.push_back(name.substr(start, u == std::string::npos ? std::string::npos : u - start));
    if (u == std::string::npos) break;
    start = u + 1;
  }
  for (std::size_t k = parts.size(); k >= 1; --k) {
    std::string base = parts[0];
    for (std::size_t i = 1; i < k; ++i) base += "_" + parts[i];
    if (!bases.count(base)) continue;
    SplitName s{base, {}};
    bool ok = true;
    for (std::size_t i = k; i < parts.size() && ok; ++i) {
      ok = suffixes().count(parts[i]) > 0;
      s.suffixes.push_back(parts[i]);
    }
    if (ok) return s;
  }
  return std::nullopt;
}

SplitName resolve(const std::string& name, const std::map<std::string, NameInfo>& bases, const char* what) {
  auto s = split_name(name, bases);
  if (!s) throw UndefinedName(std::string("unknown ") + what + " '" + name + "'");
  return *s;
}

Level name_level(const std::string& name, const std::map<std::string, NameInfo>& bases, const char* what) {
  const SplitName s = resolve(name, bases, what);
  Level level = bases.at(s.base).level;
  for (const auto& suffix : s.suffixes) level = std::max(level, suffix_level(suffix));
  return level;
}

// ---- printer ----

bool is_binary(Kind k) { return k == Kind::product || k == Kind::concat || k == Kind::equals; }

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string print_to(const Expr& e);

std::string wrapped(const Expr& e, bool wrap) { return wrap ? "(" + print_to(e) + ")" : print_to(e); }

std::string print_to(const Expr& e) {
  switch (e.kind) {
    case Kind::name:
    case Kind::scalar: return e.text;
    case Kind::basis: return "basis(" + e.text + ")";
    case Kind::neg: return "-" + wrapped(*e.args[0], is_binary(e.args[0]->kind));
    case Kind::product:
    case Kind::concat:
      return wrapped(*e.args[0], is_binary(e.args[0]->kind) && e.args[0]->kind != e.kind) +
             (e.kind == Kind::product ? " * " : " # ") + wrapped(*e.args[1], is_binary(e.args[1]->kind));
    case Kind::equals:
      return wrapped(*e.args[0], e.args[0]->kind == Kind::equals) + " == " +
             wrapped(*e.args[1], e.args[1]->kind == Kind::equals);
    case Kind::inv: return "inv(" + print_to(*e.args[0]) + ")";
    case Kind::flip:
      return "flip(" + print_to(*e.args[0]) + ", " + std::to_string(e.ints[0]) + ", " +
             std::to_string(e.ints[1]) + ")";
    case Kind::map: {
      std::string legs;
      for (std::size_t i = 0; i < e.legs.size(); ++i) legs += (i ? "," : "") + e.legs[i];
      return "map[" + legs + "](" + print_to(*e.args[0]) + ")";
    }
    case Kind::perm: return "perm[" + join_ints(e.ints) + "](" + print_to(*e.args[0]) + ")";
    case Kind::mult: return "mult[" + join_ints(e.ints) + "](" + print_to(*e.args[0]) + ")";
  }
  return {};
}

[[noreturn]] void arity_error(const Expr& e, const std::string& message) {
  throw ArityError(message + " at " + std::to_string(e.line) + ":" + std::to_string(e.column));
}

}  // namespace

bool same(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.text != b.text || a.legs != b.legs || a.ints != b.ints ||
      a.args.size() != b.args.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!same(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

ExprPtr parse(std::string_view source) { return Parser(lex(source)).parse_all(); }

std::string print(const Expr& e) { return print_to(e); }

int arity(const Expr& e) {
  auto sub = [&](std::size_t i) {
    if (e.args[i]->kind == Kind::equals) arity_error(*e.args[i], "an equation is not a value");
    return arity(*e.args[i]);
  };
  switch (e.kind) {
    case Kind::name: return constants().at(resolve(e.text, constants(), "name").base).arity;
    case Kind::basis: return 1;
    case Kind::scalar: return 0;
    case Kind::neg:
    case Kind::inv: return sub(0);
    case Kind::product: {
      const int a = sub(0);
      const int b = sub(1);
      if (a != b && a != 0 && b != 0) {
        arity_error(e, "product of arities " + std::to_string(a) + " and " + std::to_string(b));
      }
      return std::max(a, b);
    }
    case Kind::concat: return sub(0) + sub(1);
    case Kind::equals: {
      const int a = sub(0);
      const int b = sub(1);
      if (a != b) arity_error(e, "comparison of arities " + std::to_string(a) + " and " + std::to_string(b));
      return a;
    }
    case Kind::flip: {
      const int a = sub(0);
      for (int i : e.ints) {
        if (i < 0 || i >= a) arity_error(e, "flip leg " + std::to_string(i) + " outside arity " + std::to_string(a));
      }
      return a;
    }
    case Kind::perm: {
      const int a = sub(0);
      std::vector<int> sorted = e.ints;
      std::sort(sorted.begin(), sorted.end());
      for (int i = 0; i < static_cast<int>(sorted.size()); ++i) {
        if (sorted[i] != i || static_cast<int>(sorted.size()) != a) {
          arity_error(e, "perm[" + join_ints(e.ints) + "] is not a permutation of " + std::to_string(a) + " legs");
        }
      }
      if (a != static_cast<int>(sorted.size())) arity_error(e, "perm size differs from arity");
      return a;
    }
    case Kind::mult: {
      const int a = sub(0);
      int total = 0;
      for (int g : e.ints) {
        if (g < 1) arity_error(e, "empty leg group");
        total += g;
      }
      if (total != a) arity_error(e, "leg groups cover " + std::to_string(total) + " of " + std::to_string(a) + " legs");
      return static_cast<int>(e.ints.size());
    }
    case Kind::map: {
      const int a = sub(0);
      if (static_cast<int>(e.legs.size()) != a) {
        arity_error(e, std::to_string(e.legs.size()) + " leg maps for arity " + std::to_string(a));
      }
      int out = 0;
      for (const auto& leg : e.legs) out += leg_maps().at(resolve(leg, leg_maps(), "leg map").base).arity;
      return out;
    }
  }
  return 0;
}

Level required_level(const Expr& e) {
  Level level = Level::bialgebra;
  if (e.kind == Kind::name) level = name_level(e.text, constants(), "name");
  for (const auto& leg : e.legs) level = std::max(level, name_level(leg, leg_maps(), "leg map"));
  for (const auto& a : e.args) level = std::max(level, required_level(*a));
  return level;
}

std::vector<std::string> variables(const Expr& e) {
  std::vector<std::string> out;
  auto walk = [&](auto& self, const Expr& n) -> void {
    if (n.kind == Kind::basis && !std::isdigit(static_cast<unsigned char>(n.text[0])) &&
        std::find(out.begin(), out.end(), n.text) == out.end()) {
      out.push_back(n.text);
    }
    for (const auto& a : n.args) self(self, *a);
  };
  walk(walk, e);
  return out;
}

// ---- evaluator ----

struct Evaluator::Frame {
  QuasiHopfDatum d;
};

Evaluator::Evaluator(QuasiHopfDatum d, std::uint64_t seed) : root_(std::move(d)), seed_(seed) {}

const SparseTensor& Evaluator::x() const {
  std::lock_guard lock(mutex_);
  if (!x_) x_ = random_invertible(root_, seed_);
  return *x_;
}

const Twist& Evaluator::T() const {
  std::lock_guard lock(mutex_);
  if (!T_) T_ = random_twist(root_, seed_);
  return *T_;
}

const Evaluator::Frame& Evaluator::frame(const std::vector<std::string>& suffixes) const {
  std::string key;
  for (const auto& s : suffixes) key += "_" + s;
  {
    std::lock_guard lock(mutex_);
    auto it = frames_.find(key);
    if (it != frames_.end()) return *it->second;
  }
  std::shared_ptr<const Frame> made;
  if (suffixes.empty()) {
    made = std::make_shared<Frame>(Frame{root_});
  } else {
    // name_s1_s2: s2 transforms the datum first, then s1.
    const std::vector<std::string> inner(suffixes.begin() + 1, suffixes.end());
    const QuasiHopfDatum& d = frame(inner).d;
    const std::string& s = suffixes.front();
    try {
      if (s == "x") {
        made = std::make_shared<Frame>(Frame{modify_antipode(d, x())});
      } else if (s == "T") {
        made = std::make_shared<Frame>(Frame{twist(d, make_twist(d, T().T))});
      } else if (s == "cop") {
        made = std::make_shared<Frame>(Frame{coopposite(d)});
      } else if (s == "opcop") {
        made = std::make_shared<Frame>(Frame{op_cop(d)});
      } else if (s == "hat") {
        made = std::make_shared<Frame>(Frame{twist(d, make_twist(d, d.R()))});
      } else if (s == "check") {
        made = std::make_shared<Frame>(Frame{twist(d, make_twist(d, flip(d.R_inv(), 0, 1)))});
      } else if (s == "eF") {
        made = std::make_shared<Frame>(
            Frame{twist(d, make_twist(d, bigF(d).F.scaled(d.eps(d.beta()))))});
      } else {
        throw UndefinedName("unknown suffix '_" + s + "'");
      }
    } catch (const MissingR&) {
      throw UndefinedName("suffix '_" + s + "' needs an R-matrix");
    }
  }
  std::lock_guard lock(mutex_);
  auto [it, inserted] = frames_.emplace(key, std::move(made));
  return *it->second;
}

SparseTensor Evaluator::named(const std::string& name) const {
  const SplitName s = resolve(name, constants(), "name");
  std::vector<std::string> chain = s.suffixes;
  const QuasiHopfDatum& d = frame(chain).d;
  const std::string& b = s.base;
  try {
    if (b.starts_with("one_")) return d.one(b.back() - '0');
    if (b == "Phi") return d.phi();
    if (b == "PhiInv") return d.phi_inv();
    if (b == "T") return T().T;
    if (b == "Tinv") return T().T_inv;
    if (b == "x") return x();
    if (b == "xinv") return root_.inv(x());
    if (b == "alpha") return d.alpha();
    if (b == "beta") return d.beta();
    if (b == "gamma") return gamma_element(d);
    if (b == "delta") return delta_element(d);
    if (b == "F") return bigF(d).F;
    if (b == "Finv") return bigF(d).F_inv;
    if (b == "Fp") return flip(bigF(d).F, 0, 1);
    if (b == "R") return d.R();
    if (b == "Rinv") return d.R_inv();
    if (b == "Rp") return flip(d.R(), 0, 1);
    if (b == "u") return drinfeld_u(d).u;
    if (b == "uhat") return rtwist_elements(d).u_hat;
    if (b == "ucheck") return rtwist_elements(d).u_check;
    if (b == "utilde") return u_tilde(d);
    if (b == "v") {
      if (!d.v()) throw UndefinedName("datum has no ribbon element v");
      return *d.v();
    }
  } catch (const MissingR&) {
    throw UndefinedName("'" + name + "' needs an R-matrix");
  }
  throw UndefinedName("unknown name '" + name + "'");
}

const LinearMap* Evaluator::legmap(const std::string& name) const {
  const SplitName s = resolve(name, leg_maps(), "leg map");
  const QuasiHopfDatum& d = frame(s.suffixes).d;
  if (s.base == "id") return nullptr;
  if (s.base == "S") return &d.antipode();
  if (s.base == "Sinv") return &d.antipode_inv();
  if (s.base == "eps") return &d.epsilon();
  if (s.base == "D") return &d.delta();
  return &d.delta_cop();
}

SparseTensor Evaluator::value(const Expr& e, const Bindings& bindings) const {
  const Algebra& A = root_.algebra();
  switch (e.kind) {
    case Kind::name: return named(e.text);
    case Kind::scalar: return SparseTensor::constant(Scalar::parse(root_.field(), e.text), root_.dim());
    case Kind::basis: {
      int i;
      if (std::isdigit(static_cast<unsigned char>(e.text[0]))) {
        i = std::stoi(e.text);
      } else {
        auto it = bindings.find(e.text);
        if (it == bindings.end()) throw UndefinedName("unbound index '" + e.text + "'");
        i = it->second;
      }
      if (i < 0 || i >= root_.dim()) throw UndefinedName("basis index " + std::to_string(i) + " out of range");
      return root_.basis(i);
    }
    case Kind::neg: return -value(*e.args[0], bindings);
    case Kind::inv: {
      const SparseTensor t = value(*e.args[0], bindings);
      if (t.arity() == 0) return SparseTensor::constant(t.scalar_value().inverse(), root_.dim());
      return invert(A, t);
    }
    case Kind::product: {
      const SparseTensor a = value(*e.args[0], bindings);
      const SparseTensor b = value(*e.args[1], bindings);
      if (a.arity() == 0) return b.scaled(a.scalar_value());
      if (b.arity() == 0) return a.scaled(b.scalar_value());
      if (a.arity() != b.arity()) arity_error(e, "product of unequal arities");
      return mult(A, a, b);
    }
    case Kind::concat: return concat(value(*e.args[0], bindings), value(*e.args[1], bindings));
    case Kind::flip: return flip(value(*e.args[0], bindings), e.ints[0], e.ints[1]);
    case Kind::perm: return permute(value(*e.args[0], bindings), e.ints);
    case Kind::mult: return multiply_legs(A, value(*e.args[0], bindings), e.ints);
    case Kind::map: {
      LegMaps maps;
      for (const auto& leg : e.legs) maps.push_back(legmap(leg));
      return apply_legs(value(*e.args[0], bindings), maps);
    }
    case Kind::equals: arity_error(e, "an equation is not a value");
  }
  return SparseTensor(root_.field(), root_.dim(), 0);
}

Check Evaluator::check(const Expr& e, const std::string& name, bool verbose) const {
  CheckBuilder b(name, verbose);
  check_into(b, e, verbose);
  return std::move(b).finish();
}

void Evaluator::check_into(CheckBuilder& b, const Expr& e, bool verbose) const {
  if (e.kind != Kind::equals) arity_error(e, "expected an equation");
  arity(e);
  const std::vector<std::string> vars = variables(e);
  const int n = root_.dim();
  std::vector<int> idx(vars.size(), 0);
  while (true) {
    Bindings bindings;
    std::string context;
    for (std::size_t k = 0; k < vars.size(); ++k) {
      bindings[vars[k]] = idx[k];
      context += (k ? "," : "") + vars[k] + "=" + std::to_string(idx[k]);
    }
    b.equal(value(*e.args[0], bindings), value(*e.args[1], bindings), context);
    if (b.failed() && !verbose) break;
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == n) idx[k++] = 0;
    if (k == idx.size()) break;
  }
}

// ---- corpus ----

std::vector<CorpusLine> parse_corpus(std::string_view text) {
  std::vector<CorpusLine> out;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] != '#') {
      const auto last = line.find_last_not_of(" \t\r");
      std::string source(line.substr(first, last - first + 1));
      try {
        ExprPtr e = parse(source);
        arity(*e);
        out.push_back({number, source, e, required_level(*e)});
      } catch (const ParseError& err) {
        std::string reason = err.what();
        reason = reason.substr(reason.find(": ") + 2);
        throw ParseError(reason, number, err.column() + static_cast<int>(first));
      } catch (const ArityError& err) {
        throw ArityError("corpus line " + std::to_string(number) + ": " + err.what());
      }
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::string_view shipped_corpus() { return kShippedCorpus; }

CheckReport run_corpus(const std::vector<CorpusLine>& lines, const QuasiHopfDatum& d, std::uint64_t seed,
                       const CheckOptions& opts) {
  const Evaluator ev(d, seed);
  const Level top = d.top_level();
  std::vector<std::pair<std::string, CheckFn>> tasks;
  for (const auto& line : lines) {
    const std::string name = print(*line.expr);
    tasks.emplace_back(name, [&ev, &line, top, verbose = opts.verbose](CheckBuilder& b) {
      if (line.level > top) {
        b.skip("needs layer " + to_string(line.level));
        return;
      }
      ev.check_into(b, *line.expr, verbose);
    });
  }
  CheckReport report;
  report.run_all(tasks, opts);
  return report;
}

}  // namespace qhopf::dsl
