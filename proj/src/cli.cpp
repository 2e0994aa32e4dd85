#include "qhopf/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qhopf/derived.hpp"
#include "qhopf/drinfeld.hpp"
#include "qhopf/dsl.hpp"
#include "qhopf/errors.hpp"
#include "qhopf/examples.hpp"
#include "qhopf/io.hpp"
#include "qhopf/ribbon.hpp"
#include "qhopf/twisting.hpp"
#include "qhopf/verify.hpp"

namespace qhopf::cli {

namespace {

using Clock = std::chrono::steady_clock;

struct Common {
  std::string file;
  std::string level;
  std::string format = "text";
  int jobs = 1;
  bool verbose = false;
  std::uint64_t seed = 0;
};

/// Input problems that map to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::uint64_t default_seed() {
  const char* env = std::getenv("QHOPF_SEED");
  if (env == nullptr || *env == '\0') return 0;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw UsageError(std::string("QHOPF_SEED is not a number: ") + env);
  }
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const std::uint64_t s = std::stoull(text);
      return {s, s};
    }
    const std::uint64_t a = std::stoull(text.substr(0, dots));
    const std::uint64_t b = std::stoull(text.substr(dots + 2));
    if (b < a) throw UsageError("empty seed range " + text);
    return {a, b};
  } catch (const std::logic_error&) {
    throw UsageError("cannot parse seed range '" + text + "'");
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

Level level_for(const Common& c, const QuasiHopfDatum& d) {
  if (c.level.empty()) return d.top_level();
  try {
    return parse_level(c.level);
  } catch (const std::exception&) {
    throw UsageError("unknown level '" + c.level + "'");
  }
}

CheckOptions options(const Common& c) { return CheckOptions{c.verbose, std::max(1, c.jobs)}; }

int emit_report(std::ostream& out, const Common& c, const QuasiHopfDatum& d, Level level,
                const CheckReport& report, Clock::time_point start, nlohmann::json extra = {}) {
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
  if (c.format == "json") {
    nlohmann::json j{{"datum", d.hash()}, {"level", to_string(level)}, {"checks", report.to_json()}};
    if (extra.is_object()) {
      for (auto& [k, v] : extra.items()) j[k] = v;
    }
    j["elapsed_ms"] = ms;
    out << j.dump(2) << "\n";
  } else {
    out << "datum " << d.hash() << " level " << to_string(level) << "\n";
    out << report.to_text();
  }
  return report.passed() ? 0 : 1;
}

std::string tensor_text(const SparseTensor& t) {
  std::ostringstream os;
  bool first = true;
  for (const Entry& e : t.entries()) {
    os << (first ? "" : " + ") << e.value.to_string() << "*e";
    const auto idx = t.indices_of(e.key);
    for (std::size_t k = 0; k < idx.size(); ++k) os << (k ? "," : "") << idx[k];
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

struct Ribbon {
  std::uint64_t budget = 1000000;
  std::string strategy = "auto";
};

int cmd_verify(const Common& c, std::ostream& out) {
  const auto start = Clock::now();
  const QuasiHopfDatum d = load_file(c.file);
  const Level level = level_for(c, d);
  return emit_report(out, c, d, level, verify_level(d, level, options(c)), start);
}

int cmd_derive(const Common& c, const std::string& element, std::ostream& out) {
  const QuasiHopfDatum d = load_file(c.file);
  const dsl::Evaluator ev(d, c.seed);
  const dsl::ExprPtr e = dsl::parse(element);
  dsl::arity(*e);
  out << tensor_to_json(ev.value(*e)).dump() << "\n";
  return 0;
}

CheckReport twist_checks(const QuasiHopfDatum& d, std::uint64_t seed, const CheckOptions& opts,
                         std::optional<QuasiHopfDatum>* twisted = nullptr) {
  const Twist t = random_twist(d, seed);
  CheckReport report;
  const std::string prefix = "seed " + std::to_string(seed) + ": ";
  CheckReport inner = check_twist_elements(d, t, opts);
  if (d.has_R()) inner.append(check_u_twist_invariance(d, t, opts));
  const QuasiHopfDatum dt = twist(d, t);
  const Level level = std::min(d.top_level(), Level::qt);
  const CheckReport twisted_report = verify_level(dt, level, opts);
  for (const Check& chk : twisted_report.checks()) {
    Check renamed = chk;
    renamed.name = "twisted." + chk.name;
    inner.add(renamed);
  }
  for (const Check& chk : inner.checks()) {
    Check renamed = chk;
    renamed.name = prefix + chk.name;
    report.add(renamed);
  }
  if (twisted != nullptr) *twisted = dt;
  return report;
}

int cmd_twist(const Common& c, const std::string& emit, std::ostream& out) {
  const auto start = Clock::now();
  const QuasiHopfDatum d = load_file(c.file);
  std::optional<QuasiHopfDatum> dt;
  const CheckReport report = twist_checks(d, c.seed, options(c), &dt);
  if (!emit.empty()) write_text(emit, save(*dt));
  return emit_report(out, c, d, std::min(d.top_level(), Level::qt), report, start,
                     nlohmann::json{{"seed", c.seed}, {"twisted", dt->hash()}});
}

int cmd_ribbon_find(const Common& c, const Ribbon& r, std::ostream& out) {
  const auto start = Clock::now();
  const QuasiHopfDatum d = load_file(c.file);
  RibbonStrategy strategy;
  try {
    strategy = parse_strategy(r.strategy);
  } catch (const std::exception&) {
    throw UsageError("unknown strategy '" + r.strategy + "'");
  }
  const RibbonSearch s = find_ribbon(d, r.budget, strategy);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
  if (c.format == "json") {
    nlohmann::json cands = nlohmann::json::array();
    for (const auto& cand : s.candidates) {
      cands.push_back({{"v", tensor_to_json(cand.v)}, {"provenance", to_string(cand.provenance)}});
    }
    out << nlohmann::json{{"datum", d.hash()},
                          {"region", s.region},
                          {"examined", s.examined},
                          {"candidates", cands},
                          {"elapsed_ms", ms}}
               .dump(2)
        << "\n";
  } else {
    out << "datum " << d.hash() << "\n";
    out << "searched " << s.region << " (" << s.examined << " points)\n";
    for (const auto& cand : s.candidates) {
      out << to_string(cand.provenance) << ": v = " << tensor_text(cand.v) << "\n";
    }
    out << s.candidates.size() << " candidate(s)\n";
  }
  return s.candidates.empty() ? 1 : 0;
}

CheckReport theorem_checks(const QuasiHopfDatum& d, const SparseTensor& v, const CheckOptions& opts) {
  CheckReport report = is_ribbon(d, v, opts);
  report.append(check_ribbon_lemma(d, v, opts));
  report.append(check_main_theorem(d, v, opts));
  return report;
}

int cmd_ribbon_check(const Common& c, std::ostream& out) {
  const auto start = Clock::now();
  const QuasiHopfDatum d = load_file(c.file);
  if (!d.v()) throw UsageError(c.file + " has no \"v\" field");
  return emit_report(out, c, d, Level::ribbon, theorem_checks(d, *d.v(), options(c)), start);
}

int cmd_ribbon_theorem(const Common& c, const Ribbon& r, std::ostream& out) {
  const auto start = Clock::now();
  const QuasiHopfDatum d = load_file(c.file);
  CheckReport report;
  if (d.v()) {
    report = theorem_checks(d, *d.v(), options(c));
  } else {
    const RibbonSearch s = find_ribbon(d, r.budget, parse_strategy(r.strategy));
    if (s.candidates.empty()) {
      report.run("ribbon.candidates", [](CheckBuilder& b) { b.fail("no ribbon element found"); });
    }
    for (std::size_t k = 0; k < s.candidates.size(); ++k) {
      const CheckReport cand = theorem_checks(d, s.candidates[k].v, options(c));
      for (const Check& chk : cand.checks()) {
        Check renamed = chk;
        renamed.name = "candidate " + std::to_string(k) + ": " + chk.name;
        report.add(renamed);
      }
    }
  }
  return emit_report(out, c, d, Level::ribbon, report, start);
}

int cmd_example(const std::string& kind, const std::string& group, int q, const std::string& field,
                const std::string& path, std::ostream& out) {
  Field f = Field::rational();
  try {
    f = Field::parse(field);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const QuasiHopfDatum d = build_example(kind, group, q, f);
  if (path.empty()) {
    out << save(d) << "\n";
  } else {
    write_text(path, save(d));
  }
  return 0;
}

int cmd_check_expr(const Common& c, const std::string& source, std::ostream& out) {
  const auto start = Clock::now();
  const QuasiHopfDatum d = load_file(c.file);
  const dsl::ExprPtr e = dsl::parse(source);
  dsl::arity(*e);
  const dsl::Evaluator ev(d, c.seed);
  if (e->kind != dsl::Kind::equals) {
    const SparseTensor t = ev.value(*e);
    if (c.format == "json") {
      out << tensor_to_json(t).dump() << "\n";
    } else {
      out << tensor_text(t) << "\n";
    }
    return 0;
  }
  CheckReport report;
  report.add(ev.check(*e, dsl::print(*e), c.verbose));
  return emit_report(out, c, d, dsl::required_level(*e), report, start);
}

int cmd_check_corpus(const Common& c, const std::string& corpus, std::ostream& out) {
  const auto start = Clock::now();
  const QuasiHopfDatum d = load_file(c.file);
  const std::string text = corpus.empty() ? std::string(dsl::shipped_corpus()) : read_text(corpus);
  const auto lines = dsl::parse_corpus(text);
  return emit_report(out, c, d, d.top_level(), dsl::run_corpus(lines, d, c.seed, options(c)), start);
}

int cmd_twist_props(const Common& c, const std::string& seeds, std::ostream& out) {
  const auto start = Clock::now();
  const QuasiHopfDatum d = load_file(c.file);
  const auto [a, b] = seeds.empty() ? std::pair{c.seed, c.seed} : parse_range(seeds);
  CheckReport report;
  for (std::uint64_t s = a;; ++s) {
    report.append(twist_checks(d, s, options(c)));
    if (s == b) break;
  }
  if (d.has_R()) report.append(opcop_twist_iso(d, options(c)));
  return emit_report(out, c, d, std::min(d.top_level(), Level::qt), report, start);
}

void add_common(CLI::App* app, Common& c, bool with_file = true) {
  if (with_file) app->add_option("file", c.file, "datum JSON file")->required();
  app->add_option("--level", c.level, "bialgebra, hopf, qt or ribbon");
  app->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app->add_option("--jobs", c.jobs, "parallel checks");
  app->add_flag("--verbose", c.verbose, "list every differing coordinate");
  app->add_option("--seed", c.seed, "seed for random elements (default $QHOPF_SEED or 0)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verifier for quasi-Hopf algebra data", "qhopf"};
  app.require_subcommand(1);
  Common c;
  Ribbon r;
  std::string element;
  std::string emit;
  std::string kind;
  std::string group = "Z2";
  int q = 0;
  std::string field = "p:7";
  std::string out_path;
  std::string expr;
  std::string corpus;
  std::string seeds;

  try {
    c.seed = default_seed();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  auto* verify = app.add_subcommand("verify", "check the axioms up to a layer");
  add_common(verify, c);

  auto* derive = app.add_subcommand("derive", "print a derived element as JSON");
  add_common(derive, c);
  derive->add_option("--element", element, "gamma, delta, F, Finv, u, uhat, ucheck, utilde, ...")->required();

  auto* twist_cmd = app.add_subcommand("twist", "twist by a seeded random twist and check the laws");
  add_common(twist_cmd, c);
  twist_cmd->add_option("--emit", emit, "write the twisted datum here");

  auto* ribbon = app.add_subcommand("ribbon", "ribbon elements");
  ribbon->require_subcommand(1);
  auto* find = ribbon->add_subcommand("find", "search for ribbon elements");
  add_common(find, c);
  find->add_option("--budget", r.budget, "largest search region");
  find->add_option("--strategy", r.strategy, "auto, blocks or center");
  auto* rcheck = ribbon->add_subcommand("check", "check the \"v\" field of the datum");
  add_common(rcheck, c);

  auto* example = app.add_subcommand("example", "build an example datum");
  example->add_option("--kind", kind, "dpr, function, group or sweedler")->required();
  example->add_option("--group", group, "Z2, Z3, Z2xZ2, S3, ...");
  example->add_option("--q", q, "cocycle exponent; 0 is trivial");
  example->add_option("--field", field, "p:N or Q");
  example->add_option("--out", out_path, "output file (default stdout)");

  auto* check = app.add_subcommand("check", "identity checks");
  check->require_subcommand(1);
  auto* cexpr = check->add_subcommand("expr", "evaluate one identity");
  add_common(cexpr, c);
  cexpr->add_option("--expr", expr, "identity or term")->required();
  auto* ccorpus = check->add_subcommand("corpus", "evaluate an identity corpus");
  add_common(ccorpus, c);
  ccorpus->add_option("--corpus", corpus, "corpus file (default: the shipped corpus)");
  auto* ctwist = check->add_subcommand("twist-props", "twist laws over a seed range");
  add_common(ctwist, c);
  ctwist->add_option("--seeds", seeds, "A..B");
  auto* ctheorem = check->add_subcommand("ribbon-theorem", "v^-2 = uS(u) for the given or found v");
  add_common(ctheorem, c);
  ctheorem->add_option("--budget", r.budget, "largest search region");
  ctheorem->add_option("--strategy", r.strategy, "auto, blocks or center");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(c, out);
    if (derive->parsed()) return cmd_derive(c, element, out);
    if (twist_cmd->parsed()) return cmd_twist(c, emit, out);
    if (find->parsed()) return cmd_ribbon_find(c, r, out);
    if (rcheck->parsed()) return cmd_ribbon_check(c, out);
    if (example->parsed()) return cmd_example(kind, group, q, field, out_path, out);
    if (cexpr->parsed()) return cmd_check_expr(c, expr, out);
    if (ccorpus->parsed()) return cmd_check_corpus(c, corpus, out);
    if (ctwist->parsed()) return cmd_twist_props(c, seeds, out);
    if (ctheorem->parsed()) return cmd_ribbon_theorem(c, r, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << app.help();
  return 2;
}

}  // namespace qhopf::cli
