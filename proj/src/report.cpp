#include "qhopf/report.hpp"

#include <atomic>
#include <future>
#include <sstream>

namespace qhopf {

std::string to_string(Status status) {
  switch (status) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "?";
}

bool CheckBuilder::equal(const SparseTensor& lhs, const SparseTensor& rhs, const std::string& context) {
  if (lhs.arity() != rhs.arity() || lhs.dim() != rhs.dim()) {
    fail("arity " + std::to_string(lhs.arity()) + " vs " + std::to_string(rhs.arity()), context);
    return false;
  }
  if (lhs == rhs) return true;
  // Walk both sorted entry lists in step.
  const auto& a = lhs.entries();
  const auto& b = rhs.entries();
  const Scalar zero = Scalar::zero(lhs.field());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    Key key;
    const Scalar* x = &zero;
    const Scalar* y = &zero;
    if (j == b.size() || (i < a.size() && a[i].key < b[j].key)) {
      key = a[i].key;
      x = &a[i++].value;
    } else if (i == a.size() || b[j].key < a[i].key) {
      key = b[j].key;
      y = &b[j++].value;
    } else {
      key = a[i].key;
      x = &a[i++].value;
      y = &b[j++].value;
    }
    if (*x == *y) continue;
    Witness w{lhs.indices_of(key), x->to_string(), y->to_string(), context, ""};
    if (check_.status != Status::fail) {
      check_.status = Status::fail;
      check_.witness = w;
    }
    if (!verbose_) break;
    check_.diff.push_back(std::move(w));
  }
  return false;
}

bool CheckBuilder::equal(const Scalar& lhs, const Scalar& rhs, const std::string& context) {
  if (lhs == rhs) return true;
  Witness w{{}, lhs.to_string(), rhs.to_string(), context, ""};
  if (check_.status != Status::fail) {
    check_.status = Status::fail;
    check_.witness = w;
  }
  if (verbose_) check_.diff.push_back(std::move(w));
  return false;
}

void CheckBuilder::fail(const std::string& message, const std::string& context) {
  Witness w{{}, "", "", context, message};
  if (check_.status != Status::fail) {
    check_.status = Status::fail;
    check_.witness = w;
  }
  if (verbose_) check_.diff.push_back(std::move(w));
}

void CheckBuilder::skip(const std::string& reason) {
  if (check_.status == Status::fail) return;
  check_.status = Status::skipped;
  check_.witness = Witness{{}, "", "", "", reason};
}

Check run_check(const std::string& name, const CheckFn& fn, const CheckOptions& opts) {
  CheckBuilder b(name, opts.verbose);
  try {
    fn(b);
  } catch (const std::exception& e) {
    b.fail(std::string("exception: ") + e.what());
  }
  return std::move(b).finish();
}

void CheckReport::append(const CheckReport& other) {
  checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
}

void CheckReport::run(const std::string& name, const CheckFn& fn, const CheckOptions& opts) {
  add(run_check(name, fn, opts));
}

void CheckReport::run_all(const std::vector<std::pair<std::string, CheckFn>>& tasks,
                          const CheckOptions& opts) {
  if (opts.jobs <= 1 || tasks.size() <= 1) {
    for (const auto& [name, fn] : tasks) run(name, fn, opts);
    return;
  }
  std::vector<Check> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      results[i] = run_check(tasks[i].first, tasks[i].second, opts);
    }
  };
  std::vector<std::future<void>> pool;
  const int n = std::min<int>(opts.jobs, static_cast<int>(tasks.size()));
  for (int t = 0; t < n; ++t) pool.push_back(std::async(std::launch::async, worker));
  for (auto& f : pool) f.get();
  for (auto& c : results) add(std::move(c));
}

const Check* CheckReport::find(const std::string& name) const {
  for (const Check& c : checks_) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

bool CheckReport::passed() const noexcept { return failures() == 0; }

std::size_t CheckReport::failures() const noexcept {
  std::size_t n = 0;
  for (const Check& c : checks_) n += c.status == Status::fail;
  return n;
}

namespace {

nlohmann::json witness_json(const Witness& w) {
  nlohmann::json j = nlohmann::json::object();
  if (!w.message.empty()) j["message"] = w.message;
  if (!w.message.empty() && w.lhs.empty()) {
    if (!w.context.empty()) j["context"] = w.context;
    return j;
  }
  j["index"] = w.index;
  j["lhs"] = w.lhs;
  j["rhs"] = w.rhs;
  if (!w.context.empty()) j["context"] = w.context;
  return j;
}

std::string witness_text(const Witness& w) {
  std::ostringstream os;
  if (!w.context.empty()) os << "[" << w.context << "] ";
  if (!w.message.empty()) {
    os << w.message;
    return os.str();
  }
  os << "at (";
  for (std::size_t i = 0; i < w.index.size(); ++i) os << (i ? "," : "") << w.index[i];
  os << "): lhs=" << w.lhs << " rhs=" << w.rhs;
  return os.str();
}

}  // namespace

nlohmann::json CheckReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const Check& c : checks_) {
    nlohmann::json j{{"name", c.name}, {"status", to_string(c.status)}};
    if (c.witness) j["witness"] = witness_json(*c.witness);
    if (!c.diff.empty()) {
      nlohmann::json d = nlohmann::json::array();
      for (const Witness& w : c.diff) d.push_back(witness_json(w));
      j["diff"] = std::move(d);
    }
    arr.push_back(std::move(j));
  }
  return arr;
}

std::string CheckReport::to_text() const {
  std::ostringstream os;
  for (const Check& c : checks_) {
    os << (c.status == Status::pass ? "PASS " : c.status == Status::fail ? "FAIL " : "SKIP ") << c.name;
    if (c.witness) os << "  " << witness_text(*c.witness);
    os << "\n";
    for (std::size_t i = 1; i < c.diff.size(); ++i) os << "       " << witness_text(c.diff[i]) << "\n";
  }
  os << (passed() ? "all checks passed" : std::to_string(failures()) + " check(s) failed") << " ("
     << checks_.size() << " total)\n";
  return os.str();
}

}  // namespace qhopf
