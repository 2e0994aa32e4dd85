#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qhopf/tensor.hpp"

namespace qhopf {

enum class Status { pass, fail, skipped };
std::string to_string(Status status);

/// First place where two sides of an identity differ.
struct Witness {
  std::vector<int> index;
  std::string lhs;
  std::string rhs;
  std::string context;  // e.g. "a=3" for identities quantified over the basis
  std::string message;  // set instead of index/lhs/rhs for non-coordinate failures
};

struct Check {
  std::string name;
  Status status = Status::pass;
  std::optional<Witness> witness;
  std::vector<Witness> diff;  // every differing coordinate, verbose mode only
};

/// Options shared by every verifier.
struct CheckOptions {
  bool verbose = false;
  int jobs = 1;
};

/// Records comparisons for one named check; only the first failure becomes the
/// witness.
class CheckBuilder {
 public:
  CheckBuilder(std::string name, bool verbose) : verbose_(verbose) { check_.name = std::move(name); }

  bool equal(const SparseTensor& lhs, const SparseTensor& rhs, const std::string& context = "");
  bool equal(const Scalar& lhs, const Scalar& rhs, const std::string& context = "");
  void fail(const std::string& message, const std::string& context = "");
  void skip(const std::string& reason);
  bool failed() const noexcept { return check_.status == Status::fail; }

  Check finish() && { return std::move(check_); }

 private:
  bool verbose_;
  Check check_;
};

using CheckFn = std::function<void(CheckBuilder&)>;

class CheckReport {
 public:
  void add(Check check) { checks_.push_back(std::move(check)); }
  void append(const CheckReport& other);
  /// Runs `fn` as a check named `name`; exceptions become failures.
  void run(const std::string& name, const CheckFn& fn, const CheckOptions& opts = {});
  /// Runs a batch of independent checks, in parallel when opts.jobs > 1. The
  /// result order is the order of `tasks`.
  void run_all(const std::vector<std::pair<std::string, CheckFn>>& tasks, const CheckOptions& opts);

  const std::vector<Check>& checks() const noexcept { return checks_; }
  const Check* find(const std::string& name) const;
  bool passed() const noexcept;
  Status status() const noexcept { return passed() ? Status::pass : Status::fail; }
  std::size_t failures() const noexcept;

  nlohmann::json to_json() const;
  std::string to_text() const;

 private:
  std::vector<Check> checks_;
};

Check run_check(const std::string& name, const CheckFn& fn, const CheckOptions& opts);

}  // namespace qhopf
