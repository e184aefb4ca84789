#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "harmalg/patterns.hpp"

namespace harmalg::verify {

struct Options {
  std::optional<std::size_t> n;  // suite default when unset
  std::optional<int> maxdeg;     // suite default when unset
  std::uint64_t seed = 42;
  std::size_t samples = 100000;
  unsigned threads = 0;
  CombineRule rule = CombineRule::Minus;
};

struct CheckResult {
  explicit CheckResult(std::string check_name = {}) : name(std::move(check_name)) {}

  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  // First failing case, in a form that can be fed back to the CLI.
  std::string counterexample;
  std::string detail;

  CheckResult& fail(std::string what);
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool passed() const;
};

class UnknownSuite : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// exact-core, harmonics, patterns, product-span, mc
const std::vector<std::string>& suite_names();

// "all" runs every suite in order. Throws UnknownSuite.
std::vector<SuiteReport> run(const std::string& suite, const Options& opts);

SuiteReport exact_core_suite(const Options& opts);
SuiteReport harmonics_suite(const Options& opts);
SuiteReport patterns_suite(const Options& opts);
SuiteReport product_span_suite(const Options& opts);
SuiteReport mc_suite(const Options& opts);

}  // namespace harmalg::verify
