// Named verification suites: each one checks a package of statements at its
// stated tolerance against fixed fixtures and reports pass/fail with a
// serialized transcript. The acceptance binary and the `verify` subcommand
// both run these.

#pragma once

#include <string>
#include <vector>

#include "arq/serialize.hpp"

namespace arq {

struct VerifyOptions {
  uint32_t p = 0;        // 0 = suite default
  std::string quiver;    // fixture override where meaningful ("A3", "A4-zigzag", ...)
  uint64_t seed = 0;
  uint64_t cap = 1 << 16;
  int truncate = 8;
  int truncate_max = 12;
  int step = 2;
};

struct SuiteResult {
  std::string name;
  std::string description;
  bool pass = false;
  double seconds = 0.0;
  Json details;
};

const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& name);
SuiteResult run_suite(const std::string& name, const VerifyOptions& opts);

// Full report with the configuration embedded; identical runs are
// byte-identical.
Json suite_report(const SuiteResult& result, const VerifyOptions& opts);

// Fixture lookup: "A2".."A9" (line orientation), with "-zigzag" suffix for
// the alternating orientation.
QuiverPtr fixture_quiver(const std::string& name);

}  // namespace arq
