#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace shvg {

// Knobs for the self-verification suites. -1 keeps a suite's default size.
struct VerifyOptions {
  int max_n = -1;    // size cap (meaning is suite-specific)
  int count = -1;    // number of randomized cases
  uint64_t seed = 0xc0ffee;
  int vars = 2;      // reduction suite: original variable cap
  int clauses = 2;   // reduction suite: original clause cap
  int threads = 1;
};

struct VerifyFailure {
  std::string case_name;
  std::string detail;
};

struct VerifyReport {
  std::string suite;
  bool passed = true;
  int checks = 0;
  std::vector<VerifyFailure> failures;
  double seconds = 0.0;
};

// Names accepted by run_verify_suite, in reporting order.
std::vector<std::string> verify_suite_names();

// Runs one suite; throws std::invalid_argument on an unknown name.
VerifyReport run_verify_suite(const std::string& name,
                              const VerifyOptions& opt);

}  // namespace shvg
