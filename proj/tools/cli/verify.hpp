#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace netgeo::cli {

enum class CheckStatus { kPass, kFail, kWide };

std::string_view to_string(CheckStatus status);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::kFail;
  std::string detail;  // measured margins
};

// Statistical comparison: PASS when |difference| <= 3 sigma, FAIL beyond,
// WIDE when sigma itself exceeds `wide_sigma` (the check cannot resolve anything).
CheckStatus agreement_status(double difference, double sigma, double wide_sigma);

// Ordering check a > b: PASS when the margin exceeds 3 sigma, FAIL when it is
// below -3 sigma, WIDE in between.
CheckStatus ordering_status(double margin, double sigma);

struct VerifySuite {
  std::string name;
  std::function<std::vector<CheckResult>(const RunConfig&, std::ostream& err)> run;
};

std::vector<VerifySuite> verify_suites();

}  // namespace netgeo::cli
