#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mui {

struct VerifyConfig {
  std::uint32_t p = 3;
  int n = 2;
  std::uint64_t max_degree = 20;
  /// Randomized cases per property claim.
  std::size_t random_cases = 1000;
  /// Randomized module combinations for the freeness check.
  std::size_t module_samples = 100;
  std::uint64_t seed = 20081925;
};

struct CaseResult {
  std::string id;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct VerificationReport {
  std::string claim;
  std::uint32_t p = 0;
  int n = 0;
  std::uint64_t degree_bound = 0;
  bool passed = false;
  /// What was actually covered, e.g. "degrees 0..20".
  std::string coverage;
  std::vector<CaseResult> cases;
  double runtime_ms = 0;
};

/// Every claim id, in report order.
const std::vector<std::string>& known_claims();
/// Claims that make sense at this prime (the p = 2 and odd-p sets differ).
std::vector<std::string> applicable_claims(std::uint32_t p);

/// Throws ResourceError for configurations beyond the documented caps:
/// rank 1..4 for odd p and 1..6 for p = 2, p^n <= 4096, max degree <= 200
/// and at most 6000 monomials in the top degree.
void check_resources(const VerifyConfig& config);

/// Runs one claim. Throws UsageError for an unknown or inapplicable claim and
/// ResourceError via check_resources.
VerificationReport verify(std::string_view claim, const VerifyConfig& config);

/// Runs the given claims (all applicable ones if empty) on up to `threads`
/// worker threads. Reports come back sorted by claim id.
std::vector<VerificationReport> verify_all(const VerifyConfig& config,
                                           const std::vector<std::string>& claims = {},
                                           unsigned threads = 1);

std::string to_json(const std::vector<VerificationReport>& reports);
std::string to_json(const VerificationReport& report);
/// One summary line per report, then the failing cases.
std::string to_text(const std::vector<VerificationReport>& reports);

}  // namespace mui
