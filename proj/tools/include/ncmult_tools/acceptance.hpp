#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ncmult_tools/report.hpp"

namespace ncmult::tools {

inline constexpr std::uint64_t kAcceptanceSeed = 20240611;
// Upper bound frozen from the closed-form tail sweep N = 1..64.
inline constexpr double kRapidDecayConstant = 25.0;

struct AcceptanceOptions {
  // Heisenberg radius-32 balls hold 446969 elements, above the default cap.
  std::size_t heisenberg_cap = 1000000;
  // Fault injection: zero out N(1, 1, 2) in the SU(2) ring of criterion 6.
  bool corrupt_fusion = false;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool content_pass = false;  // verdict on the mathematical content
  double seconds = 0;
  double budget_seconds = 0;
  std::string summary;
  Json details;

  bool within_budget() const { return seconds <= budget_seconds; }
  bool pass() const { return content_pass && within_budget(); }
};

// Shared state so expensive fixtures are built once per run.
struct AcceptanceContext;

struct CriterionSpec {
  int id;
  std::string name;
  double budget_seconds;
  std::function<void(AcceptanceContext&, CriterionResult&)> run;
};

const std::vector<CriterionSpec>& criteria();

class AcceptanceRunner {
 public:
  explicit AcceptanceRunner(AcceptanceOptions options = {});
  ~AcceptanceRunner();
  AcceptanceRunner(const AcceptanceRunner&) = delete;
  AcceptanceRunner& operator=(const AcceptanceRunner&) = delete;

  CriterionResult run(int id);
  std::vector<CriterionResult> run_all(const std::function<void(const CriterionResult&)>& on_result = {});

 private:
  AcceptanceOptions options_;
  AcceptanceContext* context_;
};

// Deterministic report of criteria results (timings excluded).
Json acceptance_report(const std::vector<CriterionResult>& results);

CriterionResult determinism_criterion(const std::string& first, const std::string& second, double seconds);

std::string summary_line(const CriterionResult& r, bool with_time);

struct AcceptanceOutcome {
  std::vector<CriterionResult> results;  // all 16
  Json report;                           // deterministic content of the first run plus criterion 16
  bool pass = false;
};

// Runs criteria 1-15 twice and derives criterion 16 from the two reports.
AcceptanceOutcome full_acceptance(const AcceptanceOptions& options,
                                  const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace ncmult::tools
