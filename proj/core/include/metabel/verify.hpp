#pragma once

// Claim registry, verification suites and reports.
//
// Each claim names a check function and a short anchor quoting the
// statement it tests.  Claims templated on q ("orders.q{q}.dichotomy") are
// instantiated once per requested q.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "metabel/serialize.hpp"

namespace metabel {

enum class CheckStatus { Proved, Refuted, Unknown, Observed };
std::string to_string(CheckStatus s);

struct CheckResult {
  std::string claim_id;
  std::string anchor;
  CheckStatus status = CheckStatus::Unknown;
  /// OBSERVED rows: whether the observation agrees with the stated claim.
  bool agrees = true;
  /// False for exploratory rows that are not statements being tested; they
  /// never affect the exit code.
  bool paper_claim = true;
  std::string summary;
  Json evidence = Json::object();
  Json config = Json::object();
  double wall_time_ms = 0;
};

struct RunConfig {
  /// Empty: the suite's default list.
  std::vector<std::int64_t> qs;
  std::optional<int> window;
  std::optional<int> box;
  std::optional<int> trunc;
  /// 0: each claim's own default.
  int samples = 0;
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct ClaimSpec {
  std::string id;  // may contain {q}
  std::string suite;
  std::string check;
  std::string anchor;
  std::string applies;  // "", "prime", "e<=2", "kmin<=3", "q4"
  int samples = 0;
  int trunc = 0;  // 0: e phi(q) + 2, or 6 without q
};

class Registry {
 public:
  /// The manifest compiled into the library.
  static const Registry& builtin();
  static Registry from_json(const Json& doc);

  const std::vector<ClaimSpec>& claims() const { return claims_; }
  const std::map<std::string, std::string>& class_table() const { return class_table_; }
  int default_samples() const { return default_samples_; }

  /// Suite names in manifest order, plus "all".
  std::vector<std::string> suites() const;
  /// Resolves aliases; throws std::invalid_argument for unknown names.
  std::string resolve_suite(const std::string& name) const;
  std::vector<std::int64_t> default_qs(const std::string& suite) const;
  bool suite_uses_q(const std::string& suite) const;

 private:
  std::vector<ClaimSpec> claims_;
  std::vector<std::string> suite_order_;
  std::map<std::string, std::vector<std::int64_t>> suite_qs_;
  std::map<std::string, std::string> aliases_;
  std::map<std::string, std::string> class_table_;
  int default_samples_ = 50;
};

/// Throws std::invalid_argument naming the prime-power hypothesis.
void require_prime_power(std::int64_t q);

/// Everything a check needs.  q = 0 for suites that do not take q.
struct CheckContext {
  std::int64_t q = 0;
  std::optional<ExponentSpec> exps;
  Budget budget;
  int trunc = 6;
  int samples = 50;
  std::uint64_t seed = 0;
  const Registry* registry = nullptr;

  /// seed * 1000003 + i, the per-sample seed.
  std::uint64_t sample_seed(int i) const;
};

/// What a check function fills in; the runner adds id, anchor, config and
/// timing.
struct CheckOutcome {
  CheckStatus status = CheckStatus::Unknown;
  bool agrees = true;
  bool paper_claim = true;
  std::string summary;
  Json evidence = Json::object();
};

using CheckFn = std::function<CheckOutcome(const CheckContext&)>;

/// Check name -> function.
const std::map<std::string, CheckFn>& check_table();

/// The claim id with {q} replaced by q.
std::string instantiate_id(const std::string& pattern, std::int64_t q);
/// Whether a q-templated claim applies at q.
bool claim_applies(const ClaimSpec& c, std::int64_t q);

/// Budgets, truncation and samples for one claim at one q.
CheckContext make_context(const ClaimSpec& c, std::int64_t q, const RunConfig& cfg, const Registry& reg);

/// Runs one claim; exceptions become UNKNOWN with the message as summary.
CheckResult run_claim(const ClaimSpec& c, std::int64_t q, const RunConfig& cfg,
                      const Registry& reg = Registry::builtin());

/// Runs every claim of the suite ("all" for every suite) for every q,
/// concurrently up to cfg.jobs.  Results are ordered by claim id with
/// embedded numbers compared numerically.
std::vector<CheckResult> run_suite(const std::string& suite, const RunConfig& cfg,
                                   const Registry& reg = Registry::builtin());

/// Natural order: digit runs compare as numbers.
bool natural_less(const std::string& a, const std::string& b);

Json to_json(const CheckResult& r);
Json config_json(const RunConfig& cfg);

inline constexpr int kReportSchemaVersion = 1;

/// {schema_version, generated_at, suite, config, results}.
Json report_json(const std::vector<CheckResult>& results, const std::string& suite, const RunConfig& cfg);
/// The report without generated_at and wall_time_ms, the only fields that
/// differ between runs with the same configuration.
Json without_volatile_fields(Json report);
/// One row per claim: id, status, time, summary.
std::string report_text(const std::vector<CheckResult>& results);

enum class ReportFormat { Text, Json };

/// Writes to `path`, or to stdout when path is empty or "-".  Throws
/// std::runtime_error when the file cannot be written.
void emit_report(const std::vector<CheckResult>& results, const std::string& suite, const RunConfig& cfg,
                 ReportFormat format, const std::string& path);

/// 0: every paper claim PROVED or OBSERVED in agreement; 2: some UNKNOWN;
/// 3: some REFUTED or OBSERVED discrepancy (takes precedence over 2).
int exit_code(const std::vector<CheckResult>& results);

/// k_min = min{k : 2^{k-1} >= e phi(q) + 1}.
int solvable_class_bound(const ExponentSpec& exps);

}  // namespace metabel
