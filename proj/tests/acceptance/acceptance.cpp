// Acceptance runner: one line per criterion, exact equality throughout.
//
//   metabel_acceptance            run all eleven
//   metabel_acceptance 3 7        run criteria 3 and 7
//
// Exit status is 0 only when every selected criterion passes.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "metabel/verify.hpp"

using namespace metabel;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

const ClaimSpec& claim(const std::string& check) {
  for (const auto& c : Registry::builtin().claims())
    if (c.check == check) return c;
  throw std::logic_error("no claim uses check " + check);
}

RunConfig config(int samples, int trunc = 0) {
  RunConfig cfg;
  cfg.samples = samples;
  if (trunc > 0) cfg.trunc = trunc;
  return cfg;
}

// Runs check at each q and requires the given status (OBSERVED must agree).
Outcome require(const std::string& check, const std::vector<std::int64_t>& qs, const RunConfig& cfg,
                CheckStatus wanted) {
  Outcome out;
  std::ostringstream os;
  for (auto q : qs) {
    const CheckResult r = run_claim(claim(check), q, cfg);
    const bool ok = r.status == wanted && (wanted != CheckStatus::Observed || r.agrees);
    out.pass = out.pass && ok;
    if (!ok || qs.size() == 1 || q == qs.front()) {
      if (os.tellp() > 0) os << "; ";
      os << r.claim_id << " " << to_string(r.status) << (ok ? "" : ": " + r.summary);
    }
  }
  out.detail = os.str();
  return out;
}

Outcome merge(std::vector<Outcome> parts) {
  Outcome out;
  std::ostringstream os;
  for (const auto& p : parts) {
    out.pass = out.pass && p.pass;
    if (os.tellp() > 0) os << "; ";
    os << p.detail;
  }
  out.detail = os.str();
  return out;
}

Outcome criterion_power_law() { return require("power_law", {0}, config(100), CheckStatus::Observed); }

Outcome criterion_normal_form() {
  return require("normal_form_invariants", {0}, config(100), CheckStatus::Observed);
}

Outcome criterion_inclusions() {
  const RunConfig cfg;
  return merge({require("sigma_power_inclusion", {2, 3, 4, 5}, cfg, CheckStatus::Proved),
                require("two_sigma_cubed", {4}, cfg, CheckStatus::Proved),
                require("strict_inclusion", {2, 3, 4, 5}, cfg, CheckStatus::Proved)});
}

Outcome criterion_series() {
  const RunConfig cfg = config(50, 6);
  return merge({require("series_first_derived", {0}, cfg, CheckStatus::Observed),
                require("series_second_derived", {0}, cfg, CheckStatus::Observed),
                require("series_third_derived", {0}, cfg, CheckStatus::Observed)});
}

Outcome criterion_fs_exponent() { return require("fs_exponent", {2, 3, 4, 5}, config(50), CheckStatus::Observed); }

Outcome criterion_dichotomy() { return require("dichotomy", {2, 3}, config(50), CheckStatus::Observed); }

Outcome criterion_second_derived() {
  return require("second_derived_exponent", {2, 3, 4}, config(25), CheckStatus::Observed);
}

Outcome criterion_third_derived() {
  return require("third_derived_identity", {3}, config(25, 6), CheckStatus::Observed);
}

Outcome criterion_corollary() { return require("corollary", {2, 3}, RunConfig{}, CheckStatus::Proved); }

Outcome criterion_class_table() {
  RunConfig cfg;
  cfg.qs = {2, 3, 4, 5, 7, 125};
  const auto results = run_suite("classes", cfg);
  const Json report = without_volatile_fields(report_json(results, "classes", cfg));
  std::ifstream in(std::string(METABEL_GOLDEN_DIR) + "/classes.json");
  Outcome out;
  if (!in) return {false, "golden file missing"};
  const Json golden = Json::parse(in);
  out.pass = report == golden;
  std::ostringstream os;
  os << results.size() << " rows";
  for (const auto& r : results)
    if (!r.agrees) os << ", " << r.claim_id << " discrepancy";
  os << (out.pass ? "; matches golden" : "; differs from golden");
  out.detail = os.str();
  return out;
}

Outcome criterion_sanov() { return require("sanov", {0}, config(100), CheckStatus::Observed); }

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"power law equals repeated multiplication", criterion_power_law},
      {"normal-form invariants", criterion_normal_form},
      {"Sigma-power inclusions and strictness", criterion_inclusions},
      {"series degree laws", criterion_series},
      {"exponent q in F(S)", criterion_fs_exponent},
      {"t-sum order dichotomy", criterion_dichotomy},
      {"second derived words have order dividing q", criterion_second_derived},
      {"third derived words vanish in G at q = 3", criterion_third_derived},
      {"(t-1)^p identity for (M2T)^p", criterion_corollary},
      {"class table against golden report", criterion_class_table},
      {"integer specialization keeps words nontrivial", criterion_sanov},
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int n = std::atoi(argv[i]);
    if (n < 1 || n > static_cast<int>(criteria.size())) {
      std::cerr << "usage: " << argv[0] << " [criterion 1-" << criteria.size() << "]...\n";
      return 1;
    }
    selected.push_back(n);
  }
  if (selected.empty())
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) selected.push_back(i);

  int failed = 0;
  for (int n : selected) {
    const auto& c = criteria[static_cast<std::size_t>(n - 1)];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char head[96];
    std::snprintf(head, sizeof head, "criterion %2d %s %7.1fs  ", n, o.pass ? "PASS" : "FAIL", secs);
    std::cout << head << c.name << " | " << o.detail << std::endl;
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
