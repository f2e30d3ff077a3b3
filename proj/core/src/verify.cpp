#include "metabel/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace metabel {

// Defined in the generated claims source.
extern const char* const kClaimsManifest;

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Proved: return "PROVED";
    case CheckStatus::Refuted: return "REFUTED";
    case CheckStatus::Unknown: return "UNKNOWN";
    case CheckStatus::Observed: return "OBSERVED";
  }
  return "?";
}

const Registry& Registry::builtin() {
  static const Registry reg = from_json(Json::parse(kClaimsManifest));
  return reg;
}

Registry Registry::from_json(const Json& doc) {
  if (doc.value("schema_version", 0) != 1) throw std::invalid_argument("unsupported claims manifest version");
  Registry reg;
  if (doc.contains("defaults")) reg.default_samples_ = doc.at("defaults").value("samples", 50);
  for (const auto& [name, qs] : doc.at("suites").items()) {
    reg.suite_order_.push_back(name);
    reg.suite_qs_[name] = qs.get<std::vector<std::int64_t>>();
  }
  if (doc.contains("aliases"))
    for (const auto& [alias, target] : doc.at("aliases").items()) reg.aliases_[alias] = target.get<std::string>();
  for (const auto& c : doc.at("claims")) {
    ClaimSpec spec;
    spec.id = c.at("id").get<std::string>();
    spec.suite = c.at("suite").get<std::string>();
    spec.check = c.at("check").get<std::string>();
    spec.anchor = c.at("anchor").get<std::string>();
    spec.applies = c.value("applies", std::string());
    spec.samples = c.value("samples", 0);
    spec.trunc = c.value("trunc", 0);
    if (!reg.suite_qs_.count(spec.suite)) throw std::invalid_argument("claim " + spec.id + " names unknown suite");
    if (!check_table().count(spec.check)) throw std::invalid_argument("claim " + spec.id + " names unknown check");
    reg.claims_.push_back(std::move(spec));
  }
  if (doc.contains("class_table"))
    for (const auto& [q, text] : doc.at("class_table").items()) reg.class_table_[q] = text.get<std::string>();
  return reg;
}

std::vector<std::string> Registry::suites() const {
  auto out = suite_order_;
  out.emplace_back("all");
  return out;
}

std::string Registry::resolve_suite(const std::string& name) const {
  if (name == "all" || suite_qs_.count(name)) return name;
  if (auto it = aliases_.find(name); it != aliases_.end()) return it->second;
  throw std::invalid_argument("unknown suite '" + name + "'");
}

std::vector<std::int64_t> Registry::default_qs(const std::string& suite) const {
  auto it = suite_qs_.find(suite);
  return it == suite_qs_.end() ? std::vector<std::int64_t>{} : it->second;
}

bool Registry::suite_uses_q(const std::string& suite) const { return !default_qs(suite).empty(); }

void require_prime_power(std::int64_t q) {
  if (q < 2 || !prime_power_decomposition(q))
    throw std::invalid_argument("q = " + std::to_string(q) +
                                " is not a prime power; every exponent q must be p^e for a prime p");
}

std::uint64_t CheckContext::sample_seed(int i) const { return seed * 1000003ULL + static_cast<std::uint64_t>(i); }

std::string instantiate_id(const std::string& pattern, std::int64_t q) {
  std::string out = pattern;
  const auto pos = out.find("{q}");
  if (pos != std::string::npos) out.replace(pos, 3, std::to_string(q));
  return out;
}

int solvable_class_bound(const ExponentSpec& exps) {
  int k = 1;
  while ((std::int64_t{1} << (k - 1)) < exps.ephi + 1) ++k;
  return k;
}

bool claim_applies(const ClaimSpec& c, std::int64_t q) {
  if (c.applies.empty()) return true;
  const ExponentSpec exps = ExponentSpec::from_q(q);
  if (c.applies == "prime") return exps.is_prime();
  if (c.applies == "e<=2") return exps.e <= 2;
  if (c.applies == "kmin<=3") return solvable_class_bound(exps) <= 3;
  if (c.applies == "q4") return q == 4;
  throw std::invalid_argument("claim " + c.id + " has unknown applicability '" + c.applies + "'");
}

CheckContext make_context(const ClaimSpec& c, std::int64_t q, const RunConfig& cfg, const Registry& reg) {
  CheckContext ctx;
  ctx.q = q;
  ctx.registry = &reg;
  ctx.seed = cfg.seed;
  ctx.samples = cfg.samples > 0 ? cfg.samples : c.samples > 0 ? c.samples : reg.default_samples();
  if (q > 0) {
    ctx.exps = ExponentSpec::from_q(q);
    ctx.budget = Budget::defaults(*ctx.exps);
    ctx.trunc = static_cast<int>(ctx.exps->ephi) + 2;
  }
  if (c.trunc > 0) ctx.trunc = c.trunc;
  if (cfg.window) ctx.budget.window = *cfg.window;
  if (cfg.box) ctx.budget.box = *cfg.box;
  if (cfg.trunc) ctx.trunc = *cfg.trunc;
  return ctx;
}

namespace {

Json context_json(const CheckContext& ctx) {
  Json j;
  if (ctx.q > 0) j["q"] = ctx.q;
  j["window"] = ctx.budget.window;
  j["box"] = ctx.budget.box;
  j["escalations"] = ctx.budget.escalations;
  j["trunc"] = ctx.trunc;
  j["samples"] = ctx.samples;
  j["seed"] = ctx.seed;
  return j;
}

}  // namespace

CheckResult run_claim(const ClaimSpec& c, std::int64_t q, const RunConfig& cfg, const Registry& reg) {
  CheckResult r;
  r.claim_id = instantiate_id(c.id, q);
  r.anchor = c.anchor;
  const auto start = std::chrono::steady_clock::now();
  try {
    const CheckContext ctx = make_context(c, q, cfg, reg);
    r.config = context_json(ctx);
    CheckOutcome out = check_table().at(c.check)(ctx);
    r.status = out.status;
    r.agrees = out.agrees;
    r.paper_claim = out.paper_claim;
    r.summary = std::move(out.summary);
    r.evidence = std::move(out.evidence);
  } catch (const std::exception& e) {
    r.status = CheckStatus::Unknown;
    r.summary = std::string("check failed to run: ") + e.what();
  }
  r.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
    const bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
    if (da && db) {
      std::size_t ei = i, ej = j;
      while (ei < a.size() && std::isdigit(static_cast<unsigned char>(a[ei]))) ++ei;
      while (ej < b.size() && std::isdigit(static_cast<unsigned char>(b[ej]))) ++ej;
      // compare by stripped length, then lexically
      std::string_view na(a.data() + i, ei - i), nb(b.data() + j, ej - j);
      while (na.size() > 1 && na.front() == '0') na.remove_prefix(1);
      while (nb.size() > 1 && nb.front() == '0') nb.remove_prefix(1);
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = ei;
      j = ej;
      continue;
    }
    if (a[i] != b[j]) return a[i] < b[j];
    ++i;
    ++j;
  }
  return a.size() - i < b.size() - j;
}

std::vector<CheckResult> run_suite(const std::string& suite_name, const RunConfig& cfg, const Registry& reg) {
  const std::string suite = reg.resolve_suite(suite_name);
  for (auto q : cfg.qs) require_prime_power(q);

  struct Task {
    const ClaimSpec* claim;
    std::int64_t q;
  };
  std::vector<Task> tasks;
  for (const auto& s : reg.suites()) {
    if (s == "all" || (suite != "all" && s != suite)) continue;
    const bool uses_q = reg.suite_uses_q(s);
    const std::vector<std::int64_t> qs = !uses_q ? std::vector<std::int64_t>{0}
                                         : cfg.qs.empty() ? reg.default_qs(s)
                                                          : cfg.qs;
    for (const auto& c : reg.claims()) {
      if (c.suite != s) continue;
      for (auto q : qs)
        if (q == 0 || claim_applies(c, q)) tasks.push_back({&c, q});
    }
  }

  std::vector<CheckResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) results[i] = run_claim(*tasks[i].claim, tasks[i].q, cfg, reg);
  };
  const int jobs = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(tasks.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::stable_sort(results.begin(), results.end(),
                   [](const CheckResult& a, const CheckResult& b) { return natural_less(a.claim_id, b.claim_id); });
  return results;
}

Json to_json(const CheckResult& r) {
  Json j;
  j["claim_id"] = r.claim_id;
  j["anchor"] = r.anchor;
  j["status"] = to_string(r.status);
  if (r.status == CheckStatus::Observed) j["agrees"] = r.agrees;
  if (!r.paper_claim) j["exploratory"] = true;
  j["summary"] = r.summary;
  j["config"] = r.config;
  j["evidence"] = r.evidence;
  j["wall_time_ms"] = std::round(r.wall_time_ms * 1000.0) / 1000.0;
  return j;
}

Json config_json(const RunConfig& cfg) {
  Json j;
  j["q"] = cfg.qs;
  if (cfg.window) j["window"] = *cfg.window;
  if (cfg.box) j["box"] = *cfg.box;
  if (cfg.trunc) j["trunc"] = *cfg.trunc;
  if (cfg.samples > 0) j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  return j;
}

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

Json report_json(const std::vector<CheckResult>& results, const std::string& suite, const RunConfig& cfg) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["generated_at"] = utc_timestamp();
  j["suite"] = suite;
  j["config"] = config_json(cfg);
  Json rows = Json::array();
  for (const auto& r : results) rows.push_back(to_json(r));
  j["results"] = std::move(rows);
  j["exit_code"] = exit_code(results);
  return j;
}

Json without_volatile_fields(Json report) {
  report.erase("generated_at");
  if (report.contains("results"))
    for (auto& r : report["results"]) r.erase("wall_time_ms");
  return report;
}

std::string report_text(const std::vector<CheckResult>& results) {
  std::size_t width = 8;
  for (const auto& r : results) width = std::max(width, r.claim_id.size());
  std::ostringstream os;
  char line[64];
  os << std::string(width - 5, ' ') << "claim  status        time  summary\n";
  for (const auto& r : results) {
    std::string status = to_string(r.status);
    if (r.status == CheckStatus::Observed) status += r.agrees ? "" : "!";
    std::snprintf(line, sizeof line, "  %-10s %8.1fs  ", status.c_str(), r.wall_time_ms / 1000.0);
    os << std::string(width - r.claim_id.size(), ' ') << r.claim_id << line << r.summary;
    if (!r.paper_claim) os << " [exploratory]";
    os << '\n';
  }
  std::size_t counts[4] = {0, 0, 0, 0};
  std::size_t disagree = 0;
  for (const auto& r : results) {
    ++counts[static_cast<int>(r.status)];
    disagree += (r.status == CheckStatus::Observed && !r.agrees && r.paper_claim) ? 1 : 0;
  }
  os << results.size() << " claims: " << counts[0] << " proved, " << counts[3] << " observed (" << disagree
     << " discrepancies), " << counts[1] << " refuted, " << counts[2] << " unknown\n";
  return os.str();
}

void emit_report(const std::vector<CheckResult>& results, const std::string& suite, const RunConfig& cfg,
                 ReportFormat format, const std::string& path) {
  const std::string text =
      format == ReportFormat::Json ? report_json(results, suite, cfg).dump(2) + "\n" : report_text(results);
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report to '" + path + "'");
  out << text;
  if (!out.flush()) throw std::runtime_error("cannot write report to '" + path + "'");
}

int exit_code(const std::vector<CheckResult>& results) {
  bool unknown = false;
  for (const auto& r : results) {
    if (!r.paper_claim) continue;
    if (r.status == CheckStatus::Refuted || (r.status == CheckStatus::Observed && !r.agrees)) return 3;
    unknown = unknown || r.status == CheckStatus::Unknown;
  }
  return unknown ? 2 : 0;
}

}  // namespace metabel
