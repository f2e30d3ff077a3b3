// metabel: command-line front end.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "metabel/verify.hpp"

using namespace metabel;

namespace {

enum class Format { Text, Json };

const std::map<std::string, Format> kFormats{{"text", Format::Text}, {"json", Format::Json}};

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out || !(out << text)) throw std::runtime_error("cannot write '" + path + "'");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int status_code(Status s) {
  switch (s) {
    case Status::Proved: return 0;
    case Status::Unknown: return 2;
    case Status::Refuted: return 3;
  }
  return 1;
}

std::string verdict_text(const Verdict& v) {
  std::ostringstream os;
  os << to_string(v.status) << '\n';
  if (v.certificate) {
    for (const auto& p : v.certificate->parts)
      os << "  (" << p.multiplier.to_string() << ") * (" << p.generator.to_string() << ")\n";
    if (!v.bounds.note.empty()) os << "  route: " << v.bounds.note << '\n';
  } else if (v.obstruction) {
    os << "  " << v.obstruction->reason << '\n';
  } else {
    os << "  bounds: W = " << v.bounds.window << ", B = " << v.bounds.box << ", columns = " << v.bounds.columns;
    if (!v.bounds.note.empty()) os << " (" << v.bounds.note << ")";
    os << '\n';
  }
  return os.str();
}

std::string matrix_verdict_text(const MatrixVerdict& mv, const std::string& indent) {
  std::ostringstream os;
  os << indent << to_string(mv.status) << ": " << mv.count(Status::Proved) << " coefficients certified";
  if (mv.status == Status::Refuted && !mv.entries.empty()) {
    const auto& e = mv.entries.back();
    os << "; entry (" << e.row << "," << e.col << ") t^" << e.t_power << ": "
       << (e.verdict.obstruction ? e.verdict.obstruction->reason : "");
  }
  os << '\n';
  return os.str();
}

Budget budget_for(std::int64_t q, std::optional<int> window, std::optional<int> box) {
  Budget b = Budget::defaults(ExponentSpec::from_q(q));
  if (window) b.window = *window;
  if (box) b.box = *box;
  return b;
}

IdealSpec parse_ideal(const std::string& kind, std::int64_t q, int rank) {
  if (kind == "cyclo") return IdealSpec::cyclotomic(q, rank);
  if (kind == "cyclo-sigma") return IdealSpec::cyclotomic_times_sigma(q, rank);
  if (kind.rfind("sigma^", 0) == 0) return IdealSpec::sigma_power(std::stoi(kind.substr(6)), rank);
  throw CLI::ValidationError("--ideal", "expected cyclo, cyclo-sigma or sigma^m");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in free metabelian groups and their Burnside quotients"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "metabel 0.1.0");

  // verify
  std::string suite;
  RunConfig cfg;
  int window = 0, box = 0, trunc = 0;
  std::string out_path;
  Format format = Format::Text;
  auto* verify = app.add_subcommand("verify", "Run a claim suite (core, inclusions, series, orders, classes, all)");
  verify->add_option("suite", suite, "Suite name")->required();
  verify->add_option("--q", cfg.qs, "Exponents, comma separated")->delimiter(',');
  verify->add_option("--window", window, "Unit window W for cyclotomic generators");
  verify->add_option("--box", box, "Multiplier box B");
  verify->add_option("--trunc", trunc, "Series truncation D");
  verify->add_option("--seed", cfg.seed, "Sampling seed");
  verify->add_option("--samples", cfg.samples, "Samples per sampled claim");
  verify->add_option("--jobs", cfg.jobs, "Claims run concurrently")->check(CLI::PositiveNumber);
  verify->add_option("-o,--output", out_path, "Report path (default stdout)");
  verify->add_option("--format", format, "text or json")->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));

  // decide
  std::string target, ideal = "cyclo";
  std::int64_t q = 0;
  int rank = 2;
  auto* decide_cmd = app.add_subcommand("decide", "Decide membership of a polynomial in an ideal");
  decide_cmd->add_option("--target", target, "Polynomial, e.g. \"1 - 2*x + x^2\"")->required();
  decide_cmd->add_option("--ideal", ideal, "cyclo, cyclo-sigma or sigma^m");
  decide_cmd->add_option("--q", q, "Exponent for the cyclotomic ideals");
  decide_cmd->add_option("--rank", rank, "Number of x variables")->check(CLI::Range(1, kMaxVariables - 1));
  decide_cmd->add_option("--window", window, "Unit window W");
  decide_cmd->add_option("--box", box, "Multiplier box B");
  decide_cmd->add_option("-o,--output", out_path, "Write the JSON verdict here");
  decide_cmd->add_option("--format", format, "text or json")->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));

  // order
  std::string word, in = "g";
  auto* order_cmd = app.add_subcommand("order", "Order of a word in F(S) or G");
  order_cmd->add_option("--word", word, "Word, e.g. \"[M2T, M1] M1^2\"")->required();
  order_cmd->add_option("--q", q, "Exponent")->required();
  order_cmd->add_option("--in", in, "fs or g")->check(CLI::IsMember({"fs", "g"}));
  order_cmd->add_option("--format", format, "text or json")->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));

  // kernel
  auto* kernel_cmd = app.add_subcommand("kernel", "Kernel membership of F -> G");
  kernel_cmd->add_option("--word", word, "Word")->required();
  kernel_cmd->add_option("--q", q, "Exponent")->required();
  kernel_cmd->add_option("--trunc", trunc, "Series truncation D (default e phi(q) + 2)");
  kernel_cmd->add_option("--format", format, "text or json")->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));

  // expand
  auto* expand_cmd = app.add_subcommand("expand", "(t - 1)-adic expansion of a word");
  expand_cmd->add_option("--word", word, "Word")->required();
  expand_cmd->add_option("--trunc", trunc, "Truncation D (default 6, or e phi(q) + 2 with --q)");
  expand_cmd->add_option("--q", q, "Also test each coefficient for zero in S");
  expand_cmd->add_option("--format", format, "text or json")->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));

  // replay
  std::string replay_path;
  auto* replay_cmd = app.add_subcommand("replay", "Re-verify saved certificates and obstructions");
  replay_cmd->add_option("file", replay_path, "JSON evidence file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*verify) {
      if (window > 0) cfg.window = window;
      if (box > 0) cfg.box = box;
      if (trunc > 0) cfg.trunc = trunc;
      const auto results = run_suite(suite, cfg);
      emit_report(results, Registry::builtin().resolve_suite(suite), cfg,
                  format == Format::Json ? ReportFormat::Json : ReportFormat::Text, out_path);
      return exit_code(results);
    }

    if (*decide_cmd) {
      if (ideal != "cyclo" && ideal != "cyclo-sigma" && ideal.rfind("sigma^", 0) != 0)
        throw std::invalid_argument("--ideal must be cyclo, cyclo-sigma or sigma^m");
      const bool cyclotomic = ideal.rfind("sigma^", 0) != 0;
      if (cyclotomic) require_prime_power(q);
      IdealSpec spec = parse_ideal(ideal, q, rank);
      Budget budget = cyclotomic ? budget_for(q, std::nullopt, std::nullopt) : Budget{};
      if (window > 0) {
        spec = spec.with_window(window);
        budget.window = window;
      }
      if (box > 0) budget.box = box;
      const LaurentPoly p = LaurentPoly::parse(target, spec.ring());
      const Verdict v = decide(p, spec, budget);
      const Json j = to_json(v, p, spec);
      if (!out_path.empty()) write_output(dump(j), out_path);
      std::cout << (format == Format::Json ? dump(j) : verdict_text(v));
      return status_code(v.status);
    }

    if (*order_cmd) {
      require_prime_power(q);
      const GroupWord w = GroupWord::parse(word);
      const int r = std::max(2, w.max_generator());
      const Budget budget = budget_for(q, std::nullopt, std::nullopt);
      const OrderVerdict ov = in == "fs" ? order_in_FS(w, q, budget, r) : order_in_G(w, q, budget, r);
      if (format == Format::Json) {
        std::cout << dump(to_json(ov, q, r));
      } else {
        std::cout << to_string(ov.kind);
        if (ov.kind == OrderKind::FiniteDividing) std::cout << ' ' << ov.n << (ov.exact ? " (exact)" : " (divides)");
        std::cout << '\n';
        if (!ov.note.empty()) std::cout << "  " << ov.note << '\n';
        if (!ov.evidence.entries.empty()) std::cout << matrix_verdict_text(ov.evidence, "  ");
      }
      return ov.kind == OrderKind::Unknown ? 2 : 0;
    }

    if (*kernel_cmd) {
      require_prime_power(q);
      const GroupWord w = GroupWord::parse(word);
      const int r = std::max(2, w.max_generator());
      const ExponentSpec exps = ExponentSpec::from_q(q);
      const int d = trunc > 0 ? trunc : static_cast<int>(exps.ephi) + 2;
      const KernelReport kr = kernel_probe(w, q, d, Budget::defaults(exps), true, r);
      if (format == Format::Json) {
        std::cout << dump(to_json(kr, q, r));
      } else {
        std::cout << to_string(kr.status) << " (stage " << kr.decided_at << ")\n";
        if (!kr.note.empty()) std::cout << "  " << kr.note << '\n';
        if (kr.constant_term) std::cout << "  M_f:" << matrix_verdict_text(*kr.constant_term, " ");
        for (const auto& [i, mv] : kr.coefficients) std::cout << "  A_" << i << ":" << matrix_verdict_text(mv, " ");
        if (kr.exact) std::cout << "  exact:" << matrix_verdict_text(*kr.exact, " ");
      }
      return kr.status == KernelStatus::Unknown ? 2 : 0;
    }

    if (*expand_cmd) {
      std::optional<ExponentSpec> exps;
      if (q != 0) {
        require_prime_power(q);
        exps = ExponentSpec::from_q(q);
      }
      const GroupWord w = GroupWord::parse(word);
      const int r = std::max(2, w.max_generator());
      const int d = trunc > 0 ? trunc : exps ? static_cast<int>(exps->ephi) + 2 : 6;
      const TruncSeries s = expand(w, d, r);
      std::optional<SeriesIdentity> si;
      if (exps) si = series_identity_in_G(s, q, Budget::defaults(*exps));
      if (format == Format::Json) {
        Json j = to_json(s);
        j["word"] = w.to_string();
        if (si) {
          j["identity_in_S"] = to_string(si->status);
          j["constant_term"] = to_json(si->constant_term, q, r);
          Json c = Json::array();
          for (const auto& [i, mv] : si->coefficients) c.push_back({{"order", i}, {"verdict", to_json(mv, q, r)}});
          j["coefficient_verdicts"] = std::move(c);
        }
        std::cout << dump(j);
      } else {
        const auto floors = coeff_sigma_floor(s);
        for (int i = 0; i <= d; ++i) {
          std::cout << "A_" << i << " = " << s[i].to_string();
          if (auto it = floors.find(i); it != floors.end()) std::cout << "   sigma floor " << it->second;
          std::cout << '\n';
        }
        if (s[0].is_identity()) {
          const auto m = min_order(s);
          std::cout << "min order: " << (m ? std::to_string(*m) : "NONE") << '\n';
        }
        if (si) {
          std::cout << "identity in S up to order " << d << ": " << to_string(si->status) << '\n';
          std::cout << "  M_f:" << matrix_verdict_text(si->constant_term, " ");
          for (const auto& [i, mv] : si->coefficients) std::cout << "  A_" << i << ":" << matrix_verdict_text(mv, " ");
        }
      }
      return 0;
    }

    if (*replay_cmd) {
      std::ifstream in_file(replay_path);
      const Json doc = Json::parse(in_file);
      const ReplayResult rr = replay(doc);
      std::cout << rr.checked << " items checked, " << rr.failed << " failed\n";
      for (const auto& f : rr.failures) std::cout << "  " << f << '\n';
      return rr.ok() ? 0 : 3;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
