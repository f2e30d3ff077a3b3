#include "metabel/serialize.hpp"

#include <stdexcept>

namespace metabel {

namespace {

Json integers(const std::vector<Integer>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

std::vector<Integer> integers_from(const Json& a) {
  std::vector<Integer> v;
  for (const auto& x : a) v.emplace_back(x.get<std::string>());
  return v;
}

std::string obstruction_type(ObstructionKind k) {
  switch (k) {
    case ObstructionKind::Augmentation: return "augmentation";
    case ObstructionKind::RootOfUnity: return "root-of-unity";
    case ObstructionKind::GroupRing: return "group-ring";
    case ObstructionKind::SigmaAdic: return "sigma-adic";
  }
  return "?";
}

ObstructionKind obstruction_kind(const std::string& s) {
  if (s == "augmentation") return ObstructionKind::Augmentation;
  if (s == "root-of-unity") return ObstructionKind::RootOfUnity;
  if (s == "group-ring") return ObstructionKind::GroupRing;
  if (s == "sigma-adic") return ObstructionKind::SigmaAdic;
  throw std::invalid_argument("unknown evidence type '" + s + "'");
}

Status status_from(const std::string& s) {
  if (s == "PROVED") return Status::Proved;
  if (s == "REFUTED") return Status::Refuted;
  if (s == "UNKNOWN") return Status::Unknown;
  throw std::invalid_argument("unknown status '" + s + "'");
}

}  // namespace

Json to_json(const IdealSpec& spec) {
  Json j;
  j["kind"] = spec.kind == IdealKind::SigmaPower ? "sigma" : spec.kind_name();
  if (spec.kind == IdealKind::SigmaPower) j["m"] = spec.m;
  else j["q"] = spec.exps.q;
  j["W"] = spec.window;
  j["k"] = spec.rank;
  return j;
}

IdealSpec spec_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const int k = j.value("k", 2);
  IdealSpec spec;
  if (kind == "sigma") spec = IdealSpec::sigma_power(j.at("m").get<int>(), k);
  else if (kind == "cyclo") spec = IdealSpec::cyclotomic(j.at("q").get<std::int64_t>(), k);
  else if (kind == "cyclo-sigma") spec = IdealSpec::cyclotomic_times_sigma(j.at("q").get<std::int64_t>(), k);
  else throw std::invalid_argument("unknown ideal kind '" + kind + "'");
  if (j.contains("W")) spec = spec.with_window(j.at("W").get<int>());
  return spec;
}

Json to_json(const Certificate& c, const IdealSpec& spec) {
  Json j;
  j["target"] = c.target.to_string();
  j["spec"] = to_json(spec);
  j["status"] = "PROVED";
  Json parts = Json::array();
  for (const auto& p : c.parts) parts.push_back({{"gen", p.generator.to_string()}, {"mul", p.multiplier.to_string()}});
  j["parts"] = std::move(parts);
  return j;
}

Json to_json(const Obstruction& o, const IdealSpec& spec) {
  Json j;
  j["target"] = o.target.to_string();
  j["spec"] = to_json(spec);
  j["status"] = "REFUTED";
  Json hom;
  hom["type"] = obstruction_type(o.kind);
  const Ring ring = o.target.ring();
  Json assign = Json::object();
  switch (o.kind) {
    case ObstructionKind::Augmentation:
      for (int i = 0; i < ring.rank; ++i) assign[ring.variable_name(i)] = "1";
      break;
    case ObstructionKind::RootOfUnity:
      hom["order"] = o.root_order;
      hom["exponents"] = o.exponents;
      for (int i = 0; i < ring.rank; ++i)
        assign[ring.variable_name(i)] = "omega^" + std::to_string(o.exponents[static_cast<std::size_t>(i)]);
      break;
    case ObstructionKind::GroupRing:
      hom["modulus"] = o.root_order;
      for (int i = 0; i < ring.rank; ++i) assign[ring.variable_name(i)] = "g" + std::to_string(i + 1) + " (g^q = 1)";
      break;
    case ObstructionKind::SigmaAdic:
      hom["truncation"] = o.truncation;
      for (int i = 0; i < ring.rank; ++i) assign[ring.variable_name(i)] = "1 + s" + std::to_string(i + 1);
      break;
  }
  hom["assignments"] = std::move(assign);
  j["hom"] = std::move(hom);
  j["value"] = integers(o.value);
  j["reason"] = o.reason;
  return j;
}

Json to_json(const Verdict& v, const LaurentPoly& target, const IdealSpec& spec) {
  if (v.status == Status::Proved && v.certificate) {
    Json j = to_json(*v.certificate, spec);
    if (!v.bounds.note.empty()) j["route"] = v.bounds.note;
    return j;
  }
  if (v.status == Status::Refuted && v.obstruction) return to_json(*v.obstruction, spec);
  Json j;
  j["target"] = target.to_string();
  j["spec"] = to_json(spec);
  j["status"] = to_string(v.status);
  j["bounds"] = {{"W", v.bounds.window}, {"B", v.bounds.box}, {"columns", v.bounds.columns}, {"note", v.bounds.note}};
  return j;
}

Json to_json(const MatPoly& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.dim(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.dim(); ++c) row.push_back(m(r, c).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const MatrixVerdict& mv, std::int64_t q, int rank) {
  const IdealSpec spec = IdealSpec::cyclotomic_times_sigma(q, rank);
  Json j;
  j["status"] = to_string(mv.status);
  Json entries = Json::array();
  for (const auto& e : mv.entries) {
    LaurentPoly target = e.verdict.certificate ? e.verdict.certificate->target
                         : e.verdict.obstruction ? e.verdict.obstruction->target
                                                 : LaurentPoly(spec.ring());
    Json item = to_json(e.verdict, target, spec);
    item["entry"] = {e.row, e.col};
    item["t_power"] = e.t_power;
    entries.push_back(std::move(item));
  }
  j["entries"] = std::move(entries);
  return j;
}

Json to_json(const OrderVerdict& ov, std::int64_t q, int rank) {
  Json j;
  j["q"] = q;
  j["kind"] = to_string(ov.kind);
  if (ov.kind == OrderKind::FiniteDividing) {
    j["n"] = ov.n;
    j["exact"] = ov.exact;
  }
  if (ov.det_t_exponent) j["det_t_exponent"] = *ov.det_t_exponent;
  if (ov.power_refuted) j["power_refuted"] = true;
  if (!ov.divisors.empty()) {
    Json d = Json::array();
    for (const auto& [n, s] : ov.divisors) d.push_back({{"n", n}, {"status", to_string(s)}});
    j["smaller_divisors"] = std::move(d);
  }
  if (!ov.note.empty()) j["note"] = ov.note;
  if (!ov.evidence.entries.empty() || ov.kind != OrderKind::Infinite || ov.power_refuted)
    j["evidence"] = to_json(ov.evidence, q, rank);
  return j;
}

Json to_json(const KernelReport& kr, std::int64_t q, int rank) {
  Json j;
  j["q"] = q;
  j["status"] = to_string(kr.status);
  j["decided_at_stage"] = kr.decided_at;
  Json sums = Json::object();
  for (const auto& [g, e] : kr.sums.per_generator) sums[std::to_string(g)] = e;
  j["exponent_sums"] = std::move(sums);
  j["t_sum"] = kr.sums.t_sum;
  if (kr.constant_term) j["constant_term"] = to_json(*kr.constant_term, q, rank);
  if (!kr.coefficients.empty()) {
    Json c = Json::array();
    for (const auto& [i, mv] : kr.coefficients) {
      Json item = to_json(mv, q, rank);
      item["order"] = i;
      c.push_back(std::move(item));
    }
    j["coefficients"] = std::move(c);
  }
  if (kr.exact) j["exact"] = to_json(*kr.exact, q, rank);
  if (!kr.note.empty()) j["note"] = kr.note;
  return j;
}

Json to_json(const TruncSeries& s) {
  Json j;
  j["trunc"] = s.trunc();
  Json coeffs = Json::array();
  for (int i = 0; i <= s.trunc(); ++i) coeffs.push_back({{"order", i}, {"matrix", to_json(s[i])}});
  j["coefficients"] = std::move(coeffs);
  Json floors = Json::object();
  for (const auto& [i, f] : coeff_sigma_floor(s)) floors[std::to_string(i)] = f;
  j["sigma_floor"] = std::move(floors);
  if (s[0].is_identity()) {
    auto d = min_order(s);
    j["min_order"] = d ? Json(*d) : Json("NONE");
  }
  return j;
}

namespace {

void replay_item(const Json& item, ReplayResult& out) {
  ++out.checked;
  std::string why;
  try {
    const IdealSpec spec = spec_from_json(item.at("spec"));
    const LaurentPoly target = LaurentPoly::parse(item.at("target").get<std::string>(), spec.ring());
    const Status status = status_from(item.at("status").get<std::string>());
    bool ok = false;
    if (status == Status::Proved) {
      Certificate c{target, {}};
      for (const auto& p : item.at("parts"))
        c.parts.push_back({LaurentPoly::parse(p.at("gen").get<std::string>(), spec.ring()),
                           LaurentPoly::parse(p.at("mul").get<std::string>(), spec.ring())});
      ok = c.verify(spec);
      if (!ok) why = "certificate does not verify";
    } else if (status == Status::Refuted) {
      const Json& hom = item.at("hom");
      Obstruction o;
      o.kind = obstruction_kind(hom.at("type").get<std::string>());
      o.target = target;
      o.value = integers_from(item.at("value"));
      if (o.kind == ObstructionKind::RootOfUnity) {
        o.root_order = hom.at("order").get<std::int64_t>();
        o.exponents = hom.at("exponents").get<std::vector<int>>();
      }
      if (o.kind == ObstructionKind::GroupRing) o.root_order = hom.at("modulus").get<std::int64_t>();
      if (o.kind == ObstructionKind::SigmaAdic) o.truncation = hom.at("truncation").get<int>();
      ok = o.verify(spec);
      if (!ok) why = "obstruction does not verify";
    } else {
      why = "UNKNOWN verdicts carry no evidence to replay";
    }
    if (ok) return;
  } catch (const std::exception& e) {
    why = e.what();
  }
  ++out.failed;
  out.failures.push_back(item.value("target", std::string("?")) + ": " + why);
}

}  // namespace

ReplayResult replay(const Json& doc) {
  ReplayResult out;
  if (doc.contains("items")) {
    for (const auto& item : doc.at("items")) replay_item(item, out);
  } else {
    replay_item(doc, out);
  }
  return out;
}

}  // namespace metabel
