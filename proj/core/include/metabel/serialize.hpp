#pragma once

// JSON forms of membership evidence and of the group computations, plus
// replay (verification without search) of saved certificates.

#include <string>

#include <nlohmann/json.hpp>

#include "metabel/burnside.hpp"

namespace metabel {

using Json = nlohmann::ordered_json;

Json to_json(const IdealSpec& spec);
IdealSpec spec_from_json(const Json& j);

/// {target, spec, status, parts | hom + value + reason | bounds}.
Json to_json(const Verdict& v, const LaurentPoly& target, const IdealSpec& spec);
Json to_json(const Certificate& c, const IdealSpec& spec);
Json to_json(const Obstruction& o, const IdealSpec& spec);

Json to_json(const MatPoly& m);
Json to_json(const MatrixVerdict& mv, std::int64_t q, int rank = 2);
Json to_json(const OrderVerdict& ov, std::int64_t q, int rank = 2);
Json to_json(const KernelReport& kr, std::int64_t q, int rank = 2);
Json to_json(const TruncSeries& s);

struct ReplayResult {
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures;
  bool ok() const { return failed == 0 && checked > 0; }
};

/// Accepts one evidence object or {"items": [...]}.  Each item is rebuilt
/// from its text form and re-verified: certificates by expansion and
/// generator legitimacy, obstructions by recomputing the image.
ReplayResult replay(const Json& doc);

}  // namespace metabel
