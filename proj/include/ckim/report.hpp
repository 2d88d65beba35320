#pragma once

#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "ckim/criteria.hpp"
#include "ckim/curve.hpp"
#include "ckim/pointcount.hpp"
#include "ckim/selmer.hpp"
#include "ckim/series.hpp"

namespace ckim {

using json = nlohmann::json;

// ----- canonical JSON ------------------------------------------------------

/// Serializes with sorted keys and every floating-point number printed with
/// 17 significant digits, so that parse -> dump round-trips byte-identically.
inline void canonical_dump(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        canonical_dump(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        canonical_dump(v, out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
      out += buf;
      break;
    }
    default:
      out += j.dump();
  }
}

inline std::string canonical_dump(const json& j) {
  std::string out;
  canonical_dump(j, out);
  out += '\n';
  return out;
}

// ----- request ------------------------------------------------------------

struct AnalysisOptions {
  Variant variant = Variant::Selmer;
  std::set<QuotientKind> kinds = {QuotientKind::Abelianized, QuotientKind::AbelianByArtinTate,
                                  QuotientKind::FullWeightTwo};
  std::vector<ReductionMode> reduction_modes = {ReductionMode::Generic};
  bool depth1 = false;
  long truncation = 2;
};

struct AnalysisRequest {
  CurveSpec curve;
  ArithmeticInputs arithmetic;
  std::set<int64_t> S;
  int64_t p = 0;
  std::map<int64_t, long long> bad_components;
  AnalysisOptions options;
  std::optional<long long> user_y_count;  // required for the generic family
  bool assume_admissible = false;         // generic family only
};

class RequestParseError : public std::runtime_error {
 public:
  explicit RequestParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline IntPoly poly_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw RequestParseError(where + ": expected an array of integer coefficients");
  std::vector<Int> c;
  c.reserve(j.size());
  for (const auto& v : j) {
    if (v.is_number_integer())
      c.emplace_back(static_cast<long>(v.get<long long>()));
    else if (v.is_string())
      c.emplace_back(v.get<std::string>());
    else
      throw RequestParseError(where + ": coefficients must be integers or decimal strings");
  }
  return IntPoly(std::move(c));
}

inline json poly_to_json(const IntPoly& f) {
  json a = json::array();
  for (const auto& c : f.coeffs()) {
    if (c.fits_slong_p())
      a.push_back(c.get_si());
    else
      a.push_back(c.get_str());
  }
  return a;
}

inline ClosedPoint closed_point_from_json(const json& j, const std::string& where) {
  ClosedPoint pt;
  if (j.is_array()) {
    pt.minimal_poly = poly_from_json(j, where);
  } else if (j.is_object()) {
    if (!j.contains("min_poly")) throw RequestParseError(where + ": missing \"min_poly\"");
    pt.minimal_poly = poly_from_json(j.at("min_poly"), where + ".min_poly");
    pt.claimed_irreducible = j.value("claimed_irreducible", false);
  } else if (j.is_number_integer()) {
    // a rational puncture given by its value a, i.e. x - a
    pt.minimal_poly = IntPoly{Int(-j.get<long long>()), Int(1)};
  } else {
    throw RequestParseError(where + ": expected a coefficient array, object, or integer");
  }
  return pt;
}

}  // namespace detail

inline CurveSpec curve_from_json(const json& j) {
  if (!j.is_object() || !j.contains("family"))
    throw RequestParseError("curve: expected an object with a \"family\" discriminator");
  std::string family = j.at("family").get<std::string>();
  if (family == "superelliptic") {
    Superelliptic se;
    se.m = j.value("m", 2LL);
    if (!j.contains("f")) throw RequestParseError("curve: superelliptic needs \"f\"");
    se.f = detail::poly_from_json(j.at("f"), "curve.f");
    return se;
  }
  if (family == "hyperelliptic_even") {
    HyperellipticEven he;
    if (!j.contains("f")) throw RequestParseError("curve: hyperelliptic_even needs \"f\"");
    he.f = detail::poly_from_json(j.at("f"), "curve.f");
    return he;
  }
  if (family == "punctured_line") {
    PuncturedLine pl;
    pl.include_infinity = j.value("include_infinity", true);
    if (j.contains("punctures")) {
      const json& arr = j.at("punctures");
      if (!arr.is_array()) throw RequestParseError("curve.punctures: expected an array");
      for (std::size_t i = 0; i < arr.size(); ++i)
        pl.finite_punctures.push_back(
            detail::closed_point_from_json(arr[i], "curve.punctures[" + std::to_string(i) + "]"));
    }
    return pl;
  }
  if (family == "generic") {
    GenericCurve gc;
    gc.g = j.value("g", 0LL);
    gc.n = j.value("n", 0LL);
    gc.n1 = j.value("n1", 0LL);
    gc.n2 = j.value("n2", 0LL);
    gc.d_closed = j.value("d_closed", 0LL);
    return gc;
  }
  throw RequestParseError("curve: unknown family \"" + family + "\"");
}

inline json curve_to_json(const CurveSpec& spec) {
  json j;
  if (const auto* se = std::get_if<Superelliptic>(&spec)) {
    j["family"] = "superelliptic";
    j["m"] = se->m;
    j["f"] = detail::poly_to_json(se->f);
  } else if (const auto* he = std::get_if<HyperellipticEven>(&spec)) {
    j["family"] = "hyperelliptic_even";
    j["f"] = detail::poly_to_json(he->f);
  } else if (const auto* pl = std::get_if<PuncturedLine>(&spec)) {
    j["family"] = "punctured_line";
    j["include_infinity"] = pl->include_infinity;
    json arr = json::array();
    for (const auto& pt : pl->finite_punctures) {
      json o;
      o["min_poly"] = detail::poly_to_json(pt.minimal_poly);
      o["claimed_irreducible"] = pt.claimed_irreducible;
      arr.push_back(o);
    }
    j["punctures"] = arr;
  } else {
    const auto& gc = std::get<GenericCurve>(spec);
    j["family"] = "generic";
    j["g"] = gc.g;
    j["n"] = gc.n;
    j["n1"] = gc.n1;
    j["n2"] = gc.n2;
    j["d_closed"] = gc.d_closed;
  }
  return j;
}

inline AnalysisRequest request_from_json(const json& j) {
  if (!j.is_object()) throw RequestParseError("request: expected a JSON object");
  AnalysisRequest req;
  if (!j.contains("curve")) throw RequestParseError("request: missing \"curve\"");
  req.curve = curve_from_json(j.at("curve"));

  if (j.contains("arithmetic")) {
    const json& a = j.at("arithmetic");
    req.arithmetic.r = a.value("r", 0LL);
    if (a.contains("r_p")) req.arithmetic.r_p = a.at("r_p").get<long long>();
    if (a.contains("rho")) req.arithmetic.rho = a.at("rho").get<long long>();
    if (a.contains("rho_f")) req.arithmetic.rho_f = a.at("rho_f").get<long long>();
    if (a.contains("rho_geo")) req.arithmetic.rho_geo = a.at("rho_geo").get<long long>();
    if (a.contains("h_BK")) req.arithmetic.h_bk = a.at("h_BK").get<long long>();
  }
  if (j.contains("S"))
    for (const auto& v : j.at("S")) req.S.insert(v.get<int64_t>());
  if (j.contains("p")) req.p = j.at("p").get<int64_t>();
  if (j.contains("bad_components")) {
    for (const auto& [key, value] : j.at("bad_components").items()) {
      try {
        req.bad_components[std::stoll(key)] = value.get<long long>();
      } catch (const std::logic_error&) {
        throw RequestParseError("bad_components: keys must be primes written as strings");
      }
    }
  }
  if (j.contains("point_count")) {
    const json& pc = j.at("point_count");
    if (pc.contains("y_count")) req.user_y_count = pc.at("y_count").get<long long>();
  }
  req.assume_admissible = j.value("assume_admissible", false);

  if (j.contains("options")) {
    const json& o = j.at("options");
    if (o.contains("variant")) {
      std::string v = o.at("variant").get<std::string>();
      if (v == "selmer") req.options.variant = Variant::Selmer;
      else if (v == "bd") req.options.variant = Variant::BalakrishnanDogra;
      else throw RequestParseError("options.variant must be \"selmer\" or \"bd\"");
    }
    if (o.contains("quotient")) {
      std::string q = o.at("quotient").get<std::string>();
      if (q == "ab") req.options.kinds = {QuotientKind::Abelianized};
      else if (q == "abat") req.options.kinds = {QuotientKind::AbelianByArtinTate};
      else if (q == "w2") req.options.kinds = {QuotientKind::FullWeightTwo};
      else if (q == "all")
        req.options.kinds = {QuotientKind::Abelianized, QuotientKind::AbelianByArtinTate,
                             QuotientKind::FullWeightTwo};
      else throw RequestParseError("options.quotient must be ab, abat, w2 or all");
    }
    if (o.contains("reduction_mode")) {
      std::string rm = o.at("reduction_mode").get<std::string>();
      if (rm == "generic") req.options.reduction_modes = {ReductionMode::Generic};
      else if (rm == "refined") req.options.reduction_modes = {ReductionMode::Refined};
      else if (rm == "both")
        req.options.reduction_modes = {ReductionMode::Generic, ReductionMode::Refined};
      else throw RequestParseError("options.reduction_mode must be generic, refined or both");
    }
    req.options.depth1 = o.value("depth1", false);
    req.options.truncation = o.value("truncation", 2L);
    if (req.options.truncation < 2 || req.options.truncation > 16)
      throw RequestParseError("options.truncation must lie in [2, 16]");
  }
  if (req.p != 0 && req.S.count(req.p))
    throw RequestParseError("p must not lie in S");
  for (const auto& [ell, n_ell] : req.bad_components)
    if (n_ell < 1) throw RequestParseError("every n_ell must be >= 1");
  return req;
}

// ----- report -------------------------------------------------------------

struct QuotientReport {
  QuotientDescriptor descriptor;
  TruncatedSeries hs_glob{2};
  TruncatedSeries hs_loc{2};
  FinitenessVerdict finiteness;
  ColemanVerdict coleman;
};

struct BoundModeReport {
  ReductionMode mode = ReductionMode::Generic;
  int depth = 2;
  std::string governing_criterion;
  long long criterion_value = 0;
  bool criterion_satisfied = false;
  BoundReport bound;
};

struct AnalysisReport {
  GeometricInvariants invariants;
  PrimeAdmissibility admissibility;
  PointCount point_count;
  std::string point_count_source = "computed";
  double hw_margin = 0;
  bool hw_margin_defined = false;
  std::map<QuotientKind, QuotientReport> quotients;
  std::map<Variant, CriteriaReport> criteria;
  std::vector<BoundModeReport> bounds;
  std::set<ConditionalFlag> conditional_flags;
  std::vector<std::string> warnings;
  std::vector<int64_t> bad_prime_candidates;
  bool bad_prime_candidates_complete = true;
  long long s = 0;
};

namespace detail {

inline json series_to_json(const TruncatedSeries& s) {
  json a = json::array();
  for (const auto& c : s.coeffs()) a.push_back(c.get_str());
  return a;
}

inline json flags_to_json(const std::set<ConditionalFlag>& flags) {
  json a = json::array();
  for (auto f : flags) a.push_back(conditional_flag_name(f));
  return a;
}

}  // namespace detail

inline json report_to_json(const AnalysisReport& r) {
  json j;
  j["invariants"] = {{"g", r.invariants.g},       {"n", r.invariants.n},
                     {"n1", r.invariants.n1},     {"n2", r.invariants.n2},
                     {"d_closed", r.invariants.d_closed}, {"b", r.invariants.b}};
  j["s"] = r.s;
  json adm;
  adm["p"] = r.admissibility.p;
  adm["admissible"] = r.admissibility.admissible;
  json reasons = json::array();
  for (auto reason : r.admissibility.reasons) reasons.push_back(admissibility_issue_name(reason));
  adm["reasons"] = reasons;
  j["admissibility"] = adm;

  json pc;
  pc["y_count"] = r.point_count.y_count;
  pc["x_count"] = r.point_count.x_count;
  pc["cusp_count"] = r.point_count.cusp_count;
  pc["source"] = r.point_count_source;
  if (r.hw_margin_defined) pc["hasse_weil_margin"] = r.hw_margin;
  j["point_count"] = pc;

  json quotients;
  for (const auto& [kind, qr] : r.quotients) {
    json q;
    json pieces = json::array();
    for (const auto& piece : qr.descriptor.pieces)
      pieces.push_back({{"weight", piece.weight},
                        {"dim_global", piece.dim_global},
                        {"dim_local", piece.dim_local},
                        {"label", piece.label}});
    q["pieces"] = pieces;
    q["hs_global"] = detail::series_to_json(qr.hs_glob);
    q["hs_local"] = detail::series_to_json(qr.hs_loc);
    q["finiteness"] = {{"margin", qr.finiteness.margin}, {"finite", qr.finiteness.finite}};
    q["coleman_weight2"] = {{"margin", qr.coleman.margin}, {"exists", qr.coleman.exists}};
    quotients[quotient_kind_name(kind)] = q;
  }
  j["quotients"] = quotients;

  json criteria;
  for (const auto& [variant, rep] : r.criteria) {
    json entries;
    for (const auto& [name, entry] : rep.entries)
      entries[name] = {{"value", entry.value},
                       {"satisfied", entry.satisfied},
                       {"flags", detail::flags_to_json(entry.flags)}};
    criteria[variant_name(variant)] = {{"entries", entries}};
  }
  j["criteria"] = criteria;

  json bounds = json::array();
  for (const auto& b : r.bounds) {
    bounds.push_back({{"mode", reduction_mode_name(b.mode)},
                      {"depth", b.depth},
                      {"governing_criterion", b.governing_criterion},
                      {"criterion_value", b.criterion_value},
                      {"criterion_satisfied", b.criterion_satisfied},
                      {"kappa", b.bound.kappa},
                      {"reduction_types", b.bound.reduction_types},
                      {"per_type_bound", b.bound.per_type_bound},
                      {"total_bound", b.bound.total_bound},
                      {"total_bound_floor", b.bound.total_bound_floor}});
  }
  j["bounds"] = bounds;

  j["conditional_flags"] = detail::flags_to_json(r.conditional_flags);
  j["warnings"] = r.warnings;
  json cand = json::array();
  for (auto p : r.bad_prime_candidates) cand.push_back(p);
  j["bad_prime_candidates"] = {{"primes", cand}, {"complete", r.bad_prime_candidates_complete}};
  return j;
}

}  // namespace ckim
