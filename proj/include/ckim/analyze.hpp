#pragma once

#include <algorithm>
#include <sstream>

#include "ckim/report.hpp"

namespace ckim {

namespace detail {

// prime factors below the trial-division bound; second component tells
// whether the factorization is complete
inline std::pair<std::vector<int64_t>, bool> small_prime_factors(Int n, int64_t limit = 1000000) {
  std::vector<int64_t> primes;
  n = abs(n);
  if (n == 0) return {primes, true};
  for (int64_t d = 2; d <= limit && Int(d) * d <= n; d = (d == 2 ? 3 : d + 2)) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(d))) {
      primes.push_back(d);
      while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(d)))
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(d));
    }
  }
  bool complete = true;
  if (n > 1) {
    if (n.fits_slong_p() && is_prime_i64(n.get_si()))
      primes.push_back(n.get_si());
    else
      complete = false;
  }
  return {primes, complete};
}

inline std::pair<std::vector<int64_t>, bool> bad_prime_candidates(const ValidatedCurve& curve) {
  Int product = 2;  // 2 is always suspect
  if (const auto* se = std::get_if<Superelliptic>(&curve.spec)) {
    product *= Int(se->m) * se->f.leading() * discriminant(se->f).get_num();
  } else if (const auto* he = std::get_if<HyperellipticEven>(&curve.spec)) {
    product *= he->f.leading() * discriminant(he->f).get_num();
  } else if (const auto* pl = std::get_if<PuncturedLine>(&curve.spec)) {
    IntPoly prod = IntPoly::constant(Int(1));
    for (const auto& pt : pl->finite_punctures) prod = prod * pt.minimal_poly;
    if (prod.degree() >= 1) product *= prod.leading() * discriminant(prod).get_num();
  } else {
    return {{}, false};  // no equations to inspect
  }
  return small_prime_factors(product);
}

}  // namespace detail

/// Runs the full pipeline: validate -> invariants -> admissibility ->
/// point count -> quotient descriptors -> Hilbert series -> criteria ->
/// bounds. Throws ValidationError / InadmissiblePrime / InputInconsistency /
/// UnsupportedFamily / RequestParseError for the caller to map to exit codes.
inline AnalysisReport run_analysis(const AnalysisRequest& req) {
  AnalysisReport rep;
  ValidatedCurve curve = validate(req.curve);
  rep.warnings = curve.warnings;
  rep.invariants = invariants(curve);
  rep.s = static_cast<long long>(req.S.size());

  ResolvedArithmetic arith = resolve_arithmetic(req.arithmetic, rep.invariants.g);
  for (const auto& w : arith.warnings) rep.warnings.push_back(w);
  if (arith.assumed_sha) rep.conditional_flags.insert(ConditionalFlag::AssumedSha);
  if (arith.assumed_bloch_kato) rep.conditional_flags.insert(ConditionalFlag::AssumedBlochKato);

  if (req.p == 0) throw RequestParseError("request: an auxiliary prime p is required");
  const bool generic = std::holds_alternative<GenericCurve>(req.curve);
  if (generic) {
    if (!req.assume_admissible)
      throw RequestParseError(
          "generic family: admissibility of p cannot be checked, set assume_admissible");
    if (!is_prime_i64(req.p)) throw RequestParseError("p must be prime");
    rep.admissibility = {req.p, true, {}};
    rep.warnings.push_back("admissibility of p asserted by the user, not verified");
    if (!req.user_y_count)
      throw RequestParseError("generic family: point_count.y_count must be supplied");
    rep.point_count = {*req.user_y_count, *req.user_y_count, 0};
    rep.point_count_source = "user";
    rep.hw_margin_defined = false;
  } else {
    rep.admissibility = admissible_prime(curve, req.p, req.S);
    if (!rep.admissibility.admissible) {
      std::string why;
      for (auto r : rep.admissibility.reasons) {
        if (!why.empty()) why += ", ";
        why += admissibility_issue_name(r);
      }
      throw InadmissiblePrime("p = " + std::to_string(req.p) + " is inadmissible: " + why);
    }
    rep.point_count = detail::count_points_any(curve, req.p);
    rep.point_count_source = "computed";
    if (req.user_y_count && *req.user_y_count != rep.point_count.y_count)
      rep.warnings.push_back("user-supplied y_count " + std::to_string(*req.user_y_count) +
                             " disagrees with the computed value " +
                             std::to_string(rep.point_count.y_count) + "; using the computed one");
    rep.hw_margin = hasse_weil_margin(rep.invariants, rep.point_count, req.p);
    rep.hw_margin_defined = true;
  }

  for (QuotientKind kind : req.options.kinds) {
    QuotientReport qr;
    qr.descriptor = build_quotient(kind, rep.invariants, arith);
    qr.hs_glob = hs_global(qr.descriptor, rep.s, req.options.truncation);
    qr.hs_loc = hs_local(qr.descriptor, req.options.truncation);
    qr.finiteness = finiteness_verdict(qr.descriptor, rep.s);
    qr.coleman = coleman_weight2_verdict(qr.descriptor, rep.s);
    rep.quotients.emplace(kind, std::move(qr));
  }

  rep.criteria.emplace(Variant::Selmer,
                       criteria_values(rep.invariants, arith, rep.s, Variant::Selmer));
  rep.criteria.emplace(Variant::BalakrishnanDogra,
                       criteria_values(rep.invariants, arith, rep.s, Variant::BalakrishnanDogra));

  auto [candidates, complete] = detail::bad_prime_candidates(curve);
  rep.bad_prime_candidates = candidates;
  rep.bad_prime_candidates_complete = complete;
  if (!complete)
    rep.warnings.push_back(
        "the bad-prime candidate list may be incomplete (a coefficient was too large to factor)");
  {
    std::string unlisted;
    for (int64_t ell : candidates) {
      if (ell == req.p) continue;
      if (!req.bad_components.count(ell) && !req.S.count(ell)) {
        if (!unlisted.empty()) unlisted += ", ";
        unlisted += std::to_string(ell);
      }
    }
    if (!unlisted.empty())
      rep.warnings.push_back("n_ell defaulted to 1 at candidate bad primes {" + unlisted +
                             "}; supply bad_components if the special fibres are reducible");
  }

  const CriteriaReport& governing = rep.criteria.at(req.options.variant);
  for (ReductionMode mode : req.options.reduction_modes) {
    BoundInputs bi;
    bi.S = req.S;
    bi.p = req.p;
    bi.bad_components = req.bad_components;
    bi.y_count = rep.point_count.y_count;
    bi.reduction_mode = mode;
    long long rt = reduction_type_count(curve, rep.invariants, bi);
    BoundReport br = bound(rep.invariants, bi, rt);

    const bool primed = req.options.variant == Variant::BalakrishnanDogra;
    BoundModeReport depth2;
    depth2.mode = mode;
    depth2.depth = 2;
    depth2.governing_criterion = primed ? "max(beta', delta')" : "max(beta, delta)";
    depth2.criterion_value = std::max(governing.beta, governing.delta);
    depth2.criterion_satisfied = depth2.criterion_value > 0;
    depth2.bound = br;
    if (!depth2.criterion_satisfied)
      rep.warnings.push_back(std::string("the depth-2 bound in ") + reduction_mode_name(mode) +
                             " mode is reported although no governing criterion is positive");
    rep.bounds.push_back(depth2);

    if (req.options.depth1) {
      BoundModeReport depth1;
      depth1.mode = mode;
      depth1.depth = 1;
      depth1.governing_criterion = primed ? "beta' - rho_f" : "beta - rho_f";
      depth1.criterion_value = governing.beta - arith.rho_f;
      depth1.criterion_satisfied = depth1.criterion_value > 0;
      depth1.bound = br;
      if (!depth1.criterion_satisfied)
        rep.warnings.push_back(std::string("the depth-1 bound in ") + reduction_mode_name(mode) +
                               " mode is reported although beta - rho_f is not positive");
      rep.bounds.push_back(depth1);
    }
  }
  return rep;
}

// ----- human-readable rendering --------------------------------------------

inline std::string text_report(const AnalysisReport& r) {
  std::ostringstream out;
  out << "Geometric invariants   g=" << r.invariants.g << "  n=" << r.invariants.n
      << "  n1=" << r.invariants.n1 << "  n2=" << r.invariants.n2
      << "  #|D|=" << r.invariants.d_closed << "  b=" << r.invariants.b << "  s=" << r.s << "\n";
  out << "Auxiliary prime        p=" << r.admissibility.p
      << (r.admissibility.admissible ? "  (admissible)" : "  (NOT admissible)") << "\n";
  out << "Point counts           #Y(F_p)=" << r.point_count.y_count
      << "  #D(F_p)=" << r.point_count.cusp_count << "  #X(F_p)=" << r.point_count.x_count
      << "  [" << r.point_count_source << "]";
  if (r.hw_margin_defined) out << "  Hasse-Weil margin " << r.hw_margin;
  out << "\n";

  for (const auto& [kind, q] : r.quotients) {
    out << "Quotient " << quotient_kind_name(kind) << "\n";
    for (const auto& piece : q.descriptor.pieces)
      out << "  weight " << piece.weight << ": dim H^1_f global=" << piece.dim_global
          << " local=" << piece.dim_local << "  (" << piece.label << ")\n";
    auto fmt = [](const TruncatedSeries& s) {
      std::string text;
      for (std::size_t i = 0; i < s.coeffs().size(); ++i) {
        if (i) text += ", ";
        text += s.coeffs()[i].get_str();
      }
      return "[" + text + "]";
    };
    out << "  HS_glob=" << fmt(q.hs_glob) << "  HS_loc=" << fmt(q.hs_loc) << "\n";
    out << "  finiteness margin=" << q.finiteness.margin
        << (q.finiteness.finite ? "  -> finite" : "  -> no verdict")
        << " | weight-2 Coleman margin=" << q.coleman.margin
        << (q.coleman.exists ? "  -> function exists" : "  -> no verdict") << "\n";
  }

  for (const auto& [variant, crit] : r.criteria) {
    out << "Criteria (" << variant_name(variant) << " variant)\n";
    for (const auto& [name, entry] : crit.entries) {
      out << "  " << name << " = " << entry.value << (entry.satisfied ? "  > 0" : "  (not > 0)");
      if (!entry.flags.empty()) {
        out << "  [conditional on:";
        for (auto f : entry.flags) out << " " << conditional_flag_name(f);
        out << "]";
      }
      out << "\n";
    }
  }

  for (const auto& b : r.bounds) {
    out << "Bound (" << reduction_mode_name(b.mode) << " mode, depth " << b.depth << ")\n";
    out << "  kappa_p=" << b.bound.kappa << "  reduction types=" << b.bound.reduction_types
        << "  per-type=" << b.bound.per_type_bound << "\n";
    out << "  total=" << b.bound.total_bound << "  floor=" << b.bound.total_bound_floor
        << "  governed by " << b.governing_criterion << " = " << b.criterion_value
        << (b.criterion_satisfied ? " > 0" : " (NOT satisfied)") << "\n";
  }

  if (!r.bad_prime_candidates.empty()) {
    out << "Candidate bad primes   ";
    for (std::size_t i = 0; i < r.bad_prime_candidates.size(); ++i)
      out << (i ? ", " : "") << r.bad_prime_candidates[i];
    if (!r.bad_prime_candidates_complete) out << "  (possibly incomplete)";
    out << "\n";
  }
  if (!r.warnings.empty()) {
    out << "Warnings\n";
    for (const auto& w : r.warnings) out << "  - " << w << "\n";
  }
  return out.str();
}

}  // namespace ckim
