#pragma once

#include <cmath>
#include <numeric>
#include <set>
#include <thread>
#include <vector>

#include "ckim/curve.hpp"

namespace ckim {

enum class AdmissibilityIssue {
  InS,
  DividesM,
  DividesLeadingCoeff,
  DividesDiscriminant,
  CuspsNotEtale,
};

inline const char* admissibility_issue_name(AdmissibilityIssue v) {
  switch (v) {
    case AdmissibilityIssue::InS: return "InS";
    case AdmissibilityIssue::DividesM: return "DividesM";
    case AdmissibilityIssue::DividesLeadingCoeff: return "DividesLeadingCoeff";
    case AdmissibilityIssue::DividesDiscriminant: return "DividesDiscriminant";
    case AdmissibilityIssue::CuspsNotEtale: return "CuspsNotEtale";
  }
  return "?";
}

struct PrimeAdmissibility {
  int64_t p = 0;
  bool admissible = false;
  std::vector<AdmissibilityIssue> reasons;
};

struct PointCount {
  long long y_count = 0;     // #Y(F_p)
  long long x_count = 0;     // #X(F_p) = y_count + cusp_count
  long long cusp_count = 0;  // #D(F_p)
};

/// Checks that p is a prime of good reduction for the model: p not in S,
/// X smooth mod p, cusp divisor etale mod p. The generic family carries no
/// equations, so admissibility there is the user's assertion.
inline PrimeAdmissibility admissible_prime(const ValidatedCurve& curve, int64_t p,
                                           const std::set<int64_t>& S) {
  if (!is_prime_i64(p)) throw std::invalid_argument("admissible_prime: p must be prime");
  if (std::holds_alternative<GenericCurve>(curve.spec))
    throw UnsupportedFamily("admissibility of p must be asserted by the user for the generic family");
  PrimeAdmissibility out;
  out.p = p;
  if (S.count(p)) out.reasons.push_back(AdmissibilityIssue::InS);
  auto divides = [p](const Int& v) {
    return mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(p)) != 0;
  };
  if (const auto* se = std::get_if<Superelliptic>(&curve.spec)) {
    if (se->m % p == 0) out.reasons.push_back(AdmissibilityIssue::DividesM);
    if (divides(se->f.leading())) out.reasons.push_back(AdmissibilityIssue::DividesLeadingCoeff);
    if (divides(discriminant(se->f).get_num()))
      out.reasons.push_back(AdmissibilityIssue::DividesDiscriminant);
  } else if (const auto* he = std::get_if<HyperellipticEven>(&curve.spec)) {
    if (p == 2) out.reasons.push_back(AdmissibilityIssue::DividesM);
    if (divides(he->f.leading())) out.reasons.push_back(AdmissibilityIssue::DividesLeadingCoeff);
    if (divides(discriminant(he->f).get_num()))
      out.reasons.push_back(AdmissibilityIssue::DividesDiscriminant);
  }
  if (!cusp_reduction_profile(curve, p).etale)
    out.reasons.push_back(AdmissibilityIssue::CuspsNotEtale);
  out.admissible = out.reasons.empty();
  return out;
}

namespace detail {

// #{y in F_p : y^m = a}: gcd(m, p-1) when a is an m-th power residue,
// 1 when a = 0, otherwise 0
struct PowerResidueCounter {
  int64_t p;
  int64_t e;    // gcd(m, p-1)
  int64_t exp;  // (p-1)/e

  PowerResidueCounter(long long m, int64_t prime)
      : p(prime), e(std::gcd(m, static_cast<long long>(prime - 1))), exp((prime - 1) / e) {}

  int64_t operator()(int64_t a) const {
    if (a == 0) return 1;
    return powmod_i64(a, exp, p) == 1 ? e : 0;
  }
};

inline std::vector<int64_t> reduce_coeffs(const IntPoly& f, int64_t p) {
  std::vector<int64_t> c;
  c.reserve(f.coeffs().size());
  for (const auto& a : f.coeffs()) {
    Int r = a % p;
    int64_t v = r.get_si();
    if (v < 0) v += p;
    c.push_back(v);
  }
  return c;
}

inline int64_t horner(const std::vector<int64_t>& c, int64_t x, int64_t p) {
  int64_t acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = (mulmod_i64(acc, x, p) + c[i]) % p;
  return acc;
}

inline long long affine_fiber_sum(const std::vector<int64_t>& coeffs, long long m, int64_t p) {
  PowerResidueCounter nm(m, p);
  const int64_t threshold = 1 << 17;
  unsigned workers = std::thread::hardware_concurrency();
  if (p < threshold || workers < 2) {
    long long total = 0;
    for (int64_t x = 0; x < p; ++x) total += nm(horner(coeffs, x, p));
    return total;
  }
  if (workers > 8) workers = 8;
  std::vector<long long> partial(workers, 0);
  std::vector<std::thread> pool;
  int64_t chunk = (p + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      int64_t lo = w * chunk;
      int64_t hi = std::min<int64_t>(p, lo + chunk);
      long long total = 0;
      for (int64_t x = lo; x < hi; ++x) total += nm(horner(coeffs, x, p));
      partial[w] = total;
    });
  }
  for (auto& t : pool) t.join();
  long long total = 0;
  for (long long v : partial) total += v;
  return total;
}

// point count without the admissibility gate; also used for reduction-type
// counting at primes in S
inline PointCount count_points_any(const ValidatedCurve& curve, int64_t p) {
  PointCount out;
  if (const auto* se = std::get_if<Superelliptic>(&curve.spec)) {
    out.y_count = affine_fiber_sum(reduce_coeffs(se->f, p), se->m, p);
    out.cusp_count = cusp_reduction_profile(curve, p).d_points_mod_ell;
  } else if (const auto* he = std::get_if<HyperellipticEven>(&curve.spec)) {
    out.y_count = affine_fiber_sum(reduce_coeffs(he->f, p), 2, p);
    out.cusp_count = cusp_reduction_profile(curve, p).d_points_mod_ell;
  } else if (std::holds_alternative<PuncturedLine>(curve.spec)) {
    out.cusp_count = cusp_reduction_profile(curve, p).d_points_mod_ell;
    out.y_count = p + 1 - out.cusp_count;
  } else {
    throw UnsupportedFamily("point counts must be supplied by the user for the generic family");
  }
  out.x_count = out.y_count + out.cusp_count;
  return out;
}

}  // namespace detail

/// Exact #Y(F_p), #X(F_p), #D(F_p) at a prime of good reduction.
inline PointCount count_points(const ValidatedCurve& curve, int64_t p) {
  PrimeAdmissibility adm = admissible_prime(curve, p, {});
  if (!adm.admissible) {
    std::string why;
    for (auto r : adm.reasons) {
      if (!why.empty()) why += ", ";
      why += admissibility_issue_name(r);
    }
    throw InadmissiblePrime("p = " + std::to_string(p) + " is inadmissible: " + why);
  }
  return detail::count_points_any(curve, p);
}

/// 2g*sqrt(p) - |#X(F_p) - (p+1)|; negative means the count violates the
/// Hasse-Weil window.
inline double hasse_weil_margin(const GeometricInvariants& inv, const PointCount& pc, int64_t p) {
  double defect = std::abs(static_cast<double>(pc.x_count) - (static_cast<double>(p) + 1.0));
  return 2.0 * static_cast<double>(inv.g) * std::sqrt(static_cast<double>(p)) - defect;
}

}  // namespace ckim
