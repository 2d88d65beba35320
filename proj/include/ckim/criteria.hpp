#pragma once

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ckim/pointcount.hpp"
#include "ckim/selmer.hpp"
#include "ckim/series.hpp"

namespace ckim {

/// kappa_p = 1 + (p-1)/((p-2) log p) for odd p, kappa_2 = 2 + 2/log 2.
inline double kappa(int64_t p) {
  if (!is_prime_i64(p)) throw std::invalid_argument("kappa: p must be prime");
  if (p == 2) return 2.0 + 2.0 / std::log(2.0);
  double pd = static_cast<double>(p);
  return 1.0 + (pd - 1.0) / ((pd - 2.0) * std::log(pd));
}

enum class Variant { Selmer, BalakrishnanDogra };

inline const char* variant_name(Variant v) {
  return v == Variant::Selmer ? "selmer" : "bd";
}

enum class ConditionalFlag { AssumedSha, AssumedBlochKato };

inline const char* conditional_flag_name(ConditionalFlag f) {
  return f == ConditionalFlag::AssumedSha ? "assumed_sha" : "assumed_bloch_kato";
}

/// The five finiteness / Coleman-existence criteria. A criterion applies
/// when its value is strictly positive. Each entry records which assumed
/// defaults it depends on.
struct CriterionEntry {
  long long value = 0;
  bool satisfied = false;
  std::set<ConditionalFlag> flags;
};

struct CriteriaReport {
  Variant variant = Variant::Selmer;
  long long alpha1 = 0;  // depth-1 finiteness
  long long alpha2 = 0;  // depth-2 finiteness (abelian-by-Artin-Tate)
  long long beta = 0;    // weight-2 Coleman function + bound (abelian-by-Artin-Tate)
  long long gamma = 0;   // depth-2 finiteness (full weight >= -2)
  long long delta = 0;   // weight-2 Coleman function + bound (full weight >= -2)
  std::map<std::string, CriterionEntry> entries;
  std::set<ConditionalFlag> conditional_flags;
};

/// Evaluates alpha1, alpha2, beta, gamma, delta with rank r_p (Selmer
/// variant) or r (Balakrishnan-Dogra variant).
inline CriteriaReport criteria_values(const GeometricInvariants& inv,
                                      const ResolvedArithmetic& arith, long long s,
                                      Variant variant) {
  if (s < 0) throw std::invalid_argument("criteria_values: s must be >= 0");
  CriteriaReport out;
  out.variant = variant;
  const long long g = inv.g;
  const long long b = inv.b;
  const long long rank = variant == Variant::Selmer ? arith.r_p : arith.r;

  out.alpha1 = g - rank + b - s;
  out.alpha2 = out.alpha1 + arith.rho_f;
  out.beta = g * (g + 3) / 2 - rank * (rank + 3) / 2 + arith.rho_f + b - s;
  out.gamma = g * g - rank + arith.rho + b - s - arith.h_bk;
  out.delta = g * (3 * g + 1) / 2 - rank * (rank + 3) / 2 + arith.rho + b - s - arith.h_bk;

  std::set<ConditionalFlag> rank_flags;
  if (variant == Variant::Selmer && arith.assumed_sha)
    rank_flags.insert(ConditionalFlag::AssumedSha);
  std::set<ConditionalFlag> bk_flags = rank_flags;
  if (arith.assumed_bloch_kato) bk_flags.insert(ConditionalFlag::AssumedBlochKato);

  const bool primed = variant == Variant::BalakrishnanDogra;
  auto put = [&](const char* base, long long value, const std::set<ConditionalFlag>& flags) {
    std::string name = primed ? std::string(base) + "'" : std::string(base);
    out.entries[name] = {value, value > 0, flags};
    out.conditional_flags.insert(flags.begin(), flags.end());
  };
  put("alpha1", out.alpha1, rank_flags);
  put("alpha2", out.alpha2, rank_flags);
  put("beta", out.beta, rank_flags);
  put("gamma", out.gamma, bk_flags);
  put("delta", out.delta, bk_flags);
  return out;
}

struct FinitenessVerdict {
  long long margin = 0;
  bool finite = false;
};

/// Dimension-gap criterion: sum over weights of (local - global Selmer
/// dimension) minus s; the associated Chabauty-Kim locus is finite when the
/// margin is positive.
inline FinitenessVerdict finiteness_verdict(const QuotientDescriptor& desc, long long s) {
  long long margin = -s;
  for (const auto& piece : desc.pieces) margin += piece.dim_local - piece.dim_global;
  return {margin, margin > 0};
}

struct ColemanVerdict {
  long long margin = 0;
  bool exists = false;
};

/// Hilbert-series criterion for a weight <= 2 Coleman function: compares
/// the partial sums of HS_loc and HS_glob through degree 2.
inline ColemanVerdict coleman_weight2_verdict(const QuotientDescriptor& desc, long long s) {
  Int margin = partial_sum(hs_local(desc, 2), 2) - partial_sum(hs_global(desc, s, 2), 2);
  if (!margin.fits_slong_p())
    throw InputInconsistency("Coleman margin exceeds the representable range");
  long long m = margin.get_si();
  return {m, m > 0};
}

enum class ReductionMode { Generic, Refined };

inline const char* reduction_mode_name(ReductionMode m) {
  return m == ReductionMode::Generic ? "generic" : "refined";
}

/// Inputs for the point bound. bad_components maps ell to the number n_ell
/// of irreducible components of the mod-ell special fibre; unlisted primes
/// default to n_ell = 1.
struct BoundInputs {
  std::set<int64_t> S;
  int64_t p = 0;
  std::map<int64_t, long long> bad_components;
  long long y_count = 0;
  ReductionMode reduction_mode = ReductionMode::Generic;
};

/// Number of reduction types. Generic mode is the literal product
/// prod_{ell in S} (n_ell + n) * prod_{ell not in S} n_ell. Refined mode
/// replaces, at ell in S with n_ell = 1, the factor (n_ell + n) by the
/// number of realizable classes: F_ell-rational cusps plus the component
/// when it carries a non-cuspidal F_ell-point.
inline long long reduction_type_count(const ValidatedCurve& curve, const GeometricInvariants& inv,
                                      const BoundInputs& bi) {
  for (const auto& [ell, n_ell] : bi.bad_components) {
    if (n_ell < 1) throw std::invalid_argument("n_ell must be >= 1");
    if (!is_prime_i64(ell)) throw std::invalid_argument("bad_components keys must be prime");
  }
  const bool refined = bi.reduction_mode == ReductionMode::Refined;
  if (refined && std::holds_alternative<GenericCurve>(curve.spec))
    throw UnsupportedFamily("refined reduction types need curve equations; the generic family has none");
  long long total = 1;
  for (int64_t ell : bi.S) {
    auto it = bi.bad_components.find(ell);
    long long n_ell = it == bi.bad_components.end() ? 1 : it->second;
    if (refined && n_ell == 1) {
      CuspProfile prof = cusp_reduction_profile(curve, ell);
      PointCount pc = detail::count_points_any(curve, ell);
      total *= prof.d_points_mod_ell + (pc.y_count > 0 ? 1 : 0);
    } else {
      total *= n_ell + inv.n;
    }
  }
  for (const auto& [ell, n_ell] : bi.bad_components) {
    if (bi.S.count(ell)) continue;
    total *= n_ell;
  }
  return total;
}

/// (4g + 2n - 2)^2 * (g + 1): the zero-count factor for weight <= 2 Coleman
/// algebraic functions.
inline long long weight2_zero_factor(long long g, long long n) {
  long long base = 4 * g + 2 * n - 2;
  return base * base * (g + 1);
}

struct BoundReport {
  double kappa = 0;
  long long reduction_types = 0;
  double per_type_bound = 0;
  double total_bound = 0;
  long long total_bound_floor = 0;
};

/// Point bound kappa_p * (#reduction types) * #Y(F_p) * (4g+2n-2)^2 (g+1).
inline BoundReport bound(const GeometricInvariants& inv, const BoundInputs& bi,
                         long long reduction_types) {
  BoundReport out;
  out.kappa = kappa(bi.p);
  out.reduction_types = reduction_types;
  out.per_type_bound = out.kappa * static_cast<double>(bi.y_count) *
                       static_cast<double>(weight2_zero_factor(inv.g, inv.n));
  out.total_bound = out.per_type_bound * static_cast<double>(reduction_types);
  out.total_bound_floor = static_cast<long long>(std::floor(out.total_bound));
  return out;
}

}  // namespace ckim
