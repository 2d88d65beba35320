#pragma once

#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "ckim/errors.hpp"
#include "ckim/modpoly.hpp"
#include "ckim/poly.hpp"

namespace ckim {

/// A Galois orbit of punctures, given by a minimal polynomial.
struct ClosedPoint {
  IntPoly minimal_poly;
  bool claimed_irreducible = false;
};

// y^m = f(x), f squarefree of degree d > 2, gcd(d, m) = 1; one cusp at infinity.
struct Superelliptic {
  long long m = 2;
  IntPoly f;
};

// y^2 = f(x) with deg f = 2g+2 >= 4 and f squarefree; two geometric cusps.
struct HyperellipticEven {
  IntPoly f;
};

// P^1 minus a set of closed points (and optionally the point at infinity).
struct PuncturedLine {
  std::vector<ClosedPoint> finite_punctures;
  bool include_infinity = true;
};

// invariants supplied directly, for curves outside the supported families
struct GenericCurve {
  long long g = 0;
  long long n = 0;
  long long n1 = 0;
  long long n2 = 0;
  long long d_closed = 0;
};

using CurveSpec = std::variant<Superelliptic, HyperellipticEven, PuncturedLine, GenericCurve>;

struct GeometricInvariants {
  long long g = 0;        // genus of the compactification
  long long n = 0;        // geometric cusps
  long long n1 = 0;       // real cusps
  long long n2 = 0;       // conjugate pairs of complex cusps
  long long d_closed = 0; // closed points at infinity, #|D|
  long long b = 0;        // #|D| + n2 - 1

  bool operator==(const GeometricInvariants&) const = default;
};

inline void check_invariants(const GeometricInvariants& inv) {
  if (inv.n != inv.n1 + 2 * inv.n2)
    throw InputInconsistency("cusp counts must satisfy n = n1 + 2*n2");
  if (inv.b != inv.d_closed + inv.n2 - 1 || inv.b < 0)
    throw InputInconsistency("b must equal #|D| + n2 - 1 and be nonnegative");
  if (inv.d_closed < 1 || inv.d_closed > inv.n)
    throw InputInconsistency("closed point count must satisfy 1 <= #|D| <= n");
  if (2 - 2 * inv.g - inv.n >= 0)
    throw InputInconsistency("curve is not hyperbolic: 2 - 2g - n >= 0");
  if (inv.g < 0 || inv.n1 < 0 || inv.n2 < 0)
    throw InputInconsistency("negative invariant");
}

/// A curve spec that passed validate(), with per-puncture irreducibility
/// verdicts and any warnings produced along the way.
struct ValidatedCurve {
  CurveSpec spec;
  std::vector<Irreducibility> puncture_verdicts;  // PuncturedLine only
  std::vector<std::string> warnings;
};

namespace detail {

inline void validate_puncture_list(const PuncturedLine& pl, long trial_prime_budget,
                                   ValidatedCurve& out) {
  for (std::size_t i = 0; i < pl.finite_punctures.size(); ++i) {
    const IntPoly& mp = pl.finite_punctures[i].minimal_poly;
    if (mp.is_zero() || mp.degree() < 1)
      throw ValidationError(Violation::BadFamilyParameter,
                            "puncture " + std::to_string(i) + " needs a minimal polynomial of degree >= 1");
    if (!is_squarefree(mp))
      throw ValidationError(Violation::NotSquarefree,
                            "minimal polynomial of puncture " + std::to_string(i) + " is not squarefree");
    Irreducibility verdict = verify_irreducible_over_q(mp, trial_prime_budget);
    out.puncture_verdicts.push_back(verdict);
    if (verdict == Irreducibility::Refuted)
      throw ValidationError(Violation::ReduciblePuncture,
                            "minimal polynomial of puncture " + std::to_string(i) +
                                " (" + mp.str() + ") factors over Q");
    if (verdict == Irreducibility::Unknown)
      out.warnings.push_back("irreducibility of puncture " + std::to_string(i) + " (" + mp.str() +
                             ") was not verified" +
                             (pl.finite_punctures[i].claimed_irreducible ? "; accepted as claimed"
                                                                         : ""));
  }
  for (std::size_t i = 0; i < pl.finite_punctures.size(); ++i)
    for (std::size_t j = i + 1; j < pl.finite_punctures.size(); ++j) {
      RatPoly g = poly_gcd(to_rational(pl.finite_punctures[i].minimal_poly),
                           to_rational(pl.finite_punctures[j].minimal_poly));
      if (g.degree() != 0)
        throw ValidationError(Violation::BadFamilyParameter,
                              "punctures " + std::to_string(i) + " and " + std::to_string(j) +
                                  " share the factor " + g.str());
    }
}

}  // namespace detail

/// Checks every family hypothesis; throws ValidationError naming the
/// violated one. Irreducibility of punctures is verified opportunistically:
/// Unknown is reported as a warning rather than an error.
inline ValidatedCurve validate(const CurveSpec& spec, long trial_prime_budget = 30) {
  ValidatedCurve out{spec, {}, {}};
  if (const auto* se = std::get_if<Superelliptic>(&spec)) {
    if (se->m <= 1)
      throw ValidationError(Violation::BadFamilyParameter, "superelliptic exponent m must be > 1");
    if (se->f.is_zero() || se->f.degree() <= 2)
      throw ValidationError(Violation::BadFamilyParameter, "superelliptic f must have degree > 2");
    if (!is_squarefree(se->f))
      throw ValidationError(Violation::NotSquarefree, "superelliptic f must be squarefree");
    if (std::gcd(se->f.degree(), se->m) != 1)
      throw ValidationError(Violation::GcdViolation,
                            "gcd(deg f, m) = " + std::to_string(std::gcd(se->f.degree(), se->m)) +
                                ", must be 1");
  } else if (const auto* he = std::get_if<HyperellipticEven>(&spec)) {
    if (he->f.is_zero() || he->f.degree() < 4 || he->f.degree() % 2 != 0)
      throw ValidationError(Violation::BadFamilyParameter,
                            "even hyperelliptic f must have even degree 2g+2 >= 4");
    if (!is_squarefree(he->f))
      throw ValidationError(Violation::NotSquarefree, "hyperelliptic f must be squarefree");
  } else if (const auto* pl = std::get_if<PuncturedLine>(&spec)) {
    detail::validate_puncture_list(*pl, trial_prime_budget, out);
    long long n = pl->include_infinity ? 1 : 0;
    for (const auto& pt : pl->finite_punctures) n += pt.minimal_poly.degree();
    if (2 - n >= 0)
      throw ValidationError(Violation::NotHyperbolic,
                            "punctured line needs n >= 3 geometric punctures, got " + std::to_string(n));
  } else if (const auto* gc = std::get_if<GenericCurve>(&spec)) {
    if (gc->g < 0 || gc->n < 0 || gc->n1 < 0 || gc->n2 < 0 || gc->d_closed < 0)
      throw ValidationError(Violation::InconsistentGeneric, "negative invariant");
    if (gc->n != gc->n1 + 2 * gc->n2)
      throw ValidationError(Violation::InconsistentGeneric,
                            "n = n1 + 2*n2 fails: " + std::to_string(gc->n) + " != " +
                                std::to_string(gc->n1) + " + 2*" + std::to_string(gc->n2));
    if (gc->d_closed < 1 || gc->d_closed > gc->n)
      throw ValidationError(Violation::InconsistentGeneric, "need 1 <= d_closed <= n");
    if (gc->n1 + gc->n2 < gc->d_closed)
      throw ValidationError(Violation::InconsistentGeneric,
                            "need n1 + n2 >= d_closed (every closed point has a real or complex place)");
    if (2 - 2 * gc->g - gc->n >= 0)
      throw ValidationError(Violation::NotHyperbolic,
                            "2 - 2g - n = " + std::to_string(2 - 2 * gc->g - gc->n) + " must be < 0");
  }
  return out;
}

inline GeometricInvariants invariants(const ValidatedCurve& curve) {
  GeometricInvariants inv;
  if (const auto* se = std::get_if<Superelliptic>(&curve.spec)) {
    long long d = se->f.degree();
    inv.g = (d - 1) * (se->m - 1) / 2;
    inv.n = inv.n1 = inv.d_closed = 1;
    inv.n2 = 0;
  } else if (const auto* he = std::get_if<HyperellipticEven>(&curve.spec)) {
    inv.g = he->f.degree() / 2 - 1;
    inv.n = 2;
    const Int& lc = he->f.leading();
    if (lc < 0) {
      inv.n1 = 0;
      inv.n2 = 1;
      inv.d_closed = 1;
    } else if (mpz_perfect_square_p(lc.get_mpz_t())) {
      inv.n1 = 2;
      inv.n2 = 0;
      inv.d_closed = 2;
    } else {
      inv.n1 = 2;
      inv.n2 = 0;
      inv.d_closed = 1;
    }
  } else if (const auto* pl = std::get_if<PuncturedLine>(&curve.spec)) {
    inv.g = 0;
    long long at_infinity = pl->include_infinity ? 1 : 0;
    inv.n = at_infinity;
    inv.n1 = at_infinity;
    inv.d_closed = at_infinity + static_cast<long long>(pl->finite_punctures.size());
    for (const auto& pt : pl->finite_punctures) {
      inv.n += pt.minimal_poly.degree();
      inv.n1 += count_real_roots(pt.minimal_poly);
    }
    inv.n2 = (inv.n - inv.n1) / 2;
  } else {
    const auto& gc = std::get<GenericCurve>(curve.spec);
    inv = {gc.g, gc.n, gc.n1, gc.n2, gc.d_closed, 0};
  }
  inv.b = inv.d_closed + inv.n2 - 1;
  check_invariants(inv);
  return inv;
}

struct CuspProfile {
  long long d_points_mod_ell = 0;  // #D(F_ell)
  bool etale = false;
};

namespace detail {

inline bool squarefree_mod(const IntPoly& f, int64_t ell) {
  ModPoly fp = ModPoly::reduce(f, ell);
  if (fp.degree() < 1) return true;
  std::vector<int64_t> dc(static_cast<std::size_t>(fp.degree()), 0);
  for (long i = 1; i <= fp.degree(); ++i)
    dc[static_cast<std::size_t>(i - 1)] =
        static_cast<int64_t>((static_cast<__int128>(fp.coeff(static_cast<std::size_t>(i))) * i) % ell);
  ModPoly deriv(ell, std::move(dc));
  if (deriv.is_zero()) return false;
  return gcd(fp, deriv).degree() == 0;
}

}  // namespace detail

/// Behaviour of the cusp divisor mod ell: how many F_ell-rational cusps
/// there are and whether the divisor stays reduced (etale).
inline CuspProfile cusp_reduction_profile(const ValidatedCurve& curve, int64_t ell) {
  if (!is_prime_i64(ell)) throw std::invalid_argument("cusp_reduction_profile: ell must be prime");
  if (std::holds_alternative<GenericCurve>(curve.spec))
    throw UnsupportedFamily("cusp reduction profile is undefined for the generic family");
  if (std::holds_alternative<Superelliptic>(curve.spec)) {
    return {1, true};  // one totally ramified rational cusp
  }
  if (const auto* he = std::get_if<HyperellipticEven>(&curve.spec)) {
    // cusp scheme is Spec Z[t]/(t^2 - lc)
    IntPoly q{-he->f.leading(), Int(0), Int(1)};
    long long pts = count_roots_mod_p(q, ell);
    bool etale = (ell != 2) && !mpz_divisible_ui_p(he->f.leading().get_mpz_t(),
                                                   static_cast<unsigned long>(ell));
    return {pts, etale};
  }
  const auto& pl = std::get<PuncturedLine>(curve.spec);
  IntPoly prod = IntPoly::constant(Int(1));
  for (const auto& pt : pl.finite_punctures) prod = prod * pt.minimal_poly;
  long long pts = pl.include_infinity ? 1 : 0;
  bool etale = true;
  if (prod.degree() >= 1) {
    pts += count_roots_mod_p(prod, ell);
    bool lc_ok = !mpz_divisible_ui_p(prod.leading().get_mpz_t(), static_cast<unsigned long>(ell));
    etale = lc_ok && detail::squarefree_mod(prod, ell);
  }
  return {pts, etale};
}

}  // namespace ckim
