#include <algorithm>

#include "ckim/pointcount.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace ckim;

namespace {

IntPoly X_pow_plus_1(int d) {
  std::vector<Int> c(static_cast<std::size_t>(d) + 1, Int(0));
  c[0] = 1;
  c.back() = 1;
  return IntPoly(std::move(c));
}

CurveSpec thrice_punctured_line() {
  PuncturedLine pl;
  pl.finite_punctures.push_back({IntPoly{Int(0), Int(1)}, true});
  pl.finite_punctures.push_back({IntPoly{Int(-1), Int(1)}, true});
  pl.include_infinity = true;
  return pl;
}

bool has_reason(const PrimeAdmissibility& adm, AdmissibilityIssue issue) {
  return std::find(adm.reasons.begin(), adm.reasons.end(), issue) != adm.reasons.end();
}

}  // namespace

TEST_CASE("admissible_prime on the named inputs") {
  ValidatedCurve se = validate(Superelliptic{2, X_pow_plus_1(5)});
  PrimeAdmissibility at2 = admissible_prime(se, 2, {});
  CHECK_FALSE(at2.admissible);
  CHECK(has_reason(at2, AdmissibilityIssue::DividesM));

  // disc(x^5 + 1) = 5^5
  PrimeAdmissibility at5 = admissible_prime(se, 5, {});
  CHECK_FALSE(at5.admissible);
  CHECK(has_reason(at5, AdmissibilityIssue::DividesDiscriminant));

  PrimeAdmissibility at7 = admissible_prime(se, 7, {});
  CHECK(at7.admissible);

  ValidatedCurve tpl = validate(thrice_punctured_line());
  CHECK(admissible_prime(tpl, 3, {2}).admissible);
  PrimeAdmissibility in_s = admissible_prime(tpl, 2, {2});
  CHECK_FALSE(in_s.admissible);
  CHECK(has_reason(in_s, AdmissibilityIssue::InS));
}

TEST_CASE("admissible_prime flags leading coefficient and etale failures") {
  IntPoly f{Int(1), Int(1), Int(0), Int(0), Int(0), Int(0), Int(6)};  // lc = 6
  ValidatedCurve he = validate(HyperellipticEven{f});
  PrimeAdmissibility at3 = admissible_prime(he, 3, {});
  CHECK_FALSE(at3.admissible);
  CHECK(has_reason(at3, AdmissibilityIssue::DividesLeadingCoeff));
  CHECK(has_reason(at3, AdmissibilityIssue::CuspsNotEtale));
  PrimeAdmissibility at2 = admissible_prime(he, 2, {});
  CHECK(has_reason(at2, AdmissibilityIssue::DividesM));

  ValidatedCurve gen = validate(GenericCurve{2, 1, 1, 0, 1});
  CHECK_THROWS_AS(admissible_prime(gen, 7, {}), UnsupportedFamily);
}

TEST_CASE("count_points on the named inputs") {
  ValidatedCurve tpl = validate(thrice_punctured_line());
  PointCount pc5 = count_points(tpl, 5);
  CHECK(pc5.y_count == 3);  // p - 2
  CHECK(pc5.cusp_count == 3);
  CHECK(pc5.x_count == 6);

  ValidatedCurve se = validate(Superelliptic{2, X_pow_plus_1(5)});
  PointCount pc7 = count_points(se, 7);
  CHECK(pc7.y_count == 7);
  CHECK(pc7.cusp_count == 1);
  CHECK(pc7.x_count == 8);

  ValidatedCurve he = validate(HyperellipticEven{IntPoly{Int(1), Int(1), Int(0), Int(0), Int(0), Int(0), Int(1)}});
  PointCount pc11 = count_points(he, 11);
  CHECK(pc11.y_count ==
        oracles::brute_force_affine_count(IntPoly{Int(1), Int(1), Int(0), Int(0), Int(0), Int(0), Int(1)}, 2, 11));

  CHECK_THROWS_AS(count_points(se, 5), InadmissiblePrime);
}

TEST_CASE("count_points equals brute force for the corpus at admissible p <= 47") {
  std::vector<CurveSpec> curves{
      Superelliptic{2, X_pow_plus_1(5)},
      Superelliptic{3, X_pow_plus_1(4)},
      Superelliptic{2, IntPoly{Int(3), Int(1), Int(0), Int(0), Int(0), Int(1)}},
      HyperellipticEven{IntPoly{Int(1), Int(1), Int(0), Int(0), Int(0), Int(0), Int(1)}},
      HyperellipticEven{IntPoly{Int(1), Int(1), Int(0), Int(0), Int(0), Int(0), Int(-1)}},
      HyperellipticEven{IntPoly{Int(5), Int(1), Int(1), Int(0), Int(0), Int(0), Int(2)}},
      thrice_punctured_line(),
  };
  for (const auto& spec : curves) {
    ValidatedCurve vc = validate(spec);
    for (int64_t p = 2; p <= 47; p = next_prime_after(p)) {
      if (!admissible_prime(vc, p, {}).admissible) continue;
      PointCount pc = count_points(vc, p);
      long long expected = 0;
      if (const auto* se = std::get_if<Superelliptic>(&vc.spec))
        expected = oracles::brute_force_affine_count(se->f, se->m, p);
      else if (const auto* he = std::get_if<HyperellipticEven>(&vc.spec))
        expected = oracles::brute_force_affine_count(he->f, 2, p);
      else
        expected = oracles::brute_force_punctured_line_count(std::get<PuncturedLine>(vc.spec), p);
      CHECK(pc.y_count == expected);
      CHECK(pc.x_count == pc.y_count + pc.cusp_count);
    }
  }
}

TEST_CASE("fiber sizes over F_p partition the field: sum of N_m(a) is p") {
  for (int64_t p : {3, 5, 7, 11, 13, 97}) {
    for (long long m : {2, 3, 4, 5, 6}) {
      detail::PowerResidueCounter nm(m, p);
      long long total = 0;
      for (int64_t a = 0; a < p; ++a) total += nm(a);
      CHECK(total == p);
    }
  }
}

TEST_CASE("parallel and serial point counts agree") {
  // a prime above the threading threshold
  ValidatedCurve se = validate(Superelliptic{2, X_pow_plus_1(5)});
  int64_t p = 131101;
  REQUIRE(is_prime_i64(p));
  PointCount pc = count_points(se, p);
  // Weil bound sanity instead of a second enumeration
  GeometricInvariants inv = invariants(se);
  CHECK(hasse_weil_margin(inv, pc, p) >= 0.0);
}

TEST_CASE("hasse_weil_margin on the named inputs") {
  ValidatedCurve tpl = validate(thrice_punctured_line());
  GeometricInvariants inv_tpl = invariants(tpl);
  for (int64_t p : {5, 7, 11}) {
    PointCount pc = count_points(tpl, p);
    CHECK(hasse_weil_margin(inv_tpl, pc, p) == doctest::Approx(0.0));  // P^1 has exactly p+1 points
  }

  ValidatedCurve se = validate(Superelliptic{2, X_pow_plus_1(5)});
  GeometricInvariants inv_se = invariants(se);
  PointCount pc7 = count_points(se, 7);
  CHECK(hasse_weil_margin(inv_se, pc7, 7) == doctest::Approx(4.0 * std::sqrt(7.0)));

  // an impossible count must be flagged negative
  PointCount bogus{100, 108, 8};
  CHECK(hasse_weil_margin(inv_se, bogus, 7) < 0.0);
}

TEST_CASE("hasse_weil_margin nonnegative across the corpus") {
  std::vector<CurveSpec> curves{
      Superelliptic{2, X_pow_plus_1(5)},
      Superelliptic{3, X_pow_plus_1(4)},
      HyperellipticEven{IntPoly{Int(1), Int(1), Int(0), Int(0), Int(0), Int(0), Int(1)}},
      HyperellipticEven{IntPoly{Int(1), Int(1), Int(0), Int(0), Int(0), Int(0), Int(-1)}},
      thrice_punctured_line(),
  };
  for (const auto& spec : curves) {
    ValidatedCurve vc = validate(spec);
    GeometricInvariants inv = invariants(vc);
    for (int64_t p = 2; p <= 97; p = next_prime_after(p)) {
      if (!admissible_prime(vc, p, {}).admissible) continue;
      CHECK(hasse_weil_margin(inv, count_points(vc, p), p) >= 0.0);
    }
  }
}
