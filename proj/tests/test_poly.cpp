#include <random>

#include "ckim/poly.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace ckim;

namespace {

IntPoly random_poly(std::mt19937& rng, int max_deg = 6, int max_coeff = 9) {
  std::uniform_int_distribution<int> deg_dist(0, max_deg);
  std::uniform_int_distribution<int> coeff_dist(-max_coeff, max_coeff);
  int d = deg_dist(rng);
  std::vector<Int> c(static_cast<std::size_t>(d) + 1);
  for (auto& a : c) a = coeff_dist(rng);
  if (c.back() == 0) c.back() = 1;
  return IntPoly(std::move(c));
}

RatPoly rat(const IntPoly& f) { return to_rational(f); }

}  // namespace

TEST_CASE("polynomial normalization and basics") {
  IntPoly zero;
  CHECK(zero.is_zero());
  CHECK(zero.degree() == -1);
  IntPoly trimmed({Int(1), Int(2), Int(0), Int(0)});
  CHECK(trimmed.degree() == 1);
  IntPoly f{Int(-1), Int(0), Int(1)};  // x^2 - 1
  CHECK(f.eval(Rat(2)) == Rat(3));
  CHECK(f.derivative() == IntPoly({Int(0), Int(2)}));
  CHECK(f.str() == "x^2 - 1");
}

TEST_CASE("poly_gcd on the named inputs") {
  IntPoly x2m1{Int(-1), Int(0), Int(1)};
  IntPoly xm1{Int(-1), Int(1)};
  CHECK(poly_gcd(rat(x2m1), rat(xm1)) == rat(xm1));

  IntPoly x2p1{Int(1), Int(0), Int(1)};
  CHECK(poly_gcd(rat(x2p1), RatPoly()) == rat(x2p1));
  CHECK(poly_gcd(RatPoly(), RatPoly()).is_zero());

  // Euclid by hand: x^3 - x = x * (x^2 - 1) + 0, so the gcd is x^2 - 1
  IntPoly x3mx{Int(0), Int(-1), Int(0), Int(1)};
  CHECK(poly_gcd(rat(x3mx), rat(x2m1)) == rat(x2m1));

  // scaling: gcd is monic regardless of leading coefficients
  CHECK(poly_gcd(Rat(3) * rat(x2m1), Rat(-7) * rat(xm1)) == rat(xm1));
}

TEST_CASE("poly_gcd divides both arguments exactly") {
  std::mt19937 rng(20240201);
  for (int iter = 0; iter < 300; ++iter) {
    RatPoly f = rat(random_poly(rng));
    RatPoly g = rat(random_poly(rng));
    RatPoly d = poly_gcd(f, g);
    if (d.is_zero()) {
      CHECK(f.is_zero());
      CHECK(g.is_zero());
      continue;
    }
    CHECK(divrem(f, d).second.is_zero());
    CHECK(divrem(g, d).second.is_zero());
  }
}

TEST_CASE("is_squarefree") {
  CHECK(is_squarefree(IntPoly{Int(1), Int(0), Int(0), Int(0), Int(0), Int(1)}));  // x^5 + 1
  CHECK_FALSE(is_squarefree(IntPoly{Int(1), Int(-2), Int(1)}));                   // (x-1)^2
  CHECK(is_squarefree(IntPoly{Int(0), Int(1)}));                                  // x
  CHECK_THROWS_AS(is_squarefree(IntPoly()), std::invalid_argument);
}

TEST_CASE("discriminant on the named inputs") {
  // x^2 + 3x + 1: b^2 - 4c = 5
  CHECK(discriminant(IntPoly{Int(1), Int(3), Int(1)}) == Rat(5));
  // x^2 + 1: -4
  CHECK(discriminant(IntPoly{Int(1), Int(0), Int(1)}) == Rat(-4));
  // x^3 + px + q at p = -1, q = 0: -4p^3 - 27q^2 = 4
  CHECK(discriminant(IntPoly{Int(0), Int(-1), Int(0), Int(1)}) == Rat(4));
  CHECK(discriminant(IntPoly{Int(0), Int(1)}) == Rat(1));  // linear
  CHECK_THROWS_AS(discriminant(IntPoly{Int(5)}), std::invalid_argument);
  CHECK_THROWS_AS(discriminant(IntPoly()), std::invalid_argument);
}

TEST_CASE("subresultant resultant matches the Sylvester determinant") {
  std::mt19937 rng(20240202);
  int nonzero_checked = 0;
  for (int iter = 0; iter < 400; ++iter) {
    IntPoly f = random_poly(rng, 5, 8);
    IntPoly g = random_poly(rng, 5, 8);
    if (f.is_zero() || g.is_zero()) continue;
    Rat expected = oracles::sylvester_resultant(f, g);
    CHECK(Rat(resultant(f, g)) == expected);
    if (expected != 0) ++nonzero_checked;
  }
  CHECK(nonzero_checked > 100);

  // swap antisymmetry on odd-by-odd degrees
  IntPoly f{Int(2), Int(0), Int(0), Int(1)};
  IntPoly g{Int(-1), Int(1)};
  CHECK(resultant(f, g) == -resultant(g, f));
}

TEST_CASE("discriminant via the resultant definition, randomized") {
  std::mt19937 rng(20240203);
  for (int iter = 0; iter < 200; ++iter) {
    IntPoly f = random_poly(rng, 6, 7);
    if (f.degree() < 1) continue;
    Rat expected = oracles::sylvester_resultant(f, f.derivative()) / Rat(f.leading());
    long d = f.degree();
    if ((d * (d - 1) / 2) % 2 != 0) expected = -expected;
    CHECK(discriminant(f) == expected);
  }
}

TEST_CASE("discriminant detects non-squarefree reduction mod p") {
  std::mt19937 rng(20240204);
  std::vector<int64_t> primes{2, 3, 5, 7, 11, 13};
  for (int iter = 0; iter < 120; ++iter) {
    IntPoly f = random_poly(rng, 5, 9);
    if (f.degree() < 1) continue;
    Int disc = discriminant(f).get_num();
    for (int64_t p : primes) {
      if (mpz_divisible_ui_p(f.leading().get_mpz_t(), static_cast<unsigned long>(p))) continue;
      bool disc_zero = mpz_divisible_ui_p(disc.get_mpz_t(), static_cast<unsigned long>(p)) != 0;
      ModPoly fp = ModPoly::reduce(f, p);
      bool sf = fp.degree() >= 1 ? detail::squarefree_mod(f, p) : true;
      CHECK(disc_zero == !sf);
    }
  }
}

TEST_CASE("count_real_roots on the named inputs") {
  CHECK(count_real_roots(IntPoly{Int(0), Int(-1), Int(0), Int(1)}) == 3);  // x^3 - x
  CHECK(count_real_roots(IntPoly{Int(1), Int(0), Int(1)}) == 0);           // x^2 + 1
  // x^5 - x - 1 has a single real root (near 1.1673)
  CHECK(count_real_roots(IntPoly{Int(-1), Int(-1), Int(0), Int(0), Int(0), Int(1)}) == 1);
  CHECK_THROWS_AS(count_real_roots(IntPoly{Int(1), Int(-2), Int(1)}), std::invalid_argument);
  CHECK_THROWS_AS(count_real_roots(IntPoly{Int(7)}), std::invalid_argument);
}

TEST_CASE("count_real_roots agrees with Descartes isolation and has the right parity") {
  std::mt19937 rng(20240205);
  int checked = 0;
  while (checked < 150) {
    IntPoly f = random_poly(rng, 6, 9);
    if (f.degree() < 1 || !is_squarefree(f)) continue;
    long sturm = count_real_roots(f);
    CHECK(sturm == oracles::descartes_real_root_count(f));
    CHECK(sturm <= f.degree());
    CHECK((sturm - f.degree()) % 2 == 0);
    ++checked;
  }
}
