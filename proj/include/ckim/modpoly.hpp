#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ckim/poly.hpp"

namespace ckim {

using std::int64_t;

// ----- small prime utilities --------------------------------------------

inline int64_t mulmod_i64(int64_t a, int64_t b, int64_t m) {
  return static_cast<int64_t>((static_cast<__int128>(a) * b) % m);
}

inline int64_t powmod_i64(int64_t base, int64_t exp, int64_t m) {
  int64_t r = 1 % m;
  base %= m;
  if (base < 0) base += m;
  while (exp > 0) {
    if (exp & 1) r = mulmod_i64(r, base, m);
    base = mulmod_i64(base, base, m);
    exp >>= 1;
  }
  return r;
}

/// Deterministic Miller–Rabin for 64-bit inputs.
inline bool is_prime_i64(int64_t n) {
  if (n < 2) return false;
  for (int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  int64_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) { d /= 2; ++s; }
  for (int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    int64_t x = powmod_i64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mulmod_i64(x, x, n);
      if (x == n - 1) { witness = false; break; }
    }
    if (witness) return false;
  }
  return true;
}

inline int64_t next_prime_after(int64_t n) {
  int64_t c = n + 1;
  if (c <= 2) return 2;
  if (c % 2 == 0) ++c;
  while (!is_prime_i64(c)) c += 2;
  return c;
}

// ----- polynomials over F_p ---------------------------------------------

/// Dense polynomial over F_p, residues reduced into [0, p).
class ModPoly {
 public:
  ModPoly(int64_t modulus, std::vector<int64_t> coeffs) : p_(modulus), c_(std::move(coeffs)) {
    if (p_ < 2) throw std::invalid_argument("ModPoly: modulus must be >= 2");
    for (auto& a : c_) {
      a %= p_;
      if (a < 0) a += p_;
    }
    normalize();
  }

  static ModPoly reduce(const IntPoly& f, int64_t p) {
    std::vector<int64_t> c;
    c.reserve(f.coeffs().size());
    for (const auto& a : f.coeffs()) {
      Int r = a % p;
      c.push_back(r.get_si());
    }
    return ModPoly(p, std::move(c));
  }

  static ModPoly x(int64_t p) { return ModPoly(p, {0, 1}); }

  int64_t modulus() const { return p_; }
  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  int64_t leading() const { return c_.back(); }
  int64_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  const std::vector<int64_t>& coeffs() const { return c_; }
  bool operator==(const ModPoly& o) const { return p_ == o.p_ && c_ == o.c_; }

  ModPoly monic() const {
    if (is_zero()) return *this;
    int64_t inv = powmod_i64(leading(), p_ - 2, p_);  // p prime
    std::vector<int64_t> r(c_);
    for (auto& a : r) a = mulmod_i64(a, inv, p_);
    return ModPoly(p_, std::move(r));
  }

  friend ModPoly operator-(const ModPoly& a, const ModPoly& b) {
    std::vector<int64_t> r(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = (r[i] - b.c_[i] + a.p_) % a.p_;
    return ModPoly(a.p_, std::move(r));
  }

  friend ModPoly operator*(const ModPoly& a, const ModPoly& b) {
    if (a.is_zero() || b.is_zero()) return ModPoly(a.p_, {});
    std::vector<int64_t> r(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        r[i + j] = (r[i + j] + static_cast<__int128>(a.c_[i]) * b.c_[j]) % a.p_;
    }
    return ModPoly(a.p_, std::move(r));
  }

  ModPoly rem(const ModPoly& m) const {
    if (m.is_zero()) throw std::invalid_argument("ModPoly::rem by zero");
    std::vector<int64_t> r(c_);
    const long dm = m.degree();
    int64_t inv = powmod_i64(m.leading(), p_ - 2, p_);
    long dr = static_cast<long>(r.size()) - 1;
    while (dr >= dm) {
      int64_t q = mulmod_i64(r[static_cast<std::size_t>(dr)], inv, p_);
      if (q != 0) {
        for (long j = 0; j <= dm; ++j) {
          auto idx = static_cast<std::size_t>(dr - dm + j);
          r[idx] = (r[idx] - mulmod_i64(q, m.coeff(static_cast<std::size_t>(j)), p_) % p_ + p_) % p_;
        }
      }
      --dr;
      while (dr >= 0 && r[static_cast<std::size_t>(dr)] == 0) --dr;
    }
    r.resize(dr < 0 ? 0 : static_cast<std::size_t>(dr) + 1);
    return ModPoly(p_, std::move(r));
  }

 private:
  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  int64_t p_;
  std::vector<int64_t> c_;
};

inline ModPoly gcd(ModPoly a, ModPoly b) {
  while (!b.is_zero()) {
    ModPoly r = a.rem(b);
    a = b;
    b = r;
  }
  return a.monic();
}

/// x^e mod f over F_p, square-and-multiply on the bits of e.
inline ModPoly pow_x_mod(const Int& e, const ModPoly& f) {
  if (f.degree() < 1) throw std::invalid_argument("pow_x_mod: modulus polynomial must have degree >= 1");
  ModPoly result(f.modulus(), {1});
  ModPoly base = ModPoly::x(f.modulus()).rem(f);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = (result * result).rem(f);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * base).rem(f);
  }
  return result;
}

/// Number of distinct roots of f in F_p: deg gcd(x^p - x mod f, f mod p).
inline long count_roots_mod_p(const IntPoly& f, int64_t p) {
  if (!is_prime_i64(p)) throw std::invalid_argument("count_roots_mod_p: p must be prime");
  ModPoly fp = ModPoly::reduce(f, p);
  if (fp.is_zero()) throw std::invalid_argument("count_roots_mod_p: f vanishes mod p");
  if (fp.degree() < 1) return 0;
  ModPoly frob = pow_x_mod(Int(p), fp);
  ModPoly g = gcd(fp, frob - ModPoly::x(p).rem(fp));
  return g.degree();
}

/// Rabin's irreducibility test over F_ell: f of degree d is irreducible iff
/// f | x^(ell^d) - x and gcd(f, x^(ell^(d/q)) - x) = 1 for every prime q | d.
inline bool is_irreducible_mod_ell(const ModPoly& f) {
  const int64_t ell = f.modulus();
  if (!is_prime_i64(ell)) throw std::invalid_argument("is_irreducible_mod_ell: modulus must be prime");
  if (f.is_zero() || f.degree() < 1)
    throw std::invalid_argument("is_irreducible_mod_ell: degree >= 1 required");
  const long d = f.degree();
  if (d == 1) return true;
  ModPoly fm = f.monic();
  Int ell_d;
  mpz_ui_pow_ui(ell_d.get_mpz_t(), static_cast<unsigned long>(ell), static_cast<unsigned long>(d));
  ModPoly xq = pow_x_mod(ell_d, fm);
  if (!(xq - ModPoly::x(ell).rem(fm)).is_zero()) return false;
  long rest = d;
  for (long q = 2; q * q <= rest; ++q) {
    if (rest % q != 0) continue;
    while (rest % q == 0) rest /= q;
    Int e;
    mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(ell), static_cast<unsigned long>(d / q));
    ModPoly g = gcd(fm, pow_x_mod(e, fm) - ModPoly::x(ell).rem(fm));
    if (g.degree() != 0) return false;
  }
  if (rest > 1) {
    Int e;
    mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(ell), static_cast<unsigned long>(d / rest));
    ModPoly g = gcd(fm, pow_x_mod(e, fm) - ModPoly::x(ell).rem(fm));
    if (g.degree() != 0) return false;
  }
  return true;
}

// ----- irreducibility over Q (semi-decision) -----------------------------

enum class Irreducibility { Confirmed, Refuted, Unknown };

inline const char* irreducibility_name(Irreducibility v) {
  switch (v) {
    case Irreducibility::Confirmed: return "Confirmed";
    case Irreducibility::Refuted: return "Refuted";
    case Irreducibility::Unknown: return "Unknown";
  }
  return "?";
}

namespace detail {

// all positive divisors by trial division; nullopt if n is too expensive
inline std::optional<std::vector<Int>> divisors_of(const Int& n_in, long budget = 1 << 20) {
  Int n = abs(n_in);
  if (n == 0) return std::nullopt;
  std::vector<std::pair<Int, int>> fac;
  Int d = 2;
  long steps = 0;
  while (d * d <= n) {
    if (++steps > budget) return std::nullopt;
    if (n % d == 0) {
      int e = 0;
      while (n % d == 0) { n /= d; ++e; }
      fac.emplace_back(d, e);
    }
    d += (d == 2) ? 1 : 2;
  }
  if (n > 1) fac.emplace_back(n, 1);
  std::vector<Int> divs{1};
  for (const auto& [prime, mult] : fac) {
    std::size_t base = divs.size();
    Int pk = 1;
    for (int e = 1; e <= mult; ++e) {
      pk *= prime;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

// exact rational-root search; nullopt when the coefficient factorizations
// are out of reach
inline std::optional<bool> has_rational_root(const IntPoly& f) {
  if (f.coeff(0) == 0) return true;  // root 0
  auto us = divisors_of(f.coeff(0));
  auto vs = divisors_of(f.leading());
  if (!us || !vs) return std::nullopt;
  for (const Int& u : *us) {
    for (const Int& v : *vs) {
      Rat cand = make_rat(u, v);
      if (f.eval(cand) == 0 || f.eval(-cand) == 0) return true;
    }
  }
  return false;
}

}  // namespace detail

/// Semi-decides irreducibility of a primitive integer polynomial over Q.
/// Refutations come from exact rational roots (or, in degree 2, a square
/// discriminant); confirmations from degree <= 2 exclusion or from
/// irreducibility mod a good prime among the first trial_prime_budget
/// prime candidates. Anything else is Unknown.
inline Irreducibility verify_irreducible_over_q(const IntPoly& f_in, long trial_prime_budget = 25) {
  if (f_in.is_zero() || f_in.degree() < 1)
    throw std::invalid_argument("verify_irreducible_over_q: degree >= 1 required");
  IntPoly f = primitive_part(f_in);
  const long d = f.degree();
  if (d == 1) return Irreducibility::Confirmed;

  auto root = detail::has_rational_root(f);
  if (root && *root) return Irreducibility::Refuted;

  if (d == 2) {
    Rat disc = discriminant(f);
    Int num = disc.get_num();  // canonical denominator is 1 here
    if (num >= 0 && mpz_perfect_square_p(num.get_mpz_t())) return Irreducibility::Refuted;
    return Irreducibility::Confirmed;
  }

  Int bad = f.leading() * discriminant(f).get_num();
  int64_t ell = 1;
  for (long i = 0; i < trial_prime_budget; ++i) {
    ell = next_prime_after(ell);
    if (mpz_divisible_ui_p(bad.get_mpz_t(), static_cast<unsigned long>(ell))) continue;
    if (is_irreducible_mod_ell(ModPoly::reduce(f, ell))) return Irreducibility::Confirmed;
  }
  return Irreducibility::Unknown;
}

}  // namespace ckim
