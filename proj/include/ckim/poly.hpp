#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <type_traits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ckim/errors.hpp"

namespace ckim {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

/// Dense univariate polynomial, coefficient of degree i at index i.
/// The zero polynomial is the empty coefficient list; otherwise the
/// highest-index coefficient is nonzero.
template <typename C>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<C> coeffs) : c_(std::move(coeffs)) { normalize(); }
  Poly(std::initializer_list<C> coeffs) : c_(coeffs) { normalize(); }

  static Poly constant(const C& v) { return Poly(std::vector<C>{v}); }
  // x^k
  static Poly monomial(std::size_t k, const C& v = C(1)) {
    std::vector<C> c(k + 1, C(0));
    c[k] = v;
    return Poly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  // degree of the zero polynomial is -1
  long degree() const { return static_cast<long>(c_.size()) - 1; }

  const C& leading() const {
    if (is_zero()) throw std::invalid_argument("leading coefficient of zero polynomial");
    return c_.back();
  }

  C coeff(std::size_t i) const { return i < c_.size() ? c_[i] : C(0); }
  const std::vector<C>& coeffs() const { return c_; }

  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly operator-() const {
    std::vector<C> r(c_);
    for (auto& x : r) x = -x;
    return Poly(std::move(r));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<C> r(std::max(a.c_.size(), b.c_.size()), C(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<C> r(a.c_.size() + b.c_.size() - 1, C(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(r));
  }
  friend Poly operator*(const C& s, const Poly& a) {
    std::vector<C> r(a.c_);
    for (auto& x : r) x *= s;
    return Poly(std::move(r));
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<C> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = C(static_cast<long>(i)) * c_[i];
    return Poly(std::move(r));
  }

  template <typename V>
  V eval(const V& x) const {
    V acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + V(c_[i]);
    return acc;
  }

  // materialize GMP expression templates before evaluating
  template <typename T2, typename U2, typename = std::enable_if_t<!std::is_same_v<T2, U2>>>
  auto eval(const __gmp_expr<T2, U2>& x) const {
    __gmp_expr<T2, T2> value(x);
    return eval(value);
  }

  std::string str(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i] == 0) continue;
      C a = c_[i];
      if (first) {
        if (a < 0) { out << "-"; a = -a; }
      } else {
        out << (a < 0 ? " - " : " + ");
        if (a < 0) a = -a;
      }
      first = false;
      const bool unit = (a == C(1));
      if (i == 0) {
        out << a;
      } else {
        if (!unit) out << a << "*";
        out << var;
        if (i > 1) out << "^" << i;
      }
    }
    return out.str();
  }

 private:
  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<C> c_;
};

using IntPoly = Poly<Int>;
using RatPoly = Poly<Rat>;

inline RatPoly to_rational(const IntPoly& f) {
  std::vector<Rat> c;
  c.reserve(f.coeffs().size());
  for (const auto& a : f.coeffs()) c.emplace_back(a);
  return RatPoly(std::move(c));
}

// ----- rational polynomial division ------------------------------------

inline std::pair<RatPoly, RatPoly> divrem(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
  if (a.degree() < b.degree()) return {RatPoly(), a};
  std::vector<Rat> rem(a.coeffs());
  std::vector<Rat> quo(static_cast<std::size_t>(a.degree() - b.degree()) + 1, Rat(0));
  const long db = b.degree();
  const Rat& lb = b.leading();
  for (long i = a.degree(); i >= db; --i) {
    Rat q = rem[static_cast<std::size_t>(i)] / lb;
    if (q == 0) continue;
    quo[static_cast<std::size_t>(i - db)] = q;
    for (long j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(i - db + j)] -= q * b.coeff(static_cast<std::size_t>(j));
  }
  return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
}

inline RatPoly make_monic(const RatPoly& f) {
  if (f.is_zero()) return f;
  Rat inv = Rat(1) / f.leading();
  return inv * f;
}

/// Monic greatest common divisor over Q; gcd(0,0) = 0.
inline RatPoly poly_gcd(RatPoly f, RatPoly g) {
  while (!g.is_zero()) {
    RatPoly r = divrem(f, g).second;
    f = g;
    g = r;
  }
  return make_monic(f);
}

// ----- integer polynomial content / primitive part ---------------------

inline Int content(const IntPoly& f) {
  Int c = 0;
  for (const auto& a : f.coeffs()) {
    mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), a.get_mpz_t());
    if (c == 1) break;
  }
  return c;  // content(0) = 0, otherwise positive
}

inline IntPoly primitive_part(const IntPoly& f) {
  if (f.is_zero()) return f;
  Int c = content(f);
  std::vector<Int> r(f.coeffs());
  for (auto& a : r) mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
  return IntPoly(std::move(r));
}

inline IntPoly divexact(const IntPoly& f, const Int& d) {
  if (d == 0) throw std::invalid_argument("divexact by zero");
  std::vector<Int> r(f.coeffs());
  for (auto& a : r) mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
  return IntPoly(std::move(r));
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + r with deg r < deg b.
inline IntPoly prem(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("prem: division by zero polynomial");
  if (a.degree() < b.degree()) {
    // scale anyway so that the defining identity holds with exponent delta+1 <= 0: not needed here
    return a;
  }
  const Int& d = b.leading();
  long e = a.degree() - b.degree() + 1;
  std::vector<Int> r(a.coeffs());
  auto deg_of = [&r]() {
    long k = static_cast<long>(r.size()) - 1;
    while (k >= 0 && r[static_cast<std::size_t>(k)] == 0) --k;
    return k;
  };
  long dr = deg_of();
  const long db = b.degree();
  while (dr >= db) {
    Int lr = r[static_cast<std::size_t>(dr)];
    for (auto& x : r) x *= d;
    for (long j = 0; j <= db; ++j)
      r[static_cast<std::size_t>(dr - db + j)] -= lr * b.coeff(static_cast<std::size_t>(j));
    --e;
    dr = deg_of();
  }
  IntPoly out{std::vector<Int>(r)};
  // pad remaining powers of d so the total factor is exactly d^(delta+1)
  Int scale;
  mpz_pow_ui(scale.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(e));
  return scale * out;
}

namespace detail {
inline Int int_pow(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}
}  // namespace detail

/// Resultant of two nonzero integer polynomials, computed with the
/// fraction-free subresultant pseudo-remainder scheme (Collins /
/// Brown–Traub). Res(a, b) = 0 when a, b share a factor.
inline Int resultant(IntPoly a, IntPoly b) {
  if (a.is_zero() || b.is_zero()) return 0;
  int sign = 1;
  if (a.degree() < b.degree()) {
    if ((a.degree() % 2 != 0) && (b.degree() % 2 != 0)) sign = -sign;
    std::swap(a, b);
  }
  if (a.degree() == 0) return 1;  // two nonzero constants
  Int ca = content(a), cb = content(b);
  a = divexact(a, ca);
  b = divexact(b, cb);
  Int acc = detail::int_pow(ca, static_cast<unsigned long>(b.degree())) *
            detail::int_pow(cb, static_cast<unsigned long>(a.degree()));
  Int g = 1, h = 1;
  while (b.degree() > 0) {
    long delta = a.degree() - b.degree();
    if ((a.degree() % 2 != 0) && (b.degree() % 2 != 0)) sign = -sign;
    IntPoly r = prem(a, b);
    if (r.is_zero()) return 0;
    a = b;
    Int div = g * detail::int_pow(h, static_cast<unsigned long>(delta));
    b = divexact(r, div);
    g = a.leading();
    if (delta > 0) {
      // h <- g^delta / h^(delta-1), exact in Z
      Int num = detail::int_pow(g, static_cast<unsigned long>(delta));
      Int den = detail::int_pow(h, static_cast<unsigned long>(delta - 1));
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
  }
  // b is a nonzero constant now
  Int num = detail::int_pow(b.leading(), static_cast<unsigned long>(a.degree()));
  Int den = detail::int_pow(h, static_cast<unsigned long>(a.degree() - 1));
  Int res;
  mpz_divexact(res.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  res *= acc;
  if (sign < 0) res = -res;
  return res;
}

/// disc(f) = (-1)^(d(d-1)/2) * Res(f, f') / lc(f). Integer-valued for
/// integer f, returned as an exact rational.
inline Rat discriminant(const IntPoly& f) {
  long d = f.degree();
  if (d < 1) throw std::invalid_argument("discriminant requires degree >= 1");
  Int res = resultant(f, f.derivative());
  Rat out = make_rat(res, f.leading());
  if (((d * (d - 1)) / 2) % 2 != 0) out = -out;
  return out;
}

/// True iff deg gcd(f, f') = 0.
inline bool is_squarefree(const IntPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("is_squarefree: zero polynomial");
  if (f.degree() == 0) return true;
  return poly_gcd(to_rational(f), to_rational(f.derivative())).degree() == 0;
}

// ----- Sturm chain real root counting -----------------------------------

namespace detail {

// positive rescale to a primitive integer polynomial; signs are unchanged,
// so Sturm sign-variation counts are preserved
inline RatPoly primitive_rescale(const RatPoly& f) {
  if (f.is_zero()) return f;
  Int lcm_den = 1;
  for (const auto& q : f.coeffs())
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), q.get_den().get_mpz_t());
  std::vector<Int> ints;
  ints.reserve(f.coeffs().size());
  for (const auto& q : f.coeffs()) {
    Rat scaled = q * Rat(lcm_den);
    ints.emplace_back(scaled.get_num());
  }
  IntPoly ip{std::move(ints)};
  Int c = content(ip);
  std::vector<Rat> out;
  out.reserve(ip.coeffs().size());
  for (const auto& a : ip.coeffs()) out.emplace_back(make_rat(a, c));
  return RatPoly(std::move(out));
}

inline int sign_of(const Rat& q) { return sgn(q); }

// sign of p at +inf / -inf from the leading term
inline int sign_at_inf(const RatPoly& p, bool positive) {
  int s = sign_of(p.leading());
  if (!positive && p.degree() % 2 != 0) s = -s;
  return s;
}

inline long sign_variations(const std::vector<int>& signs) {
  long v = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace detail

/// Number of distinct real roots of a squarefree integer polynomial,
/// by a fully exact Sturm chain evaluated at -inf and +inf.
inline long count_real_roots(const IntPoly& f) {
  if (f.is_zero() || f.degree() < 1)
    throw std::invalid_argument("count_real_roots requires degree >= 1");
  if (!is_squarefree(f))
    throw std::invalid_argument("count_real_roots requires a squarefree polynomial");
  std::vector<RatPoly> chain;
  chain.push_back(detail::primitive_rescale(to_rational(f)));
  chain.push_back(detail::primitive_rescale(to_rational(f.derivative())));
  while (!chain.back().is_zero()) {
    const RatPoly& p0 = chain[chain.size() - 2];
    const RatPoly& p1 = chain.back();
    RatPoly r = -divrem(p0, p1).second;
    chain.push_back(detail::primitive_rescale(r));
  }
  chain.pop_back();
  std::vector<int> at_neg, at_pos;
  at_neg.reserve(chain.size());
  at_pos.reserve(chain.size());
  for (const auto& p : chain) {
    at_neg.push_back(detail::sign_at_inf(p, false));
    at_pos.push_back(detail::sign_at_inf(p, true));
  }
  return detail::sign_variations(at_neg) - detail::sign_variations(at_pos);
}

}  // namespace ckim
