#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ckim/poly.hpp"
#include "ckim/selmer.hpp"

namespace ckim {

/// Exact integer power series truncated at a fixed degree. Arithmetic
/// never reads beyond the truncation bound.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(long truncation)
      : c_(static_cast<std::size_t>(truncation) + 1, Int(0)) {
    if (truncation < 0) throw std::invalid_argument("truncation must be >= 0");
  }
  TruncatedSeries(std::vector<Int> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("a truncated series has at least the constant term");
  }

  static TruncatedSeries one(long truncation) {
    TruncatedSeries s(truncation);
    s.c_[0] = 1;
    return s;
  }

  long truncation() const { return static_cast<long>(c_.size()) - 1; }
  const Int& operator[](std::size_t i) const { return c_.at(i); }
  Int& operator[](std::size_t i) { return c_.at(i); }
  const std::vector<Int>& coeffs() const { return c_; }
  bool operator==(const TruncatedSeries& o) const { return c_ == o.c_; }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    long m = std::min(a.truncation(), b.truncation());
    TruncatedSeries r(m);
    for (long i = 0; i <= m; ++i)
      for (long j = 0; i + j <= m && j <= b.truncation(); ++j)
        r.c_[static_cast<std::size_t>(i + j)] +=
            a.c_[static_cast<std::size_t>(i)] * b.c_[static_cast<std::size_t>(j)];
    return r;
  }

 private:
  std::vector<Int> c_;
};

/// Coefficients of (1 - t^k)^(-e) through degree m: binomial coefficients
/// C(e-1+j, j) at the multiples of k.
inline TruncatedSeries binom_neg_power(long k, long long e, long m) {
  if (k < 1) throw std::invalid_argument("binom_neg_power: k must be >= 1");
  if (e < 0) throw std::invalid_argument("binom_neg_power: exponent must be >= 0");
  TruncatedSeries s = TruncatedSeries::one(m);
  if (e == 0) return s;
  for (long j = 1; k * j <= m; ++j) {
    Int binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(e - 1 + j),
                 static_cast<unsigned long>(j));
    s[static_cast<std::size_t>(k * j)] = binom;
  }
  return s;
}

/// HS_glob(t) = (1 - t^2)^(-s) * prod over pieces of (1 - t^k)^(-dim_global),
/// k = -weight.
inline TruncatedSeries hs_global(const QuotientDescriptor& desc, long long s, long m) {
  TruncatedSeries out = binom_neg_power(2, s, m);
  for (const auto& piece : desc.pieces)
    out = out * binom_neg_power(-piece.weight, piece.dim_global, m);
  return out;
}

/// HS_loc(t) = prod over pieces of (1 - t^k)^(-dim_local), k = -weight.
inline TruncatedSeries hs_local(const QuotientDescriptor& desc, long m) {
  TruncatedSeries out = TruncatedSeries::one(m);
  for (const auto& piece : desc.pieces)
    out = out * binom_neg_power(-piece.weight, piece.dim_local, m);
  return out;
}

/// Expansion of numer/denom through degree m via the linear recurrence
/// induced by denom; requires denom(0) = 1.
inline TruncatedSeries rational_series(const IntPoly& numer, const IntPoly& denom, long m) {
  if (denom.coeff(0) != 1)
    throw std::invalid_argument("rational_series: denominator must have constant term 1");
  TruncatedSeries out(m);
  for (long j = 0; j <= m; ++j) {
    Int c = numer.coeff(static_cast<std::size_t>(j));
    long reach = std::min<long>(j, denom.degree());
    for (long i = 1; i <= reach; ++i)
      c -= denom.coeff(static_cast<std::size_t>(i)) * out[static_cast<std::size_t>(j - i)];
    out[static_cast<std::size_t>(j)] = c;
  }
  return out;
}

/// Sum of the coefficients c_0 + ... + c_upto.
inline Int partial_sum(const TruncatedSeries& s, long upto) {
  if (upto < 0 || upto > s.truncation())
    throw std::invalid_argument("partial_sum: index exceeds the truncation bound");
  Int total = 0;
  for (long i = 0; i <= upto; ++i) total += s[static_cast<std::size_t>(i)];
  return total;
}

}  // namespace ckim
