#pragma once

// Sparse exact Fourier expansions with fractional exponent denominators,
// shifted theta series, and the arithmetic-progression sieving operator
// acting on integral expansions.

#include <cstdint>
#include <map>
#include <stdexcept>

#include "arith.hpp"
#include "rational.hpp"

namespace hwct {

// A finite chunk of a Fourier expansion sum_N c(N) e(N tau / denom).
// Only indices up to `max_index` are tracked; absent indices mean zero.
struct FourierSeries {
  u64 denom = 1;
  u64 max_index = 0;
  std::map<u64, Rat> coeffs;

  Rat coeff(u64 idx) const {
    auto it = coeffs.find(idx);
    return it == coeffs.end() ? Rat(0) : it->second;
  }

  void set(u64 idx, const Rat& value) {
    if (value == Rat(0))
      coeffs.erase(idx);
    else
      coeffs[idx] = value;
  }

  void add(u64 idx, const Rat& value) { set(idx, coeff(idx) + value); }

  // In-place sum of two expansions with the same exponent denominator.
  void accumulate(const FourierSeries& other) {
    if (denom != other.denom)
      throw std::invalid_argument("FourierSeries::accumulate: exponent denominators differ");
    if (other.max_index > max_index) max_index = other.max_index;
    for (const auto& [idx, c] : other.coeffs) add(idx, c);
  }

  bool operator==(const FourierSeries& other) const {
    return denom == other.denom && coeffs == other.coeffs;
  }
};

// theta_{a,beta}(tau) = sum_{m = beta (mod a)} e(m^2 tau / a), truncated at
// exponent index n_max: the coefficient at index N counts m with m^2 = N.
inline FourierSeries theta_series(u64 a, u64 beta, u64 n_max) {
  if (a == 0) throw std::invalid_argument("theta_series: a must be positive");
  FourierSeries s;
  s.denom = a;
  s.max_index = n_max;
  const u64 r = isqrt(n_max);
  const u64 cls = beta % a;
  for (u64 m = 0; m <= r; ++m) {
    const u64 n = m * m;
    if (m % a == cls) s.add(n, Rat(1));
    if (m != 0 && (a - m % a) % a == cls) s.add(n, Rat(1));
  }
  return s;
}

// U_{a,b}: keep the coefficients with index = b (mod a) of an integral
// expansion and reinterpret them with exponent denominator a.  Indices are
// preserved, so the result represents sum_{n = b (a)} c(n) e(n tau / a).
inline FourierSeries u_ab(const FourierSeries& s, u64 a, u64 b) {
  if (a == 0) throw std::invalid_argument("u_ab: a must be positive");
  if (s.denom != 1)
    throw std::invalid_argument("u_ab: input must have integral exponents");
  FourierSeries out;
  out.denom = a;
  out.max_index = s.max_index;
  const u64 cls = b % a;
  for (const auto& [idx, c] : s.coeffs)
    if (idx % a == cls) out.set(idx, c);
  return out;
}

}  // namespace hwct
