#pragma once
// Hurwitz class numbers H(N).  Values are stored as integer "twelfths"
// t(N) = 12*H(N), which is always an integer: t(0) = -1, t(3) = 4, t(4) = 6, ...
//
// oracle_h enumerates reduced binary quadratic forms directly; fast_h splits
// off the fundamental discriminant and applies the multiplicative formula
//   H(D f^2) = H(D) * sum_{d | f} d * prod_{p | d} (1 - (-D|p)/p).

#include <cstdint>
#include <stdexcept>

#include "hwct/arith.hpp"
#include "hwct/rational.hpp"

namespace hwct {

// 12*H(N) by direct enumeration of reduced forms (A,B,C), B^2 - 4AC = -N,
// |B| <= A <= C, with the usual 1/2 and 1/3 weights at the boundary forms.
inline i64 oracle_h(u64 N) {
  if (N == 0) return -1;
  if (N % 4 == 1 || N % 4 == 2) return 0;
  i64 t = 0;
  for (u64 B = 0; 3 * B * B <= N; ++B) {
    u64 M = N + B * B;  // = 4AC
    for (u64 A = B > 0 ? B : 1; 4 * A * A <= M; ++A) {
      if (M % (4 * A) != 0) continue;
      u64 C = M / (4 * A);
      if (C == A)
        t += (B == 0) ? 6 : (B == A ? 4 : 12);
      else
        t += (B == 0 || B == A) ? 12 : 24;
    }
  }
  return t;
}

// sum_{d | f} d * prod_{p | d} (1 - chi(p)/p) with chi(p) = (-D|p),
// evaluated as an exact integer via multiplicativity:
// per prime power p^e dividing f the local factor is
//   1 + (p - chi(p)) * (p^e - 1) / (p - 1).
inline i64 hecke_factor(u64 D, u64 f) {
  i64 result = 1;
  for (auto [p, e] : factor(f)) {
    i64 chi = kronecker(-static_cast<i64>(D), static_cast<i64>(p));
    i64 geom = 0, pe = 1;
    for (int i = 0; i < e; ++i) {
      geom += pe;
      pe *= p;
    }
    result *= 1 + (static_cast<i64>(p) - chi) * geom;
  }
  return result;
}

// 12*H(N) via fundamental decomposition N = D f^2 and the product formula.
inline i64 fast_h(u64 N) {
  if (N == 0) return -1;
  if (N % 4 == 1 || N % 4 == 2) return 0;
  auto [D, f] = fundamental_decomposition(N);
  return oracle_h(D) * hecke_factor(D, f);
}

inline Rat hurwitz(u64 N) { return Rat(fast_h(N), 12); }

// lambda(n) = sum_{d | n} min(d, n/d).
inline u64 eichler_lambda(u64 n) {
  u64 s = 0;
  for (u64 d : divisors(n)) s += std::min(d, n / d);
  return s;
}

// Classical relation: sum_{s^2 <= 4n} H(4n - s^2) = 2 sigma_1(n) - lambda(n),
// the sum running over all integers s (both signs), H(0) included.
inline bool eichler_check(u64 n, i64 (*h)(u64) = fast_h) {
  if (n == 0) return true;
  i64 lhs = h(4 * n);  // s = 0
  for (u64 s = 1; s * s <= 4 * n; ++s) lhs += 2 * h(4 * n - s * s);
  i64 rhs = 12 * (2 * static_cast<i64>(sigma1(n)) - static_cast<i64>(eichler_lambda(n)));
  return lhs == rhs;
}

}  // namespace hwct
