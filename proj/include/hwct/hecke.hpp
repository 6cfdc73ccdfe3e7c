#pragma once
// Structural explanation of progression congruences through the product
// formula H(D f^2) = H(D) * prod_p (local factor at p).
//
// Along N = a n + b, a prime p with 1 <= v_p(b) < v_p(a) contributes a local
// factor that depends only on fixed data of the progression (the valuation
// c = v_p(b) and the class of b / p^c modulo a small power of p), so when that
// factor vanishes mod ell the whole progression is forced to vanish mod ell.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hwct/arith.hpp"
#include "hwct/congruence.hpp"

namespace hwct {

// 1 + p + ... + p^j modulo mod (j >= 0), with powers capped.
inline u64 sigma_geom_mod(u64 p, int j, u64 mod) {
  u64 s = 0, pe = 1 % mod;
  for (int i = 0; i <= j; ++i) {
    s = (s + pe) % mod;
    pe = mulmod(pe, p, mod);
  }
  return s;
}

// Local factor at p for f-valuation j and character value chi, reduced mod `mod`:
//   sigma(p^{j-1}) * (1 - chi) + p^j.
inline u64 local_factor_mod(u64 p, int j, int chi, u64 mod) {
  if (j == 0) return 1 % mod;
  u64 s = sigma_geom_mod(p, j - 1, mod);
  u64 pj = 1 % mod;
  for (int i = 0; i < j; ++i) pj = mulmod(pj, p, mod);
  u64 v = pj;
  if (chi == 0)
    v = (v + s) % mod;
  else if (chi == -1)
    v = (v + 2 * s) % mod;
  // chi == +1 leaves just p^j.
  return v;
}

// The set of values the local factor at p can take along the progression,
// reduced mod `mod`.  Empty optional: p gives no constant-valuation factor.
inline std::optional<std::vector<u64>> local_factor_set(u64 p, u64 a, u64 b, u64 mod) {
  if (b == 0) return std::nullopt;
  int e = valuation(a, p);
  int c = valuation(b, p);
  if (c < 1 || c >= e) return std::nullopt;
  u64 pc = 1;
  for (int i = 0; i < c; ++i) pc *= p;
  u64 u = (b / pc);  // known modulo p^{e-c}
  std::vector<u64> vals;
  if (p != 2) {
    if (c % 2 == 1) {
      // v_p(D) = 1, chi = 0, j = (c-1)/2: factor = sigma(p^j).
      vals.push_back(sigma_geom_mod(p, (c - 1) / 2, mod));
    } else {
      int chi = kronecker(-static_cast<i64>(u % p), static_cast<i64>(p));
      vals.push_back(local_factor_mod(p, c / 2, chi, mod));
    }
  } else {
    if (c == 1) return std::nullopt;  // N = 2 (mod 4): handled as degenerate upstream
    if (c % 2 == 1) {
      // v_2(D) = 3, chi = 0, j = (c-3)/2.
      vals.push_back(sigma_geom_mod(2, (c - 3) / 2, mod));
    } else {
      // M = N / 2^c is odd, known modulo 2^{e-c}; branch on M mod 8.
      int known = std::min(e - c, 3);
      u64 base = u % (1ull << known);
      for (u64 M = base; M < 8; M += (1ull << known)) {
        if (M % 4 == 1) {
          // v_2(D) = 2, chi = 0, j = (c-2)/2.
          vals.push_back(sigma_geom_mod(2, (c - 2) / 2, mod));
        } else {
          int chi = (M % 8 == 7) ? 1 : -1;  // chi = kronecker(-M, 2)
          vals.push_back(local_factor_mod(2, c / 2, chi, mod));
        }
      }
    }
  }
  return vals;
}

struct Explanation {
  enum class Status { AllTermsVanish, Forced, NotExplained };
  Status status = Status::NotExplained;
  u64 witness_prime = 0;           // prime whose local factor vanishes (Forced)
  std::vector<u64> factor_values;  // its possible values mod ell
  std::string message;
};

// Decide whether H(a n + b) = 0 (mod ell) is forced by a vanishing local
// factor of the product formula.
inline Explanation explain(u64 ell, u64 a, u64 b) {
  Explanation ex;
  if (degenerate_progression(a, b)) {
    ex.status = Explanation::Status::AllTermsVanish;
    ex.message = "every term lies in a class with H = 0";
    return ex;
  }
  for (auto [p, e] : factor(a)) {
    auto vals = local_factor_set(p, a, b, ell);
    if (!vals) continue;
    bool all_zero = true;
    for (u64 v : *vals) all_zero = all_zero && v == 0;
    if (all_zero) {
      ex.status = Explanation::Status::Forced;
      ex.witness_prime = p;
      ex.factor_values = *vals;
      ex.message = "local factor at " + std::to_string(p) + " vanishes mod " + std::to_string(ell);
      return ex;
    }
  }
  ex.message = "no prime provides a vanishing constant local factor";
  return ex;
}

struct PrimePowerPrediction {
  bool applicable = false;  // progression has the shape ell^e n + ell^c u
  bool forced = false;      // congruence mod ell^m forced by the local factor
  u64 factor_residue = 0;   // the ell-local factor mod ell^m
  int e = 0, c = 0;
  u64 u = 0;
};

// Specialized predictor for moduli ell^m on progressions ell^e n + b:
// with c = v_ell(b), u = b / ell^c and e > c, the ell-local factor equals
// sigma(ell^{c/2 - 1}) (1 - chi) + ell^{c/2} for even c (chi = (-u | ell)),
// and the congruence mod ell^m is forced exactly when
//   c even, c >= 2m, and -u a square mod ell.
inline PrimePowerPrediction predict_prime_power(u64 ell, u64 a, u64 b, int m = 1) {
  PrimePowerPrediction pr;
  u64 t = a;
  int e = 0;
  while (t % ell == 0) {
    t /= ell;
    ++e;
  }
  if (t != 1 || e == 0 || b == 0) return pr;  // not of the shape ell^e
  int c = valuation(b, ell);
  if (c >= e) return pr;
  pr.applicable = true;
  pr.e = e;
  pr.c = c;
  u64 pc = 1;
  for (int i = 0; i < c; ++i) pc *= ell;
  pr.u = b / pc;
  u64 mod = 1;
  for (int i = 0; i < m; ++i) mod *= ell;
  if (c % 2 == 1) {
    pr.factor_residue = sigma_geom_mod(ell, (c - 1) / 2, mod);
  } else {
    int chi = kronecker(-static_cast<i64>(pr.u % ell), static_cast<i64>(ell));
    pr.factor_residue = local_factor_mod(ell, c / 2, chi, mod);
  }
  pr.forced = c % 2 == 0 && c >= 2 * m &&
              kronecker(-static_cast<i64>(pr.u % ell), static_cast<i64>(ell)) == 1;
  return pr;
}

}  // namespace hwct
