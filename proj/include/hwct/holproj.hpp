#pragma once

// Finite closed-form side of the weight-3/2 projection identities:
//  - eichler_part: the exact divisor/square correction term attached to a
//    progression (a, b) with chosen square root beta of -b mod a;
//  - holproj_coefficient: class-number convolution plus that correction;
//  - a quasi-modular fit routine for the level-one coefficient stream;
//  - the auxiliary-multiplier machinery (valuation profiles, lemma
//    selections, subprogression certificates, scale-separated instances);
//  - numerical quadrature checks for the two projection-kernel integrals.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"
#include "hurwitz.hpp"
#include "rational.hpp"
#include "table.hpp"

namespace hwct {

namespace detail {

inline u64 ipow_checked(u64 base, int exp) {
  u128 r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= base;
    if (r > (u128)1 << 62) throw std::overflow_error("ipow_checked: value too large");
  }
  return static_cast<u64>(r);
}

inline u64 checked_mul(u64 a, u64 b) {
  u128 r = (u128)a * b;
  if (r > (u128)1 << 62) throw std::overflow_error("checked_mul: value too large");
  return static_cast<u64>(r);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Exact correction term.
//
// For a progression (a, b) with beta^2 = -b (mod a), and an index n, the
// correction attached to a*n collects, over every residue root bt^2 = -b
// (mod a) and both signs eps, a square term (only for bt = 0) and a
// divisor-pair term:
//
//   (1/4) * sum_{bt, eps} [ [bt = 0] * sum_{m = eps*beta (a), m != 0, m^2 = an} |m|
//         + 2 * sum_{an = d1*d2, d1 != d2, d1 = d2 (mod 2),
//                   d1 = eps*beta + bt (a), d2 = eps*beta - bt (a)} min(d1, d2) ]
//
// The parity constraint keeps exactly the factorizations coming from integer
// pairs (m + mt)(m - mt); equal-divisor pairs belong to the square term.
// ---------------------------------------------------------------------------
inline Rat eichler_part(u64 a, u64 b, u64 beta, u64 n) {
  if (a == 0) throw std::invalid_argument("eichler_part: a must be positive");
  if ((mulmod(beta % a, beta % a, a) + b % a) % a != 0)
    throw std::invalid_argument("eichler_part: beta^2 + b must vanish mod a");
  const u64 an = detail::checked_mul(a, n);
  if (an == 0) return Rat(0);

  const auto roots = sqrts_mod(-static_cast<i64>(b % a), a);
  const auto divs = divisors(an);
  u64 sq = 0;
  const bool square = is_square(an, &sq);

  i128 total = 0;
  for (u64 bt : roots) {
    for (int e = 0; e < 2; ++e) {
      const u64 cb = e ? (a - beta % a) % a : beta % a;  // eps * beta mod a
      if (bt == 0 && square && sq > 0) {
        if (sq % a == cb) total += sq;
        if ((a - sq % a) % a == cb) total += sq;
      }
      const u64 c1 = (cb + bt) % a;
      const u64 c2 = (cb + a - bt) % a;
      for (u64 d1 : divs) {
        const u64 d2 = an / d1;
        if (d1 == d2 || ((d1 ^ d2) & 1)) continue;
        if (d1 % a == c1 && d2 % a == c2) total += 2 * (i128)std::min(d1, d2);
      }
    }
  }
  return Rat::from_i128(total, 4);
}

// Coefficient of the projected completed series along the progression:
// sum over both signs of beta and all m in that residue class of
// H(an - m^2), plus the exact correction term.
inline Rat holproj_coefficient(u64 a, u64 b, u64 beta, u64 n,
                               const HurwitzTable* table = nullptr) {
  if (a == 0) throw std::invalid_argument("holproj_coefficient: a must be positive");
  if ((mulmod(beta % a, beta % a, a) + b % a) % a != 0)
    throw std::invalid_argument("holproj_coefficient: beta^2 + b must vanish mod a");
  const u64 an = detail::checked_mul(a, n);
  const i64 r = static_cast<i64>(isqrt(an));
  i128 twelfths = 0;
  for (int e = 0; e < 2; ++e) {
    const i64 cb = static_cast<i64>(e ? (a - beta % a) % a : beta % a);
    i64 m = -r + static_cast<i64>((static_cast<u64>(cb + r)) % a);
    for (; m <= r; m += static_cast<i64>(a)) {
      const u64 N = an - static_cast<u64>(m * m);
      if (N % 4 == 1 || N % 4 == 2) continue;  // H vanishes; tables skip these
      twelfths += table ? table->twelfths(N) : fast_h(N);
    }
  }
  return Rat::from_i128(twelfths, 12) + eichler_part(a, b, beta, n);
}

// ---------------------------------------------------------------------------
// Quasi-modular fit for the level-one stream.
// ---------------------------------------------------------------------------

// Coefficient of q^n in E2(scale * tau): 1 at n = 0, -24 sigma_1(n / scale)
// when scale | n, zero otherwise.
inline Rat eisenstein2_coeff(u64 scale, u64 n) {
  if (n % scale != 0) return Rat(0);
  const u64 k = n / scale;
  if (k == 0) return Rat(1);
  return Rat(-24) * Rat(static_cast<i64>(sigma1(k)));
}

struct QuasiModularFit {
  Rat alpha, beta, gamma;  // weights of E2(tau), E2(2 tau), E2(4 tau)
  bool ok = false;         // every supplied coefficient matched exactly
  u64 n_verified = 0;      // indices beyond the three fitted ones that matched
  u64 first_fail = 0;      // first mismatching index when !ok
};

// Fits c(n) = alpha E2(tau) + beta E2(2 tau) + gamma E2(4 tau) on indices
// 0, 1, 2 and verifies the remaining entries of c exactly.
inline QuasiModularFit fit_quasi_modular(const std::vector<Rat>& c) {
  if (c.size() < 3)
    throw std::invalid_argument("fit_quasi_modular: need at least indices 0..2");
  QuasiModularFit fit;
  fit.alpha = c[1] / Rat(-24);
  fit.beta = (Rat(-72) * fit.alpha - c[2]) / Rat(24);
  fit.gamma = c[0] - fit.alpha - fit.beta;
  fit.ok = true;
  for (u64 n = 0; n < c.size(); ++n) {
    const Rat predicted = fit.alpha * eisenstein2_coeff(1, n) +
                          fit.beta * eisenstein2_coeff(2, n) +
                          fit.gamma * eisenstein2_coeff(4, n);
    if (predicted != c[n]) {
      if (fit.ok) fit.first_fail = n;
      fit.ok = false;
    } else if (n >= 3) {
      ++fit.n_verified;
    }
  }
  return fit;
}

// ---------------------------------------------------------------------------
// Auxiliary multiplier machinery.
// ---------------------------------------------------------------------------

// Prime-by-prime shape of a progression (a, b) with a chosen root beta:
// h(p) = v_p(a), k(p) = v_p(b).  Valid profiles have every k(p) even and
// h(p) > 2 k(p) for odd p, h(2) > 2 k(2) + 4.
struct ValuationProfile {
  u64 a = 1;
  u64 b = 0;
  u64 beta = 0;
  std::vector<u64> primes;  // support of a, ascending
  std::map<u64, int> h, k;
};

inline ValuationProfile make_valuation_profile(u64 a, u64 b, u64 beta) {
  if (a < 2) throw std::invalid_argument("make_valuation_profile: a must exceed 1");
  if (b == 0 || b >= a)
    throw std::invalid_argument("make_valuation_profile: need 1 <= b < a");
  if ((mulmod(beta % a, beta % a, a) + b) % a != 0)
    throw std::invalid_argument("make_valuation_profile: beta^2 + b must vanish mod a");
  ValuationProfile pr;
  pr.a = a;
  pr.b = b;
  pr.beta = beta % a;
  for (auto [p, e] : factor(a)) {
    pr.primes.push_back(p);
    pr.h[p] = e;
    const int kp = valuation(b, p);
    if (kp % 2 != 0)
      throw std::invalid_argument("make_valuation_profile: v_p(b) must be even");
    const int bound = (p == 2) ? 2 * kp + 4 : 2 * kp;
    if (e <= bound)
      throw std::invalid_argument("make_valuation_profile: a is too shallow for b at p");
    pr.k[p] = kp;
  }
  return pr;
}

// A choice of auxiliary primes q(p), one per support prime, together with
// the induced multiplier n_a and the two distinguished complementary
// divisors dq, dp of a * n_a.  When no admissible choice exists for the
// requested modulus, `satisfiable` is false and `reason` explains why.
struct LemmaSelection {
  u64 ell = 0;
  std::map<u64, u64> q;
  u64 n_a = 1;
  u64 dq = 1, dp = 1;
  bool satisfiable = true;
  std::string reason;
};

// Picks q(p) for each support prime in ascending order.  Each q(p) is a
// prime outside the support, distinct from ell and from earlier choices,
// satisfying
//   q(p) = 1 (mod p'^{h(p')}) for every other support prime p', and
//   q(p) = 2 beta / (p^{k/2} K_p) (mod p^{h - k/2 - [p = 2]}),
// where K_p = 2^{[2 | a]} * prod_{p' != p} p'^{k(p')/2}.  The last support
// prime additionally closes the system modulo ell so that dq + dp = 1
// (mod ell).  That closure can force ell | q(p); such systems have no
// admissible prime and are reported as unsatisfiable.
inline LemmaSelection select_lemma_parameters(const ValuationProfile& pr, u64 ell) {
  if (ell < 5 || !is_prime(ell))
    throw std::invalid_argument("select_lemma_parameters: modulus must be a prime >= 5");
  for (u64 p : pr.primes)
    if (p == ell)
      throw std::invalid_argument("select_lemma_parameters: modulus must not divide a");

  LemmaSelection sel;
  sel.ell = ell;
  const bool even_support = pr.h.count(2) != 0;

  u128 dp = even_support ? 4 : 1;
  for (u64 p : pr.primes) {
    const int e = pr.h.at(p) + pr.k.at(p) / 2;
    dp *= detail::ipow_checked(p, e);
    if (dp > (u128)1 << 62) throw std::overflow_error("select_lemma_parameters: dp too large");
  }
  sel.dp = static_cast<u64>(dp);

  for (size_t i = 0; i < pr.primes.size(); ++i) {
    const u64 p = pr.primes[i];
    const bool last = (i + 1 == pr.primes.size());
    const int h = pr.h.at(p), k = pr.k.at(p);

    // congruences q = 1 modulo the full power of every other support prime
    u64 r = 0, mod = 1;
    for (u64 p2 : pr.primes) {
      if (p2 == p) continue;
      const u64 m2 = detail::ipow_checked(p2, pr.h.at(p2));
      std::tie(r, mod) = crt(r, mod, 1 % m2, m2);
    }

    // anchor congruence at p itself
    const int drop = (p == 2) ? 1 : 0;
    const u64 anchor_mod = detail::ipow_checked(p, h - k / 2 - drop);
    const u64 pk_half = detail::ipow_checked(p, k / 2);
    if (pr.beta % pk_half != 0)
      throw std::logic_error("select_lemma_parameters: root valuation mismatch");
    const u64 beta_unit = (pr.beta / pk_half) % anchor_mod;
    u64 t;
    if (p == 2) {
      // the numerator 2 beta and the factor 2^{[2 | a]} of K_2 cancel,
      // leaving the odd cofactor of K_2 to invert
      u64 R = 1 % anchor_mod;
      for (u64 p2 : pr.primes) {
        if (p2 == 2) continue;
        R = mulmod(R, powmod(p2 % anchor_mod, pr.k.at(p2) / 2, anchor_mod), anchor_mod);
      }
      t = mulmod(beta_unit, inv_mod(R, anchor_mod), anchor_mod);
    } else {
      u64 K = (even_support ? 2 : 1) % anchor_mod;
      for (u64 p2 : pr.primes) {
        if (p2 == p) continue;
        K = mulmod(K, powmod(p2 % anchor_mod, pr.k.at(p2) / 2, anchor_mod), anchor_mod);
      }
      t = mulmod(mulmod(2, beta_unit, anchor_mod), inv_mod(K, anchor_mod), anchor_mod);
    }
    std::tie(r, mod) = crt(r, mod, t, anchor_mod);

    if (last) {
      // close the system: dq + dp = 1 (mod ell)
      u64 coeff = (even_support ? 2 : 1) % ell;
      for (u64 p2 : pr.primes)
        coeff = mulmod(coeff, powmod(p2 % ell, pr.k.at(p2) / 2, ell), ell);
      for (auto& [p2, q2] : sel.q) {
        (void)p2;
        coeff = mulmod(coeff, q2 % ell, ell);
      }
      const u64 rhs = (1 % ell + ell - sel.dp % ell) % ell;
      const u64 target = mulmod(rhs, inv_mod(coeff, ell), ell);
      if (target == 0) {
        sel.satisfiable = false;
        sel.reason = "closing congruence forces the modulus to divide q(" +
                     std::to_string(p) + ")";
        return sel;
      }
      std::tie(r, mod) = crt(r, mod, target, ell);
    }

    // smallest admissible prime in the class r (mod mod)
    u64 cand = (r == 0) ? mod : r;
    bool found = false;
    for (u64 step = 0; step < 200000; ++step, cand += mod) {
      if (cand == ell) continue;
      bool clash = false;
      for (u64 p2 : pr.primes) clash = clash || cand == p2;
      for (auto& [p2, q2] : sel.q) {
        (void)p2;
        clash = clash || cand == q2;
      }
      if (clash || !is_prime(cand)) continue;
      found = true;
      break;
    }
    if (!found) {
      sel.satisfiable = false;
      sel.reason = "no admissible prime found in the residue class for p = " +
                   std::to_string(p);
      return sel;
    }
    sel.q[p] = cand;
  }

  u128 na = even_support ? 8 : 1;
  u128 dq = even_support ? 2 : 1;
  for (u64 p : pr.primes) {
    na *= sel.q.at(p);
    na *= detail::ipow_checked(p, pr.k.at(p));
    dq *= sel.q.at(p);
    dq *= detail::ipow_checked(p, pr.k.at(p) / 2);
    if (na > (u128)1 << 62 || dq > (u128)1 << 62)
      throw std::overflow_error("select_lemma_parameters: multiplier too large");
  }
  sel.n_a = static_cast<u64>(na);
  sel.dq = static_cast<u64>(dq);

  if ((u128)sel.dq * sel.dp != (u128)pr.a * sel.n_a)
    throw std::logic_error("select_lemma_parameters: divisor pair does not multiply out");
  if ((sel.dq % ell + sel.dp % ell) % ell != 1 % ell)
    throw std::logic_error("select_lemma_parameters: closing congruence violated");
  return sel;
}

// Full congruence-constrained divisor-pair sum over a * n_a:
//   sum_{bt^2 = -b (a)} sum_{eps} sum_{a n_a = d1 d2,
//        d1 = eps beta + bt (a), d2 = eps beta - bt (a)} (d1 + d2).
// For an admissible selection this equals 2 (dq + dp), hence 2 mod ell.
inline u64 nonarch_sum(const ValuationProfile& pr, const LemmaSelection& sel) {
  const u64 a = pr.a;
  const u64 an = detail::checked_mul(a, sel.n_a);
  const auto roots = sqrts_mod(-static_cast<i64>(pr.b % a), a);
  const auto divs = divisors(an);
  u128 total = 0;
  for (u64 bt : roots) {
    for (int e = 0; e < 2; ++e) {
      const u64 cb = e ? (a - pr.beta % a) % a : pr.beta % a;
      const u64 c1 = (cb + bt) % a;
      const u64 c2 = (cb + a - bt) % a;
      for (u64 d1 : divs) {
        const u64 d2 = an / d1;
        if (d1 % a == c1 && d2 % a == c2) total += d1 + d2;
      }
    }
  }
  if (total > (u128)1 << 62) throw std::overflow_error("nonarch_sum: sum too large");
  return static_cast<u64>(total);
}

// Doubled sum of the small-side divisors: 2 * sum_{d | n, d^2 < n} d.
inline u64 archimedean_sum(u64 n) {
  if (n == 0) throw std::invalid_argument("archimedean_sum: n must be positive");
  u64 s = 0;
  for (u64 d : divisors(n))
    if ((u128)d * d < n) s += d;
  return 2 * s;
}

// ---------------------------------------------------------------------------
// Subprogression certificates.
// ---------------------------------------------------------------------------

struct SubprogressionCertificate {
  u64 base_a = 0, base_b = 0;  // the coarse progression refining into (a, b)
  u64 a = 0, b = 0, beta = 0;
  ValuationProfile profile;
};

// a must be a multiple of base_a with exactly the same prime support.
inline bool check_support(u64 base_a, u64 a) {
  if (base_a < 2 || a % base_a != 0) return false;
  const auto fs = factor(base_a);
  u64 rest = a;
  for (auto [p, e] : fs) {
    (void)e;
    while (rest % p == 0) rest /= p;
  }
  return rest == 1;
}

// For every support prime p and every split of the remaining support into
// two parts (low side contributing q^{k(q)}, high side q^{2h(q)} for odd p
// and q^{h(q)} for p = 2), the value -4b must avoid the single excluded
// residue modulo p^{h(p)}.
inline bool check_partition_obstruction(const ValuationProfile& pr) {
  for (u64 p : pr.primes) {
    const u64 modp = detail::ipow_checked(p, pr.h.at(p));
    const u64 m4b = (modp - (u128)4 * pr.b % modp) % modp;
    std::vector<u64> others;
    for (u64 p2 : pr.primes)
      if (p2 != p) others.push_back(p2);
    const u64 masks = u64(1) << others.size();
    for (u64 mask = 0; mask < masks; ++mask) {
      u64 rhs = (p == 2) ? powmod(2, pr.k.at(2) + 2, modp)
                         : powmod(p, pr.k.at(p), modp);
      for (size_t j = 0; j < others.size(); ++j) {
        const u64 q = others[j];
        const int e = (mask >> j & 1)
                          ? pr.k.at(q)
                          : (p == 2 ? pr.h.at(q) : 2 * pr.h.at(q));
        rhs = mulmod(rhs, powmod(q % modp, e, modp), modp);
      }
      if (m4b == rhs) return false;
    }
  }
  return true;
}

// Deterministic ascending search for a congruence-shaped refinement of the
// progression (base_a, base_b): the first (a, b) with a <= max_a such that
// a has the same support as base_a, b = base_b (mod base_a), the valuation
// profile is valid, -b is a square mod a, and the partition obstruction is
// avoided.  Returns nothing if the search space is exhausted.
inline std::optional<SubprogressionCertificate> build_subprogression(
    u64 base_a, u64 base_b, u64 max_a = u64(1) << 22) {
  if (base_a < 2 || base_b == 0 || base_b >= base_a)
    throw std::invalid_argument("build_subprogression: need 1 <= base_b < base_a");
  const auto fs = factor(base_a);

  std::vector<u64> candidates;
  std::function<void(size_t, u64)> gen = [&](size_t i, u64 acc) {
    if (i == fs.size()) {
      candidates.push_back(acc);
      return;
    }
    const u64 p = fs[i].first;
    const int e_min = (p == 2) ? std::max(fs[i].second, 5) : fs[i].second;
    u128 v = (u128)acc;
    for (int e = 0; e < e_min; ++e) v *= p;
    while (v <= max_a) {
      gen(i + 1, static_cast<u64>(v));
      v *= p;
    }
  };
  gen(0, 1);
  std::sort(candidates.begin(), candidates.end());

  for (u64 a : candidates) {
    for (u64 b = base_b; b < a; b += base_a) {
      bool shape_ok = true;
      for (auto [p, h] : factor(a)) {
        const int kp = valuation(b, p);
        const int bound = (p == 2) ? 2 * kp + 4 : 2 * kp;
        if (kp % 2 != 0 || h <= bound) {
          shape_ok = false;
          break;
        }
      }
      if (!shape_ok) continue;
      const auto roots = sqrts_mod(-static_cast<i64>(b), a);
      if (roots.empty()) continue;
      SubprogressionCertificate cert;
      cert.base_a = base_a;
      cert.base_b = base_b;
      cert.a = a;
      cert.b = b;
      cert.beta = roots.front();
      cert.profile = make_valuation_profile(a, b, cert.beta);
      if (!check_partition_obstruction(cert.profile)) continue;
      return cert;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Scale separation.
// ---------------------------------------------------------------------------

// The divisor scales of a * n_a * p * q must interleave:
//   p^2 > (a n_a) q > (a n_a)^2 p > (a n_a)^3.
inline bool separation_check(u64 a, u64 n_a, u64 p, u64 q) {
  const u128 an = (u128)a * n_a;
  const u128 c1l = (u128)p * p, c1r = an * q;
  const u128 c2r = an * an * p;
  const u128 c3r = an * an * an;
  return c1l > c1r && c1r > c2r && c2r > c3r;
}

// ---------------------------------------------------------------------------
// Projection-kernel quadrature.
// ---------------------------------------------------------------------------

namespace detail {

inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double fa, double fm, double fb,
                               double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

// Upper incomplete gamma at s = 1/2 and s = -1/2.
inline double upper_gamma_half(double x) {
  return std::sqrt(M_PI) * std::erfc(std::sqrt(x));
}

inline double upper_gamma_neg_half(double x) {
  return 2.0 * (std::exp(-x) / std::sqrt(x) - upper_gamma_half(x));
}

// Relative deviation of upper_gamma_neg_half(x) from the direct integral
// of t^{-3/2} e^{-t} over (x, infinity).
inline double gamma_kernel_check(double x) {
  const double direct = integrate(
      [](double t) { return std::pow(t, -1.5) * std::exp(-t); }, x, x + 70.0);
  const double closed = upper_gamma_neg_half(x);
  return std::fabs(direct - closed) / std::fabs(closed);
}

// Projection weight of the constant-kernel term: the normalized integral of
// y^{-1/2} e^{-4 pi n y} must come out to 2 pi sqrt(n).  Returns the
// relative deviation of the quadrature value from the closed form.
inline double quadrature_check_const(u64 n) {
  if (n == 0) throw std::invalid_argument("quadrature_check_const: n must be positive");
  const double nn = static_cast<double>(n);
  const double inner =
      2.0 * integrate([&](double u) { return std::exp(-4.0 * M_PI * nn * u * u); },
                      0.0, 1.0);
  const double outer = integrate(
      [&](double y) { return std::exp(-4.0 * M_PI * nn * y) / std::sqrt(y); }, 1.0,
      4.0);
  const double numeric = 4.0 * M_PI * nn * (inner + outer);
  const double closed = 2.0 * M_PI * std::sqrt(nn);
  return std::fabs(numeric - closed) / closed;
}

// Projection weight of the incomplete-gamma kernel: for nt < 0 < n + nt,
// the normalized integral of Gamma(-1/2, 4 pi |nt| y) e^{-4 pi (n + nt) y}
// must equal 2 sqrt(pi) (n + nt) / (sqrt(|nt|) (sqrt(n) + sqrt(|nt|))).
// Returns the relative deviation.
inline double quadrature_check_gamma(u64 n, i64 nt) {
  if (nt >= 0 || n <= static_cast<u64>(-nt))
    throw std::invalid_argument("quadrature_check_gamma: need nt < 0 < n + nt");
  const double nn = static_cast<double>(n);
  const double at = static_cast<double>(-nt);
  const double m = nn - at;
  const double B = 4.0 * M_PI * at;
  const auto g = [&](double y) {
    return upper_gamma_neg_half(B * y) * std::exp(-4.0 * M_PI * m * y);
  };
  const double inner = integrate(
      [&](double u) {
        if (u <= 0.0) return 4.0 / std::sqrt(B);
        return 2.0 * u * g(u * u);
      },
      0.0, 1.0);
  const double outer = integrate(g, 1.0, 6.0);
  const double numeric = 4.0 * M_PI * m * (inner + outer);
  const double closed =
      2.0 * std::sqrt(M_PI) * m / (std::sqrt(at) * (std::sqrt(nn) + std::sqrt(at)));
  return std::fabs(numeric - closed) / std::fabs(closed);
}

}  // namespace hwct
