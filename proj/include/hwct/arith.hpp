#pragma once
// Integer / modular arithmetic utilities shared by the rest of the library:
// Kronecker symbol, deterministic 64-bit primality, Pollard rho factorization,
// square roots modulo arbitrary moduli, fundamental discriminant splitting.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hwct {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

inline u64 isqrt(u64 n) {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline bool is_square(u64 n, u64* root = nullptr) {
  u64 r = isqrt(n);
  if (root) *root = r;
  return r * r == n;
}

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

// Extended gcd: returns g = gcd(a,b) and x,y with a*x + b*y = g.
inline i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  i64 x1, y1;
  i64 g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

inline u64 inv_mod(u64 a, u64 m) {
  i64 x, y;
  i64 g = ext_gcd(static_cast<i64>(a % m), static_cast<i64>(m), x, y);
  if (g != 1 && g != -1) throw std::domain_error("inv_mod: arguments not coprime");
  i64 r = x % static_cast<i64>(m);
  if (r < 0) r += static_cast<i64>(m);
  return static_cast<u64>(r);
}

// Combine r1 mod m1 with r2 mod m2 for coprime m1, m2.
inline std::pair<u64, u64> crt(u64 r1, u64 m1, u64 r2, u64 m2) {
  u64 inv = inv_mod(m1 % m2, m2);
  u64 diff = (r2 + m2 - r1 % m2) % m2;
  u64 t = mulmod(diff, inv, m2);
  return {r1 + m1 * t, m1 * m2};
}

// Kronecker symbol (a|n), defined for all integer pairs.
inline int kronecker(i64 a, i64 n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int v = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++v;
  }
  if (v > 0) {
    if ((a & 1) == 0) return 0;
    if (v & 1) {
      int m8 = static_cast<int>(((a % 8) + 8) % 8);
      if (m8 == 3 || m8 == 5) result = -result;
    }
  }
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      i64 m8 = n % 8;
      if (m8 == 3 || m8 == 5) result = -result;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {
inline u64 pollard_rho(u64 n) {
  if ((n & 1) == 0) return 2;
  u64 x = 2, y = 2, c = 1, d = 1;
  auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
  while (true) {
    x = 2;
    y = 2;
    d = 1;
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
    ++c;
  }
}

inline void factor_rec(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}
}  // namespace detail

// Prime factorization as sorted (prime, exponent) pairs.
inline std::vector<std::pair<u64, int>> factor(u64 n) {
  std::vector<u64> primes;
  u64 m = n;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull}) {
    while (m % p == 0) {
      primes.push_back(p);
      m /= p;
    }
  }
  detail::factor_rec(m, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<u64, int>> out;
  for (u64 p : primes) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.push_back({p, 1});
  }
  return out;
}

inline std::vector<u64> divisors(u64 n) {
  std::vector<u64> divs{1};
  for (auto [p, e] : factor(n)) {
    size_t sz = divs.size();
    u64 pe = 1;
    for (int i = 1; i <= e; ++i) {
      pe *= p;
      for (size_t j = 0; j < sz; ++j) divs.push_back(divs[j] * pe);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

inline u64 sigma1(u64 n) {
  u64 s = 1;
  for (auto [p, e] : factor(n)) {
    u64 term = 1, pe = 1;
    for (int i = 0; i < e; ++i) {
      pe *= p;
      term += pe;
    }
    s *= term;
  }
  return s;
}

inline int valuation(u64 n, u64 p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

// Smallest-prime-factor sieve for bulk factorization of small integers.
class SpfSieve {
 public:
  explicit SpfSieve(u64 limit) : spf_(limit + 1, 0) {
    for (u64 i = 2; i <= limit; ++i) {
      if (spf_[i] == 0) {
        for (u64 j = i; j <= limit; j += i)
          if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
      }
    }
  }
  u64 limit() const { return spf_.size() - 1; }
  std::vector<std::pair<u64, int>> factor(u64 n) const {
    std::vector<std::pair<u64, int>> out;
    while (n > 1) {
      u64 p = spf_[n];
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.push_back({p, e});
    }
    return out;
  }

 private:
  std::vector<std::uint32_t> spf_;
};

namespace detail {
// Tonelli-Shanks: square root of a modulo odd prime p, assuming (a|p) = 1.
inline u64 sqrt_mod_prime(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
  u64 q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  u64 z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  u64 m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    u64 t2 = t;
    u64 i = 0;
    while (t2 != 1) {
      t2 = mulmod(t2, t2, p);
      ++i;
    }
    u64 b = powmod(c, 1ull << (m - i - 1), p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

// All square roots of a unit u modulo p^k, odd prime p.
inline std::vector<u64> unit_sqrts_odd(u64 u, u64 p, int k) {
  u64 pk = 1;
  for (int i = 0; i < k; ++i) pk *= p;
  u %= pk;
  if (kronecker(static_cast<i64>(u % p), static_cast<i64>(p)) != 1) return {};
  u64 r = sqrt_mod_prime(u % p, p);
  u64 pj = p;
  for (int j = 1; j < k; ++j) {
    // Hensel: lift r from mod p^j to mod p^{j+1}.
    u64 pj1 = pj * p;
    u64 rr = mulmod(r, r, pj1);
    u64 diff = (u % pj1 + pj1 - rr) % pj1;
    u64 t = mulmod(diff / pj, inv_mod(2 * r % p, p), p);
    r = (r + t * pj) % pj1;
    pj = pj1;
  }
  return {r, pk - r};
}

// All square roots of an odd residue u modulo 2^k.
inline std::vector<u64> unit_sqrts_two(u64 u, int k) {
  u64 pk = 1ull << k;
  u %= pk;
  if (k == 1) return {1};
  if (k == 2) return u % 4 == 1 ? std::vector<u64>{1, 3} : std::vector<u64>{};
  if (u % 8 != 1) return {};
  u64 r = 1;
  for (int j = 3; j < k; ++j) {
    // Exactly one of r, r + 2^{j-1} satisfies the congruence mod 2^{j+1}.
    u64 mod = 1ull << (j + 1);
    if (mulmod(r, r, mod) != u % mod) r += 1ull << (j - 1);
  }
  u64 half = pk >> 1;
  std::vector<u64> roots{r, pk - r, (r + half) % pk, (pk - r + half) % pk};
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

// All square roots of x modulo p^k (x arbitrary, possibly divisible by p).
inline std::vector<u64> sqrts_mod_prime_power(u64 x, u64 p, int k) {
  u64 pk = 1;
  for (int i = 0; i < k; ++i) pk *= p;
  x %= pk;
  if (x == 0) {
    // y^2 = 0 mod p^k  <=>  p^ceil(k/2) | y.
    u64 step = 1;
    for (int i = 0; i < (k + 1) / 2; ++i) step *= p;
    std::vector<u64> roots;
    for (u64 y = 0; y < pk; y += step) roots.push_back(y);
    return roots;
  }
  int v = 0;
  u64 u = x;
  while (u % p == 0) {
    u /= p;
    ++v;
  }
  if (v & 1) return {};
  // y = p^{v/2} z with z^2 = u mod p^{k-v}; y then ranges over p^{v/2} z + j p^{k-v/2}.
  std::vector<u64> zs = (p == 2) ? unit_sqrts_two(u, k - v) : unit_sqrts_odd(u, p, k - v);
  if (zs.empty()) return {};
  u64 ph = 1;
  for (int i = 0; i < v / 2; ++i) ph *= p;
  u64 stride = pk / ph;  // p^{k - v/2}
  std::vector<u64> roots;
  for (u64 z : zs)
    for (u64 y = ph * z; y < pk; y += stride) roots.push_back(y % pk);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}
}  // namespace detail

// All y in [0, m) with y^2 = x (mod m), sorted ascending.
inline std::vector<u64> sqrts_mod(i64 x, u64 m) {
  if (m == 0) throw std::domain_error("sqrts_mod: modulus must be positive");
  if (m == 1) return {0};
  u64 xr = static_cast<u64>(((x % static_cast<i64>(m)) + static_cast<i64>(m)) % static_cast<i64>(m));
  std::vector<u64> roots{0};
  u64 mod = 1;
  for (auto [p, e] : factor(m)) {
    u64 pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    auto local = detail::sqrts_mod_prime_power(xr % pe, p, e);
    if (local.empty()) return {};
    std::vector<u64> next;
    next.reserve(roots.size() * local.size());
    for (u64 r : roots)
      for (u64 s : local) next.push_back(crt(r, mod, s, pe).first);
    roots = std::move(next);
    mod *= pe;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

inline bool is_square_mod(i64 x, u64 m) { return !sqrts_mod(x, m).empty(); }

// Write -N = D0 * f^2 with D0 a (negative) fundamental discriminant; returns (|D0|, f).
// Requires N > 0 and N = 0 or 3 (mod 4).
inline std::pair<u64, u64> fundamental_decomposition(u64 N) {
  if (N == 0 || (N % 4 == 1 || N % 4 == 2))
    throw std::domain_error("fundamental_decomposition: need N > 0, N = 0,3 (mod 4)");
  u64 d = 1, f = 1;
  for (auto [p, e] : factor(N)) {
    if (e & 1) d *= p;
    for (int i = 0; i < e / 2; ++i) f *= p;
  }
  if (d % 4 == 3) return {d, f};
  return {4 * d, f / 2};
}

}  // namespace hwct
