#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "hwct/arith.hpp"
#include "hwct/rational.hpp"

using namespace hwct;

namespace {

// Independent Kronecker oracle: prime factorization + Euler's criterion.
int kronecker_oracle(i64 a, i64 n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int r = 1;
  if (n < 0) {
    if (a < 0) r = -r;
    n = -n;
  }
  for (auto [p, e] : factor(static_cast<u64>(n))) {
    int s;
    if (p == 2) {
      i64 m8 = ((a % 8) + 8) % 8;
      s = (m8 % 2 == 0) ? 0 : ((m8 == 1 || m8 == 7) ? 1 : -1);
    } else {
      i64 am = ((a % static_cast<i64>(p)) + static_cast<i64>(p)) % static_cast<i64>(p);
      if (am == 0)
        s = 0;
      else {
        u64 t = powmod(static_cast<u64>(am), (p - 1) / 2, p);
        s = t == 1 ? 1 : -1;
      }
    }
    if (s == 0) return 0;
    if (e % 2 == 1 && s == -1) r = -r;
  }
  return r;
}

bool is_prime_slow(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<u64> sqrts_mod_slow(i64 x, u64 m) {
  u64 xr = static_cast<u64>(((x % static_cast<i64>(m)) + static_cast<i64>(m)) % static_cast<i64>(m));
  std::vector<u64> out;
  for (u64 y = 0; y < m; ++y)
    if (mulmod(y, y, m) == xr) out.push_back(y);
  return out;
}

}  // namespace

TEST_CASE("isqrt exact on edge cases") {
  CHECK(isqrt(0) == 0);
  CHECK(isqrt(1) == 1);
  CHECK(isqrt(3) == 1);
  CHECK(isqrt(4) == 2);
  CHECK(isqrt(99) == 9);
  CHECK(isqrt(100) == 10);
  for (u64 r : {1000000000ull, 3037000499ull}) {
    CHECK(isqrt(r * r) == r);
    CHECK(isqrt(r * r - 1) == r - 1);
    CHECK(isqrt(r * r + 1) == r);
  }
  u64 root = 0;
  CHECK(is_square(144, &root));
  CHECK(root == 12);
  CHECK_FALSE(is_square(145));
}

TEST_CASE("kronecker: pinned values") {
  // (-4 | p) is the non-trivial character mod 4.
  CHECK(kronecker(-4, 5) == 1);
  CHECK(kronecker(-4, 13) == 1);
  CHECK(kronecker(-4, 3) == -1);
  CHECK(kronecker(-4, 7) == -1);
  CHECK(kronecker(-4, 2) == 0);
  // (-3 | p) is the character mod 3.
  CHECK(kronecker(-3, 7) == 1);
  CHECK(kronecker(-3, 5) == -1);
  CHECK(kronecker(-3, 2) == -1);
  CHECK(kronecker(-3, 3) == 0);
  // Values at n = 2 read off a mod 8.
  CHECK(kronecker(3, 2) == -1);
  CHECK(kronecker(7, 2) == 1);
  CHECK(kronecker(17, 2) == 1);
  CHECK(kronecker(-1, -1) == -1);
  CHECK(kronecker(1, 0) == 1);
  CHECK(kronecker(2, 0) == 0);
  CHECK(kronecker(0, 1) == 1);
  CHECK(kronecker(0, 7) == 0);
  CHECK(kronecker(5, 5) == 0);
}

TEST_CASE("kronecker matches factorization oracle") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 4000; ++trial) {
    i64 a = static_cast<i64>(rng() % 4001) - 2000;
    i64 n = static_cast<i64>(rng() % 4001) - 2000;
    if (n == 0) n = 1;
    CAPTURE(a, n);
    REQUIRE(kronecker(a, n) == kronecker_oracle(a, n));
  }
}

TEST_CASE("kronecker multiplicativity and periodicity") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 2000; ++trial) {
    i64 a = static_cast<i64>(rng() % 1000) - 500;
    i64 b = static_cast<i64>(rng() % 1000) - 500;
    i64 n = 2 * static_cast<i64>(rng() % 500) + 1;  // odd > 0
    CHECK(kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n));
    CHECK(kronecker(a, n) == kronecker(a + 4 * n, n));
  }
}

TEST_CASE("is_prime agrees with trial division below 20000") {
  for (u64 n = 0; n < 20000; ++n) {
    CAPTURE(n);
    REQUIRE(is_prime(n) == is_prime_slow(n));
  }
}

TEST_CASE("is_prime on selected large inputs") {
  CHECK(is_prime(2147483647ull));            // 2^31 - 1
  CHECK(is_prime(1000000007ull));
  CHECK(is_prime(1000000000000000003ull));
  CHECK_FALSE(is_prime(561));                // Carmichael
  CHECK_FALSE(is_prime(3215031751ull));      // strong pseudoprime to bases 2,3,5,7
  CHECK_FALSE(is_prime(1000000016000000063ull));  // (10^9+7)*(10^9+9)
}

TEST_CASE("factor round-trips and yields primes") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    u64 n = rng() % 1000000000000ull + 2;
    auto fs = factor(n);
    u64 prod = 1;
    u64 last = 0;
    for (auto [p, e] : fs) {
      CHECK(is_prime(p));
      CHECK(p > last);
      last = p;
      for (int i = 0; i < e; ++i) prod *= p;
    }
    CHECK(prod == n);
  }
  auto f = factor(2ull * 2 * 3 * 3 * 3 * 7 * 11 * 11);
  using PE = std::pair<u64, int>;
  REQUIRE(f.size() == 4);
  CHECK(f[0] == PE{2, 2});
  CHECK(f[1] == PE{3, 3});
  CHECK(f[2] == PE{7, 1});
  CHECK(f[3] == PE{11, 2});
}

TEST_CASE("divisors and sigma1") {
  CHECK(divisors(1) == std::vector<u64>{1});
  CHECK(divisors(12) == std::vector<u64>{1, 2, 3, 4, 6, 12});
  CHECK(divisors(49) == std::vector<u64>{1, 7, 49});
  for (u64 n = 1; n <= 2000; ++n) {
    u64 s = 0;
    for (u64 d = 1; d <= n; ++d)
      if (n % d == 0) s += d;
    CAPTURE(n);
    REQUIRE(sigma1(n) == s);
  }
  CHECK(valuation(48, 2) == 4);
  CHECK(valuation(48, 3) == 1);
  CHECK(valuation(48, 5) == 0);
}

TEST_CASE("SpfSieve factors agree with factor()") {
  SpfSieve sieve(10000);
  for (u64 n = 2; n <= 10000; n += 37) CHECK(sieve.factor(n) == factor(n));
  CHECK(sieve.factor(9973) == factor(9973));
}

TEST_CASE("inv_mod and crt") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 500; ++trial) {
    u64 m = rng() % 100000 + 2;
    u64 a = rng() % m;
    if (std::gcd(a, m) != 1) continue;
    CHECK(mulmod(a, inv_mod(a, m), m) == 1);
  }
  auto [r, m] = crt(2, 5, 3, 7);
  CHECK(m == 35);
  CHECK(r % 5 == 2);
  CHECK(r % 7 == 3);
  auto [r2, m2] = crt(7, 32, 5, 9);
  CHECK(m2 == 288);
  CHECK(r2 % 32 == 7);
  CHECK(r2 % 9 == 5);
}

TEST_CASE("sqrts_mod exhaustive against brute force, m <= 300") {
  for (u64 m = 1; m <= 300; ++m) {
    for (u64 x = 0; x < m; ++x) {
      CAPTURE(m, x);
      REQUIRE(sqrts_mod(static_cast<i64>(x), m) == sqrts_mod_slow(static_cast<i64>(x), m));
    }
  }
}

TEST_CASE("sqrts_mod on larger structured moduli") {
  std::mt19937_64 rng(31337);
  std::vector<u64> moduli = {1024, 2048, 3125, 2401, 1331, 175, 1152, 86528, 59049};
  for (u64 m : moduli) {
    for (int trial = 0; trial < 40; ++trial) {
      i64 x = static_cast<i64>(rng() % m);
      auto fast = sqrts_mod(x, m);
      auto slow = sqrts_mod_slow(x, m);
      CAPTURE(m, x);
      REQUIRE(fast == slow);
    }
  }
  // Negative inputs reduce mod m.
  CHECK(sqrts_mod(-4, 25) == sqrts_mod(21, 25));
  CHECK(is_square_mod(-4, 5));
  CHECK_FALSE(is_square_mod(-1, 7));
}

TEST_CASE("fundamental_decomposition splits off the square part") {
  using UU = std::pair<u64, u64>;
  CHECK(fundamental_decomposition(3) == UU{3, 1});
  CHECK(fundamental_decomposition(4) == UU{4, 1});
  CHECK(fundamental_decomposition(12) == UU{3, 2});
  CHECK(fundamental_decomposition(16) == UU{4, 2});
  CHECK(fundamental_decomposition(27) == UU{3, 3});
  CHECK(fundamental_decomposition(32) == UU{8, 2});
  CHECK(fundamental_decomposition(100) == UU{4, 5});
  CHECK(fundamental_decomposition(75) == UU{3, 5});
  CHECK_THROWS(fundamental_decomposition(0));
  CHECK_THROWS(fundamental_decomposition(5));
  CHECK_THROWS(fundamental_decomposition(6));
  for (u64 N = 3; N <= 10000; ++N) {
    if (N % 4 == 1 || N % 4 == 2) continue;
    auto [D, f] = fundamental_decomposition(N);
    CAPTURE(N);
    REQUIRE(D * f * f == N);
    // D must itself be a fundamental discriminant magnitude.
    if (D % 4 == 3) {
      for (auto [p, e] : factor(D)) REQUIRE(e == 1);
    } else {
      REQUIRE(D % 4 == 0);
      u64 m = D / 4;
      REQUIRE((m % 4 == 1 || m % 4 == 2));
      for (auto [p, e] : factor(m)) REQUIRE(e == 1);
    }
  }
}

TEST_CASE("rational arithmetic") {
  Rat a(1, 2), b(1, 3);
  CHECK((a + b) == Rat(5, 6));
  CHECK((a - b) == Rat(1, 6));
  CHECK((a * b) == Rat(1, 6));
  CHECK((a / b) == Rat(3, 2));
  CHECK(Rat(4, 8) == Rat(1, 2));
  CHECK(Rat(-4, 8) == Rat(1, -2));
  CHECK(Rat(-4, 8).str() == "-1/2");
  CHECK(Rat(6, 3).str() == "2");
  CHECK((-Rat(1, 3)).num == -1);
  CHECK(Rat(1, 3) < Rat(1, 2));
  CHECK_THROWS(Rat(1, 0));
  CHECK_THROWS(Rat(1, 3) / Rat(0));
}
