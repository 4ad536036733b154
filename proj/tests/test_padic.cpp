#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ltk/padic.hpp"
#include "ltk/rng.hpp"

using namespace ltk;
using namespace ltk::padic;

namespace {

// Oracles below recompute expected values with plain integer arithmetic,
// independent of the PAdicInt code paths.

uint64_t oracle_pow(uint64_t p, uint32_t n) {
  uint64_t m = 1;
  for (uint32_t i = 0; i < n; ++i) m *= p;
  return m;
}

uint32_t oracle_val(uint64_t n, uint64_t p) {
  uint32_t v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

uint64_t oracle_powmod(uint64_t b, uint64_t e, uint64_t m) {
  uint64_t acc = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) acc = (unsigned __int128)acc * b % m;
    b = (unsigned __int128)b * b % m;
    e >>= 1;
  }
  return acc;
}

uint64_t oracle_inv(uint64_t a, uint64_t p, uint64_t mod) {
  // lift the Fermat inverse by brute force: a * x == 1 (mod mod)
  uint64_t x = oracle_powmod(a % p, p - 2, p);
  for (int i = 0; i < 8; ++i) {
    uint64_t ax = (unsigned __int128)a * x % mod;
    x = (unsigned __int128)x * ((2 + mod - ax) % mod) % mod;
  }
  return x;
}

// Teichmuller by the defining fixpoint iteration x -> x^p.
uint64_t oracle_teich(uint64_t a, uint64_t p, uint32_t N) {
  uint64_t mod = oracle_pow(p, N);
  uint64_t t = a % mod;
  for (uint32_t i = 0; i <= N + 2; ++i) t = oracle_powmod(t, p, mod);
  return t;
}

// Exact-rational partial sums of log(1+x) mod p^N for small x = p*u: x^k is
// held exactly in 128 bits, p^v(k) divided out exactly, unit part inverted.
uint64_t oracle_log1p(uint64_t x, uint64_t p, uint32_t N) {
  uint64_t mod = oracle_pow(p, N);
  uint64_t sum = 0;
  unsigned __int128 xk = 1;
  for (uint64_t k = 1;; ++k) {
    uint32_t logk = 0;
    for (uint64_t kk = k; kk >= p; kk /= p) ++logk;
    if (k >= N + logk) break;  // v(x^k/k) >= k - log_p(k) >= N from here on
    xk *= x;
    unsigned __int128 num = xk;
    uint64_t ku = k;
    while (ku % p == 0) {
      ku /= p;
      num /= p;
    }
    uint64_t term = (unsigned __int128)(num % mod) * oracle_inv(ku, p, mod) % mod;
    sum = (k % 2 == 1) ? (sum + term) % mod : (sum + mod - term) % mod;
  }
  return sum;
}

PAdicInt rnd_val(SplitMix64& g, uint64_t p, uint32_t N) {
  return PAdicInt::from_residue(p, N, g.below(oracle_pow(p, N)));
}

}  // namespace

TEST_CASE("valuation matches repeated-division oracle") {
  PAdicInt a = PAdicInt::from_int(5, 6, 250);
  auto v = a.valuation();
  CHECK(!v.inf);
  CHECK(v.v == oracle_val(250, 5));

  PAdicInt z = PAdicInt::from_int(5, 6, 0);
  CHECK(z.valuation().inf);

  SplitMix64 g(11);
  for (int t = 0; t < 300; ++t) {
    uint64_t p = (t % 2) ? 5 : 7;
    uint64_t r = g.below(oracle_pow(p, 8));
    PAdicInt x = PAdicInt::from_residue(p, 8, r);
    auto vx = x.valuation();
    if (r == 0)
      CHECK(vx.inf);
    else
      CHECK(vx.v == oracle_val(r, p));
  }
}

TEST_CASE("ring axioms, 500 random triples") {
  SplitMix64 g(22);
  const uint64_t primes[] = {3, 5, 7, 13};
  for (int t = 0; t < 500; ++t) {
    uint64_t p = primes[t % 4];
    uint32_t N = 4 + (uint32_t)g.below(6);
    PAdicInt a = rnd_val(g, p, N), b = rnd_val(g, p, N), c = rnd_val(g, p, N);
    CHECK(agree((a + b) + c, a + (b + c)).full());
    CHECK(agree(a * (b * c), (a * b) * c).full());
    CHECK(agree(a * (b + c), a * b + a * c).full());
    CHECK(agree(a + b, b + a).full());
    CHECK(agree(a * b, b * a).full());
    CHECK(agree(a - a, zero_of(a)).full());
    CHECK(agree(a * one_of(a), a).full());
  }
}

TEST_CASE("mixed precision resolves to the minimum; sharp product precision") {
  PAdicInt a = PAdicInt::from_int(5, 8, 12341);
  PAdicInt b = PAdicInt::from_int(5, 5, 7);
  CHECK((a + b).precision() == 5);
  CHECK((a - b).precision() == 5);
  CHECK((a * b).precision() == 5);  // both units

  // p5 is 5 + O(5^8), not the exact 5: the unit factor a caps the product at 8
  // digits; exact shifts go through mul_pow_p, which does gain a digit.
  PAdicInt p5 = PAdicInt::from_int(5, 8, 5);
  CHECK((a * p5).precision() == 8);
  CHECK(mul_pow_p(b, 3).precision() == 8);
  CHECK(mul_pow_p(a, 2).precision() == 10);

  CHECK_THROWS_AS(a.truncated(9), std::invalid_argument);
  CHECK(a.truncated(3).precision() == 3);
}

TEST_CASE("mixed primes are rejected") {
  PAdicInt a = PAdicInt::from_int(5, 4, 1);
  PAdicInt b = PAdicInt::from_int(7, 4, 1);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
  CHECK_THROWS_AS(a * b, std::invalid_argument);
  CHECK_THROWS_AS(PAdicInt::from_int(4, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(PAdicInt::from_int(2, 3, 1), std::invalid_argument);
}

TEST_CASE("unit inverse") {
  SplitMix64 g(33);
  for (int t = 0; t < 200; ++t) {
    uint64_t p = (t % 2) ? 3 : 7;
    uint32_t N = 3 + (uint32_t)g.below(8);
    PAdicInt a = rnd_val(g, p, N);
    if (!a.is_unit()) continue;
    CHECK(agree(a * unit_inverse(a), one_of(a)).full());
  }
  PAdicInt nonunit = PAdicInt::from_int(5, 4, 10);
  CHECK_THROWS_AS(unit_inverse(nonunit), std::invalid_argument);
}

TEST_CASE("exact division by powers of p") {
  PAdicInt a = PAdicInt::from_int(5, 7, 250);  // 2 * 5^3
  PAdicInt q = exact_div_p(a, 3);
  CHECK(q.precision() == 4);
  CHECK(q.residue() == 2);
  CHECK_THROWS_AS(exact_div_p(PAdicInt::from_int(5, 7, 7), 1), precision_error);
  CHECK_THROWS_AS(exact_div_p(a, 7), precision_error);

  PAdicInt b = PAdicInt::from_int(5, 7, 75);  // 3 * 5^2
  PAdicInt r = exact_div(a, b);               // 250/75 = 10/3
  CHECK(agree(r * b, a.truncated(r.precision())).full());
}

TEST_CASE("teichmuller: fixpoint oracle, p=5 N=4 seed 2") {
  PAdicInt a = PAdicInt::from_int(5, 4, 2);
  PAdicInt w = teichmuller(a);
  CHECK(w.residue() == oracle_teich(2, 5, 4));
  CHECK(agree(pow_int(w, 5), w).full());      // fixpoint of x -> x^p
  CHECK(w.residue() % 5 == 2);                // congruent to the seed mod p
  CHECK(agree(pow_int(w, 4), one_of(w)).full());

  SplitMix64 g(44);
  for (int t = 0; t < 100; ++t) {
    uint64_t p = (t % 2) ? 7 : 13;
    uint32_t N = 3 + (uint32_t)g.below(5);
    PAdicInt x = rnd_val(g, p, N), y = rnd_val(g, p, N);
    if (!x.is_unit() || !y.is_unit()) continue;
    CHECK(agree(teichmuller(x * y), teichmuller(x) * teichmuller(y)).full());
  }
}

TEST_CASE("log1p: exact-rational oracle at p=5 N=6, then properties") {
  PAdicInt x = PAdicInt::from_int(5, 6, 5);
  PAdicInt l = log1p(x);
  CHECK(l.residue() % pow_p(5, l.precision()) ==
        oracle_log1p(5, 5, 6) % pow_p(5, l.precision()));

  CHECK_THROWS_AS(log1p(PAdicInt::from_int(5, 6, 2)), std::invalid_argument);
  CHECK_THROWS_AS(exp_p(PAdicInt::from_int(5, 6, 2)), std::invalid_argument);

  SplitMix64 g(55);
  for (int t = 0; t < 120; ++t) {
    uint64_t p = (t % 3 == 0) ? 3 : ((t % 3 == 1) ? 5 : 7);
    uint32_t N = 6 + (uint32_t)g.below(5);
    PAdicInt u = mul_pow_p(rnd_val(g, p, N - 1), 1);
    PAdicInt v = mul_pow_p(rnd_val(g, p, N - 1), 1);
    // log turns the 1-unit product into a sum
    PAdicInt lhs = log1p(u + v + u * v);
    PAdicInt rhs = log1p(u) + log1p(v);
    CHECK(agree(lhs, rhs).full());
    // round trips
    CHECK(agree(log1p(exp_p(u) - one_of(u)), u).full());
    CHECK(agree(exp_p(log1p(u)), one_of(u) + u).full());
    // exp additivity
    CHECK(agree(exp_p(u + v), exp_p(u) * exp_p(v)).full());
  }
}

TEST_CASE("valuation additivity under product") {
  SplitMix64 g(66);
  for (int t = 0; t < 200; ++t) {
    uint64_t p = 5;
    uint32_t N = 10;
    PAdicInt a = rnd_val(g, p, N), b = rnd_val(g, p, N);
    auto va = a.valuation(), vb = b.valuation();
    if (va.inf || vb.inf) continue;
    auto vab = (a * b).valuation();
    CHECK(!vab.inf);
    CHECK(vab.v == va.v + vb.v);
  }
}

TEST_CASE("fractions: arithmetic, integrality certificate, inverse") {
  PAdicInt proto = PAdicInt::from_int(5, 8, 0);
  PAdicFrac half = frac_of(proto, 1, 0) * inverse(frac_of(proto, 2, 0));
  PAdicFrac third_of_five = frac_of(proto, 1, 1);  // 1/5
  CHECK(!is_integral(third_of_five));
  CHECK(is_integral(frac_of(proto, 25, 1)));
  CHECK(reduce_integral(frac_of(proto, 25, 1)).residue() == 5);

  PAdicFrac s = third_of_five + frac_of(proto, 4, 1);  // 1/5 + 4/5 = 1
  CHECK(is_integral(s));
  CHECK(reduce_integral(s).residue() == 1);

  PAdicFrac prod = third_of_five * frac_of(proto, 10, 0);  // (1/5)*10 = 2
  CHECK(is_integral(prod));
  CHECK(reduce_integral(prod).residue() == 2);

  PAdicFrac inv = inverse(third_of_five);  // 5
  CHECK(is_integral(inv));
  CHECK(reduce_integral(inv).residue() == 5);

  CHECK(agree(half + half, frac_of(proto, 1, 0)).full());

  auto v = valuation(third_of_five);
  CHECK(!v.inf);
  CHECK(v.v == -1);
  CHECK_THROWS_AS(reduce_integral(frac_of(proto, 7, 1)), precision_error);
}
