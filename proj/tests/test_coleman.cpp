#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ltk/coleman.hpp"
#include "ltk/localfield.hpp"
#include "ltk/lubin_tate.hpp"
#include "ltk/padic.hpp"
#include "ltk/rng.hpp"
#include "ltk/series.hpp"

using ltk::padic::PAdicFrac;
using ltk::padic::PAdicInt;
namespace cl = ltk::coleman;
namespace lf = ltk::localfield;
namespace lt = ltk::lubin_tate;
namespace sr = ltk::series;

namespace {

using IntSeries1 = sr::Series1<PAdicInt>;
using FracSeries1 = sr::Series1<PAdicFrac>;

IntSeries1 rnd_unit_series(ltk::SplitMix64& rng, const PAdicInt& proto, uint32_t cap) {
  IntSeries1 s(proto, cap);
  uint64_t p = proto.prime();
  s.set(0, ltk::padic::int_of(proto, static_cast<int64_t>(1 + rng.below(p - 1))));
  for (uint32_t i = 1; i <= cap; ++i)
    s.set(i, ltk::padic::PAdicInt::from_residue(static_cast<uint32_t>(proto.prime()),
                                                proto.precision(), rng.next()));
  return s;
}

// Unit polynomial of bounded degree; the tail above deg is exactly zero, so
// norm identities hold with no truncation defect.
IntSeries1 rnd_unit_poly(ltk::SplitMix64& rng, const PAdicInt& proto, uint32_t deg,
                         uint32_t cap) {
  IntSeries1 s(proto, cap);
  uint64_t p = proto.prime();
  s.set(0, ltk::padic::int_of(proto, static_cast<int64_t>(1 + rng.below(p - 1))));
  for (uint32_t i = 1; i <= deg; ++i)
    s.set(i, ltk::padic::PAdicInt::from_residue(static_cast<uint32_t>(proto.prime()),
                                                proto.precision(), rng.next()));
  return s;
}

FracSeries1 to_frac(const IntSeries1& s) {
  return sr::map_coeffs(s, [](const PAdicInt& c) { return PAdicFrac(c, 0); });
}

}  // namespace

TEST_CASE("pi-torsion points are exact roots of unity shifts") {
  for (uint32_t p : {3u, 5u}) {
    cl::ColemanData data = cl::make_cyclotomic(p, 10, 16, 2, 1);
    std::vector<lf::Elem> tors = cl::pi_torsion(data.G, data.tower);
    REQUIRE(tors.size() == p);
    CHECK(tors[0].is_zero());
    lf::RingPtr r1 = data.tower.rings[0];
    lf::Elem one = lf::one(r1);
    lf::Elem sum = lf::zero(r1);
    lf::Elem prod = one;
    for (uint32_t u = 1; u < p; ++u) {
      const lf::Elem& t = tors[u];
      CHECK(!t.is_zero());
      // 1 + t is an exact p-th root of unity at full ring precision.
      CHECK(lf::agree(lf::pow_elem(one + t, p), one).full());
      // Index labeling: the root at slot u is congruent to u * w_1.
      auto vd = lf::valuation(t - lf::from_int(r1, static_cast<int64_t>(u)) *
                                      data.tower.gens[0]);
      CHECK((vd.inf || vd.v >= 2));
      sum = sum + t;
      prod = prod * t;
    }
    // Root sum and product match the modulus coefficients of (f/Z).
    CHECK(lf::agree(sum, lf::from_int(r1, -static_cast<int64_t>(p))).full());
    CHECK(lf::agree(prod, lf::from_int(r1, static_cast<int64_t>(p))).full());
  }
}

TEST_CASE("norm operator fixes the cyclotomic series") {
  for (uint32_t p : {3u, 5u}) {
    for (int64_t a : {2, 4, 7}) {
      cl::ColemanData data = cl::make_cyclotomic(p, 20, 12, a, 1);
      IntSeries1 ng = cl::coleman_norm(data.g, data.G, data.tower);
      auto ag = sr::agreement(ng, data.g);
      CHECK(ag.full);
      CHECK(ag.cap == 12);
    }
  }
}

TEST_CASE("norm operator is multiplicative and fixes constants") {
  const uint32_t p = 3, N = 18, cap = 10;
  cl::ColemanData data = cl::make_cyclotomic(p, N, cap, 2, 1);
  PAdicInt proto = ltk::padic::zero_of(data.G.pi);

  IntSeries1 one = sr::const1(ltk::padic::one_of(proto), cap);
  CHECK(sr::agreement(cl::coleman_norm(one, data.G, data.tower), one).full);

  // Polynomial pairs with deg g + deg h <= cap keep g * h exact, so the
  // multiplicativity identity holds at the stored precision.
  ltk::SplitMix64 rng{ltk::mix_seed(9104, "coleman-norm-mult", 0)};
  for (int trial = 0; trial < 6; ++trial) {
    IntSeries1 g = rnd_unit_poly(rng, proto, cap / 2, cap);
    IntSeries1 h = rnd_unit_poly(rng, proto, cap / 2, cap);
    IntSeries1 lhs = cl::coleman_norm(g * h, data.G, data.tower);
    IntSeries1 rhs = cl::coleman_norm(g, data.G, data.tower) *
                     cl::coleman_norm(h, data.G, data.tower);
    CHECK(sr::agreement(lhs, rhs).full);
  }

  IntSeries1 nonunit = sr::var1(proto, cap);
  CHECK_THROWS_AS(cl::coleman_norm(nonunit, data.G, data.tower), std::invalid_argument);
}

TEST_CASE("interpolation certificates pass and flag perturbations") {
  for (uint32_t p : {3u, 5u}) {
    for (int64_t a : {2, 4, 7}) {
      cl::ColemanData data = cl::make_cyclotomic(p, 12, 16, a, 2);
      auto cert = cl::check_interpolation(data);
      REQUIRE(cert.levels.size() == 2);
      CHECK(cert.passed);
      CHECK(cert.levels[0].passed);
      CHECK(cert.levels[1].passed);
    }
  }

  cl::ColemanData taut = cl::make_tautological(3, 12, 8, 1, 2);
  CHECK(cl::check_interpolation(taut).passed);

  // Scaling beta_1 by 1 + p^m must fail with exactly m base digits of
  // residual agreement in the worst coordinate.
  cl::ColemanData bad = cl::make_cyclotomic(3, 12, 8, 2, 2);
  const uint32_t m = 3;
  lf::RingPtr r1 = bad.tower.rings[0];
  lf::Elem scale = lf::one(r1) + lf::scalar_to(r1, ltk::padic::mul_pow_p(
                                                       ltk::padic::one_of(bad.G.pi), m));
  bad.beta[0] = bad.beta[0] * scale;
  auto cert = cl::check_interpolation(bad);
  CHECK(!cert.passed);
  CHECK(!cert.levels[0].passed);
  CHECK(cert.levels[1].passed);
  CHECK(cert.levels[0].digits == m);
}

TEST_CASE("delta agrees with the integral logarithmic-derivative route") {
  const uint32_t N = 14, cap = 14;
  ltk::SplitMix64 rng{ltk::mix_seed(9104, "coleman-delta", 0)};
  for (uint32_t p : {3u, 5u}) {
    IntSeries1 f = lt::frobenius_polynomial(p, N, cap);
    PAdicInt pi = ltk::padic::int_of(f.proto(), static_cast<int64_t>(p));
    lt::FormalGroupLaw G = lt::make_group(f, pi, p, p);
    IntSeries1 w = lt::reciprocal_dlog(G, cap - 1);
    for (int trial = 0; trial < 8; ++trial) {
      IntSeries1 g = rnd_unit_series(rng, f.proto(), cap);
      IntSeries1 viaFrac = cl::delta(g, G);
      // Independent route: g'/g * dF/dY(Z,0) stays in the integral ring.
      FracSeries1 gf = to_frac(g);
      FracSeries1 alt = sr::derive(gf) * sr::mul_inverse(gf) * to_frac(w);
      IntSeries1 viaInt = sr::map_coeffs(
          alt, [](const PAdicFrac& c) { return ltk::padic::reduce_integral(c); });
      CHECK(sr::agreement(viaFrac, viaInt).full);
    }
  }
}

TEST_CASE("delta is additive and kills constants") {
  const uint32_t p = 3, N = 12, cap = 12;
  cl::ColemanData data = cl::make_cyclotomic(p, N, cap, 2, 1);
  PAdicInt proto = ltk::padic::zero_of(data.G.pi);

  IntSeries1 c7 = sr::const1(ltk::padic::int_of(proto, 7), cap);
  IntSeries1 dc = cl::delta(c7, data.G);
  for (uint32_t r = 0; r <= dc.cap(); ++r) CHECK(dc[r].is_zero());

  ltk::SplitMix64 rng{ltk::mix_seed(9104, "coleman-delta-add", 0)};
  for (int trial = 0; trial < 25; ++trial) {
    IntSeries1 g = rnd_unit_series(rng, proto, cap);
    IntSeries1 h = rnd_unit_series(rng, proto, cap);
    IntSeries1 lhs = cl::delta(g * h, data.G);
    IntSeries1 rhs = cl::delta(g, data.G) + cl::delta(h, data.G);
    CHECK(sr::agreement(lhs, rhs).full);
  }

  CHECK_THROWS_AS(cl::delta(sr::var1(proto, cap), data.G), std::invalid_argument);
}

TEST_CASE("cyclotomic delta has the closed form (1+Z) g'/g") {
  const uint32_t p = 3, N = 12, cap = 12;
  for (int64_t a : {2, 4, 7}) {
    cl::ColemanData data = cl::make_cyclotomic(p, N, cap, a, 1);
    IntSeries1 d = cl::delta(data.g, data.G);

    FracSeries1 gf = to_frac(data.g);
    FracSeries1 onez(PAdicFrac(ltk::padic::one_of(data.G.pi), 0), cap);
    onez.set(0, PAdicFrac(ltk::padic::one_of(data.G.pi), 0));
    onez.set(1, PAdicFrac(ltk::padic::one_of(data.G.pi), 0));
    FracSeries1 closed = onez * sr::derive(gf) * sr::mul_inverse(gf);
    IntSeries1 closedInt = sr::map_coeffs(
        closed, [](const PAdicFrac& c) { return ltk::padic::reduce_integral(c); });
    CHECK(sr::agreement(d, closedInt).full);

    // delta_w(g_a) = (a-1)/2.
    PAdicInt dw = cl::delta_at_zero(data.g);
    PAdicInt want = ltk::padic::int_of(data.G.pi, a - 1) *
                    ltk::padic::unit_inverse(ltk::padic::int_of(data.G.pi, 2));
    CHECK(ltk::padic::agree(dw, want).full());
  }

  // Hand value: delta_w(g_2) = 1/2, which is 2 mod 3.
  cl::ColemanData g2 = cl::make_cyclotomic(p, N, cap, 2, 1);
  PAdicInt dw = cl::delta_at_zero(g2.g);
  CHECK(dw.residue() % 3 == 2);
  CHECK(ltk::padic::agree(dw, ltk::padic::unit_inverse(ltk::padic::int_of(g2.G.pi, 2))).full());
}

TEST_CASE("delta_w is additive on unit series") {
  const uint32_t p = 5, N = 10, cap = 8;
  PAdicInt proto = ltk::padic::PAdicInt::from_int(p, N, 0);
  ltk::SplitMix64 rng{ltk::mix_seed(9104, "coleman-dw-add", 0)};
  for (int trial = 0; trial < 40; ++trial) {
    IntSeries1 g = rnd_unit_series(rng, proto, cap);
    IntSeries1 h = rnd_unit_series(rng, proto, cap);
    PAdicInt lhs = cl::delta_at_zero(g * h);
    PAdicInt rhs = cl::delta_at_zero(g) + cl::delta_at_zero(h);
    CHECK(ltk::padic::agree(lhs, rhs).full());
  }
  CHECK_THROWS_AS(cl::delta_at_zero(sr::var1(proto, cap)), std::invalid_argument);
}

TEST_CASE("trace of delta is level independent and matches the closed form") {
  const uint32_t p = 3, N = 12, cap = 72;
  // Deep univariate cap, minimal bivariate cap: only lambda' enters here.
  cl::ColemanData data = cl::make_cyclotomic(p, N, cap, 2, 3, p);

  // Truncation floor floor((cap+1)/e_n) - (n-1), further capped by the
  // stored scalar precision N - n - 1.
  auto floor_digits = [&](uint32_t n) {
    uint32_t e = (p - 1);
    for (uint32_t k = 1; k < n; ++k) e *= p;
    return std::min((cap + 1) / e - (n - 1), N - n - 1);
  };

  PAdicInt dw = cl::delta_at_zero(data.g);
  PAdicFrac expected(ltk::padic::int_of(data.G.pi, static_cast<int64_t>(p - 1)) * dw, 1);

  PAdicFrac first = cl::trace_delta_level(data.g, data.G, data.tower, 1);
  for (uint32_t n = 1; n <= 3; ++n) {
    PAdicFrac val = cl::trace_delta_level(data.g, data.G, data.tower, n);
    auto agExp = ltk::padic::agree(val, expected);
    CHECK(agExp.digits >= floor_digits(n));
    auto agFirst = ltk::padic::agree(val, first);
    CHECK(agFirst.digits >= floor_digits(n));
  }

  // Hand value at level 1: the trace is exactly 1, so the reported value is
  // the fraction 1/3 = (1 - 1/3) * (1/2).
  auto ag1 = ltk::padic::agree(first, PAdicFrac(ltk::padic::one_of(data.G.pi), 1));
  CHECK(ag1.digits >= floor_digits(1));

  CHECK_THROWS_AS(cl::trace_delta_level(data.g, data.G, data.tower, 4), std::invalid_argument);
  CHECK_THROWS_AS(cl::trace_delta_level(data.g, data.G, data.tower, 0), std::invalid_argument);
}

TEST_CASE("level-1 trace matches the direct conjugate sum") {
  for (uint32_t p : {3u, 5u}) {
    const uint32_t N = 12, cap = 24;
    cl::ColemanData data = cl::make_cyclotomic(p, N, cap, 2, 1, p);
    IntSeries1 d = cl::delta(data.g, data.G);

    lf::Elem x = lt::eval_at(d, data.tower.gens[0]);
    PAdicInt viaMatrix = lf::trace_to_base(x);

    std::vector<lf::Elem> tors = cl::pi_torsion(data.G, data.tower);
    lf::Elem sum = lf::zero(data.tower.rings[0]);
    for (uint32_t u = 1; u < p; ++u) sum = sum + lt::eval_at(d, tors[u]);
    // The conjugate sum is Galois stable, hence visibly a base element.
    for (uint32_t i = 1; i < data.tower.rings[0]->degree; ++i)
      CHECK(sum.coord(i).is_zero());
    uint32_t floor1 = std::min((cap + 1) / (p - 1), N - 2);
    CHECK(ltk::padic::agree(viaMatrix, sum.coord(0).scalar()).digits >= floor1);
  }
}

TEST_CASE("trace of a constant series vanishes at every level") {
  cl::ColemanData data = cl::make_cyclotomic(3, 12, 12, 2, 2, 3);
  IntSeries1 c = sr::const1(ltk::padic::int_of(data.G.pi, 5), 12);
  for (uint32_t n = 1; n <= 2; ++n) {
    PAdicFrac val = cl::trace_delta_level(c, data.G, data.tower, n);
    CHECK(ltk::padic::valuation(val).inf);
  }
}

TEST_CASE("dual exponential functional composes delta_w with the eigenvalue") {
  const uint32_t p = 3, N = 12, cap = 12;
  cl::ColemanData data = cl::make_cyclotomic(p, N, cap, 2, 1);
  PAdicInt proto = ltk::padic::zero_of(data.G.pi);
  PAdicInt one = ltk::padic::one_of(proto);

  // (1/3 - 1) * (1/2) = -1/3.
  PAdicFrac got = cl::dual_exp(data.g, data.G, one);
  PAdicFrac want(ltk::padic::int_of(proto, -1), 1);
  CHECK(ltk::padic::agree(got, want).full());

  // Zero delta_w input gives zero.
  IntSeries1 flat(proto, cap);
  flat.set(0, ltk::padic::int_of(proto, 2));
  flat.set(2, one);
  CHECK(ltk::padic::valuation(cl::dual_exp(flat, data.G, one)).inf);

  // Additivity under series multiplication.
  ltk::SplitMix64 rng{ltk::mix_seed(9104, "coleman-dualexp", 0)};
  PAdicInt u0 = ltk::padic::int_of(proto, 7);
  for (int trial = 0; trial < 10; ++trial) {
    IntSeries1 g = rnd_unit_series(rng, proto, cap);
    IntSeries1 h = rnd_unit_series(rng, proto, cap);
    PAdicFrac lhs = cl::dual_exp(g * h, data.G, u0);
    PAdicFrac rhs = cl::dual_exp(g, data.G, u0) + cl::dual_exp(h, data.G, u0);
    CHECK(ltk::padic::agree(lhs, rhs).full());
  }

  CHECK_THROWS_AS(cl::dual_exp(data.g, data.G, data.G.pi), std::invalid_argument);
}

TEST_CASE("norm compatibility connects consecutive tower levels") {
  for (uint32_t p : {3u, 5u}) {
    const uint32_t N = 12, cap = 16;
    cl::ColemanData data = cl::make_cyclotomic(p, N, cap, 2, 2);
    std::vector<lf::Elem> tors = cl::pi_torsion(data.G, data.tower);
    lf::RingPtr r2 = data.tower.rings[1];
    lf::Elem w2 = data.tower.gens[1];

    auto emb = [&](const PAdicInt& c) { return lf::scalar_to(r2, c); };
    lf::Elem prod = lf::one(r2);
    for (const lf::Elem& t : tors) {
      lf::Elem shifted = sr::eval2_poly(data.G.F, w2, lf::lift(r2, t), emb);
      prod = prod * lt::eval_at(data.g, shifted);
    }
    // prod = (N g)(f(w_2)) = g(w_1) lifted.  Over the twin the group law
    // terminates at degree two, so the evaluation has no truncation defect
    // and agreement is full at the stored precision.
    lf::Elem want = lf::lift(r2, data.beta[0]);
    CHECK(lf::agree(prod, want).full());
  }
}

TEST_CASE("built-in datasets resolve by name and reject malformed input") {
  cl::ColemanData cyc = cl::make_named("cyclotomic:a=2", 3, 10, 8, 1);
  CHECK(cyc.name == "cyclotomic:a=2");
  CHECK(ltk::padic::agree(cyc.g[0], ltk::padic::int_of(cyc.G.pi, 2)).full());

  cl::ColemanData taut = cl::make_named("tautological:c=1", 3, 10, 8, 2);
  CHECK(taut.name == "tautological:c=1");
  CHECK(cl::check_interpolation(taut).passed);

  CHECK_THROWS_AS(cl::make_named("cyclotomic", 3, 10, 8, 1), std::invalid_argument);
  CHECK_THROWS_AS(cl::make_named("foo:x=1", 3, 10, 8, 1), std::invalid_argument);
  CHECK_THROWS_AS(cl::make_named("cyclotomic:b=2", 3, 10, 8, 1), std::invalid_argument);

  CHECK_THROWS_AS(cl::make_cyclotomic(3, 10, 8, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(cl::make_cyclotomic(3, 10, 8, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(cl::make_cyclotomic(3, 10, 8, 9, 1), std::invalid_argument);
  CHECK_THROWS_AS(cl::make_tautological(3, 10, 8, 3, 1), std::invalid_argument);

  // w + 4 is a unit but not norm coherent over the twin at p = 3.
  CHECK_THROWS_AS(cl::make_tautological(3, 10, 8, 4, 2), std::logic_error);
}
