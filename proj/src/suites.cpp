#include <algorithm>
#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltk/coleman.hpp"
#include "ltk/harness.hpp"
#include "ltk/iwasawa.hpp"
#include "ltk/localfield.hpp"
#include "ltk/lubin_tate.hpp"
#include "ltk/padic.hpp"
#include "ltk/rng.hpp"
#include "ltk/series.hpp"
#include "ltk/weil.hpp"

namespace ltk {
namespace harness {

namespace {

using padic::PAdicFrac;
using padic::PAdicInt;
namespace cl = coleman;
namespace iw = iwasawa;
namespace lf = localfield;
namespace lt = lubin_tate;
namespace sr = series;
namespace wl = weil;

using IntSeries1 = sr::Series1<PAdicInt>;
using IntSeries2 = sr::Series2<PAdicInt>;
using FracSeries1 = sr::Series1<PAdicFrac>;
using FracSeries2 = sr::Series2<PAdicFrac>;

uint32_t clamp_precision(uint32_t p, uint32_t want) {
  return std::min(want, padic::max_precision(p));
}

bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Smallest generator of (Z/p)^x.
uint32_t primitive_root(uint32_t p) {
  for (uint32_t g = 2; g < p; ++g) {
    uint64_t x = g % p;
    uint32_t order = 1;
    while (x != 1) {
      x = x * g % p;
      order += 1;
    }
    if (order == p - 1) return g;
  }
  throw std::invalid_argument("no primitive root");
}

FracSeries1 to_frac1(const IntSeries1& s) {
  return sr::map_coeffs(s, [](const PAdicInt& c) { return PAdicFrac(c, 0); });
}

FracSeries2 to_frac2(const IntSeries2& s) {
  return sr::map_coeffs(s, [](const PAdicInt& c) { return PAdicFrac(c, 0); });
}

IntSeries2 embed_x(const IntSeries1& s) {
  IntSeries2 r(s.proto(), s.cap());
  for (uint32_t i = 0; i <= s.cap(); ++i) r.set(i, 0, s[i]);
  return r;
}

IntSeries2 embed_y(const IntSeries1& s) {
  IntSeries2 r(s.proto(), s.cap());
  for (uint32_t i = 0; i <= s.cap(); ++i) r.set(0, i, s[i]);
  return r;
}

template <typename C>
sr::Series2<C> transpose2(const sr::Series2<C>& F) {
  sr::Series2<C> r(F.proto(), F.cap());
  for (uint32_t i = 0; i <= F.cap(); ++i)
    for (uint32_t j = 0; i + j <= F.cap(); ++j) r.set(j, i, F.at(i, j));
  return r;
}

// lambda(X) + lambda(Y) as a bivariate series.
FracSeries2 split_sum(const FracSeries1& lam) {
  FracSeries2 r(lam.proto(), lam.cap());
  for (uint32_t i = 1; i <= lam.cap(); ++i) {
    r.set(i, 0, lam[i]);
    r.set(0, i, lam[i]);
  }
  return r;
}

// Unit series with random tail, random unit constant term.
IntSeries1 rnd_unit_series(ltk::SplitMix64& rng, const PAdicInt& proto, uint32_t cap) {
  IntSeries1 s(proto, cap);
  uint64_t p = proto.prime();
  s.set(0, padic::int_of(proto, static_cast<int64_t>(1 + rng.below(p - 1))));
  for (uint32_t i = 1; i <= cap; ++i)
    s.set(i, PAdicInt::from_residue(proto.prime(), proto.precision(), rng.next()));
  return s;
}

iw::IwasawaElement rnd_element(ltk::SplitMix64& rng, const PAdicInt& c, uint32_t cap,
                               uint32_t headroom) {
  IntSeries1 s(padic::zero_of(c), cap);
  for (uint32_t i = 0; i + headroom <= cap; ++i)
    s.set(i, PAdicInt::from_residue(c.prime(), c.precision(), rng.next()));
  return iw::make_element(iw::psi_star_branch(), s, c);
}

// Floor-graded comparison: pass at or above the documented floor,
// precision-limited when the identity held at every stored digit but the
// storage ran out first, fail on certified disagreement.
CaseResult graded(std::string name, int64_t digits, bool saturated, int64_t floor) {
  CaseResult r;
  r.name = std::move(name);
  r.digits = digits;
  if (digits >= floor)
    r.status = CaseStatus::pass;
  else
    r.status = saturated ? CaseStatus::precision_limited : CaseStatus::fail;
  return r;
}

CaseResult graded(std::string name, const sr::SeriesAgreement& ag, int64_t floor) {
  return graded(std::move(name), ag.digits, ag.full, floor);
}

CaseResult exact_case(std::string name, const sr::SeriesAgreement& ag) {
  CaseResult r;
  r.name = std::move(name);
  r.digits = ag.digits;
  r.status = ag.full ? CaseStatus::pass : CaseStatus::fail;
  return r;
}

CaseResult predicate_case(std::string name, bool ok, std::string note = "") {
  CaseResult r;
  r.name = std::move(name);
  r.status = ok ? CaseStatus::pass : CaseStatus::fail;
  r.note = std::move(note);
  return r;
}

// ---------------------------------------------------------------------------

SuiteReport suite_formal_group(const Config& cfg) {
  SuiteReport rep;
  const uint32_t p = cfg.prime;
  const uint32_t cap = cfg.degree_cap;
  // The endomorphism recursion sheds roughly one digit per p-1 degrees, so
  // budget that loss on top of the requested floor.
  const uint32_t decay = cap / (p - 1) + 2;
  const uint32_t N = clamp_precision(p, cfg.precision + decay);
  const int64_t floor = static_cast<int64_t>(std::min(cfg.precision, N - decay));
  rep.grid = "p=" + std::to_string(p) + " cap=" + std::to_string(cap) +
             " N=" + std::to_string(N) + " floor=" + std::to_string(floor);

  struct Shape {
    const char* tag;
    IntSeries1 f;
  };
  std::vector<Shape> shapes;
  shapes.push_back({"poly", lt::frobenius_polynomial(p, N, cap)});
  shapes.push_back({"twin", lt::frobenius_gm_twin(p, N, cap)});

  for (const Shape& shape : shapes) {
    const std::string tag = shape.tag;
    PAdicInt pi = padic::int_of(shape.f.proto(), static_cast<int64_t>(p));
    lt::FormalGroupLaw G = lt::make_group(shape.f, pi);

    rep.cases.push_back(exact_case(tag + "/commutativity", sr::agreement(G.F, transpose2(G.F))));

    IntSeries1 section(shape.f.proto(), G.F.cap());
    for (uint32_t i = 0; i <= G.F.cap(); ++i) section.set(i, G.F.at(i, 0));
    rep.cases.push_back(
        exact_case(tag + "/unit-section", sr::agreement(section, sr::var1(shape.f.proto(), G.F.cap()))));

    sr::SeriesAgreement assoc = lt::associativity_defect(G, std::min(cap, 10u));
    rep.cases.push_back(exact_case(tag + "/associativity", assoc));

    FracSeries1 lhs = sr::compose(G.lambda, to_frac1(shape.f));
    FracSeries1 rhs = sr::scale(G.lambda, PAdicFrac(pi, 0));
    rep.cases.push_back(graded(tag + "/log-functional", sr::agreement(lhs, rhs), floor));

    FracSeries2 logF = sr::compose1into2(G.lambda, to_frac2(G.F));
    rep.cases.push_back(
        graded(tag + "/log-additivity", sr::agreement(logF, split_sum(G.lambda.truncated(G.F.cap()))), floor));

    ltk::SplitMix64 rng{ltk::mix_seed(cfg.seed, "formal-group/" + tag)};
    int64_t worst = INT64_MAX;
    bool saturated = true;
    const uint64_t bound = static_cast<uint64_t>(p) * p * p;
    for (uint32_t t = 0; t < cfg.trials; ++t) {
      int64_t a = static_cast<int64_t>(1 + rng.below(bound));
      int64_t b = static_cast<int64_t>(1 + rng.below(bound));
      IntSeries1 ma = lt::mult_by(G, padic::int_of(shape.f.proto(), a));
      IntSeries1 mb = lt::mult_by(G, padic::int_of(shape.f.proto(), b));
      IntSeries1 mab = lt::mult_by(G, padic::int_of(shape.f.proto(), a * b));
      sr::SeriesAgreement ag = sr::agreement(sr::compose(ma, mb), mab);
      worst = std::min(worst, static_cast<int64_t>(ag.digits));
      saturated = saturated && ag.full;
    }
    rep.cases.push_back(graded(tag + "/mult-homomorphism",
                               cfg.trials == 0 ? floor : worst, saturated, floor));
  }
  return rep;
}

SuiteReport suite_gm_closed_forms(const Config& cfg) {
  SuiteReport rep;
  const uint32_t p = cfg.prime;
  const uint32_t cap = cfg.degree_cap;
  const uint32_t decay = cap / (p - 1) + 2;
  const uint32_t N = clamp_precision(p, cfg.precision + decay);
  const int64_t floor = static_cast<int64_t>(std::min(cfg.precision, N - decay));
  rep.grid = "p=" + std::to_string(p) + " cap=" + std::to_string(cap) +
             " N=" + std::to_string(N);

  IntSeries1 f = lt::frobenius_gm_twin(p, N, cap);
  PAdicInt proto = f.proto();
  PAdicInt pi = padic::int_of(proto, static_cast<int64_t>(p));
  lt::FormalGroupLaw G = lt::make_group(f, pi);

  rep.cases.push_back(
      exact_case("group-law", sr::agreement(G.F, lt::multiplicative_law(proto, G.F.cap()))));
  rep.cases.push_back(
      exact_case("logarithm", sr::agreement(G.lambda, lt::log1p_series(proto, cap))));
  rep.cases.push_back(exact_case(
      "exponential", sr::agreement(G.exp_f, lt::exp_minus_one_series(proto, G.exp_f.cap()))));

  std::vector<int64_t> exponents = {2, 3, 7, -1, static_cast<int64_t>(p) + 1};
  ltk::SplitMix64 rng{ltk::mix_seed(cfg.seed, "gm-closed-forms")};
  for (uint32_t t = 0; t < std::min(cfg.trials, 8u); ++t)
    exponents.push_back(static_cast<int64_t>(2 + rng.below(1000)));
  int64_t worst = INT64_MAX;
  bool saturated = true;
  for (int64_t a : exponents) {
    IntSeries1 built = lt::mult_by(G, padic::int_of(proto, a));
    IntSeries1 binomial = lt::one_plus_pow(a, proto, cap);
    sr::SeriesAgreement ag = sr::agreement(built, binomial);
    worst = std::min(worst, static_cast<int64_t>(ag.digits));
    saturated = saturated && ag.full;
  }
  rep.cases.push_back(graded("binomial-endomorphisms", worst, saturated, floor));
  return rep;
}

SuiteReport suite_lt_isomorphism(const Config& cfg) {
  SuiteReport rep;
  const uint32_t p = cfg.prime;
  const uint32_t cap = cfg.degree_cap;
  const uint32_t decay = cap / (p - 1) + 2;
  const uint32_t N = clamp_precision(p, cfg.precision + decay);
  const int64_t floor = static_cast<int64_t>(std::min(cfg.precision, N - decay));
  rep.grid = "p=" + std::to_string(p) + " cap=" + std::to_string(cap) +
             " N=" + std::to_string(N) + " omega=1";

  IntSeries1 fsrc = lt::frobenius_gm_twin(p, N, cap);
  IntSeries1 fdst = lt::frobenius_polynomial(p, N, cap);
  PAdicInt proto = fsrc.proto();
  PAdicInt pi = padic::int_of(proto, static_cast<int64_t>(p));
  lt::FormalGroupLaw src = lt::make_group(fsrc, pi);
  lt::FormalGroupLaw dst = lt::make_group(fdst, pi);
  PAdicInt one = padic::one_of(proto);

  IntSeries1 eta = lt::isomorphism(src, dst, one);
  rep.cases.push_back(predicate_case("integrality", true, "certified during construction"));
  rep.cases.push_back(predicate_case(
      "normalization", eta[0].is_zero() && padic::agree(eta[1], one).full()));

  IntSeries2 lhs = sr::compose1into2(eta, src.F);
  auto emb = [&](const PAdicInt& c) { return sr::const2(c, std::min(eta.cap(), src.F.cap())); };
  IntSeries2 rhs = sr::eval2_poly(dst.F, embed_x(eta), embed_y(eta), emb);
  rep.cases.push_back(exact_case("homomorphism", sr::agreement(lhs, rhs)));

  FracSeries1 logmapped = sr::compose(dst.lambda, to_frac1(eta));
  rep.cases.push_back(graded("compare-logs", sr::agreement(logmapped, src.lambda), floor));

  // The image of the level-1 generator is killed by one target Frobenius;
  // only the series truncation survives.
  lt::TorsionTower tower = lt::make_tower(src, 1);
  lf::Elem x1 = lt::eval_at(eta, tower.gens[0]);
  lf::Elem y1 = lt::eval_at(fdst, x1);
  auto vx = lf::valuation(x1);
  auto vy = lf::valuation(y1);
  bool torsion_ok = !vx.inf && vx.v == 1 && (vy.inf || vy.v >= static_cast<int64_t>(cap + 1));
  rep.cases.push_back(predicate_case("torsion-image", torsion_ok));
  return rep;
}

SuiteReport suite_coleman(const Config& cfg) {
  SuiteReport rep;
  const uint32_t p = cfg.prime;
  const uint32_t cap = std::min(cfg.degree_cap, 12u);
  // Norm extraction at degree r spends r digits, so the working precision
  // carries the cap on top of the requested floor.
  const uint32_t N = clamp_precision(p, std::max(cfg.precision, cap + 8));
  rep.grid = "p=" + std::to_string(p) + " cap=" + std::to_string(cap) +
             " N=" + std::to_string(N) + " levels=2";

  std::vector<int64_t> avals;
  for (int64_t a : {2, 4, 7})
    if (static_cast<uint64_t>(a) % p != 0) avals.push_back(a);

  for (int64_t a : avals) {
    const std::string tag = "cyclotomic:a=" + std::to_string(a);
    cl::ColemanData data = cl::make_cyclotomic(p, N, cap, a, 2);

    cl::InterpolationCertificate cert = cl::check_interpolation(data);
    int64_t digits = INT64_MAX;
    for (const cl::LevelReport& lr : cert.levels)
      digits = std::min(digits, static_cast<int64_t>(lr.digits));
    CaseResult interp;
    interp.name = tag + "/interpolation";
    interp.digits = digits;
    interp.status = cert.passed ? CaseStatus::pass : CaseStatus::fail;
    rep.cases.push_back(interp);

    IntSeries1 ng = cl::coleman_norm(data.g, data.G, data.tower);
    rep.cases.push_back(exact_case(tag + "/norm-fixed", sr::agreement(ng, data.g)));

    // delta g = (1+Z) g'/g against the fraction-ring route, and the origin
    // value (a-1)/2.
    IntSeries1 d = cl::delta(data.g, data.G);
    FracSeries1 gf = to_frac1(data.g);
    FracSeries1 onez(PAdicFrac(padic::one_of(data.G.pi), 0), cap);
    onez.set(0, PAdicFrac(padic::one_of(data.G.pi), 0));
    onez.set(1, PAdicFrac(padic::one_of(data.G.pi), 0));
    FracSeries1 closed = onez * sr::derive(gf) * sr::mul_inverse(gf);
    IntSeries1 closedInt =
        sr::map_coeffs(closed, [](const PAdicFrac& c) { return padic::reduce_integral(c); });
    bool dform = sr::agreement(d, closedInt).full;
    PAdicInt dw = cl::delta_at_zero(data.g);
    PAdicInt want = padic::int_of(data.G.pi, a - 1) *
                    padic::unit_inverse(padic::int_of(data.G.pi, 2));
    dform = dform && padic::agree(dw, want).full();
    rep.cases.push_back(predicate_case(tag + "/delta-closed-form", dform));
  }

  {
    cl::ColemanData taut = cl::make_tautological(p, N, cap, 1, 2);
    cl::InterpolationCertificate cert = cl::check_interpolation(taut);
    rep.cases.push_back(predicate_case("tautological:c=1/interpolation", cert.passed));
    IntSeries1 ng = cl::coleman_norm(taut.g, taut.G, taut.tower);
    rep.cases.push_back(exact_case("tautological:c=1/norm-fixed", sr::agreement(ng, taut.g)));
  }

  {
    cl::ColemanData data = cl::make_cyclotomic(p, N, cap, 2, 1);
    PAdicInt proto = padic::zero_of(data.G.pi);
    ltk::SplitMix64 rng{ltk::mix_seed(cfg.seed, "coleman/delta-add")};
    bool ok = true;
    for (uint32_t t = 0; t < cfg.trials && ok; ++t) {
      IntSeries1 g = rnd_unit_series(rng, proto, cap);
      IntSeries1 h = rnd_unit_series(rng, proto, cap);
      IntSeries1 sum = cl::delta(g, data.G) + cl::delta(h, data.G);
      ok = sr::agreement(cl::delta(g * h, data.G), sum).full;
    }
    rep.cases.push_back(predicate_case("delta-additivity", ok,
                                       "trials=" + std::to_string(cfg.trials)));
  }
  return rep;
}

SuiteReport suite_trace_stability(const Config& cfg) {
  SuiteReport rep;
  const uint32_t p = cfg.prime;
  uint32_t e3 = p * p * (p - 1);
  const uint32_t cap = 3 * e3 + (p - 1);
  const uint32_t N = clamp_precision(p, std::max(cfg.precision, 6u));
  rep.grid = "p=" + std::to_string(p) + " cap=" + std::to_string(cap) +
             " N=" + std::to_string(N) + " n=1..3";

  // Truncating delta at the cap leaves floor((cap+1)/e_n) - (n-1) digits;
  // the stored scalar precision leaves N - n - 1.
  auto floor_digits = [&](uint32_t n) {
    uint32_t e = p - 1;
    for (uint32_t k = 1; k < n; ++k) e *= p;
    return static_cast<int64_t>(std::min((cap + 1) / e - (n - 1), N - n - 1));
  };

  struct Datum {
    std::string tag;
    cl::ColemanData data;
  };
  std::vector<Datum> data;
  data.push_back({"cyclotomic:a=2", cl::make_cyclotomic(p, N, cap, 2, 3, p)});
  data.push_back({"tautological:c=1", cl::make_tautological(p, N, cap, 1, 3, p)});

  for (const Datum& datum : data) {
    PAdicInt dw = cl::delta_at_zero(datum.data.g);
    PAdicFrac expected(padic::int_of(datum.data.G.pi, static_cast<int64_t>(p - 1)) * dw, 1);
    PAdicFrac first = cl::trace_delta_level(datum.data.g, datum.data.G, datum.data.tower, 1);
    for (uint32_t n = 1; n <= 3; ++n) {
      PAdicFrac val = cl::trace_delta_level(datum.data.g, datum.data.G, datum.data.tower, n);
      auto agE = padic::agree(val, expected);
      auto agF = padic::agree(val, first);
      int64_t digits = std::min<int64_t>(agE.digits, agF.digits);
      rep.cases.push_back(graded(datum.tag + "/n=" + std::to_string(n), digits,
                                 agE.full() && agF.full(), floor_digits(n)));
    }

    IntSeries1 flat =
        sr::const1(padic::int_of(datum.data.G.pi, static_cast<int64_t>(p) + 1), cap);
    bool killed = true;
    for (uint32_t n = 1; n <= 2; ++n)
      killed = killed &&
               padic::valuation(cl::trace_delta_level(flat, datum.data.G, datum.data.tower, n)).inf;
    rep.cases.push_back(predicate_case(datum.tag + "/constant-kill", killed));
  }

  if (p == 3) {
    // Hand value: the level-1 normalized trace of g_2 is (2/3)*(1/2) = 1/3.
    PAdicFrac first = cl::trace_delta_level(data[0].data.g, data[0].data.G, data[0].data.tower, 1);
    auto ag = padic::agree(first, PAdicFrac(padic::one_of(data[0].data.G.pi), 1));
    rep.cases.push_back(graded("hand-value", ag.digits, ag.full(), floor_digits(1)));
  }
  return rep;
}

SuiteReport suite_dertheta(const Config& cfg) {
  SuiteReport rep;
  const uint32_t p = cfg.prime;
  const uint32_t N = clamp_precision(p, cfg.precision + 4);
  const uint32_t cap = cfg.degree_cap;
  const uint32_t g0 = primitive_root(p);
  const uint32_t mmax = std::min(3u, p - 2);
  rep.grid = "p=" + std::to_string(p) + " N=" + std::to_string(N) +
             " cap=" + std::to_string(cap) + " m=1.." + std::to_string(mmax) +
             " trials=" + std::to_string(cfg.trials);
  rep.extras.push_back(
      {"convention",
       "psi-star branch; theta* = (1+T)/psi*(gamma) - 1; D* differentiates s -> F(psi*<psi*>^s) at s=0"});

  PAdicInt proto = PAdicInt::from_int(p, N, 0);
  PAdicInt c = iw::gamma_datum(g0, proto);

  for (uint32_t m = 1; m <= mmax; ++m) {
    iw::IwasawaElement power = iw::theta_element(c, cap);
    for (uint32_t k = 1; k < m; ++k) power = power * iw::theta_element(c, cap);
    PAdicInt got = iw::D_star(power, m);
    PAdicInt want = padic::int_of(proto, 1);
    for (uint32_t k = 0; k < m; ++k) want = want * padic::int_of(proto, static_cast<int64_t>(p));
    auto ag = padic::agree(got, want);
    rep.cases.push_back(graded("power-identity/m=" + std::to_string(m), ag.digits, ag.full(),
                               static_cast<int64_t>(N) - 3));
  }

  for (uint32_t m = 1; m <= mmax; ++m) {
    ltk::SplitMix64 rng{ltk::mix_seed(cfg.seed, "dertheta/random", m)};
    int64_t worst = INT64_MAX;
    bool all = true;
    for (uint32_t t = 0; t < cfg.trials; ++t) {
      iw::IwasawaElement F = rnd_element(rng, c, cap, m);
      iw::DerthetaCertificate cert = iw::verify_dertheta(F, m);
      all = all && cert.passed;
      worst = std::min(worst, static_cast<int64_t>(cert.digits));
    }
    CaseResult r = graded("random/m=" + std::to_string(m),
                          cfg.trials == 0 ? static_cast<int64_t>(N) : worst, all,
                          static_cast<int64_t>(N) - 3);
    if (!all) r.status = CaseStatus::fail;
    rep.cases.push_back(r);
  }

  {
    ltk::SplitMix64 rng{ltk::mix_seed(cfg.seed, "dertheta/divide")};
    bool ok = true;
    for (uint32_t t = 0; t < std::max(1u, cfg.trials / 2); ++t) {
      iw::IwasawaElement F = rnd_element(rng, c, cap, 1);
      ok = ok && iw::divide_by_theta(F).passed;
    }
    rep.cases.push_back(predicate_case("theta-division", ok));
  }
  return rep;
}

SuiteReport suite_theta_congruence(const Config& cfg) {
  SuiteReport rep;
  const uint32_t p = cfg.prime;
  const uint32_t N = clamp_precision(p, std::max(cfg.precision, 8u));
  rep.grid = "p=" + std::to_string(p) + " N=" + std::to_string(N) + " n=1..2";

  PAdicInt proto = PAdicInt::from_int(p, N, 0);
  PAdicInt c = iw::gamma_datum(primitive_root(p), proto);

  for (uint32_t n = 1; n <= 2; ++n) {
    iw::CongruenceCertificate cert = iw::theta_congruence(c, n);
    uint64_t order = p - 1;
    for (uint32_t k = 1; k < n; ++k) order *= p;
    rep.cases.push_back(predicate_case(
        "n=" + std::to_string(n), cert.passed && cert.group_order == order,
        "group_order=" + std::to_string(cert.group_order)));
  }

  iw::CongruenceCertificate shifted = iw::theta_congruence(c, 1, 1);
  rep.cases.push_back(predicate_case("shift-control", !shifted.passed,
                                     "residual_valuation=" +
                                         std::to_string(shifted.residual_valuation)));
  return rep;
}

SuiteReport suite_unit_log_stability(const Config& cfg) {
  SuiteReport rep;
  // Pinned to p = 3: the level-n logarithm costs about N * e_n ring
  // multiplications in a degree-e_n extension, which leaves desk scale
  // already at p = 5.
  const uint32_t p = 3;
  const uint32_t cap = std::max(cfg.degree_cap, 12u);
  const uint32_t N = clamp_precision(p, std::max(cfg.precision, 10u));
  rep.grid = "p=" + std::to_string(p) + " cap=" + std::to_string(cap) +
             " N=" + std::to_string(N) + " levels=3 a=2";

  PAdicInt one = padic::one_of(PAdicInt::from_int(p, N, 0));
  cl::ColemanData data = cl::make_cyclotomic(p, N, cap, 2, 3);
  iw::UnitTowerData ut = iw::make_unit_tower(data);
  iw::StabilityReport stab = iw::iota_star_stability(ut, one);

  bool scales = true;
  for (const iw::IotaPartial& part : stab.partials)
    scales = scales && part.scale == stab.partials[0].scale;
  rep.cases.push_back(predicate_case("scale-shared", scales));

  CaseResult diff;
  diff.name = "difference-floor";
  diff.digits = stab.diff_valuations.empty() ? -1 : stab.diff_valuations[0];
  diff.status = (!stab.diff_valuations.empty() && stab.diff_valuations[0] >= 1)
                    ? CaseStatus::pass
                    : CaseStatus::fail;
  rep.cases.push_back(diff);

  rep.cases.push_back(predicate_case("nondecreasing", stab.nondecreasing));

  // Squaring the unit series doubles every partial value.
  iw::UnitTowerData sq = ut;
  sq.g = ut.g * ut.g;
  for (size_t k = 0; k < sq.units.size(); ++k)
    sq.units[k] = lt::eval_at(sq.g, sq.tower.gens[k]);
  bool doubled = true;
  for (uint32_t n = 1; n <= 2; ++n) {
    iw::IotaPartial s1 = iw::iota_star(ut, n, one);
    iw::IotaPartial s2 = iw::iota_star(sq, n, one);
    doubled = doubled && s1.scale == s2.scale && lf::agree(s2.value, s1.value + s1.value).full();
  }
  rep.cases.push_back(predicate_case("scaling", doubled));
  return rep;
}

SuiteReport suite_weil(const Config& cfg) {
  SuiteReport rep;
  rep.extras.push_back({"display", "e_n(π*ς_n, ς_n*) = e_n(ς_n, πς_n)"});

  auto fixture = [&](const char* block, uint64_t N, bool ext) {
    if (cfg.weil_fixture_path.empty()) return wl::discover_full_torsion(N, ext);
    return wl::load_or_discover(cfg.weil_fixture_path, block, N, ext);
  };

  wl::TorsionFixture t5 = fixture("t5", 5, false);
  wl::TorsionFixture t5x = fixture("t5x", 5, true);
  wl::TorsionFixture t9 = fixture("t9", 9, false);
  wl::TorsionFixture t25 = fixture("t25", 25, false);
  rep.grid = "t5:F_" + std::to_string(t5.curve->F->ell) +
             " t5x:F_" + std::to_string(t5x.curve->F->ell) + "^2" +
             " t9:F_" + std::to_string(t9.curve->F->ell) +
             " t25:F_" + std::to_string(t25.curve->F->ell);

  auto grid_points = [](const wl::TorsionFixture& fix, uint64_t N) {
    std::vector<wl::Point> grid;
    for (uint64_t u = 0; u < N; ++u)
      for (uint64_t v = 0; v < N; ++v)
        grid.push_back(wl::add(fix.curve, wl::mul(fix.curve, fix.P, static_cast<int64_t>(u)),
                               wl::mul(fix.curve, fix.Q, static_cast<int64_t>(v))));
    return grid;
  };

  {
    const wl::CurvePtr& E = t5.curve;
    std::vector<wl::Point> grid = grid_points(t5, 5);
    bool alt = true;
    for (const wl::Point& A : grid)
      alt = alt && wl::miller_pairing(E, A, A, 5) == wl::one(E->F);
    rep.cases.push_back(predicate_case("t5/alternation", alt, "25 points"));

    bool bil = true;
    for (const wl::Point& A : grid)
      for (const wl::Point& B : grid) {
        wl::FElem eab = wl::miller_pairing(E, A, B, 5);
        bil = bil && eab * wl::miller_pairing(E, B, A, 5) == wl::one(E->F);
        for (const wl::Point& C : grid)
          bil = bil &&
                wl::miller_pairing(E, wl::add(E, A, C), B, 5) ==
                    eab * wl::miller_pairing(E, C, B, 5);
        if (!bil) break;
      }
    rep.cases.push_back(predicate_case("t5/bilinearity", bil, "15625 triples"));

    rep.cases.push_back(predicate_case(
        "t5/nondegeneracy", wl::element_order(wl::miller_pairing(E, t5.P, t5.Q, 5), 5) == 5));

    bool cm = wl::cm_consistency(E, wl::CMEndo{t5.i, 0, 1}, 40).passed &&
              wl::cm_consistency(E, wl::CMEndo{t5.i, 2, 1}, 40).passed &&
              wl::cm_consistency(E, wl::CMEndo{t5.i, 3, 4}, 40).passed;
    rep.cases.push_back(predicate_case("t5/cm-consistency", cm));

    bool adj = true;
    for (wl::CMEndo phi : {wl::CMEndo{t5.i, 2, 0}, wl::CMEndo{t5.i, 2, 1}, wl::CMEndo{t5.i, 3, 4}}) {
      wl::GridCertificate cert = wl::cm_adjointness(E, t5.P, t5.Q, 5, phi);
      adj = adj && cert.passed && cert.pairs == 625;
    }
    rep.cases.push_back(predicate_case("t5/cm-adjointness", adj, "625 pairs per endomorphism"));
  }

  {
    const wl::CurvePtr& E = t5x.curve;
    std::vector<wl::Point> grid = grid_points(t5x, 5);
    bool gal = true;
    for (const wl::Point& A : grid)
      for (const wl::Point& B : grid)
        gal = gal && wl::frobenius(wl::miller_pairing(E, A, B, 5)) ==
                         wl::miller_pairing(E, wl::frobenius_point(E, A),
                                            wl::frobenius_point(E, B), 5);
    rep.cases.push_back(predicate_case("t5x/galois-equivariance", gal, "625 pairs"));
  }

  {
    const wl::CurvePtr& E = t9.curve;
    wl::GridCertificate good =
        wl::level_compatibility(E, t9.P, t9.Q, 3, 1, wl::CMEndo{t9.i, 3, 0});
    rep.cases.push_back(predicate_case("t9/level-compatibility", good.passed,
                                       std::to_string(good.pairs) + " pairs"));
    wl::GridCertificate bad =
        wl::level_compatibility(E, t9.P, t9.Q, 3, 1, wl::CMEndo{t9.i, 0, 3});
    rep.cases.push_back(predicate_case("t9/wrong-twist-control", !bad.passed,
                                       std::to_string(bad.mismatches) + " mismatches"));
  }

  {
    const wl::CurvePtr& E = t25.curve;
    rep.cases.push_back(predicate_case(
        "t25/nondegeneracy", wl::element_order(wl::miller_pairing(E, t25.P, t25.Q, 25), 25) == 25));
    wl::GridCertificate good =
        wl::level_compatibility(E, t25.P, t25.Q, 5, 1, wl::CMEndo{t25.i, 5, 0});
    rep.cases.push_back(predicate_case("t25/level-compatibility", good.passed,
                                       std::to_string(good.pairs) + " pairs"));

    std::vector<wl::Point> grid = grid_points(t25, 25);
    ltk::SplitMix64 rng{ltk::mix_seed(cfg.seed, "weil/t25")};
    bool adj = true;
    wl::CMEndo phi{t25.i, 3, 4};
    wl::CMEndo phid = wl::dual(phi);
    for (uint32_t t = 0; t < std::max(20u, cfg.trials); ++t) {
      const wl::Point& A = grid[rng.below(grid.size())];
      const wl::Point& B = grid[rng.below(grid.size())];
      adj = adj && wl::miller_pairing(E, wl::apply(E, phi, A), B, 25) ==
                       wl::miller_pairing(E, A, wl::apply(E, phid, B), 25);
    }
    rep.cases.push_back(predicate_case("t25/adjointness-sample", adj));
  }
  return rep;
}

struct SuiteEntry {
  const char* name;
  SuiteReport (*fn)(const Config&);
};

// Alphabetical; suite_names() relies on this order.
constexpr SuiteEntry kSuites[] = {
    {"coleman", suite_coleman},
    {"dertheta", suite_dertheta},
    {"formal-group", suite_formal_group},
    {"gm-closed-forms", suite_gm_closed_forms},
    {"lt-isomorphism", suite_lt_isomorphism},
    {"theta-congruence", suite_theta_congruence},
    {"trace-stability", suite_trace_stability},
    {"unit-log-stability", suite_unit_log_stability},
    {"weil", suite_weil},
};

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const SuiteEntry& e : kSuites) out.push_back(e.name);
    return out;
  }();
  return names;
}

SuiteReport run_suite(const std::string& name, const Config& cfg) {
  if (!is_prime_u32(cfg.prime) || cfg.prime < 3)
    throw std::invalid_argument("config: prime must be an odd prime");
  if (cfg.precision < 4 || cfg.precision > padic::max_precision(cfg.prime))
    throw std::invalid_argument("config: precision out of range for the prime");
  if (cfg.degree_cap < 4 || cfg.degree_cap > 4096)
    throw std::invalid_argument("config: degree_cap out of range");

  for (const SuiteEntry& entry : kSuites) {
    if (name != entry.name) continue;
    auto started = std::chrono::steady_clock::now();
    SuiteReport rep;
    try {
      rep = entry.fn(cfg);
    } catch (const std::exception& err) {
      // A suite that cannot complete is a failed suite, not a dead run.
      CaseResult r;
      r.name = "exception";
      r.status = CaseStatus::fail;
      r.note = err.what();
      rep.cases.push_back(r);
    }
    rep.suite = entry.name;
    rep.seed = ltk::mix_seed(cfg.seed, entry.name);
    rep.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
            .count();
    return rep;
  }
  throw std::invalid_argument("unknown suite " + name);
}

}  // namespace harness
}  // namespace ltk
