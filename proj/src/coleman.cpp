#include "ltk/coleman.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace ltk {
namespace coleman {

using padic::PAdicFrac;
using padic::PAdicInt;
using series::Series1;
namespace lf = localfield;
namespace lt = lubin_tate;

namespace {

// The level-1 modulus m(X) = X^d + sum m_i X^i evaluated at a ring element.
lf::Elem eval_modulus(const lf::RingPtr& r, const lf::Elem& x) {
  uint32_t d = r->degree;
  lf::Elem acc = lf::one(r);
  for (uint32_t i = d; i-- > 0;) acc = acc * x + lf::lift(r, r->modulus[i]);
  return acc;
}

// Coefficients of m(w_1 Y) / w_1^d, the rescaled modulus whose reduction is
// Y^d - 1 up to lower-order terms; its residue roots 1, ..., p-1 are simple.
std::vector<lf::Elem> rescaled_modulus(const lf::RingPtr& r) {
  uint32_t d = r->degree;
  std::vector<lf::Elem> c;
  for (uint32_t i = 0; i < d; ++i) {
    lf::Elem ci = lf::lift(r, r->modulus[i]);
    for (uint32_t k = i; k < d; ++k) ci = lf::exact_div_pi(ci);
    c.push_back(ci);
  }
  return c;
}

lf::Elem eval_rescaled(const lf::RingPtr& r, const std::vector<lf::Elem>& c, const lf::Elem& y) {
  lf::Elem acc = lf::one(r);
  for (uint32_t i = static_cast<uint32_t>(c.size()); i-- > 0;) acc = acc * y + c[i];
  return acc;
}

lf::Elem eval_rescaled_deriv(const lf::RingPtr& r, const std::vector<lf::Elem>& c,
                             const lf::Elem& y) {
  uint32_t d = static_cast<uint32_t>(c.size());
  lf::Elem acc = lf::from_int(r, static_cast<int64_t>(d));
  for (uint32_t i = d - 1; i >= 1; --i)
    acc = acc * y + lf::from_int(r, static_cast<int64_t>(i)) * c[i];
  return acc;
}

void check_norm_coherent(const std::vector<lf::Elem>& beta) {
  for (const lf::Elem& b : beta)
    if (!lf::is_unit(b)) throw std::logic_error("coleman data: beta values must be units");
  for (size_t k = 0; k + 1 < beta.size(); ++k)
    if (!lf::agree(lf::norm_to_below(beta[k + 1]), beta[k]).full())
      throw std::logic_error("coleman data: beta is not norm coherent");
}

}  // namespace

std::vector<lf::Elem> pi_torsion(const lt::FormalGroupLaw& G, const lt::TorsionTower& tower) {
  if (tower.rings.empty()) throw std::invalid_argument("pi_torsion: empty tower");
  const lf::RingPtr& r1 = tower.rings[0];
  const lf::Elem& w1 = tower.gens[0];
  std::vector<lf::Elem> out;
  out.push_back(lf::zero(r1));
  out.push_back(w1);
  // Substituting Z = w_1 Y rescales the Eisenstein modulus to a polynomial
  // with simple unit residue roots; Hensel lifting from the residue class u
  // recovers the root congruent to u w_1 at full ring precision.
  std::vector<lf::Elem> c = rescaled_modulus(r1);
  for (uint32_t u = 2; u < G.prime; ++u) {
    lf::Elem y = lf::from_int(r1, static_cast<int64_t>(u));
    for (int step = 0; step < 48; ++step) {
      lf::Elem my = eval_rescaled(r1, c, y);
      if (my.is_zero()) break;
      y = y - my * lf::unit_inverse(eval_rescaled_deriv(r1, c, y));
    }
    lf::Elem x = w1 * y;
    if (!eval_modulus(r1, x).is_zero())
      throw std::logic_error("pi_torsion: Hensel lift did not converge");
    out.push_back(x);
  }
  for (size_t i = 1; i < out.size(); ++i)
    for (size_t j = i + 1; j < out.size(); ++j)
      if ((out[i] - out[j]).is_zero()) throw std::logic_error("pi_torsion: repeated root");
  return out;
}

Series1<PAdicInt> coleman_norm(const Series1<PAdicInt>& g, const lt::FormalGroupLaw& G,
                               const lt::TorsionTower& tower) {
  if (!g[0].is_unit())
    throw std::invalid_argument("coleman_norm: constant term must be a unit");
  uint32_t cap = std::min(g.cap(), G.F.cap());
  const lf::RingPtr& r1 = tower.rings[0];
  std::vector<lf::Elem> tors = pi_torsion(G, tower);

  Series1<lf::Elem> prod = series::const1(lf::one(r1), cap);
  for (const lf::Elem& t : tors) {
    std::vector<lf::Elem> tp;
    tp.push_back(lf::one(r1));
    for (uint32_t j = 1; j <= cap; ++j) tp.push_back(tp.back() * t);
    // F(Z, t) as a univariate series: coefficient i is sum_j F_ij t^j.
    Series1<lf::Elem> inner(lf::zero(r1), cap);
    for (uint32_t i = 0; i <= cap; ++i) {
      lf::Elem acc = lf::zero(r1);
      for (uint32_t j = 0; i + j <= cap; ++j) {
        const PAdicInt& c = G.F.at(i, j);
        if (c.is_zero()) continue;
        acc = acc + lf::scalar_to(r1, c) * tp[j];
      }
      inner.set(i, acc);
    }
    auto emb = [&](const PAdicInt& c) { return series::const1(lf::scalar_to(r1, c), cap); };
    prod = prod * series::eval_poly(g, inner, emb);
  }

  // Every coefficient must visibly lie in the base before the descent.
  uint32_t d = r1->degree;
  Series1<PAdicInt> pb(padic::zero_of(G.pi), cap);
  for (uint32_t r = 0; r <= cap; ++r) {
    const lf::Elem& c = prod[r];
    for (uint32_t i = 1; i < d; ++i)
      if (!c.coord(i).is_zero())
        throw std::invalid_argument("coleman_norm: product does not descend to the base");
    pb.set(r, c.coord(0).scalar());
  }

  // Solve Q(f(Z)) = P(Z) degree by degree; [f^r]_r = pi^r.
  Series1<PAdicInt> ftr = G.f.truncated(cap);
  std::vector<Series1<PAdicInt>> fpow;
  fpow.push_back(series::const1(padic::one_of(G.pi), cap));
  for (uint32_t j = 1; j <= cap; ++j) fpow.push_back((fpow.back() * ftr).truncated(cap));

  PAdicInt upart = padic::exact_div_p(G.pi, 1);
  PAdicInt uinv = padic::unit_inverse(upart);
  PAdicInt uinv_pow = padic::one_of(G.pi);
  Series1<PAdicInt> q(padic::zero_of(G.pi), cap);
  q.set(0, pb[0]);
  for (uint32_t r = 1; r <= cap; ++r) {
    PAdicInt acc = pb[r];
    for (uint32_t j = 1; j < r; ++j) acc = acc - q[j] * fpow[j][r];
    uinv_pow = uinv_pow * uinv;
    q.set(r, padic::exact_div_p(acc, r) * uinv_pow);
  }
  return q;
}

InterpolationCertificate check_interpolation(const ColemanData& data) {
  InterpolationCertificate cert;
  cert.passed = true;
  for (uint32_t k = 1; k <= data.tower.gens.size(); ++k) {
    lf::Elem val = lt::eval_at(data.g, data.tower.gens[k - 1]);
    auto ag = lf::agree(val, data.beta[k - 1]);
    cert.levels.push_back(LevelReport{k, ag.digits, ag.full()});
    cert.passed = cert.passed && ag.full();
  }
  return cert;
}

Series1<PAdicInt> delta(const Series1<PAdicInt>& g, const lt::FormalGroupLaw& G) {
  if (!g[0].is_unit()) throw std::invalid_argument("delta: constant term must be a unit");
  if (g.cap() == 0 || G.lambda.cap() == 0) throw std::invalid_argument("delta: cap exhausted");
  auto frac = [](const PAdicInt& c) { return PAdicFrac(c, 0); };
  Series1<PAdicFrac> gf = series::map_coeffs(g, frac);
  Series1<PAdicFrac> den = gf * series::derive(G.lambda);
  Series1<PAdicFrac> df = series::derive(gf) * series::mul_inverse(den);
  return series::map_coeffs(df, [](const PAdicFrac& c) { return padic::reduce_integral(c); });
}

PAdicInt delta_at_zero(const Series1<PAdicInt>& g) {
  if (g.cap() == 0) throw std::invalid_argument("delta_at_zero: cap exhausted");
  if (!g[0].is_unit()) throw std::invalid_argument("delta_at_zero: constant term must be a unit");
  return g[1] * padic::unit_inverse(g[0]);
}

PAdicFrac trace_delta_level(const Series1<PAdicInt>& g, const lt::FormalGroupLaw& G,
                            const lt::TorsionTower& tower, uint32_t n) {
  if (n < 1 || n > tower.gens.size())
    throw std::invalid_argument("trace_delta_level: level outside the tower");
  Series1<PAdicInt> d = delta(g, G);
  lf::Elem x = lt::eval_at(d, tower.gens[n - 1]);
  PAdicInt t = lf::trace_to_base(x);
  PAdicInt num = t * padic::pow_int(padic::unit_inverse(padic::exact_div_p(G.pi, 1)), n);
  return PAdicFrac(padic::exact_div_p(num, n - 1), 1);
}

PAdicFrac dual_exp(const Series1<PAdicInt>& g, const lt::FormalGroupLaw& G,
                   const PAdicInt& unit_root) {
  if (!unit_root.is_unit()) throw std::invalid_argument("dual_exp: eigenvalue must be a unit");
  PAdicInt d = delta_at_zero(g);
  PAdicInt p = padic::int_of(unit_root, static_cast<int64_t>(unit_root.prime()));
  (void)G;
  return PAdicFrac((unit_root - p) * d, 1);
}

ColemanData make_cyclotomic(uint32_t p, uint32_t N, uint32_t cap, int64_t a, uint32_t levels,
                            uint32_t biv_cap) {
  if (a < 1 || static_cast<uint64_t>(a) > cap)
    throw std::invalid_argument("make_cyclotomic: need 1 <= a <= cap");
  if (static_cast<uint64_t>(a) % p == 0)
    throw std::invalid_argument("make_cyclotomic: a must be prime to p");
  if (levels < 1) throw std::invalid_argument("make_cyclotomic: need at least one level");
  Series1<PAdicInt> f = lt::frobenius_gm_twin(p, N, cap);
  PAdicInt pi = padic::int_of(f.proto(), static_cast<int64_t>(p));
  lt::FormalGroupLaw G = lt::make_group(f, pi, biv_cap, p);
  lt::TorsionTower tower = lt::make_tower(G, levels);

  // g_a = ((1+Z)^a - 1)/Z, exact since a <= cap; beta_k = [a](w_k)/w_k.
  Series1<PAdicInt> mul_a = lt::one_plus_pow(a, f.proto(), cap);
  Series1<PAdicInt> g(f.proto(), cap);
  for (uint32_t i = 0; i + 1 <= cap; ++i) g.set(i, mul_a[i + 1]);
  std::vector<lf::Elem> beta;
  for (uint32_t k = 0; k < levels; ++k)
    beta.push_back(lf::exact_div_pi(lt::eval_at(mul_a, tower.gens[k])));
  check_norm_coherent(beta);
  return ColemanData{std::move(G), std::move(tower), std::move(beta), std::move(g),
                     "cyclotomic:a=" + std::to_string(a)};
}

ColemanData make_tautological(uint32_t p, uint32_t N, uint32_t cap, int64_t c, uint32_t levels,
                              uint32_t biv_cap) {
  if (c % static_cast<int64_t>(p) == 0)
    throw std::invalid_argument("make_tautological: c must be a unit");
  if (levels < 1) throw std::invalid_argument("make_tautological: need at least one level");
  if (cap < 1) throw std::invalid_argument("make_tautological: cap exhausted");
  Series1<PAdicInt> f = lt::frobenius_gm_twin(p, N, cap);
  PAdicInt pi = padic::int_of(f.proto(), static_cast<int64_t>(p));
  lt::FormalGroupLaw G = lt::make_group(f, pi, biv_cap, p);
  lt::TorsionTower tower = lt::make_tower(G, levels);

  Series1<PAdicInt> g(f.proto(), cap);
  g.set(0, padic::int_of(f.proto(), c));
  g.set(1, padic::one_of(f.proto()));
  std::vector<lf::Elem> beta;
  for (uint32_t k = 0; k < levels; ++k)
    beta.push_back(tower.gens[k] + lf::from_int(tower.rings[k], c));
  check_norm_coherent(beta);
  return ColemanData{std::move(G), std::move(tower), std::move(beta), std::move(g),
                     "tautological:c=" + std::to_string(c)};
}

ColemanData make_named(const std::string& name, uint32_t p, uint32_t N, uint32_t cap,
                       uint32_t levels, uint32_t biv_cap) {
  auto colon = name.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("make_named: expected kind:key=value, got " + name);
  std::string kind = name.substr(0, colon);
  std::string rest = name.substr(colon + 1);
  auto eq = rest.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("make_named: expected kind:key=value, got " + name);
  std::string key = rest.substr(0, eq);
  int64_t val = std::stoll(rest.substr(eq + 1));
  if (kind == "cyclotomic" && key == "a") return make_cyclotomic(p, N, cap, val, levels, biv_cap);
  if (kind == "tautological" && key == "c")
    return make_tautological(p, N, cap, val, levels, biv_cap);
  throw std::invalid_argument("make_named: unknown dataset " + name);
}

}  // namespace coleman
}  // namespace ltk
