#include "ltk/iwasawa.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ltk {
namespace iwasawa {

using padic::PAdicFrac;
using padic::PAdicInt;
using series::Series1;
namespace cl = coleman;
namespace lf = localfield;
namespace lt = lubin_tate;

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Inverse of a unit mod p^k via the unit-group order.
uint64_t inv_unit_mod(uint64_t u, uint64_t p, uint64_t pk) {
  uint64_t order = (pk / p) * (p - 1);
  return powmod(u % pk, order - 1, pk);
}

uint32_t val_p(uint64_t x, uint64_t p, uint32_t cap) {
  if (x == 0) return cap;
  uint32_t v = 0;
  while (v < cap && x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

void require_compatible(const IwasawaElement& a, const IwasawaElement& b) {
  if (a.branch != b.branch)
    throw std::invalid_argument("iwasawa: branch mismatch");
  if (!padic::agree(a.c, b.c).full())
    throw std::invalid_argument("iwasawa: generator datum mismatch");
}

// Residue of a unit in a totally ramified tower: the base scalar under
// repeated constant-coordinate projection.
PAdicInt base_residue(const lf::Elem& x) {
  const lf::Elem* e = &x;
  while (!e->is_base()) e = &e->coord(0);
  return e->scalar();
}

// p^s log(1+x) as an integral element, summing K terms.  Requires s >=
// log_p K so every division is exact.
lf::Elem log1p_scaled(const lf::Elem& x, uint32_t K, uint32_t s) {
  const lf::RingPtr& r = x.ring();
  uint64_t p = r->prime;
  PAdicInt proto = PAdicInt::from_int(p, r->precision, 0);
  lf::Elem acc = lf::zero(r);
  lf::Elem xp = lf::one(r);
  for (uint32_t k = 1; k <= K; ++k) {
    xp = xp * x;
    uint64_t kk = k;
    uint32_t vk = 0;
    while (kk % p == 0) {
      kk /= p;
      ++vk;
    }
    PAdicInt coeff = padic::mul_pow_p(
        padic::unit_inverse(padic::int_of(proto, static_cast<int64_t>(kk))), s - vk);
    if (k % 2 == 0) coeff = padic::zero_of(proto) - coeff;
    acc = acc + lf::scalar_to(r, coeff) * xp;
  }
  return acc;
}

// Term count and scale so the dropped log tail sits below the stored
// precision of the deepest ring.
void log_budget(uint32_t e, uint32_t N, uint64_t p, uint32_t& K, uint32_t& s) {
  auto flog = [&](uint64_t k) {
    uint32_t l = 0;
    while (k >= p) {
      k /= p;
      ++l;
    }
    return l;
  };
  uint64_t target = static_cast<uint64_t>(e) * (N + 1);
  uint64_t last = 1;
  for (uint64_t k = 1; k <= 4ull * e * (N + 3); ++k)
    if (k < target + static_cast<uint64_t>(e) * flog(k)) last = k;
  K = static_cast<uint32_t>(last + 1);
  s = flog(K);
}

std::vector<uint64_t> unit_labels(uint64_t p, uint32_t n) {
  uint64_t pn = 1;
  for (uint32_t i = 0; i < n; ++i) pn *= p;
  std::vector<uint64_t> labels;
  for (uint64_t b = 1; b < pn; ++b)
    if (b % p != 0) labels.push_back(b);
  return labels;
}

}  // namespace

PAdicInt gamma_datum(uint32_t g0, const PAdicInt& proto) {
  PAdicInt om = padic::teichmuller(padic::int_of(proto, static_cast<int64_t>(g0)));
  PAdicInt c = om * padic::exp_p(padic::mul_pow_p(padic::one_of(proto), 1));
  validate_gamma(c);
  return c;
}

void validate_gamma(const PAdicInt& c) {
  if (!c.is_unit()) throw std::invalid_argument("gamma datum: not a unit");
  uint64_t p = c.prime();
  PAdicInt om = padic::teichmuller(c);
  PAdicInt principal = c * padic::unit_inverse(om);
  PAdicInt lg = padic::log1p(principal - padic::one_of(c));
  if (!padic::agree(lg, padic::int_of(c, static_cast<int64_t>(p))).full())
    throw std::invalid_argument("gamma datum: principal logarithm is not p");
  uint64_t r = om.residue() % p;
  uint64_t acc = 1;
  for (uint32_t k = 1; k + 1 < p; ++k) {
    acc = (acc * r) % p;
    if (acc == 1)
      throw std::invalid_argument("gamma datum: Teichmuller part is not primitive");
  }
}

IwasawaElement make_element(uint32_t branch, Series1<PAdicInt> coeffs, PAdicInt c) {
  validate_gamma(c);
  uint32_t pm1 = static_cast<uint32_t>(c.prime()) - 1;
  return IwasawaElement{branch % pm1, std::move(coeffs), std::move(c)};
}

IwasawaElement constant_element(const PAdicInt& k, const PAdicInt& c, uint32_t cap) {
  return make_element(psi_star_branch(), series::const1(k, cap), c);
}

IwasawaElement operator+(const IwasawaElement& a, const IwasawaElement& b) {
  require_compatible(a, b);
  return IwasawaElement{a.branch, a.coeffs + b.coeffs, a.c};
}

IwasawaElement operator*(const IwasawaElement& a, const IwasawaElement& b) {
  require_compatible(a, b);
  return IwasawaElement{a.branch, a.coeffs * b.coeffs, a.c};
}

PAdicInt eval_character(const IwasawaElement& F, const PAdicInt& s) {
  PAdicInt x = F.c * padic::exp_p(padic::mul_pow_p(s, 1)) - padic::one_of(F.c);
  return series::eval_poly(F.coeffs, x, [](const PAdicInt& v) { return v; });
}

IwasawaElement theta_element(const PAdicInt& c, uint32_t cap) {
  if (cap < 1) throw std::invalid_argument("theta_element: cap must be positive");
  PAdicInt cinv = padic::unit_inverse(c);
  Series1<PAdicInt> t(padic::zero_of(c), cap);
  t.set(0, cinv - padic::one_of(c));
  t.set(1, cinv);
  return make_element(psi_star_branch(), std::move(t), c);
}

PAdicInt D_star(const IwasawaElement& F, uint32_t m) {
  uint64_t p = F.c.prime();
  if (m >= p) throw std::invalid_argument("D_star: order must stay below p");
  PAdicInt one = padic::one_of(F.c);
  // X(s) = c * exp_p(p s) - 1 expanded to s-degree m; the factorials are
  // units below p.
  Series1<PAdicInt> X(padic::zero_of(F.c), m);
  X.set(0, F.c - one);
  int64_t fact = 1;
  for (uint32_t k = 1; k <= m; ++k) {
    fact *= k;
    PAdicInt coeff = padic::mul_pow_p(padic::unit_inverse(padic::int_of(F.c, fact)), k);
    X.set(k, F.c * coeff);
  }
  Series1<PAdicInt> value = series::eval_poly(
      F.coeffs, X, [&](const PAdicInt& v) { return series::const1(v, m); });
  return value[m];
}

DerthetaCertificate verify_dertheta(const IwasawaElement& F, uint32_t m) {
  uint64_t p = F.c.prime();
  if (m < 1 || m > 3 || m >= p)
    throw std::invalid_argument("verify_dertheta: order must be 1..3 and below p");
  // The product theta*^m F is exact only when F carries m zero coefficients
  // of headroom at the top of its cap.
  uint32_t cap = F.coeffs.cap();
  if (cap < m) throw std::invalid_argument("verify_dertheta: cap too small");
  for (uint32_t k = cap - m + 1; k <= cap; ++k)
    if (!F.coeffs[k].is_zero())
      throw std::invalid_argument("verify_dertheta: needs m zero top coefficients");
  IwasawaElement prod = theta_element(F.c, cap);
  for (uint32_t k = 1; k < m; ++k) prod = prod * theta_element(F.c, cap);
  prod = prod * F;
  PAdicInt lhs = D_star(prod, m);
  PAdicInt rhs = padic::mul_pow_p(eval_character(F, padic::zero_of(F.c)), m);
  padic::Agreement ag = padic::agree(lhs, rhs);
  return DerthetaCertificate{lhs, rhs, ag.digits, ag.full()};
}

DivisionCertificate divide_by_theta(const IwasawaElement& F) {
  uint32_t cap = F.coeffs.cap();
  if (cap < 1) throw std::invalid_argument("divide_by_theta: cap must be positive");
  PAdicInt r = F.c - padic::one_of(F.c);
  // Synthetic division of F - F(psi*) at the root c - 1; theta* = c^{-1}(T - r).
  Series1<PAdicInt> q(padic::zero_of(F.c), cap - 1);
  q.set(cap - 1, F.coeffs[cap]);
  for (uint32_t k = cap - 1; k >= 1; --k) q.set(k - 1, F.coeffs[k] + r * q[k]);
  Series1<PAdicInt> cq = series::scale(q, F.c);
  IwasawaElement quotient = make_element(F.branch, cq, F.c);
  IwasawaElement recon = theta_element(F.c, cap - 1) * quotient +
                         constant_element(eval_character(F, padic::zero_of(F.c)), F.c, cap - 1);
  series::SeriesAgreement ag = series::agreement(recon.coeffs, F.coeffs.truncated(cap - 1));
  return DivisionCertificate{std::move(quotient), ag.digits, ag.full};
}

GroupAlgebraElement theta_times_twisted_sum(const PAdicInt& c, uint32_t n) {
  uint64_t p = c.prime();
  if (p < 3) throw std::invalid_argument("theta congruence: p must be odd");
  if (n < 1 || n >= c.precision())
    throw std::invalid_argument("theta congruence: level must be positive and below N");
  std::vector<uint64_t> labels = unit_labels(p, n);
  if (labels.size() > 1024) throw std::invalid_argument("theta congruence: group too large");
  uint64_t pn = 1;
  for (uint32_t i = 0; i < n; ++i) pn *= p;
  uint64_t M = c.modulus();
  uint64_t bg = c.residue() % pn;
  uint64_t bginv = inv_unit_mod(bg, p, pn);
  uint64_t cinv = inv_unit_mod(c.residue(), p, M);
  // Coefficient at sigma_x of (sigma_gamma c^{-1} - 1) sum_b b^{-1} sigma_b.
  GroupAlgebraElement out{static_cast<uint32_t>(p), n, {}};
  for (uint64_t x : labels) {
    uint64_t y = mulmod(x, bginv, pn);
    uint64_t t1 = mulmod(cinv, inv_unit_mod(y, p, M), M);
    uint64_t t2 = inv_unit_mod(x, p, M);
    uint64_t v = (t1 + M - t2) % M;
    out.coeffs.push_back(PAdicInt::from_residue(static_cast<uint32_t>(p), c.precision(), v));
  }
  return out;
}

CongruenceCertificate theta_congruence(const PAdicInt& c, uint32_t n, int64_t constant_shift) {
  GroupAlgebraElement lhs = theta_times_twisted_sum(c, n);
  uint64_t p = c.prime();
  uint32_t N = c.precision();
  uint64_t M = c.modulus();
  std::vector<uint64_t> labels = unit_labels(p, n);
  size_t h = labels.size();
  std::vector<size_t> idx(labels.back() + 1, h);
  for (size_t i = 0; i < h; ++i) idx[labels[i]] = i;
  uint64_t pn = 1;
  for (uint32_t i = 0; i < n; ++i) pn *= p;
  uint64_t pnM = pn % M;

  // Target: lhs + ((p-1) + shift) p^n at the identity must lie in p^n I_n.
  std::vector<uint64_t> R(h);
  for (size_t i = 0; i < h; ++i) R[i] = lhs.coeffs[i].residue();
  uint64_t shift = constant_shift >= 0
                       ? static_cast<uint64_t>(constant_shift) % M
                       : M - (static_cast<uint64_t>(-constant_shift) % M);
  R[idx[1]] = (R[idx[1]] + mulmod((p - 1 + shift) % M, pnM, M)) % M;

  // Module generators of p^n I_n: p^n (sigma_b - b) for b != 1, and the
  // constant p^{n + v0} with v0 the minimal valuation of (ab)-hat - a b.
  std::vector<std::vector<uint64_t>> gens;
  for (uint64_t b : labels) {
    if (b == 1) continue;
    std::vector<uint64_t> v(h, 0);
    v[idx[b]] = pnM;
    v[idx[1]] = (M - mulmod(pnM, b % M, M)) % M;
    gens.push_back(std::move(v));
  }
  uint32_t v0 = N;
  for (uint64_t a : labels)
    for (uint64_t b : labels) {
      uint64_t d = (mulmod(a, b, pn) + M - mulmod(a % M, b % M, M)) % M;
      v0 = std::min(v0, val_p(d, p, N));
    }
  {
    uint64_t cval = pnM;
    for (uint32_t i = 0; i < v0 && cval; ++i) cval = mulmod(cval, p, M);
    if (cval) {
      std::vector<uint64_t> v(h, 0);
      v[idx[1]] = cval;
      gens.push_back(std::move(v));
    }
  }

  // Incremental echelon with valuation pivots over Z/p^N.
  std::vector<std::vector<uint64_t>> rows(h);
  std::vector<bool> has(h, false);
  auto eliminate = [&](std::vector<uint64_t>& v, size_t j) {
    uint64_t pj = rows[j][j];
    uint32_t vp = val_p(pj, p, N);
    uint64_t uj = pj;
    for (uint32_t k = 0; k < vp; ++k) uj /= p;
    uint64_t vv = v[j];
    uint32_t vvp = val_p(vv, p, N);
    uint64_t uv = vv;
    for (uint32_t k = 0; k < vvp; ++k) uv /= p;
    uint64_t mu = mulmod(uv, inv_unit_mod(uj, p, M), M);
    for (uint32_t k = 0; k < vvp - vp; ++k) mu = mulmod(mu, p, M);
    for (size_t t = 0; t < h; ++t) v[t] = (v[t] + M - mulmod(mu, rows[j][t], M)) % M;
  };
  for (auto& g : gens) {
    std::vector<uint64_t> v = std::move(g);
    for (size_t j = 0; j < h; ++j) {
      if (v[j] == 0) continue;
      if (!has[j]) {
        rows[j] = std::move(v);
        has[j] = true;
        break;
      }
      if (val_p(v[j], p, N) < val_p(rows[j][j], p, N)) std::swap(v, rows[j]);
      eliminate(v, j);
    }
  }

  bool passed = true;
  int64_t residual = std::numeric_limits<int64_t>::max();
  for (size_t j = 0; j < h; ++j) {
    if (R[j] == 0) continue;
    if (has[j] && val_p(R[j], p, N) >= val_p(rows[j][j], p, N)) {
      eliminate(R, j);
      continue;
    }
    passed = false;
    residual = std::min(residual, static_cast<int64_t>(val_p(R[j], p, N)));
  }
  return CongruenceCertificate{passed, static_cast<uint32_t>(h),
                               passed ? std::numeric_limits<int64_t>::max() : residual};
}

UnitTowerData make_unit_tower(const cl::ColemanData& data) {
  if (data.name.rfind("cyclotomic", 0) != 0)
    throw std::invalid_argument("make_unit_tower: needs cyclotomic data");
  uint64_t p = data.G.prime;
  UnitTowerData out{data.tower, {}, {}, data.g, {}};
  for (size_t k = 0; k < data.tower.rings.size(); ++k) {
    const lf::RingPtr& r = data.tower.rings[k];
    const lf::Elem& w = data.tower.gens[k];
    std::vector<uint64_t> labels = unit_labels(p, static_cast<uint32_t>(k + 1));
    std::vector<lf::Elem> orbit;
    lf::Elem onew = lf::one(r) + w;
    for (uint64_t b : labels) orbit.push_back(lf::pow_elem(onew, b) - lf::one(r));
    out.labels.push_back(std::move(labels));
    out.action.push_back(std::move(orbit));
    out.units.push_back(lt::eval_at(data.g, w));
  }
  return out;
}

IotaPartial iota_star(const UnitTowerData& u, uint32_t n, const PAdicInt& unit_root) {
  if (n < 1 || n > u.tower.rings.size())
    throw std::invalid_argument("iota_star: level out of range");
  const lf::RingPtr& r = u.tower.rings[n - 1];
  if (r->res_degree != 1)
    throw std::invalid_argument("iota_star: needs a totally ramified tower");
  uint64_t p = r->prime;
  uint32_t N = r->precision;
  uint32_t K, s;
  log_budget(u.tower.rings.back()->abs_ram, N, p, K, s);
  PAdicInt proto = PAdicInt::from_int(p, N, 0);
  lf::Elem S = lf::zero(r);
  for (size_t i = 0; i < u.labels[n - 1].size(); ++i) {
    lf::Elem ut = lt::eval_at(u.g, u.action[n - 1][i]);
    if (!lf::is_unit(ut)) throw std::invalid_argument("iota_star: non-unit tower value");
    PAdicInt om = padic::teichmuller(base_residue(ut));
    lf::Elem principal = ut * lf::scalar_to(r, padic::unit_inverse(om));
    lf::Elem lg = log1p_scaled(principal - lf::one(r), K, s);
    PAdicInt binv = padic::unit_inverse(
        padic::int_of(proto, static_cast<int64_t>(u.labels[n - 1][i])));
    S = S + lf::scalar_to(r, binv) * lg;
  }
  S = S * lf::scalar_to(r, padic::int_of(proto, static_cast<int64_t>(p)) - unit_root);
  return IotaPartial{S, s + 1};
}

StabilityReport iota_star_stability(const UnitTowerData& u, const PAdicInt& unit_root) {
  StabilityReport rep{{}, {}, {}, true};
  for (uint32_t n = 1; n <= u.tower.rings.size(); ++n)
    rep.partials.push_back(iota_star(u, n, unit_root));
  for (size_t k = 1; k < rep.partials.size(); ++k) {
    const lf::RingPtr& deep = u.tower.rings[k];
    lf::Elem diff = rep.partials[k].value - lf::lift(deep, rep.partials[k - 1].value);
    lf::Val v = lf::valuation(diff);
    rep.diff_valuations.push_back(v.inf ? std::numeric_limits<int64_t>::max() : v.v);
    rep.diff_rams.push_back(deep->abs_ram);
  }
  for (size_t k = 1; k < rep.diff_valuations.size(); ++k) {
    int64_t a = rep.diff_valuations[k - 1], b = rep.diff_valuations[k];
    if (b == std::numeric_limits<int64_t>::max()) continue;
    if (a == std::numeric_limits<int64_t>::max() ||
        b * static_cast<int64_t>(rep.diff_rams[k - 1]) <
            a * static_cast<int64_t>(rep.diff_rams[k]))
      rep.nondecreasing = false;
  }
  return rep;
}

PAdicFrac iota_w(const PAdicInt& beta_delta, const PAdicInt& omega, const PAdicInt& unit_root) {
  PAdicInt num = (padic::int_of(beta_delta, static_cast<int64_t>(beta_delta.prime())) -
                  unit_root) *
                 omega * beta_delta;
  return PAdicFrac(num, 1);
}

}  // namespace iwasawa
}  // namespace ltk
