#include "ltk/lubin_tate.hpp"

#include <algorithm>
#include <stdexcept>

namespace ltk {
namespace lubin_tate {

using localfield::Elem;
using localfield::RingPtr;
using padic::PAdicFrac;
using padic::PAdicInt;
using series::Series1;
using series::Series2;
using series::Series3;

namespace {

uint32_t poly_degree(const Series1<PAdicInt>& f) {
  for (int64_t i = (int64_t)f.cap(); i >= 0; --i)
    if (!f[(uint32_t)i].is_zero()) return (uint32_t)i;
  return 0;
}

// f^0 .. f^count, all truncated to cap
std::vector<Series1<PAdicInt>> power_table(const Series1<PAdicInt>& f, uint32_t count,
                                           uint32_t cap) {
  std::vector<Series1<PAdicInt>> t;
  t.reserve(count + 1);
  t.push_back(series::const1(padic::one_of(f.proto()), cap));
  if (count >= 1) t.push_back(f.truncated(cap));
  for (uint32_t j = 2; j <= count; ++j) t.push_back((t.back() * t[1]).truncated(cap));
  return t;
}

void validate_frobenius(const Series1<PAdicInt>& f, const PAdicInt& pi) {
  uint32_t p = pi.prime();
  auto vpi = pi.valuation();
  if (vpi.inf || vpi.v != 1)
    throw std::invalid_argument("make_group: uniformizer must have valuation 1");
  if (f.cap() < p) throw std::invalid_argument("make_group: series cap below p");
  if (!f[0].is_zero()) throw std::invalid_argument("make_group: nonzero constant term");
  if (!padic::agree(f[1], pi).full())
    throw std::invalid_argument("make_group: linear term differs from the uniformizer");
  for (uint32_t i = 2; i <= f.cap(); ++i) {
    PAdicInt t = (i == p) ? f[i] - padic::one_of(pi) : f[i];
    if (t.is_zero()) continue;
    auto v = t.valuation();
    if (v.inf || v.v < 1) throw std::invalid_argument("make_group: f is not Z^p mod p");
  }
}

// unit u with pi^r - pi = p * u
PAdicInt denom_unit(const PAdicInt& pi, uint32_t r) {
  return padic::unit_inverse(padic::exact_div_p(padic::pow_int(pi, r) - pi, 1));
}

Series2<PAdicInt> build_law(const Series1<PAdicInt>& f, const PAdicInt& pi, uint32_t cap) {
  PAdicInt proto = padic::zero_of(pi);
  PAdicInt unit = padic::one_of(pi);
  Series2<PAdicInt> F(proto, cap);
  if (cap >= 1) {
    F.set(1, 0, unit);
    F.set(0, 1, unit);
  }
  uint32_t fdeg = poly_degree(f);
  auto fpow = power_table(f, cap, cap);
  for (uint32_t r = 2; r <= cap; ++r) {
    PAdicInt inv_denom = denom_unit(pi, r);
    // degree-r slice of f(F_{<r}) - F_{<r}(f(X), f(Y)); slice[j] sits at X^(r-j) Y^j
    std::vector<PAdicInt> slice(r + 1, proto);
    Series2<PAdicInt> Ftr = F.truncated(r);
    Series2<PAdicInt> Fp = Ftr;
    for (uint32_t i = 1; i <= std::min(fdeg, r); ++i) {
      if (i >= 2) Fp = (Fp * Ftr).truncated(r);
      if (f[i].is_zero()) continue;
      for (uint32_t j = 0; j <= r; ++j) slice[j] = slice[j] + f[i] * Fp.at(r - j, j);
    }
    for (uint32_t d = 1; d < r; ++d)
      for (uint32_t j2 = 0; j2 <= d; ++j2) {
        uint32_t i2 = d - j2;
        const PAdicInt& c = F.at(i2, j2);
        if (c.is_zero()) continue;
        for (uint32_t a = i2; a + j2 <= r; ++a) {
          uint32_t b = r - a;
          slice[b] = slice[b] - c * (fpow[i2][a] * fpow[j2][b]);
        }
      }
    // the defect is divisible by pi^r - pi; the quotient is the new slice
    for (uint32_t j = 0; j <= r; ++j)
      F.set(r - j, j, padic::exact_div_p(slice[j], 1) * inv_denom);
  }
  return F;
}

Series1<PAdicFrac> build_log(const Series1<PAdicInt>& f, const PAdicInt& pi) {
  uint32_t cap = f.cap();
  PAdicFrac fproto(padic::zero_of(pi), 0);
  Series1<PAdicFrac> lam(fproto, cap);
  if (cap >= 1) lam.set(1, PAdicFrac(padic::one_of(pi), 0));
  auto fpow = power_table(f, cap, cap);
  // lambda(f(Z)) = pi lambda(Z), degree by degree
  for (uint32_t r = 2; r <= cap; ++r) {
    PAdicFrac acc = fproto;
    for (uint32_t j = 1; j < r; ++j) {
      const PAdicInt& c = fpow[j][r];
      if (c.is_zero()) continue;
      acc = acc + lam[j] * PAdicFrac(c, 0);
    }
    PAdicFrac denom(pi - padic::pow_int(pi, r), 0);
    lam.set(r, acc * padic::inverse(denom));
  }
  return lam;
}

}  // namespace

FormalGroupLaw make_group(const Series1<PAdicInt>& f, const PAdicInt& pi, uint32_t biv_cap,
                          uint32_t exp_cap) {
  validate_frobenius(f, pi);
  uint32_t bc = std::min(biv_cap, f.cap());
  uint32_t ec = std::min(exp_cap, f.cap());
  Series2<PAdicInt> F = build_law(f, pi, bc);
  Series1<PAdicFrac> lam = build_log(f, pi);
  Series1<PAdicFrac> ex = series::revert(lam.truncated(ec));
  PAdicInt proto = padic::zero_of(pi);
  if (!series::agreement(series::along_x(F), series::var1(proto, bc)).full ||
      !series::agreement(series::along_y(F), series::var1(proto, bc)).full)
    throw std::logic_error("make_group: unit law violated");
  if (!series::agreement(F, series::swap_vars(F)).full)
    throw std::logic_error("make_group: commutativity violated");
  return FormalGroupLaw{static_cast<uint32_t>(pi.prime()), pi, f, std::move(F), std::move(lam),
                        std::move(ex)};
}

Series1<PAdicInt> frobenius_polynomial(uint32_t p, uint32_t N, uint32_t cap) {
  if (cap < p) throw std::invalid_argument("frobenius_polynomial: cap below p");
  PAdicInt proto = PAdicInt::from_int(p, N, 0);
  Series1<PAdicInt> f(proto, cap);
  f.set(1, padic::int_of(proto, (int64_t)p));
  f.set(p, padic::one_of(proto));
  return f;
}

Series1<PAdicInt> frobenius_gm_twin(uint32_t p, uint32_t N, uint32_t cap) {
  if (cap < p) throw std::invalid_argument("frobenius_gm_twin: cap below p");
  PAdicInt proto = PAdicInt::from_int(p, N, 0);
  Series1<PAdicInt> f(proto, cap);
  int64_t binom = 1;
  for (uint32_t k = 1; k <= p; ++k) {
    binom = binom * (int64_t)(p - k + 1) / (int64_t)k;
    f.set(k, padic::int_of(proto, binom));
  }
  return f;
}

Series1<PAdicInt> mult_by(const FormalGroupLaw& G, const PAdicInt& a) {
  if (a.prime() != G.prime) throw std::invalid_argument("mult_by: prime mismatch");
  uint32_t cap = G.f.cap();
  PAdicInt proto = padic::zero_of(G.pi);
  Series1<PAdicInt> phi(proto, cap);
  phi.set(1, a);
  uint32_t fdeg = poly_degree(G.f);
  auto fpow = power_table(G.f, cap, cap);
  for (uint32_t r = 2; r <= cap; ++r) {
    // [phi(f)]_r from the f-power table
    PAdicInt e1 = proto;
    for (uint32_t j = 1; j < r; ++j) {
      if (phi[j].is_zero()) continue;
      e1 = e1 + phi[j] * fpow[j][r];
    }
    // [f(phi)]_r from a phi-power chain
    Series1<PAdicInt> ptr = phi.truncated(r);
    Series1<PAdicInt> pp = ptr;
    PAdicInt e2 = proto;
    for (uint32_t i = 1; i <= std::min(fdeg, r); ++i) {
      if (i >= 2) pp = (pp * ptr).truncated(r);
      if (G.f[i].is_zero()) continue;
      e2 = e2 + G.f[i] * pp[r];
    }
    phi.set(r, padic::exact_div_p(e2 - e1, 1) * denom_unit(G.pi, r));
  }
  return phi;
}

Series1<PAdicInt> reciprocal_dlog(const FormalGroupLaw& G, uint32_t cap) {
  uint32_t c = std::min(cap, G.f.cap() - 1);
  PAdicInt proto = padic::zero_of(G.pi);
  Series1<PAdicInt> w(proto, c);
  w.set(0, padic::one_of(G.pi));
  auto fpow = power_table(G.f, c, c);
  Series1<PAdicInt> fd = series::derive(G.f);
  // pi w(f) = f' w, solved degree by degree; every step divides exactly
  for (uint32_t r = 1; r <= c; ++r) {
    PAdicInt acc = proto;
    for (uint32_t j = 0; j < r; ++j) {
      if (w[j].is_zero()) continue;
      acc = acc + w[j] * (fd[r - j] - G.pi * fpow[j][r]);
    }
    w.set(r, padic::exact_div_p(acc, 1) * denom_unit(G.pi, r + 1));
  }
  return w;
}

series::SeriesAgreement associativity_defect(const FormalGroupLaw& G, uint32_t cap) {
  uint32_t c = std::min(cap, G.F.cap());
  Series2<PAdicInt> Ftr = G.F.truncated(c);
  PAdicInt proto = padic::zero_of(G.pi);
  Series3<PAdicInt> X = series::var3(proto, c, 0);
  Series3<PAdicInt> Y = series::var3(proto, c, 1);
  Series3<PAdicInt> W = series::var3(proto, c, 2);
  auto emb = [&](const PAdicInt& v) { return series::const3(v, c); };
  Series3<PAdicInt> lhs = series::eval2_poly(Ftr, series::eval2_poly(Ftr, X, Y, emb), W, emb);
  Series3<PAdicInt> rhs = series::eval2_poly(Ftr, X, series::eval2_poly(Ftr, Y, W, emb), emb);
  return series::agreement(lhs, rhs);
}

Series2<PAdicInt> multiplicative_law(const PAdicInt& proto, uint32_t cap) {
  Series2<PAdicInt> F(padic::zero_of(proto), cap);
  PAdicInt unit = padic::one_of(proto);
  if (cap >= 1) {
    F.set(1, 0, unit);
    F.set(0, 1, unit);
  }
  if (cap >= 2) F.set(1, 1, unit);
  return F;
}

Series1<PAdicFrac> log1p_series(const PAdicInt& proto, uint32_t cap) {
  PAdicFrac fproto(padic::zero_of(proto), 0);
  Series1<PAdicFrac> s(fproto, cap);
  uint32_t p = proto.prime();
  for (uint32_t k = 1; k <= cap; ++k) {
    uint32_t m = k, v = 0;
    while (m % p == 0) {
      m /= p;
      ++v;
    }
    PAdicInt num = padic::unit_inverse(padic::int_of(proto, (int64_t)m));
    if (k % 2 == 0) num = -num;
    s.set(k, PAdicFrac(num, v));
  }
  return s;
}

Series1<PAdicFrac> exp_minus_one_series(const PAdicInt& proto, uint32_t cap) {
  PAdicFrac fproto(padic::zero_of(proto), 0);
  Series1<PAdicFrac> s(fproto, cap);
  uint32_t p = proto.prime();
  PAdicInt ufact = padic::one_of(proto);  // unit part of k!
  uint32_t vfact = 0;
  for (uint32_t k = 1; k <= cap; ++k) {
    uint32_t m = k;
    while (m % p == 0) {
      m /= p;
      ++vfact;
    }
    ufact = ufact * padic::int_of(proto, (int64_t)m);
    s.set(k, PAdicFrac(padic::unit_inverse(ufact), vfact));
  }
  return s;
}

Series1<PAdicInt> one_plus_pow(int64_t a, const PAdicInt& proto, uint32_t cap) {
  PAdicFrac binom(padic::one_of(proto), 0);  // C(a, k), running
  Series1<PAdicInt> s(padic::zero_of(proto), cap);
  for (uint32_t k = 1; k <= cap; ++k) {
    binom = binom * PAdicFrac(padic::int_of(proto, a - (int64_t)k + 1), 0);
    binom = binom * padic::inverse(PAdicFrac(padic::int_of(proto, (int64_t)k), 0));
    s.set(k, padic::reduce_integral(binom));
  }
  return s;
}

TorsionTower make_tower(const FormalGroupLaw& G, uint32_t levels) {
  if (levels < 1) throw std::invalid_argument("make_tower: need at least one level");
  uint32_t p = G.prime;
  if (poly_degree(G.f) != p)
    throw std::invalid_argument("make_tower: Frobenius series must be a degree-p polynomial");
  PAdicInt ifp = padic::unit_inverse(G.f[p]);
  RingPtr base = localfield::make_base(p, G.pi.precision());
  TorsionTower T;
  // level 1: monic (f(Z)/Z)/f_p, degree p-1
  std::vector<Elem> lower1;
  for (uint32_t i = 0; i + 1 <= p - 1; ++i)
    lower1.push_back(Elem::of_scalar(base, G.f[i + 1] * ifp));
  T.rings.push_back(localfield::make_eisenstein(base, lower1));
  T.gens.push_back(localfield::gen(T.rings[0]));
  // level k+1: monic (f(Z) - w_k)/f_p, degree p
  for (uint32_t k = 2; k <= levels; ++k) {
    RingPtr below = T.rings.back();
    std::vector<Elem> lower;
    lower.push_back(-(T.gens.back() * localfield::scalar_to(below, ifp)));
    for (uint32_t i = 1; i <= p - 1; ++i)
      lower.push_back(localfield::scalar_to(below, G.f[i] * ifp));
    T.rings.push_back(localfield::make_eisenstein(below, lower));
    T.gens.push_back(localfield::gen(T.rings.back()));
  }
  return T;
}

Elem eval_at(const Series1<PAdicInt>& s, const Elem& x) {
  return series::eval_poly(s, x, [&](const PAdicInt& c) { return localfield::scalar_to(x.ring(), c); });
}

Series1<PAdicInt> isomorphism(const FormalGroupLaw& src, const FormalGroupLaw& dst,
                              const PAdicInt& omega) {
  if (src.prime != dst.prime) throw std::invalid_argument("isomorphism: prime mismatch");
  if (!padic::agree(src.pi, dst.pi).full())
    throw std::invalid_argument("isomorphism: laws do not share a uniformizer");
  if (!omega.is_unit()) throw std::invalid_argument("isomorphism: omega must be a unit");
  uint32_t cap = std::min(src.lambda.cap(), dst.exp_f.cap());
  Series1<PAdicFrac> scaled =
      series::scale(src.lambda.truncated(cap), PAdicFrac(omega, 0));
  Series1<PAdicFrac> eta = series::compose(dst.exp_f.truncated(cap), scaled);
  // integrality certificate: every coefficient must reduce
  return series::map_coeffs(eta, [](const PAdicFrac& c) { return padic::reduce_integral(c); });
}

}  // namespace lubin_tate
}  // namespace ltk
