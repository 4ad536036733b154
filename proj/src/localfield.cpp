#include "ltk/localfield.hpp"

#include <optional>
#include <stdexcept>

namespace ltk {
namespace localfield {

namespace {

bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a.get() == b.get() || ring_equal(a, b);
}

void require_same_ring(const Elem& a, const Elem& b) {
  if (!same_ring(a.ring(), b.ring()))
    throw std::invalid_argument("localfield: elements of different rings");
}

bool elem_identical(const Elem& a, const Elem& b) {
  if (a.is_base())
    return a.scalar().precision() == b.scalar().precision() &&
           a.scalar().residue() == b.scalar().residue();
  for (uint32_t i = 0; i < a.ring()->degree; ++i)
    if (!elem_identical(a.coord(i), b.coord(i))) return false;
  return true;
}

// image in the residue field F_p; only defined when res_degree = 1
uint64_t residue_image(const Elem& a) {
  if (a.is_base()) return a.scalar().residue() % a.ring()->prime;
  if (a.ring()->kind == RingKind::unramified)
    throw std::logic_error("residue_image: residue field is not F_p");
  return residue_image(a.coord(0));
}

// trial division of monic m by monic g over F_p; true when g | m
bool divides_mod_p(std::vector<uint64_t> m, const std::vector<uint64_t>& g, uint64_t p) {
  size_t d = m.size() - 1, k = g.size() - 1;
  for (size_t i = d; i + 1 >= k + 1; --i) {
    uint64_t c = m[i] % p;
    if (c) {
      for (size_t j = 0; j <= k; ++j) {
        uint64_t sub = (c * g[j]) % p;
        m[i - k + j] = (m[i - k + j] + p - sub) % p;
      }
    }
    if (i == k) break;
  }
  for (size_t j = 0; j < k; ++j)
    if (m[j] % p) return false;
  return true;
}

void check_irreducible_mod_p(const std::vector<uint64_t>& mbar, uint64_t p) {
  size_t d = mbar.size() - 1;
  for (size_t k = 1; 2 * k <= d; ++k) {
    // enumerate monic divisor candidates of degree k
    std::vector<uint64_t> g(k + 1, 0);
    g[k] = 1;
    uint64_t total = 1;
    for (size_t i = 0; i < k; ++i) total *= p;
    for (uint64_t idx = 0; idx < total; ++idx) {
      uint64_t t = idx;
      for (size_t i = 0; i < k; ++i) {
        g[i] = t % p;
        t /= p;
      }
      if (divides_mod_p(mbar, g, p))
        throw std::invalid_argument("make_unramified: polynomial is reducible mod p");
    }
  }
}

}  // namespace

RingPtr make_base(uint32_t p, uint32_t N) {
  padic::PAdicInt::from_int(p, N, 0);  // validates p and the modulus range
  auto r = std::make_shared<Ring>();
  r->kind = RingKind::base;
  r->prime = p;
  r->precision = N;
  r->below = nullptr;
  r->degree = 1;
  r->abs_ram = 1;
  r->res_degree = 1;
  return r;
}

RingPtr make_unramified(const RingPtr& below, const std::vector<Elem>& lower) {
  if (!below) throw std::invalid_argument("make_unramified: null coefficient ring");
  if (below->res_degree != 1)
    throw std::invalid_argument("make_unramified: nested unramified stages are not supported");
  uint32_t d = (uint32_t)lower.size();
  if (d < 1) throw std::invalid_argument("make_unramified: degree must be at least 1");
  if (d > 8) throw std::invalid_argument("make_unramified: degree above desk scale");
  std::vector<uint64_t> mbar(d + 1, 1);
  for (uint32_t i = 0; i < d; ++i) {
    if (!same_ring(lower[i].ring(), below))
      throw std::invalid_argument("make_unramified: coefficient from wrong ring");
    mbar[i] = residue_image(lower[i]);
  }
  check_irreducible_mod_p(mbar, below->prime);
  auto r = std::make_shared<Ring>();
  r->kind = RingKind::unramified;
  r->prime = below->prime;
  r->precision = below->precision;
  r->below = below;
  r->modulus = lower;
  r->degree = d;
  r->abs_ram = below->abs_ram;
  r->res_degree = below->res_degree * d;
  return r;
}

RingPtr make_eisenstein(const RingPtr& below, const std::vector<Elem>& lower) {
  if (!below) throw std::invalid_argument("make_eisenstein: null coefficient ring");
  uint32_t d = (uint32_t)lower.size();
  if (d < 1) throw std::invalid_argument("make_eisenstein: degree must be at least 1");
  for (uint32_t i = 0; i < d; ++i) {
    if (!same_ring(lower[i].ring(), below))
      throw std::invalid_argument("make_eisenstein: coefficient from wrong ring");
    Val v = valuation(lower[i]);
    if (i == 0) {
      if (v.inf || v.v != 1)
        throw std::invalid_argument("make_eisenstein: constant term valuation must be exactly 1");
    } else if (!v.inf && v.v < 1) {
      throw std::invalid_argument("make_eisenstein: coefficient valuation must be at least 1");
    }
  }
  auto r = std::make_shared<Ring>();
  r->kind = RingKind::eisenstein;
  r->prime = below->prime;
  r->precision = below->precision;
  r->below = below;
  r->modulus = lower;
  r->degree = d;
  r->abs_ram = below->abs_ram * d;
  r->res_degree = below->res_degree;
  return r;
}

bool ring_equal(const RingPtr& a, const RingPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->prime != b->prime || a->precision != b->precision ||
      a->degree != b->degree)
    return false;
  if (a->kind == RingKind::base) return true;
  if (!ring_equal(a->below, b->below)) return false;
  for (uint32_t i = 0; i < a->degree; ++i)
    if (!elem_identical(a->modulus[i], b->modulus[i])) return false;
  return true;
}

uint64_t residue_card(const RingPtr& r) { return padic::pow_p(r->prime, r->res_degree); }

uint32_t total_degree(const RingPtr& r) {
  uint32_t d = 1;
  for (const Ring* q = r.get(); q; q = q->below.get()) d *= q->degree;
  return d;
}

Elem::Elem(RingPtr r, padic::PAdicInt s, std::vector<Elem> c)
    : ring_(std::move(r)), scalar_(std::move(s)), coords_(std::move(c)) {}

Elem Elem::of_scalar(RingPtr base_ring, padic::PAdicInt v) {
  if (base_ring->kind != RingKind::base)
    throw std::invalid_argument("of_scalar: ring is not the base");
  if (v.prime() != base_ring->prime)
    throw std::invalid_argument("of_scalar: prime mismatch");
  return Elem(std::move(base_ring), std::move(v), {});
}

Elem Elem::of_coords(RingPtr ext_ring, std::vector<Elem> coords) {
  if (ext_ring->kind == RingKind::base)
    throw std::invalid_argument("of_coords: ring has no coordinates");
  if (coords.size() != ext_ring->degree)
    throw std::invalid_argument("of_coords: wrong coordinate count");
  for (const Elem& c : coords)
    if (!same_ring(c.ring(), ext_ring->below))
      throw std::invalid_argument("of_coords: coordinate from wrong ring");
  padic::PAdicInt proto = padic::PAdicInt::from_int(ext_ring->prime, ext_ring->precision, 0);
  return Elem(std::move(ext_ring), std::move(proto), std::move(coords));
}

bool Elem::is_base() const { return ring_->kind == RingKind::base; }

const padic::PAdicInt& Elem::scalar() const {
  if (!is_base()) throw std::logic_error("scalar: not a base element");
  return scalar_;
}

const Elem& Elem::coord(uint32_t i) const {
  if (is_base()) throw std::logic_error("coord: base element");
  return coords_.at(i);
}

bool Elem::is_zero() const {
  if (is_base()) return scalar_.is_zero();
  for (const Elem& c : coords_)
    if (!c.is_zero()) return false;
  return true;
}

std::string Elem::to_string() const {
  if (is_base()) return scalar_.to_string();
  std::string s = "(";
  for (uint32_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ", ";
    s += coords_[i].to_string();
  }
  return s + ")";
}

Elem zero(const RingPtr& r) { return from_int(r, 0); }
Elem one(const RingPtr& r) { return from_int(r, 1); }

Elem from_int(const RingPtr& r, int64_t v) {
  if (r->kind == RingKind::base)
    return Elem::of_scalar(r, padic::PAdicInt::from_int(r->prime, r->precision, v));
  std::vector<Elem> coords;
  coords.reserve(r->degree);
  coords.push_back(from_int(r->below, v));
  for (uint32_t i = 1; i < r->degree; ++i) coords.push_back(zero(r->below));
  return Elem::of_coords(r, std::move(coords));
}

Elem gen(const RingPtr& r) {
  if (r->kind == RingKind::base) throw std::invalid_argument("gen: base ring has no generator");
  std::vector<Elem> coords(r->degree, zero(r->below));
  if (r->degree == 1)
    coords[0] = -r->modulus[0];
  else
    coords[1] = one(r->below);
  return Elem::of_coords(r, std::move(coords));
}

Elem lift(const RingPtr& r, const Elem& x) {
  if (r->kind == RingKind::base) throw std::invalid_argument("lift: base ring");
  if (!same_ring(x.ring(), r->below)) throw std::invalid_argument("lift: element not one step down");
  std::vector<Elem> coords;
  coords.reserve(r->degree);
  coords.push_back(x);
  for (uint32_t i = 1; i < r->degree; ++i) coords.push_back(zero(r->below));
  return Elem::of_coords(r, std::move(coords));
}

Elem scalar_to(const RingPtr& r, const padic::PAdicInt& v) {
  if (r->kind == RingKind::base) return Elem::of_scalar(r, v);
  return lift(r, scalar_to(r->below, v));
}

Elem uniformizer(const RingPtr& r) {
  switch (r->kind) {
    case RingKind::base: return from_int(r, (int64_t)r->prime);
    case RingKind::unramified: return lift(r, uniformizer(r->below));
    case RingKind::eisenstein: return gen(r);
  }
  throw std::logic_error("uniformizer: bad kind");
}

Elem operator+(const Elem& a, const Elem& b) {
  require_same_ring(a, b);
  if (a.is_base()) return Elem::of_scalar(a.ring(), a.scalar() + b.scalar());
  std::vector<Elem> coords;
  coords.reserve(a.ring()->degree);
  for (uint32_t i = 0; i < a.ring()->degree; ++i) coords.push_back(a.coord(i) + b.coord(i));
  return Elem::of_coords(a.ring(), std::move(coords));
}

Elem operator-(const Elem& a, const Elem& b) { return a + (-b); }

Elem operator-(const Elem& a) {
  if (a.is_base()) return Elem::of_scalar(a.ring(), -a.scalar());
  std::vector<Elem> coords;
  coords.reserve(a.ring()->degree);
  for (uint32_t i = 0; i < a.ring()->degree; ++i) coords.push_back(-a.coord(i));
  return Elem::of_coords(a.ring(), std::move(coords));
}

Elem operator*(const Elem& a, const Elem& b) {
  require_same_ring(a, b);
  if (a.is_base()) return Elem::of_scalar(a.ring(), a.scalar() * b.scalar());
  uint32_t d = a.ring()->degree;
  std::vector<Elem> tmp(2 * d - 1, zero(a.ring()->below));
  for (uint32_t i = 0; i < d; ++i) {
    if (a.coord(i).is_zero()) continue;
    for (uint32_t j = 0; j < d; ++j) tmp[i + j] = tmp[i + j] + a.coord(i) * b.coord(j);
  }
  // remainder modulo the monic defining polynomial
  const std::vector<Elem>& m = a.ring()->modulus;
  for (uint32_t k = 2 * d - 2; k >= d; --k) {
    if (!tmp[k].is_zero())
      for (uint32_t j = 0; j < d; ++j) tmp[k - d + j] = tmp[k - d + j] - tmp[k] * m[j];
    if (k == d) break;
  }
  std::vector<Elem> res(tmp.begin(), tmp.begin() + d);
  return Elem::of_coords(a.ring(), std::move(res));
}

Elem pow_elem(const Elem& a, uint64_t k) {
  Elem acc = one(a.ring());
  Elem sq = a;
  while (k) {
    if (k & 1) acc = acc * sq;
    k >>= 1;
    if (k) sq = sq * sq;
  }
  return acc;
}

Val valuation(const Elem& a) {
  if (a.is_base()) {
    padic::Valuation pv = a.scalar().valuation();
    return {pv.inf, (int64_t)pv.v};
  }
  Val best{true, 0};
  uint32_t d = a.ring()->degree;
  bool eis = a.ring()->kind == RingKind::eisenstein;
  for (uint32_t i = 0; i < d; ++i) {
    Val v = valuation(a.coord(i));
    if (v.inf) continue;
    int64_t scaled = eis ? (int64_t)d * v.v + i : v.v;
    if (best.inf || scaled < best.v) best = {false, scaled};
  }
  return best;
}

bool is_unit(const Elem& a) {
  Val v = valuation(a);
  return !v.inf && v.v == 0;
}

Elem unit_inverse(const Elem& u) {
  if (!is_unit(u)) throw std::invalid_argument("unit_inverse: not a unit");
  if (u.is_base()) return Elem::of_scalar(u.ring(), padic::unit_inverse(u.scalar()));
  // Fermat in the residue field seeds Newton: u^(q-2) inverts u mod the
  // maximal ideal, then x <- x(2 - ux) doubles the correct digits.
  uint64_t q = residue_card(u.ring());
  Elem x = pow_elem(u, q - 2);
  Elem one_e = one(u.ring());
  Elem two = from_int(u.ring(), 2);
  for (int iter = 0; iter < 64; ++iter) {
    Elem t = u * x;
    if ((t - one_e).is_zero()) return x;
    x = x * (two - t);
  }
  if ((u * x - one_e).is_zero()) return x;
  throw precision_error("unit_inverse: no convergence at stored precision");
}

Elem exact_div_pi(const Elem& a) {
  switch (a.ring()->kind) {
    case RingKind::base:
      return Elem::of_scalar(a.ring(), padic::exact_div_p(a.scalar(), 1));
    case RingKind::unramified: {
      std::vector<Elem> coords;
      coords.reserve(a.ring()->degree);
      for (uint32_t i = 0; i < a.ring()->degree; ++i) coords.push_back(exact_div_pi(a.coord(i)));
      return Elem::of_coords(a.ring(), std::move(coords));
    }
    case RingKind::eisenstein: {
      // q with w q = a: the top coordinate comes from the constant equation
      // -q_{e-1} m_0 = a_0, the rest shift down: q_{i-1} = a_i + q_{e-1} m_i.
      uint32_t e = a.ring()->degree;
      const std::vector<Elem>& m = a.ring()->modulus;
      Elem u = exact_div_pi(m[0]);  // unit: the Eisenstein constant term has valuation 1
      Elem q_top = -(exact_div_pi(a.coord(0)) * unit_inverse(u));
      std::vector<Elem> q(e, zero(a.ring()->below));
      q[e - 1] = q_top;
      for (uint32_t i = e - 1; i >= 1; --i) q[i - 1] = a.coord(i) + q_top * m[i];
      return Elem::of_coords(a.ring(), std::move(q));
    }
  }
  throw std::logic_error("exact_div_pi: bad kind");
}

Elem truncated(const Elem& a, uint32_t N) {
  if (a.is_base())
    return Elem::of_scalar(a.ring(), a.scalar().truncated(std::min(N, a.scalar().precision())));
  std::vector<Elem> coords;
  coords.reserve(a.ring()->degree);
  for (uint32_t i = 0; i < a.ring()->degree; ++i) coords.push_back(truncated(a.coord(i), N));
  return Elem::of_coords(a.ring(), std::move(coords));
}

Elem trace_to_below(const Elem& a) {
  if (a.is_base()) throw std::invalid_argument("trace_to_below: base element");
  uint32_t d = a.ring()->degree;
  // diagonal of the multiplication-by-a matrix in the power basis
  Elem acc = zero(a.ring()->below);
  Elem xi = one(a.ring());
  Elem g = gen(a.ring());
  for (uint32_t i = 0; i < d; ++i) {
    Elem col = a * xi;
    acc = acc + col.coord(i);
    if (i + 1 < d) xi = xi * g;
  }
  return acc;
}

padic::PAdicInt trace_to_base(const Elem& a) {
  Elem t = a;
  while (!t.is_base()) t = trace_to_below(t);
  return t.scalar();
}

namespace {

// determinant by division-free expansion with memoization on column subsets
Elem det_subsets(const std::vector<std::vector<Elem>>& M, const RingPtr& coeff_ring) {
  uint32_t d = (uint32_t)M.size();
  std::vector<std::optional<Elem>> memo(size_t(1) << d);
  memo[0] = one(coeff_ring);
  // process masks in increasing popcount; row index = d - popcount
  for (uint32_t count = 1; count <= d; ++count) {
    for (uint32_t mask = 0; mask < (1u << d); ++mask) {
      if ((uint32_t)__builtin_popcount(mask) != count) continue;
      uint32_t row = d - count;
      Elem acc = zero(coeff_ring);
      uint32_t pos = 0;
      for (uint32_t j = 0; j < d; ++j) {
        if (!(mask & (1u << j))) continue;
        const Elem& sub = *memo[mask & ~(1u << j)];
        Elem term = M[row][j] * sub;
        acc = (pos % 2 == 0) ? acc + term : acc - term;
        ++pos;
      }
      memo[mask] = std::move(acc);
    }
  }
  return *memo[(1u << d) - 1];
}

}  // namespace

Elem norm_to_below(const Elem& a) {
  if (a.is_base()) throw std::invalid_argument("norm_to_below: base element");
  uint32_t d = a.ring()->degree;
  if (d > 12) throw std::invalid_argument("norm_to_below: degree above desk scale");
  std::vector<std::vector<Elem>> M(d, std::vector<Elem>(d, zero(a.ring()->below)));
  Elem xi = one(a.ring());
  Elem g = gen(a.ring());
  for (uint32_t j = 0; j < d; ++j) {
    Elem col = a * xi;
    for (uint32_t i = 0; i < d; ++i) M[i][j] = col.coord(i);
    if (j + 1 < d) xi = xi * g;
  }
  return det_subsets(M, a.ring()->below);
}

padic::PAdicInt norm_to_base(const Elem& a) {
  Elem t = a;
  while (!t.is_base()) t = norm_to_below(t);
  return t.scalar();
}

Elem frobenius_generator(const RingPtr& r) {
  if (r->kind != RingKind::unramified)
    throw std::invalid_argument("frobenius: ring is not unramified");
  uint32_t d = r->degree;
  std::vector<Elem> lifted;
  lifted.reserve(d);
  for (uint32_t i = 0; i < d; ++i) lifted.push_back(lift(r, r->modulus[i]));
  auto eval_m = [&](const Elem& x) {
    Elem acc = one(r);
    for (int64_t i = (int64_t)d - 1; i >= 0; --i) acc = acc * x + lifted[(uint32_t)i];
    return acc;
  };
  auto eval_dm = [&](const Elem& x) {
    Elem acc = from_int(r, (int64_t)d);
    for (int64_t i = (int64_t)d - 1; i >= 1; --i)
      acc = acc * x + from_int(r, i) * lifted[(uint32_t)i];
    return acc;
  };
  // gen^p is a root of the reduced polynomial; Hensel-lift it to a true root
  Elem x = pow_elem(gen(r), r->prime);
  for (int iter = 0; iter < 64; ++iter) {
    Elem fx = eval_m(x);
    if (fx.is_zero()) return x;
    x = x - fx * unit_inverse(eval_dm(x));
  }
  if (eval_m(x).is_zero()) return x;
  throw precision_error("frobenius: Hensel iteration did not converge");
}

Elem frobenius(const Elem& a) {
  if (a.is_base()) return a;
  if (a.ring()->kind != RingKind::unramified)
    throw std::invalid_argument("frobenius: ring is not unramified");
  Elem g = frobenius_generator(a.ring());
  uint32_t d = a.ring()->degree;
  Elem acc = lift(a.ring(), a.coord(d - 1));
  for (int64_t i = (int64_t)d - 2; i >= 0; --i)
    acc = acc * g + lift(a.ring(), a.coord((uint32_t)i));
  return acc;
}

Agreement agree(const Elem& a, const Elem& b) {
  require_same_ring(a, b);
  if (a.is_base()) {
    padic::Agreement pa = padic::agree(a.scalar(), b.scalar());
    return {pa.common, pa.digits, pa.full()};
  }
  Agreement r{UINT32_MAX, UINT32_MAX, true};
  for (uint32_t i = 0; i < a.ring()->degree; ++i) {
    Agreement c = agree(a.coord(i), b.coord(i));
    r.common = std::min(r.common, c.common);
    r.digits = std::min(r.digits, c.digits);
    r.allfull = r.allfull && c.allfull;
  }
  return r;
}

}  // namespace localfield
}  // namespace ltk
