#include "ltk/weil.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ltk/kv.hpp"

namespace ltk::weil {

namespace {

constexpr uint64_t kDeskLimit = uint64_t(1) << 20;
constexpr uint32_t kMaxDeg = 4;

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// N must be p^k for a prime p; returns {p, k}.
std::pair<uint64_t, uint32_t> prime_power(uint64_t N) {
  if (N < 2) throw std::invalid_argument("torsion level must be a prime power");
  uint64_t p = 2;
  while (N % p != 0) ++p;
  uint32_t k = 0;
  uint64_t m = N;
  while (m % p == 0) {
    m /= p;
    ++k;
  }
  if (m != 1) throw std::invalid_argument("torsion level must be a prime power");
  return {p, k};
}

// Fields with equal prime, degree, and modulus present the same arithmetic,
// so distinct instances of one presentation interoperate.
bool same_field(const Field* a, const Field* b) {
  if (a == b) return true;
  if (a == nullptr || b == nullptr) return false;
  return a->ell == b->ell && a->deg == b->deg && a->modulus == b->modulus;
}

const Field* require_same(const FElem& a, const FElem& b) {
  if (a.F == nullptr || !same_field(a.F, b.F))
    throw std::invalid_argument("field elements belong to different fields");
  return a.F;
}

FElem raw_elem(const Field* F) {
  FElem e;
  e.F = F;
  return e;
}

// Schoolbook product reduced by the monic modulus; coefficients stay below
// 2^63 throughout because ell^2 <= 2^40 and deg <= 4.
FElem mul_impl(const Field* F, const FElem& a, const FElem& b) {
  const uint64_t ell = F->ell;
  const uint32_t d = F->deg;
  if (d == 1) {
    FElem r = raw_elem(F);
    r.c[0] = (a.c[0] * b.c[0]) % ell;
    return r;
  }
  std::array<uint64_t, 2 * kMaxDeg> buf{};
  for (uint32_t i = 0; i < d; ++i) {
    if (a.c[i] == 0) continue;
    for (uint32_t j = 0; j < d; ++j) buf[i + j] += a.c[i] * b.c[j] % ell;
  }
  for (uint32_t t = 2 * d - 2; t >= d; --t) {
    uint64_t top = buf[t] % ell;
    if (top != 0)
      for (uint32_t j = 0; j < d; ++j)
        buf[t - d + j] += top * ((ell - F->modulus[j]) % ell) % ell;
    buf[t] = 0;
    if (t == d) break;
  }
  FElem r = raw_elem(F);
  for (uint32_t i = 0; i < d; ++i) r.c[i] = buf[i] % ell;
  return r;
}

uint64_t elem_index(const FElem& a) {
  uint64_t idx = 0;
  for (uint32_t i = a.F->deg; i-- > 0;) idx = idx * a.F->ell + a.c[i];
  return idx;
}

FElem elem_from_index(const Field* F, uint64_t idx) {
  FElem e = raw_elem(F);
  for (uint32_t i = 0; i < F->deg; ++i) {
    e.c[i] = idx % F->ell;
    idx /= F->ell;
  }
  return e;
}

// Remainder of the monic polynomial given by `lower` (leading 1 implicit)
// under division by the monic divisor `dlo` of degree dd.
bool divides_monic(uint64_t ell, const std::vector<uint64_t>& lower,
                   const std::vector<uint64_t>& dlo, uint32_t dd) {
  uint32_t m = (uint32_t)lower.size();
  std::vector<uint64_t> rem(m + 1, 0);
  for (uint32_t i = 0; i < m; ++i) rem[i] = lower[i] % ell;
  rem[m] = 1;
  for (uint32_t t = m; t >= dd; --t) {
    uint64_t top = rem[t] % ell;
    if (top != 0) {
      for (uint32_t j = 0; j < dd; ++j) {
        uint64_t sub = top * (dlo[j] % ell) % ell;
        rem[t - dd + j] = (rem[t - dd + j] + ell - sub) % ell;
      }
      rem[t] = 0;
    }
    if (t == dd) break;
  }
  for (uint32_t i = 0; i < dd; ++i)
    if (rem[i] % ell != 0) return false;
  return true;
}

bool irreducible_monic(uint64_t ell, const std::vector<uint64_t>& lower) {
  uint32_t m = (uint32_t)lower.size();
  if (m == 1) return true;
  for (uint32_t dd = 1; dd <= m / 2; ++dd) {
    uint64_t count = 1;
    for (uint32_t i = 0; i < dd; ++i) count *= ell;
    std::vector<uint64_t> dlo(dd, 0);
    for (uint64_t t = 0; t < count; ++t) {
      uint64_t v = t;
      for (uint32_t i = 0; i < dd; ++i) {
        dlo[i] = v % ell;
        v /= ell;
      }
      if (divides_monic(ell, lower, dlo, dd)) return false;
    }
  }
  return true;
}

uint64_t gcd_u64(uint64_t a, uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

std::string encode_elem(const FElem& a) {
  std::ostringstream os;
  for (uint32_t i = 0; i < a.F->deg; ++i) {
    if (i) os << ':';
    os << a.c[i];
  }
  return os.str();
}

std::vector<uint64_t> decode_list(const std::string& s) {
  std::vector<uint64_t> out;
  if (s.empty()) return out;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ':')) out.push_back(std::stoull(tok));
  return out;
}

const std::string& req_key(const std::map<std::string, std::string>& m,
                           const std::string& key) {
  auto it = m.find(key);
  if (it == m.end()) throw std::runtime_error("fixture key missing: " + key);
  return it->second;
}

}  // namespace

FieldPtr make_prime_field(uint64_t ell) {
  if (!is_prime_u64(ell)) throw std::invalid_argument("characteristic must be prime");
  if (ell > kDeskLimit) throw std::invalid_argument("field exceeds desk scale");
  auto F = std::make_shared<Field>();
  F->ell = ell;
  F->deg = 1;
  F->size = ell;
  return F;
}

FieldPtr make_extension(uint64_t ell, const std::vector<uint64_t>& modulus_lower) {
  if (!is_prime_u64(ell)) throw std::invalid_argument("characteristic must be prime");
  uint32_t deg = (uint32_t)modulus_lower.size();
  if (deg < 2 || deg > kMaxDeg)
    throw std::invalid_argument("extension degree must be between 2 and 4");
  uint64_t size = 1;
  for (uint32_t i = 0; i < deg; ++i) {
    size *= ell;
    if (size > kDeskLimit) throw std::invalid_argument("field exceeds desk scale");
  }
  std::vector<uint64_t> lower(deg);
  for (uint32_t i = 0; i < deg; ++i) lower[i] = modulus_lower[i] % ell;
  if (!irreducible_monic(ell, lower))
    throw std::invalid_argument("modulus is reducible");
  auto F = std::make_shared<Field>();
  F->ell = ell;
  F->deg = deg;
  F->modulus = std::move(lower);
  F->size = size;
  return F;
}

FElem zero(const FieldPtr& F) { return raw_elem(F.get()); }

FElem one(const FieldPtr& F) {
  FElem e = raw_elem(F.get());
  e.c[0] = 1 % F->ell;
  return e;
}

FElem from_int(const FieldPtr& F, int64_t v) {
  FElem e = raw_elem(F.get());
  int64_t m = v % (int64_t)F->ell;
  if (m < 0) m += (int64_t)F->ell;
  e.c[0] = (uint64_t)m;
  return e;
}

FElem make_elem(const FieldPtr& F, const std::vector<uint64_t>& coeffs) {
  if (coeffs.size() > F->deg) throw std::invalid_argument("too many coefficients");
  FElem e = raw_elem(F.get());
  for (size_t i = 0; i < coeffs.size(); ++i) e.c[i] = coeffs[i] % F->ell;
  return e;
}

bool is_zero(const FElem& a) {
  for (uint32_t i = 0; i < a.F->deg; ++i)
    if (a.c[i] != 0) return false;
  return true;
}

bool operator==(const FElem& a, const FElem& b) {
  require_same(a, b);
  for (uint32_t i = 0; i < a.F->deg; ++i)
    if (a.c[i] != b.c[i]) return false;
  return true;
}

bool operator!=(const FElem& a, const FElem& b) { return !(a == b); }

FElem operator+(const FElem& a, const FElem& b) {
  const Field* F = require_same(a, b);
  FElem r = raw_elem(F);
  for (uint32_t i = 0; i < F->deg; ++i) {
    uint64_t s = a.c[i] + b.c[i];
    r.c[i] = s >= F->ell ? s - F->ell : s;
  }
  return r;
}

FElem operator-(const FElem& a, const FElem& b) {
  const Field* F = require_same(a, b);
  FElem r = raw_elem(F);
  for (uint32_t i = 0; i < F->deg; ++i) {
    uint64_t s = a.c[i] + F->ell - b.c[i];
    r.c[i] = s >= F->ell ? s - F->ell : s;
  }
  return r;
}

FElem operator-(const FElem& a) {
  FElem r = raw_elem(a.F);
  for (uint32_t i = 0; i < a.F->deg; ++i) r.c[i] = a.c[i] ? a.F->ell - a.c[i] : 0;
  return r;
}

FElem operator*(const FElem& a, const FElem& b) {
  return mul_impl(require_same(a, b), a, b);
}

FElem pow_elem(const FElem& a, uint64_t e) {
  FElem acc = raw_elem(a.F);
  acc.c[0] = 1 % a.F->ell;
  FElem base = a;
  while (e) {
    if (e & 1) acc = mul_impl(a.F, acc, base);
    base = mul_impl(a.F, base, base);
    e >>= 1;
  }
  return acc;
}

FElem inverse(const FElem& a) {
  if (is_zero(a)) throw std::invalid_argument("inverse of zero");
  return pow_elem(a, a.F->size - 2);
}

FElem frobenius(const FElem& a) { return pow_elem(a, a.F->ell); }

FElem sqrt_minus_one(const FieldPtr& F) {
  FElem minus1 = from_int(F, -1);
  for (uint64_t idx = 0; idx < F->size; ++idx) {
    FElem v = elem_from_index(F.get(), idx);
    if (v * v == minus1) return v;
  }
  throw std::invalid_argument("field has no fourth root of unity");
}

uint64_t element_order(const FElem& a, uint64_t bound) {
  if (is_zero(a)) throw std::invalid_argument("zero has no multiplicative order");
  FElem uno = raw_elem(a.F);
  uno.c[0] = 1 % a.F->ell;
  FElem x = a;
  for (uint64_t d = 1; d <= bound; ++d) {
    if (x == uno) return d;
    x = mul_impl(a.F, x, a);
  }
  throw std::runtime_error("element order exceeds bound");
}

CurvePtr make_curve(const FieldPtr& F, const FElem& a, const FElem& b) {
  if (F->ell < 5) throw std::invalid_argument("characteristic must be at least 5");
  FElem disc = from_int(F, 4) * a * a * a + from_int(F, 27) * b * b;
  if (is_zero(disc)) throw std::invalid_argument("curve is singular");
  auto E = std::make_shared<Curve>();
  E->F = F;
  E->a = a;
  E->b = b;
  return E;
}

Point infinity(const CurvePtr& E) {
  Point P;
  P.inf = true;
  P.x = raw_elem(E->F.get());
  P.y = raw_elem(E->F.get());
  return P;
}

Point make_point(const CurvePtr& E, const FElem& x, const FElem& y) {
  Point P;
  P.inf = false;
  P.x = x;
  P.y = y;
  (void)E;
  return P;
}

bool on_curve(const CurvePtr& E, const Point& P) {
  if (P.inf) return true;
  FElem lhs = P.y * P.y;
  FElem rhs = P.x * P.x * P.x + E->a * P.x + E->b;
  return lhs == rhs;
}

bool eq(const Point& P, const Point& Q) {
  if (P.inf || Q.inf) return P.inf == Q.inf;
  return P.x == Q.x && P.y == Q.y;
}

Point neg(const CurvePtr& E, const Point& P) {
  if (P.inf) return P;
  Point R = P;
  R.y = -P.y;
  (void)E;
  return R;
}

Point add(const CurvePtr& E, const Point& P, const Point& Q) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  if (P.x == Q.x) {
    if (P.y == -Q.y) return infinity(E);
    // Same x and y not opposite forces P = Q with y != 0: tangent step.
    FElem num = from_int(E->F, 3) * P.x * P.x + E->a;
    FElem s = num * inverse(P.y + P.y);
    FElem x3 = s * s - P.x - Q.x;
    Point R;
    R.inf = false;
    R.x = x3;
    R.y = s * (P.x - x3) - P.y;
    return R;
  }
  FElem s = (Q.y - P.y) * inverse(Q.x - P.x);
  FElem x3 = s * s - P.x - Q.x;
  Point R;
  R.inf = false;
  R.x = x3;
  R.y = s * (P.x - x3) - P.y;
  return R;
}

Point mul(const CurvePtr& E, const Point& P, int64_t k) {
  Point base = P;
  if (k < 0) {
    base = neg(E, P);
    k = -k;
  }
  Point acc = infinity(E);
  uint64_t e = (uint64_t)k;
  while (e) {
    if (e & 1) acc = add(E, acc, base);
    base = add(E, base, base);
    e >>= 1;
  }
  return acc;
}

uint64_t order_dividing(const CurvePtr& E, const Point& P, uint64_t N) {
  if (!mul(E, P, (int64_t)N).inf)
    throw std::invalid_argument("point order does not divide the level");
  for (uint64_t d = 1; d <= N; ++d)
    if (N % d == 0 && mul(E, P, (int64_t)d).inf) return d;
  throw std::logic_error("order search fell through");
}

Point frobenius_point(const CurvePtr& E, const Point& P) {
  if (P.inf) return P;
  Point R;
  R.inf = false;
  R.x = frobenius(P.x);
  R.y = frobenius(P.y);
  (void)E;
  return R;
}

Point apply(const CurvePtr& E, const CMEndo& phi, const Point& P) {
  Point aP = mul(E, P, phi.a);
  if (phi.b == 0) return aP;
  Point iP = P;
  if (!P.inf) {
    iP.x = -P.x;
    iP.y = phi.i * P.y;
  }
  return add(E, aP, mul(E, iP, phi.b));
}

CMEndo dual(const CMEndo& phi) { return CMEndo{phi.i, phi.a, -phi.b}; }

uint64_t norm(const CMEndo& phi) {
  return (uint64_t)(phi.a * phi.a + phi.b * phi.b);
}

namespace {

// Chord or tangent line through T and R, evaluated at X; falls back to the
// vertical through the affine one when the sum degenerates to infinity.
FElem line_value(const CurvePtr& E, const Point& T, const Point& R, const Point& X) {
  if (T.inf && R.inf) return one(E->F);
  if (T.inf) return X.x - R.x;
  if (R.inf) return X.x - T.x;
  if (T.x == R.x && T.y == -R.y) return X.x - T.x;
  FElem s = eq(T, R)
                ? (from_int(E->F, 3) * T.x * T.x + E->a) * inverse(T.y + T.y)
                : (R.y - T.y) * inverse(R.x - T.x);
  return (X.y - T.y) - s * (X.x - T.x);
}

// Value at X of the Miller function with divisor N(R) - N(O); X must avoid
// the cyclic span of R.
FElem miller_function(const CurvePtr& E, const Point& R, uint64_t N, const Point& X) {
  FElem f = one(E->F);
  Point T = R;
  for (uint64_t m = 1; m < N; ++m) {
    f = f * line_value(E, T, R, X);
    Point Tn = add(E, T, R);
    if (!Tn.inf) f = f * inverse(X.x - Tn.x);
    T = Tn;
  }
  return f;
}

bool in_span(const CurvePtr& E, const Point& P, const Point& Q, uint64_t N) {
  Point T = infinity(E);
  for (uint64_t k = 0; k < N; ++k) {
    if (eq(T, Q)) return true;
    T = add(E, T, P);
  }
  return false;
}

}  // namespace

FElem miller_pairing(const CurvePtr& E, const Point& P, const Point& Q, uint64_t N) {
  if (N == 0 || gcd_u64(N, E->F->ell) != 1)
    throw std::invalid_argument("level must be nonzero and coprime to the characteristic");
  if (!mul(E, P, (int64_t)N).inf || !mul(E, Q, (int64_t)N).inf)
    throw std::invalid_argument("arguments are not N-torsion");
  if (P.inf || Q.inf) return one(E->F);
  if (in_span(E, P, Q, N) || in_span(E, Q, P, N)) return one(E->F);
  FElem val = miller_function(E, P, N, Q) * inverse(miller_function(E, Q, N, P));
  if (N & 1) val = -val;
  if (pow_elem(val, N) != one(E->F))
    throw std::logic_error("pairing value is not an N-th root of unity");
  return val;
}

GridCertificate cm_adjointness(const CurvePtr& E, const Point& P, const Point& Q,
                               uint64_t N, const CMEndo& phi) {
  if (order_dividing(E, P, N) != N || order_dividing(E, Q, N) != N)
    throw std::invalid_argument("basis points must have exact order N");
  std::vector<Point> grid;
  grid.reserve(N * N);
  for (uint64_t u = 0; u < N; ++u)
    for (uint64_t v = 0; v < N; ++v)
      grid.push_back(add(E, mul(E, P, (int64_t)u), mul(E, Q, (int64_t)v)));
  CMEndo phid = dual(phi);
  uint64_t total = (uint64_t)grid.size() * grid.size();
  uint64_t mism = 0;
#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(dynamic, 64) reduction(+ : mism)
#endif
  for (int64_t ia = 0; ia < (int64_t)grid.size(); ++ia)
    for (int64_t ib = 0; ib < (int64_t)grid.size(); ++ib) {
      FElem lhs = miller_pairing(E, apply(E, phi, grid[ia]), grid[ib], N);
      FElem rhs = miller_pairing(E, grid[ia], apply(E, phid, grid[ib]), N);
      if (lhs != rhs) mism += 1;
    }
  return GridCertificate{total, mism, mism == 0};
}

GridCertificate level_compatibility(const CurvePtr& E, const Point& P, const Point& Q,
                                    uint64_t p, uint32_t n, const CMEndo& pistar) {
  uint64_t high = 1;
  for (uint32_t i = 0; i <= n; ++i) high *= p;
  uint64_t low = high / p;
  if (order_dividing(E, P, high) != high || order_dividing(E, Q, high) != high)
    throw std::invalid_argument("basis points must have exact order p^(n+1)");
  Point pP = mul(E, P, (int64_t)p);
  Point pQ = mul(E, Q, (int64_t)p);
  std::vector<Point> lows, highs;
  for (uint64_t u = 0; u < low; ++u)
    for (uint64_t v = 0; v < low; ++v)
      lows.push_back(add(E, mul(E, pP, (int64_t)u), mul(E, pQ, (int64_t)v)));
  for (uint64_t u = 0; u < high; ++u)
    for (uint64_t v = 0; v < high; ++v)
      highs.push_back(add(E, mul(E, P, (int64_t)u), mul(E, Q, (int64_t)v)));
  uint64_t total = (uint64_t)lows.size() * highs.size();
  uint64_t mism = 0;
#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(dynamic, 64) reduction(+ : mism)
#endif
  for (int64_t ia = 0; ia < (int64_t)lows.size(); ++ia)
    for (int64_t ib = 0; ib < (int64_t)highs.size(); ++ib) {
      Point B = apply(E, pistar, highs[ib]);
      if (!mul(E, B, (int64_t)low).inf) {
        mism += 1;
        continue;
      }
      FElem lhs = miller_pairing(E, lows[ia], highs[ib], high);
      FElem rhs = miller_pairing(E, lows[ia], B, low);
      if (lhs != rhs) mism += 1;
    }
  return GridCertificate{total, mism, mism == 0};
}

GridCertificate cm_consistency(const CurvePtr& E, const CMEndo& phi, uint32_t samples) {
  CMEndo phid = dual(phi);
  int64_t nrm = (int64_t)norm(phi);
  uint64_t found = 0, mism = 0;
  for (uint64_t xi = 0; xi < E->F->size && found < samples; ++xi) {
    FElem x = elem_from_index(E->F.get(), xi);
    FElem rhs = x * x * x + E->a * x + E->b;
    for (uint64_t yi = 0; yi < E->F->size; ++yi) {
      FElem y = elem_from_index(E->F.get(), yi);
      if (y * y == rhs) {
        Point R = make_point(E, x, y);
        found += 1;
        if (!eq(apply(E, phi, apply(E, phid, R)), mul(E, R, nrm))) mism += 1;
        break;
      }
    }
  }
  return GridCertificate{found, mism, mism == 0 && found == samples};
}

namespace {

struct Candidate {
  uint64_t ell;
  uint32_t deg;
};

// Smallest monic irreducible quadratic, scanning constant terms first.
std::vector<uint64_t> quadratic_modulus(uint64_t ell) {
  for (uint64_t c1 = 0; c1 < ell; ++c1)
    for (uint64_t c0 = 0; c0 < ell; ++c0)
      if (irreducible_monic(ell, {c0, c1})) return {c0, c1};
  throw std::logic_error("no irreducible quadratic found");
}

// Deterministic basis search over a field already known to satisfy the
// congruence prefilters; returns false when the N-torsion is not fully
// rational (wrong twist or cyclic Sylow subgroup).
bool try_basis(const FieldPtr& F, uint64_t N, TorsionFixture& out) {
  auto [p, k] = prime_power(N);
  CurvePtr E = make_curve(F, from_int(F, -1), zero(F));
  uint64_t q = F->size;

  // First y with y^2 = v, indexed by v; UINT32_MAX marks nonsquares.
  std::vector<uint32_t> ytab(q, UINT32_MAX);
  for (uint64_t yi = 0; yi < q; ++yi) {
    FElem y = elem_from_index(F.get(), yi);
    uint64_t si = elem_index(y * y);
    if (ytab[si] == UINT32_MAX) ytab[si] = (uint32_t)yi;
  }
  uint64_t M = 1;
  for (uint64_t xi = 0; xi < q; ++xi) {
    FElem x = elem_from_index(F.get(), xi);
    FElem rhs = x * x * x - x;
    M += is_zero(rhs) ? 1 : (ytab[elem_index(rhs)] != UINT32_MAX ? 2 : 0);
  }
  uint64_t full = N * N;
  if (M % full != 0) return false;

  uint64_t sylow = 1, cof = M;
  while (cof % p == 0) {
    cof /= p;
    sylow *= p;
  }

  bool haveP = false;
  Point basisP = infinity(E), basisQ = infinity(E);
  Point pbar = infinity(E);
  for (uint64_t xi = 0; xi < q; ++xi) {
    FElem x = elem_from_index(F.get(), xi);
    FElem rhs = x * x * x - x;
    Point R0;
    if (is_zero(rhs))
      R0 = make_point(E, x, zero(F));
    else if (ytab[elem_index(rhs)] != UINT32_MAX)
      R0 = make_point(E, x, elem_from_index(F.get(), ytab[elem_index(rhs)]));
    else
      continue;
    Point R = mul(E, R0, (int64_t)cof);
    uint32_t j = 0;
    for (Point S = R; !S.inf; S = mul(E, S, (int64_t)p)) ++j;
    if (j < k) continue;
    for (uint32_t t = k; t < j; ++t) R = mul(E, R, (int64_t)p);
    if (!haveP) {
      basisP = R;
      pbar = mul(E, R, (int64_t)(N / p));
      haveP = true;
      continue;
    }
    Point rbar = mul(E, R, (int64_t)(N / p));
    bool dep = false;
    Point T = infinity(E);
    for (uint64_t s = 0; s < p; ++s) {
      if (eq(T, rbar)) {
        dep = true;
        break;
      }
      T = add(E, T, pbar);
    }
    if (dep) continue;
    basisQ = R;
    if (order_dividing(E, basisP, N) != N || order_dividing(E, basisQ, N) != N)
      throw std::logic_error("basis extraction produced wrong orders");
    out.curve = E;
    out.i = sqrt_minus_one(F);
    out.P = basisP;
    out.Q = basisQ;
    out.N = N;
    out.curve_order = M;
    return true;
  }
  return false;
}

void validate_fixture(const TorsionFixture& fix) {
  const FieldPtr& F = fix.curve->F;
  auto [p, k] = prime_power(fix.N);
  (void)k;
  if ((F->size - 1) % fix.N != 0)
    throw std::runtime_error("fixture field lacks the roots of unity");
  if (fix.i * fix.i != from_int(F, -1))
    throw std::runtime_error("fixture i is not a square root of -1");
  if (!on_curve(fix.curve, fix.P) || !on_curve(fix.curve, fix.Q))
    throw std::runtime_error("fixture basis is not on the curve");
  if (order_dividing(fix.curve, fix.P, fix.N) != fix.N ||
      order_dividing(fix.curve, fix.Q, fix.N) != fix.N)
    throw std::runtime_error("fixture basis has wrong order");
  Point pbar = mul(fix.curve, fix.P, (int64_t)(fix.N / p));
  Point qbar = mul(fix.curve, fix.Q, (int64_t)(fix.N / p));
  Point T = infinity(fix.curve);
  for (uint64_t s = 0; s < p; ++s) {
    if (eq(T, qbar)) throw std::runtime_error("fixture basis is dependent");
    T = add(fix.curve, T, pbar);
  }
  uint64_t q = F->size;
  uint64_t slack = 2;
  while (slack * slack < 4 * q) ++slack;
  if (fix.curve_order + slack < q + 1 || fix.curve_order > q + 1 + slack)
    throw std::runtime_error("fixture curve order violates the Hasse bound");
  if (!mul(fix.curve, fix.P, (int64_t)fix.curve_order).inf)
    throw std::runtime_error("fixture curve order does not kill the basis");
}

}  // namespace

TorsionFixture discover_full_torsion(uint64_t N, bool extension_only) {
  auto [p, k] = prime_power(N);
  (void)p;
  (void)k;
  TorsionFixture fix;
  uint64_t scanned = 0;
  for (uint64_t q = 5; q <= kDeskLimit; ++q) {
    if ((q - 1) % N != 0) continue;
    uint64_t ell = 0;
    uint32_t deg = 0;
    if (!extension_only && q % 4 == 1 && is_prime_u64(q)) {
      ell = q;
      deg = 1;
    } else {
      uint64_t r = 2;
      while (r * r < q) ++r;
      if (r * r == q && r >= 5 && is_prime_u64(r)) {
        ell = r;
        deg = 2;
      }
    }
    if (deg == 0) continue;
    FieldPtr F = deg == 1 ? make_prime_field(ell)
                          : make_extension(ell, quadratic_modulus(ell));
    scanned += 1;
    if (try_basis(F, N, fix)) {
      fix.fields_scanned = scanned;
      return fix;
    }
  }
  throw std::runtime_error("no field of size at most 2^20 and degree at most 2 has the full torsion rational");
}

namespace {

void fixture_to_kv(const TorsionFixture& fix, const std::string& block, kv::Pairs& out) {
  const FieldPtr& F = fix.curve->F;
  std::ostringstream mod;
  for (size_t i = 0; i < F->modulus.size(); ++i) {
    if (i) mod << ':';
    mod << F->modulus[i];
  }
  out.emplace_back(block + ".N", std::to_string(fix.N));
  out.emplace_back(block + ".ell", std::to_string(F->ell));
  out.emplace_back(block + ".deg", std::to_string(F->deg));
  out.emplace_back(block + ".modulus", mod.str());
  out.emplace_back(block + ".i", encode_elem(fix.i));
  out.emplace_back(block + ".px", encode_elem(fix.P.x));
  out.emplace_back(block + ".py", encode_elem(fix.P.y));
  out.emplace_back(block + ".qx", encode_elem(fix.Q.x));
  out.emplace_back(block + ".qy", encode_elem(fix.Q.y));
  out.emplace_back(block + ".order", std::to_string(fix.curve_order));
  out.emplace_back(block + ".scanned", std::to_string(fix.fields_scanned));
}

TorsionFixture fixture_from_kv(const std::map<std::string, std::string>& m,
                               const std::string& block) {
  uint64_t N = std::stoull(req_key(m, block + ".N"));
  uint64_t ell = std::stoull(req_key(m, block + ".ell"));
  uint32_t deg = (uint32_t)std::stoul(req_key(m, block + ".deg"));
  std::vector<uint64_t> mod = decode_list(req_key(m, block + ".modulus"));
  FieldPtr F = deg == 1 ? make_prime_field(ell) : make_extension(ell, mod);
  if (deg == 1 && !mod.empty()) throw std::runtime_error("fixture modulus mismatch");
  TorsionFixture fix;
  fix.curve = make_curve(F, from_int(F, -1), zero(F));
  fix.i = make_elem(F, decode_list(req_key(m, block + ".i")));
  fix.P = make_point(fix.curve, make_elem(F, decode_list(req_key(m, block + ".px"))),
                     make_elem(F, decode_list(req_key(m, block + ".py"))));
  fix.Q = make_point(fix.curve, make_elem(F, decode_list(req_key(m, block + ".qx"))),
                     make_elem(F, decode_list(req_key(m, block + ".qy"))));
  fix.N = N;
  fix.curve_order = std::stoull(req_key(m, block + ".order"));
  fix.fields_scanned = std::stoull(req_key(m, block + ".scanned"));
  validate_fixture(fix);
  return fix;
}

}  // namespace

TorsionFixture load_or_discover(const std::string& path, const std::string& block,
                                uint64_t N, bool extension_only) {
  if (!path.empty() && kv::file_exists(path)) {
    auto pairs = kv::read_file(path);
    auto m = kv::to_map(pairs);
    if (m.count(block + ".N")) {
      TorsionFixture fix = fixture_from_kv(m, block);
      if (fix.N != N) throw std::runtime_error("fixture level mismatch for " + block);
      return fix;
    }
  }
  TorsionFixture fix = discover_full_torsion(N, extension_only);
  if (!path.empty()) {
    kv::Pairs pairs;
    if (kv::file_exists(path)) pairs = kv::read_file(path);
    fixture_to_kv(fix, block, pairs);
    kv::write_file(path, pairs);
  }
  return fix;
}

}  // namespace ltk::weil
