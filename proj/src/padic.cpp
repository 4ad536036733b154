#include "ltk/padic.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace ltk {
namespace padic {

namespace {
constexpr uint64_t kModulusCap = uint64_t(1) << 62;

uint32_t val_of_residue(uint64_t res, uint64_t p, uint32_t prec) {
  if (res == 0) return prec;
  uint32_t v = 0;
  while (res % p == 0) {
    res /= p;
    ++v;
  }
  return v;
}
}  // namespace

uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m) {
  uint64_t acc = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) acc = mulmod(acc, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return acc;
}

uint32_t max_precision(uint64_t p) {
  uint32_t n = 0;
  unsigned __int128 m = 1;
  while (m * p < kModulusCap) {
    m *= p;
    ++n;
  }
  return n;
}

uint64_t pow_p(uint64_t p, uint32_t n) {
  unsigned __int128 m = 1;
  for (uint32_t i = 0; i < n; ++i) {
    m *= p;
    if (m >= kModulusCap) throw std::invalid_argument("pow_p: p^n exceeds the 2^62 modulus cap");
  }
  return static_cast<uint64_t>(m);
}

bool is_small_prime(uint64_t p) {
  if (p < 2) return false;
  for (uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

PAdicInt PAdicInt::from_int(uint64_t p, uint32_t prec, int64_t value) {
  if (p < 3 || p % 2 == 0 || !is_small_prime(p))
    throw std::invalid_argument("PAdicInt: p must be an odd prime >= 3");
  if (prec == 0) throw std::invalid_argument("PAdicInt: precision must be positive");
  uint64_t mod = pow_p(p, prec);
  int64_t r = value % static_cast<int64_t>(mod);
  if (r < 0) r += static_cast<int64_t>(mod);
  return PAdicInt(p, prec, mod, static_cast<uint64_t>(r));
}

PAdicInt PAdicInt::from_residue(uint64_t p, uint32_t prec, uint64_t res) {
  uint64_t mod = pow_p(p, prec);
  return PAdicInt(p, prec, mod, res % mod);
}

Valuation PAdicInt::valuation() const {
  if (res_ == 0) return {true, prec_};
  return {false, val_of_residue(res_, p_, prec_)};
}

PAdicInt PAdicInt::truncated(uint32_t prec) const {
  if (prec == 0) throw precision_error("truncated: precision exhausted");
  if (prec > prec_) throw std::invalid_argument("truncated: cannot raise precision");
  if (prec == prec_) return *this;
  uint64_t mod = pow_p(p_, prec);
  return PAdicInt(p_, prec, mod, res_ % mod);
}

PAdicInt PAdicInt::operator-() const {
  return PAdicInt(p_, prec_, mod_, res_ == 0 ? 0 : mod_ - res_);
}

static void check_same_prime(const PAdicInt& a, const PAdicInt& b) {
  if (a.prime() != b.prime())
    throw std::invalid_argument("PAdicInt: mixed primes " + std::to_string(a.prime()) + " vs " +
                                std::to_string(b.prime()));
}

PAdicInt operator+(const PAdicInt& a, const PAdicInt& b) {
  check_same_prime(a, b);
  uint32_t prec = std::min(a.precision(), b.precision());
  uint64_t mod = pow_p(a.prime(), prec);
  uint64_t r = (a.residue() % mod + b.residue() % mod) % mod;
  return PAdicInt::from_residue(a.prime(), prec, r);
}

PAdicInt operator-(const PAdicInt& a, const PAdicInt& b) {
  check_same_prime(a, b);
  uint32_t prec = std::min(a.precision(), b.precision());
  uint64_t mod = pow_p(a.prime(), prec);
  uint64_t r = (a.residue() % mod + mod - b.residue() % mod) % mod;
  return PAdicInt::from_residue(a.prime(), prec, r);
}

PAdicInt operator*(const PAdicInt& a, const PAdicInt& b) {
  check_same_prime(a, b);
  uint64_t p = a.prime();
  // v capped at the value's own precision (a zero residue contributes N_a).
  uint32_t va = val_of_residue(a.residue(), p, a.precision());
  uint32_t vb = val_of_residue(b.residue(), p, b.precision());
  uint64_t sharp = std::min<uint64_t>(uint64_t(a.precision()) + vb, uint64_t(b.precision()) + va);
  uint32_t prec = static_cast<uint32_t>(std::min<uint64_t>(sharp, max_precision(p)));
  uint64_t mod = pow_p(p, prec);
  unsigned __int128 prod = static_cast<unsigned __int128>(a.residue()) * b.residue();
  return PAdicInt::from_residue(p, prec, static_cast<uint64_t>(prod % mod));
}

std::string PAdicInt::to_string() const {
  std::ostringstream os;
  os << res_ << " + O(" << p_ << "^" << prec_ << ")";
  return os.str();
}

PAdicInt zero_of(const PAdicInt& proto) {
  return PAdicInt::from_residue(proto.prime(), proto.precision(), 0);
}

PAdicInt one_of(const PAdicInt& proto) {
  return PAdicInt::from_residue(proto.prime(), proto.precision(), 1);
}

PAdicInt int_of(const PAdicInt& proto, int64_t v) {
  return PAdicInt::from_int(proto.prime(), proto.precision(), v);
}

Agreement agree(const PAdicInt& a, const PAdicInt& b) {
  check_same_prime(a, b);
  uint32_t common = std::min(a.precision(), b.precision());
  PAdicInt d = a.truncated(common) - b.truncated(common);
  Valuation v = d.valuation();
  return {common, v.inf ? common : std::min(v.v, common)};
}

PAdicInt unit_inverse(const PAdicInt& a) {
  if (!a.is_unit()) throw std::invalid_argument("unit_inverse: not a unit");
  uint64_t p = a.prime();
  // Fermat inverse mod p, then Newton steps x <- x(2 - ax) double the digits.
  uint64_t x = powmod(a.residue() % p, p - 2, p);
  uint32_t digits = 1;
  while (digits < a.precision()) {
    digits = std::min(a.precision(), digits * 2);
    uint64_t mod = pow_p(p, digits);
    uint64_t ax = mulmod(a.residue() % mod, x % mod, mod);
    uint64_t t = (2 % mod + mod - ax) % mod;
    x = mulmod(x % mod, t, mod);
  }
  return PAdicInt::from_residue(p, a.precision(), x);
}

PAdicInt exact_div_p(const PAdicInt& a, uint32_t k) {
  if (k == 0) return a;
  if (k >= a.precision())
    throw precision_error("exact_div_p: precision exhausted (dividing by p^" + std::to_string(k) +
                          " a value known mod p^" + std::to_string(a.precision()) + ")");
  uint64_t pk = pow_p(a.prime(), k);
  if (a.residue() % pk != 0)
    throw precision_error("exact_div_p: value not divisible by p^" + std::to_string(k));
  return PAdicInt::from_residue(a.prime(), a.precision() - k, a.residue() / pk);
}

PAdicInt exact_div(const PAdicInt& a, const PAdicInt& b) {
  check_same_prime(a, b);
  Valuation vb = b.valuation();
  if (vb.inf) throw std::invalid_argument("exact_div: divisor is 0 at stored precision");
  PAdicInt unit = exact_div_p(b, vb.v);
  return exact_div_p(a, vb.v) * unit_inverse(unit);
}

PAdicInt mul_pow_p(const PAdicInt& a, uint32_t k) {
  if (k == 0) return a;
  uint64_t p = a.prime();
  uint32_t prec = std::min<uint32_t>(a.precision() + k, max_precision(p));
  // prec >= k + 1 always holds for in-range inputs; the shifted residue is
  // exact in the extra digits.
  uint64_t mod = pow_p(p, prec);
  uint64_t shifted = mulmod(a.residue() % mod, pow_p(p, k) % mod, mod);
  return PAdicInt::from_residue(p, prec, shifted);
}

PAdicInt pow_int(const PAdicInt& a, uint64_t e) {
  PAdicInt acc = one_of(a);
  PAdicInt base = a;
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

PAdicInt teichmuller(const PAdicInt& a) {
  // x -> x^p gains one digit of agreement with the fixpoint per step.
  PAdicInt t = a;
  for (uint32_t i = 0; i <= a.precision(); ++i) {
    PAdicInt next = pow_int(t, a.prime()).truncated(a.precision());
    if (next.residue() == t.residue()) return next;
    t = next;
  }
  return t;
}

PAdicInt log1p(const PAdicInt& x) {
  Valuation vx = x.valuation();
  if (!vx.inf && vx.v < 1) throw std::invalid_argument("log1p: argument needs valuation >= 1");
  if (vx.inf) return zero_of(x);
  uint64_t p = x.prime();
  uint32_t target = x.precision();
  PAdicInt sum = zero_of(x);
  PAdicInt xk = one_of(x);
  for (uint32_t k = 1;; ++k) {
    // Remaining terms have valuation >= k*v(x) - log_p(k); stop once that
    // clears the target for every k' >= k.
    uint32_t logk = 0;
    uint64_t kk = k;
    while (kk >= p) {
      kk /= p;
      ++logk;
    }
    // k*v - log_p(k) is nondecreasing in k for v >= 1, so the first clear ends it.
    if (uint64_t(k) * vx.v >= uint64_t(target) + logk) break;
    xk = xk * x;
    uint32_t j = 0;
    uint64_t ku = k;
    while (ku % p == 0) {
      ku /= p;
      ++j;
    }
    PAdicInt term = exact_div_p(xk, j) * unit_inverse(int_of(x, static_cast<int64_t>(ku)));
    sum = (k % 2 == 1) ? sum + term : sum - term;
    if (k > 64 * (target + 2)) throw precision_error("log1p: series failed to terminate");
  }
  return sum;
}

PAdicInt exp_p(const PAdicInt& x) {
  Valuation vx = x.valuation();
  if (!vx.inf && vx.v < 1) throw std::invalid_argument("exp_p: argument needs valuation >= 1");
  if (vx.inf) return one_of(x);
  uint64_t p = x.prime();
  uint32_t target = x.precision();
  PAdicInt sum = one_of(x);
  PAdicInt term = one_of(x);
  for (uint32_t k = 1;; ++k) {
    // v(term_k) = k*v(x) - v_p(k!) >= k*v(x) - (k-1)/(p-1); the bound is
    // increasing in k, so once it clears the target all later terms do too.
    // (The exact k*v - v_p(k!) is NOT monotone: it dips at k = p^2.)
    if (uint64_t(k) * vx.v * (p - 1) >= uint64_t(target) * (p - 1) + (k - 1)) break;
    uint32_t j = 0;
    uint64_t ku = k;
    while (ku % p == 0) {
      ku /= p;
      ++j;
    }
    term = exact_div_p(term * x, j) * unit_inverse(int_of(x, static_cast<int64_t>(ku)));
    sum = sum + term;
    if (k > 64 * (target + 2)) throw precision_error("exp_p: series failed to terminate");
  }
  return sum;
}

PAdicFrac PAdicFrac::normalized() const {
  PAdicInt n = num_;
  uint32_t s = shift_;
  while (s > 0 && n.precision() > 1 && n.residue() % n.prime() == 0) {
    n = exact_div_p(n, 1);
    --s;
  }
  return PAdicFrac(n, s);
}

PAdicFrac PAdicFrac::operator-() const { return PAdicFrac(-num_, shift_); }

PAdicFrac operator+(const PAdicFrac& a, const PAdicFrac& b) {
  uint32_t s = std::max(a.shift(), b.shift());
  PAdicInt na = mul_pow_p(a.num(), s - a.shift());
  PAdicInt nb = mul_pow_p(b.num(), s - b.shift());
  return PAdicFrac(na + nb, s);
}

PAdicFrac operator-(const PAdicFrac& a, const PAdicFrac& b) { return a + (-b); }

PAdicFrac operator*(const PAdicFrac& a, const PAdicFrac& b) {
  return PAdicFrac(a.num() * b.num(), a.shift() + b.shift()).normalized();
}

std::string PAdicFrac::to_string() const {
  std::ostringstream os;
  os << num_.to_string();
  if (shift_) os << " / " << num_.prime() << "^" << shift_;
  return os.str();
}

PAdicFrac frac_of(const PAdicInt& proto, int64_t num, uint32_t shift) {
  return PAdicFrac(int_of(proto, num), shift);
}

PAdicFrac inverse(const PAdicFrac& a) {
  PAdicFrac n = a.normalized();
  Valuation v = n.num().valuation();
  if (v.inf) throw std::invalid_argument("PAdicFrac inverse: zero at stored precision");
  PAdicInt unit = exact_div_p(n.num(), v.v);
  // 1 / (u p^v / p^s) = u^{-1} p^{s - v}; negative exponents go to the shift.
  PAdicInt uinv = unit_inverse(unit);
  if (n.shift() >= v.v) return PAdicFrac(mul_pow_p(uinv, n.shift() - v.v), 0);
  return PAdicFrac(uinv, v.v - n.shift());
}

bool is_integral(const PAdicFrac& a) {
  PAdicFrac n = a.normalized();
  if (n.shift() == 0) return true;
  // Divisibility must be visible at the numerator's stored precision.
  return n.num().precision() > n.shift() && n.num().residue() % pow_p(n.prime(), n.shift()) == 0;
}

PAdicInt reduce_integral(const PAdicFrac& a) {
  PAdicFrac n = a.normalized();
  if (n.shift() == 0) return n.num();
  return exact_div_p(n.num(), n.shift());
}

Agreement agree(const PAdicFrac& a, const PAdicFrac& b) {
  uint32_t s = std::max(a.shift(), b.shift());
  PAdicInt na = mul_pow_p(a.num(), s - a.shift());
  PAdicInt nb = mul_pow_p(b.num(), s - b.shift());
  return agree(na, nb);
}

FracValuation valuation(const PAdicFrac& a) {
  Valuation v = a.num().valuation();
  if (v.inf) return {true, 0};
  return {false, static_cast<int64_t>(v.v) - static_cast<int64_t>(a.shift())};
}

}  // namespace padic
}  // namespace ltk
