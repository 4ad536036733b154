#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

// Capped-precision p-adic integers.  A value is a residue mod p^N together
// with the pair (p, N); N is the *effective* precision of that particular
// value, so results of lossy operations (exact division by p, etc.) carry a
// smaller N than their inputs.  Moduli are capped at p^N < 2^62 so that all
// arithmetic fits in 64/128-bit words; configurations outside that range are
// rejected at construction.

namespace ltk {

class precision_error : public std::runtime_error {
public:
  explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

namespace padic {

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m);

// Largest N with p^N < 2^62.
uint32_t max_precision(uint64_t p);

// p^n, throws std::invalid_argument if it would exceed the 2^62 cap.
uint64_t pow_p(uint64_t p, uint32_t n);

bool is_small_prime(uint64_t p);

struct Valuation {
  bool inf;    // residue is 0 at stored precision: valuation >= precision
  uint32_t v;  // meaningful only when !inf
};

class PAdicInt {
public:
  // Residue of `value` mod p^prec.  p must be an odd prime >= 3.
  static PAdicInt from_int(uint64_t p, uint32_t prec, int64_t value);
  // Unchecked residue (must already satisfy 0 <= res < p^prec).
  static PAdicInt from_residue(uint64_t p, uint32_t prec, uint64_t res);

  uint64_t prime() const { return p_; }
  uint32_t precision() const { return prec_; }
  uint64_t modulus() const { return mod_; }
  uint64_t residue() const { return res_; }

  bool is_zero() const { return res_ == 0; }          // zero at stored precision
  bool is_unit() const { return res_ % p_ != 0; }

  Valuation valuation() const;

  // Known-precision change. Lowering truncates; raising is forbidden.
  PAdicInt truncated(uint32_t prec) const;

  PAdicInt operator-() const;
  friend PAdicInt operator+(const PAdicInt& a, const PAdicInt& b);
  friend PAdicInt operator-(const PAdicInt& a, const PAdicInt& b);
  // Sharp precision: a*b is known mod p^min(Na + v(b), Nb + v(a)).
  friend PAdicInt operator*(const PAdicInt& a, const PAdicInt& b);

  std::string to_string() const;

private:
  PAdicInt(uint64_t p, uint32_t prec, uint64_t mod, uint64_t res)
      : p_(p), prec_(prec), mod_(mod), res_(res) {}
  uint64_t p_;
  uint32_t prec_;
  uint64_t mod_;  // p^prec, cached
  uint64_t res_;  // in [0, mod_)
};

PAdicInt zero_of(const PAdicInt& proto);
PAdicInt one_of(const PAdicInt& proto);
// Same prime and precision as proto, value v.
PAdicInt int_of(const PAdicInt& proto, int64_t v);

// Digits the two values agree on; full = both known and equal to the common
// precision.  Throws on prime mismatch.
struct Agreement {
  uint32_t common;  // min of the two precisions
  uint32_t digits;  // valuation of the difference, capped at common
  bool full() const { return digits >= common; }
};
Agreement agree(const PAdicInt& a, const PAdicInt& b);

// Multiplicative inverse of a unit, known to a's precision.
PAdicInt unit_inverse(const PAdicInt& a);

// a / p^k, requires p^k | a at stored precision; result has precision N - k.
PAdicInt exact_div_p(const PAdicInt& a, uint32_t k);

// Exact division by an arbitrary nonzero b = p^v * u: requires v(a) >= v(b).
PAdicInt exact_div(const PAdicInt& a, const PAdicInt& b);

// a * p^k (precision rises by k: the shifted value is known to N + k digits).
PAdicInt mul_pow_p(const PAdicInt& a, uint32_t k);

PAdicInt pow_int(const PAdicInt& a, uint64_t e);

// Teichmuller representative: the fixpoint of x -> x^p congruent to a mod p.
PAdicInt teichmuller(const PAdicInt& a);

// log(1 + x) = sum (-1)^{k+1} x^k / k, requires v(x) >= 1.
PAdicInt log1p(const PAdicInt& x);

// exp(x) = sum x^k / k!, requires v(x) >= 1 (and p > 2, enforced globally).
PAdicInt exp_p(const PAdicInt& x);

// Value num / p^shift.  Used wherever denominators appear (formal-group
// logarithm coefficients, trace functionals); the numerator keeps its own
// effective precision, so the represented value is known mod p^(N - shift).
class PAdicFrac {
public:
  PAdicFrac(PAdicInt num, uint32_t shift) : num_(std::move(num)), shift_(shift) {}
  static PAdicFrac integral(PAdicInt num) { return PAdicFrac(std::move(num), 0); }

  const PAdicInt& num() const { return num_; }
  uint32_t shift() const { return shift_; }
  uint64_t prime() const { return num_.prime(); }
  bool is_zero() const { return num_.is_zero(); }
  // Unit of the local ring: integral with unit numerator.
  bool is_unit() const { return shift_ == 0 ? num_.is_unit() : normalized().is_unit(); }

  // Strips p-factors shared by numerator and shift.
  PAdicFrac normalized() const;

  PAdicFrac operator-() const;
  friend PAdicFrac operator+(const PAdicFrac& a, const PAdicFrac& b);
  friend PAdicFrac operator-(const PAdicFrac& a, const PAdicFrac& b);
  friend PAdicFrac operator*(const PAdicFrac& a, const PAdicFrac& b);

  std::string to_string() const;

private:
  PAdicInt num_;
  uint32_t shift_;
};

PAdicFrac frac_of(const PAdicInt& proto, int64_t num, uint32_t shift);
PAdicFrac inverse(const PAdicFrac& a);  // requires nonzero valuation-finite unit-part

// Integrality certificate: p^shift | num at stored precision.
bool is_integral(const PAdicFrac& a);
// Clears the shift; throws precision_error when the numerator is not
// divisible at its stored precision.
PAdicInt reduce_integral(const PAdicFrac& a);

// Digits of agreement after aligning shifts (compares num_a * p^(s-sa) with
// num_b * p^(s-sb) at the common precision).
Agreement agree(const PAdicFrac& a, const PAdicFrac& b);

// Valuation of the represented value, in (1/1)Z: v(num) - shift.  inf when
// the numerator is 0 at stored precision.
struct FracValuation {
  bool inf;
  int64_t v;
};
FracValuation valuation(const PAdicFrac& a);

}  // namespace padic
}  // namespace ltk
