#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ltk/padic.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

// Truncated power series over an abstract coefficient ring C.  A series
// carries an exact degree cap: coefficients 0..cap are meaningful, everything
// above is unknown (not zero).  Binary operations compute the sharp cap of
// the result; comparisons only ever assert up to the common cap.
//
// Univariate (Series1), bivariate (Series2) and trivariate (Series3) forms
// share the same discipline; the bi/tri variants use dense triangular
// storage by total degree, which is the right shape for the degree caps in
// play (<= a few dozen).
//
// The convolution kernels have serial reference implementations and
// OpenMP-parallel paths; `kernel_mode()` forces one or the other (the
// benchmark uses this), the default picks by problem size.

namespace ltk {
namespace series {

// Coefficient-ring interface.  Specialized for PAdicInt, PAdicFrac, the
// local-field Elem, and for nested series types.
template <class C>
struct RingOps;

template <>
struct RingOps<padic::PAdicInt> {
  using C = padic::PAdicInt;
  static C zero_like(const C& proto) { return padic::zero_of(proto); }
  static C one_like(const C& proto) { return padic::one_of(proto); }
  static C from_int(const C& proto, int64_t v) { return padic::int_of(proto, v); }
  static bool is_zero(const C& a) { return a.is_zero(); }
  static bool is_unit(const C& a) { return a.is_unit(); }
  static C inverse(const C& a) { return padic::unit_inverse(a); }
  static padic::Agreement agreement(const C& a, const C& b) { return padic::agree(a, b); }
};

template <>
struct RingOps<padic::PAdicFrac> {
  using C = padic::PAdicFrac;
  static C zero_like(const C& proto) { return C(padic::zero_of(proto.num()), 0); }
  static C one_like(const C& proto) { return C(padic::one_of(proto.num()), 0); }
  static C from_int(const C& proto, int64_t v) { return C(padic::int_of(proto.num(), v), 0); }
  static bool is_zero(const C& a) { return a.num().is_zero(); }
  static bool is_unit(const C& a) { return a.is_unit(); }
  static C inverse(const C& a) { return padic::inverse(a); }
  static padic::Agreement agreement(const C& a, const C& b) { return padic::agree(a, b); }
};

enum class KernelMode { automatic, serial, parallel };

// Process-wide kernel switch; the benchmark forces serial vs parallel.
inline KernelMode& kernel_mode() {
  static KernelMode mode = KernelMode::automatic;
  return mode;
}

inline bool use_parallel(size_t work) {
#ifdef _OPENMP
  switch (kernel_mode()) {
    case KernelMode::serial: return false;
    case KernelMode::parallel: return true;
    case KernelMode::automatic: return work >= (size_t(1) << 15);
  }
#endif
  (void)work;
  return false;
}

// ---------------------------------------------------------------- Series1

template <class C>
class Series1 {
public:
  Series1(const C& proto, uint32_t cap) : cap_(cap), c_(cap + 1, RingOps<C>::zero_like(proto)) {}

  uint32_t cap() const { return cap_; }
  const C& operator[](uint32_t i) const { return c_[i]; }
  const C& coeff(uint32_t i) const { return c_[i]; }
  void set(uint32_t i, C v) { c_[i] = std::move(v); }
  const C& proto() const { return c_[0]; }

  // Lowest structurally nonzero degree; cap+1 when zero through the cap.
  uint32_t ord() const {
    for (uint32_t i = 0; i <= cap_; ++i)
      if (!RingOps<C>::is_zero(c_[i])) return i;
    return cap_ + 1;
  }

  Series1 truncated(uint32_t cap) const {
    Series1 r(proto(), std::min(cap, cap_));
    for (uint32_t i = 0; i <= r.cap(); ++i) r.set(i, c_[i]);
    return r;
  }

private:
  uint32_t cap_;
  std::vector<C> c_;
};

template <class C>
Series1<C> zero1(const C& proto, uint32_t cap) {
  return Series1<C>(proto, cap);
}

template <class C>
Series1<C> const1(const C& value, uint32_t cap) {
  Series1<C> s(value, cap);
  s.set(0, value);
  return s;
}

template <class C>
Series1<C> var1(const C& proto, uint32_t cap) {
  Series1<C> s(proto, cap);
  if (cap >= 1) s.set(1, RingOps<C>::one_like(proto));
  return s;
}

template <class C>
Series1<C> operator+(const Series1<C>& a, const Series1<C>& b) {
  uint32_t cap = std::min(a.cap(), b.cap());
  Series1<C> r(a.proto(), cap);
  for (uint32_t i = 0; i <= cap; ++i) r.set(i, a[i] + b[i]);
  return r;
}

template <class C>
Series1<C> operator-(const Series1<C>& a, const Series1<C>& b) {
  uint32_t cap = std::min(a.cap(), b.cap());
  Series1<C> r(a.proto(), cap);
  for (uint32_t i = 0; i <= cap; ++i) r.set(i, a[i] - b[i]);
  return r;
}

template <class C>
Series1<C> operator-(const Series1<C>& a) {
  Series1<C> r(a.proto(), a.cap());
  for (uint32_t i = 0; i <= a.cap(); ++i) r.set(i, -a[i]);
  return r;
}

template <class C>
Series1<C> mul_serial(const Series1<C>& a, const Series1<C>& b, uint32_t cap) {
  Series1<C> r(a.proto(), cap);
  for (uint32_t k = 0; k <= cap; ++k) {
    C acc = RingOps<C>::zero_like(a.proto());
    uint32_t lo = (k > b.cap()) ? k - b.cap() : 0;
    uint32_t hi = std::min(k, a.cap());
    for (uint32_t i = lo; i <= hi; ++i) acc = acc + a[i] * b[k - i];
    r.set(k, std::move(acc));
  }
  return r;
}

template <class C>
Series1<C> mul_parallel(const Series1<C>& a, const Series1<C>& b, uint32_t cap) {
  Series1<C> r(a.proto(), cap);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
  for (int64_t k = 0; k <= (int64_t)cap; ++k) {
    C acc = RingOps<C>::zero_like(a.proto());
    uint32_t lo = ((uint32_t)k > b.cap()) ? (uint32_t)k - b.cap() : 0;
    uint32_t hi = std::min((uint32_t)k, a.cap());
    for (uint32_t i = lo; i <= hi; ++i) acc = acc + a[i] * b[(uint32_t)k - i];
    r.set((uint32_t)k, std::move(acc));
  }
  return r;
}

// Product cap: error of a starts at deg cap(a)+1, scaled by ord(b), and
// symmetrically; both operands' caps stay sharp under multiplication by a
// high-order factor.
template <class C>
Series1<C> operator*(const Series1<C>& a, const Series1<C>& b) {
  uint64_t oa = a.ord(), ob = b.ord();
  uint64_t cap = std::min<uint64_t>(a.cap() + ob, b.cap() + oa);
  uint32_t c = (uint32_t)std::min<uint64_t>(cap, a.cap() + (uint64_t)b.cap());
  size_t work = size_t(c + 1) * (std::min(a.cap(), b.cap()) + 1);
  return use_parallel(work) ? mul_parallel(a, b, c) : mul_serial(a, b, c);
}

template <class C>
Series1<C> scale(const Series1<C>& a, const C& s) {
  Series1<C> r(a.proto(), a.cap());
  for (uint32_t i = 0; i <= a.cap(); ++i) r.set(i, a[i] * s);
  return r;
}

// outer(inner); inner must have structurally zero constant term.
template <class C>
Series1<C> compose(const Series1<C>& outer, const Series1<C>& inner) {
  if (!RingOps<C>::is_zero(inner[0]))
    throw std::invalid_argument("compose: inner constant term must be zero");
  uint32_t oi = std::max<uint32_t>(inner.ord(), 1);
  uint64_t cap64 = std::min<uint64_t>(inner.cap(), (uint64_t)oi * (outer.cap() + 1) - 1);
  uint32_t cap = (uint32_t)cap64;
  Series1<C> acc = const1(outer[outer.cap()], cap);
  for (int64_t i = (int64_t)outer.cap() - 1; i >= 0; --i) {
    acc = (acc * inner).truncated(cap);
    acc.set(0, acc[0] + outer[(uint32_t)i]);
  }
  return acc;
}

// 1/s for unit constant term, to the cap of s.
template <class C>
Series1<C> mul_inverse(const Series1<C>& s) {
  if (!RingOps<C>::is_unit(s[0]))
    throw std::invalid_argument("mul_inverse: constant term is not a unit");
  C i0 = RingOps<C>::inverse(s[0]);
  Series1<C> t(s.proto(), s.cap());
  t.set(0, i0);
  for (uint32_t k = 1; k <= s.cap(); ++k) {
    C acc = RingOps<C>::zero_like(s.proto());
    for (uint32_t j = 1; j <= k; ++j) acc = acc + s[j] * t[k - j];
    t.set(k, -(i0 * acc));
  }
  return t;
}

// Compositional inverse of s = s1 Z + ..., s1 a unit; revert(s)(s(Z)) = Z.
template <class C>
Series1<C> revert(const Series1<C>& s) {
  if (!RingOps<C>::is_zero(s[0]))
    throw std::invalid_argument("revert: constant term must be zero");
  if (s.cap() < 1 || !RingOps<C>::is_unit(s[1]))
    throw std::invalid_argument("revert: linear coefficient must be a unit");
  C inv1 = RingOps<C>::inverse(s[1]);
  Series1<C> t(s.proto(), s.cap());
  t.set(1, inv1);
  for (uint32_t r = 2; r <= s.cap(); ++r) {
    // s(t_{<r}) agrees with Z through degree r-1; the degree-r defect is
    // killed by t_r = -s1^{-1} [s(t_{<r})]_r.
    Series1<C> partial = t.truncated(r);
    partial.set(r, RingOps<C>::zero_like(s.proto()));
    Series1<C> comp = compose(s.truncated(r), partial);
    t.set(r, -(inv1 * comp[r]));
  }
  return t;
}

template <class C>
Series1<C> derive(const Series1<C>& s) {
  if (s.cap() == 0) throw std::invalid_argument("derive: cap exhausted");
  Series1<C> r(s.proto(), s.cap() - 1);
  for (uint32_t i = 0; i + 1 <= s.cap(); ++i)
    r.set(i, RingOps<C>::from_int(s.proto(), (int64_t)i + 1) * s[i + 1]);
  return r;
}

// Horner evaluation of a truncated series as a polynomial at a ring element.
// Embed maps coefficients into R.  (Truncation error is the caller's
// business: it is bounded by v(x)^(cap+1).)
template <class C, class R, class Embed>
R eval_poly(const Series1<C>& s, const R& x, Embed embed) {
  R acc = embed(s[s.cap()]);
  for (int64_t i = (int64_t)s.cap() - 1; i >= 0; --i) {
    acc = acc * x;
    acc = acc + embed(s[(uint32_t)i]);
  }
  return acc;
}

template <class C, class F>
auto map_coeffs(const Series1<C>& s, F f) -> Series1<decltype(f(s[0]))> {
  using C2 = decltype(f(s[0]));
  Series1<C2> r(f(s.proto()), s.cap());
  for (uint32_t i = 0; i <= s.cap(); ++i) r.set(i, f(s[i]));
  return r;
}

struct SeriesAgreement {
  uint32_t cap;      // common cap compared
  uint32_t digits;   // min coefficient agreement over the common cap
  bool full;         // every compared coefficient agreed to its common precision
};

template <class C>
SeriesAgreement agreement(const Series1<C>& a, const Series1<C>& b) {
  uint32_t cap = std::min(a.cap(), b.cap());
  SeriesAgreement r{cap, UINT32_MAX, true};
  for (uint32_t i = 0; i <= cap; ++i) {
    auto ag = RingOps<C>::agreement(a[i], b[i]);
    r.digits = std::min(r.digits, ag.digits);
    r.full = r.full && ag.full();
  }
  return r;
}

// ---------------------------------------------------------------- Series2
// Dense triangular storage by total degree; (i, j) with i + j <= cap.

inline size_t idx2(uint32_t i, uint32_t j) {
  uint32_t d = i + j;
  return size_t(d) * (d + 1) / 2 + j;
}

inline size_t size2(uint32_t cap) { return size_t(cap + 1) * (cap + 2) / 2; }

template <class C>
class Series2 {
public:
  Series2(const C& proto, uint32_t cap)
      : cap_(cap), c_(size2(cap), RingOps<C>::zero_like(proto)) {}

  uint32_t cap() const { return cap_; }
  const C& at(uint32_t i, uint32_t j) const { return c_[idx2(i, j)]; }
  void set(uint32_t i, uint32_t j, C v) { c_[idx2(i, j)] = std::move(v); }
  const C& proto() const { return c_[0]; }

  uint32_t ord() const {
    for (uint32_t d = 0; d <= cap_; ++d)
      for (uint32_t j = 0; j <= d; ++j)
        if (!RingOps<C>::is_zero(at(d - j, j))) return d;
    return cap_ + 1;
  }

  Series2 truncated(uint32_t cap) const {
    uint32_t c = std::min(cap, cap_);
    Series2 r(proto(), c);
    for (uint32_t d = 0; d <= c; ++d)
      for (uint32_t j = 0; j <= d; ++j) r.set(d - j, j, at(d - j, j));
    return r;
  }

private:
  uint32_t cap_;
  std::vector<C> c_;
};

template <class C>
Series2<C> zero2(const C& proto, uint32_t cap) {
  return Series2<C>(proto, cap);
}

template <class C>
Series2<C> const2(const C& value, uint32_t cap) {
  Series2<C> s(value, cap);
  s.set(0, 0, value);
  return s;
}

// v = 0 gives X, v = 1 gives Y.
template <class C>
Series2<C> var2(const C& proto, uint32_t cap, int v) {
  Series2<C> s(proto, cap);
  if (cap >= 1) {
    if (v == 0)
      s.set(1, 0, RingOps<C>::one_like(proto));
    else
      s.set(0, 1, RingOps<C>::one_like(proto));
  }
  return s;
}

template <class C>
Series2<C> operator+(const Series2<C>& a, const Series2<C>& b) {
  uint32_t cap = std::min(a.cap(), b.cap());
  Series2<C> r(a.proto(), cap);
  for (uint32_t d = 0; d <= cap; ++d)
    for (uint32_t j = 0; j <= d; ++j) r.set(d - j, j, a.at(d - j, j) + b.at(d - j, j));
  return r;
}

template <class C>
Series2<C> operator-(const Series2<C>& a, const Series2<C>& b) {
  uint32_t cap = std::min(a.cap(), b.cap());
  Series2<C> r(a.proto(), cap);
  for (uint32_t d = 0; d <= cap; ++d)
    for (uint32_t j = 0; j <= d; ++j) r.set(d - j, j, a.at(d - j, j) - b.at(d - j, j));
  return r;
}

template <class C>
Series2<C> operator-(const Series2<C>& a) {
  Series2<C> r(a.proto(), a.cap());
  for (uint32_t d = 0; d <= a.cap(); ++d)
    for (uint32_t j = 0; j <= d; ++j) r.set(d - j, j, -a.at(d - j, j));
  return r;
}

template <class C>
Series2<C> mul2_serial(const Series2<C>& a, const Series2<C>& b, uint32_t cap) {
  Series2<C> r(a.proto(), cap);
  for (uint32_t da = 0; da <= std::min(a.cap(), cap); ++da)
    for (uint32_t ja = 0; ja <= da; ++ja) {
      const C& ca = a.at(da - ja, ja);
      if (RingOps<C>::is_zero(ca)) continue;
      uint32_t dbmax = std::min(b.cap(), cap - da);
      for (uint32_t db = 0; db <= dbmax; ++db)
        for (uint32_t jb = 0; jb <= db; ++jb) {
          const C& cb = b.at(db - jb, jb);
          if (RingOps<C>::is_zero(cb)) continue;
          uint32_t i = (da - ja) + (db - jb), j = ja + jb;
          r.set(i, j, r.at(i, j) + ca * cb);
        }
    }
  return r;
}

template <class C>
Series2<C> mul2_parallel(const Series2<C>& a, const Series2<C>& b, uint32_t cap) {
  Series2<C> r(a.proto(), cap);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4)
#endif
  for (int64_t flat = 0; flat < (int64_t)size2(cap); ++flat) {
    // invert the triangular index
    uint32_t d = 0;
    while (size_t(d + 1) * (d + 2) / 2 <= (size_t)flat) ++d;
    uint32_t j = (uint32_t)((size_t)flat - size_t(d) * (d + 1) / 2);
    uint32_t i = d - j;
    C acc = RingOps<C>::zero_like(a.proto());
    for (uint32_t i1 = 0; i1 <= i; ++i1)
      for (uint32_t j1 = 0; j1 <= j; ++j1) {
        if (i1 + j1 > a.cap() || (i - i1) + (j - j1) > b.cap()) continue;
        acc = acc + a.at(i1, j1) * b.at(i - i1, j - j1);
      }
    r.set(i, j, std::move(acc));
  }
  return r;
}

template <class C>
Series2<C> operator*(const Series2<C>& a, const Series2<C>& b) {
  uint64_t oa = a.ord(), ob = b.ord();
  uint64_t cap = std::min<uint64_t>(a.cap() + ob, b.cap() + oa);
  uint32_t c = (uint32_t)std::min<uint64_t>(cap, a.cap() + (uint64_t)b.cap());
  size_t work = size2(c) * size2(std::min(a.cap(), b.cap())) / 4;
  return use_parallel(work) ? mul2_parallel(a, b, c) : mul2_serial(a, b, c);
}

template <class C>
Series2<C> scale(const Series2<C>& a, const C& s) {
  Series2<C> r(a.proto(), a.cap());
  for (uint32_t d = 0; d <= a.cap(); ++d)
    for (uint32_t j = 0; j <= d; ++j) r.set(d - j, j, a.at(d - j, j) * s);
  return r;
}

template <class C>
Series2<C> swap_vars(const Series2<C>& a) {
  Series2<C> r(a.proto(), a.cap());
  for (uint32_t d = 0; d <= a.cap(); ++d)
    for (uint32_t j = 0; j <= d; ++j) r.set(j, d - j, a.at(d - j, j));
  return r;
}

// outer(inner) with univariate outer and bivariate inner (zero const term).
template <class C>
Series2<C> compose1into2(const Series1<C>& outer, const Series2<C>& inner) {
  if (!RingOps<C>::is_zero(inner.at(0, 0)))
    throw std::invalid_argument("compose1into2: inner constant term must be zero");
  uint32_t oi = std::max<uint32_t>(inner.ord(), 1);
  uint64_t cap64 = std::min<uint64_t>(inner.cap(), (uint64_t)oi * (outer.cap() + 1) - 1);
  uint32_t cap = (uint32_t)cap64;
  Series2<C> acc(outer.proto(), cap);
  acc.set(0, 0, outer[outer.cap()]);
  for (int64_t i = (int64_t)outer.cap() - 1; i >= 0; --i) {
    acc = (acc * inner).truncated(cap);
    acc.set(0, 0, acc.at(0, 0) + outer[(uint32_t)i]);
  }
  return acc;
}

// F(X, 0) and F(0, Y) as univariate series.
template <class C>
Series1<C> along_x(const Series2<C>& F) {
  Series1<C> r(F.proto(), F.cap());
  for (uint32_t i = 0; i <= F.cap(); ++i) r.set(i, F.at(i, 0));
  return r;
}

template <class C>
Series1<C> along_y(const Series2<C>& F) {
  Series1<C> r(F.proto(), F.cap());
  for (uint32_t j = 0; j <= F.cap(); ++j) r.set(j, F.at(0, j));
  return r;
}

// dF/dY as a bivariate series (cap drops by one).
template <class C>
Series2<C> derive_y(const Series2<C>& F) {
  if (F.cap() == 0) throw std::invalid_argument("derive_y: cap exhausted");
  Series2<C> r(F.proto(), F.cap() - 1);
  for (uint32_t d = 0; d + 1 <= F.cap(); ++d)
    for (uint32_t j = 0; j <= d; ++j)
      r.set(d - j, j, RingOps<C>::from_int(F.proto(), (int64_t)j + 1) * F.at(d - j, j + 1));
  return r;
}

// Generic two-variable polynomial evaluation into a ring R (double Horner).
template <class C, class R, class Embed>
R eval2_poly(const Series2<C>& F, const R& A, const R& B, Embed embed) {
  R acc = embed(RingOps<C>::zero_like(F.proto()));
  for (int64_t i = (int64_t)F.cap(); i >= 0; --i) {
    // row_i(B) = sum_j F(i, j) B^j, j <= cap - i
    R row = embed(RingOps<C>::zero_like(F.proto()));
    for (int64_t j = (int64_t)(F.cap() - (uint32_t)i); j >= 0; --j) {
      row = row * B;
      row = row + embed(F.at((uint32_t)i, (uint32_t)j));
    }
    acc = acc * A;
    acc = acc + row;
  }
  return acc;
}

template <class C, class F>
auto map_coeffs(const Series2<C>& s, F f) -> Series2<decltype(f(s.proto()))> {
  using C2 = decltype(f(s.proto()));
  Series2<C2> r(f(s.proto()), s.cap());
  for (uint32_t d = 0; d <= s.cap(); ++d)
    for (uint32_t j = 0; j <= d; ++j) r.set(d - j, j, f(s.at(d - j, j)));
  return r;
}

template <class C>
SeriesAgreement agreement(const Series2<C>& a, const Series2<C>& b) {
  uint32_t cap = std::min(a.cap(), b.cap());
  SeriesAgreement r{cap, UINT32_MAX, true};
  for (uint32_t d = 0; d <= cap; ++d)
    for (uint32_t j = 0; j <= d; ++j) {
      auto ag = RingOps<C>::agreement(a.at(d - j, j), b.at(d - j, j));
      r.digits = std::min(r.digits, ag.digits);
      r.full = r.full && ag.full();
    }
  return r;
}

// ---------------------------------------------------------------- Series3
// Triangular storage by total degree, used by the associativity check.

inline size_t tet(uint32_t d) { return size_t(d) * (d + 1) * (d + 2) / 6; }

inline size_t idx3(uint32_t i, uint32_t j, uint32_t k) {
  uint32_t d = i + j + k;
  // within level d: order by j, then k
  size_t off = size_t(j) * (2 * (d + 1) - j + 1) / 2 + k;
  return tet(d) + off;
}

inline size_t size3(uint32_t cap) { return tet(cap + 1); }

template <class C>
class Series3 {
public:
  Series3(const C& proto, uint32_t cap)
      : cap_(cap), c_(size3(cap), RingOps<C>::zero_like(proto)) {}

  uint32_t cap() const { return cap_; }
  const C& at(uint32_t i, uint32_t j, uint32_t k) const { return c_[idx3(i, j, k)]; }
  void set(uint32_t i, uint32_t j, uint32_t k, C v) { c_[idx3(i, j, k)] = std::move(v); }
  const C& proto() const { return c_[0]; }

  uint32_t ord() const {
    for (uint32_t d = 0; d <= cap_; ++d)
      for (uint32_t j = 0; j <= d; ++j)
        for (uint32_t k = 0; j + k <= d; ++k)
          if (!RingOps<C>::is_zero(at(d - j - k, j, k))) return d;
    return cap_ + 1;
  }

  Series3 truncated(uint32_t cap) const {
    uint32_t c = std::min(cap, cap_);
    Series3 r(proto(), c);
    for (uint32_t d = 0; d <= c; ++d)
      for (uint32_t j = 0; j <= d; ++j)
        for (uint32_t k = 0; j + k <= d; ++k) r.set(d - j - k, j, k, at(d - j - k, j, k));
    return r;
  }

private:
  uint32_t cap_;
  std::vector<C> c_;
};

// v in {0, 1, 2}.
template <class C>
Series3<C> var3(const C& proto, uint32_t cap, int v) {
  Series3<C> s(proto, cap);
  if (cap >= 1) {
    if (v == 0)
      s.set(1, 0, 0, RingOps<C>::one_like(proto));
    else if (v == 1)
      s.set(0, 1, 0, RingOps<C>::one_like(proto));
    else
      s.set(0, 0, 1, RingOps<C>::one_like(proto));
  }
  return s;
}

template <class C>
Series3<C> const3(const C& value, uint32_t cap) {
  Series3<C> s(value, cap);
  s.set(0, 0, 0, value);
  return s;
}

template <class C>
Series3<C> operator+(const Series3<C>& a, const Series3<C>& b) {
  uint32_t cap = std::min(a.cap(), b.cap());
  Series3<C> r(a.proto(), cap);
  for (uint32_t d = 0; d <= cap; ++d)
    for (uint32_t j = 0; j <= d; ++j)
      for (uint32_t k = 0; j + k <= d; ++k)
        r.set(d - j - k, j, k, a.at(d - j - k, j, k) + b.at(d - j - k, j, k));
  return r;
}

template <class C>
Series3<C> operator-(const Series3<C>& a, const Series3<C>& b) {
  uint32_t cap = std::min(a.cap(), b.cap());
  Series3<C> r(a.proto(), cap);
  for (uint32_t d = 0; d <= cap; ++d)
    for (uint32_t j = 0; j <= d; ++j)
      for (uint32_t k = 0; j + k <= d; ++k)
        r.set(d - j - k, j, k, a.at(d - j - k, j, k) - b.at(d - j - k, j, k));
  return r;
}

template <class C>
Series3<C> mul3_serial(const Series3<C>& a, const Series3<C>& b, uint32_t cap) {
  Series3<C> r(a.proto(), cap);
  for (uint32_t da = 0; da <= std::min(a.cap(), cap); ++da)
    for (uint32_t ja = 0; ja <= da; ++ja)
      for (uint32_t ka = 0; ja + ka <= da; ++ka) {
        const C& ca = a.at(da - ja - ka, ja, ka);
        if (RingOps<C>::is_zero(ca)) continue;
        uint32_t dbmax = std::min(b.cap(), cap - da);
        for (uint32_t db = 0; db <= dbmax; ++db)
          for (uint32_t jb = 0; jb <= db; ++jb)
            for (uint32_t kb = 0; jb + kb <= db; ++kb) {
              const C& cb = b.at(db - jb - kb, jb, kb);
              if (RingOps<C>::is_zero(cb)) continue;
              uint32_t i = (da - ja - ka) + (db - jb - kb), j = ja + jb, k = ka + kb;
              r.set(i, j, k, r.at(i, j, k) + ca * cb);
            }
      }
  return r;
}

template <class C>
Series3<C> mul3_parallel(const Series3<C>& a, const Series3<C>& b, uint32_t cap) {
  Series3<C> r(a.proto(), cap);
  // enumerate output monomials up front so the loop parallelizes flat
  std::vector<std::array<uint32_t, 3>> out;
  out.reserve(size3(cap));
  for (uint32_t d = 0; d <= cap; ++d)
    for (uint32_t j = 0; j <= d; ++j)
      for (uint32_t k = 0; j + k <= d; ++k) out.push_back({d - j - k, j, k});
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
  for (int64_t t = 0; t < (int64_t)out.size(); ++t) {
    uint32_t i = out[t][0], j = out[t][1], k = out[t][2];
    C acc = RingOps<C>::zero_like(a.proto());
    for (uint32_t i1 = 0; i1 <= i; ++i1)
      for (uint32_t j1 = 0; j1 <= j; ++j1)
        for (uint32_t k1 = 0; k1 <= k; ++k1) {
          if (i1 + j1 + k1 > a.cap()) continue;
          if ((i - i1) + (j - j1) + (k - k1) > b.cap()) continue;
          acc = acc + a.at(i1, j1, k1) * b.at(i - i1, j - j1, k - k1);
        }
    r.set(i, j, k, std::move(acc));
  }
  return r;
}

template <class C>
Series3<C> operator*(const Series3<C>& a, const Series3<C>& b) {
  uint64_t oa = a.ord(), ob = b.ord();
  uint64_t cap = std::min<uint64_t>(a.cap() + ob, b.cap() + oa);
  uint32_t c = (uint32_t)std::min<uint64_t>(cap, a.cap() + (uint64_t)b.cap());
  size_t work = size3(c) * 8;
  return use_parallel(work) ? mul3_parallel(a, b, c) : mul3_serial(a, b, c);
}

template <class C>
SeriesAgreement agreement(const Series3<C>& a, const Series3<C>& b) {
  uint32_t cap = std::min(a.cap(), b.cap());
  SeriesAgreement r{cap, UINT32_MAX, true};
  for (uint32_t d = 0; d <= cap; ++d)
    for (uint32_t j = 0; j <= d; ++j)
      for (uint32_t k = 0; j + k <= d; ++k) {
        auto ag = RingOps<C>::agreement(a.at(d - j - k, j, k), b.at(d - j - k, j, k));
        r.digits = std::min(r.digits, ag.digits);
        r.full = r.full && ag.full();
      }
  return r;
}

// Nested-series coefficient rings, so eval2_poly can target them directly.
template <class C>
struct RingOps<Series1<C>> {
  using S = Series1<C>;
  static S zero_like(const S& proto) { return S(proto.proto(), proto.cap()); }
  static S one_like(const S& proto) { return const1(RingOps<C>::one_like(proto.proto()), proto.cap()); }
  static bool is_zero(const S& a) { return a.ord() > a.cap(); }
};

template <class C>
struct RingOps<Series2<C>> {
  using S = Series2<C>;
  static S zero_like(const S& proto) { return S(proto.proto(), proto.cap()); }
  static S one_like(const S& proto) { return const2(RingOps<C>::one_like(proto.proto()), proto.cap()); }
  static bool is_zero(const S& a) { return a.ord() > a.cap(); }
};

template <class C>
struct RingOps<Series3<C>> {
  using S = Series3<C>;
  static S zero_like(const S& proto) { return S(proto.proto(), proto.cap()); }
  static S one_like(const S& proto) { return const3(RingOps<C>::one_like(proto.proto()), proto.cap()); }
  static bool is_zero(const S& a) { return a.ord() > a.cap(); }
};

}  // namespace series
}  // namespace ltk
