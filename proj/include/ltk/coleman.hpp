// Coleman power series machinery over a Lubin-Tate tower: the interpolation
// certificate g(w_n) = beta_n, the norm operator, the logarithmic derivative
// delta with its value delta_w at the origin, the level-independent trace
// quantity, and the dual-exponential functional.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ltk/localfield.hpp"
#include "ltk/lubin_tate.hpp"
#include "ltk/padic.hpp"
#include "ltk/series.hpp"

namespace ltk {
namespace coleman {

// A candidate Coleman series together with the tower data it should
// interpolate.  beta[k-1] is a unit of the level-k ring; construction
// certifies norm coherence (norm from level k+1 to level k sends beta_{k+1}
// to beta_k) and throws logic_error when it fails.
struct ColemanData {
  lubin_tate::FormalGroupLaw G;
  lubin_tate::TorsionTower tower;
  std::vector<localfield::Elem> beta;
  series::Series1<padic::PAdicInt> g;
  std::string name;
};

// The kernel of the pi endomorphism inside the level-1 ring: zero followed
// by the p-1 roots of the level-1 modulus at full ring precision, found by
// Hensel lifting after rescaling by the generator.  The root at index u is
// the one congruent to u * w_1.
std::vector<localfield::Elem> pi_torsion(const lubin_tate::FormalGroupLaw& G,
                                         const lubin_tate::TorsionTower& tower);

// The unique N g with (N g)(f(Z)) = prod_{t in ker pi} g(F(Z, t)).  The
// product is formed over the level-1 ring; coefficients must visibly descend
// to the base (invalid_argument otherwise).  Degree-r extraction divides by
// pi^r, so the r-th coefficient carries r fewer known digits.
series::Series1<padic::PAdicInt> coleman_norm(const series::Series1<padic::PAdicInt>& g,
                                              const lubin_tate::FormalGroupLaw& G,
                                              const lubin_tate::TorsionTower& tower);

struct LevelReport {
  uint32_t level;
  uint32_t digits;  // base digits of agreement, minimum over coordinates
  bool passed;      // full agreement at the stored precision
};
struct InterpolationCertificate {
  std::vector<LevelReport> levels;
  bool passed;
};
// Evaluates g at every tower generator and compares with beta levelwise.
InterpolationCertificate check_interpolation(const ColemanData& data);

// delta g = g' * (g * lambda')^{-1}, computed over the fraction ring and
// certified integral coefficientwise (precision_error when certification
// fails).  Requires a unit constant term.
series::Series1<padic::PAdicInt> delta(const series::Series1<padic::PAdicInt>& g,
                                       const lubin_tate::FormalGroupLaw& G);

// delta g at the origin: g'(0)/g(0), using lambda'(0) = 1.
padic::PAdicInt delta_at_zero(const series::Series1<padic::PAdicInt>& g);

// pi^{-n} Tr(delta g(w_n)) from the level-n ring down to the base.  The
// division by pi^{n-1} must be exact (precision_error otherwise); the final
// 1/pi is kept as the fraction shift.  Two effects bound the usable digits:
// truncating delta at cap D leaves floor((D+1)/e_n) - (n-1) digits, and the
// stored scalar precision leaves N - n - 1, whichever is smaller.
padic::PAdicFrac trace_delta_level(const series::Series1<padic::PAdicInt>& g,
                                   const lubin_tate::FormalGroupLaw& G,
                                   const lubin_tate::TorsionTower& tower, uint32_t n);

// (unit_root/p - 1) * delta_at_zero(g), with the division by p carried as
// the fraction shift.  unit_root must be a unit.
padic::PAdicFrac dual_exp(const series::Series1<padic::PAdicInt>& g,
                          const lubin_tate::FormalGroupLaw& G,
                          const padic::PAdicInt& unit_root);

// Built-in data over the multiplicative twin.  cyclotomic: g_a(Z) =
// ((1+Z)^a - 1)/Z with 1 <= a <= cap coprime to p, beta_k = [a](w_k)/w_k.
// tautological: g(Z) = Z + c with c a unit, beta_k = w_k + c.  biv_cap
// bounds the bivariate law cap so deep univariate data stays cheap.
ColemanData make_cyclotomic(uint32_t p, uint32_t N, uint32_t cap, int64_t a, uint32_t levels,
                            uint32_t biv_cap = UINT32_MAX);
ColemanData make_tautological(uint32_t p, uint32_t N, uint32_t cap, int64_t c, uint32_t levels,
                              uint32_t biv_cap = UINT32_MAX);
// Parses "cyclotomic:a=<int>" or "tautological:c=<int>".
ColemanData make_named(const std::string& name, uint32_t p, uint32_t N, uint32_t cap,
                       uint32_t levels, uint32_t biv_cap = UINT32_MAX);

}  // namespace coleman
}  // namespace ltk
