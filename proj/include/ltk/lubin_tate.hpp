#pragma once

#include <cstdint>
#include <vector>

#include "ltk/localfield.hpp"
#include "ltk/padic.hpp"
#include "ltk/series.hpp"

// Height-one formal group laws from a Frobenius series f over Z_p: the group
// law F(X,Y), multiplication endomorphisms [a], the logarithm and its
// inverse, torsion-generator towers, and isomorphisms between laws sharing a
// uniformizer.
//
// All constructions run degree by degree off the functional equations
// (f(F) = F(f,f) and friends), dividing the homogeneous defect by
// pi^r - pi at each step; the division is exact, so the coefficients come
// out integral with the precision the inputs support.

namespace ltk {
namespace lubin_tate {

struct FormalGroupLaw {
  uint32_t prime;
  padic::PAdicInt pi;                          // uniformizer, valuation 1
  series::Series1<padic::PAdicInt> f;          // Frobenius series
  series::Series2<padic::PAdicInt> F;          // group law (possibly at a lower cap)
  series::Series1<padic::PAdicFrac> lambda;    // logarithm, at the cap of f
  series::Series1<padic::PAdicFrac> exp_f;     // revert(lambda), possibly at a lower cap
};

// f must satisfy f = pi Z + ... with every other coefficient divisible by p
// and the Z^p coefficient a unit.  biv_cap / exp_cap bound the caps of the
// bivariate law and the exponential (both default to the cap of f; large
// univariate caps stay usable without paying for the bivariate recursion).
FormalGroupLaw make_group(const series::Series1<padic::PAdicInt>& f, const padic::PAdicInt& pi,
                          uint32_t biv_cap = UINT32_MAX, uint32_t exp_cap = UINT32_MAX);

// pi Z + Z^p
series::Series1<padic::PAdicInt> frobenius_polynomial(uint32_t p, uint32_t N, uint32_t cap);
// (1+Z)^p - 1, the multiplicative twin
series::Series1<padic::PAdicInt> frobenius_gm_twin(uint32_t p, uint32_t N, uint32_t cap);

// [a](Z): the unique endomorphism with linear coefficient a; [pi] = f.
series::Series1<padic::PAdicInt> mult_by(const FormalGroupLaw& G, const padic::PAdicInt& a);

// dF/dY(Z, 0) = 1/lambda'(Z), integral, solved from pi w(f) = f' w.
series::Series1<padic::PAdicInt> reciprocal_dlog(const FormalGroupLaw& G, uint32_t cap);

// F(F(X,Y),W) vs F(X,F(Y,W)) compared through trivariate expansion.
series::SeriesAgreement associativity_defect(const FormalGroupLaw& G, uint32_t cap);

// Multiplicative-group closed forms, used as oracles against the twin.
series::Series2<padic::PAdicInt> multiplicative_law(const padic::PAdicInt& proto, uint32_t cap);
series::Series1<padic::PAdicFrac> log1p_series(const padic::PAdicInt& proto, uint32_t cap);
series::Series1<padic::PAdicFrac> exp_minus_one_series(const padic::PAdicInt& proto, uint32_t cap);
// (1+Z)^a - 1 through p-adic binomial coefficients; a may be negative.
series::Series1<padic::PAdicInt> one_plus_pow(int64_t a, const padic::PAdicInt& proto, uint32_t cap);

// Torsion-generator tower: level k is Eisenstein over level k-1, cut out by
// f(Z)/Z at level 1 (degree p-1) and f(Z) - w_{k-1} above (degree p); needs
// f to be a polynomial of degree exactly p.
struct TorsionTower {
  std::vector<localfield::RingPtr> rings;  // rings[k-1] hosts level k
  std::vector<localfield::Elem> gens;      // gens[k-1] = w_k
};
TorsionTower make_tower(const FormalGroupLaw& G, uint32_t levels);

// Horner evaluation of an integral series at an extension-ring element.
localfield::Elem eval_at(const series::Series1<padic::PAdicInt>& s, const localfield::Elem& x);

// The isomorphism exp_dst(omega * lambda_src) for laws sharing pi; omega a
// unit.  Coefficients are certified integral; a failed certificate throws
// precision_error.
series::Series1<padic::PAdicInt> isomorphism(const FormalGroupLaw& src, const FormalGroupLaw& dst,
                                             const padic::PAdicInt& omega);

}  // namespace lubin_tate
}  // namespace ltk
