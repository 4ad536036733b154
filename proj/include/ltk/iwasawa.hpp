#pragma once

#include <cstdint>
#include <vector>

#include "ltk/coleman.hpp"
#include "ltk/localfield.hpp"
#include "ltk/lubin_tate.hpp"
#include "ltk/padic.hpp"
#include "ltk/series.hpp"

namespace ltk {
namespace iwasawa {

// One-variable Iwasawa-algebra calculus on a single character branch.
// Elements are truncated series in T = gamma - 1 together with the generator
// datum c = psi*(gamma), a unit whose principal part has logarithm exactly p.
// The branch index tags the tame (Teichmuller) component; arithmetic requires
// matching branches and matching generator data.
struct IwasawaElement {
  uint32_t branch;  // residue class mod p-1 of the tame twist
  series::Series1<padic::PAdicInt> coeffs;
  padic::PAdicInt c;
};

// The canonical generator value omega(g0) * exp_p(p) for a primitive root g0
// mod p.  Satisfies both validate_gamma invariants by construction.
padic::PAdicInt gamma_datum(uint32_t g0, const padic::PAdicInt& proto);

// Invariants on c: a unit, log1p(<c> - 1) = p at stored precision for the
// principal part <c> = c / omega(c), and omega(c) of exact order p - 1 in the
// residue field.  Throws invalid_argument on violation.
void validate_gamma(const padic::PAdicInt& c);

// The conventional branch carrying psi* itself.
inline uint32_t psi_star_branch() { return 1; }

IwasawaElement make_element(uint32_t branch, series::Series1<padic::PAdicInt> coeffs,
                            padic::PAdicInt c);
IwasawaElement constant_element(const padic::PAdicInt& k, const padic::PAdicInt& c,
                                uint32_t cap);

// Branch- and datum-checked ring operations.
IwasawaElement operator+(const IwasawaElement& a, const IwasawaElement& b);
IwasawaElement operator*(const IwasawaElement& a, const IwasawaElement& b);

// F(psi* <psi*>^s): substitutes T -> c * exp_p(p s) - 1 and evaluates the
// truncated series as a polynomial.
padic::PAdicInt eval_character(const IwasawaElement& F, const padic::PAdicInt& s);

// theta* = gamma * psi*(gamma)^{-1} - 1, the series (1 + T) c^{-1} - 1.  It
// generates the kernel of evaluation at psi*.
IwasawaElement theta_element(const padic::PAdicInt& c, uint32_t cap);

// m-th Taylor coefficient of s -> F(psi* <psi*>^s), computed symbolically by
// substituting T -> c * exp_p(p s) - 1 with s a series variable.  Requires
// m < p so the factorial stays a unit.
padic::PAdicInt D_star(const IwasawaElement& F, uint32_t m);

// Certifies D^{*(m)}(theta*^m F)(psi*) = p^m F(psi*).
struct DerthetaCertificate {
  padic::PAdicInt lhs, rhs;
  uint32_t digits;  // agreement digits at the joint precision
  bool passed;
};
DerthetaCertificate verify_dertheta(const IwasawaElement& F, uint32_t m);

// (F - F(psi*)) / theta*, by synthetic division at the root c - 1.  The
// certificate remultiplies and reports agreement with F.
struct DivisionCertificate {
  IwasawaElement quotient;
  uint32_t digits;
  bool passed;
};
DivisionCertificate divide_by_theta(const IwasawaElement& F);

// Element of Z_p[(Z/p^n)^x] with coefficients mod p^N, indexed by the
// ascending enumeration of residues coprime to p.
struct GroupAlgebraElement {
  uint32_t prime;
  uint32_t level;
  std::vector<padic::PAdicInt> coeffs;
};

// (theta_n) * sum_sigma psi^{-1}(sigma) sigma over (Z/p^n)^x, the left side
// of the finite-level congruence.  Every coefficient is divisible by p^n.
GroupAlgebraElement theta_times_twisted_sum(const padic::PAdicInt& c, uint32_t n);

// The finite-level congruence: theta_n * sum_sigma psi^{-1}(sigma) sigma is
// congruent to -(p-1) p^n modulo p^n I_n, where theta_n = [gamma] c^{-1} - 1,
// psi lifts group elements to their canonical integer representatives, and
// I_n is the ideal generated by sigma - psi(sigma).  Membership is decided by
// exact elimination with valuation pivots over Z/p^N.  constant_shift adds
// shift * p^n to the claimed constant; any nonzero shift must fail.
struct CongruenceCertificate {
  bool passed;
  uint32_t group_order;
  int64_t residual_valuation;  // min valuation over the irreducible remainder; INT64_MAX when passed
};
CongruenceCertificate theta_congruence(const padic::PAdicInt& c, uint32_t n,
                                       int64_t constant_shift = 0);

// Norm-coherent unit tower with its Galois orbit tables: at each level the
// conjugates sigma_b(w_n) for every b in (Z/p^n)^x, plus the unit series g
// with u_n = g(w_n).
struct UnitTowerData {
  lubin_tate::TorsionTower tower;
  std::vector<std::vector<uint64_t>> labels;          // per level, unit representatives b
  std::vector<std::vector<localfield::Elem>> action;  // per level, sigma_b(w_n) aligned with labels
  series::Series1<padic::PAdicInt> g;
  std::vector<localfield::Elem> units;  // u_n = g(w_n)
};

// Orbit tables over the multiplicative twin, where sigma_b(w) = (1+w)^b - 1
// exactly.  Requires cyclotomic input data.
UnitTowerData make_unit_tower(const coleman::ColemanData& data);

// S_n = (p - u0) * sum_tau psi^{-1}(tau) log <u_n^tau>, reported as an
// integral element of the level-n ring divided by p^scale.  The Teichmuller
// part of each unit is discarded (canonical log branch); the scale depends
// only on the tower depth, so partial values at different levels share it.
struct IotaPartial {
  localfield::Elem value;
  uint32_t scale;
};
IotaPartial iota_star(const UnitTowerData& u, uint32_t n, const padic::PAdicInt& unit_root);

// Partial values at every level and the valuations of consecutive
// differences v(S_{k+1} - lift(S_k)), normalized by the ramification index
// for cross-level comparison.
struct StabilityReport {
  std::vector<IotaPartial> partials;
  std::vector<int64_t> diff_valuations;  // pi-adic, in the deeper ring of each pair
  std::vector<uint32_t> diff_rams;       // matching ramification indices
  bool nondecreasing;                    // of diff_valuations / diff_rams
};
StabilityReport iota_star_stability(const UnitTowerData& u, const padic::PAdicInt& unit_root);

// (1 - unit_root/p) * omega * beta_delta, the p-division carried as the
// fraction shift.
padic::PAdicFrac iota_w(const padic::PAdicInt& beta_delta, const padic::PAdicInt& omega,
                        const padic::PAdicInt& unit_root);

}  // namespace iwasawa
}  // namespace ltk
