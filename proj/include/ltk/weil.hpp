#pragma once

// Weil pairings on CM elliptic curves over small finite fields.  The curve
// y^2 = x^3 - x carries the order-four automorphism (x, y) -> (-x, i y), so
// integer pairs a + b iota act as endomorphisms and the pairing identities
// (bilinearity, alternation, adjointness to isogenies, level lowering) can be
// certified exhaustively over torsion grids.
//
// Pairing convention: e_N(P, Q) = (-1)^N f_P(Q) / f_Q(P) with f_R the Miller
// function of divisor N(R) - N(O) built from chord and tangent lines.  The
// formula needs each argument outside the other's cyclic span; pairs with one
// argument inside the other's span short-circuit to one, the correct
// alternating value.

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ltk::weil {

// F_{ell^deg} as Z/ell[X] modulo a monic polynomial; `modulus` stores the
// lower coefficients (size deg).  deg 1 keeps an empty modulus.  size = ell^deg
// stays at desk scale, at most 2^20, and deg at most 4.
struct Field {
  uint64_t ell = 0;
  uint32_t deg = 1;
  std::vector<uint64_t> modulus;
  uint64_t size = 0;
};
using FieldPtr = std::shared_ptr<const Field>;

FieldPtr make_prime_field(uint64_t ell);

// Certifies irreducibility by trial division over all lower-degree monic
// factors, which is affordable at desk scale; throws when reducible.
FieldPtr make_extension(uint64_t ell, const std::vector<uint64_t>& modulus_lower);

// Coefficients stored inline and reduced mod ell; entries past deg stay zero.
// Elements reference their field without owning it, so the FieldPtr they came
// from must outlive them.
struct FElem {
  const Field* F = nullptr;
  std::array<uint64_t, 4> c{};
};

FElem zero(const FieldPtr& F);
FElem one(const FieldPtr& F);
FElem from_int(const FieldPtr& F, int64_t v);
FElem make_elem(const FieldPtr& F, const std::vector<uint64_t>& coeffs);
bool is_zero(const FElem& a);
bool operator==(const FElem& a, const FElem& b);
bool operator!=(const FElem& a, const FElem& b);
FElem operator+(const FElem& a, const FElem& b);
FElem operator-(const FElem& a, const FElem& b);
FElem operator-(const FElem& a);
FElem operator*(const FElem& a, const FElem& b);
FElem pow_elem(const FElem& a, uint64_t e);
// Throws on zero.
FElem inverse(const FElem& a);
// The ell-power map, the generator of the Galois group over Z/ell.
FElem frobenius(const FElem& a);
// Smallest element (by coefficient order) squaring to -1; throws when the
// field has no fourth root of unity.
FElem sqrt_minus_one(const FieldPtr& F);
// Smallest d in [1, bound] with a^d = 1; throws when none exists.
uint64_t element_order(const FElem& a, uint64_t bound);

// y^2 = x^3 + a x + b with nonzero discriminant, characteristic at least 5.
struct Curve {
  FieldPtr F;
  FElem a, b;
};
using CurvePtr = std::shared_ptr<const Curve>;

CurvePtr make_curve(const FieldPtr& F, const FElem& a, const FElem& b);

struct Point {
  bool inf = true;
  FElem x, y;
};

Point infinity(const CurvePtr& E);
Point make_point(const CurvePtr& E, const FElem& x, const FElem& y);
bool on_curve(const CurvePtr& E, const Point& P);
bool eq(const Point& P, const Point& Q);
Point neg(const CurvePtr& E, const Point& P);
Point add(const CurvePtr& E, const Point& P, const Point& Q);
Point mul(const CurvePtr& E, const Point& P, int64_t k);
// Smallest divisor d of N with d P = O; throws when N P != O.
uint64_t order_dividing(const CurvePtr& E, const Point& P, uint64_t N);
// Coordinatewise field Frobenius; an automorphism of E(F) since the curve
// coefficients are scalars.
Point frobenius_point(const CurvePtr& E, const Point& P);

// a + b iota acting through P -> a P + b (-x, i y); i is a fixed square root
// of -1.  The dual is a - b iota and the degree is a^2 + b^2.
struct CMEndo {
  FElem i;
  int64_t a = 0;
  int64_t b = 0;
};

Point apply(const CurvePtr& E, const CMEndo& phi, const Point& P);
CMEndo dual(const CMEndo& phi);
uint64_t norm(const CMEndo& phi);

// Weil pairing of N-torsion points; requires N P = N Q = O and N coprime to
// the characteristic.  The result is an N-th root of unity.
FElem miller_pairing(const CurvePtr& E, const Point& P, const Point& Q, uint64_t N);

struct GridCertificate {
  uint64_t pairs = 0;
  uint64_t mismatches = 0;
  bool passed = false;
};

// e_N(phi A, B) = e_N(A, dual(phi) B) over the full grid spanned by the basis
// (P, Q) of E[N].
GridCertificate cm_adjointness(const CurvePtr& E, const Point& P, const Point& Q,
                               uint64_t N, const CMEndo& phi);

// e_{p^{n+1}}(A, B) = e_{p^n}(A, pistar B) for A over E[p^n] and B over
// E[p^{n+1}], with (P, Q) a basis of E[p^{n+1}].  A pair counts as a mismatch
// when pistar fails to lower B into E[p^n] or the two pairings differ.
GridCertificate level_compatibility(const CurvePtr& E, const Point& P, const Point& Q,
                                    uint64_t p, uint32_t n, const CMEndo& pistar);

// dual(phi)(phi(R)) = [norm(phi)] R on deterministically sampled curve points.
GridCertificate cm_consistency(const CurvePtr& E, const CMEndo& phi, uint32_t samples);

// A brute-force-found field with E[N] rational, the square root of -1 used by
// iota, and a certified basis of E[N].
struct TorsionFixture {
  CurvePtr curve;
  FElem i;
  Point P, Q;
  uint64_t N = 0;
  uint64_t curve_order = 0;
  uint64_t fields_scanned = 0;
};

// Scans candidate fields by increasing size (primes with a fourth root of
// unity and N | q - 1, then quadratic extensions; only extensions when asked)
// and returns the first hosting a full rational N-torsion, with a basis found
// by a deterministic point scan.  Throws when nothing at desk scale works.
TorsionFixture discover_full_torsion(uint64_t N, bool extension_only);

// Reads the block from the fixtures file when present (validating everything
// it claims), otherwise discovers and appends to the file.  An empty path
// skips persistence.
TorsionFixture load_or_discover(const std::string& path, const std::string& block,
                                uint64_t N, bool extension_only);

}  // namespace ltk::weil
