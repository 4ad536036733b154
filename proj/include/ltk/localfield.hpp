#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ltk/padic.hpp"
#include "ltk/series.hpp"

// Finite extension rings of Z_p, presented relatively: a ring is either the
// base, an unramified extension of a ring (lifted irreducible polynomial),
// or a totally ramified extension (Eisenstein polynomial).  Towers nest via
// shared immutable descriptors; elements are coefficient vectors over the
// ring one step down.
//
// Valuations are normalized so the ring's own uniformizer has valuation 1;
// the base counts powers of p, an Eisenstein stage of degree e multiplies
// the scale by e, an unramified stage keeps it.

namespace ltk {
namespace localfield {

class Elem;
struct Ring;
using RingPtr = std::shared_ptr<const Ring>;

enum class RingKind { base, unramified, eisenstein };

struct Ring {
  RingKind kind;
  uint32_t prime;
  uint32_t precision;         // base working precision, copied up the tower
  RingPtr below;              // coefficient ring; null for the base
  std::vector<Elem> modulus;  // lower coefficients a_0..a_{d-1} of the monic defining polynomial
  uint32_t degree;            // 1 for the base
  uint32_t abs_ram;           // absolute ramification index over the base
  uint32_t res_degree;        // residue-field degree over F_p
};

RingPtr make_base(uint32_t p, uint32_t N);
// lower = a_0..a_{d-1} over `below`; the leading coefficient is implicitly 1.
RingPtr make_unramified(const RingPtr& below, const std::vector<Elem>& lower);
RingPtr make_eisenstein(const RingPtr& below, const std::vector<Elem>& lower);

bool ring_equal(const RingPtr& a, const RingPtr& b);
uint64_t residue_card(const RingPtr& r);  // p^res_degree
uint32_t total_degree(const RingPtr& r);  // over the base

class Elem {
public:
  static Elem of_scalar(RingPtr base_ring, padic::PAdicInt v);
  static Elem of_coords(RingPtr ext_ring, std::vector<Elem> coords);

  const RingPtr& ring() const { return ring_; }
  bool is_base() const;
  const padic::PAdicInt& scalar() const;  // base elements only
  const Elem& coord(uint32_t i) const;    // extension elements only

  bool is_zero() const;  // zero at stored precision
  std::string to_string() const;

private:
  Elem(RingPtr r, padic::PAdicInt s, std::vector<Elem> c);
  RingPtr ring_;
  padic::PAdicInt scalar_;
  std::vector<Elem> coords_;
};

Elem zero(const RingPtr& r);
Elem one(const RingPtr& r);
Elem from_int(const RingPtr& r, int64_t v);
Elem gen(const RingPtr& r);                         // the defining-polynomial root class
Elem lift(const RingPtr& r, const Elem& x);         // embed an element of r->below
Elem scalar_to(const RingPtr& r, const padic::PAdicInt& v);
Elem uniformizer(const RingPtr& r);

Elem operator+(const Elem& a, const Elem& b);
Elem operator-(const Elem& a, const Elem& b);
Elem operator-(const Elem& a);
Elem operator*(const Elem& a, const Elem& b);
Elem pow_elem(const Elem& a, uint64_t k);

struct Val {
  bool inf;   // zero at stored precision
  int64_t v;  // in units of this ring's uniformizer
};
Val valuation(const Elem& a);
bool is_unit(const Elem& a);

Elem unit_inverse(const Elem& u);
Elem exact_div_pi(const Elem& a);  // divide by the ring's uniformizer; throws when not divisible
Elem truncated(const Elem& a, uint32_t N);

Elem trace_to_below(const Elem& a);
padic::PAdicInt trace_to_base(const Elem& a);
Elem norm_to_below(const Elem& a);
padic::PAdicInt norm_to_base(const Elem& a);

Elem frobenius_generator(const RingPtr& r);  // image of gen under the lifted p-power map
Elem frobenius(const Elem& a);

struct Agreement {
  uint32_t common;
  uint32_t digits;
  bool allfull;
  bool full() const { return allfull; }
};
Agreement agree(const Elem& a, const Elem& b);

}  // namespace localfield

namespace series {

template <>
struct RingOps<localfield::Elem> {
  using C = localfield::Elem;
  static C zero_like(const C& proto) { return localfield::zero(proto.ring()); }
  static C one_like(const C& proto) { return localfield::one(proto.ring()); }
  static C from_int(const C& proto, int64_t v) { return localfield::from_int(proto.ring(), v); }
  static bool is_zero(const C& a) { return a.is_zero(); }
  static bool is_unit(const C& a) { return localfield::is_unit(a); }
  static C inverse(const C& a) { return localfield::unit_inverse(a); }
  static localfield::Agreement agreement(const C& a, const C& b) { return localfield::agree(a, b); }
};

}  // namespace series
}  // namespace ltk
