#pragma once

// The reals as the completion of the rationals, and the p-adic analogue.
//
// Only finitely generated opens are represented: finite joins of generators
// ((r,s)) plus half-lines, which arise as images of Dedekind cuts.

#include <gmpxx.h>

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uniloc/frame.hpp"

namespace uniloc {

using Rational = mpq_class;

/// Accepts "a", "a/b" and decimals "a.b", each with an optional sign.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);

/// A rational or ±∞.  Infinite ends only occur on half-lines.
class Endpoint {
 public:
  enum class Kind { neg_inf, finite, pos_inf };

  static Endpoint at(const Rational& q) { return Endpoint(Kind::finite, q); }
  static Endpoint neg_inf() { return Endpoint(Kind::neg_inf, 0); }
  static Endpoint pos_inf() { return Endpoint(Kind::pos_inf, 0); }

  Kind kind() const { return kind_; }
  bool finite() const { return kind_ == Kind::finite; }
  /// Only meaningful when finite.
  const Rational& value() const { return value_; }

  friend bool operator==(const Endpoint& a, const Endpoint& b);
  friend bool operator<(const Endpoint& a, const Endpoint& b);
  friend bool operator<=(const Endpoint& a, const Endpoint& b) { return !(b < a); }

  std::string format() const;

 private:
  Endpoint(Kind k, Rational v) : kind_(k), value_(std::move(v)) {}
  Kind kind_;
  Rational value_;
};

/// The open interval between two endpoints; empty unless lo < hi.
struct OpenInterval {
  Endpoint lo;
  Endpoint hi;
  bool empty() const { return !(lo < hi); }
  bool bounded() const { return lo.finite() && hi.finite(); }
  friend bool operator==(const OpenInterval&, const OpenInterval&) = default;
};

inline OpenInterval interval(const Rational& r, const Rational& s) { return {Endpoint::at(r), Endpoint::at(s)}; }

/// A finite join of intervals in canonical form: sorted, pairwise disjoint,
/// overlapping intervals merged.  Intervals that only share an endpoint stay
/// apart, since ((0,1)) ∨ ((1,2)) misses the point 1.
class RealOpen {
 public:
  RealOpen() = default;  // 0

  /// Drops empty intervals and merges overlaps.
  static RealOpen canonicalize(std::vector<OpenInterval> parts);
  /// ((r,s)), which is 0 when r ≥ s.
  static RealOpen generator(const Rational& r, const Rational& s);
  static RealOpen whole();

  const std::vector<OpenInterval>& components() const { return parts_; }
  bool is_bottom() const { return parts_.empty(); }
  bool bounded() const;

  /// "0", "1" or components joined by " | ", e.g. "((0, 1)) | ((2, +inf))".
  std::string format() const;

  friend bool operator==(const RealOpen&, const RealOpen&) = default;

 private:
  std::vector<OpenInterval> parts_;
};

RealOpen meet(const RealOpen& a, const RealOpen& b);
RealOpen join(const RealOpen& a, const RealOpen& b);

/// A ≤ B in the frame of reals.  B's components are disjoint and each
/// component of A is connected, so it must sit inside a single one of them.
bool real_open_leq(const RealOpen& a, const RealOpen& b);

/// ((l,u)) belongs to the basic cover C_q iff it fits in some (p, p+q).
bool in_basic_cover(const Rational& q, const OpenInterval& i);

/// st(A, C_q): each component widened by q on both sides.
RealOpen star(const RealOpen& a, const Rational& q);

/// Finitely many members of C_q whose join lies above bounded A.
std::vector<OpenInterval> cover_witness(const RealOpen& a, const Rational& q);

/// A ◁ B: some q > 0 has st(A, C_q) ≤ B.  Returns such a q, half the least
/// clearance between A and the complement of B.
std::optional<Rational> real_uniformly_below(const RealOpen& a, const RealOpen& b);

/// ℓ_lower ∧ u_upper; an absent side is top.
struct CutTerm {
  std::optional<Rational> lower;
  std::optional<Rational> upper;
  std::string format() const;
  friend bool operator==(const CutTerm&, const CutTerm&) = default;
};

/// ((r,s)) ↦ ℓ_r ∧ u_s; infinite ends become absent cuts.
CutTerm to_cuts(const OpenInterval& i);
/// ℓ_r ↦ (r, +∞) and u_s ↦ (−∞, s), met together.
RealOpen from_cuts(const CutTerm& t);

/// lo < hi, both exact.
struct RationalInterval {
  Rational lo;
  Rational hi;
  Rational width() const { return hi - lo; }
  bool contains(const Rational& q) const { return lo < q && q < hi; }
  bool overlaps(const RationalInterval& o) const { return lo < o.hi && o.lo < hi; }
  std::string format() const;
};

/// A point of the completion, given as an oracle ε ↦ interval of width ≤ ε
/// containing the point.  Oracles must be pure.
class CauchyReal {
 public:
  using Oracle = std::function<RationalInterval(const Rational&)>;
  explicit CauchyReal(Oracle oracle) : oracle_(std::move(oracle)) {}

  /// Throws Error for ε ≤ 0 or when the oracle breaks its width contract.
  RationalInterval at(const Rational& eps) const;

 private:
  Oracle oracle_;
};

/// q ↦ ε ↦ (q − ε/2, q + ε/2).
CauchyReal embed_rational(const Rational& q);

/// Queries both at ε/2.
RationalInterval real_add(const CauchyReal& x, const CauchyReal& y, const Rational& eps);
RationalInterval real_neg(const CauchyReal& x, const Rational& eps);
/// One probe at precision 1 bounds |x|,|y| by M; then both are queried at
/// δ = min(ε/(2(M+1)), 1) and the corner products bound the result.
RationalInterval real_mul(const CauchyReal& x, const CauchyReal& y, const Rational& eps);

CauchyReal sum(CauchyReal x, CauchyReal y);
CauchyReal negation(CauchyReal x);
CauchyReal product(CauchyReal x, CauchyReal y);

bool is_prime(unsigned long p);

/// v_p(q); nullopt for q = 0.  Throws Error unless p is prime.
std::optional<long> padic_valuation(const Rational& q, unsigned long p);

/// {x ∈ ℚ | v_p(x − c) ≥ k}.  The centre is canonical: c = n·p^(k−m) with
/// 0 ≤ n < p^m, so equal balls compare equal.
class PAdicBall {
 public:
  PAdicBall(unsigned long p, const Rational& center, long precision);

  unsigned long prime() const { return p_; }
  const Rational& center() const { return center_; }
  long precision() const { return k_; }

  bool contains(const Rational& x) const;
  /// "c + O(p^k)".
  std::string format() const;

  friend bool operator==(const PAdicBall&, const PAdicBall&) = default;

 private:
  unsigned long p_;
  Rational center_;
  long k_;
};

/// Throw Error when the primes differ.
PAdicBall padic_add(const PAdicBall& a, const PAdicBall& b);
PAdicBall padic_neg(const PAdicBall& a);
PAdicBall padic_sub(const PAdicBall& a, const PAdicBall& b);
/// Precision min(k_a + v(c_b), k_b + v(c_a), k_a + k_b).
PAdicBall padic_mul(const PAdicBall& a, const PAdicBall& b);

}  // namespace uniloc
