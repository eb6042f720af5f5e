#pragma once

// The uniform reflection: the conucleus r(b) = ⋁{a | a ◁ b}, its subframe
// of fixed points, and the induced admissible structure.

#include <vector>

#include "uniloc/uniformity.hpp"

namespace uniloc {

/// r(b) = ⋁{a | a ◁ b}: monotone, deflationary, idempotent, meet-preserving.
inline Element conucleus(const PreUniformLocale& x, const Element& b) { return x.interior(b); }

/// The admissible reflection of a structure.  `fixed` is the frame of fixed points of r; `inclusion` is the unit's
/// frame map fixed → O X.
class Reflection {
 public:
  explicit Reflection(const PreUniformLocale& source);

  const PreUniformLocale& source() const { return source_; }
  const FiniteFrame& fixed() const { return inclusion_.source(); }
  const FrameHom& inclusion() const { return inclusion_; }
  const PreUniformLocale& reflected() const { return reflected_; }

  /// An element of O X fixed by r, as an element of the fixed frame.
  /// Throws unless a = r(a).
  Element to_fixed(const Element& a) const;
  bool is_fixed(const Element& a) const { return conucleus(source_, a) == a; }

  /// {U | ↓i[U] lies in the source filter}: the reflected filter by definition.
  bool filter_contains(const CoverDownset& u) const;

 private:
  PreUniformLocale source_;
  FrameHom inclusion_;
  PreUniformLocale reflected_;
};

/// The source structure with its reflection.
inline Reflection uniform_reflection(const PreUniformLocale& x) { return Reflection(x); }

/// f♭: O Y → fixed with inclusion ∘ f♭ = f, for f: O Y → O X uniform and Y
/// admissible.  Throws naming the failed precondition.
FrameHom factor_through_unit(const Reflection& refl, const FrameHom& f, const PreUniformLocale& target);

}  // namespace uniloc
