#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "uniloc/frame.hpp"

namespace uniloc {

/// A join-preserving map between finite frames, determined by the images of
/// the source's principal downsets.  Frame homomorphisms are the special case
/// that also preserves finite meets and top (see FrameHom).
class JoinMap {
 public:
  /// `images[p]` is the image of the principal downset of irreducible p.
  /// Throws unless the images are monotone in p.
  JoinMap(FiniteFrame source, FiniteFrame target, std::vector<Element> images);

  /// Tabulates an arbitrary element function on principal downsets.
  static JoinMap from_function(FiniteFrame source, FiniteFrame target,
                               const std::function<Element(const Element&)>& fn);

  const FiniteFrame& source() const { return source_; }
  const FiniteFrame& target() const { return target_; }
  const Element& image_of_irreducible(std::size_t p) const { return images_.at(p); }

  Element operator()(const Element& a) const;

  /// h_*(b) = ⋁{a | h(a) ≤ b}; always exists for join-preserving h.
  Element right_adjoint(const Element& b) const;

  /// h_!(b) = ⋀{a | b ≤ h(a)}; exists iff h preserves top and binary meets.
  /// Returns nullopt when h has no left adjoint.
  std::optional<Element> left_adjoint(const Element& b) const;

  bool preserves_meets() const;

  friend bool operator==(const JoinMap& f, const JoinMap& g);

 protected:
  FiniteFrame source_;
  FiniteFrame target_;
  std::vector<Element> images_;
};

/// Frame homomorphism h: A → B (the frame map f* of a locale map f: Y → X
/// where O Y = B, O X = A).  Construction verifies preservation of finite
/// meets, top and all joins.
class FrameHom : public JoinMap {
 public:
  FrameHom(FiniteFrame source, FiniteFrame target, std::vector<Element> images);
  explicit FrameHom(const JoinMap& m) : FrameHom(m.source(), m.target(), collect(m)) {}

  static FrameHom identity(const FiniteFrame& x);
  /// The unique frame map from O X onto the one-element frame.
  static FrameHom to_trivial(const FiniteFrame& x);

  /// Left adjoint; always exists between finite frames.
  Element left_adjoint_value(const Element& b) const { return *left_adjoint(b); }

  bool injective() const;
  bool surjective() const;
  bool is_isomorphism() const { return injective() && surjective(); }

 private:
  static std::vector<Element> collect(const JoinMap& m);
};

/// g ∘ f as frame maps (apply f first).
FrameHom compose(const FrameHom& g, const FrameHom& f);

/// a > 0 ⇒ h(a) > 0 for every a in the source frame, i.e. the locale map
/// whose frame map is h is strongly dense.
bool is_strongly_dense(const FrameHom& h);

/// Projection frame maps a ↦ a ⊕ 1 and b ↦ 1 ⊕ b.
FrameHom projection_left(const ProductFrame& xy);
FrameHom projection_right(const ProductFrame& xy);

/// f ⊕ g : O X ⊕ O X' → O Y ⊕ O Y' on the given product frames.
FrameHom coproduct_hom(const FrameHom& f, const FrameHom& g, const ProductFrame& source,
                       const ProductFrame& target);

/// Pairing into a coproduct: (a ⊕ b) ↦ f(a) ∧ g(b).
FrameHom copair(const ProductFrame& source, const FrameHom& f, const FrameHom& g);

/// (f × g)_*(c) = ⋁{f_*(a) ⊕ g_*(b) | a ⊕ b ≤ c}, evaluated rectangle by rectangle.
Element product_hom_right_adjoint(const FrameHom& f, const FrameHom& g, const ProductFrame& source,
                                  const ProductFrame& target, const Element& c);

/// Frame map of a monotone map of irreducibles f: P_X → P_Y, i.e. downset
/// preimage O Y → O X.  `x` is the locale-map source.  Throws unless f is monotone.
FrameHom preimage_hom(const FiniteFrame& x, const FiniteFrame& y, const std::vector<std::size_t>& f);

/// Every frame homomorphism source → target (small frames only).
std::vector<FrameHom> all_frame_homs(const FiniteFrame& source, const FiniteFrame& target);

}  // namespace uniloc
