#pragma once

// Covering and entourage uniformities on finite frames.
//
// Filters are never materialized: a uniformity is a finite base, and a
// covering downset (or entourage) belongs to the filter iff it contains
// (resp. lies above) some base member.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uniloc/frame.hpp"
#include "uniloc/hom.hpp"

namespace uniloc {

/// A downset of O X, kept as its maximal generators (sorted).  Nothing forces
/// the join to be top; `covers()` says whether it is a covering downset.
class CoverDownset {
 public:
  CoverDownset(FiniteFrame frame, std::vector<Element> generators);

  const FiniteFrame& frame() const { return frame_; }
  const std::vector<Element>& generators() const { return gens_; }

  Element join() const;
  bool covers() const { return join() == frame_.top(); }
  bool contains(const Element& u) const;
  /// Generated by its positive members.  With classical positivity the only
  /// downset that is not strong is {0}.
  bool is_strong() const;
  /// Inclusion of downsets: every generator lies below a generator of `other`.
  bool refines(const CoverDownset& other) const;

  /// "{a, b+c}" using the frame's element names.
  std::string format() const;

  friend bool operator==(const CoverDownset& u, const CoverDownset& v) {
    return u.frame_.id() == v.frame_.id() && u.gens_ == v.gens_;
  }

 private:
  FiniteFrame frame_;
  std::vector<Element> gens_;
};

/// st(a, U) = ⋁{u ∈ U | a ≬ u}.
Element star(const Element& a, const CoverDownset& u);
/// U★ = ↓{st(u, U) | u ∈ U}.
CoverDownset star_set(const CoverDownset& u);
/// ↓{u ∈ U | u > 0}.
CoverDownset strengthen(const CoverDownset& u);
/// U ∩ V = ↓{u ∧ v}.
CoverDownset intersect(const CoverDownset& u, const CoverDownset& v);
/// ↓h[V] for a frame map h whose source owns V.
CoverDownset pullback(const JoinMap& h, const CoverDownset& v);

/// One violated axiom.  `member` indexes the offending base member.
struct AxiomFailure {
  std::string axiom;
  std::size_t member = 0;
  std::string detail;
};

struct Validation {
  std::vector<AxiomFailure> failures;
  bool ok() const { return failures.empty(); }
  std::string describe() const;
};

class InvalidUniformity : public Error {
 public:
  explicit InvalidUniformity(Validation v);
  const Validation& validation() const { return v_; }

 private:
  Validation v_;
};

/// A validated base of covering downsets, deduplicated in the order given.
class CoverUniformity {
 public:
  /// Axioms: inhabited, every member covers, the base is directed under
  /// intersection, and each member U has a strong base member V with V★ ⊆ U.
  static Validation check(const FiniteFrame& frame, const std::vector<CoverDownset>& base);

  /// Throws InvalidUniformity when `check` fails.
  CoverUniformity(FiniteFrame frame, std::vector<CoverDownset> base);

  /// {↓{1}}.
  static CoverUniformity chaotic(const FiniteFrame& frame);
  /// The single cover by all principal downsets; valid exactly when the
  /// frame is Boolean.
  static CoverUniformity finest(const FiniteFrame& frame);

  const FiniteFrame& frame() const { return frame_; }
  const std::vector<CoverDownset>& base() const { return base_; }

  /// Filter membership: `c` contains some base member.
  bool contains(const CoverDownset& c) const;

 private:
  FiniteFrame frame_;
  std::vector<CoverDownset> base_;
};

/// Both filters contain each other's base.
bool same_filter(const CoverUniformity& a, const CoverUniformity& b);

/// Builds the square O(X × X) used to hold relations on X.
std::shared_ptr<const ProductFrame> make_square(const FiniteFrame& x);

/// Moves a relation between two squares of the same frame.
Element transport(const ProductFrame& to, const Element& e);

/// A validated base of entourages on the shared square of X.
class EntourageUniformity {
 public:
  /// Axioms: inhabited, every member reflexive, directed, E^o lies above a
  /// base member, and some base F has F ∘ F ≤ E.
  static Validation check(const ProductFrame& square, const std::vector<Element>& base);

  EntourageUniformity(std::shared_ptr<const ProductFrame> square, std::vector<Element> base);

  static EntourageUniformity chaotic(const FiniteFrame& x);

  const FiniteFrame& frame() const { return square_->left(); }
  const ProductFrame& square() const { return *square_; }
  const std::shared_ptr<const ProductFrame>& square_ptr() const { return square_; }
  const std::vector<Element>& base() const { return base_; }

  /// Filter membership; `e` may come from any square of the same frame.
  bool contains(const Element& e) const;

 private:
  std::shared_ptr<const ProductFrame> square_;
  std::vector<Element> base_;
};

bool same_filter(const EntourageUniformity& a, const EntourageUniformity& b);

/// The entourage ⋁{u ⊕ u | u ∈ U} of a cover.
Element cover_to_entourage(const ProductFrame& square, const CoverDownset& u);
/// The cover ↓{u > 0 | u ⊕ u ≤ E} of an entourage; generators are the maximal cliques of E.
CoverDownset entourage_to_cover(const ProductFrame& square, const Element& e);

EntourageUniformity covers_to_entourages(const CoverUniformity& u,
                                         std::shared_ptr<const ProductFrame> square = nullptr);
CoverUniformity entourages_to_covers(const EntourageUniformity& e);

/// For each base member and each irreducible p, the spread of ↓p: its star
/// for covers, its relational image for entourages.  Both are join-preserving
/// in the argument, so a ◁ b is decided irreducible by irreducible.
class BelowTable {
 public:
  explicit BelowTable(const CoverUniformity& u);
  explicit BelowTable(const EntourageUniformity& e);

  bool below(const Element& a, const Element& b) const { return witness(a, b).has_value(); }
  /// Index of a base member witnessing a ◁ b.
  std::optional<std::size_t> witness(const Element& a, const Element& b) const;
  /// r(b) = ⋁{a | a ◁ b}.  Relies on the base being directed.
  Element interior(const Element& b) const;

 private:
  FiniteFrame frame_;
  std::vector<std::vector<Element>> spread_;
};

/// A frame with a covering uniformity and, when the square fits, the
/// corresponding entourage uniformity.
class PreUniformLocale {
 public:
  explicit PreUniformLocale(CoverUniformity covers);
  explicit PreUniformLocale(EntourageUniformity entourages);
  /// Throws InvalidUniformity unless the two forms are mutual images.
  PreUniformLocale(CoverUniformity covers, EntourageUniformity entourages);

  const FiniteFrame& frame() const { return covers_.frame(); }
  const CoverUniformity& covers() const { return covers_; }
  const std::optional<EntourageUniformity>& entourages() const { return entourages_; }

  bool uniformly_below(const Element& a, const Element& b) const { return covers_table_.below(a, b); }
  /// The same relation computed from the entourage form, if present.
  std::optional<bool> uniformly_below_via_entourages(const Element& a, const Element& b) const;
  /// r(b) = ⋁{a | a ◁ b}.
  Element interior(const Element& b) const { return covers_table_.interior(b); }

  /// b = r(b) for every element b (exhaustive).
  bool admissible() const;

 private:
  CoverUniformity covers_;
  std::optional<EntourageUniformity> entourages_;
  BelowTable covers_table_;
  std::optional<BelowTable> entourage_table_;
};

bool same_filter(const PreUniformLocale& a, const PreUniformLocale& b);

inline bool is_admissible(const PreUniformLocale& x) { return x.admissible(); }

/// Verdicts of the two uniform-morphism tests for h = f*: O Y → O X.
struct MorphismVerdict {
  bool cover = false;
  std::optional<bool> entourage;
  /// First target base member whose pullback is missing from the source filter.
  std::string certificate;
  bool ok() const { return cover && entourage.value_or(cover) == cover; }
  bool consistent() const { return !entourage || *entourage == cover; }
};

/// `h` runs from the target's frame to the source's frame.
MorphismVerdict check_uniform_morphism(const FrameHom& h, const PreUniformLocale& source,
                                       const PreUniformLocale& target);
inline bool is_uniform_morphism(const FrameHom& h, const PreUniformLocale& source,
                                const PreUniformLocale& target) {
  return check_uniform_morphism(h, source, target).cover;
}

/// The coarsest structure on `frame` making every h_i: O X_i → frame uniform.
/// An empty family gives the chaotic structure.
PreUniformLocale initial_uniformity(const FiniteFrame& frame,
                                    const std::vector<std::pair<FrameHom, PreUniformLocale>>& family);

/// Initial structure along both projections of `xy`.
PreUniformLocale product_structure(const ProductFrame& xy, const PreUniformLocale& x,
                                   const PreUniformLocale& y);

/// h surjective and the source structure equal to the initial one along h.
bool is_uniform_embedding(const FrameHom& h, const PreUniformLocale& source, const PreUniformLocale& target);

/// a ≺ b: a* ∨ b = 1.
bool rather_below(const FiniteFrame& frame, const Element& a, const Element& b);

struct StrongRegularityResult {
  std::optional<PreUniformLocale> structure;
  Validation problems;
  /// b = ⋁{a | a ◁ b} for the supplied relation.
  bool strongly_regular = false;
};

/// Subbasic covers ↓{a*, b} for each supplied pair a ◁ b, closed under
/// intersection and strengthened.  The relation must interpolate and lie
/// inside ≺; violations are reported, not thrown.
StrongRegularityResult strong_regularity_uniformity(
    const FiniteFrame& frame, const std::vector<std::pair<Element, Element>>& relation);

/// Closes a list of covers under pairwise intersection (to a fixpoint).
std::vector<CoverDownset> close_under_intersection(std::vector<CoverDownset> covers);

}  // namespace uniloc
