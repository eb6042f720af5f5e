#pragma once

// Frames presented by generators and relations.
//
// A formal meet is a set of generator indices (the empty set is top).  The
// engine closes formal meets under the single-term relations, which gives a
// meet-semilattice S, then takes downsets of S saturated under the remaining
// cover rules made meet-stable: if t ∧ x ∈ D for every t in the cover then
// s ∧ x ∈ D.  The saturated downsets form the presented frame.

#include <boost/dynamic_bitset.hpp>

#include <string>
#include <vector>

#include "uniloc/hom.hpp"

namespace uniloc {

using FormalMeet = std::vector<std::size_t>;

/// lhs ≤ ⋁ rhs.  An empty rhs forces lhs = 0.
struct CoverRule {
  FormalMeet lhs;
  std::vector<FormalMeet> rhs;
};

class FramePresentation {
 public:
  std::size_t add_generator(std::string name);
  /// ⋀ lhs = ⋀ rhs.
  void add_equation(FormalMeet lhs, FormalMeet rhs);
  /// ⋀ lhs ≤ ⋁_i ⋀ rhs[i].
  void add_cover(FormalMeet lhs, std::vector<FormalMeet> rhs);

  std::size_t generator_count() const { return names_.size(); }
  const std::string& generator_name(std::size_t g) const { return names_.at(g); }
  const std::vector<CoverRule>& rules() const { return rules_; }
  const std::vector<std::pair<FormalMeet, FormalMeet>>& equations() const { return equations_; }

  /// One line per generator then one per relation, in insertion order.
  std::string dump() const;
  std::string format_meet(const FormalMeet& m) const;

 private:
  void check(const FormalMeet& m) const;
  std::vector<std::string> names_;
  std::vector<CoverRule> rules_;
  std::vector<std::pair<FormalMeet, FormalMeet>> equations_;
  std::vector<std::size_t> order_;  // insertion order: even = equation, odd = rule
};

class PresentedFrame {
 public:
  explicit PresentedFrame(FramePresentation p);

  const FramePresentation& presentation() const { return presentation_; }
  const FiniteFrame& frame() const { return frame_; }
  /// Everything collapsed to the one-element frame.
  bool degenerate() const { return frame_.is_trivial(); }

  /// The frame element denoted by a formal meet.
  Element value(const FormalMeet& m) const;
  Element generator(std::size_t g) const { return value({g}); }

  /// A formal meet whose saturation is the irreducible j.
  FormalMeet representative(std::size_t j) const;

  /// Size of the closed meet-semilattice the engine worked over.
  std::size_t semilattice_size() const { return meets_.size(); }

 private:
  using Set = boost::dynamic_bitset<>;
  Set close(Set x) const;
  std::size_t index_of(const Set& closed) const;
  Set saturate(Set d) const;
  Set to_set(const FormalMeet& m) const;

  FramePresentation presentation_;
  std::vector<std::pair<Set, Set>> horn_;                       // lhs ⊆ X ⇒ rhs ⊆ X
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> covers_;  // indices into meets_
  std::vector<Set> meets_;                                      // closed generator sets
  std::vector<std::vector<std::size_t>> meet_table_;
  std::vector<Set> down_;                                       // ↓s within S, over S
  std::vector<Set> irreducible_ideals_;
  std::vector<std::size_t> representatives_;
  FiniteFrame frame_;
};

PresentedFrame present_frame(const FramePresentation& p);

/// The frame map sending generator g to images[g].  Throws Error naming the
/// first relation that fails in the target.
FrameHom induced_hom(const PresentedFrame& p, const FiniteFrame& target, const std::vector<Element>& images);

}  // namespace uniloc
