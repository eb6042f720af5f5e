#pragma once

// Finite frames represented by their posets of join-irreducibles.
//
// A finite frame is a finite distributive lattice; by Birkhoff duality it is
// the lattice of down-closed subsets of its poset of join-irreducibles.  Meet
// is intersection, join is union, bottom is the empty downset and top is the
// whole poset.
//
// Positivity is classical throughout: an element is positive iff it is not
// bottom, and the two-element frame plays the role of the truth values.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "uniloc/bits.hpp"

namespace uniloc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands taken from two different frames.
class FrameMismatch : public Error {
 public:
  FrameMismatch() : Error("operands belong to different frames") {}
};

/// The order relation handed to FiniteFrame::from_poset contains a cycle.
class CycleError : public Error {
 public:
  explicit CycleError(std::vector<std::string> cycle);
  const std::vector<std::string>& cycle() const { return cycle_; }

 private:
  std::vector<std::string> cycle_;
};

/// A down-closed set of irreducibles, tagged with the identity of its frame.
class Element {
 public:
  Element() = default;

  std::uint64_t frame_id() const { return frame_id_; }
  const Bits& bits() const { return bits_; }

  bool is_bottom() const { return bits_.none(); }
  /// Classical positivity: a > 0 iff a != 0.
  bool positive() const { return bits_.any(); }

  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;

  friend Element operator&(const Element& a, const Element& b);
  friend Element operator|(const Element& a, const Element& b);

 private:
  friend class FiniteFrame;
  Element(std::uint64_t frame_id, Bits bits) : frame_id_(frame_id), bits_(bits) {}

  std::uint64_t frame_id_ = 0;
  Bits bits_;
};

bool leq(const Element& a, const Element& b);
/// a ≬ b: the meet is positive.
bool overlaps(const Element& a, const Element& b);

struct ElementHash {
  std::size_t operator()(const Element& e) const { return e.bits().hash() ^ e.frame_id(); }
};

class FiniteFrame {
 public:
  /// The one-element frame of the empty poset.
  FiniteFrame();

  /// Builds the frame of downsets of the poset generated by `le` pairs
  /// (i, j) meaning irreducible i is below irreducible j.  The relation is
  /// reflexively and transitively closed; a cycle throws CycleError.
  static FiniteFrame from_poset(std::string name, std::vector<std::string> irreducibles,
                                const std::vector<std::pair<std::size_t, std::size_t>>& le);

  /// `below[i]` must already be the reflexive down-closure of i.
  static FiniteFrame from_down_closures(std::string name, std::vector<std::string> irreducibles,
                                        std::vector<Bits> below);

  /// n pairwise incomparable points: the Boolean frame with n atoms.
  static FiniteFrame discrete(std::size_t n, const std::string& prefix = "p");
  /// Chain of n irreducibles i0 < i1 < ...; the frame is an (n+1)-chain.
  static FiniteFrame chain(std::size_t n, const std::string& prefix = "c");

  std::uint64_t id() const;
  const std::string& name() const;
  std::size_t irreducible_count() const;
  const std::string& irreducible_name(std::size_t i) const;
  std::optional<std::size_t> find_irreducible(const std::string& name) const;

  /// Reflexive down-closure of irreducible i.
  const Bits& below(std::size_t i) const;
  bool irreducible_leq(std::size_t i, std::size_t j) const { return below(j).test(i); }
  /// Irreducibles listed so that every irreducible follows everything below it.
  const std::vector<std::size_t>& linear_extension() const;

  bool owns(const Element& a) const { return a.frame_id() == id(); }
  Element bottom() const;
  Element top() const;
  Element principal(std::size_t i) const;
  /// Throws Error if `bits` is not down-closed.
  Element element(const Bits& bits) const;
  Element down_closure(const Bits& bits) const;

  Element meet(std::span<const Element> xs) const;
  Element join(std::span<const Element> xs) const;
  Element pseudocomplement(const Element& a) const;

  /// Maximal irreducibles of a (the canonical join decomposition).
  std::vector<std::size_t> maximal(const Element& a) const;

  /// Every element, in a fixed deterministic order starting at bottom.
  std::vector<Element> elements() const;

  /// "0", "1" or the join of maximal irreducible names separated by '+'.
  std::string format(const Element& a) const;

  bool is_boolean() const;
  bool is_trivial() const { return irreducible_count() == 0; }

 private:
  struct Impl;
  explicit FiniteFrame(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Binary coproduct O X ⊕ O Y, realized on the product poset of irreducibles.
class ProductFrame {
 public:
  ProductFrame(FiniteFrame left, FiniteFrame right);

  const FiniteFrame& left() const { return left_; }
  const FiniteFrame& right() const { return right_; }
  const FiniteFrame& frame() const { return frame_; }

  std::size_t pair_index(std::size_t p, std::size_t q) const { return p * right_.irreducible_count() + q; }
  std::pair<std::size_t, std::size_t> split(std::size_t i) const {
    return {i / right_.irreducible_count(), i % right_.irreducible_count()};
  }

  /// a ⊕ b.
  Element inject(const Element& a, const Element& b) const;

  /// Coordinate swap; requires both factors to be the same frame.
  Element swap(const Element& e) const;

  /// Left/right slices: {q | (p, q) ∈ e} for fixed p, and {p | (p, q) ∈ e}.
  Element row(const Element& e, std::size_t p) const;
  Element column(const Element& e, std::size_t q) const;

 private:
  FiniteFrame left_;
  FiniteFrame right_;
  FiniteFrame frame_;
};

/// Open relations on X: elements of O(X × X).
namespace relation {

/// F ∘ E = {(x, z) | ∃y. (x, y) ∈ E ∧ (y, z) ∈ F}.
Element compose(const ProductFrame& xx, const Element& f, const Element& e);
/// E^o.
Element opposite(const ProductFrame& xx, const Element& e);
/// The least reflexive open relation, ⋁ ↓p ⊕ ↓p over irreducibles p.
Element diagonal(const ProductFrame& xx);
/// First irreducible p with (p, p) ∉ E, if any.
std::optional<std::size_t> missing_diagonal(const ProductFrame& xx, const Element& e);
inline bool is_reflexive(const ProductFrame& xx, const Element& e) { return !missing_diagonal(xx, e); }
/// {z | ∃y ∈ a. (y, z) ∈ E}.
Element image(const ProductFrame& xx, const Element& e, const Element& a);

}  // namespace relation

}  // namespace uniloc
