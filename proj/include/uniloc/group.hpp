#pragma once

// Finite discrete groups and their left, right and two-sided uniformities.

#include <string>
#include <vector>

#include "uniloc/uniformity.hpp"

namespace uniloc {

class FiniteGroup {
 public:
  /// `table[x][y]` is the index of x·y.  Throws unless the table is a group.
  FiniteGroup(std::string name, std::vector<std::string> elements, std::vector<std::vector<std::size_t>> table);

  static FiniteGroup cyclic(std::size_t n);
  /// Permutations of {1,2,3}; element names are in cycle notation, "e" first.
  static FiniteGroup symmetric3();

  const std::string& name() const { return name_; }
  std::size_t order() const { return names_.size(); }
  const std::string& element_name(std::size_t x) const { return names_.at(x); }
  std::size_t find(const std::string& element) const;
  std::size_t mul(std::size_t x, std::size_t y) const { return table_[x][y]; }
  std::size_t inv(std::size_t x) const { return inverse_[x]; }
  std::size_t identity() const { return identity_; }
  bool is_abelian() const;

  /// The discrete frame on the elements.
  const FiniteFrame& frame() const { return frame_; }

 private:
  std::string name_;
  std::vector<std::string> names_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_;
  std::size_t identity_ = 0;
  FiniteFrame frame_;
};

enum class GroupSide { left, right, two_sided };

/// L_u = {x⁻¹y ∈ u}, R_u = {xy⁻¹ ∈ u}, T_u = L_u ∧ R_u.  Throws unless u ∋ e.
Element group_entourage(const FiniteGroup& g, const ProductFrame& square, GroupSide side, const Bits& u);

/// All identity neighbourhoods u (every subset containing e) as a base.
EntourageUniformity group_uniformity(const FiniteGroup& g, GroupSide side);

/// (x, y) ∈ E implies (xz, yz) ∈ E and (zx, zy) ∈ E for every z.
bool translation_invariant(const FiniteGroup& g, const ProductFrame& square, const Element& e);

/// Throws unless phi is a homomorphism g → h; returns its frame map O h → O g.
FrameHom group_hom(const FiniteGroup& g, const FiniteGroup& h, const std::vector<std::size_t>& phi);

}  // namespace uniloc
