#include "uniloc/group.hpp"

#include <algorithm>
#include <array>

namespace uniloc {

FiniteGroup::FiniteGroup(std::string name, std::vector<std::string> elements,
                         std::vector<std::vector<std::size_t>> table)
    : name_(std::move(name)), names_(std::move(elements)), table_(std::move(table)) {
  const std::size_t n = names_.size();
  if (n == 0) throw Error("group '" + name_ + "' has no elements");
  if (table_.size() != n) throw Error("group table has the wrong number of rows");
  for (const auto& row : table_) {
    if (row.size() != n) throw Error("group table row has the wrong length");
    for (std::size_t v : row)
      if (v >= n) throw Error("group table entry out of range");
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (mul(mul(x, y), z) != mul(x, mul(y, z))) {
          throw Error("not associative at (" + names_[x] + "," + names_[y] + "," + names_[z] + ")");
        }
  bool found = false;
  for (std::size_t e = 0; e < n && !found; ++e) {
    bool unit = true;
    for (std::size_t x = 0; x < n && unit; ++x) unit = mul(e, x) == x && mul(x, e) == x;
    if (unit) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw Error("group table has no identity");
  inverse_.assign(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y)
      if (mul(x, y) == identity_ && mul(y, x) == identity_) inverse_[x] = y;
    if (inverse_[x] == n) throw Error("element " + names_[x] + " has no inverse");
  }
  frame_ = FiniteFrame::from_poset(name_, names_, {});
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t x = 0; x < n; ++x) {
    names.push_back(std::to_string(x));
    for (std::size_t y = 0; y < n; ++y) table[x][y] = (x + y) % n;
  }
  return FiniteGroup("Z" + std::to_string(n), std::move(names), std::move(table));
}

FiniteGroup FiniteGroup::symmetric3() {
  using Perm = std::array<int, 3>;
  const std::vector<std::pair<std::string, Perm>> perms = {
      {"e", {0, 1, 2}},     {"(12)", {1, 0, 2}},  {"(13)", {2, 1, 0}},
      {"(23)", {0, 2, 1}},  {"(123)", {1, 2, 0}}, {"(132)", {2, 0, 1}},
  };
  std::vector<std::string> names;
  for (const auto& [n, p] : perms) names.push_back(n);
  // x·y applies y first.
  std::vector<std::vector<std::size_t>> table(6, std::vector<std::size_t>(6));
  for (std::size_t x = 0; x < 6; ++x)
    for (std::size_t y = 0; y < 6; ++y) {
      Perm c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[x].second[perms[y].second[i]];
      for (std::size_t z = 0; z < 6; ++z)
        if (perms[z].second == c) table[x][y] = z;
    }
  return FiniteGroup("S3", std::move(names), std::move(table));
}

std::size_t FiniteGroup::find(const std::string& element) const {
  auto it = std::find(names_.begin(), names_.end(), element);
  if (it == names_.end()) throw Error("group " + name_ + " has no element '" + element + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t x = 0; x < order(); ++x)
    for (std::size_t y = 0; y < order(); ++y)
      if (mul(x, y) != mul(y, x)) return false;
  return true;
}

Element group_entourage(const FiniteGroup& g, const ProductFrame& square, GroupSide side, const Bits& u) {
  if (!u.test(g.identity())) throw Error("identity neighbourhood must contain " + g.element_name(g.identity()));
  Bits out;
  for (std::size_t x = 0; x < g.order(); ++x)
    for (std::size_t y = 0; y < g.order(); ++y) {
      const bool left = u.test(g.mul(g.inv(x), y));
      const bool right = u.test(g.mul(x, g.inv(y)));
      const bool in = side == GroupSide::left ? left : side == GroupSide::right ? right : left && right;
      if (in) out.set(square.pair_index(x, y));
    }
  return square.frame().element(out);
}

EntourageUniformity group_uniformity(const FiniteGroup& g, GroupSide side) {
  auto square = make_square(g.frame());
  std::vector<Element> base;
  const std::size_t n = g.order();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Bits u;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1U) u.set(i);
    if (!u.test(g.identity())) continue;
    base.push_back(group_entourage(g, *square, side, u));
  }
  return EntourageUniformity(std::move(square), std::move(base));
}

bool translation_invariant(const FiniteGroup& g, const ProductFrame& square, const Element& e) {
  for (std::size_t x = 0; x < g.order(); ++x)
    for (std::size_t y = 0; y < g.order(); ++y) {
      if (!e.bits().test(square.pair_index(x, y))) continue;
      for (std::size_t z = 0; z < g.order(); ++z) {
        if (!e.bits().test(square.pair_index(g.mul(x, z), g.mul(y, z)))) return false;
        if (!e.bits().test(square.pair_index(g.mul(z, x), g.mul(z, y)))) return false;
      }
    }
  return true;
}

FrameHom group_hom(const FiniteGroup& g, const FiniteGroup& h, const std::vector<std::size_t>& phi) {
  if (phi.size() != g.order()) throw Error("homomorphism needs one image per element");
  for (std::size_t x = 0; x < g.order(); ++x)
    for (std::size_t y = 0; y < g.order(); ++y)
      if (phi.at(g.mul(x, y)) != h.mul(phi[x], phi[y])) {
        throw Error("not a homomorphism at (" + g.element_name(x) + "," + g.element_name(y) + ")");
      }
  return preimage_hom(g.frame(), h.frame(), phi);
}

}  // namespace uniloc
