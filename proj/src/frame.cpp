#include "uniloc/frame.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <numeric>
#include <sstream>

namespace uniloc {

namespace {

std::uint64_t next_frame_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

std::string join_names(const std::vector<std::string>& names) {
  std::ostringstream os;
  for (std::size_t i = 0; i < names.size(); ++i) os << (i ? " -> " : "") << names[i];
  return os.str();
}

void require_same(const Element& a, const Element& b) {
  if (a.frame_id() != b.frame_id()) throw FrameMismatch();
}

}  // namespace

CycleError::CycleError(std::vector<std::string> cycle)
    : Error("order relation has a cycle: " + join_names(cycle)), cycle_(std::move(cycle)) {}

Element operator&(const Element& a, const Element& b) {
  require_same(a, b);
  return Element(a.frame_id_, a.bits_ & b.bits_);
}

Element operator|(const Element& a, const Element& b) {
  require_same(a, b);
  return Element(a.frame_id_, a.bits_ | b.bits_);
}

bool leq(const Element& a, const Element& b) {
  require_same(a, b);
  return a.bits().subset_of(b.bits());
}

bool overlaps(const Element& a, const Element& b) {
  require_same(a, b);
  return a.bits().intersects(b.bits());
}

struct FiniteFrame::Impl {
  std::uint64_t id = next_frame_id();
  std::string name;
  std::vector<std::string> names;
  std::vector<Bits> below;
  std::vector<std::size_t> linear;
};

FiniteFrame::FiniteFrame() : FiniteFrame(from_down_closures("empty", {}, {})) {}

FiniteFrame FiniteFrame::from_down_closures(std::string name, std::vector<std::string> irreducibles,
                                            std::vector<Bits> below) {
  if (irreducibles.size() > Bits::kCapacity) {
    throw Error("frame '" + name + "' has " + std::to_string(irreducibles.size()) +
                " irreducibles; at most " + std::to_string(Bits::kCapacity) + " are supported");
  }
  if (below.size() != irreducibles.size()) throw Error("down-closure table size mismatch");
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->names = std::move(irreducibles);
  impl->below = std::move(below);
  impl->linear.resize(impl->names.size());
  std::iota(impl->linear.begin(), impl->linear.end(), std::size_t{0});
  std::stable_sort(impl->linear.begin(), impl->linear.end(), [&](std::size_t i, std::size_t j) {
    return impl->below[i].count() < impl->below[j].count();
  });
  return FiniteFrame(std::move(impl));
}

FiniteFrame FiniteFrame::from_poset(std::string name, std::vector<std::string> irreducibles,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& le) {
  const std::size_t n = irreducibles.size();
  if (n > Bits::kCapacity) throw Error("too many irreducibles");
  std::vector<std::vector<std::size_t>> up(n);
  std::vector<Bits> below(n);
  for (std::size_t i = 0; i < n; ++i) below[i].set(i);
  for (auto [i, j] : le) {
    if (i >= n || j >= n) throw Error("order pair references an unknown irreducible");
    if (i != j) up[i].push_back(j);
    below[j].set(i);
  }
  // Warshall closure on the "below" sets.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j)
      if (below[j].test(k)) below[j] |= below[k];

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !below[i].test(j) || !below[j].test(i)) continue;
      // Recover an explicit cycle i -> ... -> i through the raw cover pairs.
      std::vector<std::size_t> parent(n, n);
      std::deque<std::size_t> queue{i};
      std::vector<bool> seen(n, false);
      seen[i] = true;
      bool found = false;
      while (!queue.empty() && !found) {
        std::size_t x = queue.front();
        queue.pop_front();
        for (std::size_t y : up[x]) {
          if (y == i) {
            parent[i] = x;
            found = true;
            break;
          }
          if (!seen[y]) {
            seen[y] = true;
            parent[y] = x;
            queue.push_back(y);
          }
        }
      }
      std::vector<std::string> cycle{irreducibles[i]};
      for (std::size_t x = parent[i]; x != i && x < n; x = parent[x]) cycle.push_back(irreducibles[x]);
      std::reverse(cycle.begin() + 1, cycle.end());
      cycle.push_back(irreducibles[i]);
      throw CycleError(std::move(cycle));
    }
  }
  return from_down_closures(std::move(name), std::move(irreducibles), std::move(below));
}

FiniteFrame FiniteFrame::discrete(std::size_t n, const std::string& prefix) {
  std::vector<std::string> names;
  std::vector<Bits> below;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(prefix + std::to_string(i));
    below.push_back(Bits::single(i));
  }
  return from_down_closures("discrete" + std::to_string(n), std::move(names), std::move(below));
}

FiniteFrame FiniteFrame::chain(std::size_t n, const std::string& prefix) {
  std::vector<std::string> names;
  std::vector<Bits> below;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(prefix + std::to_string(i));
    below.push_back(Bits::first_n(i + 1));
  }
  return from_down_closures("chain" + std::to_string(n + 1), std::move(names), std::move(below));
}

std::uint64_t FiniteFrame::id() const { return impl_->id; }
const std::string& FiniteFrame::name() const { return impl_->name; }
std::size_t FiniteFrame::irreducible_count() const { return impl_->names.size(); }
const std::string& FiniteFrame::irreducible_name(std::size_t i) const { return impl_->names.at(i); }

std::optional<std::size_t> FiniteFrame::find_irreducible(const std::string& name) const {
  auto it = std::find(impl_->names.begin(), impl_->names.end(), name);
  if (it == impl_->names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - impl_->names.begin());
}

const Bits& FiniteFrame::below(std::size_t i) const { return impl_->below.at(i); }
const std::vector<std::size_t>& FiniteFrame::linear_extension() const { return impl_->linear; }

Element FiniteFrame::bottom() const { return Element(id(), Bits{}); }
Element FiniteFrame::top() const { return Element(id(), Bits::first_n(irreducible_count())); }
Element FiniteFrame::principal(std::size_t i) const { return Element(id(), below(i)); }

Element FiniteFrame::element(const Bits& bits) const {
  Element e = down_closure(bits);
  if (e.bits() != bits) throw Error("set of irreducibles is not down-closed in frame '" + name() + "'");
  return e;
}

Element FiniteFrame::down_closure(const Bits& bits) const {
  Bits out;
  bits.for_each([&](std::size_t i) {
    if (i >= irreducible_count()) throw Error("irreducible index out of range");
    out |= below(i);
  });
  return Element(id(), out);
}

Element FiniteFrame::meet(std::span<const Element> xs) const {
  Element acc = top();
  for (const auto& x : xs) acc = acc & x;
  return acc;
}

Element FiniteFrame::join(std::span<const Element> xs) const {
  Element acc = bottom();
  for (const auto& x : xs) acc = acc | x;
  return acc;
}

Element FiniteFrame::pseudocomplement(const Element& a) const {
  if (!owns(a)) throw FrameMismatch();
  Bits out;
  for (std::size_t p = 0; p < irreducible_count(); ++p)
    if (!below(p).intersects(a.bits())) out.set(p);
  return Element(id(), out);
}

std::vector<std::size_t> FiniteFrame::maximal(const Element& a) const {
  if (!owns(a)) throw FrameMismatch();
  std::vector<std::size_t> out;
  a.bits().for_each([&](std::size_t p) {
    bool is_max = true;
    a.bits().for_each([&](std::size_t q) {
      if (q != p && below(q).test(p)) is_max = false;
    });
    if (is_max) out.push_back(p);
  });
  return out;
}

std::vector<Element> FiniteFrame::elements() const {
  const auto& order = linear_extension();
  const std::size_t n = order.size();
  std::vector<Element> out;
  Bits current;
  // Irreducibles are decided in linear-extension order, so an irreducible can
  // be included exactly when everything strictly below it already is.
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == n) {
      out.push_back(Element(id(), current));
      return;
    }
    const std::size_t p = order[k];
    self(self, k + 1);
    Bits strict = below(p);
    strict.reset(p);
    if (strict.subset_of(current)) {
      current.set(p);
      self(self, k + 1);
      current.reset(p);
    }
  };
  rec(rec, 0);
  return out;
}

std::string FiniteFrame::format(const Element& a) const {
  if (!owns(a)) throw FrameMismatch();
  if (a.is_bottom()) return "0";
  if (a == top()) return "1";
  std::string s;
  for (std::size_t p : maximal(a)) {
    if (!s.empty()) s += '+';
    s += irreducible_name(p);
  }
  return s;
}

bool FiniteFrame::is_boolean() const {
  for (std::size_t p = 0; p < irreducible_count(); ++p)
    if (below(p).count() != 1) return false;
  return true;
}

ProductFrame::ProductFrame(FiniteFrame left, FiniteFrame right)
    : left_(std::move(left)), right_(std::move(right)) {
  const std::size_t nl = left_.irreducible_count();
  const std::size_t nr = right_.irreducible_count();
  if (nl * nr > Bits::kCapacity) {
    throw Error("product of '" + left_.name() + "' and '" + right_.name() + "' exceeds " +
                std::to_string(Bits::kCapacity) + " irreducibles");
  }
  std::vector<std::string> names;
  std::vector<Bits> below;
  for (std::size_t p = 0; p < nl; ++p) {
    for (std::size_t q = 0; q < nr; ++q) {
      names.push_back(left_.irreducible_name(p) + "." + right_.irreducible_name(q));
      Bits b;
      left_.below(p).for_each([&](std::size_t p2) {
        right_.below(q).for_each([&](std::size_t q2) { b.set(p2 * nr + q2); });
      });
      below.push_back(b);
    }
  }
  frame_ = FiniteFrame::from_down_closures(left_.name() + "x" + right_.name(), std::move(names),
                                           std::move(below));
}

Element ProductFrame::inject(const Element& a, const Element& b) const {
  if (!left_.owns(a) || !right_.owns(b)) throw FrameMismatch();
  const std::size_t nr = right_.irreducible_count();
  Bits out;
  a.bits().for_each([&](std::size_t p) { b.bits().for_each([&](std::size_t q) { out.set(p * nr + q); }); });
  return frame_.element(out);
}

Element ProductFrame::swap(const Element& e) const {
  if (left_.id() != right_.id()) throw Error("coordinate swap needs equal factors");
  if (!frame_.owns(e)) throw FrameMismatch();
  Bits out;
  e.bits().for_each([&](std::size_t i) {
    auto [p, q] = split(i);
    out.set(pair_index(q, p));
  });
  return frame_.element(out);
}

Element ProductFrame::row(const Element& e, std::size_t p) const {
  if (!frame_.owns(e)) throw FrameMismatch();
  Bits out;
  for (std::size_t q = 0; q < right_.irreducible_count(); ++q)
    if (e.bits().test(pair_index(p, q))) out.set(q);
  return right_.element(out);
}

Element ProductFrame::column(const Element& e, std::size_t q) const {
  if (!frame_.owns(e)) throw FrameMismatch();
  Bits out;
  for (std::size_t p = 0; p < left_.irreducible_count(); ++p)
    if (e.bits().test(pair_index(p, q))) out.set(p);
  return left_.element(out);
}

namespace relation {

Element compose(const ProductFrame& xx, const Element& f, const Element& e) {
  const FiniteFrame& x = xx.left();
  if (x.id() != xx.right().id()) throw Error("relations need a square product frame");
  const std::size_t n = x.irreducible_count();
  // Columns of E and rows of F are downsets; a rectangle (col_q(E)) ⊕ (row_r(F))
  // is emitted whenever the middle irreducibles q and r have a common lower bound.
  std::vector<Element> cols, rows;
  cols.reserve(n);
  rows.reserve(n);
  for (std::size_t q = 0; q < n; ++q) cols.push_back(xx.column(e, q));
  for (std::size_t r = 0; r < n; ++r) rows.push_back(xx.row(f, r));
  Element out = xx.frame().bottom();
  for (std::size_t q = 0; q < n; ++q) {
    if (cols[q].is_bottom()) continue;
    for (std::size_t r = 0; r < n; ++r) {
      if (rows[r].is_bottom() || !x.below(q).intersects(x.below(r))) continue;
      out = out | xx.inject(cols[q], rows[r]);
    }
  }
  return out;
}

Element opposite(const ProductFrame& xx, const Element& e) { return xx.swap(e); }

Element diagonal(const ProductFrame& xx) {
  const FiniteFrame& x = xx.left();
  Element out = xx.frame().bottom();
  for (std::size_t p = 0; p < x.irreducible_count(); ++p)
    out = out | xx.inject(x.principal(p), x.principal(p));
  return out;
}

std::optional<std::size_t> missing_diagonal(const ProductFrame& xx, const Element& e) {
  if (!xx.frame().owns(e)) throw FrameMismatch();
  for (std::size_t p = 0; p < xx.left().irreducible_count(); ++p)
    if (!e.bits().test(xx.pair_index(p, p))) return p;
  return std::nullopt;
}

Element image(const ProductFrame& xx, const Element& e, const Element& a) {
  if (!xx.left().owns(a)) throw FrameMismatch();
  Element out = xx.right().bottom();
  a.bits().for_each([&](std::size_t y) { out = out | xx.row(e, y); });
  return out;
}

}  // namespace relation

}  // namespace uniloc
