#include "uniloc/hom.hpp"

namespace uniloc {

JoinMap::JoinMap(FiniteFrame source, FiniteFrame target, std::vector<Element> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_.irreducible_count()) throw Error("join map needs one image per irreducible");
  for (const auto& img : images_)
    if (!target_.owns(img)) throw FrameMismatch();
  for (std::size_t p = 0; p < images_.size(); ++p) {
    source_.below(p).for_each([&](std::size_t q) {
      if (!leq(images_[q], images_[p])) {
        throw Error("map is not monotone: " + source_.irreducible_name(q) + " <= " +
                    source_.irreducible_name(p) + " but images are not ordered");
      }
    });
  }
}

JoinMap JoinMap::from_function(FiniteFrame source, FiniteFrame target,
                               const std::function<Element(const Element&)>& fn) {
  std::vector<Element> images;
  for (std::size_t p = 0; p < source.irreducible_count(); ++p) images.push_back(fn(source.principal(p)));
  return JoinMap(std::move(source), std::move(target), std::move(images));
}

Element JoinMap::operator()(const Element& a) const {
  if (!source_.owns(a)) throw FrameMismatch();
  Bits out;
  a.bits().for_each([&](std::size_t p) { out |= images_[p].bits(); });
  return target_.element(out);
}

Element JoinMap::right_adjoint(const Element& b) const {
  if (!target_.owns(b)) throw FrameMismatch();
  Bits out;
  for (std::size_t p = 0; p < images_.size(); ++p)
    if (images_[p].bits().subset_of(b.bits())) out.set(p);
  return source_.element(out);
}

bool JoinMap::preserves_meets() const {
  if ((*this)(source_.top()) != target_.top()) return false;
  const std::size_t n = images_.size();
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      Bits common = source_.below(p) & source_.below(q);
      if ((*this)(source_.element(common)) != (images_[p] & images_[q])) return false;
    }
  }
  return true;
}

std::optional<Element> JoinMap::left_adjoint(const Element& b) const {
  if (!target_.owns(b)) throw FrameMismatch();
  if (!preserves_meets()) return std::nullopt;
  // Each irreducible q of the target has a least preimage-witness m_q; it is
  // reached by peeling maximal irreducibles off top while q stays covered.
  Bits out;
  b.bits().for_each([&](std::size_t q) {
    Element a = source_.top();
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t p : source_.maximal(a)) {
        Bits smaller = a.bits();
        smaller.reset(p);
        Element cand = source_.element(smaller);
        if ((*this)(cand).bits().test(q)) {
          a = cand;
          changed = true;
          break;
        }
      }
    }
    out |= a.bits();
  });
  return source_.element(out);
}

bool operator==(const JoinMap& f, const JoinMap& g) {
  return f.source_.id() == g.source_.id() && f.target_.id() == g.target_.id() && f.images_ == g.images_;
}

FrameHom::FrameHom(FiniteFrame source, FiniteFrame target, std::vector<Element> images)
    : JoinMap(std::move(source), std::move(target), std::move(images)) {
  if ((*this)(source_.top()) != target_.top()) throw Error("frame map does not preserve top");
  const std::size_t n = images_.size();
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      Bits common = source_.below(p) & source_.below(q);
      if ((*this)(source_.element(common)) != (images_[p] & images_[q])) {
        throw Error("frame map does not preserve the meet of " + source_.irreducible_name(p) + " and " +
                    source_.irreducible_name(q));
      }
    }
  }
}

std::vector<Element> FrameHom::collect(const JoinMap& m) {
  std::vector<Element> out;
  for (std::size_t p = 0; p < m.source().irreducible_count(); ++p) out.push_back(m.image_of_irreducible(p));
  return out;
}

FrameHom FrameHom::identity(const FiniteFrame& x) {
  std::vector<Element> images;
  for (std::size_t p = 0; p < x.irreducible_count(); ++p) images.push_back(x.principal(p));
  return FrameHom(x, x, std::move(images));
}

FrameHom FrameHom::to_trivial(const FiniteFrame& x) {
  FiniteFrame one;
  return FrameHom(x, one, std::vector<Element>(x.irreducible_count(), one.bottom()));
}

bool FrameHom::injective() const {
  // A covering pair x ⋖ x ∪ {p} collapses iff h(↓p) ≤ h(largest x avoiding p),
  // and the largest such x is the complement of ↑p.
  for (std::size_t p = 0; p < images_.size(); ++p) {
    Bits avoid;
    for (std::size_t q = 0; q < images_.size(); ++q)
      if (!source_.below(q).test(p)) avoid.set(q);
    if (leq(images_[p], (*this)(source_.element(avoid)))) return false;
  }
  return true;
}

bool FrameHom::surjective() const {
  for (std::size_t q = 0; q < target_.irreducible_count(); ++q) {
    Element pq = target_.principal(q);
    if ((*this)(right_adjoint(pq)) != pq) return false;
  }
  return true;
}

FrameHom compose(const FrameHom& g, const FrameHom& f) {
  if (f.target().id() != g.source().id()) throw FrameMismatch();
  std::vector<Element> images;
  for (std::size_t p = 0; p < f.source().irreducible_count(); ++p)
    images.push_back(g(f.image_of_irreducible(p)));
  return FrameHom(f.source(), g.target(), std::move(images));
}

bool is_strongly_dense(const FrameHom& h) {
  for (std::size_t p = 0; p < h.source().irreducible_count(); ++p)
    if (!h.image_of_irreducible(p).positive()) return false;
  return true;
}

FrameHom projection_left(const ProductFrame& xy) {
  std::vector<Element> images;
  for (std::size_t p = 0; p < xy.left().irreducible_count(); ++p)
    images.push_back(xy.inject(xy.left().principal(p), xy.right().top()));
  return FrameHom(xy.left(), xy.frame(), std::move(images));
}

FrameHom projection_right(const ProductFrame& xy) {
  std::vector<Element> images;
  for (std::size_t q = 0; q < xy.right().irreducible_count(); ++q)
    images.push_back(xy.inject(xy.left().top(), xy.right().principal(q)));
  return FrameHom(xy.right(), xy.frame(), std::move(images));
}

FrameHom coproduct_hom(const FrameHom& f, const FrameHom& g, const ProductFrame& source,
                       const ProductFrame& target) {
  if (source.left().id() != f.source().id() || source.right().id() != g.source().id() ||
      target.left().id() != f.target().id() || target.right().id() != g.target().id()) {
    throw FrameMismatch();
  }
  std::vector<Element> images;
  for (std::size_t i = 0; i < source.frame().irreducible_count(); ++i) {
    auto [p, q] = source.split(i);
    images.push_back(target.inject(f.image_of_irreducible(p), g.image_of_irreducible(q)));
  }
  return FrameHom(source.frame(), target.frame(), std::move(images));
}

FrameHom copair(const ProductFrame& source, const FrameHom& f, const FrameHom& g) {
  if (f.source().id() != source.left().id() || g.source().id() != source.right().id() ||
      f.target().id() != g.target().id()) {
    throw FrameMismatch();
  }
  std::vector<Element> images;
  for (std::size_t i = 0; i < source.frame().irreducible_count(); ++i) {
    auto [p, q] = source.split(i);
    images.push_back(f.image_of_irreducible(p) & g.image_of_irreducible(q));
  }
  return FrameHom(source.frame(), f.target(), std::move(images));
}

Element product_hom_right_adjoint(const FrameHom& f, const FrameHom& g, const ProductFrame& source,
                                  const ProductFrame& target, const Element& c) {
  if (!target.frame().owns(c)) throw FrameMismatch();
  const FiniteFrame& b_left = target.left();
  const FiniteFrame& b_right = target.right();
  Element out = source.frame().bottom();
  // Rectangles with an empty side count too: they contribute f_*(0) ⊕ 1
  // and 1 ⊕ g_*(0), which are non-zero when f or g kills something.
  for (const Element& b : b_left.elements()) {
    // Largest b' with b ⊕ b' ≤ c.
    Bits widest;
    for (std::size_t q2 = 0; q2 < b_right.irreducible_count(); ++q2) {
      bool all = true;
      b.bits().for_each([&](std::size_t q1) { all = all && c.bits().test(target.pair_index(q1, q2)); });
      if (all) widest.set(q2);
    }
    out = out | source.inject(f.right_adjoint(b), g.right_adjoint(b_right.element(widest)));
  }
  return out;
}

FrameHom preimage_hom(const FiniteFrame& x, const FiniteFrame& y, const std::vector<std::size_t>& f) {
  if (f.size() != x.irreducible_count()) throw Error("point map needs one image per irreducible");
  for (std::size_t p = 0; p < f.size(); ++p) {
    if (f[p] >= y.irreducible_count()) throw Error("point map sends " + x.irreducible_name(p) + " out of range");
    x.below(p).for_each([&](std::size_t q) {
      if (!y.irreducible_leq(f[q], f[p])) throw Error("point map is not monotone at " + x.irreducible_name(p));
    });
  }
  std::vector<Element> images;
  for (std::size_t q = 0; q < y.irreducible_count(); ++q) {
    Bits pre;
    for (std::size_t p = 0; p < f.size(); ++p)
      if (y.irreducible_leq(f[p], q)) pre.set(p);
    images.push_back(x.element(pre));
  }
  return FrameHom(y, x, std::move(images));
}

std::vector<FrameHom> all_frame_homs(const FiniteFrame& source, const FiniteFrame& target) {
  const auto candidates = target.elements();
  const auto& order = source.linear_extension();
  const std::size_t n = order.size();
  std::vector<Element> images(n);
  std::vector<bool> assigned(n, false);
  std::vector<FrameHom> out;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == n) {
      Element top = target.bottom();
      for (const auto& img : images) top = top | img;
      if (top == target.top()) out.emplace_back(source, target, images);
      return;
    }
    const std::size_t p = order[k];
    for (const Element& c : candidates) {
      bool ok = true;
      for (std::size_t q = 0; q < n && ok; ++q) {
        if (!assigned[q]) continue;
        if (source.irreducible_leq(q, p) && !leq(images[q], c)) ok = false;
        if (!ok) break;
        // Meet condition against every assigned irreducible.
        Element common = target.bottom();
        (source.below(p) & source.below(q)).for_each([&](std::size_t r) {
          common = common | (r == p ? c : images[r]);
        });
        if (common != (c & images[q])) ok = false;
      }
      if (!ok) continue;
      images[p] = c;
      assigned[p] = true;
      self(self, k + 1);
      assigned[p] = false;
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace uniloc
