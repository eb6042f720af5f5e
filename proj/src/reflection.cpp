#include "uniloc/reflection.hpp"

#include <algorithm>

namespace uniloc {

namespace {

struct FixedFrame {
  FiniteFrame frame;
  std::vector<Element> irreducibles;  // as elements of O X
};

// The fixed points form a sublattice of O X; its join-irreducibles are the
// non-zero fixed points that are not the join of the fixed points below them.
FixedFrame fixed_frame(const PreUniformLocale& x) {
  const FiniteFrame& fx = x.frame();
  std::vector<Element> fixed;
  for (const auto& b : fx.elements())
    if (x.interior(b) == b) fixed.push_back(b);
  FixedFrame out;
  for (const auto& j : fixed) {
    if (j.is_bottom()) continue;
    Element below = fx.bottom();
    for (const auto& k : fixed)
      if (k != j && leq(k, j)) below = below | k;
    if (below != j) out.irreducibles.push_back(j);
  }
  std::vector<std::string> names;
  std::vector<Bits> down;
  for (std::size_t i = 0; i < out.irreducibles.size(); ++i) {
    names.push_back(fx.format(out.irreducibles[i]));
    Bits d;
    for (std::size_t k = 0; k < out.irreducibles.size(); ++k)
      if (leq(out.irreducibles[k], out.irreducibles[i])) d.set(k);
    down.push_back(d);
  }
  out.frame = FiniteFrame::from_down_closures("R(" + fx.name() + ")", std::move(names), std::move(down));
  return out;
}

FrameHom make_inclusion(const PreUniformLocale& x) {
  FixedFrame f = fixed_frame(x);
  return FrameHom(f.frame, x.frame(), std::move(f.irreducibles));
}

PreUniformLocale make_reflected(const PreUniformLocale& x, const FrameHom& inclusion) {
  const FiniteFrame& r = inclusion.source();
  auto to_fixed = [&](const Element& a) {
    Bits bits;
    for (std::size_t j = 0; j < r.irreducible_count(); ++j)
      if (leq(inclusion.image_of_irreducible(j), a)) bits.set(j);
    return r.element(bits);
  };
  std::vector<CoverDownset> base;
  for (const auto& u : x.covers().base()) {
    std::vector<Element> gens;
    for (const auto& g : u.generators()) gens.push_back(to_fixed(x.interior(g)));
    base.push_back(strengthen(CoverDownset(r, std::move(gens))));
  }
  return PreUniformLocale(CoverUniformity(r, std::move(base)));
}

}  // namespace

Reflection::Reflection(const PreUniformLocale& source)
    : source_(source), inclusion_(make_inclusion(source)), reflected_(make_reflected(source, inclusion_)) {}

Element Reflection::to_fixed(const Element& a) const {
  if (!is_fixed(a)) throw Error(source_.frame().format(a) + " is not fixed by the conucleus");
  // i is injective with i_* ∘ i = id.
  return inclusion_.right_adjoint(a);
}

bool Reflection::filter_contains(const CoverDownset& u) const {
  return source_.covers().contains(pullback(inclusion_, u));
}

FrameHom factor_through_unit(const Reflection& refl, const FrameHom& f, const PreUniformLocale& target) {
  if (f.target().id() != refl.source().frame().id() || f.source().id() != target.frame().id()) throw FrameMismatch();
  if (!target.admissible()) throw Error("cannot factor through the unit: target is not admissible");
  const MorphismVerdict v = check_uniform_morphism(f, refl.source(), target);
  if (!v.cover) throw Error("cannot factor through the unit: map is not uniform (" + v.certificate + ")");
  std::vector<Element> images;
  for (std::size_t q = 0; q < target.frame().irreducible_count(); ++q)
    images.push_back(refl.to_fixed(f.image_of_irreducible(q)));
  return FrameHom(target.frame(), refl.fixed(), std::move(images));
}

}  // namespace uniloc
