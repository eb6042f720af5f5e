#include "uniloc/completion.hpp"

#include <algorithm>

namespace uniloc {

namespace {

std::size_t element_index(const std::vector<Element>& elems, const Element& a) {
  auto it = std::find(elems.begin(), elems.end(), a);
  if (it == elems.end()) throw FrameMismatch();
  return static_cast<std::size_t>(it - elems.begin());
}

std::optional<FrameHom> try_induced(const PresentedFrame& p, const FiniteFrame& target,
                                    const std::vector<Element>& images) {
  try {
    return induced_hom(p, target, images);
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

FramePresentation cauchy_presentation(const PreUniformLocale& x, bool regular) {
  const FiniteFrame& fx = x.frame();
  const auto elems = fx.elements();
  FramePresentation p;
  for (const auto& a : elems) p.add_generator("[" + fx.format(a) + "]");
  auto idx = [&](const Element& a) { return element_index(elems, a); };

  p.add_equation({idx(fx.top())}, {});
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j) p.add_equation({i, j}, {idx(elems[i] & elems[j])});
  // Positivity is decidable here, so the guard only bites at 0.
  p.add_cover({idx(fx.bottom())}, {});
  for (const auto& u : x.covers().base()) {
    std::vector<FormalMeet> rhs;
    for (const auto& g : u.generators()) rhs.push_back({idx(g)});
    p.add_cover({}, std::move(rhs));
  }
  if (regular) {
    for (std::size_t i = 0; i < elems.size(); ++i) {
      std::vector<FormalMeet> rhs;
      for (std::size_t j = 0; j < elems.size(); ++j)
        if (x.uniformly_below(elems[j], elems[i])) rhs.push_back({j});
      p.add_cover({i}, std::move(rhs));
    }
  }
  return p;
}

namespace {

PreUniformLocale bracket_structure(const PreUniformLocale& x, const PresentedFrame& p) {
  const auto elems = x.frame().elements();
  std::vector<CoverDownset> base;
  for (const auto& u : x.covers().base()) {
    std::vector<Element> gens;
    for (const auto& g : u.generators()) gens.push_back(p.generator(element_index(elems, g)));
    base.push_back(strengthen(CoverDownset(p.frame(), std::move(gens))));
  }
  return PreUniformLocale(CoverUniformity(p.frame(), std::move(base)));
}

}  // namespace

CauchyLocale::CauchyLocale(const PreUniformLocale& x, bool regular)
    : source_(x),
      regular_(regular),
      presented_(cauchy_presentation(x, regular)),
      evaluation_(try_induced(presented_, x.frame(), x.frame().elements())),
      structure_(bracket_structure(x, presented_)) {}

Element CauchyLocale::bracket(const Element& a) const {
  return presented_.generator(element_index(source_.frame().elements(), a));
}

bool CauchyLocale::adjoint_matches_brackets() const {
  if (!evaluation_) return false;
  for (const auto& a : source_.frame().elements())
    if (evaluation_->right_adjoint(a) != bracket(a)) return false;
  return true;
}

ReflectCauchyResult reflect_cauchy(const PreUniformLocale& x) {
  ReflectCauchyResult out;
  out.regular.emplace(x, true);
  out.plain.emplace(x, false);
  const CauchyLocale& reg = *out.regular;
  const CauchyLocale& plain = *out.plain;
  out.reflection.emplace(plain.structure());
  const Reflection& refl = *out.reflection;

  const auto elems = x.frame().elements();
  std::vector<Element> r_images, quotient_images;
  for (const auto& a : elems) {
    Element j = plain.frame().bottom();
    for (const auto& b : elems)
      if (x.uniformly_below(b, a)) j = j | plain.bracket(b);
    r_images.push_back(j);
    quotient_images.push_back(reg.bracket(a));
  }
  out.interior = induced_hom(reg.presented(), plain.frame(), r_images);
  out.quotient = induced_hom(plain.presented(), reg.frame(), quotient_images);
  const FrameHom& r = *out.interior;
  const FrameHom& quotient = *out.quotient;

  out.adjoint = true;
  for (const auto& d : plain.frame().elements())
    if (r.right_adjoint(d) != quotient(d)) out.adjoint = false;

  std::vector<Element> image, fixed;
  for (const auto& c : reg.frame().elements()) image.push_back(r(c));
  for (const auto& d : plain.frame().elements())
    if (refl.is_fixed(d)) fixed.push_back(d);
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  std::sort(fixed.begin(), fixed.end());
  out.image_is_fixed_frame = image == fixed;

  if (out.image_is_fixed_frame) {
    std::vector<Element> iso;
    for (std::size_t p = 0; p < reg.frame().irreducible_count(); ++p)
      iso.push_back(refl.to_fixed(r.image_of_irreducible(p)));
    out.iso = FrameHom(reg.frame(), refl.fixed(), std::move(iso));
  }
  return out;
}

CompletionResult completion(const PreUniformLocale& x) {
  CompletionResult out;
  out.reflection.emplace(x);
  const Reflection& refl = *out.reflection;
  out.cauchy.emplace(refl.reflected(), true);
  const CauchyLocale& c = *out.cauchy;
  if (!c.evaluation()) throw Error("internal: reflected structure does not present the evaluation map");
  out.unit = compose(refl.inclusion(), *c.evaluation());
  out.completed = c.structure();
  out.unit_strongly_dense = is_strongly_dense(*out.unit);
  out.unit_uniform = is_uniform_morphism(*out.unit, x, *out.completed);
  out.evaluation_embedding = is_strongly_dense(*c.evaluation()) && c.adjoint_matches_brackets() &&
                        is_uniform_embedding(*c.evaluation(), refl.reflected(), *out.completed);
  out.completed_admissible = out.completed->admissible();
  return out;
}

bool completion_is_idempotent(const CompletionResult& c) {
  if (!c.completed) return false;
  CompletionResult again = completion(*c.completed);
  return again.unit && again.unit->is_isomorphism();
}

DenseFactorisation factor_dense_embedding(const FrameHom& j, const PreUniformLocale& x, const PreUniformLocale& y) {
  if (j.source().id() != y.frame().id() || j.target().id() != x.frame().id()) throw FrameMismatch();
  if (!x.admissible()) throw Error("cannot factor: source is not admissible");
  if (!y.admissible()) throw Error("cannot factor: target is not admissible");
  if (!is_strongly_dense(j)) throw Error("cannot factor: map is not strongly dense");
  if (!is_uniform_embedding(j, x, y)) throw Error("cannot factor: map is not a uniform embedding");

  DenseFactorisation out;
  out.cauchy.emplace(x, true);
  const CauchyLocale& c = *out.cauchy;
  std::vector<Element> images;
  for (const auto& a : x.frame().elements()) images.push_back(j.right_adjoint(a));
  // Throws if j_* is not a regular Cauchy filter, which would contradict the hypotheses.
  out.k = induced_hom(c.presented(), y.frame(), images);
  const FrameHom& k = *out.k;
  out.reproduces_evaluation = c.evaluation() && compose(j, k) == *c.evaluation();
  out.k_strongly_dense = is_strongly_dense(k);
  out.k_embedding = is_uniform_embedding(k, y, c.structure());

  std::vector<CoverDownset> pushed;
  for (const auto& u : x.covers().base()) {
    std::vector<Element> gens;
    for (const auto& g : u.generators()) gens.push_back(j.right_adjoint(g));
    pushed.push_back(CoverDownset(y.frame(), std::move(gens)));
  }
  try {
    out.base_matches = same_filter(y.covers(), CoverUniformity(y.frame(), std::move(pushed)));
  } catch (const InvalidUniformity&) {
    out.base_matches = false;
  }
  return out;
}

LiftResult lift_map(const FrameHom& f, const PreUniformLocale& x, const PreUniformLocale& y) {
  return lift_map(f, x, y, completion(x), completion(y));
}

LiftResult lift_map(const FrameHom& f, const PreUniformLocale& x, const PreUniformLocale& y,
                    const CompletionResult& cx_result, const CompletionResult& cy_result) {
  if (f.source().id() != y.frame().id() || f.target().id() != x.frame().id()) throw FrameMismatch();
  if (cx_result.unit->target().id() != x.frame().id() || cy_result.unit->target().id() != y.frame().id())
    throw FrameMismatch();
  LiftResult out;
  out.source = cx_result;
  out.target = cy_result;
  const FrameHom& unit_x = *out.source->unit;
  const FrameHom& unit_y = *out.target->unit;
  const FiniteFrame& cx = unit_x.source();
  auto phi = [&](const Element& v) { return unit_x.right_adjoint(f(v)); };

  out.cover_criterion = true;
  for (std::size_t i = 0; i < y.covers().base().size() && out.cover_criterion; ++i) {
    const CoverDownset& v = y.covers().base()[i];
    Element j = cx.bottom();
    for (const auto& g : v.generators()) j = j | phi(g);
    if (j != cx.top()) {
      out.cover_criterion = false;
      out.certificate = "cover " + v.format() + " is not sent to a cover";
    }
  }

  if (y.entourages()) {
    const ProductFrame& ysq = y.entourages()->square();
    auto xsq = make_square(x.frame());
    ProductFrame csq(cx, cx);
    FrameHom ff = coproduct_hom(f, f, ysq, *xsq);
    bool ok = true;
    for (const auto& e : y.entourages()->base()) {
      Element pulled = product_hom_right_adjoint(unit_x, unit_x, csq, *xsq, ff(e));
      if (!relation::is_reflexive(csq, pulled)) {
        ok = false;
        if (out.certificate.empty()) out.certificate = "entourage " + ysq.frame().format(e) + " is not sent to a reflexive relation";
        break;
      }
    }
    out.entourage_criterion = ok;
  }
  if (!out.cover_criterion) return out;

  const Reflection& refl_y = *out.target->reflection;
  const CauchyLocale& cy = *out.target->cauchy;
  const PreUniformLocale& ry = refl_y.reflected();
  const auto fixed = ry.frame().elements();
  std::vector<Element> images;
  for (const auto& c : fixed) {
    Element j = cx.bottom();
    for (const auto& b : fixed)
      if (ry.uniformly_below(b, c)) j = j | phi(refl_y.inclusion()(b));
    images.push_back(j);
  }
  out.lift = induced_hom(cy.presented(), cx, images);
  out.square_commutes = compose(unit_x, *out.lift) == compose(f, unit_y);

  if (is_uniform_morphism(f, x, y)) {
    const Reflection& refl_x = *out.source->reflection;
    const CauchyLocale& ccx = *out.source->cauchy;
    bool same = true;
    for (std::size_t g = 0; g < fixed.size() && same; ++g) {
      Element expected = ccx.bracket(refl_x.to_fixed(f(refl_y.inclusion()(fixed[g]))));
      same = (*out.lift)(cy.presented().generator(g)) == expected;
    }
    out.matches_functorial = same;
  }
  return out;
}

ProductPreservation check_product_preservation(const PreUniformLocale& x, const PreUniformLocale& y) {
  ProductPreservation out;
  ProductFrame xy(x.frame(), y.frame());
  PreUniformLocale p = product_structure(xy, x, y);
  const CompletionResult cp = completion(p);
  LiftResult left = lift_map(projection_left(xy), p, x, cp, completion(x));
  LiftResult right = lift_map(projection_right(xy), p, y, cp, completion(y));
  if (!left.exists() || !right.exists()) {
    out.detail = "a projection does not lift: " + (left.exists() ? right.certificate : left.certificate);
    return out;
  }
  ProductFrame cxy(left.target->unit->source(), right.target->unit->source());
  out.comparison = copair(cxy, *left.lift, *right.lift);
  out.iso = out.comparison->is_isomorphism();
  if (!out.iso)
    out.detail = "comparison map is not an isomorphism (" + std::to_string(cxy.frame().elements().size()) +
                 " vs " + std::to_string(out.comparison->target().elements().size()) + " elements)";
  return out;
}

}  // namespace uniloc
