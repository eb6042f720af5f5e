#include <gtest/gtest.h>

#include "support/corpus.hpp"
#include "uniloc/reflection.hpp"

namespace uniloc {
namespace {

struct B4 {
  FiniteFrame x = FiniteFrame::from_poset("b4", {"a", "b"}, {});
  Element a = x.principal(0);
  Element b = x.principal(1);
  PreUniformLocale discrete{CoverUniformity(x, {CoverDownset(x, {a, b})})};
  PreUniformLocale chaotic{CoverUniformity::chaotic(x)};
};

TEST(Conucleus, Examples) {
  B4 s;
  for (const auto& e : s.x.elements()) EXPECT_EQ(conucleus(s.discrete, e), e);
  EXPECT_TRUE(conucleus(s.chaotic, s.a).is_bottom());
  EXPECT_TRUE(conucleus(s.chaotic, s.b).is_bottom());
  EXPECT_EQ(conucleus(s.chaotic, s.x.top()), s.x.top());
  EXPECT_TRUE(conucleus(s.chaotic, s.x.bottom()).is_bottom());
}

TEST(Conucleus, LawsOnCorpus) {
  for (const auto& x : testing::uniformity_corpus(51, 60)) {
    const auto es = x.frame().elements();
    EXPECT_EQ(conucleus(x, x.frame().top()), x.frame().top());
    for (const auto& b : es) {
      const Element rb = conucleus(x, b);
      EXPECT_TRUE(leq(rb, b));
      EXPECT_EQ(conucleus(x, rb), rb);
      for (const auto& c : es) {
        if (leq(b, c)) EXPECT_TRUE(leq(rb, conucleus(x, c)));
        EXPECT_EQ(conucleus(x, b & c), rb & conucleus(x, c));
      }
    }
  }
}

TEST(Reflection, AdmissibleInputIsFixed) {
  B4 s;
  Reflection r(s.discrete);
  EXPECT_TRUE(r.inclusion().is_isomorphism());
  EXPECT_EQ(r.fixed().elements().size(), 4U);
}

TEST(Reflection, ChaoticTwoPointsReflectToAPoint) {
  B4 s;
  Reflection r(s.chaotic);
  EXPECT_EQ(r.fixed().elements().size(), 2U);
  EXPECT_EQ(r.fixed().irreducible_count(), 1U);
  EXPECT_TRUE(r.reflected().admissible());
  EXPECT_TRUE(is_strongly_dense(r.inclusion()));
}

TEST(Reflection, PropertiesOnCorpus) {
  for (const auto& x : testing::uniformity_corpus(52, 60)) {
    Reflection r(x);
    const auto& i = r.inclusion();
    EXPECT_TRUE(i.injective());
    EXPECT_TRUE(r.reflected().admissible());
    EXPECT_TRUE(is_uniform_morphism(i, x, r.reflected()));
    // Fixed points of r are exactly the image of the inclusion.
    for (const auto& b : x.frame().elements()) {
      bool hit = false;
      for (const auto& c : r.fixed().elements()) hit = hit || i(c) == b;
      EXPECT_EQ(hit, r.is_fixed(b));
    }
    // ◁ on the fixed frame agrees with ◁ on O X.
    for (const auto& c : r.fixed().elements())
      for (const auto& d : r.fixed().elements())
        EXPECT_EQ(r.reflected().uniformly_below(c, d), x.uniformly_below(i(c), i(d)));
    // The base form generates the defining filter.
    for (const auto& u : r.reflected().covers().base()) EXPECT_TRUE(r.filter_contains(u));
    if (r.fixed().irreducible_count() <= 4) {
      for (const auto& u : testing::strong_covers(r.fixed()))
        EXPECT_EQ(r.filter_contains(u), r.reflected().covers().contains(u));
    }
    // Idempotence.
    Reflection twice(r.reflected());
    EXPECT_TRUE(twice.inclusion().is_isomorphism());
    EXPECT_EQ(twice.fixed().elements().size(), r.fixed().elements().size());
    EXPECT_TRUE(is_uniform_embedding(twice.inclusion(), r.reflected(), twice.reflected()));
  }
}

TEST(Reflection, UnitIsEpic) {
  for (const auto& x : testing::uniformity_corpus(53, 30, 3)) {
    Reflection r(x);
    const auto& i = r.inclusion();
    for (const auto& z : testing::uniformity_corpus(54, 12, 2)) {
      if (!z.admissible()) continue;
      const auto maps = all_frame_homs(z.frame(), r.fixed());
      for (const auto& g : maps)
        for (const auto& h : maps)
          if (compose(i, g) == compose(i, h)) EXPECT_TRUE(g == h);
    }
  }
}

TEST(Reflection, FactorisationThroughUnit) {
  int factored = 0;
  const auto targets = testing::uniformity_corpus(55, 30, 3);
  for (const auto& x : testing::uniformity_corpus(56, 30, 3)) {
    Reflection r(x);
    for (const auto& y : targets) {
      if (!y.admissible()) continue;
      for (const auto& f : all_frame_homs(y.frame(), x.frame())) {
        if (!is_uniform_morphism(f, x, y)) continue;
        for (const auto& b : y.frame().elements()) EXPECT_TRUE(r.is_fixed(f(b)));
        const FrameHom flat = factor_through_unit(r, f, y);
        EXPECT_TRUE(compose(r.inclusion(), flat) == f);
        EXPECT_TRUE(is_uniform_morphism(flat, r.reflected(), y));
        ++factored;
      }
    }
  }
  EXPECT_GT(factored, 20);
}

TEST(Reflection, FactorisationExamples) {
  B4 s;
  Reflection disc(s.discrete);
  const FrameHom flat = factor_through_unit(disc, disc.inclusion(), disc.reflected());
  EXPECT_TRUE(flat.is_isomorphism());
  // The unique map chaotic two points → one point.
  Reflection chaos(s.chaotic);
  auto one = FiniteFrame::discrete(1);
  PreUniformLocale point(CoverUniformity::chaotic(one));
  FrameHom to_point(one, s.x, {s.x.top()});
  const FrameHom f = factor_through_unit(chaos, to_point, point);
  EXPECT_TRUE(f.is_isomorphism());
  // A non-admissible target is refused.
  EXPECT_THROW(factor_through_unit(disc, FrameHom::identity(s.x), s.chaotic), Error);
  // A non-uniform map is refused.
  EXPECT_THROW(factor_through_unit(chaos, FrameHom::identity(s.x), s.discrete), Error);
}

}  // namespace
}  // namespace uniloc
