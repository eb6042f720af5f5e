#include <gtest/gtest.h>

#include <set>

#include "support/corpus.hpp"
#include "uniloc/completion.hpp"

namespace uniloc {
namespace {

std::vector<PreUniformLocale> small_corpus() { return testing::uniformity_corpus(34, 60, 3); }

PreUniformLocale discrete_structure(const FiniteFrame& x) { return PreUniformLocale(CoverUniformity::finest(x)); }
PreUniformLocale chaotic_structure(const FiniteFrame& x) { return PreUniformLocale(CoverUniformity::chaotic(x)); }

// Every filter on a finite frame is ↑m.  ↑m is a Cauchy point when m > 0 and
// m lies under a member of every base cover; it is regular when m ◁ m.
std::vector<Element> cauchy_points(const PreUniformLocale& x, bool regular) {
  std::vector<Element> out;
  for (const auto& m : x.frame().elements()) {
    if (!m.positive()) continue;
    bool ok = true;
    for (const auto& u : x.covers().base()) ok = ok && u.contains(m);
    if (ok && regular) ok = x.uniformly_below(m, m);
    if (ok) out.push_back(m);
  }
  return out;
}

// Opens of the point space: unions of the basic sets {m | m ≤ a}.
std::set<std::vector<bool>> point_topology(const std::vector<Element>& points, const FiniteFrame& x) {
  std::set<std::vector<bool>> opens;
  std::vector<std::vector<bool>> basic;
  for (const auto& a : x.elements()) {
    std::vector<bool> s;
    for (const auto& m : points) s.push_back(leq(m, a));
    basic.push_back(s);
  }
  opens.insert(std::vector<bool>(points.size(), false));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<bool>> current(opens.begin(), opens.end());
    for (const auto& o : current) {
      for (const auto& b : basic) {
        auto u = o;
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = u[i] || b[i];
        grew = opens.insert(u).second || grew;
      }
    }
  }
  return opens;
}

TEST(Cauchy, PresentationDumpIsStable) {
  FiniteFrame x = FiniteFrame::discrete(1);
  const std::string dump = cauchy_presentation(discrete_structure(x), true).dump();
  EXPECT_EQ(dump,
            "generator [0]\n"
            "generator [1]\n"
            "relation [1] = 1\n"
            "relation [0] & [1] = [0]\n"
            "relation [0] <= 0\n"
            "relation 1 <= [1]\n"
            "relation [0] <= [0]\n"
            "relation [1] <= [0] | [1]\n");
}

TEST(Cauchy, MatchesPointOracle) {
  int checked = 0;
  for (const auto& x : small_corpus()) {
    for (bool regular : {false, true}) {
      CauchyLocale c(x, regular);
      const auto points = cauchy_points(x, regular);
      const auto elems = x.frame().elements();
      EXPECT_EQ(c.frame().irreducible_count(), points.size()) << x.frame().name();
      EXPECT_EQ(c.frame().elements().size(), point_topology(points, x.frame()).size());
      for (const auto& a : elems) {
        for (const auto& b : elems) {
          bool contained = true;
          for (const auto& m : points) contained = contained && (!leq(m, a) || leq(m, b));
          EXPECT_EQ(leq(c.bracket(a), c.bracket(b)), contained);
        }
      }
      ++checked;
    }
  }
  EXPECT_GE(checked, 100);
}

TEST(Cauchy, Examples) {
  FiniteFrame one = FiniteFrame::discrete(1);
  for (const auto& x : {discrete_structure(one), chaotic_structure(one)}) {
    CauchyLocale c(x, true);
    EXPECT_EQ(c.frame().elements().size(), 2u);
    ASSERT_TRUE(c.evaluation());
    EXPECT_TRUE(c.evaluation()->is_isomorphism());
  }

  FiniteFrame b4 = FiniteFrame::discrete(2);
  CauchyLocale d(discrete_structure(b4), true);
  EXPECT_EQ(d.frame().elements().size(), 4u);
  EXPECT_TRUE(d.frame().is_boolean());
  ASSERT_TRUE(d.evaluation());
  EXPECT_TRUE(d.evaluation()->is_isomorphism());

  // Chaotic two points: every positive m gives a Cauchy point, but only
  // ↑1 is regular.
  PreUniformLocale ch = chaotic_structure(b4);
  CauchyLocale plain(ch, false);
  EXPECT_EQ(plain.frame().irreducible_count(), 3u);
  EXPECT_TRUE(plain.evaluation());
  CauchyLocale reg(ch, true);
  EXPECT_EQ(reg.frame().irreducible_count(), 1u);
  EXPECT_FALSE(reg.evaluation());  // a ≤ r(a) fails for a single point

  CompletionResult after = completion(ch);
  EXPECT_EQ(after.cauchy->frame().elements().size(), 2u);
}

TEST(Cauchy, GammaLaws) {
  for (const auto& x : small_corpus()) {
    for (bool regular : {false, true}) {
      CauchyLocale c(x, regular);
      if (regular && !x.admissible()) {
        EXPECT_FALSE(c.evaluation());
        continue;
      }
      ASSERT_TRUE(c.evaluation());
      const FrameHom& g = *c.evaluation();
      EXPECT_TRUE(c.adjoint_matches_brackets());
      EXPECT_TRUE(is_strongly_dense(g));
      EXPECT_TRUE(g.surjective());
      for (const auto& a : x.frame().elements()) {
        EXPECT_EQ(g(g.right_adjoint(a)), a);
        if (a.positive()) EXPECT_TRUE(g.right_adjoint(a).positive());
      }
      EXPECT_TRUE(is_uniform_embedding(g, x, c.structure()));
    }
  }
}

TEST(ReflectCauchy, Examples) {
  for (std::size_t n : {1u, 2u, 3u}) {
    FiniteFrame x = FiniteFrame::discrete(n);
    ReflectCauchyResult r = reflect_cauchy(discrete_structure(x));
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.regular->frame().elements().size(), std::size_t{1} << n);
    EXPECT_EQ(r.reflection->fixed().elements().size(), std::size_t{1} << n);
  }
}

TEST(ReflectCauchy, Corpus) {
  for (const auto& x : small_corpus()) {
    ReflectCauchyResult r = reflect_cauchy(x);
    EXPECT_TRUE(r.adjoint) << x.frame().name();
    EXPECT_TRUE(r.image_is_fixed_frame) << x.frame().name();
    ASSERT_TRUE(r.iso);
    EXPECT_TRUE(r.iso->is_isomorphism());
    // The quotient undoes the interior map.
    for (const auto& c : r.regular->frame().elements()) EXPECT_EQ((*r.quotient)(r.interior->operator()(c)), c);
  }
}

TEST(Completion, Examples) {
  FiniteFrame none;
  CompletionResult t = completion(chaotic_structure(none));
  EXPECT_TRUE(t.ok());
  EXPECT_TRUE(t.unit->is_isomorphism());

  FiniteFrame one = FiniteFrame::discrete(1);
  CompletionResult p = completion(chaotic_structure(one));
  EXPECT_TRUE(p.ok());
  EXPECT_TRUE(p.unit->is_isomorphism());

  for (std::size_t n : {2u, 3u}) {
    FiniteFrame x = FiniteFrame::discrete(n);
    CompletionResult d = completion(discrete_structure(x));
    EXPECT_TRUE(d.ok());
    EXPECT_TRUE(d.unit->is_isomorphism());
    CompletionResult c = completion(chaotic_structure(x));
    EXPECT_TRUE(c.ok());
    EXPECT_EQ(c.unit->source().elements().size(), 2u);
  }
}

TEST(Completion, Corpus) {
  int iso = 0;
  for (const auto& x : small_corpus()) {
    CompletionResult c = completion(x);
    EXPECT_TRUE(c.ok()) << x.frame().name();
    EXPECT_TRUE(completion_is_idempotent(c));
    // The completed base validated on construction; it is generated by the brackets of its covers.
    for (std::size_t i = 0; i < c.completed->covers().base().size(); ++i) {
      const auto& u = c.reflection->reflected().covers().base()[i];
      for (const auto& g : u.generators())
        EXPECT_TRUE(c.completed->covers().base()[i].contains(c.cauchy->evaluation()->right_adjoint(g)));
    }
    if (c.cauchy->evaluation()->is_isomorphism()) ++iso;
  }
  // Finite uniform locales come out complete.
  EXPECT_EQ(iso, static_cast<int>(small_corpus().size()));
}

TEST(FactorDense, IdentityAndGamma) {
  for (const auto& x : small_corpus()) {
    if (!x.admissible()) continue;
    DenseFactorisation id = factor_dense_embedding(FrameHom::identity(x.frame()), x, x);
    EXPECT_TRUE(id.ok());
    EXPECT_EQ(*id.k, *id.cauchy->evaluation());

    CauchyLocale c(x, true);
    DenseFactorisation g = factor_dense_embedding(*c.evaluation(), x, c.structure());
    EXPECT_TRUE(g.ok());
    EXPECT_TRUE(g.k->is_isomorphism());
  }
}

TEST(FactorDense, CorpusEmbeddings) {
  const auto corpus = small_corpus();
  int found = 0;
  for (const auto& x : corpus) {
    if (!x.admissible()) continue;
    for (const auto& y : corpus) {
      if (!y.admissible()) continue;
      for (const auto& j : all_frame_homs(y.frame(), x.frame())) {
        if (!is_strongly_dense(j) || !is_uniform_embedding(j, x, y)) continue;
        DenseFactorisation f = factor_dense_embedding(j, x, y);
        EXPECT_TRUE(f.ok());
        ++found;
      }
    }
  }
  EXPECT_GE(found, 10);
}

TEST(FactorDense, RejectsBadInput) {
  FiniteFrame x = FiniteFrame::discrete(2);
  PreUniformLocale d = discrete_structure(x);
  PreUniformLocale ch = chaotic_structure(x);
  EXPECT_THROW(factor_dense_embedding(FrameHom::identity(x), d, ch), Error);  // not an embedding
  EXPECT_THROW(factor_dense_embedding(FrameHom::identity(x), ch, ch), Error);  // not admissible
  FiniteFrame one = FiniteFrame::discrete(1);
  FrameHom first = preimage_hom(one, x, {0});
  EXPECT_THROW(factor_dense_embedding(first, discrete_structure(one), d), Error);  // not dense

  // A point is a dense uniform embedding into a chaotic chain, but the chain
  // is not admissible and the map [a] ↦ j_*(a) would not be onto.
  FiniteFrame chain = FiniteFrame::chain(3);
  std::vector<Element> to_top(chain.irreducible_count(), one.top());
  FrameHom dense(chain, one, to_top);
  PreUniformLocale point = discrete_structure(one);
  PreUniformLocale loose = chaotic_structure(chain);
  ASSERT_TRUE(is_strongly_dense(dense));
  ASSERT_TRUE(is_uniform_embedding(dense, point, loose));
  EXPECT_THROW(factor_dense_embedding(dense, point, loose), Error);
}

TEST(Lift, IdentityAndUniformMaps) {
  const auto corpus = small_corpus();
  int uniform = 0;
  for (std::size_t i = 0; i < corpus.size(); i += 2) {
    const auto& x = corpus[i];
    LiftResult id = lift_map(FrameHom::identity(x.frame()), x, x);
    ASSERT_TRUE(id.exists());
    EXPECT_TRUE(id.lift->is_isomorphism());
    EXPECT_TRUE(id.square_commutes);
    for (std::size_t k = 0; k < corpus.size(); k += 3) {
      const auto& y = corpus[k];
      if (x.frame().irreducible_count() * y.frame().irreducible_count() > 6) continue;
      for (const auto& f : all_frame_homs(y.frame(), x.frame())) {
        LiftResult l = lift_map(f, x, y);
        EXPECT_TRUE(l.consistent());
        const bool u = is_uniform_morphism(f, x, y);
        if (u) {
          ++uniform;
          ASSERT_TRUE(l.exists());
          EXPECT_TRUE(l.square_commutes);
          EXPECT_EQ(l.matches_functorial, std::optional<bool>(true));
        }
        // Finite reflections are Boolean and the cover by their atoms is
        // uniform, so a lift forces f itself to be uniform.
        EXPECT_EQ(l.exists(), u);
        if (!l.exists()) EXPECT_FALSE(l.certificate.empty());
      }
    }
  }
  EXPECT_GE(uniform, 20);
}

TEST(Lift, CriterionWithoutUniformity) {
  // The identity from chaotic two points to the discrete two points is not
  // uniform, and its lift fails: the discrete cover goes to {0}.
  FiniteFrame x = FiniteFrame::discrete(2);
  LiftResult l = lift_map(FrameHom::identity(x), chaotic_structure(x), discrete_structure(x));
  EXPECT_FALSE(l.exists());
  EXPECT_EQ(l.entourage_criterion, std::optional<bool>(false));
  EXPECT_NE(l.certificate.find("cover"), std::string::npos);

  // The other way round the map is uniform and lifts onto the point.
  LiftResult back = lift_map(FrameHom::identity(x), discrete_structure(x), chaotic_structure(x));
  ASSERT_TRUE(back.exists());
  EXPECT_EQ(back.entourage_criterion, std::optional<bool>(true));
  EXPECT_EQ(back.lift->source().elements().size(), 2u);
  EXPECT_TRUE(back.square_commutes);
}

TEST(Products, Examples) {
  FiniteFrame one = FiniteFrame::discrete(1);
  EXPECT_TRUE(check_product_preservation(discrete_structure(one), discrete_structure(one)).iso);
  FiniteFrame two = FiniteFrame::discrete(2);
  ProductPreservation d = check_product_preservation(discrete_structure(two), discrete_structure(two));
  EXPECT_TRUE(d.iso) << d.detail;
  EXPECT_EQ(d.comparison->source().elements().size(), 16u);
  ProductPreservation m = check_product_preservation(chaotic_structure(two), discrete_structure(two));
  EXPECT_TRUE(m.iso) << m.detail;
  EXPECT_EQ(m.comparison->source().elements().size(), 4u);
}

TEST(Products, CorpusPairs) {
  const auto corpus = small_corpus();
  int pairs = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t k = i; k < corpus.size(); k += 5) {
      if (corpus[i].frame().irreducible_count() * corpus[k].frame().irreducible_count() > 4) continue;
      ProductPreservation p = check_product_preservation(corpus[i], corpus[k]);
      EXPECT_TRUE(p.iso) << p.detail;
      ++pairs;
    }
  }
  EXPECT_GE(pairs, 5);
}

}  // namespace
}  // namespace uniloc
