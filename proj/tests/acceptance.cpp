// One PASS/FAIL line per acceptance criterion.  Exit status is the number of
// failing criteria, so ctest sees any failure.

#include <functional>
#include <map>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "support/corpus.hpp"
#include "support/free_lattice.hpp"
#include "support/metric_fixtures.hpp"
#include "support/numeric_checks.hpp"
#include "uniloc/completion.hpp"
#include "uniloc/group.hpp"
#include "uniloc/metric.hpp"

namespace uniloc {
namespace {

// Collects the first few failures and a count of everything checked.
struct Tally {
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    ++checked;
    if (ok) return;
    ++failed;
    if (failures.size() < 5) failures.push_back(what);
  }
};

struct Outcome {
  bool ok;
  std::string summary;
};

Outcome finish(const Tally& t, const std::string& counts) {
  std::string s = counts + ", " + std::to_string(t.checked) + " checks";
  if (t.failed) {
    s += ", " + std::to_string(t.failed) + " failed:";
    for (const auto& f : t.failures) s += " [" + f + "]";
  }
  return {t.failed == 0, s};
}

std::string label(const PreUniformLocale& x, std::size_t i) {
  return x.frame().name() + "#" + std::to_string(i);
}

Outcome conversion_round_trip() {
  Tally t;
  std::size_t structures = 0;
  for (const auto& x : testing::uniformity_corpus(101, 60, 4)) {
    if (x.frame().irreducible_count() > 4) continue;
    const std::string n = label(x, structures++);
    const CoverUniformity& u = x.covers();
    const EntourageUniformity e = covers_to_entourages(u);
    t.expect(same_filter(u, entourages_to_covers(e)), n + ": covers round trip");
    t.expect(same_filter(e, covers_to_entourages(entourages_to_covers(e), e.square_ptr())),
             n + ": entourages round trip");
  }
  t.expect(structures >= 50, "fewer than 50 structures");
  return finish(t, std::to_string(structures) + " structures");
}

Outcome uniformly_below_laws() {
  Tally t;
  std::size_t structures = 0;
  for (const auto& x : testing::uniformity_corpus(102, 60, 4)) {
    const std::string n = label(x, structures++);
    const auto es = x.frame().elements();
    const std::size_t m = es.size();
    std::vector<std::vector<char>> below(m, std::vector<char>(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) below[i][j] = x.uniformly_below(es[i], es[j]);
    std::map<Element, std::size_t> at;
    for (std::size_t i = 0; i < m; ++i) at.emplace(es[i], i);

    bool coincide = static_cast<bool>(x.entourages());
    bool inside_leq = true, absorbs = true, sublattice = true, interpolates = true;
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        if (x.entourages() && *x.uniformly_below_via_entourages(es[a], es[b]) != static_cast<bool>(below[a][b]))
          coincide = false;
        if (!below[a][b]) continue;
        inside_leq = inside_leq && leq(es[a], es[b]);
        for (std::size_t a2 = 0; a2 < m; ++a2) {
          if (!leq(es[a2], es[a])) continue;
          for (std::size_t b2 = 0; b2 < m; ++b2)
            if (leq(es[b], es[b2]) && !below[a2][b2]) absorbs = false;
        }
        for (std::size_t c = 0; c < m; ++c) {
          for (std::size_t d = 0; d < m; ++d) {
            if (!below[c][d]) continue;
            if (!below[at.at(es[a] | es[c])][at.at(es[b] | es[d])]) sublattice = false;
            if (!below[at.at(es[a] & es[c])][at.at(es[b] & es[d])]) sublattice = false;
          }
        }
        bool found = false;
        for (std::size_t c = 0; c < m && !found; ++c) found = below[a][c] && below[c][b];
        interpolates = interpolates && found;
      }
    }
    t.expect(coincide, n + ": cover and entourage forms disagree");
    t.expect(inside_leq, n + ": ◁ not inside ≤");
    t.expect(absorbs, n + ": ≤∘◁∘≤ not inside ◁");
    t.expect(sublattice, n + ": ◁ not a sublattice");
    t.expect(below[0][0] && below[m - 1][m - 1], n + ": 0 ◁ 0 or 1 ◁ 1 missing");
    t.expect(interpolates, n + ": ◁ does not interpolate");
  }
  return finish(t, std::to_string(structures) + " structures");
}

Outcome reflection_correctness() {
  Tally t;
  std::size_t structures = 0, factored = 0;
  for (const auto& x : testing::uniformity_corpus(103, 60, 4)) {
    const std::string n = label(x, structures++);
    const auto es = x.frame().elements();
    bool laws = conucleus(x, x.frame().top()) == x.frame().top();
    for (const auto& b : es) {
      const Element rb = conucleus(x, b);
      laws = laws && leq(rb, b) && conucleus(x, rb) == rb;
      for (const auto& c : es) {
        if (leq(b, c)) laws = laws && leq(rb, conucleus(x, c));
        laws = laws && conucleus(x, b & c) == (rb & conucleus(x, c));
      }
    }
    t.expect(laws, n + ": conucleus laws");
    Reflection r(x);
    t.expect(r.reflected().admissible(), n + ": reflection not admissible");
    t.expect(is_uniform_morphism(r.inclusion(), x, r.reflected()), n + ": unit not uniform");
    Reflection twice(r.reflected());
    t.expect(twice.inclusion().is_isomorphism(), n + ": reflection not idempotent");
  }
  // Unique factorisation of uniform maps into admissible targets.
  const auto targets = testing::uniformity_corpus(104, 30, 3);
  for (const auto& x : testing::uniformity_corpus(105, 30, 3)) {
    Reflection r(x);
    for (const auto& y : targets) {
      if (!y.admissible()) continue;
      const auto candidates = all_frame_homs(y.frame(), r.fixed());
      for (const auto& f : all_frame_homs(y.frame(), x.frame())) {
        if (!is_uniform_morphism(f, x, y)) continue;
        const FrameHom flat = factor_through_unit(r, f, y);
        std::size_t through = 0;
        for (const auto& g : candidates) through += compose(r.inclusion(), g) == f ? 1 : 0;
        t.expect(compose(r.inclusion(), flat) == f && through == 1 && is_uniform_morphism(flat, r.reflected(), y),
                 x.frame().name() + " -> " + y.frame().name() + ": factorisation");
        ++factored;
      }
    }
  }
  t.expect(factored >= 20, "fewer than 20 uniform maps factored");
  return finish(t, std::to_string(structures) + " structures, " + std::to_string(factored) + " maps factored");
}

Outcome completion_suite() {
  Tally t;
  const auto corpus = testing::uniformity_corpus(106, 60, 3);
  std::size_t structures = 0, embeddings = 0, pairs = 0;
  for (const auto& x : corpus) {
    const std::string n = label(x, structures++);
    const CompletionResult c = completion(x);
    t.expect(c.unit_strongly_dense, n + ": unit not strongly dense");
    t.expect(c.evaluation_embedding, n + ": evaluation not a uniform embedding");
    t.expect(c.unit_uniform, n + ": unit not uniform");
    t.expect(c.completed_admissible, n + ": completion not admissible");
    t.expect(completion_is_idempotent(c), n + ": completion not idempotent");
    const ReflectCauchyResult rc = reflect_cauchy(x);
    t.expect(rc.ok(), n + ": reflection of the Cauchy locale differs from the regular one");
    if (rc.ok()) {
      bool retract = true;
      for (const auto& e : rc.regular->frame().elements()) retract = retract && (*rc.quotient)((*rc.interior)(e)) == e;
      t.expect(retract, n + ": quotient after r is not the identity");
    }
  }
  for (const auto& x : corpus) {
    if (!x.admissible()) continue;
    for (const auto& y : corpus) {
      if (!y.admissible()) continue;
      for (const auto& j : all_frame_homs(y.frame(), x.frame())) {
        if (!is_strongly_dense(j) || !is_uniform_embedding(j, x, y)) continue;
        const DenseFactorisation f = factor_dense_embedding(j, x, y);
        t.expect(f.ok(), x.frame().name() + " -> " + y.frame().name() + ": dense factorisation");
        ++embeddings;
      }
    }
  }
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t k = i; k < corpus.size(); k += 5) {
      if (corpus[i].frame().irreducible_count() * corpus[k].frame().irreducible_count() > 4) continue;
      const ProductPreservation p = check_product_preservation(corpus[i], corpus[k]);
      t.expect(p.iso, corpus[i].frame().name() + " x " + corpus[k].frame().name() + ": " + p.detail);
      ++pairs;
    }
  }
  t.expect(embeddings >= 1, "no dense embeddings found");
  t.expect(pairs >= 5, "fewer than 5 product pairs");
  return finish(t, std::to_string(structures) + " structures, " + std::to_string(embeddings) +
                       " dense embeddings, " + std::to_string(pairs) + " product pairs");
}

Outcome presentation_oracle() {
  Tally t;
  std::vector<testing::FreeDistributiveLattice> fd;
  for (std::size_t g = 0; g <= 5; ++g) fd.emplace_back(g);
  std::size_t from_corpus = 0, random = 0;
  for (const auto& x : testing::uniformity_corpus(107, 60, 3)) {
    if (x.frame().elements().size() > 5) continue;
    for (bool regular : {false, true}) {
      const FramePresentation p = cauchy_presentation(x, regular);
      const auto c = testing::compare_with_oracle(fd[p.generator_count()], p);
      t.expect(c.ok(), x.frame().name() + (regular ? " regular" : " plain") + ": engine " +
                           std::to_string(c.engine_elements) + " vs oracle " + std::to_string(c.oracle_classes));
      ++from_corpus;
    }
  }
  std::mt19937_64 rng(108);
  for (std::size_t g = 0; g <= 5; ++g) {
    for (int i = 0; i < (g == 5 ? 8 : 30); ++i) {
      const FramePresentation p = testing::random_presentation(rng, g);
      const auto c = testing::compare_with_oracle(fd[g], p);
      t.expect(c.ok(), "random presentation on " + std::to_string(g) + " generators");
      ++random;
    }
  }
  return finish(t, std::to_string(from_corpus) + " corpus presentations, " + std::to_string(random) + " random");
}

Outcome group_uniformities() {
  Tally t;
  const std::vector<FiniteGroup> groups{FiniteGroup::cyclic(2), FiniteGroup::cyclic(4), FiniteGroup::symmetric3()};
  std::size_t neighbourhoods = 0;
  for (const auto& g : groups) {
    ProductFrame xx(g.frame(), g.frame());
    for (auto side : {GroupSide::left, GroupSide::right, GroupSide::two_sided}) {
      const EntourageUniformity u = group_uniformity(g, side);
      t.expect(EntourageUniformity::check(u.square(), u.base()).ok(), g.name() + ": base does not validate");
      t.expect(PreUniformLocale(u).admissible(), g.name() + ": not admissible");
    }
    for (std::uint64_t mask = 0; mask < (1ULL << g.order()); ++mask) {
      Bits nb, inv;
      for (std::size_t i = 0; i < g.order(); ++i)
        if ((mask >> i) & 1U) {
          nb.set(i);
          inv.set(g.inv(i));
        }
      if (!nb.test(g.identity())) continue;
      ++neighbourhoods;
      const Element l = group_entourage(g, xx, GroupSide::left, nb);
      const Element r = group_entourage(g, xx, GroupSide::right, nb);
      const Element tt = group_entourage(g, xx, GroupSide::two_sided, nb);
      t.expect(tt == (l & r), g.name() + ": T is not L ∧ R");
      t.expect(relation::is_reflexive(xx, tt), g.name() + ": T not reflexive");
      if (g.is_abelian()) {
        t.expect(l == group_entourage(g, xx, GroupSide::right, inv), g.name() + ": L_u differs from R_{u^-1}");
        if (nb == inv) t.expect(l == r, g.name() + ": L_u differs from R_u for symmetric u");
        t.expect(translation_invariant(g, xx, tt), g.name() + ": T_u not translation invariant");
      }
    }
    if (g.is_abelian())
      t.expect(same_filter(group_uniformity(g, GroupSide::left), group_uniformity(g, GroupSide::right)),
               g.name() + ": left and right filters differ");
  }
  // Every homomorphism in the fixture set is uniform for every side.
  const auto& z2 = groups[0];
  const auto& z4 = groups[1];
  const auto& s3 = groups[2];
  std::vector<std::size_t> sign(6);
  for (std::size_t x = 0; x < 6; ++x) sign[x] = s3.element_name(x).size() == 4 ? 1 : 0;
  struct Case {
    const FiniteGroup* g;
    const FiniteGroup* h;
    std::vector<std::size_t> phi;
  };
  const std::vector<Case> cases = {
      {&z4, &z2, {0, 1, 0, 1}}, {&z2, &z4, {0, 2}}, {&s3, &z2, sign},
      {&z2, &s3, {s3.find("e"), s3.find("(12)")}}, {&z4, &z4, {0, 3, 2, 1}}, {&s3, &s3, {0, 0, 0, 0, 0, 0}},
  };
  for (const auto& c : cases) {
    const FrameHom h = group_hom(*c.g, *c.h, c.phi);
    for (auto side : {GroupSide::left, GroupSide::right, GroupSide::two_sided}) {
      const auto v = check_uniform_morphism(h, PreUniformLocale(group_uniformity(*c.g, side)),
                                            PreUniformLocale(group_uniformity(*c.h, side)));
      t.expect(v.cover && v.consistent(), c.g->name() + " -> " + c.h->name() + ": homomorphism not uniform");
    }
  }
  return finish(t, std::to_string(neighbourhoods) + " neighbourhoods, " + std::to_string(cases.size()) +
                       " homomorphisms");
}

Outcome metric_uniformities() {
  Tally t;
  std::mt19937_64 rng(109);
  const int spaces = 12;
  for (int i = 0; i < spaces; ++i) {
    const auto m = testing::random_metric(rng, 2 + static_cast<std::size_t>(i) % 5);
    const std::string n = "space " + std::to_string(i);
    t.expect(!metric_violation(m).has_value(), n + ": not a metric");
    const auto x = metric_frame(m);
    const auto u = metric_uniformity(m, x);
    const auto& xx = u.square();
    for (const auto& q : canonical_thresholds(m)) {
      const Element half = metric_entourage(m, xx, q / 2);
      t.expect(leq(relation::compose(xx, half, half), metric_entourage(m, xx, q)), n + ": halves do not compose");
    }
  }
  const auto m = testing::line({0, 1, 2});
  const auto wide = testing::line({0, 2, 4});
  const auto mx = metric_frame(m);
  const auto wx = metric_frame(wide);
  const PreUniformLocale mu(metric_uniformity(m, mx));
  const PreUniformLocale wu(metric_uniformity(wide, wx));
  struct Fixture {
    const MetricSpace* src;
    const PreUniformLocale* su;
    const FiniteFrame* sf;
    const MetricSpace* dst;
    const PreUniformLocale* du;
    const FiniteFrame* df;
    std::vector<std::size_t> f;
  };
  const std::vector<Fixture> nonexpansive{
      {&m, &mu, &mx, &m, &mu, &mx, {0, 1, 2}},
      {&m, &mu, &mx, &m, &mu, &mx, {0, 1, 0}},
      {&m, &mu, &mx, &m, &mu, &mx, {2, 1, 0}},
      {&wide, &wu, &wx, &m, &mu, &mx, {0, 1, 2}},
  };
  for (const auto& fx : nonexpansive) {
    t.expect(is_nonexpansive(*fx.src, *fx.dst, fx.f), "fixture is not nonexpansive");
    const auto v = check_uniform_morphism(preimage_hom(*fx.sf, *fx.df, fx.f), *fx.su, *fx.du);
    t.expect(v.cover && v.consistent(), "nonexpansive map is not uniform");
    t.expect(!metric_pullback_failure(*fx.src, *fx.dst, fx.f).has_value(), "nonexpansive map fails pullback");
  }
  t.expect(!is_nonexpansive(m, wide, {0, 1, 2}), "stretch fixture is nonexpansive");
  t.expect(metric_pullback_failure(m, wide, {0, 1, 2}).has_value(), "stretch passes the entourage pullback test");
  return finish(t, std::to_string(spaces) + " spaces, " + std::to_string(nonexpansive.size() + 1) + " fixture maps");
}

Outcome to_outcome(const std::vector<std::string>& failures, const std::string& counts) {
  std::string s = counts;
  if (!failures.empty()) {
    s += ", " + std::to_string(failures.size()) + " failed:";
    for (std::size_t i = 0; i < failures.size() && i < 5; ++i) s += " [" + failures[i] + "]";
  }
  return {failures.empty(), s};
}

Outcome reals() {
  testing::NumRng rng(110);
  std::vector<std::string> all = testing::dedekind_grid_failures();
  for (auto& f : testing::presentation_relation_failures(rng, 1000)) all.push_back(f);
  for (auto& f : testing::real_arith_failures(rng, 1000)) all.push_back(f);
  return to_outcome(all, "Dedekind grid, 1000 relation instances, 1000 pairs x 3 precisions");
}

Outcome padics() {
  testing::NumRng rng(111);
  return to_outcome(testing::padic_failures(rng, 1000, {2, 3, 5}, 6), "1000 ball pairs per prime 2, 3, 5");
}

}  // namespace
}  // namespace uniloc

int main() {
  using namespace uniloc;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 conversion round trip", conversion_round_trip},
      {"2 uniformly-below coincidence and laws", uniformly_below_laws},
      {"3 reflection", reflection_correctness},
      {"4 completion", completion_suite},
      {"5 presentations against the oracle", presentation_oracle},
      {"6 group uniformities", group_uniformities},
      {"7 metric uniformities", metric_uniformities},
      {"8 reals", reals},
      {"9 p-adics", padics},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o{false, ""};
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.ok ? "PASS " : "FAIL ") << name << " (" << o.summary << ")" << std::endl;
    failed += o.ok ? 0 : 1;
  }
  return failed;
}
