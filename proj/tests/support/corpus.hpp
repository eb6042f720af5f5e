#pragma once

// Seeded generators for small frames and uniformities.  Everything here is
// deterministic so failures reproduce from the printed seed.

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "uniloc/frame.hpp"
#include "uniloc/uniformity.hpp"

namespace uniloc::testing {

using Rng = std::mt19937_64;

/// Random poset on n points: i < j is added with probability `density`
/// only for i < j, so the result is acyclic.
inline FiniteFrame random_frame(Rng& rng, std::size_t n, double density = 0.35) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  std::vector<std::pair<std::size_t, std::size_t>> le;
  std::bernoulli_distribution edge(density);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (edge(rng)) le.emplace_back(i, j);
  return FiniteFrame::from_poset("r" + std::to_string(n), names, le);
}

/// Every covering antichain of positive elements (a strong cover, listed
/// by its generators).
inline std::vector<CoverDownset> strong_covers(const FiniteFrame& x) {
  std::vector<Element> positive;
  for (const auto& e : x.elements())
    if (e.positive()) positive.push_back(e);
  std::vector<CoverDownset> out;
  if (positive.empty()) {
    out.emplace_back(x, std::vector<Element>{});
    return out;
  }
  const std::size_t m = positive.size();
  std::vector<Element> chosen;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == m) {
      if (chosen.empty()) return;
      Element j = x.join(chosen);
      if (j == x.top()) out.emplace_back(x, chosen);
      return;
    }
    self(self, k + 1);
    const bool comparable = std::any_of(chosen.begin(), chosen.end(), [&](const Element& c) {
      return leq(c, positive[k]) || leq(positive[k], c);
    });
    if (!comparable) {
      chosen.push_back(positive[k]);
      self(self, k + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// A random valid covering uniformity on x, or nullopt after `tries` misses.
/// Picks one to three strong covers, closes under intersection, strengthens.
inline std::optional<CoverUniformity> random_uniformity(Rng& rng, const FiniteFrame& x, int tries = 40) {
  const auto covers = strong_covers(x);
  std::uniform_int_distribution<std::size_t> pick(0, covers.size() - 1);
  std::uniform_int_distribution<int> count(1, 3);
  for (int t = 0; t < tries; ++t) {
    std::vector<CoverDownset> base;
    for (int i = count(rng); i > 0; --i) base.push_back(covers[pick(rng)]);
    base = close_under_intersection(std::move(base));
    for (auto& c : base) c = strengthen(c);
    if (CoverUniformity::check(x, base).ok()) return CoverUniformity(x, std::move(base));
  }
  return std::nullopt;
}

/// Frames used across suites: trivial, chains, Boolean, and a few non-Boolean shapes.
inline std::vector<FiniteFrame> named_frames() {
  std::vector<FiniteFrame> out;
  out.push_back(FiniteFrame());
  out.push_back(FiniteFrame::discrete(1));
  out.push_back(FiniteFrame::from_poset("b4", {"a", "b"}, {}));
  out.push_back(FiniteFrame::discrete(3));
  out.push_back(FiniteFrame::chain(2));
  out.push_back(FiniteFrame::from_poset("v", {"c", "a", "b"}, {{0, 1}, {0, 2}}));
  out.push_back(FiniteFrame::from_poset("split", {"a", "b", "c"}, {{1, 2}}));
  out.push_back(FiniteFrame::from_poset("lambda", {"a", "b", "t"}, {{0, 2}, {1, 2}}));
  return out;
}

/// At least `want` distinct-by-construction valid uniformities on frames with
/// at most `max_points` irreducibles.
inline std::vector<PreUniformLocale> uniformity_corpus(std::uint64_t seed, std::size_t want,
                                                       std::size_t max_points = 4) {
  Rng rng(seed);
  std::vector<PreUniformLocale> out;
  for (const auto& x : named_frames()) {
    if (x.irreducible_count() > max_points) continue;
    out.emplace_back(CoverUniformity::chaotic(x));
    if (x.is_boolean()) out.emplace_back(CoverUniformity::finest(x));
  }
  std::uniform_int_distribution<std::size_t> size(1, max_points);
  int guard = 0;
  while (out.size() < want && guard++ < 10000) {
    FiniteFrame x = random_frame(rng, size(rng));
    if (auto u = random_uniformity(rng, x)) out.emplace_back(std::move(*u));
  }
  return out;
}

}  // namespace uniloc::testing
