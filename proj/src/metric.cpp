#include "uniloc/metric.hpp"

#include <algorithm>

namespace uniloc {

std::optional<std::string> metric_violation(const MetricSpace& m) {
  const std::size_t n = m.size();
  if (m.distance.size() != n) return "distance table has " + std::to_string(m.distance.size()) + " rows for " +
                                     std::to_string(n) + " points";
  for (std::size_t x = 0; x < n; ++x)
    if (m.distance[x].size() != n) return "row " + m.points[x] + " has the wrong length";
  auto name = [&](std::size_t i) { return m.points[i]; };
  for (std::size_t x = 0; x < n; ++x) {
    if (m.d(x, x) != 0) return "d(" + name(x) + "," + name(x) + ") = " + m.d(x, x).get_str() + " is not zero";
    for (std::size_t y = 0; y < n; ++y) {
      if (m.d(x, y) < 0) return "d(" + name(x) + "," + name(y) + ") is negative";
      if (m.d(x, y) != m.d(y, x)) return "asymmetric at (" + name(x) + "," + name(y) + ")";
    }
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (m.d(x, z) > m.d(x, y) + m.d(y, z)) {
          return "triangle inequality fails for (" + name(x) + "," + name(y) + "," + name(z) + "): " +
                 m.d(x, z).get_str() + " > " + m.d(x, y).get_str() + " + " + m.d(y, z).get_str();
        }
  return std::nullopt;
}

FiniteFrame metric_frame(const MetricSpace& m) { return FiniteFrame::from_poset("metric", m.points, {}); }

std::vector<mpq_class> canonical_thresholds(const MetricSpace& m) {
  std::vector<mpq_class> out;
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = x + 1; y < m.size(); ++y)
      if (m.d(x, y) > 0) {
        out.push_back(m.d(x, y));
        out.push_back(m.d(x, y) / 2);
        out.push_back(m.d(x, y) / 4);
      }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Element metric_entourage(const MetricSpace& m, const ProductFrame& square, const mpq_class& q) {
  Bits out;
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = 0; y < m.size(); ++y)
      if (m.d(x, y) < q) out.set(square.pair_index(x, y));
  return square.frame().element(out);
}

EntourageUniformity metric_uniformity(const MetricSpace& m, const FiniteFrame& frame) {
  if (auto bad = metric_violation(m)) throw Error("not a metric: " + *bad);
  if (frame.irreducible_count() != m.size() || !frame.is_boolean()) throw Error("metric frame must be discrete on the points");
  auto square = make_square(frame);
  std::vector<Element> base;
  for (const auto& q : canonical_thresholds(m)) base.push_back(metric_entourage(m, *square, q));
  if (base.empty()) base.push_back(square->frame().top());
  return EntourageUniformity(std::move(square), std::move(base));
}

std::optional<mpq_class> metric_pullback_failure(const MetricSpace& x, const MetricSpace& y,
                                                 const std::vector<std::size_t>& f) {
  const FiniteFrame fx = metric_frame(x);
  const FiniteFrame fy = metric_frame(y);
  const FrameHom h = preimage_hom(fx, fy, f);
  const ProductFrame sx(fx, fx);
  const ProductFrame sy(fy, fy);
  const FrameHom hh = coproduct_hom(h, h, sy, sx);
  for (const auto& q : canonical_thresholds(y))
    if (!leq(metric_entourage(x, sx, q), hh(metric_entourage(y, sy, q)))) return q;
  return std::nullopt;
}

bool is_nonexpansive(const MetricSpace& x, const MetricSpace& y, const std::vector<std::size_t>& f) {
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = 0; b < x.size(); ++b)
      if (y.d(f[a], f[b]) > x.d(a, b)) return false;
  return true;
}

}  // namespace uniloc
