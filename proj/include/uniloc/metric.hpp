#pragma once

// Finite rational metric spaces and their entourage uniformities.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "uniloc/uniformity.hpp"

namespace uniloc {

/// A finite (pseudo)metric with exact rational distances.  Distinct points at
/// distance zero are allowed.
struct MetricSpace {
  std::vector<std::string> points;
  std::vector<std::vector<mpq_class>> distance;

  std::size_t size() const { return points.size(); }
  const mpq_class& d(std::size_t x, std::size_t y) const { return distance[x][y]; }
};

/// Describes the first violated axiom with the offending points, or nullopt.
std::optional<std::string> metric_violation(const MetricSpace& m);

/// The discrete frame on the points, in the order given.
FiniteFrame metric_frame(const MetricSpace& m);

/// Positive distances, their halves and quarters, ascending and deduplicated.
std::vector<mpq_class> canonical_thresholds(const MetricSpace& m);

/// E_q = ⋁{x ⊕ y | d(x, y) < q} on a square of the metric frame.
Element metric_entourage(const MetricSpace& m, const ProductFrame& square, const mpq_class& q);

/// Base {E_q | q canonical}, or {⊤} when there are no positive distances.
/// Throws Error naming the counterexample when the metric axioms fail.
EntourageUniformity metric_uniformity(const MetricSpace& m, const FiniteFrame& frame);

/// First threshold q of y with E_q^X ≰ (f × f)*(E_q^Y), or nullopt.  None
/// exists exactly when f is nonexpansive.
std::optional<mpq_class> metric_pullback_failure(const MetricSpace& x, const MetricSpace& y,
                                                 const std::vector<std::size_t>& f);

/// d_Y(f x, f x') ≤ d_X(x, x') for all x, x'.
bool is_nonexpansive(const MetricSpace& x, const MetricSpace& y, const std::vector<std::size_t>& f);

}  // namespace uniloc
