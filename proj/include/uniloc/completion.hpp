#pragma once

// Cauchy-filter locales of finite pre-uniform locales and the completion.

#include <optional>
#include <string>
#include <vector>

#include "uniloc/presentation.hpp"
#include "uniloc/reflection.hpp"

namespace uniloc {

/// The locale classifying (regular) Cauchy filters of a structure, presented
/// with one generator [a] per element a of O X.
class CauchyLocale {
 public:
  /// Any pre-uniform input is accepted; with `regular` set the evaluation
  /// map only exists when the input is admissible.
  CauchyLocale(const PreUniformLocale& x, bool regular);

  const PreUniformLocale& base_structure() const { return source_; }
  bool regular() const { return regular_; }
  const PresentedFrame& presented() const { return presented_; }
  const FiniteFrame& frame() const { return presented_.frame(); }

  /// [a] as an element of the presented frame.
  Element bracket(const Element& a) const;
  /// The frame map [a] ↦ a, absent when some relation fails in O X.
  const std::optional<FrameHom>& evaluation() const { return evaluation_; }
  /// Covers ↓{[u] | u ∈ U} for each base cover U.
  const PreUniformLocale& structure() const { return structure_; }

  /// The evaluation map's right adjoint sends a to [a]; false without it.
  bool adjoint_matches_brackets() const;

 private:
  PreUniformLocale source_;
  bool regular_;
  PresentedFrame presented_;
  std::optional<FrameHom> evaluation_;
  PreUniformLocale structure_;
};

/// The relations of the Cauchy presentation.  Generator k is the k-th element
/// of x.frame().elements().
FramePresentation cauchy_presentation(const PreUniformLocale& x, bool regular);

/// Comparison of the reflection of the plain Cauchy locale with the regular one.
struct ReflectCauchyResult {
  std::optional<CauchyLocale> regular;
  std::optional<CauchyLocale> plain;
  std::optional<Reflection> reflection;  // of the plain locale with its structure
  std::optional<FrameHom> interior;      // O(regular) → O(plain), [a] ↦ ⋁_{b ◁ a} [b]
  std::optional<FrameHom> quotient;      // O(plain) → O(regular), [a] ↦ [a]
  std::optional<FrameHom> iso;           // O(regular) → fixed frame of the reflection
  bool adjoint = false;                  // interior ⊣ quotient
  bool image_is_fixed_frame = false;
  bool ok() const { return adjoint && image_is_fixed_frame && iso && iso->is_isomorphism(); }
};

/// Also meaningful for pre-uniform input, which is where it is not trivial.
ReflectCauchyResult reflect_cauchy(const PreUniformLocale& x);

struct CompletionResult {
  std::optional<Reflection> reflection;
  std::optional<CauchyLocale> cauchy;
  /// Frame map of X → C, equal to inclusion ∘ evaluation.
  std::optional<FrameHom> unit;
  std::optional<PreUniformLocale> completed;
  bool unit_strongly_dense = false;
  bool unit_uniform = false;
  bool evaluation_embedding = false;      // evaluation from the reflection into C is a uniform embedding
  bool completed_admissible = false;
  bool ok() const { return unit_strongly_dense && unit_uniform && evaluation_embedding && completed_admissible; }
};

CompletionResult completion(const PreUniformLocale& x);

/// The unit of the completion of the completion is an isomorphism.
bool completion_is_idempotent(const CompletionResult& c);

/// k: O 𝒞X → O Y with [a] ↦ j_*(a), for a strongly dense uniform embedding
/// X → Y of admissible structures whose frame map is j.  Throws naming the
/// failed precondition.  (A point sits densely in a chaotic chain, and there
/// k cannot be onto; admissibility of Y is what rules that out.)
struct DenseFactorisation {
  std::optional<CauchyLocale> cauchy;
  std::optional<FrameHom> k;
  bool reproduces_evaluation = false;  // j ∘ k = evaluation
  bool k_strongly_dense = false;
  bool k_embedding = false;
  bool base_matches = false;  // {↓j_*[U]} generates the filter of Y
  bool ok() const { return reproduces_evaluation && k_strongly_dense && k_embedding && base_matches; }
};
DenseFactorisation factor_dense_embedding(const FrameHom& j, const PreUniformLocale& x, const PreUniformLocale& y);

/// Lifting a locale map f: X → Y (frame map f: O Y → O X) to completions.
struct LiftResult {
  bool cover_criterion = false;
  std::optional<bool> entourage_criterion;
  std::string certificate;  // first failing cover or entourage
  std::optional<CompletionResult> source;
  std::optional<CompletionResult> target;
  std::optional<FrameHom> lift;  // O C_Y → O C_X
  bool square_commutes = false;
  /// For uniform f: the lift sends [c] to [f(c)].
  std::optional<bool> matches_functorial;
  bool exists() const { return lift.has_value(); }
  bool consistent() const { return !entourage_criterion || *entourage_criterion == cover_criterion; }
};
LiftResult lift_map(const FrameHom& f, const PreUniformLocale& x, const PreUniformLocale& y);
/// Same, reusing completions of x and y so lifts into one completion compose.
LiftResult lift_map(const FrameHom& f, const PreUniformLocale& x, const PreUniformLocale& y,
                    const CompletionResult& cx, const CompletionResult& cy);

struct ProductPreservation {
  std::optional<FrameHom> comparison;  // O(C_X ⊕ C_Y) → O C_{X×Y}
  bool iso = false;
  std::string detail;
};
ProductPreservation check_product_preservation(const PreUniformLocale& x, const PreUniformLocale& y);

}  // namespace uniloc
