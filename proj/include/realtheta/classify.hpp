#ifndef REALTHETA_CLASSIFY_HPP
#define REALTHETA_CLASSIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "realtheta/characteristics.hpp"
#include "realtheta/intmat.hpp"
#include "realtheta/siegel.hpp"
#include "realtheta/theta.hpp"

namespace realtheta {

enum class FamilyKind { O, E };

struct FamilyEntry {
  CharClass beta;
  double value = 0.0;
  double abs_error = 0.0;
};

/// O(tau) or E(tau): one real theta constant per class, in lexicographic order.
struct IndexedFamily {
  FamilyKind kind = FamilyKind::O;
  RealType type;
  std::vector<FamilyEntry> entries;

  const FamilyEntry* find(const CharClass& beta) const;
};

/// Both require 2Re(tau) to be an orthosymmetric standard form.
IndexedFamily family_O(const RiemannMatrix& tau, const EvalConfig& cfg = {});
IndexedFamily family_E(const RiemannMatrix& tau, const EvalConfig& cfg = {});

/// Sum over B of Theta(beta/2, tau). Requires lambda > 0 and epsilon = 1.
RealThetaValue verify_positivity(const RiemannMatrix& tau, const EvalConfig& cfg = {});

struct SignTranslation {
  /// Signs in {-1, 0, 1}; 0 when the value cannot be told from zero.
  int sign_lhs = 0;
  int sign_rhs = 0;
  /// +1 when the signs should agree, -1 when they should be opposite.
  int expected_relation = 1;
  bool consistent = true;
  double lhs_scaled = 0.0;
  double lhs_scaled_error = 0.0;
  RealThetaValue rhs;
};

/// Compares the signs of Theta(-tau M beta + beta/2) and Theta(beta/2); they
/// agree iff beta^T M beta = 0 mod 4. Throws PreconditionViolated unless
/// M(M beta) = beta.
SignTranslation sign_translation_check(const RiemannMatrix& tau, const IntVector& beta, const EvalConfig& cfg = {});

enum class Decision { HasRealPoints, NoRealPoints, Indeterminate };

enum class Consistency {
  AllNegative,
  AllNonnegative,
  /// Signs of O(tau) disagree beyond their error bounds.
  NotAJacobianOrNumericalIssue,
  /// O is empty (lambda = 0).
  Empty,
  NotEvaluated,
};

std::string_view to_string(Decision d);
std::string_view to_string(Consistency c);

struct ClassificationReport {
  RealType input_type;
  bool critical = false;
  Decision decision = Decision::Indeterminate;
  /// Explanation of how the decision was reached.
  std::string reason;
  /// Non-critical types determine the topological type uniquely.
  std::vector<TopologicalType> topological_candidates;

  std::optional<CharClass> witness_beta;
  std::optional<double> witness_value;
  std::optional<double> witness_error;

  Consistency consistency = Consistency::NotEvaluated;
  std::optional<IndexedFamily> family;

  std::size_t theta_evaluations = 0;
  double tol = 0.0;
  double tol_classify = 0.0;
};

inline constexpr double kDefaultTolClassify = 1e-8;

/// The real-points criterion. Throws NonIntegralDoubledRealPart when 2Re(tau)
/// is not integral and NotStandardForm when a critical type is not given by
/// its standard form. evaluate_all forces the O family even when no theta
/// value is needed.
ClassificationReport classify(const RiemannMatrix& tau, const EvalConfig& cfg = {},
                              double tol_classify = kDefaultTolClassify, bool evaluate_all = false);

/// Reflection matrix only. Critical types throw NotStandardForm, since the
/// decision then needs a period matrix.
ClassificationReport classify(const SymIntMatrix& m, const EvalConfig& cfg = {},
                              double tol_classify = kDefaultTolClassify);

}  // namespace realtheta

#endif  // REALTHETA_CLASSIFY_HPP
