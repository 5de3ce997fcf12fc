#ifndef REALTHETA_VERIFY_HPP
#define REALTHETA_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "realtheta/characteristics.hpp"
#include "realtheta/siegel.hpp"
#include "realtheta/theta.hpp"

namespace realtheta {

// Single-trial checks. Residuals are measured in units of the largest term of
// the series involved, so they are comparable across arguments of any size.

/// |Theta(z + tau lam + mu) - exp(-2 pi i lam^T z - pi i lam^T tau lam) Theta(z)|.
double quasi_periodicity_residual(const ComplexVector& z, const RiemannMatrix& tau, const IntVector& lam,
                                  const IntVector& mu, const EvalConfig& cfg = {});

/// |conj(Theta(z)) - Theta(conj(z))|; tau must be real.
double conjugation_residual(const ComplexVector& z, const RiemannMatrix& tau, const EvalConfig& cfg = {});

/// |Theta[0; A(G, beta)](a z, G tau) - Theta[0; beta](z, tau)|.
double transport_residual(const RealModularElement& gm, const RiemannMatrix& tau, const CharClass& beta,
                          const ComplexVector& z, const EvalConfig& cfg = {});

/// act_reduced permutes O and E, checked exactly.
bool set_invariance_holds(const RealModularElement& gm);

struct FamilyInvarianceCheck {
  /// The index map beta -> act_reduced(G, beta) is a bijection of O and of E.
  bool permutation_ok = true;
  /// Worst |value - transported value| / max(1, |value|) over O and E.
  double worst_residual = 0.0;
};

FamilyInvarianceCheck family_invariance(const RealModularElement& gm, const RiemannMatrix& tau,
                                        const EvalConfig& cfg = {});

/// |T(x + e_s) + T(x)| / max(1, |T(x)|) with e_s the unit vector at position
/// lambda + s_index; q[s_index] must be 1.
double aux_flip_residual(const RealVector& x, const RiemannMatrix& tau, const std::vector<std::uint8_t>& q,
                         int s_index, const EvalConfig& cfg = {});

struct PropertyResult {
  std::string name;
  bool passed = true;
  bool skipped = false;
  std::string note;
  int trials = 0;
  int failures = 0;
  double worst_residual = 0.0;
};

struct VerifyOptions {
  int g = 2;
  int lambda = 2;
  int trials = 50;
  std::uint64_t seed = 0;
  EvalConfig cfg;
  /// Number of elementary factors in each random group element.
  int modular_budget = 6;
  double residual_tol = 1e-9;
};

struct VerifyReport {
  RealType type;
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<PropertyResult> properties;

  bool all_passed() const;
};

/// Runs every property on an orthosymmetric type. Each property draws from its
/// own stream derived from the seed. Throws InadmissibleType or
/// DiasymmetricInput for unsuitable types, SamplingExhausted from the sampler.
VerifyReport run_verification(const VerifyOptions& options);

nlohmann::ordered_json to_json(const VerifyReport& report);

}  // namespace realtheta

#endif  // REALTHETA_VERIFY_HPP
