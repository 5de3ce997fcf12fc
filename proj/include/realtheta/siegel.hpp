#ifndef REALTHETA_SIEGEL_HPP
#define REALTHETA_SIEGEL_HPP

#include <cstdint>
#include <optional>
#include <random>

#include <Eigen/Dense>

#include "realtheta/intmat.hpp"

namespace realtheta {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// A g x g complex symmetric matrix tau = Re + i*Im.
///
/// Semi-real matrices keep their real part exactly, as the integral matrix
/// 2*Re(tau); general matrices carry a floating real part. Construction only
/// checks shapes, membership in the Siegel space is validate_riemann's job.
class RiemannMatrix {
 public:
  static RiemannMatrix semi_real(IntMatrix doubled_real, RealMatrix im);
  static RiemannMatrix general(RealMatrix re, RealMatrix im);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(im_.rows()); }
  const RealMatrix& im() const noexcept { return im_; }
  RealMatrix re() const;
  ComplexMatrix complex() const;

  bool is_semi_real() const noexcept { return doubled_real_.has_value(); }
  /// 2*Re(tau) when stored exactly.
  const std::optional<IntMatrix>& doubled_real_part() const noexcept { return doubled_real_; }

 private:
  RiemannMatrix() = default;

  std::optional<IntMatrix> doubled_real_;
  RealMatrix re_float_;
  RealMatrix im_;
};

inline constexpr double kDefaultPivotTol = 1e-12;

/// Symmetry within tol, and Im(tau) positive definite: every squared Cholesky
/// pivot must exceed tol times the largest diagonal entry.
bool validate_riemann(const RiemannMatrix& tau, double tol = kDefaultPivotTol);

/// tau valid and 2*Re(tau) exactly equal to standard_form(t).
bool validate_real_siegel(const RiemannMatrix& tau, const RealType& t);

/// Element [[a, b], [0, a^-T]] of the real modular group of a real type.
/// Only make_real_modular builds these, so the invariants always hold:
/// det(a) = +-1, a*M*a^T = M mod 2, b*a^T = (M - a*M*a^T)/2.
class RealModularElement {
 public:
  const RealType& type() const noexcept { return type_; }
  const IntMatrix& a() const noexcept { return a_; }
  const IntMatrix& b() const noexcept { return b_; }
  /// b*a^T = (M - a*M*a^T)/2, symmetric and integral.
  const IntMatrix& b_at() const noexcept { return b_at_; }
  const SymIntMatrix& reflection() const noexcept { return m_; }
  std::size_t dim() const noexcept { return a_.rows(); }

  /// The 2g x 2g symplectic block matrix.
  IntMatrix block_form() const;

 private:
  friend RealModularElement make_real_modular(IntMatrix a, const RealType& t);
  RealModularElement(RealType t, IntMatrix a, IntMatrix b, IntMatrix b_at, SymIntMatrix m)
      : type_(t), a_(std::move(a)), b_(std::move(b)), b_at_(std::move(b_at)), m_(std::move(m)) {}

  RealType type_;
  IntMatrix a_;
  IntMatrix b_;
  IntMatrix b_at_;
  SymIntMatrix m_;
};

/// Throws NotUnimodular or CongruenceViolated.
RealModularElement make_real_modular(IntMatrix a, const RealType& t);

/// outer * inner as block matrices, so that applying the result equals
/// applying inner first and outer second.
RealModularElement compose(const RealModularElement& outer, const RealModularElement& inner);

/// tau -> a*tau*a^T + b*a^T. The real part stays exactly M/2.
RiemannMatrix apply_modular(const RealModularElement& gm, const RiemannMatrix& tau);

/// M -> a*M*a^T + 2*b*a^T for a semi-real pair (det a = +-1, a*b^T = b*a^T).
SymIntMatrix transform_reflection(const IntMatrix& a, const IntMatrix& b, const SymIntMatrix& m);

struct SamplerStats {
  int accepted_factors = 0;
  int rejected_factors = 0;
};

inline constexpr int kSamplerRetryCap = 1000;

/// Product of size_budget random elementary unimodular factors (transvections
/// with multipliers in {-2,-1,1,2}, swaps, sign flips), each factor redrawn
/// until it preserves the standard form mod 2. Deterministic in seed.
RealModularElement random_real_modular(const RealType& t, std::uint64_t seed, int size_budget,
                                       SamplerStats* stats = nullptr);

/// Real Riemann matrix M/2 + i*(Q^T Q + delta*Id), Q uniform in [-1,1]^{g x g}.
RiemannMatrix random_real_riemann(const RealType& t, std::mt19937_64& rng, double delta = 0.1);

RealMatrix to_real_matrix(const IntMatrix& m);

}  // namespace realtheta

#endif  // REALTHETA_SIEGEL_HPP
