#ifndef REALTHETA_THETA_HPP
#define REALTHETA_THETA_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "realtheta/characteristics.hpp"
#include "realtheta/error.hpp"
#include "realtheta/siegel.hpp"

namespace realtheta {

struct EvalConfig {
  /// Target absolute error of the returned value.
  double tol = 1e-12;
  /// Cap on the truncation radius, measured in the metric of Im(tau).
  double max_radius = 20.0;
  /// Relative threshold for declaring a value real.
  double tol_real = 1e-9;
};

/// Result of a theta evaluation.
///
/// The series is summed after factoring out exp(log_scale), the largest
/// modulus a single term can have (log_scale = pi * y^T Im(tau)^-1 y with
/// y = Im(z)). `scaled` and `scaled_error` are in those units; `value` and
/// `abs_error` are the same numbers multiplied back and may overflow for
/// arguments far from the real subspace.
struct ThetaValue {
  std::complex<double> value;
  double abs_error = 0.0;
  std::size_t terms_used = 0;

  double log_scale = 0.0;
  std::complex<double> scaled;
  double scaled_error = 0.0;
  /// Truncation radius actually used, in the metric of Im(tau).
  double radius = 0.0;
  /// Certified bound on the discarded lattice tail, in scaled units.
  double tail_bound = 0.0;
};

struct RealThetaValue {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t terms_used = 0;
};

/// Raised when the truncation radius hits EvalConfig::max_radius before the
/// tail bound reaches the tolerance. Carries the best available value, whose
/// abs_error is honest (and larger than the requested tolerance).
class RadiusCapHit : public Error {
 public:
  RadiusCapHit(const std::string& message, ThetaValue best)
      : Error(ErrorKind::RadiusCapHit, message), best_(best) {}
  const ThetaValue& best() const noexcept { return best_; }

 private:
  ThetaValue best_;
};

struct TruncationRadius {
  /// Ellipsoid radius R: lattice points with ||L^T (n - c)|| <= R are summed,
  /// where Im(tau) = L L^T.
  double radius = 0.0;
  /// R / sqrt(lambda_min): Euclidean radius of a ball containing the ellipsoid.
  double lattice_radius = 0.0;
  /// Upper bound on the sum of exp(-pi ||L^T (n - c)||^2) over discarded points.
  double tail_bound = 0.0;
  bool capped = false;
};

/// Bound on sum_{n in Z^g + s, ||L^T(n - c)|| > R} exp(-pi ||L^T(n - c)||^2),
/// uniform in the shift s and the center c.
double gaussian_tail_bound(int g, double lambda_min, double radius);

/// Smallest R (doubling, then bisection) with gaussian_tail_bound < tol.
/// The bound does not depend on the ellipsoid center.
TruncationRadius truncation_radius(const RealMatrix& im_tau, double tol, double max_radius);

/// Theta function with characteristics,
///   sum_m exp(pi i (m + alpha/2)^T tau (m + alpha/2) + 2 pi i (z + beta/2)^T (m + alpha/2)).
/// Throws NotInSiegel for an invalid tau and RadiusCapHit as described above.
ThetaValue theta(const ComplexVector& z, const RiemannMatrix& tau, const ThetaCharacteristic& c,
                 const EvalConfig& cfg = {});
ThetaValue theta(const ComplexVector& z, const RiemannMatrix& tau, const EvalConfig& cfg = {});

/// z = z0 + tau*n + mu with theta(z) = exp(log_factor) * theta(z0).
struct ArgumentReduction {
  ComplexVector z0;
  IntVector n;
  IntVector mu;
  std::complex<double> log_factor;
};

ArgumentReduction reduce_argument(const ComplexVector& z, const RiemannMatrix& tau);

/// Theta[0; beta](0, tau) for tau in an orthosymmetric real Siegel space.
/// The imaginary part must vanish to within tol_real*(|Re| + tol) + abs_error,
/// otherwise RealityViolated; the discarded imaginary part is added to abs_error.
RealThetaValue real_theta_constant(const RiemannMatrix& tau, const CharClass& beta, const EvalConfig& cfg = {});

/// exp(pi i e_q^T x) * theta(x + tau e_q / 2, tau) with e_q = (0, q), for tau
/// in an orthosymmetric real Siegel space with lambda < g. Real-valued.
RealThetaValue aux_T(const RealVector& x, const RiemannMatrix& tau, const std::vector<std::uint8_t>& q,
                     const EvalConfig& cfg = {});

/// (cos(pi x), sin(pi x)), exact whenever 2x is an integer.
std::complex<double> cispi(double x);

}  // namespace realtheta

#endif  // REALTHETA_THETA_HPP
