#include "realtheta/theta.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "realtheta/detail/compensated_sum.hpp"

namespace realtheta {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

constexpr std::array kSplitGrid = {0.05, 0.1,  0.15, 0.2,  0.25, 0.3,  0.35, 0.4,  0.45, 0.5,  0.55, 0.6,
                                   0.65, 0.7,  0.75, 0.8,  0.85, 0.9,  0.93, 0.95, 0.97, 0.98, 0.99, 0.995};

std::int64_t floor_mod(std::int64_t v, std::int64_t m) { return ((v % m) + m) % m; }

// Lower bound on the smallest eigenvalue of a symmetric matrix.
double smallest_eigenvalue_bound(const RealMatrix& t) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(t, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues()(0);
  return lo - 16.0 * kEps * static_cast<double>(t.rows()) * t.cwiseAbs().maxCoeff();
}

struct Term {
  double u2;
  std::complex<double> value;
  double error;
  std::size_t index;  // into the flat lattice-point storage
};

void require_dims(const ComplexVector& z, const RiemannMatrix& tau, const ThetaCharacteristic& c) {
  const auto g = static_cast<Eigen::Index>(tau.dim());
  if (z.size() != g || c.alpha.size() != tau.dim() || c.beta.size() != tau.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "z, alpha and beta must all have length g = " + std::to_string(g));
  }
}

// Common precondition of the real-valued evaluations: tau in the real Siegel
// space of an orthosymmetric standard form. Returns that type.
RealType require_orthosymmetric_standard(const RiemannMatrix& tau) {
  if (!tau.is_semi_real()) {
    throw Error(ErrorKind::NotStandardForm, "tau has no exact half-integral real part");
  }
  const SymIntMatrix m(*tau.doubled_real_part());
  const RealType t = real_type_of(m);
  if (t.epsilon != 1) {
    throw Error(ErrorKind::DiasymmetricInput, "2Re(tau) has real type " + to_string(t) + " (ε=0)");
  }
  if (m != standard_form(t)) {
    throw Error(ErrorKind::NotStandardForm, "2Re(tau) = " + m.matrix().to_string() +
                                                " is not the standard form of type " + to_string(t));
  }
  return t;
}

RealThetaValue project_real(const ThetaValue& v, const EvalConfig& cfg, const char* what) {
  const double re = v.value.real();
  const double im = v.value.imag();
  const double threshold = cfg.tol_real * (std::abs(re) + cfg.tol) + v.abs_error;
  if (!(std::abs(im) <= threshold)) {
    throw Error(ErrorKind::RealityViolated, std::string(what) + " has imaginary part " + std::to_string(im) +
                                                " exceeding " + std::to_string(threshold));
  }
  return {re, v.abs_error + std::abs(im), v.terms_used};
}

}  // namespace

std::complex<double> cispi(double x) {
  const double r = std::remainder(x, 2.0);  // [-1, 1], exact
  const double q = std::nearbyint(2.0 * r);
  const double f = r - 0.5 * q;  // [-1/4, 1/4], exact
  const double s = std::sin(kPi * f);
  const double c = std::cos(kPi * f);
  switch (static_cast<int>(floor_mod(static_cast<std::int64_t>(q), 4))) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
  }
}

double gaussian_tail_bound(int g, double lambda_min, double radius) {
  // For theta in (0,1) and ||u|| > R:
  //   exp(-pi ||u||^2) <= exp(-pi theta R^2) exp(-pi (1 - theta) lambda_min |n - c|^2),
  // and the full shifted-lattice sum of the last factor is at most
  //   prod_j (2 + 1 / sqrt((1 - theta) lambda_min)).
  double best = std::numeric_limits<double>::infinity();
  for (double theta : kSplitGrid) {
    const double log_b =
        -kPi * theta * radius * radius + g * std::log(2.0 + 1.0 / std::sqrt((1.0 - theta) * lambda_min));
    best = std::min(best, std::exp(log_b));
  }
  return best;
}

TruncationRadius truncation_radius(const RealMatrix& im_tau, double tol, double max_radius) {
  if (!(tol > 0.0)) throw Error(ErrorKind::PreconditionViolated, "tol must be positive");
  if (!(max_radius >= 1.0)) throw Error(ErrorKind::PreconditionViolated, "max_radius must be at least 1");
  const double lambda_min = smallest_eigenvalue_bound(im_tau);
  if (!(lambda_min > 0.0)) throw Error(ErrorKind::NotInSiegel, "Im(tau) is not positive definite");
  const int g = static_cast<int>(im_tau.rows());
  auto bound = [&](double r) { return gaussian_tail_bound(g, lambda_min, r); };

  TruncationRadius out;
  double lo = 0.0;
  double hi = 1.0;
  while (bound(hi) >= tol && hi < max_radius) {
    lo = hi;
    hi = std::min(2.0 * hi, max_radius);
  }
  if (bound(hi) >= tol) {
    out.radius = max_radius;
    out.capped = true;
  } else {
    for (int it = 0; it < 60 && hi - lo > 1e-9 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (bound(mid) < tol ? hi : lo) = mid;
    }
    out.radius = hi;
  }
  out.tail_bound = bound(out.radius);
  out.lattice_radius = out.radius / std::sqrt(lambda_min);
  return out;
}

ThetaValue theta(const ComplexVector& z, const RiemannMatrix& tau, const ThetaCharacteristic& c,
                 const EvalConfig& cfg) {
  require_dims(z, tau, c);
  if (!(cfg.tol > 0.0) || !(cfg.max_radius >= 1.0)) {
    throw Error(ErrorKind::PreconditionViolated, "EvalConfig needs tol > 0 and max_radius >= 1");
  }
  if (!validate_riemann(tau)) throw Error(ErrorKind::NotInSiegel, "tau is not a Riemann matrix");

  const int g = static_cast<int>(tau.dim());
  const RealMatrix t = 0.5 * (tau.im() + tau.im().transpose());
  const Eigen::LLT<RealMatrix> llt(t);
  const RealMatrix u = llt.matrixU();  // t = u^T u

  const RealVector y = z.imag();
  const RealVector center = -llt.solve(y);
  const double log_scale = std::max(0.0, -kPi * y.dot(center));

  // Residual of the solve; it enters every exponent through n^T (t c + y).
  RealVector resid_bound(g);
  {
    const RealVector r = t * center + y;
    const RealVector mag = t.cwiseAbs() * center.cwiseAbs() + y.cwiseAbs();
    resid_bound = r.cwiseAbs() + (g + 2) * kEps * mag;
  }
  const double log_scale_err = kPi * (resid_bound.cwiseAbs().dot(center.cwiseAbs())) +
                               (g + 2) * kEps * kPi * y.cwiseAbs().dot(center.cwiseAbs());

  IntVector alpha0(g), beta4(g);
  RealVector shift(g);
  for (int j = 0; j < g; ++j) {
    alpha0[j] = floor_mod(c.alpha[j], 2);
    beta4[j] = floor_mod(c.beta[j], 4);
    shift[j] = 0.5 * static_cast<double>(alpha0[j]);
  }
  const RealVector d = center - shift;  // x = m - d = n - center

  // Half the budget goes to the tail, the rest absorbs rounding.
  const double target = std::max(0.5 * cfg.tol * std::exp(-log_scale), kEps);
  const TruncationRadius tr = truncation_radius(t, target, cfg.max_radius);
  const double r2 = tr.radius * tr.radius;

  // Phase data. Semi-real matrices give an exact rational part:
  // with k = 2m + alpha, the phase is (k^T re2 k + 4 beta^T k)/8 + Re(z)^T k.
  const bool exact = tau.is_semi_real();
  std::vector<std::int64_t> re2_mod16;
  RealMatrix re_float;
  RealVector wr(g);
  const RealVector z_re = z.real();
  if (exact) {
    const IntMatrix& re2 = *tau.doubled_real_part();
    re2_mod16.resize(static_cast<std::size_t>(g) * g);
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j) {
        Integer r = re2(i, j) % 16;
        re2_mod16[i * g + j] = floor_mod(r.get_si(), 16);
      }
  } else {
    re_float = tau.re();
    for (int j = 0; j < g; ++j) wr[j] = z_re[j] + 0.5 * static_cast<double>(beta4[j]);
  }

  std::vector<Term> terms;
  std::vector<std::int64_t> points;
  IntVector m(g);
  RealVector x(g);
  std::vector<std::int64_t> k(g);

  auto leaf = [&](double u2) {
    for (int j = 0; j < g; ++j) k[j] = 2 * m[j] + alpha0[j];

    double phase;
    double phase_err;
    if (exact) {
      std::int64_t num = 0;
      for (int i = 0; i < g; ++i) {
        std::int64_t row = 0;
        for (int j = 0; j < g; ++j) row += re2_mod16[i * g + j] * k[j];
        num += k[i] * row + 4 * beta4[i] * k[i];
      }
      double float_part = 0.0;
      double float_abs = 0.0;
      for (int j = 0; j < g; ++j) {
        float_part += z_re[j] * static_cast<double>(k[j]);
        float_abs += std::abs(z_re[j] * static_cast<double>(k[j]));
      }
      phase = static_cast<double>(floor_mod(num, 16)) / 8.0 + float_part;
      phase_err = (g + 2) * kEps * (float_abs + 2.0);
    } else {
      double quad = 0.0;
      double quad_abs = 0.0;
      double lin = 0.0;
      double lin_abs = 0.0;
      for (int i = 0; i < g; ++i) {
        const double ni = static_cast<double>(m[i]) + shift[i];
        for (int j = 0; j < g; ++j) {
          const double nj = static_cast<double>(m[j]) + shift[j];
          quad += ni * re_float(i, j) * nj;
          quad_abs += std::abs(ni * re_float(i, j) * nj);
        }
        lin += 2.0 * wr[i] * ni;
        lin_abs += std::abs(2.0 * wr[i] * ni);
      }
      phase = quad + lin;
      phase_err = (g + 3) * kEps * (quad_abs + lin_abs);
    }

    double a_sum = 0.0;
    double n_resid = 0.0;
    for (int i = 0; i < g; ++i) {
      double row = 0.0;
      for (int j = i; j < g; ++j) row += std::abs(u(i, j) * x[j]);
      a_sum += row * row;
      n_resid += std::abs(static_cast<double>(m[i]) + shift[i]) * resid_bound[i];
    }
    const double exponent_err = kPi * (g + 4) * kEps * a_sum + 2.0 * kPi * n_resid + log_scale_err;

    const double magnitude = std::exp(-kPi * u2);
    const double rel_err = exponent_err + kPi * phase_err + 4.0 * kEps;
    terms.push_back({u2, magnitude * cispi(phase), magnitude * rel_err, points.size()});
    points.insert(points.end(), m.begin(), m.end());
  };

  // Fincke-Pohst enumeration, last coordinate outermost.
  auto recurse = [&](auto&& self, int i, double used) -> void {
    double s = 0.0;
    for (int j = i + 1; j < g; ++j) s += u(i, j) * x[j];
    const double rem = r2 - used;
    if (rem < 0.0) return;
    const double half_width = std::sqrt(rem) / u(i, i);
    const double mid = d[i] - s / u(i, i);
    const auto lo = static_cast<std::int64_t>(std::ceil(mid - half_width));
    const auto hi = static_cast<std::int64_t>(std::floor(mid + half_width));
    for (std::int64_t mi = lo; mi <= hi; ++mi) {
      m[i] = mi;
      x[i] = static_cast<double>(mi) - d[i];
      const double comp = u(i, i) * x[i] + s;
      const double acc = used + comp * comp;
      if (acc > r2) continue;
      if (i == 0) {
        leaf(acc);
      } else {
        self(self, i - 1, acc);
      }
    }
  };
  recurse(recurse, g - 1, 0.0);

  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
    if (a.u2 != b.u2) return a.u2 < b.u2;
    return std::lexicographical_compare(points.begin() + a.index, points.begin() + a.index + g,
                                        points.begin() + b.index, points.begin() + b.index + g);
  });

  detail::CompensatedComplexSum acc;
  double err = 0.0;
  double abs_sum = 0.0;
  for (const Term& term : terms) {
    acc.add(term.value);
    err += term.error;
    abs_sum += std::abs(term.value);
  }

  ThetaValue out;
  out.scaled = acc.get();
  out.terms_used = terms.size();
  out.radius = tr.radius;
  out.tail_bound = tr.tail_bound;
  const double n_terms = static_cast<double>(terms.size());
  out.scaled_error = tr.tail_bound + err + 2.0 * kEps * std::abs(out.scaled) + 4.0 * n_terms * kEps * kEps * abs_sum;
  out.log_scale = log_scale;
  const double factor = std::exp(log_scale);
  out.value = factor * out.scaled;
  out.abs_error = factor * out.scaled_error + 2.0 * kEps * std::abs(out.value);

  if (tr.capped) {
    throw RadiusCapHit("truncation radius capped at " + std::to_string(cfg.max_radius) +
                           "; certified error " + std::to_string(out.abs_error),
                       out);
  }
  return out;
}

ThetaValue theta(const ComplexVector& z, const RiemannMatrix& tau, const EvalConfig& cfg) {
  return theta(z, tau, ThetaCharacteristic::zero(tau.dim()), cfg);
}

ArgumentReduction reduce_argument(const ComplexVector& z, const RiemannMatrix& tau) {
  const auto g = static_cast<Eigen::Index>(tau.dim());
  if (z.size() != g) throw Error(ErrorKind::DimensionMismatch, "z must have length g");
  if (!validate_riemann(tau)) throw Error(ErrorKind::NotInSiegel, "tau is not a Riemann matrix");
  const RealMatrix t = 0.5 * (tau.im() + tau.im().transpose());
  const RealVector lat = Eigen::LLT<RealMatrix>(t).solve(RealVector(z.imag()));

  ArgumentReduction out;
  out.n.resize(g);
  out.mu.resize(g);
  ComplexVector nv(g);
  for (Eigen::Index j = 0; j < g; ++j) {
    out.n[j] = static_cast<std::int64_t>(std::llround(lat[j]));
    nv[j] = static_cast<double>(out.n[j]);
  }
  const ComplexMatrix tc = tau.complex();
  const ComplexVector tau_n = tc * nv;
  ComplexVector z1 = z - tau_n;
  for (Eigen::Index j = 0; j < g; ++j) {
    out.mu[j] = static_cast<std::int64_t>(std::llround(z1[j].real()));
    z1[j] -= static_cast<double>(out.mu[j]);
  }
  out.z0 = z1;
  const std::complex<double> i_pi(0.0, kPi);
  out.log_factor = -2.0 * i_pi * nv.dot(out.z0) - i_pi * nv.dot(tau_n);
  return out;
}

RealThetaValue real_theta_constant(const RiemannMatrix& tau, const CharClass& beta, const EvalConfig& cfg) {
  require_orthosymmetric_standard(tau);
  if (beta.size() != tau.dim()) throw Error(ErrorKind::DimensionMismatch, "class length differs from g");
  const ThetaValue v =
      theta(ComplexVector::Zero(static_cast<Eigen::Index>(tau.dim())), tau,
            ThetaCharacteristic::from_beta(beta.as_vector()), cfg);
  return project_real(v, cfg, ("theta constant " + to_string(beta)).c_str());
}

RealThetaValue aux_T(const RealVector& x, const RiemannMatrix& tau, const std::vector<std::uint8_t>& q,
                     const EvalConfig& cfg) {
  const RealType t = require_orthosymmetric_standard(tau);
  if (t.lambda >= t.g) throw Error(ErrorKind::InvalidQ, "λ = g leaves no room for q");
  if (q.size() != static_cast<std::size_t>(t.g - t.lambda)) {
    throw Error(ErrorKind::InvalidQ, "q must have length g - λ = " + std::to_string(t.g - t.lambda));
  }
  if (std::none_of(q.begin(), q.end(), [](std::uint8_t v) { return v != 0; })) {
    throw Error(ErrorKind::InvalidQ, "q must be nonzero");
  }
  if (x.size() != t.g) throw Error(ErrorKind::DimensionMismatch, "x must have length g");

  ComplexVector eq = ComplexVector::Zero(t.g);
  double phase = 0.0;
  for (int j = 0; j < t.g - t.lambda; ++j) {
    eq[t.lambda + j] = static_cast<double>(q[j] & 1);
    phase += static_cast<double>(q[j] & 1) * x[t.lambda + j];
  }
  const ComplexVector z = x.cast<std::complex<double>>() + 0.5 * (tau.complex() * eq);
  ThetaValue v = theta(z, tau, cfg);
  const std::complex<double> rot = cispi(phase);
  v.value *= rot;
  v.scaled *= rot;
  v.abs_error += 4.0 * kEps * std::abs(v.value) * (1.0 + std::abs(phase));
  return project_real(v, cfg, "aux_T");
}

}  // namespace realtheta
