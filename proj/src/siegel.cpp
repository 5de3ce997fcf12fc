#include "realtheta/siegel.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "realtheta/error.hpp"

namespace realtheta {

namespace {

void check_shapes(const RealMatrix& re, const RealMatrix& im) {
  if (im.rows() != im.cols() || re.rows() != im.rows() || re.cols() != im.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "real and imaginary parts must be square of equal size");
  }
}

RealMatrix symmetrized(const RealMatrix& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

RealMatrix to_real_matrix(const IntMatrix& m) {
  RealMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).get_d();
  return r;
}

RiemannMatrix RiemannMatrix::semi_real(IntMatrix doubled_real, RealMatrix im) {
  if (!doubled_real.is_square() || im.rows() != im.cols() ||
      static_cast<std::size_t>(im.rows()) != doubled_real.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "2Re(tau) and Im(tau) must be square of equal size");
  }
  RiemannMatrix tau;
  tau.re_float_ = 0.5 * to_real_matrix(doubled_real);
  tau.doubled_real_ = std::move(doubled_real);
  tau.im_ = std::move(im);
  return tau;
}

RiemannMatrix RiemannMatrix::general(RealMatrix re, RealMatrix im) {
  check_shapes(re, im);
  RiemannMatrix tau;
  tau.re_float_ = std::move(re);
  tau.im_ = std::move(im);
  return tau;
}

RealMatrix RiemannMatrix::re() const { return re_float_; }

ComplexMatrix RiemannMatrix::complex() const {
  ComplexMatrix c(im_.rows(), im_.cols());
  c.real() = re_float_;
  c.imag() = im_;
  return c;
}

bool validate_riemann(const RiemannMatrix& tau, double tol) {
  const RealMatrix& im = tau.im();
  const Eigen::Index g = im.rows();
  if (g == 0) return false;
  if (!im.allFinite()) return false;
  const double scale = std::max(1.0, im.cwiseAbs().maxCoeff());
  if (((im - im.transpose()).cwiseAbs().maxCoeff()) > tol * scale) return false;
  if (tau.is_semi_real()) {
    if (!tau.doubled_real_part()->is_symmetric()) return false;
  } else {
    const RealMatrix re = tau.re();
    if (!re.allFinite()) return false;
    const double rs = std::max(1.0, re.cwiseAbs().maxCoeff());
    if (((re - re.transpose()).cwiseAbs().maxCoeff()) > tol * rs) return false;
  }
  const double max_diag = im.diagonal().maxCoeff();
  if (!(max_diag > 0.0)) return false;
  Eigen::LLT<RealMatrix> llt(symmetrized(im));
  if (llt.info() != Eigen::Success) return false;
  const RealMatrix l = llt.matrixL();
  for (Eigen::Index k = 0; k < g; ++k) {
    if (!(l(k, k) * l(k, k) > tol * max_diag)) return false;
  }
  return true;
}

bool validate_real_siegel(const RiemannMatrix& tau, const RealType& t) {
  if (!is_admissible_real_type(t) || static_cast<std::size_t>(t.g) != tau.dim()) return false;
  if (!tau.is_semi_real() || !validate_riemann(tau)) return false;
  return *tau.doubled_real_part() == standard_form(t).matrix();
}

IntMatrix RealModularElement::block_form() const {
  const std::size_t g = dim();
  const IntMatrix d = unimodular_inverse(a_).transpose();
  IntMatrix out(2 * g, 2 * g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      out(i, j) = a_(i, j);
      out(i, g + j) = b_(i, j);
      out(g + i, g + j) = d(i, j);
    }
  return out;
}

RealModularElement make_real_modular(IntMatrix a, const RealType& t) {
  SymIntMatrix m = standard_form(t);
  if (!a.is_square() || a.rows() != m.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "a must be " + std::to_string(t.g) + "x" + std::to_string(t.g));
  }
  const Integer det = determinant(a);
  if (det != 1 && det != -1) {
    throw Error(ErrorKind::NotUnimodular, "det(a) = " + det.get_str());
  }
  const IntMatrix ama = a * m.matrix() * a.transpose();
  if (!ama.congruent_mod2(m.matrix())) {
    throw Error(ErrorKind::CongruenceViolated,
                "a*M*a^T = " + ama.to_string() + " is not congruent to M = " + m.matrix().to_string() + " mod 2");
  }
  IntMatrix b_at = (m.matrix() - ama).divide_exact(2);
  IntMatrix b = b_at * unimodular_inverse(a.transpose());
  return RealModularElement(t, std::move(a), std::move(b), std::move(b_at), std::move(m));
}

RealModularElement compose(const RealModularElement& outer, const RealModularElement& inner) {
  if (outer.type() != inner.type()) {
    throw Error(ErrorKind::TypeMismatch, "cannot compose elements of types " + to_string(outer.type()) + " and " +
                                             to_string(inner.type()));
  }
  return make_real_modular(outer.a() * inner.a(), outer.type());
}

RiemannMatrix apply_modular(const RealModularElement& gm, const RiemannMatrix& tau) {
  if (tau.dim() != gm.dim()) throw Error(ErrorKind::DimensionMismatch, "tau and element dimensions differ");
  if (!tau.is_semi_real() || *tau.doubled_real_part() != gm.reflection().matrix()) {
    throw Error(ErrorKind::TypeMismatch,
                "tau is not in the real Siegel space of type " + to_string(gm.type()));
  }
  const IntMatrix& a = gm.a();
  IntMatrix re2 = a * *tau.doubled_real_part() * a.transpose() + Integer(2) * gm.b_at();

  const RealMatrix af = to_real_matrix(a);
  const RealMatrix prod = af * tau.im() * af.transpose();
  return RiemannMatrix::semi_real(std::move(re2), symmetrized(prod));
}

SymIntMatrix transform_reflection(const IntMatrix& a, const IntMatrix& b, const SymIntMatrix& m) {
  if (!a.is_square() || a.rows() != m.dim() || b.rows() != a.rows() || b.cols() != a.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "a, b and M must share the dimension g");
  }
  const Integer det = determinant(a);
  if (det != 1 && det != -1) throw Error(ErrorKind::NotUnimodular, "det(a) = " + det.get_str());
  const IntMatrix bat = b * a.transpose();
  if (a * b.transpose() != bat) {
    throw Error(ErrorKind::PreconditionViolated, "a*b^T != b*a^T: not a semi-real modular element");
  }
  return SymIntMatrix(a * m.matrix() * a.transpose() + Integer(2) * bat);
}

RealModularElement random_real_modular(const RealType& t, std::uint64_t seed, int size_budget,
                                       SamplerStats* stats) {
  const SymIntMatrix m = standard_form(t);
  const std::size_t g = m.dim();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> index(0, g - 1);
  std::uniform_int_distribution<int> kind_dist(0, g > 1 ? 2 : 0);
  std::uniform_int_distribution<int> mult_dist(0, 3);
  constexpr int kMultipliers[] = {-2, -1, 1, 2};

  SamplerStats local;
  IntMatrix a = IntMatrix::identity(g);
  for (int step = 0; step < size_budget; ++step) {
    for (;;) {
      IntMatrix e = IntMatrix::identity(g);
      switch (kind_dist(rng)) {
        case 0: {  // sign flip
          const std::size_t i = index(rng);
          e(i, i) = -1;
          break;
        }
        case 1: {  // transvection
          const std::size_t i = index(rng);
          std::size_t j = index(rng);
          if (j == i) j = (j + 1) % g;
          e(i, j) = kMultipliers[mult_dist(rng)];
          break;
        }
        default: {  // swap
          const std::size_t i = index(rng);
          std::size_t j = index(rng);
          if (j == i) j = (j + 1) % g;
          e(i, i) = 0;
          e(j, j) = 0;
          e(i, j) = 1;
          e(j, i) = 1;
          break;
        }
      }
      if ((e * m.matrix() * e.transpose()).congruent_mod2(m.matrix())) {
        a = e * a;
        ++local.accepted_factors;
        break;
      }
      if (++local.rejected_factors >= kSamplerRetryCap) {
        throw Error(ErrorKind::SamplingExhausted, "no valid factor for type " + to_string(t) + " after " +
                                                      std::to_string(kSamplerRetryCap) +
                                                      " rejections (seed " + std::to_string(seed) + ")");
      }
    }
  }
  if (stats) *stats = local;
  return make_real_modular(std::move(a), t);
}

RiemannMatrix random_real_riemann(const RealType& t, std::mt19937_64& rng, double delta) {
  const SymIntMatrix m = standard_form(t);
  const Eigen::Index g = t.g;
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  RealMatrix q(g, g);
  for (Eigen::Index i = 0; i < g; ++i)
    for (Eigen::Index j = 0; j < g; ++j) q(i, j) = unit(rng);
  RealMatrix im = q.transpose() * q + delta * RealMatrix::Identity(g, g);
  return RiemannMatrix::semi_real(m.matrix(), symmetrized(im));
}

}  // namespace realtheta
