#ifndef REALTHETA_TESTS_SUPPORT_HPP
#define REALTHETA_TESTS_SUPPORT_HPP

#include <random>
#include <vector>

#include "oracles.hpp"
#include "realtheta/intmat.hpp"
#include "realtheta/siegel.hpp"

namespace testing {

using namespace realtheta;

inline RealMatrix scaled_identity(int g, double s) { return s * RealMatrix::Identity(g, g); }

inline RiemannMatrix standard_tau(const RealType& t, const RealMatrix& im) {
  return RiemannMatrix::semi_real(standard_form(t).matrix(), im);
}

inline oracle::CMat to_oracle(const RiemannMatrix& tau) {
  const ComplexMatrix c = tau.complex();
  oracle::CMat out(c.rows(), std::vector<oracle::cd>(c.cols()));
  for (Eigen::Index i = 0; i < c.rows(); ++i)
    for (Eigen::Index j = 0; j < c.cols(); ++j) out[i][j] = c(i, j);
  return out;
}

inline std::vector<oracle::cd> to_oracle(const ComplexVector& z) { return {z.data(), z.data() + z.size()}; }

/// General Riemann matrix with a random real part and Im = Q^T Q + shift Id.
inline RiemannMatrix random_general_tau(int g, std::mt19937_64& rng, double shift = 0.5) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RealMatrix q(g, g), re(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) q(i, j) = u(rng);
  for (int i = 0; i < g; ++i)
    for (int j = i; j < g; ++j) re(i, j) = re(j, i) = u(rng);
  return RiemannMatrix::general(re, q.transpose() * q + shift * RealMatrix::Identity(g, g));
}

inline ComplexVector random_vector(int g, std::mt19937_64& rng, double box) {
  std::uniform_real_distribution<double> u(-box, box);
  ComplexVector z(g);
  for (int j = 0; j < g; ++j) {
    const double re = u(rng);
    z[j] = {re, u(rng)};
  }
  return z;
}

/// Every admissible orthosymmetric (g, lambda) with g <= max_g.
inline std::vector<RealType> orthosymmetric_types(int max_g, int min_lambda = 0) {
  std::vector<RealType> out;
  for (int g = 1; g <= max_g; ++g)
    for (int l = min_lambda + (min_lambda % 2); l <= g; l += 2) out.push_back({g, l, 1});
  return out;
}

}  // namespace testing

#endif  // REALTHETA_TESTS_SUPPORT_HPP
