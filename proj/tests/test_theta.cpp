#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "realtheta/error.hpp"
#include "realtheta/theta.hpp"
#include "support.hpp"

using namespace realtheta;
using testing::scaled_identity;
using testing::standard_tau;

namespace {

const std::complex<double> I(0.0, 1.0);

RiemannMatrix tau_1d(double im, long re2 = 0) {
  RealMatrix t(1, 1);
  t << im;
  return RiemannMatrix::semi_real(IntMatrix{{re2}}, t);
}

double scaled_gap(const ThetaValue& a, const ThetaValue& b) {
  return std::abs(a.scaled - std::exp(b.log_scale - a.log_scale) * b.scaled);
}

}  // namespace

TEST_SUITE("theta") {

TEST_CASE("cispi is exact at multiples of one half") {
  CHECK(cispi(0.0) == std::complex<double>(1.0, 0.0));
  CHECK(cispi(0.5) == std::complex<double>(0.0, 1.0));
  CHECK(cispi(1.0) == std::complex<double>(-1.0, 0.0));
  CHECK(cispi(-0.5) == std::complex<double>(0.0, -1.0));
  CHECK(cispi(7.0) == std::complex<double>(-1.0, 0.0));
  CHECK(std::abs(cispi(0.3) - std::exp(I * oracle::pi * 0.3)) < 1e-15);
}

TEST_CASE("g = 1 against direct summation") {
  const ThetaValue v = theta(ComplexVector::Zero(1), tau_1d(1.0));
  const std::complex<double> ref = oracle::theta_1d(I);
  CHECK(std::abs(v.value - ref) <= 1e-12);
  CHECK(v.abs_error <= 1e-12);
  CHECK(v.value.real() == doctest::Approx(1.0864348112133080).epsilon(1e-15));

  const ThetaValue odd = theta(ComplexVector::Zero(1), tau_1d(1.0), ThetaCharacteristic{{1}, {1}});
  CHECK(std::abs(odd.value) <= 1e-12);
}

TEST_CASE("block-diagonal factorization") {
  RealMatrix im = RealMatrix::Zero(2, 2);
  im(0, 0) = 1.0;
  im(1, 1) = 2.0;
  const ThetaValue v = theta(ComplexVector::Zero(2), RiemannMatrix::semi_real(IntMatrix::zero(2), im));
  const std::complex<double> ref = oracle::theta_1d(I) * oracle::theta_1d(2.0 * I);
  CHECK(std::abs(v.value - ref) <= 1e-10 * std::abs(ref));
  CHECK(v.value.real() == doctest::Approx(1.09049252082308315778).epsilon(1e-14));

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const RiemannMatrix a = testing::random_general_tau(1, rng);
    const RiemannMatrix b = testing::random_general_tau(2, rng);
    RealMatrix re = RealMatrix::Zero(3, 3), imm = RealMatrix::Zero(3, 3);
    re.topLeftCorner(1, 1) = a.re();
    re.bottomRightCorner(2, 2) = b.re();
    imm.topLeftCorner(1, 1) = a.im();
    imm.bottomRightCorner(2, 2) = b.im();
    const ComplexVector z = testing::random_vector(3, rng, 0.5);
    const ThetaValue whole = theta(z, RiemannMatrix::general(re, imm));
    const std::complex<double> parts = theta(z.head(1), a).value * theta(z.tail(2), b).value;
    CHECK(std::abs(whole.value - parts) <= 1e-10 * std::max(1.0, std::abs(parts)));
  }
}

TEST_CASE("general arguments against box summation") {
  std::mt19937_64 rng(4);
  for (int g = 1; g <= 3; ++g) {
    for (int trial = 0; trial < 10; ++trial) {
      const RiemannMatrix tau = testing::random_general_tau(g, rng);
      const ComplexVector z = testing::random_vector(g, rng, 0.5);
      std::uniform_int_distribution<long> ch(-3, 3);
      ThetaCharacteristic c{IntVector(g), IntVector(g)};
      std::vector<long> a(g), b(g);
      for (int j = 0; j < g; ++j) {
        a[j] = c.alpha[j] = ch(rng);
        b[j] = c.beta[j] = ch(rng);
      }
      const ThetaValue v = theta(z, tau, c);
      const auto ref = oracle::theta_box(testing::to_oracle(z), testing::to_oracle(tau), a, b, g == 3 ? 9 : 14);
      CHECK(std::abs(v.value - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
      CHECK(std::abs(v.value - ref) <= 2.0 * v.abs_error + 1e-14 * std::abs(ref));
    }
  }
}

TEST_CASE("truncation radius") {
  const RealMatrix one = scaled_identity(1, 1.0);
  const TruncationRadius r = truncation_radius(one, 1e-12, 20.0);
  CHECK(r.radius > 2.9);
  CHECK(r.radius < 3.4);
  CHECK(r.tail_bound < 1e-12);
  CHECK_FALSE(r.capped);

  for (int g = 1; g <= 4; ++g) {
    const TruncationRadius a = truncation_radius(scaled_identity(g, 1.0), 1e-12, 20.0);
    const TruncationRadius b = truncation_radius(scaled_identity(g, 4.0), 1e-12, 20.0);
    const double ratio = b.lattice_radius / a.lattice_radius;
    CHECK(ratio > 0.4);
    CHECK(ratio < 0.6);
  }

  const TruncationRadius capped = truncation_radius(scaled_identity(3, 0.01), 1e-12, 2.0);
  CHECK(capped.capped);
  CHECK(capped.radius == 2.0);
  CHECK_THROWS_AS(truncation_radius(one, 0.0, 20.0), Error);
}

TEST_CASE("tail bound dominates the discarded terms in one dimension") {
  for (double t : {0.05, 0.3, 1.0, 5.0}) {
    for (double radius : {0.5, 1.0, 2.0, 3.0}) {
      for (double c : {0.0, 0.25, 0.5}) {
        double tail = 0.0;
        for (int m = -2000; m <= 2000; ++m) {
          const double u = std::sqrt(t) * std::abs(m - c);
          if (u > radius) tail += std::exp(-oracle::pi * u * u);
        }
        CHECK(tail <= gaussian_tail_bound(1, t, radius));
      }
    }
  }
}

TEST_CASE("tightening the tolerance stays within the certified error") {
  std::mt19937_64 rng(6);
  for (int g = 1; g <= 4; ++g) {
    const RiemannMatrix tau = testing::random_general_tau(g, rng, 0.3);
    const ComplexVector z = testing::random_vector(g, rng, 1.0);
    EvalConfig loose;
    loose.tol = 1e-6;
    EvalConfig tight;
    tight.tol = 0.5e-6;
    const ThetaValue a = theta(z, tau, loose);
    const ThetaValue b = theta(z, tau, tight);
    CHECK(std::abs(a.value - b.value) <= a.abs_error);
    EvalConfig fine;
    const ThetaValue c = theta(z, tau, fine);
    CHECK(std::abs(a.value - c.value) <= a.abs_error);
    CHECK(c.abs_error <= fine.tol * std::exp(c.log_scale));
  }
}

TEST_CASE("radius cap and invalid input") {
  EvalConfig cfg;
  cfg.max_radius = 1.0;
  try {
    theta(ComplexVector::Zero(2), RiemannMatrix::semi_real(IntMatrix::zero(2), scaled_identity(2, 0.2)), cfg);
    FAIL("expected RadiusCapHit");
  } catch (const RadiusCapHit& e) {
    CHECK(e.kind() == ErrorKind::RadiusCapHit);
    CHECK(e.best().abs_error > cfg.tol);
    const ThetaValue full =
        theta(ComplexVector::Zero(2), RiemannMatrix::semi_real(IntMatrix::zero(2), scaled_identity(2, 0.2)));
    CHECK(std::abs(full.value - e.best().value) <= e.best().abs_error);
  }

  RealMatrix bad(2, 2);
  bad << 1, 2, 2, 1;
  CHECK_THROWS_AS(theta(ComplexVector::Zero(2), RiemannMatrix::semi_real(IntMatrix::zero(2), bad)), Error);
  CHECK_THROWS_AS(theta(ComplexVector::Zero(3), tau_1d(1.0)), Error);
}

TEST_CASE("far from the real subspace the scaled value stays finite") {
  ComplexVector z(1);
  z[0] = {0.3, 200.0};
  const ThetaValue v = theta(z, tau_1d(1.0));
  CHECK(std::isinf(v.value.real()));
  CHECK(std::isfinite(std::abs(v.scaled)));
  // Theta(z + tau) = exp(-2 pi i z - pi i tau) Theta(z) at a point where both are finite.
  ComplexVector w(1);
  w[0] = {0.3, 3.0};
  ComplexVector w1 = w;
  w1[0] += I;
  const ThetaValue a = theta(w1, tau_1d(1.0));
  const ThetaValue b = theta(w, tau_1d(1.0));
  const std::complex<double> factor = std::exp(-2.0 * I * oracle::pi * w[0] - I * oracle::pi * I);
  CHECK(std::abs(a.value - factor * b.value) <= 1e-10 * std::abs(a.value));
}

TEST_CASE("argument reduction") {
  const RiemannMatrix t1 = tau_1d(1.0);
  const ArgumentReduction zero = reduce_argument(ComplexVector::Zero(1), t1);
  CHECK(zero.n == IntVector{0});
  CHECK(zero.mu == IntVector{0});
  CHECK(std::abs(zero.log_factor) == 0.0);

  ComplexVector z(1);
  z[0] = I;
  const ArgumentReduction r = reduce_argument(z, t1);
  CHECK(r.n == IntVector{1});
  CHECK(std::abs(r.z0[0]) < 1e-15);
  CHECK(std::abs(r.log_factor - oracle::pi) < 1e-14);

  std::mt19937_64 rng(9);
  for (int g = 1; g <= 4; ++g) {
    for (int trial = 0; trial < 25; ++trial) {
      const RiemannMatrix tau = testing::random_general_tau(g, rng);
      const ComplexVector w = testing::random_vector(g, rng, 3.0);
      const ArgumentReduction a = reduce_argument(w, tau);
      const ThetaValue full = theta(w, tau);
      const ThetaValue reduced = theta(a.z0, tau);
      const std::complex<double> rhs = std::exp(a.log_factor + reduced.log_scale - full.log_scale) * reduced.scaled;
      CHECK(std::abs(full.scaled - rhs) < 1e-10);
      const RealVector lat = tau.im().llt().solve(RealVector(a.z0.imag()));
      CHECK(lat.cwiseAbs().maxCoeff() <= 0.5 + 1e-9);
    }
  }
}

TEST_CASE("evenness and characteristic shifts") {
  std::mt19937_64 rng(10);
  for (int g = 1; g <= 3; ++g) {
    for (int trial = 0; trial < 10; ++trial) {
      const RiemannMatrix tau = testing::random_general_tau(g, rng);
      const ComplexVector z = testing::random_vector(g, rng, 1.0);
      CHECK(scaled_gap(theta(z, tau), theta(-z, tau)) < 1e-10);

      std::uniform_int_distribution<long> bit(0, 1), shift(-2, 2);
      ThetaCharacteristic c{IntVector(g), IntVector(g)};
      ThetaCharacteristic moved = c;
      long f_alpha = 0;
      for (int j = 0; j < g; ++j) {
        c.alpha[j] = bit(rng);
        c.beta[j] = bit(rng);
        const long d = shift(rng), f = shift(rng);
        moved.alpha[j] = c.alpha[j] + 2 * d;
        moved.beta[j] = c.beta[j] + 2 * f;
        f_alpha += f * c.alpha[j];
      }
      const ThetaValue a = theta(z, tau, moved);
      const ThetaValue b = theta(z, tau, c);
      const double sign = f_alpha % 2 == 0 ? 1.0 : -1.0;
      CHECK(std::abs(a.scaled - sign * std::exp(b.log_scale - a.log_scale) * b.scaled) < 1e-10);
    }
  }
}

TEST_CASE("quasi-periodicity and conjugation on real Siegel spaces") {
  std::mt19937_64 rng(12);
  for (const RealType& t : testing::orthosymmetric_types(4)) {
    for (int trial = 0; trial < 5; ++trial) {
      const RiemannMatrix tau = random_real_riemann(t, rng);
      const ComplexVector z = testing::random_vector(t.g, rng, 1.0);
      const ThetaValue a = theta(z, tau);
      const ThetaValue b = theta(z.conjugate(), tau);
      CHECK(std::abs(std::conj(a.scaled) - std::exp(b.log_scale - a.log_scale) * b.scaled) < 1e-9);
    }
  }
}

TEST_CASE("real theta constants") {
  const RealType t{2, 2, 1};
  const RiemannMatrix tau = standard_tau(t, scaled_identity(2, 3.0));
  const RealThetaValue odd = real_theta_constant(tau, {{1, 1}});
  CHECK(odd.value == doctest::Approx(0.999677175880070406902).epsilon(1e-13));
  CHECK(odd.abs_error <= 1e-12);
  const RealThetaValue even = real_theta_constant(tau, {{0, 0}});
  CHECK(even.value == doctest::Approx(1.00032277202063284375).epsilon(1e-13));
  CHECK(real_theta_constant(tau, {{1, 0}}).value == doctest::Approx(1.00000002604964871397).epsilon(1e-13));

  // Oracle with the leading terms written out: m = 0 plus the four m with m1 m2 = 0,
  // |m| = 1, each contributing exp(-3 pi) times the sign (-1)^(m.beta).
  const double q = std::exp(-3.0 * oracle::pi);
  CHECK(std::abs(odd.value - (1.0 - 4.0 * q)) < 1e-6);
  CHECK(std::abs(even.value - (1.0 + 4.0 * q)) < 1e-6);

  const RealThetaValue g1 = real_theta_constant(tau_1d(1.0), {{0}});
  CHECK(g1.value == doctest::Approx(oracle::theta_1d(I).real()).epsilon(1e-14));

  CHECK_THROWS_AS(real_theta_constant(standard_tau({2, 1, 0}, scaled_identity(2, 1.0)), {{1, 0}}), Error);
  CHECK_THROWS_AS(real_theta_constant(RiemannMatrix::semi_real(IntMatrix{{0, 1}, {1, 2}}, scaled_identity(2, 1.0)),
                                      {{1, 0}}),
                  Error);
}

TEST_CASE("real theta constants need an exact real part") {
  RealMatrix re(2, 2);
  re << 0.0, 0.5, 0.5, 0.0;
  CHECK_THROWS_AS(real_theta_constant(RiemannMatrix::general(re, scaled_identity(2, 1.0)), {{1, 1}}), Error);
}

TEST_CASE("auxiliary function") {
  const RealType t{3, 2, 1};
  const RiemannMatrix tau = standard_tau(t, scaled_identity(3, 1.0));
  const RealThetaValue at0 = aux_T(RealVector::Zero(3), tau, {1});
  // Oracle: exp(pi i e^T x) Theta(x + tau e / 2) by box summation.
  ComplexVector z = 0.5 * tau.complex().col(2);
  const auto ref = oracle::theta_box(testing::to_oracle(z), testing::to_oracle(tau), {0, 0, 0}, {0, 0, 0}, 10);
  CHECK(std::abs(ref.imag()) < 1e-12);
  CHECK(at0.value == doctest::Approx(ref.real()).epsilon(1e-12));

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    RealVector x(3);
    for (int j = 0; j < 3; ++j) x[j] = u(rng);
    RealVector shifted = x;
    shifted[2] += 1.0;
    const double a = aux_T(x, tau, {1}).value;
    CHECK(std::abs(aux_T(shifted, tau, {1}).value + a) < 1e-9 * std::max(1.0, std::abs(a)));
    CHECK(std::abs(aux_T(-x, tau, {1}).value - a) < 1e-9 * std::max(1.0, std::abs(a)));
  }

  CHECK_THROWS_AS(aux_T(RealVector::Zero(3), tau, {0}), Error);
  CHECK_THROWS_AS(aux_T(RealVector::Zero(2), standard_tau({2, 2, 1}, scaled_identity(2, 1.0)), {}), Error);
}

}  // TEST_SUITE
