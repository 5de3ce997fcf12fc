#include "realtheta/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <set>

#include "realtheta/classify.hpp"
#include "realtheta/error.hpp"

namespace realtheta {

namespace {

constexpr double kPi = std::numbers::pi;

// |lhs - exp(log_factor) rhs| in units of exp(lhs.log_scale).
double scaled_difference(const ThetaValue& lhs, std::complex<double> log_factor, const ThetaValue& rhs) {
  const std::complex<double> rel = std::exp(log_factor + rhs.log_scale - lhs.log_scale);
  return std::abs(lhs.scaled - rel * rhs.scaled);
}

ComplexVector to_complex(const IntVector& v) {
  ComplexVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = static_cast<double>(v[i]);
  return out;
}

ComplexVector apply_integer(const IntMatrix& a, const ComplexVector& z) {
  return to_real_matrix(a).cast<std::complex<double>>() * z;
}

bool is_permutation_of(const RealModularElement& gm, const std::vector<CharClass>& set) {
  std::set<CharClass> image;
  for (const CharClass& c : set) image.insert(act_reduced(gm, c));
  return image == std::set<CharClass>(set.begin(), set.end());
}

std::mt19937_64 property_stream(std::uint64_t seed, std::uint64_t property) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(property)};
  return std::mt19937_64(seq);
}

ComplexVector random_z(int g, std::mt19937_64& rng, double box) {
  std::uniform_real_distribution<double> u(-box, box);
  ComplexVector z(g);
  for (int j = 0; j < g; ++j) {
    const double re = u(rng);
    const double im = u(rng);
    z[j] = {re, im};
  }
  return z;
}

IntVector random_int_vector(int g, std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> u(-bound, bound);
  IntVector v(g);
  for (auto& x : v) x = u(rng);
  return v;
}

CharClass random_class(int g, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> bit(0, 1);
  CharClass c{std::vector<std::uint8_t>(g)};
  for (auto& b : c.bits) b = static_cast<std::uint8_t>(bit(rng));
  return c;
}

// Runs trial(i, rng, result) for each trial and records library errors as
// failures instead of aborting the whole suite.
PropertyResult run_property(const std::string& name, std::uint64_t seed, std::uint64_t index, int trials,
                            const std::function<void(std::mt19937_64&, PropertyResult&)>& trial) {
  PropertyResult r;
  r.name = name;
  std::mt19937_64 rng = property_stream(seed, index);
  for (int i = 0; i < trials; ++i) {
    ++r.trials;
    try {
      trial(rng, r);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::SamplingExhausted) throw;
      ++r.failures;
      if (r.note.empty()) r.note = e.what();
    }
  }
  r.passed = r.failures == 0;
  return r;
}

void record(PropertyResult& r, double residual, double tol) {
  r.worst_residual = std::max(r.worst_residual, residual);
  if (!(residual < tol)) ++r.failures;
}

}  // namespace

double quasi_periodicity_residual(const ComplexVector& z, const RiemannMatrix& tau, const IntVector& lam,
                                  const IntVector& mu, const EvalConfig& cfg) {
  const ComplexVector l = to_complex(lam);
  const ComplexVector shifted = z + tau.complex() * l + to_complex(mu);
  const std::complex<double> i_pi(0.0, kPi);
  const std::complex<double> log_factor =
      -2.0 * i_pi * (l.transpose() * z)(0) - i_pi * (l.transpose() * tau.complex() * l)(0);
  return scaled_difference(theta(shifted, tau, cfg), log_factor, theta(z, tau, cfg));
}

double conjugation_residual(const ComplexVector& z, const RiemannMatrix& tau, const EvalConfig& cfg) {
  ThetaValue lhs = theta(z, tau, cfg);
  lhs.scaled = std::conj(lhs.scaled);
  return scaled_difference(lhs, 0.0, theta(z.conjugate(), tau, cfg));
}

double transport_residual(const RealModularElement& gm, const RiemannMatrix& tau, const CharClass& beta,
                          const ComplexVector& z, const EvalConfig& cfg) {
  const RiemannMatrix moved = apply_modular(gm, tau);
  const CharClass moved_beta = act_reduced(gm, beta);
  const ThetaValue lhs = theta(apply_integer(gm.a(), z), moved, ThetaCharacteristic::from_beta(moved_beta.as_vector()), cfg);
  const ThetaValue rhs = theta(z, tau, ThetaCharacteristic::from_beta(beta.as_vector()), cfg);
  return scaled_difference(rhs, 0.0, lhs);
}

bool set_invariance_holds(const RealModularElement& gm) {
  return is_permutation_of(gm, enumerate_O(gm.type())) && is_permutation_of(gm, enumerate_E(gm.type()));
}

FamilyInvarianceCheck family_invariance(const RealModularElement& gm, const RiemannMatrix& tau, const EvalConfig& cfg) {
  FamilyInvarianceCheck out;
  const RiemannMatrix moved = apply_modular(gm, tau);
  for (const auto& fn : {family_O, family_E}) {
    const IndexedFamily before = fn(tau, cfg);
    const IndexedFamily after = fn(moved, cfg);
    std::set<CharClass> hit;
    for (const FamilyEntry& e : before.entries) {
      const CharClass image = act_reduced(gm, e.beta);
      const FamilyEntry* f = after.find(image);
      if (f == nullptr || !hit.insert(image).second) {
        out.permutation_ok = false;
        continue;
      }
      out.worst_residual = std::max(out.worst_residual, std::abs(e.value - f->value) / std::max(1.0, std::abs(e.value)));
    }
    if (hit.size() != after.entries.size()) out.permutation_ok = false;
  }
  return out;
}

double aux_flip_residual(const RealVector& x, const RiemannMatrix& tau, const std::vector<std::uint8_t>& q,
                         int s_index, const EvalConfig& cfg) {
  const auto lambda = static_cast<int>(tau.dim() - q.size());
  if (s_index < 0 || s_index >= static_cast<int>(q.size()) || q[s_index] != 1) {
    throw Error(ErrorKind::InvalidQ, "q^T e_s must be 1");
  }
  RealVector shifted = x;
  shifted[lambda + s_index] += 1.0;
  const RealThetaValue t0 = aux_T(x, tau, q, cfg);
  const RealThetaValue t1 = aux_T(shifted, tau, q, cfg);
  return std::abs(t1.value + t0.value) / std::max(1.0, std::abs(t0.value));
}

bool VerifyReport::all_passed() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.passed; });
}

VerifyReport run_verification(const VerifyOptions& opt) {
  const RealType t{opt.g, opt.lambda, 1};
  if (auto why = real_type_violation(t)) throw Error(ErrorKind::InadmissibleType, "real type " + to_string(t) + ": " + *why);
  if (opt.trials < 0) throw Error(ErrorKind::PreconditionViolated, "trials must be nonnegative");

  VerifyReport rep;
  rep.type = t;
  rep.seed = opt.seed;
  rep.trials = opt.trials;
  const int g = t.g;
  const double tol = opt.residual_tol;
  const EvalConfig& cfg = opt.cfg;
  auto group_element = [&](std::mt19937_64& rng) { return random_real_modular(t, rng(), opt.modular_budget); };

  rep.properties.push_back(run_property("quasi_periodicity", opt.seed, 1, opt.trials, [&](auto& rng, auto& r) {
    const RiemannMatrix tau = random_real_riemann(t, rng);
    const ComplexVector z = random_z(g, rng, 1.0);
    const IntVector lam = random_int_vector(g, rng, 3);
    const IntVector mu = random_int_vector(g, rng, 3);
    record(r, quasi_periodicity_residual(z, tau, lam, mu, cfg), tol);
  }));

  rep.properties.push_back(run_property("conjugation_symmetry", opt.seed, 2, opt.trials, [&](auto& rng, auto& r) {
    const RiemannMatrix tau = random_real_riemann(t, rng);
    record(r, conjugation_residual(random_z(g, rng, 1.0), tau, cfg), tol);
  }));

  rep.properties.push_back(run_property("theta_transport", opt.seed, 3, opt.trials, [&](auto& rng, auto& r) {
    const RiemannMatrix tau = random_real_riemann(t, rng);
    const RealModularElement gm = group_element(rng);
    const CharClass beta = random_class(g, rng);
    record(r, transport_residual(gm, tau, beta, ComplexVector::Zero(g), cfg), tol);
    record(r, transport_residual(gm, tau, beta, random_z(g, rng, 0.5), cfg), tol);
  }));

  rep.properties.push_back(run_property("set_invariance", opt.seed, 4, opt.trials, [&](auto& rng, auto& r) {
    if (!set_invariance_holds(group_element(rng))) ++r.failures;
  }));

  rep.properties.push_back(run_property("family_invariance", opt.seed, 5, opt.trials, [&](auto& rng, auto& r) {
    const RiemannMatrix tau = random_real_riemann(t, rng);
    const FamilyInvarianceCheck c = family_invariance(group_element(rng), tau, cfg);
    if (!c.permutation_ok) ++r.failures;
    record(r, c.worst_residual, tol);
  }));

  if (t.lambda == 0) {
    rep.properties.push_back({"positivity", true, true, "skipped: λ=0", 0, 0, 0.0});
  } else {
    rep.properties.push_back(run_property("positivity", opt.seed, 6, opt.trials, [&](auto& rng, auto& r) {
      const RealThetaValue v = verify_positivity(random_real_riemann(t, rng), cfg);
      // Margin below zero; negative when the sum is certified positive.
      r.worst_residual = std::max(r.worst_residual, v.abs_error - v.value);
      if (!(v.value > v.abs_error)) ++r.failures;
    }));
  }

  {
    std::vector<CharClass> classes = enumerate_O(t);
    const auto e = enumerate_E(t);
    classes.insert(classes.end(), e.begin(), e.end());
    int undetermined = 0;
    PropertyResult p = run_property("sign_translation", opt.seed, 7, opt.trials, [&](auto& rng, auto& r) {
      const RiemannMatrix tau = random_real_riemann(t, rng);
      for (const CharClass& c : classes) {
        const SignTranslation s = sign_translation_check(tau, c.as_vector(), cfg);
        if (std::abs(s.lhs_scaled) <= 10.0 * s.lhs_scaled_error || std::abs(s.rhs.value) <= 10.0 * s.rhs.abs_error) {
          ++undetermined;
          continue;
        }
        if (!s.consistent) ++r.failures;
      }
    });
    if (undetermined > 0 && p.note.empty()) p.note = std::to_string(undetermined) + " near-zero pairs not compared";
    rep.properties.push_back(std::move(p));
  }

  if (t.lambda == t.g) {
    rep.properties.push_back({"aux_T_flip", true, true, "skipped: λ=g", 0, 0, 0.0});
  } else {
    rep.properties.push_back(run_property("aux_T_flip", opt.seed, 8, opt.trials, [&](auto& rng, auto& r) {
      const RiemannMatrix tau = random_real_riemann(t, rng);
      const int rest = t.g - t.lambda;
      std::vector<std::uint8_t> q(rest);
      std::uniform_int_distribution<std::uint64_t> code(1, (std::uint64_t{1} << rest) - 1);
      const std::uint64_t c = code(rng);
      for (int j = 0; j < rest; ++j) q[j] = static_cast<std::uint8_t>((c >> j) & 1);
      const int s = static_cast<int>(std::find(q.begin(), q.end(), 1) - q.begin());
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      RealVector x(g);
      for (int j = 0; j < g; ++j) x[j] = u(rng);
      record(r, aux_flip_residual(x, tau, q, s, cfg), tol);
    }));
  }
  return rep;
}

nlohmann::ordered_json to_json(const VerifyReport& report) {
  nlohmann::ordered_json out;
  out["schema"] = "realtheta.report/1";
  out["kind"] = "verify";
  out["type"] = {{"g", report.type.g}, {"lambda", report.type.lambda}, {"epsilon", report.type.epsilon}};
  out["seed"] = report.seed;
  out["trials"] = report.trials;
  nlohmann::ordered_json props = nlohmann::ordered_json::array();
  for (const PropertyResult& p : report.properties) {
    props.push_back({{"name", p.name},
                     {"status", p.skipped ? "skipped" : (p.passed ? "pass" : "fail")},
                     {"trials", p.trials},
                     {"failures", p.failures},
                     {"worst_residual", p.worst_residual},
                     {"note", p.note}});
  }
  out["properties"] = std::move(props);
  out["all_passed"] = report.all_passed();
  return out;
}

}  // namespace realtheta
