#include "realtheta/classify.hpp"

#include <cmath>
#include <limits>

#include "realtheta/error.hpp"

namespace realtheta {

namespace {

// 2Re(tau) as an exact integer matrix, accepting float real parts that are
// half-integral to within 1e-9.
RiemannMatrix with_exact_real_part(const RiemannMatrix& tau) {
  if (tau.is_semi_real()) return tau;
  const RealMatrix re2 = 2.0 * tau.re();
  const auto g = static_cast<std::size_t>(re2.rows());
  IntMatrix exact(g, g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      const double v = re2(i, j);
      const double r = std::nearbyint(v);
      if (!std::isfinite(v) || std::abs(v - r) > 1e-9) {
        throw Error(ErrorKind::NonIntegralDoubledRealPart,
                    "2Re(tau)[" + std::to_string(i) + "][" + std::to_string(j) + "] = " + std::to_string(v));
      }
      exact(i, j) = static_cast<long>(r);
    }
  return RiemannMatrix::semi_real(std::move(exact), tau.im());
}

RealType standard_orthosymmetric_type(const RiemannMatrix& tau) {
  if (!tau.is_semi_real()) throw Error(ErrorKind::NotStandardForm, "tau has no exact half-integral real part");
  const SymIntMatrix m(*tau.doubled_real_part());
  const RealType t = real_type_of(m);
  if (t.epsilon != 1) throw Error(ErrorKind::DiasymmetricInput, "type " + to_string(t) + " is diasymmetric");
  if (m != standard_form(t)) {
    throw Error(ErrorKind::NotStandardForm, "2Re(tau) is not the standard form of type " + to_string(t));
  }
  return t;
}

IndexedFamily evaluate_family(const RiemannMatrix& tau, const EvalConfig& cfg, FamilyKind kind) {
  IndexedFamily fam;
  fam.kind = kind;
  fam.type = standard_orthosymmetric_type(tau);
  const auto classes = kind == FamilyKind::O ? enumerate_O(fam.type) : enumerate_E(fam.type);
  for (const CharClass& c : classes) {
    const RealThetaValue v = real_theta_constant(tau, c, cfg);
    fam.entries.push_back({c, v.value, v.abs_error});
  }
  return fam;
}

int certified_sign(double value, double error) {
  if (value > error) return 1;
  if (value < -error) return -1;
  return 0;
}

Consistency consistency_of(const IndexedFamily& fam, double tol_classify) {
  if (fam.entries.empty()) return Consistency::Empty;
  bool negative = false;
  bool nonnegative = false;
  for (const FamilyEntry& e : fam.entries) {
    const double band = std::max(tol_classify, e.abs_error);
    if (e.value < -band) negative = true;
    if (e.value > band) nonnegative = true;
  }
  if (negative && nonnegative) return Consistency::NotAJacobianOrNumericalIssue;
  return negative ? Consistency::AllNegative : Consistency::AllNonnegative;
}

ClassificationReport non_critical_report(const RealType& t) {
  ClassificationReport r;
  r.input_type = t;
  r.critical = false;
  r.decision = Decision::HasRealPoints;
  r.topological_candidates = real_to_topological_candidates(t);
  r.reason = "non-critical real type " + to_string(t);
  if (r.topological_candidates.size() == 1) {
    r.reason += "; topological type " + to_string(r.topological_candidates.front());
  }
  return r;
}

}  // namespace

const FamilyEntry* IndexedFamily::find(const CharClass& beta) const {
  for (const FamilyEntry& e : entries)
    if (e.beta == beta) return &e;
  return nullptr;
}

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::HasRealPoints: return "HasRealPoints";
    case Decision::NoRealPoints: return "NoRealPoints";
    case Decision::Indeterminate: return "Indeterminate";
  }
  return "?";
}

std::string_view to_string(Consistency c) {
  switch (c) {
    case Consistency::AllNegative: return "AllNegative";
    case Consistency::AllNonnegative: return "AllNonnegative";
    case Consistency::NotAJacobianOrNumericalIssue: return "NotAJacobianOrNumericalIssue";
    case Consistency::Empty: return "Empty";
    case Consistency::NotEvaluated: return "NotEvaluated";
  }
  return "?";
}

IndexedFamily family_O(const RiemannMatrix& tau, const EvalConfig& cfg) {
  return evaluate_family(tau, cfg, FamilyKind::O);
}

IndexedFamily family_E(const RiemannMatrix& tau, const EvalConfig& cfg) {
  return evaluate_family(tau, cfg, FamilyKind::E);
}

RealThetaValue verify_positivity(const RiemannMatrix& tau, const EvalConfig& cfg) {
  const RealType t = standard_orthosymmetric_type(tau);
  if (t.lambda == 0) throw Error(ErrorKind::PreconditionViolated, "the B-sum needs λ > 0");
  RealThetaValue sum;
  for (const CharClass& c : enumerate_B(t)) {
    const RealThetaValue v = real_theta_constant(tau, c, cfg);
    sum.value += v.value;
    sum.abs_error += v.abs_error;
    sum.terms_used += v.terms_used;
  }
  // Rounding of the outer sum.
  sum.abs_error += 4.0 * std::numeric_limits<double>::epsilon() * std::abs(sum.value) * t.lambda;
  return sum;
}

SignTranslation sign_translation_check(const RiemannMatrix& tau, const IntVector& beta, const EvalConfig& cfg) {
  const RealType t = standard_orthosymmetric_type(tau);
  if (beta.size() != static_cast<std::size_t>(t.g)) throw Error(ErrorKind::DimensionMismatch, "beta must have length g");
  const IntMatrix m = standard_form(t).matrix();
  std::vector<Integer> b(beta.begin(), beta.end());
  if (m * (m * b) != b) throw Error(ErrorKind::PreconditionViolated, "M(M beta) != beta");
  const std::vector<Integer> mb = m * b;

  SignTranslation out;
  const std::int64_t q = quadratic_form(t, beta);
  out.expected_relation = ((q % 4) + 4) % 4 == 0 ? 1 : -1;

  const auto g = static_cast<Eigen::Index>(t.g);
  ComplexVector half_beta(g), mbv(g);
  for (Eigen::Index j = 0; j < g; ++j) {
    half_beta[j] = 0.5 * static_cast<double>(beta[j]);
    mbv[j] = mb[j].get_d();
  }
  const ComplexVector z = half_beta - tau.complex() * mbv;
  const ThetaValue lhs = theta(z, tau, cfg);
  // Theta(beta/2) depends only on the class of beta.
  out.rhs = real_theta_constant(tau, canonical(beta), cfg);

  // The left side is real: Theta(beta/2) times a positive factor times a sign.
  out.lhs_scaled = lhs.scaled.real();
  out.lhs_scaled_error = lhs.scaled_error + std::abs(lhs.scaled.imag());
  out.sign_lhs = certified_sign(out.lhs_scaled, out.lhs_scaled_error);
  out.sign_rhs = certified_sign(out.rhs.value, out.rhs.abs_error);
  out.consistent = out.sign_lhs == out.expected_relation * out.sign_rhs;
  return out;
}

ClassificationReport classify(const RiemannMatrix& tau_in, const EvalConfig& cfg, double tol_classify,
                              bool evaluate_all) {
  if (!(tol_classify > 0.0)) throw Error(ErrorKind::PreconditionViolated, "tol_classify must be positive");
  const RiemannMatrix tau = with_exact_real_part(tau_in);
  if (!validate_riemann(tau)) throw Error(ErrorKind::NotInSiegel, "tau is not a Riemann matrix");
  const SymIntMatrix m(*tau.doubled_real_part());
  const RealType t = real_type_of(m);

  ClassificationReport r;
  if (!is_critical(t)) {
    r = non_critical_report(t);
    r.tol = cfg.tol;
    r.tol_classify = tol_classify;
    if (evaluate_all && t.epsilon == 1 && m == standard_form(t)) {
      r.family = family_O(tau, cfg);
      r.theta_evaluations = r.family->entries.size();
      r.consistency = consistency_of(*r.family, tol_classify);
    }
    return r;
  }

  r.input_type = t;
  r.critical = true;
  r.tol = cfg.tol;
  r.tol_classify = tol_classify;
  r.topological_candidates = real_to_topological_candidates(t);
  if (m != standard_form(t)) {
    throw Error(ErrorKind::NotStandardForm, "critical type " + to_string(t) + " but 2Re(tau) = " +
                                                m.matrix().to_string() + " is not its standard form " +
                                                standard_form(t).matrix().to_string() +
                                                "; supply a real period matrix in standard form");
  }

  const auto witnesses = enumerate_O(t);
  if (witnesses.empty()) {
    r.decision = Decision::Indeterminate;
    r.consistency = Consistency::Empty;
    r.reason = "critical type " + to_string(t) + " has no odd real characteristic; the criterion needs g >= 2";
    return r;
  }

  const CharClass& witness = witnesses.front();
  const RealThetaValue w = real_theta_constant(tau, witness, cfg);
  r.theta_evaluations = 1;
  r.witness_beta = witness;
  r.witness_value = w.value;
  r.witness_error = w.abs_error;

  const double band = std::max(tol_classify, w.abs_error);
  if (w.value < -band) {
    r.decision = Decision::HasRealPoints;
    r.reason = "witness theta constant " + to_string(witness) + " is negative";
  } else if (w.value > band) {
    r.decision = Decision::NoRealPoints;
    r.reason = "witness theta constant " + to_string(witness) + " is positive";
  } else {
    r.decision = Decision::Indeterminate;
    r.reason = "witness theta constant " + to_string(witness) + " lies within " + std::to_string(band) +
               " of zero; a vanishing constant is compatible with no real points, a tiny negative one is not";
  }

  r.family = family_O(tau, cfg);
  r.theta_evaluations += r.family->entries.size();
  r.consistency = consistency_of(*r.family, tol_classify);
  return r;
}

ClassificationReport classify(const SymIntMatrix& m, const EvalConfig& cfg, double tol_classify) {
  const RealType t = real_type_of(m);
  if (is_critical(t)) {
    throw Error(ErrorKind::NotStandardForm,
                "critical type " + to_string(t) + " cannot be decided from the reflection matrix; supply a real period matrix");
  }
  ClassificationReport r = non_critical_report(t);
  r.tol = cfg.tol;
  r.tol_classify = tol_classify;
  return r;
}

}  // namespace realtheta
