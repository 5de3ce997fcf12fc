#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "realtheta/characteristics.hpp"
#include "realtheta/classify.hpp"
#include "realtheta/error.hpp"
#include "realtheta/period_file.hpp"
#include "realtheta/theta.hpp"
#include "realtheta/verify.hpp"

using namespace realtheta;

namespace {

constexpr int kExitDecided = 0;
constexpr int kExitInputError = 1;
constexpr int kExitIndeterminate = 2;

std::string num(double v, int digits = 15) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

// "a", "bi", "a+bi", "a-bi", "i", "-i", with optional spaces.
std::complex<double> parse_complex(std::string s) {
  std::erase(s, ' ');
  auto bad = [&] { return Error(ErrorKind::ParseError, "cannot read complex number \"" + s + "\""); };
  if (s.empty()) throw bad();
  const char* p = s.c_str();
  const char* end = p + s.size();
  auto imag_unit = [&](const char* q, double sign) -> std::optional<double> {
    if (q + 1 == end && *q == 'i') return sign;
    return std::nullopt;
  };
  if (auto v = imag_unit(p, 1.0)) return {0.0, *v};
  if ((*p == '-' || *p == '+') && imag_unit(p + 1, *p == '-' ? -1.0 : 1.0)) return {0.0, *imag_unit(p + 1, *p == '-' ? -1.0 : 1.0)};

  char* q = nullptr;
  const double first = std::strtod(p, &q);
  if (q == p) throw bad();
  if (q == end) return {first, 0.0};
  if (*q == 'i' && q + 1 == end) return {0.0, first};
  if (*q != '+' && *q != '-') throw bad();
  if (auto v = imag_unit(q + 1, *q == '-' ? -1.0 : 1.0)) return {first, *v};
  char* r = nullptr;
  const double second = std::strtod(q, &r);
  if (r == q || r + 1 != end || *r != 'i') throw bad();
  return {first, second};
}

ComplexVector parse_complex_vector(const std::string& s, std::size_t g) {
  const auto parts = split(s, ',');
  if (parts.size() != g) {
    throw Error(ErrorKind::DimensionMismatch, "--z needs " + std::to_string(g) + " comma-separated entries");
  }
  ComplexVector z(static_cast<Eigen::Index>(g));
  for (std::size_t i = 0; i < g; ++i) z[static_cast<Eigen::Index>(i)] = parse_complex(parts[i]);
  return z;
}

IntVector parse_int_vector(const std::string& s, std::size_t g, const char* flag) {
  IntVector out;
  if (s.empty()) return IntVector(g, 0);
  for (const auto& part : split(s, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, std::string(flag) + ": \"" + part + "\" is not an integer");
    }
  }
  if (out.size() != g) {
    throw Error(ErrorKind::DimensionMismatch, std::string(flag) + " needs " + std::to_string(g) + " entries");
  }
  return out;
}

void print_report(const ClassificationReport& r) {
  std::string decision(to_string(r.decision));
  if (!r.critical) decision += " (non-critical type " + to_string(r.input_type) + ")";
  std::cout << "type: " << to_string(r.input_type) << (r.critical ? " critical" : " non-critical") << "\n";
  std::cout << "decision: " << decision << "\n";
  std::cout << "reason: " << r.reason << "\n";
  if (!r.topological_candidates.empty()) {
    std::cout << "topological types:";
    for (const auto& t : r.topological_candidates) std::cout << " " << to_string(t);
    std::cout << "\n";
  }
  if (r.witness_beta) {
    std::cout << "witness: " << to_string(*r.witness_beta) << " = " << num(*r.witness_value) << " +- "
              << num(*r.witness_error, 3) << "\n";
  }
  if (r.family) {
    std::cout << "family O:\n";
    for (const auto& e : r.family->entries) {
      std::cout << "  " << to_string(e.beta) << " " << num(e.value) << " +- " << num(e.abs_error, 3) << "\n";
    }
  }
  std::cout << "consistency: " << to_string(r.consistency) << "\n";
  std::cout << "theta evaluations: " << r.theta_evaluations << "\n";
  std::cout << "tolerances: tol=" << num(r.tol, 3) << " tol_classify=" << num(r.tol_classify, 3) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Real theta constants and the real-points criterion for real Riemann surfaces"};
  app.require_subcommand(1);
  app.fallthrough();

  EvalConfig cfg;
  std::uint64_t seed = 0;
  bool json = false;
  app.add_option("--tol", cfg.tol, "Target absolute error of theta values")
      ->envname("REALTHETA_TOL")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Seed for randomized commands");
  app.add_flag("--json", json, "Machine-readable output");

  auto* classify_cmd = app.add_subcommand("classify", "Decide whether a real period matrix has real points");
  std::string classify_file;
  double tol_classify = kDefaultTolClassify;
  bool all = false;
  classify_cmd->add_option("file", classify_file, "Period matrix file")->required();
  classify_cmd->add_option("--tol-classify", tol_classify, "Half-width of the undecided band around zero")
      ->check(CLI::PositiveNumber);
  classify_cmd->add_flag("--all", all, "Evaluate the O family even when no theta value is needed");

  auto* theta_cmd = app.add_subcommand("theta", "Evaluate a theta function with characteristics");
  std::string theta_file, z_text, alpha_text, beta_text;
  theta_cmd->add_option("--file", theta_file, "Period matrix file")->required();
  theta_cmd->add_option("--z", z_text, "Argument, comma-separated complex entries such as 0.5+0.2i");
  theta_cmd->add_option("--alpha", alpha_text, "Integer characteristic alpha, comma-separated");
  theta_cmd->add_option("--beta", beta_text, "Integer characteristic beta, comma-separated");

  auto* sets_cmd = app.add_subcommand("sets", "List the characteristic sets O, E, T or B");
  int sets_g = 0, sets_lambda = 0, sets_eps = 1;
  std::string which = "O";
  sets_cmd->add_option("--g", sets_g)->required();
  sets_cmd->add_option("--lambda", sets_lambda)->required();
  sets_cmd->add_option("--eps", sets_eps)->required();
  sets_cmd->add_option("--set", which)->check(CLI::IsMember({"O", "E", "T", "B"}));

  auto* verify_cmd = app.add_subcommand("verify", "Run the seeded property suites for an orthosymmetric type");
  VerifyOptions vopt;
  verify_cmd->add_option("--g", vopt.g)->required();
  verify_cmd->add_option("--lambda", vopt.lambda)->required();
  verify_cmd->add_option("--trials", vopt.trials)->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitInputError;
  }

  try {
    if (*classify_cmd) {
      const PeriodMatrixFile file = read_period_file(classify_file);
      const ClassificationReport r = classify(file.tau(), cfg, tol_classify, all);
      if (json) {
        std::cout << to_json(r).dump(2) << "\n";
      } else {
        print_report(r);
      }
      return r.decision == Decision::Indeterminate ? kExitIndeterminate : kExitDecided;
    }

    if (*theta_cmd) {
      const PeriodMatrixFile file = read_period_file(theta_file);
      const auto g = static_cast<std::size_t>(file.g);
      const ComplexVector z = z_text.empty() ? ComplexVector::Zero(file.g) : parse_complex_vector(z_text, g);
      const ThetaCharacteristic c{parse_int_vector(alpha_text, g, "--alpha"), parse_int_vector(beta_text, g, "--beta")};
      ThetaValue v;
      bool capped = false;
      try {
        v = theta(z, file.tau(), c, cfg);
      } catch (const RadiusCapHit& e) {
        std::cerr << "warning: " << e.what() << "\n";
        v = e.best();
        capped = true;
      }
      if (json) {
        auto out = to_json(v);
        out["radius_capped"] = capped;
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << "value: " << num(v.value.real(), 16) << (v.value.imag() < 0 ? " - " : " + ")
                  << num(std::abs(v.value.imag()), 16) << "i\n";
        std::cout << "abs_error: " << num(v.abs_error, 3) << "\n";
        std::cout << "terms_used: " << v.terms_used << "\n";
      }
      return capped ? kExitInputError : kExitDecided;
    }

    if (*sets_cmd) {
      const RealType t{sets_g, sets_lambda, sets_eps};
      if (auto why = real_type_violation(t)) {
        throw Error(ErrorKind::InadmissibleType, "real type " + to_string(t) + ": " + *why);
      }
      std::vector<CharClass> items;
      if (which == "O") items = enumerate_O(t);
      if (which == "E") items = enumerate_E(t);
      if (which == "T") items = enumerate_T(t);
      if (which == "B") items = enumerate_B(t);
      if (json) {
        nlohmann::ordered_json out;
        out["schema"] = kReportSchema;
        out["kind"] = "sets";
        out["type"] = to_json(t);
        out["set"] = which;
        nlohmann::ordered_json list = nlohmann::ordered_json::array();
        for (const auto& c : items) list.push_back(to_string(c));
        out["elements"] = std::move(list);
        out["cardinality"] = items.size();
        std::cout << out.dump(2) << "\n";
      } else {
        for (const auto& c : items) std::cout << to_string(c) << "\n";
        std::cout << "cardinality: " << items.size() << "\n";
      }
      return kExitDecided;
    }

    if (*verify_cmd) {
      vopt.seed = seed;
      vopt.cfg = cfg;
      const VerifyReport rep = run_verification(vopt);
      if (json) {
        std::cout << to_json(rep).dump(2) << "\n";
      } else {
        std::cout << "type " << to_string(rep.type) << ", seed " << rep.seed << ", " << rep.trials << " trials\n";
        for (const auto& p : rep.properties) {
          const char* status = p.skipped ? "SKIP" : (p.passed ? "PASS" : "FAIL");
          std::cout << status << " " << p.name;
          if (!p.skipped) std::cout << " trials=" << p.trials << " failures=" << p.failures << " worst=" << num(p.worst_residual, 3);
          if (!p.note.empty()) std::cout << " (" << p.note << ")";
          std::cout << "\n";
        }
        std::cout << (rep.all_passed() ? "all properties passed" : "some properties FAILED") << "\n";
      }
      return rep.all_passed() ? kExitDecided : kExitInputError;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
