#include "realtheta/period_file.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "realtheta/error.hpp"

namespace realtheta {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// 1-based line of the first occurrence of "key", or 0.
std::size_t line_of_key(std::string_view text, std::string_view key) {
  const std::string quoted = "\"" + std::string(key) + "\"";
  const auto pos = text.find(quoted);
  if (pos == std::string_view::npos) return 0;
  return static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n')) + 1;
}

class Diagnostics {
 public:
  Diagnostics(std::string_view text, std::string_view origin) : text_(text), origin_(origin) {}

  [[noreturn]] void fail(ErrorKind kind, std::string_view key, const std::string& message) const {
    throw Error(kind, std::string(origin_) + ":" + std::to_string(line_of_key(text_, key)) + ": " + message);
  }

 private:
  std::string_view text_;
  std::string_view origin_;
};

Integer parse_integer(const json& v, const Diagnostics& diag, const std::string& where) {
  if (v.is_number_integer()) {
    return v.is_number_unsigned() ? Integer(std::to_string(v.get<std::uint64_t>()))
                                  : Integer(std::to_string(v.get<std::int64_t>()));
  }
  if (v.is_string()) {
    Integer out;
    if (out.set_str(v.get<std::string>(), 10) == 0) return out;
  }
  diag.fail(ErrorKind::ParseError, "re2", where + " must be an integer, got " + v.dump());
}

template <typename F>
void for_each_entry(const json& doc, std::string_view key, std::size_t g, const Diagnostics& diag, F f) {
  const json& rows = doc.at(std::string(key));
  if (!rows.is_array() || rows.size() != g) {
    diag.fail(ErrorKind::DimensionMismatch, key, std::string(key) + " must have g = " + std::to_string(g) + " rows");
  }
  for (std::size_t i = 0; i < g; ++i) {
    if (!rows[i].is_array() || rows[i].size() != g) {
      diag.fail(ErrorKind::DimensionMismatch, key,
                std::string(key) + " row " + std::to_string(i) + " must have " + std::to_string(g) + " entries");
    }
    for (std::size_t j = 0; j < g; ++j) f(i, j, rows[i][j]);
  }
}

ordered_json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

}  // namespace

PeriodMatrixFile parse_period_file(std::string_view text, std::string_view origin) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto byte = std::min<std::size_t>(e.byte, text.size());
    const auto upto = text.substr(0, byte > 0 ? byte - 1 : 0);
    const auto line = static_cast<std::size_t>(std::count(upto.begin(), upto.end(), '\n')) + 1;
    const auto nl = upto.rfind('\n');
    const auto col = nl == std::string_view::npos ? upto.size() + 1 : upto.size() - nl;
    throw Error(ErrorKind::ParseError, std::string(origin) + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                           ": malformed document (" + e.what() + ")");
  }
  const Diagnostics diag(text, origin);
  if (!doc.is_object()) diag.fail(ErrorKind::ParseError, "", "top level must be an object");
  if (doc.contains("schema") && doc["schema"] != std::string(kPeriodFileSchema)) {
    diag.fail(ErrorKind::ParseError, "schema", "unsupported schema " + doc["schema"].dump());
  }
  for (const char* key : {"g", "re2", "im"}) {
    if (!doc.contains(key)) diag.fail(ErrorKind::ParseError, "", std::string("missing field \"") + key + "\"");
  }
  if (!doc["g"].is_number_integer() || doc["g"].get<std::int64_t>() < 1 || doc["g"].get<std::int64_t>() > 64) {
    diag.fail(ErrorKind::ParseError, "g", "g must be an integer in [1, 64]");
  }

  PeriodMatrixFile out;
  out.g = doc["g"].get<int>();
  const auto g = static_cast<std::size_t>(out.g);
  out.re2 = IntMatrix(g, g);
  out.im = RealMatrix(out.g, out.g);
  for_each_entry(doc, "re2", g, diag, [&](std::size_t i, std::size_t j, const json& v) {
    out.re2(i, j) = parse_integer(v, diag, "re2[" + std::to_string(i) + "][" + std::to_string(j) + "]");
  });
  for_each_entry(doc, "im", g, diag, [&](std::size_t i, std::size_t j, const json& v) {
    if (!v.is_number()) {
      diag.fail(ErrorKind::ParseError, "im",
                "im[" + std::to_string(i) + "][" + std::to_string(j) + "] must be a number, got " + v.dump());
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) diag.fail(ErrorKind::ParseError, "im", "im entries must be finite");
    out.im(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = d;
  });
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) diag.fail(ErrorKind::ParseError, "label", "label must be a string");
    out.label = doc["label"].get<std::string>();
  }
  if (doc.contains("source")) {
    if (!doc["source"].is_string()) diag.fail(ErrorKind::ParseError, "source", "source must be a string");
    out.source = doc["source"].get<std::string>();
  }

  if (!out.re2.is_symmetric()) diag.fail(ErrorKind::NotSymmetric, "re2", "re2 is not symmetric");
  const double scale = std::max(1.0, out.im.cwiseAbs().maxCoeff());
  for (int i = 0; i < out.g; ++i)
    for (int j = i + 1; j < out.g; ++j)
      if (std::abs(out.im(i, j) - out.im(j, i)) > 1e-12 * scale) {
        diag.fail(ErrorKind::NotSymmetric, "im",
                  "im is not symmetric: im[" + std::to_string(i) + "][" + std::to_string(j) + "] != im[" +
                      std::to_string(j) + "][" + std::to_string(i) + "]");
      }
  if (!validate_riemann(out.tau())) diag.fail(ErrorKind::NotInSiegel, "im", "im is not positive definite");
  return out;
}

PeriodMatrixFile read_period_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, path.string() + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_period_file(buf.str(), path.string());
}

std::string dump_period_file(const PeriodMatrixFile& file) {
  ordered_json doc;
  doc["schema"] = kPeriodFileSchema;
  doc["g"] = file.g;
  ordered_json re2 = ordered_json::array();
  ordered_json im = ordered_json::array();
  for (int i = 0; i < file.g; ++i) {
    ordered_json r = ordered_json::array();
    ordered_json m = ordered_json::array();
    for (int j = 0; j < file.g; ++j) {
      r.push_back(integer_json(file.re2(i, j)));
      m.push_back(file.im(i, j));
    }
    re2.push_back(std::move(r));
    im.push_back(std::move(m));
  }
  doc["re2"] = std::move(re2);
  doc["im"] = std::move(im);
  if (!file.label.empty()) doc["label"] = file.label;
  if (!file.source.empty()) doc["source"] = file.source;
  return doc.dump(2) + "\n";
}

void write_period_file(const std::filesystem::path& path, const PeriodMatrixFile& file) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::ParseError, path.string() + ": cannot write file");
  out << dump_period_file(file);
}

ordered_json to_json(const RealType& t) { return {{"g", t.g}, {"lambda", t.lambda}, {"epsilon", t.epsilon}}; }

ordered_json to_json(const ClassificationReport& r) {
  ordered_json out;
  out["schema"] = kReportSchema;
  out["kind"] = "classification";
  out["input_type"] = to_json(r.input_type);
  out["critical"] = r.critical;
  out["decision"] = to_string(r.decision);
  out["reason"] = r.reason;
  ordered_json cands = ordered_json::array();
  for (const TopologicalType& t : r.topological_candidates) cands.push_back({{"g", t.g}, {"k", t.k}, {"delta", t.delta}});
  out["topological_candidates"] = std::move(cands);
  out["witness"] = nullptr;
  if (r.witness_beta) {
    out["witness"] = {{"beta", to_string(*r.witness_beta)}, {"value", *r.witness_value}, {"abs_error", *r.witness_error}};
  }
  out["consistency"] = to_string(r.consistency);
  out["family_O"] = nullptr;
  if (r.family) {
    ordered_json entries = ordered_json::array();
    for (const FamilyEntry& e : r.family->entries) {
      entries.push_back({{"beta", to_string(e.beta)}, {"value", e.value}, {"abs_error", e.abs_error}});
    }
    out["family_O"] = std::move(entries);
  }
  out["theta_evaluations"] = r.theta_evaluations;
  out["tolerances"] = {{"tol", r.tol}, {"tol_classify", r.tol_classify}};
  return out;
}

ordered_json to_json(const ThetaValue& v) {
  ordered_json out;
  out["schema"] = kReportSchema;
  out["kind"] = "theta";
  out["value"] = {{"re", v.value.real()}, {"im", v.value.imag()}};
  out["abs_error"] = v.abs_error;
  out["terms_used"] = v.terms_used;
  out["log_scale"] = v.log_scale;
  out["radius"] = v.radius;
  return out;
}

}  // namespace realtheta
