#ifndef REALTHETA_PERIOD_FILE_HPP
#define REALTHETA_PERIOD_FILE_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "realtheta/classify.hpp"
#include "realtheta/intmat.hpp"
#include "realtheta/siegel.hpp"
#include "realtheta/theta.hpp"

namespace realtheta {

inline constexpr std::string_view kPeriodFileSchema = "realtheta.period_matrix/1";
inline constexpr std::string_view kReportSchema = "realtheta.report/1";

/// A real period matrix on disk:
///   {"schema": "realtheta.period_matrix/1", "g": 2,
///    "re2": [[0,1],[1,0]], "im": [[3,0],[0,3]], "label": "...", "source": "..."}
/// re2 is 2Re(tau) as exact integers (strings allowed for huge entries).
struct PeriodMatrixFile {
  int g = 0;
  IntMatrix re2;
  RealMatrix im;
  std::string label;
  std::string source;

  RiemannMatrix tau() const { return RiemannMatrix::semi_real(re2, im); }
};

/// Parses and validates. Failures raise ParseError (malformed document, with
/// line and column), DimensionMismatch, NotSymmetric or NotInSiegel; messages
/// start with "origin:line:" pointing at the offending field.
PeriodMatrixFile parse_period_file(std::string_view text, std::string_view origin = "<input>");
PeriodMatrixFile read_period_file(const std::filesystem::path& path);

std::string dump_period_file(const PeriodMatrixFile& file);
void write_period_file(const std::filesystem::path& path, const PeriodMatrixFile& file);

nlohmann::ordered_json to_json(const RealType& t);
nlohmann::ordered_json to_json(const ClassificationReport& report);
nlohmann::ordered_json to_json(const ThetaValue& value);

}  // namespace realtheta

#endif  // REALTHETA_PERIOD_FILE_HPP
