#include "realtheta/intmat.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <utility>

#include "realtheta/error.hpp"

namespace realtheta {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InadmissibleType: return "InadmissibleType";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::CongruenceViolated: return "CongruenceViolated";
    case ErrorKind::NotSymplectic: return "NotSymplectic";
    case ErrorKind::DiasymmetricInput: return "DiasymmetricInput";
    case ErrorKind::NotInSiegel: return "NotInSiegel";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::RealityViolated: return "RealityViolated";
    case ErrorKind::InvalidQ: return "InvalidQ";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NonIntegralDoubledRealPart: return "NonIntegralDoubledRealPart";
    case ErrorKind::NotStandardForm: return "NotStandardForm";
    case ErrorKind::SamplingExhausted: return "SamplingExhausted";
    case ErrorKind::RadiusCapHit: return "RadiusCapHit";
    case ErrorKind::NumericalRange: return "NumericalRange";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
    }
    for (long v : row) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
}

IntMatrix IntMatrix::mod2() const {
  IntMatrix r(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = mpz_odd_p(data_[k].get_mpz_t()) ? 1 : 0;
  return r;
}

bool IntMatrix::congruent_mod2(const IntMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return false;
  for (std::size_t k = 0; k < data_.size(); ++k) {
    if (mpz_odd_p(data_[k].get_mpz_t()) != mpz_odd_p(other.data_[k].get_mpz_t())) return false;
  }
  return true;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    throw Error(ErrorKind::DimensionMismatch, "matrix sum of different shapes");
  }
  IntMatrix r(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.data_[k] + b.data_[k];
  return r;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    throw Error(ErrorKind::DimensionMismatch, "matrix difference of different shapes");
  }
  IntMatrix r(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.data_[k] - b.data_[k];
  return r;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) {
    throw Error(ErrorKind::DimensionMismatch, "matrix product of incompatible shapes");
  }
  IntMatrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

IntMatrix operator*(const Integer& s, const IntMatrix& a) {
  IntMatrix r = a;
  for (auto& v : r.data_) v *= s;
  return r;
}

std::vector<Integer> operator*(const IntMatrix& a, const std::vector<Integer>& v) {
  if (a.cols() != v.size()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix-vector product of incompatible shapes");
  }
  std::vector<Integer> r(a.rows(), Integer(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
  return r;
}

IntMatrix IntMatrix::divide_exact(long divisor) const {
  IntMatrix r(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) {
    if (!mpz_divisible_ui_p(data_[k].get_mpz_t(), static_cast<unsigned long>(divisor < 0 ? -divisor : divisor))) {
      throw Error(ErrorKind::PreconditionViolated,
                  "entry " + data_[k].get_str() + " not divisible by " + std::to_string(divisor));
    }
    r.data_[k] = data_[k] / divisor;
  }
  return r;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ',';
      os << (*this)(i, j).get_str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

// Bareiss fraction-free elimination.
Integer determinant(const IntMatrix& a) {
  if (!a.is_square()) throw Error(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
  if (!a.is_square()) throw Error(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = a.rows();
  std::vector<mpq_class> m(n * 2 * n);
  auto at = [&](std::size_t i, std::size_t j) -> mpq_class& { return m[i * 2 * n + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) at(i, j) = mpq_class(a(i, j));
    at(i, n + i) = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && at(p, col) == 0) ++p;
    if (p == n) throw Error(ErrorKind::NotUnimodular, "matrix is singular");
    if (p != col)
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(at(p, j), at(col, j));
    const mpq_class pivot = at(col, col);
    for (std::size_t j = 0; j < 2 * n; ++j) at(col, j) /= pivot;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || at(i, col) == 0) continue;
      const mpq_class f = at(i, col);
      for (std::size_t j = 0; j < 2 * n; ++j) at(i, j) -= f * at(col, j);
    }
  }
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const mpq_class& v = at(i, n + j);
      if (v.get_den() != 1) throw Error(ErrorKind::NotUnimodular, "inverse is not integral");
      inv(i, j) = v.get_num();
    }
  return inv;
}

SymIntMatrix::SymIntMatrix(IntMatrix m) : m_(std::move(m)) {
  if (!m_.is_square()) throw Error(ErrorKind::DimensionMismatch, "reflection matrix must be square");
  if (!m_.is_symmetric()) throw Error(ErrorKind::NotSymmetric, "matrix " + m_.to_string() + " is not symmetric");
}

std::string to_string(const RealType& t) {
  return "(" + std::to_string(t.g) + "," + std::to_string(t.lambda) + "," + std::to_string(t.epsilon) + ")";
}

std::string to_string(const TopologicalType& t) {
  return "(" + std::to_string(t.g) + "," + std::to_string(t.k) + "," + std::to_string(t.delta) + ")";
}

int rank_mod2(const IntMatrix& m) {
  const std::size_t words = (m.cols() + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows(m.rows(), std::vector<std::uint64_t>(words, 0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (mpz_odd_p(m(i, j).get_mpz_t())) rows[i][j / 64] |= std::uint64_t{1} << (j % 64);

  int rank = 0;
  std::size_t next = 0;
  for (std::size_t col = 0; col < m.cols() && next < rows.size(); ++col) {
    const std::size_t w = col / 64;
    const std::uint64_t bit = std::uint64_t{1} << (col % 64);
    std::size_t p = next;
    while (p < rows.size() && !(rows[p][w] & bit)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[next]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != next && (rows[i][w] & bit)) {
        for (std::size_t k = 0; k < words; ++k) rows[i][k] ^= rows[next][k];
      }
    }
    ++next;
    ++rank;
  }
  return rank;
}

RealType real_type_of(const SymIntMatrix& m) {
  RealType t;
  t.g = static_cast<int>(m.dim());
  t.lambda = rank_mod2(m.matrix());
  t.epsilon = 1;
  for (std::size_t k = 0; k < m.dim(); ++k) {
    if (mpz_odd_p(m(k, k).get_mpz_t())) {
      t.epsilon = 0;
      break;
    }
  }
  return t;
}

std::optional<std::string> real_type_violation(const RealType& t) {
  if (t.g < 1) return "g must be at least 1";
  if (t.epsilon != 0 && t.epsilon != 1) return "ε must be 0 or 1";
  if (t.lambda < 0 || t.lambda > t.g) return "λ must lie in [0, g]";
  if (t.epsilon == 1 && t.lambda % 2 != 0) return "λ must be even when ε=1";
  if (t.epsilon == 0 && t.lambda < 1) return "λ must be at least 1 when ε=0";
  return std::nullopt;
}

bool is_admissible_real_type(const RealType& t) { return !real_type_violation(t).has_value(); }

std::optional<std::string> topological_type_violation(const TopologicalType& t) {
  if (t.g < 1) return "g must be at least 1";
  if (t.delta == 1) {
    if (t.k < 1 || t.k > t.g + 1) return "k must lie in [1, g+1] when δ=1";
    if ((t.g + 1 - t.k) % 2 != 0) return "k must be congruent to g+1 mod 2 when δ=1";
    return std::nullopt;
  }
  if (t.delta == 0) {
    if (t.k < 0 || t.k > t.g) return "k must lie in [0, g] when δ=0";
    return std::nullopt;
  }
  return "δ must be 0 or 1";
}

bool is_admissible_topological_type(const TopologicalType& t) {
  return !topological_type_violation(t).has_value();
}

RealType topological_to_real(const TopologicalType& t) {
  if (auto why = topological_type_violation(t)) {
    throw Error(ErrorKind::InadmissibleType, "topological type " + to_string(t) + ": " + *why);
  }
  if (t.k > 0) return {t.g, t.g + 1 - t.k, t.delta};
  return {t.g, 2 * (t.g / 2), 1};
}

std::vector<TopologicalType> real_to_topological_candidates(const RealType& t) {
  if (auto why = real_type_violation(t)) {
    throw Error(ErrorKind::InadmissibleType, "real type " + to_string(t) + ": " + *why);
  }
  std::vector<TopologicalType> out;
  for (int k = 0; k <= t.g + 1; ++k) {
    for (int delta = 0; delta <= 1; ++delta) {
      const TopologicalType c{t.g, k, delta};
      if (is_admissible_topological_type(c) && topological_to_real(c) == t) out.push_back(c);
    }
  }
  return out;
}

bool is_critical(const RealType& t) { return t.epsilon == 1 && t.lambda == 2 * (t.g / 2); }

SymIntMatrix standard_form(const RealType& t) {
  if (auto why = real_type_violation(t)) {
    throw Error(ErrorKind::InadmissibleType, "real type " + to_string(t) + ": " + *why);
  }
  IntMatrix m(t.g, t.g);
  if (t.epsilon == 1) {
    const int half = t.lambda / 2;
    for (int j = 0; j < half; ++j) {
      m(j, j + half) = 1;
      m(j + half, j) = 1;
    }
  } else {
    for (int j = 0; j < t.lambda; ++j) m(j, j) = 1;
  }
  return SymIntMatrix(std::move(m));
}

}  // namespace realtheta
