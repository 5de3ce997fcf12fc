#ifndef REALTHETA_INTMAT_HPP
#define REALTHETA_INTMAT_HPP

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace realtheta {

using Integer = mpz_class;

/// Dense integer matrix with arbitrary-precision entries, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix zero(std::size_t n) { return IntMatrix(n, n); }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix transpose() const;
  bool is_symmetric() const;
  bool is_zero() const;
  /// Entrywise reduction into {0,1}.
  IntMatrix mod2() const;
  bool congruent_mod2(const IntMatrix& other) const;

  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const Integer& s, const IntMatrix& a);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  /// Exact division of every entry; throws PreconditionViolated if some entry
  /// is not divisible.
  IntMatrix divide_exact(long divisor) const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

std::vector<Integer> operator*(const IntMatrix& a, const std::vector<Integer>& v);

Integer determinant(const IntMatrix& a);

/// Inverse of a unimodular matrix; throws NotUnimodular otherwise.
IntMatrix unimodular_inverse(const IntMatrix& a);

/// Symmetric integral matrix. Construction checks symmetry.
class SymIntMatrix {
 public:
  explicit SymIntMatrix(IntMatrix m);

  std::size_t dim() const noexcept { return m_.rows(); }
  const IntMatrix& matrix() const noexcept { return m_; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  friend bool operator==(const SymIntMatrix& a, const SymIntMatrix& b) = default;

 private:
  IntMatrix m_;
};

/// (g, lambda, epsilon): lambda is the rank of the reflection matrix mod 2,
/// epsilon = 1 (orthosymmetric) iff every diagonal entry is even.
struct RealType {
  int g = 1;
  int lambda = 0;
  int epsilon = 1;

  friend auto operator<=>(const RealType&, const RealType&) = default;
};

/// (g, k, delta): genus, number of ovals, separatedness.
struct TopologicalType {
  int g = 1;
  int k = 0;
  int delta = 0;

  friend auto operator<=>(const TopologicalType&, const TopologicalType&) = default;
};

std::string to_string(const RealType& t);
std::string to_string(const TopologicalType& t);

int rank_mod2(const IntMatrix& m);

RealType real_type_of(const SymIntMatrix& m);

/// Names the violated constraint, or nullopt when the type is admissible.
std::optional<std::string> real_type_violation(const RealType& t);
bool is_admissible_real_type(const RealType& t);

std::optional<std::string> topological_type_violation(const TopologicalType& t);
bool is_admissible_topological_type(const TopologicalType& t);

RealType topological_to_real(const TopologicalType& t);

/// Every admissible topological type mapping onto t, ordered by k.
std::vector<TopologicalType> real_to_topological_candidates(const RealType& t);

/// The real type (g, 2*floor(g/2), 1) that reflection matrices cannot resolve.
bool is_critical(const RealType& t);

SymIntMatrix standard_form(const RealType& t);

}  // namespace realtheta

#endif  // REALTHETA_INTMAT_HPP
