#ifndef REALTHETA_CHARACTERISTICS_HPP
#define REALTHETA_CHARACTERISTICS_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "realtheta/intmat.hpp"
#include "realtheta/siegel.hpp"

namespace realtheta {

using IntVector = std::vector<std::int64_t>;

/// Integral characteristic [alpha; beta].
struct ThetaCharacteristic {
  IntVector alpha;
  IntVector beta;

  static ThetaCharacteristic zero(std::size_t g) { return {IntVector(g, 0), IntVector(g, 0)}; }
  /// [0; beta].
  static ThetaCharacteristic from_beta(IntVector beta) {
    return {IntVector(beta.size(), 0), std::move(beta)};
  }

  friend bool operator==(const ThetaCharacteristic&, const ThetaCharacteristic&) = default;
};

/// Class [beta]_2 of a characteristic [0; beta], stored as a {0,1} vector.
/// Ordering is lexicographic in beta_1, beta_2, ...
struct CharClass {
  std::vector<std::uint8_t> bits;

  std::size_t size() const noexcept { return bits.size(); }
  IntVector as_vector() const { return IntVector(bits.begin(), bits.end()); }

  friend auto operator<=>(const CharClass&, const CharClass&) = default;
};

std::string to_string(const CharClass& c);

enum class Parity { Even, Odd };

CharClass canonical(const IntVector& beta);

Parity parity(const ThetaCharacteristic& c);

/// Classes with beta^T M beta = 2 mod 4 and zero trailing g - lambda entries.
std::vector<CharClass> enumerate_O(const RealType& t);
/// Classes with beta^T M beta = 0 mod 4 and zero trailing g - lambda entries.
std::vector<CharClass> enumerate_E(const RealType& t);
/// Elements of E with beta_j * beta_{j + lambda/2} even. Orthosymmetric only.
std::vector<CharClass> enumerate_T(const RealType& t);
/// {0,1} vectors with beta_k * beta_{lambda/2 + k} = 0 and zero trailing
/// entries; 3^{lambda/2} of them. Orthosymmetric only.
std::vector<CharClass> enumerate_B(const RealType& t);

/// beta^T M beta for the standard form M of t.
std::int64_t quadratic_form(const RealType& t, const IntVector& beta);

/// Action on characteristics of a 2g x 2g symplectic matrix
/// G = [[A, B], [C, D]]:
///   [alpha; beta] -> [[D, -C], [-B, A]] [alpha; beta] + [diag(C D^T); diag(A B^T)],
/// reduced into {0,1}. Throws NotSymplectic unless G J G^T = J.
ThetaCharacteristic act_full(const IntMatrix& G, const ThetaCharacteristic& c);

/// [a*beta - diag(M - a M a^T)/2]_2.
CharClass act_reduced(const RealModularElement& gm, const CharClass& c);

/// exp(pi i (m^T M m / 2 + m^T beta)) as +1 or -1, by integer parity.
/// Throws DiasymmetricInput for epsilon = 0.
int sign_symbol(const IntVector& m, const IntVector& beta, const RealType& t);

/// The standard symplectic form [[0, Id], [-Id, 0]].
IntMatrix symplectic_form(std::size_t g);
bool is_symplectic(const IntMatrix& G);

}  // namespace realtheta

#endif  // REALTHETA_CHARACTERISTICS_HPP
