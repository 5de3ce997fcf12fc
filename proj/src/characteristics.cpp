#include "realtheta/characteristics.hpp"

#include <string>

#include "realtheta/error.hpp"

namespace realtheta {

namespace {

std::uint8_t mod2(std::int64_t v) { return static_cast<std::uint8_t>(v & 1); }

std::uint8_t mod2(const Integer& v) { return mpz_odd_p(v.get_mpz_t()) ? 1 : 0; }

void require_admissible(const RealType& t) {
  if (auto why = real_type_violation(t)) {
    throw Error(ErrorKind::InadmissibleType, "real type " + to_string(t) + ": " + *why);
  }
}

void require_orthosymmetric(const RealType& t) {
  require_admissible(t);
  if (t.epsilon != 1) {
    throw Error(ErrorKind::DiasymmetricInput, "type " + to_string(t) + " is diasymmetric (ε=0)");
  }
}

// All {0,1}^g vectors supported on the first lambda coordinates, in
// lexicographic order (beta_1 most significant).
template <typename Pred>
std::vector<CharClass> enumerate_supported(const RealType& t, Pred keep) {
  std::vector<CharClass> out;
  const int lambda = t.lambda;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << lambda); ++code) {
    CharClass c{std::vector<std::uint8_t>(t.g, 0)};
    for (int j = 0; j < lambda; ++j) c.bits[j] = (code >> (lambda - 1 - j)) & 1;
    if (keep(c)) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

std::string to_string(const CharClass& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.bits.size(); ++i) {
    if (i) s += ',';
    s += static_cast<char>('0' + c.bits[i]);
  }
  return s + ")";
}

CharClass canonical(const IntVector& beta) {
  CharClass c;
  c.bits.reserve(beta.size());
  for (std::int64_t v : beta) c.bits.push_back(mod2(v));
  return c;
}

Parity parity(const ThetaCharacteristic& c) {
  if (c.alpha.size() != c.beta.size()) {
    throw Error(ErrorKind::DimensionMismatch, "alpha and beta lengths differ");
  }
  std::uint8_t p = 0;
  for (std::size_t i = 0; i < c.alpha.size(); ++i) p ^= mod2(c.alpha[i]) & mod2(c.beta[i]);
  return p ? Parity::Odd : Parity::Even;
}

std::int64_t quadratic_form(const RealType& t, const IntVector& beta) {
  if (beta.size() != static_cast<std::size_t>(t.g)) {
    throw Error(ErrorKind::DimensionMismatch, "characteristic length differs from g");
  }
  std::int64_t q = 0;
  if (t.epsilon == 1) {
    const int half = t.lambda / 2;
    for (int j = 0; j < half; ++j) q += 2 * beta[j] * beta[j + half];
  } else {
    for (int j = 0; j < t.lambda; ++j) q += beta[j] * beta[j];
  }
  return q;
}

std::vector<CharClass> enumerate_O(const RealType& t) {
  require_admissible(t);
  return enumerate_supported(t, [&](const CharClass& c) {
    const std::int64_t q = quadratic_form(t, c.as_vector());
    return ((q % 4) + 4) % 4 == 2;
  });
}

std::vector<CharClass> enumerate_E(const RealType& t) {
  require_admissible(t);
  return enumerate_supported(t, [&](const CharClass& c) { return quadratic_form(t, c.as_vector()) % 4 == 0; });
}

std::vector<CharClass> enumerate_T(const RealType& t) {
  require_orthosymmetric(t);
  const int half = t.lambda / 2;
  std::vector<CharClass> out;
  for (auto& c : enumerate_E(t)) {
    bool ok = true;
    for (int j = 0; j < half && ok; ++j) ok = (c.bits[j] & c.bits[j + half]) == 0;
    if (ok) out.push_back(std::move(c));
  }
  return out;
}

std::vector<CharClass> enumerate_B(const RealType& t) {
  require_orthosymmetric(t);
  const int half = t.lambda / 2;
  return enumerate_supported(t, [&](const CharClass& c) {
    for (int k = 0; k < half; ++k)
      if (c.bits[k] * c.bits[half + k] != 0) return false;
    return true;
  });
}

IntMatrix symplectic_form(std::size_t g) {
  IntMatrix j(2 * g, 2 * g);
  for (std::size_t i = 0; i < g; ++i) {
    j(i, g + i) = 1;
    j(g + i, i) = -1;
  }
  return j;
}

bool is_symplectic(const IntMatrix& G) {
  if (!G.is_square() || G.rows() % 2 != 0) return false;
  const IntMatrix j = symplectic_form(G.rows() / 2);
  return G * j * G.transpose() == j;
}

ThetaCharacteristic act_full(const IntMatrix& G, const ThetaCharacteristic& c) {
  if (!G.is_square() || G.rows() != 2 * c.alpha.size() || c.alpha.size() != c.beta.size()) {
    throw Error(ErrorKind::DimensionMismatch, "G must be 2g x 2g for characteristics of length g");
  }
  if (!is_symplectic(G)) throw Error(ErrorKind::NotSymplectic, "G J G^T != J");
  const std::size_t g = c.alpha.size();
  auto blk = [&](std::size_t bi, std::size_t bj, std::size_t i, std::size_t j) -> const Integer& {
    return G(bi * g + i, bj * g + j);
  };
  ThetaCharacteristic out{IntVector(g), IntVector(g)};
  for (std::size_t i = 0; i < g; ++i) {
    Integer na = 0;
    Integer nb = 0;
    Integer cdt = 0;
    Integer abt = 0;
    for (std::size_t j = 0; j < g; ++j) {
      // new alpha = D alpha - C beta + diag(C D^T)
      na += blk(1, 1, i, j) * c.alpha[j] - blk(1, 0, i, j) * c.beta[j];
      // new beta = -B alpha + A beta + diag(A B^T)
      nb += -blk(0, 1, i, j) * c.alpha[j] + blk(0, 0, i, j) * c.beta[j];
      cdt += blk(1, 0, i, j) * blk(1, 1, i, j);
      abt += blk(0, 0, i, j) * blk(0, 1, i, j);
    }
    out.alpha[i] = mod2(Integer(na + cdt));
    out.beta[i] = mod2(Integer(nb + abt));
  }
  return out;
}

CharClass act_reduced(const RealModularElement& gm, const CharClass& c) {
  const std::size_t g = gm.dim();
  if (c.size() != g) throw Error(ErrorKind::DimensionMismatch, "class length differs from g");
  const IntMatrix& a = gm.a();
  const IntMatrix& half_diff = gm.b_at();  // (M - a M a^T)/2
  CharClass out{std::vector<std::uint8_t>(g, 0)};
  for (std::size_t i = 0; i < g; ++i) {
    std::uint8_t v = mod2(half_diff(i, i));
    for (std::size_t j = 0; j < g; ++j) v ^= mod2(a(i, j)) & c.bits[j];
    out.bits[i] = v;
  }
  return out;
}

int sign_symbol(const IntVector& m, const IntVector& beta, const RealType& t) {
  require_orthosymmetric(t);
  if (m.size() != static_cast<std::size_t>(t.g) || beta.size() != m.size()) {
    throw Error(ErrorKind::DimensionMismatch, "m and beta must have length g");
  }
  // m^T M m / 2 = sum_k m_k m_{k + lambda/2} for the orthosymmetric standard form.
  const int half = t.lambda / 2;
  std::uint8_t p = 0;
  for (int k = 0; k < half; ++k) p ^= mod2(m[k]) & mod2(m[k + half]);
  for (std::size_t k = 0; k < m.size(); ++k) p ^= mod2(m[k]) & mod2(beta[k]);
  return p ? -1 : 1;
}

}  // namespace realtheta
