#pragma once

/**
 * @file ns_lattice.hpp
 * @brief Exact arithmetic in the Neron-Severi lattice of a plane blown up
 *        at nine points.
 *
 * A class is written a*l - (b1*e1 + ... + b9*e9), where l is the pullback of
 * a line and e1..e9 are the total transforms of the exceptional divisors.
 * The pairing is diagonal: l.l = 1, ei.ei = -1, all mixed products vanish.
 */

#include <array>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "conic/error.hpp"

namespace conic {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr std::size_t kBlownUpPoints = 9;
inline constexpr std::size_t kLatticeRank = kBlownUpPoints + 1;

class DivisorClass {
 public:
  /// Zero class.
  DivisorClass() = default;

  /// Coefficients in serialization order: degree first, then b1..b9.
  explicit DivisorClass(const std::array<Integer, kLatticeRank>& coefficients)
      : coeffs_(coefficients) {}

  DivisorClass(std::initializer_list<long long> coefficients) {
    if (coefficients.size() != kLatticeRank) {
      throw Error(ErrorCode::OutOfRange,
                  "a divisor class needs exactly 10 coefficients");
    }
    std::size_t i = 0;
    for (long long c : coefficients) coeffs_[i++] = c;
  }

  static DivisorClass line() {
    DivisorClass d;
    d.coeffs_[0] = 1;
    return d;
  }

  /// Total transform e_i of the i-th exceptional divisor, 1-based.
  static DivisorClass exceptional(std::size_t i) {
    if (i < 1 || i > kBlownUpPoints) {
      throw Error(ErrorCode::OutOfRange,
                  "exceptional index " + std::to_string(i) + " not in 1..9");
    }
    DivisorClass d;
    d.coeffs_[i] = -1;
    return d;
  }

  const Integer& degree() const { return coeffs_[0]; }
  /// Multiplicity b_i (1-based) in a*l - sum b_i e_i.
  const Integer& multiplicity(std::size_t i) const { return coeffs_.at(i); }
  const std::array<Integer, kLatticeRank>& coefficients() const {
    return coeffs_;
  }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  DivisorClass& operator+=(const DivisorClass& other) {
    for (std::size_t i = 0; i < kLatticeRank; ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
  }
  DivisorClass& operator-=(const DivisorClass& other) {
    for (std::size_t i = 0; i < kLatticeRank; ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
  }
  DivisorClass& operator*=(const Integer& k) {
    for (auto& c : coeffs_) c *= k;
    return *this;
  }

  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator*(const Integer& k, DivisorClass a) { return a *= k; }
  friend DivisorClass operator*(long long k, DivisorClass a) { return a *= Integer(k); }
  friend DivisorClass operator-(DivisorClass a) { return a *= Integer(-1); }

  friend bool operator==(const DivisorClass& a, const DivisorClass& b) {
    return a.coeffs_ == b.coeffs_;
  }

  /// Lexicographic order on (a, b1, ..., b9).
  friend bool operator<(const DivisorClass& a, const DivisorClass& b) {
    return a.coeffs_ < b.coeffs_;
  }

 private:
  std::array<Integer, kLatticeRank> coeffs_{};
};

/// "3l - e1 - e2" style rendering.
inline std::string to_string(const DivisorClass& d) {
  std::string out;
  auto term = [&out](const Integer& coeff, const std::string& symbol) {
    if (coeff == 0) return;
    const bool negative = coeff < 0;
    const Integer magnitude = negative ? Integer(-coeff) : coeff;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (magnitude != 1) out += magnitude.str();
    out += symbol;
  };
  term(d.degree(), "l");
  for (std::size_t i = 1; i < kLatticeRank; ++i)
    term(Integer(-d.multiplicity(i)), "e" + std::to_string(i));
  return out.empty() ? "0" : out;
}

inline std::ostream& operator<<(std::ostream& os, const DivisorClass& d) {
  return os << to_string(d);
}

/// Intersection pairing of signature (1,9).
inline Integer intersect(const DivisorClass& d1, const DivisorClass& d2) {
  Integer value = d1.degree() * d2.degree();
  for (std::size_t i = 1; i < kLatticeRank; ++i)
    value -= d1.multiplicity(i) * d2.multiplicity(i);
  return value;
}

inline Integer self_intersection(const DivisorClass& d) { return intersect(d, d); }

/// K = -3l + e1 + ... + e9.
inline DivisorClass canonical_class() {
  return DivisorClass{-3, -1, -1, -1, -1, -1, -1, -1, -1, -1};
}

/// -K = 3l - e1 - ... - e9, the class of every fiber of the elliptic fibration.
inline DivisorClass anticanonical_class() {
  return DivisorClass{3, 1, 1, 1, 1, 1, 1, 1, 1, 1};
}

/// D.(-K), the number of points a curve in |D| meets a general elliptic fiber.
inline Integer anticanonical_degree(const DivisorClass& d) {
  return intersect(d, anticanonical_class());
}

/// Adjunction: p_a(D) = 1 + (D^2 + D.K)/2.
inline Rational arithmetic_genus(const DivisorClass& d) {
  const Integer twice = self_intersection(d) + intersect(d, canonical_class());
  return Rational(1) + Rational(twice, Integer(2));
}

/// Riemann-Roch with chi(O_X) = 1: chi(D) = 1 + (D^2 - D.K)/2.
/// D^2 - D.K = a(a+3) - sum b(b+1) is always even, so the result is integral.
inline Integer riemann_roch_chi(const DivisorClass& d) {
  const Integer twice = self_intersection(d) - intersect(d, canonical_class());
  return 1 + twice / 2;
}

/// D^2 = 0 and D.(-K) = 2; nefness is a separate, inventory-relative test.
inline bool is_conic_class_numeric(const DivisorClass& d) {
  return self_intersection(d) == 0 && anticanonical_degree(d) == 2;
}

}  // namespace conic
