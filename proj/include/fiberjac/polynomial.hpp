// Copyright 2026 The fiberjac Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fiberjac {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Accepts "3", "-7", "2/5". Throws InvalidInput otherwise.
BigRational parse_rational(std::string_view text);
std::string to_string(const BigRational& q);

/// Univariate polynomial in t over Q, coefficients from low to high degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<BigRational> coefficients);
  static Polynomial constant(BigRational c);
  /// c * t^degree
  static Polynomial monomial(BigRational c, int degree);
  /// t - root
  static Polynomial linear_factor(const BigRational& root);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<BigRational>& coefficients() const noexcept { return coeffs_; }
  BigRational coefficient(int i) const;
  const BigRational& leading() const;

  BigRational operator()(const BigRational& t) const;
  Polynomial derivative() const;
  Polynomial monic() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(const BigRational& c, const Polynomial& p);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  std::string to_string() const;

 private:
  void trim();
  std::vector<BigRational> coeffs_;
};

Polynomial pow(const Polynomial& p, int exponent);

/// Quotient and remainder; throws InvalidInput on division by zero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
/// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(Polynomial a, Polynomial b);

/// Order of vanishing; `infinite` for the zero polynomial.
struct Valuation {
  bool infinite = false;
  int value = 0;

  static Valuation infinity() { return {true, 0}; }
  static Valuation of(int v) { return {false, v}; }
  bool at_least(int v) const noexcept { return infinite || value >= v; }
  bool equals(int v) const noexcept { return !infinite && value == v; }
  std::string to_string() const { return infinite ? "inf" : std::to_string(value); }
  bool operator==(const Valuation&) const = default;
};

/// Multiplicity of t0 as a root of p.
Valuation valuation(const Polynomial& p, const BigRational& t0);
/// Largest k with factor^k dividing p; factor must have positive degree.
Valuation valuation(const Polynomial& p, const Polynomial& factor);

/// Distinct rational roots, ascending. Throws InvalidInput when a
/// coefficient is too large to split into primes by trial division.
std::vector<BigRational> rational_roots(const Polynomial& p);

/// Yun decomposition p = c * prod f_k^k with f_k monic, square-free and
/// pairwise coprime; entries with constant f_k are dropped.
std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& p);

}  // namespace fiberjac
