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

#include "fiberjac/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "fiberjac/error.hpp"

namespace fiberjac {

namespace mp = boost::multiprecision;

BigRational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  auto is_integer = [](std::string_view v) {
    if (!v.empty() && (v.front() == '-' || v.front() == '+')) v.remove_prefix(1);
    return !v.empty() && std::all_of(v.begin(), v.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  const auto slash = s.find('/');
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!is_integer(num) || !is_integer(den) || den.front() == '-' || den.front() == '+')
    throw InvalidInput("not an exact rational: '" + std::string(text) + "'");
  const BigInt n(num.front() == '+' ? num.substr(1) : num);
  const BigInt d(den);
  if (d == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
  return BigRational(n, d);
}

std::string to_string(const BigRational& q) {
  const BigInt n = mp::numerator(q);
  const BigInt d = mp::denominator(q);
  return d == 1 ? n.str() : n.str() + "/" + d.str();
}

Polynomial::Polynomial(std::vector<BigRational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

Polynomial Polynomial::constant(BigRational c) { return Polynomial({std::move(c)}); }

Polynomial Polynomial::monomial(BigRational c, int degree) {
  std::vector<BigRational> v(static_cast<std::size_t>(degree) + 1, BigRational(0));
  v.back() = std::move(c);
  return Polynomial(std::move(v));
}

Polynomial Polynomial::linear_factor(const BigRational& root) { return Polynomial({-root, BigRational(1)}); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigRational Polynomial::coefficient(int i) const {
  return (i >= 0 && i < static_cast<int>(coeffs_.size())) ? coeffs_[static_cast<std::size_t>(i)] : BigRational(0);
}

const BigRational& Polynomial::leading() const {
  if (coeffs_.empty()) throw InvalidInput("zero polynomial has no leading coefficient");
  return coeffs_.back();
}

BigRational Polynomial::operator()(const BigRational& t) const {
  BigRational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<BigRational> out;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) out.push_back(coeffs_[i] * static_cast<long long>(i));
  return Polynomial(std::move(out));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  const BigRational lead = leading();
  Polynomial out = *this;
  for (auto& c : out.coeffs_) c /= lead;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), BigRational(0));
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), BigRational(0));
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  if (is_zero() || other.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<BigRational> out(coeffs_.size() + other.coeffs_.size() - 1, BigRational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
  coeffs_ = std::move(out);
  trim();
  return *this;
}

Polynomial operator*(const BigRational& c, const Polynomial& p) {
  return Polynomial::constant(c) * p;
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const BigRational& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const bool negative = c < 0;
    const BigRational mag = negative ? BigRational(-c) : c;
    if (out.empty()) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    const bool unit = mag == 1;
    if (!unit || i == 0) out += fiberjac::to_string(mag);
    if (i >= 1) out += (!unit ? "*t" : "t");
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

Polynomial pow(const Polynomial& p, int exponent) {
  Polynomial out = Polynomial::constant(1);
  for (int i = 0; i < exponent; ++i) out *= p;
  return out;
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw InvalidInput("polynomial division by zero");
  std::vector<BigRational> rem = a.coefficients();
  const int db = b.degree();
  const int da = a.degree();
  if (da < db) return {Polynomial(), a};
  std::vector<BigRational> quot(static_cast<std::size_t>(da - db) + 1, BigRational(0));
  const BigRational& lead = b.leading();
  for (int i = da; i >= db; --i) {
    const BigRational c = rem[static_cast<std::size_t>(i)] / lead;
    quot[static_cast<std::size_t>(i - db)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= c * b.coefficient(j);
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Valuation valuation(const Polynomial& p, const BigRational& t0) {
  return valuation(p, Polynomial::linear_factor(t0));
}

Valuation valuation(const Polynomial& p, const Polynomial& factor) {
  if (factor.degree() < 1) throw InvalidInput("valuation needs a factor of positive degree");
  if (p.is_zero()) return Valuation::infinity();
  int k = 0;
  Polynomial rest = p;
  for (;;) {
    auto [q, r] = divmod(rest, factor);
    if (!r.is_zero()) break;
    rest = std::move(q);
    ++k;
  }
  return Valuation::of(k);
}

namespace {

// Integer polynomial with the same roots: denominators cleared, content removed.
std::vector<BigInt> primitive_integer(const Polynomial& p) {
  BigInt lcm = 1;
  for (const auto& c : p.coefficients()) lcm = mp::lcm(lcm, BigInt(mp::denominator(c)));
  std::vector<BigInt> out;
  BigInt content = 0;
  for (const auto& c : p.coefficients()) {
    BigInt v = mp::numerator(c) * (lcm / mp::denominator(c));
    content = mp::gcd(content, v);
    out.push_back(std::move(v));
  }
  if (content != 0)
    for (auto& v : out) v /= content;
  return out;
}

std::map<BigInt, int> factorize(BigInt n) {
  constexpr unsigned kTrialLimit = 1'000'000;
  std::map<BigInt, int> out;
  if (n < 0) n = -n;
  for (unsigned f = 2; f <= kTrialLimit && BigInt(f) * f <= n; ++f) {
    while (n % f == 0) {
      ++out[BigInt(f)];
      n /= f;
    }
  }
  if (n > 1) {
    if (n > BigInt(kTrialLimit) * kTrialLimit)
      throw InvalidInput("coefficient too large for exact rational root search (cofactor " + n.str() + ")");
    ++out[n];
  }
  return out;
}

std::vector<BigInt> divisors(const BigInt& n) {
  std::vector<BigInt> out{1};
  for (const auto& [prime, exp] : factorize(n)) {
    const std::size_t base = out.size();
    BigInt power = 1;
    for (int e = 1; e <= exp; ++e) {
      power *= prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * power);
    }
  }
  return out;
}

}  // namespace

std::vector<BigRational> rational_roots(const Polynomial& p) {
  if (p.is_zero()) throw InvalidInput("the zero polynomial has every number as a root");
  std::vector<BigRational> roots;
  Polynomial rest = p;
  if (rest.coefficient(0) == 0) {
    roots.emplace_back(0);
    while (rest.coefficient(0) == 0) rest = divmod(rest, Polynomial::monomial(1, 1)).first;
  }
  if (rest.degree() >= 1) {
    // Square-free part keeps the coefficients to factor small.
    const Polynomial sqfree = divmod(rest, gcd(rest, rest.derivative())).first;
    const auto ints = primitive_integer(sqfree);
    for (const auto& num : divisors(ints.front())) {
      for (const auto& den : divisors(ints.back())) {
        for (int sign : {1, -1}) {
          const BigRational candidate(BigInt(num * sign), den);
          if (sqfree(candidate) == 0 && std::find(roots.begin(), roots.end(), candidate) == roots.end())
            roots.push_back(candidate);
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& p) {
  std::vector<std::pair<Polynomial, int>> out;
  if (p.degree() < 1) return out;
  const Polynomial f = p.monic();
  const Polynomial df = f.derivative();
  const Polynomial a0 = gcd(f, df);
  Polynomial b = divmod(f, a0).first;
  Polynomial c = divmod(df, a0).first;
  Polynomial d = c - b.derivative();
  for (int i = 1; b.degree() >= 1; ++i) {
    const Polynomial a = gcd(b, d);
    b = divmod(b, a).first;
    c = divmod(d, a).first;
    d = c - b.derivative();
    if (a.degree() >= 1) out.emplace_back(a, i);
  }
  return out;
}

}  // namespace fiberjac
