/*
 * Copyright 2026 The hcbcache Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "exact.hpp"

#include <cctype>

#include "error.hpp"

namespace hcb {

BigInt factorial(std::int64_t n) {
  if (n < 0) throw InvalidInput("factorial of negative number");
  BigInt r = 1;
  for (std::int64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BigInt ipow(const BigInt& base, std::int64_t exp) {
  if (exp < 0) throw InvalidInput("negative exponent");
  return boost::multiprecision::pow(base, static_cast<unsigned>(exp));
}

bool is_integer(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1;
}

std::string to_string(const BigInt& z) { return z.str(); }

std::string to_string(const Rational& q) {
  const BigInt& den = boost::multiprecision::denominator(q);
  if (den == 1) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + den.str();
}

namespace {

BigInt parse_integer(const std::string& s, const std::string& whole) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  if (i == s.size()) throw ParseError("not a number: '" + whole + "'");
  BigInt r = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw ParseError("not a number: '" + whole + "'");
    r = r * 10 + (s[i] - '0');
  }
  return neg ? BigInt(-r) : r;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) throw ParseError("empty number");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    BigInt num = parse_integer(trim(s.substr(0, slash)), s);
    BigInt den = parse_integer(trim(s.substr(slash + 1)), s);
    if (den == 0) throw ParseError("zero denominator: '" + s + "'");
    return Rational(num, den);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string intpart = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool neg = !intpart.empty() && intpart[0] == '-';
    if (intpart.empty() || intpart == "-" || intpart == "+") intpart += "0";
    if (frac.empty()) frac = "0";
    BigInt whole = parse_integer(intpart, s);
    BigInt f = parse_integer(frac, s);
    if (f < 0 || frac[0] == '+' || frac[0] == '-')
      throw ParseError("not a number: '" + s + "'");
    BigInt scale = ipow(BigInt(10), static_cast<std::int64_t>(frac.size()));
    BigInt mag = (whole < 0 ? BigInt(-whole) : whole) * scale + f;
    return Rational(neg ? BigInt(-mag) : mag, scale);
  }
  return Rational(parse_integer(s, s));
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace hcb
