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

#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace hcb {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt factorial(std::int64_t n);
BigInt binomial(std::int64_t n, std::int64_t k);
BigInt ipow(const BigInt& base, std::int64_t exp);

// True when the rational has denominator 1.
bool is_integer(const Rational& q);

// "p/q", or just "p" when q == 1.
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

// Accepts "p", "p/q" or a finite decimal such as "1.25".
Rational parse_rational(const std::string& text);

double to_double(const Rational& q);

}  // namespace hcb
