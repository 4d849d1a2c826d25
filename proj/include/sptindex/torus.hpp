// Copyright 2026 The sptindex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "sptindex/errors.hpp"

namespace sptindex {

/// Exact element of the torus T = R/Z, stored as a reduced fraction num/den
/// with 0 <= num < den.
class TorusValue {
   public:
    constexpr TorusValue() = default;
    TorusValue(std::int64_t num, std::int64_t den) {
        if (den <= 0) {
            throw InvalidArgument("torus value denominator must be positive");
        }
        num %= den;
        if (num < 0) num += den;
        const std::int64_t g = std::gcd(num, den);
        num_ = num / g;
        den_ = den / g;
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// "p/q", with "0" for zero.
    std::string to_string() const {
        if (num_ == 0) return "0";
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    static TorusValue parse(std::string_view text);

    friend TorusValue operator+(const TorusValue &a, const TorusValue &b) {
        const std::int64_t l = std::lcm(a.den_, b.den_);
        return {a.num_ * (l / a.den_) + b.num_ * (l / b.den_), l};
    }
    friend TorusValue operator-(const TorusValue &a) { return {-a.num_, a.den_}; }
    friend TorusValue operator-(const TorusValue &a, const TorusValue &b) { return a + (-b); }
    TorusValue &operator+=(const TorusValue &b) { return *this = *this + b; }
    TorusValue &operator-=(const TorusValue &b) { return *this = *this - b; }
    friend bool operator==(const TorusValue &, const TorusValue &) = default;
    friend std::ostream &operator<<(std::ostream &out, const TorusValue &v) { return out << v.to_string(); }

   private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline TorusValue TorusValue::parse(std::string_view text) {
    auto to_int = [&](std::string_view s) {
        if (s.empty()) throw InvalidArgument("malformed fraction '" + std::string(text) + "'");
        std::size_t pos = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(std::string(s), &pos);
        } catch (const std::exception &) {
            throw InvalidArgument("malformed fraction '" + std::string(text) + "'");
        }
        if (pos != s.size()) throw InvalidArgument("malformed fraction '" + std::string(text) + "'");
        return v;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return {to_int(text), 1};
    }
    return {to_int(text.substr(0, slash)), to_int(text.substr(slash + 1))};
}

/// Reduces a real number into [0, 1).
inline double wrap_unit(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r = 0.0;
    return r;
}

/// Distance on R/Z between two representatives.
inline double torus_distance(double a, double b) {
    const double r = wrap_unit(a - b);
    return std::min(r, 1.0 - r);
}

/// Numeric element of T, value in [0, 1), tagged with the tolerance of the
/// computation that produced it.
class Phase {
   public:
    constexpr Phase() = default;
    explicit Phase(double value, double tolerance = 0.0) : value_(wrap_unit(value)), tol_(tolerance) {}
    explicit Phase(const TorusValue &exact) : value_(exact.to_double()), tol_(0.0) {}

    double value() const { return value_; }
    double tolerance() const { return tol_; }

    friend Phase operator+(const Phase &a, const Phase &b) {
        return Phase(a.value_ + b.value_, std::max(a.tol_, b.tol_));
    }
    friend Phase operator-(const Phase &a) { return Phase(-a.value_, a.tol_); }
    friend Phase operator-(const Phase &a, const Phase &b) { return a + (-b); }
    Phase &operator+=(const Phase &b) { return *this = *this + b; }
    Phase &operator-=(const Phase &b) { return *this = *this - b; }

   private:
    double value_ = 0.0;
    double tol_ = 0.0;
};

}  // namespace sptindex
