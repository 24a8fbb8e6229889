/**************************************************************************
 * cyclotomic_int.hpp
 *
 * Copyright 2026 The kasami-designs Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>

namespace kasami {

/**
 * Exact element of Z[zeta_p] on the integral basis {zeta^1, ..., zeta^(p-1)}.
 *
 * Rational integers are stored as (-v, ..., -v) since
 * zeta^0 = -(zeta^1 + ... + zeta^(p-1)). The representation is unique, so
 * equality and ordering are plain coefficient comparisons.
 */
class CycInt {
public:
    static constexpr int kMaxPrime = 7;
    using Coeffs = std::array<std::int64_t, kMaxPrime - 1>;

    // Largest magnitudes met: sums over q <= 3^8 terms, Galois sums over p-1
    // of those, and products of two such values. All far inside int64.
    static_assert(6561LL * 6561LL * kMaxPrime * kMaxPrime < std::numeric_limits<std::int64_t>::max() / 1024);

    CycInt() = default;

    explicit CycInt(int p) : p_(p) {
        if (p < 3 || p > kMaxPrime || p % 2 == 0) throw std::invalid_argument("CycInt supports odd primes up to 7");
    }

    CycInt(int p, std::span<const std::int64_t> coeffs) : CycInt(p) {
        if (coeffs.size() != static_cast<std::size_t>(p - 1)) throw std::invalid_argument("CycInt needs p-1 coefficients");
        for (std::size_t i = 0; i < coeffs.size(); ++i) c_[i] = coeffs[i];
    }

    static CycInt integer(int p, std::int64_t v) {
        CycInt z(p);
        for (int i = 0; i < p - 1; ++i) z.c_[static_cast<std::size_t>(i)] = -v;
        return z;
    }

    /// zeta^j for any integer j.
    static CycInt zeta_power(int p, int j) {
        const int r = ((j % p) + p) % p;
        if (r == 0) return integer(p, 1);
        CycInt z(p);
        z.c_[static_cast<std::size_t>(r - 1)] = 1;
        return z;
    }

    /// Builds sum_i raw[i] zeta^i from an unreduced length-p coefficient vector.
    template <typename Int>
    static CycInt from_unreduced(int p, std::span<const Int> raw) {
        CycInt z(p);
        for (int i = 1; i < p; ++i)
            z.c_[static_cast<std::size_t>(i - 1)] = static_cast<std::int64_t>(raw[static_cast<std::size_t>(i)]) - static_cast<std::int64_t>(raw[0]);
        return z;
    }

    int prime() const { return p_; }

    /// Coefficient of zeta^i, 1 <= i <= p-1.
    std::int64_t coeff(int i) const { return c_.at(static_cast<std::size_t>(i - 1)); }

    std::span<const std::int64_t> coeffs() const { return {c_.data(), static_cast<std::size_t>(p_ > 0 ? p_ - 1 : 0)}; }

    bool is_zero() const {
        for (auto v : c_)
            if (v != 0) return false;
        return true;
    }

    std::optional<std::int64_t> as_integer() const {
        for (int i = 1; i < p_ - 1; ++i)
            if (c_[static_cast<std::size_t>(i)] != c_[0]) return std::nullopt;
        return -c_[0];
    }

    CycInt& operator+=(const CycInt& o) {
        check_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    CycInt& operator-=(const CycInt& o) {
        check_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    CycInt& operator*=(std::int64_t k) {
        for (auto& v : c_) v *= k;
        return *this;
    }

    friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
    friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
    friend CycInt operator-(CycInt a) { return a *= -1; }
    friend CycInt operator*(CycInt a, std::int64_t k) { return a *= k; }
    friend CycInt operator*(std::int64_t k, CycInt a) { return a *= k; }

    friend CycInt operator*(const CycInt& a, const CycInt& b) {
        a.check_same(b);
        const int p = a.p_;
        std::array<std::int64_t, kMaxPrime> raw{};
        for (int i = 1; i < p; ++i)
            for (int j = 1; j < p; ++j) raw[static_cast<std::size_t>((i + j) % p)] += a.coeff(i) * b.coeff(j);
        return from_unreduced<std::int64_t>(p, std::span<const std::int64_t>(raw.data(), static_cast<std::size_t>(p)));
    }

    friend bool operator==(const CycInt&, const CycInt&) = default;
    friend auto operator<=>(const CycInt&, const CycInt&) = default;

    /// Human-readable form, e.g. "9·ζ^1 - 9·ζ^2". Rational integers print as integers.
    std::string pretty() const {
        if (auto v = as_integer()) return std::to_string(*v);
        std::ostringstream os;
        bool first = true;
        for (int i = 1; i < p_; ++i) {
            const auto v = coeff(i);
            if (v == 0) continue;
            if (first)
                os << (v < 0 ? "-" : "");
            else
                os << (v < 0 ? " - " : " + ");
            os << (v < 0 ? -v : v) << "·ζ^" << i;
            first = false;
        }
        return os.str();
    }

private:
    void check_same(const CycInt& o) const {
        if (p_ != o.p_) throw std::invalid_argument("CycInt operands over different primes");
    }

    int p_ = 0;
    Coeffs c_{};
};

/// sum_j tally[j] zeta^j, reduced to the integral basis.
inline CycInt from_exponent_tally(const std::map<int, std::uint64_t>& tally, int p) {
    std::array<std::int64_t, CycInt::kMaxPrime> raw{};
    for (const auto& [j, count] : tally) {
        if (j < 0 || j >= p) throw std::invalid_argument("tally key outside F_p");
        raw[static_cast<std::size_t>(j)] += static_cast<std::int64_t>(count);
    }
    return CycInt::from_unreduced<std::int64_t>(p, std::span<const std::int64_t>(raw.data(), static_cast<std::size_t>(p)));
}

/// sigma_y: zeta -> zeta^y.
inline CycInt galois_apply(const CycInt& z, int y) {
    const int p = z.prime();
    const int r = ((y % p) + p) % p;
    if (r == 0) throw std::invalid_argument("galois_apply needs y not divisible by p");
    std::array<std::int64_t, CycInt::kMaxPrime - 1> out{};
    for (int i = 1; i < p; ++i) out[static_cast<std::size_t>((i * r) % p - 1)] = z.coeff(i);
    return CycInt(p, std::span<const std::int64_t>(out.data(), static_cast<std::size_t>(p - 1)));
}

/// Legendre symbol: +1 on nonzero squares, -1 on nonsquares, 0 at 0.
inline int quadratic_character(long long v, int p) {
    const long long r = ((v % p) + p) % p;
    if (r == 0) return 0;
    for (long long t = 1; t < p; ++t)
        if ((t * t) % p == r) return 1;
    return -1;
}

/// sum_{v=1}^{p-1} eta'(v) zeta^v, the exact square root of p* = (-1)^((p-1)/2) p.
inline CycInt gauss_sum(int p) {
    CycInt g(p);
    for (int v = 1; v < p; ++v) g += CycInt::zeta_power(p, v) * quadratic_character(v, p);
    return g;
}

enum class ValueShape {
    Plain,        // eps p^k
    Twisted,      // eps p^k zeta^j
    Gauss,        // eps sqrt(p*) p^k
    GaussTwisted, // eps sqrt(p*) p^k zeta^j
};

/// Closed-form exponential-sum values that appear in the value-distribution tables.
inline CycInt known_value(ValueShape kind, int p, int k, int eps, int j) {
    if (k < 0) throw std::invalid_argument("known_value exponent must be nonnegative");
    std::int64_t scale = eps;
    for (int i = 0; i < k; ++i) scale *= p;
    switch (kind) {
    case ValueShape::Plain: return CycInt::integer(p, scale);
    case ValueShape::Twisted: return CycInt::zeta_power(p, j) * scale;
    case ValueShape::Gauss: return gauss_sum(p) * scale;
    case ValueShape::GaussTwisted: return gauss_sum(p) * CycInt::zeta_power(p, j) * scale;
    }
    throw std::invalid_argument("unknown value shape");
}

} // namespace kasami
