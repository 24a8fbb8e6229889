/**************************************************************************
 * closed_form.hpp
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

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "code_family.hpp"
#include "cyclotomic_int.hpp"
#include "exp_sum.hpp"
#include "field_core.hpp"

namespace kasami {

/// A multiplicity formula did not evaluate to a nonnegative integer.
class InexactFormula : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

namespace detail {

using i128 = __int128;

inline i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("closed-form evaluation overflowed 128 bits");
    return r;
}

inline i128 checked_add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("closed-form evaluation overflowed 128 bits");
    return r;
}

// Exact rational; formulas are evaluated in Q and must land in Z.
class Rat {
public:
    Rat(long long v = 0) : num_(v), den_(1) {} // NOLINT(google-explicit-constructor)
    Rat(i128 num, i128 den) : num_(num), den_(den) {
        if (den_ == 0) throw std::domain_error("division by zero in closed form");
        normalize();
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        const i128 g = gcd128(a.den_, b.den_);
        return {checked_add(checked_mul(a.num_, b.den_ / g), checked_mul(b.num_, a.den_ / g)), checked_mul(a.den_ / g, b.den_)};
    }
    friend Rat operator-(const Rat& a) { return {-a.num_, a.den_}; }
    friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }
    friend Rat operator*(const Rat& a, const Rat& b) {
        const i128 g1 = gcd128(a.num_, b.den_), g2 = gcd128(b.num_, a.den_);
        const i128 s1 = g1 == 0 ? 1 : g1, s2 = g2 == 0 ? 1 : g2;
        return {checked_mul(a.num_ / s1, b.num_ / s2), checked_mul(a.den_ / s2, b.den_ / s1)};
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw std::domain_error("division by zero in closed form");
        return a * Rat(b.den_, b.num_);
    }

    bool is_integer() const { return den_ == 1; }
    i128 num() const { return num_; }

private:
    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const i128 g = gcd128(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    i128 num_;
    i128 den_;
};

// p^e for any integer e.
inline Rat power(int p, int e) {
    i128 v = 1;
    for (int i = 0; i < (e < 0 ? -e : e); ++i) v = checked_mul(v, p);
    return e >= 0 ? Rat(v, 1) : Rat(1, v);
}

inline std::uint64_t to_count(const Rat& r, const std::string& label) {
    if (!r.is_integer()) throw InexactFormula("formula " + label + " is not an integer");
    if (r.num() < 0) throw InexactFormula("formula " + label + " is negative");
    if (r.num() > static_cast<i128>(UINT64_MAX)) throw std::overflow_error("formula " + label + " exceeds 64 bits");
    return static_cast<std::uint64_t>(r.num());
}

// Symbolic shorthands shared by the three parameter cases.
struct Sym {
    int p, s, m, d;
    explicit Sym(const FieldParams& fp) : p(fp.p), s(fp.s), m(fp.m), d(fp.d) {}
    Rat P(int e) const { return power(p, e); }
    Rat half() const { return Rat(1, 2); }
};

} // namespace detail

struct PredictedValueRow {
    std::string label;
    CycInt value;
    std::uint64_t count = 0;
};

/**
 * Every row of the value-distribution table for the parameter case, with
 * epsilon and j expanded. Rows are returned even when their multiplicity is
 * zero so they can serve as the classification set.
 */
inline std::vector<PredictedValueRow> predicted_value_rows(const FieldParams& fp) {
    using detail::Rat;
    const detail::Sym S(fp);
    const int p = fp.p, s = fp.s, m = fp.m, d = fp.d;
    const auto P = [&](int e) { return S.P(e); };
    const Rat half = S.half();
    const Rat Q1 = P(m) - 1;
    std::vector<PredictedValueRow> rows;
    auto push = [&](std::string label, const CycInt& v, const Rat& r) {
        const auto count = detail::to_count(r, label);
        rows.push_back({std::move(label), v, count});
    };
    auto plain = [&](int k, int eps) { return known_value(ValueShape::Plain, p, k, eps, 0); };
    auto twisted = [&](int k, int eps, int j) { return known_value(ValueShape::Twisted, p, k, eps, j); };
    auto sgn = [](int e) { return std::string(e > 0 ? "+1" : "-1"); };

    switch (fp.kase) {
    case ParamCase::OddD: {
        const int kg = s + (d - 1) / 2;
        push("M1", plain(s, 1), half * P(s + d - 1) * (P(s) + 1) * (P(s) + p - 1) * Q1 / (P(d) + 1));
        push("M2", plain(s, -1), half * P(s + d - 1) * (P(s) - 1) * (P(s) - p + 1) * (P(m) - 2 * P(m - d) + 1) / (P(d) - 1));
        for (int j = 1; j < p; ++j)
            push("M3[j=" + std::to_string(j) + "]", twisted(s, 1, j), half * P(s + d - 1) * Q1 * Q1 / (P(d) + 1));
        for (int j = 1; j < p; ++j)
            push("M4[j=" + std::to_string(j) + "]", twisted(s, -1, j),
                 half * P(s + d - 1) * (P(m) - 2 * P(m - d) + 1) * Q1 / (P(d) - 1));
        for (int eps : {1, -1})
            push("M5[eps=" + sgn(eps) + "]", known_value(ValueShape::Gauss, p, kg, eps, 0), half * P(3 * s - 2 * d - 1) * Q1);
        for (int eps : {1, -1})
            for (int j = 1; j < p; ++j)
                push("M6[eps=" + sgn(eps) + ",j=" + std::to_string(j) + "]", known_value(ValueShape::GaussTwisted, p, kg, eps, j),
                     half * P(m - (3 * d + 1) / 2) * (P(s - (d + 1) / 2) + eps * quadratic_character(-j, p)) * Q1);
        push("M7", plain(s + d, -1), P(s - d - 1) * (P(s - d) - 1) * (P(s - d) - p + 1) * Q1 / (P(2 * d) - 1));
        for (int j = 1; j < p; ++j)
            push("M8[j=" + std::to_string(j) + "]", twisted(s + d, -1, j), P(s - d - 1) * (P(m - 2 * d) - 1) * Q1 / (P(2 * d) - 1));
        push("M9", CycInt(p), (P(3 * s - d) - P(3 * s - 2 * d) + P(3 * s - 3 * d) - P(m - 2 * d) + 1) * Q1);
        break;
    }
    case ParamCase::EvenD: {
        const int ke = s + d / 2;
        push("M1", plain(s, 1), half * P(s + d - 1) * (P(s) + 1) * (P(s) + p - 1) * Q1 / (P(d) + 1));
        // factor (p^s - 1) as in the odd case; with (p^s + 1) the table overshoots p^s q^2 by 2 M2 / (p^s + 1)
        push("M2", plain(s, -1), half * P(s + d - 1) * (P(s) - 1) * (P(s) - p + 1) * (P(m) - 2 * P(m - d) + 1) / (P(d) - 1));
        for (int j = 1; j < p; ++j)
            push("M3[j=" + std::to_string(j) + "]", twisted(s, 1, j), half * P(s + d - 1) * Q1 * Q1 / (P(d) + 1));
        for (int j = 1; j < p; ++j)
            push("M4[j=" + std::to_string(j) + "]", twisted(s, -1, j),
                 half * P(s + d - 1) * (P(m) - 2 * P(m - d) + 1) * Q1 / (P(d) - 1));
        for (int eps : {1, -1})
            push("M5[eps=" + sgn(eps) + "]", plain(ke, eps), half * P(m - 3 * d / 2 - 1) * (P(s - d / 2) + eps * (p - 1)) * Q1);
        for (int eps : {1, -1})
            for (int j = 1; j < p; ++j)
                push("M6[eps=" + sgn(eps) + ",j=" + std::to_string(j) + "]", twisted(ke, eps, j),
                     half * P(m - 3 * d / 2 - 1) * (P(s - d / 2) - eps) * Q1);
        push("M7", plain(s + d, -1), P(s - d - 1) * (P(s - d) - 1) * (P(s - d) - p + 1) * Q1 / (P(2 * d) - 1));
        for (int j = 1; j < p; ++j)
            push("M8[j=" + std::to_string(j) + "]", twisted(s + d, -1, j),
                 P(s - d - 1) * (P(s - d) - 1) * (P(s - d) + 1) * Q1 / (P(2 * d) - 1));
        push("M9", CycInt(p), (P(3 * s - d) - P(3 * s - 2 * d) + P(3 * s - 3 * d) - P(m - 2 * d) + 1) * Q1);
        break;
    }
    case ParamCase::TwoD: {
        const Rat X = P(m) - P(m - 2 * d) - P(m - 3 * d) + P(s) - P(s - d) + 1;
        const Rat Y = P(s) + P(s - d) + P(s - 2 * d) + 1;
        const Rat D3 = (P(d) + 1) * (P(2 * d) - 1);
        push("M1", plain(s, -1), P(s + 3 * d - 1) * (P(s) - 1) * (P(s) - p + 1) * X / D3);
        for (int j = 1; j < p; ++j) push("M2[j=" + std::to_string(j) + "]", twisted(s, -1, j), P(s + 3 * d - 1) * X * Q1 / D3);
        push("M3", plain(s + d, 1), P(s - 1) * (P(s - d) + p - 1) * Y * Q1 / ((P(d) + 1) * (P(d) + 1)));
        for (int j = 1; j < p; ++j)
            push("M4[j=" + std::to_string(j) + "]", twisted(s + d, 1, j), P(s - 1) * (P(s - d) - 1) * Y * Q1 / ((P(d) + 1) * (P(d) + 1)));
        push("M5", plain(s + 2 * d, -1), P(s - 2 * d - 1) * (P(s - d) - 1) * (P(s - 2 * d) - p + 1) * Q1 / D3);
        for (int j = 1; j < p; ++j)
            push("M6[j=" + std::to_string(j) + "]", twisted(s + 2 * d, -1, j), P(s - 2 * d - 1) * (P(s - d) - 1) * (P(s - 2 * d) + 1) * Q1 / D3);
        push("M7", CycInt(p),
             (P(3 * s - d) - P(3 * s - 2 * d) + P(3 * s - 3 * d) - P(3 * s - 4 * d) + P(3 * s - 5 * d) + P(m - d) - 2 * P(m - 2 * d) +
              P(m - 3 * d) - P(m - 4 * d) + 1) *
                 Q1);
        break;
    }
    }
    push("pm", plain(m, 1), Rat(1));
    return rows;
}

/// Predicted S-value multiset; the total must be p^s q^2.
inline ValueDistribution predicted_value_distribution(const FieldParams& fp) {
    ValueDistribution out;
    for (const auto& row : predicted_value_rows(fp)) out.add(row.value, row.count);
    const auto expected = ipow(static_cast<std::uint64_t>(fp.p), static_cast<unsigned>(fp.s)) * fp.q * fp.q;
    if (out.total() != expected) throw InexactFormula("predicted value distribution does not total p^s q^2");
    return out;
}

/// Row label of the closed-form shape equal to v, if any.
inline std::optional<std::string> classify_value(const std::vector<PredictedValueRow>& rows, const CycInt& v) {
    for (const auto& row : rows)
        if (row.value == v) return row.label;
    return std::nullopt;
}

struct PredictedWeightRow {
    std::string label;
    std::int64_t weight = 0;
    std::uint64_t count = 0;
};

/// Rows of the weight table with "±" expanded; each branch keeps the full multiplicity.
inline std::vector<PredictedWeightRow> predicted_weight_rows(const FieldParams& fp) {
    using detail::Rat;
    const detail::Sym S(fp);
    const int p = fp.p, s = fp.s, m = fp.m, d = fp.d;
    const auto P = [&](int e) { return S.P(e); };
    const Rat half = S.half();
    const Rat Q1 = P(m) - 1;
    std::vector<PredictedWeightRow> rows;
    auto push = [&](std::string label, const Rat& w, const Rat& mult) {
        if (!w.is_integer()) throw InexactFormula("weight " + label + " is not an integer");
        const auto count = detail::to_count(mult, label);
        rows.push_back({std::move(label), static_cast<std::int64_t>(w.num()), count});
    };
    auto pm = [](int sigma) { return std::string(sigma > 0 ? "+" : "-"); };

    switch (fp.kase) {
    case ParamCase::OddD: {
        const int eta = ((p - 1) / 2) % 2 == 0 ? 1 : -1;
        push("W1", (p - 1) * (P(m - 1) - P(s - 1)), half * P(m + d) * (P(s) + 1) * Q1 / (P(d) + 1));
        push("W2", P(m - 1) * (p - 1) + P(s - 1), half * P(m + d) * (p - 1) * (P(s) + 1) * Q1 / (P(d) + 1));
        push("W3", (p - 1) * (P(m - 1) + P(s - 1)), P(m + d) * (P(m) - 2 * P(m - d) + 1) * (P(s) - 1) / (2 * (P(d) - 1)));
        push("W4", P(m - 1) * (p - 1) - P(s - 1), P(m + d) * (p - 1) * (P(m) - 2 * P(m - d) + 1) * (P(s) - 1) / (2 * (P(d) - 1)));
        for (int sigma : {1, -1})
            push("W5" + pm(sigma), P(m - 1) * (p - 1) + sigma * eta * P(s + (d - 1) / 2), half * P(3 * s - 2 * d) * (p - 1) * Q1);
        push("W6", P(s + d - 1) * (p - 1) * (P(s - d) + 1), P(m - 2 * d) * (P(s - d) - 1) * Q1 / (P(2 * d) - 1));
        push("W7", P(m - 1) * (p - 1) - P(s + d - 1), P(m - 2 * d) * (p - 1) * (P(s - d) - 1) * Q1 / (P(2 * d) - 1));
        push("W8", P(m - 1) * (p - 1),
             p * (P(3 * s - d) - P(3 * s - 2 * d) + P(3 * s - 2 * d - 1) + P(3 * s - 3 * d) - P(m - 2 * d) + 1) * Q1);
        break;
    }
    case ParamCase::EvenD: {
        push("W1", P(s - 1) * (p - 1) * (P(s) - 1), half * P(m + d) * (P(s) + 1) * Q1 / (P(d) + 1));
        push("W2", P(s - 1) * (P(s + 1) - P(s) + 1), half * P(m + d) * (p - 1) * (P(s) + 1) * Q1 / (P(d) + 1));
        // W3 = M2 + (p-1) M4 and W4 = (p-1) W3; same shape as the odd case once M2 carries (p^s - 1)
        push("W3", P(s - 1) * (p - 1) * (P(s) + 1), P(m + d) * (P(m) - 2 * P(m - d) + 1) * (P(s) - 1) / (2 * (P(d) - 1)));
        push("W4", P(s - 1) * (P(s + 1) - P(s) - 1), P(m + d) * (p - 1) * (P(m) - 2 * P(m - d) + 1) * (P(s) - 1) / (2 * (P(d) - 1)));
        for (int sigma : {1, -1})
            push("W5" + pm(sigma), P(s + d / 2 - 1) * (p - 1) * (P(s - d / 2) + sigma), half * P(3 * s - 2 * d) * Q1);
        for (int sigma : {1, -1})
            push("W6" + pm(sigma), P(s + d / 2 - 1) * (P(s - d / 2 + 1) - P(s - d / 2) + sigma), half * P(3 * s - 2 * d) * (p - 1) * Q1);
        push("W7", P(s + d - 1) * (p - 1) * (P(s - d) + 1), P(m - 2 * d) * (P(s - d) - 1) * Q1 / (P(2 * d) - 1));
        push("W8", P(s + d - 1) * (P(s - d + 1) - P(s - d) - 1), P(m - 2 * d) * (p - 1) * (P(s - d) - 1) * Q1 / (P(2 * d) - 1));
        push("W9", P(m - 1) * (p - 1), p * (P(3 * s - d) - P(3 * s - 2 * d) + P(3 * s - 3 * d) - P(m - 2 * d) + 1) * Q1);
        break;
    }
    case ParamCase::TwoD: {
        const Rat X = P(m) - P(m - 2 * d) - P(m - 3 * d) + P(s) - P(s - d) + 1;
        const Rat Y = P(s) + P(s - d) + P(s - 2 * d) + 1;
        const Rat D3 = (P(d) + 1) * (P(2 * d) - 1);
        const Rat D2 = (P(d) + 1) * (P(d) + 1);
        push("W1", P(s - 1) * (p - 1) * (P(s) + 1), P(m + 3 * d) * X * (P(s) - 1) / D3);
        push("W2", P(s - 1) * (P(s + 1) - P(s) - 1), P(m + 3 * d) * (p - 1) * X * (P(s) - 1) / D3);
        push("W3", P(s + d - 1) * (p - 1) * (P(s - d) - 1), P(m - d) * Y * Q1 / D2);
        push("W4", P(s + d - 1) * (P(s - d + 1) - P(s - d) + 1), P(m - d) * (p - 1) * Y * Q1 / D2);
        push("W5", P(s + 2 * d - 1) * (p - 1) * (P(s - 2 * d) + 1), P(m - 4 * d) * (P(s - d) - 1) * Q1 / D3);
        push("W6", P(s + 2 * d - 1) * (P(s - 2 * d + 1) - P(s - 2 * d) - 1), P(m - 4 * d) * (p - 1) * (P(s - d) - 1) * Q1 / D3);
        push("W7", P(m - 1) * (p - 1),
             p *
                 (P(3 * s - d) - P(3 * s - 2 * d) + P(3 * s - 3 * d) - P(3 * s - 4 * d) + P(3 * s - 5 * d) + P(m - d) - 2 * P(m - 2 * d) +
                  P(m - 3 * d) - P(m - 4 * d) + 1) *
                 Q1);
        break;
    }
    }
    return rows;
}

/// Merged weight distribution, including weight 0 (once) and p^m (p - 1 times).
inline WeightDistribution predicted_weight_distribution(const FieldParams& fp) {
    WeightDistribution out;
    out.entries[0] = 1;
    out.entries[fp.q] += static_cast<std::uint64_t>(fp.p - 1);
    for (const auto& row : predicted_weight_rows(fp)) {
        if (row.count == 0) continue;
        if (row.weight <= 0 || static_cast<std::uint64_t>(row.weight) >= fp.q)
            throw InexactFormula("row " + row.label + " has a weight outside (0, p^m)");
        out.entries[static_cast<std::uint64_t>(row.weight)] += row.count;
    }
    unsigned __int128 expected = 1;
    for (int i = 0; i < 5 * fp.s + 1; ++i) expected *= static_cast<unsigned>(fp.p);
    if (out.total() != expected) throw InexactFormula("predicted weight distribution does not total p^(5s+1)");
    return out;
}

struct DesignParameters {
    std::uint64_t v = 0;
    std::uint64_t k = 0;
    std::uint64_t lambda = 0;
    std::uint64_t b = 0;
};

struct DesignRowLambda {
    std::string label;
    std::int64_t weight = 0;
    std::uint64_t lambda = 0;
};

/// Per-row lambda formulas for the 2-designs held by each weight class.
inline std::vector<DesignRowLambda> predicted_row_lambdas(const FieldParams& fp) {
    using detail::Rat;
    const detail::Sym S(fp);
    const int p = fp.p, s = fp.s, m = fp.m, d = fp.d;
    const auto P = [&](int e) { return S.P(e); };
    const Rat half = S.half();
    std::vector<DesignRowLambda> rows;
    auto push = [&](std::string label, const Rat& w, const Rat& lambda) {
        if (!w.is_integer()) throw InexactFormula("weight " + label + " is not an integer");
        const auto lam = detail::to_count(lambda, "lambda " + label);
        rows.push_back({std::move(label), static_cast<std::int64_t>(w.num()), lam});
    };
    auto pm = [](int sigma) { return std::string(sigma > 0 ? "+" : "-"); };

    switch (fp.kase) {
    case ParamCase::OddD: {
        const int eta = ((p - 1) / 2) % 2 == 0 ? 1 : -1;
        const Rat w1 = (p - 1) * (P(m - 1) - P(s - 1));
        push("W1", w1, half * P(s + d - 1) * (w1 - 1) * (P(m) - 1) / (P(d) + 1));
        push("W2", P(m - 1) * (p - 1) + P(s - 1),
             half * P(s + d - 1) * (P(s) * (p - 1) + 1) * (P(m) - P(m - 1) + P(s - 1) - 1) * (P(s) + 1) / (P(d) + 1));
        const Rat w3 = (p - 1) * (P(m - 1) + P(s - 1));
        push("W3", w3, half * P(s + d - 1) * (w3 - 1) * (P(m) - 2 * P(m - d) + 1) / (P(d) - 1));
        push("W4", P(m - 1) * (p - 1) - P(s - 1),
             P(s + d - 1) * (P(s) * (p - 1) - 1) * (P(m) - 2 * P(m - d) + 1) * (P(m) - P(m - 1) - P(s - 1) - 1) /
                 (2 * (P(d) - 1) * (P(s) + 1)));
        for (int sigma : {1, -1}) {
            const Rat w5 = P(m - 1) * (p - 1) + sigma * eta * P(s + (d - 1) / 2);
            push("W5" + pm(sigma), w5, half * P(m - (3 * d + 1) / 2) * (P(s - (d - 1) / 2 - 1) * (p - 1) + sigma * eta) * (w5 - 1));
        }
        const Rat w6 = P(s + d - 1) * (p - 1) * (P(s - d) + 1);
        push("W6", w6, P(s - d - 1) * (w6 - 1) * (P(s - d) + 1) * (P(s - d) - 1) / (P(2 * d) - 1));
        push("W7", P(m - 1) * (p - 1) - P(s + d - 1),
             P(s - d - 1) * (P(s - d) * (p - 1) - 1) * (P(m) - P(m - 1) - P(s + d - 1) - 1) * (P(s - d) - 1) / (P(2 * d) - 1));
        push("W8", P(m - 1) * (p - 1),
             (P(m) - P(m - 1) - 1) * (P(3 * s - d) - P(3 * s - 2 * d) + P(3 * s - 2 * d - 1) + P(3 * s - 3 * d) - P(m - 2 * d) + 1));
        break;
    }
    case ParamCase::EvenD: {
        const Rat w1 = P(s - 1) * (p - 1) * (P(s) - 1);
        push("W1", w1, half * P(s + d - 1) * (w1 - 1) * (P(m) - 1) / (P(d) + 1));
        const Rat w2 = P(s - 1) * (P(s + 1) - P(s) + 1);
        push("W2", w2, half * P(s + d - 1) * (P(s + 1) - P(s) + 1) * (w2 - 1) * (P(s) + 1) / (P(d) + 1));
        // W3 and W4 follow the corrected multiplicities, hence the odd-case lambdas
        const Rat w3 = P(s - 1) * (p - 1) * (P(s) + 1);
        push("W3", w3, half * P(s + d - 1) * (w3 - 1) * (P(m) - 2 * P(m - d) + 1) / (P(d) - 1));
        const Rat w4 = P(s - 1) * (P(s + 1) - P(s) - 1);
        push("W4", w4,
             P(s + d - 1) * (P(s) * (p - 1) - 1) * (P(m) - 2 * P(m - d) + 1) * (w4 - 1) / (2 * (P(d) - 1) * (P(s) + 1)));
        for (int sigma : {1, -1}) {
            const Rat w5 = P(s + d / 2 - 1) * (p - 1) * (P(s - d / 2) + sigma);
            push("W5" + pm(sigma), w5, half * P(m - 3 * d / 2 - 1) * (P(s - d / 2) + sigma) * (w5 - 1));
        }
        for (int sigma : {1, -1}) {
            const Rat inner = P(s - d / 2 + 1) - P(s - d / 2) + sigma;
            const Rat w6 = P(s + d / 2 - 1) * inner;
            push("W6" + pm(sigma), w6, half * P(m - 3 * d / 2 - 1) * inner * (w6 - 1));
        }
        const Rat w7 = P(s + d - 1) * (p - 1) * (P(s - d) + 1);
        push("W7", w7, P(s - d - 1) * (w7 - 1) * (P(m - 2 * d) - 1) / (P(2 * d) - 1));
        const Rat inner8 = P(s - d + 1) - P(s - d) - 1;
        const Rat w8 = P(s + d - 1) * inner8;
        push("W8", w8, P(s - d - 1) * inner8 * (P(s - d) - 1) * (w8 - 1) / (P(2 * d) - 1));
        push("W9", P(m - 1) * (p - 1), (P(m) - P(m - 1) - 1) * (P(3 * s - d) - P(3 * s - 2 * d) + P(3 * s - 3 * d) - P(m - 2 * d) + 1));
        break;
    }
    case ParamCase::TwoD: {
        const Rat X = P(m) - P(m - 2 * d) - P(m - 3 * d) + P(s) - P(s - d) + 1;
        const Rat Y = P(s) + P(s - d) + P(s - 2 * d) + 1;
        const Rat D3 = (P(d) + 1) * (P(2 * d) - 1);
        const Rat D2 = (P(d) + 1) * (P(d) + 1);
        const Rat w1 = P(s - 1) * (p - 1) * (P(s) + 1);
        push("W1", w1, P(s + 3 * d - 1) * (w1 - 1) * X / D3);
        const Rat in2 = P(s + 1) - P(s) - 1;
        const Rat w2 = P(s - 1) * in2;
        push("W2", w2, P(s + 3 * d - 1) * in2 * (w2 - 1) * X / (D3 * (P(s) + 1)));
        const Rat w3 = P(s + d - 1) * (p - 1) * (P(s - d) - 1);
        push("W3", w3, P(s - 1) * (P(s - d) - 1) * (w3 - 1) * Y / D2);
        const Rat in4 = P(s - d + 1) - P(s - d) + 1;
        const Rat w4 = P(s + d - 1) * in4;
        push("W4", w4, P(s - 1) * in4 * (w4 - 1) * Y / D2);
        const Rat w5 = P(s + 2 * d - 1) * (p - 1) * (P(s - 2 * d) + 1);
        push("W5", w5, P(s - 2 * d - 1) * (P(s - d) - 1) * (P(s - 2 * d) + 1) * (w5 - 1) / D3);
        const Rat in6 = P(s - 2 * d + 1) - P(s - 2 * d) - 1;
        const Rat w6 = P(s + 2 * d - 1) * in6;
        push("W6", w6, P(s - 2 * d - 1) * in6 * (w6 - 1) * (P(s - d) - 1) / D3);
        push("W7", P(m - 1) * (p - 1),
             (P(m) - P(m - 1) - 1) * (P(3 * s - d) - P(3 * s - 2 * d) + P(3 * s - 3 * d) - P(3 * s - 4 * d) + P(3 * s - 5 * d) + P(m - d) -
                                      2 * P(m - 2 * d) + P(m - 3 * d) - P(m - 4 * d) + 1));
        break;
    }
    }
    return rows;
}

/// b k (k - 1) == lambda v (v - 1).
inline bool design_identity_check(std::uint64_t v, std::uint64_t k, std::uint64_t lambda, std::uint64_t b) {
    using U = unsigned __int128;
    if (k == 0 || v == 0) return false;
    return U(b) * k * (k - 1) == U(lambda) * v * (v - 1);
}

/// lambda = b k (k - 1) / (v (v - 1)); throws when the division is inexact.
inline std::uint64_t lambda_from_counts(std::uint64_t v, std::uint64_t k, std::uint64_t b) {
    using U = unsigned __int128;
    if (v < 2) throw std::invalid_argument("a 2-design needs at least two points");
    const U num = U(b) * k * (k - 1);
    const U den = U(v) * (v - 1);
    if (num % den != 0) throw InexactFormula("b k(k-1) is not divisible by v(v-1): the blocks cannot form a 2-design");
    return static_cast<std::uint64_t>(num / den);
}

struct DesignPrediction {
    DesignParameters params;
    std::vector<DesignRowLambda> rows; // per-row lambdas sharing this weight
    bool rows_consistent = false;      // per-row lambdas sum to params.lambda
};

/// Design parameters per distinct nonzero weight below p^m, lambda from the merged A_i.
inline std::vector<DesignPrediction> design_parameters_from(const FieldParams& fp, const WeightDistribution& wd,
                                                            const std::vector<DesignRowLambda>& row_lambdas) {
    std::vector<DesignPrediction> out;
    const auto p1 = static_cast<std::uint64_t>(fp.p - 1);
    for (const auto& [w, count] : wd.entries) {
        if (w == 0 || w >= fp.q || count == 0) continue;
        if (count % p1 != 0) throw InexactFormula("A_" + std::to_string(w) + " is not divisible by p - 1");
        DesignPrediction dp;
        dp.params.v = fp.q;
        dp.params.k = w;
        dp.params.b = count / p1;
        dp.params.lambda = lambda_from_counts(fp.q, w, dp.params.b);
        std::uint64_t sum = 0;
        for (const auto& r : row_lambdas)
            if (r.weight == static_cast<std::int64_t>(w)) {
                dp.rows.push_back(r);
                sum += r.lambda;
            }
        dp.rows_consistent = !dp.rows.empty() && sum == dp.params.lambda;
        out.push_back(std::move(dp));
    }
    return out;
}

inline std::vector<DesignPrediction> predicted_design_parameters(const FieldParams& fp) {
    // Rows whose table multiplicity vanishes contribute no blocks.
    std::vector<DesignRowLambda> live;
    const auto weight_rows = predicted_weight_rows(fp);
    for (const auto& r : predicted_row_lambdas(fp))
        for (const auto& wr : weight_rows)
            if (wr.label == r.label && wr.count != 0) live.push_back(r);
    return design_parameters_from(fp, predicted_weight_distribution(fp), live);
}

} // namespace kasami
