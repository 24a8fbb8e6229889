/**************************************************************************
 * field_core.hpp
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

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace kasami {

/// Raised when (p, s, l) violates the family's parameter rules.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class ParamCase { OddD, EvenD, TwoD };

inline const char* to_string(ParamCase c) {
    switch (c) {
    case ParamCase::OddD: return "OddD";
    case ParamCase::EvenD: return "EvenD";
    case ParamCase::TwoD: return "TwoD";
    }
    return "?";
}

inline std::uint64_t ipow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    while (exp--) r *= base;
    return r;
}

inline bool is_prime(int v) {
    if (v < 2) return false;
    for (int f = 2; f * f <= v; ++f)
        if (v % f == 0) return false;
    return true;
}

/**
 * Parameters of one member of the family: GF(p^m) with m = 2s, the twist
 * exponent l, and the derived gcds d = gcd(s, l), d' = gcd(s + l, 2l).
 */
struct FieldParams {
    int p = 0;
    int s = 0;
    int l = 0;
    int m = 0;
    std::uint64_t q = 0;
    std::uint64_t n = 0;
    int d = 0;
    int dprime = 0;
    ParamCase kase = ParamCase::OddD;

    static FieldParams make(int p, int s, int l) {
        if (!is_prime(p)) throw ParameterError("p must be prime");
        if (p % 2 == 0) throw ParameterError("p must be odd");
        if (s < 2) throw ParameterError("s must be at least 2 (m = 2s >= 4)");
        if (l < 0 || l > 2 * s - 1) throw ParameterError("l must lie in [0, 2s-1]");
        if (l == s) throw ParameterError("l must differ from s");
        if (2 * s > 40) throw ParameterError("s is too large");

        FieldParams fp;
        fp.p = p;
        fp.s = s;
        fp.l = l;
        fp.m = 2 * s;
        fp.q = ipow(static_cast<std::uint64_t>(p), static_cast<unsigned>(fp.m));
        fp.n = fp.q - 1;
        fp.d = std::gcd(s, l);
        fp.dprime = std::gcd(s + l, 2 * l);
        if (fp.dprime == fp.d)
            fp.kase = (fp.d % 2 == 1) ? ParamCase::OddD : ParamCase::EvenD;
        else if (fp.dprime == 2 * fp.d)
            fp.kase = ParamCase::TwoD;
        else
            throw std::logic_error("gcd(s+l, 2l) is neither d nor 2d");
        return fp;
    }

    friend bool operator==(const FieldParams&, const FieldParams&) = default;
};

/// Field element by label: 0 is zero, i >= 1 is alpha^(i-1). Labels double as design points.
struct FieldElement {
    std::uint32_t index = 0;

    constexpr bool is_zero() const { return index == 0; }
    friend constexpr auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

// ---- p-adic machinery ---------------------------------------------------

inline std::vector<int> p_adic_digits(std::uint64_t u, int p, int m) {
    std::vector<int> digits(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < m; ++i) {
        digits[static_cast<std::size_t>(i)] = static_cast<int>(u % static_cast<std::uint64_t>(p));
        u /= static_cast<std::uint64_t>(p);
    }
    return digits;
}

/// r ⪯ u: every base-p digit of r is at most the matching digit of u.
inline bool digit_dominated(std::uint64_t r, std::uint64_t u, int p, int m) {
    const auto P = static_cast<std::uint64_t>(p);
    for (int i = 0; i < m; ++i, r /= P, u /= P)
        if (r % P > u % P) return false;
    return true;
}

/// The p-cyclotomic coset of j modulo n, sorted; front() is the coset leader.
inline std::vector<std::uint64_t> cyclotomic_coset(std::uint64_t j, int p, std::uint64_t n) {
    std::vector<std::uint64_t> coset;
    if (n == 0) return coset;
    std::uint64_t x = j % n;
    do {
        coset.push_back(x);
        x = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * static_cast<unsigned>(p)) % n);
    } while (x != j % n);
    std::sort(coset.begin(), coset.end());
    return coset;
}

inline std::uint64_t coset_leader(std::uint64_t j, int p, std::uint64_t n) {
    return cyclotomic_coset(j, p, n).front();
}

namespace detail {

// Digit vectors over F_p, least significant (constant term) first.
inline std::uint64_t pack_digits(const std::vector<int>& digits, int p) {
    std::uint64_t v = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) v = v * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(*it);
    return v;
}

// Multiply a residue by x modulo the monic polynomial `poly` (degree m).
inline void times_x(std::vector<int>& v, const std::vector<int>& poly, int p) {
    const std::size_t m = v.size();
    const int top = v[m - 1];
    for (std::size_t i = m - 1; i > 0; --i) v[i] = v[i - 1];
    v[0] = 0;
    if (top != 0)
        for (std::size_t i = 0; i < m; ++i) v[i] = ((v[i] - top * poly[i]) % p + p) % p;
}

inline bool is_primitive(const std::vector<int>& poly, int p, std::uint64_t n) {
    if (poly[0] == 0) return false;
    const std::size_t m = poly.size() - 1;
    std::vector<int> v(m, 0);
    v[0] = 1;
    const std::vector<int> one = v;
    for (std::uint64_t k = 1; k <= n; ++k) {
        times_x(v, poly, p);
        if (v == one) return k == n;
    }
    return false;
}

} // namespace detail

/// Lexicographically smallest monic primitive polynomial of degree m, coefficients [c0, ..., c_{m-1}, 1].
inline std::vector<int> smallest_primitive_polynomial(int p, int m) {
    const std::uint64_t total = ipow(static_cast<std::uint64_t>(p), static_cast<unsigned>(m));
    const std::uint64_t n = total - 1;
    std::vector<int> poly(static_cast<std::size_t>(m) + 1, 0);
    poly[static_cast<std::size_t>(m)] = 1;
    for (std::uint64_t code = 0; code < total; ++code) {
        // c0 is the most significant position of the tuple order.
        std::uint64_t rest = code;
        for (int i = m - 1; i >= 0; --i) {
            poly[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::uint64_t>(p));
            rest /= static_cast<std::uint64_t>(p);
        }
        if (detail::is_primitive(poly, p, n)) return poly;
    }
    throw std::logic_error("no primitive polynomial found");
}

/**
 * Immutable arithmetic context for GF(p^m), m = 2s, together with the
 * subfield GF(p^s) and all trace tables the code family needs.
 *
 * Elements are handled by label (see FieldElement). Internally every
 * element also has a coordinate integer: its coefficient vector on the
 * polynomial basis {1, alpha, ..., alpha^(m-1)} read as a base-p number.
 */
class FieldContext {
public:
    static constexpr std::uint64_t kMaxFieldSize = 6561; // 3^8

    explicit FieldContext(const FieldParams& params) : params_(params) {
        if (params_.q > kMaxFieldSize)
            throw ParameterError("q = p^m exceeds the supported table envelope (q <= 6561)");
        build_tables();
    }

    const FieldParams& params() const { return params_; }
    int p() const { return params_.p; }
    int m() const { return params_.m; }
    std::uint64_t q() const { return params_.q; }
    std::uint64_t n() const { return params_.n; }
    const std::vector<int>& primitive_polynomial() const { return poly_; }

    FieldElement zero() const { return {0}; }
    FieldElement one() const { return {1}; }
    FieldElement alpha_pow(std::uint64_t e) const { return {static_cast<std::uint32_t>(e % params_.n + 1)}; }
    FieldElement element(std::uint32_t label) const { return {label}; }

    /// Discrete log of a nonzero element.
    std::uint64_t log(FieldElement x) const {
        if (x.is_zero()) throw std::domain_error("log of zero");
        return x.index - 1;
    }

    FieldElement mul(FieldElement a, FieldElement b) const {
        if (a.is_zero() || b.is_zero()) return zero();
        return alpha_pow(static_cast<std::uint64_t>(a.index - 1) + (b.index - 1));
    }

    FieldElement pow(FieldElement a, std::uint64_t e) const {
        if (e == 0) return one();
        if (a.is_zero()) return zero();
        const auto lg = static_cast<unsigned __int128>(a.index - 1) * (e % params_.n);
        return alpha_pow(static_cast<std::uint64_t>(lg % params_.n));
    }

    FieldElement inv(FieldElement a) const {
        if (a.is_zero()) throw std::domain_error("inverse of zero");
        return alpha_pow(params_.n - (a.index - 1));
    }

    FieldElement add(FieldElement a, FieldElement b) const {
        std::uint64_t x = coord_[a.index], y = coord_[b.index], r = 0, scale = 1;
        const auto P = static_cast<std::uint64_t>(params_.p);
        for (int i = 0; i < params_.m; ++i, x /= P, y /= P, scale *= P) r += ((x % P + y % P) % P) * scale;
        return {label_of_coord_[r]};
    }

    FieldElement neg(FieldElement a) const {
        std::uint64_t x = coord_[a.index], r = 0, scale = 1;
        const auto P = static_cast<std::uint64_t>(params_.p);
        for (int i = 0; i < params_.m; ++i, x /= P, scale *= P) r += ((P - x % P) % P) * scale;
        return {label_of_coord_[r]};
    }

    FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

    FieldElement frobenius(FieldElement a) const { return pow(a, static_cast<std::uint64_t>(params_.p)); }

    /// Embeds v in F_p as an element of the prime subfield.
    FieldElement from_prime_field(int v) const {
        const int r = ((v % params_.p) + params_.p) % params_.p;
        return {label_of_coord_[static_cast<std::uint64_t>(r)]};
    }

    /// Coordinate integer (polynomial-basis digits, base p) of an element.
    std::uint64_t coordinates(FieldElement a) const { return coord_[a.index]; }
    FieldElement from_coordinates(std::uint64_t v) const { return {label_of_coord_.at(v)}; }

    /// Nonzero subfield elements are alpha^(k * t0).
    std::uint64_t subfield_step() const { return t0_; }

    bool in_subfield(FieldElement x) const { return x.is_zero() || (x.index - 1) % t0_ == 0; }

    /// GF(p^s) in enumeration order: 0, alpha^0, alpha^t0, alpha^(2 t0), ...
    const std::vector<FieldElement>& subfield_elements() const { return subfield_; }

    int trace_m(FieldElement x) const { return trm_[x.index]; }

    int trace_s(FieldElement y) const {
        if (!in_subfield(y)) throw std::domain_error("trace_s argument is outside GF(p^s)");
        return y.is_zero() ? 0 : trs_[(y.index - 1) / t0_];
    }

    /// x^(p^s + 1), which always lies in GF(p^s).
    FieldElement pow_ps1(FieldElement x) const { return {pow_ps1_[x.index]}; }
    /// x^(p^l + 1), exponent reduced mod n.
    FieldElement pow_pl1(FieldElement x) const { return {pow_pl1_[x.index]}; }

    /// Tr_m(alpha^k) for k in [0, 2n); lets Tr_m(c x) be read as row[log c + log x].
    const std::vector<std::uint8_t>& trace_by_log() const { return trm_log2_; }
    const std::vector<std::uint8_t>& trace_table() const { return trm_; }

    /**
     * Dual pairing index of c: the integer whose base-p digits are
     * Tr_m(c alpha^k), k = 0..m-1. With x = sum x_k alpha^k this gives
     * Tr_m(c x) = sum_k x_k * digit_k, i.e. a plain dot product.
     */
    std::uint64_t dual_index(FieldElement c) const { return dual_[c.index]; }

private:
    void build_tables() {
        const int p = params_.p;
        const int m = params_.m;
        const std::uint64_t q = params_.q;
        const std::uint64_t n = params_.n;

        poly_ = smallest_primitive_polynomial(p, m);

        coord_.assign(q, 0);
        label_of_coord_.assign(q, 0);
        std::vector<int> v(static_cast<std::size_t>(m), 0);
        v[0] = 1;
        for (std::uint64_t k = 0; k < n; ++k) {
            const auto c = detail::pack_digits(v, p);
            coord_[k + 1] = c;
            label_of_coord_[c] = static_cast<std::uint32_t>(k + 1);
            detail::times_x(v, poly_, p);
        }

        trm_.assign(q, 0);
        for (std::uint32_t x = 0; x < q; ++x) {
            FieldElement acc{x}, y{x};
            for (int i = 1; i < m; ++i) {
                y = frobenius(y);
                acc = add(acc, y);
            }
            if (coordinates(acc) >= static_cast<std::uint64_t>(p)) throw std::logic_error("trace left the prime field");
            trm_[x] = static_cast<std::uint8_t>(coordinates(acc));
        }

        const std::uint64_t ps = ipow(static_cast<std::uint64_t>(p), static_cast<unsigned>(params_.s));
        t0_ = n / (ps - 1);
        subfield_.clear();
        subfield_.push_back(zero());
        trs_.assign(ps - 1, 0);
        for (std::uint64_t k = 0; k + 1 < ps; ++k) {
            const FieldElement y = alpha_pow(k * t0_);
            subfield_.push_back(y);
            FieldElement acc = y, z = y;
            for (int i = 1; i < params_.s; ++i) {
                z = frobenius(z);
                acc = add(acc, z);
            }
            if (coordinates(acc) >= static_cast<std::uint64_t>(p)) throw std::logic_error("subfield trace left the prime field");
            trs_[k] = static_cast<std::uint8_t>(coordinates(acc));
        }

        const std::uint64_t e_s = (ps + 1) % n;
        const std::uint64_t e_l =
            (static_cast<std::uint64_t>(
                 (static_cast<unsigned __int128>(ipow(static_cast<std::uint64_t>(p), static_cast<unsigned>(params_.l))) % n)) +
             1) %
            n;
        pow_ps1_.assign(q, 0);
        pow_pl1_.assign(q, 0);
        for (std::uint32_t x = 1; x < q; ++x) {
            pow_ps1_[x] = pow(FieldElement{x}, e_s == 0 ? n : e_s).index;
            pow_pl1_[x] = pow(FieldElement{x}, e_l == 0 ? n : e_l).index;
        }

        trm_log2_.assign(2 * n, 0);
        for (std::uint64_t k = 0; k < 2 * n; ++k) trm_log2_[k] = trm_[alpha_pow(k).index];

        dual_.assign(q, 0);
        for (std::uint32_t c = 0; c < q; ++c) {
            std::vector<int> digits(static_cast<std::size_t>(m));
            for (int k = 0; k < m; ++k) digits[static_cast<std::size_t>(k)] = trace_m(mul(FieldElement{c}, alpha_pow(static_cast<std::uint64_t>(k))));
            dual_[c] = detail::pack_digits(digits, p);
        }
    }

    FieldParams params_;
    std::vector<int> poly_;
    std::vector<std::uint64_t> coord_;
    std::vector<std::uint32_t> label_of_coord_;
    std::vector<std::uint8_t> trm_;
    std::vector<std::uint8_t> trs_;
    std::vector<std::uint8_t> trm_log2_;
    std::vector<std::uint32_t> pow_ps1_;
    std::vector<std::uint32_t> pow_pl1_;
    std::vector<std::uint64_t> dual_;
    std::vector<FieldElement> subfield_;
    std::uint64_t t0_ = 1;
};

inline FieldContext build_context(int p, int s, int l) { return FieldContext(FieldParams::make(p, s, l)); }

inline int trace_m(const FieldContext& ctx, FieldElement x) { return ctx.trace_m(x); }
inline int trace_s(const FieldContext& ctx, FieldElement y) { return ctx.trace_s(y); }

/// Polynomial over F_p, constant term first.
using PrimePolynomial = std::vector<int>;

/**
 * Minimal polynomial of alpha^e: the product of (x - alpha^i) over the
 * cyclotomic coset of e, expanded in GF(q). Every coefficient has to land
 * in F_p.
 */
inline PrimePolynomial minimal_polynomial(const FieldContext& ctx, std::uint64_t e) {
    const auto coset = cyclotomic_coset(e, ctx.p(), ctx.n());
    std::vector<FieldElement> poly{ctx.one()};
    for (const auto i : coset) {
        const FieldElement root = ctx.alpha_pow(i);
        std::vector<FieldElement> next(poly.size() + 1, ctx.zero());
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k + 1] = ctx.add(next[k + 1], poly[k]);
            next[k] = ctx.sub(next[k], ctx.mul(root, poly[k]));
        }
        poly = std::move(next);
    }
    PrimePolynomial out;
    out.reserve(poly.size());
    for (const auto& c : poly) {
        const auto v = ctx.coordinates(c);
        if (v >= static_cast<std::uint64_t>(ctx.p())) throw std::logic_error("minimal polynomial coefficient outside F_p");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

} // namespace kasami
