/**************************************************************************
 * exp_sum.hpp
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
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "cyclotomic_int.hpp"
#include "field_core.hpp"
#include "parallel.hpp"

namespace kasami {

/// Multiset of exponential-sum values with their counts.
struct ValueDistribution {
    std::map<CycInt, std::uint64_t> entries;

    void add(const CycInt& v, std::uint64_t count) {
        if (count != 0) entries[v] += count;
    }

    void merge(const ValueDistribution& o) {
        for (const auto& [v, c] : o.entries) entries[v] += c;
    }

    std::uint64_t count(const CycInt& v) const {
        auto it = entries.find(v);
        return it == entries.end() ? 0 : it->second;
    }

    std::uint64_t total() const {
        std::uint64_t t = 0;
        for (const auto& [v, c] : entries) t += c;
        return t;
    }

    friend bool operator==(const ValueDistribution&, const ValueDistribution&) = default;
};

/// f(x) = Tr_s(a x^(p^s+1)) + Tr_m(b x^(p^l+1)) mod p, indexed by label.
inline std::vector<std::uint8_t> exponent_table(const FieldContext& ctx, FieldElement a, FieldElement b) {
    if (!ctx.in_subfield(a)) throw std::domain_error("a must lie in GF(p^s)");
    const auto q = static_cast<std::uint32_t>(ctx.q());
    const int p = ctx.p();
    std::vector<std::uint8_t> f(q, 0);
    for (std::uint32_t x = 1; x < q; ++x) {
        const FieldElement xe{x};
        const int v = ctx.trace_s(ctx.mul(a, ctx.pow_ps1(xe))) + ctx.trace_m(ctx.mul(b, ctx.pow_pl1(xe)));
        f[x] = static_cast<std::uint8_t>(v % p);
    }
    return f;
}

/**
 * S(a, b, c) straight from the definition: one exponent per x, tallied
 * over F_p and reduced to the integral basis.
 */
inline CycInt s_value_naive(const FieldContext& ctx, FieldElement a, FieldElement b, FieldElement c) {
    if (!ctx.in_subfield(a)) throw std::domain_error("a must lie in GF(p^s)");
    const int p = ctx.p();
    const std::uint64_t ps1 = ipow(static_cast<std::uint64_t>(p), static_cast<unsigned>(ctx.params().s)) + 1;
    const std::uint64_t pl1 = ipow(static_cast<std::uint64_t>(p), static_cast<unsigned>(ctx.params().l)) + 1;
    std::map<int, std::uint64_t> tally;
    for (std::uint32_t xi = 0; xi < ctx.q(); ++xi) {
        const FieldElement x{xi};
        const FieldElement y = ctx.pow(x, ps1);
        const FieldElement lin = ctx.add(ctx.mul(b, ctx.pow(x, pl1)), ctx.mul(c, x));
        tally[(ctx.trace_s(ctx.mul(a, y)) + ctx.trace_m(lin)) % p] += 1;
    }
    return from_exponent_tally(tally, p);
}

/**
 * Additive-character transform over GF(q) viewed as F_p^m.
 *
 * Given exponents f(x), produces sum_x zeta^(f(x) + Tr_m(c x)) for every c
 * with m radix-p butterfly stages. Entries carry p unreduced coefficients
 * (one per power of zeta), so multiplying by zeta^k is a rotation.
 * Instances hold scratch buffers; use one per thread.
 */
class CharacterTransform {
public:
    explicit CharacterTransform(const FieldContext& ctx)
        : ctx_(&ctx), p_(static_cast<std::size_t>(ctx.p())), q_(ctx.q()), buf_(q_ * p_), line_(p_ * p_) {}

    void run(std::span<const std::uint8_t> f, std::vector<CycInt>& out) {
        const std::size_t p = p_;
        std::fill(buf_.begin(), buf_.end(), 0);
        for (std::uint32_t x = 0; x < q_; ++x) buf_[ctx_->coordinates(FieldElement{x}) * p + f[x]] = 1;

        for (std::size_t stride = 1; stride < q_; stride *= p) {
            const std::size_t span = stride * p;
            for (std::size_t start = 0; start < q_; start += span) {
                for (std::size_t off = 0; off < stride; ++off) {
                    const std::size_t base = start + off;
                    std::fill(line_.begin(), line_.end(), 0);
                    for (std::size_t u = 0; u < p; ++u) {
                        std::int32_t* dst = &line_[u * p];
                        for (std::size_t t = 0; t < p; ++t) {
                            const std::int32_t* src = &buf_[(base + t * stride) * p];
                            const std::size_t shift = (u * t) % p;
                            for (std::size_t i = 0; i < p; ++i) {
                                const std::size_t k = i + shift;
                                dst[k < p ? k : k - p] += src[i];
                            }
                        }
                    }
                    for (std::size_t u = 0; u < p; ++u)
                        std::copy_n(&line_[u * p], p, &buf_[(base + u * stride) * p]);
                }
            }
        }

        out.resize(q_);
        const int pi = static_cast<int>(p);
        for (std::uint32_t c = 0; c < q_; ++c) {
            const std::int32_t* entry = &buf_[ctx_->dual_index(FieldElement{c}) * p];
            out[c] = CycInt::from_unreduced<std::int32_t>(pi, std::span<const std::int32_t>(entry, p));
        }
    }

private:
    const FieldContext* ctx_;
    std::size_t p_;
    std::uint64_t q_;
    std::vector<std::int32_t> buf_;
    std::vector<std::int32_t> line_;
};

/// The map c -> S(a, b, c) for all q values of c, indexed by label.
inline std::vector<CycInt> s_values_transform(const FieldContext& ctx, FieldElement a, FieldElement b) {
    const auto f = exponent_table(ctx, a, b);
    CharacterTransform tr(ctx);
    std::vector<CycInt> out;
    tr.run(f, out);
    return out;
}

/// Number of (a, b) pairs: p^s * q. Pair i is (subfield[i / q], label i % q).
inline std::uint64_t pair_count(const FieldContext& ctx) { return ctx.subfield_elements().size() * ctx.q(); }

inline std::pair<FieldElement, FieldElement> pair_at(const FieldContext& ctx, std::uint64_t i) {
    return {ctx.subfield_elements()[i / ctx.q()], FieldElement{static_cast<std::uint32_t>(i % ctx.q())}};
}

/**
 * Calls visit(a, b, S) for each pair in [begin, end), where S holds S(a,b,c)
 * for every c. Shared driver for the distribution and extraction scans.
 */
template <typename Visit>
void scan_pairs(const FieldContext& ctx, std::uint64_t begin, std::uint64_t end, Visit&& visit) {
    CharacterTransform tr(ctx);
    std::vector<CycInt> values;
    for (std::uint64_t i = begin; i < end; ++i) {
        const auto [a, b] = pair_at(ctx, i);
        const auto f = exponent_table(ctx, a, b);
        tr.run(f, values);
        visit(a, b, f, values);
    }
}

/// Exact tally of S(a, b, c) over all p^s q^2 triples.
inline ValueDistribution value_distribution(const FieldContext& ctx, unsigned threads = 1) {
    return parallel_reduce(
        pair_count(ctx), threads, ValueDistribution{},
        [&](ValueDistribution& local, std::uint64_t begin, std::uint64_t end) {
            scan_pairs(ctx, begin, end, [&](FieldElement, FieldElement, const auto&, const std::vector<CycInt>& values) {
                for (const auto& v : values) ++local.entries[v];
            });
        },
        [](ValueDistribution& total, const ValueDistribution& part) { total.merge(part); });
}

/**
 * Zero count T of the symbol function for exponential sum S and shift h:
 * T = p^(m-1) + (1/p) sum_{y in F_p^*} zeta^(y h) sigma_y(S).
 */
inline std::uint64_t t_value(const CycInt& S, int h, const FieldParams& fp) {
    const int p = fp.p;
    if (S.prime() != p) throw std::invalid_argument("S is over a different prime");
    CycInt acc(p);
    for (int y = 1; y < p; ++y) acc += CycInt::zeta_power(p, y * h) * galois_apply(S, y);
    const auto r = acc.as_integer();
    if (!r) throw std::logic_error("character sum for T is not a rational integer: " + acc.pretty());
    if (*r % p != 0) throw std::logic_error("character sum for T is not divisible by p");
    const auto base = static_cast<std::int64_t>(fp.q / static_cast<std::uint64_t>(p));
    const std::int64_t T = base + *r / p;
    if (T < 0 || static_cast<std::uint64_t>(T) > fp.q) throw std::logic_error("T outside [0, p^m]");
    return static_cast<std::uint64_t>(T);
}

inline std::uint64_t t_value(const CycInt& S, int h, const FieldContext& ctx) { return t_value(S, h, ctx.params()); }

inline std::uint64_t weight_from_t(std::uint64_t T, const FieldParams& fp) {
    if (T > fp.q) throw std::logic_error("T exceeds p^m");
    return fp.q - T;
}

inline std::uint64_t weight_from_t(std::uint64_t T, const FieldContext& ctx) { return weight_from_t(T, ctx.params()); }

/// Memoized S -> (weight for h = 0..p-1).
class WeightLookup {
public:
    using Row = std::array<std::uint64_t, CycInt::kMaxPrime>;

    explicit WeightLookup(const FieldParams& fp) : fp_(fp) {}

    const Row& weights(const CycInt& S) {
        auto it = cache_.find(S);
        if (it != cache_.end()) return it->second;
        Row row{};
        for (int h = 0; h < fp_.p; ++h) row[static_cast<std::size_t>(h)] = weight_from_t(t_value(S, h, fp_), fp_);
        return cache_.emplace(S, row).first->second;
    }

private:
    FieldParams fp_;
    std::map<CycInt, Row> cache_;
};

} // namespace kasami
