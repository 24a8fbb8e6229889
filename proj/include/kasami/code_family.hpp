/**************************************************************************
 * code_family.hpp
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
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "exp_sum.hpp"
#include "field_core.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace kasami {

/// Symbols over F_p in point-label order [0, alpha^0, ..., alpha^(q-2)].
using Word = std::vector<std::uint8_t>;

struct CodewordParams {
    FieldElement a;
    FieldElement b;
    FieldElement c;
    int h = 0;
};

struct WeightDistribution {
    std::map<std::uint64_t, std::uint64_t> entries;

    std::uint64_t count(std::uint64_t w) const {
        auto it = entries.find(w);
        return it == entries.end() ? 0 : it->second;
    }

    std::uint64_t total() const {
        std::uint64_t t = 0;
        for (const auto& [w, c] : entries) t += c;
        return t;
    }

    void merge(const WeightDistribution& o) {
        for (const auto& [w, c] : o.entries) entries[w] += c;
    }

    friend bool operator==(const WeightDistribution&, const WeightDistribution&) = default;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 35;

inline std::uint64_t hamming_weight(std::span<const std::uint8_t> word) {
    std::uint64_t w = 0;
    for (auto v : word) w += (v != 0);
    return w;
}

/// Tr_s(a x^(p^s+1)) + Tr_m(b x^(p^l+1) + c x) + h at every point.
inline Word codeword(const FieldContext& ctx, const CodewordParams& cp) {
    if (!ctx.in_subfield(cp.a)) throw std::domain_error("a must lie in GF(p^s)");
    const int p = ctx.p();
    const int h = ((cp.h % p) + p) % p;
    Word word(ctx.q());
    for (std::uint32_t xi = 0; xi < ctx.q(); ++xi) {
        const FieldElement x{xi};
        const FieldElement lin = ctx.add(ctx.mul(cp.b, ctx.pow_pl1(x)), ctx.mul(cp.c, x));
        word[xi] = static_cast<std::uint8_t>((ctx.trace_s(ctx.mul(cp.a, ctx.pow_ps1(x))) + ctx.trace_m(lin) + h) % p);
    }
    return word;
}

namespace detail {

// g(x) = f(x) + Tr_m(c x) mod p, for every label x.
inline void shift_by_linear(const FieldContext& ctx, std::span<const std::uint8_t> f, FieldElement c, std::span<std::uint8_t> g) {
    const auto q = ctx.q();
    const auto p = static_cast<std::uint8_t>(ctx.p());
    if (c.is_zero()) {
        std::copy(f.begin(), f.end(), g.begin());
        return;
    }
    const std::uint8_t* row = ctx.trace_by_log().data() + ctx.log(c);
    g[0] = f[0];
    for (std::uint64_t x = 1; x < q; ++x) {
        const auto v = static_cast<std::uint8_t>(f[x] + row[x - 1]);
        g[x] = v >= p ? static_cast<std::uint8_t>(v - p) : v;
    }
}

inline std::array<std::uint64_t, CycInt::kMaxPrime> symbol_histogram(std::span<const std::uint8_t> g, int p) {
    std::array<std::uint64_t, CycInt::kMaxPrime> hist{};
    std::uint64_t seen = 0;
    for (int k = 0; k + 1 < p; ++k) {
        std::uint32_t cnt = 0;
        const auto kk = static_cast<std::uint8_t>(k);
        for (std::size_t x = 0; x < g.size(); ++x) cnt += (g[x] == kk);
        hist[static_cast<std::size_t>(k)] = cnt;
        seen += cnt;
    }
    hist[static_cast<std::size_t>(p - 1)] = g.size() - seen;
    return hist;
}

} // namespace detail

/// Symbol evaluations the enumeration oracle would perform: p^(5s+1) * q.
inline unsigned __int128 enumeration_cost(const FieldParams& fp) {
    unsigned __int128 cost = fp.q;
    for (int i = 0; i < 5 * fp.s + 1; ++i) cost *= static_cast<unsigned>(fp.p);
    return cost;
}

/**
 * Weight distribution by direct enumeration of every codeword. One pass
 * over the coordinates per (a, b, c) gives the symbol histogram, which
 * yields the weights for all p shifts h at once.
 */
inline WeightDistribution weight_distribution_enumerate(const FieldContext& ctx, std::uint64_t budget = kDefaultEnumerationBudget,
                                                        unsigned threads = 1) {
    if (enumeration_cost(ctx.params()) > budget)
        throw BudgetExceeded("enumeration exceeds the symbol-evaluation budget; use the exponential-sum method (--method sums)");
    const int p = ctx.p();
    const auto q = ctx.q();
    return parallel_reduce(
        pair_count(ctx), threads, WeightDistribution{},
        [&](WeightDistribution& local, std::uint64_t begin, std::uint64_t end) {
            Word g(q);
            for (std::uint64_t i = begin; i < end; ++i) {
                const auto [a, b] = pair_at(ctx, i);
                const auto f = exponent_table(ctx, a, b);
                for (std::uint32_t c = 0; c < q; ++c) {
                    detail::shift_by_linear(ctx, f, FieldElement{c}, g);
                    const auto hist = detail::symbol_histogram(g, p);
                    for (int h = 0; h < p; ++h) ++local.entries[q - hist[static_cast<std::size_t>((p - h) % p)]];
                }
            }
        },
        [](WeightDistribution& total, const WeightDistribution& part) { total.merge(part); });
}

/// Pushes an S-value distribution through T and w = p^m - T for every shift h.
inline WeightDistribution weights_from_values(const FieldParams& fp, const ValueDistribution& values) {
    WeightDistribution out;
    WeightLookup lookup(fp);
    for (const auto& [S, count] : values.entries) {
        const auto& row = lookup.weights(S);
        for (int h = 0; h < fp.p; ++h) {
            const auto w = row[static_cast<std::size_t>(h)];
            if (w > fp.q) throw std::logic_error("weight outside [0, p^m]");
            out.entries[w] += count;
        }
    }
    return out;
}

inline WeightDistribution weight_distribution_via_sums(const FieldContext& ctx, unsigned threads = 1) {
    return weights_from_values(ctx.params(), value_distribution(ctx, threads));
}

/**
 * Row-reduced basis over F_p. Rows are kept in reduced echelon form, so a
 * word is in the span exactly when reducing it against the pivots leaves
 * zero.
 */
class CodeBasis {
public:
    CodeBasis(int p, std::size_t length) : p_(p), length_(length) {}

    std::size_t rank() const { return rows_.size(); }
    std::size_t length() const { return length_; }
    const std::vector<Word>& rows() const { return rows_; }

    /// Adds a row; returns whether the rank grew.
    bool insert(Word row) {
        if (row.size() != length_) throw std::invalid_argument("row length mismatch");
        reduce(row);
        std::size_t pivot = 0;
        while (pivot < length_ && row[pivot] == 0) ++pivot;
        if (pivot == length_) return false;
        const int inv = inverse(row[pivot]);
        for (auto& v : row) v = static_cast<std::uint8_t>((v * inv) % p_);
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const int factor = rows_[r][pivot];
            if (factor != 0) axpy(rows_[r], row, p_ - factor);
        }
        rows_.push_back(std::move(row));
        pivots_.push_back(pivot);
        return true;
    }

    bool contains(std::span<const std::uint8_t> word) const {
        if (word.size() != length_) throw std::invalid_argument("word length mismatch");
        Word w(word.begin(), word.end());
        reduce(w);
        for (auto v : w)
            if (v != 0) return false;
        return true;
    }

private:
    void reduce(Word& w) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const int factor = w[pivots_[r]];
            if (factor != 0) axpy(w, rows_[r], p_ - factor);
        }
    }

    // dst += k * src
    void axpy(Word& dst, const Word& src, int k) const {
        for (std::size_t i = 0; i < length_; ++i) dst[i] = static_cast<std::uint8_t>((dst[i] + k * src[i]) % p_);
    }

    int inverse(int v) const {
        for (int t = 1; t < p_; ++t)
            if ((t * v) % p_ == 1) return t;
        throw std::logic_error("no inverse mod p");
    }

    int p_;
    std::size_t length_;
    std::vector<Word> rows_;
    std::vector<std::size_t> pivots_;
};

/// Codewords for the natural F_p-basis directions of (a, b, c, h): s + m + m + 1 of them.
inline std::vector<Word> generator_words(const FieldContext& ctx) {
    std::vector<Word> gens;
    const FieldElement beta = ctx.alpha_pow(ctx.subfield_step());
    FieldElement a = ctx.one();
    for (int i = 0; i < ctx.params().s; ++i, a = ctx.mul(a, beta)) gens.push_back(codeword(ctx, {a, ctx.zero(), ctx.zero(), 0}));
    for (int k = 0; k < ctx.m(); ++k) gens.push_back(codeword(ctx, {ctx.zero(), ctx.alpha_pow(static_cast<std::uint64_t>(k)), ctx.zero(), 0}));
    for (int k = 0; k < ctx.m(); ++k) gens.push_back(codeword(ctx, {ctx.zero(), ctx.zero(), ctx.alpha_pow(static_cast<std::uint64_t>(k)), 0}));
    gens.push_back(codeword(ctx, {ctx.zero(), ctx.zero(), ctx.zero(), 1}));
    return gens;
}

/// Row-reduces the generator set; the rank must be 5s + 1.
inline CodeBasis verify_dimension(const FieldContext& ctx) {
    CodeBasis basis(ctx.p(), ctx.q());
    for (auto& g : generator_words(ctx)) basis.insert(std::move(g));
    const auto expected = static_cast<std::size_t>(5 * ctx.params().s + 1);
    if (basis.rank() != expected)
        throw std::runtime_error("code dimension is " + std::to_string(basis.rank()) + ", expected " + std::to_string(expected));
    return basis;
}

inline bool contains(const CodeBasis& basis, std::span<const std::uint8_t> word) { return basis.contains(word); }

/// Moves the symbol at point x to point g x + t.
inline Word affine_image(std::span<const std::uint8_t> word, FieldElement g, FieldElement t, const FieldContext& ctx) {
    if (g.is_zero()) throw std::invalid_argument("affine multiplier must be nonzero");
    if (word.size() != ctx.q()) throw std::invalid_argument("word length mismatch");
    Word out(word.size());
    for (std::uint32_t x = 0; x < ctx.q(); ++x) out[ctx.add(ctx.mul(g, FieldElement{x}), t).index] = word[x];
    return out;
}

/// {0} ∪ C_1 ∪ C_(p^l+1) ∪ C_(p^s+1), exponents reduced mod n.
inline std::set<std::uint64_t> extended_defining_set(const FieldContext& ctx) {
    const auto& fp = ctx.params();
    const std::uint64_t n = fp.n;
    const auto P = static_cast<std::uint64_t>(fp.p);
    std::set<std::uint64_t> set{0};
    for (const std::uint64_t e : {std::uint64_t{1}, (ipow(P, static_cast<unsigned>(fp.l)) + 1) % n, (ipow(P, static_cast<unsigned>(fp.s)) + 1) % n})
        for (auto v : cyclotomic_coset(e, fp.p, n)) set.insert(v);
    return set;
}

struct DefiningSetCheck {
    bool affine_invariant = true;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> witness; // (u, r): r ⪯ u, u in set, r not
};

/// Digit-dominance closure test on an extended defining set.
inline DefiningSetCheck defining_set_check(const std::set<std::uint64_t>& set, int p, int m) {
    for (const auto u : set)
        for (std::uint64_t r = 0; r <= u; ++r)
            if (digit_dominated(r, u, p, m) && !set.contains(r)) return {false, std::make_pair(u, r)};
    return {};
}

inline DefiningSetCheck defining_set_check(const FieldContext& ctx) {
    return defining_set_check(extended_defining_set(ctx), ctx.p(), ctx.m());
}

inline CodewordParams random_codeword_params(const FieldContext& ctx, Lcg64& rng) {
    const auto& sub = ctx.subfield_elements();
    CodewordParams cp;
    cp.a = sub[draw_below(rng, sub.size())];
    cp.b = FieldElement{static_cast<std::uint32_t>(draw_below(rng, ctx.q()))};
    cp.c = FieldElement{static_cast<std::uint32_t>(draw_below(rng, ctx.q()))};
    cp.h = static_cast<int>(draw_below(rng, static_cast<std::uint64_t>(ctx.p())));
    return cp;
}

struct AffineTrialReport {
    std::uint64_t trials = 0;
    std::uint64_t passed = 0;
};

/// Random (codeword, g, t) permutation-membership trials.
inline AffineTrialReport affine_trials(const FieldContext& ctx, const CodeBasis& basis, std::uint64_t trials, std::uint64_t seed) {
    Lcg64 rng(seed);
    AffineTrialReport rep;
    for (std::uint64_t i = 0; i < trials; ++i) {
        const auto word = codeword(ctx, random_codeword_params(ctx, rng));
        const FieldElement g{static_cast<std::uint32_t>(1 + draw_below(rng, ctx.n()))};
        const FieldElement t{static_cast<std::uint32_t>(draw_below(rng, ctx.q()))};
        ++rep.trials;
        if (basis.contains(affine_image(word, g, t, ctx))) ++rep.passed;
    }
    return rep;
}

} // namespace kasami
