/**************************************************************************
 * design.hpp
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
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "closed_form.hpp"
#include "code_family.hpp"
#include "exp_sum.hpp"
#include "field_core.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace kasami {

/// Strictly increasing point labels.
using Block = std::vector<std::uint32_t>;

/// Supports of every codeword of one weight: distinct blocks in lexicographic order with multiplicities.
struct SupportMultiset {
    std::uint64_t weight = 0;
    std::vector<Block> blocks;
    std::vector<std::uint64_t> multiplicity;
    std::uint64_t total = 0; // number of codewords, i.e. A_weight

    /// Histogram multiplicity -> number of distinct supports with it.
    std::map<std::uint64_t, std::uint64_t> multiplicity_histogram() const {
        std::map<std::uint64_t, std::uint64_t> h;
        for (auto m : multiplicity) ++h[m];
        return h;
    }
};

inline constexpr std::uint64_t kDefaultSupportPointCap = std::uint64_t{1} << 27;

/**
 * Collects the support of every codeword of the given weight. Candidate
 * (a, b, c, h) are picked from their exponential-sum value; each candidate
 * codeword is then materialized and its weight confirmed directly.
 */
inline SupportMultiset extract_supports(const FieldContext& ctx, std::uint64_t weight, unsigned threads = 1,
                                        std::uint64_t point_cap = kDefaultSupportPointCap) {
    if (weight == 0) throw std::invalid_argument("weight 0 has no support");
    if (weight >= ctx.q()) throw std::invalid_argument("weight p^m gives the trivial design k = v");
    const int p = ctx.p();
    const auto q = ctx.q();
    using Local = std::map<Block, std::uint64_t>;

    Local merged = parallel_reduce(
        pair_count(ctx), threads, Local{},
        [&](Local& local, std::uint64_t begin, std::uint64_t end) {
            WeightLookup lookup(ctx.params());
            Word g(q);
            std::uint64_t points = 0;
            scan_pairs(ctx, begin, end, [&](FieldElement, FieldElement, const std::vector<std::uint8_t>& f, const std::vector<CycInt>& values) {
                for (std::uint32_t c = 0; c < q; ++c) {
                    const auto& row = lookup.weights(values[c]);
                    bool shifted = false;
                    for (int h = 0; h < p; ++h) {
                        if (row[static_cast<std::size_t>(h)] != weight) continue;
                        if (!shifted) {
                            detail::shift_by_linear(ctx, f, FieldElement{c}, g);
                            shifted = true;
                        }
                        Block blk;
                        blk.reserve(weight);
                        const int zero_at = (p - h) % p;
                        for (std::uint32_t x = 0; x < q; ++x)
                            if (g[x] != zero_at) blk.push_back(x);
                        if (blk.size() != weight) throw std::logic_error("materialized codeword weight disagrees with its exponential sum");
                        points += weight;
                        if (points > point_cap) throw BudgetExceeded("support extraction exceeds the point budget");
                        ++local[std::move(blk)];
                    }
                }
            });
        },
        [](Local& total, Local& part) {
            for (auto& [blk, cnt] : part) total[blk] += cnt;
        });

    if (merged.empty()) throw std::invalid_argument("weight " + std::to_string(weight) + " does not occur in the code");
    SupportMultiset out;
    out.weight = weight;
    out.blocks.reserve(merged.size());
    out.multiplicity.reserve(merged.size());
    for (auto& [blk, cnt] : merged) {
        out.blocks.push_back(blk);
        out.multiplicity.push_back(cnt);
        out.total += cnt;
    }
    return out;
}

/**
 * Largest w <= length with w - floor((w + p - 2) / (p - 1)) < delta. Two
 * codewords of equal support and weight in [delta, w] are scalar multiples.
 */
inline std::uint64_t support_multiplicity_bound(std::uint64_t delta, std::uint64_t length, int p) {
    const auto P = static_cast<std::uint64_t>(p);
    for (std::uint64_t w = length; w > 0; --w)
        if (w - (w + P - 2) / (P - 1) < delta) return w;
    return 0;
}

struct PairWitness {
    std::uint32_t x = 0;
    std::uint32_t y = 0;
    std::uint64_t count = 0;
    std::uint64_t expected = 0;
};

struct TwoDesignReport {
    bool is_design = false;
    std::uint64_t lambda = 0;
    std::optional<PairWitness> witness; // first pair whose coverage differs from pair (0, 1)
};

namespace detail {

inline void check_blocks(const std::vector<Block>& blocks, std::uint64_t v) {
    if (v < 2) throw std::invalid_argument("a 2-design needs at least two points");
    if (blocks.empty()) throw std::invalid_argument("no blocks");
    const auto k = blocks.front().size();
    for (const auto& blk : blocks) {
        if (blk.size() != k) throw std::invalid_argument("blocks have different sizes");
        for (std::size_t i = 0; i < blk.size(); ++i) {
            if (blk[i] >= v) throw std::invalid_argument("block point outside [0, v)");
            if (i > 0 && blk[i] <= blk[i - 1]) throw std::invalid_argument("block is not strictly increasing");
        }
    }
}

inline std::uint64_t pair_index(std::uint64_t x, std::uint64_t y, std::uint64_t v) { return x * v - x * (x + 1) / 2 + (y - x - 1); }

} // namespace detail

/// Exact pair coverage over all C(v, 2) pairs.
inline TwoDesignReport verify_two_design(const std::vector<Block>& blocks, std::uint64_t v) {
    detail::check_blocks(blocks, v);
    std::vector<std::uint32_t> cover(v * (v - 1) / 2, 0);
    for (const auto& blk : blocks)
        for (std::size_t i = 0; i < blk.size(); ++i) {
            const std::uint64_t base = detail::pair_index(blk[i], blk[i] + 1, v);
            for (std::size_t j = i + 1; j < blk.size(); ++j) ++cover[base + (blk[j] - blk[i] - 1)];
        }
    TwoDesignReport rep;
    rep.lambda = cover[0];
    for (std::uint32_t x = 0; x + 1 < v; ++x)
        for (std::uint32_t y = x + 1; y < v; ++y) {
            const auto c = cover[detail::pair_index(x, y, v)];
            if (c != rep.lambda) {
                rep.witness = PairWitness{x, y, c, rep.lambda};
                return rep;
            }
        }
    rep.is_design = true;
    return rep;
}

struct PointRegularity {
    bool regular = false;
    std::uint64_t replication = 0;
    std::optional<std::pair<std::uint32_t, std::uint64_t>> witness; // (point, count)
};

/// Every point must lie in the same number of blocks.
inline PointRegularity point_regularity(const std::vector<Block>& blocks, std::uint64_t v) {
    detail::check_blocks(blocks, v);
    std::vector<std::uint64_t> deg(v, 0);
    for (const auto& blk : blocks)
        for (auto x : blk) ++deg[x];
    PointRegularity rep;
    rep.replication = deg[0];
    for (std::uint32_t x = 0; x < v; ++x)
        if (deg[x] != rep.replication) {
            rep.witness = std::make_pair(x, deg[x]);
            return rep;
        }
    rep.regular = true;
    return rep;
}

/// Seeded uniform pairs x < y from the 64-bit LCG.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> sample_pairs(std::uint64_t v, std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("at least one sampled pair is required");
    if (v < 2) throw std::invalid_argument("a 2-design needs at least two points");
    Lcg64 rng(seed);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    pairs.reserve(trials);
    while (pairs.size() < trials) {
        const auto x = static_cast<std::uint32_t>(draw_below(rng, v));
        const auto y = static_cast<std::uint32_t>(draw_below(rng, v));
        if (x == y) continue;
        pairs.emplace_back(std::min(x, y), std::max(x, y));
    }
    return pairs;
}

struct SampledPair {
    std::uint32_t x = 0;
    std::uint32_t y = 0;
    std::uint64_t count = 0;
};

/// Coverage counts of `trials` random pairs, streamed over the blocks.
inline std::vector<SampledPair> verify_two_design_sampled(const std::vector<Block>& blocks, std::uint64_t v, std::uint64_t trials,
                                                          std::uint64_t seed) {
    const auto pairs = sample_pairs(v, trials, seed);
    detail::check_blocks(blocks, v);
    std::vector<SampledPair> out;
    out.reserve(pairs.size());
    for (const auto& [x, y] : pairs) out.push_back({x, y, 0});
    for (const auto& blk : blocks)
        for (auto& sp : out)
            if (std::binary_search(blk.begin(), blk.end(), sp.x) && std::binary_search(blk.begin(), blk.end(), sp.y)) ++sp.count;
    return out;
}

/// Per-weight coverage of sampled pairs and points, counted over codewords.
struct WeightClassSample {
    std::uint64_t weight = 0;
    std::uint64_t codewords = 0;
    std::vector<std::uint64_t> pair_counts;
    std::vector<std::uint64_t> point_counts;
};

struct CodeDesignSample {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    std::vector<std::uint32_t> points; // distinct endpoints of the sampled pairs
    std::map<std::uint64_t, WeightClassSample> classes;
};

/**
 * Streams the whole code once and, for every nonzero weight below p^m,
 * counts the codewords covering each sampled pair and each sampled point.
 * Blocks are never materialized, which keeps s = 3 classes with millions of
 * supports tractable. Counts are per codeword; a support occurs p - 1 times.
 */
inline CodeDesignSample sample_code_designs(const FieldContext& ctx, std::uint64_t trials, std::uint64_t seed, unsigned threads = 1) {
    CodeDesignSample out;
    out.pairs = sample_pairs(ctx.q(), trials, seed);
    for (const auto& [x, y] : out.pairs) {
        out.points.push_back(x);
        out.points.push_back(y);
    }
    std::sort(out.points.begin(), out.points.end());
    out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());

    std::vector<std::pair<std::size_t, std::size_t>> pair_slots;
    for (const auto& [x, y] : out.pairs) {
        const auto ix = static_cast<std::size_t>(std::lower_bound(out.points.begin(), out.points.end(), x) - out.points.begin());
        const auto iy = static_cast<std::size_t>(std::lower_bound(out.points.begin(), out.points.end(), y) - out.points.begin());
        pair_slots.emplace_back(ix, iy);
    }

    const int p = ctx.p();
    const auto q = ctx.q();
    const std::size_t np = out.points.size();
    std::vector<std::uint8_t> lin(q * np); // Tr_m(c x) for each c and sampled x
    for (std::uint32_t c = 0; c < q; ++c)
        for (std::size_t i = 0; i < np; ++i)
            lin[c * np + i] = static_cast<std::uint8_t>(ctx.trace_m(ctx.mul(FieldElement{c}, FieldElement{out.points[i]})));
    using Local = std::map<std::uint64_t, WeightClassSample>;
    out.classes = parallel_reduce(
        pair_count(ctx), threads, Local{},
        [&](Local& local, std::uint64_t begin, std::uint64_t end) {
            WeightLookup lookup(ctx.params());
            std::vector<int> sym(out.points.size());
            scan_pairs(ctx, begin, end, [&](FieldElement, FieldElement, const std::vector<std::uint8_t>& f, const std::vector<CycInt>& values) {
                for (std::uint32_t c = 0; c < q; ++c) {
                    const auto& row = lookup.weights(values[c]);
                    for (std::size_t i = 0; i < np; ++i) sym[i] = (f[out.points[i]] + lin[c * np + i]) % p;
                    for (int h = 0; h < p; ++h) {
                        const auto w = row[static_cast<std::size_t>(h)];
                        if (w == 0 || w >= q) continue;
                        auto& cls = local[w];
                        if (cls.pair_counts.empty()) {
                            cls.weight = w;
                            cls.pair_counts.assign(out.pairs.size(), 0);
                            cls.point_counts.assign(out.points.size(), 0);
                        }
                        ++cls.codewords;
                        const int zero_at = (p - h) % p;
                        for (std::size_t i = 0; i < sym.size(); ++i) cls.point_counts[i] += (sym[i] != zero_at);
                        for (std::size_t k = 0; k < pair_slots.size(); ++k)
                            cls.pair_counts[k] += (sym[pair_slots[k].first] != zero_at && sym[pair_slots[k].second] != zero_at);
                    }
                }
            });
        },
        [](Local& total, const Local& part) {
            for (const auto& [w, cls] : part) {
                auto& t = total[w];
                if (t.pair_counts.empty()) {
                    t = cls;
                    continue;
                }
                t.codewords += cls.codewords;
                for (std::size_t i = 0; i < t.pair_counts.size(); ++i) t.pair_counts[i] += cls.pair_counts[i];
                for (std::size_t i = 0; i < t.point_counts.size(); ++i) t.point_counts[i] += cls.point_counts[i];
            }
        });
    return out;
}

/// A 2-design as read from or written to a block file.
struct Design {
    std::uint64_t v = 0;
    std::uint64_t k = 0;
    std::uint64_t b = 0;
    std::uint64_t lambda = 0;
    std::vector<Block> blocks;
};

/// Header "v k b lambda", then one block per line, blocks in lexicographic order.
inline void write_block_file(std::ostream& os, const Design& design) {
    os << design.v << ' ' << design.k << ' ' << design.b << ' ' << design.lambda << '\n';
    for (const auto& blk : design.blocks) {
        for (std::size_t i = 0; i < blk.size(); ++i) os << (i ? " " : "") << blk[i];
        os << '\n';
    }
}

inline Design read_block_file(std::istream& is) {
    Design d;
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("block file is empty");
    {
        std::istringstream hs(line);
        if (!(hs >> d.v >> d.k >> d.b >> d.lambda)) throw std::runtime_error("malformed block file header");
    }
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        Block blk;
        std::uint64_t x;
        while (ls >> x) blk.push_back(static_cast<std::uint32_t>(x));
        if (!ls.eof()) throw std::runtime_error("malformed block line");
        if (blk.size() != d.k) throw std::runtime_error("block size differs from header k");
        d.blocks.push_back(std::move(blk));
    }
    if (d.blocks.size() != d.b) throw std::runtime_error("block count differs from header b");
    return d;
}

/// Distinct supports of one weight class packaged as a design, lambda from b C(k,2) = lambda C(v,2).
inline Design design_from_supports(const FieldContext& ctx, const SupportMultiset& supports) {
    Design d;
    d.v = ctx.q();
    d.k = supports.weight;
    d.b = supports.blocks.size();
    d.lambda = lambda_from_counts(d.v, d.k, d.b);
    d.blocks = supports.blocks;
    return d;
}

} // namespace kasami
