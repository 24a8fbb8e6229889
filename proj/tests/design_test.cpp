/**************************************************************************
 * design_test.cpp
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

#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "kasami/design.hpp"

using namespace kasami;

TEST(Supports, TopWeightClass) {
    const auto ctx = build_context(3, 2, 1);
    const auto s = extract_supports(ctx, 72);
    EXPECT_EQ(s.total, 180u);
    EXPECT_EQ(s.blocks.size(), 90u);
    EXPECT_EQ(s.multiplicity_histogram(), (std::map<std::uint64_t, std::uint64_t>{{2, 90}}));
    EXPECT_TRUE(std::is_sorted(s.blocks.begin(), s.blocks.end()));
    const auto rep = verify_two_design(s.blocks, 81);
    EXPECT_TRUE(rep.is_design);
    EXPECT_EQ(rep.lambda, 71u);
    EXPECT_EQ(lambda_from_counts(81, 72, 90), 71u);
    const auto reg = point_regularity(s.blocks, 81);
    EXPECT_TRUE(reg.regular);
    EXPECT_EQ(reg.replication, 80u); // 90 * 72 / 81
}

TEST(Supports, MinimumWeightClass) {
    const auto ctx = build_context(3, 2, 1);
    const auto s = extract_supports(ctx, 45);
    EXPECT_EQ(s.total, 6840u);
    EXPECT_EQ(s.blocks.size(), 3420u);
    for (const auto& sp : verify_two_design_sampled(s.blocks, 81, 50, 1)) EXPECT_EQ(sp.count, 1045u);
    EXPECT_EQ(verify_two_design(s.blocks, 81).lambda, 1045u);
}

TEST(Supports, MiddleClass) {
    const auto ctx = build_context(3, 2, 1);
    const auto s = extract_supports(ctx, 54, 2);
    EXPECT_EQ(s.total, 49920u);
    const auto rep = verify_two_design(s.blocks, 81);
    EXPECT_TRUE(rep.is_design);
    EXPECT_EQ(rep.lambda, 11024u);
    EXPECT_EQ(extract_supports(ctx, 54, 1).blocks, s.blocks);
}

TEST(Supports, Rejections) {
    const auto ctx = build_context(3, 2, 1);
    EXPECT_THROW(extract_supports(ctx, 81), std::invalid_argument);
    EXPECT_THROW(extract_supports(ctx, 0), std::invalid_argument);
    EXPECT_THROW(extract_supports(ctx, 46), std::invalid_argument);
    EXPECT_THROW(extract_supports(ctx, 45, 1, 1000), BudgetExceeded);
}

TEST(Supports, MultiplicityBound) {
    EXPECT_EQ(support_multiplicity_bound(45, 81, 3), 81u);
    EXPECT_EQ(support_multiplicity_bound(405, 729, 3), 729u);
    EXPECT_EQ(support_multiplicity_bound(459, 729, 3), 729u);
    // p = 3: w - floor((w+1)/2) = floor(w/2) < 3 up to w = 5
    EXPECT_EQ(support_multiplicity_bound(3, 100, 3), 5u);
}

TEST(TwoDesign, CompleteBlockAndWitness) {
    const Block all{0, 1, 2, 3, 4};
    const auto rep = verify_two_design({all}, 5);
    EXPECT_TRUE(rep.is_design);
    EXPECT_EQ(rep.lambda, 1u);

    // Fano plane, then break one line
    std::vector<Block> fano{{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
    EXPECT_EQ(verify_two_design(fano, 7).lambda, 1u);
    fano.back() = {2, 4, 6};
    const auto bad = verify_two_design(fano, 7);
    EXPECT_FALSE(bad.is_design);
    ASSERT_TRUE(bad.witness.has_value());
    EXPECT_EQ(bad.witness->x, 2u);
    EXPECT_EQ(bad.witness->y, 5u);
    EXPECT_EQ(bad.witness->count, 0u);
    EXPECT_FALSE(point_regularity(fano, 7).regular);
}

TEST(TwoDesign, InputValidation) {
    EXPECT_THROW(verify_two_design({{0, 1}, {0, 1, 2}}, 3), std::invalid_argument);
    EXPECT_THROW(verify_two_design({{1, 0}}, 3), std::invalid_argument);
    EXPECT_THROW(verify_two_design({{0, 3}}, 3), std::invalid_argument);
    EXPECT_THROW(verify_two_design_sampled({{0, 1}}, 3, 0, 1), std::invalid_argument);
}

TEST(TwoDesign, SamplingIsSeeded) {
    const auto a = sample_pairs(81, 50, 7), b = sample_pairs(81, 50, 7), c = sample_pairs(81, 50, 8);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
    for (auto [x, y] : a) EXPECT_LT(x, y);
}

TEST(BlockFile, RoundTrip) {
    const auto ctx = build_context(3, 2, 1);
    const auto design = design_from_supports(ctx, extract_supports(ctx, 72));
    std::stringstream ss;
    write_block_file(ss, design);
    const auto back = read_block_file(ss);
    EXPECT_EQ(back.v, 81u);
    EXPECT_EQ(back.k, 72u);
    EXPECT_EQ(back.b, 90u);
    EXPECT_EQ(back.lambda, 71u);
    EXPECT_EQ(back.blocks, design.blocks);

    std::stringstream bad("81 72 2 71\n0 1 2\n");
    EXPECT_THROW(read_block_file(bad), std::runtime_error);
}

TEST(CodeSampling, AgreesWithMaterializedSupports) {
    const auto ctx = build_context(3, 2, 1);
    const auto sample = sample_code_designs(ctx, 30, 5);
    ASSERT_EQ(sample.classes.size(), 8u);
    for (const auto& [w, cls] : sample.classes) {
        const auto supports = extract_supports(ctx, w);
        EXPECT_EQ(cls.codewords, supports.total);
        std::vector<Block> all; // every codeword, with repeats
        for (std::size_t i = 0; i < supports.blocks.size(); ++i)
            for (std::uint64_t r = 0; r < supports.multiplicity[i]; ++r) all.push_back(supports.blocks[i]);
        const auto counted = verify_two_design_sampled(all, 81, 30, 5);
        for (std::size_t k = 0; k < counted.size(); ++k) EXPECT_EQ(cls.pair_counts[k], counted[k].count);
    }
    EXPECT_EQ(sample_code_designs(ctx, 30, 5, 3).classes.at(45).pair_counts, sample.classes.at(45).pair_counts);
}
