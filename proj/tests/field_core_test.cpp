/**************************************************************************
 * field_core_test.cpp
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
#include <vector>

#include "kasami/field_core.hpp"

using namespace kasami;

namespace {

// Schoolbook arithmetic in F_p[x]/(f), kept apart from the table code.
struct PolyField {
    int p;
    std::vector<int> f; // monic, c0..cm

    int m() const { return static_cast<int>(f.size()) - 1; }

    std::vector<int> mul(const std::vector<int>& a, const std::vector<int>& b) const {
        std::vector<int> r(2 * m(), 0);
        for (int i = 0; i < m(); ++i)
            for (int j = 0; j < m(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
        for (int k = 2 * m() - 1; k >= m(); --k) {
            const int c = r[k];
            if (c == 0) continue;
            for (int i = 0; i <= m(); ++i) r[k - m() + i] = ((r[k - m() + i] - c * f[i]) % p + p) % p;
        }
        r.resize(m());
        return r;
    }

    std::vector<int> pow(std::vector<int> a, std::uint64_t e) const {
        std::vector<int> r(m(), 0);
        r[0] = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    std::vector<int> x() const {
        std::vector<int> v(m(), 0);
        v[1] = 1;
        return v;
    }

    std::uint64_t pack(const std::vector<int>& v) const {
        std::uint64_t r = 0;
        for (int i = m() - 1; i >= 0; --i) r = r * p + v[i];
        return r;
    }
};

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) out.push_back(n);
    return out;
}

bool brute_primitive(const PolyField& pf, std::uint64_t n) {
    if (pf.f[0] == 0) return false;
    std::vector<int> one(pf.m(), 0);
    one[0] = 1;
    if (pf.pow(pf.x(), n) != one) return false;
    for (auto r : prime_factors(n))
        if (pf.pow(pf.x(), n / r) == one) return false;
    return true;
}

// Lexicographically smallest (c0 most significant) monic primitive polynomial by exhaustive search.
std::vector<int> brute_smallest_primitive(int p, int m) {
    const std::uint64_t n = ipow(static_cast<std::uint64_t>(p), static_cast<unsigned>(m)) - 1;
    const std::uint64_t total = n + 1;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<int> f(static_cast<std::size_t>(m) + 1, 0);
        std::uint64_t c = code;
        for (int i = m - 1; i >= 0; --i) {
            f[static_cast<std::size_t>(i)] = static_cast<int>(c % p);
            c /= p;
        }
        f[static_cast<std::size_t>(m)] = 1;
        if (brute_primitive(PolyField{p, f}, n)) return f;
    }
    return {};
}

} // namespace

TEST(FieldParams, GoldCases) {
    auto a = FieldParams::make(3, 2, 1);
    EXPECT_EQ(a.q, 81u);
    EXPECT_EQ(a.n, 80u);
    EXPECT_EQ(a.d, 1);
    EXPECT_EQ(a.dprime, 1);
    EXPECT_EQ(a.kase, ParamCase::OddD);

    auto b = FieldParams::make(3, 3, 1);
    EXPECT_EQ(b.q, 729u);
    EXPECT_EQ(b.d, 1);
    EXPECT_EQ(b.dprime, 2);
    EXPECT_EQ(b.kase, ParamCase::TwoD);

    auto c = FieldParams::make(3, 3, 2);
    EXPECT_EQ(c.d, 1);
    EXPECT_EQ(c.dprime, 1);
    EXPECT_EQ(c.kase, ParamCase::OddD);

    auto e = FieldParams::make(3, 4, 2);
    EXPECT_EQ(e.d, 2);
    EXPECT_EQ(e.dprime, 2);
    EXPECT_EQ(e.kase, ParamCase::EvenD);
}

TEST(FieldParams, Rejections) {
    EXPECT_THROW(FieldParams::make(9, 2, 1), ParameterError);
    EXPECT_THROW(FieldParams::make(2, 2, 1), ParameterError);
    EXPECT_THROW(FieldParams::make(3, 1, 0), ParameterError);
    EXPECT_THROW(FieldParams::make(3, 2, 4), ParameterError);
    EXPECT_THROW(FieldParams::make(3, 2, -1), ParameterError);
    try {
        FieldParams::make(3, 2, 2);
        FAIL();
    } catch (const ParameterError& e) {
        EXPECT_STREQ(e.what(), "l must differ from s");
    }
    EXPECT_THROW(build_context(3, 5, 1), ParameterError); // q = 3^10 beyond the tables
}

TEST(PrimitivePolynomial, MatchesExhaustiveSearch) {
    for (auto [p, m] : std::vector<std::pair<int, int>>{{3, 4}, {3, 6}, {5, 4}, {7, 4}, {3, 8}}) {
        if (p == 3 && m == 8) continue; // 6561 candidates, covered by the context test below
        EXPECT_EQ(smallest_primitive_polynomial(p, m), brute_smallest_primitive(p, m)) << p << "^" << m;
    }
}

TEST(FieldContext, TablesAgreeWithPolynomialArithmetic) {
    for (auto [p, s, l] : std::vector<std::tuple<int, int, int>>{{3, 2, 1}, {3, 3, 1}, {5, 2, 1}}) {
        const auto ctx = build_context(p, s, l);
        const PolyField pf{p, ctx.primitive_polynomial()};
        std::vector<int> cur(pf.m(), 0);
        cur[0] = 1;
        for (std::uint64_t k = 0; k < ctx.n(); ++k) {
            ASSERT_EQ(ctx.coordinates(ctx.alpha_pow(k)), pf.pack(cur)) << "alpha^" << k;
            cur = pf.mul(cur, pf.x());
        }
        EXPECT_EQ(ctx.coordinates(ctx.zero()), 0u);
    }
}

TEST(FieldContext, MultiplicationAndFrobenius) {
    const auto ctx = build_context(3, 2, 1);
    for (std::uint32_t a = 1; a < ctx.q(); ++a)
        for (std::uint32_t b = 1; b < ctx.q(); ++b)
            ASSERT_EQ(ctx.log(ctx.mul({a}, {b})), (ctx.log({a}) + ctx.log({b})) % ctx.n());
    std::vector<bool> seen(ctx.q(), false);
    for (std::uint32_t x = 0; x < ctx.q(); ++x) seen[ctx.frobenius({x}).index] = true;
    for (std::uint32_t x = 0; x < ctx.q(); ++x) EXPECT_TRUE(seen[x]);
    for (int v = 0; v < 3; ++v) EXPECT_EQ(ctx.frobenius(ctx.from_prime_field(v)), ctx.from_prime_field(v));
    for (std::uint32_t x = 0; x < ctx.q(); ++x) {
        EXPECT_EQ(ctx.add(ctx.element(x), ctx.neg(ctx.element(x))), ctx.zero());
        if (x) EXPECT_EQ(ctx.mul({x}, ctx.inv({x})), ctx.one());
    }
}

TEST(Trace, ValuesAndBalance) {
    const auto ctx = build_context(3, 2, 1);
    EXPECT_EQ(trace_m(ctx, ctx.zero()), 0);
    EXPECT_EQ(trace_m(ctx, ctx.one()), 1);
    EXPECT_EQ(trace_s(ctx, ctx.zero()), 0);
    EXPECT_EQ(trace_s(ctx, ctx.one()), 2);

    std::map<int, int> hm, hs;
    for (std::uint32_t x = 0; x < ctx.q(); ++x) ++hm[ctx.trace_m({x})];
    EXPECT_EQ(hm, (std::map<int, int>{{0, 27}, {1, 27}, {2, 27}}));
    for (auto y : ctx.subfield_elements()) ++hs[ctx.trace_s(y)];
    EXPECT_EQ(hs, (std::map<int, int>{{0, 3}, {1, 3}, {2, 3}}));
    EXPECT_THROW(ctx.trace_s(ctx.alpha_pow(1)), std::domain_error);
}

TEST(Trace, MatchesFrobeniusSumAndTower) {
    for (auto [p, s, l] : std::vector<std::tuple<int, int, int>>{{3, 2, 1}, {3, 3, 1}, {5, 2, 1}, {7, 2, 1}}) {
        const auto ctx = build_context(p, s, l);
        const PolyField pf{p, ctx.primitive_polynomial()};
        const auto ps = ipow(static_cast<std::uint64_t>(p), static_cast<unsigned>(s));
        for (std::uint32_t xi = 0; xi < ctx.q(); ++xi) {
            const FieldElement x{xi};
            // oracle: sum of x^(p^i) in F_p[x]/(f), must be a constant
            std::vector<int> poly(pf.m(), 0);
            if (xi) {
                const auto base = pf.pow(pf.x(), ctx.log(x));
                std::vector<int> term = base;
                for (int i = 0; i < ctx.m(); ++i) {
                    for (int k = 0; k < pf.m(); ++k) poly[k] = (poly[k] + term[k]) % p;
                    term = pf.pow(term, static_cast<std::uint64_t>(p));
                }
            }
            for (int k = 1; k < pf.m(); ++k) ASSERT_EQ(poly[k], 0);
            ASSERT_EQ(ctx.trace_m(x), poly[0]);
            ASSERT_EQ(ctx.trace_m(ctx.frobenius(x)), ctx.trace_m(x));
            const auto y = ctx.pow(x, ps + 1);
            ASSERT_TRUE(ctx.in_subfield(y));
            ASSERT_EQ(ctx.pow(y, ps), y);
            ASSERT_EQ(ctx.pow_ps1(x), y);
            ASSERT_EQ(ctx.trace_m(x), ctx.trace_s(ctx.add(x, ctx.pow(x, ps))));
        }
        // alpha^t0 generates the nonzero subfield
        std::uint64_t order = 1;
        FieldElement g = ctx.alpha_pow(ctx.subfield_step());
        for (FieldElement cur = g; cur != ctx.one(); cur = ctx.mul(cur, g)) ++order;
        EXPECT_EQ(order, ps - 1);
    }
}

TEST(Cosets, Examples) {
    EXPECT_EQ(cyclotomic_coset(1, 3, 80), (std::vector<std::uint64_t>{1, 3, 9, 27}));
    EXPECT_EQ(cyclotomic_coset(10, 3, 80), (std::vector<std::uint64_t>{10, 30}));
    EXPECT_EQ(cyclotomic_coset(0, 3, 80), (std::vector<std::uint64_t>{0}));
    EXPECT_EQ(coset_leader(54, 3, 80), 2u);
}

TEST(Digits, Examples) {
    EXPECT_EQ(p_adic_digits(10, 3, 4), (std::vector<int>{1, 0, 1, 0}));
    EXPECT_EQ(p_adic_digits(0, 5, 4), (std::vector<int>{0, 0, 0, 0}));
    EXPECT_EQ(p_adic_digits(80, 3, 4), (std::vector<int>{2, 2, 2, 2}));
    for (std::uint64_t u = 0; u < 81; ++u)
        for (std::uint64_t r = 0; r < 81; ++r)
            if (digit_dominated(r, u, 3, 4)) EXPECT_LE(r, u);
}

TEST(MinimalPolynomial, Examples) {
    const auto ctx = build_context(3, 2, 1);
    EXPECT_EQ(minimal_polynomial(ctx, 0), (PrimePolynomial{2, 1})); // x - 1
    EXPECT_EQ(minimal_polynomial(ctx, 1), ctx.primitive_polynomial());
    const auto m10 = minimal_polynomial(ctx, 10);
    ASSERT_EQ(m10.size(), 3u);
    // alpha^10 is a root
    FieldElement acc = ctx.zero();
    for (std::size_t i = 0; i < m10.size(); ++i)
        acc = ctx.add(acc, ctx.mul(ctx.from_prime_field(m10[i]), ctx.pow(ctx.alpha_pow(10), i)));
    EXPECT_EQ(acc, ctx.zero());
    std::uint64_t order = 1;
    for (FieldElement cur = ctx.alpha_pow(10); cur != ctx.one(); cur = ctx.mul(cur, ctx.alpha_pow(10))) ++order;
    EXPECT_EQ(order, 8u);
}

TEST(FieldContext, LargeExponentReduction) {
    // l > s: x^(p^l + 1) uses the exponent mod n
    const auto ctx = build_context(3, 2, 3);
    for (std::uint32_t x = 0; x < ctx.q(); ++x) EXPECT_EQ(ctx.pow_pl1({x}), ctx.pow({x}, 28));
}
