// Copyright 2026 The mubkey Authors
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

#include "mubkey/gf.hpp"

#include <map>
#include <vector>

#include "gtest/gtest.h"
#include "mubkey/error.hpp"
#include "mubkey/random.hpp"

using namespace mubkey;

namespace {

GfElem el(const Field& f, std::vector<int> coeffs) {
    return GfElem(f, std::move(coeffs));
}

// Polynomial value at x over GF(p), low-order coefficients first.
int eval_mod(const std::vector<int>& poly, int x, int p) {
    long long acc = 0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = (acc * x + *it) % p;
    return static_cast<int>(acc);
}

// Power-sum definition of the trace, independent of the cached table.
int trace_by_power_sum(const GfElem& a) {
    GfElem acc = a;
    GfElem conj = a;
    for (int k = 1; k < a.field()->n(); ++k) {
        conj = frobenius(conj);
        acc = acc + conj;
    }
    for (int i = 1; i < a.field()->n(); ++i) EXPECT_EQ(acc.coeffs()[i], 0);
    return acc.coeffs()[0];
}

const std::vector<std::pair<int, int>> kFields = {{3, 1}, {5, 1}, {7, 1}, {3, 2}, {5, 2}, {3, 3}, {3, 4}};

}  // namespace

TEST(gf, add_examples) {
    const Field f3 = FieldSpec::make(3, 1);
    EXPECT_EQ(GfElem::constant(f3, 2) + GfElem::constant(f3, 2), GfElem::constant(f3, 1));

    const Field f9 = FieldSpec::make(3, 2);
    ASSERT_EQ(f9->modulus(), (std::vector<int>{1, 0, 1}));
    EXPECT_EQ(el(f9, {1, 1}) + el(f9, {2, 2}), GfElem::zero(f9));

    for (const GfElem& a : elements(f9)) EXPECT_EQ(a + GfElem::zero(f9), a);
}

TEST(gf, mul_examples) {
    const Field f3 = FieldSpec::make(3, 1);
    EXPECT_EQ(GfElem::constant(f3, 2) * GfElem::constant(f3, 2), GfElem::constant(f3, 1));

    const Field f9 = FieldSpec::make(3, 2);
    const GfElem xi = el(f9, {0, 1});
    EXPECT_EQ(xi * xi, GfElem::constant(f9, 2));
    for (const GfElem& a : elements(f9)) EXPECT_EQ(a * GfElem::one(f9), a);
}

TEST(gf, inverse_examples) {
    const Field f3 = FieldSpec::make(3, 1);
    EXPECT_EQ(gf_inv(GfElem::constant(f3, 2)), GfElem::constant(f3, 2));
    EXPECT_EQ(gf_inv(GfElem::one(f3)), GfElem::one(f3));

    const Field f9 = FieldSpec::make(3, 2);
    EXPECT_EQ(gf_inv(el(f9, {0, 1})), el(f9, {0, 2}));
    EXPECT_THROW(gf_inv(GfElem::zero(f9)), DomainError);
}

TEST(gf, trace_examples) {
    const Field f3 = FieldSpec::make(3, 1);
    EXPECT_EQ(trace(GfElem::constant(f3, 2)), 2);

    const Field f9 = FieldSpec::make(3, 2);
    EXPECT_EQ(trace(el(f9, {0, 1})), 0);
    EXPECT_EQ(trace(GfElem::one(f9)), 2);
}

TEST(gf, find_irreducible_examples) {
    EXPECT_EQ(find_irreducible(3, 1), (std::vector<int>{0, 1}));
    EXPECT_EQ(find_irreducible(3, 2), (std::vector<int>{1, 0, 1}));
    EXPECT_EQ(find_irreducible(5, 2), (std::vector<int>{2, 0, 1}));
}

TEST(gf, find_irreducible_is_first_rootless_candidate) {
    // For degree 2 and 3, irreducible <=> no root. Scan in the documented order.
    for (auto [p, n] : std::vector<std::pair<int, int>>{{3, 2}, {5, 2}, {7, 2}, {3, 3}, {5, 3}, {7, 3}}) {
        std::vector<int> expected;
        long long count = 1;
        for (int i = 0; i < n; ++i) count *= p;
        for (long long t = 0; t < count && expected.empty(); ++t) {
            std::vector<int> cand(static_cast<std::size_t>(n) + 1, 0);
            long long rest = t;
            for (int i = 0; i < n; ++i) {
                cand[i] = static_cast<int>(rest % p);
                rest /= p;
            }
            cand[n] = 1;
            bool has_root = false;
            for (int x = 0; x < p; ++x) has_root = has_root || eval_mod(cand, x, p) == 0;
            if (!has_root) expected = cand;
        }
        EXPECT_EQ(find_irreducible(p, n), expected) << "p=" << p << " n=" << n;
    }
}

TEST(gf, is_irreducible_rejects_products) {
    // (x^2+1)^2 over GF(3) has no roots but is reducible.
    EXPECT_FALSE(is_irreducible(3, std::vector<int>{1, 0, 2, 0, 1}));
    EXPECT_TRUE(is_irreducible(3, find_irreducible(3, 4)));
    EXPECT_FALSE(is_irreducible(5, std::vector<int>{1, 0, 1}));  // x^2 + 1 = (x-2)(x-3)
}

TEST(gf, field_spec_validation) {
    EXPECT_THROW(FieldSpec::make(4, 1), UsageError);
    EXPECT_THROW(FieldSpec::make(2, 3), UsageError);
    EXPECT_THROW(FieldSpec::make(9, 1), UsageError);
    EXPECT_THROW(FieldSpec::make(3, 0), UsageError);
    EXPECT_THROW(FieldSpec::make(5, 2, {1, 0, 1}), UsageError);  // reducible
    EXPECT_THROW(FieldSpec::make(3, 2, {1, 0, 2}), UsageError);  // not monic
    const Field f = FieldSpec::make(3, 2, {2, 2, 1});            // x^2 + 2x + 2
    EXPECT_EQ(f->d(), 9);
}

TEST(gf, mismatched_fields_are_usage_errors) {
    const Field a = FieldSpec::make(3, 2);
    const Field b = FieldSpec::make(3, 2, {2, 2, 1});
    const Field c = FieldSpec::make(5, 1);
    EXPECT_THROW(GfElem::one(a) + GfElem::one(b), UsageError);
    EXPECT_THROW(GfElem::one(a) * GfElem::one(c), UsageError);
    // Same parameters built twice count as the same field.
    EXPECT_NO_THROW(GfElem::one(a) + GfElem::one(FieldSpec::make(3, 2)));
}

TEST(gf, element_validation) {
    const Field f = FieldSpec::make(3, 2);
    EXPECT_THROW(GfElem(f, {3, 0}), UsageError);
    EXPECT_THROW(GfElem(f, {1}), UsageError);
    EXPECT_THROW(GfElem::from_index(f, 9), UsageError);
}

TEST(gf, index_round_trip) {
    for (auto [p, n] : kFields) {
        const Field f = FieldSpec::make(p, n);
        for (int i = 0; i < f->d(); ++i) EXPECT_EQ(GfElem::from_index(f, i).index(), i);
    }
}

TEST(gf, field_axioms_random_triples) {
    Rng rng = make_stream(11);
    for (auto [p, n] : kFields) {
        const Field f = FieldSpec::make(p, n);
        auto pick = [&] { return GfElem::from_index(f, static_cast<int>(uniform_index(rng, f->d()))); };
        for (int trial = 0; trial < 300; ++trial) {
            const GfElem a = pick(), b = pick(), c = pick();
            EXPECT_EQ((a + b) + c, a + (b + c));
            EXPECT_EQ((a * b) * c, a * (b * c));
            EXPECT_EQ(a + b, b + a);
            EXPECT_EQ(a * b, b * a);
            EXPECT_EQ(a * (b + c), a * b + a * c);
            EXPECT_EQ(a + (-a), GfElem::zero(f));
            if (!a.is_zero()) EXPECT_EQ(a * gf_inv(a), GfElem::one(f));
        }
    }
}

TEST(gf, no_zero_divisors_exhaustive) {
    for (auto [p, n] : std::vector<std::pair<int, int>>{{3, 2}, {5, 2}, {3, 3}}) {
        const Field f = FieldSpec::make(p, n);
        const auto elems = elements(f);
        for (const auto& a : elems)
            for (const auto& b : elems)
                if (!a.is_zero() && !b.is_zero()) EXPECT_FALSE((a * b).is_zero());
    }
}

TEST(gf, trace_matches_power_sum) {
    for (auto [p, n] : kFields) {
        const Field f = FieldSpec::make(p, n);
        for (const GfElem& a : elements(f)) EXPECT_EQ(trace(a), trace_by_power_sum(a));
    }
}

TEST(gf, trace_additive_exhaustive) {
    for (auto [p, n] : kFields) {
        const Field f = FieldSpec::make(p, n);
        if (f->d() > 81) continue;
        const auto elems = elements(f);
        for (const auto& a : elems)
            for (const auto& b : elems) ASSERT_EQ(trace(a + b), (trace(a) + trace(b)) % p);
    }
}

TEST(gf, trace_linear_and_balanced) {
    for (auto [p, n] : kFields) {
        const Field f = FieldSpec::make(p, n);
        std::map<int, int> fibre;
        for (const GfElem& a : elements(f)) {
            fibre[trace(a)]++;
            for (int k = 0; k < p; ++k) ASSERT_EQ(trace(GfElem::constant(f, k) * a), (k * trace(a)) % p);
        }
        ASSERT_EQ(static_cast<int>(fibre.size()), p);
        for (auto [value, count] : fibre) EXPECT_EQ(count, f->d() / p) << "value " << value;
    }
}

TEST(gf, frobenius_automorphism_fixes_prime_subfield) {
    for (auto [p, n] : kFields) {
        const Field f = FieldSpec::make(p, n);
        const auto elems = elements(f);
        int fixed = 0;
        std::vector<bool> seen(static_cast<std::size_t>(f->d()), false);
        for (const auto& a : elems) {
            const GfElem fa = frobenius(a);
            seen[fa.index()] = true;
            if (fa == a) {
                ++fixed;
                for (int i = 1; i < n; ++i) EXPECT_EQ(a.coeffs()[i], 0);
            }
        }
        EXPECT_EQ(fixed, p);
        for (bool s : seen) EXPECT_TRUE(s);  // bijective
        Rng rng = make_stream(5);
        for (int t = 0; t < 100; ++t) {
            const GfElem a = GfElem::from_index(f, static_cast<int>(uniform_index(rng, f->d())));
            const GfElem b = GfElem::from_index(f, static_cast<int>(uniform_index(rng, f->d())));
            EXPECT_EQ(frobenius(a + b), frobenius(a) + frobenius(b));
            EXPECT_EQ(frobenius(a * b), frobenius(a) * frobenius(b));
        }
    }
}
