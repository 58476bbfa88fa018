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

#include "mubkey/protocol.hpp"

#include <cmath>
#include <map>

#include "gtest/gtest.h"
#include "mubkey/error.hpp"
#include "mubkey/transcript_io.hpp"

using namespace mubkey;

namespace {

double three_sigma(double p, long long n) {
    return 3.0 * std::sqrt(p * (1 - p) / static_cast<double>(n));
}

GfElem g(const Field& f, int idx) {
    return GfElem::from_index(f, idx);
}

StateVecd quad_state(const Field& f, const GfElem& b, const GfElem& c) {
    return mub_state(f, {BasisId::quadratic(b), c});
}

SessionConfig checks_only(const Field& f, EveStrategy eve, long long rounds, std::uint64_t seed) {
    SessionConfig cfg(f);
    cfg.rounds = rounds;
    cfg.check_fraction = 1.0;
    cfg.eve = eve;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST(protocol, alice_encode_bit_one) {
    const Field f = FieldSpec::make(3, 1);
    Rng rng = make_stream(41);
    EXPECT_EQ(alice_encode(1, g(f, 2), g(f, 0), g(f, 0), rng), g(f, 1));
    EXPECT_THROW(alice_encode(2, g(f, 2), g(f, 0), g(f, 0), rng), UsageError);
}

TEST(protocol, alice_encode_bit_zero_avoids_match_and_is_uniform) {
    const Field f = FieldSpec::make(3, 1);
    Rng rng = make_stream(42);
    for (const GfElem& c1 : elements(f))
        for (const GfElem& c1p : elements(f))
            for (const GfElem& delta : elements(f)) {
                const GfElem match = c1p - c1 + delta;
                for (int t = 0; t < 50; ++t) EXPECT_NE(alice_encode(0, c1, c1p, delta, rng), match);
            }
    const Field f7 = FieldSpec::make(7, 1);
    const int n = 12000;
    std::map<int, int> counts;
    for (int t = 0; t < n; ++t) counts[alice_encode(0, g(f7, 3), g(f7, 5), g(f7, 0), rng).index()]++;
    EXPECT_EQ(counts.count(2), 0u);
    EXPECT_EQ(counts.size(), 6u);
    for (auto [v, k] : counts) EXPECT_NEAR(k / double(n), 1.0 / 6, three_sigma(1.0 / 6, n)) << v;
}

TEST(protocol, alice_encode_with_offset_aligns_bob_states) {
    const Field f = FieldSpec::make(3, 2);
    Rng rng = make_stream(43);
    for (int t = 0; t < 50; ++t) {
        auto pick = [&] { return g(f, static_cast<int>(uniform_index(rng, 9))); };
        const GfElem b = pick(), c = pick(), delta = pick(), b1 = pick(), c1 = pick(), c1p = pick();
        const GfElem c2 = c - c1;
        const GfElem c2p = (c - delta) - c1p;
        const GfElem lambda = alice_encode(1, c1, c1p, delta, rng);
        const auto bob = quad_state(f, b - b1, c2);
        const auto bob_p = shift_remote(quad_state(f, b - b1, c2p), lambda);
        EXPECT_NEAR(std::abs(inner(bob, bob_p)), 1.0, 1e-12);
    }
}

TEST(protocol, bob_decode_modes) {
    const Field f = FieldSpec::make(7, 1);
    Rng rng = make_stream(44);
    const auto s = quad_state(f, g(f, 3), g(f, 4));
    const auto sp = quad_state(f, g(f, 3), g(f, 1));  // needs lambda = 3
    for (int t = 0; t < 100; ++t) {
        EXPECT_EQ(bob_decode(s, sp, g(f, 3), DecodeMode::Oracle, 1, rng).bit, 1);
        EXPECT_EQ(bob_decode(s, sp, g(f, 3), DecodeMode::Swap, 3, rng).bit, 1);
    }
    for (int lam = 0; lam < 7; ++lam) {
        if (lam == 3) continue;
        EXPECT_EQ(bob_decode(s, sp, g(f, lam), DecodeMode::Oracle, 1, rng).bit, 0);
    }
    const int n = 10000;
    int zeros = 0;
    for (int t = 0; t < n; ++t) zeros += bob_decode(s, sp, g(f, 5), DecodeMode::Swap, 1, rng).bit == 0;
    EXPECT_NEAR(zeros / double(n), 0.5, three_sigma(0.5, n));

    const auto d = bob_decode(s, sp, g(f, 5), DecodeMode::Swap, 4, rng);
    EXPECT_LE(d.equality_outcomes.size(), 4u);
}

TEST(protocol, run_round_without_eve_decodes_correctly) {
    const Field f = FieldSpec::make(7, 1);
    SessionConfig cfg(f);
    cfg.check_fraction = 0.0;
    Rng rng = make_stream(45);
    for (long long r = 0; r < 300; ++r) {
        const RoundRecord rec = run_round(cfg, r, rng);
        ASSERT_EQ(rec.kind, RoundKind::Message);
        ASSERT_TRUE(rec.decoded && rec.bit_sent);
        EXPECT_EQ(*rec.decoded, *rec.bit_sent);
        EXPECT_FALSE(rec.eve.has_value());
    }
}

TEST(protocol, eve_in_correct_basis_is_undetected) {
    const Field f = FieldSpec::make(7, 1);
    SessionConfig cfg = checks_only(f, EveStrategy::fixed(2), 500, 46);
    cfg.pair_label = PairLabel{g(f, 3), g(f, 1)};
    cfg.alice_b1 = g(f, 1);  // b2 = 2
    const Transcript t = run_session(cfg);
    EXPECT_EQ(t.summary.check_rounds, 500);
    EXPECT_EQ(t.summary.checks_passed, 500);
    for (const auto& r : t.records) {
        ASSERT_TRUE(r.check.has_value());
        EXPECT_EQ(r.check->b2, 2);
        EXPECT_EQ(r.eve->basis, 2);
    }
    EXPECT_FALSE(t.summary.eavesdropper_detected);
}

TEST(protocol, eve_in_wrong_basis_passes_one_in_d) {
    const Field f = FieldSpec::make(7, 1);
    for (int wrong : {5, 7}) {  // another quadratic basis, then the computational one
        SessionConfig cfg = checks_only(f, EveStrategy::fixed(wrong), 3000, 47 + wrong);
        cfg.pair_label = PairLabel{g(f, 3), g(f, 1)};
        cfg.alice_b1 = g(f, 1);
        const Transcript t = run_session(cfg);
        EXPECT_NEAR(t.summary.check_pass_rate, 1.0 / 7, three_sigma(1.0 / 7, 3000)) << "eve basis " << wrong;
        EXPECT_TRUE(t.summary.eavesdropper_detected);
    }
}

TEST(protocol, uniform_quadratic_eve_pass_rate) {
    const int d = 5;
    const Field f = FieldSpec::make(d, 1);
    const Transcript t = run_session(checks_only(f, EveStrategy::uniform_quadratic(), 4000, 48));
    // 1/d correct basis, otherwise 1/d lucky.
    const double p = (2.0 * d - 1) / (d * d);
    EXPECT_NEAR(t.summary.check_pass_rate, p, three_sigma(p, 4000));
}

TEST(protocol, session_without_eve_is_clean) {
    const Field f = FieldSpec::make(7, 1);
    SessionConfig cfg(f);
    cfg.rounds = 1000;
    cfg.check_fraction = 0.3;
    cfg.seed = 42;
    const Transcript t = run_session(cfg);
    EXPECT_EQ(t.summary.bit_errors, 0);
    EXPECT_EQ(t.summary.bit_error_rate, 0.0);
    EXPECT_EQ(t.summary.check_pass_rate, 1.0);
    EXPECT_GT(t.summary.check_rounds, 0);
    EXPECT_GT(t.summary.message_rounds, 0);
    EXPECT_FALSE(t.summary.eavesdropper_detected);
}

TEST(protocol, session_with_offset_pairs_is_clean) {
    const Field f = FieldSpec::make(3, 2);
    SessionConfig cfg(f);
    cfg.rounds = 300;
    cfg.check_fraction = 0.2;
    cfg.delta = g(f, 5);
    cfg.seed = 7;
    const Transcript t = run_session(cfg);
    EXPECT_EQ(t.summary.bit_errors, 0);
    EXPECT_EQ(t.summary.check_pass_rate, 1.0);
}

TEST(protocol, session_is_deterministic_and_seed_sensitive) {
    const Field f = FieldSpec::make(5, 1);
    SessionConfig cfg(f);
    cfg.rounds = 200;
    cfg.check_fraction = 0.5;
    cfg.eve = EveStrategy::uniform_all();
    cfg.mode = DecodeMode::Swap;
    cfg.swap_repetitions = 2;
    cfg.seed = 99;
    const std::string a = transcript_to_jsonl(run_session(cfg));
    const std::string b = transcript_to_jsonl(run_session(cfg));
    EXPECT_EQ(a, b);
    cfg.seed = 100;
    EXPECT_NE(a, transcript_to_jsonl(run_session(cfg)));
    cfg.seed = 99;
    cfg.session_index = 1;
    EXPECT_NE(a, transcript_to_jsonl(run_session(cfg)));
}

TEST(protocol, summary_recomputes_from_records) {
    const Field f = FieldSpec::make(5, 1);
    SessionConfig cfg(f);
    cfg.rounds = 500;
    cfg.check_fraction = 0.4;
    cfg.eve = EveStrategy::uniform_all();
    cfg.seed = 3;
    const Transcript t = run_session(cfg);
    EXPECT_EQ(summarize(t.records), t.summary);
    EXPECT_EQ(t.summary.message_rounds + t.summary.check_rounds, 500);
    for (const auto& r : t.records) {
        if (r.kind == RoundKind::Message) {
            EXPECT_TRUE(r.decoded.has_value());
            EXPECT_FALSE(r.check.has_value());
        } else {
            EXPECT_TRUE(r.check.has_value());
            EXPECT_FALSE(r.decoded.has_value());
        }
    }
}

TEST(protocol, invalid_configs_rejected) {
    const Field f = FieldSpec::make(5, 1);
    auto expect_invalid = [](SessionConfig cfg) { EXPECT_THROW(run_session(cfg), UsageError); };
    SessionConfig base(f);
    {
        SessionConfig c = base;
        c.rounds = 0;
        expect_invalid(c);
    }
    {
        SessionConfig c = base;
        c.check_fraction = 1.5;
        expect_invalid(c);
    }
    {
        SessionConfig c = base;
        c.swap_repetitions = 0;
        expect_invalid(c);
    }
    {
        SessionConfig c = base;
        c.eve = EveStrategy::fixed(6);
        expect_invalid(c);
    }
    {
        SessionConfig c = base;
        c.delta = GfElem::one(FieldSpec::make(7, 1));
        expect_invalid(c);
    }
    {
        SessionConfig c = base;
        c.forced_bit = 2;
        expect_invalid(c);
    }
}

TEST(protocol, strategy_and_mode_parsing) {
    EXPECT_EQ(to_string(parse_eve_strategy("fixed:12")), "fixed:12");
    EXPECT_EQ(parse_eve_strategy("uniform-all").kind, EveStrategy::Kind::UniformAll);
    EXPECT_EQ(parse_eve_strategy("uniform-quadratic").kind, EveStrategy::Kind::UniformQuadratic);
    EXPECT_EQ(parse_eve_strategy("none").kind, EveStrategy::Kind::None);
    EXPECT_THROW(parse_eve_strategy("fixed:"), UsageError);
    EXPECT_THROW(parse_eve_strategy("fixed:-1"), UsageError);
    EXPECT_THROW(parse_eve_strategy("everyone"), UsageError);
    EXPECT_EQ(parse_decode_mode("swap"), DecodeMode::Swap);
    EXPECT_THROW(parse_decode_mode("telepathy"), UsageError);
}

TEST(protocol, cv_session_label_level) {
    CvSessionConfig cfg;
    cfg.rounds = 2000;
    cfg.check_fraction = 0.25;
    cfg.b = 0.7;
    cfg.c = -1.3;
    cfg.delta = 0.4;
    cfg.seed = 5;
    const auto clean = run_cv_session(cfg);
    EXPECT_EQ(clean.bit_errors, 0);
    EXPECT_EQ(clean.checks_passed, clean.check_rounds);
    EXPECT_GT(clean.check_rounds, 0);

    cfg.eve = true;
    const auto attacked = run_cv_session(cfg);
    EXPECT_EQ(attacked.checks_passed, 0);
    EXPECT_GT(attacked.bit_errors, 0);

    cfg.rounds = 0;
    EXPECT_THROW(run_cv_session(cfg), UsageError);
}
