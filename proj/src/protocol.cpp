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

#include "mubkey/error.hpp"
#include "mubkey/mub.hpp"
#include "mubkey/phasespace.hpp"

namespace mubkey {
namespace {

constexpr double kOracleEqualityThreshold = 1.0 - 1e-9;

void require_field(const Field& field, const GfElem& x, const char* what) {
    if (!x.field()->same_as(*field)) throw UsageError(std::string(what) + " belongs to a different field");
}

GfElem uniform_element(const Field& field, Rng& rng) {
    return GfElem::from_index(field, static_cast<int>(uniform_index(rng, static_cast<std::size_t>(field->d()))));
}

BasisId pick_eve_basis(const SessionConfig& config, Rng& rng) {
    const Field& field = config.field;
    switch (config.eve.kind) {
        case EveStrategy::Kind::Fixed:
            return BasisId::from_ordinal(field, config.eve.fixed_ordinal);
        case EveStrategy::Kind::UniformQuadratic:
            return BasisId::quadratic(uniform_element(field, rng));
        case EveStrategy::Kind::UniformAll:
            return BasisId::from_ordinal(field,
                                         static_cast<int>(uniform_index(rng, static_cast<std::size_t>(field->d()) + 1)));
        case EveStrategy::Kind::None:
            break;
    }
    throw UsageError("no eavesdropper configured");
}

}  // namespace

std::string to_string(DecodeMode mode) {
    return mode == DecodeMode::Oracle ? "oracle" : "swap";
}

DecodeMode parse_decode_mode(const std::string& text) {
    if (text == "oracle") return DecodeMode::Oracle;
    if (text == "swap") return DecodeMode::Swap;
    throw UsageError("unknown decode mode '" + text + "' (expected oracle or swap)");
}

std::string to_string(const EveStrategy& eve) {
    switch (eve.kind) {
        case EveStrategy::Kind::None: return "none";
        case EveStrategy::Kind::Fixed: return "fixed:" + std::to_string(eve.fixed_ordinal);
        case EveStrategy::Kind::UniformQuadratic: return "uniform-quadratic";
        case EveStrategy::Kind::UniformAll: return "uniform-all";
    }
    return "none";
}

EveStrategy parse_eve_strategy(const std::string& text) {
    if (text == "none") return EveStrategy::none();
    if (text == "uniform-quadratic") return EveStrategy::uniform_quadratic();
    if (text == "uniform-all") return EveStrategy::uniform_all();
    if (text.rfind("fixed:", 0) == 0) {
        const std::string digits = text.substr(6);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
            throw UsageError("fixed eavesdropper needs a basis ordinal, got '" + text + "'");
        }
        return EveStrategy::fixed(std::stoi(digits));
    }
    throw UsageError("unknown eavesdropper strategy '" + text + "'");
}

void SessionConfig::validate() const {
    if (!field) throw UsageError("session has no field");
    if (rounds < 1) throw UsageError("rounds must be >= 1");
    if (!(check_fraction >= 0.0 && check_fraction <= 1.0)) throw UsageError("check fraction must lie in [0, 1]");
    if (swap_repetitions < 1) throw UsageError("swap repetitions must be >= 1");
    if (eve.kind == EveStrategy::Kind::Fixed && (eve.fixed_ordinal < 0 || eve.fixed_ordinal > field->d())) {
        throw UsageError("fixed eavesdropper basis ordinal out of range [0, d]");
    }
    require_field(field, delta, "delta");
    if (pair_label) {
        require_field(field, pair_label->b, "pair label b");
        require_field(field, pair_label->c, "pair label c");
    }
    if (alice_b1) require_field(field, *alice_b1, "alice b1");
    if (forced_bit && *forced_bit != 0 && *forced_bit != 1) throw UsageError("forced bit must be 0 or 1");
}

GfElem alice_encode(int bit, const GfElem& c1, const GfElem& c1p, const GfElem& delta, Rng& rng) {
    const GfElem match = c1p - c1 + delta;
    if (bit == 1) return match;
    if (bit != 0) throw UsageError("bit must be 0 or 1");
    const Field& field = match.field();
    // Uniform over the d-1 values other than `match`.
    int k = static_cast<int>(uniform_index(rng, static_cast<std::size_t>(field->d() - 1)));
    if (k >= match.index()) ++k;
    return GfElem::from_index(field, k);
}

BobDecision bob_decode(const StateVecd& state2, const StateVecd& state2p, const GfElem& lambda, DecodeMode mode,
                       int repetitions, Rng& rng) {
    const StateVecd shifted = shift_remote(state2p, lambda);
    BobDecision decision{1, {}};
    if (mode == DecodeMode::Oracle) {
        const bool equal = std::abs(inner(state2, shifted)) > kOracleEqualityThreshold;
        decision.equality_outcomes.push_back(equal);
        decision.bit = equal ? 1 : 0;
        return decision;
    }
    if (repetitions < 1) throw UsageError("swap repetitions must be >= 1");
    for (int r = 0; r < repetitions; ++r) {
        const bool symmetric = swap_test(state2, shifted, rng) == SwapOutcome::Symmetric;
        decision.equality_outcomes.push_back(symmetric);
        if (!symmetric) decision.bit = 0;
    }
    return decision;
}

RoundRecord run_round(const SessionConfig& config, long long round_index, Rng& rng) {
    const Field& field = config.field;
    RoundRecord rec;
    rec.round = round_index;

    const PairLabel label = config.pair_label ? *config.pair_label
                                              : PairLabel{uniform_element(field, rng), uniform_element(field, rng)};
    const auto pair = entangled_mub(field, label);
    const auto pair_p = entangled_mub(field, PairLabel{label.b, label.c - config.delta});

    // One basis for both of Alice's measurements.
    const GfElem b1 = config.alice_b1 ? *config.alice_b1 : uniform_element(field, rng);
    const BasisId alice_basis = BasisId::quadratic(b1);
    auto first = measure_first(field, pair, alice_basis, rng);
    auto second = measure_first(field, pair_p, alice_basis, rng);
    rec.b1 = b1.index();
    rec.c1 = first.c1.index();
    rec.c1p = second.c1.index();

    StateVecd bob = std::move(first.remote);
    StateVecd bob_p = std::move(second.remote);

    if (config.eve.kind != EveStrategy::Kind::None) {
        const BasisId eve_basis = pick_eve_basis(config, rng);
        const BasisMatd eve_mat = mub_basis(field, eve_basis);
        auto hit = born_sample(bob, eve_mat, rng);
        auto hit_p = born_sample(bob_p, eve_mat, rng);
        rec.eve = EveLog{eve_basis.ordinal(), static_cast<int>(hit.index), static_cast<int>(hit_p.index)};
        bob = std::move(hit.collapsed);
        bob_p = std::move(hit_p.collapsed);
    }

    // Kind drawn after transit so the interception cannot depend on it.
    rec.kind = bernoulli(rng, config.check_fraction) ? RoundKind::Check : RoundKind::Message;

    if (rec.kind == RoundKind::Message) {
        const int bit = config.forced_bit ? *config.forced_bit : static_cast<int>(uniform_index(rng, 2));
        const GfElem lambda = alice_encode(bit, first.c1, second.c1, config.delta, rng);
        BobDecision decision = bob_decode(bob, bob_p, lambda, config.mode, config.swap_repetitions, rng);
        rec.bit_sent = bit;
        rec.lambda = lambda.index();
        rec.decoded = decision.bit;
        rec.equality_outcomes = std::move(decision.equality_outcomes);
    } else {
        const BasisId b2 = BasisId::quadratic(label.b - b1);
        const GfElem expected = label.c - first.c1;
        const auto measured = born_sample(bob, mub_basis(field, b2), rng);
        const int measured_index = static_cast<int>(measured.index);
        rec.check = CheckLog{b2.ordinal(), expected.index(), measured_index, measured_index == expected.index()};
    }
    return rec;
}

SessionSummary summarize(const std::vector<RoundRecord>& records) {
    SessionSummary s;
    for (const RoundRecord& r : records) {
        if (r.kind == RoundKind::Message) {
            ++s.message_rounds;
            if (r.decoded && r.bit_sent && *r.decoded != *r.bit_sent) ++s.bit_errors;
        } else {
            ++s.check_rounds;
            if (r.check && r.check->passed) ++s.checks_passed;
        }
    }
    s.bit_error_rate = s.message_rounds > 0 ? static_cast<double>(s.bit_errors) / static_cast<double>(s.message_rounds)
                                            : 0.0;
    if (s.check_rounds > 0) {
        const double n = static_cast<double>(s.check_rounds);
        s.check_pass_rate = static_cast<double>(s.checks_passed) / n;
        s.detection_threshold = 1.0 - 3.0 * std::sqrt(0.25 / n);
        s.eavesdropper_detected = s.check_pass_rate < s.detection_threshold;
    }
    return s;
}

Transcript run_session(const SessionConfig& config) {
    config.validate();
    Rng rng = make_stream(config.seed, config.session_index);
    Transcript t{config, {}, {}};
    t.records.reserve(static_cast<std::size_t>(config.rounds));
    for (long long r = 0; r < config.rounds; ++r) t.records.push_back(run_round(config, r, rng));
    t.summary = summarize(t.records);
    return t;
}

CvSessionSummary run_cv_session(const CvSessionConfig& config) {
    if (config.rounds < 1) throw UsageError("rounds must be >= 1");
    if (!(config.half_width > 0.0)) throw UsageError("sampling half-width must be positive");
    if (!(config.check_fraction >= 0.0 && config.check_fraction <= 1.0)) {
        throw UsageError("check fraction must lie in [0, 1]");
    }
    Rng rng = make_stream(config.seed);
    auto draw = [&] { return (2.0 * uniform_unit(rng) - 1.0) * config.half_width; };

    CvSessionSummary s;
    const CvLabel pair{config.b, config.c, false};
    const CvLabel pair_p{config.b, config.c - config.delta, false};
    for (long long r = 0; r < config.rounds; ++r) {
        const double b1 = draw();
        const double c1 = draw();
        const double c1p = draw();
        CvLabel bob = cv_split(pair, b1, c1);
        CvLabel bob_p = cv_split(pair_p, b1, c1p);
        const double b2 = bob.b;
        const double expected = bob.c;
        if (config.eve) {
            const double eve_b = draw();
            bob = {eve_b, draw(), false};
            bob_p = {eve_b, draw(), false};
        }
        if (bernoulli(rng, config.check_fraction)) {
            ++s.check_rounds;
            // A state from another basis yields a continuous outcome that hits
            // the expected value with probability zero.
            if (bob.b == b2 && std::abs(bob.c - expected) < 1e-12) ++s.checks_passed;
            continue;
        }
        ++s.message_rounds;
        const int bit = static_cast<int>(uniform_index(rng, 2));
        double lambda = c1p - c1 + config.delta;
        if (bit == 0) {
            double offset = 0.0;
            while (std::abs(offset) < 1e-6) offset = draw();
            lambda += offset;
        }
        const int decoded = cv_equal_delta(bob, cv_shift(bob_p, lambda)) ? 1 : 0;
        if (decoded != bit) ++s.bit_errors;
    }
    return s;
}

}  // namespace mubkey
