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

/**
 * One-bit-per-round key distribution over two shared entangled MUB pairs.
 *
 * Per round Alice holds particle 1 of |2;b,c> and |2;b,c-delta>, Bob receives
 * particle 2 of each. Alice measures both of hers in a single basis b1 and gets
 * c1, c1'. Bob's particles then sit in |b-b1, c-c1> and |b-b1, c-delta-c1'>.
 * To send 1 Alice announces lambda = c1' - c1 + delta, which Bob applies as a
 * shift to his second particle; the two states then coincide. For 0 she
 * announces any other value and the states are orthogonal.
 *
 * Check rounds are sacrificed: Alice discloses (b2, c2) and Bob measures his
 * first particle in basis b2. An intercept-resend eavesdropper who guessed the
 * wrong basis passes only with probability 1/d.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mubkey/entangle.hpp"
#include "mubkey/gf.hpp"
#include "mubkey/hilbert.hpp"
#include "mubkey/random.hpp"

namespace mubkey {

enum class DecodeMode { Oracle, Swap };

std::string to_string(DecodeMode mode);
DecodeMode parse_decode_mode(const std::string& text);

struct EveStrategy {
    enum class Kind { None, Fixed, UniformQuadratic, UniformAll };
    Kind kind = Kind::None;
    int fixed_ordinal = 0;  // basis ordinal for Kind::Fixed

    static EveStrategy none() { return {}; }
    static EveStrategy fixed(int ordinal) { return {Kind::Fixed, ordinal}; }
    static EveStrategy uniform_quadratic() { return {Kind::UniformQuadratic, 0}; }
    static EveStrategy uniform_all() { return {Kind::UniformAll, 0}; }
};

/// "none", "fixed:<ordinal>", "uniform-quadratic", "uniform-all".
std::string to_string(const EveStrategy& eve);
EveStrategy parse_eve_strategy(const std::string& text);

struct SessionConfig {
    Field field;
    long long rounds = 1;
    double check_fraction = 0.0;
    DecodeMode mode = DecodeMode::Oracle;
    int swap_repetitions = 1;
    EveStrategy eve;
    /// c label of the first pair minus that of the second.
    GfElem delta;
    /// Fixed pair label, or fresh uniform (b, c) each round when empty.
    std::optional<PairLabel> pair_label;
    /// Alice's basis slope; uniform over GF(d) each round when empty.
    std::optional<GfElem> alice_b1;
    /// Forces every message bit; uniform when empty.
    std::optional<int> forced_bit;
    std::uint64_t seed = 0;
    std::uint64_t session_index = 0;

    explicit SessionConfig(Field f) : field(std::move(f)), delta(GfElem::zero(field)) {}

    /// UsageError on any inconsistency.
    void validate() const;
};

enum class RoundKind { Message, Check };

struct EveLog {
    int basis;                 // ordinal
    int outcome;               // index of her result on Bob's first particle
    int outcome_second;        // and on the second
};

struct CheckLog {
    int b2;        // ordinal of the disclosed basis
    int expected;  // index of c2
    int measured;
    bool passed;
};

struct RoundRecord {
    long long round = 0;
    RoundKind kind = RoundKind::Message;
    int b1 = 0;
    int c1 = 0;
    int c1p = 0;
    std::optional<EveLog> eve;
    std::optional<int> bit_sent;
    std::optional<int> lambda;
    std::optional<int> decoded;
    /// Bob's comparison outcomes: one per swap test, or the single oracle verdict.
    std::vector<bool> equality_outcomes;
    std::optional<CheckLog> check;
};

struct SessionSummary {
    long long message_rounds = 0;
    long long check_rounds = 0;
    long long bit_errors = 0;
    long long checks_passed = 0;
    double bit_error_rate = 0.0;
    double check_pass_rate = 1.0;
    /// Pass rate below which the run is flagged: 1 - 3 sqrt(1/4 / checks).
    double detection_threshold = 0.0;
    bool eavesdropper_detected = false;

    friend bool operator==(const SessionSummary&, const SessionSummary&) = default;
};

struct Transcript {
    SessionConfig config;
    std::vector<RoundRecord> records;
    SessionSummary summary;
};

/// Bit 1: lambda = c1' - c1 + delta. Bit 0: uniform over the other d-1 values.
GfElem alice_encode(int bit, const GfElem& c1, const GfElem& c1p, const GfElem& delta, Rng& rng);

struct BobDecision {
    int bit;
    std::vector<bool> equality_outcomes;
};

/// Shifts the second state by lambda and compares. Oracle: exact overlap.
/// Swap: `repetitions` swap tests on fresh copies, 0 iff any is antisymmetric.
BobDecision bob_decode(const StateVecd& state2, const StateVecd& state2p, const GfElem& lambda, DecodeMode mode,
                       int repetitions, Rng& rng);

RoundRecord run_round(const SessionConfig& config, long long round_index, Rng& rng);

/// Deterministic in (seed, session_index).
Transcript run_session(const SessionConfig& config);

/// Summary statistics recomputed from the records alone.
SessionSummary summarize(const std::vector<RoundRecord>& records);

/// Label-level run of the continuous-variable protocol: labels are reals,
/// Alice's b1 and outcomes are drawn uniformly from [-half_width, half_width].
struct CvSessionConfig {
    long long rounds = 1;
    double check_fraction = 0.0;
    double half_width = 10.0;
    double b = 0.0;
    double c = 0.0;
    double delta = 0.0;
    bool eve = false;
    std::uint64_t seed = 0;
};

struct CvSessionSummary {
    long long message_rounds = 0;
    long long bit_errors = 0;
    long long check_rounds = 0;
    long long checks_passed = 0;
};

CvSessionSummary run_cv_session(const CvSessionConfig& config);

}  // namespace mubkey
