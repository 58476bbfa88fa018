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

#include "mubkey/transcript_io.hpp"

#include "mubkey/error.hpp"

namespace mubkey {
namespace {

using ojson = nlohmann::ordered_json;

template <typename T>
ojson opt(const std::optional<T>& v) {
    return v ? ojson(*v) : ojson(nullptr);
}

template <typename T>
std::optional<T> opt_from(const nlohmann::json& doc, const char* key) {
    if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
    return doc.at(key).get<T>();
}

GfElem element_from(const Field& field, const nlohmann::json& v, const char* what) {
    if (!v.is_number_integer()) throw UsageError(std::string(what) + " must be an integer element index");
    const long long idx = v.get<long long>();
    if (idx < 0 || idx >= field->d()) throw UsageError(std::string(what) + " index out of range [0, d)");
    return GfElem::from_index(field, static_cast<int>(idx));
}

}  // namespace

ojson field_to_json(const FieldSpec& field) {
    return ojson{{"p", field.p()}, {"n", field.n()}, {"modulus", field.modulus()}};
}

Field field_from_json(const nlohmann::json& doc) {
    try {
        const int p = doc.at("p").get<int>();
        const int n = doc.value("n", 1);
        if (doc.contains("modulus") && !doc.at("modulus").is_null()) {
            return FieldSpec::make(p, n, doc.at("modulus").get<std::vector<int>>());
        }
        return FieldSpec::make(p, n);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("invalid field document: ") + e.what());
    }
}

ojson config_to_json(const SessionConfig& config) {
    ojson doc;
    doc["v"] = kSchemaVersion;
    doc["field"] = field_to_json(*config.field);
    doc["rounds"] = config.rounds;
    doc["check_fraction"] = config.check_fraction;
    doc["mode"] = to_string(config.mode);
    doc["swap_repetitions"] = config.swap_repetitions;
    doc["eve"] = to_string(config.eve);
    doc["delta"] = config.delta.index();
    if (config.pair_label) {
        doc["pair_label"] = ojson{{"b", config.pair_label->b.index()}, {"c", config.pair_label->c.index()}};
    } else {
        doc["pair_label"] = "random";
    }
    doc["alice_b1"] = config.alice_b1 ? ojson(config.alice_b1->index()) : ojson(nullptr);
    doc["forced_bit"] = opt(config.forced_bit);
    doc["seed"] = config.seed;
    doc["session_index"] = config.session_index;
    return doc;
}

SessionConfig config_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("field")) throw UsageError("session config requires a \"field\" object");
    SessionConfig cfg(field_from_json(doc.at("field")));
    try {
        cfg.rounds = doc.value("rounds", cfg.rounds);
        cfg.check_fraction = doc.value("check_fraction", cfg.check_fraction);
        if (doc.contains("mode")) cfg.mode = parse_decode_mode(doc.at("mode").get<std::string>());
        cfg.swap_repetitions = doc.value("swap_repetitions", cfg.swap_repetitions);
        if (doc.contains("eve")) cfg.eve = parse_eve_strategy(doc.at("eve").get<std::string>());
        if (doc.contains("delta")) cfg.delta = element_from(cfg.field, doc.at("delta"), "delta");
        if (doc.contains("pair_label")) {
            const auto& pl = doc.at("pair_label");
            if (pl.is_object()) {
                cfg.pair_label = PairLabel{element_from(cfg.field, pl.at("b"), "pair_label.b"),
                                           element_from(cfg.field, pl.at("c"), "pair_label.c")};
            } else if (!(pl.is_string() && pl.get<std::string>() == "random")) {
                throw UsageError("pair_label must be {\"b\",\"c\"} or \"random\"");
            }
        }
        if (doc.contains("alice_b1") && !doc.at("alice_b1").is_null()) {
            cfg.alice_b1 = element_from(cfg.field, doc.at("alice_b1"), "alice_b1");
        }
        cfg.forced_bit = opt_from<int>(doc, "forced_bit");
        cfg.seed = doc.value("seed", cfg.seed);
        cfg.session_index = doc.value("session_index", cfg.session_index);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("invalid session config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

ojson record_to_json(const RoundRecord& r) {
    ojson doc;
    doc["v"] = kSchemaVersion;
    doc["round"] = r.round;
    doc["kind"] = r.kind == RoundKind::Message ? "message" : "check";
    doc["bit_sent"] = opt(r.bit_sent);
    doc["lambda"] = opt(r.lambda);
    doc["b1"] = r.b1;
    doc["c1"] = r.c1;
    doc["c1p"] = r.c1p;
    if (r.eve) {
        doc["eve_basis"] = r.eve->basis;
        doc["eve_outcome"] = ojson::array({r.eve->outcome, r.eve->outcome_second});
    } else {
        doc["eve_basis"] = nullptr;
        doc["eve_outcome"] = nullptr;
    }
    doc["decoded"] = opt(r.decoded);
    if (r.check) {
        doc["check_b2"] = r.check->b2;
        doc["check_expected"] = r.check->expected;
        doc["check_measured"] = r.check->measured;
        doc["check_passed"] = r.check->passed;
    } else {
        doc["check_b2"] = nullptr;
        doc["check_expected"] = nullptr;
        doc["check_measured"] = nullptr;
        doc["check_passed"] = nullptr;
    }
    return doc;
}

RoundRecord record_from_json(const nlohmann::json& doc) {
    RoundRecord r;
    r.round = doc.at("round").get<long long>();
    const std::string kind = doc.at("kind").get<std::string>();
    if (kind != "message" && kind != "check") throw UsageError("unknown round kind '" + kind + "'");
    r.kind = kind == "message" ? RoundKind::Message : RoundKind::Check;
    r.bit_sent = opt_from<int>(doc, "bit_sent");
    r.lambda = opt_from<int>(doc, "lambda");
    r.b1 = doc.at("b1").get<int>();
    r.c1 = doc.at("c1").get<int>();
    r.c1p = doc.at("c1p").get<int>();
    if (!doc.at("eve_basis").is_null()) {
        const auto& out = doc.at("eve_outcome");
        r.eve = EveLog{doc.at("eve_basis").get<int>(), out.at(0).get<int>(), out.at(1).get<int>()};
    }
    r.decoded = opt_from<int>(doc, "decoded");
    if (!doc.at("check_passed").is_null()) {
        r.check = CheckLog{doc.at("check_b2").get<int>(), doc.at("check_expected").get<int>(),
                           doc.at("check_measured").get<int>(), doc.at("check_passed").get<bool>()};
    }
    return r;
}

std::string transcript_to_jsonl(const Transcript& transcript) {
    std::string out;
    for (const RoundRecord& r : transcript.records) {
        out += record_to_json(r).dump();
        out += '\n';
    }
    return out;
}

ojson summary_to_json(const Transcript& transcript) {
    const SessionSummary& s = transcript.summary;
    ojson doc;
    doc["v"] = kSchemaVersion;
    doc["config"] = config_to_json(transcript.config);
    doc["message_rounds"] = s.message_rounds;
    doc["check_rounds"] = s.check_rounds;
    doc["bit_errors"] = s.bit_errors;
    doc["bit_error_rate"] = s.bit_error_rate;
    doc["checks_passed"] = s.checks_passed;
    doc["check_pass_rate"] = s.check_pass_rate;
    doc["detection_threshold"] = s.detection_threshold;
    doc["eavesdropper_detected"] = s.eavesdropper_detected;
    return doc;
}

}  // namespace mubkey
