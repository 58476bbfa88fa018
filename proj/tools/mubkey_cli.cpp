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

// mubkey command-line tool.
//
//   mubkey verify  --p P [--n N] [--modulus c0,c1,...]
//   mubkey bases   --p P [--n N] [--modulus ...] [--out FILE]
//   mubkey wigner  --p P --b B --c C [--pair] [--out FILE]
//   mubkey session --p P [...] | --config FILE
//
// Exit codes: 0 success, 1 invariant failure, 2 usage/config error,
// 3 eavesdropper detected.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mubkey/entangle.hpp"
#include "mubkey/error.hpp"
#include "mubkey/gf.hpp"
#include "mubkey/mub.hpp"
#include "mubkey/phasespace.hpp"
#include "mubkey/protocol.hpp"
#include "mubkey/transcript_io.hpp"

namespace {

using namespace mubkey;

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDetected = 3;

struct FieldArgs {
    int p = 0;
    int n = 1;
    std::string modulus;
};

void add_field_options(CLI::App* cmd, FieldArgs& args) {
    cmd->add_option("--p", args.p, "Field characteristic (odd prime)");
    cmd->add_option("--n", args.n, "Extension degree");
    cmd->add_option("--modulus", args.modulus, "Monic modulus coefficients, low order first: c0,c1,...,1");
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("malformed integer list '" + text + "'");
        }
    }
    return out;
}

Field make_field(const FieldArgs& args) {
    if (args.p == 0) throw UsageError("--p is required");
    if (args.modulus.empty()) return FieldSpec::make(args.p, args.n);
    return FieldSpec::make(args.p, args.n, parse_int_list(args.modulus));
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Prints to `path`, or stdout when empty.
void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot open '" + path + "' for writing");
    out << text;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
    FieldArgs field;
    int max_d = 81;
};

int cmd_verify(const VerifyArgs& args) {
    const Field field = make_field(args.field);
    const int d = field->d();
    if (d > args.max_d) throw UsageError("p^n = " + std::to_string(d) + " exceeds --max-d " + std::to_string(args.max_d));
    const auto elems = elements(field);
    const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));

    const UnbiasednessReport report = unbiasedness_report(field);

    int trace_failures = 0;
    for (const GfElem& a : elems) {
        for (const GfElem& b : elems) {
            if (trace(a + b) != (trace(a) + trace(b)) % field->p()) ++trace_failures;
        }
    }

    std::vector<BasisMatd> quad;
    quad.reserve(elems.size());
    for (const GfElem& b : elems) quad.push_back(mub_basis(field, BasisId::quadratic(b)));
    auto add_idx = [&](int x, int y) { return (elems[x] + elems[y]).index(); };
    auto sub_idx = [&](int x, int y) { return (elems[x] - elems[y]).index(); };

    // Projection identity: exhaustive up to d = 9, otherwise a fixed sample.
    double projection_dev = 0.0;
    auto check_projection = [&](int b, int c, int b1, int c1) {
        const auto pair = entangled_mub(field, PairLabel{elems[b], elems[c]});
        const StateVecd w = project_first(pair.state, quad[b1].col(c1));
        const StateVecd expected = quad[sub_idx(b, b1)].col(sub_idx(c, c1)) * inv_sqrt_d;
        projection_dev = std::max(projection_dev, (w - expected).cwiseAbs().maxCoeff());
    };
    long long projection_cases = 0;
    if (d <= 9) {
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int b1 = 0; b1 < d; ++b1)
                    for (int c1 = 0; c1 < d; ++c1, ++projection_cases) check_projection(b, c, b1, c1);
    } else {
        Rng rng = make_stream(0x5eed);
        for (; projection_cases < 1000; ++projection_cases) {
            auto pick = [&] { return static_cast<int>(uniform_index(rng, static_cast<std::size_t>(d))); };
            const int b = pick(), c = pick(), b1 = pick(), c1 = pick();
            check_projection(b, c, b1, c1);
        }
    }

    double shift_dev = 0.0;
    for (int lambda = 0; lambda < d; ++lambda) {
        const StateVecd phases = quadratic_phases<double>(elems[0], elems[lambda]);
        for (int b = 0; b < d; ++b) {
            for (int c = 0; c < d; ++c) {
                const StateVecd shifted = quad[b].col(c).cwiseProduct(phases);
                shift_dev = std::max(shift_dev, (shifted - quad[b].col(add_idx(c, lambda))).cwiseAbs().maxCoeff());
            }
        }
    }

    nlohmann::ordered_json out;
    out["field"] = field_to_json(*field);
    out["d"] = d;
    out["basis_count"] = report.basis_count;
    out["cross_pairs"] = report.cross_pairs_checked;
    out["max_cross_deviation"] = report.max_cross_deviation;
    out["max_intra_deviation"] = report.max_intra_deviation;
    out["max_completeness_deviation"] = report.max_completeness_deviation;
    out["trace_additivity_failures"] = trace_failures;
    out["projection_cases"] = projection_cases;
    out["max_projection_deviation"] = projection_dev;
    out["max_shift_deviation"] = shift_dev;

    bool ok = report.basis_count == d + 1 && report.max_cross_deviation < tol::kAccumulated &&
              report.max_intra_deviation < tol::kAlgebraic && report.max_completeness_deviation < tol::kAlgebraic &&
              trace_failures == 0 && projection_dev < tol::kAlgebraic && shift_dev < tol::kAlgebraic;

    if (field->n() == 1) {
        double wigner_dev = 0.0;
        for (int ord = 0; ord <= d; ++ord) {
            const BasisId basis = BasisId::from_ordinal(field, ord);
            for (int c = 0; c < d; ++c) {
                const auto w = dwigner1(mub_state(field, {basis, elems[c]}), d);
                for (int q = 0; q < d; ++q) {
                    for (int p = 0; p < d; ++p) {
                        const bool on_line = basis.is_computational() ? q == c : p == (2 * ord * q + c) % d;
                        wigner_dev = std::max(wigner_dev, std::abs(w.table(q, p) - (on_line ? 1.0 / d : 0.0)));
                    }
                }
            }
        }
        out["max_wigner_line_deviation"] = wigner_dev;
        ok = ok && wigner_dev < kWignerSupportThreshold;
    }
    out["pass"] = ok;
    std::cout << out.dump(2) << '\n';
    return ok ? kExitOk : kExitInvariant;
}

// ---------------------------------------------------------------------------
// bases

struct BasesArgs {
    FieldArgs field;
    std::string out;
};

int cmd_bases(const BasesArgs& args) {
    const Field field = make_field(args.field);
    const int d = field->d();
    std::string csv = "basis,b_index,c_index,n_index,re,im\n";
    for (const BasisId& basis : all_bases(field)) {
        const BasisMatd m = mub_basis(field, basis);
        const std::string kind = basis.is_computational() ? "computational" : "quadratic";
        const std::string b_index = basis.is_computational() ? "" : std::to_string(basis.ordinal());
        for (int c = 0; c < d; ++c) {
            for (int n = 0; n < d; ++n) {
                csv += kind + ',' + b_index + ',' + std::to_string(c) + ',' + std::to_string(n) + ',' +
                       fmt_double(m(n, c).real()) + ',' + fmt_double(m(n, c).imag()) + '\n';
            }
        }
    }
    emit(args.out, csv);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// wigner

struct WignerArgs {
    int p = 0;
    std::string b = "0";
    int c = 0;
    bool pair = false;
    std::string out;
};

std::string wigner_value(double v) {
    return fmt_double(std::abs(v) < tol::kAlgebraic ? 0.0 : v);
}

int cmd_wigner(const WignerArgs& args) {
    if (args.p == 0) throw UsageError("--p is required");
    const int d = args.p;
    if (d < 3 || !is_prime(d)) throw UsageError("wigner needs an odd prime --p");
    const Field field = FieldSpec::make(d, 1);
    if (args.c < 0 || args.c >= d) throw UsageError("--c must lie in [0, p)");
    const GfElem c = GfElem::from_index(field, args.c);

    const bool computational = args.b == "inf";
    int b_index = 0;
    if (!computational) {
        const std::vector<int> parsed = parse_int_list(args.b);
        if (parsed.size() != 1 || parsed[0] < 0 || parsed[0] >= d) throw UsageError("--b must lie in [0, p) or be 'inf'");
        b_index = parsed[0];
    }

    std::string csv;
    if (args.pair) {
        if (computational) throw UsageError("--pair needs a quadratic --b");
        const auto pair = entangled_mub(field, PairLabel{GfElem::from_index(field, b_index), c});
        csv = "q1,p1,q2,p2,value\n";
        for (const auto& [pt, value] : dwigner2_support(pair.state, d)) {
            csv += std::to_string(pt[0]) + ',' + std::to_string(pt[1]) + ',' + std::to_string(pt[2]) + ',' +
                   std::to_string(pt[3]) + ',' + wigner_value(value) + '\n';
        }
    } else {
        const BasisId basis =
            computational ? BasisId::computational(field) : BasisId::quadratic(GfElem::from_index(field, b_index));
        const auto w = dwigner1(mub_state(field, {basis, c}), d);
        csv = "q,p,value\n";
        for (int q = 0; q < d; ++q) {
            for (int p = 0; p < d; ++p) {
                csv += std::to_string(q) + ',' + std::to_string(p) + ',' + wigner_value(w.table(q, p)) + '\n';
            }
        }
    }
    emit(args.out, csv);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// session

struct SessionArgs {
    FieldArgs field;
    std::string config_path;
    int b = 0;
    int c = 0;
    long long rounds = 1;
    double check_frac = 0.0;
    std::string mode = "oracle";
    int reps = 1;
    std::string eve = "none";
    int delta = 0;
    int alice_b1 = 0;
    int bit = 0;
    std::uint64_t seed = 0;
    std::string out = "transcript.jsonl";
    std::string stats = "stats.json";
    bool no_transcript = false;
};

struct SessionOpts {
    CLI::Option* p;
    CLI::Option* n;
    CLI::Option* modulus;
    CLI::Option* b;
    CLI::Option* c;
    CLI::Option* rounds;
    CLI::Option* check_frac;
    CLI::Option* mode;
    CLI::Option* reps;
    CLI::Option* eve;
    CLI::Option* delta;
    CLI::Option* alice_b1;
    CLI::Option* bit;
    CLI::Option* seed;
};

GfElem element_arg(const Field& field, int v, const char* flag) {
    if (v < 0 || v >= field->d()) throw UsageError(std::string(flag) + " must lie in [0, p^n)");
    return GfElem::from_index(field, v);
}

SessionConfig build_session_config(const SessionArgs& args, const SessionOpts& given) {
    nlohmann::json doc = nlohmann::json::object();
    if (!args.config_path.empty()) {
        std::ifstream in(args.config_path);
        if (!in) throw UsageError("cannot read config '" + args.config_path + "'");
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw UsageError(std::string("config is not valid JSON: ") + e.what());
        }
    }
    // Explicit flags override the config file.
    if (given.p->count() || given.n->count() || given.modulus->count() || !doc.contains("field")) {
        const Field f = make_field(args.field);
        doc["field"] = {{"p", f->p()}, {"n", f->n()}, {"modulus", f->modulus()}};
    }
    SessionConfig cfg = config_from_json(doc);
    const Field& field = cfg.field;
    if (given.rounds->count()) cfg.rounds = args.rounds;
    if (given.check_frac->count()) cfg.check_fraction = args.check_frac;
    if (given.mode->count()) cfg.mode = parse_decode_mode(args.mode);
    if (given.reps->count()) cfg.swap_repetitions = args.reps;
    if (given.eve->count()) cfg.eve = parse_eve_strategy(args.eve);
    if (given.delta->count()) cfg.delta = element_arg(field, args.delta, "--delta");
    if (given.b->count() != given.c->count()) throw UsageError("--b and --c must be given together");
    if (given.b->count()) cfg.pair_label = PairLabel{element_arg(field, args.b, "--b"), element_arg(field, args.c, "--c")};
    if (given.alice_b1->count()) cfg.alice_b1 = element_arg(field, args.alice_b1, "--alice-b1");
    if (given.bit->count()) cfg.forced_bit = args.bit;
    if (given.seed->count()) cfg.seed = args.seed;
    cfg.validate();
    return cfg;
}

int cmd_session(const SessionArgs& args, const SessionOpts& given) {
    const SessionConfig cfg = build_session_config(args, given);
    const Transcript t = run_session(cfg);
    if (!args.no_transcript) emit(args.out, transcript_to_jsonl(t));
    emit(args.stats, summary_to_json(t).dump(2) + "\n");
    const SessionSummary& s = t.summary;
    std::cout << (s.eavesdropper_detected ? "DETECTED" : "CLEAN") << " d=" << cfg.field->d()
              << " rounds=" << cfg.rounds << " ber=" << fmt_double(s.bit_error_rate)
              << " check_pass_rate=" << fmt_double(s.check_pass_rate) << " checks=" << s.check_rounds << '\n';
    return s.eavesdropper_detected ? kExitDetected : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mutually unbiased bases, entangled MUB pairs and key-distribution sessions"};
    app.require_subcommand(1);

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "Check MUB, projection and shift invariants for GF(p^n)");
    add_field_options(verify_cmd, verify.field);
    verify_cmd->add_option("--max-d", verify.max_d, "Largest p^n accepted");

    BasesArgs bases;
    auto* bases_cmd = app.add_subcommand("bases", "Dump all MUB amplitudes as CSV");
    add_field_options(bases_cmd, bases.field);
    bases_cmd->add_option("--out", bases.out, "Output file (default stdout)");

    WignerArgs wigner;
    auto* wigner_cmd = app.add_subcommand("wigner", "Discrete Wigner function of a MUB state or entangled pair (prime p)");
    wigner_cmd->add_option("--p", wigner.p, "Odd prime dimension");
    wigner_cmd->add_option("--b", wigner.b, "Basis slope index, or 'inf' for the computational basis");
    wigner_cmd->add_option("--c", wigner.c, "State label index");
    wigner_cmd->add_flag("--pair", wigner.pair, "Entangled pair |2;b,c> support instead of a single state");
    wigner_cmd->add_option("--out", wigner.out, "Output file (default stdout)");

    SessionArgs session;
    SessionOpts given{};
    auto* session_cmd = app.add_subcommand("session", "Run a key-distribution session");
    given.p = session_cmd->add_option("--p", session.field.p, "Field characteristic (odd prime)");
    given.n = session_cmd->add_option("--n", session.field.n, "Extension degree");
    given.modulus = session_cmd->add_option("--modulus", session.field.modulus, "Monic modulus coefficients c0,c1,...,1");
    given.b = session_cmd->add_option("--b", session.b, "Fixed pair slope index (random per round if omitted)");
    given.c = session_cmd->add_option("--c", session.c, "Fixed pair label index");
    given.rounds = session_cmd->add_option("--rounds", session.rounds, "Number of rounds");
    given.check_frac = session_cmd->add_option("--check-frac", session.check_frac, "Fraction of check rounds");
    given.mode = session_cmd->add_option("--mode", session.mode, "Bob's comparison: oracle or swap");
    given.reps = session_cmd->add_option("--reps", session.reps, "Swap tests per message round");
    given.eve = session_cmd->add_option("--eve", session.eve, "none, fixed:<ordinal>, uniform-quadratic, uniform-all");
    given.delta = session_cmd->add_option("--delta", session.delta, "c label offset between the two pairs");
    given.alice_b1 = session_cmd->add_option("--alice-b1", session.alice_b1, "Fix Alice's basis slope index");
    given.bit = session_cmd->add_option("--bit", session.bit, "Force every message bit (0 or 1)");
    given.seed = session_cmd->add_option("--seed", session.seed, "RNG seed");
    session_cmd->add_option("--config", session.config_path, "JSON session config; flags override it");
    session_cmd->add_option("--out", session.out, "Transcript path (JSON Lines)");
    session_cmd->add_option("--stats", session.stats, "Summary path (JSON)");
    session_cmd->add_flag("--no-transcript", session.no_transcript, "Skip writing the transcript");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*verify_cmd) return cmd_verify(verify);
        if (*bases_cmd) return cmd_bases(bases);
        if (*wigner_cmd) return cmd_wigner(wigner);
        if (*session_cmd) return cmd_session(session, given);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
