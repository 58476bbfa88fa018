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
 * Entangled pairs carrying MUB labels.
 *
 *     |2;b,c> = d^{-1/2} sum_n w^{tr(b n^2 + c n)} |n>|n>
 *
 * Because tr is additive, projecting the first particle on |b1,c1> leaves the
 * second in d^{-1/2} |b - b1, c - c1>, with no extra phase.
 */

#pragma once

#include <optional>
#include <vector>

#include "mubkey/hilbert.hpp"
#include "mubkey/mub.hpp"

namespace mubkey {

struct PairLabel {
    GfElem b;
    GfElem c;
};

template <typename Scalar = double>
struct EntangledPair {
    PairLabel label;
    StateVec<Scalar> state;  // dimension d^2, diagonal support
};

template <typename Scalar = double>
EntangledPair<Scalar> entangled_mub(const Field& field, const PairLabel& label) {
    if (!label.b.field()->same_as(*field) || !label.c.field()->same_as(*field)) {
        throw UsageError("entangled_mub: label belongs to a different field");
    }
    const int d = field->d();
    const StateVec<Scalar> phases = quadratic_phases<Scalar>(label.b, label.c);
    StateVec<Scalar> state = StateVec<Scalar>::Zero(static_cast<Eigen::Index>(d) * d);
    const Scalar norm = Scalar(1) / std::sqrt(Scalar(d));
    for (int n = 0; n < d; ++n) state(static_cast<Eigen::Index>(n) * d + n) = norm * phases(n);
    return {label, std::move(state)};
}

template <typename Scalar>
struct FirstMeasurement {
    GfElem c1;
    StateVec<Scalar> remote;  // normalized
};

/// Measures particle 1 in basis b1; outcomes weighted by the squared norms of
/// the partial contractions, remote state renormalized.
template <typename Scalar>
FirstMeasurement<Scalar> measure_first(const Field& field, const EntangledPair<Scalar>& pair, const BasisId& b1,
                                       Rng& rng) {
    const int d = field->d();
    std::vector<StateVec<Scalar>> branches;
    std::vector<double> weights;
    branches.reserve(static_cast<std::size_t>(d));
    weights.reserve(static_cast<std::size_t>(d));
    for (int c = 0; c < d; ++c) {
        const StateVec<Scalar> bra = mub_state<Scalar>(field, {b1, GfElem::from_index(field, c)});
        branches.push_back(project_first(pair.state, bra));
        weights.push_back(static_cast<double>(branches.back().squaredNorm()));
    }
    const std::size_t k = sample_discrete(rng, weights);
    StateVec<Scalar> remote = branches[k] / branches[k].norm();
    return {GfElem::from_index(field, static_cast<int>(k)), std::move(remote)};
}

/// Diagonal phase w^{tr(lambda n)}: maps |b,c> to |b,c+lambda> in every quadratic basis.
template <typename Derived>
StateVec<typename Derived::RealScalar> shift_remote(const Eigen::MatrixBase<Derived>& state, const GfElem& lambda) {
    using Scalar = typename Derived::RealScalar;
    if (state.size() != lambda.field()->d()) throw UsageError("shift_remote: state dimension does not match the field");
    return apply_diag_phase(state, quadratic_phases<Scalar>(GfElem::zero(lambda.field()), lambda));
}

/// Projective decomposition {|2;b,c>}_c plus the orthogonal complement.
template <typename Scalar = double>
struct JointMeasurement {
    GfElem b;
    BasisMat<Scalar> pair_states;  // d^2 x d, column c is |2;b,c>
};

template <typename Scalar = double>
JointMeasurement<Scalar> joint_measurement(const Field& field, const GfElem& b) {
    const int d = field->d();
    BasisMat<Scalar> cols(static_cast<Eigen::Index>(d) * d, d);
    for (int c = 0; c < d; ++c) cols.col(c) = entangled_mub<Scalar>(field, {b, GfElem::from_index(field, c)}).state;
    return {b, std::move(cols)};
}

template <typename Scalar>
struct JointOutcome {
    std::optional<GfElem> c;  // nullopt: complement outcome
    StateVec<Scalar> post;
};

/// Nondestructive readout of the pair label c: an input |2;b,c> with matching b
/// yields c with certainty and is left unchanged.
template <typename Derived>
JointOutcome<typename Derived::RealScalar> joint_c_measure(const Field& field, const Eigen::MatrixBase<Derived>& pair,
                                                           const GfElem& b, Rng& rng) {
    using Scalar = typename Derived::RealScalar;
    const int d = field->d();
    if (pair.size() != static_cast<Eigen::Index>(d) * d) throw UsageError("joint_c_measure: pair dimension mismatch");
    const JointMeasurement<Scalar> m = joint_measurement<Scalar>(field, b);
    const StateVec<Scalar> amps = m.pair_states.adjoint() * pair;
    const double total = static_cast<double>(pair.squaredNorm());
    std::vector<double> weights(static_cast<std::size_t>(d) + 1);
    double captured = 0.0;
    for (int c = 0; c < d; ++c) {
        weights[c] = static_cast<double>(std::norm(amps(c)));
        captured += weights[c];
    }
    weights[d] = std::max(0.0, total - captured);
    // Complement weight below roundoff is treated as absent.
    if (weights[d] < tol::kAlgebraic * total) weights[d] = 0.0;
    const std::size_t k = sample_discrete(rng, weights);
    if (k == static_cast<std::size_t>(d)) {
        StateVec<Scalar> rest = pair - m.pair_states * amps;
        return {std::nullopt, rest / rest.norm()};
    }
    StateVec<Scalar> post = m.pair_states.col(static_cast<Eigen::Index>(k)) * (amps(k) / std::abs(amps(k)));
    return {GfElem::from_index(field, static_cast<int>(k)), std::move(post)};
}

template <typename Scalar>
JointOutcome<Scalar> joint_c_measure(const Field& field, const EntangledPair<Scalar>& pair, const GfElem& b, Rng& rng) {
    return joint_c_measure(field, pair.state, b, rng);
}

/// w^{tr((b1+b2) n^2 + (c1+c2) n)} == w^{tr(b1 n^2 + c1 n)} w^{tr(b2 n^2 + c2 n)} for all n.
inline bool exponent_additivity_check(const Field& field, const GfElem& b1, const GfElem& c1, const GfElem& b2,
                                      const GfElem& c2) {
    for (const GfElem* x : {&b1, &c1, &b2, &c2}) {
        if (!x->field()->same_as(*field)) throw UsageError("exponent_additivity_check: label field mismatch");
    }
    const StateVecd joint = quadratic_phases<double>(b1 + b2, c1 + c2);
    const StateVecd product = quadratic_phases<double>(b1, c1).cwiseProduct(quadratic_phases<double>(b2, c2));
    return (joint - product).cwiseAbs().maxCoeff() < tol::kAlgebraic;
}

}  // namespace mubkey
