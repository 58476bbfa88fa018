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
 * Phase-space views of MUB states.
 *
 * Continuous-variable states are never sampled on a grid; they are carried as
 * (b, c) labels whose lines p = b q + c are manipulated exactly. At odd prime d
 * the discrete Wigner function
 *
 *     W(q,p) = (1/d) sum_u psi(q + u/2) conj(psi(q - u/2)) w^{-p u}
 *
 * (u/2 meaning multiplication by the inverse of 2 mod d) puts each quadratic
 * MUB state |b,c> on the line p = 2 b q + c. The factor 2 comes from the phase
 * b n^2 carrying no 1/2.
 */

#pragma once

#include <array>
#include <map>
#include <optional>
#include <variant>

#include <Eigen/Core>

#include "mubkey/hilbert.hpp"

namespace mubkey {

/// Real (b, c) label; `vertical` marks the computational (b -> infinity) family,
/// for which c is the position.
struct CvLabel {
    double b = 0.0;
    double c = 0.0;
    bool vertical = false;

    static CvLabel position(double c) { return {0.0, c, true}; }
    friend bool operator==(const CvLabel&, const CvLabel&) = default;
};

/// p = slope * q + intercept, or q = intercept when slope is empty.
struct CvLine {
    std::optional<double> slope;
    double intercept = 0.0;
    friend bool operator==(const CvLine&, const CvLine&) = default;
};

CvLine to_line(const CvLabel& label);
CvLabel to_label(const CvLine& line);

/// (b - b1, c - c1). DomainError for a vertical label.
CvLabel cv_split(const CvLabel& label, double b1, double c1);
/// (b, c + lambda).
CvLabel cv_shift(const CvLabel& label, double lambda);
/// Same-basis delta correlation: intercepts equal within 1e-12. DomainError if the bases differ.
bool cv_equal_delta(const CvLabel& l1, const CvLabel& l2);

struct PhasePoint {
    double q;
    double p;
};
struct NoIntersection {};
struct CoincidentLines {};
using Intersection = std::variant<PhasePoint, NoIntersection, CoincidentLines>;

Intersection cv_intersect(const CvLine& l1, const CvLine& l2);

struct DiscreteWigner {
    int d = 0;
    Eigen::MatrixXd table;  // table(q, p)
};

/// (q1, p1, q2, p2) -> value, for points with |W| > 1e-10.
using PairWignerSupport = std::map<std::array<int, 4>, double>;

inline constexpr double kWignerSupportThreshold = 1e-10;

/// Single-qudit Wigner table at odd prime d.
DiscreteWigner dwigner1(const StateVecd& state, int d);
/// Two-qudit Wigner function of a d^2 state, restricted to its support.
PairWignerSupport dwigner2_support(const StateVecd& pair, int d);

}  // namespace mubkey
