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

#include "mubkey/phasespace.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "mubkey/error.hpp"
#include "mubkey/gf.hpp"
#include "mubkey/mub.hpp"

namespace mubkey {
namespace {

constexpr double kInterceptTolerance = 1e-12;

void require_odd_prime(int d) {
    if (d < 3 || !is_prime(d)) throw DomainError("discrete Wigner requires an odd prime dimension, got " + std::to_string(d));
}

int wrap(long long v, int d) {
    const long long r = v % d;
    return static_cast<int>(r < 0 ? r + d : r);
}

std::vector<std::complex<double>> roots(int d) {
    std::vector<std::complex<double>> out(static_cast<std::size_t>(d));
    for (int t = 0; t < d; ++t) out[t] = root_of_unity<double>(d, t);
    return out;
}

}  // namespace

CvLine to_line(const CvLabel& label) {
    if (label.vertical) return {std::nullopt, label.c};
    return {label.b, label.c};
}

CvLabel to_label(const CvLine& line) {
    if (!line.slope) return CvLabel::position(line.intercept);
    return {*line.slope, line.intercept, false};
}

CvLabel cv_split(const CvLabel& label, double b1, double c1) {
    if (label.vertical) throw DomainError("cv_split: position states carry no finite slope");
    return {label.b - b1, label.c - c1, false};
}

CvLabel cv_shift(const CvLabel& label, double lambda) {
    return {label.b, label.c + lambda, label.vertical};
}

bool cv_equal_delta(const CvLabel& l1, const CvLabel& l2) {
    if (l1.vertical != l2.vertical || (!l1.vertical && l1.b != l2.b)) {
        throw DomainError("cv_equal_delta: labels belong to different bases");
    }
    return std::abs(l1.c - l2.c) < kInterceptTolerance;
}

Intersection cv_intersect(const CvLine& l1, const CvLine& l2) {
    if (!l1.slope && !l2.slope) {
        if (l1.intercept == l2.intercept) return CoincidentLines{};
        return NoIntersection{};
    }
    if (!l1.slope) return PhasePoint{l1.intercept, *l2.slope * l1.intercept + l2.intercept};
    if (!l2.slope) return PhasePoint{l2.intercept, *l1.slope * l2.intercept + l1.intercept};
    if (*l1.slope == *l2.slope) {
        if (l1.intercept == l2.intercept) return CoincidentLines{};
        return NoIntersection{};
    }
    const double q = (l2.intercept - l1.intercept) / (*l1.slope - *l2.slope);
    return PhasePoint{q, *l1.slope * q + l1.intercept};
}

DiscreteWigner dwigner1(const StateVecd& state, int d) {
    require_odd_prime(d);
    if (state.size() != d) throw UsageError("dwigner1: state dimension must equal d");
    if (!is_normalized(state, tol::kBasis)) throw ValidationError("dwigner1: state must be normalized");
    const int half = (d + 1) / 2;  // inverse of 2 mod d
    const auto w = roots(d);
    DiscreteWigner out{d, Eigen::MatrixXd::Zero(d, d)};
    for (int q = 0; q < d; ++q) {
        for (int p = 0; p < d; ++p) {
            std::complex<double> acc = 0.0;
            for (int u = 0; u < d; ++u) {
                const int plus = wrap(q + static_cast<long long>(half) * u, d);
                const int minus = wrap(q - static_cast<long long>(half) * u, d);
                acc += state(plus) * std::conj(state(minus)) * w[wrap(-static_cast<long long>(p) * u, d)];
            }
            out.table(q, p) = acc.real() / d;
        }
    }
    return out;
}

PairWignerSupport dwigner2_support(const StateVecd& pair, int d) {
    require_odd_prime(d);
    if (pair.size() != static_cast<Eigen::Index>(d) * d) throw UsageError("dwigner2_support: pair dimension must be d^2");
    if (!is_normalized(pair, tol::kBasis)) throw ValidationError("dwigner2_support: pair must be normalized");
    const int half = (d + 1) / 2;
    const auto w = roots(d);
    const double scale = 1.0 / (static_cast<double>(d) * d);
    PairWignerSupport support;
    for (int q1 = 0; q1 < d; ++q1) {
        for (int p1 = 0; p1 < d; ++p1) {
            for (int q2 = 0; q2 < d; ++q2) {
                for (int p2 = 0; p2 < d; ++p2) {
                    std::complex<double> acc = 0.0;
                    for (int u1 = 0; u1 < d; ++u1) {
                        const int a1 = wrap(q1 + static_cast<long long>(half) * u1, d);
                        const int b1 = wrap(q1 - static_cast<long long>(half) * u1, d);
                        for (int u2 = 0; u2 < d; ++u2) {
                            const int a2 = wrap(q2 + static_cast<long long>(half) * u2, d);
                            const int b2 = wrap(q2 - static_cast<long long>(half) * u2, d);
                            const auto kernel = pair(a1 * d + a2) * std::conj(pair(b1 * d + b2));
                            acc += kernel * w[wrap(-static_cast<long long>(p1) * u1 - static_cast<long long>(p2) * u2, d)];
                        }
                    }
                    const double value = acc.real() * scale;
                    if (std::abs(value) > kWignerSupportThreshold) support[{q1, p1, q2, p2}] = value;
                }
            }
        }
    }
    return support;
}

}  // namespace mubkey
