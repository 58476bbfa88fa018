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
 * The d+1 mutually unbiased bases of a qudit of dimension d = p^n.
 *
 * Quadratic basis b (b in GF(d)) has states
 *
 *     |b,c> = d^{-1/2} sum_n w^{tr(b n^2 + c n)} |n>,   w = exp(2 pi i / p),
 *
 * and the computational basis {|n>} completes the set. Basis ordinals are
 * index(b) for the quadratic family and d for the computational basis.
 */

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include "mubkey/gf.hpp"
#include "mubkey/hilbert.hpp"

namespace mubkey {

class BasisId {
public:
    static BasisId computational(const Field& field) { return BasisId(field, std::nullopt); }
    static BasisId quadratic(GfElem b) {
        Field f = b.field();
        return BasisId(std::move(f), std::move(b));
    }
    static BasisId from_ordinal(const Field& field, int ordinal) {
        if (ordinal < 0 || ordinal > field->d()) throw UsageError("basis ordinal out of range");
        if (ordinal == field->d()) return computational(field);
        return quadratic(GfElem::from_index(field, ordinal));
    }

    bool is_computational() const noexcept { return !b_.has_value(); }
    /// Slope label of a quadratic basis; UsageError for the computational basis.
    const GfElem& b() const {
        if (!b_) throw UsageError("computational basis has no quadratic label");
        return *b_;
    }
    int ordinal() const noexcept { return b_ ? b_->index() : field_->d(); }
    const Field& field() const noexcept { return field_; }

    friend bool operator==(const BasisId& x, const BasisId& y) {
        return x.field_->same_as(*y.field_) && x.ordinal() == y.ordinal();
    }

private:
    BasisId(Field field, std::optional<GfElem> b) : field_(std::move(field)), b_(std::move(b)) {}

    Field field_;
    std::optional<GfElem> b_;
};

/// All d+1 bases in ordinal order.
inline std::vector<BasisId> all_bases(const Field& field) {
    std::vector<BasisId> out;
    out.reserve(static_cast<std::size_t>(field->d()) + 1);
    for (int k = 0; k <= field->d(); ++k) out.push_back(BasisId::from_ordinal(field, k));
    return out;
}

/// (basis, c). For the computational basis c is the position label n.
struct MubLabel {
    BasisId basis;
    GfElem c;
};

/// w^t for t in [0, p).
template <typename Scalar = double>
std::complex<Scalar> root_of_unity(int p, int t) {
    const Scalar angle = Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(t % p) / Scalar(p);
    return std::polar(Scalar(1), angle);
}

/// w^{tr(b n^2 + c n)} for every n in canonical order.
template <typename Scalar = double>
StateVec<Scalar> quadratic_phases(const GfElem& b, const GfElem& c) {
    const Field& field = b.field();
    if (!field->same_as(*c.field())) throw UsageError("labels belong to different fields");
    const int d = field->d();
    const int p = field->p();
    std::vector<std::complex<Scalar>> roots(static_cast<std::size_t>(p));
    for (int t = 0; t < p; ++t) roots[t] = root_of_unity<Scalar>(p, t);
    StateVec<Scalar> out(d);
    for (int i = 0; i < d; ++i) {
        const GfElem n = GfElem::from_index(field, i);
        out(i) = roots[static_cast<std::size_t>(trace(b * n * n + c * n))];
    }
    return out;
}

template <typename Scalar = double>
StateVec<Scalar> mub_state(const Field& field, const MubLabel& label) {
    if (!label.basis.field()->same_as(*field) || !label.c.field()->same_as(*field)) {
        throw UsageError("mub_state: label belongs to a different field");
    }
    const int d = field->d();
    if (label.basis.is_computational()) {
        StateVec<Scalar> e = StateVec<Scalar>::Zero(d);
        e(label.c.index()) = Scalar(1);
        return e;
    }
    return quadratic_phases<Scalar>(label.basis.b(), label.c) / std::sqrt(Scalar(d));
}

/// Columns are the d states of `basis` in canonical c order.
template <typename Scalar = double>
BasisMat<Scalar> mub_basis(const Field& field, const BasisId& basis) {
    const int d = field->d();
    if (basis.is_computational()) return BasisMat<Scalar>::Identity(d, d);
    BasisMat<Scalar> out(d, d);
    for (int c = 0; c < d; ++c) out.col(c) = mub_state<Scalar>(field, {basis, GfElem::from_index(field, c)});
    return out;
}

struct UnbiasednessReport {
    int basis_count = 0;
    long long cross_pairs_checked = 0;
    /// max | |<b,c|b',c'>| - 1/sqrt(d) | over distinct bases.
    double max_cross_deviation = 0.0;
    /// max-entry deviation of each Gram matrix from the identity.
    double max_intra_deviation = 0.0;
    /// max-entry deviation of sum_c |b,c><b,c| from the identity.
    double max_completeness_deviation = 0.0;
};

UnbiasednessReport unbiasedness_report(const Field& field);

}  // namespace mubkey
