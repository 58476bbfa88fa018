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
 * Dense pure-state kernels.
 *
 * States are Eigen column vectors of complex amplitudes. Two-particle vectors
 * of dimension d*d use the index convention idx = n1 * d + n2. A basis is a
 * square matrix whose columns are the basis vectors.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "mubkey/error.hpp"
#include "mubkey/random.hpp"

namespace mubkey {

template <typename Scalar = double>
using StateVec = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar = double>
using BasisMat = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

using StateVecd = StateVec<double>;
using BasisMatd = BasisMat<double>;

namespace tol {
inline constexpr double kAlgebraic = 1e-12;
inline constexpr double kAccumulated = 1e-9;
inline constexpr double kBasis = 1e-10;
}  // namespace tol

template <typename Derived>
bool is_normalized(const Eigen::MatrixBase<Derived>& state, double tolerance = tol::kAlgebraic) {
    return std::abs(static_cast<double>(state.squaredNorm()) - 1.0) < tolerance;
}

/// <u|v>, conjugate-linear in u.
template <typename DerivedU, typename DerivedV>
typename DerivedU::Scalar inner(const Eigen::MatrixBase<DerivedU>& u, const Eigen::MatrixBase<DerivedV>& v) {
    if (u.size() != v.size()) throw UsageError("inner: dimension mismatch");
    return u.dot(v);
}

template <typename DerivedU, typename DerivedV>
StateVec<typename DerivedU::RealScalar> tensor(const Eigen::MatrixBase<DerivedU>& u,
                                               const Eigen::MatrixBase<DerivedV>& v) {
    StateVec<typename DerivedU::RealScalar> out(u.size() * v.size());
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        out.segment(i * v.size(), v.size()) = u(i) * v;
    }
    return out;
}

/// Max-entry deviation of basis^H basis from the identity.
template <typename Derived>
double orthonormality_error(const Eigen::MatrixBase<Derived>& basis) {
    using Mat = BasisMat<typename Derived::RealScalar>;
    const Mat gram = basis.adjoint() * basis;
    return static_cast<double>((gram - Mat::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff());
}

template <typename Scalar>
struct BornOutcome {
    std::size_t index;
    StateVec<Scalar> collapsed;
};

/// Projective measurement of `state` in the orthonormal basis given by the
/// columns of `basis`. The state need not be normalized; probabilities are
/// taken relative to its squared norm.
template <typename DerivedS, typename DerivedB>
BornOutcome<typename DerivedS::RealScalar> born_sample(const Eigen::MatrixBase<DerivedS>& state,
                                                       const Eigen::MatrixBase<DerivedB>& basis, Rng& rng) {
    if (basis.rows() != state.size() || basis.cols() != state.size()) {
        throw ValidationError("born_sample: basis must be square and match the state dimension");
    }
    if (orthonormality_error(basis) > tol::kBasis) throw ValidationError("born_sample: basis is not orthonormal");
    const auto amplitudes = (basis.adjoint() * state).eval();
    std::vector<double> probs(static_cast<std::size_t>(amplitudes.size()));
    for (Eigen::Index k = 0; k < amplitudes.size(); ++k) probs[k] = static_cast<double>(std::norm(amplitudes(k)));
    const std::size_t k = sample_discrete(rng, probs);
    return {k, basis.col(static_cast<Eigen::Index>(k))};
}

/// Partial contraction <bra|_1 |pair>: w[n2] = sum_n1 conj(bra[n1]) pair[n1 d + n2].
/// The result is unnormalized; its squared norm is the outcome probability.
template <typename DerivedP, typename DerivedB>
StateVec<typename DerivedP::RealScalar> project_first(const Eigen::MatrixBase<DerivedP>& pair,
                                                      const Eigen::MatrixBase<DerivedB>& bra) {
    const Eigen::Index d = bra.size();
    if (pair.size() != d * d) throw UsageError("project_first: pair dimension must be the square of the bra dimension");
    using Mat = BasisMat<typename DerivedP::RealScalar>;
    const StateVec<typename DerivedP::RealScalar> flat = pair;
    // Column-major map: view(n2, n1) = pair[n1 d + n2].
    const Eigen::Map<const Mat> view(flat.data(), d, d);
    return view * bra.conjugate();
}

template <typename DerivedS, typename DerivedP>
StateVec<typename DerivedS::RealScalar> apply_diag_phase(const Eigen::MatrixBase<DerivedS>& state,
                                                         const Eigen::MatrixBase<DerivedP>& phases) {
    if (phases.size() != state.size()) throw UsageError("apply_diag_phase: phase count must equal dimension");
    for (Eigen::Index k = 0; k < phases.size(); ++k) {
        if (std::abs(static_cast<double>(std::abs(phases(k))) - 1.0) > tol::kAlgebraic) {
            throw ValidationError("apply_diag_phase: phase is not unimodular");
        }
    }
    return state.cwiseProduct(phases);
}

enum class SwapOutcome { Symmetric, Antisymmetric };

/// Swap test on two (consumed) pure states: antisymmetric with probability
/// (1 - |<u|v>|^2) / 2.
template <typename DerivedU, typename DerivedV>
SwapOutcome swap_test(const Eigen::MatrixBase<DerivedU>& u, const Eigen::MatrixBase<DerivedV>& v, Rng& rng) {
    if (u.size() != v.size()) throw UsageError("swap_test: dimension mismatch");
    if (!is_normalized(u) || !is_normalized(v)) throw ValidationError("swap_test: inputs must be normalized");
    const double overlap = static_cast<double>(std::norm(inner(u, v)));
    const double p_anti = std::max(0.0, (1.0 - overlap) / 2.0);
    return bernoulli(rng, p_anti) ? SwapOutcome::Antisymmetric : SwapOutcome::Symmetric;
}

}  // namespace mubkey
