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
 * Galois field GF(p^n), p an odd prime.
 *
 * Elements are coefficient vectors over GF(p) (low-order first) reduced by a
 * monic irreducible modulus of degree n. Every element has a canonical index
 *
 *     index(a) = sum_i a[i] * p^i   in [0, p^n)
 *
 * which fixes the ordering of basis vectors, basis labels and transcript
 * values throughout the library.
 *
 * The absolute trace tr(a) = a + a^p + ... + a^{p^{n-1}} lands in GF(p) and is
 * returned as an integer residue. It is additive, which is what makes the
 * quadratic phase exponents of the MUB family split across a product.
 */

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace mubkey {

class FieldSpec;
using Field = std::shared_ptr<const FieldSpec>;

bool is_prime(std::int64_t v);

/// Monic polynomial (low-order first, leading 1 included) irreducible over GF(p).
/// Exhaustive search for monic divisors of degree 1..deg/2.
bool is_irreducible(int p, std::span<const int> poly);

/// Lexicographically smallest monic irreducible of degree n: coefficient tuples
/// are scanned with the constant term varying fastest.
std::vector<int> find_irreducible(int p, int n);

class FieldSpec {
public:
    static constexpr std::int64_t kMaxOrder = std::int64_t{1} << 20;

    /// Modulus chosen by find_irreducible.
    static Field make(int p, int n);
    /// Explicit modulus, validated (monic, degree n, irreducible).
    static Field make(int p, int n, std::vector<int> modulus);

    int p() const noexcept { return p_; }
    int n() const noexcept { return n_; }
    int d() const noexcept { return d_; }
    const std::vector<int>& modulus() const noexcept { return modulus_; }

    /// tr of the element with the given canonical index.
    int trace_of_index(int index) const { return trace_table_[static_cast<std::size_t>(index)]; }

    bool same_as(const FieldSpec& other) const noexcept {
        return this == &other || (p_ == other.p_ && n_ == other.n_ && modulus_ == other.modulus_);
    }

private:
    FieldSpec(int p, int n, std::vector<int> modulus);

    int p_;
    int n_;
    int d_;
    std::vector<int> modulus_;
    std::vector<int> trace_table_;
};

class GfElem {
public:
    GfElem(Field field, std::vector<int> coeffs);

    static GfElem zero(const Field& field);
    static GfElem one(const Field& field);
    static GfElem from_index(const Field& field, int index);
    /// Element of the prime subfield, v taken mod p.
    static GfElem constant(const Field& field, int v);

    const Field& field() const noexcept { return field_; }
    std::span<const int> coeffs() const noexcept { return coeffs_; }
    int index() const noexcept;
    bool is_zero() const noexcept;

    GfElem pow(std::uint64_t e) const;

    friend GfElem operator+(const GfElem& a, const GfElem& b);
    friend GfElem operator-(const GfElem& a, const GfElem& b);
    friend GfElem operator*(const GfElem& a, const GfElem& b);
    friend GfElem operator-(const GfElem& a);
    friend bool operator==(const GfElem& a, const GfElem& b);

private:
    Field field_;
    std::vector<int> coeffs_;
};

GfElem gf_add(const GfElem& a, const GfElem& b);
GfElem gf_sub(const GfElem& a, const GfElem& b);
GfElem gf_mul(const GfElem& a, const GfElem& b);
/// Throws DomainError for a = 0.
GfElem gf_inv(const GfElem& a);
/// a^p.
GfElem frobenius(const GfElem& a);
/// Absolute trace as a residue in [0, p).
int trace(const GfElem& a);

/// All d elements in canonical index order.
std::vector<GfElem> elements(const Field& field);

}  // namespace mubkey
