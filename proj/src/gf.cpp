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

#include "mubkey/gf.hpp"

#include <string>
#include <utility>

#include "mubkey/error.hpp"

namespace mubkey {
namespace {

using Poly = std::vector<int>;

int mod(long long v, int p) {
    const long long r = v % p;
    return static_cast<int>(r < 0 ? r + p : r);
}

// Remainder of a (any degree) by monic m, both low-order first.
Poly poly_rem(Poly a, const Poly& m, int p) {
    const std::size_t deg_m = m.size() - 1;
    for (std::size_t i = a.size(); i-- > deg_m;) {
        const int lead = a[i];
        if (lead == 0) continue;
        for (std::size_t j = 0; j <= deg_m; ++j) {
            a[i - deg_m + j] = mod(a[i - deg_m + j] - static_cast<long long>(lead) * m[j], p);
        }
    }
    a.resize(deg_m);
    return a;
}

// Product of two residues (length n) reduced by the monic modulus (length n+1).
Poly mul_mod(const Poly& a, const Poly& b, const Poly& m, int p) {
    Poly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            prod[i + j] = mod(prod[i + j] + static_cast<long long>(a[i]) * b[j], p);
        }
    }
    return poly_rem(std::move(prod), m, p);
}

Poly pow_mod(Poly base, std::uint64_t e, const Poly& m, int p) {
    Poly result(m.size() - 1, 0);
    result[0] = 1;
    while (e > 0) {
        if (e & 1U) result = mul_mod(result, base, m, p);
        base = mul_mod(base, base, m, p);
        e >>= 1U;
    }
    return result;
}

Poly digits(long long index, int p, int n) {
    Poly out(static_cast<std::size_t>(n));
    for (auto& c : out) {
        c = static_cast<int>(index % p);
        index /= p;
    }
    return out;
}

long long ipow(long long base, int e) {
    long long r = 1;
    while (e-- > 0) r *= base;
    return r;
}

void check_field_params(int p, int n) {
    if (p < 3 || !is_prime(p)) throw UsageError("field characteristic must be an odd prime, got " + std::to_string(p));
    if (n < 1) throw UsageError("extension degree must be >= 1, got " + std::to_string(n));
    long long d = 1;
    for (int i = 0; i < n; ++i) {
        d *= p;
        if (d > FieldSpec::kMaxOrder) throw UsageError("field order p^n exceeds supported maximum");
    }
}

void require_same_field(const GfElem& a, const GfElem& b) {
    if (!a.field()->same_as(*b.field())) throw UsageError("operands belong to different fields");
}

}  // namespace

bool is_prime(std::int64_t v) {
    if (v < 2) return false;
    for (std::int64_t f = 2; f * f <= v; ++f) {
        if (v % f == 0) return false;
    }
    return true;
}

bool is_irreducible(int p, std::span<const int> poly) {
    if (poly.size() < 2 || poly.back() != 1) return false;
    const int deg = static_cast<int>(poly.size()) - 1;
    for (int c : poly) {
        if (c < 0 || c >= p) return false;
    }
    if (deg == 1) return true;
    const Poly f(poly.begin(), poly.end());
    for (int k = 1; k <= deg / 2; ++k) {
        const long long count = ipow(p, k);
        for (long long t = 0; t < count; ++t) {
            Poly divisor = digits(t, p, k);
            divisor.push_back(1);
            const Poly r = poly_rem(f, divisor, p);
            bool zero = true;
            for (int c : r) zero = zero && c == 0;
            if (zero) return false;
        }
    }
    return true;
}

std::vector<int> find_irreducible(int p, int n) {
    check_field_params(p, n);
    const long long count = ipow(p, n);
    for (long long t = 0; t < count; ++t) {
        Poly candidate = digits(t, p, n);
        candidate.push_back(1);
        if (is_irreducible(p, candidate)) return candidate;
    }
    throw DomainError("no irreducible polynomial found");  // unreachable for prime p
}

FieldSpec::FieldSpec(int p, int n, std::vector<int> modulus)
    : p_(p), n_(n), d_(static_cast<int>(ipow(p, n))), modulus_(std::move(modulus)) {
    trace_table_.resize(static_cast<std::size_t>(d_));
    for (int idx = 0; idx < d_; ++idx) {
        const Poly a = digits(idx, p_, n_);
        Poly acc = a;
        Poly conj = a;
        for (int k = 1; k < n_; ++k) {
            conj = pow_mod(conj, static_cast<std::uint64_t>(p_), modulus_, p_);
            for (int i = 0; i < n_; ++i) acc[i] = mod(acc[i] + conj[i], p_);
        }
        for (int i = 1; i < n_; ++i) {
            if (acc[i] != 0) throw DomainError("trace left the prime subfield; modulus is not irreducible");
        }
        trace_table_[static_cast<std::size_t>(idx)] = acc[0];
    }
}

Field FieldSpec::make(int p, int n) {
    return make(p, n, find_irreducible(p, n));
}

Field FieldSpec::make(int p, int n, std::vector<int> modulus) {
    check_field_params(p, n);
    if (static_cast<int>(modulus.size()) != n + 1 || modulus.back() != 1) {
        throw UsageError("modulus must be monic of degree " + std::to_string(n));
    }
    if (!is_irreducible(p, modulus)) throw UsageError("modulus is not irreducible over GF(" + std::to_string(p) + ")");
    return Field(new FieldSpec(p, n, std::move(modulus)));
}

GfElem::GfElem(Field field, std::vector<int> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    if (!field_) throw UsageError("element requires a field");
    if (static_cast<int>(coeffs_.size()) != field_->n()) throw UsageError("coefficient count must equal extension degree");
    for (int c : coeffs_) {
        if (c < 0 || c >= field_->p()) throw UsageError("coefficient out of range [0, p)");
    }
}

GfElem GfElem::zero(const Field& field) {
    return GfElem(field, Poly(static_cast<std::size_t>(field->n()), 0));
}

GfElem GfElem::one(const Field& field) {
    return constant(field, 1);
}

GfElem GfElem::from_index(const Field& field, int index) {
    if (index < 0 || index >= field->d()) throw UsageError("element index out of range");
    return GfElem(field, digits(index, field->p(), field->n()));
}

GfElem GfElem::constant(const Field& field, int v) {
    Poly c(static_cast<std::size_t>(field->n()), 0);
    c[0] = mod(v, field->p());
    return GfElem(field, std::move(c));
}

int GfElem::index() const noexcept {
    int idx = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) idx = idx * field_->p() + coeffs_[i];
    return idx;
}

bool GfElem::is_zero() const noexcept {
    for (int c : coeffs_) {
        if (c != 0) return false;
    }
    return true;
}

GfElem GfElem::pow(std::uint64_t e) const {
    return GfElem(field_, pow_mod(coeffs_, e, field_->modulus(), field_->p()));
}

GfElem operator+(const GfElem& a, const GfElem& b) {
    require_same_field(a, b);
    const int p = a.field_->p();
    Poly out(a.coeffs_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = mod(a.coeffs_[i] + b.coeffs_[i], p);
    return GfElem(a.field_, std::move(out));
}

GfElem operator-(const GfElem& a, const GfElem& b) {
    require_same_field(a, b);
    const int p = a.field_->p();
    Poly out(a.coeffs_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = mod(a.coeffs_[i] - b.coeffs_[i], p);
    return GfElem(a.field_, std::move(out));
}

GfElem operator-(const GfElem& a) {
    return GfElem::zero(a.field_) - a;
}

GfElem operator*(const GfElem& a, const GfElem& b) {
    require_same_field(a, b);
    return GfElem(a.field_, mul_mod(a.coeffs_, b.coeffs_, a.field_->modulus(), a.field_->p()));
}

bool operator==(const GfElem& a, const GfElem& b) {
    return a.field_->same_as(*b.field_) && a.coeffs_ == b.coeffs_;
}

GfElem gf_add(const GfElem& a, const GfElem& b) { return a + b; }
GfElem gf_sub(const GfElem& a, const GfElem& b) { return a - b; }
GfElem gf_mul(const GfElem& a, const GfElem& b) { return a * b; }

GfElem gf_inv(const GfElem& a) {
    if (a.is_zero()) throw DomainError("zero has no multiplicative inverse");
    // a^(d-2) = a^-1 in the multiplicative group of order d-1.
    return a.pow(static_cast<std::uint64_t>(a.field()->d() - 2));
}

GfElem frobenius(const GfElem& a) {
    return a.pow(static_cast<std::uint64_t>(a.field()->p()));
}

int trace(const GfElem& a) {
    return a.field()->trace_of_index(a.index());
}

std::vector<GfElem> elements(const Field& field) {
    std::vector<GfElem> out;
    out.reserve(static_cast<std::size_t>(field->d()));
    for (int i = 0; i < field->d(); ++i) out.push_back(GfElem::from_index(field, i));
    return out;
}

}  // namespace mubkey
