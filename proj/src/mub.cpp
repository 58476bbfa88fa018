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

#include "mubkey/mub.hpp"

#include <algorithm>

namespace mubkey {

UnbiasednessReport unbiasedness_report(const Field& field) {
    const int d = field->d();
    const double expected = 1.0 / std::sqrt(static_cast<double>(d));

    std::vector<BasisMatd> bases;
    bases.reserve(static_cast<std::size_t>(d) + 1);
    for (const BasisId& id : all_bases(field)) bases.push_back(mub_basis(field, id));

    UnbiasednessReport report;
    report.basis_count = static_cast<int>(bases.size());
    const BasisMatd identity = BasisMatd::Identity(d, d);
    for (const BasisMatd& basis : bases) {
        report.max_intra_deviation = std::max(report.max_intra_deviation, orthonormality_error(basis));
        const double completeness = (basis * basis.adjoint() - identity).cwiseAbs().maxCoeff();
        report.max_completeness_deviation = std::max(report.max_completeness_deviation, completeness);
    }
    for (std::size_t i = 0; i < bases.size(); ++i) {
        for (std::size_t j = i + 1; j < bases.size(); ++j) {
            const BasisMatd overlaps = bases[i].adjoint() * bases[j];
            const double dev = (overlaps.cwiseAbs().array() - expected).abs().maxCoeff();
            report.max_cross_deviation = std::max(report.max_cross_deviation, dev);
            ++report.cross_pairs_checked;
        }
    }
    return report;
}

}  // namespace mubkey
