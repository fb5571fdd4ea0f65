// Copyright 2026 The Typlab Authors
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

#include "typlab/operator_basis.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace typlab {

UnitaryOperatorBasis UnitaryOperatorBasis::weyl(std::size_t dim) {
    if (dim == 0) {
        throw DomainError("operator basis dimension must be positive");
    }
    UnitaryOperatorBasis basis;
    basis.dim_ = dim;
    auto d = static_cast<Eigen::Index>(dim);
    double d2 = static_cast<double>(dim) * static_cast<double>(dim);
    basis.ops_.reserve(dim * dim);
    for (std::size_t x = 0; x < dim * dim; ++x) {
        ComplexMatrix u = ComplexMatrix::Zero(d, d);
        double clock = static_cast<double>(x - x % dim);
        for (std::size_t s = 0; s < dim; ++s) {
            double angle = 2.0 * std::numbers::pi * static_cast<double>(s) * clock / d2;
            u(static_cast<Eigen::Index>((s + x) % dim), static_cast<Eigen::Index>(s)) = std::polar(1.0, angle);
        }
        basis.ops_.push_back(std::move(u));
    }
    return basis;
}

ComplexVector coefficients(const UnitaryOperatorBasis &basis, const ComplexMatrix &rho) {
    auto d = static_cast<Eigen::Index>(basis.dim());
    if (rho.rows() != d || rho.cols() != d) {
        throw ShapeError(fmt::format("coefficients: operator is {}x{}, basis dimension is {}", rho.rows(), rho.cols(),
                                     d));
    }
    ComplexVector c(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t x = 0; x < basis.size(); ++x) {
        // Tr(U^dag rho) = sum_ij conj(U_ij) rho_ij
        c(static_cast<Eigen::Index>(x)) = (basis.op(x).conjugate().array() * rho.array()).sum();
    }
    return c;
}

ComplexVector coefficients(const UnitaryOperatorBasis &basis, const DensityMatrix &rho) {
    return coefficients(basis, rho.matrix());
}

ComplexMatrix reconstruct(const UnitaryOperatorBasis &basis, const ComplexVector &coeffs) {
    if (static_cast<std::size_t>(coeffs.size()) != basis.size()) {
        throw ShapeError("reconstruct: coefficient count does not match basis size");
    }
    auto d = static_cast<Eigen::Index>(basis.dim());
    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    for (std::size_t x = 0; x < basis.size(); ++x) {
        out += coeffs(static_cast<Eigen::Index>(x)) * basis.op(x);
    }
    return out / static_cast<double>(basis.dim());
}

double hs_distance_from_coefficients(const ComplexVector &c1, const ComplexVector &c2, std::size_t dim) {
    if (c1.size() != c2.size()) {
        throw ShapeError("hs_distance_from_coefficients: length mismatch");
    }
    if (dim == 0) {
        throw DomainError("hs_distance_from_coefficients: dimension must be positive");
    }
    return std::sqrt((c1 - c2).cwiseAbs2().sum() / static_cast<double>(dim));
}

double max_coefficient_deviation(const UnitaryOperatorBasis &basis, const ComplexMatrix &rho,
                                 const ComplexVector &omega_coeffs) {
    ComplexVector c = coefficients(basis, rho);
    if (c.size() != omega_coeffs.size()) {
        throw ShapeError("max_coefficient_deviation: length mismatch");
    }
    return (c - omega_coeffs).cwiseAbs().maxCoeff();
}

double max_coefficient_deviation(const UnitaryOperatorBasis &basis, const ComplexMatrix &rho,
                                 const ComplexMatrix &omega) {
    return max_coefficient_deviation(basis, rho, coefficients(basis, omega));
}

}  // namespace typlab
