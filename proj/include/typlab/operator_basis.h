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

#ifndef TYPLAB_OPERATOR_BASIS_H
#define TYPLAB_OPERATOR_BASIS_H

#include <cstddef>
#include <span>
#include <vector>

#include "typlab/numerics.h"

namespace typlab {

/// d^2 unitaries U^x on a d-dimensional space with Tr(U^x^dag U^y) = d delta_xy.
class UnitaryOperatorBasis {
   public:
    /// Shift-and-phase (Weyl) basis:
    ///   U^x = sum_s exp(2 pi i s (x - x mod d) / d^2) |(s + x) mod d><s|.
    /// For d = 2 this is {I, X, Z, -iY}.
    static UnitaryOperatorBasis weyl(std::size_t dim);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return ops_.size(); }
    const ComplexMatrix &op(std::size_t x) const { return ops_.at(x); }
    std::span<const ComplexMatrix> ops() const { return ops_; }

   private:
    std::size_t dim_ = 0;
    std::vector<ComplexMatrix> ops_;
};

/// C_x(rho) = Tr(U^x^dag rho), so rho = (1/d) sum_x C_x U^x.
ComplexVector coefficients(const UnitaryOperatorBasis &basis, const ComplexMatrix &rho);
ComplexVector coefficients(const UnitaryOperatorBasis &basis, const DensityMatrix &rho);

/// (1/d) sum_x C_x U^x.
ComplexMatrix reconstruct(const UnitaryOperatorBasis &basis, const ComplexVector &coeffs);

/// sqrt((1/d) sum_x |C_x - C'_x|^2), which equals ||rho - rho'||_2 by orthogonality.
double hs_distance_from_coefficients(const ComplexVector &c1, const ComplexVector &c2, std::size_t dim);

/// max_x |C_x(rho) - C_x(omega)|.
double max_coefficient_deviation(const UnitaryOperatorBasis &basis, const ComplexMatrix &rho,
                                 const ComplexMatrix &omega);
/// Same, against precomputed coefficients of omega.
double max_coefficient_deviation(const UnitaryOperatorBasis &basis, const ComplexMatrix &rho,
                                 const ComplexVector &omega_coeffs);

}  // namespace typlab

#endif
