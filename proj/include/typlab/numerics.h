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

#ifndef TYPLAB_NUMERICS_H
#define TYPLAB_NUMERICS_H

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace typlab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Largest composite (system x environment) dimension any dense object may use.
inline constexpr std::size_t kDefaultDimensionCap = 4096;

namespace tol {
/// Skew-Hermitian residue accepted by the spectral routines.
inline constexpr double kHermitianAccept = 1e-8;
/// Tolerance for invariant assertions on constructed objects.
inline constexpr double kInvariant = 1e-10;
/// Eigenvalues of density matrices above -kEigenClip are treated as nonnegative.
inline constexpr double kEigenClip = 1e-10;
}  // namespace tol

class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};
class DimensionCapError : public Error {
   public:
    using Error::Error;
};
class ShapeError : public Error {
   public:
    using Error::Error;
};
class HermiticityError : public Error {
   public:
    using Error::Error;
};
class RankError : public Error {
   public:
    using Error::Error;
};
class OperatorRangeError : public Error {
   public:
    using Error::Error;
};
class SubspaceMismatchError : public Error {
   public:
    using Error::Error;
};
class DomainError : public Error {
   public:
    using Error::Error;
};

/// Throws DimensionCapError when `dim` exceeds `cap`.
void check_dimension_cap(std::size_t dim, std::size_t cap, const char *what);

/// Dimensions of H_S and H_E.
///
/// The flat index of |s>|e> is s * dim_e() + e everywhere in the library, so
/// the system occupies the most significant digits of a composite index.
class BipartiteShape {
   public:
    BipartiteShape(std::size_t dim_s, std::size_t dim_e);

    std::size_t dim_s() const { return dim_s_; }
    std::size_t dim_e() const { return dim_e_; }
    std::size_t composite() const { return dim_s_ * dim_e_; }
    std::size_t index(std::size_t s, std::size_t e) const { return s * dim_e_ + e; }

    bool operator==(const BipartiteShape &) const = default;

   private:
    std::size_t dim_s_;
    std::size_t dim_e_;
};

enum class Keep { System, Environment };

/// A validated quantum state: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
   public:
    /// Validates the invariants at tolerance tol::kInvariant; throws on violation.
    explicit DensityMatrix(ComplexMatrix m);

    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    const ComplexMatrix &matrix() const { return m_; }

    /// Tr(rho^2).
    double purity() const;
    /// Ascending eigenvalues with round-off negatives clipped to zero.
    RealVector eigenvalues() const;

   private:
    ComplexMatrix m_;
};

bool is_hermitian(const ComplexMatrix &m, double tolerance);

/// Largest |m_ij - conj(m_ji)|.
double hermitian_defect(const ComplexMatrix &m);

/// Ascending eigenvalues of a Hermitian matrix. Diagonal input skips the
/// decomposition. Throws HermiticityError past tol::kHermitianAccept.
RealVector hermitian_eigenvalues(const ComplexMatrix &m);

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b,
                   std::size_t cap = kDefaultDimensionCap);

/// Tr_E or Tr_S of an operator on the composite space. Works for any square
/// operator, including sub-normalized ones.
ComplexMatrix partial_trace(const ComplexMatrix &m, const BipartiteShape &shape, Keep keep);
DensityMatrix partial_trace(const DensityMatrix &rho, const BipartiteShape &shape, Keep keep);

/// Reduced operators of |psi><psi| without forming the composite outer product.
ComplexMatrix reduce_vector(const ComplexVector &psi, const BipartiteShape &shape, Keep keep);

/// Tr|M| for Hermitian M, as the sum of absolute eigenvalues.
double trace_norm(const ComplexMatrix &m);
/// Frobenius norm sqrt(Tr M^dag M).
double hs_norm(const ComplexMatrix &m);
/// max |eigenvalue| for Hermitian M.
double operator_norm(const ComplexMatrix &m);

/// Tr(A B) for Hermitian A, B, computed elementwise in O(n^2).
double trace_product(const ComplexMatrix &a, const ComplexMatrix &b);

std::string describe(const BipartiteShape &shape);

}  // namespace typlab

#endif
