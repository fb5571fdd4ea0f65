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

#ifndef TYPLAB_CONSTRAINT_SUBSPACE_H
#define TYPLAB_CONSTRAINT_SUBSPACE_H

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "typlab/numerics.h"

namespace typlab {

/// Where an operator on the universe lives: the full composite space, or the
/// d_R coordinates of a constraint subspace.
enum class OperatorSpace { Composite, Subspace };

/// The restricted space H_R inside H_S (x) H_E, stored as an isometry from
/// R^{d_R} coordinates into the composite space.
///
/// Subspaces spanned by computational basis states (the spin chain, the full
/// space) are kept as a list of composite indices; everything else is a dense
/// composite x d_R matrix with orthonormal columns.
class ConstraintSubspace {
   public:
    static ConstraintSubspace full_space(const BipartiteShape &shape, std::size_t cap = kDefaultDimensionCap);

    /// Orthonormalizes `vectors` by Gram-Schmidt with one re-orthogonalization
    /// pass. A vector whose residual falls below 1e-8 of its norm is rejected.
    static ConstraintSubspace from_basis_vectors(const BipartiteShape &shape, std::span<const ComplexVector> vectors,
                                                 std::size_t cap = kDefaultDimensionCap);

    /// Span of the given computational basis states, in the given order.
    static ConstraintSubspace from_computational_states(const BipartiteShape &shape,
                                                        std::vector<std::size_t> indices,
                                                        std::size_t cap = kDefaultDimensionCap);

    const BipartiteShape &shape() const { return shape_; }
    std::size_t dim() const { return dim_; }
    std::size_t composite_dim() const { return shape_.composite(); }

    /// Identity shared by copies of the same subspace; used to match states to
    /// the subspace they were drawn from.
    std::uint64_t id() const { return id_; }

    bool is_computational() const { return indices_.has_value(); }
    /// Composite indices of the basis states when is_computational().
    std::span<const std::size_t> computational_indices() const;

    ComplexVector basis_vector(std::size_t i) const;
    /// Dense composite x d_R isometry.
    ComplexMatrix basis_matrix() const;

    /// sum_i coords_i |b_i>. Requires |coords| = 1 within 1e-10.
    ComplexVector embed(const ComplexVector &coords) const;
    /// Same map without the normalization precondition (for sub-normalized and
    /// intermediate vectors).
    ComplexVector embed_unchecked(const ComplexVector &coords) const;
    /// B^dag v: coordinates of the orthogonal projection of v onto H_R.
    ComplexVector project(const ComplexVector &ambient) const;
    /// B^dag X B for an operator X on the composite space.
    ComplexMatrix compress(const ComplexMatrix &composite_op) const;
    /// B Y B^dag for an operator Y in subspace coordinates.
    ComplexMatrix expand(const ComplexMatrix &subspace_op) const;

    /// Returns the subspace whose basis is B U for a d_R x d_R unitary U.
    ConstraintSubspace rotated(const ComplexMatrix &unitary) const;

   private:
    ConstraintSubspace(BipartiteShape shape, std::size_t dim);

    BipartiteShape shape_;
    std::size_t dim_;
    std::uint64_t id_;
    std::optional<std::vector<std::size_t>> indices_;
    ComplexMatrix basis_;
};

/// E_R = 1_R / d_R together with its marginals.
struct CanonicalEnsemble {
    /// E_R on the composite space; only materialized when the composite
    /// dimension is at most kEquiprobableMaterializeLimit.
    std::optional<ComplexMatrix> equiprobable;
    DensityMatrix omega_s;
    DensityMatrix omega_e;
    double purity_s;  // Tr Omega_S^2
    double purity_e;  // Tr Omega_E^2
    double d_eff;     // 1 / Tr Omega_E^2
};

inline constexpr std::size_t kEquiprobableMaterializeLimit = 1024;

/// Omega_S and Omega_E are accumulated from the basis vectors, never from E_R.
CanonicalEnsemble canonical_ensemble(const ConstraintSubspace &sub);

/// Haar-random subspace: orthonormalized i.i.d. complex Gaussian vectors.
template <typename Rng>
ConstraintSubspace random_subspace(const BipartiteShape &shape, std::size_t dim_r, Rng &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<ComplexVector> vectors;
    vectors.reserve(dim_r);
    for (std::size_t i = 0; i < dim_r; ++i) {
        ComplexVector v(static_cast<Eigen::Index>(shape.composite()));
        for (Eigen::Index j = 0; j < v.size(); ++j) {
            double re = gauss(rng);
            double im = gauss(rng);
            v(j) = Complex(re, im);
        }
        vectors.push_back(std::move(v));
    }
    return ConstraintSubspace::from_basis_vectors(shape, vectors);
}

}  // namespace typlab

#endif
