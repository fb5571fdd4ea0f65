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

#ifndef TYPLAB_MEASUREMENT_FILTER_H
#define TYPLAB_MEASUREMENT_FILTER_H

#include <cstddef>
#include <optional>
#include <vector>

#include "typlab/constraint_subspace.h"
#include "typlab/haar_sampling.h"
#include "typlab/numerics.h"

namespace typlab {

/// An effect operator 0 <= X <= 1 used to cut atypical components out of the
/// ensemble before bounding distances.
///
/// X may be given on the composite space, directly in subspace coordinates,
/// or as a product A (x) 1_E with A acting on the system (dense or as a
/// diagonal 0/1 projector, which is how the spin-chain typical projector is
/// stored). Every form is restricted to H_R coordinates when applied.
class MeasurementFilter {
   public:
    enum class Kind { Composite, Subspace, SystemOperator, SystemProjector };

    static MeasurementFilter on_composite(ComplexMatrix x, const BipartiteShape &shape);
    static MeasurementFilter on_subspace(ComplexMatrix x, const ConstraintSubspace &sub);
    /// A (x) 1_E.
    static MeasurementFilter system_operator(ComplexMatrix a, const BipartiteShape &shape);
    /// P (x) 1_E for the diagonal projector P with P_ss = mask[s].
    static MeasurementFilter system_projector(std::vector<bool> mask, const BipartiteShape &shape);

    Kind kind() const { return kind_; }
    const BipartiteShape &shape() const { return shape_; }

    /// Rank of Tr_E X at tolerance 1e-8, for X as supplied (for a
    /// subspace-coordinate filter, X embedded as B X B^dag).
    std::size_t support_dim_system() const { return support_dim_s_; }

    /// X_R = B^dag X B in subspace coordinates.
    ComplexMatrix restrict_to(const ConstraintSubspace &sub) const;

    /// <b|X|b> for a composite vector b, without restricting first.
    double expectation(const ComplexVector &ambient) const;

    const std::optional<std::vector<bool>> &projector_mask() const { return mask_; }

   private:
    MeasurementFilter(Kind kind, BipartiteShape shape) : kind_(kind), shape_(shape) {}

    Kind kind_;
    BipartiteShape shape_;
    std::size_t support_dim_s_ = 0;
    std::optional<std::uint64_t> subspace_id_;
    ComplexMatrix op_;
    std::optional<std::vector<bool>> mask_;
};

/// The ensemble after the effect X_R: E~_R = sqrt(X_R) E_R sqrt(X_R) = X_R / d_R
/// and its sub-normalized marginals.
struct FilteredEnsemble {
    ComplexMatrix x_r;       // X_R in subspace coordinates
    ComplexMatrix sqrt_x_r;  // spectrum clipped to [0, 1] before the root
    ComplexMatrix e_tilde;   // X_R / d_R, subspace coordinates
    ComplexMatrix omega_s_tilde;
    ComplexMatrix omega_e_tilde;
    double delta;             // 1 - Tr Omega~_S
    double delta_from_basis;  // 1 - mean_i <b_i|X|b_i>
    double d_eff_tilde;       // 1 / Tr Omega~_E^2 (infinite when X_R = 0)
    /// Rank of Tr_E(B X_R B^dag): the support actually seen from H_R.
    std::size_t support_dim_s;
    /// ||Omega_S - Omega~_S||_1
    double omega_distance;
};

/// Throws OperatorRangeError unless 0 <= X <= 1 within 1e-10. X = 0 is
/// accepted and yields delta = 1.
FilteredEnsemble apply_filter(const ConstraintSubspace &sub, const MeasurementFilter &filter);

/// sqrt(X_R)|phi>, embedded in the composite space.
ComplexVector filtered_state(const PureState &phi, const ConstraintSubspace &sub, const FilteredEnsemble &filtered);

struct PerturbationCheck {
    double lhs;  // ||rho_S - rho~_S||_1
    double rhs;  // 2 sqrt(1 - <phi|X|phi>)
    bool satisfied;
};

PerturbationCheck perturbation_bound_check(const PureState &phi, const ConstraintSubspace &sub,
                                           const FilteredEnsemble &filtered);

}  // namespace typlab

#endif
