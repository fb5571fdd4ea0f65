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

#ifndef TYPLAB_CONCENTRATION_BOUNDS_H
#define TYPLAB_CONCENTRATION_BOUNDS_H

#include <cstddef>
#include <numbers>
#include <span>
#include <utility>

#include "typlab/constraint_subspace.h"
#include "typlab/haar_sampling.h"
#include "typlab/numerics.h"

namespace typlab {

/// The concentration constant C = 1 / (18 pi^3) shared by every tail bound.
inline constexpr double kConcentrationConstant = 1.0 / (18.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi);

/// Inputs to the sphere concentration inequality. `lipschitz` is sup|grad f|,
/// deliberately not called eta: the distance threshold of the main bound
/// already uses that name.
struct LevyParams {
    double sphere_dim;  // d, with d = 2 d_R - 1 for states of H_R
    double lipschitz;
    double epsilon;
};

/// 2 exp(-2 C (d+1) eps^2 / lipschitz^2).
double levy_tail(const LevyParams &params);

/// Sphere dimension of the unit vectors of a d_R-dimensional complex space.
inline double state_sphere_dim(std::size_t dim_r) { return 2.0 * static_cast<double>(dim_r) - 1.0; }

/// The customary epsilon = d_R^{-1/3}.
double suggested_epsilon(std::size_t dim_r);

struct Theorem1Bound {
    double epsilon;
    double eta;        // epsilon + sqrt(d_S / d_E^eff)
    double eta_prime;  // 2 exp(-C d_R epsilon^2)
    double constant = kConcentrationConstant;
};

/// Prob[ ||rho_S - Omega_S||_1 >= eta ] <= eta_prime. `d_eff` may be +inf.
Theorem1Bound theorem1(std::size_t dim_s, std::size_t dim_r, double d_eff, double epsilon);

struct AverageDistanceBound {
    double effective;    // sqrt(d_S / d_E^eff)
    double dimensional;  // sqrt(d_S^2 / d_R)
};

AverageDistanceBound average_distance_bound(std::size_t dim_s, std::size_t dim_r, double d_eff);

struct Theorem2Bound {
    double epsilon;
    double delta;
    std::size_t dim_s_tilde;
    double d_eff_tilde;
    double eta_tilde;        // epsilon + sqrt(d~_S / d~_E^eff) + 4 sqrt(delta)
    double eta_tilde_prime;  // 2 exp(-C d_R epsilon^2)
};

Theorem2Bound theorem2(std::size_t dim_s_tilde, double d_eff_tilde, std::size_t dim_r, double delta, double epsilon);

/// Prob[ |Tr(O rho_S) - Tr(O Omega_S)| >= eps ] <= 2 exp(-C d_R eps^2 / ||O||^2).
double expectation_tail(double op_norm, std::size_t dim_r, double epsilon);
/// Same with eps = d_R^{-1/3}: 2 exp(-C d_R^{1/3} / ||O||^2).
double expectation_tail_suggested(double op_norm, std::size_t dim_r);

/// Probability bound for the whole d_S^2 unitary family at once.
double family_tail(std::size_t dim_s, std::size_t dim_r, double epsilon);

struct Method2Bound {
    double beta;       // (d_R / d_S^2)^{1/3}
    double threshold;  // 1 / beta
    double tail;       // 2 d_S^2 exp(-C beta)
};

Method2Bound method2_bound(std::size_t dim_s, std::size_t dim_r);

/// Probability bounds are reported raw; this is the presentation value min(p, 1).
inline double display_probability(double bound) { return bound < 1.0 ? bound : 1.0; }

struct LipschitzReport {
    double max_ratio = 0.0;
    double bound = 0.0;
    std::size_t evaluated = 0;
    std::size_t skipped = 0;
    bool satisfied = true;
};

using StatePair = std::pair<PureState, PureState>;

/// Worst |f(a) - f(b)| / d(a, b) for f = ||rho_S - Omega_S||_1, with d the
/// phase-aligned ambient distance. Pairs closer than 1e-12 are skipped.
LipschitzReport lipschitz_check_distance(std::span<const StatePair> pairs, const ConstraintSubspace &sub,
                                         const CanonicalEnsemble &ensemble);

/// Worst ratio for f = <phi|X|phi>; bound is 2 ||X||_op. X acts on the
/// composite space or on subspace coordinates, as `space` says.
LipschitzReport lipschitz_check_expectation(std::span<const StatePair> pairs, const ConstraintSubspace &sub,
                                            const ComplexMatrix &x, OperatorSpace space);

}  // namespace typlab

#endif
