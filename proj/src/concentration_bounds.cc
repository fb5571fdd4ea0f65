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

#include "typlab/concentration_bounds.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace typlab {

namespace {

void require_positive(double value, const char *name) {
    if (!(value > 0.0)) {
        throw DomainError(fmt::format("{} must be positive, got {}", name, value));
    }
}

void require_nonnegative(double value, const char *name) {
    if (!(value >= 0.0)) {
        throw DomainError(fmt::format("{} must be nonnegative, got {}", name, value));
    }
}

double eta_prime(std::size_t dim_r, double epsilon) {
    return 2.0 * std::exp(-kConcentrationConstant * static_cast<double>(dim_r) * epsilon * epsilon);
}

}  // namespace

double levy_tail(const LevyParams &p) {
    require_positive(p.sphere_dim, "sphere dimension");
    require_positive(p.lipschitz, "Lipschitz constant");
    require_nonnegative(p.epsilon, "epsilon");
    double exponent = 2.0 * kConcentrationConstant * (p.sphere_dim + 1.0) * p.epsilon * p.epsilon /
                      (p.lipschitz * p.lipschitz);
    return 2.0 * std::exp(-exponent);
}

double suggested_epsilon(std::size_t dim_r) {
    require_positive(static_cast<double>(dim_r), "d_R");
    return std::cbrt(1.0 / static_cast<double>(dim_r));
}

Theorem1Bound theorem1(std::size_t dim_s, std::size_t dim_r, double d_eff, double epsilon) {
    require_positive(static_cast<double>(dim_s), "d_S");
    require_positive(static_cast<double>(dim_r), "d_R");
    require_positive(d_eff, "d_E^eff");
    require_nonnegative(epsilon, "epsilon");
    return Theorem1Bound{
        .epsilon = epsilon,
        .eta = epsilon + std::sqrt(static_cast<double>(dim_s) / d_eff),
        .eta_prime = eta_prime(dim_r, epsilon),
    };
}

AverageDistanceBound average_distance_bound(std::size_t dim_s, std::size_t dim_r, double d_eff) {
    require_positive(static_cast<double>(dim_s), "d_S");
    require_positive(static_cast<double>(dim_r), "d_R");
    require_positive(d_eff, "d_E^eff");
    auto ds = static_cast<double>(dim_s);
    return AverageDistanceBound{
        .effective = std::sqrt(ds / d_eff),
        .dimensional = std::sqrt(ds * ds / static_cast<double>(dim_r)),
    };
}

Theorem2Bound theorem2(std::size_t dim_s_tilde, double d_eff_tilde, std::size_t dim_r, double delta,
                       double epsilon) {
    require_positive(static_cast<double>(dim_s_tilde), "d~_S");
    require_positive(d_eff_tilde, "d~_E^eff");
    require_positive(static_cast<double>(dim_r), "d_R");
    require_nonnegative(epsilon, "epsilon");
    if (!(delta >= 0.0 && delta <= 1.0)) {
        throw DomainError(fmt::format("delta must lie in [0, 1], got {}", delta));
    }
    return Theorem2Bound{
        .epsilon = epsilon,
        .delta = delta,
        .dim_s_tilde = dim_s_tilde,
        .d_eff_tilde = d_eff_tilde,
        .eta_tilde = epsilon + std::sqrt(static_cast<double>(dim_s_tilde) / d_eff_tilde) + 4.0 * std::sqrt(delta),
        .eta_tilde_prime = eta_prime(dim_r, epsilon),
    };
}

double expectation_tail(double op_norm, std::size_t dim_r, double epsilon) {
    require_positive(op_norm, "operator norm");
    require_positive(static_cast<double>(dim_r), "d_R");
    require_nonnegative(epsilon, "epsilon");
    return 2.0 * std::exp(-kConcentrationConstant * static_cast<double>(dim_r) * epsilon * epsilon /
                          (op_norm * op_norm));
}

double expectation_tail_suggested(double op_norm, std::size_t dim_r) {
    return expectation_tail(op_norm, dim_r, suggested_epsilon(dim_r));
}

double family_tail(std::size_t dim_s, std::size_t dim_r, double epsilon) {
    auto ds = static_cast<double>(dim_s);
    return ds * ds * expectation_tail(1.0, dim_r, epsilon);
}

Method2Bound method2_bound(std::size_t dim_s, std::size_t dim_r) {
    require_positive(static_cast<double>(dim_s), "d_S");
    require_positive(static_cast<double>(dim_r), "d_R");
    auto ds = static_cast<double>(dim_s);
    double beta = std::cbrt(static_cast<double>(dim_r) / (ds * ds));
    return Method2Bound{
        .beta = beta,
        .threshold = 1.0 / beta,
        .tail = 2.0 * ds * ds * std::exp(-kConcentrationConstant * beta),
    };
}

namespace {

constexpr double kSkipDistance = 1e-12;
constexpr double kRatioSlack = 1e-9;

template <typename F>
LipschitzReport worst_ratio(std::span<const StatePair> pairs, const ConstraintSubspace &sub, double bound, F &&f) {
    LipschitzReport report;
    report.bound = bound;
    for (const auto &[a, b] : pairs) {
        if (a.subspace_id() != sub.id() || b.subspace_id() != sub.id()) {
            throw SubspaceMismatchError("lipschitz check: state pair does not belong to the subspace");
        }
        double dist = phase_aligned_distance(a.ambient(), b.ambient());
        if (dist < kSkipDistance) {
            ++report.skipped;
            continue;
        }
        double ratio = std::abs(f(a) - f(b)) / dist;
        report.max_ratio = std::max(report.max_ratio, ratio);
        ++report.evaluated;
    }
    report.satisfied = report.max_ratio <= bound + kRatioSlack;
    return report;
}

}  // namespace

LipschitzReport lipschitz_check_distance(std::span<const StatePair> pairs, const ConstraintSubspace &sub,
                                         const CanonicalEnsemble &ensemble) {
    const ComplexMatrix &omega = ensemble.omega_s.matrix();
    return worst_ratio(pairs, sub, 2.0, [&](const PureState &phi) {
        return trace_norm(reduce_vector(phi.ambient(), sub.shape(), Keep::System) - omega);
    });
}

LipschitzReport lipschitz_check_expectation(std::span<const StatePair> pairs, const ConstraintSubspace &sub,
                                            const ComplexMatrix &x, OperatorSpace space) {
    auto expected = static_cast<Eigen::Index>(space == OperatorSpace::Composite ? sub.composite_dim() : sub.dim());
    if (x.rows() != expected || x.cols() != expected) {
        throw ShapeError(fmt::format("lipschitz check: operator is {}x{}, expected {}x{}", x.rows(), x.cols(),
                                     expected, expected));
    }
    double bound = 2.0 * operator_norm(x);
    return worst_ratio(pairs, sub, bound, [&](const PureState &phi) {
        const ComplexVector &v = space == OperatorSpace::Composite ? phi.ambient() : phi.coords();
        return v.dot(x * v).real();
    });
}

}  // namespace typlab
