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

#ifndef TYPLAB_EXPERIMENTS_H
#define TYPLAB_EXPERIMENTS_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "typlab/constraint_subspace.h"
#include "typlab/measurement_filter.h"
#include "typlab/numerics.h"

namespace typlab {

struct ExperimentConfig {
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    /// Defaults to d_R^(-1/3).
    std::optional<double> epsilon;
    std::size_t workers = 1;
    /// Return per-trial records. Summaries are computed either way.
    bool keep_records = true;
    /// Per-trial max Weyl-coefficient deviation; skipped when d_S > kCoefficientDimLimit.
    bool coefficient_deviation = true;
    /// Extra thresholds for empirical tail frequencies of the trace distance.
    std::vector<double> tail_thresholds;
};

inline constexpr std::size_t kCoefficientDimLimit = 16;

/// Trials are evaluated in fixed blocks of this size; block sums are merged
/// in block order, so results do not depend on the worker count.
inline constexpr std::size_t kTrialBlock = 256;

struct TrialRecord {
    std::size_t index;
    double trace_distance;  // ||rho_S - Omega_S||_1
    double purity;          // Tr rho_S^2
    std::optional<double> max_coeff_deviation;
};

struct SummaryStats {
    std::size_t count = 0;
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation
    double standard_error = 0.0;
    double min = 0.0;
    double max = 0.0;
    double q50 = 0.0;
    double q90 = 0.0;
    double q99 = 0.0;
    /// (threshold, fraction of values >= threshold)
    std::vector<std::pair<double, double>> tails;
};

/// Quantiles interpolate linearly between order statistics.
SummaryStats summarize(std::span<const double> values, std::span<const double> thresholds = {});

struct EnsembleInfo {
    std::size_t dim_s;
    std::size_t dim_e;
    std::size_t dim_r;
    double purity_s;
    double purity_e;
    double d_eff;
};

struct FilterInfo {
    double delta;
    std::size_t dim_s_tilde;  // rank of Tr_E X for X as supplied
    double d_eff_tilde;
};

struct DistanceExperiment {
    ExperimentConfig config;
    EnsembleInfo ensemble;
    double epsilon;
    std::vector<TrialRecord> records;  // empty unless config.keep_records
    std::vector<double> distances;     // trace distance per trial, always kept
    std::vector<double> coeff_deviations;
    SummaryStats distance;
    SummaryStats purity;
    std::optional<SummaryStats> coeff_deviation;
    /// Average of rho_S over all trials.
    ComplexMatrix mean_state;
    /// ||mean_state - Omega_S||_1
    double mean_state_distance;
    std::optional<double> exact_purity;
    std::optional<FilterInfo> filter;
};

/// Samples config.trials Haar states on sub. Trial i uses stream (seed, i).
DistanceExperiment run_distance_experiment(const ConstraintSubspace &sub, const ExperimentConfig &cfg,
                                           const MeasurementFilter *filter = nullptr);

struct BoundRow {
    std::string name;
    double threshold;  // distance threshold for tail rows, NaN otherwise
    double bound;
    double empirical;
    double tolerance;  // 3 sigma
    bool satisfied;
    bool vacuous;  // probability bound >= 1 or distance bound >= 2
};

std::vector<BoundRow> bound_confrontation_report(const DistanceExperiment &exp);

/// <Tr rho_S^2> over Haar states on sub, via the two swap traces on two copies.
struct ExactPurity {
    double t1;  // sum_ij Tr(G_ii G_jj), G_ik = Tr_E |b_i><b_k|
    double t2;  // sum_ij Tr(G_ij G_ji)
    double value;
};

ExactPurity exact_average_purity_terms(const ConstraintSubspace &sub, std::size_t cap = kDefaultDimensionCap);
double exact_average_purity(const ConstraintSubspace &sub, std::size_t cap = kDefaultDimensionCap);

struct PurityInequality {
    double lhs;  // exact average purity
    double rhs;  // Tr Omega_S^2 + Tr Omega_E^2
    bool satisfied;
};

PurityInequality purity_inequality_check(const ConstraintSubspace &sub, std::size_t cap = kDefaultDimensionCap);

struct ObservableSummary {
    double reference;  // Tr(O Omega_S)
    double op_norm;
    SummaryStats value;      // Tr(O rho_S)
    SummaryStats deviation;  // |Tr(O rho_S) - Tr(O Omega_S)|
    double tail_frequency;   // fraction of deviations >= epsilon
    double tail_bound;       // 2 exp(-C d_R eps^2 / ||O||^2)
};

struct ExpectationExperiment {
    double epsilon;
    std::vector<ObservableSummary> observables;
    SummaryStats family_deviation;  // max_x |C_x(rho_S) - C_x(Omega_S)| over the Weyl basis
    double family_tail_frequency;
    double family_tail_bound;
};

/// Observables act on H_S and must be Hermitian.
ExpectationExperiment run_expectation_experiment(const ConstraintSubspace &sub, const ExperimentConfig &cfg,
                                                 std::span<const ComplexMatrix> observables);

}  // namespace typlab

#endif
