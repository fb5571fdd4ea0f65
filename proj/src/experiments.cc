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

#include "typlab/experiments.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "typlab/concentration_bounds.h"
#include "typlab/haar_sampling.h"
#include "typlab/operator_basis.h"

namespace typlab {

namespace {

// Largest (d_R d_S)^2 d_E for which the distance experiment also evaluates
// the exact average purity.
constexpr double kExactPurityWork = 2e8;

// Runs f(begin, end) over fixed trial blocks; results land at the block index.
template <typename Block, typename F>
std::vector<Block> run_blocks(std::size_t trials, std::size_t workers, F &&f) {
    std::size_t blocks = (trials + kTrialBlock - 1) / kTrialBlock;
    std::vector<Block> out(blocks);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        while (true) {
            std::size_t b = next.fetch_add(1);
            if (b >= blocks) {
                return;
            }
            try {
                out[b] = f(b * kTrialBlock, std::min(trials, (b + 1) * kTrialBlock));
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(blocks);
                return;
            }
        }
    };
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(blocks, 1));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return out;
}

void validate_config(const ExperimentConfig &cfg) {
    if (cfg.trials == 0) {
        throw DomainError("experiment needs at least one trial");
    }
    if (cfg.epsilon && !(*cfg.epsilon >= 0.0)) {
        throw DomainError(fmt::format("epsilon must be nonnegative, got {}", *cfg.epsilon));
    }
}

double quantile(const std::vector<double> &sorted, double q) {
    double pos = q * static_cast<double>(sorted.size() - 1);
    auto lo = static_cast<std::size_t>(std::floor(pos));
    std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double frequency_at_least(std::span<const double> values, double threshold) {
    if (values.empty()) {
        return 0.0;
    }
    auto hits = std::count_if(values.begin(), values.end(), [&](double v) { return v >= threshold; });
    return static_cast<double>(hits) / static_cast<double>(values.size());
}

double tail_tolerance(double bound, std::size_t n) {
    double q = std::clamp(bound, 0.0, 1.0);
    return 3.0 * std::sqrt(q * (1.0 - q) / static_cast<double>(n));
}

BoundRow mean_row(std::string name, double bound, const SummaryStats &stats, double vacuous_at) {
    double tol = 3.0 * stats.standard_error;
    return BoundRow{std::move(name), std::numeric_limits<double>::quiet_NaN(), bound, stats.mean, tol,
                    stats.mean <= bound + tol, bound >= vacuous_at};
}

BoundRow tail_row(std::string name, double threshold, double bound, std::span<const double> values) {
    double freq = frequency_at_least(values, threshold);
    double tol = tail_tolerance(bound, values.size());
    return BoundRow{std::move(name), threshold, bound, freq, tol, freq <= std::min(bound, 1.0) + tol, bound >= 1.0};
}

}  // namespace

SummaryStats summarize(std::span<const double> values, std::span<const double> thresholds) {
    SummaryStats s;
    s.count = values.size();
    if (values.empty()) {
        return s;
    }
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    auto n = static_cast<double>(values.size());
    s.mean = sum / n;
    double ss = 0.0;
    for (double v : values) {
        ss += (v - s.mean) * (v - s.mean);
    }
    s.stddev = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    s.standard_error = s.stddev / std::sqrt(n);
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    s.min = sorted.front();
    s.max = sorted.back();
    s.q50 = quantile(sorted, 0.50);
    s.q90 = quantile(sorted, 0.90);
    s.q99 = quantile(sorted, 0.99);
    for (double t : thresholds) {
        s.tails.emplace_back(t, frequency_at_least(values, t));
    }
    return s;
}

DistanceExperiment run_distance_experiment(const ConstraintSubspace &sub, const ExperimentConfig &cfg,
                                           const MeasurementFilter *filter) {
    validate_config(cfg);
    CanonicalEnsemble ensemble = canonical_ensemble(sub);
    const BipartiteShape &shape = sub.shape();
    const ComplexMatrix &omega = ensemble.omega_s.matrix();
    auto ds = static_cast<Eigen::Index>(shape.dim_s());

    DistanceExperiment exp;
    exp.config = cfg;
    exp.ensemble = EnsembleInfo{shape.dim_s(), shape.dim_e(), sub.dim(), ensemble.purity_s, ensemble.purity_e,
                                ensemble.d_eff};
    exp.epsilon = cfg.epsilon.value_or(suggested_epsilon(sub.dim()));

    if (filter != nullptr) {
        FilteredEnsemble fe = apply_filter(sub, *filter);
        exp.filter = FilterInfo{std::clamp(fe.delta, 0.0, 1.0), filter->support_dim_system(), fe.d_eff_tilde};
    }

    bool coeffs = cfg.coefficient_deviation && shape.dim_s() <= kCoefficientDimLimit;
    std::optional<UnitaryOperatorBasis> basis;
    ComplexVector omega_coeffs;
    if (coeffs) {
        basis = UnitaryOperatorBasis::weyl(shape.dim_s());
        omega_coeffs = coefficients(*basis, omega);
    }

    struct Block {
        std::vector<TrialRecord> records;
        ComplexMatrix rho_sum;
    };
    auto blocks = run_blocks<Block>(cfg.trials, cfg.workers, [&](std::size_t begin, std::size_t end) {
        Block block;
        block.rho_sum = ComplexMatrix::Zero(ds, ds);
        block.records.reserve(end - begin);
        for (std::size_t i = begin; i < end; ++i) {
            PureState phi = sample_pure(sub, SampleStream{cfg.seed, i});
            ComplexMatrix rho = reduce_vector(phi.ambient(), shape, Keep::System);
            TrialRecord rec{i, trace_norm(rho - omega), rho.cwiseAbs2().sum(), std::nullopt};
            if (coeffs) {
                rec.max_coeff_deviation = max_coefficient_deviation(*basis, rho, omega_coeffs);
            }
            block.rho_sum += rho;
            block.records.push_back(rec);
        }
        return block;
    });

    std::vector<double> purities;
    exp.distances.reserve(cfg.trials);
    purities.reserve(cfg.trials);
    ComplexMatrix rho_sum = ComplexMatrix::Zero(ds, ds);
    for (const Block &block : blocks) {
        rho_sum += block.rho_sum;
        for (const TrialRecord &rec : block.records) {
            exp.distances.push_back(rec.trace_distance);
            purities.push_back(rec.purity);
            if (rec.max_coeff_deviation) {
                exp.coeff_deviations.push_back(*rec.max_coeff_deviation);
            }
            if (cfg.keep_records) {
                exp.records.push_back(rec);
            }
        }
    }
    exp.distance = summarize(exp.distances, cfg.tail_thresholds);
    exp.purity = summarize(purities);
    if (coeffs) {
        exp.coeff_deviation = summarize(exp.coeff_deviations);
    }
    exp.mean_state = rho_sum / static_cast<double>(cfg.trials);
    exp.mean_state_distance = trace_norm(exp.mean_state - omega);

    double rs = static_cast<double>(sub.dim()) * static_cast<double>(shape.dim_s());
    if (shape.composite() <= kDefaultDimensionCap && rs * rs * static_cast<double>(shape.dim_e()) <= kExactPurityWork) {
        exp.exact_purity = exact_average_purity(sub);
    }
    return exp;
}

std::vector<BoundRow> bound_confrontation_report(const DistanceExperiment &exp) {
    const EnsembleInfo &ens = exp.ensemble;
    std::vector<BoundRow> rows;
    AverageDistanceBound avg = average_distance_bound(ens.dim_s, ens.dim_r, ens.d_eff);
    rows.push_back(mean_row("average_distance_effective", avg.effective, exp.distance, 2.0));
    rows.push_back(mean_row("average_distance_dimensional", avg.dimensional, exp.distance, 2.0));

    Theorem1Bound t1 = theorem1(ens.dim_s, ens.dim_r, ens.d_eff, exp.epsilon);
    rows.push_back(tail_row("theorem1_tail", t1.eta, t1.eta_prime, exp.distances));

    Method2Bound m2 = method2_bound(ens.dim_s, ens.dim_r);
    rows.push_back(tail_row("method2_tail", m2.threshold, m2.tail, exp.distances));

    if (exp.filter && exp.filter->dim_s_tilde > 0) {
        const FilterInfo &f = *exp.filter;
        Theorem2Bound t2 = theorem2(f.dim_s_tilde, f.d_eff_tilde, ens.dim_r, f.delta, exp.epsilon);
        rows.push_back(tail_row("theorem2_tail", t2.eta_tilde, t2.eta_tilde_prime, exp.distances));
    }

    BoundRow purity = mean_row("average_purity", ens.purity_s + ens.purity_e, exp.purity, 1.0);
    rows.push_back(purity);

    if (!exp.coeff_deviations.empty()) {
        double bound = family_tail(ens.dim_s, ens.dim_r, exp.epsilon);
        rows.push_back(tail_row("weyl_family_tail", exp.epsilon, bound, exp.coeff_deviations));
    }
    return rows;
}

ExactPurity exact_average_purity_terms(const ConstraintSubspace &sub, std::size_t cap) {
    const BipartiteShape &shape = sub.shape();
    check_dimension_cap(shape.composite(), cap, "exact average purity (doubled space)");
    auto ds = static_cast<Eigen::Index>(shape.dim_s());
    auto de = static_cast<Eigen::Index>(shape.dim_e());
    auto dr = static_cast<Eigen::Index>(sub.dim());

    // Rows i*d_S .. i*d_S + d_S - 1 hold Psi_i, the d_S x d_E amplitude matrix of b_i.
    ComplexMatrix stacked(dr * ds, de);
    for (Eigen::Index i = 0; i < dr; ++i) {
        ComplexVector b = sub.basis_vector(static_cast<std::size_t>(i));
        Eigen::Map<const ComplexMatrix> amps(b.data(), de, ds);  // amps(e, s)
        stacked.middleRows(i * ds, ds) = amps.transpose();
    }
    // Block (i, k) of the Gram matrix is G_ik = Psi_i Psi_k^dag = Tr_E |b_i><b_k|.
    ComplexMatrix gram = stacked * stacked.adjoint();

    ComplexMatrix diag_sum = ComplexMatrix::Zero(ds, ds);
    for (Eigen::Index i = 0; i < dr; ++i) {
        diag_sum += gram.block(i * ds, i * ds, ds, ds);
    }
    double t1 = (diag_sum * diag_sum).trace().real();
    // sum_ik Tr(G_ik G_ki) with G_ki = G_ik^dag
    double t2 = gram.cwiseAbs2().sum();
    auto d = static_cast<double>(dr);
    return ExactPurity{t1, t2, (t1 + t2) / (d * (d + 1.0))};
}

double exact_average_purity(const ConstraintSubspace &sub, std::size_t cap) {
    return exact_average_purity_terms(sub, cap).value;
}

PurityInequality purity_inequality_check(const ConstraintSubspace &sub, std::size_t cap) {
    double lhs = exact_average_purity(sub, cap);
    CanonicalEnsemble ensemble = canonical_ensemble(sub);
    double rhs = ensemble.purity_s + ensemble.purity_e;
    return PurityInequality{lhs, rhs, lhs <= rhs + tol::kInvariant};
}

ExpectationExperiment run_expectation_experiment(const ConstraintSubspace &sub, const ExperimentConfig &cfg,
                                                 std::span<const ComplexMatrix> observables) {
    validate_config(cfg);
    const BipartiteShape &shape = sub.shape();
    auto ds = static_cast<Eigen::Index>(shape.dim_s());
    for (const ComplexMatrix &o : observables) {
        if (o.rows() != ds || o.cols() != ds) {
            throw ShapeError(fmt::format("observable is {}x{}, d_S = {}", o.rows(), o.cols(), ds));
        }
        if (!is_hermitian(o, tol::kHermitianAccept)) {
            throw HermiticityError("observable is not Hermitian");
        }
    }
    check_dimension_cap(shape.dim_s() * shape.dim_s(), kDefaultDimensionCap, "Weyl family");
    CanonicalEnsemble ensemble = canonical_ensemble(sub);
    const ComplexMatrix &omega = ensemble.omega_s.matrix();
    UnitaryOperatorBasis basis = UnitaryOperatorBasis::weyl(shape.dim_s());
    ComplexVector omega_coeffs = coefficients(basis, omega);

    ExpectationExperiment out;
    out.epsilon = cfg.epsilon.value_or(suggested_epsilon(sub.dim()));
    std::size_t nobs = observables.size();

    struct Block {
        std::vector<std::vector<double>> values;
        std::vector<double> family;
    };
    auto blocks = run_blocks<Block>(cfg.trials, cfg.workers, [&](std::size_t begin, std::size_t end) {
        Block block;
        block.values.resize(nobs);
        for (std::size_t i = begin; i < end; ++i) {
            PureState phi = sample_pure(sub, SampleStream{cfg.seed, i});
            ComplexMatrix rho = reduce_vector(phi.ambient(), shape, Keep::System);
            for (std::size_t o = 0; o < nobs; ++o) {
                block.values[o].push_back(trace_product(observables[o], rho));
            }
            block.family.push_back(max_coefficient_deviation(basis, rho, omega_coeffs));
        }
        return block;
    });

    std::vector<std::vector<double>> values(nobs);
    std::vector<double> family;
    for (const Block &block : blocks) {
        for (std::size_t o = 0; o < nobs; ++o) {
            values[o].insert(values[o].end(), block.values[o].begin(), block.values[o].end());
        }
        family.insert(family.end(), block.family.begin(), block.family.end());
    }
    for (std::size_t o = 0; o < nobs; ++o) {
        ObservableSummary s;
        s.reference = trace_product(observables[o], omega);
        s.op_norm = operator_norm(observables[o]);
        std::vector<double> dev(values[o].size());
        std::transform(values[o].begin(), values[o].end(), dev.begin(),
                       [&](double v) { return std::abs(v - s.reference); });
        s.value = summarize(values[o]);
        s.deviation = summarize(dev);
        s.tail_frequency = frequency_at_least(dev, out.epsilon);
        s.tail_bound = s.op_norm > 0.0 ? expectation_tail(s.op_norm, sub.dim(), out.epsilon) : 0.0;
        out.observables.push_back(std::move(s));
    }
    out.family_deviation = summarize(family);
    out.family_tail_frequency = frequency_at_least(family, out.epsilon);
    out.family_tail_bound = family_tail(shape.dim_s(), sub.dim(), out.epsilon);
    return out;
}

}  // namespace typlab
