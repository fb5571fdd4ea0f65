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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "../unit/oracles.h"
#include "typlab/cli.h"
#include "typlab/concentration_bounds.h"
#include "typlab/constraint_subspace.h"
#include "typlab/experiments.h"
#include "typlab/haar_sampling.h"
#include "typlab/measurement_filter.h"
#include "typlab/operator_basis.h"
#include "typlab/spin_chain.h"

using namespace typlab;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    std::vector<std::string> failures;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            if (failures.size() < 5) failures.push_back(what);
        }
    }
};

struct Criterion {
    int id;
    std::string name;
    double time_limit_s;  // 0 when the criterion sets no limit
    std::function<Outcome()> check;
};

ExperimentConfig config(std::size_t trials, std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.keep_records = false;
    cfg.coefficient_deviation = false;
    return cfg;
}

double oracle_purity(const oracle::Matrix &m) { return (m * m).trace().real(); }

Outcome check_exact_purity_full_space() {
    Outcome o;
    const double ds = 2, de = 2;
    const double closed = (ds + de) / (ds * de + 1.0);
    auto sub = ConstraintSubspace::full_space(BipartiteShape(2, 2));
    double exact = exact_average_purity(sub);
    DistanceExperiment e = run_distance_experiment(sub, config(20000, 1));
    double z = std::abs(e.purity.mean - closed) / e.purity.standard_error;
    o.require(std::abs(exact - closed) <= 1e-10, fmt::format("exact {:.12g} != {:.12g}", exact, closed));
    o.require(z <= 3.0, fmt::format("Monte Carlo mean {:.6g} is {:.2f} SE from {:.6g}", e.purity.mean, z, closed));
    o.detail = fmt::format("exact={:.15g} closed={:.15g} mc={:.5f} ({:.2f} SE)", exact, closed, e.purity.mean, z);
    return o;
}

Outcome check_purity_inequality() {
    Outcome o;
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> uds(1, 4), ude(1, 6);
    double worst_gap = -INFINITY;
    for (int t = 0; t < 50; ++t) {
        std::size_t ds = uds(rng), de = ude(rng);
        std::uniform_int_distribution<std::size_t> udr(1, std::min<std::size_t>(12, ds * de));
        std::size_t dr = udr(rng);
        auto sub = random_subspace(BipartiteShape(ds, de), dr, rng);
        oracle::Matrix b = sub.basis_matrix();
        double rhs = oracle_purity(oracle::canonical_marginal(b, ds, de, true)) +
                     oracle_purity(oracle::canonical_marginal(b, ds, de, false));
        double lhs = exact_average_purity(sub);
        worst_gap = std::max(worst_gap, lhs - rhs);
        o.require(lhs <= rhs + 1e-10, fmt::format("d=({},{},{}) lhs {:.12g} > rhs {:.12g}", ds, de, dr, lhs, rhs));
    }
    o.detail = fmt::format("50 subspaces, max(lhs - rhs) = {:.3g}", worst_gap);
    return o;
}

Outcome check_average_distance_bound() {
    Outcome o;
    SpinChainModel m{8, 2, 4};
    auto sub = build_subspace(m);
    oracle::Matrix omega_e = oracle::canonical_marginal(sub.basis_matrix(), 4, 64, false);
    double deff = 1.0 / oracle_purity(omega_e);
    double tight = std::sqrt(4.0 / deff);
    double dimensional = std::sqrt(16.0 / 70.0);
    DistanceExperiment e = run_distance_experiment(sub, config(10000, 3));
    o.require(e.distance.mean <= dimensional, fmt::format("mean {:.6g} > {:.6g}", e.distance.mean, dimensional));
    o.require(e.distance.mean <= tight, fmt::format("mean {:.6g} > {:.6g}", e.distance.mean, tight));
    o.require(std::abs(deff - e.ensemble.d_eff) <= 1e-9 * deff, "library d_eff disagrees with oracle");
    o.detail = fmt::format("mean={:.5f} <= sqrt(dS/dEeff)={:.5f} (dEeff={:.6g}) <= sqrt(dS^2/dR)={:.5f}",
                           e.distance.mean, tight, deff, dimensional);
    return o;
}

Outcome check_mean_state_convergence() {
    Outcome o;
    std::string detail;
    for (SpinChainModel m : {SpinChainModel{3, 1, 1}, SpinChainModel{8, 2, 4}}) {
        auto sub = build_subspace(m);
        std::vector<double> avg;
        for (std::size_t n : {100u, 1000u, 10000u}) {
            double acc = 0.0;
            for (std::uint64_t seed = 1; seed <= 5; ++seed) {
                acc += run_distance_experiment(sub, config(n, 100 + seed)).mean_state_distance;
            }
            avg.push_back(acc / 5.0);
        }
        bool dec = avg[0] > avg[1] && avg[1] > avg[2];
        o.require(dec, fmt::format("n={} not strictly decreasing", m.n));
        detail += fmt::format("n={}: {:.4g} > {:.4g} > {:.4g}; ", m.n, avg[0], avg[1], avg[2]);
    }
    o.detail = detail + "5-seed averages";
    return o;
}

Outcome check_concentration_trend() {
    Outcome o;
    std::vector<double> sd;
    for (std::size_t n : {6u, 8u, 10u, 12u}) {
        auto sub = build_subspace(SpinChainModel{n, 1, n / 2});
        double acc = 0.0;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            acc += run_distance_experiment(sub, config(4000, 500 + 10 * n + seed)).distance.stddev;
        }
        sd.push_back(acc / 5.0);
    }
    for (std::size_t i = 1; i < sd.size(); ++i) o.require(sd[i] < sd[i - 1], fmt::format("stddev step {}", i));
    o.detail = fmt::format("stddev n=6,8,10,12: {:.4g} > {:.4g} > {:.4g} > {:.4g} (5-seed averages)", sd[0], sd[1],
                           sd[2], sd[3]);
    return o;
}

Outcome check_hypergeometric_state() {
    Outcome o;
    double worst = 0.0;
    std::size_t cases = 0;
    for (std::size_t n = 2; n <= 12; ++n) {
        for (std::size_t k = 1; k <= std::min<std::size_t>(4, n - 1); ++k) {
            for (std::size_t np = 0; np <= n; ++np) {
                SpinChainModel m{n, k, np};
                auto sub = build_subspace(m);
                std::size_t ds = std::size_t{1} << k, de = std::size_t{1} << (n - k);
                oracle::Matrix ref = oracle::canonical_marginal(sub.basis_matrix(), ds, de, true);
                double err = (exact_canonical_state(m).matrix() - ref).cwiseAbs().maxCoeff();
                worst = std::max(worst, err);
                o.require(err <= 1e-12, fmt::format("n={} k={} np={} err {:.3g}", n, k, np, err));
                ++cases;
            }
        }
    }
    const ComplexMatrix small = exact_canonical_state(SpinChainModel{3, 1, 1}).matrix();
    double e3 = std::max({std::abs(small(0, 0) - 2.0 / 3.0), std::abs(small(1, 1) - 1.0 / 3.0), std::abs(small(0, 1)),
                          std::abs(small(1, 0))});
    o.require(e3 <= 1e-12, "n=3 k=1 np=1 is not diag(2/3, 1/3)");
    o.detail = fmt::format("{} cases, max entry error {:.3g}; 3-spin error {:.3g}", cases, worst, e3);
    return o;
}

// Hypergeometric tail from counts, independent of the library.
double oracle_tail(std::size_t n, std::size_t k, std::size_t np, const TypicalWindow &w) {
    double inside = 0.0;
    for (std::size_t j = 0; j <= k; ++j) {
        if (j > np || np - j > n - k || !w.contains(j)) continue;
        inside += static_cast<double>(oracle::binomial(k, j)) * static_cast<double>(oracle::binomial(n - k, np - j));
    }
    return 1.0 - inside / static_cast<double>(oracle::binomial(n, np));
}

struct TailGridPoint {
    std::size_t k;
    double p;
    std::size_t num, den;
    double xi;
};

std::vector<TailGridPoint> tail_grid() {
    std::vector<TailGridPoint> g;
    for (std::size_t k = 1; k <= 16; ++k)
        for (auto [num, den] : {std::pair<std::size_t, std::size_t>{1, 4}, {1, 3}, {1, 2}})
            for (std::size_t xi = 1; xi <= k; ++xi)
                g.push_back({k, static_cast<double>(num) / static_cast<double>(den), num, den, static_cast<double>(xi)});
    return g;
}

Outcome check_typical_tail_suite() {
    Outcome o;
    std::size_t checks = 0, skipped = 0;
    double worst_ratio = 0.0;
    for (const auto &pt : tail_grid()) {
        TypicalWindow w;
        try {
            w = typical_window(pt.k, pt.p, pt.xi);
        } catch (const DomainError &) {
            ++skipped;  // no integer in the window
            continue;
        }
        double bound = delta_bound(pt.k, pt.p, pt.xi);
        double lim = binomial_typical_tail(pt.k, pt.p, w);
        o.require(lim <= bound + 1e-12, fmt::format("binomial k={} p={} xi={}", pt.k, pt.p, pt.xi));
        ++checks;
        for (std::size_t n = pt.k + 1; n <= 48; ++n) {
            if ((n * pt.num) % pt.den != 0) continue;
            std::size_t np = n * pt.num / pt.den;
            SpinChainModel m{n, pt.k, np};
            double tail = exact_typical_tail(m, w);
            double ref = oracle_tail(n, pt.k, np, w);
            o.require(std::abs(tail - ref) <= 1e-12, fmt::format("tail mismatch n={} k={}", n, pt.k));
            o.require(tail <= bound + 1e-12,
                      fmt::format("n={} k={} p={} xi={}: {:.6g} > {:.6g}", n, pt.k, pt.p, pt.xi, tail, bound));
            if (bound > 0) worst_ratio = std::max(worst_ratio, tail / bound);
            ++checks;
        }
    }
    o.detail = fmt::format("{} (n,k,p,xi) checks incl. binomial limit, {} empty windows, max tail/bound {:.3f}",
                           checks, skipped, worst_ratio);
    return o;
}

double oracle_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

Outcome check_entropy_and_dimension_bounds() {
    Outcome o;
    std::size_t sandwich = 0, dims = 0;
    for (std::size_t n = 1; n <= 20; ++n) {
        for (std::size_t np = 0; np <= n; ++np) {
            double p = static_cast<double>(np) / static_cast<double>(n);
            double top = std::exp2(static_cast<double>(n) * oracle_entropy(p));
            double c = static_cast<double>(oracle::binomial(n, np));
            o.require(top / (n + 1.0) <= c * (1 + 1e-12) && c <= top * (1 + 1e-12),
                      fmt::format("sandwich n={} np={}", n, np));
            o.require(binomial_entropy_bounds(n, np).holds, fmt::format("library sandwich n={} np={}", n, np));
            ++sandwich;
        }
    }
    double worst = 0.0;
    for (const auto &pt : tail_grid()) {
        TypicalWindow w;
        try {
            w = typical_window(pt.k, pt.p, pt.xi);
        } catch (const DomainError &) {
            continue;
        }
        std::uint64_t exact = 0;
        for (std::size_t j = w.lo; j <= w.hi; ++j) exact += oracle::binomial(pt.k, j);
        TypicalDimensionBound b = typical_dim_bound(pt.k, pt.p, pt.xi);
        o.require(exact == b.exact, fmt::format("window dimension k={} xi={}", pt.k, pt.xi));
        o.require(static_cast<double>(exact) <= b.bound * (1 + 1e-12),
                  fmt::format("dim bound k={} p={} xi={}: {} > {:.6g}", pt.k, pt.p, pt.xi, exact, b.bound));
        worst = std::max(worst, static_cast<double>(exact) / b.bound);
        ++dims;
    }
    o.detail = fmt::format("{} sandwich cases, {} dimension-bound cases, max exact/bound {:.3f}", sandwich, dims, worst);
    return o;
}

Outcome check_weyl_basis() {
    Outcome o;
    double worst_orth = 0.0, worst_hs = 0.0;
    std::size_t pairs = 0;
    Engine eng(909);
    for (std::size_t d = 2; d <= 8; ++d) {
        UnitaryOperatorBasis b = UnitaryOperatorBasis::weyl(d);
        for (std::size_t x = 0; x < b.size(); ++x) {
            oracle::Matrix u = b.op(x);
            worst_orth = std::max(worst_orth, (u.adjoint() * u - oracle::Matrix::Identity(d, d)).cwiseAbs().maxCoeff());
            for (std::size_t y = 0; y < b.size(); ++y) {
                oracle::Complex ip = (u.adjoint() * b.op(y)).trace();
                double want = x == y ? static_cast<double>(d) : 0.0;
                worst_orth = std::max(worst_orth, std::abs(ip - want));
            }
        }
        for (int t = 0; t < 100; ++t) {
            oracle::Matrix r1 = random_density_matrix(d, eng).matrix();
            oracle::Matrix r2 = random_density_matrix(d, eng).matrix();
            oracle::Matrix diff = r1 - r2;
            ComplexVector dc = coefficients(b, r1) - coefficients(b, r2);
            double hs2 = diff.cwiseAbs2().sum();
            double from_c = dc.cwiseAbs2().sum() / static_cast<double>(d);
            worst_hs = std::max(worst_hs, std::abs(hs2 - from_c));
            double tn = oracle::trace_norm(diff);
            double mid = std::sqrt(static_cast<double>(d) * hs2);
            double maxdev = dc.cwiseAbs().maxCoeff();
            o.require(tn <= mid + 1e-10 && mid <= d * maxdev + 1e-10, fmt::format("norm chain d={} t={}", d, t));
            ++pairs;
        }
    }
    o.require(worst_orth <= 1e-10, fmt::format("orthogonality/unitarity error {:.3g}", worst_orth));
    o.require(worst_hs <= 1e-10, fmt::format("HS identity error {:.3g}", worst_hs));
    o.detail = fmt::format("d=2..8, orth/unit err {:.3g}, HS identity err {:.3g} on {} pairs", worst_orth, worst_hs,
                           pairs);
    return o;
}

Outcome check_lipschitz_suites() {
    Outcome o;
    auto sub = build_subspace(SpinChainModel{6, 2, 3});
    CanonicalEnsemble ens = canonical_ensemble(sub);
    std::vector<StatePair> pairs;
    pairs.reserve(10000);
    for (std::uint64_t i = 0; i < 10000; ++i) {
        pairs.emplace_back(sample_pure(sub, SampleStream{77, 2 * i}), sample_pure(sub, SampleStream{77, 2 * i + 1}));
    }
    LipschitzReport d = lipschitz_check_distance(pairs, sub, ens);
    o.require(d.satisfied && d.max_ratio <= 2.0, fmt::format("distance ratio {:.4g}", d.max_ratio));

    std::mt19937_64 rng(31337);
    double worst_x = 0.0;
    const std::size_t composite = sub.shape().composite();
    for (int t = 0; t < 10; ++t) {
        oracle::Matrix x = oracle::random_hermitian(composite, rng);
        double opn = oracle::Matrix(x).selfadjointView<Eigen::Lower>().eigenvalues().cwiseAbs().maxCoeff();
        LipschitzReport e = lipschitz_check_expectation(pairs, sub, x, OperatorSpace::Composite);
        o.require(e.max_ratio <= 2.0 * opn + 1e-10, fmt::format("expectation ratio {:.4g} > 2||X||", e.max_ratio));
        o.require(std::abs(e.bound - 2.0 * opn) <= 1e-9 * opn, "library operator norm disagrees");
        worst_x = std::max(worst_x, e.max_ratio / (2.0 * opn));
    }

    double worst_m = 0.0;
    for (int t = 0; t < 1000; ++t) {
        std::size_t n = 1 + static_cast<std::size_t>(t % 16);
        oracle::Matrix mtx = oracle::random_hermitian(n, rng);
        double tn = oracle::trace_norm(mtx);
        double hs = std::sqrt(mtx.cwiseAbs2().sum());
        o.require(tn <= std::sqrt(static_cast<double>(n)) * hs + 1e-10, fmt::format("norm relation n={}", n));
        o.require(std::abs(trace_norm(mtx) - tn) <= 1e-10 * (1 + tn) && std::abs(hs_norm(mtx) - hs) <= 1e-10 * (1 + hs),
                  "library norms disagree with oracle");
        worst_m = std::max(worst_m, tn / (std::sqrt(static_cast<double>(n)) * hs));
    }
    o.detail = fmt::format("{} pairs: distance ratio max {:.4f} (<= 2); expectation ratio / 2||X|| max {:.4f}; "
                           "||M||_1/(sqrt(n)||M||_2) max {:.4f}",
                           d.evaluated, d.max_ratio, worst_x, worst_m);
    return o;
}

Outcome check_filtered_pipeline() {
    Outcome o;
    std::string detail;
    const std::size_t k = 12;
    const double xi = std::pow(static_cast<double>(k), 2.0 / 3.0);
    // below n = 24 every reachable excitation count lies in the window and delta = 0
    for (std::size_t n : {16u, 20u, 24u, 26u, 28u}) {
        SpinChainModel m{n, k, n / 2};
        TypicalWindow w = typical_window(k, m.p(), xi);
        CombinatorialFilter cf = combinatorial_filter(m, w, 50'000'000);
        double ref = oracle_tail(n, k, n / 2, w);
        o.require(cf.delta_enumerated.has_value(), "enumeration skipped");
        double agree = cf.delta_enumerated ? std::abs(cf.delta_exact - *cf.delta_enumerated) : INFINITY;
        o.require(agree <= 1e-10, fmt::format("n={} delta disagreement {:.3g}", n, agree));
        o.require(std::abs(cf.delta_exact - ref) <= 1e-12, fmt::format("n={} delta vs count oracle", n));
        o.require(cf.omega_distance <= 2.0 * std::sqrt(cf.delta_exact) + 1e-12, fmt::format("n={} omega distance", n));
        double dr = static_cast<double>(oracle::binomial(n, n / 2));
        o.require(cf.d_eff_tilde >= dr / static_cast<double>(cf.dim_s_tilde) - 1e-9, fmt::format("n={} d_eff~", n));
        o.require(cf.delta_exact <= delta_bound(k, m.p(), xi) + 1e-12, fmt::format("n={} delta bound", n));
        if (n >= 24) o.require(cf.delta_exact > 0.0, fmt::format("n={} expected a nonzero tail", n));
        detail += fmt::format("n={}: delta={:.4g} |Omega-Omega~|={:.4g} <= {:.4g}; ", n, cf.delta_exact,
                              cf.omega_distance, 2.0 * std::sqrt(cf.delta_exact));
    }
    std::vector<double> eta;
    for (std::size_t n : {8u, 10u, 12u, 14u}) eta.push_back(section7_report(SpinChainModel{n, 3, n / 2}).eta_tilde);
    for (std::size_t i = 1; i < eta.size(); ++i) o.require(eta[i] < eta[i - 1], "eta~ not decreasing");
    o.detail = detail + fmt::format("eta~(k=3): {:.4f} > {:.4f} > {:.4f} > {:.4f}", eta[0], eta[1], eta[2], eta[3]);
    return o;
}

Outcome check_determinism() {
    Outcome o;
    std::vector<std::vector<std::string>> runs{
        {"experiment", "--spin-chain", "8", "2", "4", "--seed", "2718", "--trials", "1500", "--format", "csv"},
        {"experiment", "--spin-chain", "10", "3", "5", "--seed", "31", "--trials", "700", "--xi", "1", "--format",
         "csv"},
        {"experiment", "--full-space", "3", "5", "--seed", "4", "--trials", "900", "--format", "csv"},
    };
    std::size_t bytes = 0;
    for (const auto &base : runs) {
        std::string first;
        for (const char *w : {"1", "2", "4"}) {
            auto args = base;
            args.insert(args.end(), {"--workers", w});
            std::ostringstream out, err;
            int code = cli::run(args, out, err);
            o.require(code == 0, fmt::format("exit {} {}", code, err.str()));
            if (first.empty()) {
                first = out.str();
                bytes += first.size();
            } else {
                o.require(out.str() == first, fmt::format("CSV differs with --workers {}", w));
            }
        }
        std::ostringstream again, err;
        cli::run(base, again, err);
        o.require(again.str() == first, "rerun without --workers differs");
    }
    o.detail = fmt::format("3 experiments x workers {{1,2,4}} + rerun, {} CSV bytes each identical", bytes);
    return o;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "exact average purity, full 2x2 space", 10, check_exact_purity_full_space},
        {2, "purity inequality on 50 random subspaces", 60, check_purity_inequality},
        {3, "average-distance bound, 8-spin chain", 30, check_average_distance_bound},
        {4, "mean-state convergence", 0, check_mean_state_convergence},
        {5, "concentration trend along n", 0, check_concentration_trend},
        {6, "hypergeometric canonical state", 0, check_hypergeometric_state},
        {7, "typical-subspace tail suite", 10, check_typical_tail_suite},
        {8, "entropy sandwich and typical-dimension bound", 0, check_entropy_and_dimension_bounds},
        {9, "Weyl operator basis", 0, check_weyl_basis},
        {10, "Lipschitz suites", 0, check_lipschitz_suites},
        {11, "filtered-ensemble pipeline", 0, check_filtered_pipeline},
        {12, "determinism across worker counts", 0, check_determinism},
    };
    int failed = 0;
    for (const auto &c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception &e) {
            o.pass = false;
            o.failures.push_back(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.time_limit_s > 0 && secs > c.time_limit_s) {
            o.pass = false;
            o.failures.push_back(fmt::format("runtime {:.2f} s over {:.0f} s", secs, c.time_limit_s));
        }
        fmt::print("{} criterion {:2d}: {} [{:.2f} s] {}\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail);
        for (const auto &f : o.failures) fmt::print("       - {}\n", f);
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
