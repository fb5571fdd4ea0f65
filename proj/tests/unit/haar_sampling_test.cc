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

#include "typlab/haar_sampling.h"

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "oracles.h"

using namespace typlab;

namespace {

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        double fa = static_cast<double>(i) / static_cast<double>(a.size());
        double fb = static_cast<double>(j) / static_cast<double>(b.size());
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

ConstraintSubspace three_spin_chain() {
    // weight-one states of three spins, system = first spin
    return ConstraintSubspace::from_computational_states(BipartiteShape(2, 4), {1, 2, 4});
}

}  // namespace

TEST(SamplePure, deterministic_per_stream) {
    auto sub = ConstraintSubspace::full_space(BipartiteShape(2, 3));
    PureState a = sample_pure(sub, SampleStream{42, 7});
    PureState b = sample_pure(sub, SampleStream{42, 7});
    PureState c = sample_pure(sub, SampleStream{42, 8});
    PureState d = sample_pure(sub, SampleStream{43, 7});
    EXPECT_EQ(a.coords(), b.coords());
    EXPECT_NE(a.coords(), c.coords());
    EXPECT_NE(a.coords(), d.coords());
    EXPECT_NEAR(a.coords().norm(), 1.0, 1e-12);
    EXPECT_LT((a.ambient() - sub.embed(a.coords())).norm(), 1e-15);
}

TEST(SamplePure, single_state_subspace) {
    auto sub = ConstraintSubspace::from_computational_states(BipartiteShape(2, 2), {3});
    for (std::uint64_t i = 0; i < 5; ++i) {
        PureState p = sample_pure(sub, SampleStream{1, i});
        EXPECT_NEAR(std::abs(p.coords()(0)), 1.0, 1e-15);
    }
}

TEST(SamplePure, second_moment_is_uniform) {
    auto sub = ConstraintSubspace::full_space(BipartiteShape(2, 3));
    const int n = 10000;
    std::vector<double> w;
    for (int i = 0; i < n; ++i) {
        w.push_back(std::norm(sample_pure(sub, SampleStream{5, static_cast<std::uint64_t>(i)}).coords()(0)));
    }
    double mean = 0, var = 0;
    for (double x : w) mean += x;
    mean /= n;
    for (double x : w) var += (x - mean) * (x - mean);
    double se = std::sqrt(var / (n - 1) / n);
    EXPECT_LT(std::abs(mean - 1.0 / 6.0), 5 * se);
}

TEST(ReducedState, mean_converges_to_canonical_state) {
    auto sub = three_spin_chain();
    ComplexMatrix omega = oracle::canonical_system(sub.basis_matrix(), 2, 4);
    ComplexMatrix ref(2, 2);
    ref << 2.0 / 3.0, 0, 0, 1.0 / 3.0;
    ASSERT_LT((omega - ref).norm(), 1e-15);
    ComplexMatrix sum = ComplexMatrix::Zero(2, 2);
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        sum += reduced_state(sample_pure(sub, SampleStream{9, static_cast<std::uint64_t>(i)}), sub).matrix();
    }
    EXPECT_LT(oracle::trace_norm(sum / n - omega), 5.0 / std::sqrt(n) * std::sqrt(2.0));
}

TEST(ReducedState, product_state_is_pure_and_mismatch_throws) {
    auto sub = ConstraintSubspace::full_space(BipartiteShape(2, 2));
    ComplexVector c = ComplexVector::Zero(4);
    c(0) = 1.0;
    PureState p = PureState::from_coords(sub, c);
    EXPECT_NEAR(reduced_state(p, sub).purity(), 1.0, 1e-15);
    auto other = ConstraintSubspace::full_space(BipartiteShape(2, 2));
    EXPECT_THROW(reduced_state(p, other), SubspaceMismatchError);
    EXPECT_THROW(PureState::from_coords(sub, 2.0 * c), Error);
}

TEST(HaarUnitary, is_unitary) {
    Engine eng(3);
    for (std::size_t n : {1u, 2u, 5u, 9u}) {
        ComplexMatrix u = haar_unitary(n, eng);
        EXPECT_LT((u.adjoint() * u - ComplexMatrix::Identity(n, n)).norm(), 1e-12);
    }
}

TEST(RandomEnsembles, valid_objects) {
    Engine eng(4);
    DensityMatrix rho = random_density_matrix(4, eng);
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
    ComplexMatrix h = random_hermitian(5, eng);
    EXPECT_LT((h - h.adjoint()).norm(), 1e-15);
    EXPECT_EQ(gaussian_vector(7, eng).size(), 7);
}

TEST(PhaseAlignedDistance, ignores_global_phase) {
    ComplexVector a = ComplexVector::Unit(3, 0);
    ComplexVector b = a * std::polar(1.0, 0.7);
    EXPECT_NEAR(phase_aligned_distance(a, b), 0.0, 1e-15);
    EXPECT_NEAR(phase_aligned_distance(a, ComplexVector::Unit(3, 1)), std::sqrt(2.0), 1e-15);
}

TEST(UnitaryInvariance, distance_distribution_unchanged_by_rotation) {
    Engine eng(77);
    BipartiteShape shape(2, 4);
    auto sub = ConstraintSubspace::from_computational_states(shape, {1, 2, 4, 7, 5});
    auto rot = sub.rotated(haar_unitary(sub.dim(), eng));
    ComplexMatrix omega_a = oracle::canonical_system(sub.basis_matrix(), 2, 4);
    ComplexMatrix omega_b = oracle::canonical_system(rot.basis_matrix(), 2, 4);
    const int n = 2000;
    std::vector<double> da, db;
    for (int i = 0; i < n; ++i) {
        auto idx = static_cast<std::uint64_t>(i);
        da.push_back(oracle::trace_norm(reduced_state(sample_pure(sub, SampleStream{101, idx}), sub).matrix() - omega_a));
        db.push_back(oracle::trace_norm(reduced_state(sample_pure(rot, SampleStream{202, idx}), rot).matrix() - omega_b));
    }
    double critical = 1.628 * std::sqrt(2.0 / n);  // alpha = 0.01
    EXPECT_LT(ks_statistic(da, db), critical);
}
