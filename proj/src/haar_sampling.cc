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

#include <cmath>

#include <fmt/format.h>

namespace typlab {

Engine make_engine(const SampleStream &stream) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(stream.seed & 0xffffffffu),
        static_cast<std::uint32_t>(stream.seed >> 32),
        static_cast<std::uint32_t>(stream.index & 0xffffffffu),
        static_cast<std::uint32_t>(stream.index >> 32),
    };
    return Engine(seq);
}

ComplexVector gaussian_vector(std::size_t n, Engine &engine) {
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    ComplexVector g(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        double re = gauss(engine);
        double im = gauss(engine);
        g(i) = Complex(re, im);
    }
    return g;
}

PureState PureState::from_coords(const ConstraintSubspace &sub, ComplexVector coords) {
    ComplexVector ambient = sub.embed(coords);
    return PureState(sub.id(), std::move(coords), std::move(ambient));
}

PureState sample_pure(const ConstraintSubspace &sub, Engine &engine) {
    while (true) {
        ComplexVector g = gaussian_vector(sub.dim(), engine);
        double norm = g.norm();
        if (norm < 1e-100) {
            continue;
        }
        g /= norm;
        return PureState::from_coords(sub, std::move(g));
    }
}

PureState sample_pure(const ConstraintSubspace &sub, const SampleStream &stream) {
    Engine engine = make_engine(stream);
    return sample_pure(sub, engine);
}

namespace {

void check_membership(const PureState &phi, const ConstraintSubspace &sub) {
    if (phi.subspace_id() != sub.id()) {
        throw SubspaceMismatchError(
            fmt::format("state was drawn from subspace #{}, not #{}", phi.subspace_id(), sub.id()));
    }
}

}  // namespace

DensityMatrix reduced_state(const PureState &phi, const ConstraintSubspace &sub) {
    check_membership(phi, sub);
    return DensityMatrix(reduce_vector(phi.ambient(), sub.shape(), Keep::System));
}

DensityMatrix reduced_environment_state(const PureState &phi, const ConstraintSubspace &sub) {
    check_membership(phi, sub);
    return DensityMatrix(reduce_vector(phi.ambient(), sub.shape(), Keep::Environment));
}

double phase_aligned_distance(const ComplexVector &a, const ComplexVector &b) {
    if (a.size() != b.size()) {
        throw ShapeError("phase_aligned_distance: length mismatch");
    }
    Complex overlap = b.dot(a);  // <b|a>
    double mag = std::abs(overlap);
    Complex phase = mag > 0.0 ? overlap / mag : Complex(1.0, 0.0);
    return (a - phase * b).norm();
}

ComplexMatrix haar_unitary(std::size_t n, Engine &engine) {
    auto d = static_cast<Eigen::Index>(n);
    ComplexMatrix g(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        g.col(j) = gaussian_vector(n, engine);
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < d; ++j) {
        Complex rjj = r(j, j);
        double mag = std::abs(rjj);
        if (mag > 0.0) {
            q.col(j) *= rjj / mag;
        }
    }
    return q;
}

DensityMatrix random_density_matrix(std::size_t n, Engine &engine) {
    auto d = static_cast<Eigen::Index>(n);
    ComplexMatrix g(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        g.col(j) = gaussian_vector(n, engine);
    }
    ComplexMatrix rho = g * g.adjoint();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace().real();
    return DensityMatrix(std::move(rho));
}

ComplexMatrix random_hermitian(std::size_t n, Engine &engine) {
    auto d = static_cast<Eigen::Index>(n);
    ComplexMatrix g(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        g.col(j) = gaussian_vector(n, engine);
    }
    return 0.5 * (g + g.adjoint());
}

}  // namespace typlab
