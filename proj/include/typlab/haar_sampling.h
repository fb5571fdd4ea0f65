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

#ifndef TYPLAB_HAAR_SAMPLING_H
#define TYPLAB_HAAR_SAMPLING_H

#include <cstdint>
#include <random>

#include "typlab/constraint_subspace.h"
#include "typlab/numerics.h"

namespace typlab {

/// (seed, index) names one independent random stream. Trial i of an experiment
/// always uses index i, whatever thread evaluates it.
struct SampleStream {
    std::uint64_t seed = 0;
    std::uint64_t index = 0;
};

using Engine = std::mt19937_64;

Engine make_engine(const SampleStream &stream);

/// A unit vector of H_R, kept both in subspace coordinates and embedded.
class PureState {
   public:
    /// Requires |coords| = 1 within 1e-10.
    static PureState from_coords(const ConstraintSubspace &sub, ComplexVector coords);

    std::uint64_t subspace_id() const { return subspace_id_; }
    const ComplexVector &coords() const { return coords_; }
    const ComplexVector &ambient() const { return ambient_; }

   private:
    PureState(std::uint64_t id, ComplexVector coords, ComplexVector ambient)
        : subspace_id_(id), coords_(std::move(coords)), ambient_(std::move(ambient)) {}

    std::uint64_t subspace_id_;
    ComplexVector coords_;
    ComplexVector ambient_;
};

/// Haar-uniform unit vector of H_R: normalized i.i.d. standard complex Gaussians.
PureState sample_pure(const ConstraintSubspace &sub, const SampleStream &stream);
PureState sample_pure(const ConstraintSubspace &sub, Engine &engine);

/// rho_S = Tr_E |phi><phi|.
DensityMatrix reduced_state(const PureState &phi, const ConstraintSubspace &sub);
/// rho_E = Tr_S |phi><phi|.
DensityMatrix reduced_environment_state(const PureState &phi, const ConstraintSubspace &sub);

/// min over theta of || a - e^{i theta} b ||.
double phase_aligned_distance(const ComplexVector &a, const ComplexVector &b);

// Random matrix ensembles used by property tests and the CLI.

/// Vector of i.i.d. standard complex Gaussians, E|z|^2 = 1.
ComplexVector gaussian_vector(std::size_t n, Engine &engine);
/// Haar unitary via QR of a Ginibre matrix with the R-diagonal phases removed.
ComplexMatrix haar_unitary(std::size_t n, Engine &engine);
/// G G^dag / Tr(G G^dag) for a Ginibre G (Hilbert-Schmidt measure).
DensityMatrix random_density_matrix(std::size_t n, Engine &engine);
/// (G + G^dag) / 2 for a Ginibre G.
ComplexMatrix random_hermitian(std::size_t n, Engine &engine);

}  // namespace typlab

#endif
