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

#ifndef TYPLAB_SPIN_CHAIN_H
#define TYPLAB_SPIN_CHAIN_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "typlab/constraint_subspace.h"
#include "typlab/measurement_filter.h"
#include "typlab/numerics.h"

namespace typlab {

/// Exact binomial coefficient. Zero when k > n; throws DomainError on uint64 overflow.
std::uint64_t binomial(std::size_t n, std::size_t k);

/// H(p) in bits, with 0 log 0 = 0.
double binary_entropy(double p);

/// |log2(p / (1 - p))|.
double entropy_slope(double p);

/// All n-bit integers of Hamming weight w, ascending.
std::vector<std::uint64_t> fixed_weight_states(std::size_t n, std::size_t w);

/// n spin-1/2 particles in a field B, exactly num_excited of them in |1>.
/// The first k spins form the system. Spin 0 is the most significant bit of
/// a basis index, so index = s * 2^(n-k) + e.
struct SpinChainModel {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t num_excited = 0;
    double field = 1.0;

    /// Throws DomainError unless 1 <= k < n <= 62 and num_excited <= n.
    void validate() const;

    double p() const { return static_cast<double>(num_excited) / static_cast<double>(n); }
    std::size_t dim_s() const { return std::size_t{1} << k; }
    std::size_t dim_e() const { return std::size_t{1} << (n - k); }
    std::uint64_t dim_r() const { return binomial(n, num_excited); }
    BipartiteShape shape() const { return BipartiteShape(dim_s(), dim_e()); }
};

/// Span of the weight-num_excited basis states in ascending index order.
ConstraintSubspace build_subspace(const SpinChainModel &m, std::size_t cap = kDefaultDimensionCap);

/// Probability that the system holds j excitations, j = 0..k:
/// C(k, j) C(n-k, np-j) / C(n, np).
std::vector<double> hypergeometric_class_weights(const SpinChainModel &m);

/// Diagonal of the canonical state over the 2^k system strings:
/// C(n-k, np-|s|) / C(n, np).
RealVector exact_canonical_diagonal(const SpinChainModel &m);
DensityMatrix exact_canonical_state(const SpinChainModel &m, std::size_t cap = kDefaultDimensionCap);

/// Diagonal of (p|1><1| + (1-p)|0><0|)^(x)k, i.e. (1-p)^k (p/(1-p))^|s|.
RealVector product_diagonal(const SpinChainModel &m);
DensityMatrix product_approximation(const SpinChainModel &m, std::size_t cap = kDefaultDimensionCap);

/// Trace distance between the exact canonical state and the product form,
/// evaluated per excitation class (no 2^k storage).
double product_approximation_distance(const SpinChainModel &m);

struct Temperature {
    enum class Regime { Finite, Infinite, Zero };
    Regime regime;
    /// k_B T in units of energy. +inf for Infinite, 0 for Zero. Negative when p > 1/2.
    double kt;
};

/// k_B T = B / ln((1-p)/p).
Temperature temperature(const SpinChainModel &m);

struct TypicalWindow {
    double xi = 0.0;
    std::size_t lo = 0;
    std::size_t hi = 0;

    bool contains(std::size_t weight) const { return weight >= lo && weight <= hi; }
};

/// lo = ceil(kp - xi), hi = floor(kp + xi), clamped to [0, k]. Throws
/// DomainError for negative xi or an empty window.
TypicalWindow typical_window(std::size_t k, double p, double xi);

/// Sum of C(k, j) over the window.
std::uint64_t window_dimension(std::size_t k, const TypicalWindow &w);

/// Mask over the 2^k system strings, true inside the window.
std::vector<bool> typical_mask(std::size_t k, const TypicalWindow &w);

/// Pi_S (x) 1_E for the typical window.
MeasurementFilter typical_projector(const SpinChainModel &m, const TypicalWindow &w);

/// 2 exp(-xi^2 / (4 k p (1-p))).
double delta_bound(std::size_t k, double p, double xi);

/// 1 - Tr(Pi_S Omega_S), summed over the excitation classes outside the window.
double exact_typical_tail(const SpinChainModel &m, const TypicalWindow &w);

/// Same tail for i.i.d. spins (the n -> infinity limit at fixed p).
double binomial_typical_tail(std::size_t k, double p, const TypicalWindow &w);

struct EntropySandwich {
    double lower;  // 2^(nH) / (n+1)
    double upper;  // 2^(nH)
    std::uint64_t exact;
    bool holds;
};

EntropySandwich binomial_entropy_bounds(std::size_t n, std::size_t num_excited);

struct TypicalDimensionBound {
    double p_tilde;
    double via_p_tilde;  // (2 xi + 1) 2^(k H(p~))
    double bound;        // (2 xi + 1) 2^(k H(p) + xi G(p))
    std::uint64_t exact;
    bool holds;          // exact <= via_p_tilde <= bound
};

TypicalDimensionBound typical_dim_bound(std::size_t k, double p, double xi);

struct CombinatorialEnsemble {
    std::uint64_t dim_r;
    double purity_s;
    double purity_e;
    double d_eff;
};

/// Canonical-state purities from the excitation-class structure alone.
CombinatorialEnsemble combinatorial_canonical(const SpinChainModel &m);

/// Typical-projector filter evaluated without materializing any state.
struct CombinatorialFilter {
    TypicalWindow window;
    double delta_exact;                      // hypergeometric tail
    std::optional<double> delta_enumerated;  // 1 - mean <b|X|b> over enumerated basis states
    std::uint64_t dim_s_tilde;               // window dimension
    std::uint64_t reachable_dim_s_tilde;     // window strings compatible with np
    double d_eff_tilde;
    double omega_distance;                   // ||Omega_S - Omega~_S||_1
};

/// Basis enumeration runs only when d_R <= enumeration_limit.
CombinatorialFilter combinatorial_filter(const SpinChainModel &m, const TypicalWindow &w,
                                         std::uint64_t enumeration_limit = 20'000'000);

struct Section7Report {
    SpinChainModel model;
    double p;
    std::uint64_t dim_r;
    std::size_t dim_s;
    double xi;
    double epsilon;
    TypicalWindow window;
    double delta_exact;
    double delta_formula;
    std::uint64_t dim_s_tilde;
    double dim_s_tilde_bound;
    double d_eff_tilde_lower;  // d_R / d~_S
    double d_eff_tilde_exact;
    double d_eff_exact;
    double eta_tilde;          // filtered bound with delta_exact, d~_S and d_R / d~_S
    double eta_tilde_formula;  // same with delta_formula (clipped to 1)
    double eta_tilde_closed;   // closed form in n, k, p, xi, epsilon
    double eta_tilde_prime;
    double eta_theorem1;       // epsilon + sqrt(d_S / d_E^eff), exact d_E^eff
    double sqrt_ds2_over_dr;
    double dimensional_bound;  // sqrt(n+1) 2^(-(n H(p) - 2k) / 2)
    Temperature temperature;
};

/// Defaults: xi = k^(2/3), epsilon = d_R^(-1/3).
Section7Report section7_report(const SpinChainModel &m, std::optional<double> xi = std::nullopt,
                               std::optional<double> epsilon = std::nullopt);

}  // namespace typlab

#endif
