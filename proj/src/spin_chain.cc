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

#include "typlab/spin_chain.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "typlab/concentration_bounds.h"

namespace typlab {

namespace {

constexpr std::size_t kMaxSpins = 62;
constexpr std::size_t kDiagonalCap = std::size_t{1} << 24;
constexpr double kWindowGuard = 1e-9;

// C(n - k, np - j) / C(n, np): canonical weight of one system string with j excitations.
double string_weight(const SpinChainModel &m, std::size_t j) {
    if (j > m.num_excited) {
        return 0.0;
    }
    return static_cast<double>(binomial(m.n - m.k, m.num_excited - j)) / static_cast<double>(m.dim_r());
}

double product_string_weight(std::size_t k, double p, std::size_t j) {
    return std::pow(p, static_cast<double>(j)) * std::pow(1.0 - p, static_cast<double>(k - j));
}

void require_open_unit(double p, const char *what) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError(fmt::format("{}: p must lie in (0, 1), got {}", what, p));
    }
}

}  // namespace

std::uint64_t binomial(std::size_t n, std::size_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > std::numeric_limits<std::uint64_t>::max()) {
            throw DomainError(fmt::format("C({}, {}) overflows 64 bits", n, k));
        }
    }
    return static_cast<std::uint64_t>(r);
}

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError(fmt::format("binary entropy: p = {} outside [0, 1]", p));
    }
    double h = 0.0;
    if (p > 0.0) {
        h -= p * std::log2(p);
    }
    if (p < 1.0) {
        h -= (1.0 - p) * std::log2(1.0 - p);
    }
    return h;
}

double entropy_slope(double p) {
    require_open_unit(p, "entropy slope");
    return std::abs(std::log2(p / (1.0 - p)));
}

std::vector<std::uint64_t> fixed_weight_states(std::size_t n, std::size_t w) {
    if (n > kMaxSpins) {
        throw DomainError(fmt::format("at most {} spins supported, got {}", kMaxSpins, n));
    }
    if (w > n) {
        return {};
    }
    std::vector<std::uint64_t> out;
    out.reserve(binomial(n, w));
    if (w == 0) {
        out.push_back(0);
        return out;
    }
    std::uint64_t end = std::uint64_t{1} << n;
    std::uint64_t x = (std::uint64_t{1} << w) - 1;
    while (x < end) {
        out.push_back(x);
        // Gosper's hack: next integer with the same popcount
        std::uint64_t c = x & (~x + 1);
        std::uint64_t r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    return out;
}

void SpinChainModel::validate() const {
    if (n > kMaxSpins) {
        throw DomainError(fmt::format("at most {} spins supported, got n = {}", kMaxSpins, n));
    }
    if (k < 1 || k >= n) {
        throw DomainError(fmt::format("spin chain needs 1 <= k < n, got n = {}, k = {}", n, k));
    }
    if (num_excited > n) {
        throw DomainError(fmt::format("spin chain: {} excitations on {} spins", num_excited, n));
    }
}

ConstraintSubspace build_subspace(const SpinChainModel &m, std::size_t cap) {
    m.validate();
    check_dimension_cap(std::size_t{1} << m.n, cap, "spin chain composite space");
    std::vector<std::uint64_t> states = fixed_weight_states(m.n, m.num_excited);
    std::vector<std::size_t> indices(states.begin(), states.end());
    return ConstraintSubspace::from_computational_states(m.shape(), std::move(indices), cap);
}

std::vector<double> hypergeometric_class_weights(const SpinChainModel &m) {
    m.validate();
    std::vector<double> out(m.k + 1);
    for (std::size_t j = 0; j <= m.k; ++j) {
        out[j] = static_cast<double>(binomial(m.k, j)) * string_weight(m, j);
    }
    return out;
}

RealVector exact_canonical_diagonal(const SpinChainModel &m) {
    m.validate();
    check_dimension_cap(m.dim_s(), kDiagonalCap, "canonical diagonal");
    std::vector<double> per_class(m.k + 1);
    for (std::size_t j = 0; j <= m.k; ++j) {
        per_class[j] = string_weight(m, j);
    }
    RealVector out(static_cast<Eigen::Index>(m.dim_s()));
    for (std::size_t s = 0; s < m.dim_s(); ++s) {
        out(static_cast<Eigen::Index>(s)) = per_class[static_cast<std::size_t>(std::popcount(s))];
    }
    return out;
}

DensityMatrix exact_canonical_state(const SpinChainModel &m, std::size_t cap) {
    m.validate();
    check_dimension_cap(m.dim_s(), cap, "canonical state");
    ComplexMatrix diag = exact_canonical_diagonal(m).cast<Complex>().asDiagonal();
    return DensityMatrix(std::move(diag));
}

RealVector product_diagonal(const SpinChainModel &m) {
    m.validate();
    check_dimension_cap(m.dim_s(), kDiagonalCap, "product diagonal");
    RealVector out(static_cast<Eigen::Index>(m.dim_s()));
    for (std::size_t s = 0; s < m.dim_s(); ++s) {
        auto j = static_cast<std::size_t>(std::popcount(s));
        out(static_cast<Eigen::Index>(s)) = product_string_weight(m.k, m.p(), j);
    }
    return out;
}

DensityMatrix product_approximation(const SpinChainModel &m, std::size_t cap) {
    m.validate();
    check_dimension_cap(m.dim_s(), cap, "product approximation");
    ComplexMatrix diag = product_diagonal(m).cast<Complex>().asDiagonal();
    return DensityMatrix(std::move(diag));
}

double product_approximation_distance(const SpinChainModel &m) {
    m.validate();
    double acc = 0.0;
    for (std::size_t j = 0; j <= m.k; ++j) {
        double diff = std::abs(string_weight(m, j) - product_string_weight(m.k, m.p(), j));
        acc += static_cast<double>(binomial(m.k, j)) * diff;
    }
    return acc;
}

Temperature temperature(const SpinChainModel &m) {
    m.validate();
    if (m.num_excited == 0 || m.num_excited == m.n) {
        return Temperature{Temperature::Regime::Zero, 0.0};
    }
    if (2 * m.num_excited == m.n) {
        return Temperature{Temperature::Regime::Infinite, std::numeric_limits<double>::infinity()};
    }
    double p = m.p();
    return Temperature{Temperature::Regime::Finite, m.field / std::log((1.0 - p) / p)};
}

TypicalWindow typical_window(std::size_t k, double p, double xi) {
    if (!(xi >= 0.0)) {
        throw DomainError(fmt::format("typical window: xi must be nonnegative, got {}", xi));
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError(fmt::format("typical window: p = {} outside [0, 1]", p));
    }
    double center = static_cast<double>(k) * p;
    double lo = std::max(0.0, std::ceil(center - xi - kWindowGuard));
    double hi = std::min(static_cast<double>(k), std::floor(center + xi + kWindowGuard));
    if (lo > hi) {
        throw DomainError(fmt::format("typical window empty for k = {}, p = {}, xi = {}", k, p, xi));
    }
    return TypicalWindow{xi, static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
}

std::uint64_t window_dimension(std::size_t k, const TypicalWindow &w) {
    std::uint64_t acc = 0;
    for (std::size_t j = w.lo; j <= std::min(w.hi, k); ++j) {
        acc += binomial(k, j);
    }
    return acc;
}

std::vector<bool> typical_mask(std::size_t k, const TypicalWindow &w) {
    check_dimension_cap(std::size_t{1} << k, kDiagonalCap, "typical mask");
    std::vector<bool> mask(std::size_t{1} << k);
    for (std::size_t s = 0; s < mask.size(); ++s) {
        mask[s] = w.contains(static_cast<std::size_t>(std::popcount(s)));
    }
    return mask;
}

MeasurementFilter typical_projector(const SpinChainModel &m, const TypicalWindow &w) {
    m.validate();
    return MeasurementFilter::system_projector(typical_mask(m.k, w), m.shape());
}

double delta_bound(std::size_t k, double p, double xi) {
    require_open_unit(p, "delta bound");
    if (!(xi > 0.0)) {
        throw DomainError(fmt::format("delta bound: xi must be positive, got {}", xi));
    }
    if (k == 0) {
        throw DomainError("delta bound: k must be positive");
    }
    return 2.0 * std::exp(-xi * xi / (4.0 * static_cast<double>(k) * p * (1.0 - p)));
}

double exact_typical_tail(const SpinChainModel &m, const TypicalWindow &w) {
    std::vector<double> classes = hypergeometric_class_weights(m);
    double tail = 0.0;
    for (std::size_t j = 0; j <= m.k; ++j) {
        if (!w.contains(j)) {
            tail += classes[j];
        }
    }
    return tail;
}

double binomial_typical_tail(std::size_t k, double p, const TypicalWindow &w) {
    double tail = 0.0;
    for (std::size_t j = 0; j <= k; ++j) {
        if (!w.contains(j)) {
            tail += static_cast<double>(binomial(k, j)) * product_string_weight(k, p, j);
        }
    }
    return tail;
}

EntropySandwich binomial_entropy_bounds(std::size_t n, std::size_t num_excited) {
    if (n == 0 || num_excited > n) {
        throw DomainError(fmt::format("entropy bounds need 0 <= np <= n, n > 0; got n = {}, np = {}", n,
                                      num_excited));
    }
    double p = static_cast<double>(num_excited) / static_cast<double>(n);
    double upper = std::exp2(static_cast<double>(n) * binary_entropy(p));
    double lower = upper / static_cast<double>(n + 1);
    std::uint64_t exact = binomial(n, num_excited);
    auto ex = static_cast<double>(exact);
    // relative slack for the rounding in exp2 at the p in {0, 1/2, 1} equality cases
    constexpr double slack = 1e-12;
    return EntropySandwich{lower, upper, exact, lower <= ex * (1 + slack) && ex <= upper * (1 + slack)};
}

TypicalDimensionBound typical_dim_bound(std::size_t k, double p, double xi) {
    require_open_unit(p, "typical dimension bound");
    TypicalWindow w = typical_window(k, p, xi);
    double shift = xi / static_cast<double>(k);
    double p_tilde;
    if (p < 0.5 - shift) {
        p_tilde = p + shift;
    } else if (std::abs(p - 0.5) <= shift) {
        p_tilde = 0.5;
    } else {
        p_tilde = p - shift;
    }
    auto kd = static_cast<double>(k);
    double width = 2.0 * xi + 1.0;
    double via = width * std::exp2(kd * binary_entropy(p_tilde));
    double bound = width * std::exp2(kd * binary_entropy(p) + xi * entropy_slope(p));
    std::uint64_t exact = window_dimension(k, w);
    constexpr double slack = 1e-12;
    bool holds = static_cast<double>(exact) <= via * (1 + slack) && via <= bound * (1 + slack);
    return TypicalDimensionBound{p_tilde, via, bound, exact, holds};
}

CombinatorialEnsemble combinatorial_canonical(const SpinChainModel &m) {
    m.validate();
    auto dr = static_cast<double>(m.dim_r());
    double purity_s = 0.0;
    for (std::size_t j = 0; j <= m.k; ++j) {
        double a = string_weight(m, j);
        purity_s += static_cast<double>(binomial(m.k, j)) * a * a;
    }
    // environment string with i excitations: weight C(k, np - i) / d_R
    double purity_e = 0.0;
    for (std::size_t i = 0; i <= std::min(m.n - m.k, m.num_excited); ++i) {
        double b = static_cast<double>(binomial(m.k, m.num_excited - i)) / dr;
        purity_e += static_cast<double>(binomial(m.n - m.k, i)) * b * b;
    }
    return CombinatorialEnsemble{m.dim_r(), purity_s, purity_e, 1.0 / purity_e};
}

CombinatorialFilter combinatorial_filter(const SpinChainModel &m, const TypicalWindow &w,
                                         std::uint64_t enumeration_limit) {
    m.validate();
    std::uint64_t dim_r = m.dim_r();
    auto dr = static_cast<double>(dim_r);
    CombinatorialFilter out{};
    out.window = w;
    out.delta_exact = exact_typical_tail(m, w);
    out.dim_s_tilde = window_dimension(m.k, w);
    for (std::size_t j = w.lo; j <= std::min(w.hi, m.k); ++j) {
        if (j <= m.num_excited && binomial(m.n - m.k, m.num_excited - j) > 0) {
            out.reachable_dim_s_tilde += binomial(m.k, j);
        }
    }
    double purity_e = 0.0;
    for (std::size_t i = 0; i <= std::min(m.n - m.k, m.num_excited); ++i) {
        std::size_t j = m.num_excited - i;
        if (!w.contains(j)) {
            continue;
        }
        double b = static_cast<double>(binomial(m.k, j)) / dr;
        purity_e += static_cast<double>(binomial(m.n - m.k, i)) * b * b;
    }
    out.d_eff_tilde = purity_e > 0.0 ? 1.0 / purity_e : std::numeric_limits<double>::infinity();
    // Omega_S and Omega~_S are diagonal and agree inside the window
    out.omega_distance = out.delta_exact;

    if (dim_r <= enumeration_limit) {
        std::uint64_t inside = 0;
        std::size_t env_bits = m.n - m.k;
        for (std::uint64_t x : fixed_weight_states(m.n, m.num_excited)) {
            if (w.contains(static_cast<std::size_t>(std::popcount(x >> env_bits)))) {
                ++inside;
            }
        }
        out.delta_enumerated = 1.0 - static_cast<double>(inside) / dr;
    }
    return out;
}

Section7Report section7_report(const SpinChainModel &m, std::optional<double> xi, std::optional<double> epsilon) {
    m.validate();
    if (m.num_excited == 0 || m.num_excited == m.n) {
        throw DomainError("section report needs 0 < np < n");
    }
    Section7Report r{};
    r.model = m;
    r.p = m.p();
    r.dim_r = m.dim_r();
    r.dim_s = m.dim_s();
    auto kd = static_cast<double>(m.k);
    auto nd = static_cast<double>(m.n);
    r.xi = xi.value_or(std::pow(kd, 2.0 / 3.0));
    r.epsilon = epsilon.value_or(suggested_epsilon(r.dim_r));
    r.window = typical_window(m.k, r.p, r.xi);

    CombinatorialFilter f = combinatorial_filter(m, r.window, 0);
    r.delta_exact = f.delta_exact;
    r.delta_formula = delta_bound(m.k, r.p, r.xi);
    r.dim_s_tilde = f.dim_s_tilde;
    r.dim_s_tilde_bound = typical_dim_bound(m.k, r.p, r.xi).bound;
    r.d_eff_tilde_lower = static_cast<double>(r.dim_r) / static_cast<double>(r.dim_s_tilde);
    r.d_eff_tilde_exact = f.d_eff_tilde;
    r.d_eff_exact = combinatorial_canonical(m).d_eff;

    Theorem2Bound t2 = theorem2(r.dim_s_tilde, r.d_eff_tilde_lower, r.dim_r, r.delta_exact, r.epsilon);
    r.eta_tilde = t2.eta_tilde;
    r.eta_tilde_prime = t2.eta_tilde_prime;
    r.eta_tilde_formula =
        theorem2(r.dim_s_tilde, r.d_eff_tilde_lower, r.dim_r, std::min(r.delta_formula, 1.0), r.epsilon).eta_tilde;

    double h = binary_entropy(r.p);
    double g = entropy_slope(r.p);
    double spread = 8.0 * kd * r.p * (1.0 - r.p);
    r.eta_tilde_closed = r.epsilon +
                         std::sqrt(nd + 1.0) * (2.0 * r.xi + 1.0) * std::exp2((kd - nd / 2.0) * h + r.xi * g) +
                         std::sqrt(32.0) * std::exp(-r.xi * r.xi / spread);
    r.eta_theorem1 = theorem1(r.dim_s, r.dim_r, r.d_eff_exact, r.epsilon).eta;
    auto ds = static_cast<double>(r.dim_s);
    r.sqrt_ds2_over_dr = std::sqrt(ds * ds / static_cast<double>(r.dim_r));
    r.dimensional_bound = std::sqrt(nd + 1.0) * std::exp2(-(nd * h - 2.0 * kd) / 2.0);
    r.temperature = temperature(m);
    return r;
}

}  // namespace typlab
