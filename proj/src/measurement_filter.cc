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

#include "typlab/measurement_filter.h"

#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace typlab {

namespace {

constexpr double kRankTolerance = 1e-8;
constexpr double kRangeTolerance = 1e-10;

void check_effect_range(const ComplexMatrix &x, const char *what) {
    RealVector ev;
    try {
        ev = hermitian_eigenvalues(x);
    } catch (const HermiticityError &e) {
        throw OperatorRangeError(fmt::format("{}: {}", what, e.what()));
    }
    if (ev.size() == 0) {
        return;
    }
    if (ev(0) < -kRangeTolerance || ev(ev.size() - 1) > 1.0 + kRangeTolerance) {
        throw OperatorRangeError(fmt::format("{}: spectrum [{:.3e}, {:.3e}] violates 0 <= X <= 1", what, ev(0),
                                             ev(ev.size() - 1)));
    }
}

std::size_t rank_of(const ComplexMatrix &h) {
    RealVector ev = hermitian_eigenvalues(h);
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) > kRankTolerance) {
            ++rank;
        }
    }
    return rank;
}

bool is_diagonal(const ComplexMatrix &m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (i != j && m(i, j) != Complex(0.0, 0.0)) {
                return false;
            }
        }
    }
    return true;
}

struct Spectrum {
    RealVector values;  // clipped to [0, 1]
    std::optional<ComplexMatrix> vectors;  // identity when empty
};

Spectrum effect_spectrum(const ComplexMatrix &x) {
    if (is_diagonal(x)) {
        return Spectrum{x.diagonal().real().cwiseMax(0.0).cwiseMin(1.0), std::nullopt};
    }
    ComplexMatrix h = 0.5 * (x + x.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    return Spectrum{solver.eigenvalues().cwiseMax(0.0).cwiseMin(1.0), solver.eigenvectors()};
}

ComplexMatrix spectral_function(const Spectrum &sp, const RealVector &f) {
    if (!sp.vectors) {
        return f.cast<Complex>().asDiagonal();
    }
    const ComplexMatrix &v = *sp.vectors;
    return v * f.cast<Complex>().asDiagonal() * v.adjoint();
}

}  // namespace

MeasurementFilter MeasurementFilter::on_composite(ComplexMatrix x, const BipartiteShape &shape) {
    auto n = static_cast<Eigen::Index>(shape.composite());
    if (x.rows() != n || x.cols() != n) {
        throw ShapeError(fmt::format("composite filter is {}x{}, shape {} needs {}x{}", x.rows(), x.cols(),
                                     describe(shape), n, n));
    }
    check_dimension_cap(shape.composite(), kDefaultDimensionCap, "composite filter");
    check_effect_range(x, "composite filter");
    MeasurementFilter f(Kind::Composite, shape);
    f.support_dim_s_ = rank_of(partial_trace(x, shape, Keep::System));
    f.op_ = std::move(x);
    return f;
}

MeasurementFilter MeasurementFilter::on_subspace(ComplexMatrix x, const ConstraintSubspace &sub) {
    auto d = static_cast<Eigen::Index>(sub.dim());
    if (x.rows() != d || x.cols() != d) {
        throw ShapeError(fmt::format("subspace filter is {}x{}, d_R = {}", x.rows(), x.cols(), d));
    }
    check_effect_range(x, "subspace filter");
    MeasurementFilter f(Kind::Subspace, sub.shape());
    Spectrum sp = effect_spectrum(x);
    auto ds = static_cast<Eigen::Index>(sub.shape().dim_s());
    ComplexMatrix traced = ComplexMatrix::Zero(ds, ds);
    for (Eigen::Index m = 0; m < sp.values.size(); ++m) {
        if (sp.values(m) <= 0.0) {
            continue;
        }
        ComplexVector coords = sp.vectors ? ComplexVector(sp.vectors->col(m)) : ComplexVector::Unit(d, m);
        traced += sp.values(m) * reduce_vector(sub.embed_unchecked(coords), sub.shape(), Keep::System);
    }
    f.support_dim_s_ = rank_of(traced);
    f.subspace_id_ = sub.id();
    f.op_ = std::move(x);
    return f;
}

MeasurementFilter MeasurementFilter::system_operator(ComplexMatrix a, const BipartiteShape &shape) {
    auto ds = static_cast<Eigen::Index>(shape.dim_s());
    if (a.rows() != ds || a.cols() != ds) {
        throw ShapeError(fmt::format("system filter is {}x{}, d_S = {}", a.rows(), a.cols(), ds));
    }
    check_effect_range(a, "system filter");
    MeasurementFilter f(Kind::SystemOperator, shape);
    // Tr_E(A (x) 1) = d_E A
    f.support_dim_s_ = rank_of(static_cast<double>(shape.dim_e()) * a);
    f.op_ = std::move(a);
    return f;
}

MeasurementFilter MeasurementFilter::system_projector(std::vector<bool> mask, const BipartiteShape &shape) {
    if (mask.size() != shape.dim_s()) {
        throw ShapeError(fmt::format("projector mask has {} entries, d_S = {}", mask.size(), shape.dim_s()));
    }
    MeasurementFilter f(Kind::SystemProjector, shape);
    std::size_t count = 0;
    for (bool b : mask) {
        count += b ? 1 : 0;
    }
    f.support_dim_s_ = count;
    f.mask_ = std::move(mask);
    return f;
}

ComplexMatrix MeasurementFilter::restrict_to(const ConstraintSubspace &sub) const {
    if (!(sub.shape() == shape_)) {
        throw ShapeError(fmt::format("filter shape {} does not match subspace shape {}", describe(shape_),
                                     describe(sub.shape())));
    }
    auto d = static_cast<Eigen::Index>(sub.dim());
    switch (kind_) {
        case Kind::Composite:
            return sub.compress(op_);
        case Kind::Subspace:
            if (subspace_id_ != sub.id()) {
                throw SubspaceMismatchError("filter was given in the coordinates of a different subspace");
            }
            return op_;
        case Kind::SystemOperator:
        case Kind::SystemProjector:
            break;
    }
    std::size_t de = shape_.dim_e();
    if (sub.is_computational()) {
        // <s e|A (x) 1|s' e'> = A_ss' delta_ee'
        auto idx = sub.computational_indices();
        ComplexMatrix out = ComplexMatrix::Zero(d, d);
        for (Eigen::Index j = 0; j < d; ++j) {
            std::size_t sj = idx[static_cast<std::size_t>(j)] / de;
            std::size_t ej = idx[static_cast<std::size_t>(j)] % de;
            for (Eigen::Index i = 0; i < d; ++i) {
                std::size_t si = idx[static_cast<std::size_t>(i)] / de;
                std::size_t ei = idx[static_cast<std::size_t>(i)] % de;
                if (ei != ej) {
                    continue;
                }
                if (kind_ == Kind::SystemProjector) {
                    out(i, j) = (si == sj && (*mask_)[si]) ? 1.0 : 0.0;
                } else {
                    out(i, j) = op_(static_cast<Eigen::Index>(si), static_cast<Eigen::Index>(sj));
                }
            }
        }
        return out;
    }
    ComplexMatrix b = sub.basis_matrix();
    ComplexMatrix applied(b.rows(), b.cols());
    auto ds = static_cast<Eigen::Index>(shape_.dim_s());
    auto dem = static_cast<Eigen::Index>(de);
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
        Eigen::Map<const ComplexMatrix> amps(b.col(j).data(), dem, ds);  // amps(e, s)
        ComplexMatrix out_amps(dem, ds);
        if (kind_ == Kind::SystemProjector) {
            for (Eigen::Index s = 0; s < ds; ++s) {
                out_amps.col(s) = (*mask_)[static_cast<std::size_t>(s)] ? ComplexVector(amps.col(s))
                                                                         : ComplexVector::Zero(dem);
            }
        } else {
            out_amps = amps * op_.transpose();
        }
        applied.col(j) = Eigen::Map<const ComplexVector>(out_amps.data(), out_amps.size());
    }
    return b.adjoint() * applied;
}

double MeasurementFilter::expectation(const ComplexVector &ambient) const {
    if (static_cast<std::size_t>(ambient.size()) != shape_.composite()) {
        throw ShapeError("filter expectation: vector length does not match composite dimension");
    }
    switch (kind_) {
        case Kind::Composite:
            return ambient.dot(op_ * ambient).real();
        case Kind::Subspace:
            throw DomainError("filter expectation: subspace-coordinate filters need subspace coordinates");
        case Kind::SystemOperator:
            return trace_product(op_, reduce_vector(ambient, shape_, Keep::System));
        case Kind::SystemProjector: {
            double acc = 0.0;
            std::size_t de = shape_.dim_e();
            for (std::size_t s = 0; s < shape_.dim_s(); ++s) {
                if (!(*mask_)[s]) {
                    continue;
                }
                acc += ambient.segment(static_cast<Eigen::Index>(s * de), static_cast<Eigen::Index>(de)).squaredNorm();
            }
            return acc;
        }
    }
    return 0.0;
}

FilteredEnsemble apply_filter(const ConstraintSubspace &sub, const MeasurementFilter &filter) {
    ComplexMatrix x_r = filter.restrict_to(sub);
    auto d = static_cast<Eigen::Index>(sub.dim());
    double inv_dr = 1.0 / static_cast<double>(sub.dim());
    Spectrum sp = effect_spectrum(x_r);

    const BipartiteShape &shape = sub.shape();
    auto ds = static_cast<Eigen::Index>(shape.dim_s());
    auto de = static_cast<Eigen::Index>(shape.dim_e());
    ComplexMatrix omega_s_tilde = ComplexMatrix::Zero(ds, ds);
    ComplexMatrix omega_e_tilde = ComplexMatrix::Zero(de, de);
    if (!sp.vectors && sub.is_computational()) {
        auto idx = sub.computational_indices();
        for (Eigen::Index i = 0; i < d; ++i) {
            auto s = static_cast<Eigen::Index>(idx[static_cast<std::size_t>(i)] / shape.dim_e());
            auto e = static_cast<Eigen::Index>(idx[static_cast<std::size_t>(i)] % shape.dim_e());
            omega_s_tilde(s, s) += sp.values(i) * inv_dr;
            omega_e_tilde(e, e) += sp.values(i) * inv_dr;
        }
    } else {
        for (Eigen::Index m = 0; m < d; ++m) {
            double w = sp.values(m) * inv_dr;
            if (w <= 0.0) {
                continue;
            }
            ComplexVector coords = sp.vectors ? ComplexVector(sp.vectors->col(m)) : ComplexVector::Unit(d, m);
            ComplexVector c = sub.embed_unchecked(coords);
            omega_s_tilde += w * reduce_vector(c, shape, Keep::System);
            omega_e_tilde += w * reduce_vector(c, shape, Keep::Environment);
        }
    }

    double mean_expectation = 0.0;
    if (filter.kind() == MeasurementFilter::Kind::Subspace) {
        mean_expectation = x_r.diagonal().real().mean();
    } else {
        for (std::size_t i = 0; i < sub.dim(); ++i) {
            mean_expectation += filter.expectation(sub.basis_vector(i));
        }
        mean_expectation *= inv_dr;
    }

    CanonicalEnsemble ensemble = canonical_ensemble(sub);
    double purity_e_tilde = omega_e_tilde.cwiseAbs2().sum();
    FilteredEnsemble out{
        .x_r = x_r,
        .sqrt_x_r = spectral_function(sp, sp.values.cwiseSqrt()),
        .e_tilde = spectral_function(sp, sp.values) * inv_dr,
        .omega_s_tilde = omega_s_tilde,
        .omega_e_tilde = omega_e_tilde,
        .delta = 1.0 - omega_s_tilde.trace().real(),
        .delta_from_basis = 1.0 - mean_expectation,
        .d_eff_tilde = purity_e_tilde > 0.0 ? 1.0 / purity_e_tilde : std::numeric_limits<double>::infinity(),
        .support_dim_s = rank_of(omega_s_tilde * static_cast<double>(sub.dim())),
        .omega_distance = trace_norm(ensemble.omega_s.matrix() - omega_s_tilde),
    };
    return out;
}

ComplexVector filtered_state(const PureState &phi, const ConstraintSubspace &sub, const FilteredEnsemble &filtered) {
    if (phi.subspace_id() != sub.id()) {
        throw SubspaceMismatchError("filtered_state: state does not belong to the subspace");
    }
    return sub.embed_unchecked(filtered.sqrt_x_r * phi.coords());
}

PerturbationCheck perturbation_bound_check(const PureState &phi, const ConstraintSubspace &sub,
                                           const FilteredEnsemble &filtered) {
    ComplexVector tilde = filtered_state(phi, sub, filtered);
    ComplexMatrix rho = reduce_vector(phi.ambient(), sub.shape(), Keep::System);
    ComplexMatrix rho_tilde = reduce_vector(tilde, sub.shape(), Keep::System);
    double lhs = trace_norm(rho - rho_tilde);
    double accept = phi.coords().dot(filtered.x_r * phi.coords()).real();
    double rhs = 2.0 * std::sqrt(std::max(0.0, 1.0 - accept));
    return PerturbationCheck{lhs, rhs, lhs <= rhs + 1e-9};
}

}  // namespace typlab
