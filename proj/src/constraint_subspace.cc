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

#include "typlab/constraint_subspace.h"

#include <atomic>
#include <cmath>

#include <fmt/format.h>

namespace typlab {

namespace {

std::uint64_t next_subspace_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1, std::memory_order_relaxed);
}

constexpr double kDependenceThreshold = 1e-8;

}  // namespace

ConstraintSubspace::ConstraintSubspace(BipartiteShape shape, std::size_t dim)
    : shape_(shape), dim_(dim), id_(next_subspace_id()) {}

ConstraintSubspace ConstraintSubspace::full_space(const BipartiteShape &shape, std::size_t cap) {
    check_dimension_cap(shape.composite(), cap, "full_space");
    std::vector<std::size_t> indices(shape.composite());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        indices[i] = i;
    }
    return from_computational_states(shape, std::move(indices), cap);
}

ConstraintSubspace ConstraintSubspace::from_computational_states(const BipartiteShape &shape,
                                                                 std::vector<std::size_t> indices,
                                                                 std::size_t cap) {
    check_dimension_cap(shape.composite(), cap, "constraint subspace");
    if (indices.empty()) {
        throw RankError("constraint subspace needs at least one basis state");
    }
    std::vector<bool> seen(shape.composite(), false);
    for (std::size_t idx : indices) {
        if (idx >= shape.composite()) {
            throw ShapeError(fmt::format("computational index {} outside composite dimension {}", idx,
                                         shape.composite()));
        }
        if (seen[idx]) {
            throw RankError(fmt::format("computational index {} repeated", idx));
        }
        seen[idx] = true;
    }
    ConstraintSubspace sub(shape, indices.size());
    sub.indices_ = std::move(indices);
    return sub;
}

ConstraintSubspace ConstraintSubspace::from_basis_vectors(const BipartiteShape &shape,
                                                          std::span<const ComplexVector> vectors, std::size_t cap) {
    check_dimension_cap(shape.composite(), cap, "constraint subspace");
    if (vectors.empty()) {
        throw RankError("constraint subspace needs at least one basis vector");
    }
    auto n = static_cast<Eigen::Index>(shape.composite());
    if (vectors.size() > shape.composite()) {
        throw RankError(fmt::format("{} vectors cannot be independent in dimension {}", vectors.size(), n));
    }
    ComplexMatrix basis(n, static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        const ComplexVector &v = vectors[k];
        if (v.size() != n) {
            throw ShapeError(fmt::format("basis vector {} has length {}, shape {} needs {}", k, v.size(),
                                         describe(shape), n));
        }
        double norm = v.norm();
        if (!(norm > 0.0) || !std::isfinite(norm)) {
            throw RankError(fmt::format("basis vector {} is zero or not finite", k));
        }
        ComplexVector w = v / norm;
        auto col = static_cast<Eigen::Index>(k);
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index j = 0; j < col; ++j) {
                w -= basis.col(j) * basis.col(j).dot(w);
            }
        }
        double residual = w.norm();
        if (residual < kDependenceThreshold) {
            throw RankError(fmt::format("basis vector {} is linearly dependent on its predecessors (residual {:.3e})",
                                        k, residual));
        }
        basis.col(col) = w / residual;
    }

    // Columns that came out as exact unit vectors keep the compact representation.
    std::vector<std::size_t> indices;
    indices.reserve(vectors.size());
    for (Eigen::Index k = 0; k < basis.cols(); ++k) {
        Eigen::Index nonzero = -1;
        bool unit = true;
        for (Eigen::Index i = 0; i < n && unit; ++i) {
            if (basis(i, k) != Complex(0.0, 0.0)) {
                if (nonzero >= 0 || basis(i, k) != Complex(1.0, 0.0)) {
                    unit = false;
                }
                nonzero = i;
            }
        }
        if (!unit || nonzero < 0) {
            indices.clear();
            break;
        }
        indices.push_back(static_cast<std::size_t>(nonzero));
    }
    if (indices.size() == vectors.size()) {
        return from_computational_states(shape, std::move(indices), cap);
    }

    ConstraintSubspace sub(shape, vectors.size());
    sub.basis_ = std::move(basis);
    return sub;
}

std::span<const std::size_t> ConstraintSubspace::computational_indices() const {
    if (!indices_) {
        return {};
    }
    return {indices_->data(), indices_->size()};
}

ComplexVector ConstraintSubspace::basis_vector(std::size_t i) const {
    if (i >= dim_) {
        throw ShapeError(fmt::format("basis index {} out of range (d_R = {})", i, dim_));
    }
    if (indices_) {
        ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(composite_dim()));
        v((*indices_)[i]) = 1.0;
        return v;
    }
    return basis_.col(static_cast<Eigen::Index>(i));
}

ComplexMatrix ConstraintSubspace::basis_matrix() const {
    if (!indices_) {
        return basis_;
    }
    ComplexMatrix b = ComplexMatrix::Zero(static_cast<Eigen::Index>(composite_dim()), static_cast<Eigen::Index>(dim_));
    for (std::size_t i = 0; i < dim_; ++i) {
        b(static_cast<Eigen::Index>((*indices_)[i]), static_cast<Eigen::Index>(i)) = 1.0;
    }
    return b;
}

ComplexVector ConstraintSubspace::embed(const ComplexVector &coords) const {
    if (static_cast<std::size_t>(coords.size()) == dim_) {
        double norm = coords.norm();
        if (std::abs(norm - 1.0) > tol::kInvariant) {
            throw DomainError(fmt::format("embed: coordinate norm {:.15g} is not 1", norm));
        }
    }
    return embed_unchecked(coords);
}

ComplexVector ConstraintSubspace::embed_unchecked(const ComplexVector &coords) const {
    if (static_cast<std::size_t>(coords.size()) != dim_) {
        throw ShapeError(fmt::format("embed: {} coordinates for a subspace of dimension {}", coords.size(), dim_));
    }
    if (indices_) {
        ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(composite_dim()));
        for (std::size_t i = 0; i < dim_; ++i) {
            v(static_cast<Eigen::Index>((*indices_)[i])) = coords(static_cast<Eigen::Index>(i));
        }
        return v;
    }
    return basis_ * coords;
}

ComplexVector ConstraintSubspace::project(const ComplexVector &ambient) const {
    if (static_cast<std::size_t>(ambient.size()) != composite_dim()) {
        throw ShapeError(fmt::format("project: vector length {} does not match composite dimension {}",
                                     ambient.size(), composite_dim()));
    }
    if (indices_) {
        ComplexVector c(static_cast<Eigen::Index>(dim_));
        for (std::size_t i = 0; i < dim_; ++i) {
            c(static_cast<Eigen::Index>(i)) = ambient(static_cast<Eigen::Index>((*indices_)[i]));
        }
        return c;
    }
    return basis_.adjoint() * ambient;
}

ComplexMatrix ConstraintSubspace::compress(const ComplexMatrix &op) const {
    auto n = static_cast<Eigen::Index>(composite_dim());
    if (op.rows() != n || op.cols() != n) {
        throw ShapeError(fmt::format("compress: operator is {}x{}, composite dimension is {}", op.rows(), op.cols(), n));
    }
    if (indices_) {
        auto d = static_cast<Eigen::Index>(dim_);
        ComplexMatrix out(d, d);
        for (Eigen::Index j = 0; j < d; ++j) {
            for (Eigen::Index i = 0; i < d; ++i) {
                out(i, j) = op(static_cast<Eigen::Index>((*indices_)[static_cast<std::size_t>(i)]),
                               static_cast<Eigen::Index>((*indices_)[static_cast<std::size_t>(j)]));
            }
        }
        return out;
    }
    return basis_.adjoint() * op * basis_;
}

ComplexMatrix ConstraintSubspace::expand(const ComplexMatrix &op) const {
    auto d = static_cast<Eigen::Index>(dim_);
    if (op.rows() != d || op.cols() != d) {
        throw ShapeError(fmt::format("expand: operator is {}x{}, subspace dimension is {}", op.rows(), op.cols(), d));
    }
    if (indices_) {
        auto n = static_cast<Eigen::Index>(composite_dim());
        ComplexMatrix out = ComplexMatrix::Zero(n, n);
        for (Eigen::Index j = 0; j < d; ++j) {
            for (Eigen::Index i = 0; i < d; ++i) {
                out(static_cast<Eigen::Index>((*indices_)[static_cast<std::size_t>(i)]),
                    static_cast<Eigen::Index>((*indices_)[static_cast<std::size_t>(j)])) = op(i, j);
            }
        }
        return out;
    }
    return basis_ * op * basis_.adjoint();
}

ConstraintSubspace ConstraintSubspace::rotated(const ComplexMatrix &unitary) const {
    auto d = static_cast<Eigen::Index>(dim_);
    if (unitary.rows() != d || unitary.cols() != d) {
        throw ShapeError("rotated: unitary must be d_R x d_R");
    }
    if (!(unitary.adjoint() * unitary).isIdentity(1e-10)) {
        throw DomainError("rotated: matrix is not unitary");
    }
    ConstraintSubspace sub(shape_, dim_);
    sub.basis_ = basis_matrix() * unitary;
    return sub;
}

CanonicalEnsemble canonical_ensemble(const ConstraintSubspace &sub) {
    const BipartiteShape &shape = sub.shape();
    auto ds = static_cast<Eigen::Index>(shape.dim_s());
    auto de = static_cast<Eigen::Index>(shape.dim_e());
    double inv_dr = 1.0 / static_cast<double>(sub.dim());

    ComplexMatrix omega_s = ComplexMatrix::Zero(ds, ds);
    ComplexMatrix omega_e = ComplexMatrix::Zero(de, de);
    if (sub.is_computational()) {
        // Each basis state |s>|e> contributes diagonal weight to s and to e.
        for (std::size_t idx : sub.computational_indices()) {
            auto s = static_cast<Eigen::Index>(idx / shape.dim_e());
            auto e = static_cast<Eigen::Index>(idx % shape.dim_e());
            omega_s(s, s) += inv_dr;
            omega_e(e, e) += inv_dr;
        }
    } else {
        for (std::size_t i = 0; i < sub.dim(); ++i) {
            ComplexVector b = sub.basis_vector(i);
            omega_s += inv_dr * reduce_vector(b, shape, Keep::System);
            omega_e += inv_dr * reduce_vector(b, shape, Keep::Environment);
        }
    }

    double purity_s = omega_s.cwiseAbs2().sum();
    double purity_e = omega_e.cwiseAbs2().sum();
    std::optional<ComplexMatrix> equiprobable;
    if (sub.composite_dim() <= kEquiprobableMaterializeLimit) {
        auto d = static_cast<Eigen::Index>(sub.dim());
        equiprobable = sub.expand(ComplexMatrix::Identity(d, d) * inv_dr);
    }
    return CanonicalEnsemble{
        .equiprobable = std::move(equiprobable),
        .omega_s = DensityMatrix(std::move(omega_s)),
        .omega_e = DensityMatrix(std::move(omega_e)),
        .purity_s = purity_s,
        .purity_e = purity_e,
        .d_eff = 1.0 / purity_e,
    };
}

}  // namespace typlab
