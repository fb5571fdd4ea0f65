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

#include "typlab/numerics.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace typlab {

void check_dimension_cap(std::size_t dim, std::size_t cap, const char *what) {
    if (dim > cap) {
        throw DimensionCapError(fmt::format("{}: dimension {} exceeds cap {}", what, dim, cap));
    }
}

BipartiteShape::BipartiteShape(std::size_t dim_s, std::size_t dim_e) : dim_s_(dim_s), dim_e_(dim_e) {
    if (dim_s == 0 || dim_e == 0) {
        throw ShapeError(fmt::format("bipartite dimensions must be positive, got ({}, {})", dim_s, dim_e));
    }
}

std::string describe(const BipartiteShape &shape) {
    return fmt::format("(d_S={}, d_E={})", shape.dim_s(), shape.dim_e());
}

double hermitian_defect(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        throw ShapeError(fmt::format("expected a square matrix, got {}x{}", m.rows(), m.cols()));
    }
    double worst = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = i; j < m.cols(); ++j) {
            worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
        }
    }
    return worst;
}

bool is_hermitian(const ComplexMatrix &m, double tolerance) {
    return m.rows() == m.cols() && hermitian_defect(m) <= tolerance;
}

namespace {

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

}  // namespace

RealVector hermitian_eigenvalues(const ComplexMatrix &m) {
    double defect = hermitian_defect(m);
    if (defect > tol::kHermitianAccept) {
        throw HermiticityError(fmt::format("matrix is not Hermitian (skew residue {:.3e})", defect));
    }
    if (is_diagonal(m)) {
        RealVector ev = m.diagonal().real();
        std::sort(ev.data(), ev.data() + ev.size());
        return ev;
    }
    ComplexMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
        throw ShapeError(fmt::format("density matrix must be square and nonempty, got {}x{}", m_.rows(), m_.cols()));
    }
    double defect = hermitian_defect(m_);
    if (defect > tol::kInvariant) {
        throw HermiticityError(fmt::format("density matrix not Hermitian (skew residue {:.3e})", defect));
    }
    double tr = m_.trace().real();
    if (std::abs(tr - 1.0) > tol::kInvariant) {
        throw DomainError(fmt::format("density matrix trace {:.15g} differs from 1", tr));
    }
    RealVector ev = hermitian_eigenvalues(m_);
    if (ev.size() > 0 && ev(0) < -tol::kEigenClip) {
        throw DomainError(fmt::format("density matrix has negative eigenvalue {:.3e}", ev(0)));
    }
}

double DensityMatrix::purity() const { return m_.cwiseAbs2().sum(); }

RealVector DensityMatrix::eigenvalues() const {
    RealVector ev = hermitian_eigenvalues(m_);
    return ev.cwiseMax(0.0);
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b, std::size_t cap) {
    auto rows = static_cast<std::size_t>(a.rows() * b.rows());
    auto cols = static_cast<std::size_t>(a.cols() * b.cols());
    check_dimension_cap(std::max(rows, cols), cap, "kron");
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &m, const BipartiteShape &shape, Keep keep) {
    auto n = static_cast<Eigen::Index>(shape.composite());
    if (m.rows() != n || m.cols() != n) {
        throw ShapeError(fmt::format("partial_trace: operator is {}x{}, shape {} needs {}x{}", m.rows(), m.cols(),
                                     describe(shape), n, n));
    }
    auto ds = static_cast<Eigen::Index>(shape.dim_s());
    auto de = static_cast<Eigen::Index>(shape.dim_e());
    if (keep == Keep::System) {
        ComplexMatrix out = ComplexMatrix::Zero(ds, ds);
        for (Eigen::Index s = 0; s < ds; ++s) {
            for (Eigen::Index t = 0; t < ds; ++t) {
                Complex acc = 0.0;
                for (Eigen::Index e = 0; e < de; ++e) {
                    acc += m(s * de + e, t * de + e);
                }
                out(s, t) = acc;
            }
        }
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(de, de);
    for (Eigen::Index s = 0; s < ds; ++s) {
        out += m.block(s * de, s * de, de, de);
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix &rho, const BipartiteShape &shape, Keep keep) {
    return DensityMatrix(partial_trace(rho.matrix(), shape, keep));
}

ComplexMatrix reduce_vector(const ComplexVector &psi, const BipartiteShape &shape, Keep keep) {
    if (static_cast<std::size_t>(psi.size()) != shape.composite()) {
        throw ShapeError(fmt::format("reduce_vector: vector length {} does not match shape {}", psi.size(),
                                     describe(shape)));
    }
    auto ds = static_cast<Eigen::Index>(shape.dim_s());
    auto de = static_cast<Eigen::Index>(shape.dim_e());
    // Column-major view: amps(e, s) = psi[s * d_E + e].
    Eigen::Map<const ComplexMatrix> amps(psi.data(), de, ds);
    if (keep == Keep::System) {
        return (amps.adjoint() * amps).transpose();
    }
    return amps * amps.adjoint();
}

double trace_norm(const ComplexMatrix &m) { return hermitian_eigenvalues(m).cwiseAbs().sum(); }

double hs_norm(const ComplexMatrix &m) { return std::sqrt(m.cwiseAbs2().sum()); }

double operator_norm(const ComplexMatrix &m) {
    RealVector ev = hermitian_eigenvalues(m);
    if (ev.size() == 0) {
        return 0.0;
    }
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

double trace_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.cols() || a.cols() != b.rows()) {
        throw ShapeError("trace_product: incompatible shapes");
    }
    // Tr(AB) = sum_ij A_ij B_ji
    return (a.array() * b.transpose().array()).sum().real();
}

}  // namespace typlab
