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

#ifndef TYPLAB_TESTS_ORACLES_H
#define TYPLAB_TESTS_ORACLES_H

// Independent reference computations used by the unit tests. Loops are
// written out directly and do not call into the library under test.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Tr_E or Tr_S of an operator on C^ds (x) C^de, index s * de + e.
inline Matrix partial_trace(const Matrix &m, std::size_t ds, std::size_t de, bool keep_system) {
    std::size_t d = keep_system ? ds : de;
    Matrix out = Matrix::Zero(d, d);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            Complex acc = 0.0;
            std::size_t other = keep_system ? de : ds;
            for (std::size_t t = 0; t < other; ++t) {
                std::size_t r = keep_system ? a * de + t : t * de + a;
                std::size_t c = keep_system ? b * de + t : t * de + b;
                acc += m(r, c);
            }
            out(a, b) = acc;
        }
    }
    return out;
}

inline double trace_norm(const Matrix &m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
    return es.eigenvalues().cwiseAbs().sum();
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) {
        return 0;
    }
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

inline int popcount(std::uint64_t x) {
    int c = 0;
    while (x) {
        c += static_cast<int>(x & 1);
        x >>= 1;
    }
    return c;
}

inline Vector random_vector(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Vector v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v(i) = Complex(g(rng), g(rng));
    }
    return v;
}

inline Matrix random_hermitian(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Matrix a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            a(i, j) = Complex(g(rng), g(rng));
        }
    }
    return 0.5 * (a + a.adjoint());
}

// Orthonormal columns spanning a random dim-r subspace of C^n.
inline Matrix random_isometry(std::size_t n, std::size_t r, std::mt19937_64 &rng) {
    Matrix a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(r));
    for (std::size_t j = 0; j < r; ++j) {
        a.col(static_cast<Eigen::Index>(j)) = random_vector(n, rng);
    }
    Eigen::HouseholderQR<Matrix> qr(a);
    return qr.householderQ() * Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(r));
}

// Omega_S from the definition: Tr_E of (1/d_R) sum_i |b_i><b_i|.
inline Matrix canonical_system(const Matrix &basis, std::size_t ds, std::size_t de) {
    Matrix proj = basis * basis.adjoint() / static_cast<double>(basis.cols());
    return partial_trace(proj, ds, de, true);
}

// Same reduction column by column, without the composite-size projector.
inline Matrix canonical_marginal(const Matrix &basis, std::size_t ds, std::size_t de, bool keep_system) {
    std::size_t d = keep_system ? ds : de;
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (Eigen::Index j = 0; j < basis.cols(); ++j) {
        Matrix blk(static_cast<Eigen::Index>(ds), static_cast<Eigen::Index>(de));
        for (std::size_t s = 0; s < ds; ++s) {
            for (std::size_t e = 0; e < de; ++e) {
                blk(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(e)) =
                    basis(static_cast<Eigen::Index>(s * de + e), j);
            }
        }
        out += keep_system ? Matrix(blk * blk.adjoint()) : Matrix((blk.adjoint() * blk).transpose());
    }
    return out / static_cast<double>(basis.cols());
}

}  // namespace oracle

#endif
