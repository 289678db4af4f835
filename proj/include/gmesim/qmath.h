// Copyright 2026 The gmesim Authors
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

#ifndef GMESIM_QMATH_H
#define GMESIM_QMATH_H

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "gmesim/errors.h"

/// Dense complex linear algebra for the small (<= 64 dimensional) spaces used
/// throughout the simulator.
namespace gmesim::qmath {

using Complex = std::complex<double>;
using Dims = std::vector<std::size_t>;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kNormTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

/// Row-major dense complex matrix. Every entry is finite.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const Complex> diag);
    /// Column vector.
    static ComplexMatrix column(std::span<const Complex> values);

    std::size_t rows() const {
        return rows_;
    }
    std::size_t cols() const {
        return cols_;
    }
    bool is_square() const {
        return rows_ == cols_;
    }

    Complex &operator()(std::size_t r, std::size_t c) {
        return entries_[r * cols_ + c];
    }
    const Complex &operator()(std::size_t r, std::size_t c) const {
        return entries_[r * cols_ + c];
    }

    std::span<const Complex> entries() const {
        return entries_;
    }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conj() const;
    Complex trace() const;
    double frobenius_norm() const;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex scale);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
        a += b;
        return a;
    }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
        a -= b;
        return a;
    }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) {
        a *= s;
        return a;
    }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) {
        a *= s;
        return a;
    }
    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

std::vector<Complex> operator*(const ComplexMatrix &m, std::span<const Complex> v);

/// Kronecker product; `a` is the leftmost (most significant) factor.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// |u><v|
ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v);

Complex inner(std::span<const Complex> u, std::span<const Complex> v);

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

/// max |m - m^dagger| entrywise.
double hermiticity_error(const ComplexMatrix &m);

/// max |m^dagger m - I| entrywise.
double unitarity_error(const ComplexMatrix &m);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// Eigenvalues sorted descending with orthonormal eigenvectors as columns.
struct Eigensystem {
    std::vector<double> values;
    ComplexMatrix vectors;
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Each eigenvector is phase-fixed so that its first component with modulus
/// above 1e-12 is real and positive. Throws NotHermitian when
/// hermiticity_error(h) > kHermitianTol.
Eigensystem hermitian_eig(const ComplexMatrix &h);

std::vector<double> hermitian_eigenvalues(const ComplexMatrix &h);

/// Applies f to the spectrum of a Hermitian matrix: V f(L) V^dagger.
template <typename F>
ComplexMatrix hermitian_function(const ComplexMatrix &h, F &&f) {
    Eigensystem eig = hermitian_eig(h);
    std::size_t n = h.rows();
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        double fk = f(eig.values[k]);
        if (fk == 0.0) {
            continue;
        }
        for (std::size_t r = 0; r < n; ++r) {
            Complex vr = eig.vectors(r, k) * fk;
            for (std::size_t c = 0; c < n; ++c) {
                out(r, c) += vr * std::conj(eig.vectors(c, k));
            }
        }
    }
    return out;
}

std::size_t dims_product(const Dims &dims);

/// Normalized amplitude vector over a tensor product of subsystems.
class PureState {
   public:
    PureState(Dims dims, std::vector<Complex> amplitudes);

    /// Normalizes `amplitudes` before validation.
    static PureState normalized(Dims dims, std::vector<Complex> amplitudes);
    static PureState basis(Dims dims, std::size_t index);

    const Dims &dims() const {
        return dims_;
    }
    std::span<const Complex> amplitudes() const {
        return amplitudes_;
    }
    std::size_t dimension() const {
        return amplitudes_.size();
    }
    ComplexMatrix projector() const;

   private:
    Dims dims_;
    std::vector<Complex> amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite matrix with subsystem dims.
class DensityMatrix {
   public:
    /// Validates hermiticity (1e-12), trace (1e-12) and PSD (-1e-10). The
    /// stored matrix is exactly Hermitian.
    DensityMatrix(Dims dims, ComplexMatrix matrix);

    static DensityMatrix from_pure(const PureState &psi);
    static DensityMatrix maximally_mixed(Dims dims);

    const Dims &dims() const {
        return dims_;
    }
    const ComplexMatrix &matrix() const {
        return matrix_;
    }
    std::size_t dimension() const {
        return matrix_.rows();
    }
    double purity() const;

   private:
    Dims dims_;
    ComplexMatrix matrix_;
};

/// Reduced state on the subsystems in `keep` (kept in ascending order).
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> keep);

/// Transpose of the factor `subsystem`, leaving the others untouched.
ComplexMatrix partial_transpose(const DensityMatrix &rho, std::size_t subsystem);

/// <psi|rho|psi>.
double fidelity_pure(const DensityMatrix &rho, const PureState &psi);

/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma);

/// Half the trace norm of a - b.
double trace_distance(const ComplexMatrix &a, const ComplexMatrix &b);

/// Sum of |negative eigenvalues| of the partial transpose on subsystem 1.
double negativity(const DensityMatrix &rho);

/// Von Neumann entropy in bits.
double entropy_bits(const DensityMatrix &rho);

/// Schmidt coefficients (descending) of psi across the cut keep | rest.
std::vector<double> schmidt_coefficients(const PureState &psi, std::span<const std::size_t> keep);

/// rho -> U rho U^dagger.
DensityMatrix conjugate(const DensityMatrix &rho, const ComplexMatrix &unitary);

}  // namespace gmesim::qmath

#endif
