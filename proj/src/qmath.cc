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

#include "gmesim/qmath.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace gmesim::qmath {

namespace {

void require_finite(std::span<const Complex> values) {
    for (const Complex &z : values) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw InvalidState("matrix entry is not finite");
        }
    }
}

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch(std::string(op) + ": shape " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
    }
}

// Mixed-radix digits of `index`, most significant (subsystem 0) first.
void split_index(std::size_t index, const Dims &dims, std::vector<std::size_t> &digits) {
    for (std::size_t k = dims.size(); k-- > 0;) {
        digits[k] = index % dims[k];
        index /= dims[k];
    }
}

std::size_t join_index(const std::vector<std::size_t> &digits, const Dims &dims) {
    std::size_t index = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        index = index * dims[k] + digits[k];
    }
    return index;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex(0.0, 0.0)) {
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows * cols) {
        throw DimensionMismatch("entries length " + std::to_string(entries_.size()) + " != " +
                                std::to_string(rows) + "x" + std::to_string(cols));
    }
    require_finite(entries_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        if (row.size() != cols_) {
            throw DimensionMismatch("ragged matrix literal");
        }
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
    require_finite(entries_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        m(k, k) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t k = 0; k < diag.size(); ++k) {
        m(k, k) = diag[k];
    }
    require_finite(m.entries_);
    return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> values) {
    return ComplexMatrix(values.size(), 1, std::vector<Complex>(values.begin(), values.end()));
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out(c, r) = (*this)(r, c);
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::conj() const {
    ComplexMatrix out = *this;
    for (Complex &z : out.entries_) {
        z = std::conj(z);
    }
    return out;
}

Complex ComplexMatrix::trace() const {
    if (!is_square()) {
        throw DimensionMismatch("trace of a non-square matrix");
    }
    Complex t = 0.0;
    for (std::size_t k = 0; k < rows_; ++k) {
        t += (*this)(k, k);
    }
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const Complex &z : entries_) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    require_same_shape(*this, other, "operator+");
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        entries_[k] += other.entries_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    require_same_shape(*this, other, "operator-");
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        entries_[k] -= other.entries_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scale) {
    for (Complex &z : entries_) {
        z *= scale;
    }
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("matrix product: inner dimensions " + std::to_string(a.cols()) + " vs " +
                                std::to_string(b.rows()));
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            Complex ark = a(r, k);
            if (ark == Complex(0.0, 0.0)) {
                continue;
            }
            for (std::size_t c = 0; c < b.cols(); ++c) {
                out(r, c) += ark * b(k, c);
            }
        }
    }
    return out;
}

std::vector<Complex> operator*(const ComplexMatrix &m, std::span<const Complex> v) {
    if (m.cols() != v.size()) {
        throw DimensionMismatch("matrix-vector product: " + std::to_string(m.cols()) + " vs " +
                                std::to_string(v.size()));
    }
    std::vector<Complex> out(m.rows(), Complex(0.0, 0.0));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out[r] += m(r, c) * v[c];
        }
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ra = 0; ra < a.rows(); ++ra) {
        for (std::size_t ca = 0; ca < a.cols(); ++ca) {
            Complex x = a(ra, ca);
            for (std::size_t rb = 0; rb < b.rows(); ++rb) {
                for (std::size_t cb = 0; cb < b.cols(); ++cb) {
                    out(ra * b.rows() + rb, ca * b.cols() + cb) = x * b(rb, cb);
                }
            }
        }
    }
    return out;
}

ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v) {
    ComplexMatrix out(u.size(), v.size());
    for (std::size_t r = 0; r < u.size(); ++r) {
        for (std::size_t c = 0; c < v.size(); ++c) {
            out(r, c) = u[r] * std::conj(v[c]);
        }
    }
    return out;
}

Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
    if (u.size() != v.size()) {
        throw DimensionMismatch("inner product of vectors with different lengths");
    }
    Complex s = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        s += std::conj(u[k]) * v[k];
    }
    return s;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k) {
        m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
    }
    return m;
}

double hermiticity_error(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw DimensionMismatch("hermiticity check of a non-square matrix");
    }
    double err = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = r; c < m.cols(); ++c) {
            err = std::max(err, std::abs(m(r, c) - std::conj(m(c, r))));
        }
    }
    return err;
}

double unitarity_error(const ComplexMatrix &m) {
    return max_abs_diff(m.adjoint() * m, ComplexMatrix::identity(m.cols()));
}

ComplexMatrix pauli_x() {
    return {{0.0, 1.0}, {1.0, 0.0}};
}

ComplexMatrix pauli_y() {
    return {{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}};
}

ComplexMatrix pauli_z() {
    return {{1.0, 0.0}, {0.0, -1.0}};
}

Eigensystem hermitian_eig(const ComplexMatrix &h) {
    double herr = hermiticity_error(h);
    if (herr > kHermitianTol) {
        throw NotHermitian("hermitian_eig: max |h - h^dagger| = " + std::to_string(herr));
    }
    const std::size_t n = h.rows();
    // Work on the exactly Hermitian part.
    ComplexMatrix a(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        a(r, r) = h(r, r).real();
        for (std::size_t c = r + 1; c < n; ++c) {
            Complex z = 0.5 * (h(r, c) + std::conj(h(c, r)));
            a(r, c) = z;
            a(c, r) = std::conj(z);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(a.frobenius_norm(), 1e-300);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += std::norm(a(p, q));
            }
        }
        if (std::sqrt(off) <= 1e-16 * scale) {
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double mag = std::abs(a(p, q));
                if (mag <= 1e-300) {
                    continue;
                }
                // a_pq = mag e^{i alpha}; rotate the phase out, then apply a
                // real Jacobi rotation to [[a_pp, mag], [mag, a_qq]].
                const Complex phase = a(p, q) / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double cs = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * cs;
                // J = D R with D = diag(1, conj(phase)) on (p, q).
                const Complex jpp = cs;
                const Complex jpq = sn;
                const Complex jqp = -sn * std::conj(phase);
                const Complex jqq = cs * std::conj(phase);
                // a <- a J
                for (std::size_t k = 0; k < n; ++k) {
                    Complex akp = a(k, p);
                    Complex akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                }
                // a <- J^dagger a
                for (std::size_t k = 0; k < n; ++k) {
                    Complex apk = a(p, k);
                    Complex aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    Complex vkp = v(k, p);
                    Complex vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    Eigensystem out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t src = order[k];
        out.values[k] = a(src, src).real();
        Complex fix = 1.0;
        for (std::size_t r = 0; r < n; ++r) {
            double m = std::abs(v(r, src));
            if (m > 1e-12) {
                fix = std::conj(v(r, src)) / m;
                break;
            }
        }
        for (std::size_t r = 0; r < n; ++r) {
            out.vectors(r, k) = v(r, src) * fix;
        }
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix &h) {
    return hermitian_eig(h).values;
}

std::size_t dims_product(const Dims &dims) {
    std::size_t p = 1;
    for (std::size_t d : dims) {
        if (d == 0) {
            throw DimensionMismatch("subsystem of dimension 0");
        }
        p *= d;
    }
    return p;
}

PureState::PureState(Dims dims, std::vector<Complex> amplitudes)
    : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
    if (dims_product(dims_) != amplitudes_.size()) {
        throw DimensionMismatch("amplitude vector length does not match subsystem dims");
    }
    require_finite(amplitudes_);
    double norm = 0.0;
    for (const Complex &z : amplitudes_) {
        norm += std::norm(z);
    }
    if (std::abs(norm - 1.0) > kNormTol) {
        throw InvalidState("pure state norm^2 = " + std::to_string(norm));
    }
}

PureState PureState::normalized(Dims dims, std::vector<Complex> amplitudes) {
    double norm = 0.0;
    for (const Complex &z : amplitudes) {
        norm += std::norm(z);
    }
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw InvalidState("cannot normalize a zero or non-finite vector");
    }
    double s = 1.0 / std::sqrt(norm);
    for (Complex &z : amplitudes) {
        z *= s;
    }
    return PureState(std::move(dims), std::move(amplitudes));
}

PureState PureState::basis(Dims dims, std::size_t index) {
    std::size_t n = dims_product(dims);
    if (index >= n) {
        throw OutOfRange("basis index " + std::to_string(index) + " out of range");
    }
    std::vector<Complex> amps(n, Complex(0.0, 0.0));
    amps[index] = 1.0;
    return PureState(std::move(dims), std::move(amps));
}

ComplexMatrix PureState::projector() const {
    return outer(amplitudes_, amplitudes_);
}

DensityMatrix::DensityMatrix(Dims dims, ComplexMatrix matrix) : dims_(std::move(dims)), matrix_(std::move(matrix)) {
    if (!matrix_.is_square() || matrix_.rows() != dims_product(dims_)) {
        throw DimensionMismatch("density matrix side does not match subsystem dims");
    }
    double herr = hermiticity_error(matrix_);
    if (herr > kNormTol) {
        throw InvalidState("density matrix not Hermitian: error " + std::to_string(herr));
    }
    const std::size_t n = matrix_.rows();
    for (std::size_t r = 0; r < n; ++r) {
        matrix_(r, r) = matrix_(r, r).real();
        for (std::size_t c = r + 1; c < n; ++c) {
            Complex z = 0.5 * (matrix_(r, c) + std::conj(matrix_(c, r)));
            matrix_(r, c) = z;
            matrix_(c, r) = std::conj(z);
        }
    }
    double tr = matrix_.trace().real();
    if (std::abs(tr - 1.0) > kNormTol) {
        throw InvalidState("density matrix trace = " + std::to_string(tr));
    }
    double min_eig = hermitian_eigenvalues(matrix_).back();
    if (min_eig < -kPsdTol) {
        throw InvalidState("density matrix has eigenvalue " + std::to_string(min_eig));
    }
}

DensityMatrix DensityMatrix::from_pure(const PureState &psi) {
    return DensityMatrix(psi.dims(), psi.projector());
}

DensityMatrix DensityMatrix::maximally_mixed(Dims dims) {
    std::size_t n = dims_product(dims);
    return DensityMatrix(std::move(dims), ComplexMatrix::identity(n) * Complex(1.0 / static_cast<double>(n)));
}

double DensityMatrix::purity() const {
    return (matrix_ * matrix_).trace().real();
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> keep) {
    const Dims &dims = rho.dims();
    if (keep.empty()) {
        throw BadSubsystem("partial_trace: keep set is empty");
    }
    std::vector<bool> kept(dims.size(), false);
    for (std::size_t k : keep) {
        if (k >= dims.size()) {
            throw BadSubsystem("partial_trace: subsystem " + std::to_string(k) + " out of range");
        }
        if (kept[k]) {
            throw BadSubsystem("partial_trace: subsystem " + std::to_string(k) + " listed twice");
        }
        kept[k] = true;
    }
    Dims out_dims;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (kept[k]) {
            out_dims.push_back(dims[k]);
        }
    }
    const std::size_t n = rho.dimension();
    const std::size_t m = dims_product(out_dims);
    ComplexMatrix out(m, m);
    std::vector<std::size_t> di(dims.size()), dj(dims.size());
    for (std::size_t i = 0; i < n; ++i) {
        split_index(i, dims, di);
        for (std::size_t j = 0; j < n; ++j) {
            split_index(j, dims, dj);
            bool same_traced = true;
            std::size_t oi = 0, oj = 0;
            for (std::size_t k = 0; k < dims.size(); ++k) {
                if (kept[k]) {
                    oi = oi * dims[k] + di[k];
                    oj = oj * dims[k] + dj[k];
                } else if (di[k] != dj[k]) {
                    same_traced = false;
                    break;
                }
            }
            if (same_traced) {
                out(oi, oj) += rho.matrix()(i, j);
            }
        }
    }
    return DensityMatrix(std::move(out_dims), std::move(out));
}

ComplexMatrix partial_transpose(const DensityMatrix &rho, std::size_t subsystem) {
    const Dims &dims = rho.dims();
    if (subsystem >= dims.size()) {
        throw BadSubsystem("partial_transpose: subsystem " + std::to_string(subsystem) + " out of range");
    }
    const std::size_t n = rho.dimension();
    ComplexMatrix out(n, n);
    std::vector<std::size_t> di(dims.size()), dj(dims.size());
    for (std::size_t i = 0; i < n; ++i) {
        split_index(i, dims, di);
        for (std::size_t j = 0; j < n; ++j) {
            split_index(j, dims, dj);
            std::swap(di[subsystem], dj[subsystem]);
            out(join_index(di, dims), join_index(dj, dims)) = rho.matrix()(i, j);
            std::swap(di[subsystem], dj[subsystem]);
        }
    }
    return out;
}

double fidelity_pure(const DensityMatrix &rho, const PureState &psi) {
    if (rho.dimension() != psi.dimension()) {
        throw DimensionMismatch("fidelity_pure: dimension " + std::to_string(rho.dimension()) + " vs " +
                                std::to_string(psi.dimension()));
    }
    std::vector<Complex> rpsi = rho.matrix() * psi.amplitudes();
    return inner(psi.amplitudes(), rpsi).real();
}

double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma) {
    if (rho.dimension() != sigma.dimension()) {
        throw DimensionMismatch("fidelity: dimension mismatch");
    }
    ComplexMatrix sqrt_rho = hermitian_function(rho.matrix(), [](double x) { return std::sqrt(std::max(x, 0.0)); });
    ComplexMatrix inner_m = sqrt_rho * sigma.matrix() * sqrt_rho;
    // Symmetrize against rounding before the eigensolver sees it.
    inner_m = (inner_m + inner_m.adjoint()) * Complex(0.5);
    double s = 0.0;
    for (double x : hermitian_eigenvalues(inner_m)) {
        s += std::sqrt(std::max(x, 0.0));
    }
    return s * s;
}

double trace_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    double s = 0.0;
    for (double x : hermitian_eigenvalues(a - b)) {
        s += std::abs(x);
    }
    return 0.5 * s;
}

double negativity(const DensityMatrix &rho) {
    if (rho.dims().size() != 2) {
        throw DimensionMismatch("negativity expects a bipartite state");
    }
    double s = 0.0;
    for (double x : hermitian_eigenvalues(partial_transpose(rho, 1))) {
        if (x < 0.0) {
            s -= x;
        }
    }
    return s;
}

double entropy_bits(const DensityMatrix &rho) {
    double s = 0.0;
    for (double x : hermitian_eigenvalues(rho.matrix())) {
        if (x > 1e-300) {
            s -= x * std::log2(x);
        }
    }
    return s;
}

std::vector<double> schmidt_coefficients(const PureState &psi, std::span<const std::size_t> keep) {
    const Dims &dims = psi.dims();
    const std::size_t n = dims.size();
    std::vector<bool> kept(n, false);
    for (std::size_t k : keep) {
        if (k >= n || kept[k]) {
            throw BadSubsystem("invalid subsystem index " + std::to_string(k));
        }
        kept[k] = true;
    }
    std::size_t rows = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (kept[k]) {
            rows *= dims[k];
        }
    }
    const std::size_t cols = psi.dimension() / rows;

    // Coefficient matrix M(kept, rest), stored column-wise over the shorter side.
    std::vector<std::size_t> digit(n);
    std::vector<Complex> m(psi.dimension());
    for (std::size_t idx = 0; idx < psi.dimension(); ++idx) {
        std::size_t rest = idx;
        for (std::size_t k = n; k-- > 0;) {
            digit[k] = rest % dims[k];
            rest /= dims[k];
        }
        std::size_t r = 0;
        std::size_t c = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (kept[k]) {
                r = r * dims[k] + digit[k];
            } else {
                c = c * dims[k] + digit[k];
            }
        }
        m[c * rows + r] = psi.amplitudes()[idx];
    }
    std::size_t len = rows;
    std::size_t count = cols;
    if (cols > rows) {
        std::vector<Complex> t(m.size());
        for (std::size_t c = 0; c < cols; ++c) {
            for (std::size_t r = 0; r < rows; ++r) {
                t[r * cols + c] = m[c * rows + r];
            }
        }
        m.swap(t);
        len = cols;
        count = rows;
    }

    // One-sided Jacobi: rotate column pairs until mutually orthogonal.
    auto col = [&](std::size_t j) { return m.data() + j * len; };
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < count; ++p) {
            for (std::size_t q = p + 1; q < count; ++q) {
                double alpha = 0.0;
                double beta = 0.0;
                Complex gamma = 0.0;
                for (std::size_t i = 0; i < len; ++i) {
                    alpha += std::norm(col(p)[i]);
                    beta += std::norm(col(q)[i]);
                    gamma += std::conj(col(p)[i]) * col(q)[i];
                }
                double g = std::abs(gamma);
                if (g <= 1e-15 * std::sqrt(alpha * beta) || g == 0.0) {
                    continue;
                }
                rotated = true;
                Complex phase = std::conj(gamma) / g;
                double zeta = (beta - alpha) / (2.0 * g);
                double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = c * t;
                for (std::size_t i = 0; i < len; ++i) {
                    Complex a = col(p)[i];
                    Complex b = col(q)[i] * phase;
                    col(p)[i] = c * a - s * b;
                    col(q)[i] = s * a + c * b;
                }
            }
        }
        if (!rotated) {
            break;
        }
    }
    std::vector<double> out(count);
    for (std::size_t j = 0; j < count; ++j) {
        double norm2 = 0.0;
        for (std::size_t i = 0; i < len; ++i) {
            norm2 += std::norm(col(j)[i]);
        }
        out[j] = std::sqrt(norm2);
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

DensityMatrix conjugate(const DensityMatrix &rho, const ComplexMatrix &unitary) {
    return DensityMatrix(rho.dims(), unitary * rho.matrix() * unitary.adjoint());
}

}  // namespace gmesim::qmath
