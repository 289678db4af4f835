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

#include "gmesim/tomography.h"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <random>

#include "gmesim/parallel.h"
#include "gmesim/random.h"

namespace gmesim::certify {

using qmath::Complex;

namespace {

constexpr std::size_t kDim = 4;
using Mat4 = std::array<Complex, kDim * kDim>;

Mat4 to_mat4(const ComplexMatrix &m) {
    Mat4 out{};
    for (std::size_t r = 0; r < kDim; ++r) {
        for (std::size_t c = 0; c < kDim; ++c) {
            out[r * kDim + c] = m(r, c);
        }
    }
    return out;
}

ComplexMatrix from_mat4(const Mat4 &m) {
    return ComplexMatrix(kDim, kDim, std::vector<Complex>(m.begin(), m.end()));
}

// A = T^dagger T.
Mat4 gram(const Mat4 &t) {
    Mat4 a{};
    for (std::size_t r = 0; r < kDim; ++r) {
        for (std::size_t c = r; c < kDim; ++c) {
            Complex s = 0.0;
            for (std::size_t k = 0; k < kDim; ++k) {
                s += std::conj(t[k * kDim + r]) * t[k * kDim + c];
            }
            a[r * kDim + c] = s;
            a[c * kDim + r] = std::conj(s);
        }
    }
    return a;
}

// tr(A P) for Hermitian A and P.
double trace_product(const Mat4 &a, const Mat4 &p) {
    double s = 0.0;
    for (std::size_t k = 0; k < kDim * kDim; ++k) {
        s += (a[k] * std::conj(p[k])).real();
    }
    return s;
}

double real_trace(const Mat4 &a) {
    return a[0].real() + a[5].real() + a[10].real() + a[15].real();
}

struct Term {
    Mat4 projector;
    double weight;  // n_k / n_total
};

struct Problem {
    std::vector<Term> terms;
    double n_total = 0.0;
    std::vector<std::size_t> dropped;
};

Problem build_problem(std::span<const CountsRecord> data) {
    Problem prob;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const CountsRecord &rec = data[i];
        double total = rec.total();
        if (!(total > 0.0)) {
            prob.dropped.push_back(i);
            continue;
        }
        std::size_t k = 0;
        for (int sa : {+1, -1}) {
            for (int sb : {+1, -1}) {
                double n = rec.counts[k++];
                if (n > 0.0) {
                    ComplexMatrix proj = qmath::kron(bloch_projector(rec.setting.a, sa), bloch_projector(rec.setting.b, sb));
                    prob.terms.push_back({to_mat4(proj), n});
                }
            }
        }
        prob.n_total += total;
    }
    if (prob.terms.empty()) {
        throw MissingSetting("no setting carries any counts");
    }
    for (Term &t : prob.terms) {
        t.weight /= prob.n_total;
    }
    return prob;
}

// Per-count log-likelihood sum_k f_k log tr(A P_k) - log tr(A).
double objective(const Problem &prob, const Mat4 &a) {
    double tr = real_trace(a);
    if (!(tr > 0.0)) {
        return -std::numeric_limits<double>::infinity();
    }
    double s = 0.0;
    for (const Term &t : prob.terms) {
        double p = trace_product(a, t.projector) / tr;
        if (!(p > 0.0)) {
            return -std::numeric_limits<double>::infinity();
        }
        s += t.weight * std::log(p);
    }
    return s;
}

// Projected ascent direction T M, M = sum f_k P_k / tr(A P_k) - I / tr(A),
// restricted to the lower triangle with real diagonal.
Mat4 ascent_direction(const Problem &prob, const Mat4 &t, const Mat4 &a) {
    double tr = real_trace(a);
    Mat4 m{};
    for (const Term &term : prob.terms) {
        double w = term.weight / trace_product(a, term.projector);
        for (std::size_t k = 0; k < kDim * kDim; ++k) {
            m[k] += w * term.projector[k];
        }
    }
    for (std::size_t k = 0; k < kDim; ++k) {
        m[k * kDim + k] -= 1.0 / tr;
    }
    Mat4 d{};
    for (std::size_t r = 0; r < kDim; ++r) {
        for (std::size_t c = 0; c <= r; ++c) {
            Complex s = 0.0;
            for (std::size_t k = 0; k < kDim; ++k) {
                s += t[r * kDim + k] * m[k * kDim + c];
            }
            d[r * kDim + c] = r == c ? Complex(s.real(), 0.0) : s;
        }
    }
    return d;
}

// Real coordinates of a lower-triangular T with real diagonal: the four
// diagonal entries, then (re, im) of each strictly lower entry.
constexpr std::size_t kParams = 16;
using Params = std::array<double, kParams>;
using InverseHessian = std::array<double, kParams * kParams>;

Params pack(const Mat4 &t) {
    Params x{};
    std::size_t k = 0;
    for (std::size_t r = 0; r < kDim; ++r) {
        x[k++] = t[r * kDim + r].real();
    }
    for (std::size_t r = 1; r < kDim; ++r) {
        for (std::size_t c = 0; c < r; ++c) {
            x[k++] = t[r * kDim + c].real();
            x[k++] = t[r * kDim + c].imag();
        }
    }
    return x;
}

Mat4 unpack(const Params &x) {
    Mat4 t{};
    std::size_t k = 0;
    for (std::size_t r = 0; r < kDim; ++r) {
        t[r * kDim + r] = x[k++];
    }
    for (std::size_t r = 1; r < kDim; ++r) {
        for (std::size_t c = 0; c < r; ++c) {
            t[r * kDim + c] = Complex(x[k], x[k + 1]);
            k += 2;
        }
    }
    return t;
}

// Gradient with respect to the real coordinates: 2 Re/Im of dl/dT*.
Params gradient(const Problem &prob, const Mat4 &t, const Mat4 &a) {
    Params g = pack(ascent_direction(prob, t, a));
    for (double &v : g) {
        v *= 2.0;
    }
    return g;
}

double dot(const Params &u, const Params &v) {
    double s = 0.0;
    for (std::size_t k = 0; k < kParams; ++k) {
        s += u[k] * v[k];
    }
    return s;
}

InverseHessian identity_hessian() {
    InverseHessian h{};
    for (std::size_t k = 0; k < kParams; ++k) {
        h[k * kParams + k] = 1.0;
    }
    return h;
}

Params times(const InverseHessian &h, const Params &v) {
    Params out{};
    for (std::size_t r = 0; r < kParams; ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < kParams; ++c) {
            s += h[r * kParams + c] * v[c];
        }
        out[r] = s;
    }
    return out;
}

// BFGS update of the inverse Hessian of -l; skipped when the curvature
// condition fails.
void bfgs_update(InverseHessian &h, const Params &x_next, const Params &x, const Params &g, const Params &g_next) {
    Params s{}, y{};
    for (std::size_t k = 0; k < kParams; ++k) {
        s[k] = x_next[k] - x[k];
        y[k] = g[k] - g_next[k];
    }
    const double sy = dot(s, y);
    if (!(sy > 1e-14 * std::sqrt(dot(s, s) * dot(y, y)))) {
        return;
    }
    const double rho = 1.0 / sy;
    const Params hy = times(h, y);
    const double yhy = dot(y, hy);
    for (std::size_t r = 0; r < kParams; ++r) {
        for (std::size_t c = 0; c < kParams; ++c) {
            h[r * kParams + c] += -rho * (hy[r] * s[c] + s[r] * hy[c]) + (rho * rho * yhy + rho) * s[r] * s[c];
        }
    }
}

// Lower-triangular T with T^dagger T = rho, tolerating zero pivots.
Mat4 reverse_cholesky(const ComplexMatrix &rho) {
    // Cholesky of J rho J (J the exchange matrix) gives L; T = (J L J)^dagger.
    Mat4 b{};
    for (std::size_t r = 0; r < kDim; ++r) {
        for (std::size_t c = 0; c < kDim; ++c) {
            b[r * kDim + c] = rho(kDim - 1 - r, kDim - 1 - c);
        }
    }
    Mat4 l{};
    for (std::size_t j = 0; j < kDim; ++j) {
        double d = b[j * kDim + j].real();
        for (std::size_t k = 0; k < j; ++k) {
            d -= std::norm(l[j * kDim + k]);
        }
        if (d <= 1e-14) {
            continue;
        }
        double ljj = std::sqrt(d);
        l[j * kDim + j] = ljj;
        for (std::size_t i = j + 1; i < kDim; ++i) {
            Complex s = b[i * kDim + j];
            for (std::size_t k = 0; k < j; ++k) {
                s -= l[i * kDim + k] * std::conj(l[j * kDim + k]);
            }
            l[i * kDim + j] = s / ljj;
        }
    }
    Mat4 t{};
    for (std::size_t r = 0; r < kDim; ++r) {
        for (std::size_t c = 0; c < kDim; ++c) {
            // U = J L J, T = U^dagger.
            Complex u_cr = l[(kDim - 1 - c) * kDim + (kDim - 1 - r)];
            t[r * kDim + c] = std::conj(u_cr);
        }
    }
    return t;
}

ComplexMatrix clip_to_psd(const ComplexMatrix &m, bool &clipped) {
    qmath::Eigensystem eig = qmath::hermitian_eig(m);
    clipped = eig.values.back() < -1e-9;
    ComplexMatrix out = qmath::hermitian_function(m, [](double x) { return std::max(x, 0.0); });
    double tr = out.trace().real();
    if (!(tr > 0.0)) {
        return ComplexMatrix::identity(kDim) * Complex(0.25);
    }
    return out * Complex(1.0 / tr);
}

DensityMatrix density_from_gram(const Mat4 &a) {
    ComplexMatrix m = from_mat4(a);
    m *= 1.0 / real_trace(a);
    return DensityMatrix({2, 2}, std::move(m));
}

bool all_supported(const Problem &prob, const ComplexMatrix &rho) {
    Mat4 r = to_mat4(rho);
    for (const Term &t : prob.terms) {
        if (!(trace_product(r, t.projector) > 1e-12)) {
            return false;
        }
    }
    return true;
}

double sample_stddev(const std::vector<double> &xs) {
    if (xs.size() < 2) {
        return 0.0;
    }
    double mean = 0.0;
    for (double x : xs) {
        mean += x;
    }
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) {
        ss += (x - mean) * (x - mean);
    }
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

bool has_pauli_settings(std::span<const CountsRecord> data) {
    try {
        estimate_pauli(data);
        return true;
    } catch (const MissingSetting &) {
        return false;
    }
}

std::string format_count(double x) {
    return fmt::format("{:.17g}", x);
}

}  // namespace

std::vector<MeasurementSetting> pauli_settings() {
    const std::array<BlochVector, 3> axes{kAxisX, kAxisY, kAxisZ};
    std::vector<MeasurementSetting> out;
    for (const BlochVector &a : axes) {
        for (const BlochVector &b : axes) {
            out.emplace_back(a, b);
        }
    }
    return out;
}

std::vector<CountsRecord> simulate_counts(const DensityMatrix &rho, std::span<const MeasurementSetting> settings,
                                          std::uint64_t n_per_setting, std::uint64_t seed) {
    if (n_per_setting < 1) {
        throw OutOfRange("n_per_setting must be at least 1");
    }
    std::vector<CountsRecord> out;
    out.reserve(settings.size());
    for (std::size_t k = 0; k < settings.size(); ++k) {
        Rng rng = make_stream(seed, k);
        std::array<double, 4> p = outcome_probabilities(rho, settings[k]);
        std::array<double, 4> counts{};
        for (std::size_t o = 0; o < 4; ++o) {
            double mean = static_cast<double>(n_per_setting) * p[o];
            if (mean > 0.0) {
                std::poisson_distribution<long long> poisson(mean);
                counts[o] = static_cast<double>(poisson(rng));
            }
        }
        out.push_back({settings[k], counts, static_cast<double>(n_per_setting)});
    }
    return out;
}

std::vector<CountsRecord> expected_counts(const DensityMatrix &rho, std::span<const MeasurementSetting> settings,
                                          double n_per_setting) {
    std::vector<CountsRecord> out;
    for (const MeasurementSetting &s : settings) {
        std::array<double, 4> p = outcome_probabilities(rho, s);
        for (double &x : p) {
            x *= n_per_setting;
        }
        out.push_back({s, p, n_per_setting});
    }
    return out;
}

PauliEstimate estimate_pauli(std::span<const CountsRecord> data) {
    const std::array<BlochVector, 3> axes{kAxisX, kAxisY, kAxisZ};
    PauliEstimate est{};
    std::array<double, 3> a_num{}, a_den{}, b_num{}, b_den{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            double num = 0.0, den = 0.0;
            for (const CountsRecord &rec : data) {
                if (rec.setting.a != axes[i] || rec.setting.b != axes[j]) {
                    continue;
                }
                const auto &n = rec.counts;
                num += n[0] - n[1] - n[2] + n[3];
                den += rec.total();
                a_num[i] += n[0] + n[1] - n[2] - n[3];
                a_den[i] += rec.total();
                b_num[j] += n[0] - n[1] + n[2] - n[3];
                b_den[j] += rec.total();
            }
            if (!(den > 0.0)) {
                throw MissingSetting("no counts for Pauli setting " + setting_label(axes[i]) + setting_label(axes[j]));
            }
            est.correlations[i][j] = num / den;
        }
    }
    for (std::size_t i = 0; i < 3; ++i) {
        est.marginal_a[i] = a_num[i] / a_den[i];
        est.marginal_b[i] = b_num[i] / b_den[i];
    }
    return est;
}

ComplexMatrix tomography_linear(std::span<const CountsRecord> data) {
    PauliEstimate est = estimate_pauli(data);
    const std::array<ComplexMatrix, 3> paulis{qmath::pauli_x(), qmath::pauli_y(), qmath::pauli_z()};
    const ComplexMatrix id = ComplexMatrix::identity(2);
    ComplexMatrix rho = ComplexMatrix::identity(4);
    for (std::size_t i = 0; i < 3; ++i) {
        rho += qmath::kron(paulis[i], id) * Complex(est.marginal_a[i]);
        rho += qmath::kron(id, paulis[i]) * Complex(est.marginal_b[i]);
        for (std::size_t j = 0; j < 3; ++j) {
            rho += qmath::kron(paulis[i], paulis[j]) * Complex(est.correlations[i][j]);
        }
    }
    return rho * Complex(0.25);
}

double log_likelihood(std::span<const CountsRecord> data, const DensityMatrix &rho) {
    double s = 0.0;
    for (const CountsRecord &rec : data) {
        if (!(rec.total() > 0.0)) {
            continue;
        }
        std::array<double, 4> p = outcome_probabilities(rho, rec.setting);
        for (std::size_t k = 0; k < 4; ++k) {
            if (rec.counts[k] > 0.0) {
                s += rec.counts[k] * std::log(p[k]);
            }
        }
    }
    return s;
}

TomographyResult tomography_mle(std::span<const CountsRecord> data, const std::optional<ComplexMatrix> &init,
                                const MleOptions &options) {
    Problem prob = build_problem(data);

    ComplexMatrix start;
    if (init) {
        bool clipped = false;
        start = clip_to_psd(*init, clipped);
    } else {
        bool clipped = false;
        ComplexMatrix lin = has_pauli_settings(data) ? tomography_linear(data) : ComplexMatrix::identity(kDim) * Complex(0.25);
        start = clip_to_psd(lin, clipped);
        // A clipped estimate sits on the boundary by construction; start
        // strictly inside so every direction stays reachable.
        if (clipped) {
            start = start * Complex(1.0 - 1e-2) + ComplexMatrix::identity(kDim) * Complex(1e-2 / 4.0);
        }
    }
    for (double eps = 1e-6; !all_supported(prob, start); eps *= 10.0) {
        start = start * Complex(1.0 - eps) + ComplexMatrix::identity(kDim) * Complex(eps / 4.0);
        if (eps >= 1.0) {
            break;
        }
    }

    Mat4 t = reverse_cholesky(start);
    Mat4 a = gram(t);
    double value = objective(prob, a);
    Params x = pack(t);
    Params g = gradient(prob, t, a);
    InverseHessian h = identity_hessian();

    TomographyResult result{density_from_gram(a), 0.0, 0, false, {}, std::nullopt, {}, 0.0, 0.0, 0.0, 0.0, std::nullopt, {}};
    int quiet = 0;
    int it = 0;
    for (; it < options.max_iterations && quiet < options.patience; ++it) {
        double improvement = 0.0;
        for (bool preconditioned : {true, false}) {
            if (!preconditioned) {
                h = identity_hessian();
            }
            Params dir = times(h, g);
            if (dot(dir, g) <= 0.0) {
                continue;
            }
            Params x_next{};
            Mat4 t_next{}, a_next{};
            double v_next = value;
            bool accepted = false;
            double step = 1.0;
            for (int halving = 0; halving < 60; ++halving, step *= 0.5) {
                for (std::size_t k = 0; k < kParams; ++k) {
                    x_next[k] = x[k] + step * dir[k];
                }
                t_next = unpack(x_next);
                a_next = gram(t_next);
                v_next = objective(prob, a_next);
                if (v_next >= value) {
                    accepted = true;
                    break;
                }
            }
            if (!accepted) {
                continue;
            }
            double scale = 1.0 / std::sqrt(real_trace(a_next));
            for (double &z : x_next) {
                z *= scale;
            }
            t_next = unpack(x_next);
            a_next = gram(t_next);
            Params g_next = gradient(prob, t_next, a_next);
            bfgs_update(h, x_next, x, g, g_next);
            improvement = (v_next - value) * prob.n_total;
            x = x_next;
            t = t_next;
            a = a_next;
            g = g_next;
            value = v_next;
            break;
        }
        if (options.record_history) {
            result.history.push_back(value * prob.n_total);
        }
        quiet = improvement < options.tolerance ? quiet + 1 : 0;
    }

    result.rho_hat = density_from_gram(a);
    result.log_likelihood = value * prob.n_total;
    result.iterations = it;
    result.converged = quiet >= options.patience;
    result.dropped_settings = prob.dropped;

    PptReport ppt = ppt_report(result.rho_hat);
    result.ppt_eigenvalues = ppt.eigenvalues;
    result.negativity = ppt.negativity;
    CorrelationMatrix corr = correlation_matrix(result.rho_hat);
    result.witness = witness_from_correlations(corr);
    result.chsh_fixed = chsh_from_correlations(corr, singlet_optimal_chsh_settings());
    result.chsh_max = chsh_max_from_correlations(corr).value;
    return result;
}

void set_target(TomographyResult &result, const DensityMatrix &target) {
    result.fidelity_to_target = qmath::fidelity(result.rho_hat, target);
}

ErrorIntervals monte_carlo_errors(std::span<const CountsRecord> data, int replicas, std::uint64_t seed,
                                  const std::optional<DensityMatrix> &target, const MleOptions &options) {
    if (replicas < 2) {
        throw OutOfRange("monte_carlo_errors needs at least 2 replicas");
    }
    const bool direct = has_pauli_settings(data);
    constexpr std::size_t kQuantities = 11;
    auto samples = parallel_map(static_cast<std::size_t>(replicas), [&](std::size_t r) {
        Rng rng = make_stream(seed, r);
        std::vector<CountsRecord> resampled(data.begin(), data.end());
        for (CountsRecord &rec : resampled) {
            for (double &c : rec.counts) {
                if (c > 0.0) {
                    std::poisson_distribution<long long> poisson(c);
                    c = static_cast<double>(poisson(rng));
                } else {
                    c = 0.0;
                }
            }
        }
        std::array<double, kQuantities> q{};
        TomographyResult res = tomography_mle(resampled, std::nullopt, options);
        q[0] = target ? qmath::fidelity(res.rho_hat, *target) : 0.0;
        q[1] = res.witness;
        q[2] = res.chsh_fixed;
        q[3] = res.chsh_max;
        q[4] = res.negativity;
        for (std::size_t k = 0; k < 4; ++k) {
            q[5 + k] = res.ppt_eigenvalues[k];
        }
        if (direct) {
            try {
                PauliEstimate est = estimate_pauli(resampled);
                q[9] = witness_from_correlations(est.correlations);
                q[10] = chsh_from_correlations(est.correlations, singlet_optimal_chsh_settings());
            } catch (const MissingSetting &) {
                // A resampled setting came back empty; keep zeros.
            }
        }
        return q;
    });

    auto column = [&](std::size_t k) {
        std::vector<double> xs;
        xs.reserve(samples.size());
        for (const auto &s : samples) {
            xs.push_back(s[k]);
        }
        return sample_stddev(xs);
    };
    ErrorIntervals e;
    e.replicas = replicas;
    e.fidelity = target ? column(0) : 0.0;
    e.witness = column(1);
    e.chsh_fixed = column(2);
    e.chsh_max = column(3);
    e.negativity = column(4);
    for (std::size_t k = 0; k < 4; ++k) {
        e.ppt_eigenvalues[k] = column(5 + k);
    }
    e.witness_direct = direct ? column(9) : 0.0;
    e.chsh_direct = direct ? column(10) : 0.0;
    return e;
}

void write_counts_csv(std::ostream &out, std::span<const CountsRecord> data) {
    out << "setting_a,setting_b,n_pp,n_pm,n_mp,n_mm\n";
    for (const CountsRecord &rec : data) {
        out << setting_label(rec.setting.a) << ',' << setting_label(rec.setting.b);
        for (double c : rec.counts) {
            out << ',' << format_count(c);
        }
        out << '\n';
    }
}

std::vector<CountsRecord> read_counts_csv(std::istream &in) {
    static const std::string kHeader = "setting_a,setting_b,n_pp,n_pm,n_mp,n_mm";
    std::vector<CountsRecord> out;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!header_seen) {
            if (line != kHeader) {
                throw ParseError("expected header '" + kHeader + "'", line_no, 1);
            }
            header_seen = true;
            continue;
        }
        std::vector<std::pair<std::string, std::size_t>> fields;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = line.find(',', start);
            fields.emplace_back(line.substr(start, comma - start), start + 1);
            if (comma == std::string::npos) {
                break;
            }
            start = comma + 1;
        }
        if (fields.size() != 6) {
            throw ParseError("expected 6 fields, found " + std::to_string(fields.size()), line_no, 1);
        }
        BlochVector a{}, b{};
        try {
            a = parse_setting_label(fields[0].first);
        } catch (const OutOfRange &e) {
            throw ParseError(e.what(), line_no, fields[0].second);
        }
        try {
            b = parse_setting_label(fields[1].first);
        } catch (const OutOfRange &e) {
            throw ParseError(e.what(), line_no, fields[1].second);
        }
        std::array<double, 4> counts{};
        for (std::size_t k = 0; k < 4; ++k) {
            const std::string &f = fields[2 + k].first;
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (ec != std::errc() || ptr != f.data() + f.size() || !std::isfinite(v) || v < 0.0) {
                throw ParseError("invalid count '" + f + "'", line_no, fields[2 + k].second);
            }
            counts[k] = v;
        }
        CountsRecord rec{MeasurementSetting(a, b), counts, 0.0};
        rec.total_expected = rec.total();
        out.push_back(rec);
    }
    if (!header_seen) {
        throw ParseError("missing counts header", line_no + 1, 1);
    }
    return out;
}

nlohmann::json counts_to_json(std::span<const CountsRecord> data) {
    nlohmann::json arr = nlohmann::json::array();
    for (const CountsRecord &rec : data) {
        arr.push_back({{"setting_a", setting_label(rec.setting.a)},
                       {"setting_b", setting_label(rec.setting.b)},
                       {"counts", rec.counts},
                       {"total_expected", rec.total_expected}});
    }
    return arr;
}

nlohmann::json matrix_to_json(const ComplexMatrix &m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            row.push_back({m(r, c).real(), m(r, c).imag()});
        }
        rows.push_back(row);
    }
    return rows;
}

ComplexMatrix matrix_from_json(const nlohmann::json &doc) {
    if (!doc.is_array() || doc.empty()) {
        throw InvalidState("matrix must be a non-empty array of rows");
    }
    std::size_t rows = doc.size();
    std::size_t cols = doc[0].size();
    std::vector<Complex> entries;
    for (const auto &row : doc) {
        if (!row.is_array() || row.size() != cols) {
            throw InvalidState("ragged matrix rows");
        }
        for (const auto &z : row) {
            if (!z.is_array() || z.size() != 2) {
                throw InvalidState("matrix entries must be [re, im] pairs");
            }
            entries.emplace_back(z[0].get<double>(), z[1].get<double>());
        }
    }
    return ComplexMatrix(rows, cols, std::move(entries));
}

nlohmann::json to_json(const ErrorIntervals &e) {
    return {{"replicas", e.replicas},
            {"fidelity", e.fidelity},
            {"witness", e.witness},
            {"chsh_fixed", e.chsh_fixed},
            {"chsh_max", e.chsh_max},
            {"negativity", e.negativity},
            {"ppt_eigenvalues", e.ppt_eigenvalues},
            {"witness_direct", e.witness_direct},
            {"chsh_direct", e.chsh_direct}};
}

nlohmann::json to_json(const TomographyResult &r) {
    nlohmann::json doc{{"rho_hat", matrix_to_json(r.rho_hat.matrix())},
                       {"log_likelihood", r.log_likelihood},
                       {"iterations", r.iterations},
                       {"converged", r.converged},
                       {"dropped_settings", r.dropped_settings},
                       {"ppt_eigenvalues", r.ppt_eigenvalues},
                       {"negativity", r.negativity},
                       {"witness", r.witness},
                       {"chsh_fixed", r.chsh_fixed},
                       {"chsh_max", r.chsh_max}};
    doc["fidelity_to_target"] = r.fidelity_to_target ? nlohmann::json(*r.fidelity_to_target) : nlohmann::json(nullptr);
    doc["error_intervals"] = r.error_intervals ? to_json(*r.error_intervals) : nlohmann::json(nullptr);
    return doc;
}

}  // namespace gmesim::certify
