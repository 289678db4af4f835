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

#include "gmesim/photonic.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gmesim/circuit.h"
#include "gmesim/errors.h"
#include "gmesim/noise.h"

namespace gmesim::photonic {

namespace {

const double kSqrt2 = std::sqrt(2.0);

void require_probability(double x, const char *what) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw OutOfRange(std::string(what) + " must lie in [0, 1]");
    }
}

std::size_t path_index(Path p) {
    return static_cast<std::size_t>(p);
}

// Logical bit of photon A (paths 1, 2) or photon B (paths 4, 3); -1 otherwise.
int logical_a(Path p) {
    return p == Path::kP1 ? 0 : p == Path::kP2 ? 1 : -1;
}

int logical_b(Path p) {
    return p == Path::kP4 ? 0 : p == Path::kP3 ? 1 : -1;
}

Path a_path(int bit) {
    return bit == 0 ? Path::kP1 : Path::kP2;
}

Path b_path(int bit) {
    return bit == 0 ? Path::kP4 : Path::kP3;
}

}  // namespace

std::string path_name(Path p) {
    switch (p) {
        case Path::kOut1:
            return "out1";
        case Path::kP1:
            return "1";
        case Path::kP2:
            return "2";
        case Path::kP3:
            return "3";
        case Path::kP4:
            return "4";
        case Path::kOut4:
            return "out4";
    }
    return "?";
}

std::size_t Mode::index() const {
    return (path_index(path) * 2 + static_cast<std::size_t>(polarization)) * kNumLabels + static_cast<std::size_t>(label);
}

Mode Mode::from_index(std::size_t index) {
    if (index >= kNumModes) {
        throw OutOfRange("mode index out of range");
    }
    return {static_cast<Path>(index / 4), static_cast<Polarization>((index / 2) % 2), static_cast<int>(index % 2)};
}

FockState FockState::from_creation(const std::vector<Complex> &psi1, const std::vector<Complex> &psi2) {
    if (psi1.size() != kNumModes || psi2.size() != kNumModes) {
        throw DimensionMismatch("single-photon amplitudes must cover every mode");
    }
    FockState s;
    for (std::size_t i = 0; i < kNumModes; ++i) {
        for (std::size_t j = 0; j < kNumModes; ++j) {
            Complex c = psi1[i] * psi2[j];
            if (c == Complex(0.0)) {
                continue;
            }
            s.add(i, j, i == j ? c * kSqrt2 : c);
        }
    }
    double n = s.norm_squared();
    if (!(n > 0.0)) {
        throw PhotonNumberMismatch("creation operators annihilate the vacuum");
    }
    for (auto &[key, amp] : s.terms_) {
        amp /= std::sqrt(n);
    }
    return s;
}

FockState FockState::basis(const Mode &a, const Mode &b) {
    FockState s;
    s.add(a.index(), b.index(), 1.0);
    return s;
}

Complex FockState::amplitude(const Mode &a, const Mode &b) const {
    const std::size_t i = a.index();
    const std::size_t j = b.index();
    auto it = terms_.find({std::min(i, j), std::max(i, j)});
    return it == terms_.end() ? Complex(0.0) : it->second;
}

void FockState::add(std::size_t i, std::size_t j, Complex amp) {
    if (i >= kNumModes || j >= kNumModes) {
        throw OutOfRange("mode index out of range");
    }
    terms_[{std::min(i, j), std::max(i, j)}] += amp;
}

double FockState::norm_squared() const {
    double s = 0.0;
    for (const auto &[key, amp] : terms_) {
        s += std::norm(amp);
    }
    return s;
}

ComplexMatrix coupler_unitary(double reflectivity) {
    require_probability(reflectivity, "reflectivity");
    const Complex r(0.0, std::sqrt(reflectivity));
    const Complex t(std::sqrt(1.0 - reflectivity), 0.0);
    return {{r, t}, {t, r}};
}

OpticalNetwork::OpticalNetwork() : unitary_(ComplexMatrix::identity(kNumModes)) {}

void OpticalNetwork::append(OpticalElement element) {
    if (element.unitary.rows() != kNumModes || element.unitary.cols() != kNumModes) {
        throw DimensionMismatch("optical element must act on every mode");
    }
    unitary_ = element.unitary * unitary_;
    elements_.push_back(std::move(element));
}

OpticalElement beam_splitter_element(const BsParams &bs) {
    ComplexMatrix u = ComplexMatrix::identity(kNumModes);
    const std::array<std::pair<Path, Path>, 3> pairs{
        {{Path::kOut1, Path::kP1}, {Path::kP2, Path::kP3}, {Path::kP4, Path::kOut4}}};
    for (Polarization pol : {Polarization::kH, Polarization::kV}) {
        ComplexMatrix c = coupler_unitary(pol == Polarization::kH ? bs.r_h : bs.r_v);
        for (const auto &[p, q] : pairs) {
            for (int label = 0; label < static_cast<int>(kNumLabels); ++label) {
                std::size_t i = Mode{p, pol, label}.index();
                std::size_t j = Mode{q, pol, label}.index();
                u(i, i) = c(0, 0);
                u(i, j) = c(0, 1);
                u(j, i) = c(1, 0);
                u(j, j) = c(1, 1);
            }
        }
    }
    return {"BS", {{"r_h", bs.r_h}, {"r_v", bs.r_v}}, std::move(u)};
}

OpticalElement beam_displacer_element(Path a, Path b, double imperfection) {
    require_probability(imperfection, "beam displacer imperfection");
    const double theta = 0.5 * std::numbers::pi * (1.0 - imperfection);
    const double c = imperfection == 0.0 ? 0.0 : std::cos(theta);
    const double s = std::sin(theta);
    ComplexMatrix u = ComplexMatrix::identity(kNumModes);
    for (int label = 0; label < static_cast<int>(kNumLabels); ++label) {
        std::size_t i = Mode{a, Polarization::kH, label}.index();
        std::size_t j = Mode{b, Polarization::kH, label}.index();
        u(i, i) = c;
        u(i, j) = s;
        u(j, i) = s;
        u(j, j) = -c;
    }
    return {"BD", {{"paths", {path_name(a), path_name(b)}}, {"imperfection", imperfection}}, std::move(u)};
}

OpticalElement half_wave_plate_element(const std::vector<Path> &paths) {
    ComplexMatrix u = ComplexMatrix::identity(kNumModes);
    nlohmann::json names = nlohmann::json::array();
    for (Path p : paths) {
        for (int label = 0; label < static_cast<int>(kNumLabels); ++label) {
            std::size_t h = Mode{p, Polarization::kH, label}.index();
            std::size_t v = Mode{p, Polarization::kV, label}.index();
            u(h, h) = 0.0;
            u(v, v) = 0.0;
            u(h, v) = 1.0;
            u(v, h) = 1.0;
        }
        names.push_back(path_name(p));
    }
    return {"HWP", {{"paths", names}}, std::move(u)};
}

OpticalNetwork build_cz_network(const BsParams &bs) {
    OpticalNetwork net;
    net.append(beam_splitter_element(bs));
    return net;
}

OpticalNetwork build_simulator_pipeline(const BsParams &bs, double bd_imperfection) {
    OpticalNetwork net;
    net.append(beam_displacer_element(Path::kP1, Path::kP2, bd_imperfection));
    net.append(beam_displacer_element(Path::kP4, Path::kP3, bd_imperfection));
    net.append(half_wave_plate_element({Path::kP2, Path::kP3}));
    net.append(beam_splitter_element(bs));
    net.append(half_wave_plate_element({Path::kP2, Path::kP3}));
    net.append(beam_displacer_element(Path::kP1, Path::kP2, bd_imperfection));
    net.append(beam_displacer_element(Path::kP4, Path::kP3, bd_imperfection));
    return net;
}

FockState evolve_two_photon(const FockState &input, const OpticalNetwork &net) {
    if (input.terms().empty()) {
        throw PhotonNumberMismatch("input state has no two-photon amplitude");
    }
    if (std::abs(input.norm_squared() - 1.0) > qmath::kNormTol) {
        throw InvalidState("two-photon input is not normalized");
    }
    const ComplexMatrix w = net.mode_unitary().adjoint();
    std::vector<Complex> out(kNumModes * kNumModes);
    for (const auto &[key, amp] : input.terms()) {
        const auto [k, l] = key;
        const Complex pre = k == l ? amp / kSqrt2 : amp;
        for (std::size_t m = 0; m < kNumModes; ++m) {
            const Complex wkm = w(k, m);
            const Complex wlm = w(l, m);
            if (wkm == Complex(0.0) && wlm == Complex(0.0)) {
                continue;
            }
            out[m * kNumModes + m] += pre * kSqrt2 * wkm * wlm;
            for (std::size_t n = m + 1; n < kNumModes; ++n) {
                out[m * kNumModes + n] += pre * (wkm * w(l, n) + w(k, n) * wlm);
            }
        }
    }
    FockState result;
    for (std::size_t m = 0; m < kNumModes; ++m) {
        for (std::size_t n = m; n < kNumModes; ++n) {
            if (out[m * kNumModes + n] != Complex(0.0)) {
                result.add(m, n, out[m * kNumModes + n]);
            }
        }
    }
    return result;
}

FockState prepare_product_input(double gamma) {
    require_probability(gamma, "overlap");
    const double s = 1.0 / kSqrt2;
    std::vector<Complex> a(kNumModes), b(kNumModes);
    a[Mode{Path::kP1, Polarization::kH, 0}.index()] = s;
    a[Mode{Path::kP1, Polarization::kV, 0}.index()] = s;
    const double orth = std::sqrt(1.0 - gamma * gamma);
    for (Polarization pol : {Polarization::kH, Polarization::kV}) {
        b[Mode{Path::kP4, pol, 0}.index()] = s * gamma;
        b[Mode{Path::kP4, pol, 1}.index()] = s * orth;
    }
    return FockState::from_creation(a, b);
}

PostSelection post_select_coincidence(const FockState &state) {
    // Photon A and B registers: (path bit, polarization bit, label), with the
    // polarization bit 0 for V and 1 for H.
    std::vector<Complex> psi(64);
    double mass = 0.0;
    for (const auto &[key, amp] : state.terms()) {
        Mode x = Mode::from_index(key.first);
        Mode y = Mode::from_index(key.second);
        if (logical_a(x.path) < 0) {
            std::swap(x, y);
        }
        const int pa = logical_a(x.path);
        const int pb = logical_b(y.path);
        if (pa < 0 || pb < 0) {
            continue;
        }
        auto reg = [](int path_bit, const Mode &m) {
            return (static_cast<std::size_t>(path_bit) * 2 + (m.polarization == Polarization::kH ? 1 : 0)) * 2 +
                   static_cast<std::size_t>(m.label);
        };
        psi[reg(pa, x) * 8 + reg(pb, y)] += amp;
        mass += std::norm(amp);
    }
    if (mass < 1e-14) {
        throw EmptyPostSelection("no amplitude survives coincidence post-selection");
    }
    ComplexMatrix rho = qmath::outer(psi, psi);
    rho *= 1.0 / mass;
    DensityMatrix full({2, 2, 2, 2, 2, 2}, std::move(rho));
    const std::array<std::size_t, 2> keep{1, 4};
    return {qmath::partial_trace(full, keep), mass};
}

std::array<Complex, 4> effective_gate_truth_table(const OpticalNetwork &net, Polarization pol) {
    const std::array<std::pair<Path, Path>, 4> inputs{
        {{Path::kP1, Path::kP3}, {Path::kP1, Path::kP4}, {Path::kP2, Path::kP3}, {Path::kP2, Path::kP4}}};
    std::array<Complex, 4> out{};
    for (std::size_t k = 0; k < 4; ++k) {
        Mode a{inputs[k].first, pol, 0};
        Mode b{inputs[k].second, pol, 0};
        out[k] = evolve_two_photon(FockState::basis(a, b), net).amplitude(a, b);
    }
    return out;
}

ComplexMatrix post_selected_operator(const OpticalNetwork &net, Polarization pol) {
    ComplexMatrix k(4, 4);
    for (int in = 0; in < 4; ++in) {
        FockState out = evolve_two_photon(
            FockState::basis(Mode{a_path(in >> 1), pol, 0}, Mode{b_path(in & 1), pol, 0}), net);
        for (int o = 0; o < 4; ++o) {
            k(static_cast<std::size_t>(o), static_cast<std::size_t>(in)) =
                out.amplitude(Mode{a_path(o >> 1), pol, 0}, Mode{b_path(o & 1), pol, 0});
        }
    }
    return k;
}

double process_fidelity(const ComplexMatrix &target, const ComplexMatrix &k) {
    if (target.rows() != k.rows() || target.cols() != k.cols()) {
        throw DimensionMismatch("process_fidelity operands differ in shape");
    }
    const double norm = (k.adjoint() * k).trace().real();
    if (!(norm > 0.0)) {
        return 0.0;
    }
    return std::norm((target.adjoint() * k).trace()) / (static_cast<double>(k.rows()) * norm);
}

std::array<double, 4> success_probabilities(const OpticalNetwork &net, Polarization pol) {
    std::array<double, 4> out{};
    for (int in = 0; in < 4; ++in) {
        FockState s = evolve_two_photon(
            FockState::basis(Mode{a_path(in >> 1), pol, 0}, Mode{b_path(in & 1), pol, 0}), net);
        try {
            out[static_cast<std::size_t>(in)] = post_select_coincidence(s).success_probability;
        } catch (const EmptyPostSelection &) {
            out[static_cast<std::size_t>(in)] = 0.0;
        }
    }
    return out;
}

double hom_coincidence(double gamma, const BsParams &bs, Polarization pol) {
    require_probability(gamma, "overlap");
    std::vector<Complex> a(kNumModes), b(kNumModes);
    a[Mode{Path::kP2, pol, 0}.index()] = 1.0;
    b[Mode{Path::kP3, pol, 0}.index()] = gamma;
    b[Mode{Path::kP3, pol, 1}.index()] = std::sqrt(1.0 - gamma * gamma);
    FockState out = evolve_two_photon(FockState::from_creation(a, b), build_cz_network(bs));
    double p = 0.0;
    for (const auto &[key, amp] : out.terms()) {
        Path x = Mode::from_index(key.first).path;
        Path y = Mode::from_index(key.second).path;
        if ((x == Path::kP2 && y == Path::kP3) || (x == Path::kP3 && y == Path::kP2)) {
            p += std::norm(amp);
        }
    }
    return p;
}

double hom_visibility(const BsParams &bs, Polarization pol) {
    const double p_dist = hom_coincidence(0.0, bs, pol);
    const double p_indist = hom_coincidence(1.0, bs, pol);
    if (!(p_dist > 0.0)) {
        throw OutOfRange("beam splitter has no distinguishable-photon coincidences");
    }
    return (p_dist - p_indist) / p_dist;
}

double infer_overlap_squared(double measured_visibility, double theoretical_visibility) {
    if (!(theoretical_visibility > 0.0)) {
        throw OutOfRange("theoretical visibility must be positive");
    }
    return measured_visibility / theoretical_visibility;
}

double overlap_from_delay(double delay_ps, double sigma_ps) {
    if (!(sigma_ps > 0.0)) {
        throw OutOfRange("coherence width must be positive");
    }
    if (std::isinf(delay_ps)) {
        return 0.0;
    }
    return std::exp(-delay_ps * delay_ps / (2.0 * sigma_ps * sigma_ps));
}

double delay_from_overlap(double gamma, double sigma_ps) {
    require_probability(gamma, "overlap");
    if (!(sigma_ps > 0.0)) {
        throw OutOfRange("coherence width must be positive");
    }
    if (gamma == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return sigma_ps * std::sqrt(-2.0 * std::log(gamma));
}

PipelineOutput run_pipeline(double gamma, const BsParams &bs, double bd_imperfection) {
    FockState out = evolve_two_photon(prepare_product_input(gamma), build_simulator_pipeline(bs, bd_imperfection));
    PostSelection ps = post_select_coincidence(out);
    return {ps.polarization, circuit::canonicalize_to_singlet(ps.polarization), ps.success_probability};
}

VisibilityFit fit_visibility(const DensityMatrix &canonical) {
    const DensityMatrix singlet = noise::singlet_state();
    const DensityMatrix dist = noise::rho_dist();
    const double overlap = (canonical.matrix() * singlet.matrix()).trace().real();
    const double v = std::clamp((4.0 * overlap - 1.0) / 3.0, 0.0, 1.0);
    const DensityMatrix model = noise::mix(singlet, dist, v);
    return {v, qmath::trace_distance(canonical.matrix(), model.matrix())};
}

nlohmann::json to_json(const OpticalNetwork &net) {
    nlohmann::json elements = nlohmann::json::array();
    for (const OpticalElement &e : net.elements()) {
        elements.push_back({{"kind", e.kind}, {"params", e.params}});
    }
    nlohmann::json modes = nlohmann::json::array();
    for (std::size_t i = 0; i < kNumModes; ++i) {
        Mode m = Mode::from_index(i);
        modes.push_back({{"index", i},
                         {"path", path_name(m.path)},
                         {"polarization", m.polarization == Polarization::kH ? "H" : "V"},
                         {"label", m.label}});
    }
    return {{"elements", elements}, {"modes", modes}, {"unitarity_error", qmath::unitarity_error(net.mode_unitary())}};
}

}  // namespace gmesim::photonic
