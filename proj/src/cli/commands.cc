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

#include "commands.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "gmesim/certify.h"
#include "gmesim/circuit.h"
#include "gmesim/errors.h"
#include "gmesim/noise.h"
#include "gmesim/parallel.h"
#include "gmesim/photonic.h"
#include "gmesim/random.h"
#include "gmesim/tomography.h"

namespace gmesim::cli {

namespace {

using certify::matrix_to_json;
using qmath::Complex;
using qmath::ComplexMatrix;
using qmath::DensityMatrix;
using qmath::PureState;

constexpr double kSigmas = 3.0;

std::string num(double x) {
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    return fmt::format("{:.17g}", x);
}

nlohmann::json json_number(double x) {
    return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(num(x));
}

nlohmann::json complex_json(Complex z) {
    return {z.real(), z.imag()};
}

nlohmann::json amplitudes_json(std::span<const Complex> amps) {
    nlohmann::json arr = nlohmann::json::array();
    for (Complex z : amps) {
        arr.push_back(complex_json(z));
    }
    return arr;
}

std::filesystem::path output_path(const Context &ctx, const std::string &name) {
    std::filesystem::path dir(ctx.config.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    }
    return dir / name;
}

void write_file(const std::filesystem::path &path, const std::string &content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    f << content;
    if (!f) {
        throw IoError("failed writing " + path.string());
    }
}

void write_json(const Context &ctx, const std::string &command, const std::string &name, nlohmann::json body) {
    body["metadata"] = metadata(ctx.config, command);
    write_file(output_path(ctx, name), body.dump(2) + "\n");
    ctx.out << "wrote " << name << "\n";
}

std::string csv_preamble(const Context &ctx, const std::string &command) {
    const nlohmann::json meta = metadata(ctx.config, command);
    std::string s;
    for (const auto &[key, value] : meta.items()) {
        s += "# " + key + ": " + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
    }
    return s;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// Writes a table as CSV or as a JSON array of row objects, per --format.
void write_table(const Context &ctx, const std::string &command, const std::string &stem, const Table &t) {
    if (ctx.format == Format::kCsv) {
        std::string s = csv_preamble(ctx, command);
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            s += (c ? "," : "") + t.columns[c];
        }
        s += "\n";
        for (const auto &row : t.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                s += (c ? "," : "") + num(row[c]);
            }
            s += "\n";
        }
        write_file(output_path(ctx, stem + ".csv"), s);
        ctx.out << "wrote " << stem << ".csv\n";
        return;
    }
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &row : t.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            obj[t.columns[c]] = json_number(row[c]);
        }
        rows.push_back(obj);
    }
    write_json(ctx, command, stem + ".json", {{"columns", t.columns}, {"rows", rows}});
}

double min_eigenvalue(const certify::PptReport &r) {
    return r.eigenvalues[3];
}

// First crossing of zero from below, linearly interpolated; NaN if none.
double zero_crossing(const std::vector<double> &x, const std::vector<double> &y) {
    for (std::size_t k = 1; k < x.size(); ++k) {
        if (y[k - 1] < 0.0 && y[k] >= 0.0) {
            return x[k - 1] + (x[k] - x[k - 1]) * (-y[k - 1]) / (y[k] - y[k - 1]);
        }
    }
    return std::nan("");
}

DensityMatrix state_from_json(const nlohmann::json &doc) {
    try {
        if (doc.contains("rho")) {
            return DensityMatrix({2, 2}, certify::matrix_from_json(doc.at("rho")));
        }
        if (doc.contains("amplitudes")) {
            std::vector<Complex> amps;
            for (const auto &z : doc.at("amplitudes")) {
                amps.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
            }
            return DensityMatrix::from_pure(PureState({2, 2}, std::move(amps)));
        }
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("malformed state document: ") + e.what(), 0, 0);
    } catch (const Error &e) {
        throw ParseError(std::string("invalid state: ") + e.what(), 0, 0);
    }
    throw ParseError("state document needs a 'rho' or 'amplitudes' field", 1, 1);
}

nlohmann::json read_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError("malformed JSON in " + path.filename().string(), line, column);
    }
}

DensityMatrix named_state(const Context &ctx, const StateSpec &spec) {
    if (spec.file) {
        return state_from_json(read_json_file(*spec.file));
    }
    const double w = ctx.config.baseline_weight;
    if (spec.name == "singlet") {
        return noise::singlet_state();
    }
    if (spec.name == "dephased") {
        return noise::dephased_singlet(spec.eta);
    }
    if (spec.name == "baseline") {
        return noise::dephase(noise::baseline_state(w), {spec.eta});
    }
    if (spec.name == "distinguishable") {
        return noise::distinguishable_state({spec.v});
    }
    if (spec.name == "mixed") {
        return DensityMatrix::maximally_mixed({2, 2});
    }
    if (spec.name == "rho_mix") {
        return noise::rho_mix();
    }
    if (spec.name == "rho_dist") {
        return noise::rho_dist();
    }
    throw OutOfRange("unknown state '" + spec.name + "'");
}

}  // namespace

std::string entanglement_verdict(const Evidence &e) {
    if (!e.converged) {
        return "inconclusive";
    }
    if (e.chsh - kSigmas * e.chsh_sigma > 2.0) {
        return "certified_bell";
    }
    if (e.witness + kSigmas * e.witness_sigma < 0.0) {
        return "certified_witness";
    }
    if (e.pt_min_eigenvalue + kSigmas * e.pt_min_sigma < 0.0) {
        return "certified_ppt";
    }
    if (e.pt_min_eigenvalue >= -kSigmas * e.pt_min_sigma) {
        return "separable_certified";
    }
    return "inconclusive";
}

int cmd_circuit(const Context &ctx) {
    const ExperimentConfig &cfg = ctx.config;
    const circuit::GmeCircuit c =
        cfg.geometry_phases ? circuit::build_gme_circuit(*cfg.geometry_phases) : circuit::build_gme_circuit(cfg.phi);
    const PureState checkpoint = circuit::run_circuit_until(c, circuit::Stage::kFreeFall);
    const PureState final_state = circuit::run_circuit(c);
    const DensityMatrix spins = circuit::reduced_spin_state(final_state);
    const DensityMatrix canonical = circuit::canonicalize_to_singlet(spins);
    const nlohmann::json order = {"spin_a", "geometry_a", "geometry_b", "spin_b"};

    write_json(ctx, "circuit", "circuit.json", {{"circuit", circuit::to_json(c)}});
    write_json(ctx, "circuit", "state_full.json",
               {{"stage", circuit::stage_name(circuit::Stage::kFreeFall)},
                {"dims", checkpoint.dims()},
                {"qubit_order", order},
                {"amplitudes", amplitudes_json(checkpoint.amplitudes())},
                {"final_amplitudes", amplitudes_json(final_state.amplitudes())}});
    write_json(ctx, "circuit", "state_spins.json",
               {{"dims", spins.dims()},
                {"qubit_order", {"spin_a", "spin_b"}},
                {"rho", matrix_to_json(spins.matrix())},
                {"fidelity_to_ideal", qmath::fidelity_pure(spins, circuit::ideal_spin_state(c.phi()))}});
    write_json(ctx, "circuit", "state_canonical.json",
               {{"dims", canonical.dims()},
                {"rho", matrix_to_json(canonical.matrix())},
                {"rotation_qubit", 1},
                {"rotation", matrix_to_json(circuit::singlet_rotation())},
                {"literal_waveplate_rotation", matrix_to_json(circuit::literal_waveplate_rotation())},
                {"fidelity_to_singlet", qmath::fidelity_pure(canonical, circuit::singlet())}});

    const certify::PptReport ppt = certify::ppt_report(spins);
    const std::array<std::size_t, 2> spin_qubits{circuit::kSpinA, circuit::kSpinB};
    const DensityMatrix mid_spins = qmath::partial_trace(DensityMatrix::from_pure(checkpoint), spin_qubits);
    write_json(ctx, "circuit", "summary.json",
               {{"phi", c.phi()},
                {"witness", certify::witness_w(canonical)},
                {"chsh_fixed", certify::chsh(canonical, certify::singlet_optimal_chsh_settings())},
                {"chsh_max", certify::chsh_max(spins).value},
                {"negativity", ppt.negativity},
                {"ppt_eigenvalues", ppt.eigenvalues},
                {"fidelity_to_ideal", qmath::fidelity_pure(spins, circuit::ideal_spin_state(c.phi()))},
                {"spin_purity", spins.purity()},
                {"checkpoint_spin_entropy_bits", qmath::entropy_bits(mid_spins)}});
    return kExitOk;
}

int cmd_photonic_verify(const Context &ctx) {
    const ExperimentConfig &cfg = ctx.config;
    const photonic::BsParams bs = cfg.bs_params();
    const photonic::OpticalNetwork net = photonic::build_cz_network(bs);

    const std::array<const char *, 4> inputs{"1,3", "1,4", "2,3", "2,4"};
    nlohmann::json truth = nlohmann::json::object();
    std::array<double, 4> magnitudes{};
    for (auto pol : {photonic::Polarization::kH, photonic::Polarization::kV}) {
        const auto table = photonic::effective_gate_truth_table(net, pol);
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t k = 0; k < 4; ++k) {
            rows.push_back({{"paths", inputs[k]}, {"amplitude", complex_json(table[k])}});
            if (pol == photonic::Polarization::kV) {
                magnitudes[k] = std::abs(table[k]);
            }
        }
        truth[pol == photonic::Polarization::kH ? "H" : "V"] = rows;
    }
    const double max_mag = *std::max_element(magnitudes.begin(), magnitudes.end());
    const double min_mag = *std::min_element(magnitudes.begin(), magnitudes.end());
    const double spread = max_mag > 0.0 ? (max_mag - min_mag) / max_mag : 1.0;

    const ComplexMatrix k = photonic::post_selected_operator(net);
    const double fidelity = photonic::process_fidelity(circuit::controlled_phase(std::numbers::pi), k);
    const auto success = photonic::success_probabilities(net);

    std::vector<std::string> failures;
    if (!(fidelity >= cfg.cz_fidelity_threshold)) {
        failures.push_back(fmt::format("process fidelity {:.6g} below threshold {:.6g}", fidelity,
                                       cfg.cz_fidelity_threshold));
    }
    if (!(spread <= cfg.cz_magnitude_spread)) {
        failures.push_back(fmt::format("coincidence amplitude magnitudes ({:.6g}, {:.6g}, {:.6g}, {:.6g}) differ by "
                                       "{:.6g} relative, above {:.6g}",
                                       magnitudes[0], magnitudes[1], magnitudes[2], magnitudes[3], spread,
                                       cfg.cz_magnitude_spread));
    }
    const bool verified = failures.empty();
    std::string diagnostic = verified ? "post-selected gate matches CZ" : "CZ verification failed: ";
    for (std::size_t i = 0; i < failures.size(); ++i) {
        diagnostic += (i ? "; " : "") + failures[i];
    }

    const double v_theory = photonic::hom_visibility(bs);
    const double v_ideal = photonic::hom_visibility(photonic::BsParams::ideal());
    nlohmann::json pipeline = nlohmann::json::array();
    for (double g : cfg.gamma_grid) {
        const photonic::PipelineOutput o = photonic::run_pipeline(g, bs, cfg.bd_imperfection);
        const photonic::VisibilityFit fit = photonic::fit_visibility(o.canonical);
        pipeline.push_back({{"gamma", g},
                            {"delay_ps", json_number(photonic::delay_from_overlap(g, cfg.coherence_sigma_ps))},
                            {"v", fit.v},
                            {"family_residual", fit.residual},
                            {"success_probability", o.success_probability},
                            {"witness", certify::witness_w(o.canonical)},
                            {"pt_min_eigenvalue", min_eigenvalue(certify::ppt_report(o.canonical))}});
    }

    write_json(ctx, "photonic-verify", "photonic.json",
               {{"beam_splitter", {{"r_h", bs.r_h}, {"r_v", bs.r_v}}},
                {"network", photonic::to_json(net)},
                {"truth_table", truth},
                {"amplitude_spread", spread},
                {"success_probabilities", success},
                {"process_fidelity", fidelity},
                {"cz_verified", verified},
                {"diagnostic", diagnostic},
                {"hom",
                 {{"visibility", v_theory},
                  {"visibility_ideal_splitter", v_ideal},
                  {"measured_visibility", cfg.measured_visibility},
                  {"inferred_overlap_squared", photonic::infer_overlap_squared(cfg.measured_visibility, v_theory)}}},
                {"pipeline", pipeline}});

    Table hom{{"gamma", "delay_ps", "coincidence_prob"}, {}};
    for (double g : cfg.gamma_grid) {
        hom.rows.push_back(
            {g, photonic::delay_from_overlap(g, cfg.coherence_sigma_ps), photonic::hom_coincidence(g, bs)});
    }
    write_table(ctx, "photonic-verify", "hom_scan", hom);

    if (!verified) {
        ctx.err << diagnostic << "\n";
        return kExitVerification;
    }
    return kExitOk;
}

int cmd_scan(const Context &ctx, const std::string &which) {
    const ExperimentConfig &cfg = ctx.config;
    if (which != "eta" && which != "v") {
        throw OutOfRange("scan parameter must be 'eta' or 'v'");
    }
    const bool eta = which == "eta";
    const std::vector<double> &grid = eta ? cfg.eta_grid : cfg.v_grid;
    if (grid.empty()) {
        throw OutOfRange("scan grid is empty");
    }
    const DensityMatrix baseline = noise::baseline_state(cfg.baseline_weight);
    const bool sample = cfg.counts_per_setting > 0;
    const auto settings = certify::pauli_settings();

    auto models = [&](double x) {
        if (eta) {
            return std::pair{noise::dephased_singlet(x), noise::dephase(baseline, {x})};
        }
        return std::pair{noise::distinguishable_state({x}), noise::mix(baseline, noise::rho_dist(), x)};
    };

    const auto rows = parallel_map(grid.size(), [&](std::size_t i) {
        const double x = grid[i];
        const auto [ideal, base] = models(x);
        const certify::PptReport ppt = certify::ppt_report(ideal);
        const certify::PptReport ppt_base = certify::ppt_report(base);
        std::vector<double> row{x,
                                certify::witness_w(ideal),
                                certify::witness_w(base),
                                certify::chsh_max(ideal).value,
                                ppt.negativity,
                                min_eigenvalue(ppt),
                                certify::chsh_max(base).value,
                                ppt_base.negativity,
                                min_eigenvalue(ppt_base)};
        if (sample) {
            const auto data = certify::simulate_counts(base, settings, cfg.counts_per_setting,
                                                       derive_stream_seed(cfg.seed, i));
            const certify::TomographyResult r = certify::tomography_mle(data);
            row.insert(row.end(), {r.witness, r.chsh_max, r.negativity, r.ppt_eigenvalues[3],
                                   qmath::fidelity(r.rho_hat, base), r.converged ? 1.0 : 0.0});
        }
        return row;
    });

    Table t{{"param", "witness", "witness_baseline", "chsh_max", "negativity", "pt_min_eigenvalue",
             "chsh_max_baseline", "negativity_baseline", "pt_min_eigenvalue_baseline"},
            rows};
    if (sample) {
        t.columns.insert(t.columns.end(), {"mle_witness", "mle_chsh_max", "mle_negativity", "mle_pt_min_eigenvalue",
                                           "mle_fidelity", "mle_converged"});
    }
    write_table(ctx, "scan", "scan_" + which, t);

    std::vector<double> w_ideal, w_base;
    bool all_converged = true;
    for (const auto &r : rows) {
        w_ideal.push_back(r[1]);
        w_base.push_back(r[2]);
        if (sample && r.back() == 0.0) {
            all_converged = false;
        }
    }
    const double w_b = certify::witness_w(baseline);
    const double analytic = eta ? noise::baseline_witness_crossing(cfg.baseline_weight) : 1.0 / (1.0 - w_b);
    write_json(ctx, "scan", "scan_" + which + "_summary.json",
               {{"param", which},
                {"points", grid.size()},
                {"baseline_weight", cfg.baseline_weight},
                {"baseline_witness", w_b},
                {"witness_crossing", json_number(zero_crossing(grid, w_ideal))},
                {"witness_crossing_baseline", json_number(zero_crossing(grid, w_base))},
                {"witness_crossing_baseline_analytic", analytic},
                {"tomography", sample},
                {"all_converged", all_converged}});
    return all_converged ? kExitOk : kExitNoConvergence;
}

int cmd_hom_scan(const Context &ctx) {
    const ExperimentConfig &cfg = ctx.config;
    const photonic::BsParams bs = cfg.bs_params();
    Table t{{"gamma", "delay_ps", "coincidence_prob"}, {}};
    for (double g : cfg.gamma_grid) {
        t.rows.push_back({g, photonic::delay_from_overlap(g, cfg.coherence_sigma_ps), photonic::hom_coincidence(g, bs)});
    }
    write_table(ctx, "hom-scan", "hom_scan", t);
    const double v = photonic::hom_visibility(bs);
    write_json(ctx, "hom-scan", "hom_summary.json",
               {{"beam_splitter", {{"r_h", bs.r_h}, {"r_v", bs.r_v}}},
                {"coincidence_indistinguishable", photonic::hom_coincidence(1.0, bs)},
                {"coincidence_distinguishable", photonic::hom_coincidence(0.0, bs)},
                {"visibility", v},
                {"measured_visibility", cfg.measured_visibility},
                {"inferred_overlap_squared", photonic::infer_overlap_squared(cfg.measured_visibility, v)},
                {"coherence_sigma_ps", cfg.coherence_sigma_ps}});
    return kExitOk;
}

int cmd_simulate_counts(const Context &ctx, const StateSpec &state) {
    const ExperimentConfig &cfg = ctx.config;
    if (cfg.counts_per_setting < 1) {
        throw OutOfRange("counts_per_setting must be at least 1");
    }
    const DensityMatrix rho = named_state(ctx, state);
    const auto data = certify::simulate_counts(rho, certify::pauli_settings(), cfg.counts_per_setting, cfg.seed);
    if (ctx.format == Format::kCsv) {
        std::ostringstream s;
        s << csv_preamble(ctx, "simulate-counts");
        certify::write_counts_csv(s, data);
        write_file(output_path(ctx, "counts.csv"), s.str());
        ctx.out << "wrote counts.csv\n";
    } else {
        write_json(ctx, "simulate-counts", "counts.json",
                   {{"state", matrix_to_json(rho.matrix())}, {"counts", certify::counts_to_json(data)}});
    }
    return kExitOk;
}

int cmd_certify(const Context &ctx, const std::filesystem::path &input) {
    const ExperimentConfig &cfg = ctx.config;
    std::vector<certify::CountsRecord> data;
    std::optional<DensityMatrix> target;
    std::string kind;
    if (input.extension() == ".json") {
        if (cfg.counts_per_setting < 1) {
            throw OutOfRange("counts_per_setting must be at least 1");
        }
        target = state_from_json(read_json_file(input));
        data = certify::simulate_counts(*target, certify::pauli_settings(), cfg.counts_per_setting, cfg.seed);
        kind = "state";
    } else {
        std::ifstream in(input);
        if (!in) {
            throw IoError("cannot open " + input.string());
        }
        data = certify::read_counts_csv(in);
        kind = "counts";
    }

    certify::TomographyResult mle = certify::tomography_mle(data);
    if (target) {
        certify::set_target(mle, *target);
    }
    const certify::ErrorIntervals errors =
        certify::monte_carlo_errors(data, cfg.mc_replicas, derive_stream_seed(cfg.seed, 1u << 20), target);
    mle.error_intervals = errors;

    nlohmann::json direct = nullptr;
    Evidence ev{mle.chsh_fixed, errors.chsh_fixed, mle.witness, errors.witness, mle.ppt_eigenvalues[3],
                errors.ppt_eigenvalues[3], mle.converged};
    try {
        const certify::PauliEstimate est = certify::estimate_pauli(data);
        const double w = certify::witness_from_correlations(est.correlations);
        const double s = certify::chsh_from_correlations(est.correlations, certify::singlet_optimal_chsh_settings());
        direct = {{"witness", w},
                  {"chsh_fixed", s},
                  {"chsh_max", certify::chsh_max_from_correlations(est.correlations).value},
                  {"correlations", est.correlations}};
        ev.witness = w;
        ev.witness_sigma = errors.witness_direct;
        ev.chsh = s;
        ev.chsh_sigma = errors.chsh_direct;
    } catch (const MissingSetting &) {
        // Non-Pauli data: fall back to the reconstructed state.
    }
    const std::string verdict = entanglement_verdict(ev);

    write_json(ctx, "certify", "certify.json",
               {{"input", {{"kind", kind}, {"name", input.filename().string()}, {"settings", data.size()}}},
                {"entanglement_verdict", verdict},
                {"evidence",
                 {{"chsh", ev.chsh},
                  {"chsh_sigma", ev.chsh_sigma},
                  {"witness", ev.witness},
                  {"witness_sigma", ev.witness_sigma},
                  {"pt_min_eigenvalue", ev.pt_min_eigenvalue},
                  {"pt_min_sigma", ev.pt_min_sigma},
                  {"sigma_multiplier", kSigmas}}},
                {"direct", direct},
                {"tomography", certify::to_json(mle)}});
    ctx.out << "entanglement_verdict: " << verdict << "\n";
    if (!mle.converged) {
        ctx.err << "maximum-likelihood reconstruction did not converge\n";
        return kExitNoConvergence;
    }
    return kExitOk;
}

}  // namespace gmesim::cli
