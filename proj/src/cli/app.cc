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

#include <algorithm>
#include <functional>
#include <memory>
#include <ostream>

#include "CLI11.hpp"
#include "commands.h"
#include "gmesim/errors.h"

namespace gmesim::cli {

namespace {

// "--field-name,--field_name" for a config field.
std::string flag_names(const std::string &field) {
    std::string dashed = field;
    std::replace(dashed.begin(), dashed.end(), '_', '-');
    return dashed == field ? "--" + field : "--" + dashed + ",--" + field;
}

// Config overrides collected from flags and applied after the config file.
class Overrides {
   public:
    template <typename T>
    CLI::Option *add(CLI::App &app, const std::string &names, T ExperimentConfig::*member, const std::string &help) {
        auto value = std::make_shared<T>();
        CLI::Option *opt = app.add_option(names, *value, help);
        setters_.push_back([opt, value, member](ExperimentConfig &c) {
            if (opt->count() > 0) {
                c.*member = *value;
            }
        });
        return opt;
    }

    template <typename T>
    CLI::Option *add(CLI::App &app, const std::string &names, std::optional<T> ExperimentConfig::*member,
                     const std::string &help) {
        auto value = std::make_shared<T>();
        CLI::Option *opt = app.add_option(names, *value, help);
        setters_.push_back([opt, value, member](ExperimentConfig &c) {
            if (opt->count() > 0) {
                c.*member = *value;
            }
        });
        return opt;
    }

    void apply(ExperimentConfig &c) const {
        for (const auto &s : setters_) {
            s(c);
        }
    }

   private:
    std::vector<std::function<void(ExperimentConfig &)>> setters_;
};

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Simulation and certification of spin-entanglement witness experiments", "gmesim"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(kVersion));

    std::string config_path;
    std::string format = "csv";
    app.add_option("--config", config_path, "JSON experiment config");
    app.add_option("--format", format, "Tabular output format")->check(CLI::IsMember({"csv", "json"}));

    Overrides ov;
    ov.add(app, flag_names("seed"), &ExperimentConfig::seed, "Random seed");
    ov.add(app, "--out,--output-dir,--output_dir", &ExperimentConfig::output_dir, "Output directory");
    ov.add(app, flag_names("phi"), &ExperimentConfig::phi, "Gravitational phase (radians)");
    ov.add(app, flag_names("geometry_phases"), &ExperimentConfig::geometry_phases,
           "Phases of the four geometry branches")
        ->delimiter(',');
    ov.add(app, flag_names("eta_grid"), &ExperimentConfig::eta_grid, "Dephasing grid")->delimiter(',');
    ov.add(app, flag_names("v_grid"), &ExperimentConfig::v_grid, "Distinguishability grid")->delimiter(',');
    ov.add(app, flag_names("gamma_grid"), &ExperimentConfig::gamma_grid, "Photon overlap grid")->delimiter(',');
    ov.add(app, flag_names("bs"), &ExperimentConfig::bs, "Beam-splitter preset (ideal, experimental)");
    ov.add(app, flag_names("reflectivity"), &ExperimentConfig::reflectivity, "Uniform beam-splitter reflectivity");
    ov.add(app, flag_names("bd_imperfection"), &ExperimentConfig::bd_imperfection, "Beam-displacer imperfection");
    ov.add(app, flag_names("coherence_sigma_ps"), &ExperimentConfig::coherence_sigma_ps,
           "Gaussian wavepacket width for delay <-> overlap (ps)");
    ov.add(app, flag_names("measured_visibility"), &ExperimentConfig::measured_visibility,
           "Measured HOM visibility");
    ov.add(app, flag_names("cz_fidelity_threshold"), &ExperimentConfig::cz_fidelity_threshold,
           "Minimum CZ process fidelity");
    ov.add(app, flag_names("cz_magnitude_spread"), &ExperimentConfig::cz_magnitude_spread,
           "Maximum relative spread of CZ amplitude magnitudes");
    ov.add(app, flag_names("counts_per_setting"), &ExperimentConfig::counts_per_setting,
           "Mean counts per measurement setting");
    ov.add(app, flag_names("mc_replicas"), &ExperimentConfig::mc_replicas, "Monte Carlo replicas");
    ov.add(app, flag_names("baseline_weight"), &ExperimentConfig::baseline_weight, "Singlet weight of the baseline");

    CLI::App *circuit = app.add_subcommand("circuit", "Run the spin-geometry circuit");
    CLI::App *verify = app.add_subcommand("photonic-verify", "Verify the post-selected photonic CZ gate");
    CLI::App *scan = app.add_subcommand("scan", "Scan the dephasing or distinguishability parameter");
    std::string param;
    scan->add_option("--param", param, "Parameter to scan")->required()->check(CLI::IsMember({"eta", "v"}));
    CLI::App *hom = app.add_subcommand("hom-scan", "Two-photon interference scan");
    CLI::App *cert = app.add_subcommand("certify", "Run the certification battery on counts or a state");
    std::string input;
    cert->add_option("input,--input", input, "Counts CSV or state JSON")->required();
    CLI::App *simulate = app.add_subcommand("simulate-counts", "Simulate Pauli-setting counts");
    StateSpec state;
    std::string state_file;
    simulate
        ->add_option("--state", state.name, "singlet, dephased, baseline, distinguishable, mixed, rho_mix, rho_dist")
        ->check(CLI::IsMember({"singlet", "dephased", "baseline", "distinguishable", "mixed", "rho_mix", "rho_dist"}));
    simulate->add_option("--eta", state.eta, "Dephasing for dephased/baseline states");
    simulate->add_option("--v", state.v, "Visibility for the distinguishable state");
    simulate->add_option("--state-file,--state_file", state_file, "State JSON (rho or amplitudes)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }
    if (!state_file.empty()) {
        state.file = state_file;
    }

    try {
        ExperimentConfig config = config_path.empty() ? ExperimentConfig() : load_config(config_path);
        ov.apply(config);
        validate(config);
        Context ctx{config, format == "json" ? Format::kJson : Format::kCsv, out, err};
        if (*circuit) {
            return cmd_circuit(ctx);
        }
        if (*verify) {
            return cmd_photonic_verify(ctx);
        }
        if (*scan) {
            return cmd_scan(ctx, param);
        }
        if (*hom) {
            return cmd_hom_scan(ctx);
        }
        if (*cert) {
            return cmd_certify(ctx, input);
        }
        if (*simulate) {
            return cmd_simulate_counts(ctx, state);
        }
    } catch (const ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const OutOfRange &e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}

}  // namespace gmesim::cli
