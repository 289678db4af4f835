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

#include <openssl/sha.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "gmesim/circuit.h"
#include "gmesim/cli.h"
#include "gmesim/errors.h"

namespace gmesim::cli {

namespace {

std::vector<double> unit_grid(int intervals) {
    std::vector<double> g;
    for (int k = 0; k <= intervals; ++k) {
        g.push_back(static_cast<double>(k) / intervals);
    }
    return g;
}

void require_grid(const std::vector<double> &grid, const char *name) {
    if (grid.empty()) {
        throw OutOfRange(std::string(name) + " must not be empty");
    }
    for (double x : grid) {
        if (!(x >= 0.0 && x <= 1.0)) {
            throw OutOfRange(std::string(name) + " entries must lie in [0, 1]");
        }
    }
}

// 1-based line and column of a byte offset.
std::pair<std::size_t, std::size_t> locate(const std::string &text, std::size_t offset) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

ExperimentConfig parse_fields(const nlohmann::json &doc, const std::string &text) {
    if (!doc.is_object()) {
        throw ParseError("config must be a JSON object", 1, 1);
    }
    ExperimentConfig c;
    for (const auto &[key, value] : doc.items()) {
        try {
            if (key == "phi") {
                c.phi = value.get<double>();
            } else if (key == "geometry_phases") {
                c.geometry_phases = value.is_null() ? std::nullopt
                                                    : std::optional<std::array<double, 4>>(
                                                          value.get<std::array<double, 4>>());
            } else if (key == "eta_grid") {
                c.eta_grid = value.get<std::vector<double>>();
            } else if (key == "v_grid") {
                c.v_grid = value.get<std::vector<double>>();
            } else if (key == "gamma_grid") {
                c.gamma_grid = value.get<std::vector<double>>();
            } else if (key == "bs") {
                c.bs = value.get<std::string>();
            } else if (key == "reflectivity") {
                c.reflectivity = value.is_null() ? std::nullopt : std::optional<double>(value.get<double>());
            } else if (key == "bd_imperfection") {
                c.bd_imperfection = value.get<double>();
            } else if (key == "coherence_sigma_ps") {
                c.coherence_sigma_ps = value.get<double>();
            } else if (key == "measured_visibility") {
                c.measured_visibility = value.get<double>();
            } else if (key == "cz_fidelity_threshold") {
                c.cz_fidelity_threshold = value.get<double>();
            } else if (key == "cz_magnitude_spread") {
                c.cz_magnitude_spread = value.get<double>();
            } else if (key == "counts_per_setting") {
                c.counts_per_setting = value.get<std::uint64_t>();
            } else if (key == "mc_replicas") {
                c.mc_replicas = value.get<int>();
            } else if (key == "seed") {
                c.seed = value.get<std::uint64_t>();
            } else if (key == "baseline_weight") {
                c.baseline_weight = value.get<double>();
            } else if (key == "output_dir") {
                c.output_dir = value.get<std::string>();
            } else {
                throw std::invalid_argument("unknown config key");
            }
        } catch (const std::exception &e) {
            std::size_t at = text.find("\"" + key + "\"");
            auto [line, column] = at == std::string::npos ? std::pair<std::size_t, std::size_t>{0, 0} : locate(text, at);
            throw ParseError("config key '" + key + "': " + e.what(), line, column);
        }
    }
    return c;
}

}  // namespace

ExperimentConfig::ExperimentConfig()
    : phi(std::numbers::pi), eta_grid(unit_grid(100)), v_grid(unit_grid(100)), gamma_grid(unit_grid(20)) {}

photonic::BsParams ExperimentConfig::bs_params() const {
    if (reflectivity) {
        return photonic::BsParams::uniform(*reflectivity);
    }
    if (bs == "ideal") {
        return photonic::BsParams::ideal();
    }
    if (bs == "experimental") {
        return photonic::BsParams::experimental();
    }
    throw OutOfRange("bs must be 'ideal' or 'experimental'");
}

void validate(const ExperimentConfig &c) {
    if (!std::isfinite(c.phi)) {
        throw OutOfRange("phi must be finite");
    }
    if (c.geometry_phases) {
        for (double p : *c.geometry_phases) {
            if (!std::isfinite(p)) {
                throw OutOfRange("geometry_phases must be finite");
            }
        }
    }
    require_grid(c.eta_grid, "eta_grid");
    require_grid(c.v_grid, "v_grid");
    require_grid(c.gamma_grid, "gamma_grid");
    c.bs_params();
    if (c.reflectivity && !(*c.reflectivity >= 0.0 && *c.reflectivity <= 1.0)) {
        throw OutOfRange("reflectivity must lie in [0, 1]");
    }
    if (!(c.bd_imperfection >= 0.0 && c.bd_imperfection <= 1.0)) {
        throw OutOfRange("bd_imperfection must lie in [0, 1]");
    }
    if (!(c.coherence_sigma_ps > 0.0) || !std::isfinite(c.coherence_sigma_ps)) {
        throw OutOfRange("coherence_sigma_ps must be positive");
    }
    if (!(c.measured_visibility >= 0.0 && c.measured_visibility <= 1.0)) {
        throw OutOfRange("measured_visibility must lie in [0, 1]");
    }
    if (!(c.cz_fidelity_threshold >= 0.0 && c.cz_fidelity_threshold <= 1.0)) {
        throw OutOfRange("cz_fidelity_threshold must lie in [0, 1]");
    }
    if (!(c.cz_magnitude_spread >= 0.0)) {
        throw OutOfRange("cz_magnitude_spread must be non-negative");
    }
    if (c.mc_replicas < 2) {
        throw OutOfRange("mc_replicas must be at least 2");
    }
    if (!(c.baseline_weight >= 0.0 && c.baseline_weight <= 1.0)) {
        throw OutOfRange("baseline_weight must lie in [0, 1]");
    }
}

ExperimentConfig config_from_json(const nlohmann::json &doc) {
    return parse_fields(doc, doc.dump());
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        auto [line, column] = locate(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError("malformed config JSON", line, column);
    }
    return parse_fields(doc, text);
}

nlohmann::json to_json(const ExperimentConfig &c) {
    nlohmann::json doc{{"phi", c.phi},
                       {"eta_grid", c.eta_grid},
                       {"v_grid", c.v_grid},
                       {"gamma_grid", c.gamma_grid},
                       {"bs", c.bs},
                       {"bd_imperfection", c.bd_imperfection},
                       {"coherence_sigma_ps", c.coherence_sigma_ps},
                       {"measured_visibility", c.measured_visibility},
                       {"cz_fidelity_threshold", c.cz_fidelity_threshold},
                       {"cz_magnitude_spread", c.cz_magnitude_spread},
                       {"counts_per_setting", c.counts_per_setting},
                       {"mc_replicas", c.mc_replicas},
                       {"seed", c.seed},
                       {"baseline_weight", c.baseline_weight},
                       {"output_dir", c.output_dir}};
    doc["geometry_phases"] = c.geometry_phases ? nlohmann::json(*c.geometry_phases) : nlohmann::json(nullptr);
    doc["reflectivity"] = c.reflectivity ? nlohmann::json(*c.reflectivity) : nlohmann::json(nullptr);
    return doc;
}

std::string config_hash(const ExperimentConfig &c) {
    nlohmann::json doc = to_json(c);
    doc.erase("output_dir");
    const std::string canonical = doc.dump();
    unsigned char digest[SHA256_DIGEST_LENGTH];
    SHA256(reinterpret_cast<const unsigned char *>(canonical.data()), canonical.size(), digest);
    static const char *kHex = "0123456789abcdef";
    std::string out;
    for (unsigned char b : digest) {
        out.push_back(kHex[b >> 4]);
        out.push_back(kHex[b & 0xf]);
    }
    return out;
}

nlohmann::json metadata(const ExperimentConfig &c, const std::string &command) {
    return {{"command", command},
            {"config_hash", config_hash(c)},
            {"seed", c.seed},
            {"version", kVersion},
            {"basis_convention", circuit::BasisConvention::describe()}};
}

}  // namespace gmesim::cli
