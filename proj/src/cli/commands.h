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

#ifndef GMESIM_CLI_COMMANDS_H
#define GMESIM_CLI_COMMANDS_H

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "gmesim/cli.h"

namespace gmesim::cli {

enum class Format { kCsv, kJson };

struct Context {
    ExperimentConfig config;
    Format format = Format::kCsv;
    std::ostream &out;
    std::ostream &err;
};

struct StateSpec {
    std::string name = "singlet";
    double eta = 0.0;
    double v = 1.0;
    std::optional<std::filesystem::path> file;
};

int cmd_circuit(const Context &ctx);
int cmd_photonic_verify(const Context &ctx);
int cmd_scan(const Context &ctx, const std::string &which);
int cmd_hom_scan(const Context &ctx);
int cmd_simulate_counts(const Context &ctx, const StateSpec &state);
int cmd_certify(const Context &ctx, const std::filesystem::path &input);

}  // namespace gmesim::cli

#endif
