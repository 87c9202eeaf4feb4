// Copyright 2026 The eosim Authors
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


#ifndef EOSIM_TOOLS_EXPERIMENT_H
#define EOSIM_TOOLS_EXPERIMENT_H

#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace eosim::cli {

/// Anything wrong with the config itself. Maps to exit status 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Result files held in memory until the whole run has succeeded.
struct RunOutput {
    std::vector<std::pair<std::string, std::string>> files;
};

/// Reads a config file. A manifest written by a previous run is accepted too
/// and yields the config it recorded.
nlohmann::json load_config(const std::filesystem::path &path);

/// Dispatches on config["experiment"]. Relative device paths resolve
/// against base_dir.
RunOutput run_experiment(const nlohmann::json &config, const std::filesystem::path &base_dir);

/// Adds manifest.json and writes everything with write-then-rename.
void write_outputs(const std::filesystem::path &dir, const nlohmann::json &config, RunOutput out);

std::string fnv1a_hex(const std::string &bytes);

/// Entry point shared by the eosim binary: returns the exit status.
int main(int argc, char **argv);

}  // namespace eosim::cli

#endif
