// Copyright 2026 The telexp Authors
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

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "telexp/errors.hpp"
#include "telexp/expansion.hpp"
#include "telexp/protocol.hpp"

namespace telexp::cli {

enum class Mode { Extract, Verify, RunExhaustive, RunSampled };
enum class OutputFormat { Text, Structured };

/// Channel vectors within this distance of unit norm are accepted and
/// rescaled; anything further needs --normalize.
inline constexpr double kChannelNormTolerance = 1e-9;

struct RunConfig {
    std::array<double, 4> channel{0.5, 0.5, 0.5, 0.5};
    std::optional<std::array<Amplitude, 4>> input;
    Mode mode = Mode::RunExhaustive;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    OutputFormat format = OutputFormat::Text;
    bool normalize = false;
    std::optional<std::string> out_path;
};

/// Bad command line; main maps this to exit code 2.
class UsageError : public Error {
  public:
    using Error::Error;
};

/// --help was given; what() holds the help text.
class HelpRequested : public Error {
  public:
    using Error::Error;
};

/// argv[0] is the program name.
RunConfig parse_args(const std::vector<std::string>& argv);

ChannelSpec resolve_channel(const RunConfig& config);
/// Explicit input, or a random one drawn from the config seed.
InputState resolve_input(const RunConfig& config);

struct Check {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

std::vector<Check> verify_all(const ChannelSpec& channel, const InputState& input,
                              std::uint64_t seed);

std::string render_sigma_table(const ChannelSpec& channel, OutputFormat format);
std::string render_report(const TeleportReport& report, const ChannelSpec& channel,
                          const InputState& input, OutputFormat format);
std::string render_checks(const std::vector<Check>& checks, const ChannelSpec& channel,
                          OutputFormat format);

/// Runs the configured mode and returns the rendered output.
std::string execute(const RunConfig& config);

/// Full program: parse, execute, write. Returns the process exit code
/// (0 ok, 1 runtime/IO error, 2 usage error).
int run_main(const std::vector<std::string>& argv);

}  // namespace telexp::cli
