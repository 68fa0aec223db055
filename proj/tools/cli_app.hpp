#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mmi/modal.hpp"

namespace mmi::cli {

enum ExitCode : int { kOk = 0, kInvalidConfig = 2, kModelBreakdown = 3 };

struct RunConfig {
    std::string command;
    int ports = 2;
    std::optional<int> q;
    std::optional<std::string> zeta;
    std::optional<std::string> inputs; // "i,j"
    int phi_samples = 64;
    double background = 0.0;
    double noise = 0.0;
    std::uint64_t seed = 1;
    int modes = WaveguideSpec::kDefaultModes;
    int grid = WaveguideSpec::kDefaultGridPoints;
    double width = WaveguideSpec::kDefaultWidth;
    double wavelength = WaveguideSpec::kDefaultWavelength;
    std::optional<double> sigma;
    std::optional<int> port;
    int z_samples = 201;
    int x_samples = 256;
    std::string out = "out";
    std::string format = "all";
};

/// Parses "a/b" or a decimal; throws InvalidInput on garbage.
double parse_fraction(const std::string& text);

/// q implied by --q and/or --zeta for an N-port device (zeta = q / 4N).
int resolve_quarter_steps(const RunConfig& config, int default_q);

/// Entry point shared by the executable and the tests; returns the exit code.
int run(const std::vector<std::string>& args);

} // namespace mmi::cli
