#pragma once

// Text serializations of simulator results. CSV uses 12 significant digits,
// '.' as decimal separator and LF line endings so files are bit-stable.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "mmi/analysis.hpp"
#include "mmi/fock.hpp"
#include "mmi/modal.hpp"
#include "mmi/multiport.hpp"

namespace mmi {

std::string format_number(double v);

/// Rows are x positions; header "x" followed by one column per z value.
std::string intensity_csv(const IntensityMap& map);

/// N rows of 2N columns, real and imaginary parts interleaved.
std::string matrix_csv(const TransferMatrix& t);
nlohmann::json matrix_json(const TransferMatrix& t);

/// List of {config, re, im}.
nlohmann::json state_json(const MultiPhotonState& state);

/// N x N grid with one-based port headers.
std::string correlation_csv(const CorrelationMatrix& c);

/// Header "phi,C_1_1,C_1_2,...".
std::string sweep_csv(const CorrelationSweep& sweep);

/// Per-pair fit results plus the curve grouping.
nlohmann::json fits_json(const CorrelationSweep& sweep, const std::vector<CurveGroup>& groups);

void write_text(const std::filesystem::path& path, const std::string& text);

// SVG renderings; appearance is informative only.
std::string intensity_svg(const IntensityMap& map);
std::string sweep_svg(const CorrelationSweep& sweep);
std::string correlation_maps_svg(const std::vector<std::pair<std::string, CorrelationMatrix>>& maps);

} // namespace mmi
