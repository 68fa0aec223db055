#pragma once

// Phase sweeps of two-photon correlations for NOON inputs, fixed-period
// sinusoid fits, fringe visibility and the grouping of curves that oscillate
// together.

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mmi/fock.hpp"
#include "mmi/multiport.hpp"

namespace mmi {

/// Unordered output (or input) port pair, one-based, m <= n for outputs.
struct PortPair {
    int m = 1;
    int n = 2;

    friend auto operator<=>(const PortPair&, const PortPair&) = default;
};

/// All pairs m <= n of an N-port device in row-major order: (1,1), (1,2), ..., (N,N).
std::vector<PortPair> port_pairs(int ports);

/// `samples` uniform phases over [0, 2 pi).
std::vector<double> phase_grid(int samples = 64);

struct SweepInfo {
    int ports = 0;
    std::optional<int> quarter_steps;
    PortPair inputs;
    double background = 0.0;
    double noise = 0.0;
};

/// C(phi) for every output pair, sampled on a common phase grid.
class CorrelationSweep {
public:
    CorrelationSweep(std::vector<double> phi, std::vector<PortPair> pairs, std::vector<std::vector<double>> curves,
                     SweepInfo info);

    [[nodiscard]] const std::vector<double>& phi() const { return phi_; }
    [[nodiscard]] const std::vector<PortPair>& pairs() const { return pairs_; }
    [[nodiscard]] const std::vector<std::vector<double>>& curves() const { return curves_; }
    [[nodiscard]] const std::vector<double>& curve(PortPair pair) const;
    [[nodiscard]] const SweepInfo& info() const { return info_; }

private:
    std::vector<double> phi_;
    std::vector<PortPair> pairs_;
    std::vector<std::vector<double>> curves_;
    SweepInfo info_;
};

CorrelationSweep sweep_phase(const TransferMatrix& t, PortPair inputs, std::span<const double> phi_grid);

/// offset + amplitude * cos(phi - phase), period fixed at 2 pi.
struct SinusoidFit {
    double offset = 0.0;
    double amplitude = 0.0;
    double phase = 0.0; // [0, 2 pi)
    double rms = 0.0;
    bool degenerate = false;

    [[nodiscard]] double operator()(double phi) const;
};

SinusoidFit fit_sinusoid(std::span<const double> phi, std::span<const double> values);

inline constexpr double kClassicalVisibilityBound = 0.5;

struct Visibility {
    double value = 0.0;
    bool nonclassical = false; // value > kClassicalVisibilityBound
};

/// B / A, i.e. (max - min) / (max + min) of the fitted fringe.
Visibility visibility(const SinusoidFit& fit);

/// Adds a constant floor beta to every curve.
CorrelationSweep apply_background(const CorrelationSweep& sweep, double beta);

/// Adds uniform noise in [-amplitude, amplitude] from a seeded generator,
/// clamping at zero. Same seed, same output.
CorrelationSweep add_noise(const CorrelationSweep& sweep, double amplitude, std::uint64_t seed);

/// Full symmetric C matrix at one input phase.
CorrelationMatrix correlation_map(const TransferMatrix& t, PortPair inputs, double phi);

/// Curves that coincide: same offset and same (cos, sin) coefficients within tol.
/// Degenerate (flat) curves are grouped by offset and flagged constant.
struct CurveGroup {
    double offset = 0.0;
    double amplitude = 0.0;
    double phase = 0.0;
    bool constant = false;
    std::vector<PortPair> members;
    std::vector<double> member_phases;
};

std::vector<CurveGroup> classify_curve_groups(const CorrelationSweep& sweep, double tol);

/// Non-constant groups merged by fitted phase alone.
struct PhaseClass {
    double phase = 0.0;
    std::vector<PortPair> members;
};

std::vector<PhaseClass> phase_classes(const std::vector<CurveGroup>& groups, double phase_tol);

/// Distance between two angles on the circle, in [0, pi].
double circular_distance(double a, double b);

/// `count` groups of `size` curves each, with phases spaced by 2 pi / count.
bool has_cyclic_grouping(const std::vector<CurveGroup>& groups, int count, int size, double phase_tol);

/// Two phase classes a half period apart: one holding every autocorrelation
/// and every mirror-symmetric cross (m, N + 1 - m), the other every other cross.
bool has_antiphase_classes(const std::vector<PhaseClass>& classes, int ports, double phase_tol);

struct InputScan {
    PortPair chosen;
    std::vector<std::pair<PortPair, bool>> log;
};

/// Tries input pairs in order (mirror-symmetric pairs outermost first, then
/// lexicographic) and returns the first accepted by `accept`.
InputScan scan_input_ports(const TransferMatrix& t, const std::function<bool(const CorrelationSweep&)>& accept);

/// Default NOON input ports for an N-port device: (1,2) for N = 2, the outer
/// ports for N = 3, and for N = 4, 5 the first pair reproducing the phase
/// grouping of the equal splitter (zeta = 1/8 and 1/5). Falls back to (1, N).
InputScan default_input_ports(int ports, const WaveguideSpec& spec);

} // namespace mmi
