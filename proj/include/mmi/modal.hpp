#pragma once

/**
 * Scalar field propagation in an ideal planar waveguide bounded by two
 * perfect mirrors at x = -D/2 and x = +D/2.
 *
 * A field is expanded in the wall-vanishing modes
 *
 *     phi_n(x) = sqrt(2/D) sin[n pi (x - D/2) / D],   n = 1 .. n_max
 *
 * and mode n accumulates the phase exp(i 2 pi n^2 z / z0) with
 * z0 = 8 D^2 / lambda. The common factor exp(-i k z) is tracked separately
 * and never enters intensities or overlap moduli.
 *
 * Transverse profiles live on a uniform grid of G points that includes both
 * walls. On that grid the sampled modes are exactly orthonormal under the
 * trapezoid rule for n < G - 1, so decompose/reconstruct are exact inverses
 * on the retained subspace.
 */

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mmi {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Exact rational relative length zeta = num / den (device length over z0).
struct RelativeLength {
    long num = 0;
    long den = 1;

    [[nodiscard]] double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    [[nodiscard]] RelativeLength reduced() const;
    /// "num/den" in lowest terms.
    [[nodiscard]] std::string str() const;
};

class WaveguideSpec {
public:
    static constexpr double kDefaultWidth = 50e-6;
    static constexpr double kDefaultWavelength = 808e-9;
    static constexpr int kDefaultModes = 400;
    static constexpr int kDefaultGridPoints = 4096;

    WaveguideSpec(double width = kDefaultWidth, double wavelength = kDefaultWavelength,
                  int mode_cutoff = kDefaultModes, int grid_points = kDefaultGridPoints);

    [[nodiscard]] double width() const { return width_; }
    [[nodiscard]] double wavelength() const { return wavelength_; }
    [[nodiscard]] int mode_cutoff() const { return mode_cutoff_; }
    [[nodiscard]] int grid_points() const { return grid_points_; }

    /// z0 = 8 D^2 / lambda, the self-imaging length.
    [[nodiscard]] double self_imaging_length() const { return 8.0 * width_ * width_ / wavelength_; }
    [[nodiscard]] double wavenumber() const { return 2.0 * kPi / wavelength_; }

    [[nodiscard]] double grid_spacing() const { return width_ / (grid_points_ - 1); }
    [[nodiscard]] double grid_x(int j) const { return -0.5 * width_ + j * grid_spacing(); }
    [[nodiscard]] std::vector<double> grid() const;

    /// Normalized mode n evaluated at an arbitrary transverse position.
    [[nodiscard]] double mode_value(int n, double x) const;

    friend bool operator==(const WaveguideSpec&, const WaveguideSpec&) = default;

private:
    double width_;
    double wavelength_;
    int mode_cutoff_;
    int grid_points_;
};

/// Complex field sampled on the spec's transverse grid.
class TransverseProfile {
public:
    TransverseProfile(const WaveguideSpec& spec, std::vector<cplx> samples);

    /// Samples f(x) at every grid point.
    static TransverseProfile sample(const WaveguideSpec& spec, const std::function<cplx(double)>& f);

    [[nodiscard]] const std::vector<cplx>& samples() const { return samples_; }
    [[nodiscard]] double spacing() const { return spacing_; }
    [[nodiscard]] int size() const { return static_cast<int>(samples_.size()); }

    /// Trapezoid-rule L2 norm.
    [[nodiscard]] double norm() const;
    [[nodiscard]] TransverseProfile normalized() const;
    /// f(x) -> f(-x); exact on the symmetric grid.
    [[nodiscard]] TransverseProfile mirrored() const;
    [[nodiscard]] std::vector<double> intensity() const;

private:
    std::vector<cplx> samples_;
    double spacing_;
};

/// Unit-norm Gaussian with field amplitude exp(-(x - center)^2 / (2 sigma^2)),
/// clipped at the walls.
TransverseProfile gaussian_profile(const WaveguideSpec& spec, double center, double sigma);

/// Mode n sampled on the grid (already unit-norm).
TransverseProfile mode_profile(const WaveguideSpec& spec, int n);

/// Trapezoid-rule overlap <a|b> = integral conj(a) b dx.
cplx overlap(const TransverseProfile& a, const TransverseProfile& b);

class ModalField {
public:
    ModalField(const WaveguideSpec& spec, std::vector<cplx> coefficients, double global_phase = 0.0,
               std::vector<std::string> warnings = {});

    [[nodiscard]] const WaveguideSpec& spec() const { return spec_; }
    /// coefficients()[n - 1] is A_n.
    [[nodiscard]] const std::vector<cplx>& coefficients() const { return coefficients_; }
    [[nodiscard]] cplx coefficient(int n) const { return coefficients_.at(static_cast<std::size_t>(n - 1)); }
    /// Accumulated exp(-i k z) phase in [0, 2 pi). Excluded from every observable.
    [[nodiscard]] double global_phase() const { return global_phase_; }
    [[nodiscard]] const std::vector<std::string>& warnings() const { return warnings_; }

    [[nodiscard]] double power() const;

private:
    WaveguideSpec spec_;
    std::vector<cplx> coefficients_;
    double global_phase_;
    std::vector<std::string> warnings_;
};

/// Mode-space inner product sum conj(a_n) b_n; the global phases are ignored.
cplx inner_product(const ModalField& a, const ModalField& b);

ModalField decompose(const WaveguideSpec& spec, const TransverseProfile& profile);

/// Field sampled back on the grid from its modal coefficients.
TransverseProfile reconstruct(const ModalField& field);

/// Field evaluated at arbitrary transverse positions.
std::vector<cplx> evaluate(const ModalField& field, std::span<const double> xs);

/// Propagates by a physical distance z >= 0 (meters).
ModalField propagate(const ModalField& field, double z);

/// Propagates by zeta * z0 with mode phases reduced exactly in integer
/// arithmetic; used for the restricted-interference lengths q / (4N).
ModalField propagate(const ModalField& field, RelativeLength zeta);

struct IntensityMap {
    std::vector<double> z;
    std::vector<double> x;
    Eigen::MatrixXd values; // rows: z, columns: x
};

IntensityMap intensity_map(const WaveguideSpec& spec, const TransverseProfile& profile,
                           std::span<const double> z_samples, std::span<const double> x_samples);

} // namespace mmi
