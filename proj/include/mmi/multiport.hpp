#pragma once

// Single-photon N x N transfer matrices of a multi-mode waveguide used as a
// multi-port beam splitter. Inputs and outputs are Gaussian spots at the
// restricted-interference port centers; lengths are zeta = q / (4N).

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "mmi/modal.hpp"

namespace mmi {

/// Port centers in units of the waveguide width: (2p - 1 - N) / (2N), p = 1..N.
std::vector<double> port_positions(int ports);

class PortLayout {
public:
    /// sigma is the field standard deviation of each port spot in meters;
    /// defaults to D / (10 N).
    PortLayout(int ports, double width, std::optional<double> sigma = std::nullopt);

    [[nodiscard]] int ports() const { return ports_; }
    [[nodiscard]] double sigma() const { return sigma_; }
    /// Centers in meters, strictly increasing.
    [[nodiscard]] const std::vector<double>& centers() const { return centers_; }

    [[nodiscard]] TransverseProfile profile(const WaveguideSpec& spec, int port) const;

private:
    int ports_;
    double sigma_;
    std::vector<double> centers_;
};

/// Unitary N x N matrix; element (out, in) maps input port `in` to output port `out`.
class TransferMatrix {
public:
    /// Wraps an externally supplied unitary (analytic devices, test oracles).
    /// Throws InvalidInput unless max|U^dagger U - I| < 1e-10.
    static TransferMatrix from_unitary(const Eigen::MatrixXcd& u);

    static TransferMatrix identity(int ports);

    [[nodiscard]] const Eigen::MatrixXcd& matrix() const { return matrix_; }
    [[nodiscard]] int ports() const { return static_cast<int>(matrix_.rows()); }
    [[nodiscard]] cplx operator()(int out, int in) const { return matrix_(out, in); }

    /// Multiple of z0 / (4N) this device corresponds to, if it is a waveguide section.
    [[nodiscard]] std::optional<int> quarter_steps() const { return q_; }
    /// zeta = q / (4N) when q is known.
    [[nodiscard]] std::optional<RelativeLength> relative_length() const;
    /// max|T^dagger T - I| of the matrix before unitarization (0 for exact constructions).
    [[nodiscard]] double raw_unitarity_deviation() const { return raw_deviation_; }

private:
    friend TransferMatrix build_transfer_matrix(const WaveguideSpec&, const PortLayout&, int);
    friend TransferMatrix matrix_power(const TransferMatrix&, int);

    TransferMatrix(Eigen::MatrixXcd m, std::optional<int> q, double raw_deviation)
        : matrix_(std::move(m)), q_(q), raw_deviation_(raw_deviation)
    {
    }

    Eigen::MatrixXcd matrix_;
    std::optional<int> q_;
    double raw_deviation_ = 0.0;
};

/// max_ij |(M^dagger M - I)_ij|
double unitarity_deviation(const Eigen::MatrixXcd& m);

/// Nearest unitary in the Frobenius norm (polar factor). Throws ModelBreakdown
/// if the matrix is numerically singular.
Eigen::MatrixXcd nearest_unitary(const Eigen::MatrixXcd& m);

/// Removes the unobservable global phase: the first entry of column 0 whose
/// modulus reaches 1/(2 sqrt N) is made real and positive.
Eigen::MatrixXcd gauge_fixed(const Eigen::MatrixXcd& m);

/// Device of relative length q / (4N). Throws ModelBreakdown when the raw
/// overlap matrix deviates from unitarity by more than 0.05.
TransferMatrix build_transfer_matrix(const WaveguideSpec& spec, const PortLayout& layout, int q);

/// base^q for a q = 1 section; q = 0 gives the identity.
TransferMatrix matrix_power(const TransferMatrix& base, int q);

/// [[cos t, i sin t], [i sin t, cos t]]
TransferMatrix analytic_two_port(double theta);

} // namespace mmi
