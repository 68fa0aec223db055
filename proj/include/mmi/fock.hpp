#pragma once

/**
 * Bosonic Fock-space evolution through a linear-optical device.
 *
 * A creation operator on input port j maps to sum_m T(m, j) b_m^dagger. The
 * amplitude between an input configuration nu and an output configuration mu
 * of M identical photons is
 *
 *     sqrt(N_mu / N_nu) * sum over distinct orderings s of nu's port list
 *                         of prod_j T(mu_j, s_j)
 *
 * where mu_j is mu's port list (each port repeated by its occupation) and
 * N_x = M! / prod_i x_i! counts the distinct orderings of a configuration.
 * This equals perm(T[mu, nu]) / sqrt(prod mu_i! prod nu_i!).
 */

#include <compare>
#include <vector>

#include <Eigen/Dense>

#include "mmi/modal.hpp"
#include "mmi/multiport.hpp"

namespace mmi {

class PhotonConfig {
public:
    explicit PhotonConfig(std::vector<int> occupation);

    [[nodiscard]] const std::vector<int>& occupation() const { return occupation_; }
    [[nodiscard]] int ports() const { return static_cast<int>(occupation_.size()); }
    [[nodiscard]] int photons() const { return photons_; }
    [[nodiscard]] int operator[](int port) const { return occupation_[static_cast<std::size_t>(port)]; }

    /// Zero-based port indices, ascending, each repeated by its occupation.
    [[nodiscard]] std::vector<int> port_list() const;
    /// Number of distinct orderings of port_list(): M! / prod n_i!.
    [[nodiscard]] double permutation_count() const;

    friend auto operator<=>(const PhotonConfig&, const PhotonConfig&) = default;

private:
    std::vector<int> occupation_;
    int photons_ = 0;
};

/// Configurations of M photons in N ports, descending lexicographic order
/// (all photons in port 1 first). Size is C(N + M - 1, M).
std::vector<PhotonConfig> enumerate_configs(int ports, int photons);

/// <mu| U(T) |nu>
cplx transition_amplitude(const TransferMatrix& t, const PhotonConfig& nu, const PhotonConfig& mu);

/// Dense state over the enumerated basis of (N, M).
class MultiPhotonState {
public:
    MultiPhotonState(int ports, int photons);
    MultiPhotonState(int ports, int photons, Eigen::VectorXcd amplitudes);

    [[nodiscard]] int ports() const { return ports_; }
    [[nodiscard]] int photons() const { return photons_; }
    [[nodiscard]] const std::vector<PhotonConfig>& basis() const { return basis_; }
    [[nodiscard]] const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }

    [[nodiscard]] std::size_t index_of(const PhotonConfig& config) const;
    [[nodiscard]] cplx amplitude(const PhotonConfig& config) const;
    void set_amplitude(const PhotonConfig& config, cplx value);

    [[nodiscard]] double norm() const { return amplitudes_.norm(); }
    [[nodiscard]] cplx inner(const MultiPhotonState& other) const;

    /// Norm deviation removed by the last evolve() (0 for states built directly).
    [[nodiscard]] double renormalization() const { return renormalization_; }

private:
    friend MultiPhotonState evolve(const TransferMatrix&, const MultiPhotonState&);

    int ports_;
    int photons_;
    std::vector<PhotonConfig> basis_;
    Eigen::VectorXcd amplitudes_;
    double renormalization_ = 0.0;
};

/// Definite-occupation state |n_1, ..., n_N>.
MultiPhotonState fock_state(const std::vector<int>& occupation);

/// (|M at i> + e^{i phi} |M at j>) / sqrt 2 with one-based ports i < j.
/// photons = 2 gives the two-photon NOON input; photons = 1 its single-photon part.
MultiPhotonState make_noon_input(int ports, int i, int j, double phi, int photons = 2);

/// Matrix of transition amplitudes over the (N, M) basis; element (out, in).
Eigen::MatrixXcd transition_matrix(const TransferMatrix& t, int photons);

/// Output state. Throws UnitarityViolation if the norm drifts by more than
/// 1e-6 before renormalization.
MultiPhotonState evolve(const TransferMatrix& t, const MultiPhotonState& state);

/// Symmetric N x N table of two-photon probabilities P or their
/// coincidence-adjusted form C = P / (2 - delta_mn).
class CorrelationMatrix {
public:
    enum class Kind { Probability, Modified };

    CorrelationMatrix(Kind kind, Eigen::MatrixXd values);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] const Eigen::MatrixXd& values() const { return values_; }
    [[nodiscard]] int ports() const { return static_cast<int>(values_.rows()); }
    /// One-based port indices.
    [[nodiscard]] double operator()(int m, int n) const { return values_(m - 1, n - 1); }

private:
    Kind kind_;
    Eigen::MatrixXd values_;
};

/// |<m,n|psi>|^2 for a two-photon state, one-based ports.
double correlation_probability(const MultiPhotonState& state, int m, int n);

/// Full P matrix of a two-photon state.
CorrelationMatrix correlation_matrix(const MultiPhotonState& state);

CorrelationMatrix modified_correlation(const CorrelationMatrix& p);

} // namespace mmi
