#include "mmi/fock.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "mmi/errors.hpp"

namespace mmi {

namespace {

double factorial(int n)
{
    double f = 1.0;
    for (int k = 2; k <= n; ++k)
        f *= k;
    return f;
}

void enumerate_into(int ports, int photons, std::vector<int>& prefix, std::vector<PhotonConfig>& out)
{
    if (static_cast<int>(prefix.size()) == ports - 1) {
        prefix.push_back(photons);
        out.emplace_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int k = photons; k >= 0; --k) {
        prefix.push_back(k);
        enumerate_into(ports, photons - k, prefix, out);
        prefix.pop_back();
    }
}

} // namespace

PhotonConfig::PhotonConfig(std::vector<int> occupation) : occupation_(std::move(occupation))
{
    if (occupation_.empty())
        throw InvalidInput("photon configuration needs at least one port");
    for (int n : occupation_) {
        if (n < 0)
            throw InvalidInput("photon occupations must be non-negative");
        photons_ += n;
    }
}

std::vector<int> PhotonConfig::port_list() const
{
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(photons_));
    for (int p = 0; p < ports(); ++p)
        out.insert(out.end(), static_cast<std::size_t>(occupation_[static_cast<std::size_t>(p)]), p);
    return out;
}

double PhotonConfig::permutation_count() const
{
    double count = factorial(photons_);
    for (int n : occupation_)
        count /= factorial(n);
    return count;
}

std::vector<PhotonConfig> enumerate_configs(int ports, int photons)
{
    if (ports < 1)
        throw InvalidInput("need at least one port");
    if (photons < 0)
        throw InvalidInput("photon number must be non-negative");
    std::vector<PhotonConfig> out;
    std::vector<int> prefix;
    prefix.reserve(static_cast<std::size_t>(ports));
    enumerate_into(ports, photons, prefix, out);
    return out;
}

cplx transition_amplitude(const TransferMatrix& t, const PhotonConfig& nu, const PhotonConfig& mu)
{
    if (nu.ports() != t.ports() || mu.ports() != t.ports())
        throw InvalidInput("configuration port count does not match the transfer matrix");
    if (nu.photons() != mu.photons())
        throw InvalidInput("photon number differs between initial and final configuration");

    const std::vector<int> outputs = mu.port_list();
    std::vector<int> inputs = nu.port_list(); // ascending, so next_permutation visits each distinct ordering once
    const auto& m = t.matrix();
    cplx sum = 0.0;
    do {
        cplx term = 1.0;
        for (std::size_t k = 0; k < outputs.size(); ++k)
            term *= m(outputs[k], inputs[k]);
        sum += term;
    } while (std::next_permutation(inputs.begin(), inputs.end()));
    return std::sqrt(mu.permutation_count() / nu.permutation_count()) * sum;
}

MultiPhotonState::MultiPhotonState(int ports, int photons)
    : ports_(ports), photons_(photons), basis_(enumerate_configs(ports, photons)),
      amplitudes_(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis_.size())))
{
}

MultiPhotonState::MultiPhotonState(int ports, int photons, Eigen::VectorXcd amplitudes)
    : MultiPhotonState(ports, photons)
{
    if (amplitudes.size() != amplitudes_.size())
        throw InvalidInput("amplitude vector does not match the basis size");
    amplitudes_ = std::move(amplitudes);
}

std::size_t MultiPhotonState::index_of(const PhotonConfig& config) const
{
    if (config.ports() != ports_ || config.photons() != photons_)
        throw InvalidInput("configuration does not belong to this state's basis");
    const auto it = std::lower_bound(basis_.begin(), basis_.end(), config, std::greater<>{});
    return static_cast<std::size_t>(it - basis_.begin());
}

cplx MultiPhotonState::amplitude(const PhotonConfig& config) const
{
    return amplitudes_(static_cast<Eigen::Index>(index_of(config)));
}

void MultiPhotonState::set_amplitude(const PhotonConfig& config, cplx value)
{
    amplitudes_(static_cast<Eigen::Index>(index_of(config))) = value;
}

cplx MultiPhotonState::inner(const MultiPhotonState& other) const
{
    if (other.ports_ != ports_ || other.photons_ != photons_)
        throw InvalidInput("inner product of states on different bases");
    return amplitudes_.dot(other.amplitudes_);
}

MultiPhotonState fock_state(const std::vector<int>& occupation)
{
    const PhotonConfig config(occupation);
    MultiPhotonState state(config.ports(), config.photons());
    state.set_amplitude(config, 1.0);
    return state;
}

MultiPhotonState make_noon_input(int ports, int i, int j, double phi, int photons)
{
    if (i == j)
        throw InvalidInput("NOON input needs two distinct ports");
    if (i < 1 || j > ports || i > j)
        throw InvalidInput("NOON input ports must satisfy 1 <= i < j <= N");
    if (photons < 1)
        throw InvalidInput("NOON input needs at least one photon");
    std::vector<int> first(static_cast<std::size_t>(ports), 0);
    std::vector<int> second = first;
    first[static_cast<std::size_t>(i - 1)] = photons;
    second[static_cast<std::size_t>(j - 1)] = photons;
    MultiPhotonState state(ports, photons);
    state.set_amplitude(PhotonConfig(first), 1.0 / std::sqrt(2.0));
    state.set_amplitude(PhotonConfig(second), std::polar(1.0 / std::sqrt(2.0), phi));
    return state;
}

Eigen::MatrixXcd transition_matrix(const TransferMatrix& t, int photons)
{
    const auto basis = enumerate_configs(t.ports(), photons);
    const auto dim = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd a(dim, dim);
    for (Eigen::Index out = 0; out < dim; ++out)
        for (Eigen::Index in = 0; in < dim; ++in)
            a(out, in) = transition_amplitude(t, basis[static_cast<std::size_t>(in)], basis[static_cast<std::size_t>(out)]);
    return a;
}

MultiPhotonState evolve(const TransferMatrix& t, const MultiPhotonState& state)
{
    if (state.ports() != t.ports())
        throw InvalidInput("state port count does not match the transfer matrix");
    const double in_norm = state.norm();
    if (std::abs(in_norm - 1.0) > 1e-10)
        throw InvalidInput("evolve expects a normalized input state");

    MultiPhotonState out(state.ports(), state.photons(), transition_matrix(t, state.photons()) * state.amplitudes());
    const double out_norm = out.norm();
    const double drift = std::abs(out_norm - 1.0);
    if (drift > 1e-6) {
        std::ostringstream msg;
        msg << "output norm " << out_norm << " drifted beyond 1e-6";
        throw UnitarityViolation(msg.str());
    }
    if (drift > 0.0)
        out.amplitudes_ /= out_norm;
    out.renormalization_ = drift;
    return out;
}

CorrelationMatrix::CorrelationMatrix(Kind kind, Eigen::MatrixXd values) : kind_(kind), values_(std::move(values))
{
    if (values_.rows() != values_.cols() || values_.rows() < 1)
        throw InvalidInput("correlation matrix must be square and non-empty");
    if ((values_ - values_.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw InvalidInput("correlation matrix must be symmetric");
    if (values_.minCoeff() < -1e-12 || values_.maxCoeff() > 1.0 + 1e-12)
        throw InvalidInput("correlation entries must lie in [0, 1]");
}

double correlation_probability(const MultiPhotonState& state, int m, int n)
{
    if (state.photons() != 2)
        throw InvalidInput("two-photon correlation needs a state with exactly 2 photons");
    if (m < 1 || n < 1 || m > state.ports() || n > state.ports())
        throw InvalidInput("port index out of range");
    std::vector<int> occupation(static_cast<std::size_t>(state.ports()), 0);
    ++occupation[static_cast<std::size_t>(m - 1)];
    ++occupation[static_cast<std::size_t>(n - 1)];
    return std::norm(state.amplitude(PhotonConfig(occupation)));
}

CorrelationMatrix correlation_matrix(const MultiPhotonState& state)
{
    const int n_ports = state.ports();
    Eigen::MatrixXd p(n_ports, n_ports);
    for (int m = 1; m <= n_ports; ++m)
        for (int n = m; n <= n_ports; ++n)
            p(m - 1, n - 1) = p(n - 1, m - 1) = correlation_probability(state, m, n);
    return CorrelationMatrix(CorrelationMatrix::Kind::Probability, std::move(p));
}

CorrelationMatrix modified_correlation(const CorrelationMatrix& p)
{
    if (p.kind() != CorrelationMatrix::Kind::Probability)
        throw InvalidInput("modified correlation expects a probability matrix");
    Eigen::MatrixXd c = p.values() * 0.5;
    c.diagonal() = p.values().diagonal();
    return CorrelationMatrix(CorrelationMatrix::Kind::Modified, std::move(c));
}

} // namespace mmi
