#include "mmi/multiport.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "mmi/errors.hpp"

namespace mmi {

std::vector<double> port_positions(int ports)
{
    if (ports < 2)
        throw InvalidInput("a multi-port splitter needs at least 2 ports");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(ports));
    for (int p = 1; p <= ports; ++p)
        out.push_back(static_cast<double>(2 * p - 1 - ports) / (2.0 * ports));
    return out;
}

PortLayout::PortLayout(int ports, double width, std::optional<double> sigma)
    : ports_(ports), sigma_(sigma.value_or(width / (10.0 * ports)))
{
    if (!(width > 0.0))
        throw InvalidInput("waveguide width must be positive");
    for (double u : port_positions(ports))
        centers_.push_back(u * width);
    if (!(sigma_ > 0.0) || !std::isfinite(sigma_))
        throw InvalidInput("port profile width sigma must be positive");
    if (sigma_ > width / (6.0 * ports) * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "port profile width sigma = " << sigma_ << " exceeds D/(6N) = " << width / (6.0 * ports);
        throw InvalidInput(msg.str());
    }
}

TransverseProfile PortLayout::profile(const WaveguideSpec& spec, int port) const
{
    if (port < 0 || port >= ports_)
        throw InvalidInput("port index out of range");
    return gaussian_profile(spec, centers_[static_cast<std::size_t>(port)], sigma_);
}

std::optional<RelativeLength> TransferMatrix::relative_length() const
{
    if (!q_)
        return std::nullopt;
    return RelativeLength{*q_, 4L * ports()};
}

TransferMatrix TransferMatrix::from_unitary(const Eigen::MatrixXcd& u)
{
    if (u.rows() != u.cols() || u.rows() < 1)
        throw InvalidInput("transfer matrix must be square and non-empty");
    const double dev = unitarity_deviation(u);
    if (!(dev < 1e-10)) {
        std::ostringstream msg;
        msg << "matrix is not unitary (deviation " << dev << ")";
        throw InvalidInput(msg.str());
    }
    return TransferMatrix(u, std::nullopt, 0.0);
}

TransferMatrix TransferMatrix::identity(int ports)
{
    if (ports < 1)
        throw InvalidInput("identity needs at least one port");
    return TransferMatrix(Eigen::MatrixXcd::Identity(ports, ports), 0, 0.0);
}

double unitarity_deviation(const Eigen::MatrixXcd& m)
{
    const Eigen::MatrixXcd gram = m.adjoint() * m - Eigen::MatrixXcd::Identity(m.cols(), m.cols());
    return gram.cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd nearest_unitary(const Eigen::MatrixXcd& m)
{
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(s.size() - 1) < 1e-8 * std::max(1.0, s(0)))
        throw ModelBreakdown("raw transfer matrix is singular; polar factor is not unique");
    return svd.matrixU() * svd.matrixV().adjoint();
}

Eigen::MatrixXcd gauge_fixed(const Eigen::MatrixXcd& m)
{
    const double threshold = 0.5 / std::sqrt(static_cast<double>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const cplx v = m(i, 0);
        if (std::abs(v) >= threshold)
            return m * std::polar(1.0, -std::arg(v));
    }
    return m;
}

TransferMatrix build_transfer_matrix(const WaveguideSpec& spec, const PortLayout& layout, int q)
{
    if (q < 1)
        throw InvalidInput("build_transfer_matrix needs q >= 1");
    const int n_ports = layout.ports();
    const RelativeLength zeta{q, 4L * n_ports};

    std::vector<ModalField> ports;
    ports.reserve(static_cast<std::size_t>(n_ports));
    for (int p = 0; p < n_ports; ++p)
        ports.push_back(decompose(spec, layout.profile(spec, p)));

    Eigen::MatrixXcd raw(n_ports, n_ports);
    for (int in = 0; in < n_ports; ++in) {
        const ModalField out_field = propagate(ports[static_cast<std::size_t>(in)], zeta);
        for (int out = 0; out < n_ports; ++out)
            raw(out, in) = inner_product(ports[static_cast<std::size_t>(out)], out_field);
    }

    const double dev = unitarity_deviation(raw);
    if (dev > 0.05) {
        std::ostringstream msg;
        msg << "raw transfer matrix deviates from unitarity by " << dev
            << " (port profile too wide or mode cutoff too low)";
        throw ModelBreakdown(msg.str());
    }
    return TransferMatrix(gauge_fixed(nearest_unitary(raw)), q, dev);
}

TransferMatrix matrix_power(const TransferMatrix& base, int q)
{
    if (q < 0)
        throw InvalidInput("matrix power needs q >= 0");
    if (base.quarter_steps() != 1)
        throw InvalidInput("matrix power expects a q = 1 base section");
    Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(base.ports(), base.ports());
    Eigen::MatrixXcd square = base.matrix();
    for (int e = q; e > 0; e >>= 1) {
        if (e & 1)
            result = square * result;
        square = square * square;
    }
    return TransferMatrix(gauge_fixed(result), q, base.raw_unitarity_deviation());
}

TransferMatrix analytic_two_port(double theta)
{
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Eigen::MatrixXcd m(2, 2);
    m << cplx(c, 0.0), cplx(0.0, s), cplx(0.0, s), cplx(c, 0.0);
    return TransferMatrix::from_unitary(m);
}

} // namespace mmi
