#include "mmi/modal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mmi/errors.hpp"

namespace mmi {

namespace {

double wrap_phase(double phase)
{
    double wrapped = std::fmod(phase, 2.0 * kPi);
    if (wrapped < 0.0)
        wrapped += 2.0 * kPi;
    return wrapped >= 2.0 * kPi ? 0.0 : wrapped;
}

// Sampled modes on the wall-inclusive grid. With M = G - 1 intervals,
// phi_n(x_j) = sqrt(2/D) (-1)^n sin(pi n j / M), and the sine only needs
// the residue of n*j modulo 2M, so one table of 2M values serves every mode.
class GridBasis {
public:
    explicit GridBasis(const WaveguideSpec& spec)
        : intervals_(spec.grid_points() - 1), scale_(std::sqrt(2.0 / spec.width()))
    {
        const long period = 2L * intervals_;
        table_.resize(static_cast<std::size_t>(period));
        for (long k = 0; k < period; ++k)
            table_[static_cast<std::size_t>(k)] = std::sin(kPi * static_cast<double>(k) / intervals_);
    }

    [[nodiscard]] double operator()(int n, int j) const
    {
        const long period = 2L * intervals_;
        const double s = table_[static_cast<std::size_t>((static_cast<long>(n) * j) % period)];
        return (n % 2 == 0 ? scale_ : -scale_) * s;
    }

private:
    long intervals_;
    double scale_;
    std::vector<double> table_;
};

std::vector<cplx> apply_mode_phases(const ModalField& field, const std::function<double(long)>& phase_of_n)
{
    std::vector<cplx> out(field.coefficients().size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const long n = static_cast<long>(i) + 1;
        out[i] = field.coefficients()[i] * std::polar(1.0, phase_of_n(n));
    }
    return out;
}

} // namespace

RelativeLength RelativeLength::reduced() const
{
    const long g = std::gcd(num, den);
    return g == 0 ? *this : RelativeLength{num / g, den / g};
}

std::string RelativeLength::str() const
{
    const RelativeLength r = reduced();
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

WaveguideSpec::WaveguideSpec(double width, double wavelength, int mode_cutoff, int grid_points)
    : width_(width), wavelength_(wavelength), mode_cutoff_(mode_cutoff), grid_points_(grid_points)
{
    if (!(width > 0.0) || !std::isfinite(width))
        throw InvalidInput("waveguide width must be positive");
    if (!(wavelength > 0.0) || !std::isfinite(wavelength))
        throw InvalidInput("wavelength must be positive");
    if (mode_cutoff < 1)
        throw InvalidInput("mode cutoff must be at least 1");
    if (grid_points < 2 * mode_cutoff) {
        std::ostringstream msg;
        msg << "grid_points (" << grid_points << ") must be at least twice the mode cutoff (" << mode_cutoff << ")";
        throw InvalidInput(msg.str());
    }
}

std::vector<double> WaveguideSpec::grid() const
{
    std::vector<double> xs(static_cast<std::size_t>(grid_points_));
    for (int j = 0; j < grid_points_; ++j)
        xs[static_cast<std::size_t>(j)] = grid_x(j);
    xs.back() = 0.5 * width_;
    return xs;
}

double WaveguideSpec::mode_value(int n, double x) const
{
    return std::sqrt(2.0 / width_) * std::sin(n * kPi * (x - 0.5 * width_) / width_);
}

TransverseProfile::TransverseProfile(const WaveguideSpec& spec, std::vector<cplx> samples)
    : samples_(std::move(samples)), spacing_(spec.grid_spacing())
{
    if (static_cast<int>(samples_.size()) != spec.grid_points())
        throw InvalidInput("profile sample count does not match the waveguide grid");
}

TransverseProfile TransverseProfile::sample(const WaveguideSpec& spec, const std::function<cplx(double)>& f)
{
    std::vector<cplx> values;
    values.reserve(static_cast<std::size_t>(spec.grid_points()));
    for (double x : spec.grid())
        values.push_back(f(x));
    return TransverseProfile(spec, std::move(values));
}

double TransverseProfile::norm() const
{
    // Trapezoid rule; endpoints carry half weight.
    double sum = 0.0;
    for (std::size_t j = 0; j < samples_.size(); ++j) {
        const double w = (j == 0 || j + 1 == samples_.size()) ? 0.5 : 1.0;
        sum += w * std::norm(samples_[j]);
    }
    return std::sqrt(sum * spacing_);
}

TransverseProfile TransverseProfile::normalized() const
{
    const double n = norm();
    if (!(n > 0.0))
        throw InvalidInput("cannot normalize a zero-norm profile");
    TransverseProfile out = *this;
    for (auto& v : out.samples_)
        v /= n;
    return out;
}

TransverseProfile TransverseProfile::mirrored() const
{
    TransverseProfile out = *this;
    std::reverse(out.samples_.begin(), out.samples_.end());
    return out;
}

std::vector<double> TransverseProfile::intensity() const
{
    std::vector<double> out(samples_.size());
    std::transform(samples_.begin(), samples_.end(), out.begin(), [](cplx v) { return std::norm(v); });
    return out;
}

TransverseProfile gaussian_profile(const WaveguideSpec& spec, double center, double sigma)
{
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw InvalidInput("Gaussian width sigma must be positive");
    if (std::abs(center) > 0.5 * spec.width())
        throw InvalidInput("Gaussian center lies outside the waveguide");
    auto profile = TransverseProfile::sample(spec, [&](double x) {
        const double u = (x - center) / sigma;
        return cplx(std::exp(-0.5 * u * u), 0.0);
    });
    return profile.normalized();
}

TransverseProfile mode_profile(const WaveguideSpec& spec, int n)
{
    if (n < 1 || n >= spec.grid_points() - 1)
        throw InvalidInput("mode index out of range for the grid");
    const GridBasis basis(spec);
    std::vector<cplx> values(static_cast<std::size_t>(spec.grid_points()));
    for (int j = 0; j < spec.grid_points(); ++j)
        values[static_cast<std::size_t>(j)] = basis(n, j);
    return TransverseProfile(spec, std::move(values));
}

cplx overlap(const TransverseProfile& a, const TransverseProfile& b)
{
    if (a.size() != b.size())
        throw InvalidInput("overlap of profiles on different grids");
    cplx sum = 0.0;
    const auto& sa = a.samples();
    const auto& sb = b.samples();
    for (std::size_t j = 0; j < sa.size(); ++j) {
        const double w = (j == 0 || j + 1 == sa.size()) ? 0.5 : 1.0;
        sum += w * std::conj(sa[j]) * sb[j];
    }
    return sum * a.spacing();
}

ModalField::ModalField(const WaveguideSpec& spec, std::vector<cplx> coefficients, double global_phase,
                       std::vector<std::string> warnings)
    : spec_(spec), coefficients_(std::move(coefficients)), global_phase_(wrap_phase(global_phase)),
      warnings_(std::move(warnings))
{
    if (static_cast<int>(coefficients_.size()) != spec_.mode_cutoff())
        throw InvalidInput("coefficient count does not match the mode cutoff");
}

double ModalField::power() const
{
    return std::accumulate(coefficients_.begin(), coefficients_.end(), 0.0,
                           [](double acc, cplx a) { return acc + std::norm(a); });
}

cplx inner_product(const ModalField& a, const ModalField& b)
{
    if (a.coefficients().size() != b.coefficients().size())
        throw InvalidInput("inner product of fields with different mode cutoffs");
    cplx sum = 0.0;
    for (std::size_t i = 0; i < a.coefficients().size(); ++i)
        sum += std::conj(a.coefficients()[i]) * b.coefficients()[i];
    return sum;
}

ModalField decompose(const WaveguideSpec& spec, const TransverseProfile& profile)
{
    if (profile.size() != spec.grid_points() || std::abs(profile.spacing() - spec.grid_spacing()) > 1e-12 * spec.width())
        throw InvalidInput("profile grid does not match the waveguide spec");
    const double input_norm = profile.norm();
    if (!(input_norm > 0.0))
        throw InvalidInput("cannot decompose a zero-norm profile");

    const GridBasis basis(spec);
    const auto& f = profile.samples();
    const double h = spec.grid_spacing();
    std::vector<cplx> coeffs(static_cast<std::size_t>(spec.mode_cutoff()));
    // The modes vanish on both walls, so the trapezoid sum runs over interior points.
    for (int n = 1; n <= spec.mode_cutoff(); ++n) {
        cplx sum = 0.0;
        for (int j = 1; j + 1 < spec.grid_points(); ++j)
            sum += f[static_cast<std::size_t>(j)] * basis(n, j);
        coeffs[static_cast<std::size_t>(n - 1)] = sum * h;
    }

    std::vector<std::string> warnings;
    const double input_power = input_norm * input_norm;
    const double retained = std::accumulate(coeffs.begin(), coeffs.end(), 0.0,
                                            [](double acc, cplx a) { return acc + std::norm(a); });
    if (retained / input_power < 0.999) {
        std::ostringstream msg;
        msg << "truncation: only " << retained / input_power << " of the input power is captured by "
            << spec.mode_cutoff() << " modes";
        warnings.push_back(msg.str());
    }
    const std::size_t tail_start = coeffs.size() - std::max<std::size_t>(1, coeffs.size() / 10);
    const double tail = std::accumulate(coeffs.begin() + static_cast<long>(tail_start), coeffs.end(), 0.0,
                                        [](double acc, cplx a) { return acc + std::norm(a); });
    if (tail / input_power > 1e-8) {
        std::ostringstream msg;
        msg << "tail energy " << tail / input_power << " in the highest modes; raise the mode cutoff";
        warnings.push_back(msg.str());
    }
    return ModalField(spec, std::move(coeffs), 0.0, std::move(warnings));
}

TransverseProfile reconstruct(const ModalField& field)
{
    const auto& spec = field.spec();
    const GridBasis basis(spec);
    std::vector<cplx> values(static_cast<std::size_t>(spec.grid_points()), cplx(0.0));
    for (int j = 1; j + 1 < spec.grid_points(); ++j) {
        cplx sum = 0.0;
        for (int n = 1; n <= spec.mode_cutoff(); ++n)
            sum += field.coefficients()[static_cast<std::size_t>(n - 1)] * basis(n, j);
        values[static_cast<std::size_t>(j)] = sum;
    }
    return TransverseProfile(spec, std::move(values));
}

namespace {

Eigen::MatrixXd basis_at(const WaveguideSpec& spec, std::span<const double> xs)
{
    Eigen::MatrixXd b(static_cast<Eigen::Index>(xs.size()), spec.mode_cutoff());
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
        const double x = xs[static_cast<std::size_t>(i)];
        if (std::abs(x) > 0.5 * spec.width() * (1.0 + 1e-12))
            throw InvalidInput("sample position lies outside the waveguide");
        for (int n = 1; n <= spec.mode_cutoff(); ++n)
            b(i, n - 1) = spec.mode_value(n, x);
    }
    return b;
}

Eigen::VectorXcd as_vector(const std::vector<cplx>& c)
{
    return Eigen::Map<const Eigen::VectorXcd>(c.data(), static_cast<Eigen::Index>(c.size()));
}

} // namespace

std::vector<cplx> evaluate(const ModalField& field, std::span<const double> xs)
{
    const Eigen::VectorXcd values = basis_at(field.spec(), xs).cast<cplx>() * as_vector(field.coefficients());
    return {values.data(), values.data() + values.size()};
}

ModalField propagate(const ModalField& field, double z)
{
    if (!(z >= 0.0) || !std::isfinite(z))
        throw InvalidInput("propagation distance must be finite and non-negative");
    const double zeta = z / field.spec().self_imaging_length();
    auto coeffs = apply_mode_phases(field, [zeta](long n) {
        const double turns = std::fmod(static_cast<double>(n * n) * zeta, 1.0);
        return 2.0 * kPi * turns;
    });
    const double k = field.spec().wavenumber();
    const double carrier = -2.0 * kPi * std::fmod(k * z / (2.0 * kPi), 1.0);
    return ModalField(field.spec(), std::move(coeffs), field.global_phase() + carrier, field.warnings());
}

ModalField propagate(const ModalField& field, RelativeLength zeta)
{
    if (zeta.den <= 0 || zeta.num < 0)
        throw InvalidInput("relative length must be a non-negative fraction with positive denominator");
    const long den = zeta.den;
    const long num = zeta.num % den;
    auto coeffs = apply_mode_phases(field, [num, den](long n) {
        const long n2 = (n % den) * (n % den) % den;
        return 2.0 * kPi * static_cast<double>(n2 * num % den) / static_cast<double>(den);
    });
    const double z = zeta.value() * field.spec().self_imaging_length();
    const double carrier = -2.0 * kPi * std::fmod(z / field.spec().wavelength(), 1.0);
    return ModalField(field.spec(), std::move(coeffs), field.global_phase() + carrier, field.warnings());
}

IntensityMap intensity_map(const WaveguideSpec& spec, const TransverseProfile& profile,
                           std::span<const double> z_samples, std::span<const double> x_samples)
{
    if (z_samples.empty() || x_samples.empty())
        throw InvalidInput("intensity map needs at least one z and one x sample");
    const double z0 = spec.self_imaging_length();
    for (double z : z_samples)
        if (!(z >= 0.0) || z > z0 * (1.0 + 1e-12))
            throw InvalidInput("intensity map z samples must lie within [0, z0]");

    const ModalField field = decompose(spec, profile);
    const Eigen::MatrixXcd basis = basis_at(spec, x_samples).cast<cplx>();

    IntensityMap map;
    map.z.assign(z_samples.begin(), z_samples.end());
    map.x.assign(x_samples.begin(), x_samples.end());
    map.values.resize(static_cast<Eigen::Index>(z_samples.size()), static_cast<Eigen::Index>(x_samples.size()));
    for (std::size_t r = 0; r < z_samples.size(); ++r) {
        const ModalField moved = propagate(field, z_samples[r]);
        map.values.row(static_cast<Eigen::Index>(r)) = (basis * as_vector(moved.coefficients())).cwiseAbs2().transpose();
    }
    return map;
}

} // namespace mmi
