#include "mmi/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "mmi/errors.hpp"

namespace mmi {

namespace {

double wrap(double phase)
{
    double w = std::fmod(phase, 2.0 * kPi);
    if (w < 0.0)
        w += 2.0 * kPi;
    return w >= 2.0 * kPi ? 0.0 : w;
}

void validate_inputs(const TransferMatrix& t, PortPair inputs)
{
    if (inputs.m == inputs.n)
        throw InvalidInput("input ports must differ");
    if (inputs.m < 1 || inputs.n > t.ports() || inputs.m > inputs.n)
        throw InvalidInput("input ports must satisfy 1 <= i < j <= N");
}

} // namespace

std::vector<PortPair> port_pairs(int ports)
{
    std::vector<PortPair> out;
    for (int m = 1; m <= ports; ++m)
        for (int n = m; n <= ports; ++n)
            out.push_back({m, n});
    return out;
}

std::vector<double> phase_grid(int samples)
{
    if (samples < 1)
        throw InvalidInput("phase grid needs at least one sample");
    std::vector<double> out(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k)
        out[static_cast<std::size_t>(k)] = 2.0 * kPi * k / samples;
    return out;
}

CorrelationSweep::CorrelationSweep(std::vector<double> phi, std::vector<PortPair> pairs,
                                   std::vector<std::vector<double>> curves, SweepInfo info)
    : phi_(std::move(phi)), pairs_(std::move(pairs)), curves_(std::move(curves)), info_(info)
{
    if (pairs_.size() != curves_.size())
        throw InvalidInput("one curve per port pair is required");
    const double ceiling = 0.5 + info_.background + info_.noise + 1e-12;
    for (const auto& c : curves_) {
        if (c.size() != phi_.size())
            throw InvalidInput("every curve must match the phase grid length");
        for (double v : c)
            if (v < -1e-12 || v > ceiling)
                throw InvalidInput("correlation value outside [0, 0.5 + background]");
    }
}

const std::vector<double>& CorrelationSweep::curve(PortPair pair) const
{
    if (pair.m > pair.n)
        std::swap(pair.m, pair.n);
    const auto it = std::find(pairs_.begin(), pairs_.end(), pair);
    if (it == pairs_.end())
        throw InvalidInput("no curve for the requested port pair");
    return curves_[static_cast<std::size_t>(it - pairs_.begin())];
}

CorrelationSweep sweep_phase(const TransferMatrix& t, PortPair inputs, std::span<const double> phi_grid)
{
    if (phi_grid.empty())
        throw InvalidInput("phase grid must not be empty");
    validate_inputs(t, inputs);
    const int n_ports = t.ports();
    const auto pairs = port_pairs(n_ports);
    std::vector<std::vector<double>> curves(pairs.size(), std::vector<double>(phi_grid.size()));

    // The two-photon transition matrix does not depend on phi.
    const Eigen::MatrixXcd a = transition_matrix(t, 2);
    for (std::size_t k = 0; k < phi_grid.size(); ++k) {
        const MultiPhotonState in = make_noon_input(n_ports, inputs.m, inputs.n, phi_grid[k]);
        const MultiPhotonState out(n_ports, 2, a * in.amplitudes());
        const double norm = out.norm();
        if (std::abs(norm - 1.0) > 1e-6)
            throw UnitarityViolation("two-photon output norm drifted beyond 1e-6");
        for (std::size_t c = 0; c < pairs.size(); ++c) {
            const double p = correlation_probability(out, pairs[c].m, pairs[c].n) / (norm * norm);
            curves[c][k] = pairs[c].m == pairs[c].n ? p : 0.5 * p;
        }
    }
    return CorrelationSweep({phi_grid.begin(), phi_grid.end()}, pairs, std::move(curves),
                            SweepInfo{n_ports, t.quarter_steps(), inputs, 0.0});
}

double SinusoidFit::operator()(double phi) const
{
    return offset + amplitude * std::cos(phi - phase);
}

SinusoidFit fit_sinusoid(std::span<const double> phi, std::span<const double> values)
{
    if (phi.size() != values.size())
        throw InvalidInput("phase and value samples differ in length");

    std::vector<double> reduced(phi.size());
    std::transform(phi.begin(), phi.end(), reduced.begin(), wrap);
    std::sort(reduced.begin(), reduced.end());
    std::size_t distinct = reduced.empty() ? 0 : 1;
    for (std::size_t k = 1; k < reduced.size(); ++k)
        if (reduced[k] - reduced[k - 1] > 1e-12)
            ++distinct;
    if (distinct > 1 && reduced.front() + 2.0 * kPi - reduced.back() <= 1e-12)
        --distinct;
    if (distinct < 3)
        throw InvalidInput("sinusoid fit needs samples at three or more distinct phases");

    const auto n = static_cast<Eigen::Index>(phi.size());
    Eigen::MatrixXd design(n, 3);
    Eigen::VectorXd y(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double p = phi[static_cast<std::size_t>(k)];
        design(k, 0) = 1.0;
        design(k, 1) = std::cos(p);
        design(k, 2) = std::sin(p);
        y(k) = values[static_cast<std::size_t>(k)];
    }
    const Eigen::Vector3d coef = design.colPivHouseholderQr().solve(y);

    SinusoidFit fit;
    fit.offset = coef(0);
    fit.amplitude = std::hypot(coef(1), coef(2));
    fit.rms = std::sqrt((design * coef - y).squaredNorm() / static_cast<double>(n));
    if (fit.amplitude < 1e-12 * std::max(std::abs(fit.offset), 1.0)) {
        fit.degenerate = true;
        fit.phase = 0.0;
    } else {
        fit.phase = wrap(std::atan2(coef(2), coef(1)));
    }
    return fit;
}

Visibility visibility(const SinusoidFit& fit)
{
    if (!(fit.offset > 0.0))
        throw InvalidInput("visibility needs a positive fringe offset");
    if (fit.degenerate)
        return {0.0, false};
    if (fit.amplitude > fit.offset * (1.0 + 1e-9)) {
        std::ostringstream msg;
        msg << "fringe amplitude " << fit.amplitude << " exceeds offset " << fit.offset
            << "; the fitted curve goes negative";
        throw InvalidInput(msg.str());
    }
    const double v = fit.amplitude / fit.offset;
    return {v, v > kClassicalVisibilityBound};
}

CorrelationSweep apply_background(const CorrelationSweep& sweep, double beta)
{
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw InvalidInput("background must be finite and non-negative");
    auto curves = sweep.curves();
    for (auto& c : curves)
        for (double& v : c)
            v += beta;
    SweepInfo info = sweep.info();
    info.background += beta;
    return CorrelationSweep(sweep.phi(), sweep.pairs(), std::move(curves), info);
}

CorrelationSweep add_noise(const CorrelationSweep& sweep, double amplitude, std::uint64_t seed)
{
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude))
        throw InvalidInput("noise amplitude must be finite and non-negative");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(-amplitude, amplitude);
    auto curves = sweep.curves();
    for (auto& c : curves)
        for (double& v : c)
            v = std::max(0.0, v + uniform(rng));
    SweepInfo info = sweep.info();
    info.noise += amplitude;
    return CorrelationSweep(sweep.phi(), sweep.pairs(), std::move(curves), info);
}

CorrelationMatrix correlation_map(const TransferMatrix& t, PortPair inputs, double phi)
{
    validate_inputs(t, inputs);
    const MultiPhotonState out = evolve(t, make_noon_input(t.ports(), inputs.m, inputs.n, phi));
    return modified_correlation(correlation_matrix(out));
}

std::vector<CurveGroup> classify_curve_groups(const CorrelationSweep& sweep, double tol)
{
    struct Entry {
        SinusoidFit fit;
        double a;
        double b;
    };
    std::vector<CurveGroup> groups;
    std::vector<Entry> heads;
    for (std::size_t c = 0; c < sweep.pairs().size(); ++c) {
        const SinusoidFit fit = fit_sinusoid(sweep.phi(), sweep.curves()[c]);
        const Entry e{fit, fit.amplitude * std::cos(fit.phase), fit.amplitude * std::sin(fit.phase)};
        bool placed = false;
        for (std::size_t g = 0; g < groups.size() && !placed; ++g) {
            const Entry& h = heads[g];
            if (groups[g].constant != fit.degenerate || std::abs(h.fit.offset - fit.offset) > tol)
                continue;
            if (!fit.degenerate && (std::abs(h.a - e.a) > tol || std::abs(h.b - e.b) > tol))
                continue;
            groups[g].members.push_back(sweep.pairs()[c]);
            groups[g].member_phases.push_back(fit.phase);
            placed = true;
        }
        if (!placed) {
            CurveGroup group;
            group.offset = fit.offset;
            group.amplitude = fit.amplitude;
            group.phase = fit.phase;
            group.constant = fit.degenerate;
            group.members = {sweep.pairs()[c]};
            group.member_phases = {fit.phase};
            groups.push_back(std::move(group));
            heads.push_back(e);
        }
    }
    return groups;
}

double circular_distance(double a, double b)
{
    const double d = wrap(a - b);
    return std::min(d, 2.0 * kPi - d);
}

std::vector<PhaseClass> phase_classes(const std::vector<CurveGroup>& groups, double phase_tol)
{
    std::vector<PhaseClass> classes;
    for (const auto& g : groups) {
        if (g.constant)
            continue;
        auto it = std::find_if(classes.begin(), classes.end(),
                               [&](const PhaseClass& c) { return circular_distance(c.phase, g.phase) <= phase_tol; });
        if (it == classes.end())
            classes.push_back({g.phase, g.members});
        else
            it->members.insert(it->members.end(), g.members.begin(), g.members.end());
    }
    return classes;
}

bool has_cyclic_grouping(const std::vector<CurveGroup>& groups, int count, int size, double phase_tol)
{
    if (static_cast<int>(groups.size()) != count)
        return false;
    std::vector<double> phases;
    for (const auto& g : groups) {
        if (g.constant || static_cast<int>(g.members.size()) != size)
            return false;
        phases.push_back(g.phase);
    }
    std::sort(phases.begin(), phases.end());
    const double step = 2.0 * kPi / count;
    for (std::size_t k = 0; k < phases.size(); ++k) {
        const double next = phases[(k + 1) % phases.size()];
        if (circular_distance(next - phases[k], step) > phase_tol)
            return false;
    }
    return true;
}

bool has_antiphase_classes(const std::vector<PhaseClass>& classes, int ports, double phase_tol)
{
    if (classes.size() != 2 || circular_distance(classes[0].phase, classes[1].phase + kPi) > phase_tol)
        return false;
    const auto in_class = [](const PhaseClass& c, PortPair p) {
        return std::find(c.members.begin(), c.members.end(), p) != c.members.end();
    };
    const auto symmetric = [ports](PortPair p) { return p.m == p.n || p.m + p.n == ports + 1; };
    const PortPair auto_first{1, 1};
    const PhaseClass& sym = in_class(classes[0], auto_first) ? classes[0] : classes[1];
    const PhaseClass& asym = &sym == &classes[0] ? classes[1] : classes[0];
    for (const PortPair& p : port_pairs(ports))
        if (!in_class(symmetric(p) ? sym : asym, p))
            return false;
    return true;
}

InputScan scan_input_ports(const TransferMatrix& t, const std::function<bool(const CorrelationSweep&)>& accept)
{
    const int n_ports = t.ports();
    std::vector<PortPair> order;
    for (int i = 1; 2 * i < n_ports + 1; ++i)
        order.push_back({i, n_ports + 1 - i});
    for (const PortPair& p : port_pairs(n_ports))
        if (p.m != p.n && std::find(order.begin(), order.end(), p) == order.end())
            order.push_back(p);

    InputScan scan;
    const auto grid = phase_grid();
    for (const PortPair& candidate : order) {
        const bool ok = accept(sweep_phase(t, candidate, grid));
        scan.log.emplace_back(candidate, ok);
        if (ok) {
            scan.chosen = candidate;
            return scan;
        }
    }
    scan.chosen = {1, n_ports};
    return scan;
}

InputScan default_input_ports(int ports, const WaveguideSpec& spec)
{
    if (ports < 2)
        throw InvalidInput("need at least two ports");
    if (ports == 2)
        return {{1, 2}, {}};
    if (ports == 3)
        return {{1, 3}, {}};
    constexpr double tol = 1e-3;
    const PortLayout layout(ports, spec.width());
    if (ports == 4) {
        const TransferMatrix t = build_transfer_matrix(spec, layout, 2);
        return scan_input_ports(t, [](const CorrelationSweep& s) {
            return has_antiphase_classes(phase_classes(classify_curve_groups(s, tol), tol), 4, tol);
        });
    }
    if (ports == 5) {
        const TransferMatrix t = build_transfer_matrix(spec, layout, 4);
        return scan_input_ports(t, [](const CorrelationSweep& s) {
            return has_cyclic_grouping(classify_curve_groups(s, tol), 5, 3, tol);
        });
    }
    return {{1, ports}, {}};
}

} // namespace mmi
