#include "cli_app.hpp"

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "mmi/analysis.hpp"
#include "mmi/errors.hpp"
#include "mmi/export.hpp"
#include "mmi/fock.hpp"
#include "mmi/modal.hpp"
#include "mmi/multiport.hpp"

namespace mmi::cli {

namespace fs = std::filesystem;

namespace {

constexpr double kNumericGroupTolerance = 1e-3;

bool wants(const RunConfig& c, const std::string& kind)
{
    return c.format == "all" || c.format == kind;
}

PortPair parse_inputs(const std::string& text)
{
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw InvalidInput("--inputs expects 'i,j'");
    try {
        std::size_t used_i = 0, used_j = 0;
        const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
        const int i = std::stoi(a, &used_i);
        const int j = std::stoi(b, &used_j);
        if (used_i != a.size() || used_j != b.size())
            throw InvalidInput("--inputs expects 'i,j'");
        return {i, j};
    } catch (const std::logic_error&) {
        throw InvalidInput("--inputs expects 'i,j' with integer ports");
    }
}

struct Session {
    RunConfig config;
    WaveguideSpec spec;
    nlohmann::json manifest;

    explicit Session(const RunConfig& c)
        : config(c), spec(c.width, c.wavelength, c.modes, c.grid)
    {
        if (c.ports < 2)
            throw InvalidInput("--n must be at least 2");
        if (c.format != "csv" && c.format != "json" && c.format != "svg" && c.format != "all")
            throw InvalidInput("--format must be one of csv, json, svg, all");
        manifest = {{"command", c.command},
                    {"n", c.ports},
                    {"phi_samples", c.phi_samples},
                    {"background", c.background},
                    {"noise", c.noise},
                    {"seed", c.seed},
                    {"modes", c.modes},
                    {"grid", c.grid},
                    {"width_m", c.width},
                    {"wavelength_m", c.wavelength},
                    {"format", c.format}};
        std::error_code ec;
        fs::create_directories(c.out, ec);
        if (ec || !fs::is_directory(c.out))
            throw InvalidInput("cannot create output directory " + c.out);
    }

    void write(const std::string& name, const std::string& text) const { write_text(fs::path(config.out) / name, text); }

    void finish() const { write("manifest.json", manifest.dump(2) + "\n"); }

    TransferMatrix device(int q)
    {
        manifest["q"] = q;
        manifest["zeta"] = RelativeLength{q, 4L * config.ports}.str();
        if (q == 0)
            return TransferMatrix::identity(config.ports);
        const PortLayout layout(config.ports, spec.width(), config.sigma);
        manifest["sigma_m"] = layout.sigma();
        return build_transfer_matrix(spec, layout, q);
    }

    PortPair inputs(int ports)
    {
        PortPair chosen;
        if (config.inputs) {
            chosen = parse_inputs(*config.inputs);
        } else {
            const InputScan scan = default_input_ports(ports, spec);
            chosen = scan.chosen;
            nlohmann::json log = nlohmann::json::array();
            for (const auto& [pair, ok] : scan.log)
                log.push_back({{"inputs", {pair.m, pair.n}}, {"accepted", ok}});
            manifest["input_scan"] = std::move(log);
        }
        if (chosen.m == chosen.n || chosen.m < 1 || chosen.n > ports || chosen.m > chosen.n)
            throw InvalidInput("--inputs must satisfy 1 <= i < j <= N");
        manifest["inputs"] = {chosen.m, chosen.n};
        return chosen;
    }
};

int cmd_field_map(const RunConfig& c)
{
    Session s(c);
    const PortLayout layout(c.ports, s.spec.width(), c.sigma);
    const int port = c.port.value_or(c.ports);
    if (port < 1 || port > c.ports)
        throw InvalidInput("--port must lie in 1..N");
    if (c.z_samples < 1 || c.x_samples < 1)
        throw InvalidInput("--z-samples and --x-samples must be positive");
    const TransverseProfile input = layout.profile(s.spec, port - 1);

    const double z0 = s.spec.self_imaging_length();
    std::vector<double> zs(static_cast<std::size_t>(c.z_samples));
    for (int k = 0; k < c.z_samples; ++k)
        zs[static_cast<std::size_t>(k)] = c.z_samples == 1 ? 0.0 : z0 * k / (c.z_samples - 1);
    std::vector<double> xs(static_cast<std::size_t>(c.x_samples));
    for (int k = 0; k < c.x_samples; ++k)
        xs[static_cast<std::size_t>(k)] =
            c.x_samples == 1 ? 0.0 : s.spec.width() * (-0.5 + static_cast<double>(k) / (c.x_samples - 1));
    const IntensityMap map = intensity_map(s.spec, input, zs, xs);

    const ModalField field = decompose(s.spec, input);
    for (const auto& w : field.warnings())
        std::cerr << "warning: " << w << '\n';
    s.manifest["port"] = port;
    s.manifest["sigma_m"] = layout.sigma();
    s.manifest["z0_m"] = z0;
    s.manifest["warnings"] = field.warnings();

    if (wants(c, "csv"))
        s.write("intensity.csv", intensity_csv(map));
    if (wants(c, "svg"))
        s.write("intensity.svg", intensity_svg(map));
    s.finish();
    std::cout << "intensity map " << c.z_samples << " x " << c.x_samples << " written to " << c.out << '\n';
    return kOk;
}

int cmd_matrix(const RunConfig& c)
{
    Session s(c);
    const TransferMatrix t = s.device(resolve_quarter_steps(c, 2));
    s.manifest["raw_unitarity_deviation"] = t.raw_unitarity_deviation();
    if (wants(c, "csv"))
        s.write("matrix.csv", matrix_csv(t));
    if (wants(c, "json"))
        s.write("matrix.json", matrix_json(t).dump(2) + "\n");
    s.finish();

    std::cout << std::fixed << std::setprecision(6);
    for (int r = 0; r < t.ports(); ++r) {
        for (int col = 0; col < t.ports(); ++col) {
            const cplx v = t(r, col);
            std::cout << (col ? "  " : "") << std::setw(9) << v.real() << (v.imag() < 0 ? " - " : " + ")
                      << std::setw(8) << std::abs(v.imag()) << 'i';
        }
        std::cout << '\n';
    }
    std::cout << std::scientific << std::setprecision(3) << "raw unitarity deviation " << t.raw_unitarity_deviation()
              << '\n';
    return kOk;
}

int cmd_sweep(const RunConfig& c)
{
    Session s(c);
    if (c.phi_samples < 3)
        throw InvalidInput("--phi-samples must be at least 3 for the sinusoid fits");
    const TransferMatrix t = s.device(resolve_quarter_steps(c, 2));
    const PortPair inputs = s.inputs(t.ports());
    CorrelationSweep sweep = sweep_phase(t, inputs, phase_grid(c.phi_samples));
    if (c.noise != 0.0)
        sweep = add_noise(sweep, c.noise, c.seed);
    if (c.background != 0.0)
        sweep = apply_background(sweep, c.background);
    const auto groups = classify_curve_groups(sweep, kNumericGroupTolerance);
    const nlohmann::json fits = fits_json(sweep, groups);

    if (wants(c, "csv"))
        s.write("sweep.csv", sweep_csv(sweep));
    if (wants(c, "json"))
        s.write("fits.json", fits.dump(2) + "\n");
    if (wants(c, "svg"))
        s.write("sweep.svg", sweep_svg(sweep));
    s.finish();

    std::cout << std::setprecision(6);
    for (const auto& f : fits["fits"]) {
        std::cout << "C_" << f["pair"][0] << "_" << f["pair"][1] << "  A=" << f["A"].get<double>()
                  << "  B=" << f["B"].get<double>() << "  phi0=" << f["phi0"].get<double>();
        if (!f["visibility"].is_null())
            std::cout << "  V=" << f["visibility"].get<double>();
        std::cout << '\n';
    }
    std::cout << groups.size() << " curve group(s)\n";
    return kOk;
}

int cmd_corrmap(const RunConfig& c)
{
    Session s(c);
    const TransferMatrix t = s.device(resolve_quarter_steps(c, 2));
    const PortPair inputs = s.inputs(t.ports());
    const CorrelationMatrix at_zero = correlation_map(t, inputs, 0.0);
    const CorrelationMatrix at_pi = correlation_map(t, inputs, kPi);
    if (wants(c, "csv")) {
        s.write("corrmap_phi0.csv", correlation_csv(at_zero));
        s.write("corrmap_phipi.csv", correlation_csv(at_pi));
    }
    if (wants(c, "svg"))
        s.write("corrmap.svg", correlation_maps_svg({{"phi = 0", at_zero}, {"phi = pi", at_pi}}));
    s.finish();
    std::cout << "phi = 0\n" << correlation_csv(at_zero) << "phi = pi\n" << correlation_csv(at_pi);
    return kOk;
}

void add_common_options(CLI::App* sub, RunConfig& c)
{
    sub->add_option("--n", c.ports, "number of ports N")->capture_default_str();
    sub->add_option("--q", c.q, "length in units of z0/(4N)");
    sub->add_option("--zeta", c.zeta, "relative length L/z0, e.g. 1/4 or 0.25");
    sub->add_option("--modes", c.modes, "mode cutoff")->capture_default_str();
    sub->add_option("--grid", c.grid, "transverse grid points")->capture_default_str();
    sub->add_option("--width", c.width, "waveguide width D in meters")->capture_default_str();
    sub->add_option("--wavelength", c.wavelength, "wavelength in meters")->capture_default_str();
    sub->add_option("--sigma", c.sigma, "port spot field std in meters (default D/(10N))");
    sub->add_option("--out", c.out, "output directory")->capture_default_str();
    sub->add_option("--format", c.format, "csv|json|svg|all")->capture_default_str();
    sub->add_option("--seed", c.seed, "noise seed")->capture_default_str();
}

void add_phase_options(CLI::App* sub, RunConfig& c)
{
    sub->add_option("--inputs", c.inputs, "input ports i,j of the NOON state");
    sub->add_option("--phi-samples", c.phi_samples, "phase samples over [0, 2pi)")->capture_default_str();
    sub->add_option("--background", c.background, "constant floor added to every curve")->capture_default_str();
    sub->add_option("--noise", c.noise, "uniform noise amplitude added to every sample")->capture_default_str();
}

} // namespace

double parse_fraction(const std::string& text)
{
    try {
        std::size_t used = 0;
        const auto slash = text.find('/');
        if (slash == std::string::npos) {
            const double v = std::stod(text, &used);
            if (used != text.size())
                throw InvalidInput("bad number: " + text);
            return v;
        }
        const std::string a = text.substr(0, slash), b = text.substr(slash + 1);
        std::size_t used_b = 0;
        const double num = std::stod(a, &used);
        const double den = std::stod(b, &used_b);
        if (used != a.size() || used_b != b.size() || den == 0.0)
            throw InvalidInput("bad fraction: " + text);
        return num / den;
    } catch (const std::logic_error&) {
        throw InvalidInput("bad number: " + text);
    }
}

int resolve_quarter_steps(const RunConfig& config, int default_q)
{
    std::optional<int> from_zeta;
    if (config.zeta) {
        const double zeta = parse_fraction(*config.zeta);
        const double q = zeta * 4.0 * config.ports;
        if (!(zeta >= 0.0) || std::abs(q - std::round(q)) > 1e-9)
            throw InvalidInput("--zeta must be a non-negative multiple of 1/(4N)");
        from_zeta = static_cast<int>(std::lround(q));
    }
    if (config.q && *config.q < 0)
        throw InvalidInput("--q must be non-negative");
    if (config.q && from_zeta && *config.q != *from_zeta)
        throw InvalidInput("--q and --zeta disagree (zeta = q/(4N))");
    return config.q.value_or(from_zeta.value_or(default_q));
}

int run(const std::vector<std::string>& args)
{
    RunConfig config;
    CLI::App app{"Two-photon interference in multi-mode waveguide beam splitters", "mmi-sim"};
    app.set_config("--config", "", "TOML/INI file with option values; flags override it");
    app.require_subcommand(1);

    auto* field = app.add_subcommand("field-map", "intensity |E(x,z)|^2 over z in [0, z0] for one input port");
    add_common_options(field, config);
    field->add_option("--port", config.port, "input port (default N)");
    field->add_option("--z-samples", config.z_samples, "rows along z")->capture_default_str();
    field->add_option("--x-samples", config.x_samples, "columns across x")->capture_default_str();

    auto* matrix = app.add_subcommand("matrix", "single-photon transfer matrix");
    add_common_options(matrix, config);

    auto* sweep = app.add_subcommand("sweep", "C(phi) curves, sinusoid fits and grouping");
    add_common_options(sweep, config);
    add_phase_options(sweep, config);

    auto* corrmap = app.add_subcommand("corrmap", "correlation maps at phi = 0 and phi = pi");
    add_common_options(corrmap, config);
    add_phase_options(corrmap, config);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalidConfig;
    }

    try {
        if (field->parsed()) {
            config.command = "field-map";
            return cmd_field_map(config);
        }
        if (matrix->parsed()) {
            config.command = "matrix";
            return cmd_matrix(config);
        }
        if (sweep->parsed()) {
            config.command = "sweep";
            return cmd_sweep(config);
        }
        config.command = "corrmap";
        return cmd_corrmap(config);
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalidConfig;
    } catch (const ModelBreakdown& e) {
        std::cerr << "model breakdown: " << e.what() << '\n';
        return kModelBreakdown;
    } catch (const UnitarityViolation& e) {
        std::cerr << "model breakdown: " << e.what() << '\n';
        return kModelBreakdown;
    }
}

} // namespace mmi::cli
