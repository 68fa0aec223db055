#include "mmi/export.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mmi/errors.hpp"

namespace mmi {

namespace {

// JSON numbers carry the same 12 significant digits as the CSV files.
double rounded(double v)
{
    return std::stod(format_number(v));
}

std::string pair_label(PortPair p)
{
    return "C_" + std::to_string(p.m) + "_" + std::to_string(p.n);
}

} // namespace

std::string format_number(double v)
{
    if (v == 0.0 || !std::isfinite(v))
        return std::isfinite(v) ? "0" : (std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf"));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    std::string s(buf);
    return s == "-0" ? "0" : s;
}

std::string intensity_csv(const IntensityMap& map)
{
    std::ostringstream out;
    out << "x";
    for (double z : map.z)
        out << ',' << format_number(z);
    out << '\n';
    for (std::size_t c = 0; c < map.x.size(); ++c) {
        out << format_number(map.x[c]);
        for (std::size_t r = 0; r < map.z.size(); ++r)
            out << ',' << format_number(map.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
        out << '\n';
    }
    return out.str();
}

std::string matrix_csv(const TransferMatrix& t)
{
    std::ostringstream out;
    for (int in = 1; in <= t.ports(); ++in)
        out << (in > 1 ? "," : "") << "re_" << in << ",im_" << in;
    out << '\n';
    for (int r = 0; r < t.ports(); ++r) {
        for (int c = 0; c < t.ports(); ++c)
            out << (c > 0 ? "," : "") << format_number(t(r, c).real()) << ',' << format_number(t(r, c).imag());
        out << '\n';
    }
    return out.str();
}

nlohmann::json matrix_json(const TransferMatrix& t)
{
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < t.ports(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < t.ports(); ++c)
            row.push_back({rounded(t(r, c).real()), rounded(t(r, c).imag())});
        rows.push_back(std::move(row));
    }
    nlohmann::json out;
    out["ports"] = t.ports();
    if (auto q = t.quarter_steps()) {
        out["q"] = *q;
        out["zeta"] = t.relative_length()->str();
    }
    out["raw_unitarity_deviation"] = rounded(t.raw_unitarity_deviation());
    out["unitarity_deviation"] = rounded(unitarity_deviation(t.matrix()));
    out["matrix"] = std::move(rows);
    return out;
}

nlohmann::json state_json(const MultiPhotonState& state)
{
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t k = 0; k < state.basis().size(); ++k) {
        const cplx a = state.amplitudes()(static_cast<Eigen::Index>(k));
        out.push_back({{"config", state.basis()[k].occupation()}, {"re", rounded(a.real())}, {"im", rounded(a.imag())}});
    }
    return out;
}

std::string correlation_csv(const CorrelationMatrix& c)
{
    std::ostringstream out;
    out << "port";
    for (int n = 1; n <= c.ports(); ++n)
        out << ',' << n;
    out << '\n';
    for (int m = 1; m <= c.ports(); ++m) {
        out << m;
        for (int n = 1; n <= c.ports(); ++n)
            out << ',' << format_number(c(m, n));
        out << '\n';
    }
    return out.str();
}

std::string sweep_csv(const CorrelationSweep& sweep)
{
    std::ostringstream out;
    out << "phi";
    for (const PortPair& p : sweep.pairs())
        out << ',' << pair_label(p);
    out << '\n';
    for (std::size_t k = 0; k < sweep.phi().size(); ++k) {
        out << format_number(sweep.phi()[k]);
        for (const auto& c : sweep.curves())
            out << ',' << format_number(c[k]);
        out << '\n';
    }
    return out.str();
}

nlohmann::json fits_json(const CorrelationSweep& sweep, const std::vector<CurveGroup>& groups)
{
    nlohmann::json fits = nlohmann::json::array();
    for (std::size_t c = 0; c < sweep.pairs().size(); ++c) {
        const SinusoidFit fit = fit_sinusoid(sweep.phi(), sweep.curves()[c]);
        nlohmann::json entry = {{"pair", {sweep.pairs()[c].m, sweep.pairs()[c].n}},
                                {"A", rounded(fit.offset)},
                                {"B", rounded(fit.amplitude)},
                                {"phi0", rounded(fit.phase)},
                                {"rms", rounded(fit.rms)},
                                {"degenerate", fit.degenerate}};
        // Curves that touch zero can fit with B marginally above A; report no visibility then.
        try {
            entry["visibility"] = fit.offset > 0.0 ? nlohmann::json(rounded(visibility(fit).value)) : nlohmann::json();
        } catch (const InvalidInput&) {
            entry["visibility"] = nullptr;
        }
        fits.push_back(std::move(entry));
    }
    nlohmann::json grouped = nlohmann::json::array();
    for (const auto& g : groups) {
        nlohmann::json members = nlohmann::json::array();
        for (const PortPair& p : g.members)
            members.push_back({p.m, p.n});
        grouped.push_back({{"members", std::move(members)},
                           {"A", rounded(g.offset)},
                           {"B", rounded(g.amplitude)},
                           {"phi0", rounded(g.phase)},
                           {"constant", g.constant}});
    }
    nlohmann::json out;
    out["ports"] = sweep.info().ports;
    if (sweep.info().quarter_steps)
        out["q"] = *sweep.info().quarter_steps;
    out["inputs"] = {sweep.info().inputs.m, sweep.info().inputs.n};
    out["background"] = rounded(sweep.info().background);
    out["fits"] = std::move(fits);
    out["groups"] = std::move(grouped);
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw InvalidInput("cannot open " + path.string() + " for writing");
    out << text;
    if (!out)
        throw InvalidInput("failed writing " + path.string());
}

} // namespace mmi
