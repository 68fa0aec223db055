#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "mmi/export.hpp"

namespace mmi {

namespace {

constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string gray(double level)
{
    const int v = static_cast<int>(std::lround(255.0 * std::clamp(level, 0.0, 1.0)));
    std::ostringstream out;
    out << "rgb(" << v << ',' << v << ',' << v << ')';
    return out.str();
}

std::string header(double w, double h)
{
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 "
        << w << ' ' << h << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    return out.str();
}

} // namespace

std::string intensity_svg(const IntensityMap& map)
{
    const auto nz = static_cast<std::size_t>(map.values.rows());
    const auto nx = static_cast<std::size_t>(map.values.cols());
    constexpr std::size_t max_cells = 200;
    const std::size_t sz = std::max<std::size_t>(1, (nz + max_cells - 1) / max_cells);
    const std::size_t sx = std::max<std::size_t>(1, (nx + max_cells - 1) / max_cells);
    const std::size_t cz = (nz + sz - 1) / sz;
    const std::size_t cx = (nx + sx - 1) / sx;

    const double plot_w = 600.0, plot_h = 300.0, left = 60.0, top = 20.0;
    const double cell_w = plot_w / static_cast<double>(cz);
    const double cell_h = plot_h / static_cast<double>(cx);
    const double peak = std::max(map.values.maxCoeff(), 1e-300);

    std::ostringstream out;
    out << header(left + plot_w + 20.0, top + plot_h + 50.0);
    // z runs left to right, x bottom (-D/2) to top (+D/2); bright = high intensity.
    for (std::size_t i = 0; i < cz; ++i) {
        for (std::size_t j = 0; j < cx; ++j) {
            double level = 0.0;
            for (std::size_t r = i * sz; r < std::min(nz, (i + 1) * sz); ++r)
                for (std::size_t c = j * sx; c < std::min(nx, (j + 1) * sx); ++c)
                    level = std::max(level, map.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
            out << "<rect x=\"" << left + static_cast<double>(i) * cell_w << "\" y=\""
                << top + plot_h - static_cast<double>(j + 1) * cell_h << "\" width=\"" << cell_w + 0.05
                << "\" height=\"" << cell_h + 0.05 << "\" fill=\"" << gray(std::sqrt(level / peak)) << "\"/>\n";
        }
    }
    out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << top + plot_h + 35 << "\" text-anchor=\"middle\">z</text>\n"
        << "<text x=\"20\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\">x</text>\n"
        << "</svg>\n";
    return out.str();
}

std::string sweep_svg(const CorrelationSweep& sweep)
{
    const double plot_w = 560.0, plot_h = 320.0, left = 60.0, top = 20.0, legend_w = 110.0;
    double y_max = 0.0;
    for (const auto& c : sweep.curves())
        for (double v : c)
            y_max = std::max(y_max, v);
    y_max = y_max > 0.0 ? y_max * 1.05 : 1.0;
    const auto px = [&](double phi) { return left + plot_w * phi / (2.0 * kPi); };
    const auto py = [&](double v) { return top + plot_h * (1.0 - v / y_max); };

    std::ostringstream out;
    out << header(left + plot_w + legend_w, top + plot_h + 50.0);
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double phi = 0.5 * kPi * k;
        static constexpr std::array<const char*, 5> labels = {"0", "π/2", "π", "3π/2", "2π"};
        out << "<text x=\"" << px(phi) << "\" y=\"" << top + plot_h + 18 << "\" text-anchor=\"middle\">"
            << labels[static_cast<std::size_t>(k)] << "</text>\n";
    }
    out << "<text x=\"" << left - 8 << "\" y=\"" << py(0.0) << "\" text-anchor=\"end\">0</text>\n"
        << "<text x=\"" << left - 8 << "\" y=\"" << py(y_max) + 10 << "\" text-anchor=\"end\">"
        << format_number(std::round(y_max * 1000.0) / 1000.0) << "</text>\n"
        << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << top + plot_h + 38 << "\" text-anchor=\"middle\">φ</text>\n";

    for (std::size_t c = 0; c < sweep.curves().size(); ++c) {
        const char* colour = kPalette[c % kPalette.size()];
        out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < sweep.phi().size(); ++k)
            out << (k ? " " : "") << px(sweep.phi()[k]) << ',' << py(sweep.curves()[c][k]);
        out << "\"/>\n";
        const PortPair p = sweep.pairs()[c];
        const double ly = top + 14.0 * static_cast<double>(c + 1);
        out << "<line x1=\"" << left + plot_w + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << left + plot_w + 30
            << "\" y2=\"" << ly - 4 << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << left + plot_w + 35 << "\" y=\"" << ly << "\">" << p.m << '-' << p.n << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string correlation_maps_svg(const std::vector<std::pair<std::string, CorrelationMatrix>>& maps)
{
    const double panel = 220.0, gap = 40.0, top = 30.0;
    double peak = 0.0;
    for (const auto& [label, m] : maps)
        peak = std::max(peak, m.values().maxCoeff());
    if (peak <= 0.0)
        peak = 1.0;

    std::ostringstream out;
    out << header(gap + static_cast<double>(maps.size()) * (panel + gap), top + panel + 30.0);
    for (std::size_t k = 0; k < maps.size(); ++k) {
        const auto& [label, m] = maps[k];
        const double x0 = gap + static_cast<double>(k) * (panel + gap);
        const double cell = panel / m.ports();
        out << "<text x=\"" << x0 + panel / 2 << "\" y=\"" << top - 10 << "\" text-anchor=\"middle\">" << label
            << "</text>\n";
        for (int r = 1; r <= m.ports(); ++r)
            for (int c = 1; c <= m.ports(); ++c)
                out << "<rect x=\"" << x0 + (c - 1) * cell << "\" y=\"" << top + (r - 1) * cell << "\" width=\"" << cell
                    << "\" height=\"" << cell << "\" fill=\"" << gray(1.0 - m(r, c) / peak)
                    << "\" stroke=\"#999\" stroke-width=\"0.5\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace mmi
