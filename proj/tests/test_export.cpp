#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "mmi/export.hpp"

namespace {

using mmi::kPi;

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        out.push_back(line);
    return out;
}

TEST(FormatNumber, TwelveSignificantDigits)
{
    EXPECT_EQ(mmi::format_number(0.5), "0.5");
    EXPECT_EQ(mmi::format_number(1.0 / 3), "0.333333333333");
    EXPECT_EQ(mmi::format_number(-0.0), "0");
    EXPECT_EQ(mmi::format_number(0.0), "0");
    EXPECT_EQ(mmi::format_number(-1e-20), "-1e-20");
    EXPECT_EQ(mmi::format_number(123456789012345.0), "1.23456789012e+14");
    EXPECT_EQ(mmi::format_number(2.0), "2");
}

TEST(MatrixExport, CsvAndJson)
{
    const auto t = mmi::analytic_two_port(kPi / 2);
    const auto csv = lines(mmi::matrix_csv(t));
    ASSERT_EQ(csv.size(), 3u);
    EXPECT_EQ(csv[0], "re_1,im_1,re_2,im_2");
    EXPECT_EQ(csv[1], "6.12323399574e-17,0,0,1");

    const auto json = mmi::matrix_json(fixtures::built(2, 2));
    EXPECT_EQ(json["ports"], 2);
    EXPECT_EQ(json["q"], 2);
    EXPECT_EQ(json["zeta"], "1/4");
    EXPECT_LT(json["unitarity_deviation"].get<double>(), 1e-10);
    EXPECT_NEAR(json["matrix"][0][1][1].get<double>(), 1 / std::sqrt(2.0), 1e-3);
    EXPECT_FALSE(mmi::matrix_json(t).contains("q"));
}

TEST(StateExport, ConfigsWithParts)
{
    const auto json = mmi::state_json(mmi::make_noon_input(2, 1, 2, kPi / 2));
    ASSERT_EQ(json.size(), 3u);
    EXPECT_EQ(json[0]["config"], (std::vector<int>{2, 0}));
    EXPECT_NEAR(json[2]["im"].get<double>(), 1 / std::sqrt(2.0), 1e-12);
    EXPECT_EQ(json[1]["re"].get<double>(), 0.0);
}

TEST(CorrelationExport, GridWithPortHeaders)
{
    const auto map = mmi::correlation_map(mmi::analytic_two_port(kPi / 4), {1, 2}, 0.0);
    const auto csv = lines(mmi::correlation_csv(map));
    ASSERT_EQ(csv.size(), 3u);
    EXPECT_EQ(csv[0], "port,1,2");
    EXPECT_EQ(csv[1].substr(0, 2), "1,");
    EXPECT_NE(csv[1].find(",0.5"), std::string::npos);
}

TEST(SweepExport, HeaderAndRows)
{
    const auto sweep = mmi::sweep_phase(mmi::analytic_two_port(kPi / 4), {1, 2}, mmi::phase_grid(8));
    const auto csv = lines(mmi::sweep_csv(sweep));
    ASSERT_EQ(csv.size(), 9u);
    EXPECT_EQ(csv[0], "phi,C_1_1,C_1_2,C_2_2");
    EXPECT_EQ(csv[1].substr(0, 2), "0,");

    const auto fits = mmi::fits_json(sweep, mmi::classify_curve_groups(sweep, 1e-6));
    EXPECT_EQ(fits["ports"], 2);
    EXPECT_EQ(fits["inputs"], (std::vector<int>{1, 2}));
    ASSERT_EQ(fits["fits"].size(), 3u);
    EXPECT_NEAR(fits["fits"][1]["visibility"].get<double>(), 1.0, 1e-10);
    EXPECT_EQ(fits["groups"].size(), 2u);
}

TEST(IntensityExport, RowsAreXColumnsAreZ)
{
    const mmi::WaveguideSpec spec(1.0, 1.0, 8, 32);
    const std::vector<double> zs = {0.0, 1.0, 2.0};
    const std::vector<double> xs = {-0.25, 0.0, 0.25, 0.5};
    const auto map = mmi::intensity_map(spec, mmi::gaussian_profile(spec, 0.0, 0.1), zs, xs);
    const auto csv = lines(mmi::intensity_csv(map));
    ASSERT_EQ(csv.size(), 5u);
    EXPECT_EQ(csv[0], "x,0,1,2");
    EXPECT_EQ(csv[1].substr(0, 6), "-0.25,");
}

TEST(Svg, WellFormedDocuments)
{
    const auto sweep = mmi::sweep_phase(mmi::analytic_two_port(kPi / 4), {1, 2}, mmi::phase_grid(8));
    for (const std::string& svg :
         {mmi::sweep_svg(sweep),
          mmi::correlation_maps_svg({{"phi = 0", mmi::correlation_map(mmi::analytic_two_port(kPi / 4), {1, 2}, 0.0)}})}) {
        EXPECT_EQ(svg.rfind("<svg", 0), 0u);
        EXPECT_NE(svg.find("</svg>"), std::string::npos);
    }
}

} // namespace
