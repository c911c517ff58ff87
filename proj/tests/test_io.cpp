#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "priorisk/config.hpp"
#include "priorisk/csv_io.hpp"
#include "priorisk/svg.hpp"

using namespace priorisk;

TEST_CASE("config parsing") {
    Config c = parse_config("# comment\ntop = 9\n\n[alpha]\nx = 1\ny = two words\n[beta]\nz=3.5\n");
    CHECK(c.size() == 4);
    CHECK(c.at("top") == "9");
    CHECK(c.at("alpha.x") == "1");
    CHECK(c.at("alpha.y") == "two words");
    CHECK(c.at("beta.z") == "3.5");

    CHECK_THROWS_AS(parse_config("novalue\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("= 3\n"), std::invalid_argument);

    // Round-trip must survive unsectioned keys that sort after sectioned
    // ones: they have to be written before any [section] header.
    Config mixed{{"alpha.x", "1"}, {"zmode", "late"}, {"beta.q", "2"}, {"top", "9"}};
    CHECK(parse_config(serialize_config(mixed)) == mixed);
    CHECK(serialize_config(mixed) == serialize_config(parse_config(serialize_config(mixed))));

    CHECK(parse_int_list("1, 2,3") == std::vector<int>{1, 2, 3});
    CHECK(parse_double_list("0.5,2") == std::vector<double>{0.5, 2.0});
    CHECK_THROWS_AS(parse_int_list("1,x"), std::invalid_argument);
    CHECK(join_ints({16, 32, 64}) == "16,32,64");
    CHECK(parse_int_list(join_ints({5, 15, 50})) == std::vector<int>{5, 15, 50});
}

TEST_CASE("double formatting round trips") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.123456789, 5e-324, 3.141592653589793,
                     2.0, 0.0, 1e17}) {
        // strtod instead of stod: stod throws on subnormals even though the
        // conversion itself is exact.
        CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
        CHECK(std::strtod(format_double(-v).c_str(), nullptr) == -v);
    }
}

TEST_CASE("curve csv round trips") {
    std::vector<CurveSeries> series(2);
    series[0].label = "minimax";
    series[0].points = {{16, 0.03125, 0.0}, {32, 1.0 / 45.0, 1e-5}};
    series[1].label = "prioritized";
    series[1].points = {{16, 0.0279508497187474, 0.0}};

    std::string csv = emit_curve_csv(series);
    CHECK(csv.rfind("series,label,n,value,std_error\n", 0) == 0);

    std::vector<CurveSeries> back = parse_curve_csv(csv);
    REQUIRE(back.size() == 2);
    CHECK(back[0].label == "minimax");
    CHECK(back[1].label == "prioritized");
    REQUIRE(back[0].points.size() == 2);
    CHECK(back[0].points[1].n == 32);
    CHECK(back[0].points[1].value == 1.0 / 45.0);  // 17 digits survive exactly
    CHECK(back[0].points[1].std_error == 1e-5);
    CHECK(emit_curve_csv(back) == csv);

    CHECK_THROWS_AS(parse_curve_csv("wrong,header\n1,a,2,3,4\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_curve_csv("series,label,n,value,std_error\n0,a,1,2\n"),
                    std::invalid_argument);
}

TEST_CASE("loss matrix csv round trips") {
    LossMatrixCsv m;
    m.thetas = {0.1, 0.9};
    m.action_labels = {"keep", "drop", "mix"};
    m.entries = {{5.0, 6.25, 50.0}, {42.0, 5.0, 7.5}};
    std::string csv = emit_loss_matrix_csv(m);
    LossMatrixCsv back = parse_loss_matrix_csv(csv);
    CHECK(back.thetas == m.thetas);
    CHECK(back.action_labels == m.action_labels);
    CHECK(back.entries == m.entries);
    CHECK(emit_loss_matrix_csv(back) == csv);

    CHECK_THROWS_AS(parse_loss_matrix_csv(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_loss_matrix_csv("theta\n0.5\n"), std::invalid_argument);

    LossMatrixCsv ragged = m;
    ragged.entries[1].pop_back();
    CHECK_THROWS_AS(emit_loss_matrix_csv(ragged), std::invalid_argument);
}

TEST_CASE("regressor csv round trips") {
    RegressorMatrix Z(3, 2, {0.9, 0.1, 0.2, 0.8, 0.5, 0.5});
    std::string csv = emit_regressor_csv(Z);
    RegressorMatrix back = parse_regressor_csv(csv);
    CHECK(back.observations() == 3);
    CHECK(back.dims() == 2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 2; ++j) CHECK(back.z(i, j) == Z.z(i, j));

    CHECK_THROWS_AS(parse_regressor_csv(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_regressor_csv("1,2\n3\n"), std::invalid_argument);
}

TEST_CASE("file io") {
    std::string path = "/tmp/priorisk_io_roundtrip.txt";
    std::string content = "line one\nline two\n0.1,0.2\n";
    write_file(path, content);
    CHECK(read_file(path) == content);
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_file("/tmp/priorisk_no_such_file.txt"), std::invalid_argument);
}

TEST_CASE("axis mapping") {
    CHECK(svg_map(5.0, 0.0, 10.0, 0.0, 100.0, false) == 50.0);
    CHECK(svg_map(0.0, 0.0, 10.0, 20.0, 120.0, false) == 20.0);
    CHECK(svg_map(10.0, 0.0, 10.0, 20.0, 120.0, false) == 120.0);
    CHECK(svg_map(10.0, 1.0, 100.0, 0.0, 200.0, true) == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(svg_map(1.0, 1.0, 100.0, 0.0, 200.0, true) == doctest::Approx(0.0).epsilon(1e-12));
    // Decreasing pixel ranges flip the axis direction.
    CHECK(svg_map(2.5, 0.0, 10.0, 100.0, 0.0, false) == 75.0);
}

TEST_CASE("chart emission") {
    std::vector<CurveSeries> series(2);
    series[0].label = "alpha";
    series[0].points = {{1, 0.5, 0.0}, {10, 0.25, 0.0}, {100, 0.125, 0.0}};
    series[1].label = "beta";
    series[1].points = {{1, 0.4, 0.0}, {10, 0.0, 0.0}, {100, 0.1, 0.0}};

    AxesConfig axes;
    axes.log_x = true;
    axes.log_y = true;
    axes.title = "sample chart";
    std::string svg = emit_svg(series, axes);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("sample chart") != std::string::npos);
    CHECK(svg.find("alpha") != std::string::npos);
    CHECK(svg.find("beta") != std::string::npos);
    size_t polylines = 0;
    for (size_t p = svg.find("<polyline"); p != std::string::npos;
         p = svg.find("<polyline", p + 1))
        ++polylines;
    CHECK(polylines >= 2);
    // The zero value cannot appear on a log axis.
    CHECK(svg.find("nan") == std::string::npos);
    CHECK(svg.find("inf") == std::string::npos);

    std::string rerun = emit_svg(series, axes);
    CHECK(svg == rerun);

    CHECK_THROWS_AS(emit_svg({}, axes), std::invalid_argument);
    std::vector<CurveSeries> dead(1);
    dead[0].label = "flat0";
    dead[0].points = {{1, 0.0, 0.0}, {2, -1.0, 0.0}};
    CHECK_THROWS_AS(emit_svg(dead, axes), std::invalid_argument);
    // The same series is fine on linear axes.
    AxesConfig lin;
    CHECK(emit_svg(dead, lin).find("</svg>") != std::string::npos);
}
