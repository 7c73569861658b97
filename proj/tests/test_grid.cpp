#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "doctest.h"
#include "strongmax/descriptor.hpp"
#include "strongmax/grid.hpp"
#include "support.hpp"

using namespace strongmax;

namespace {

double direct_sum(const GridFunction& f, const AxisRect& r) {
    double s = 0.0;
    const auto c = f.cells();
    const std::size_t c1 = f.dim() > 1 ? c[1] : 1;
    const std::size_t c2 = f.dim() > 2 ? c[2] : 1;
    for (std::size_t i = r.lo[0]; i < r.hi[0]; ++i)
        for (std::size_t j = (f.dim() > 1 ? r.lo[1] : 0); j < (f.dim() > 1 ? r.hi[1] : 1); ++j)
            for (std::size_t k = (f.dim() > 2 ? r.lo[2] : 0); k < (f.dim() > 2 ? r.hi[2] : 1); ++k)
                s += f.values()[(i * c1 + j) * c2 + k];
    return s;
}

AxisRect random_rect(std::mt19937_64& rng, const GridFunction& f) {
    AxisRect r;
    r.dim = f.dim();
    for (int k = 0; k < f.dim(); ++k) {
        const auto n = f.cells()[static_cast<std::size_t>(k)];
        std::uniform_int_distribution<std::size_t> a(0, n - 1);
        std::size_t lo = a(rng), hi = a(rng);
        if (lo > hi) std::swap(lo, hi);
        r.lo[static_cast<std::size_t>(k)] = lo;
        r.hi[static_cast<std::size_t>(k)] = hi + 1;
    }
    return r;
}

}  // namespace

TEST_SUITE("grid") {

TEST_CASE("cube indicator in 1D samples cell centers") {
    const auto d = parse_descriptor(nlohmann::json::parse(R"({"shape":"cube","half_width":1,"height":1,"dim":1})"));
    const auto f = build_grid_function(d, Sampling{{-2.0}, {2.0}, {4}});
    REQUIRE(f.size() == 4);
    CHECK(f.values()[0] == 0.0);
    CHECK(f.values()[1] == 1.0);
    CHECK(f.values()[2] == 1.0);
    CHECK(f.values()[3] == 0.0);
}

TEST_CASE("cube indicator in 2D has four interior ones") {
    const auto d = parse_descriptor(nlohmann::json::parse(R"({"shape":"cube","half_width":1,"height":1,"dim":2})"));
    const auto f = build_grid_function(d, centered_sampling(2, 2.0, 4));
    int ones = 0, zeros = 0;
    for (double v : f.values()) (v == 1.0 ? ones : zeros) += 1;
    CHECK(ones == 4);
    CHECK(zeros == 12);
    CHECK(f.at(std::vector<std::size_t>{1, 2}) == 1.0);
    CHECK(f.at(std::vector<std::size_t>{0, 2}) == 0.0);
}

TEST_CASE("ball indicator mass approaches pi") {
    const auto d = parse_descriptor(nlohmann::json::parse(R"({"shape":"ball","radius":1,"height":1,"dim":2})"));
    const auto f = build_grid_function(d, centered_sampling(2, 1.0, 200));
    CHECK(std::abs(f.mass() - std::numbers::pi) / std::numbers::pi < 0.01);
    CHECK(*d.analytic_mass() == doctest::Approx(std::numbers::pi));
}

TEST_CASE("tent is a product of one-dimensional hats") {
    const auto d = parse_descriptor(nlohmann::json::parse(R"({"shape":"tent","half_width":2,"height":3,"dim":2})"));
    const auto f = build_grid_function(d, centered_sampling(2, 2.0, 8));
    for (std::size_t i = 0; i < 8; ++i) {
        for (std::size_t j = 0; j < 8; ++j) {
            const double x = f.center(0, i), y = f.center(1, j);
            const double expected = 3.0 * (1.0 - std::abs(x) / 2.0) * (1.0 - std::abs(y) / 2.0);
            CHECK(f.at(std::vector<std::size_t>{i, j}) == doctest::Approx(expected).epsilon(1e-14));
        }
    }
    CHECK(*d.analytic_mass() == doctest::Approx(12.0));
}

TEST_CASE("sample files load row-major and report their maximum as height") {
    const auto dir = std::filesystem::temp_directory_path() / "strongmax_grid_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream csv(dir / "f.csv");
        csv << "0,1,2\n3,4,5\n";
    }
    const auto d = parse_descriptor(
        nlohmann::json::parse(R"({"shape":"samples","file":"f.csv","box_lo":[0,0],"box_hi":[2,3],"cells":[2,3]})"),
        dir);
    CHECK(d.height == 5.0);
    const auto f = build_grid_function(d);
    CHECK(f.at(std::vector<std::size_t>{1, 0}) == 3.0);
    CHECK(f.at(std::vector<std::size_t>{0, 2}) == 2.0);
    CHECK(f.cell_volume() == doctest::Approx(1.0));

    const auto bad = parse_descriptor(
        nlohmann::json::parse(R"({"shape":"samples","file":"f.csv","box_lo":[0,0],"box_hi":[2,3],"cells":[3,3]})"),
        dir);
    CHECK_THROWS_AS((void)build_grid_function(bad), std::invalid_argument);
}

TEST_CASE("descriptor validation") {
    CHECK_THROWS_AS((void)parse_descriptor(nlohmann::json::parse(R"({"shape":"star","dim":1})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        (void)parse_descriptor(nlohmann::json::parse(R"({"shape":"cube","half_width":0,"height":1,"dim":1})")),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (void)parse_descriptor(nlohmann::json::parse(R"({"shape":"cube","half_width":1,"height":-1,"dim":1})")),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (void)parse_descriptor(nlohmann::json::parse(R"({"shape":"cube","half_width":1,"height":1,"dim":4})")),
        std::invalid_argument);
    CHECK_THROWS_AS((void)centered_sampling(2, 1.0, 0), std::invalid_argument);
    const auto inline_json = load_descriptor(R"({"shape":"ball","radius":2,"height":0.5,"dim":2})");
    CHECK(inline_json.shape == Shape::ball);
    CHECK(inline_json.half_width == 2.0);
}

TEST_CASE("grid function validation") {
    CHECK_THROWS_AS(GridFunction({1.0}, {0.0}, {2}, {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(GridFunction({0.0}, {1.0}, {0}, {}), std::invalid_argument);
    CHECK_THROWS_AS(GridFunction({0.0}, {1.0}, {2}, {1.0, -1.0}), std::invalid_argument);
    CHECK_THROWS_AS(GridFunction({0.0}, {1.0}, {2}, {1.0, std::nan("")}), std::invalid_argument);
    CHECK_THROWS_AS(GridFunction({0.0}, {1.0}, {2}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(GridFunction({0, 0, 0, 0}, {1, 1, 1, 1}, {1, 1, 1, 1}, {1.0}), std::invalid_argument);
}

TEST_CASE("summed-area table examples") {
    const GridFunction f({0.0}, {3.0}, {3}, {1.0, 2.0, 3.0});
    const auto s = summed_area(f);
    REQUIRE(s.table().size() == 4);
    CHECK(s.table()[0] == 0.0);
    CHECK(s.table()[1] == 1.0);
    CHECK(s.table()[2] == 3.0);
    CHECK(s.table()[3] == 6.0);

    const GridFunction z({0.0, 0.0}, {1.0, 1.0}, {3, 5}, std::vector<double>(15, 0.0));
    const auto sz = summed_area(z);
    for (double v : sz.table()) CHECK(v == 0.0);
}

TEST_CASE("rectangle sums equal direct summation on every rectangle") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> digit(0, 9);
    std::vector<double> values(64);
    for (auto& v : values) v = digit(rng);  // integers keep every partial sum exact
    const GridFunction f({0.0, 0.0}, {1.0, 1.0}, {8, 8}, values);
    const auto s = summed_area(f);
    AxisRect r;
    r.dim = 2;
    for (r.lo[0] = 0; r.lo[0] < 8; ++r.lo[0])
        for (r.hi[0] = r.lo[0] + 1; r.hi[0] <= 8; ++r.hi[0])
            for (r.lo[1] = 0; r.lo[1] < 8; ++r.lo[1])
                for (r.hi[1] = r.lo[1] + 1; r.hi[1] <= 8; ++r.hi[1]) CHECK(s.rect_sum(r) == direct_sum(f, r));
}

TEST_CASE("rectangle averages") {
    const GridFunction ones({0.0, 0.0, 0.0}, {1.0, 2.0, 3.0}, {3, 4, 5}, std::vector<double>(60, 1.0));
    std::mt19937_64 rng(5);
    const auto so = summed_area(ones);
    for (int t = 0; t < 20; ++t) CHECK(rect_average(so, random_rect(rng, ones)) == 1.0);

    const GridFunction two({0.0}, {1.0}, {2}, {0.0, 4.0});
    CHECK(rect_average(summed_area(two), full_rect(two)) == 2.0);

    const auto f = testing_support::random_grid(rng, {6, 6});
    const auto s = summed_area(f);
    for (int t = 0; t < 50; ++t) {
        const auto r = random_rect(rng, f);
        const double mean = direct_sum(f, r) / static_cast<double>(r.cell_count());
        CHECK(rect_average(s, r) == doctest::Approx(mean).epsilon(1e-13));
    }
}

TEST_CASE("rectangle queries reject bad indices") {
    const GridFunction f({0.0, 0.0}, {1.0, 1.0}, {3, 3}, std::vector<double>(9, 1.0));
    const auto s = summed_area(f);
    AxisRect r;
    r.dim = 2;
    r.lo = {0, 0, 0};
    r.hi = {4, 1, 0};
    CHECK_THROWS_AS((void)s.rect_sum(r), std::out_of_range);
    r.hi = {2, 0, 0};
    CHECK_THROWS_AS((void)s.rect_sum(r), std::out_of_range);
    r.dim = 1;
    r.hi = {2, 1, 0};
    CHECK_THROWS_AS((void)s.rect_sum(r), std::out_of_range);
}

TEST_CASE("property: averages respect domination, mass and translation") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 30; ++trial) {
        const int dim = 1 + trial % 3;
        const auto f = testing_support::random_grid(rng, testing_support::random_shape(rng, dim, 7));
        std::vector<double> bigger(f.values().begin(), f.values().end());
        std::uniform_real_distribution<double> bump(0.0, 0.5);
        for (auto& v : bigger) v += bump(rng);
        const auto g = f.with_values(bigger);
        const auto sf = summed_area(f);
        const auto sg = summed_area(g);
        for (int q = 0; q < 20; ++q) {
            const auto r = random_rect(rng, f);
            CHECK(rect_average(sf, r) <= rect_average(sg, r) + 1e-15);
        }
        CHECK(rect_average(sf, full_rect(f)) * f.box_volume() == doctest::Approx(f.mass()).epsilon(1e-12));
    }

    // Shift a 1D signal right by one cell; averages follow the shifted rectangle.
    const auto f = testing_support::random_grid(rng, {10});
    std::vector<double> shifted(11, 0.0);
    for (std::size_t i = 0; i < 10; ++i) shifted[i + 1] = f.values()[i];
    const GridFunction g({-1.0}, {1.2}, {11}, shifted);
    const auto sf = summed_area(f);
    const auto sg = summed_area(g);
    for (std::size_t lo = 0; lo < 10; ++lo) {
        for (std::size_t hi = lo + 1; hi <= 10; ++hi) {
            AxisRect a;
            a.lo[0] = lo;
            a.hi[0] = hi;
            AxisRect b = a;
            b.lo[0] += 1;
            b.hi[0] += 1;
            CHECK(rect_average(sf, a) == doctest::Approx(rect_average(sg, b)).epsilon(1e-14));
        }
    }
}

}  // TEST_SUITE
