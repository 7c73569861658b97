// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "json.hpp"
#include "strongmax/asymptotics.hpp"
#include "strongmax/descriptor.hpp"
#include "strongmax/distribution.hpp"
#include "strongmax/maximal.hpp"
#include "strongmax/oracle.hpp"

using namespace strongmax;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

GridFunction random_grid(std::mt19937_64& rng, int dim, std::size_t cap) {
    std::uniform_int_distribution<std::size_t> pick(1, cap);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::size_t> cells(static_cast<std::size_t>(dim));
    std::size_t total = 1;
    for (auto& c : cells) total *= (c = pick(rng));
    std::vector<double> values(total);
    for (auto& v : values) v = u(rng) < 0.3 ? 0.0 : u(rng);
    return GridFunction(std::vector<double>(cells.size(), -1.0), std::vector<double>(cells.size(), 1.0), cells,
                        std::move(values));
}

double max_relative_gap(const GridFunction& a, const GridFunction& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double x = a.values()[i], y = b.values()[i];
        worst = std::max(worst, std::abs(x - y) / std::max({std::abs(x), std::abs(y), 1e-300}));
    }
    return worst;
}

FunctionDescriptor cube(int dim) {
    FunctionDescriptor d;
    d.dim = dim;
    return d;
}

std::vector<Profile1D> cube_profiles(int n, Variant v, double height = 1.0, double r = 1.0) {
    std::vector<Profile1D> p(static_cast<std::size_t>(n), Profile1D(r, 1.0, v));
    p.front().height = height;
    return p;
}

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(std::vector<std::string> args) {
    args.insert(args.begin(), "strongmax");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<FunctionDescriptor> corpus() {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(STRONGMAX_CORPUS_DIR)) {
        if (e.path().extension() == ".json") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<FunctionDescriptor> out;
    for (const auto& f : files) out.push_back(load_descriptor(f.string()));
    return out;
}

// Level-set measures of the maximal function of a corpus entry: exact for
// cubes, grid-sampled on four times the support otherwise.
struct CorpusCurve {
    std::unique_ptr<DistributionSource> source;
    double phi_norm = 0.0;
    double height = 0.0;
};

CorpusCurve corpus_source(const FunctionDescriptor& d, Variant v) {
    CorpusCurve c;
    c.height = d.height;
    if (d.is_product_indicator()) {
        c.source = std::make_unique<SeparableSource>(cube_profiles(d.dim, v, d.height, d.half_width));
        c.phi_norm = phi(d.dim, d.height) * std::pow(2.0 * d.half_width, d.dim);
        return c;
    }
    const std::size_t cells = d.dim == 3 ? 24 : (d.dim == 2 ? 96 : 512);
    const GridFunction f = build_grid_function(d, centered_sampling(d.dim, 4.0 * d.support_half_width().value_or(1.0),
                                                                    cells));
    c.source = std::make_unique<GridSource>(strong_maximal_grid(f, v));
    c.phi_norm = phi_norm(f, d.dim);
    return c;
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
    struct Case {
        int n;
        double R, r, c;
    };
    const Case cases[] = {{2, 1.5, 0.5, 100.0}, {2, 1.0, 1.0, 500.0}, {3, 1.0, 1.0, 1000.0}};
    Outcome o{true, ""};
    for (const auto& k : cases) {
        const auto t0 = Clock::now();
        const double closed = hyperbolic_region_volume(k.n, k.R, k.r, k.c);
        const auto mc = mc_volume(k.n, k.R, k.r, k.c, 10'000'000, 2024);
        const double secs = seconds_since(t0);
        const double sigmas = std::abs(mc.estimate - closed) / mc.standard_error;
        o.pass = o.pass && sigmas <= 3.0 && secs < 30.0;
        o.detail += fmt("n=%d c=%g: %.4f vs %.4f (%.2f sigma, %.1fs); ", k.n, k.c, closed, mc.estimate, sigmas, secs);
    }
    return o;
}

Outcome criterion2() {
    double worst_top = 0.0;
    double worst_zero = 0.0;
    double fact = 1.0;
    for (int n = 1; n <= 6; ++n) {
        if (n > 1) fact *= n - 1;
        const auto p = hyperbolic_volume_polynomial(n, 2.3);
        worst_top = std::max(worst_top, std::abs(p.coefficients().back() * fact - 1.0));
    }
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> shift(0.1, 10.0);
    for (int i = 0; i < 20; ++i) {
        const double s = shift(rng);
        for (int n = 1; n <= 6; ++n) {
            const auto p = hyperbolic_volume_polynomial(n, s);
            // Raw log-polynomial at the degenerate corner c = s^n.
            const long double c = std::pow(static_cast<long double>(s), n);
            const long double lc = std::log(c);
            long double acc = 0.0L;
            for (std::size_t j = p.coefficients().size(); j-- > 0;) acc = acc * lc + p.coefficients()[j];
            const long double value = c * acc + p.constant();
            worst_zero = std::max(worst_zero, static_cast<double>(std::abs(value) / c));
        }
    }
    return {worst_top <= 1e-12 && worst_zero <= 1e-9,
            fmt("top coefficient error %.2e (n=1..6); |value(s^n)|/s^n max %.2e over 20 shifts", worst_top,
                worst_zero)};
}

Outcome criterion3() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(3);
    double worst = 0.0, worst_bilinear = 0.0;
    const std::size_t caps[] = {64, 12, 6};
    for (int t = 0; t < 100; ++t) {
        const int dim = 1 + t % 3;
        const auto f = random_grid(rng, dim, caps[dim - 1]);
        for (Variant v : {Variant::uncentered, Variant::centered}) {
            worst = std::max(worst, max_relative_gap(strong_maximal_grid(f, v), brute_force_maximal(f, v)));
        }
    }
    for (int t = 0; t < 50; ++t) {
        const int dim = 1 + t % 3;
        const auto f = random_grid(rng, dim, caps[dim - 1]);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<double> gv(f.size());
        for (auto& v : gv) v = u(rng);
        const auto g = f.with_values(gv);
        worst_bilinear = std::max(worst_bilinear, max_relative_gap(bilinear_maximal_grid(f, g), brute_force_bilinear(f, g)));
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-12 && worst_bilinear <= 1e-12 && secs < 60.0,
            fmt("100 grids x 2 variants max gap %.2e; 50 bilinear pairs max gap %.2e; %.1fs", worst, worst_bilinear,
                secs)};
}

Outcome criterion4() {
    const auto profiles = cube_profiles(2, Variant::uncentered);
    auto sup_error = [&](std::size_t cells) {
        const auto f = build_grid_function(cube(2), centered_sampling(2, 8.0, cells));
        const auto m = strong_maximal_grid(f, Variant::uncentered);
        double worst = 0.0;
        for (std::size_t i = 0; i < cells; ++i)
            for (std::size_t j = 0; j < cells; ++j) {
                const std::vector<double> x{f.center(0, i), f.center(1, j)};
                const double grid = m.values()[i * cells + j];
                worst = std::max(worst, std::abs(grid - separable_maximal(profiles, x)));
            }
        return std::pair{worst, f.cell_width(0)};
    };
    const auto [e128, h128] = sup_error(128);
    const auto [e256, h256] = sup_error(256);
    const double ratio = e128 / e256;
    return {e256 <= 2.0 * h256 && e128 <= 2.0 * h128 && ratio > 1.6 && ratio < 2.4,
            fmt("256^2: %.4f <= 2h = %.4f; 128^2: %.4f <= %.4f; error ratio %.3f", e256, 2.0 * h256, e128,
                2.0 * h128, ratio)};
}

Outcome criterion5() {
    const auto t0 = Clock::now();
    const SeparableSource exact(cube_profiles(1, Variant::uncentered));
    const auto scan = limit_scan(exact, 1, std::vector<double>{1e-3}, Direction::to_zero);
    const double target = 2.0 * 2.0;
    const double gap = std::abs(scan.weighted[0] - target) / target;
    const double secs = seconds_since(t0);
    return {gap < 0.002 && secs < 1.0,
            fmt("W(1e-3) = %.6f vs 2||f||_1 = 4, relative gap %.2e (closed form %.2e), %.3fs", scan.weighted[0], gap,
                0.5e-3, secs)};
}

Outcome extrapolation_criterion(Variant v, double target) {
    const auto t0 = Clock::now();
    const SeparableSource src(cube_profiles(2, v));
    const auto scan = limit_scan(src, 2, geometric_grid(1e-10, 1e-4, 12), Direction::to_zero);
    const auto ex = extrapolate_constant(scan);
    const double gap = std::abs(ex.constant - target) / target;
    const double secs = seconds_since(t0);
    return {gap < 0.02 && secs < 60.0,
            fmt("extrapolated %.5f vs %.1f (gap %.2e, residual %.1e, %zu points), %.2fs", ex.constant, target, gap,
                ex.residual, scan.lambdas.size(), secs)};
}

Outcome criterion8() {
    Outcome o{true, ""};
    // Grid identity {M2 > l^2} = {M > l} for f = g.
    std::size_t mismatches = 0, compared = 0;
    for (int n = 1; n <= 2; ++n) {
        const auto f = build_grid_function(cube(n), centered_sampling(n, 6.0, n == 1 ? 480 : 96));
        const GridSource linear(strong_maximal_grid(f, Variant::uncentered));
        const GridSource quadratic(bilinear_maximal_grid(f, f));
        const auto lambdas = geometric_grid(1e-4, 2.0, 12);
        const auto a = limit_scan(linear, n, lambdas, Direction::to_zero);
        const auto b = limit_scan(quadratic, n, lambdas, Direction::to_zero, Linearity::bilinear);
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            ++compared;
            if (a.measures[i] != b.measures[i]) ++mismatches;
        }
    }
    o.pass = mismatches == 0;
    o.detail = fmt("grid curves equal at %zu/%zu levels; ", compared - mismatches, compared);
    for (int n = 1; n <= 2; ++n) {
        const double mass = std::pow(2.0, n);
        auto profiles = cube_profiles(n, Variant::uncentered, std::sqrt(1.0 * 1.0));
        const SeparableSource src(std::move(profiles), 2);
        const auto scan = limit_scan(src, n, geometric_grid(n == 1 ? 1e-12 : 1e-10, n == 1 ? 1e-7 : 1e-4, 12),
                                     Direction::to_zero, Linearity::bilinear);
        const double target = uncentered_limit_factor(n) * std::sqrt(mass * mass);
        const double c = extrapolate_constant(scan).constant;
        const double gap = std::abs(c - target) / target;
        o.pass = o.pass && gap < 0.02;
        o.detail += fmt("n=%d extrapolated %.5f vs %.1f (gap %.1e); ", n, c, target, gap);
    }
    return o;
}

Outcome criterion9() {
    std::size_t checked = 0, nonzero = 0;
    for (const auto& d : corpus()) {
        for (Variant v : {Variant::uncentered, Variant::centered}) {
            const auto c = corpus_source(d, v);
            const auto lambdas = geometric_grid(c.height * (1.0 + 1e-12), 1e3 * c.height, 12);
            const auto scan = limit_scan(*c.source, d.dim, lambdas, Direction::to_infinity);
            for (double w : scan.weighted) {
                ++checked;
                if (w != 0.0) ++nonzero;
            }
        }
    }
    return {nonzero == 0 && checked > 0, fmt("%zu corpus levels above the height, %zu nonzero", checked, nonzero)};
}

Outcome criterion10() {
    const std::string c1 = R"({"shape":"cube","half_width":1,"height":1,"dim":1})";
    const std::string c2 = R"({"shape":"cube","half_width":1,"height":1,"dim":2})";
    const std::string b2 = R"({"shape":"ball","radius":1,"height":1,"dim":2})";
    const CliRun runs[] = {
        cli({"certify", "-f", c1, "--lambda-min", "1e-10"}),
        cli({"certify", "-f", c2, "--lambda-min", "1e-10"}),
        cli({"certify", "-f", b2, "--variant", "centered", "--lambda-min", "0.9", "--lambda-max", "0.999"}),
    };
    const double targets[] = {2.0, 4.0, 1.0};
    const char* names[] = {"n=1 cube", "n=2 cube", "centered ball"};
    Outcome o{true, ""};
    for (int i = 0; i < 3; ++i) {
        if (runs[i].code != 0 && runs[i].code != 1) {
            o.pass = false;
            o.detail += fmt("%s: exit %d; ", names[i], runs[i].code);
            continue;
        }
        const auto j = nlohmann::json::parse(runs[i].out);
        const double achieved = j.at("achieved").get<double>();
        o.pass = o.pass && runs[i].code == 0 && achieved >= 0.95 * targets[i];
        o.detail += fmt("%s %.4f >= %.3f exit %d; ", names[i], achieved, 0.95 * targets[i], runs[i].code);
    }
    return o;
}

// Uncentered level sets over the whole space: exact for cubes, otherwise the
// grid on [-R, R]^n plus the corner-rule tail beyond it (mixed regions omitted).
std::unique_ptr<DistributionSource> whole_space_source(const FunctionDescriptor& d, double& phi_norm_out) {
    if (d.is_product_indicator()) {
        phi_norm_out = phi(d.dim, d.height) * std::pow(2.0 * d.half_width, d.dim);
        return std::make_unique<SeparableSource>(cube_profiles(d.dim, Variant::uncentered, d.height, d.half_width));
    }
    const double support = d.shape == Shape::samples ? d.sampling->box_hi[0] : *d.support_half_width();
    GridFunction f = d.shape == Shape::samples
                         ? build_grid_function(d)
                         : build_grid_function(d, centered_sampling(d.dim, 4.0 * support, d.dim == 1 ? 512 : 96));
    if (d.shape == Shape::samples) {
        // Zero-pad the sample box [-b, b]^n to [-4b, 4b]^n at the same resolution.
        const auto cells = f.cells();
        std::vector<std::size_t> padded(cells.begin(), cells.end());
        for (auto& c : padded) c *= 4;
        std::size_t total = 1;
        for (auto c : padded) total *= c;
        std::vector<double> values(total, 0.0);
        std::vector<std::size_t> idx(cells.size());
        for (std::size_t flat = 0; flat < f.size(); ++flat) {
            std::size_t rest = flat, target = 0, stride = 1;
            for (int k = f.dim() - 1; k >= 0; --k) {
                const auto kk = static_cast<std::size_t>(k);
                idx[kk] = rest % cells[kk];
                rest /= cells[kk];
                target += (idx[kk] + 3 * cells[kk] / 2) * stride;
                stride *= padded[kk];
            }
            values[target] = f.values()[flat];
        }
        f = GridFunction(std::vector<double>(cells.size(), -4.0 * support),
                         std::vector<double>(cells.size(), 4.0 * support), padded, std::move(values));
    }
    phi_norm_out = phi_norm(f, d.dim);
    const auto cfg = FarFieldConfig::with_radius(d.dim, support, f.max_value(), f.mass(), 4.0 * support);
    return std::make_unique<HybridSource>(f, cfg);
}

Outcome criterion11() {
    Outcome o{true, ""};
    double worst_change = 0.0, largest = 0.0;
    std::size_t inputs = 0;
    for (const auto& d : corpus()) {
        double norm = 0.0;
        const auto source = whole_space_source(d, norm);
        auto sup_ratio = [&](int density) {
            const auto scan = limit_scan(*source, d.dim, geometric_grid(1e-10, 1e3, density), Direction::to_zero);
            double best = 0.0;
            bool finite = true;
            for (double w : scan.weighted) {
                finite = finite && std::isfinite(w);
                best = std::max(best, w / norm);
            }
            return std::pair{best, finite};
        };
        const auto [coarse, fc] = sup_ratio(6);
        const auto [fine, ff] = sup_ratio(12);
        const double change = std::abs(fine - coarse) / fine;
        worst_change = std::max(worst_change, change);
        largest = std::max(largest, fine);
        o.pass = o.pass && fc && ff && change < 0.05;
        ++inputs;
    }
    o.detail = fmt("%zu corpus inputs, all finite; largest sup %.4f; largest change under doubled density %.2e",
                   inputs, largest, worst_change);
    return o;
}

Outcome criterion12() {
    const fs::path dir = fs::temp_directory_path() / "strongmax_acceptance";
    fs::create_directories(dir);
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    };
    const std::string c2 = R"({"shape":"cube","half_width":1,"height":1,"dim":2})";
    const std::string tent = R"({"shape":"tent","half_width":1,"height":1,"dim":2})";
    std::size_t identical = 0, total = 0;
    auto twice = [&](std::vector<std::string> args, bool file) {
        const auto target = dir / "run.out";
        auto args_out = args;
        if (file) args_out.insert(args_out.end(), {"-o", target.string()});
        const auto x = cli(args_out);
        const std::string fx = file ? slurp(target) : std::string();
        const auto y = cli(args_out);
        const std::string fy = file ? slurp(target) : std::string();
        ++total;
        if (x.code == y.code && x.out == y.out && x.err == y.err && fx == fy) ++identical;
    };
    twice({"limit-scan", "-f", c2, "--lambda-min", "1e-10", "--lambda-max", "1e-4", "--seed", "3"}, true);
    twice({"limit-scan", "-f", tent, "--method", "grid", "--cells", "64", "--lambda-min", "1e-4", "--lambda-max", "1"},
          true);
    twice({"distribution", "-f", c2, "--method", "hybrid", "--cells", "64", "--lambda-min", "1e-6"}, true);
    twice({"maximal", "-f", tent, "--cells", "24"}, true);
    twice({"certify", "-f", c2, "--lambda-min", "1e-10"}, false);
    twice({"lemma-volume", "--n", "3", "--R", "1", "--r", "1", "--c", "1000", "--mc-samples", "1000000", "--seed",
           "11"},
          false);
    twice({"oracle-check", "--trials", "9", "--seed", "2"}, false);
    return {identical == total, fmt("%zu/%zu repeated runs byte-identical", identical, total)};
}

}  // namespace

int main() {
    struct Entry {
        int id;
        const char* title;
        std::function<Outcome()> run;
    };
    const Entry entries[] = {
        {1, "closed-form hyperbolic volume vs Monte Carlo", criterion1},
        {2, "log-polynomial leading coefficient and corner value", criterion2},
        {3, "fast kernels vs brute-force oracles", criterion3},
        {4, "grid maximal function vs separable closed form", criterion4},
        {5, "uncentered constant, n = 1", criterion5},
        {6, "uncentered constant, n = 2",
         [] { return extrapolation_criterion(Variant::uncentered, uncentered_limit_factor(2) * 4.0); }},
        {7, "centered constant, n = 2",
         [] { return extrapolation_criterion(Variant::centered, centered_limit_factor(2) * 4.0); }},
        {8, "bilinear level sets and constant", criterion8},
        {9, "weighted measure vanishes above the height", criterion9},
        {10, "operator-norm certificates", criterion10},
        {11, "bounded weighted measure over the corpus", criterion11},
        {12, "deterministic CLI output", criterion12},
    };
    int failures = 0;
    for (const auto& e : entries) {
        Outcome o;
        try {
            o = e.run();
        } catch (const std::exception& ex) {
            o = {false, std::string("exception: ") + ex.what()};
        }
        failures += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << e.id << ": " << e.title << " -- " << o.detail
                  << std::endl;
    }
    std::cout << (failures == 0 ? "all 12 criteria passed" : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
