#include "commands.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "strongmax/asymptotics.hpp"
#include "strongmax/descriptor.hpp"
#include "strongmax/distribution.hpp"
#include "strongmax/grid.hpp"
#include "strongmax/maximal.hpp"
#include "strongmax/oracle.hpp"

namespace strongmax::cli {

namespace {

using nlohmann::json;

/// Raised for configurations that are well-formed on the command line but
/// violate a precondition; maps to exit code 2.
struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Options shared by the function-driven subcommands.
struct RunConfig {
    std::string descriptor;
    std::string g_descriptor;
    int n = 0;  // 0: take the descriptor dimension
    std::string variant = "uncentered";
    std::size_t cells = 128;
    double box_half_width = 0.0;
    double lambda_min = 1e-10;
    double lambda_max = 1e-4;
    int points_per_decade = 12;
    std::string output = "-";
    std::uint64_t seed = 1;
    std::string method;
    std::string phi_convention = "classical";
    std::string direction = "zero";
    bool bilinear = false;
};

void add_function_options(CLI::App& cmd, RunConfig& cfg) {
    cmd.add_option("--descriptor,-f", cfg.descriptor, "Function descriptor: JSON file or inline JSON")->required();
    cmd.add_option("--n", cfg.n, "Dimension (defaults to the descriptor dimension)");
    cmd.add_option("--variant", cfg.variant, "uncentered | centered");
    cmd.add_option("--cells", cfg.cells, "Grid cells per axis");
    cmd.add_option("--box-half-width", cfg.box_half_width, "Sampling box half-width (default 4 x support)");
    cmd.add_option("--method", cfg.method, "grid | separable | hybrid | analytic");
    cmd.add_option("--seed", cfg.seed, "Seed (recorded in outputs)");
}

void add_lambda_options(CLI::App& cmd, RunConfig& cfg) {
    cmd.add_option("--lambda-min", cfg.lambda_min, "Smallest level");
    cmd.add_option("--lambda-max", cfg.lambda_max, "Largest level");
    cmd.add_option("--points-per-decade", cfg.points_per_decade, "Geometric grid density");
    cmd.add_option("--phi-convention", cfg.phi_convention, "classical | literal (affects n = 1 only)");
}

PhiConvention parse_convention(const std::string& s) {
    if (s == "classical") return PhiConvention::classical;
    if (s == "literal") return PhiConvention::literal;
    throw InvalidInput("unknown phi convention '" + s + "' (expected classical or literal)");
}

std::vector<double> levels(const RunConfig& cfg) {
    if (!(cfg.lambda_min > 0.0)) throw InvalidInput("--lambda-min must be positive");
    if (!(cfg.lambda_min < cfg.lambda_max)) throw InvalidInput("--lambda-min must be below --lambda-max");
    if (cfg.points_per_decade < 1) throw InvalidInput("--points-per-decade must be at least 1");
    return geometric_grid(cfg.lambda_min, cfg.lambda_max, cfg.points_per_decade);
}

// Parsed descriptor plus everything derived from the shared options.
struct Problem {
    FunctionDescriptor f;
    std::optional<FunctionDescriptor> g;
    int n = 1;
    Variant variant = Variant::uncentered;
    Method method = Method::grid;
    Sampling sampling;
};

Problem resolve(const RunConfig& cfg) {
    Problem p;
    try {
        p.f = load_descriptor(cfg.descriptor);
        if (!cfg.g_descriptor.empty()) p.g = load_descriptor(cfg.g_descriptor);
        p.variant = parse_variant(cfg.variant);
        if (!cfg.method.empty()) p.method = parse_method(cfg.method);
    } catch (const std::exception& e) {
        throw InvalidInput(e.what());
    }
    p.n = cfg.n == 0 ? p.f.dim : cfg.n;
    if (p.n != p.f.dim) {
        throw InvalidInput("--n " + std::to_string(p.n) + " does not match descriptor dim " + std::to_string(p.f.dim));
    }
    if (p.g && p.g->dim != p.f.dim) throw InvalidInput("f and g descriptors have different dimensions");
    if (cfg.method.empty()) {
        const bool product = p.f.is_product_indicator() && (!p.g || p.g->is_product_indicator());
        p.method = product ? Method::separable : Method::grid;
    }
    if (cfg.cells < 2) throw InvalidInput("--cells must be at least 2");
    double box = cfg.box_half_width;
    if (box <= 0.0) {
        double support = p.f.support_half_width().value_or(1.0);
        if (p.g) support = std::max(support, p.g->support_half_width().value_or(1.0));
        box = 4.0 * support;
    }
    p.sampling = centered_sampling(p.n, box, cfg.cells);
    return p;
}

std::string number(double v) {
    if (std::isnan(v)) return "nan";
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

// CSV goes to the named file, or to `out` for "-".
class CsvSink {
public:
    CsvSink(const std::string& path, std::ostream& out) {
        if (path == "-") {
            stream_ = &out;
        } else {
            file_.open(path, std::ios::out | std::ios::trunc);
            if (!file_) throw InvalidInput("cannot open output file '" + path + "'");
            stream_ = &file_;
        }
    }
    std::ostream& operator*() { return *stream_; }
    [[nodiscard]] bool to_stdout() const { return stream_ != &file_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

void emit_summary(const json& summary, const CsvSink& sink, std::ostream& out, std::ostream& err) {
    (sink.to_stdout() ? err : out) << summary.dump(2) << '\n';
}

double l1_norm(const FunctionDescriptor& d, const Sampling& sampling) {
    if (auto m = d.analytic_mass()) return *m;
    return build_grid_function(d, sampling).mass();
}

void require_cube(const FunctionDescriptor& d, std::string_view method) {
    if (!d.is_product_indicator()) {
        throw InvalidInput("method " + std::string(method) + " needs a cube indicator, got shape " +
                           d.to_json().value("shape", std::string("?")));
    }
}

// ---------------------------------------------------------------- lemma-volume

struct LemmaConfig {
    int n = 2;
    double R = 1.0;
    double r = 1.0;
    double c = 10.0;
    std::uint64_t mc_samples = 0;
    std::uint64_t seed = 1;
};

int cmd_lemma_volume(const LemmaConfig& cfg, std::ostream& out) {
    if (cfg.n < 1) throw InvalidInput("--n must be at least 1");
    if (!(cfg.R > 0.0) || !(cfg.r > 0.0)) throw InvalidInput("--R and --r must be positive");
    const double bound = std::pow(cfg.R + cfg.r, cfg.n);
    if (!(cfg.c > bound)) {
        throw InvalidInput("precondition violated: c > (R+r)^n is required, got c = " + number(cfg.c) +
                           " and (R+r)^n = " + number(bound));
    }
    if (cfg.mc_samples > 0 && cfg.mc_samples < 10000) throw InvalidInput("--mc-samples must be at least 10000");

    const LogPolynomial poly = hyperbolic_volume_polynomial(cfg.n, cfg.R + cfg.r);
    json j;
    j["n"] = cfg.n;
    j["R"] = cfg.R;
    j["r"] = cfg.r;
    j["c"] = cfg.c;
    j["closed_form"] = poly(cfg.c);
    j["coefficients"] = std::vector<double>(poly.coefficients().begin(), poly.coefficients().end());
    j["constant"] = poly.constant();
    j["method"] = "analytic";
    if (cfg.mc_samples > 0) {
        const McEstimate mc = mc_volume(cfg.n, cfg.R, cfg.r, cfg.c, cfg.mc_samples, cfg.seed);
        j["mc_estimate"] = mc.estimate;
        j["mc_stderr"] = mc.standard_error;
        j["mc_samples"] = mc.samples;
        j["seed"] = mc.seed;
        j["mc_sigmas"] = mc.standard_error > 0.0 ? std::abs(mc.estimate - poly(cfg.c)) / mc.standard_error : 0.0;
    }
    out << j.dump(2) << '\n';
    return kExitOk;
}

// ------------------------------------------------------------------ limit-scan

struct ScanInputs {
    std::unique_ptr<DistributionSource> source;
    std::optional<FarFieldConfig> far_field;
};

ScanInputs make_scan_source(const Problem& p, bool bilinear) {
    ScanInputs in;
    const auto& f = p.f;
    switch (p.method) {
        case Method::separable: {
            require_cube(f, "separable");
            if (bilinear) {
                require_cube(*p.g, "separable");
                if (std::abs(p.g->half_width - f.half_width) > 1e-15 * f.half_width) {
                    throw InvalidInput("separable bilinear scans need f and g with the same half-width");
                }
                std::vector<Profile1D> profiles(static_cast<std::size_t>(p.n), Profile1D(f.half_width, 1.0, p.variant));
                profiles.front().height = std::sqrt(f.height * p.g->height);
                in.source = std::make_unique<SeparableSource>(std::move(profiles), 2);
            } else {
                std::vector<Profile1D> profiles(static_cast<std::size_t>(p.n), Profile1D(f.half_width, 1.0, p.variant));
                profiles.front().height = f.height;
                in.source = std::make_unique<SeparableSource>(std::move(profiles));
            }
            break;
        }
        case Method::grid: {
            const GridFunction fg = build_grid_function(f, p.sampling);
            if (bilinear) {
                if (p.variant != Variant::uncentered) throw InvalidInput("bilinear scans are uncentered");
                const GridFunction gg = build_grid_function(*p.g, p.sampling);
                if (!fg.same_geometry(gg)) throw InvalidInput("f and g must share box and resolution");
                in.source = std::make_unique<GridSource>(bilinear_maximal_grid(fg, gg));
            } else {
                in.source = std::make_unique<GridSource>(strong_maximal_grid(fg, p.variant));
            }
            break;
        }
        case Method::hybrid:
        case Method::analytic: {
            require_cube(f, to_string(p.method));
            if (bilinear) throw InvalidInput("hybrid and analytic scans are linear only");
            if (p.variant != Variant::uncentered) {
                throw InvalidInput("the far-field corner rule describes the uncentered operator only");
            }
            const auto cfg = FarFieldConfig::make(p.n, f.half_width, f.height, f.height, *f.analytic_mass());
            in.far_field = cfg;
            if (p.method == Method::analytic) {
                in.source = std::make_unique<TailSource>(cfg);
            } else {
                const GridFunction fg = build_grid_function(f, centered_sampling(p.n, cfg.radius, p.sampling.cells[0]));
                in.source = std::make_unique<HybridSource>(fg, cfg);
            }
            break;
        }
    }
    return in;
}

int cmd_limit_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    Problem p = resolve(cfg);
    const bool bilinear = cfg.bilinear || p.g.has_value();
    if (bilinear && !p.g) p.g = p.f;
    const PhiConvention convention = parse_convention(cfg.phi_convention);
    Direction direction;
    if (cfg.direction == "zero") {
        direction = Direction::to_zero;
    } else if (cfg.direction == "infinity") {
        direction = Direction::to_infinity;
    } else {
        throw InvalidInput("--direction must be zero or infinity");
    }
    const std::vector<double> lambdas = levels(cfg);

    ScanInputs in = make_scan_source(p, bilinear);
    if (in.far_field) {
        const double limit = in.far_field->threshold();
        if (p.method == Method::analytic && !(cfg.lambda_max < limit)) {
            throw InvalidInput("analytic tail needs lambda-max below mass/(R+r)^n = " + number(limit));
        }
        if (p.method == Method::hybrid && !(cfg.lambda_min < limit)) {
            throw InvalidInput("hybrid scan needs lambda-min below mass/(R+r)^n = " + number(limit));
        }
    }

    LimitScan scan = limit_scan(*in.source, p.n, lambdas, direction,
                                bilinear ? Linearity::bilinear : Linearity::linear, convention);

    const double mass_f = l1_norm(p.f, p.sampling);
    if (bilinear) {
        scan.target = uncentered_limit_factor(p.n) * std::sqrt(mass_f * l1_norm(*p.g, p.sampling));
    } else if (p.variant == Variant::centered) {
        scan.target = centered_limit_factor(p.n) * mass_f;
    } else {
        scan.target = uncentered_limit_factor(p.n) * mass_f;
    }

    CsvSink sink(cfg.output, out);
    const std::string tag(to_string(scan.method));
    *sink << "# lambda,measure,weighted,u,method\n";
    for (std::size_t i = 0; i < scan.lambdas.size(); ++i) {
        const double l = scan.lambdas[i];
        const double u = l < 1.0 ? 1.0 / std::log(1.0 / l) : std::numeric_limits<double>::quiet_NaN();
        *sink << number(l) << ',' << number(scan.measures[i]) << ',' << number(scan.weighted[i]) << ','
              << number(u) << ',' << tag << '\n';
    }

    json summary;
    summary["n"] = p.n;
    summary["variant"] = std::string(to_string(p.variant));
    summary["linearity"] = bilinear ? "bilinear" : "linear";
    summary["direction"] = cfg.direction;
    summary["method"] = tag;
    summary["points"] = scan.lambdas.size();
    summary["target"] = scan.target;
    summary["seed"] = cfg.seed;
    if (direction == Direction::to_zero) {
        try {
            const Extrapolation ex = extrapolate_constant(scan);
            summary["extrapolated"] = ex.constant;
            summary["residual"] = ex.residual;
            summary["relative_gap"] = std::abs(ex.constant - scan.target) / scan.target;
        } catch (const std::invalid_argument& e) {
            throw InvalidInput(std::string("extrapolation: ") + e.what());
        }
    } else {
        double beyond = 0.0;
        const double height = p.f.height * (p.g ? p.g->height : 1.0);
        const double top = bilinear ? std::sqrt(height) : p.f.height;
        for (std::size_t i = 0; i < scan.lambdas.size(); ++i) {
            if (scan.lambdas[i] > top) beyond = std::max(beyond, scan.weighted[i]);
        }
        summary["extrapolated"] = nullptr;
        summary["residual"] = nullptr;
        summary["relative_gap"] = nullptr;
        summary["max_weighted_above_height"] = beyond;
    }
    emit_summary(summary, sink, out, err);
    return kExitOk;
}

// --------------------------------------------------------------------- certify

int cmd_certify(const RunConfig& cfg, std::ostream& out) {
    const Problem p = resolve(cfg);
    if (p.f.height > 1.0) {
        throw InvalidInput("height " + number(p.f.height) + " exceeds 1; the Phi_n norm would differ from the L1 norm");
    }
    CertificateOptions options;
    if (!cfg.method.empty()) options.method = p.method;
    options.cells = cfg.cells;
    options.box_half_width = cfg.box_half_width;
    options.convention = parse_convention(cfg.phi_convention);
    const std::vector<double> lambdas = levels(cfg);

    Certificate cert;
    try {
        cert = lower_bound_certificate(p.f, p.n, p.variant, lambdas, options);
    } catch (const std::invalid_argument& e) {
        throw InvalidInput(e.what());
    }
    json j = cert.to_json();
    j["lambda_min"] = cfg.lambda_min;
    j["lambda_max"] = cfg.lambda_max;
    j["points_per_decade"] = cfg.points_per_decade;
    const std::string text = j.dump(2);
    if (cfg.output != "-") {
        std::ofstream file(cfg.output, std::ios::out | std::ios::trunc);
        if (!file) throw InvalidInput("cannot open output file '" + cfg.output + "'");
        file << text << '\n';
    }
    out << text << '\n';
    return cert.meets_target ? kExitOk : kExitTargetMissed;
}

// --------------------------------------------------------------------- maximal

int cmd_maximal(const RunConfig& cfg, std::ostream& out) {
    Problem p = resolve(cfg);
    const GridFunction f = build_grid_function(p.f, p.sampling);
    GridFunction m = f;
    std::string tag = "grid";
    if (p.g) {
        const GridFunction g = build_grid_function(*p.g, p.sampling);
        if (!f.same_geometry(g)) throw InvalidInput("f and g must share box and resolution");
        m = bilinear_maximal_grid(f, g);
        tag = "grid-bilinear";
    } else {
        m = strong_maximal_grid(f, p.variant);
    }

    CsvSink sink(cfg.output, out);
    *sink << "# ";
    for (int k = 0; k < f.dim(); ++k) *sink << 'x' << k + 1 << ',';
    *sink << "f,maximal,method\n";
    const auto& cells = f.cells();
    std::vector<std::size_t> idx(static_cast<std::size_t>(f.dim()), 0);
    for (std::size_t flat = 0; flat < f.size(); ++flat) {
        std::size_t rem = flat;
        for (int k = f.dim() - 1; k >= 0; --k) {
            const auto ku = static_cast<std::size_t>(k);
            idx[ku] = rem % cells[ku];
            rem /= cells[ku];
        }
        for (int k = 0; k < f.dim(); ++k) *sink << number(f.center(k, idx[static_cast<std::size_t>(k)])) << ',';
        *sink << number(f.values()[flat]) << ',' << number(m.values()[flat]) << ',' << tag << '\n';
    }
    if (!sink.to_stdout()) {
        out << json{{"cells", f.size()}, {"max", m.max_value()}, {"output", cfg.output}, {"method", tag}}.dump(2)
            << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------- distribution

int cmd_distribution(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const Problem p = resolve(cfg);
    const std::vector<double> lambdas = levels(cfg);
    std::optional<DistributionCurve> curve;
    switch (p.method) {
        case Method::grid:
            curve = distribution_grid(strong_maximal_grid(build_grid_function(p.f, p.sampling), p.variant), lambdas,
                                      p.variant);
            break;
        case Method::separable: {
            require_cube(p.f, "separable");
            std::vector<Profile1D> profiles(static_cast<std::size_t>(p.n), Profile1D(p.f.half_width, 1.0, p.variant));
            profiles.front().height = p.f.height;
            curve = distribution_from_source(SeparableSource(std::move(profiles)), lambdas, p.variant);
            break;
        }
        case Method::hybrid: {
            require_cube(p.f, "hybrid");
            if (p.variant != Variant::uncentered) throw InvalidInput("hybrid curves are uncentered only");
            const auto ff = FarFieldConfig::make(p.n, p.f.half_width, p.f.height, p.f.height, *p.f.analytic_mass());
            curve = distribution_hybrid(build_grid_function(p.f, centered_sampling(p.n, ff.radius, cfg.cells)), ff,
                                        lambdas);
            break;
        }
        case Method::analytic: {
            require_cube(p.f, "analytic");
            if (p.variant != Variant::uncentered) throw InvalidInput("the analytic tail is uncentered only");
            const auto ff = FarFieldConfig::make(p.n, p.f.half_width, p.f.height, p.f.height, *p.f.analytic_mass());
            curve = distribution_from_source(TailSource(ff), lambdas, p.variant);
            break;
        }
    }

    CsvSink sink(cfg.output, out);
    *sink << "# lambda,measure,uncertainty,method\n";
    for (const auto& pt : curve->points()) {
        *sink << number(pt.lambda) << ',' << number(pt.measure) << ',' << number(pt.uncertainty) << ','
              << to_string(pt.method) << '\n';
    }
    const WeakNorm weak = weak_phi_norm(*curve, parse_convention(cfg.phi_convention));
    emit_summary(json{{"n", p.n},
                      {"variant", std::string(to_string(p.variant))},
                      {"method", std::string(to_string(p.method))},
                      {"points", curve->size()},
                      {"weak_norm", weak.value},
                      {"argmax_lambda", weak.argmax_lambda}},
                 sink, out, err);
    return kExitOk;
}

// ---------------------------------------------------------------- oracle-check

struct OracleConfig {
    std::size_t trials = 20;
    std::uint64_t seed = 1;
    double tolerance = 1e-12;
};

GridFunction random_grid(const CounterRng& rng, std::uint64_t& counter, int dim, std::size_t cap) {
    std::vector<std::size_t> cells(static_cast<std::size_t>(dim));
    std::vector<double> lo(static_cast<std::size_t>(dim), -1.0), hi(static_cast<std::size_t>(dim), 1.0);
    std::size_t total = 1;
    for (auto& c : cells) {
        c = 1 + static_cast<std::size_t>(rng.uniform(counter++) * static_cast<double>(cap));
        total *= c;
    }
    std::vector<double> values(total);
    for (auto& v : values) v = rng.uniform(counter++) < 0.3 ? 0.0 : rng.uniform(counter++);
    return GridFunction(lo, hi, cells, std::move(values));
}

double relative_gap(const GridFunction& a, const GridFunction& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double x = a.values()[i];
        const double y = b.values()[i];
        worst = std::max(worst, std::abs(x - y) / std::max({std::abs(x), std::abs(y), 1e-300}));
    }
    return worst;
}

int cmd_oracle_check(const OracleConfig& cfg, std::ostream& out) {
    const CounterRng rng(cfg.seed);
    std::uint64_t counter = 0;
    struct Suite {
        std::size_t passed = 0;
        std::size_t failed = 0;
        double worst = 0.0;
    };
    Suite uncentered, centered, bilinear;
    const std::size_t caps[] = {64, 12, 6};
    auto record = [&](Suite& s, double gap) {
        s.worst = std::max(s.worst, gap);
        (gap <= cfg.tolerance ? s.passed : s.failed) += 1;
    };
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        const int dim = 1 + static_cast<int>(t % 3);
        const GridFunction f = random_grid(rng, counter, dim, caps[dim - 1]);
        record(uncentered, relative_gap(strong_maximal_grid(f, Variant::uncentered),
                                        brute_force_maximal(f, Variant::uncentered)));
        record(centered,
               relative_gap(strong_maximal_grid(f, Variant::centered), brute_force_maximal(f, Variant::centered)));
        std::vector<double> gv(f.size());
        for (auto& v : gv) v = rng.uniform(counter++);
        const GridFunction g = f.with_values(std::move(gv));
        record(bilinear, relative_gap(bilinear_maximal_grid(f, g), brute_force_bilinear(f, g)));
    }
    auto to_json = [](const Suite& s) {
        return json{{"passed", s.passed}, {"failed", s.failed}, {"max_relative_discrepancy", s.worst}};
    };
    const std::size_t failed = uncentered.failed + centered.failed + bilinear.failed;
    out << json{{"seed", cfg.seed},
                {"trials", cfg.trials},
                {"tolerance", cfg.tolerance},
                {"uncentered", to_json(uncentered)},
                {"centered", to_json(centered)},
                {"bilinear", to_json(bilinear)},
                {"passed", uncentered.passed + centered.passed + bilinear.passed},
                {"failed", failed}}
               .dump(2)
        << '\n';
    return failed == 0 ? kExitOk : kExitTargetMissed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical experiments for strong maximal operators in L log L", "strongmax"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "strongmax 1.0.0");

    LemmaConfig lemma;
    auto* lemma_cmd = app.add_subcommand("lemma-volume", "Closed-form volume of {x_k > R, prod(x_k + r) < c}");
    lemma_cmd->add_option("--n", lemma.n, "Dimension")->required();
    lemma_cmd->add_option("--R", lemma.R, "Lower corner R")->required();
    lemma_cmd->add_option("--r", lemma.r, "Shift r")->required();
    lemma_cmd->add_option("--c", lemma.c, "Product bound c")->required();
    lemma_cmd->add_option("--mc-samples", lemma.mc_samples, "Monte Carlo samples (0: skip)");
    lemma_cmd->add_option("--seed", lemma.seed, "Monte Carlo seed");

    RunConfig scan;
    auto* scan_cmd = app.add_subcommand("limit-scan", "Weighted level-set measures as lambda -> 0 or infinity");
    add_function_options(*scan_cmd, scan);
    add_lambda_options(*scan_cmd, scan);
    scan_cmd->add_option("--output,-o", scan.output, "CSV destination ('-' for stdout)");
    scan_cmd->add_option("--direction", scan.direction, "zero | infinity");
    scan_cmd->add_flag("--bilinear", scan.bilinear, "Scan the bilinear operator (g = f unless --g-descriptor)");
    scan_cmd->add_option("--g-descriptor,-g", scan.g_descriptor, "Second function for bilinear scans");

    RunConfig cert;
    cert.lambda_max = 1.0;
    auto* cert_cmd = app.add_subcommand("certify", "Lower-bound certificate for the weak-type operator norm");
    add_function_options(*cert_cmd, cert);
    add_lambda_options(*cert_cmd, cert);
    cert_cmd->add_option("--output,-o", cert.output, "Also write the certificate JSON here");

    RunConfig maximal;
    auto* max_cmd = app.add_subcommand("maximal", "Maximal-function field on a grid as CSV");
    add_function_options(*max_cmd, maximal);
    max_cmd->add_option("--output,-o", maximal.output, "CSV destination ('-' for stdout)");
    max_cmd->add_option("--g-descriptor,-g", maximal.g_descriptor, "Second function (bilinear operator)");

    RunConfig dist;
    dist.lambda_max = 1.0;
    auto* dist_cmd = app.add_subcommand("distribution", "Distribution curve of the maximal function as CSV");
    add_function_options(*dist_cmd, dist);
    add_lambda_options(*dist_cmd, dist);
    dist_cmd->add_option("--output,-o", dist.output, "CSV destination ('-' for stdout)");

    OracleConfig oracle;
    auto* oracle_cmd = app.add_subcommand("oracle-check", "Fast kernels against brute-force oracles");
    oracle_cmd->add_option("--trials", oracle.trials, "Random grids per suite");
    oracle_cmd->add_option("--seed", oracle.seed, "Seed");
    oracle_cmd->add_option("--tolerance", oracle.tolerance, "Relative tolerance");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    try {
        if (*lemma_cmd) return cmd_lemma_volume(lemma, out);
        if (*scan_cmd) return cmd_limit_scan(scan, out, err);
        if (*cert_cmd) return cmd_certify(cert, out);
        if (*max_cmd) return cmd_maximal(maximal, out);
        if (*dist_cmd) return cmd_distribution(dist, out, err);
        if (*oracle_cmd) return cmd_oracle_check(oracle, out);
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const std::length_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    }
    return kExitInvalidInput;
}

}  // namespace strongmax::cli
