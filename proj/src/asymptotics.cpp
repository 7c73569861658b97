#include "strongmax/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace strongmax {

namespace {

// (log+ t)^(n-1), with the zero-log case mapped to 0 so that Phi_n(t) = t for
// t <= 1 under either convention.
double log_plus_power(int n, double t, PhiConvention convention) {
    const double lp = t > 1.0 ? std::log(t) : 0.0;
    if (n == 1) {
        if (convention == PhiConvention::classical) return 0.0;
        return lp > 0.0 ? 1.0 : 0.0;
    }
    return std::pow(lp, n - 1);
}

using Rational = boost::multiprecision::cpp_rational;
// coeff[j][m]: multiplier of c (log c)^j (log s)^m.
using ExactCoefficients = std::vector<std::vector<Rational>>;

ExactCoefficients exact_coefficients(int n) {
    ExactCoefficients beta{{Rational(1)}};  // V_1(c) = c - s
    for (int dim = 2; dim <= n; ++dim) {
        ExactCoefficients next(static_cast<std::size_t>(dim), std::vector<Rational>(static_cast<std::size_t>(dim)));
        for (std::size_t j = 0; j < beta.size(); ++j) {
            const int p = static_cast<int>(j) + 1;
            for (std::size_t q = 0; q < beta[j].size(); ++q) {
                const Rational& b = beta[j][q];
                if (b == 0) continue;
                // Upper limit y = c / s^(dim-1): -c ((dim-1) log s)^p / p.
                Rational lower = b / p;
                for (int e = 0; e < p; ++e) lower *= dim - 1;
                next[0][q + static_cast<std::size_t>(p)] -= lower;
                // Lower limit y = s: c (log c - log s)^p / p.
                for (int m = 0; m <= p; ++m) {
                    Rational term = b * Rational(static_cast<long long>(
                                            boost::math::binomial_coefficient<double>(static_cast<unsigned>(p),
                                                                                      static_cast<unsigned>(m)))) /
                                    p;
                    if ((p - m) % 2 != 0) term = -term;
                    next[static_cast<std::size_t>(m)][q + static_cast<std::size_t>(p - m)] += term;
                }
            }
        }
        // gamma_{dim-1} (c / s^(dim-1) - s) contributes (-1)^(dim-1) c.
        next[0][0] += (dim % 2 == 0) ? -1 : 1;
        beta = std::move(next);
    }
    return beta;
}

}  // namespace

double phi(int n, double t, PhiConvention convention) {
    if (n < 1) throw std::domain_error("phi: n must be at least 1");
    if (!(t >= 0.0)) throw std::domain_error("phi: argument must be nonnegative");
    return t * (1.0 + log_plus_power(n, t, convention));
}

double weight(int n, double lambda, PhiConvention convention) {
    if (n < 1) throw std::domain_error("weight: n must be at least 1");
    if (!(lambda > 0.0)) throw std::domain_error("weight: lambda must be positive");
    return lambda / (1.0 + log_plus_power(n, 1.0 / lambda, convention));
}

LogPolynomial::LogPolynomial(int n, double shift, std::vector<std::vector<double>> beta_in_log_shift)
    : n_(n), shift_(shift), exact_(std::move(beta_in_log_shift)) {
    if (static_cast<int>(exact_.size()) != n_) throw std::invalid_argument("LogPolynomial: need n coefficients");
    const long double ls = std::log(static_cast<long double>(shift_));
    beta_.resize(exact_.size());
    for (std::size_t j = 0; j < exact_.size(); ++j) {
        long double acc = 0.0L;
        for (std::size_t m = exact_[j].size(); m-- > 0;) acc = acc * ls + exact_[j][m];
        beta_[j] = static_cast<double>(acc);
    }
    gamma_ = ((n_ % 2 == 0) ? 1.0 : -1.0) * std::pow(shift_, n_);
}

double LogPolynomial::operator()(double c) const {
    if (!(c > std::pow(shift_, n_))) return 0.0;
    const long double ls = std::log(static_cast<long double>(shift_));
    const long double lc = std::log(static_cast<long double>(c));
    long double poly = 0.0L;
    for (std::size_t j = exact_.size(); j-- > 0;) {
        long double b = 0.0L;
        for (std::size_t m = exact_[j].size(); m-- > 0;) b = b * ls + exact_[j][m];
        poly = poly * lc + b;
    }
    const long double gamma = ((n_ % 2 == 0) ? 1.0L : -1.0L) * std::pow(static_cast<long double>(shift_), n_);
    return static_cast<double>(static_cast<long double>(c) * poly + gamma);
}

LogPolynomial hyperbolic_volume_polynomial(int n, double s) {
    if (n < 1) throw std::invalid_argument("volume polynomial: n must be at least 1");
    if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("volume polynomial: shift must be positive");
    const auto exact = exact_coefficients(n);
    std::vector<std::vector<double>> as_double(exact.size());
    for (std::size_t j = 0; j < exact.size(); ++j) {
        for (const auto& q : exact[j]) as_double[j].push_back(static_cast<double>(q));
    }
    return LogPolynomial(n, s, std::move(as_double));
}

double hyperbolic_region_volume(int n, double R, double r, double c) {
    if (!(R > 0.0) || !(r > 0.0)) throw std::domain_error("region volume: R and r must be positive");
    const double s = R + r;
    if (!(c > std::pow(s, n))) {
        throw std::domain_error("region volume: requires c > (R+r)^n = " + std::to_string(std::pow(s, n)));
    }
    return hyperbolic_volume_polynomial(n, s)(c);
}

double tail_level_measure(const FarFieldConfig& cfg, double lambda) {
    if (!(lambda > 0.0) || !(lambda < cfg.threshold())) {
        throw std::domain_error("tail measure: lambda must lie in (0, mass/(R+r)^n) = (0, " +
                                std::to_string(cfg.threshold()) + ")");
    }
    return std::ldexp(hyperbolic_region_volume(cfg.dim, cfg.radius, cfg.half_width, cfg.mass / lambda), cfg.dim);
}

double mixed_region_threshold(const FarFieldConfig& cfg, int small_axes) {
    const int k = cfg.dim - small_axes;
    return cfg.ceiling * std::pow(2.0 * cfg.half_width, k) / std::pow(cfg.radius + cfg.half_width, k);
}

double mixed_region_bound(const FarFieldConfig& cfg, double lambda, int small_axes) {
    const int n = cfg.dim;
    if (small_axes < 1 || small_axes > n - 1) {
        throw std::domain_error("mixed region bound: need 1 <= i <= n-1, got i = " + std::to_string(small_axes));
    }
    if (!(lambda > 0.0) || !(lambda < mixed_region_threshold(cfg, small_axes))) {
        throw std::domain_error("mixed region bound: lambda above the admissible level " +
                                std::to_string(mixed_region_threshold(cfg, small_axes)));
    }
    const int k = n - small_axes;
    const double c = cfg.ceiling * std::pow(2.0 * cfg.half_width, k) / lambda;
    return boost::math::factorial<double>(static_cast<unsigned>(n)) * std::pow(2.0 * cfg.radius, small_axes) *
           std::ldexp(hyperbolic_region_volume(k, cfg.radius, cfg.half_width, c), k);
}

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::grid: return "grid";
        case Method::separable: return "separable";
        case Method::hybrid: return "hybrid";
        case Method::analytic: return "analytic";
    }
    return "?";
}

Method parse_method(std::string_view s) {
    if (s == "grid") return Method::grid;
    if (s == "separable") return Method::separable;
    if (s == "hybrid") return Method::hybrid;
    if (s == "analytic") return Method::analytic;
    throw std::invalid_argument("unknown method '" + std::string(s) + "'");
}

std::vector<double> geometric_grid(double lo, double hi, int points_per_decade) {
    if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("geometric grid: need 0 < lo < hi");
    if (points_per_decade < 1) throw std::invalid_argument("geometric grid: points per decade must be >= 1");
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    const auto steps = std::max<long>(1, static_cast<long>(std::ceil((b - a) * points_per_decade - 1e-9)));
    std::vector<double> out(static_cast<std::size_t>(steps) + 1);
    for (long k = 0; k <= steps; ++k) {
        out[static_cast<std::size_t>(k)] =
            std::pow(10.0, (a * static_cast<double>(steps - k) + b * static_cast<double>(k)) / static_cast<double>(steps));
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

LimitScan limit_scan(const DistributionSource& source, int n, std::span<const double> lambdas, Direction direction,
                     Linearity linearity, PhiConvention convention) {
    if (lambdas.empty()) throw std::invalid_argument("limit scan: empty lambda grid");
    if (n != source.dim()) {
        throw std::invalid_argument("limit scan: n = " + std::to_string(n) + " but the source is " +
                                    std::to_string(source.dim()) + "-dimensional");
    }
    const bool ascending = lambdas.size() < 2 || lambdas[1] > lambdas[0];
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] > 0.0) || !std::isfinite(lambdas[i])) {
            throw std::invalid_argument("limit scan: lambda values must be positive and finite");
        }
        if (i > 0 && (ascending ? !(lambdas[i] > lambdas[i - 1]) : !(lambdas[i] < lambdas[i - 1]))) {
            throw std::invalid_argument("limit scan: lambda grid must be strictly monotone");
        }
    }
    LimitScan scan;
    scan.n = n;
    scan.direction = direction;
    scan.linearity = linearity;
    scan.method = source.method();
    scan.convention = convention;
    scan.lambdas.assign(lambdas.begin(), lambdas.end());
    scan.measures.resize(lambdas.size());
    scan.weighted.resize(lambdas.size());
    const auto count = static_cast<long>(lambdas.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) {
        const auto k = static_cast<std::size_t>(i);
        const double l = scan.lambdas[k];
        const double level = linearity == Linearity::bilinear ? l * l : l;
        scan.measures[k] = source.measure(level);
        scan.weighted[k] = weight(n, l, convention) * scan.measures[k];
    }
    return scan;
}

Extrapolation extrapolate_constant(const LimitScan& scan) {
    if (scan.direction != Direction::to_zero) {
        throw std::invalid_argument("extrapolation needs a scan toward lambda -> 0");
    }
    std::vector<double> u;
    std::vector<double> w;
    for (std::size_t i = 0; i < scan.lambdas.size(); ++i) {
        if (scan.lambdas[i] < 1.0) {
            u.push_back(1.0 / std::log(1.0 / scan.lambdas[i]));
            w.push_back(scan.weighted[i]);
        }
    }
    if (u.size() < 4) throw std::invalid_argument("extrapolation needs at least four points with lambda < 1");
    const auto m = static_cast<Eigen::Index>(u.size());
    Eigen::MatrixXd A(m, 3);
    Eigen::VectorXd y(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double ui = u[static_cast<std::size_t>(i)];
        A(i, 0) = 1.0;
        A(i, 1) = ui;
        A(i, 2) = ui * ui;
        y(i) = w[static_cast<std::size_t>(i)];
    }
    const auto qr = A.colPivHouseholderQr();
    if (qr.rank() < 3) throw std::invalid_argument("extrapolation: degenerate fit (collinear u values)");
    const Eigen::VectorXd c = qr.solve(y);
    const double rms = std::sqrt((A * c - y).squaredNorm() / static_cast<double>(m));
    return Extrapolation{c(0), rms, {c(0), c(1), c(2)}};
}

double uncentered_limit_factor(int n) {
    return std::ldexp(1.0, n) / boost::math::factorial<double>(static_cast<unsigned>(n - 1));
}

double centered_limit_factor(int n) {
    return 1.0 / boost::math::factorial<double>(static_cast<unsigned>(n - 1));
}

}  // namespace strongmax
