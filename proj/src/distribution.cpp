#include "strongmax/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace strongmax {

namespace {

constexpr double kQuadratureTolerance = 1e-10;
constexpr unsigned kQuadratureDepth = 40;

double product_of_heights(std::span<const Profile1D> profiles) {
    double p = 1.0;
    for (const auto& g : profiles) p *= g.height;
    return p;
}

double separable_measure(std::span<const Profile1D> profiles, double lambda) {
    const Profile1D& first = profiles.front();
    if (profiles.size() == 1) return 2.0 * first.superlevel_half_length(lambda);
    const auto rest = profiles.subspan(1);
    const double rest_max = product_of_heights(rest);
    if (lambda >= first.height * rest_max) return 0.0;

    // Inner measure is positive exactly while first(x) > lambda / rest_max.
    const double reach = first.superlevel_half_length(lambda / rest_max);
    auto integrand = [&](double x) { return separable_measure(rest, lambda / first(x)); };

    std::vector<double> cuts{0.0};
    const double r = first.half_width;
    if (r < reach) {
        for (double edge = r; edge < reach; edge *= 2.0) cuts.push_back(edge);
    }
    // The inner measure has kinks where its level crosses rest_max / 2^j
    // (centered profiles halve at their support edge).
    for (std::size_t j = 0; j < profiles.size(); ++j) {
        const double x = first.superlevel_half_length(lambda / std::ldexp(rest_max, -static_cast<int>(j)));
        if (x > 0.0 && x < reach) cuts.push_back(x);
    }
    cuts.push_back(reach);
    std::sort(cuts.begin(), cuts.end());

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (!(cuts[i + 1] > cuts[i])) continue;
        double error = 0.0;
        total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
            integrand, cuts[i], cuts[i + 1], kQuadratureDepth, kQuadratureTolerance, &error);
    }
    return 2.0 * total;
}

void check_sorted_levels(std::span<const double> lambdas) {
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] > 0.0)) throw std::invalid_argument("distribution: lambda values must be positive");
        if (i > 0 && !(lambdas[i] > lambdas[i - 1])) {
            throw std::invalid_argument("distribution: lambda values must be strictly increasing");
        }
    }
}

}  // namespace

DistributionCurve::DistributionCurve(int n, Variant variant, std::vector<CurvePoint> points)
    : n_(n), variant_(variant), points_(std::move(points)) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        if (!(p.lambda > 0.0) || !std::isfinite(p.lambda)) {
            throw std::invalid_argument("distribution curve: lambda must be positive and finite");
        }
        if (!(p.measure >= 0.0) || !std::isfinite(p.measure)) {
            throw std::invalid_argument("distribution curve: measures must be finite and nonnegative");
        }
        if (i > 0) {
            const auto& q = points_[i - 1];
            if (!(p.lambda > q.lambda)) throw std::invalid_argument("distribution curve: lambdas must increase");
            // Quadrature noise may perturb equal plateaus in the last digits.
            if (p.measure > q.measure * (1.0 + 1e-9) + 1e-12) {
                throw std::invalid_argument("distribution curve: measure increases with lambda at lambda = " +
                                            std::to_string(p.lambda));
            }
        }
    }
}

double phi_norm(const GridFunction& f, int n, PhiConvention convention) {
    double sum = 0.0;
    for (double v : f.values()) sum += phi(n, v, convention);
    return sum * f.cell_volume();
}

DistributionCurve distribution_grid(const GridFunction& m, std::span<const double> lambdas, Variant variant) {
    check_sorted_levels(lambdas);
    const GridSource source(m);
    return distribution_from_source(source, lambdas, variant);
}

double distribution_separable(std::span<const Profile1D> profiles, double lambda) {
    if (profiles.empty()) throw std::invalid_argument("distribution_separable: no profiles");
    if (!(lambda > 0.0)) throw std::domain_error("distribution_separable: lambda must be positive");
    if (lambda >= product_of_heights(profiles)) return 0.0;
    return separable_measure(profiles, lambda);
}

DistributionCurve distribution_hybrid(const GridFunction& f, const FarFieldConfig& cfg,
                                      std::span<const double> lambdas) {
    check_sorted_levels(lambdas);
    const HybridSource source(f, cfg);
    std::vector<CurvePoint> points(lambdas.size());
    const auto count = static_cast<long>(lambdas.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) {
        const auto k = static_cast<std::size_t>(i);
        points[k] = CurvePoint{lambdas[k], source.measure(lambdas[k]), Method::hybrid,
                               source.uncertainty(lambdas[k])};
    }
    return DistributionCurve(cfg.dim, Variant::uncentered, std::move(points));
}

WeakNorm weak_phi_norm(const DistributionCurve& curve, PhiConvention convention) {
    if (curve.size() == 0) throw std::invalid_argument("weak_phi_norm: empty curve");
    WeakNorm best{-1.0, 0.0};
    for (const auto& p : curve.points()) {
        const double w = weight(curve.n(), p.lambda, convention) * p.measure;
        if (w > best.value) best = {w, p.lambda};
    }
    return best;
}

GridSource::GridSource(const GridFunction& maximal)
    : dim_(maximal.dim()),
      cell_volume_(maximal.cell_volume()),
      sorted_(maximal.values().begin(), maximal.values().end()) {
    std::sort(sorted_.begin(), sorted_.end());
}

double GridSource::measure(double level) const {
    const auto above = sorted_.end() - std::upper_bound(sorted_.begin(), sorted_.end(), level);
    return static_cast<double>(above) * cell_volume_;
}

SeparableSource::SeparableSource(std::vector<Profile1D> profiles, int power)
    : profiles_(std::move(profiles)), power_(power) {
    if (profiles_.empty()) throw std::invalid_argument("separable source: no profiles");
    if (power_ != 1 && power_ != 2) throw std::invalid_argument("separable source: power must be 1 or 2");
}

double SeparableSource::measure(double level) const {
    const double l = power_ == 2 ? std::sqrt(level) : level;
    return distribution_separable(profiles_, l);
}

Method SeparableSource::method() const noexcept {
    return Method::separable;
}

HybridSource::HybridSource(const GridFunction& f, const FarFieldConfig& cfg)
    : cfg_(cfg), inner_(strong_maximal_grid(f, Variant::uncentered)) {
    if (f.dim() != cfg.dim) throw std::invalid_argument("hybrid: grid and far-field dimensions differ");
    for (int k = 0; k < f.dim(); ++k) {
        const double lo = f.box_lo()[static_cast<std::size_t>(k)];
        const double hi = f.box_hi()[static_cast<std::size_t>(k)];
        const double tol = 1e-9 * cfg.radius;
        if (std::abs(lo + cfg.radius) > tol || std::abs(hi - cfg.radius) > tol) {
            throw std::invalid_argument("hybrid: grid box must be [-R, R]^n with R = " + std::to_string(cfg.radius));
        }
    }
}

double HybridSource::measure(double level) const {
    const double tail = level < cfg_.threshold() ? tail_level_measure(cfg_, level) : 0.0;
    return tail + inner_.measure(level);
}

double HybridSource::uncertainty(double level) const {
    return mixed_region_uncertainty(cfg_, level);
}

double TailSource::measure(double level) const {
    return level < cfg_.threshold() ? tail_level_measure(cfg_, level) : 0.0;
}

double mixed_region_uncertainty(const FarFieldConfig& cfg, double lambda) {
    double total = 0.0;
    for (int i = 1; i <= cfg.dim - 1; ++i) {
        if (lambda < mixed_region_threshold(cfg, i)) total += mixed_region_bound(cfg, lambda, i);
    }
    return total;
}

DistributionCurve distribution_from_source(const DistributionSource& source, std::span<const double> lambdas,
                                           Variant variant) {
    check_sorted_levels(lambdas);
    std::vector<CurvePoint> points(lambdas.size());
    const auto* hybrid = dynamic_cast<const HybridSource*>(&source);
    const auto count = static_cast<long>(lambdas.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) {
        const auto k = static_cast<std::size_t>(i);
        points[k] = CurvePoint{lambdas[k], source.measure(lambdas[k]), source.method(),
                               hybrid ? hybrid->uncertainty(lambdas[k]) : 0.0};
    }
    return DistributionCurve(source.dim(), variant, std::move(points));
}

}  // namespace strongmax
