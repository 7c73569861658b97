#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "strongmax/maximal.hpp"

namespace strongmax {

Profile1D::Profile1D(double r, double a, Variant v) : half_width(r), height(a), variant(v) {
    if (!(r > 0.0) || !(a > 0.0)) throw std::invalid_argument("profile needs positive half-width and height");
}

double Profile1D::operator()(double x) const noexcept {
    const double ax = std::abs(x);
    if (variant == Variant::uncentered) {
        return ax <= half_width ? height : height * 2.0 * half_width / (ax + half_width);
    }
    // Centered: at |x| = r the best centered interval already covers only half
    // of its length with support.
    return ax < half_width ? height : height * half_width / (ax + half_width);
}

double Profile1D::superlevel_half_length(double level) const noexcept {
    if (level >= height) return 0.0;
    if (level <= 0.0) return std::numeric_limits<double>::infinity();
    const double r = half_width;
    if (variant == Variant::uncentered) return 2.0 * r * height / level - r;
    if (level >= 0.5 * height) return r;
    return r * height / level - r;
}

double separable_maximal(std::span<const Profile1D> profiles, std::span<const double> x) {
    if (profiles.size() != x.size()) {
        throw std::invalid_argument("separable_maximal: " + std::to_string(profiles.size()) + " profiles for a " +
                                    std::to_string(x.size()) + "-dimensional point");
    }
    double v = 1.0;
    for (std::size_t k = 0; k < x.size(); ++k) v *= profiles[k](x[k]);
    return v;
}

FarFieldConfig FarFieldConfig::make(int dim, double half_width, double floor, double ceiling, double mass) {
    if (dim < 1) throw std::invalid_argument("far field: dim must be positive");
    if (!(half_width > 0.0)) throw std::invalid_argument("far field: support half-width must be positive");
    if (!(floor > 0.0) || !(ceiling >= floor)) {
        throw std::invalid_argument("far field: need 0 < floor <= ceiling");
    }
    if (!(mass > 0.0)) throw std::invalid_argument("far field: mass must be positive");
    FarFieldConfig c;
    c.dim = dim;
    c.half_width = half_width;
    c.floor = floor;
    c.ceiling = ceiling;
    c.mass = mass;
    c.radius = std::pow(2.0 * half_width, dim + 1) * ceiling / floor + half_width;
    c.exact = true;
    return c;
}

FarFieldConfig FarFieldConfig::with_radius(int dim, double half_width, double ceiling, double mass,
                                           double radius) {
    if (dim < 1) throw std::invalid_argument("far field: dim must be positive");
    if (!(half_width > 0.0) || !(ceiling > 0.0) || !(mass > 0.0)) {
        throw std::invalid_argument("far field: half-width, ceiling and mass must be positive");
    }
    if (!(radius > half_width)) throw std::invalid_argument("far field: radius must exceed the support half-width");
    FarFieldConfig c;
    c.dim = dim;
    c.half_width = half_width;
    c.floor = 0.0;
    c.ceiling = ceiling;
    c.mass = mass;
    c.radius = radius;
    c.exact = false;
    return c;
}

double FarFieldConfig::threshold() const noexcept {
    return mass / std::pow(radius + half_width, dim);
}

double far_field_value(const FarFieldConfig& cfg, std::span<const double> x) {
    if (x.size() != static_cast<std::size_t>(cfg.dim)) {
        throw std::invalid_argument("far_field_value: point dimension mismatch");
    }
    double denom = 1.0;
    for (double xk : x) {
        if (!(std::abs(xk) > cfg.radius)) {
            throw std::domain_error("far_field_value: point is not in the far-field region |x_k| > " +
                                    std::to_string(cfg.radius));
        }
        denom *= std::abs(xk) + cfg.half_width;
    }
    return cfg.mass / denom;
}

FarFieldConfig far_field_config(const GridFunction& f) {
    const int d = f.dim();
    const auto vals = f.values();
    double r = 0.0;
    double ceiling = 0.0;
    std::array<std::size_t, kMaxDim> idx{};
    auto unflatten = [&](std::size_t flat) {
        for (int k = 0; k < d; ++k) {
            idx[k] = flat / f.stride(k);
            flat %= f.stride(k);
        }
    };
    for (std::size_t flat = 0; flat < vals.size(); ++flat) {
        if (vals[flat] == 0.0) continue;
        ceiling = std::max(ceiling, vals[flat]);
        unflatten(flat);
        for (int k = 0; k < d; ++k) {
            const double c = f.center(k, idx[k]);
            const double half = 0.5 * f.cell_width(k);
            r = std::max({r, std::abs(c - half), std::abs(c + half)});
        }
    }
    if (ceiling == 0.0) throw std::invalid_argument("far field: function is identically zero");

    double floor = std::numeric_limits<double>::infinity();
    for (std::size_t flat = 0; flat < vals.size(); ++flat) {
        unflatten(flat);
        bool inside = true;
        for (int k = 0; k < d && inside; ++k) inside = std::abs(f.center(k, idx[k])) < r;
        if (inside) floor = std::min(floor, vals[flat]);
    }
    if (!(floor > 0.0)) {
        throw std::domain_error("far field: function vanishes inside its support cube; supply a radius");
    }
    return FarFieldConfig::make(d, r, floor, ceiling, f.mass());
}

}  // namespace strongmax
