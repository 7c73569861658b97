#pragma once

#include <span>
#include <string_view>

#include "strongmax/grid.hpp"

namespace strongmax {

/// Rectangle family of the maximal operator.
///
/// `uncentered` takes every grid-aligned rectangle containing the cell.
/// `centered` takes rectangles index-symmetric about the cell (odd spans
/// 2t+1 per axis). Centered rectangles may reach past the box; the function
/// is zero there, so only the clipped part contributes to the sum while the
/// full span counts toward the volume.
enum class Variant { uncentered, centered };

[[nodiscard]] std::string_view to_string(Variant v) noexcept;
[[nodiscard]] Variant parse_variant(std::string_view s);

enum class Kernel {
    automatic,
    sweep,     // rectangle enumeration with suffix-max propagation, OpenMP
    per_cell,  // serial per-cell enumeration (reference path)
};

/// Strong maximal function sampled at cell centers. Output dominates the
/// input cellwise. `Kernel::sweep` is only defined for the uncentered
/// variant; the centered variant always enumerates per cell.
[[nodiscard]] GridFunction strong_maximal_grid(const GridFunction& f, Variant v,
                                               Kernel kernel = Kernel::automatic);

/// max over rectangles R containing the cell of avg_R f * avg_R g.
/// Throws std::invalid_argument if f and g differ in box or resolution.
[[nodiscard]] GridFunction bilinear_maximal_grid(const GridFunction& f, const GridFunction& g,
                                                 Kernel kernel = Kernel::automatic);

namespace reference {

// Serial per-cell enumeration over the summed-area table. Kept for testing
// and benchmarking the parallel sweep.
[[nodiscard]] GridFunction strong_maximal_per_cell(const GridFunction& f, Variant v);
[[nodiscard]] GridFunction bilinear_per_cell(const GridFunction& f, const GridFunction& g);

}  // namespace reference

/// Exact one-dimensional maximal function of height * indicator([-r, r]).
struct Profile1D {
    double half_width = 1.0;
    double height = 1.0;
    Variant variant = Variant::uncentered;

    Profile1D() = default;
    Profile1D(double r, double a, Variant v);

    [[nodiscard]] double operator()(double x) const noexcept;

    /// Sup of {x >= 0 : profile(x) > level}; the superlevel set is the
    /// symmetric interval of this half-length (0 when empty).
    [[nodiscard]] double superlevel_half_length(double level) const noexcept;
};

/// prod_k profile_k(x_k): the continuous maximal function of a product of
/// interval indicators. Throws std::invalid_argument on dimension mismatch.
[[nodiscard]] double separable_maximal(std::span<const Profile1D> profiles, std::span<const double> x);

/// Far-field geometry for a function supported in [-r, r]^n with
/// floor <= f <= ceiling on that cube.
///
/// Beyond `radius` = (2r)^(n+1) * ceiling / floor + r on every axis the
/// optimal rectangle runs from the opposite support corner to x, so the
/// maximal function is mass / prod(|x_k| + r). `exact` is false when the
/// radius was supplied by hand (e.g. for inputs that vanish on part of the
/// cube); the corner rule is then only asymptotically correct.
struct FarFieldConfig {
    int dim = 1;
    double half_width = 1.0;
    double floor = 1.0;
    double ceiling = 1.0;
    double mass = 2.0;
    double radius = 0.0;
    bool exact = true;

    [[nodiscard]] static FarFieldConfig make(int dim, double half_width, double floor, double ceiling,
                                             double mass);
    [[nodiscard]] static FarFieldConfig with_radius(int dim, double half_width, double ceiling, double mass,
                                                    double radius);

    /// Largest value the maximal function takes outside [-radius, radius]^n.
    [[nodiscard]] double threshold() const noexcept;
};

/// Throws std::domain_error unless every |x_k| > cfg.radius.
[[nodiscard]] double far_field_value(const FarFieldConfig& cfg, std::span<const double> x);

/// Far-field statistics of a grid whose support lies in [-r, r]^n, with r
/// the smallest half-width covering all nonzero cells.
[[nodiscard]] FarFieldConfig far_field_config(const GridFunction& f);

}  // namespace strongmax
