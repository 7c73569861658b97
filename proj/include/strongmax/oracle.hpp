#pragma once

#include <cstdint>

#include "strongmax/grid.hpp"
#include "strongmax/maximal.hpp"

namespace strongmax {

/// Stateless counter-based generator: draw(i) depends only on (seed, i), so
/// any partition of the counter range across threads yields the same stream.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) noexcept : key_(seed) {}
    [[nodiscard]] std::uint64_t bits(std::uint64_t counter) const noexcept;
    /// Uniform in [0, 1).
    [[nodiscard]] double uniform(std::uint64_t counter) const noexcept;

private:
    std::uint64_t key_;
};

struct McEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

/// Rejection sampling of |{x : x_k > R, prod (x_k + r) < c}| over the box
/// prod_k (R, c / (R+r)^(n-1) - r]. Throws std::invalid_argument unless
/// c > (R+r)^n and samples >= 10^4.
[[nodiscard]] McEstimate mc_volume(int n, double R, double r, double c, std::uint64_t samples, std::uint64_t seed);

inline constexpr std::size_t kBruteForceCellLimit = 10000;

/// Per-cell enumeration of every admissible rectangle with direct summation.
/// Same rectangle families as strong_maximal_grid. Throws std::length_error
/// above kBruteForceCellLimit cells.
[[nodiscard]] GridFunction brute_force_maximal(const GridFunction& f, Variant v);
[[nodiscard]] GridFunction brute_force_bilinear(const GridFunction& f, const GridFunction& g);

}  // namespace strongmax
