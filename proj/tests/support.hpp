#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "strongmax/grid.hpp"

namespace testing_support {

inline strongmax::GridFunction random_grid(std::mt19937_64& rng, std::vector<std::size_t> cells,
                                           double zero_fraction = 0.3) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::size_t total = 1;
    for (auto c : cells) total *= c;
    std::vector<double> values(total);
    for (auto& v : values) v = u(rng) < zero_fraction ? 0.0 : u(rng);
    const std::size_t dim = cells.size();
    return strongmax::GridFunction(std::vector<double>(dim, -1.0), std::vector<double>(dim, 1.0), std::move(cells),
                                   std::move(values));
}

inline std::vector<std::size_t> random_shape(std::mt19937_64& rng, int dim, std::size_t cap) {
    std::uniform_int_distribution<std::size_t> pick(1, cap);
    std::vector<std::size_t> cells(static_cast<std::size_t>(dim));
    for (auto& c : cells) c = pick(rng);
    return cells;
}

inline double max_relative_gap(const strongmax::GridFunction& a, const strongmax::GridFunction& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double x = a.values()[i];
        const double y = b.values()[i];
        const double scale = std::max({std::abs(x), std::abs(y), 1e-300});
        worst = std::max(worst, std::abs(x - y) / scale);
    }
    return worst;
}

inline strongmax::GridFunction cube_grid(int dim, double r, double height, double box, std::size_t cells) {
    std::vector<std::size_t> shape(static_cast<std::size_t>(dim), cells);
    std::size_t total = 1;
    for (auto c : shape) total *= c;
    const double h = 2.0 * box / static_cast<double>(cells);
    std::vector<double> values(total, 0.0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        bool inside = true;
        for (int k = dim - 1; k >= 0; --k) {
            const std::size_t i = rem % cells;
            rem /= cells;
            const double x = -box + (static_cast<double>(i) + 0.5) * h;
            inside = inside && std::abs(x) <= r;
        }
        if (inside) values[flat] = height;
    }
    return strongmax::GridFunction(std::vector<double>(static_cast<std::size_t>(dim), -box),
                                   std::vector<double>(static_cast<std::size_t>(dim), box), std::move(shape),
                                   std::move(values));
}

}  // namespace testing_support
