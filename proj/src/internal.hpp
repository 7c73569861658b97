#pragma once

#include <algorithm>
#include <vector>

#include "strongmax/grid.hpp"

namespace strongmax::detail {

std::vector<double> sweep_uncentered(const SummedArea& s);
std::vector<double> sweep_bilinear(const SummedArea& sf, const SummedArea& sg);

// `g` non-null selects the bilinear objective.
std::vector<double> per_cell_uncentered(const SummedArea& sf, const SummedArea* sg);
std::vector<double> per_cell_centered(const SummedArea& s, bool parallel);

// The one-cell rectangle read from a summed-area table is a difference of
// large partial sums; taking the stored value directly keeps M f >= f exact.
inline GridFunction with_unit_cells(const GridFunction& f, std::vector<double> out, const GridFunction* g = nullptr) {
    const auto fv = f.values();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(out[i], g ? fv[i] * g->values()[i] : fv[i]);
    return f.with_values(std::move(out));
}

}  // namespace strongmax::detail
