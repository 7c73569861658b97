#include <algorithm>
#include <array>
#include <stdexcept>
#include <vector>

#include "internal.hpp"
#include "strongmax/maximal.hpp"

namespace strongmax {

namespace {

using Index = std::array<std::size_t, kMaxDim>;

template <int D>
double corner_sum(const double* table, const Index& stride, const Index& lo, const Index& hi) {
    double sum = 0.0;
    for (unsigned corner = 0; corner < (1u << D); ++corner) {
        std::size_t flat = 0;
        int lows = 0;
        for (int k = 0; k < D; ++k) {
            const bool take_lo = (corner >> k) & 1u;
            lows += take_lo;
            flat += (take_lo ? lo[k] : hi[k]) * stride[k];
        }
        sum += (lows & 1) ? -table[flat] : table[flat];
    }
    return sum;
}

struct Layout {
    int dim = 1;
    Index cells{};
    Index sat_stride{};
    std::size_t total = 1;

    explicit Layout(const SummedArea& s) : dim(s.dim()) {
        for (int k = 0; k < dim; ++k) {
            cells[k] = s.cells()[static_cast<std::size_t>(k)];
            sat_stride[k] = s.stride(k);
            total *= cells[k];
        }
    }

    Index unflatten(std::size_t flat) const {
        Index idx{};
        for (int k = dim - 1; k >= 0; --k) {
            idx[k] = flat % cells[k];
            flat /= cells[k];
        }
        return idx;
    }
};

template <int D, bool Bilinear>
double best_uncentered(const Layout& L, const double* tf, const double* tg, const Index& cell) {
    Index lo{}, hi{};
    double best = 0.0;
    // Odometer over (lo_k, hi_k) pairs with lo_k <= cell_k < hi_k.
    for (int k = 0; k < D; ++k) {
        lo[k] = 0;
        hi[k] = cell[k] + 1;
    }
    while (true) {
        double count = 1.0;
        for (int k = 0; k < D; ++k) count *= static_cast<double>(hi[k] - lo[k]);
        double v = corner_sum<D>(tf, L.sat_stride, lo, hi) / count;
        if constexpr (Bilinear) v *= corner_sum<D>(tg, L.sat_stride, lo, hi) / count;
        best = std::max(best, v);

        int k = D - 1;
        for (; k >= 0; --k) {
            if (++hi[k] <= L.cells[k]) break;
            hi[k] = cell[k] + 1;
            if (++lo[k] <= cell[k]) break;
            lo[k] = 0;
        }
        if (k < 0) break;
    }
    return best;
}

template <int D>
double best_centered(const Layout& L, const double* t, const Index& cell) {
    Index reach{}, span{}, lo{}, hi{};
    for (int k = 0; k < D; ++k) {
        reach[k] = std::max(cell[k], L.cells[k] - 1 - cell[k]);
        span[k] = 0;
    }
    double best = 0.0;
    while (true) {
        double count = 1.0;
        for (int k = 0; k < D; ++k) {
            lo[k] = cell[k] >= span[k] ? cell[k] - span[k] : 0;
            hi[k] = std::min(L.cells[k], cell[k] + span[k] + 1);
            count *= static_cast<double>(2 * span[k] + 1);
        }
        best = std::max(best, corner_sum<D>(t, L.sat_stride, lo, hi) / count);

        int k = D - 1;
        for (; k >= 0; --k) {
            if (++span[k] <= reach[k]) break;
            span[k] = 0;
        }
        if (k < 0) break;
    }
    return best;
}

template <int D>
std::vector<double> uncentered_impl(const SummedArea& sf, const SummedArea* sg) {
    const Layout L(sf);
    std::vector<double> out(L.total);
    const double* tf = sf.table().data();
    for (std::size_t flat = 0; flat < L.total; ++flat) {
        const Index cell = L.unflatten(flat);
        out[flat] = sg ? best_uncentered<D, true>(L, tf, sg->table().data(), cell)
                       : best_uncentered<D, false>(L, tf, nullptr, cell);
    }
    return out;
}

template <int D>
std::vector<double> centered_impl(const SummedArea& s, bool parallel) {
    const Layout L(s);
    std::vector<double> out(L.total);
    const double* t = s.table().data();
    const auto total = static_cast<long long>(L.total);
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
    for (long long flat = 0; flat < total; ++flat) {
        const auto f = static_cast<std::size_t>(flat);
        out[f] = best_centered<D>(L, t, L.unflatten(f));
    }
    return out;
}

}  // namespace

namespace detail {

std::vector<double> per_cell_uncentered(const SummedArea& sf, const SummedArea* sg) {
    switch (sf.dim()) {
        case 1: return uncentered_impl<1>(sf, sg);
        case 2: return uncentered_impl<2>(sf, sg);
        case 3: return uncentered_impl<3>(sf, sg);
        default: throw std::invalid_argument("unsupported dimension");
    }
}

std::vector<double> per_cell_centered(const SummedArea& s, bool parallel) {
    switch (s.dim()) {
        case 1: return centered_impl<1>(s, parallel);
        case 2: return centered_impl<2>(s, parallel);
        case 3: return centered_impl<3>(s, parallel);
        default: throw std::invalid_argument("unsupported dimension");
    }
}

}  // namespace detail

namespace reference {

GridFunction strong_maximal_per_cell(const GridFunction& f, Variant v) {
    const SummedArea s(f);
    if (v == Variant::centered) return detail::with_unit_cells(f, detail::per_cell_centered(s, false));
    return detail::with_unit_cells(f, detail::per_cell_uncentered(s, nullptr));
}

GridFunction bilinear_per_cell(const GridFunction& f, const GridFunction& g) {
    if (!f.same_geometry(g)) {
        throw std::invalid_argument("bilinear maximal function needs f and g on the same box and resolution");
    }
    const SummedArea sf(f);
    const SummedArea sg(g);
    return detail::with_unit_cells(f, detail::per_cell_uncentered(sf, &sg), &g);
}

}  // namespace reference

}  // namespace strongmax
