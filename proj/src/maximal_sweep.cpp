// Rectangle-sweep evaluation of the uncentered (bi)linear strong maximal
// function.
//
// For a fixed left edge a on axis 0 the right edge b runs downward. Every
// rectangle [a, b) x R' contains exactly the slabs a..b-1, so a running
// maximum over b of the sub-problem results is the best value for slab b-1
// among rectangles starting at a. The sub-problem on the remaining axes is
// the same computation on the difference of two summed-area slices, which is
// itself a summed-area table of the slab sum.

#include <algorithm>
#include <array>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "internal.hpp"
#include "strongmax/maximal.hpp"

namespace strongmax {

namespace {

template <int K>
class Sweeper {
public:
    using Tables = std::array<const double*, K>;

    Sweeper(std::span<const std::size_t> cells, Tables tables) : dim_(static_cast<int>(cells.size())), top_(tables) {
        for (int l = 0; l < dim_; ++l) cells_[l] = cells[static_cast<std::size_t>(l)];
        sat_size_[dim_] = 1;
        cell_size_[dim_] = 1;
        for (int l = dim_ - 1; l >= 0; --l) {
            sat_size_[l] = sat_size_[l + 1] * (cells_[l] + 1);
            cell_size_[l] = cell_size_[l + 1] * cells_[l];
        }
    }

    std::vector<double> run() const {
        std::vector<double> result(cell_size_[0], 0.0);
        const auto c0 = static_cast<long long>(cells_[0]);
#pragma omp parallel
        {
            Workspace ws = make_workspace();
            std::vector<double> local(cell_size_[0], 0.0);
#pragma omp for schedule(dynamic, 1) nowait
            for (long long a = 0; a < c0; ++a) {
                process_left_edge(0, static_cast<std::size_t>(a), top_, 1.0, local.data(), ws);
            }
#pragma omp critical(strongmax_sweep_merge)
            {
                for (std::size_t q = 0; q < result.size(); ++q) result[q] = std::max(result[q], local[q]);
            }
        }
        return result;
    }

private:
    struct Workspace {
        std::array<std::array<std::vector<double>, K>, kMaxDim + 1> diff;
        std::array<std::vector<double>, kMaxDim + 1> best;
        std::array<std::vector<double>, kMaxDim + 1> running;
    };

    Workspace make_workspace() const {
        Workspace ws;
        for (int l = 1; l < dim_; ++l) {
            for (int f = 0; f < K; ++f) ws.diff[l][f].resize(sat_size_[l]);
            ws.best[l].resize(cell_size_[l]);
            ws.running[l].resize(cell_size_[l]);
        }
        return ws;
    }

    static double objective(const Tables& t, std::size_t a, std::size_t b, double count) {
        double v = (t[0][b] - t[0][a]) / count;
        if constexpr (K == 2) v *= (t[1][b] - t[1][a]) / count;
        return v;
    }

    void level(int l, const Tables& t, double count, double* out, Workspace& ws) const {
        for (std::size_t a = 0; a < cells_[l]; ++a) process_left_edge(l, a, t, count, out, ws);
    }

    void process_left_edge(int l, std::size_t a, const Tables& t, double count, double* out, Workspace& ws) const {
        const std::size_t c = cells_[l];
        if (l == dim_ - 1) {
            double run = 0.0;
            for (std::size_t b = c; b > a; --b) {
                run = std::max(run, objective(t, a, b, count * static_cast<double>(b - a)));
                out[b - 1] = std::max(out[b - 1], run);
            }
            return;
        }
        const std::size_t sat_rest = sat_size_[l + 1];
        const std::size_t cell_rest = cell_size_[l + 1];
        std::vector<double>& running = ws.running[l + 1];
        std::fill(running.begin(), running.end(), 0.0);
        Tables sub{};
        for (std::size_t b = c; b > a; --b) {
            for (int f = 0; f < K; ++f) {
                double* d = ws.diff[l + 1][f].data();
                const double* hi = t[f] + b * sat_rest;
                const double* lo = t[f] + a * sat_rest;
                for (std::size_t q = 0; q < sat_rest; ++q) d[q] = hi[q] - lo[q];
                sub[f] = d;
            }
            std::vector<double>& best = ws.best[l + 1];
            std::fill(best.begin(), best.end(), 0.0);
            level(l + 1, sub, count * static_cast<double>(b - a), best.data(), ws);
            double* slab = out + (b - 1) * cell_rest;
            for (std::size_t q = 0; q < cell_rest; ++q) {
                running[q] = std::max(running[q], best[q]);
                slab[q] = std::max(slab[q], running[q]);
            }
        }
    }

    int dim_;
    Tables top_;
    std::array<std::size_t, kMaxDim + 1> cells_{};
    std::array<std::size_t, kMaxDim + 1> sat_size_{};
    std::array<std::size_t, kMaxDim + 1> cell_size_{};
};

}  // namespace

namespace detail {

std::vector<double> sweep_uncentered(const SummedArea& s) {
    Sweeper<1> sweeper(s.cells(), {s.table().data()});
    return sweeper.run();
}

std::vector<double> sweep_bilinear(const SummedArea& sf, const SummedArea& sg) {
    Sweeper<2> sweeper(sf.cells(), {sf.table().data(), sg.table().data()});
    return sweeper.run();
}

}  // namespace detail

GridFunction strong_maximal_grid(const GridFunction& f, Variant v, Kernel kernel) {
    const SummedArea s(f);
    if (v == Variant::centered) {
        if (kernel == Kernel::sweep) {
            throw std::invalid_argument("the sweep kernel covers the uncentered variant only");
        }
        return detail::with_unit_cells(f, detail::per_cell_centered(s, kernel != Kernel::per_cell));
    }
    if (kernel == Kernel::per_cell) return detail::with_unit_cells(f, detail::per_cell_uncentered(s, nullptr));
    return detail::with_unit_cells(f, detail::sweep_uncentered(s));
}

GridFunction bilinear_maximal_grid(const GridFunction& f, const GridFunction& g, Kernel kernel) {
    if (!f.same_geometry(g)) {
        throw std::invalid_argument("bilinear maximal function needs f and g on the same box and resolution");
    }
    const SummedArea sf(f);
    const SummedArea sg(g);
    if (kernel == Kernel::per_cell) return detail::with_unit_cells(f, detail::per_cell_uncentered(sf, &sg), &g);
    return detail::with_unit_cells(f, detail::sweep_bilinear(sf, sg), &g);
}

std::string_view to_string(Variant v) noexcept {
    return v == Variant::centered ? "centered" : "uncentered";
}

Variant parse_variant(std::string_view s) {
    if (s == "uncentered") return Variant::uncentered;
    if (s == "centered") return Variant::centered;
    throw std::invalid_argument("unknown variant '" + std::string(s) + "'");
}

}  // namespace strongmax
