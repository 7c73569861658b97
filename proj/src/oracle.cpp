#include "strongmax/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace strongmax {

std::uint64_t CounterRng::bits(std::uint64_t counter) const noexcept {
    // SplitMix64 finalizer applied to a keyed counter.
    std::uint64_t z = key_ * 0x9E3779B97F4A7C15ULL + (counter + 1) * 0xD1B54A32D192ED03ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double CounterRng::uniform(std::uint64_t counter) const noexcept {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

McEstimate mc_volume(int n, double R, double r, double c, std::uint64_t samples, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("mc_volume: n must be at least 1");
    if (!(R > 0.0) || !(r > 0.0)) throw std::invalid_argument("mc_volume: R and r must be positive");
    const double s = R + r;
    if (!(c > std::pow(s, n))) throw std::invalid_argument("mc_volume: invalid region, need c > (R+r)^n");
    if (samples < 10000) throw std::invalid_argument("mc_volume: need at least 10^4 samples");

    const double side = c / std::pow(s, n - 1) - s;
    const double box = std::pow(side, n);
    const CounterRng rng(seed);

    constexpr std::uint64_t kChunk = 1u << 16;
    const auto chunks = static_cast<long long>((samples + kChunk - 1) / kChunk);
    std::vector<std::uint64_t> hits(static_cast<std::size_t>(chunks), 0);
#pragma omp parallel for schedule(static)
    for (long long ch = 0; ch < chunks; ++ch) {
        const std::uint64_t begin = static_cast<std::uint64_t>(ch) * kChunk;
        const std::uint64_t end = std::min(samples, begin + kChunk);
        std::uint64_t h = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
            double prod = 1.0;
            for (int k = 0; k < n; ++k) {
                // (R, R + side]: shifted coordinate y = x + r in (s, s + side].
                const double u = 1.0 - rng.uniform(i * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(k));
                prod *= s + side * u;
            }
            h += prod < c ? 1 : 0;
        }
        hits[static_cast<std::size_t>(ch)] = h;
    }
    std::uint64_t total = 0;
    for (auto h : hits) total += h;

    const double N = static_cast<double>(samples);
    const double p = static_cast<double>(total) / N;
    const double sd = box * std::sqrt(p * (1.0 - p) * N / (N - 1.0));
    return McEstimate{p * box, sd / std::sqrt(N), samples, seed};
}

namespace {

struct Padded {
    std::array<std::size_t, 3> cells{1, 1, 1};
    std::array<std::size_t, 3> stride{0, 0, 0};
    std::size_t total = 1;

    explicit Padded(const GridFunction& f) {
        for (int k = 0; k < f.dim(); ++k) {
            cells[static_cast<std::size_t>(k)] = f.cells()[static_cast<std::size_t>(k)];
            stride[static_cast<std::size_t>(k)] = f.stride(k);
        }
        total = cells[0] * cells[1] * cells[2];
    }

    [[nodiscard]] std::size_t flat(std::size_t i, std::size_t j, std::size_t k) const {
        return i * stride[0] + j * stride[1] + k * stride[2];
    }
};

double direct_sum(const Padded& P, std::span<const double> v, const std::array<std::size_t, 3>& lo,
                  const std::array<std::size_t, 3>& hi) {
    double s = 0.0;
    for (std::size_t i = lo[0]; i < hi[0]; ++i)
        for (std::size_t j = lo[1]; j < hi[1]; ++j)
            for (std::size_t k = lo[2]; k < hi[2]; ++k) s += v[P.flat(i, j, k)];
    return s;
}

void guard(const GridFunction& f) {
    if (f.size() > kBruteForceCellLimit) {
        throw std::length_error("brute force oracle refuses grids above " + std::to_string(kBruteForceCellLimit) +
                                " cells");
    }
}

std::vector<double> brute_uncentered(const GridFunction& f, const GridFunction* g) {
    const Padded P(f);
    const auto fv = f.values();
    std::vector<double> out(P.total, 0.0);
    for (std::size_t x = 0; x < P.cells[0]; ++x)
        for (std::size_t y = 0; y < P.cells[1]; ++y)
            for (std::size_t z = 0; z < P.cells[2]; ++z) {
                double best = 0.0;
                const std::array<std::size_t, 3> c{x, y, z};
                std::array<std::size_t, 3> lo{}, hi{};
                for (lo[0] = 0; lo[0] <= c[0]; ++lo[0])
                    for (hi[0] = c[0] + 1; hi[0] <= P.cells[0]; ++hi[0])
                        for (lo[1] = 0; lo[1] <= c[1]; ++lo[1])
                            for (hi[1] = c[1] + 1; hi[1] <= P.cells[1]; ++hi[1])
                                for (lo[2] = 0; lo[2] <= c[2]; ++lo[2])
                                    for (hi[2] = c[2] + 1; hi[2] <= P.cells[2]; ++hi[2]) {
                                        const double count = static_cast<double>((hi[0] - lo[0]) * (hi[1] - lo[1]) *
                                                                                 (hi[2] - lo[2]));
                                        double v = direct_sum(P, fv, lo, hi) / count;
                                        if (g) v *= direct_sum(P, g->values(), lo, hi) / count;
                                        best = std::max(best, v);
                                    }
                out[P.flat(x, y, z)] = best;
            }
    return out;
}

std::vector<double> brute_centered(const GridFunction& f) {
    const Padded P(f);
    const auto fv = f.values();
    std::vector<double> out(P.total, 0.0);
    for (std::size_t x = 0; x < P.cells[0]; ++x)
        for (std::size_t y = 0; y < P.cells[1]; ++y)
            for (std::size_t z = 0; z < P.cells[2]; ++z) {
                const std::array<std::size_t, 3> c{x, y, z};
                std::array<std::size_t, 3> reach{};
                for (std::size_t k = 0; k < 3; ++k) reach[k] = std::max(c[k], P.cells[k] - 1 - c[k]);
                double best = 0.0;
                std::array<std::size_t, 3> t{};
                for (t[0] = 0; t[0] <= reach[0]; ++t[0])
                    for (t[1] = 0; t[1] <= reach[1]; ++t[1])
                        for (t[2] = 0; t[2] <= reach[2]; ++t[2]) {
                            std::array<std::size_t, 3> lo{}, hi{};
                            double count = 1.0;
                            for (std::size_t k = 0; k < 3; ++k) {
                                lo[k] = c[k] >= t[k] ? c[k] - t[k] : 0;
                                hi[k] = std::min(P.cells[k], c[k] + t[k] + 1);
                                count *= static_cast<double>(2 * t[k] + 1);
                            }
                            best = std::max(best, direct_sum(P, fv, lo, hi) / count);
                        }
                out[P.flat(x, y, z)] = best;
            }
    return out;
}

}  // namespace

GridFunction brute_force_maximal(const GridFunction& f, Variant v) {
    guard(f);
    return f.with_values(v == Variant::centered ? brute_centered(f) : brute_uncentered(f, nullptr));
}

GridFunction brute_force_bilinear(const GridFunction& f, const GridFunction& g) {
    guard(f);
    if (!f.same_geometry(g)) {
        throw std::invalid_argument("bilinear oracle needs f and g on the same box and resolution");
    }
    return f.with_values(brute_uncentered(f, &g));
}

}  // namespace strongmax
