#include "strongmax/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace strongmax {

namespace {

std::vector<std::size_t> row_major_strides(std::span<const std::size_t> extents) {
    std::vector<std::size_t> strides(extents.size(), 1);
    for (std::size_t k = extents.size(); k-- > 1;) {
        strides[k - 1] = strides[k] * extents[k];
    }
    return strides;
}

}  // namespace

GridFunction::GridFunction(std::vector<double> box_lo, std::vector<double> box_hi,
                           std::vector<std::size_t> cells, std::vector<double> values)
    : box_lo_(std::move(box_lo)),
      box_hi_(std::move(box_hi)),
      cells_(std::move(cells)),
      values_(std::move(values)) {
    const std::size_t d = cells_.size();
    if (d < 1 || d > static_cast<std::size_t>(kMaxDim)) {
        throw std::invalid_argument("grid dimension must be 1, 2 or 3");
    }
    if (box_lo_.size() != d || box_hi_.size() != d) {
        throw std::invalid_argument("box bounds do not match grid dimension");
    }
    std::size_t total = 1;
    cell_volume_ = 1.0;
    for (std::size_t k = 0; k < d; ++k) {
        if (cells_[k] == 0) {
            throw std::invalid_argument("cell count must be positive on axis " + std::to_string(k));
        }
        if (!std::isfinite(box_lo_[k]) || !std::isfinite(box_hi_[k]) || !(box_hi_[k] > box_lo_[k])) {
            throw std::invalid_argument("box_hi must exceed box_lo on axis " + std::to_string(k));
        }
        total *= cells_[k];
        cell_volume_ *= (box_hi_[k] - box_lo_[k]) / static_cast<double>(cells_[k]);
    }
    if (!(cell_volume_ > 0.0)) {
        throw std::invalid_argument("cell volume underflows to zero");
    }
    if (values_.size() != total) {
        throw std::invalid_argument("value count " + std::to_string(values_.size()) +
                                    " does not match cell count " + std::to_string(total));
    }
    for (double v : values_) {
        if (!std::isfinite(v) || v < 0.0) {
            throw std::invalid_argument("grid values must be finite and nonnegative");
        }
    }
    strides_ = row_major_strides(cells_);
}

double GridFunction::cell_width(int axis) const {
    const auto k = static_cast<std::size_t>(axis);
    return (box_hi_.at(k) - box_lo_.at(k)) / static_cast<double>(cells_.at(k));
}

double GridFunction::box_volume() const noexcept {
    double v = 1.0;
    for (std::size_t k = 0; k < cells_.size(); ++k) v *= box_hi_[k] - box_lo_[k];
    return v;
}

double GridFunction::center(int axis, std::size_t index) const {
    return box_lo_.at(static_cast<std::size_t>(axis)) + (static_cast<double>(index) + 0.5) * cell_width(axis);
}

double GridFunction::at(std::span<const std::size_t> index) const {
    if (index.size() != cells_.size()) throw std::out_of_range("index dimension mismatch");
    std::size_t flat = 0;
    for (std::size_t k = 0; k < cells_.size(); ++k) {
        if (index[k] >= cells_[k]) throw std::out_of_range("cell index out of range");
        flat += index[k] * strides_[k];
    }
    return values_[flat];
}

double GridFunction::mass() const noexcept {
    return std::accumulate(values_.begin(), values_.end(), 0.0) * cell_volume_;
}

double GridFunction::max_value() const noexcept {
    return *std::max_element(values_.begin(), values_.end());
}

GridFunction GridFunction::with_values(std::vector<double> values) const {
    return GridFunction(box_lo_, box_hi_, cells_, std::move(values));
}

bool GridFunction::same_geometry(const GridFunction& other) const noexcept {
    return cells_ == other.cells_ && box_lo_ == other.box_lo_ && box_hi_ == other.box_hi_;
}

std::size_t AxisRect::cell_count() const noexcept {
    std::size_t n = 1;
    for (int k = 0; k < dim; ++k) n *= hi[k] - lo[k];
    return n;
}

SummedArea::SummedArea(const GridFunction& f)
    : cells_(f.cells().begin(), f.cells().end()), cell_volume_(f.cell_volume()) {
    extents_.resize(cells_.size());
    std::size_t total = 1;
    for (std::size_t k = 0; k < cells_.size(); ++k) {
        extents_[k] = cells_[k] + 1;
        total *= extents_[k];
    }
    strides_ = row_major_strides(extents_);
    table_.assign(total, 0.0);

    // Scatter values into the shifted table, then prefix-sum along each axis.
    const auto vals = f.values();
    const int d = f.dim();
    std::array<std::size_t, kMaxDim> idx{};
    for (std::size_t flat = 0; flat < vals.size(); ++flat) {
        std::size_t rem = flat;
        std::size_t target = 0;
        for (int k = 0; k < d; ++k) {
            idx[k] = rem / f.stride(k);
            rem %= f.stride(k);
            target += (idx[k] + 1) * strides_[static_cast<std::size_t>(k)];
        }
        table_[target] = vals[flat];
    }
    for (int k = 0; k < d; ++k) {
        const std::size_t s = strides_[static_cast<std::size_t>(k)];
        const std::size_t e = extents_[static_cast<std::size_t>(k)];
        for (std::size_t flat = 0; flat < total; ++flat) {
            const std::size_t i = (flat / s) % e;
            if (i > 0) table_[flat] += table_[flat - s];
        }
    }
}

double SummedArea::rect_sum(const AxisRect& rect) const {
    const int d = dim();
    if (rect.dim != d) throw std::out_of_range("rectangle dimension mismatch");
    for (int k = 0; k < d; ++k) {
        if (rect.lo[k] >= rect.hi[k] || rect.hi[k] > cells_[static_cast<std::size_t>(k)]) {
            throw std::out_of_range("rectangle indices out of range on axis " + std::to_string(k));
        }
    }
    double sum = 0.0;
    for (unsigned corner = 0; corner < (1u << d); ++corner) {
        std::size_t flat = 0;
        int lows = 0;
        for (int k = 0; k < d; ++k) {
            const bool take_lo = (corner >> k) & 1u;
            lows += take_lo ? 1 : 0;
            flat += (take_lo ? rect.lo[k] : rect.hi[k]) * strides_[static_cast<std::size_t>(k)];
        }
        sum += (lows % 2 == 0) ? table_[flat] : -table_[flat];
    }
    return sum;
}

SummedArea summed_area(const GridFunction& f) { return SummedArea(f); }

double rect_average(const SummedArea& s, const AxisRect& rect) {
    return s.rect_sum(rect) / static_cast<double>(rect.cell_count());
}

AxisRect full_rect(const GridFunction& f) {
    AxisRect r;
    r.dim = f.dim();
    for (int k = 0; k < r.dim; ++k) {
        r.lo[k] = 0;
        r.hi[k] = f.cells()[static_cast<std::size_t>(k)];
    }
    return r;
}

}  // namespace strongmax
