#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace strongmax {

inline constexpr int kMaxDim = 3;

/// Nonnegative function sampled at cell centers of an axis-aligned box.
///
/// Values are stored row-major with axis 0 varying slowest. The object is
/// immutable after construction; the constructor rejects empty or inverted
/// boxes, zero cell counts, and negative or non-finite values.
class GridFunction {
public:
    GridFunction(std::vector<double> box_lo, std::vector<double> box_hi,
                 std::vector<std::size_t> cells, std::vector<double> values);

    [[nodiscard]] int dim() const noexcept { return static_cast<int>(cells_.size()); }
    [[nodiscard]] std::span<const double> box_lo() const noexcept { return box_lo_; }
    [[nodiscard]] std::span<const double> box_hi() const noexcept { return box_hi_; }
    [[nodiscard]] std::span<const std::size_t> cells() const noexcept { return cells_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

    [[nodiscard]] double cell_width(int axis) const;
    [[nodiscard]] double cell_volume() const noexcept { return cell_volume_; }
    [[nodiscard]] double box_volume() const noexcept;
    [[nodiscard]] double center(int axis, std::size_t index) const;

    [[nodiscard]] std::size_t stride(int axis) const { return strides_.at(static_cast<std::size_t>(axis)); }
    [[nodiscard]] double at(std::span<const std::size_t> index) const;

    /// Sum of values times cell volume.
    [[nodiscard]] double mass() const noexcept;
    [[nodiscard]] double max_value() const noexcept;

    /// Same geometry, different values.
    [[nodiscard]] GridFunction with_values(std::vector<double> values) const;
    [[nodiscard]] bool same_geometry(const GridFunction& other) const noexcept;

private:
    std::vector<double> box_lo_;
    std::vector<double> box_hi_;
    std::vector<std::size_t> cells_;
    std::vector<std::size_t> strides_;
    std::vector<double> values_;
    double cell_volume_ = 0.0;
};

/// Half-open cell-index rectangle [lo[k], hi[k]) on each of `dim` axes.
struct AxisRect {
    int dim = 1;
    std::array<std::size_t, kMaxDim> lo{};
    std::array<std::size_t, kMaxDim> hi{};

    [[nodiscard]] std::size_t cell_count() const noexcept;
};

/// Summed-area table with extents cells[k]+1; entry i holds the sum of all
/// values whose index is componentwise below i.
class SummedArea {
public:
    explicit SummedArea(const GridFunction& f);

    [[nodiscard]] int dim() const noexcept { return static_cast<int>(extents_.size()); }
    [[nodiscard]] std::span<const double> table() const noexcept { return table_; }
    [[nodiscard]] std::span<const std::size_t> extents() const noexcept { return extents_; }
    [[nodiscard]] std::size_t stride(int axis) const { return strides_.at(static_cast<std::size_t>(axis)); }
    [[nodiscard]] std::span<const std::size_t> cells() const noexcept { return cells_; }
    [[nodiscard]] double cell_volume() const noexcept { return cell_volume_; }

    /// Throws std::out_of_range for rectangles that are empty or leave the grid.
    [[nodiscard]] double rect_sum(const AxisRect& rect) const;

private:
    std::vector<std::size_t> cells_;
    std::vector<std::size_t> extents_;
    std::vector<std::size_t> strides_;
    std::vector<double> table_;
    double cell_volume_ = 0.0;
};

[[nodiscard]] SummedArea summed_area(const GridFunction& f);

/// Mean of the covered cell values, i.e. (sum * h) / |rect|.
[[nodiscard]] double rect_average(const SummedArea& s, const AxisRect& rect);

/// Full-grid rectangle.
[[nodiscard]] AxisRect full_rect(const GridFunction& f);

}  // namespace strongmax
