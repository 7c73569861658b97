#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "strongmax/grid.hpp"

namespace strongmax {

enum class Shape { cube, ball, tent, samples };

// Sampling box and resolution. Analytic shapes may omit them in JSON and take
// them from the caller; sample files must carry their own.
struct Sampling {
    std::vector<double> box_lo;
    std::vector<double> box_hi;
    std::vector<std::size_t> cells;
};

/// Parsed test-function description.
///
/// cube:    height on [-w, w]^dim
/// ball:    height on the closed Euclidean ball of the given radius
/// tent:    height * prod_k max(0, 1 - |x_k| / w)
/// samples: headerless row-major CSV on an explicit box
struct FunctionDescriptor {
    Shape shape = Shape::cube;
    int dim = 1;
    double half_width = 1.0;  // radius for balls
    double height = 1.0;
    std::filesystem::path file;
    std::optional<Sampling> sampling;

    [[nodiscard]] bool is_product_indicator() const noexcept { return shape == Shape::cube; }
    /// Closed-form L1 norm; empty for sample files.
    [[nodiscard]] std::optional<double> analytic_mass() const;
    /// Half-width of the smallest centered cube containing the support.
    [[nodiscard]] std::optional<double> support_half_width() const;
    [[nodiscard]] nlohmann::json to_json() const;
};

/// Throws std::invalid_argument on unknown shapes or bad parameters. Relative
/// sample-file paths are resolved against `base_dir`.
[[nodiscard]] FunctionDescriptor parse_descriptor(const nlohmann::json& j,
                                                  const std::filesystem::path& base_dir = {});

/// Accepts either inline JSON text or a path to a JSON file.
[[nodiscard]] FunctionDescriptor load_descriptor(const std::string& path_or_json);

/// Symmetric box [-half_width, half_width]^dim with `cells` per axis.
[[nodiscard]] Sampling centered_sampling(int dim, double half_width, std::size_t cells);

/// Samples the descriptor using its own sampling if present, else `fallback`.
[[nodiscard]] GridFunction build_grid_function(const FunctionDescriptor& d,
                                               const std::optional<Sampling>& fallback = std::nullopt);

[[nodiscard]] std::vector<double> read_sample_csv(const std::filesystem::path& file);

}  // namespace strongmax
