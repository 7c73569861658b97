#include "strongmax/descriptor.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace strongmax {

namespace {

Shape parse_shape(const std::string& s) {
    if (s == "cube") return Shape::cube;
    if (s == "ball") return Shape::ball;
    if (s == "tent") return Shape::tent;
    if (s == "samples") return Shape::samples;
    throw std::invalid_argument("unknown shape '" + s + "'");
}

const char* shape_name(Shape s) {
    switch (s) {
        case Shape::cube: return "cube";
        case Shape::ball: return "ball";
        case Shape::tent: return "tent";
        case Shape::samples: return "samples";
    }
    return "?";
}

double unit_ball_volume(int n) {
    return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

std::optional<Sampling> parse_sampling(const nlohmann::json& j, int dim) {
    const bool any = j.contains("box_lo") || j.contains("box_hi") || j.contains("cells");
    if (!any) return std::nullopt;
    if (!j.contains("box_lo") || !j.contains("box_hi") || !j.contains("cells")) {
        throw std::invalid_argument("box_lo, box_hi and cells must be given together");
    }
    Sampling s{j.at("box_lo").get<std::vector<double>>(), j.at("box_hi").get<std::vector<double>>(),
               j.at("cells").get<std::vector<std::size_t>>()};
    const auto d = static_cast<std::size_t>(dim);
    if (s.box_lo.size() != d || s.box_hi.size() != d || s.cells.size() != d) {
        throw std::invalid_argument("box_lo/box_hi/cells length must equal dim");
    }
    for (auto c : s.cells) {
        if (c == 0) throw std::invalid_argument("resolution of 0 cells");
    }
    return s;
}

}  // namespace

std::optional<double> FunctionDescriptor::analytic_mass() const {
    switch (shape) {
        case Shape::cube: return height * std::pow(2.0 * half_width, dim);
        case Shape::ball: return height * unit_ball_volume(dim) * std::pow(half_width, dim);
        case Shape::tent: return height * std::pow(half_width, dim);
        case Shape::samples: return std::nullopt;
    }
    return std::nullopt;
}

std::optional<double> FunctionDescriptor::support_half_width() const {
    if (shape == Shape::samples) return std::nullopt;
    return half_width;
}

nlohmann::json FunctionDescriptor::to_json() const {
    nlohmann::json j;
    j["shape"] = shape_name(shape);
    j["dim"] = dim;
    switch (shape) {
        case Shape::cube:
        case Shape::tent: j["half_width"] = half_width; break;
        case Shape::ball: j["radius"] = half_width; break;
        case Shape::samples: j["file"] = file.string(); break;
    }
    if (shape != Shape::samples) j["height"] = height;
    if (sampling) {
        j["box_lo"] = sampling->box_lo;
        j["box_hi"] = sampling->box_hi;
        j["cells"] = sampling->cells;
    }
    return j;
}

FunctionDescriptor parse_descriptor(const nlohmann::json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object()) throw std::invalid_argument("function descriptor must be a JSON object");
    if (!j.contains("shape")) throw std::invalid_argument("function descriptor lacks 'shape'");
    FunctionDescriptor d;
    d.shape = parse_shape(j.at("shape").get<std::string>());

    if (d.shape == Shape::samples) {
        if (!j.contains("file")) throw std::invalid_argument("samples descriptor lacks 'file'");
        std::filesystem::path p = j.at("file").get<std::string>();
        d.file = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
        if (!j.contains("cells")) throw std::invalid_argument("samples descriptor lacks 'cells'");
        d.dim = static_cast<int>(j.at("cells").size());
        d.height = 0.0;
    } else {
        d.dim = j.value("dim", 1);
        const char* width_key = d.shape == Shape::ball ? "radius" : "half_width";
        d.half_width = j.value(width_key, 1.0);
        d.height = j.value("height", 1.0);
        if (!(d.half_width > 0.0) || !std::isfinite(d.half_width)) {
            throw std::invalid_argument(std::string(width_key) + " must be positive");
        }
        if (!(d.height > 0.0) || !std::isfinite(d.height)) {
            throw std::invalid_argument("height must be positive");
        }
    }
    if (d.dim < 1 || d.dim > kMaxDim) throw std::invalid_argument("dim must be 1, 2 or 3");
    d.sampling = parse_sampling(j, d.dim);
    if (d.shape == Shape::samples && !d.sampling) {
        throw std::invalid_argument("samples descriptor needs box_lo, box_hi and cells");
    }
    if (d.shape == Shape::samples) {
        // Height of a sample file is its maximum, known only once read.
        const auto values = read_sample_csv(d.file);
        double h = 0.0;
        for (double v : values) h = std::max(h, v);
        d.height = h;
    }
    return d;
}

FunctionDescriptor load_descriptor(const std::string& path_or_json) {
    const auto first = path_or_json.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && path_or_json[first] == '{') {
        return parse_descriptor(nlohmann::json::parse(path_or_json));
    }
    const std::filesystem::path p(path_or_json);
    std::ifstream in(p);
    if (!in) throw std::invalid_argument("cannot open descriptor file " + p.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("malformed descriptor " + p.string() + ": " + e.what());
    }
    return parse_descriptor(j, p.parent_path());
}

Sampling centered_sampling(int dim, double half_width, std::size_t cells) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("dim must be 1, 2 or 3");
    if (cells == 0) throw std::invalid_argument("resolution of 0 cells");
    if (!(half_width > 0.0)) throw std::invalid_argument("box half-width must be positive");
    const auto d = static_cast<std::size_t>(dim);
    return Sampling{std::vector<double>(d, -half_width), std::vector<double>(d, half_width),
                    std::vector<std::size_t>(d, cells)};
}

std::vector<double> read_sample_csv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open sample file " + file.string());
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        std::stringstream row(line);
        std::string field;
        while (std::getline(row, field, ',')) {
            const auto b = field.find_first_not_of(" \t\r");
            if (b == std::string::npos) continue;
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(field.substr(b), &used);
            } catch (const std::exception&) {
                throw std::invalid_argument("non-numeric field '" + field + "' in " + file.string());
            }
            values.push_back(v);
        }
    }
    return values;
}

GridFunction build_grid_function(const FunctionDescriptor& d, const std::optional<Sampling>& fallback) {
    const Sampling* s = d.sampling ? &*d.sampling : (fallback ? &*fallback : nullptr);
    if (s == nullptr) throw std::invalid_argument("no sampling box or resolution for descriptor");
    if (s->cells.size() != static_cast<std::size_t>(d.dim)) {
        throw std::invalid_argument("sampling dimension does not match descriptor dim");
    }
    std::size_t total = 1;
    for (auto c : s->cells) {
        if (c == 0) throw std::invalid_argument("resolution of 0 cells");
        total *= c;
    }

    if (d.shape == Shape::samples) {
        auto values = read_sample_csv(d.file);
        if (values.size() != total) {
            throw std::invalid_argument("sample file " + d.file.string() + " holds " +
                                        std::to_string(values.size()) + " values, expected " +
                                        std::to_string(total));
        }
        return GridFunction(s->box_lo, s->box_hi, s->cells, std::move(values));
    }

    const int n = d.dim;
    std::vector<double> width(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        width[kk] = (s->box_hi[kk] - s->box_lo[kk]) / static_cast<double>(s->cells[kk]);
    }
    std::vector<double> values(total, 0.0);
    std::array<std::size_t, kMaxDim> idx{};
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (int k = n - 1; k >= 0; --k) {
            const auto kk = static_cast<std::size_t>(k);
            idx[kk] = rem % s->cells[kk];
            rem /= s->cells[kk];
        }
        double v = d.height;
        double r2 = 0.0;
        for (int k = 0; k < n; ++k) {
            const auto kk = static_cast<std::size_t>(k);
            const double x = s->box_lo[kk] + (static_cast<double>(idx[kk]) + 0.5) * width[kk];
            switch (d.shape) {
                case Shape::cube:
                    if (std::abs(x) > d.half_width) v = 0.0;
                    break;
                case Shape::tent:
                    v *= std::max(0.0, 1.0 - std::abs(x) / d.half_width);
                    break;
                case Shape::ball:
                    r2 += x * x;
                    break;
                case Shape::samples:
                    break;
            }
        }
        if (d.shape == Shape::ball && r2 > d.half_width * d.half_width) v = 0.0;
        values[flat] = v;
    }
    return GridFunction(s->box_lo, s->box_hi, s->cells, std::move(values));
}

}  // namespace strongmax
