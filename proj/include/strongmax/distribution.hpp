#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"
#include "strongmax/asymptotics.hpp"
#include "strongmax/descriptor.hpp"
#include "strongmax/grid.hpp"
#include "strongmax/maximal.hpp"

namespace strongmax {

struct CurvePoint {
    double lambda = 0.0;
    double measure = 0.0;
    Method method = Method::grid;
    double uncertainty = 0.0;  // one-sided: the true measure may exceed `measure` by this much
};

/// Level-set measures in ascending lambda order. Construction rejects
/// unsorted lambdas, negative or non-finite measures, and measures that
/// increase with lambda.
class DistributionCurve {
public:
    DistributionCurve(int n, Variant variant, std::vector<CurvePoint> points);

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] Variant variant() const noexcept { return variant_; }
    [[nodiscard]] std::span<const CurvePoint> points() const noexcept { return points_; }
    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }

private:
    int n_;
    Variant variant_;
    std::vector<CurvePoint> points_;
};

/// sum Phi_n(value) * cell volume.
[[nodiscard]] double phi_norm(const GridFunction& f, int n, PhiConvention convention = PhiConvention::classical);

/// Cell count of {m > lambda} times the cell volume. `m` is a maximal-function grid.
[[nodiscard]] DistributionCurve distribution_grid(const GridFunction& m, std::span<const double> lambdas,
                                                  Variant variant = Variant::uncentered);

/// Exact measure of {prod_k profile_k(x_k) > lambda}; 0 when lambda is at or
/// above the product of heights. Adaptive Gauss-Kronrod over the first axis
/// with breakpoints at the support edge and at doubling scales beyond it.
[[nodiscard]] double distribution_separable(std::span<const Profile1D> profiles, double lambda);

/// Far-field tail plus the grid count of {M f > lambda} inside [-R, R]^n.
///
/// `f` must be sampled on [-R, R]^n. Mixed regions (some |x_k| <= R, others
/// beyond) are not counted; their mixed_region_bound sum is carried as each
/// point's uncertainty. Above cfg.threshold() the far-field set is empty.
[[nodiscard]] DistributionCurve distribution_hybrid(const GridFunction& f, const FarFieldConfig& cfg,
                                                    std::span<const double> lambdas);

struct WeakNorm {
    double value = 0.0;
    double argmax_lambda = 0.0;
};

/// max over curve points of weight(n, lambda) * measure: a lower bound on
/// the weak quasi-norm of the underlying function.
[[nodiscard]] WeakNorm weak_phi_norm(const DistributionCurve& curve,
                                     PhiConvention convention = PhiConvention::classical);

// --- distribution sources -------------------------------------------------

/// Counts cells of a precomputed maximal grid; values are sorted once.
class GridSource final : public DistributionSource {
public:
    explicit GridSource(const GridFunction& maximal);
    [[nodiscard]] double measure(double level) const override;
    [[nodiscard]] Method method() const noexcept override { return Method::grid; }
    [[nodiscard]] int dim() const noexcept override { return dim_; }

private:
    int dim_;
    double cell_volume_;
    std::vector<double> sorted_;
};

/// Product-profile source. With `power` = 2 it reports
/// |{prod_k profile_k^2 > level}|, the bilinear maximal function of two
/// cube indicators sharing a half-width (heights hold sqrt(a_f a_g)).
class SeparableSource final : public DistributionSource {
public:
    explicit SeparableSource(std::vector<Profile1D> profiles, int power = 1);
    [[nodiscard]] double measure(double level) const override;
    [[nodiscard]] Method method() const noexcept override;
    [[nodiscard]] int dim() const noexcept override { return static_cast<int>(profiles_.size()); }

private:
    std::vector<Profile1D> profiles_;
    int power_;
};

class HybridSource final : public DistributionSource {
public:
    HybridSource(const GridFunction& f, const FarFieldConfig& cfg);
    [[nodiscard]] double measure(double level) const override;
    [[nodiscard]] double uncertainty(double level) const;
    [[nodiscard]] Method method() const noexcept override { return Method::hybrid; }
    [[nodiscard]] int dim() const noexcept override { return cfg_.dim; }
    [[nodiscard]] const FarFieldConfig& config() const noexcept { return cfg_; }

private:
    FarFieldConfig cfg_;
    GridSource inner_;
};

/// Far-field tail alone (tail_level_measure, 0 at and above the threshold).
class TailSource final : public DistributionSource {
public:
    explicit TailSource(const FarFieldConfig& cfg) : cfg_(cfg) {}
    [[nodiscard]] double measure(double level) const override;
    [[nodiscard]] Method method() const noexcept override { return Method::analytic; }
    [[nodiscard]] int dim() const noexcept override { return cfg_.dim; }

private:
    FarFieldConfig cfg_;
};

/// Sum of mixed_region_bound over i = 1..n-1 (terms above their threshold are 0).
[[nodiscard]] double mixed_region_uncertainty(const FarFieldConfig& cfg, double lambda);

/// Curve from any source at the given lambdas.
[[nodiscard]] DistributionCurve distribution_from_source(const DistributionSource& source,
                                                         std::span<const double> lambdas, Variant variant);

// --- certificates -----------------------------------------------------------

struct CertificateOptions {
    std::optional<Method> method;      // empty: separable for cubes, grid otherwise
    std::size_t cells = 128;           // per axis, grid method
    double box_half_width = 0.0;       // 0: 4 x support half-width
    PhiConvention convention = PhiConvention::classical;
};

struct Certificate {
    int n = 1;
    Variant variant = Variant::uncentered;
    nlohmann::json descriptor;
    Method method = Method::grid;
    double achieved = 0.0;
    double target = 0.0;
    double argmax_lambda = 0.0;
    double weak_norm = 0.0;
    double phi_norm = 0.0;
    bool meets_target = false;  // achieved >= 0.95 * target

    [[nodiscard]] nlohmann::json to_json() const;
};

/// Lower bound certificate for the L_Phi -> weak L_Phi norm of the maximal
/// operator. Throws std::invalid_argument when the descriptor height exceeds
/// 1 (then ||f||_Phi != ||f||_1) or the method does not fit the shape.
[[nodiscard]] Certificate lower_bound_certificate(const FunctionDescriptor& descriptor, int n, Variant variant,
                                                  std::span<const double> lambdas,
                                                  const CertificateOptions& options = {});

/// max(2^n/(n-1)!, 1) for the uncentered operator, 1 for the centered one.
[[nodiscard]] double certificate_target(int n, Variant variant);

}  // namespace strongmax
