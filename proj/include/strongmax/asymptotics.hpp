#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "strongmax/maximal.hpp"

namespace strongmax {

/// How the n = 1 member of the Orlicz family is read.
///
/// `classical`: Phi_1(t) = t and weight(1, l) = l, the weak (1,1) setting.
/// `literal`:   the log power (log+ t)^0 counts as 1 wherever log+ t > 0, so
///              Phi_1(t) = 2t for t > 1 and weight(1, l) = l / 2 for l < 1.
/// Both agree for every n >= 2.
enum class PhiConvention { classical, literal };

/// t * (1 + (log+ t)^(n-1)). Throws std::domain_error for t < 0 or n < 1.
[[nodiscard]] double phi(int n, double t, PhiConvention convention = PhiConvention::classical);

/// l / (1 + (log+ (1/l))^(n-1)). Throws std::domain_error for l <= 0.
[[nodiscard]] double weight(int n, double lambda, PhiConvention convention = PhiConvention::classical);

/// Volume of {y in (s, inf)^n : prod y_k < c} as sum_j beta_j c (log c)^j + gamma.
///
/// Each beta_j is a polynomial in log s with rational coefficients, computed
/// exactly and rounded to double only for evaluation.
class LogPolynomial {
public:
    LogPolynomial(int n, double shift, std::vector<std::vector<double>> beta_in_log_shift);

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] double shift() const noexcept { return shift_; }
    /// beta_j evaluated at log(shift), j = 0..n-1.
    [[nodiscard]] std::span<const double> coefficients() const noexcept { return beta_; }
    /// Rational multipliers of beta_j as a polynomial in log(shift), lowest power first.
    [[nodiscard]] std::span<const std::vector<double>> exact_coefficients() const noexcept { return exact_; }
    [[nodiscard]] double constant() const noexcept { return gamma_; }

    /// 0 for c <= shift^n.
    [[nodiscard]] double operator()(double c) const;

private:
    int n_;
    double shift_;
    std::vector<std::vector<double>> exact_;
    std::vector<double> beta_;
    double gamma_;
};

/// Throws std::invalid_argument for n < 1 or s <= 0.
[[nodiscard]] LogPolynomial hyperbolic_volume_polynomial(int n, double s);

/// |{x : x_k > R, prod (x_k + r) < c}|. Throws std::domain_error unless c > (R+r)^n.
[[nodiscard]] double hyperbolic_region_volume(int n, double R, double r, double c);

/// Measure of {x : |x_k| > R for all k, mass / prod(|x_k| + r) > lambda}.
/// Throws std::domain_error unless 0 < lambda < cfg.threshold().
[[nodiscard]] double tail_level_measure(const FarFieldConfig& cfg, double lambda);

/// Upper bound on the level-set measure inside the mixed regions with exactly
/// `small_axes` coordinates in [-R, R]:
/// n! (2R)^i 2^(n-i) V_{n-i}(R, r, A (2r)^(n-i) / lambda).
/// Throws std::domain_error outside 1 <= i <= n-1 or above the admissible level.
[[nodiscard]] double mixed_region_bound(const FarFieldConfig& cfg, double lambda, int small_axes);

/// Level below which mixed_region_bound(cfg, *, i) is defined.
[[nodiscard]] double mixed_region_threshold(const FarFieldConfig& cfg, int small_axes);

/// Where each measured value comes from.
enum class Method { grid, separable, hybrid, analytic };

[[nodiscard]] std::string_view to_string(Method m) noexcept;
[[nodiscard]] Method parse_method(std::string_view s);

/// Anything that can report |{operator output > level}|.
class DistributionSource {
public:
    virtual ~DistributionSource() = default;
    [[nodiscard]] virtual double measure(double level) const = 0;
    [[nodiscard]] virtual Method method() const noexcept = 0;
    [[nodiscard]] virtual int dim() const noexcept = 0;
};

enum class Direction { to_zero, to_infinity };
enum class Linearity { linear, bilinear };

/// Weighted level-set measures W(l) = weight(n, l) * |E_l| along a
/// geometric l sequence. For bilinear scans E_l = {M2 > l^2}.
struct LimitScan {
    int n = 1;
    Direction direction = Direction::to_zero;
    Linearity linearity = Linearity::linear;
    Method method = Method::grid;
    PhiConvention convention = PhiConvention::classical;
    std::vector<double> lambdas;
    std::vector<double> measures;
    std::vector<double> weighted;
    double target = 0.0;
};

/// Throws std::invalid_argument for an empty or non-monotone l sequence or a
/// dimension mismatch with the source.
[[nodiscard]] LimitScan limit_scan(const DistributionSource& source, int n, std::span<const double> lambdas,
                                   Direction direction, Linearity linearity = Linearity::linear,
                                   PhiConvention convention = PhiConvention::classical);

/// Geometric sequence from lo to hi (both included) with the given density.
[[nodiscard]] std::vector<double> geometric_grid(double lo, double hi, int points_per_decade);

struct Extrapolation {
    double constant = 0.0;
    double residual = 0.0;  // RMS misfit of the quadratic model
    std::vector<double> fit;  // C0, C1, C2
};

/// Least-squares fit W = C0 + C1 u + C2 u^2 with u = 1 / log(1/l); returns C0.
/// Needs at least four points with l < 1 on a to_zero scan.
[[nodiscard]] Extrapolation extrapolate_constant(const LimitScan& scan);

/// 2^n / (n-1)!
[[nodiscard]] double uncentered_limit_factor(int n);
/// 1 / (n-1)!
[[nodiscard]] double centered_limit_factor(int n);

}  // namespace strongmax
