#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "strongmax/distribution.hpp"

namespace strongmax {

double certificate_target(int n, Variant variant) {
    if (variant == Variant::centered) return 1.0;
    return std::max(uncentered_limit_factor(n), 1.0);
}

nlohmann::json Certificate::to_json() const {
    return nlohmann::json{
        {"n", n},
        {"variant", std::string(to_string(variant))},
        {"descriptor", descriptor},
        {"method", std::string(to_string(method))},
        {"achieved", achieved},
        {"target", target},
        {"argmax_lambda", argmax_lambda},
        {"weak_norm", weak_norm},
        {"phi_norm", phi_norm},
        {"meets_target", meets_target},
    };
}

Certificate lower_bound_certificate(const FunctionDescriptor& descriptor, int n, Variant variant,
                                    std::span<const double> lambdas, const CertificateOptions& options) {
    if (descriptor.height > 1.0) {
        throw std::invalid_argument("certificate: height " + std::to_string(descriptor.height) +
                                    " exceeds 1, so the Phi_n norm differs from the L1 norm");
    }
    if (n != descriptor.dim) {
        throw std::invalid_argument("certificate: n = " + std::to_string(n) + " but the descriptor has dim " +
                                    std::to_string(descriptor.dim));
    }
    const Method method =
        options.method.value_or(descriptor.is_product_indicator() ? Method::separable : Method::grid);

    Certificate cert;
    cert.n = n;
    cert.variant = variant;
    cert.descriptor = descriptor.to_json();
    cert.method = method;
    cert.target = certificate_target(n, variant);

    std::optional<DistributionCurve> curve;
    switch (method) {
        case Method::separable: {
            if (!descriptor.is_product_indicator()) {
                throw std::invalid_argument("certificate: the separable method needs a cube indicator");
            }
            std::vector<Profile1D> profiles(static_cast<std::size_t>(n),
                                            Profile1D(descriptor.half_width, 1.0, variant));
            profiles.front().height = descriptor.height;
            curve = distribution_from_source(SeparableSource(std::move(profiles)), lambdas, variant);
            cert.phi_norm = *descriptor.analytic_mass();
            break;
        }
        case Method::grid: {
            const double box = options.box_half_width > 0.0
                                   ? options.box_half_width
                                   : 4.0 * descriptor.support_half_width().value_or(1.0);
            const GridFunction f = build_grid_function(descriptor, centered_sampling(n, box, options.cells));
            curve = distribution_grid(strong_maximal_grid(f, variant), lambdas, variant);
            cert.phi_norm = phi_norm(f, n, options.convention);
            break;
        }
        case Method::hybrid: {
            if (variant != Variant::uncentered || !descriptor.is_product_indicator()) {
                throw std::invalid_argument("certificate: the hybrid method needs an uncentered cube indicator");
            }
            const double r = descriptor.half_width;
            const auto cfg = FarFieldConfig::make(n, r, descriptor.height, descriptor.height,
                                                  *descriptor.analytic_mass());
            const GridFunction f = build_grid_function(descriptor, centered_sampling(n, cfg.radius, options.cells));
            curve = distribution_hybrid(f, cfg, lambdas);
            cert.phi_norm = phi_norm(f, n, options.convention);
            break;
        }
        case Method::analytic:
            throw std::invalid_argument("certificate: the analytic tail alone is not a level-set measure of M f");
    }

    const WeakNorm weak = weak_phi_norm(*curve, options.convention);
    cert.weak_norm = weak.value;
    cert.argmax_lambda = weak.argmax_lambda;
    cert.achieved = cert.phi_norm > 0.0 ? weak.value / cert.phi_norm : 0.0;
    cert.meets_target = cert.achieved >= 0.95 * cert.target;
    return cert;
}

}  // namespace strongmax
