#include "dsinpaint/shock_filter.hpp"

#include "dsinpaint/differential_ops.hpp"
#include "dsinpaint/error.hpp"
#include "dsinpaint/smoothing.hpp"
#include "dsinpaint/structure_tensor.hpp"
#include "stencil.hpp"

#include <cmath>
#include <string>

namespace dsinpaint {

SignField shock_sign_field_from_smoothed(const ImageGrid& u_sigma, double rho)
{
    const DirectionField w = dominant_direction(structure_tensor_from_smoothed(u_sigma, rho));
    const ImageGrid d2 = directional_second_derivative(u_sigma, w);
    const double band = sign_zero_band(u_sigma.spacing());

    SignField sign(u_sigma.width(), u_sigma.height());
    for (std::size_t i = 0; i < d2.size(); ++i) {
        const double v = d2.values()[i];
        sign.set(i, std::abs(v) < band ? 0 : (v > 0.0 ? 1 : -1));
    }
    return sign;
}

SignField shock_sign_field(const ImageGrid& u, double sigma, double rho)
{
    if (!(sigma >= 0.0) || !(rho >= 0.0))
        throw PreconditionError("shock filter scales must be non-negative");
    return shock_sign_field_from_smoothed(convolve_gaussian(u, sigma), rho);
}

ImageGrid apply_shock_update(const ImageGrid& u, const SignField& sign, double delta, double tau)
{
    check_delta(delta);
    const detail::Padded p(u);
    const double h = u.spacing();
    ImageGrid out = u;
#pragma omp parallel for schedule(static)
    for (int y = 0; y < u.height(); ++y) {
        for (int x = 0; x < u.width(); ++x) {
            const int sg = sign(x, y);
            if (sg == 0)
                continue;
            const auto n = detail::neighbours(p, x, y);
            const double morph =
                sg < 0 ? detail::dilation_norm(n, delta, h) : detail::erosion_norm(n, delta, h);
            out(x, y) = n.c + tau * morph;
        }
    }
    return out;
}

double resolve_tau(const ShockParams& p, double h)
{
    const double limit = stability_bounds(p.delta, h).tau_m;
    const double tau = p.tau.value_or(limit);
    if (!(tau > 0.0) || tau > limit)
        throw PreconditionError("time step tau = " + std::to_string(tau) +
                                " outside (0, tau_m = " + std::to_string(limit) + "]");
    return tau;
}

ImageGrid shock_step(const ImageGrid& u, const ShockParams& p)
{
    const double tau = resolve_tau(p, u.spacing());
    return apply_shock_update(u, shock_sign_field(u, p.sigma, p.rho), p.delta, tau);
}

EvolutionResult shock_filter_evolve(const ImageGrid& f, const ShockParams& p,
                                    const IterateObserver& observer)
{
    resolve_tau(p, f.spacing());
    if (!(p.tol > 0.0))
        throw PreconditionError("stopping tolerance must be positive");
    if (p.max_iter < 1)
        throw PreconditionError("max_iter must be at least 1");
    assert_finite(f);

    EvolutionResult result{f};
    for (int k = 1; k <= p.max_iter; ++k) {
        ImageGrid next = shock_step(result.u, p);
        double update = 0.0;
        for (std::size_t i = 0; i < next.size(); ++i)
            update = std::max(update, std::abs(next.values()[i] - result.u.values()[i]));
        result.u = std::move(next);
        result.iterations = k;
        result.last_update = update;
        if (observer)
            observer(k, result.u);
        if (update < p.tol) {
            result.converged = true;
            break;
        }
    }
    return result;
}

} // namespace dsinpaint
