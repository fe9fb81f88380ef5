#include "dsinpaint/ds_solver.hpp"

#include "dsinpaint/differential_ops.hpp"
#include "dsinpaint/error.hpp"
#include "dsinpaint/smoothing.hpp"
#include "stencil.hpp"

#include <cmath>
#include <random>
#include <string>

namespace dsinpaint {

namespace {

void check_problem(const ImageGrid& f, const MaskGrid& mask)
{
    if (!mask.matches(f))
        throw PreconditionError("mask is " + std::to_string(mask.width()) + "x" +
                                std::to_string(mask.height()) + " but image is " +
                                std::to_string(f.width()) + "x" + std::to_string(f.height()));
    if (f.width() < 2 || f.height() < 2)
        throw PreconditionError("inpainting needs an image of at least 2x2 pixels");
    if (mask.count_known() == 0)
        throw PreconditionError("inpainting mask has no known pixels");
    assert_finite(f);
}

template <typename Step>
EvolutionResult evolve(const ImageGrid& f, const MaskGrid& mask, const SolverParams& p,
                       const IterateObserver& observer, Step step)
{
    EvolutionResult result{f};
    for (int k = 1; k <= p.max_iter; ++k) {
        ImageGrid next = step(result.u);
        double update = 0.0;
        for (std::size_t i = 0; i < next.size(); ++i)
            if (!mask.known(i))
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

} // namespace

double resolve_tau(const SolverParams& p, double h)
{
    if (!(p.sigma >= 0.0) || !(p.rho >= 0.0) || !(p.nu >= 0.0))
        throw PreconditionError("Gaussian scales sigma, rho, nu must be non-negative");
    if (!(p.lambda > 0.0))
        throw PreconditionError("contrast parameter lambda must be positive");
    if (!(p.tol > 0.0))
        throw PreconditionError("stopping tolerance must be positive");
    if (p.max_iter < 1)
        throw PreconditionError("max_iter must be at least 1");
    const double limit = stability_bounds(p.delta, h).combined();
    const double tau = p.tau.value_or(limit);
    if (!(tau > 0.0) || tau > limit)
        throw PreconditionError("time step tau = " + std::to_string(tau) +
                                " outside (0, min(tau_d, tau_m) = " + std::to_string(limit) +
                                "]");
    return tau;
}

ImageGrid weight_field(const ImageGrid& u, double nu, double lambda)
{
    if (!(lambda > 0.0))
        throw PreconditionError("contrast parameter lambda must be positive");
    const GradientField g = sobel_gradient(convolve_gaussian(u, nu));
    ImageGrid out(u.width(), u.height(), u.spacing());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double gx = g.gx.values()[i];
        const double gy = g.gy.values()[i];
        out.values()[i] = charbonnier_weight(gx * gx + gy * gy, lambda);
    }
    return out;
}

ImageGrid ds_update(const ImageGrid& u, const ImageGrid& f, const MaskGrid& mask,
                    const ImageGrid& weight, const SignField& sign, double delta, double tau)
{
    check_delta(delta);
    const detail::Padded p(u);
    const double h = u.spacing();
    ImageGrid out(u.width(), u.height(), h);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < u.height(); ++y) {
        for (int x = 0; x < u.width(); ++x) {
            const std::size_t i = u.index(x, y);
            if (mask.known(i)) {
                out.values()[i] = f.values()[i];
                continue;
            }
            const auto n = detail::neighbours(p, x, y);
            const double g = weight.values()[i];
            const int sg = sign[i];
            double morph = 0.0;
            if (sg < 0)
                morph = detail::dilation_norm(n, delta, h);
            else if (sg > 0)
                morph = detail::erosion_norm(n, delta, h);
            out.values()[i] = n.c + tau * (g * detail::laplacian(n, delta, h) + (1.0 - g) * morph);
        }
    }
    return out;
}

ImageGrid ds_step(const ImageGrid& u, const ImageGrid& f, const MaskGrid& mask,
                  const SolverParams& p)
{
    const double tau = resolve_tau(p, u.spacing());
    if (!u.same_shape(f))
        throw PreconditionError("evolving image and data image differ in size");
    check_problem(f, mask);

    const ImageGrid weight = weight_field(u, p.nu, p.lambda);
    const SignField sign = shock_sign_field(u, p.sigma, p.rho);
    return ds_update(u, f, mask, weight, sign, p.delta, tau);
}

EvolutionResult ds_inpaint(const ImageGrid& f, const MaskGrid& mask, const SolverParams& p,
                           const IterateObserver& observer)
{
    const double tau = resolve_tau(p, f.spacing());
    check_problem(f, mask);
    return evolve(f, mask, p, observer, [&](const ImageGrid& u) {
        const ImageGrid weight = weight_field(u, p.nu, p.lambda);
        const SignField sign = shock_sign_field(u, p.sigma, p.rho);
        return ds_update(u, f, mask, weight, sign, p.delta, tau);
    });
}

EvolutionResult homogeneous_diffusion_inpaint(const ImageGrid& f, const MaskGrid& mask,
                                              const SolverParams& p,
                                              const IterateObserver& observer)
{
    const double tau = resolve_tau(p, f.spacing());
    check_problem(f, mask);
    const double h = f.spacing();
    return evolve(f, mask, p, observer, [&](const ImageGrid& u) {
        const detail::Padded pad(u);
        ImageGrid out(u.width(), u.height(), h);
#pragma omp parallel for schedule(static)
        for (int y = 0; y < u.height(); ++y) {
            for (int x = 0; x < u.width(); ++x) {
                const std::size_t i = u.index(x, y);
                if (mask.known(i)) {
                    out.values()[i] = f.values()[i];
                    continue;
                }
                const auto n = detail::neighbours(pad, x, y);
                out.values()[i] = n.c + tau * detail::laplacian(n, p.delta, h);
            }
        }
        return out;
    });
}

std::optional<InitMode> parse_init_mode(std::string_view name)
{
    if (name == "keep")
        return InitMode::keep;
    if (name == "zero")
        return InitMode::zero;
    if (name == "mean")
        return InitMode::mean;
    if (name == "random")
        return InitMode::random;
    return std::nullopt;
}

std::string_view to_string(InitMode mode)
{
    switch (mode) {
    case InitMode::keep: return "keep";
    case InitMode::zero: return "zero";
    case InitMode::mean: return "mean";
    case InitMode::random: return "random";
    }
    return "keep";
}

ImageGrid initialise(const ImageGrid& f, const MaskGrid& mask, InitMode mode, std::uint64_t seed)
{
    if (!mask.matches(f))
        throw PreconditionError("mask does not match image dimensions");
    ImageGrid u = f;
    if (mode == InitMode::keep)
        return u;

    double fill = 0.0;
    if (mode == InitMode::mean) {
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < f.size(); ++i)
            if (mask.known(i)) {
                sum += f.values()[i];
                ++count;
            }
        if (count == 0)
            throw PreconditionError("mean initialisation needs at least one known pixel");
        fill = sum / static_cast<double>(count);
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> grey(0.0, 255.0);
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (mask.known(i))
            continue;
        u.values()[i] = mode == InitMode::random ? grey(rng) : fill;
    }
    return u;
}

} // namespace dsinpaint
