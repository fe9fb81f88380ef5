#pragma once

#include "dsinpaint/grid.hpp"
#include "dsinpaint/morphology.hpp"
#include "dsinpaint/shock_filter.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace dsinpaint {

/// Parameters of diffusion-shock inpainting. The defaults are the bar
/// experiment's values; tau defaults to min(tau_d, tau_m).
struct SolverParams {
    double sigma = 2.0;   ///< presmoothing for the shock guidance d_ww u_sigma
    double rho = 5.0;     ///< structure tensor integration scale
    double nu = 3.0;      ///< presmoothing for the weight g(|grad u_nu|^2)
    double lambda = 3.0;  ///< Charbonnier contrast parameter
    double delta = kDefaultDelta;
    std::optional<double> tau;
    int max_iter = 50000;
    double tol = 1e-3;    ///< max-norm update over the inpainting domain
};

/// Validates p against grid spacing h and returns the time step to use.
double resolve_tau(const SolverParams& p, double h);

/// g(s^2) = 1 / sqrt(1 + s^2 / lambda^2).
inline double charbonnier_weight(double s2, double lambda) noexcept
{
    return 1.0 / std::sqrt(1.0 + s2 / (lambda * lambda));
}

/// g(|grad u_nu|^2) per pixel, gradient by the normalised Sobel operator.
ImageGrid weight_field(const ImageGrid& u, double nu, double lambda);

/// Explicit update on the inpainting domain from precomputed fields:
///   u + tau * (g * Laplacian(u) + (1 - g) * M(u)),
/// where M is the upwind dilation term where sign = -1, the erosion term where
/// sign = +1 and 0 elsewhere. Known pixels are reset to f.
ImageGrid ds_update(const ImageGrid& u, const ImageGrid& f, const MaskGrid& mask,
                    const ImageGrid& weight, const SignField& sign, double delta, double tau);

/// One explicit diffusion-shock step; every term is evaluated at u.
ImageGrid ds_step(const ImageGrid& u, const ImageGrid& f, const MaskGrid& mask,
                  const SolverParams& p);

/// Steady state of diffusion-shock inpainting starting from u^0 = f.
EvolutionResult ds_inpaint(const ImageGrid& f, const MaskGrid& mask, const SolverParams& p,
                           const IterateObserver& observer = {});

/// Homogeneous diffusion inpainting (0 = Laplacian u on the unknown pixels)
/// with the same stencil, time step and stopping rule.
EvolutionResult homogeneous_diffusion_inpaint(const ImageGrid& f, const MaskGrid& mask,
                                              const SolverParams& p,
                                              const IterateObserver& observer = {});

/// How unknown pixels are filled before the evolution starts.
enum class InitMode { keep, zero, mean, random };

std::optional<InitMode> parse_init_mode(std::string_view name);
std::string_view to_string(InitMode mode);

/// keep: values of f; zero: 0; mean: mean of the known values;
/// random: uniform in [0, 255] from the seed. Known pixels always keep f.
ImageGrid initialise(const ImageGrid& f, const MaskGrid& mask, InitMode mode,
                     std::uint64_t seed = 0);

} // namespace dsinpaint
