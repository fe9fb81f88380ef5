#pragma once

#include "dsinpaint/grid.hpp"

#include <cmath>

namespace dsinpaint {

/// sqrt(2) - 1, the axial/diagonal weight with the best rotation invariance.
inline const double kDefaultDelta = std::sqrt(2.0) - 1.0;

/// Largest explicit time steps that keep the max-min principle:
/// tau_d = h^2 / (4 - 2 delta) for diffusion, tau_m = h / (sqrt(2)(1 - delta) + delta)
/// for dilation/erosion.
struct StabilityBounds {
    double tau_d = 0.0;
    double tau_m = 0.0;

    double combined() const noexcept { return tau_d < tau_m ? tau_d : tau_m; }
};

StabilityBounds stability_bounds(double delta, double h = 1.0);

/// Upwind |grad u| for the dilation u_t = |grad u|; non-negative.
ImageGrid dilation_gradient_norm(const ImageGrid& img, double delta);

/// Upwind -|grad u| for the erosion u_t = -|grad u|; non-positive.
ImageGrid erosion_gradient_norm(const ImageGrid& img, double delta);

} // namespace dsinpaint
