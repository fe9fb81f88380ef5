#pragma once

#include "dsinpaint/grid.hpp"

namespace dsinpaint {

struct GradientField {
    ImageGrid gx;
    ImageGrid gy;
};

/// Per-pixel unit vectors w = (c, s).
struct DirectionField {
    ImageGrid c;
    ImageGrid s;
};

/// Sobel derivatives normalised by 1/(8h), so a unit ramp has slope exactly 1.
/// The outermost pixel layer is set to zero. Needs width, height >= 2.
GradientField sobel_gradient(const ImageGrid& img);

/// Weighted axial/diagonal Laplacian,
///   (1-delta)/h^2 * (axial 5-point) + delta/(2h^2) * (diagonal 5-point),
/// with mirrored dummy pixels outside the domain. delta in [0, 1].
ImageGrid laplacian_delta(const ImageGrid& img, double delta);

/// c^2 u_xx + 2cs u_xy + s^2 u_yy with standard central differences.
/// Directions must have unit length to within 1e-8.
ImageGrid directional_second_derivative(const ImageGrid& img, const DirectionField& direction);

void check_delta(double delta);

} // namespace dsinpaint
