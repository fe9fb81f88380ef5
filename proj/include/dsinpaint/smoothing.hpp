#pragma once

#include "dsinpaint/grid.hpp"

#include <vector>

namespace dsinpaint {

/// Sampled Gaussian, truncated at five standard deviations and renormalised
/// to unit sum. weights.size() == 2 * radius + 1, centre at index radius.
struct GaussianKernel {
    double sigma = 0.0;
    int radius = 0;
    std::vector<double> weights{1.0};
};

GaussianKernel build_kernel(double sigma, double h = 1.0);

/// Separable convolution (rows, then columns) with reflecting boundaries.
ImageGrid convolve(const ImageGrid& img, const GaussianKernel& kernel);

/// K_sigma * img, using the image's own grid spacing. sigma = 0 copies.
ImageGrid convolve_gaussian(const ImageGrid& img, double sigma);

} // namespace dsinpaint
