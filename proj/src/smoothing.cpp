#include "dsinpaint/smoothing.hpp"

#include "dsinpaint/error.hpp"

#include <cmath>

namespace dsinpaint {

GaussianKernel build_kernel(double sigma, double h)
{
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        throw PreconditionError("Gaussian standard deviation must be non-negative");
    if (!(h > 0.0))
        throw PreconditionError("grid spacing h must be positive");

    GaussianKernel k;
    k.sigma = sigma;
    if (sigma == 0.0)
        return k;

    k.radius = static_cast<int>(std::ceil(5.0 * sigma / h));
    k.weights.assign(2 * static_cast<std::size_t>(k.radius) + 1, 0.0);

    // Fill one half and mirror so the kernel is exactly symmetric.
    const double denom = 2.0 * sigma * sigma;
    for (int i = 0; i <= k.radius; ++i) {
        const double x = i * h;
        const double w = std::exp(-x * x / denom);
        k.weights[k.radius + i] = w;
        k.weights[k.radius - i] = w;
    }
    double sum = k.weights[k.radius];
    for (int i = 1; i <= k.radius; ++i)
        sum += 2.0 * k.weights[k.radius + i];
    for (double& w : k.weights)
        w /= sum;
    return k;
}

ImageGrid convolve(const ImageGrid& img, const GaussianKernel& kernel)
{
    if (kernel.radius == 0)
        return img;

    const int w = img.width();
    const int h = img.height();
    const int r = kernel.radius;
    const double* half = kernel.weights.data() + r;

    // Pairing w_k * (a[-k] + a[+k]) keeps the sum bit-identical under flips.
    ImageGrid tmp(w, h, img.spacing());
#pragma omp parallel
    {
        std::vector<double> line(static_cast<std::size_t>(w + 2 * r));
#pragma omp for schedule(static)
        for (int y = 0; y < h; ++y) {
            const double* src = img.row(y);
            for (int x = -r; x < w + r; ++x)
                line[x + r] = src[reflect_index(x, w)];
            double* dst = tmp.row(y);
            const double* c = line.data() + r;
            for (int x = 0; x < w; ++x)
                dst[x] = half[0] * c[x];
            for (int k = 1; k <= r; ++k) {
                const double wk = half[k];
                for (int x = 0; x < w; ++x)
                    dst[x] += wk * (c[x - k] + c[x + k]);
            }
        }
    }

    ImageGrid out(w, h, img.spacing());
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        double* dst = out.row(y);
        const double* centre = tmp.row(y);
        for (int x = 0; x < w; ++x)
            dst[x] = half[0] * centre[x];
        for (int k = 1; k <= r; ++k) {
            const double* above = tmp.row(reflect_index(y - k, h));
            const double* below = tmp.row(reflect_index(y + k, h));
            const double wk = half[k];
            for (int x = 0; x < w; ++x)
                dst[x] += wk * (above[x] + below[x]);
        }
    }
    return out;
}

ImageGrid convolve_gaussian(const ImageGrid& img, double sigma)
{
    return convolve(img, build_kernel(sigma, img.spacing()));
}

} // namespace dsinpaint
