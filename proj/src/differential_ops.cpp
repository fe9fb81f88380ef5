#include "dsinpaint/differential_ops.hpp"

#include "dsinpaint/error.hpp"
#include "stencil.hpp"

#include <cmath>
#include <string>

namespace dsinpaint {

void check_delta(double delta)
{
    if (!(delta >= 0.0 && delta <= 1.0))
        throw PreconditionError("stencil weight delta must lie in [0, 1], got " +
                                std::to_string(delta));
}

GradientField sobel_gradient(const ImageGrid& img)
{
    const int w = img.width();
    const int h = img.height();
    if (w < 2 || h < 2)
        throw PreconditionError("Sobel gradient needs an image of at least 2x2 pixels");

    GradientField g{ImageGrid(w, h, img.spacing()), ImageGrid(w, h, img.spacing())};
    const double scale = 1.0 / (8.0 * img.spacing());

#pragma omp parallel for schedule(static)
    for (int y = 1; y < h - 1; ++y) {
        const double* up = img.row(y - 1);
        const double* mid = img.row(y);
        const double* down = img.row(y + 1);
        double* gx = g.gx.row(y);
        double* gy = g.gy.row(y);
        for (int x = 1; x < w - 1; ++x) {
            gx[x] = (((up[x + 1] - up[x - 1]) + (down[x + 1] - down[x - 1])) +
                     2.0 * (mid[x + 1] - mid[x - 1])) * scale;
            gy[x] = (((down[x - 1] - up[x - 1]) + (down[x + 1] - up[x + 1])) +
                     2.0 * (down[x] - up[x])) * scale;
        }
    }
    return g;
}

ImageGrid laplacian_delta(const ImageGrid& img, double delta)
{
    check_delta(delta);
    const detail::Padded p(img);
    ImageGrid out(img.width(), img.height(), img.spacing());
    const double h = img.spacing();
#pragma omp parallel for schedule(static)
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            out(x, y) = detail::laplacian(detail::neighbours(p, x, y), delta, h);
    return out;
}

ImageGrid directional_second_derivative(const ImageGrid& img, const DirectionField& direction)
{
    if (!direction.c.same_shape(img) || !direction.s.same_shape(img))
        throw PreconditionError("direction field does not match image dimensions");
    for (std::size_t i = 0; i < img.size(); ++i) {
        const double c = direction.c.values()[i];
        const double s = direction.s.values()[i];
        if (!(std::abs(c * c + s * s - 1.0) <= 1e-8))
            throw PreconditionError("direction field contains a non-unit vector at index " +
                                    std::to_string(i));
    }

    const detail::Padded p(img);
    ImageGrid out(img.width(), img.height(), img.spacing());
    const double h = img.spacing();
#pragma omp parallel for schedule(static)
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            const auto n = detail::neighbours(p, x, y);
            const double c = direction.c(x, y);
            const double s = direction.s(x, y);
            out(x, y) = c * c * detail::dxx(n, h) + 2.0 * c * s * detail::dxy(n, h) +
                        s * s * detail::dyy(n, h);
        }
    }
    return out;
}

} // namespace dsinpaint
