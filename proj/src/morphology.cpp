#include "dsinpaint/morphology.hpp"

#include "dsinpaint/differential_ops.hpp"
#include "dsinpaint/error.hpp"
#include "stencil.hpp"

namespace dsinpaint {

StabilityBounds stability_bounds(double delta, double h)
{
    check_delta(delta);
    if (!(h > 0.0))
        throw PreconditionError("grid spacing h must be positive");
    return {h * h / (4.0 - 2.0 * delta), h / (std::sqrt(2.0) * (1.0 - delta) + delta)};
}

namespace {

template <typename Stencil>
ImageGrid apply(const ImageGrid& img, double delta, Stencil stencil)
{
    check_delta(delta);
    const detail::Padded p(img);
    ImageGrid out(img.width(), img.height(), img.spacing());
    const double h = img.spacing();
#pragma omp parallel for schedule(static)
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            out(x, y) = stencil(detail::neighbours(p, x, y), delta, h);
    return out;
}

} // namespace

ImageGrid dilation_gradient_norm(const ImageGrid& img, double delta)
{
    return apply(img, delta, detail::dilation_norm);
}

ImageGrid erosion_gradient_norm(const ImageGrid& img, double delta)
{
    return apply(img, delta, detail::erosion_norm);
}

} // namespace dsinpaint
