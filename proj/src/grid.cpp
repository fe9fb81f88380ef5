#include "dsinpaint/grid.hpp"

#include "dsinpaint/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dsinpaint {

namespace {

void check_dimensions(int width, int height, double h)
{
    if (width < 1 || height < 1)
        throw PreconditionError("image dimensions must be at least 1x1, got " +
                                std::to_string(width) + "x" + std::to_string(height));
    if (!(h > 0.0) || !std::isfinite(h))
        throw PreconditionError("grid spacing h must be positive");
}

} // namespace

ImageGrid::ImageGrid(int width, int height, double h, double fill)
    : width_(width), height_(height), h_(h)
{
    check_dimensions(width, height, h);
    values_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

ImageGrid::ImageGrid(int width, int height, std::vector<double> values, double h)
    : width_(width), height_(height), h_(h), values_(std::move(values))
{
    check_dimensions(width, height, h);
    if (values_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw PreconditionError("value count does not match image dimensions");
}

double ImageGrid::min_value() const
{
    return *std::min_element(values_.begin(), values_.end());
}

double ImageGrid::max_value() const
{
    return *std::max_element(values_.begin(), values_.end());
}

MaskGrid::MaskGrid(int width, int height, bool known) : width_(width), height_(height)
{
    if (width < 1 || height < 1)
        throw PreconditionError("mask dimensions must be at least 1x1");
    known_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                  known ? 1 : 0);
}

std::size_t MaskGrid::count_known() const noexcept
{
    return static_cast<std::size_t>(std::count(known_.begin(), known_.end(), std::uint8_t{1}));
}

ImageGrid mirror_extend(const ImageGrid& img, int layers)
{
    if (layers < 1)
        throw PreconditionError("mirror_extend needs at least one layer");
    const int w = img.width();
    const int h = img.height();
    ImageGrid out(w + 2 * layers, h + 2 * layers, img.spacing());
    for (int y = 0; y < out.height(); ++y) {
        const double* src = img.row(reflect_index(y - layers, h));
        double* dst = out.row(y);
        for (int x = 0; x < out.width(); ++x)
            dst[x] = src[reflect_index(x - layers, w)];
    }
    return out;
}

ImageGrid crop(const ImageGrid& img, int layers)
{
    ImageGrid out(img.width() - 2 * layers, img.height() - 2 * layers, img.spacing());
    for (int y = 0; y < out.height(); ++y)
        std::copy_n(img.row(y + layers) + layers, out.width(), out.row(y));
    return out;
}

std::optional<Pixel> find_nonfinite(const ImageGrid& img)
{
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            if (!std::isfinite(img(x, y)))
                return Pixel{x, y};
    return std::nullopt;
}

void assert_finite(const ImageGrid& img)
{
    if (const auto bad = find_nonfinite(img))
        throw PreconditionError("non-finite value at pixel (" + std::to_string(bad->x) + ", " +
                                std::to_string(bad->y) + ")");
}

ImageGrid flip_horizontal(const ImageGrid& img)
{
    ImageGrid out(img.width(), img.height(), img.spacing());
    for (int y = 0; y < img.height(); ++y)
        std::reverse_copy(img.row(y), img.row(y) + img.width(), out.row(y));
    return out;
}

ImageGrid flip_vertical(const ImageGrid& img)
{
    ImageGrid out(img.width(), img.height(), img.spacing());
    for (int y = 0; y < img.height(); ++y)
        std::copy_n(img.row(img.height() - 1 - y), img.width(), out.row(y));
    return out;
}

MaskGrid flip_horizontal(const MaskGrid& mask)
{
    MaskGrid out(mask.width(), mask.height());
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x)
            out.set(x, y, mask.known(mask.width() - 1 - x, y));
    return out;
}

MaskGrid flip_vertical(const MaskGrid& mask)
{
    MaskGrid out(mask.width(), mask.height());
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x)
            out.set(x, y, mask.known(x, mask.height() - 1 - y));
    return out;
}

} // namespace dsinpaint
