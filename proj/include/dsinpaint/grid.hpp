#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace dsinpaint {

/// Rectangular grid of scalar grey values, stored row-major.
///
/// Pixel (x, y) sits at column x and row y; x grows to the right, y grows
/// downwards. The grid spacing h is the same in both directions. Grey values
/// use the working range [0, 255] but any finite double is representable, so
/// the same type also carries derived scalar fields (derivatives, weights).
class ImageGrid {
public:
    ImageGrid() = default;
    ImageGrid(int width, int height, double h = 1.0, double fill = 0.0);
    ImageGrid(int width, int height, std::vector<double> values, double h = 1.0);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    double spacing() const noexcept { return h_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

    double& operator()(int x, int y) noexcept { return values_[index(x, y)]; }
    double operator()(int x, int y) const noexcept { return values_[index(x, y)]; }

    std::size_t index(int x, int y) const noexcept
    {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    std::span<double> values() & noexcept { return values_; }
    std::span<const double> values() const& noexcept { return values_; }
    // Temporaries hand over their storage instead of a dangling view.
    std::vector<double> values() && noexcept { return std::move(values_); }
    double* row(int y) noexcept { return values_.data() + index(0, y); }
    const double* row(int y) const noexcept { return values_.data() + index(0, y); }

    bool same_shape(const ImageGrid& other) const noexcept
    {
        return width_ == other.width_ && height_ == other.height_;
    }

    double min_value() const;
    double max_value() const;

    friend bool operator==(const ImageGrid&, const ImageGrid&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    double h_ = 1.0;
    std::vector<double> values_;
};

/// Per-pixel "known" indicator. Known pixels form the Dirichlet set K; the rest
/// is the inpainting domain.
class MaskGrid {
public:
    MaskGrid() = default;
    MaskGrid(int width, int height, bool known = false);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return known_.size(); }

    bool known(int x, int y) const noexcept { return known_[index(x, y)] != 0; }
    bool known(std::size_t i) const noexcept { return known_[i] != 0; }
    void set(int x, int y, bool known) noexcept { known_[index(x, y)] = known ? 1 : 0; }
    void set(std::size_t i, bool known) noexcept { known_[i] = known ? 1 : 0; }

    std::size_t index(int x, int y) const noexcept
    {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    std::size_t count_known() const noexcept;
    bool matches(const ImageGrid& img) const noexcept
    {
        return width_ == img.width() && height_ == img.height();
    }

    friend bool operator==(const MaskGrid&, const MaskGrid&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> known_;
};

struct Pixel {
    int x = 0;
    int y = 0;
    friend bool operator==(const Pixel&, const Pixel&) = default;
};

/// Whole-sample reflection of an index into [0, n): -1 -> 0, -2 -> 1, n -> n-1.
/// Indices further out keep reflecting (period 2n).
inline int reflect_index(int i, int n) noexcept
{
    if (i >= 0 && i < n)
        return i;
    const int period = 2 * n;
    int m = i % period;
    if (m < 0)
        m += period;
    return m < n ? m : period - 1 - m;
}

/// Grid enlarged by `layers` mirrored dummy pixels on every side.
ImageGrid mirror_extend(const ImageGrid& img, int layers);

/// Interior of a grid produced by mirror_extend.
ImageGrid crop(const ImageGrid& img, int layers);

/// First pixel (row-major order) holding NaN or Inf.
std::optional<Pixel> find_nonfinite(const ImageGrid& img);

/// Throws PreconditionError naming the first non-finite pixel.
void assert_finite(const ImageGrid& img);

ImageGrid flip_horizontal(const ImageGrid& img);
ImageGrid flip_vertical(const ImageGrid& img);
MaskGrid flip_horizontal(const MaskGrid& mask);
MaskGrid flip_vertical(const MaskGrid& mask);

} // namespace dsinpaint
