#pragma once

// Per-pixel 3x3 stencils shared by the explicit schemes. Every sum pairs
// mirror-image neighbours first, so results are bit-identical under
// horizontal and vertical flips of the input.

#include "dsinpaint/grid.hpp"

#include <algorithm>
#include <cmath>

namespace dsinpaint::detail {

/// Image with one layer of mirrored dummy pixels; at(x, y) accepts x in [-1, w].
class Padded {
public:
    explicit Padded(const ImageGrid& img) : ext_(mirror_extend(img, 1)) {}

    double at(int x, int y) const noexcept { return ext_(x + 1, y + 1); }

private:
    ImageGrid ext_;
};

/// 3x3 neighbourhood; xm/xp = x-1/x+1, ym/yp = y-1/y+1.
struct Neighbours {
    double c;
    double xp, xm, yp, ym;
    double xpyp, xmym, xmyp, xpym;
};

inline Neighbours neighbours(const Padded& p, int x, int y) noexcept
{
    return {p.at(x, y),
            p.at(x + 1, y), p.at(x - 1, y), p.at(x, y + 1), p.at(x, y - 1),
            p.at(x + 1, y + 1), p.at(x - 1, y - 1), p.at(x - 1, y + 1), p.at(x + 1, y - 1)};
}

inline double laplacian(const Neighbours& n, double delta, double h) noexcept
{
    const double axial = (n.xp + n.xm) + (n.yp + n.ym) - 4.0 * n.c;
    const double diagonal = (n.xpyp + n.xmym) + (n.xmyp + n.xpym) - 4.0 * n.c;
    return (1.0 - delta) / (h * h) * axial + delta / (2.0 * h * h) * diagonal;
}

inline double sq(double v) noexcept { return v * v; }

/// Weighted axial/diagonal Rouy-Tourin upwind |grad u| for dilation (>= 0).
inline double dilation_norm(const Neighbours& n, double delta, double h) noexcept
{
    const double ax = std::max({n.xp - n.c, n.xm - n.c, 0.0});
    const double ay = std::max({n.yp - n.c, n.ym - n.c, 0.0});
    const double d1 = std::max({n.xpyp - n.c, n.xmym - n.c, 0.0});
    const double d2 = std::max({n.xmyp - n.c, n.xpym - n.c, 0.0});
    return (1.0 - delta) / h * std::sqrt(sq(ax) + sq(ay)) +
           delta / (std::sqrt(2.0) * h) * std::sqrt(sq(d1) + sq(d2));
}

/// Erosion counterpart, returns -|grad u| (<= 0).
inline double erosion_norm(const Neighbours& n, double delta, double h) noexcept
{
    const double ax = std::max({n.c - n.xp, n.c - n.xm, 0.0});
    const double ay = std::max({n.c - n.yp, n.c - n.ym, 0.0});
    const double d1 = std::max({n.c - n.xpyp, n.c - n.xmym, 0.0});
    const double d2 = std::max({n.c - n.xmyp, n.c - n.xpym, 0.0});
    return -((1.0 - delta) / h * std::sqrt(sq(ax) + sq(ay))) -
           delta / (std::sqrt(2.0) * h) * std::sqrt(sq(d1) + sq(d2));
}

inline double dxx(const Neighbours& n, double h) noexcept
{
    return ((n.xp + n.xm) - 2.0 * n.c) / (h * h);
}

inline double dyy(const Neighbours& n, double h) noexcept
{
    return ((n.yp + n.ym) - 2.0 * n.c) / (h * h);
}

inline double dxy(const Neighbours& n, double h) noexcept
{
    return ((n.xpyp - n.xmyp) - (n.xpym - n.xmym)) / (4.0 * h * h);
}

} // namespace dsinpaint::detail
