#include "dsinpaint/structure_tensor.hpp"

#include "dsinpaint/error.hpp"
#include "dsinpaint/smoothing.hpp"

#include <cmath>

namespace dsinpaint {

TensorField compute_structure_tensor(const ImageGrid& u, double sigma, double rho)
{
    if (!(sigma >= 0.0) || !(rho >= 0.0))
        throw PreconditionError("structure tensor scales must be non-negative");
    return structure_tensor_from_smoothed(convolve_gaussian(u, sigma), rho);
}

TensorField structure_tensor_from_smoothed(const ImageGrid& u, double rho)
{
    const GradientField g = sobel_gradient(u);
    const int w = u.width();
    const int h = u.height();
    TensorField t{ImageGrid(w, h, u.spacing()), ImageGrid(w, h, u.spacing()),
                  ImageGrid(w, h, u.spacing())};
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double gx = g.gx.values()[i];
        const double gy = g.gy.values()[i];
        t.j11.values()[i] = gx * gx;
        t.j12.values()[i] = gx * gy;
        t.j22.values()[i] = gy * gy;
    }

    const GaussianKernel k = build_kernel(rho, u.spacing());
    t.j11 = convolve(t.j11, k);
    t.j12 = convolve(t.j12, k);
    t.j22 = convolve(t.j22, k);
    return t;
}

Eigenvalues tensor_eigenvalues(double j11, double j12, double j22) noexcept
{
    const double trace = j11 + j22;
    const double root = std::sqrt((j11 - j22) * (j11 - j22) + 4.0 * j12 * j12);
    return {(trace + root) / 2.0, (trace - root) / 2.0};
}

UnitVector dominant_eigenvector(double j11, double j12, double j22) noexcept
{
    const double trace = j11 + j22;
    const double eps = 1e-12 * trace;
    if (!(trace > 0.0) || (std::abs(j11 - j22) < eps && std::abs(j12) < eps))
        return {1.0, 0.0};

    const double major = tensor_eigenvalues(j11, j12, j22).major;
    // Two algebraically equivalent eigenvectors; the longer one loses fewer digits.
    const double ax = j12, ay = major - j11;
    const double bx = major - j22, by = j12;
    const double na = ax * ax + ay * ay;
    const double nb = bx * bx + by * by;
    double c = na >= nb ? ax : bx;
    double s = na >= nb ? ay : by;
    const double norm = std::sqrt(na >= nb ? na : nb);
    if (!(norm > 0.0))
        return {1.0, 0.0};
    c /= norm;
    s /= norm;
    if (c < 0.0 || (c == 0.0 && s < 0.0)) {
        c = -c;
        s = -s;
    }
    return {c, s};
}

DirectionField dominant_direction(const TensorField& t)
{
    const int w = t.j11.width();
    const int h = t.j11.height();
    DirectionField d{ImageGrid(w, h, t.j11.spacing()), ImageGrid(w, h, t.j11.spacing())};
#pragma omp parallel for schedule(static)
    for (int i = 0; i < static_cast<int>(t.j11.size()); ++i) {
        const auto v = dominant_eigenvector(t.j11.values()[i], t.j12.values()[i],
                                            t.j22.values()[i]);
        d.c.values()[i] = v.c;
        d.s.values()[i] = v.s;
    }
    return d;
}

} // namespace dsinpaint
