#include "dsinpaint/error.hpp"
#include "dsinpaint/morphology.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <numbers>
#include <numeric>

using namespace dsinpaint;

namespace {

ImageGrid dilation_step(const ImageGrid& u, double tau, double delta = kDefaultDelta)
{
    const ImageGrid d = dilation_gradient_norm(u, delta);
    ImageGrid out = u;
    for (std::size_t i = 0; i < out.size(); ++i)
        out.values()[i] += tau * d.values()[i];
    return out;
}

/// Bilinear sample, clamped to the grid.
double bilinear(const ImageGrid& img, double x, double y)
{
    x = std::clamp(x, 0.0, img.width() - 1.0);
    y = std::clamp(y, 0.0, img.height() - 1.0);
    const int x0 = std::min(static_cast<int>(x), img.width() - 2);
    const int y0 = std::min(static_cast<int>(y), img.height() - 2);
    const double fx = x - x0, fy = y - y0;
    return (1 - fx) * (1 - fy) * img(x0, y0) + fx * (1 - fy) * img(x0 + 1, y0) +
           (1 - fx) * fy * img(x0, y0 + 1) + fx * fy * img(x0 + 1, y0 + 1);
}

} // namespace

TEST_CASE("stability bounds for the default weight")
{
    const StabilityBounds b = stability_bounds(kDefaultDelta, 1.0);
    // Frozen from h^2/(4 - 2 delta) and h/(sqrt(2)(1 - delta) + delta), delta = sqrt(2) - 1.
    CHECK(b.tau_d == doctest::Approx(0.31530096874093538).epsilon(1e-15));
    CHECK(b.tau_m == doctest::Approx(0.80473785412436494).epsilon(1e-15));
    CHECK(b.combined() == b.tau_d);
}

TEST_CASE("stability bounds for delta = 0 and other spacings")
{
    const StabilityBounds b0 = stability_bounds(0.0, 1.0);
    CHECK(b0.tau_d == 0.25);
    CHECK(b0.tau_m == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));

    const StabilityBounds b1 = stability_bounds(1.0, 1.0);
    CHECK(b1.tau_d == 0.5);
    CHECK(b1.tau_m == 1.0);

    const StabilityBounds half = stability_bounds(kDefaultDelta, 0.5);
    CHECK(half.tau_d == doctest::Approx(0.25 * 0.31530096874093538).epsilon(1e-15));
    CHECK(half.tau_m == doctest::Approx(0.5 * 0.80473785412436494).epsilon(1e-15));

    CHECK_THROWS_AS(stability_bounds(1.2, 1.0), PreconditionError);
    CHECK_THROWS_AS(stability_bounds(0.5, 0.0), PreconditionError);
}

TEST_CASE("upwind norms vanish on constants")
{
    const ImageGrid c(6, 5, 1.0, 120.0);
    for (double v : dilation_gradient_norm(c, kDefaultDelta).values())
        CHECK(v == 0.0);
    for (double v : erosion_gradient_norm(c, kDefaultDelta).values())
        CHECK(v == 0.0);
}

TEST_CASE("upwind norms are exactly one on a unit ramp")
{
    const ImageGrid ramp = test::sample(9, 9, 1.0, [](double x, double) { return x; });
    const ImageGrid d = dilation_gradient_norm(ramp, kDefaultDelta);
    const ImageGrid e = erosion_gradient_norm(ramp, kDefaultDelta);
    for (int y = 1; y < 8; ++y)
        for (int x = 1; x < 8; ++x) {
            CHECK(std::abs(d(x, y) - 1.0) < 1e-12);
            CHECK(std::abs(e(x, y) + 1.0) < 1e-12);
        }
}

TEST_CASE("strict extrema do not move under their own process")
{
    ImageGrid peak(3, 3, 1.0, 10.0);
    peak(1, 1) = 50.0;
    CHECK(dilation_gradient_norm(peak, kDefaultDelta)(1, 1) == 0.0);
    ImageGrid pit(3, 3, 1.0, 10.0);
    pit(1, 1) = 2.0;
    CHECK(erosion_gradient_norm(pit, kDefaultDelta)(1, 1) == 0.0);
}

TEST_CASE("dilation is non-negative and erosion non-positive")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const ImageGrid img = test::random_image(10, 8, seed);
        for (double v : dilation_gradient_norm(img, 0.3).values())
            CHECK(v >= 0.0);
        for (double v : erosion_gradient_norm(img, 0.3).values())
            CHECK(v <= 0.0);
    }
}

TEST_CASE("erosion is dual to dilation under grey-value inversion")
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const ImageGrid img = test::random_dyadic_image(11, 9, seed);
        const ImageGrid ero = erosion_gradient_norm(img, kDefaultDelta);
        const ImageGrid dil_inv = dilation_gradient_norm(test::invert(img), kDefaultDelta);
        CHECK(ero == test::negate(dil_inv));
    }
}

TEST_CASE("explicit dilation obeys the max-min principle up to tau_m")
{
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const double delta = seed % 2 ? kDefaultDelta : static_cast<double>(seed % 11) / 10.0;
        const double tau = stability_bounds(delta, 1.0).tau_m;
        const ImageGrid f = test::random_image(8, 7, seed);
        const ImageGrid u = dilation_step(f, tau, delta);
        CHECK(u.min_value() >= f.min_value());
        CHECK(u.max_value() <= f.max_value());
    }
}

TEST_CASE("explicit dilation preserves pointwise order")
{
    const double tau = stability_bounds(kDefaultDelta, 1.0).tau_m;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> bump(0.0, 40.0);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const ImageGrid a = test::random_image(9, 9, seed, 0.0, 200.0);
        ImageGrid b = a;
        for (double& v : b.values())
            v += bump(rng);
        const ImageGrid da = dilation_step(a, tau);
        const ImageGrid db = dilation_step(b, tau);
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(da.values()[i] <= db.values()[i]);
    }
}

TEST_CASE("dilating a disk keeps it round")
{
    const int size = 96;
    const double c = 47.5, r0 = 10.0, T = 20.0;
    ImageGrid u(size, size);
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            int inside = 0;
            for (int s = 0; s < 16; ++s)
                inside += std::hypot(x + (s % 4 + 0.5) / 4 - 0.5 - c,
                                     y + (s / 4 + 0.5) / 4 - 0.5 - c) < r0;
            u(x, y) = 255.0 * inside / 16.0;
        }
    const double tau = stability_bounds(kDefaultDelta, 1.0).tau_m;
    const int steps = static_cast<int>(std::ceil(T / tau));
    for (int k = 0; k < steps; ++k)
        u = dilation_step(u, T / steps);

    std::vector<double> radii;
    for (int d = 0; d < 16; ++d) {
        const double t = d * std::numbers::pi / 8.0;
        double prev = bilinear(u, c, c);
        for (double r = 0.05;; r += 0.05) {
            const double v = bilinear(u, c + r * std::cos(t), c + r * std::sin(t));
            if (v < 127.5) {
                radii.push_back(r - 0.05 * (127.5 - v) / (prev - v));
                break;
            }
            prev = v;
        }
    }
    const auto [lo, hi] = std::minmax_element(radii.begin(), radii.end());
    const double mean = std::accumulate(radii.begin(), radii.end(), 0.0) / radii.size();
    CHECK(mean == doctest::Approx(r0 + T).epsilon(0.1));
    CHECK((*hi - *lo) / mean < 0.05);
}
