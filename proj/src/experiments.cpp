#include "dsinpaint/experiments.hpp"

#include "dsinpaint/error.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

namespace dsinpaint {

namespace {

constexpr double kBlack = 0.0;
constexpr double kWhite = 255.0;
constexpr double kUnknownGrey = 127.5;

void check_size(int size)
{
    if (size < 64)
        throw PreconditionError("scene size must be at least 64, got " + std::to_string(size));
}

void check_same_shape(const ImageGrid& a, const ImageGrid& b)
{
    if (!a.same_shape(b))
        throw PreconditionError("metric inputs differ in size");
}

/// Unknown pixels of `truth` replaced by `fill`.
ImageGrid masked_input(const ImageGrid& truth, const MaskGrid& mask, double fill)
{
    ImageGrid img = truth;
    for (std::size_t i = 0; i < img.size(); ++i)
        if (!mask.known(i))
            img.values()[i] = fill;
    return img;
}

bool in_square(int x, int y, int x0, int y0, int side)
{
    return x >= x0 && x < x0 + side && y >= y0 && y < y0 + side;
}

} // namespace

ImageGrid gen_line(const LineSpec& spec)
{
    if (!(spec.thickness > 0.0))
        throw PreconditionError("line thickness must be positive");
    if (!(spec.fraction > 0.0 && spec.fraction <= 1.0))
        throw PreconditionError("drawn fraction must lie in (0, 1]");

    ImageGrid img(spec.width, spec.height, 1.0, kWhite);
    const double theta = spec.angle_deg * std::numbers::pi / 180.0;
    const double dx = std::cos(theta);
    const double dy = -std::sin(theta);
    const double cx = std::floor(spec.width / 2.0) + 0.5;
    const double cy = std::floor(spec.height / 2.0) + 0.5;

    // Half chord through the centre, limited by the nearer image border.
    double reach = std::numeric_limits<double>::infinity();
    if (std::abs(dx) > 1e-12)
        reach = std::min(reach, std::min(cx, spec.width - cx) / std::abs(dx));
    if (std::abs(dy) > 1e-12)
        reach = std::min(reach, std::min(cy, spec.height - cy) / std::abs(dy));
    const double half_length = spec.fraction * reach;
    const double half_width = spec.thickness / 2.0;

    constexpr int kSub = 8;
    const double margin = half_width + 2.0;
    const double ex = std::abs(dx) * half_length + std::abs(dy) * margin;
    const double ey = std::abs(dy) * half_length + std::abs(dx) * margin;
    const int x0 = std::max(0, static_cast<int>(std::floor(cx - ex)) - 1);
    const int x1 = std::min(spec.width - 1, static_cast<int>(std::ceil(cx + ex)) + 1);
    const int y0 = std::max(0, static_cast<int>(std::floor(cy - ey)) - 1);
    const int y1 = std::min(spec.height - 1, static_cast<int>(std::ceil(cy + ey)) + 1);

    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            int covered = 0;
            for (int sy = 0; sy < kSub; ++sy) {
                for (int sx = 0; sx < kSub; ++sx) {
                    const double px = x + (sx + 0.5) / kSub - cx;
                    const double py = y + (sy + 0.5) / kSub - cy;
                    const double along = px * dx + py * dy;
                    const double across = -px * dy + py * dx;
                    if (std::abs(across) < half_width && std::abs(along) <= half_length)
                        ++covered;
                }
            }
            img(x, y) = kWhite * (1.0 - static_cast<double>(covered) / (kSub * kSub));
        }
    }
    return img;
}

Scene gen_bars(int size)
{
    check_size(size);
    const int bar = static_cast<int>(std::lround(0.16 * size));
    const int gap = static_cast<int>(std::lround(0.3 * size));
    const int bar_y0 = (size - bar) / 2;
    const int gap_0 = (size - gap) / 2;

    ImageGrid truth(size, size, 1.0, kWhite);
    MaskGrid mask(size, size, true);
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            if (y >= bar_y0 && y < bar_y0 + bar)
                truth(x, y) = kBlack;
            if (in_square(x, y, gap_0, gap_0, gap))
                mask.set(x, y, false);
        }
    }
    return {masked_input(truth, mask, kUnknownGrey), mask, truth};
}

Scene gen_cross(int size)
{
    check_size(size);
    const int arm = static_cast<int>(std::lround(0.2 * size));
    const int hole = static_cast<int>(std::lround(0.4 * size));
    const int arm_0 = (size - arm) / 2;
    const int hole_0 = (size - hole) / 2;

    ImageGrid truth(size, size, 1.0, kWhite);
    MaskGrid mask(size, size, true);
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            const bool vertical = x >= arm_0 && x < arm_0 + arm;
            const bool horizontal = y >= arm_0 && y < arm_0 + arm;
            if (vertical || horizontal)
                truth(x, y) = kBlack;
            if (in_square(x, y, hole_0, hole_0, hole))
                mask.set(x, y, false);
        }
    }
    return {masked_input(truth, mask, kUnknownGrey), mask, truth};
}

Scene gen_dipoles(int size, int n_dipoles)
{
    check_size(size);
    if (n_dipoles != 1 && n_dipoles != 4)
        throw PreconditionError("dipole scenes have 1 or 4 dipoles");

    ImageGrid truth(size, size, 1.0, kWhite);
    MaskGrid mask(size, size, false);

    if (n_dipoles == 1) {
        const int xw = size / 2;
        const int y = size / 2;
        for (int yy = 0; yy < size; ++yy)
            for (int x = 0; x < xw; ++x)
                truth(x, yy) = kBlack;
        mask.set(xw - 1, y, true);
        mask.set(xw, y, true);
    } else {
        const int c = size / 2;
        const int r = static_cast<int>(std::lround(size / 4.0));
        const double r_disk = r - 0.5;
        for (int y = 0; y < size; ++y)
            for (int x = 0; x < size; ++x)
                if (std::hypot(x - c, y - c) < r_disk)
                    truth(x, y) = kBlack;
        const int offsets[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        for (const auto& o : offsets) {
            mask.set(c + o[0] * (r - 1), c + o[1] * (r - 1), true);
            mask.set(c + o[0] * r, c + o[1] * r, true);
        }
    }
    return {masked_input(truth, mask, kUnknownGrey), mask, truth};
}

Scene gen_kanizsa(int size, std::uint64_t seed)
{
    check_size(size);
    const double c = size / 2.0;
    const double circum = 0.3 * size;
    const double disk = 0.1 * size;

    Point2 v[3];
    for (int k = 0; k < 3; ++k) {
        const double a = std::numbers::pi / 2.0 + k * 2.0 * std::numbers::pi / 3.0;
        v[k] = {c + circum * std::cos(a), c - circum * std::sin(a)};
    }
    auto inside_triangle = [&](double px, double py) {
        auto side = [&](const Point2& a, const Point2& b) {
            return (b.x - a.x) * (py - a.y) - (b.y - a.y) * (px - a.x);
        };
        const double s0 = side(v[0], v[1]);
        const double s1 = side(v[1], v[2]);
        const double s2 = side(v[2], v[0]);
        return (s0 >= 0 && s1 >= 0 && s2 >= 0) || (s0 <= 0 && s1 <= 0 && s2 <= 0);
    };

    ImageGrid truth(size, size, 1.0, kBlack);
    MaskGrid mask(size, size, false);
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            const double px = x + 0.5;
            const double py = y + 0.5;
            if (inside_triangle(px, py))
                truth(x, y) = kWhite;
            for (const auto& p : v)
                if (std::hypot(px - p.x, py - p.y) < disk)
                    mask.set(x, y, true);
        }
    }

    ImageGrid img = truth;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> noise(0.0, 255.0);
    for (std::size_t i = 0; i < img.size(); ++i)
        if (!mask.known(i))
            img.values()[i] = noise(rng);
    return {img, mask, truth};
}

ImageGrid gen_smooth(int size)
{
    check_size(size);
    ImageGrid img(size, size);
    const double two_pi = 2.0 * std::numbers::pi;
    const double s = size;
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            const double bx = x - 0.3 * s;
            const double by = y - 0.6 * s;
            const double blob = std::exp(-(bx * bx + by * by) / (2.0 * 0.12 * s * 0.12 * s));
            img(x, y) = 127.5 + 50.0 * std::sin(two_pi * x / (0.35 * s)) *
                                    std::cos(two_pi * y / (0.27 * s)) +
                        40.0 * blob;
        }
    }
    return img;
}

MaskGrid gen_sparse_mask(const ImageGrid& img, double density, std::uint64_t seed)
{
    if (!(density > 0.0 && density <= 1.0))
        throw PreconditionError("mask density must lie in (0, 1]");
    const std::size_t n = img.size();
    const auto known = static_cast<std::size_t>(std::llround(density * static_cast<double>(n)));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    MaskGrid mask(img.width(), img.height(), false);
    for (std::size_t k = 0; k < known; ++k)
        mask.set(order[k], true);
    return mask;
}

double metric_mse(const ImageGrid& a, const ImageGrid& b)
{
    check_same_shape(a, b);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.values()[i] - b.values()[i];
        sum += d * d;
    }
    return sum / static_cast<double>(a.size());
}

double metric_binary_agreement(const ImageGrid& a, const ImageGrid& b, double threshold)
{
    check_same_shape(a, b);
    std::size_t agree = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if ((a.values()[i] > threshold) == (b.values()[i] > threshold))
            ++agree;
    return static_cast<double>(agree) / static_cast<double>(a.size());
}

double metric_sharpness(const ImageGrid& img, double eps)
{
    std::size_t sharp = 0;
    for (const double v : img.values())
        if (std::abs(v - kBlack) <= eps || std::abs(v - kWhite) <= eps)
            ++sharp;
    return static_cast<double>(sharp) / static_cast<double>(img.size());
}

Components threshold_components(const ImageGrid& img, double threshold)
{
    const int w = img.width();
    const int h = img.height();
    Components comp;
    comp.labels.assign(img.size(), -1);
    std::vector<std::size_t> stack;
    for (std::size_t seed = 0; seed < img.size(); ++seed) {
        if (comp.labels[seed] >= 0)
            continue;
        const bool dark = img.values()[seed] <= threshold;
        const int label = static_cast<int>(comp.count());
        comp.dark.push_back(dark);
        comp.sizes.push_back(0);
        comp.labels[seed] = label;
        stack.push_back(seed);
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            ++comp.sizes[label];
            const int x = static_cast<int>(i % w);
            const int y = static_cast<int>(i / w);
            const int nb[4][2] = {{x + 1, y}, {x - 1, y}, {x, y + 1}, {x, y - 1}};
            for (const auto& q : nb) {
                if (q[0] < 0 || q[0] >= w || q[1] < 0 || q[1] >= h)
                    continue;
                const std::size_t j = img.index(q[0], q[1]);
                if (comp.labels[j] < 0 && (img.values()[j] <= threshold) == dark) {
                    comp.labels[j] = label;
                    stack.push_back(j);
                }
            }
        }
    }
    return comp;
}

double LineFit::angle_deg() const
{
    double a = std::atan2(-direction.y, direction.x) * 180.0 / std::numbers::pi;
    a = std::fmod(a, 180.0);
    if (a < 0.0)
        a += 180.0;
    return a;
}

double LineFit::distance_to(Point2 p) const
{
    return std::abs(-(p.x - centroid.x) * direction.y + (p.y - centroid.y) * direction.x);
}

LineFit fit_line(const std::vector<Point2>& points)
{
    if (points.size() < 2)
        throw PreconditionError("line fit needs at least two points");
    LineFit fit;
    for (const auto& p : points) {
        fit.centroid.x += p.x;
        fit.centroid.y += p.y;
    }
    const double n = static_cast<double>(points.size());
    fit.centroid.x /= n;
    fit.centroid.y /= n;

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& p : points) {
        const double dx = p.x - fit.centroid.x;
        const double dy = p.y - fit.centroid.y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    // Principal axis of the scatter matrix.
    const double angle = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
    fit.direction = {std::cos(angle), std::sin(angle)};

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double ss = 0.0;
    for (const auto& p : points) {
        const double dx = p.x - fit.centroid.x;
        const double dy = p.y - fit.centroid.y;
        const double along = dx * fit.direction.x + dy * fit.direction.y;
        const double across = -dx * fit.direction.y + dy * fit.direction.x;
        lo = std::min(lo, along);
        hi = std::max(hi, along);
        ss += across * across;
    }
    fit.rms_residual = std::sqrt(ss / n);
    fit.extent = hi - lo;
    return fit;
}

std::vector<Point2> binary_boundary(const ImageGrid& img, double threshold)
{
    std::vector<Point2> pts;
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            const bool d = img(x, y) <= threshold;
            if (x + 1 < img.width() && (img(x + 1, y) <= threshold) != d)
                pts.push_back({x + 1.0, y + 0.5});
            if (y + 1 < img.height() && (img(x, y + 1) <= threshold) != d)
                pts.push_back({x + 0.5, y + 1.0});
        }
    }
    return pts;
}

std::vector<Point2> largest_dark_component(const ImageGrid& img, double threshold)
{
    const Components comp = threshold_components(img, threshold);
    int best = -1;
    for (std::size_t k = 0; k < comp.count(); ++k)
        if (comp.dark[k] && (best < 0 || comp.sizes[k] > comp.sizes[best]))
            best = static_cast<int>(k);
    std::vector<Point2> pts;
    if (best < 0)
        return pts;
    for (std::size_t i = 0; i < img.size(); ++i)
        if (comp.labels[i] == best)
            pts.push_back({static_cast<double>(i % img.width()) + 0.5,
                           static_cast<double>(i / img.width()) + 0.5});
    return pts;
}

std::vector<std::string> experiment_names()
{
    return {"line", "bars", "cross", "dipole1", "dipole4", "kanizsa", "sparse"};
}

ExperimentSpec make_experiment(std::string_view name, std::uint64_t seed)
{
    ExperimentSpec spec;
    spec.name = std::string(name);
    auto set = [&](double sigma, double rho, double nu, double lambda) {
        spec.params.sigma = sigma;
        spec.params.rho = rho;
        spec.params.nu = nu;
        spec.params.lambda = lambda;
    };
    auto take = [&](Scene scene) {
        spec.image = std::move(scene.image);
        spec.mask = std::move(scene.mask);
        spec.expected = std::move(scene.truth);
    };

    if (name == "line") {
        spec.kind = ExperimentKind::shock;
        spec.image = gen_line(LineSpec{});
        spec.mask = MaskGrid(spec.image.width(), spec.image.height(), true);
        spec.shock.sigma = 2.0;
        spec.shock.rho = 5.0;
    } else if (name == "bars") {
        take(gen_bars(256));
        set(2.0, 5.0, 3.0, 3.0);
    } else if (name == "cross") {
        take(gen_cross(256));
        set(2.0, 5.0, 2.0, 2.0);
    } else if (name == "dipole1") {
        take(gen_dipoles(128, 1));
        set(1.0, 2.0, 2.0, 1.0);
    } else if (name == "dipole4") {
        take(gen_dipoles(127, 4));
        set(2.65, 4.0, 2.0, 3.0);
    } else if (name == "kanizsa") {
        take(gen_kanizsa(256, seed));
        set(4.7, 6.0, 5.2, 3.4);
    } else if (name == "sparse") {
        ImageGrid truth = gen_smooth(256);
        spec.mask = gen_sparse_mask(truth, 0.1, seed);
        spec.image = masked_input(truth, spec.mask, kBlack);
        spec.expected = std::move(truth);
        spec.init = InitMode::mean;
        set(2.0, 1.5, 5.0, 3.0);
    } else {
        throw PreconditionError("unknown experiment '" + std::string(name) + "'");
    }
    return spec;
}

ExperimentOutcome run_experiment(const ExperimentSpec& spec)
{
    ExperimentOutcome out;
    const auto start = std::chrono::steady_clock::now();
    if (spec.kind == ExperimentKind::shock) {
        out.initial = spec.image;
        out.result = shock_filter_evolve(spec.image, spec.shock);
    } else {
        out.initial = initialise(spec.image, spec.mask, spec.init, 0);
        out.result = ds_inpaint(out.initial, spec.mask, spec.params);
    }
    out.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const ImageGrid& u = out.result.u;
    out.metrics["sharpness_eps1"] = metric_sharpness(u, 1.0);
    out.metrics["sharpness_eps2"] = metric_sharpness(u, 2.0);
    if (spec.expected) {
        out.metrics["mse"] = metric_mse(u, *spec.expected);
        out.metrics["binary_agreement"] = metric_binary_agreement(u, *spec.expected);
        out.metrics["initial_mse"] = metric_mse(out.initial, *spec.expected);
    }
    if (spec.kind == ExperimentKind::shock) {
        const auto before = largest_dark_component(spec.image);
        const auto after = largest_dark_component(u);
        if (before.size() >= 2 && after.size() >= 2) {
            const LineFit a = fit_line(before);
            const LineFit b = fit_line(after);
            out.metrics["initial_length"] = a.extent;
            out.metrics["final_length"] = b.extent;
            out.metrics["elongation"] = b.extent / a.extent;
            out.metrics["final_angle_deg"] = b.angle_deg();
        }
    } else {
        out.metrics["components"] = static_cast<double>(threshold_components(u).count());
    }
    return out;
}

} // namespace dsinpaint
