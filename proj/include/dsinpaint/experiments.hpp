#pragma once

#include "dsinpaint/ds_solver.hpp"
#include "dsinpaint/grid.hpp"
#include "dsinpaint/shock_filter.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dsinpaint {

// ---------------------------------------------------------------------------
// Synthetic test scenes. Black is 0, white is 255; x to the right, y down.
// ---------------------------------------------------------------------------

struct LineSpec {
    int width = 512;
    int height = 384;
    double angle_deg = 30.0;   ///< counter-clockwise from the x axis, as seen on screen
    double thickness = 5.0;    ///< pixels
    double fraction = 0.4;     ///< drawn part of the chord through the centre
};

/// Black straight line segment on white, centred on the middle pixel,
/// anti-aliased by 8x8 coverage sampling.
ImageGrid gen_line(const LineSpec& spec);

/// Input image, mask and (where one exists) the ideal reconstruction.
struct Scene {
    ImageGrid image;
    MaskGrid mask;
    std::optional<ImageGrid> truth;
};

/// Horizontal black bar interrupted by an unknown square.
Scene gen_bars(int size = 256);

/// Black cross whose centre is occluded by an unknown square.
Scene gen_cross(int size = 256);

/// One or four black/white dipoles, every other pixel unknown (grey 127.5).
/// One dipole straddles the vertical centre line; four sit on the rim of a
/// black disk centred on the middle pixel.
Scene gen_dipoles(int size, int n_dipoles);

/// Three disks at the corners of a white triangle on black; only the disks
/// are known, the rest is seeded uniform noise.
Scene gen_kanizsa(int size = 256, std::uint64_t seed = 0);

/// Smooth greyscale test image (sinusoids plus a soft blob).
ImageGrid gen_smooth(int size = 256);

/// Exactly round(density * N) known pixels drawn without replacement.
MaskGrid gen_sparse_mask(const ImageGrid& img, double density, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Quality measures.
// ---------------------------------------------------------------------------

double metric_mse(const ImageGrid& a, const ImageGrid& b);

/// Fraction of pixels on the same side of `threshold` in both images.
double metric_binary_agreement(const ImageGrid& a, const ImageGrid& b, double threshold = 127.5);

/// Fraction of pixels within eps of 0 or 255.
double metric_sharpness(const ImageGrid& img, double eps);

/// 4-connected components of the thresholded image (dark: v <= threshold).
struct Components {
    std::vector<int> labels;        ///< row-major, 0-based component id
    std::vector<bool> dark;         ///< per component
    std::vector<std::size_t> sizes; ///< per component

    std::size_t count() const noexcept { return sizes.size(); }
};

Components threshold_components(const ImageGrid& img, double threshold = 127.5);

/// Continuous image coordinates: pixel (x, y) covers [x, x + 1) x [y, y + 1).
struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// Total least squares line through a point cloud.
struct LineFit {
    Point2 centroid;
    Point2 direction;        ///< unit vector
    double rms_residual = 0; ///< perpendicular RMS distance
    double extent = 0;       ///< spread of the projections onto the direction

    /// Orientation in degrees in [0, 180), counter-clockwise as seen on screen.
    double angle_deg() const;
    double distance_to(Point2 p) const;
};

LineFit fit_line(const std::vector<Point2>& points);

/// Midpoints between 4-adjacent pixel pairs lying on opposite sides of the threshold.
std::vector<Point2> binary_boundary(const ImageGrid& img, double threshold = 127.5);

/// Pixel centres of the largest dark component.
std::vector<Point2> largest_dark_component(const ImageGrid& img, double threshold = 127.5);

// ---------------------------------------------------------------------------
// Named end-to-end experiments.
// ---------------------------------------------------------------------------

enum class ExperimentKind { shock, inpaint };

struct ExperimentSpec {
    std::string name;
    ExperimentKind kind = ExperimentKind::inpaint;
    ImageGrid image;
    MaskGrid mask;
    std::optional<ImageGrid> expected;
    SolverParams params;
    ShockParams shock;
    InitMode init = InitMode::keep;
};

/// line, bars, cross, dipole1, dipole4, kanizsa, sparse.
std::vector<std::string> experiment_names();

ExperimentSpec make_experiment(std::string_view name, std::uint64_t seed = 0);

struct ExperimentOutcome {
    ImageGrid initial;               ///< u^0 after initialisation
    EvolutionResult result;
    std::map<std::string, double> metrics;
    double wall_seconds = 0.0;
};

ExperimentOutcome run_experiment(const ExperimentSpec& spec);

} // namespace dsinpaint
