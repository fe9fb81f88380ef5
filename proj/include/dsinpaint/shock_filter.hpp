#pragma once

#include "dsinpaint/grid.hpp"
#include "dsinpaint/morphology.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace dsinpaint {

/// Per-pixel sign in {-1, 0, +1}.
class SignField {
public:
    SignField(int width, int height) : width_(width), height_(height),
        values_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0) {}

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return values_.size(); }

    int operator()(int x, int y) const noexcept { return values_[index(x, y)]; }
    int operator[](std::size_t i) const noexcept { return values_[i]; }
    void set(std::size_t i, int sign) noexcept { values_[i] = static_cast<std::int8_t>(sign); }
    void set(int x, int y, int sign) noexcept { set(index(x, y), sign); }

    std::size_t index(int x, int y) const noexcept
    {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    friend bool operator==(const SignField&, const SignField&) = default;

private:
    int width_;
    int height_;
    std::vector<std::int8_t> values_;
};

struct ShockParams {
    double sigma = 2.0;
    double rho = 5.0;
    double delta = kDefaultDelta;
    std::optional<double> tau;  ///< defaults to tau_m
    int max_iter = 100000;
    double tol = 1e-4;          ///< max-norm update, grey levels
};

/// Outcome of an evolution run to steady state.
struct EvolutionResult {
    ImageGrid u;
    int iterations = 0;
    double last_update = 0.0;
    bool converged = false;
};

/// Called with (iteration, u^k) after every step.
using IterateObserver = std::function<void(int, const ImageGrid&)>;

/// |v| below this counts as zero when taking sgn of second derivatives.
inline double sign_zero_band(double h) noexcept { return 1e-12 * 255.0 / (h * h); }

/// sgn(d_ww u_sigma), w the dominant eigenvector of J_rho(grad u_sigma).
SignField shock_sign_field(const ImageGrid& u, double sigma, double rho);

/// Same, for an already presmoothed u_sigma.
SignField shock_sign_field_from_smoothed(const ImageGrid& u_sigma, double rho);

/// One explicit step with a given sign field: erosion where the sign is +1,
/// dilation where it is -1, no change where it is 0.
ImageGrid apply_shock_update(const ImageGrid& u, const SignField& sign, double delta, double tau);

double resolve_tau(const ShockParams& p, double h);

/// One step of u_t = -sgn(d_ww u_sigma) |grad u|.
ImageGrid shock_step(const ImageGrid& u, const ShockParams& p);

/// Iterates shock_step until the max-norm update drops below tol or max_iter
/// steps have been taken. Non-convergence is reported, not thrown.
EvolutionResult shock_filter_evolve(const ImageGrid& f, const ShockParams& p,
                                    const IterateObserver& observer = {});

} // namespace dsinpaint
