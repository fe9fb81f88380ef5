#pragma once

#include "dsinpaint/differential_ops.hpp"
#include "dsinpaint/grid.hpp"

namespace dsinpaint {

/// Per-pixel symmetric 2x2 tensor [[j11, j12], [j12, j22]].
struct TensorField {
    ImageGrid j11;
    ImageGrid j12;
    ImageGrid j22;
};

struct Eigenvalues {
    double major = 0.0;
    double minor = 0.0;
};

struct UnitVector {
    double c = 1.0;
    double s = 0.0;
};

/// J_rho(grad u_sigma) = K_rho * (grad u_sigma grad u_sigma^T), componentwise.
TensorField compute_structure_tensor(const ImageGrid& u, double sigma, double rho);

/// Same as above for an image that is already presmoothed.
TensorField structure_tensor_from_smoothed(const ImageGrid& u_sigma, double rho);

Eigenvalues tensor_eigenvalues(double j11, double j12, double j22) noexcept;

/// Unit eigenvector for the larger eigenvalue, with canonical sign
/// (c > 0, or c == 0 and s >= 0). Isotropic or zero tensors give (1, 0).
UnitVector dominant_eigenvector(double j11, double j12, double j22) noexcept;

DirectionField dominant_direction(const TensorField& t);

} // namespace dsinpaint
