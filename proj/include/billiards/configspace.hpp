#pragma once

#include "billiards/geometry.hpp"

#include <vector>

namespace billiards::configspace {

using geometry::Matrix;
using geometry::SurfacePoint;
using geometry::SurfaceSpec;
using geometry::Vector;

/// Consecutive points closer than this are treated as coincident.
inline constexpr double kDistinctTol = 1e-9;

/**
 * A point of the open string configuration space G(X; A, B, n): reflection
 * points x_1..x_n on X with the fixed endpoints x_0 = A and x_{n+1} = B.
 */
struct Configuration {
    SurfaceSpec surface;
    SurfacePoint A;
    SurfacePoint B;
    std::vector<SurfacePoint> points;

    int n() const { return static_cast<int>(points.size()); }

    /// x_0 = A, x_1..x_n, x_{n+1} = B.
    const Vector& chain(int i) const;
};

/// Builds a configuration and checks every invariant.
Configuration make_configuration(const SurfaceSpec& surface, const Vector& A, const Vector& B,
                                 const std::vector<Vector>& points);

/// Throws geometry::DomainError if a point is off X or two consecutive points
/// of the chain coincide.
void validate(const Configuration& c);

/// True if every consecutive pair is farther apart than kDistinctTol.
bool consecutive_distinct(const Configuration& c);

/// L_X = -sum_{i=0}^{n} |x_i - x_{i+1}|.
double length_functional(const Configuration& c);

/// Ambient (Euclidean) gradient of L_X with respect to each x_i.
std::vector<Vector> ambient_gradient(const Configuration& c);

/// Tangential part of the ambient gradient at each reflection point.
std::vector<Vector> riemannian_gradient(const Configuration& c);

/// max_i |tangential part of unit(x_i - x_{i-1}) + unit(x_i - x_{i+1})|.
double reflection_residual(const Configuration& c);

/// prod_{i=0}^{n} |x_i - x_{i+1}|, the G_eps membership value.
double epsilon_product(const Configuration& c);

/// One orthonormal tangent frame (columns) per reflection point.
std::vector<Matrix> tangent_frames(const Configuration& c);

/// Moves each x_i to R(x_i + E_i xi_i), xi stacked point by point.
Configuration displace(const Configuration& c, const std::vector<Matrix>& frames, const Vector& xi);

/// Value of f(xi) = L_X(displace(c, frames, xi)).
double pullback_value(const Configuration& c, const std::vector<Matrix>& frames, const Vector& xi);

/// Gradient of f at xi, differentiating through the retraction.
Vector pullback_gradient(const Configuration& c, const std::vector<Matrix>& frames, const Vector& xi);

/// Riemannian gradient expressed in the frames (stacked, length n*m).
Vector frame_gradient(const Configuration& c, const std::vector<Matrix>& frames);

enum class HessianMode { Analytic, FiniteDifference };

/// Hessian of f at xi = 0, i.e. the second derivative of L_X along the
/// retraction in the given frames.  Symmetric, size (n*m) x (n*m).
Matrix riemannian_hessian(const Configuration& c, const std::vector<Matrix>& frames,
                          HessianMode mode = HessianMode::Analytic);
Matrix riemannian_hessian(const Configuration& c, HessianMode mode = HessianMode::Analytic);

}  // namespace billiards::configspace
