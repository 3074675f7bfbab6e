#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace billiards::geometry {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Tolerance for a point to count as lying on the surface.
inline constexpr double kOnSurfaceTol = 1e-12;

enum class SurfaceKind { UnitSphere, Ellipsoid };

/**
 * A closed strictly convex hypersurface X in R^{m+1}, given implicitly by
 * sum_i (p_i / a_i)^2 = 1.  The unit sphere is the special case a_i = 1.
 *
 * Every routine the billiard functional needs from X goes through the free
 * functions below (residual, implicit gradient, normal, retraction and the
 * second-order term of the retraction), so another strictly convex family
 * only has to provide those.
 */
class SurfaceSpec {
public:
    static SurfaceSpec unit_sphere(int m);
    static SurfaceSpec ellipsoid(std::vector<double> axes);

    SurfaceKind kind() const { return kind_; }
    /// Surface dimension; the ambient space is R^{m+1}.
    int m() const { return m_; }
    int ambient_dim() const { return m_ + 1; }
    const std::vector<double>& axes() const { return axes_; }

    /// Diagonal of the quadratic form: 1 / a_i^2.
    Vector inverse_squared_axes() const;

    std::string kind_name() const;

private:
    SurfaceSpec(SurfaceKind kind, int m, std::vector<double> axes);

    SurfaceKind kind_;
    int m_;
    std::vector<double> axes_;
};

/// A point of R^{m+1} known to satisfy the on-surface invariant.
struct SurfacePoint {
    Vector coords;
};

/// Thrown when a point is not where an operation needs it to be.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

double surface_residual(const SurfaceSpec& spec, const Vector& p);

/// Gradient of the implicit function (not normalized).
Vector implicit_gradient(const SurfaceSpec& spec, const Vector& p);

Vector unit_normal(const SurfaceSpec& spec, const SurfacePoint& p);
Vector unit_normal(const SurfaceSpec& spec, const Vector& p);

/// Radial retraction p -> p / sqrt(sum (p_i/a_i)^2).  For the sphere this is
/// the nearest-point projection.
SurfacePoint retract(const SurfaceSpec& spec, const Vector& p);

/// Jacobian of the retraction at an arbitrary nonzero ambient point.
Matrix retraction_jacobian(const SurfaceSpec& spec, const Vector& p);

/// Second derivative of the retraction at a surface point along tangent
/// vectors v, w:  D^2 R[v, w] = -x * sum_k v_k w_k / a_k^2.
/// Returns the symmetric bilinear form Q with D^2 R[v, w] = -x * (v^T Q w).
Matrix retraction_curvature_form(const SurfaceSpec& spec);

/// Orthonormal basis (columns) of the tangent space at p.  Built by
/// Gram-Schmidt of the coordinate axes against the normal, dropping the axis
/// most aligned with the normal; deterministic in the coordinates.
Matrix tangent_frame(const SurfaceSpec& spec, const SurfacePoint& p);

/// Projection of v onto the tangent space at p.
Vector project_to_tangent(const SurfaceSpec& spec, const SurfacePoint& p, const Vector& v);

SurfacePoint make_surface_point(const SurfaceSpec& spec, const Vector& coords);

}  // namespace billiards::geometry
