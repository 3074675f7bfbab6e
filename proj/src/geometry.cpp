#include "billiards/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace billiards::geometry {

SurfaceSpec::SurfaceSpec(SurfaceKind kind, int m, std::vector<double> axes)
    : kind_(kind), m_(m), axes_(std::move(axes)) {}

SurfaceSpec SurfaceSpec::unit_sphere(int m) {
    if (m < 1) throw std::invalid_argument("surface dimension m must be >= 1");
    return SurfaceSpec(SurfaceKind::UnitSphere, m, std::vector<double>(m + 1, 1.0));
}

SurfaceSpec SurfaceSpec::ellipsoid(std::vector<double> axes) {
    if (axes.size() < 2) throw std::invalid_argument("ellipsoid needs at least 2 semi-axes");
    for (double a : axes) {
        if (!(a > 0.0) || !std::isfinite(a))
            throw std::invalid_argument("ellipsoid semi-axes must be positive and finite");
    }
    const int m = static_cast<int>(axes.size()) - 1;
    return SurfaceSpec(SurfaceKind::Ellipsoid, m, std::move(axes));
}

Vector SurfaceSpec::inverse_squared_axes() const {
    Vector w(ambient_dim());
    for (int i = 0; i < ambient_dim(); ++i) w[i] = 1.0 / (axes_[i] * axes_[i]);
    return w;
}

std::string SurfaceSpec::kind_name() const {
    return kind_ == SurfaceKind::UnitSphere ? "sphere" : "ellipsoid";
}

namespace {

void check_dim(const SurfaceSpec& spec, const Vector& p) {
    if (p.size() != spec.ambient_dim())
        throw std::invalid_argument("point has " + std::to_string(p.size()) +
                                    " coordinates, surface needs " +
                                    std::to_string(spec.ambient_dim()));
}

// sum (p_i / a_i)^2
double quadratic(const SurfaceSpec& spec, const Vector& p) {
    return p.cwiseProduct(p).dot(spec.inverse_squared_axes());
}

}  // namespace

double surface_residual(const SurfaceSpec& spec, const Vector& p) {
    check_dim(spec, p);
    return quadratic(spec, p) - 1.0;
}

Vector implicit_gradient(const SurfaceSpec& spec, const Vector& p) {
    check_dim(spec, p);
    return 2.0 * p.cwiseProduct(spec.inverse_squared_axes());
}

Vector unit_normal(const SurfaceSpec& spec, const Vector& p) {
    check_dim(spec, p);
    if (std::abs(surface_residual(spec, p)) > kOnSurfaceTol)
        throw DomainError("unit_normal: point is not on the surface");
    Vector g = implicit_gradient(spec, p);
    return g / g.norm();
}

Vector unit_normal(const SurfaceSpec& spec, const SurfacePoint& p) {
    return unit_normal(spec, p.coords);
}

SurfacePoint retract(const SurfaceSpec& spec, const Vector& p) {
    check_dim(spec, p);
    const double q = quadratic(spec, p);
    if (!(q > 0.0) || !std::isfinite(q)) throw DomainError("retract: zero vector has no projection");
    SurfacePoint out{p / std::sqrt(q)};
    // One correction step absorbs the rounding of the square root.
    const double q2 = quadratic(spec, out.coords);
    if (q2 != 1.0) out.coords /= std::sqrt(q2);
    return out;
}

Matrix retraction_jacobian(const SurfaceSpec& spec, const Vector& p) {
    check_dim(spec, p);
    const double q = quadratic(spec, p);
    if (!(q > 0.0)) throw DomainError("retraction_jacobian: zero vector");
    const double g = 1.0 / std::sqrt(q);
    // R(p) = g(p) p,  grad g = -q^{-3/2} W p
    const Vector dg = -(g * g * g) * p.cwiseProduct(spec.inverse_squared_axes());
    return g * Matrix::Identity(p.size(), p.size()) + p * dg.transpose();
}

Matrix retraction_curvature_form(const SurfaceSpec& spec) {
    return spec.inverse_squared_axes().asDiagonal();
}

Matrix tangent_frame(const SurfaceSpec& spec, const SurfacePoint& p) {
    const Vector nu = unit_normal(spec, p);
    const int dim = spec.ambient_dim();

    std::vector<int> order(dim);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return std::abs(nu[a]) < std::abs(nu[b]); });

    Matrix frame(dim, dim - 1);
    for (int c = 0; c < dim - 1; ++c) {
        Vector v = Vector::Unit(dim, order[c]);
        // two passes of modified Gram-Schmidt
        for (int pass = 0; pass < 2; ++pass) {
            v -= nu.dot(v) * nu;
            for (int k = 0; k < c; ++k) v -= frame.col(k).dot(v) * frame.col(k);
        }
        frame.col(c) = v / v.norm();
    }
    return frame;
}

Vector project_to_tangent(const SurfaceSpec& spec, const SurfacePoint& p, const Vector& v) {
    const Vector nu = unit_normal(spec, p);
    return v - nu.dot(v) * nu;
}

SurfacePoint make_surface_point(const SurfaceSpec& spec, const Vector& coords) {
    if (std::abs(surface_residual(spec, coords)) > kOnSurfaceTol)
        throw DomainError("point is not on the surface");
    return SurfacePoint{coords};
}

}  // namespace billiards::geometry
