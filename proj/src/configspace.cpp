#include "billiards/configspace.hpp"

#include <cmath>
#include <string>

namespace billiards::configspace {

using geometry::DomainError;

const Vector& Configuration::chain(int i) const {
    if (i == 0) return A.coords;
    if (i == n() + 1) return B.coords;
    return points.at(static_cast<std::size_t>(i - 1)).coords;
}

Configuration make_configuration(const SurfaceSpec& surface, const Vector& A, const Vector& B,
                                 const std::vector<Vector>& points) {
    if (points.empty()) throw std::invalid_argument("configuration needs at least one reflection point");
    Configuration c{surface, geometry::make_surface_point(surface, A),
                    geometry::make_surface_point(surface, B), {}};
    c.points.reserve(points.size());
    for (const auto& p : points) c.points.push_back(geometry::make_surface_point(surface, p));
    validate(c);
    return c;
}

bool consecutive_distinct(const Configuration& c) {
    for (int i = 0; i <= c.n(); ++i) {
        if ((c.chain(i) - c.chain(i + 1)).norm() <= kDistinctTol) return false;
    }
    return (c.A.coords - c.B.coords).norm() > kDistinctTol;
}

void validate(const Configuration& c) {
    if (c.points.empty()) throw std::invalid_argument("configuration needs at least one reflection point");
    for (int i = 0; i <= c.n() + 1; ++i) {
        const Vector& p = c.chain(i);
        if (p.size() != c.surface.ambient_dim())
            throw std::invalid_argument("configuration point has wrong dimension");
        if (std::abs(geometry::surface_residual(c.surface, p)) > geometry::kOnSurfaceTol)
            throw DomainError("configuration point " + std::to_string(i) + " is off the surface");
    }
    if ((c.A.coords - c.B.coords).norm() <= kDistinctTol) throw DomainError("endpoints A and B coincide");
    for (int i = 0; i <= c.n(); ++i) {
        if ((c.chain(i) - c.chain(i + 1)).norm() <= kDistinctTol)
            throw DomainError("consecutive points " + std::to_string(i) + " and " +
                              std::to_string(i + 1) + " coincide");
    }
}

namespace {

void require_distinct(const Configuration& c) {
    for (int i = 0; i <= c.n(); ++i) {
        if ((c.chain(i) - c.chain(i + 1)).norm() <= kDistinctTol)
            throw DomainError("consecutive points coincide; L_X is not smooth here");
    }
}

Vector unit(const Vector& v) { return v / v.norm(); }

}  // namespace

double length_functional(const Configuration& c) {
    require_distinct(c);
    double total = 0.0;
    for (int i = 0; i <= c.n(); ++i) total += (c.chain(i) - c.chain(i + 1)).norm();
    return -total;
}

std::vector<Vector> ambient_gradient(const Configuration& c) {
    require_distinct(c);
    std::vector<Vector> g;
    g.reserve(c.points.size());
    for (int i = 1; i <= c.n(); ++i) {
        g.push_back(-(unit(c.chain(i) - c.chain(i - 1)) + unit(c.chain(i) - c.chain(i + 1))));
    }
    return g;
}

std::vector<Vector> riemannian_gradient(const Configuration& c) {
    auto g = ambient_gradient(c);
    for (int i = 0; i < c.n(); ++i) g[i] = geometry::project_to_tangent(c.surface, c.points[i], g[i]);
    return g;
}

double reflection_residual(const Configuration& c) {
    double worst = 0.0;
    for (const auto& v : riemannian_gradient(c)) worst = std::max(worst, v.norm());
    return worst;
}

double epsilon_product(const Configuration& c) {
    double prod = 1.0;
    for (int i = 0; i <= c.n(); ++i) prod *= (c.chain(i) - c.chain(i + 1)).norm();
    return prod;
}

std::vector<Matrix> tangent_frames(const Configuration& c) {
    std::vector<Matrix> frames;
    frames.reserve(c.points.size());
    for (const auto& p : c.points) frames.push_back(geometry::tangent_frame(c.surface, p));
    return frames;
}

Configuration displace(const Configuration& c, const std::vector<Matrix>& frames, const Vector& xi) {
    const int m = c.surface.m();
    if (xi.size() != c.n() * m || static_cast<int>(frames.size()) != c.n())
        throw std::invalid_argument("displace: size mismatch");
    Configuration out = c;
    for (int i = 0; i < c.n(); ++i) {
        out.points[i] = geometry::retract(c.surface, c.points[i].coords + frames[i] * xi.segment(i * m, m));
    }
    return out;
}

double pullback_value(const Configuration& c, const std::vector<Matrix>& frames, const Vector& xi) {
    return length_functional(displace(c, frames, xi));
}

Vector pullback_gradient(const Configuration& c, const std::vector<Matrix>& frames, const Vector& xi) {
    const int m = c.surface.m();
    const Configuration moved = displace(c, frames, xi);
    const auto g = ambient_gradient(moved);
    Vector out(c.n() * m);
    for (int i = 0; i < c.n(); ++i) {
        const Vector base = c.points[i].coords + frames[i] * xi.segment(i * m, m);
        const Matrix J = geometry::retraction_jacobian(c.surface, base);
        out.segment(i * m, m) = frames[i].transpose() * (J.transpose() * g[i]);
    }
    return out;
}

Vector frame_gradient(const Configuration& c, const std::vector<Matrix>& frames) {
    const int m = c.surface.m();
    const auto g = ambient_gradient(c);
    Vector out(c.n() * m);
    for (int i = 0; i < c.n(); ++i) out.segment(i * m, m) = frames[i].transpose() * g[i];
    return out;
}

namespace {

Matrix analytic_hessian(const Configuration& c, const std::vector<Matrix>& frames) {
    const int n = c.n();
    const int m = c.surface.m();
    const int dim = c.surface.ambient_dim();
    const Matrix I = Matrix::Identity(dim, dim);
    Matrix H = Matrix::Zero(n * m, n * m);

    // Segment i joins chain points i and i+1; it contributes -|x_i - x_{i+1}|.
    for (int seg = 0; seg <= n; ++seg) {
        const Vector r = c.chain(seg) - c.chain(seg + 1);
        const double rho = r.norm();
        const Vector u = r / rho;
        const Matrix K = (I - u * u.transpose()) / rho;
        const int a = seg - 1;  // reflection index of chain point seg, or -1 for A
        const int b = seg;      // reflection index of chain point seg+1, or n for B
        const bool has_a = a >= 0;
        const bool has_b = b < n;
        if (has_a) H.block(a * m, a * m, m, m) -= frames[a].transpose() * K * frames[a];
        if (has_b) H.block(b * m, b * m, m, m) -= frames[b].transpose() * K * frames[b];
        if (has_a && has_b) {
            const Matrix off = frames[a].transpose() * K * frames[b];
            H.block(a * m, b * m, m, m) += off;
            H.block(b * m, a * m, m, m) += off.transpose();
        }
    }

    // Second-order term of the retraction: grad_i L . D^2R[E v, E w].
    const Matrix Q = geometry::retraction_curvature_form(c.surface);
    const auto g = ambient_gradient(c);
    for (int i = 0; i < n; ++i) {
        const double radial = g[i].dot(c.points[i].coords);
        H.block(i * m, i * m, m, m) -= radial * (frames[i].transpose() * Q * frames[i]);
    }
    return H;
}

Matrix finite_difference_hessian(const Configuration& c, const std::vector<Matrix>& frames) {
    const int dim = c.n() * c.surface.m();
    const double h = 1e-5;
    Matrix H(dim, dim);
    Vector xi = Vector::Zero(dim);
    for (int k = 0; k < dim; ++k) {
        xi[k] = h;
        const Vector plus = pullback_gradient(c, frames, xi);
        xi[k] = -h;
        const Vector minus = pullback_gradient(c, frames, xi);
        xi[k] = 0.0;
        H.col(k) = (plus - minus) / (2.0 * h);
    }
    return 0.5 * (H + H.transpose());
}

}  // namespace

Matrix riemannian_hessian(const Configuration& c, const std::vector<Matrix>& frames, HessianMode mode) {
    require_distinct(c);
    if (static_cast<int>(frames.size()) != c.n()) throw std::invalid_argument("one frame per point required");
    return mode == HessianMode::Analytic ? analytic_hessian(c, frames) : finite_difference_hessian(c, frames);
}

Matrix riemannian_hessian(const Configuration& c, HessianMode mode) {
    return riemannian_hessian(c, tangent_frames(c), mode);
}

}  // namespace billiards::configspace
