#include "billiards/configspace.hpp"
#include "billiards/oracle.hpp"
#include "support.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cmath>
#include <numbers>

using namespace billiards;
using namespace billiards::configspace;
using billiards::testing::random_configuration;
using billiards::testing::random_vector;

namespace {

Vector v3(double a, double b, double c) { return (Vector(3) << a, b, c).finished(); }

Configuration sample_config() {
    return make_configuration(SurfaceSpec::unit_sphere(2), v3(1, 0, 0), v3(0, 1, 0), {v3(-1, 0, 0)});
}

Configuration oracle_config(int m, double phi, int n, int k) {
    const auto [A, B] = oracle::endpoints_at_angle(m, phi);
    const auto traj = oracle::sphere_trajectories(A, B, n);
    return make_configuration(SurfaceSpec::unit_sphere(m), A, B, traj.at(static_cast<std::size_t>(k)).points);
}

Vector stack(const std::vector<Vector>& vs) {
    Vector out(static_cast<Eigen::Index>(vs.size() * vs.front().size()));
    Eigen::Index off = 0;
    for (const auto& v : vs) {
        out.segment(off, v.size()) = v;
        off += v.size();
    }
    return out;
}

Matrix random_rotation(std::mt19937_64& rng, int dim) {
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i) g.col(i) = random_vector(rng, dim);
    Eigen::HouseholderQR<Matrix> qr(g);
    return qr.householderQ();
}

}  // namespace

TEST_CASE("length_functional examples") {
    CHECK(length_functional(sample_config()) == doctest::Approx(-(2 + std::sqrt(2.0))).epsilon(1e-14));
    const auto c2 = make_configuration(SurfaceSpec::unit_sphere(2), v3(1, 0, 0), v3(-1, 0, 0), {v3(0, 1, 0)});
    CHECK(length_functional(c2) == doctest::Approx(-2 * std::sqrt(2.0)).epsilon(1e-14));
    // chord of arc pi/4, twice
    const auto c3 = oracle_config(2, std::numbers::pi / 2, 1, 0);
    CHECK(length_functional(c3) == doctest::Approx(-4 * std::sin(std::numbers::pi / 8)).epsilon(1e-14));
}

TEST_CASE("configuration validity") {
    const auto s = SurfaceSpec::unit_sphere(2);
    CHECK_THROWS_AS(make_configuration(s, v3(1, 0, 0), v3(0, 1, 0), {v3(1, 0, 0)}), geometry::DomainError);
    CHECK_THROWS_AS(make_configuration(s, v3(1, 0, 0), v3(1, 0, 0), {v3(0, 0, 1)}), geometry::DomainError);
    CHECK_THROWS_AS(make_configuration(s, v3(1, 0, 0), v3(0, 1, 0), {v3(0, 1, 0)}), geometry::DomainError);
    CHECK_THROWS_AS(make_configuration(s, v3(1, 0, 0), v3(0, 1, 0), {v3(0, 0, 2)}), geometry::DomainError);
    CHECK_THROWS_AS(make_configuration(s, v3(1, 0, 0), v3(0, 1, 0), {}), std::invalid_argument);
    const auto c = make_configuration(s, v3(1, 0, 0), v3(0, 1, 0), {v3(0, 0, 1), v3(0, 0, -1)});
    CHECK(c.n() == 2);
    CHECK(c.chain(0) == v3(1, 0, 0));
    CHECK(c.chain(3) == v3(0, 1, 0));
}

TEST_CASE("riemannian_gradient and reflection_residual examples") {
    const auto c = sample_config();
    const auto g = riemannian_gradient(c);
    REQUIRE(g.size() == 1);
    CHECK(g[0].norm() == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-14));
    CHECK(std::abs(g[0].dot(c.points[0].coords)) < 1e-15);
    CHECK(reflection_residual(c) == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-14));
}

TEST_CASE("oracle trajectories are critical") {
    for (int m : {2, 3}) {
        for (double phi : {std::numbers::pi / 3, std::numbers::pi / 2, 2.0}) {
            for (int n = 1; n <= 6; ++n) {
                for (int k = 0; k <= n; ++k) {
                    const auto c = oracle_config(m, phi, n, k);
                    CHECK(reflection_residual(c) <= 1e-10);
                    for (const auto& g : riemannian_gradient(c)) CHECK(g.norm() <= 1e-10);
                }
            }
        }
    }
}

TEST_CASE("epsilon_product examples") {
    CHECK(epsilon_product(sample_config()) == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-14));
    const auto c2 = make_configuration(SurfaceSpec::unit_sphere(2), v3(1, 0, 0), v3(-1, 0, 0), {v3(0, 1, 0)});
    CHECK(epsilon_product(c2) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("epsilon_product scales with the axes") {
    std::mt19937_64 rng(5);
    const std::vector<double> axes{1.0, 1.15, 0.9};
    const double lambda = 1.7;
    std::vector<double> scaled;
    for (double a : axes) scaled.push_back(lambda * a);
    for (int n = 1; n <= 4; ++n) {
        const auto c = random_configuration(rng, SurfaceSpec::ellipsoid(axes), n);
        std::vector<Vector> pts;
        for (const auto& p : c.points) pts.push_back(lambda * p.coords);
        const auto cs = make_configuration(SurfaceSpec::ellipsoid(scaled), lambda * c.A.coords,
                                           lambda * c.B.coords, pts);
        CHECK(epsilon_product(cs) == doctest::Approx(std::pow(lambda, n + 1) * epsilon_product(c)).epsilon(1e-12));
        CHECK(epsilon_product(c) > 0.0);
    }
}

TEST_CASE("gradient matches finite differences of the functional") {
    std::mt19937_64 rng(6);
    const double h = 1e-5;
    int checked = 0;
    for (const auto& s : {SurfaceSpec::unit_sphere(2), SurfaceSpec::ellipsoid({1.0, 1.15, 0.9}),
                          SurfaceSpec::ellipsoid({1.0, 0.8, 1.2, 0.7})}) {
        for (int t = 0; t < 34; ++t) {
            const int n = 1 + t % 4;
            const auto c = random_configuration(rng, s, n);
            const auto frames = tangent_frames(c);
            const Vector g = frame_gradient(c, frames);
            Vector fd(g.size());
            for (Eigen::Index k = 0; k < g.size(); ++k) {
                const Vector e = Vector::Unit(g.size(), k);
                fd[k] = (pullback_value(c, frames, h * e) - pullback_value(c, frames, -h * e)) / (2 * h);
            }
            CHECK((fd - g).norm() <= 1e-6 * g.norm());
            ++checked;
        }
    }
    CHECK(checked >= 100);
}

TEST_CASE("frame gradient is the Riemannian gradient in the frames") {
    std::mt19937_64 rng(7);
    const auto s = SurfaceSpec::ellipsoid({1.0, 1.15, 0.9});
    for (int t = 0; t < 20; ++t) {
        const auto c = random_configuration(rng, s, 3);
        const auto frames = tangent_frames(c);
        const Vector g = frame_gradient(c, frames);
        const auto rg = riemannian_gradient(c);
        for (int i = 0; i < 3; ++i) CHECK((frames[i] * g.segment(2 * i, 2) - rg[i]).norm() < 1e-12);
        CHECK((pullback_gradient(c, frames, Vector::Zero(6)) - g).norm() < 1e-12);
    }
}

TEST_CASE("residual and gradient norm are comparable") {
    std::mt19937_64 rng(8);
    const auto s = SurfaceSpec::ellipsoid({1.0, 1.15, 0.9});
    for (int t = 0; t < 50; ++t) {
        const int n = 1 + t % 5;
        const auto c = random_configuration(rng, s, n);
        const Vector g = stack(riemannian_gradient(c));
        const double r = reflection_residual(c);
        CHECK(r <= g.norm() + 1e-12);
        CHECK(g.norm() <= std::sqrt(static_cast<double>(n)) * r + 1e-12);
    }
}

TEST_CASE("hessian is symmetric and matches finite differences of the gradient") {
    std::mt19937_64 rng(9);
    const double h = 1e-5;
    for (const auto& s : {SurfaceSpec::unit_sphere(2), SurfaceSpec::ellipsoid({1.0, 1.15, 0.9}),
                          SurfaceSpec::ellipsoid({1.0, 0.8, 1.2, 0.7})}) {
        for (int t = 0; t < 20; ++t) {
            const int n = 1 + t % 4;
            const auto c = random_configuration(rng, s, n);
            const auto frames = tangent_frames(c);
            const Matrix H = riemannian_hessian(c, frames, HessianMode::Analytic);
            CHECK((H - H.transpose()).cwiseAbs().maxCoeff() <= 1e-8);
            Matrix fd(H.rows(), H.cols());
            for (Eigen::Index k = 0; k < H.cols(); ++k) {
                const Vector e = Vector::Unit(H.cols(), k);
                fd.col(k) = (pullback_gradient(c, frames, h * e) - pullback_gradient(c, frames, -h * e)) / (2 * h);
            }
            CHECK((fd - H).norm() <= 1e-5 * H.norm());
            const Matrix Hfd = riemannian_hessian(c, frames, HessianMode::FiniteDifference);
            CHECK((Hfd - H).norm() <= 1e-5 * H.norm());
        }
    }
}

TEST_CASE("hessian at the quarter-turn sphere trajectory is nondegenerate") {
    const auto c = oracle_config(2, std::numbers::pi / 2, 1, 0);
    const Matrix H = riemannian_hessian(c);
    Eigen::SelfAdjointEigenSolver<Matrix> es(H);
    CHECK(es.eigenvalues().cwiseAbs().minCoeff() > 1e-3);
}

TEST_CASE("functional is invariant under rotations") {
    std::mt19937_64 rng(10);
    const std::vector<double> axes{1.0, 1.15, 0.9};
    for (int t = 0; t < 20; ++t) {
        const Matrix R = random_rotation(rng, 3);
        // A rotated ellipsoid has no axis-aligned SurfaceSpec, so rotate the
        // chain and recompute the lengths directly for the ellipsoid, and use
        // the sphere for the full round trip.
        const auto c = random_configuration(rng, SurfaceSpec::ellipsoid(axes), 1 + t % 4);
        double rotated = 0.0;
        for (int i = 0; i <= c.n(); ++i) rotated -= (R * c.chain(i) - R * c.chain(i + 1)).norm();
        CHECK(std::abs(rotated - length_functional(c)) <= 1e-12);

        const auto s = SurfaceSpec::unit_sphere(2);
        const auto cs = random_configuration(rng, s, 1 + t % 4);
        std::vector<Vector> pts;
        for (const auto& p : cs.points) pts.push_back(R * p.coords);
        const auto rs = make_configuration(s, R * cs.A.coords, R * cs.B.coords, pts);
        CHECK(std::abs(length_functional(rs) - length_functional(cs)) <= 1e-12);
        CHECK(std::abs(reflection_residual(rs) - reflection_residual(cs)) <= 1e-12);
    }
}
