#include "billiards/configspace.hpp"
#include "billiards/oracle.hpp"
#include "billiards/solver.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace billiards;
using namespace billiards::oracle;

namespace {

Vector v3(double a, double b, double c) { return (Vector(3) << a, b, c).finished(); }

constexpr double kPi = std::numbers::pi;

double angle_in_plane(const Vector& x) {
    double a = std::atan2(x[1], x[0]);
    if (a < 0) a += 2 * kPi;
    return a;
}

}  // namespace

TEST_CASE("sphere_trajectories n=1") {
    const auto t = sphere_trajectories(v3(1, 0, 0), v3(0, 1, 0), 1);
    REQUIRE(t.size() == 2);
    CHECK(t[0].k == 0);
    CHECK(t[0].alpha == doctest::Approx(kPi / 4));
    CHECK(angle_in_plane(t[0].points[0]) == doctest::Approx(kPi / 4).epsilon(1e-14));
    CHECK(t[1].alpha == doctest::Approx(5 * kPi / 4));
    CHECK(angle_in_plane(t[1].points[0]) == doctest::Approx(5 * kPi / 4).epsilon(1e-14));
}

TEST_CASE("sphere_trajectories n=2") {
    const auto t = sphere_trajectories(v3(1, 0, 0), v3(0, 1, 0), 2);
    REQUIRE(t.size() == 3);
    for (int k = 0; k <= 2; ++k) {
        const double alpha = (kPi / 2 + 2 * kPi * k) / 3;
        CHECK(t[k].alpha == doctest::Approx(alpha).epsilon(1e-14));
        for (int j = 1; j <= 2; ++j) {
            const Vector expected = v3(std::cos(j * alpha), std::sin(j * alpha), 0);
            CHECK((t[k].points[j - 1] - expected).cwiseAbs().maxCoeff() < 1e-15);
        }
    }
}

TEST_CASE("count is n+1 and total turning is phi") {
    for (int n = 1; n <= 50; ++n) {
        const auto [A, B] = endpoints_at_angle(3, 1.1);
        const auto t = sphere_trajectories(A, B, n);
        CHECK(t.size() == static_cast<std::size_t>(n + 1));
        for (const auto& tr : t) {
            const double turn = std::remainder((n + 1) * tr.alpha - 1.1, 2 * kPi);
            CHECK(std::abs(turn) < 1e-12);
        }
    }
}

TEST_CASE("oracle trajectories have zero residual") {
    for (int m : {1, 2, 3, 5}) {
        for (double phi : {0.1, kPi / 3, kPi / 2, 2.0, 3.0}) {
            const auto [A, B] = endpoints_at_angle(m, phi);
            CHECK(endpoint_angle(A, B) == doctest::Approx(phi).epsilon(1e-14));
            for (int n = 1; n <= 8; ++n) {
                for (const auto& t : sphere_trajectories(A, B, n)) {
                    const auto c = configspace::make_configuration(geometry::SurfaceSpec::unit_sphere(m), A, B,
                                                                   t.points);
                    CHECK(configspace::reflection_residual(c) <= 1e-10);
                }
            }
        }
    }
}

TEST_CASE("general endpoints use the A,B great circle") {
    Vector A = v3(0.3, -0.5, 0.8).normalized();
    Vector B = v3(-0.7, 0.1, 0.4).normalized();
    const double phi = std::acos(A.dot(B));
    CHECK(endpoint_angle(A, B) == doctest::Approx(phi).epsilon(1e-14));
    const Vector normal = Eigen::Vector3d(A).cross(Eigen::Vector3d(B)).normalized();
    for (const auto& t : sphere_trajectories(A, B, 4)) {
        for (const auto& p : t.points) {
            CHECK(std::abs(p.dot(normal)) < 1e-14);
            CHECK(std::abs(p.norm() - 1.0) < 1e-14);
        }
        // consecutive points on the chain are separated by the arc alpha
        std::vector<Vector> chain{A};
        chain.insert(chain.end(), t.points.begin(), t.points.end());
        chain.push_back(B);
        for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
            const double chord = (chain[i] - chain[i + 1]).norm();
            CHECK(chord == doctest::Approx(2 * std::abs(std::sin(t.alpha / 2))).epsilon(1e-12));
        }
    }
}

TEST_CASE("sphere_trajectories errors") {
    CHECK_THROWS_AS(sphere_trajectories(v3(1, 0, 0), v3(-1, 0, 0), 2), geometry::DomainError);
    CHECK_THROWS_AS(sphere_trajectories(v3(1, 0, 0), v3(1, 0, 0), 2), geometry::DomainError);
    CHECK_THROWS_AS(sphere_trajectories(v3(2, 0, 0), v3(0, 1, 0), 2), geometry::DomainError);
    CHECK_THROWS_AS(sphere_trajectories(v3(1, 0, 0), v3(0, 1, 0), 0), std::invalid_argument);
}

TEST_CASE("circle_component_count") {
    CHECK(circle_component_count(1) == 2);
    CHECK(circle_component_count(3) == 4);
    for (int n = 1; n <= 8; ++n) {
        CHECK(circle_component_count(n) == n + 1);
        CHECK(circle_component_count(n) == solver::lower_bound(1, n, false));
    }
    CHECK_THROWS_AS(circle_component_count(0), std::invalid_argument);
}

TEST_CASE("brute-force region count agrees") {
    for (int n = 1; n <= 4; ++n) CHECK(circle_component_count_bruteforce(n, 20, 0.3) == n + 1);
    CHECK(circle_component_count_bruteforce(2, 40, 0.75) == 3);
    CHECK_THROWS_AS(circle_component_count_bruteforce(2, 20, 1.0), std::invalid_argument);
}
