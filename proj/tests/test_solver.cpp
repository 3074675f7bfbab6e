#include "billiards/oracle.hpp"
#include "billiards/solver.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace billiards;
using namespace billiards::solver;
using billiards::testing::max_coord_distance;
using billiards::testing::random_vector;
using geometry::Vector;

namespace {

Vector v3(double a, double b, double c) { return (Vector(3) << a, b, c).finished(); }

Configuration oracle_config(int m, double phi, int n, int k) {
    const auto [A, B] = oracle::endpoints_at_angle(m, phi);
    const auto traj = oracle::sphere_trajectories(A, B, n);
    return configspace::make_configuration(SurfaceSpec::unit_sphere(m), A, B,
                                           traj.at(static_cast<std::size_t>(k)).points);
}

double distance(const Configuration& a, const Configuration& b) {
    double worst = 0.0;
    for (int i = 0; i < a.n(); ++i) worst = std::max(worst, max_coord_distance(a.points[i].coords, b.points[i].coords));
    return worst;
}

SolveResult solve_sphere(int m, const Vector& A, const Vector& B, int n, int starts, std::uint64_t seed,
                         int threads = 1) {
    const auto s = SurfaceSpec::unit_sphere(m);
    SolveOptions opts;
    opts.starts = starts;
    opts.seed = seed;
    opts.threads = threads;
    return find_critical_points(s, geometry::make_surface_point(s, A), geometry::make_surface_point(s, B), n, opts);
}

}  // namespace

TEST_CASE("lower_bound examples") {
    CHECK(lower_bound(3, 5, false) == 6);
    CHECK(lower_bound(2, 5, false) == 4);
    CHECK(lower_bound(2, 5, true) == 6);
    CHECK(lower_bound(2, 4, false) == 3);
    CHECK(lower_bound(1, 3, false) == 4);
    CHECK_THROWS_AS(lower_bound(0, 3, false), std::invalid_argument);
}

TEST_CASE("options are validated") {
    SolveOptions o;
    CHECK_NOTHROW(o.validate());
    o.starts = 0;
    CHECK_THROWS_AS(o.validate(), std::invalid_argument);
    o = SolveOptions{};
    o.newton_tol = 0.0;
    CHECK_THROWS_AS(o.validate(), std::invalid_argument);
    o = SolveOptions{};
    o.dedup_tol = -1.0;
    CHECK_THROWS_AS(o.validate(), std::invalid_argument);
}

TEST_CASE("newton from an oracle trajectory stays put") {
    for (int n = 1; n <= 5; ++n) {
        for (int k = 0; k <= n; ++k) {
            const auto c = oracle_config(2, std::numbers::pi / 2, n, k);
            const RefineResult r = newton_refine(c, SolveOptions{});
            REQUIRE(r.ok());
            CHECK(r.iterations <= 2);
            CHECK(distance(r.trajectory->config, c) <= 1e-10);
        }
    }
}

TEST_CASE("newton from a perturbed oracle trajectory returns to it") {
    std::mt19937_64 rng(21);
    for (int n = 1; n <= 4; ++n) {
        for (int k = 0; k <= n; ++k) {
            const auto c = oracle_config(2, 2.0, n, k);
            Configuration start = c;
            for (auto& p : start.points) {
                Vector t = geometry::project_to_tangent(c.surface, p, random_vector(rng, 3));
                p = geometry::retract(c.surface, p.coords + 1e-2 * t.normalized());
            }
            const RefineResult r = newton_refine(start, SolveOptions{});
            REQUIRE(r.ok());
            CHECK(r.trajectory->residual <= 1e-10);
            CHECK(distance(r.trajectory->config, c) <= 1e-8);
        }
    }
}

TEST_CASE("newton reports a collision for coincident neighbours") {
    const auto s = SurfaceSpec::unit_sphere(2);
    const Vector x = v3(0, 0, 1);
    const Vector y = geometry::retract(s, v3(1e-10, 0, 1)).coords;
    Configuration c{s, {v3(1, 0, 0)}, {v3(0, 1, 0)}, {{x}, {y}}};
    const RefineResult r = newton_refine(c, SolveOptions{});
    CHECK_FALSE(r.ok());
    CHECK(r.failure == RefineFailure::Collision);
    CHECK(to_string(r.failure) == "collision");
}

TEST_CASE("newton reports max iterations") {
    SolveOptions o;
    o.max_iters = 1;
    std::mt19937_64 rng(22);
    const auto s = SurfaceSpec::ellipsoid({1.0, 1.15, 0.9});
    const auto c = billiards::testing::random_configuration(rng, s, 4);
    REQUIRE(configspace::reflection_residual(c) > 1e-3);
    const RefineResult r = newton_refine(c, o);
    CHECK_FALSE(r.ok());
    CHECK(r.failure == RefineFailure::MaxIterations);
    CHECK(to_string(r.failure) == "max-iterations");
}

TEST_CASE("sphere n=2 gives three planar trajectories with arcs (pi/2 + 2 pi k)/3") {
    const SolveResult r = solve_sphere(2, v3(1, 0, 0), v3(0, 1, 0), 2, 200, 0);
    REQUIRE(r.trajectories.size() == 3);
    const auto expected = oracle::sphere_trajectories(v3(1, 0, 0), v3(0, 1, 0), 2);
    for (const auto& e : expected) {
        const bool matched = std::any_of(r.trajectories.begin(), r.trajectories.end(), [&](const CriticalTrajectory& t) {
            double d = 0.0;
            for (int i = 0; i < 2; ++i) d = std::max(d, max_coord_distance(t.config.points[i].coords, e.points[i]));
            return d <= 1e-8;
        });
        CHECK(matched);
    }
    for (const auto& t : r.trajectories) {
        for (const auto& p : t.config.points) CHECK(std::abs(p.coords[2]) <= 1e-8);
        CHECK(t.residual <= 1e-10);
        CHECK(t.epsilon_product > 0.0);
    }
    std::vector<int> indices;
    for (const auto& t : r.trajectories) indices.push_back(t.morse_index);
    std::sort(indices.begin(), indices.end());
    CHECK(indices == std::vector<int>{0, 1, 2});
}

TEST_CASE("sphere n=1 gives x_1 at angles pi/4 and 5 pi/4") {
    const SolveResult r = solve_sphere(2, v3(1, 0, 0), v3(0, 1, 0), 1, 200, 0);
    REQUIRE(r.trajectories.size() == 2);
    std::vector<double> angles;
    for (const auto& t : r.trajectories) {
        const Vector& x = t.config.points[0].coords;
        double a = std::atan2(x[1], x[0]);
        if (a < 0) a += 2 * std::numbers::pi;
        angles.push_back(a);
    }
    std::sort(angles.begin(), angles.end());
    CHECK(angles[0] == doctest::Approx(std::numbers::pi / 4).epsilon(1e-9));
    CHECK(angles[1] == doctest::Approx(5 * std::numbers::pi / 4).epsilon(1e-9));
    std::vector<int> indices{r.trajectories[0].morse_index, r.trajectories[1].morse_index};
    std::sort(indices.begin(), indices.end());
    CHECK(indices == std::vector<int>{0, 1});
    CHECK(r.generic);
}

TEST_CASE("minimum of the functional has index 0") {
    const SolveResult r = solve_sphere(3, oracle::endpoints_at_angle(3, 1.0).first,
                                       oracle::endpoints_at_angle(3, 1.0).second, 3, 100, 3);
    REQUIRE(!r.trajectories.empty());
    // sorted by value, so the front is the lowest critical value found
    CHECK(r.trajectories.front().morse_index == 0);
    CHECK(morse_index(r.trajectories.front()) == 0);
}

TEST_CASE("deduplicate") {
    const auto c0 = oracle_config(2, std::numbers::pi / 2, 1, 0);
    const auto c1 = oracle_config(2, std::numbers::pi / 2, 1, 1);
    const RefineResult r0 = newton_refine(c0, SolveOptions{});
    const RefineResult r1 = newton_refine(c1, SolveOptions{});
    REQUIRE(r0.ok());
    REQUIRE(r1.ok());

    CHECK(deduplicate(std::vector<CriticalTrajectory>{}, 1e-6).empty());

    CriticalTrajectory copy = *r0.trajectory;
    copy.config.points[0].coords[0] += 1e-12;
    CHECK(deduplicate({*r0.trajectory, copy}, 1e-6).size() == 1);

    const auto both = deduplicate({*r1.trajectory, *r0.trajectory}, 1e-6);
    CHECK(both.size() == 2);
    CHECK(both[0].value <= both[1].value);
    const auto reversed = deduplicate({*r0.trajectory, *r1.trajectory}, 1e-6);
    CHECK(distance(both[0].config, reversed[0].config) == 0.0);
    CHECK(deduplicate(both, 1e-6).size() == 2);
}

TEST_CASE("verify_count") {
    SolveResult r = solve_sphere(2, v3(1, 0, 0), v3(0, 1, 0), 4, 200, 1);
    CountVerdict v = verify_count(r, 2, 4);
    CHECK(v.count == 5);
    CHECK(v.pass);
    CHECK(lower_bound(2, 4, false) == 3);

    const auto [A, B] = oracle::endpoints_at_angle(3, 1.2);
    r = solve_sphere(3, A, B, 3, 200, 1);
    v = verify_count(r, 3, 3);
    CHECK(v.count == 4);
    CHECK(v.bound == 4);
    CHECK(v.pass);

    SolveResult few = r;
    few.trajectories.erase(few.trajectories.begin() + 2, few.trajectories.end());
    few.generic = false;
    const CountVerdict bad = verify_count(few, 2, 4);
    CHECK(bad.count == 2);
    CHECK(bad.bound == 3);
    CHECK_FALSE(bad.pass);
}

TEST_CASE("solver is deterministic and independent of the thread count") {
    const auto s = SurfaceSpec::ellipsoid({1.0, 1.15, 0.9});
    const auto A = geometry::retract(s, v3(0.6, 0.7, 0.3));
    const auto B = geometry::retract(s, v3(-0.2, 0.5, -0.8));
    SolveOptions o;
    o.starts = 60;
    o.seed = 42;
    o.threads = 1;
    const SolveResult a = find_critical_points(s, A, B, 3, o);
    const SolveResult b = find_critical_points(s, A, B, 3, o);
    o.threads = 4;
    const SolveResult c = find_critical_points(s, A, B, 3, o);
    REQUIRE(a.trajectories.size() == b.trajectories.size());
    REQUIRE(a.trajectories.size() == c.trajectories.size());
    for (std::size_t i = 0; i < a.trajectories.size(); ++i) {
        CHECK(distance(a.trajectories[i].config, b.trajectories[i].config) == 0.0);
        CHECK(distance(a.trajectories[i].config, c.trajectories[i].config) == 0.0);
        CHECK(a.trajectories[i].value == c.trajectories[i].value);
    }
    CHECK(a.successful_starts == c.successful_starts);
}

TEST_CASE("starting configurations are reproducible") {
    const auto s = SurfaceSpec::unit_sphere(2);
    const auto A = geometry::make_surface_point(s, v3(1, 0, 0));
    const auto B = geometry::make_surface_point(s, v3(0, 1, 0));
    for (int k = 0; k < 6; ++k) {
        const auto c1 = starting_configuration(s, A, B, 3, 9, k);
        const auto c2 = starting_configuration(s, A, B, 3, 9, k);
        CHECK(distance(c1, c2) == 0.0);
        for (const auto& p : c1.points) CHECK(std::abs(geometry::surface_residual(s, p.coords)) <= 1e-12);
    }
    CHECK(distance(starting_configuration(s, A, B, 3, 9, 0), starting_configuration(s, A, B, 3, 10, 0)) > 0.0);
}

TEST_CASE("find_critical_points rejects bad endpoints") {
    const auto s = SurfaceSpec::unit_sphere(2);
    const auto A = geometry::make_surface_point(s, v3(1, 0, 0));
    CHECK_THROWS_AS(find_critical_points(s, A, A, 2, SolveOptions{}), geometry::DomainError);
    CHECK_THROWS_AS(find_critical_points(s, A, {v3(2, 0, 0)}, 2, SolveOptions{}), geometry::DomainError);
    CHECK_THROWS_AS(find_critical_points(s, A, {v3(0, 1, 0)}, 0, SolveOptions{}), std::invalid_argument);
}
