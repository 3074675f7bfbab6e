#include "billiards/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

namespace billiards::solver {

using configspace::Matrix;
using configspace::Vector;

void SolveOptions::validate() const {
    if (starts < 1) throw std::invalid_argument("starts must be >= 1");
    if (!(newton_tol > 0.0)) throw std::invalid_argument("newton_tol must be > 0");
    if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
    if (!(dedup_tol > 0.0)) throw std::invalid_argument("dedup_tol must be > 0");
    if (!(degenerate_eig_tol > 0.0)) throw std::invalid_argument("degenerate_eig_tol must be > 0");
    if (threads < 0) throw std::invalid_argument("threads must be >= 0");
}

std::string to_string(RefineFailure f) {
    switch (f) {
        case RefineFailure::None: return "none";
        case RefineFailure::Collision: return "collision";
        case RefineFailure::Divergence: return "divergence";
        case RefineFailure::MaxIterations: return "max-iterations";
    }
    return "unknown";
}

int lower_bound(int m, int n, bool generic) {
    if (m < 1 || n < 1) throw std::invalid_argument("lower_bound needs m >= 1 and n >= 1");
    if (generic || m % 2 == 1) return n + 1;
    return (n + 1) / 2 + 1;
}

MorseClassification classify(const Configuration& c, double degenerate_eig_tol, HessianMode mode) {
    const Matrix H = configspace::riemannian_hessian(c, mode);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(H, Eigen::EigenvaluesOnly);
    MorseClassification out;
    out.min_abs_eig = std::numeric_limits<double>::infinity();
    for (int i = 0; i < eig.eigenvalues().size(); ++i) {
        const double lambda = eig.eigenvalues()[i];
        if (lambda < -degenerate_eig_tol) ++out.index;
        out.min_abs_eig = std::min(out.min_abs_eig, std::abs(lambda));
    }
    out.degenerate = out.min_abs_eig <= degenerate_eig_tol;
    return out;
}

int morse_index(const CriticalTrajectory& t, double degenerate_eig_tol) {
    return classify(t.config, degenerate_eig_tol).index;
}

namespace {

Vector newton_step(const Matrix& H, const Vector& g) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(H);
    const Vector& lambda = eig.eigenvalues();
    const double scale = lambda.cwiseAbs().maxCoeff();
    const Vector coeffs = eig.eigenvectors().transpose() * g;
    Vector step = Vector::Zero(g.size());
    for (int i = 0; i < lambda.size(); ++i) {
        if (std::abs(lambda[i]) > 1e-14 * scale) step -= (coeffs[i] / lambda[i]) * eig.eigenvectors().col(i);
    }
    return step;
}

CriticalTrajectory finish(const Configuration& c, double residual, const SolveOptions& opts) {
    const MorseClassification morse = classify(c, opts.degenerate_eig_tol, opts.hessian);
    CriticalTrajectory t{c, configspace::length_functional(c), residual, morse.index,
                         morse.min_abs_eig, morse.degenerate, configspace::epsilon_product(c)};
    return t;
}

}  // namespace

RefineResult newton_refine(const Configuration& start, const SolveOptions& opts) {
    RefineResult out;
    if (!configspace::consecutive_distinct(start)) {
        out.failure = RefineFailure::Collision;
        return out;
    }
    const int m = start.surface.m();
    // Largest tangent move of a single point per iteration.
    const double max_move = *std::min_element(start.surface.axes().begin(), start.surface.axes().end());

    Configuration current = start;
    for (int iter = 0; iter <= opts.max_iters; ++iter) {
        const double residual = configspace::reflection_residual(current);
        if (residual <= opts.newton_tol) {
            out.iterations = iter;
            out.trajectory = finish(current, residual, opts);
            return out;
        }
        if (iter == opts.max_iters) break;

        const auto frames = configspace::tangent_frames(current);
        const Vector g = configspace::frame_gradient(current, frames);
        const double gnorm = g.norm();
        Vector step = newton_step(configspace::riemannian_hessian(current, frames, opts.hessian), g);
        double longest = 0.0;
        for (int i = 0; i < current.n(); ++i) longest = std::max(longest, step.segment(i * m, m).norm());
        if (longest > max_move) step *= max_move / longest;

        bool accepted = false;
        bool collided = false;
        double t = 1.0;
        for (int halving = 0; halving <= 30; ++halving, t *= 0.5) {
            Configuration trial = configspace::displace(current, frames, t * step);
            if (!configspace::consecutive_distinct(trial)) {
                collided = true;
                continue;
            }
            const double trial_norm = configspace::frame_gradient(trial, configspace::tangent_frames(trial)).norm();
            if (trial_norm < gnorm) {
                current = std::move(trial);
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            out.iterations = iter + 1;
            out.failure = collided ? RefineFailure::Collision : RefineFailure::Divergence;
            return out;
        }
    }
    out.iterations = opts.max_iters;
    out.failure = RefineFailure::MaxIterations;
    return out;
}

namespace {

double max_coordinate_distance(const Configuration& a, const Configuration& b) {
    double worst = 0.0;
    for (int i = 0; i < a.n(); ++i) {
        worst = std::max(worst, (a.points[i].coords - b.points[i].coords).cwiseAbs().maxCoeff());
    }
    return worst;
}

bool precedes(const CriticalTrajectory& a, const CriticalTrajectory& b) {
    if (a.value != b.value) return a.value < b.value;
    for (int i = 0; i < a.config.n(); ++i) {
        const Vector& x = a.config.points[i].coords;
        const Vector& y = b.config.points[i].coords;
        for (int k = 0; k < x.size(); ++k) {
            if (x[k] != y[k]) return x[k] < y[k];
        }
    }
    return false;
}

}  // namespace

std::vector<CriticalTrajectory> deduplicate(std::vector<CriticalTrajectory> list, double tol) {
    std::stable_sort(list.begin(), list.end(), precedes);
    std::vector<CriticalTrajectory> kept;
    for (auto& t : list) {
        if (!kept.empty() && kept.front().config.n() != t.config.n())
            throw std::invalid_argument("deduplicate: trajectories with different n");
        const bool seen = std::any_of(kept.begin(), kept.end(), [&](const CriticalTrajectory& k) {
            return max_coordinate_distance(k.config, t.config) <= tol;
        });
        if (!seen) kept.push_back(std::move(t));
    }
    return kept;
}

Configuration starting_configuration(const SurfaceSpec& surface, const SurfacePoint& A, const SurfacePoint& B,
                                     int n, std::uint64_t seed, int s) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(s)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int dim = surface.ambient_dim();
    auto gaussian = [&] {
        Vector v(dim);
        for (int k = 0; k < dim; ++k) v[k] = normal(rng);
        return v;
    };

    Configuration c{surface, A, B, {}};
    c.points.reserve(n);

    if (s % 2 == 1) {
        for (int j = 0; j < n; ++j) c.points.push_back(geometry::retract(surface, gaussian()));
        return c;
    }

    // Planar seed: equally spaced points on the circle through the directions
    // of A and B, with the plane tilted about A by a random angle.
    const Vector e1 = A.coords.normalized();
    Vector e2 = B.coords - e1.dot(B.coords) * e1;
    if (e2.norm() < 1e-12) {
        e2 = gaussian();
        e2 -= e1.dot(e2) * e1;
    }
    e2.normalize();
    const double phi = std::atan2(B.coords.dot(e2), B.coords.dot(e1));
    std::uniform_int_distribution<int> pick_k(0, n);
    const int k = pick_k(rng);
    double alpha = (phi + 2.0 * std::numbers::pi * k) / (n + 1);
    // Perturbations shrink with the chord between neighbours so that tightly
    // packed seeds keep their order.
    const double scale = std::min(1.0, 2.0 * std::abs(std::sin(alpha / 2.0)));
    alpha += 0.05 * scale * normal(rng) / (n + 1);
    if (dim > 2) {
        Vector w = gaussian();
        w -= e1.dot(w) * e1;
        w -= e2.dot(w) * e2;
        if (w.norm() > 1e-12) {
            const double tilt = 0.3 * scale * normal(rng);
            e2 = std::cos(tilt) * e2 + std::sin(tilt) * w.normalized();
        }
    }
    for (int j = 1; j <= n; ++j) {
        Vector p = std::cos(j * alpha) * e1 + std::sin(j * alpha) * e2 + 0.02 * scale * gaussian();
        c.points.push_back(geometry::retract(surface, p));
    }
    return c;
}

int default_thread_count() {
    if (const char* env = std::getenv("BILLIARDS_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

SolveResult find_critical_points(const SurfaceSpec& surface, const SurfacePoint& A, const SurfacePoint& B, int n,
                                 const SolveOptions& opts) {
    opts.validate();
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (A.coords.size() != surface.ambient_dim() || B.coords.size() != surface.ambient_dim())
        throw std::invalid_argument("endpoint dimension does not match the surface");
    if (std::abs(geometry::surface_residual(surface, A.coords)) > geometry::kOnSurfaceTol ||
        std::abs(geometry::surface_residual(surface, B.coords)) > geometry::kOnSurfaceTol)
        throw geometry::DomainError("endpoints must lie on the surface");
    if ((A.coords - B.coords).norm() <= configspace::kDistinctTol) throw geometry::DomainError("A and B coincide");

    std::vector<RefineResult> runs(opts.starts);
    int threads = opts.threads > 0 ? opts.threads : default_thread_count();
    threads = std::min(threads, opts.starts);
    auto work = [&](int tid) {
        for (int s = tid; s < opts.starts; s += threads) {
            runs[s] = newton_refine(starting_configuration(surface, A, B, n, opts.seed, s), opts);
        }
    };
    if (threads <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }

    SolveResult result;
    std::vector<CriticalTrajectory> found;
    for (auto& run : runs) {
        switch (run.failure) {
            case RefineFailure::None:
                ++result.successful_starts;
                found.push_back(std::move(*run.trajectory));
                break;
            case RefineFailure::Collision: ++result.collisions; break;
            case RefineFailure::Divergence: ++result.divergences; break;
            case RefineFailure::MaxIterations: ++result.max_iteration_failures; break;
        }
    }
    if (found.empty()) result.warnings.push_back("no start converged to a critical point");

    result.trajectories = deduplicate(std::move(found), opts.dedup_tol);
    result.generic = std::none_of(result.trajectories.begin(), result.trajectories.end(),
                                  [](const CriticalTrajectory& t) { return t.degenerate; });
    return result;
}

CountVerdict verify_count(const SolveResult& result, int m, int n) {
    CountVerdict v;
    v.count = static_cast<int>(result.trajectories.size());
    v.generic = !result.trajectories.empty() && result.generic;
    v.bound = lower_bound(m, n, v.generic);
    v.pass = v.count >= v.bound;
    return v;
}

}  // namespace billiards::solver
