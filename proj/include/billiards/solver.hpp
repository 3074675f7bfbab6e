#pragma once

#include "billiards/configspace.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace billiards::solver {

using configspace::Configuration;
using configspace::HessianMode;
using geometry::SurfacePoint;
using geometry::SurfaceSpec;

struct SolveOptions {
    int starts = 200;
    std::uint64_t seed = 0;
    double newton_tol = 1e-10;
    int max_iters = 100;
    double dedup_tol = 1e-6;
    double degenerate_eig_tol = 1e-8;
    HessianMode hessian = HessianMode::Analytic;
    /// 0 means: BILLIARDS_THREADS if set, otherwise the hardware concurrency.
    int threads = 0;

    /// Throws std::invalid_argument on out-of-range values.
    void validate() const;
};

struct CriticalTrajectory {
    Configuration config;
    double value = 0.0;
    double residual = 0.0;
    int morse_index = 0;
    double min_abs_eig = 0.0;
    bool degenerate = false;
    double epsilon_product = 0.0;
};

struct MorseClassification {
    int index = 0;
    double min_abs_eig = 0.0;
    bool degenerate = false;
};

enum class RefineFailure { None, Collision, Divergence, MaxIterations };

std::string to_string(RefineFailure f);

struct RefineResult {
    std::optional<CriticalTrajectory> trajectory;
    RefineFailure failure = RefineFailure::None;
    int iterations = 0;

    bool ok() const { return trajectory.has_value(); }
};

struct SolveResult {
    std::vector<CriticalTrajectory> trajectories;
    /// True when no trajectory has a Hessian eigenvalue within the degeneracy threshold.
    bool generic = true;
    int successful_starts = 0;
    int collisions = 0;
    int divergences = 0;
    int max_iteration_failures = 0;
    std::vector<std::string> warnings;
};

struct CountVerdict {
    int count = 0;
    int bound = 0;
    bool generic = false;
    bool pass = false;
};

/// Lower bound on the number of trajectories from A to B with n reflections
/// inside a strictly convex hypersurface of dimension m.
int lower_bound(int m, int n, bool generic);

MorseClassification classify(const Configuration& c, double degenerate_eig_tol,
                             HessianMode mode = HessianMode::Analytic);

/// Number of Hessian eigenvalues below -degenerate_eig_tol, recomputed from
/// the stored configuration.
int morse_index(const CriticalTrajectory& t, double degenerate_eig_tol = 1e-8);

/// Damped Newton iteration on the gradient of L_X in tangent frames, with
/// every iterate retracted back onto X.
RefineResult newton_refine(const Configuration& start, const SolveOptions& opts);

/// One representative per class of trajectories within tol in max-coordinate
/// distance, sorted by value.
std::vector<CriticalTrajectory> deduplicate(std::vector<CriticalTrajectory> list, double tol);

/// Multistart search for critical points of L_X.  Start s uses an RNG stream
/// seeded from (seed, s), so the result does not depend on the thread count.
SolveResult find_critical_points(const SurfaceSpec& surface, const SurfacePoint& A, const SurfacePoint& B,
                                 int n, const SolveOptions& opts);

/// The s-th starting configuration of find_critical_points.
Configuration starting_configuration(const SurfaceSpec& surface, const SurfacePoint& A,
                                     const SurfacePoint& B, int n, std::uint64_t seed, int s);

CountVerdict verify_count(const SolveResult& result, int m, int n);

/// Thread count from BILLIARDS_THREADS, or the hardware concurrency.
int default_thread_count();

}  // namespace billiards::solver
