#pragma once

#include "billiards/geometry.hpp"

#include <vector>

namespace billiards::oracle {

using geometry::Vector;

/// Closed-form billiard trajectory inside the unit sphere: all reflection
/// points lie on the great circle through A and B, spaced by the arc alpha.
struct SphereTrajectory {
    int k = 0;
    double alpha = 0.0;
    std::vector<Vector> points;
};

/// Angle from A to B in the frame e1 = A, e2 = normalize(B - (A.B) A);
/// always in (0, pi) for distinct, non-antipodal endpoints.
double endpoint_angle(const Vector& A, const Vector& B);

/// All n+1 trajectories from A to B with n reflections, ordered by k,
/// alpha_k = (phi + 2 pi k) / (n + 1).
std::vector<SphereTrajectory> sphere_trajectories(const Vector& A, const Vector& B, int n);

/// A = e_0 and B = cos(phi) e_0 + sin(phi) e_1 in R^{m+1}.
std::pair<Vector, Vector> endpoints_at_angle(int m, double phi);

/// Number of path components of G(S^1; A, B, n).
int circle_component_count(int n);

/// Counts the regions of the open cube (0,1)^n cut by the hyperplanes
/// sum phi_j = psi + k, by sampling cell centres of a grid^n lattice and
/// merging lattice neighbours that lie in the same open region.
int circle_component_count_bruteforce(int n, int grid, double psi);

}  // namespace billiards::oracle
