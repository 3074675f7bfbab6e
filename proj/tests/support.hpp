#pragma once

#include "billiards/configspace.hpp"

#include <random>

namespace billiards::testing {

inline geometry::Vector random_vector(std::mt19937_64& rng, int dim) {
    std::normal_distribution<double> g(0.0, 1.0);
    geometry::Vector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = g(rng);
    return v;
}

inline geometry::Vector random_surface_point(std::mt19937_64& rng, const geometry::SurfaceSpec& s) {
    return geometry::retract(s, random_vector(rng, s.ambient_dim())).coords;
}

/// Random configuration whose consecutive points are at least `gap` apart.
inline configspace::Configuration random_configuration(std::mt19937_64& rng, const geometry::SurfaceSpec& s, int n,
                                                       double gap = 0.2) {
    for (;;) {
        const geometry::Vector A = random_surface_point(rng, s);
        const geometry::Vector B = random_surface_point(rng, s);
        std::vector<geometry::Vector> pts;
        for (int i = 0; i < n; ++i) pts.push_back(random_surface_point(rng, s));
        auto c = configspace::make_configuration(s, A, B, pts);
        bool ok = (A - B).norm() > gap;
        for (int i = 0; i <= n; ++i) ok = ok && (c.chain(i) - c.chain(i + 1)).norm() > gap;
        if (ok) return c;
    }
}

inline double max_coord_distance(const geometry::Vector& a, const geometry::Vector& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace billiards::testing
