#include "billiards/oracle.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace billiards::oracle {

namespace {

constexpr double kSeparationTol = 1e-12;

struct GreatCircle {
    Vector e1;
    Vector e2;
    double phi;
};

GreatCircle great_circle(const Vector& A, const Vector& B) {
    if (A.size() != B.size() || A.size() < 2) throw std::invalid_argument("endpoints must share a dimension >= 2");
    if (std::abs(A.norm() - 1.0) > 1e-12 || std::abs(B.norm() - 1.0) > 1e-12)
        throw geometry::DomainError("endpoints must lie on the unit sphere");
    if ((A - B).norm() < kSeparationTol) throw geometry::DomainError("endpoints coincide");
    if ((A + B).norm() < kSeparationTol)
        throw geometry::DomainError("antipodal endpoints: the plane through A, B and the centre is not unique");
    Vector e2 = B - A.dot(B) * A;
    e2.normalize();
    return {A, e2, std::atan2(B.dot(e2), B.dot(A))};
}

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

double endpoint_angle(const Vector& A, const Vector& B) { return great_circle(A, B).phi; }

std::vector<SphereTrajectory> sphere_trajectories(const Vector& A, const Vector& B, int n) {
    if (n < 1) throw std::invalid_argument("number of reflections must be >= 1");
    const GreatCircle circle = great_circle(A, B);
    std::vector<SphereTrajectory> out;
    out.reserve(n + 1);
    for (int k = 0; k <= n; ++k) {
        SphereTrajectory t;
        t.k = k;
        t.alpha = (circle.phi + 2.0 * std::numbers::pi * k) / (n + 1);
        for (int j = 1; j <= n; ++j) {
            t.points.push_back(std::cos(j * t.alpha) * circle.e1 + std::sin(j * t.alpha) * circle.e2);
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::pair<Vector, Vector> endpoints_at_angle(int m, double phi) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    Vector A = Vector::Zero(m + 1);
    Vector B = Vector::Zero(m + 1);
    A[0] = 1.0;
    B[0] = std::cos(phi);
    B[1] = std::sin(phi);
    return {A, B};
}

int circle_component_count(int n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    return n + 1;
}

int circle_component_count_bruteforce(int n, int grid, double psi) {
    if (n < 1 || grid < 2) throw std::invalid_argument("need n >= 1 and grid >= 2");
    if (!(psi > 0.0 && psi < 1.0)) throw std::invalid_argument("psi must lie in (0, 1)");
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(grid);

    // Which open slab (integer part of sum - psi) each lattice point is in;
    // points on a hyperplane are not in the space.
    std::vector<long> slab(total);
    std::vector<bool> inside(total);
    std::vector<int> digits(n);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx;
        double sum = 0.0;
        for (int d = 0; d < n; ++d) {
            digits[d] = static_cast<int>(rest % grid);
            rest /= grid;
            sum += (digits[d] + 0.5) / grid;
        }
        const double t = sum - psi;
        inside[idx] = std::abs(t - std::round(t)) > 1e-9;
        slab[idx] = static_cast<long>(std::floor(t));
    }

    DisjointSets sets(total);
    std::size_t stride = 1;
    for (int d = 0; d < n; ++d) {
        for (std::size_t idx = 0; idx < total; ++idx) {
            if ((idx / stride) % grid == static_cast<std::size_t>(grid - 1)) continue;
            const std::size_t nb = idx + stride;
            if (inside[idx] && inside[nb] && slab[idx] == slab[nb]) sets.unite(idx, nb);
        }
        stride *= grid;
    }

    int regions = 0;
    for (std::size_t idx = 0; idx < total; ++idx) {
        if (inside[idx] && sets.find(idx) == idx) ++regions;
    }
    return regions;
}

}  // namespace billiards::oracle
