#pragma once

#include "billiards/dga.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace billiards::leray {

using dga::AlgebraElement;
using dga::AlgebraParams;
using dga::Field;
using dga::FieldScalar;

/// Largest E_m basis the cohomology routines accept.
inline constexpr std::size_t kDefaultMaxBasis = 200000;

/// Total degree -> dimension.  Degrees with dimension zero are omitted.
using DegreeDims = std::map<int, std::size_t>;

/// Thrown when a computation would exceed the configured basis cap.
class ResourceLimit : public std::length_error {
public:
    using std::length_error::length_error;
};

AlgebraParams sphere_params(int m, int n, Field field);
AlgebraParams euclidean_params(int m, int n, Field field);

/// Dimensions of H^*(E_m, d_m) from exact ranks of the differential in each
/// total degree.
DegreeDims cohomology_dims(int m, int n, Field field, std::size_t max_basis = kDefaultMaxBasis);

/// Matrix of d : E^t -> E^{t+1} in the canonical monomial bases, as a dense
/// integer matrix (rows index degree t+1).
std::vector<std::vector<long>> differential_matrix(const AlgebraParams& params, int t);

/// beta_i = s_i - s_{i-1} + ... + (-1)^i s_0.
AlgebraElement beta(const AlgebraParams& params, int i);

/// Cocycle representing the additive generator sigma_i of degree i(m-1).
AlgebraElement sigma_class(int m, int n, int i, Field field = Field::rationals());

/// Result of writing a cocycle x of degree k(m-1) as c * sigma_k + d(w).
struct ClassDecomposition {
    /// nullopt when degree k(m-1) carries no cohomology (k > n).
    std::optional<FieldScalar> coefficient;
    AlgebraElement witness;
};

/// Throws std::logic_error (with the offending element) if x is not of that
/// form.
ClassDecomposition decompose_class(const AlgebraElement& x, int k);

/// sigma_i sigma_j = c sigma_{i+j}; nullopt ("zero group") when i + j > n.
std::optional<FieldScalar> cup_constant(int m, int n, int i, int j, Field field = Field::rationals());
ClassDecomposition cup_product(int m, int n, int i, int j, Field field = Field::rationals());

/// Product law for the sigma classes: binomial(i+j, i) for odd m;
/// [(i+j)/2]! / ([i/2]! [j/2]!) for even m unless i and j are both odd.
std::optional<FieldScalar> expected_cup_constant(int m, int n, int i, int j, Field field);

struct Verdicts {
    bool poincare_ok = false;
    bool products_ok = false;
    bool cuplength_ok = false;
    bool sigma_cocycles_ok = false;

    bool all() const { return poincare_ok && products_ok && cuplength_ok && sigma_cocycles_ok; }
};

struct ProductEntry {
    int i = 0;
    int j = 0;
    std::optional<FieldScalar> constant;
};

struct CohomologyReport {
    int m = 0;
    int n = 0;
    Field field{};
    DegreeDims dims;
    /// Coefficient of t^d for d = 0 .. highest nonzero degree.
    std::vector<std::size_t> poincare;
    std::vector<ProductEntry> products;
    Verdicts verdicts;
    /// Products were computed, so products_ok is meaningful.
    bool with_products = false;
    /// Set by verify_theorem4; cup-length fields and the remaining verdicts are
    /// only meaningful when true.
    bool full = false;
    /// Human-readable name of the product used for the cup-length witness.
    std::string cuplength_product;
    int cup_length = 0;
    /// cup_length + 1.
    int cat_lower_bound = 0;
};

/// Fills dims, products, cup-length and all verdicts.
CohomologyReport verify_theorem4(int m, int n, Field field = Field::rationals(),
                                 std::size_t max_basis = kDefaultMaxBasis);

/// Dimensions only, with the Poincare verdict; products when requested.
CohomologyReport cohomology_report(int m, int n, Field field, bool with_products,
                                   std::size_t max_basis = kDefaultMaxBasis);

/// Betti numbers of the configuration space of R^m from the square-free
/// monomial basis of the s-algebra.
DegreeDims rm_betti(int m, int n);

/// Image of sigma_r in the s-algebra of the configuration space of R^m.
AlgebraElement phi_star(int m, int n, int r, Field field = Field::rationals());

}  // namespace billiards::leray
