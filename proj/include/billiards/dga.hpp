#pragma once

#include "billiards/field.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace billiards::dga {

/**
 * Which algebra the generators live in.
 *
 * SphereTerm: the E_m term for X = S^m, with generators s_0..s_n in degree
 * m-1 and u_1..u_n in degree m, relations s_i^2 = 0, u_j^2 = 0,
 * s_0 s_1 ... s_n = 0, u_1 s_0 = 0, u_i s_i = u_{i+1} s_i, u_n s_n = 0, and
 * graded commutativity.
 *
 * Euclidean: the cohomology of the configuration space of R^m, generated by
 * the s_i alone with the same s-relations and no differential.
 */
enum class AlgebraKind { SphereTerm, Euclidean };

struct AlgebraParams {
    int m = 2;
    int n = 1;
    Field field{};
    AlgebraKind kind = AlgebraKind::SphereTerm;

    /// Throws std::invalid_argument unless m >= 1 and 1 <= n <= 30.
    void validate() const;

    friend bool operator==(const AlgebraParams&, const AlgebraParams&) = default;
};

struct Generator {
    enum class Kind { S, U };
    Kind kind;
    int index;

    static Generator s(int i) { return {Kind::S, i}; }
    static Generator u(int j) { return {Kind::U, j}; }
};

/// Canonical monomial: bit i of `s` is s_i, bit j of `u` is u_j, where each
/// u index is the smallest slot of its block in the partition of {0..n+1}
/// generated by i ~ i+1 for the s_i present.
struct Monomial {
    std::uint32_t s = 0;
    std::uint32_t u = 0;

    int s_count() const;
    int u_count() const;
    std::vector<int> s_indices() const;
    std::vector<int> u_indices() const;

    /// (m * |u|, (m-1) * |s|)
    std::pair<int, int> bidegree(int m) const;
    int total_degree(int m) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Lexicographic on the s index list, then on the u index list.
struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

struct Normalized {
    Monomial monomial;
    int sign = 1;
};

/// Brings a word in the generators to canonical form.  Returns nullopt when
/// the word is zero by the relations.  Throws std::invalid_argument on an
/// index out of range.
std::optional<Normalized> normalize(std::span<const Generator> word, int m, int n);

/// Block representative of slot j (0..n+1) under the partition given by the
/// s-bitmask.
int block_representative(std::uint32_t s_mask, int slot);

/// Slots 1..n whose blocks touch neither 0 nor n+1, one representative each.
std::vector<int> interior_block_representatives(std::uint32_t s_mask, int n);

class AlgebraElement {
public:
    using Terms = std::map<Monomial, FieldScalar, MonomialLess>;

    explicit AlgebraElement(AlgebraParams params);

    static AlgebraElement zero(const AlgebraParams& params) { return AlgebraElement(params); }
    static AlgebraElement one(const AlgebraParams& params);
    static AlgebraElement generator(const AlgebraParams& params, Generator g);
    static AlgebraElement monomial(const AlgebraParams& params, const Monomial& mono,
                                   const FieldScalar& coeff);
    /// Product of the given generators in order, reduced to normal form.
    static AlgebraElement word(const AlgebraParams& params, std::span<const Generator> gens);

    const AlgebraParams& params() const { return params_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    FieldScalar coefficient(const Monomial& mono) const;

    /// Total degree if every term shares it.
    std::optional<int> homogeneous_degree() const;

    void add_term(const Monomial& mono, const FieldScalar& coeff);

    AlgebraElement& operator+=(const AlgebraElement& o);
    AlgebraElement& operator-=(const AlgebraElement& o);
    AlgebraElement& operator*=(const FieldScalar& c);
    AlgebraElement operator-() const;

    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator*(AlgebraElement a, const FieldScalar& c) { return a *= c; }
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);

    /// e.g. "-1*s0 s1 u2 + 2*s3"; the unit monomial prints as "1", zero as "0".
    std::string to_string() const;

private:
    void check(const AlgebraElement& o) const;

    AlgebraParams params_;
    Terms terms_;
};

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);

/// a^k, with a^0 = 1.
AlgebraElement power(const AlgebraElement& a, int k);

/// The differential d_m of the E_m term (SphereTerm algebras only):
/// m odd:  d s_0 = -u_1, d s_i = u_i - u_{i+1}, d s_n = u_n;
/// m even: d s_0 =  u_1, d s_i = u_i + u_{i+1}, d s_n = u_n;
/// d u_j = 0, extended as a graded derivation.
AlgebraElement differential(const AlgebraElement& a);

/// Canonical monomials of the given total degree, in MonomialLess order.
std::vector<Monomial> basis(const AlgebraParams& params, int total_degree);

/// Every canonical monomial, in MonomialLess order.
std::vector<Monomial> full_basis(const AlgebraParams& params);

/// Largest total degree carried by a basis monomial.
int max_total_degree(const AlgebraParams& params);

/// Inverse of AlgebraElement::to_string; generator order in each term is free.
AlgebraElement parse_element(const AlgebraParams& params, const std::string& text);

std::string monomial_to_string(const Monomial& mono);

}  // namespace billiards::dga
