#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace billiards::dga {

/// Coefficient field: the rationals (characteristic 0) or F_p.
struct Field {
    std::uint32_t characteristic = 0;

    static Field rationals() { return Field{0}; }
    static Field prime(std::uint32_t p);
    /// Accepts "q" or "fP" for a prime P, e.g. "f2".
    static Field parse(const std::string& name);

    bool is_rational() const { return characteristic == 0; }
    std::string name() const;

    friend bool operator==(const Field&, const Field&) = default;
};

/// Exact element of a Field.  F_p elements are kept as their residue in [0, p).
class FieldScalar {
public:
    FieldScalar() = default;
    FieldScalar(Field field, long value);
    FieldScalar(Field field, const mpq_class& value);

    static FieldScalar zero(Field field) { return FieldScalar(field, 0L); }
    static FieldScalar one(Field field) { return FieldScalar(field, 1L); }

    const Field& field() const { return field_; }
    const mpq_class& value() const { return value_; }
    bool is_zero() const { return value_ == 0; }

    FieldScalar inverse() const;

    FieldScalar operator-() const;
    FieldScalar& operator+=(const FieldScalar& o);
    FieldScalar& operator-=(const FieldScalar& o);
    FieldScalar& operator*=(const FieldScalar& o);
    FieldScalar& operator/=(const FieldScalar& o);

    friend FieldScalar operator+(FieldScalar a, const FieldScalar& b) { return a += b; }
    friend FieldScalar operator-(FieldScalar a, const FieldScalar& b) { return a -= b; }
    friend FieldScalar operator*(FieldScalar a, const FieldScalar& b) { return a *= b; }
    friend FieldScalar operator/(FieldScalar a, const FieldScalar& b) { return a /= b; }
    friend bool operator==(const FieldScalar& a, const FieldScalar& b) {
        return a.field_ == b.field_ && a.value_ == b.value_;
    }

    /// "3", "-1/2", or the residue for F_p.
    std::string to_string() const;

private:
    void reduce();
    void check(const FieldScalar& o) const;

    Field field_{};
    mpq_class value_{0};
};

}  // namespace billiards::dga
