#include "billiards/field.hpp"

#include <stdexcept>

namespace billiards::dga {

namespace {

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

}  // namespace

Field Field::prime(std::uint32_t p) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
    return Field{p};
}

Field Field::parse(const std::string& name) {
    if (name == "q" || name == "Q") return rationals();
    if (name.size() >= 2 && (name[0] == 'f' || name[0] == 'F')) {
        const std::string digits = name.substr(1);
        if (digits.find_first_not_of("0123456789") == std::string::npos && digits.size() <= 9) {
            return prime(static_cast<std::uint32_t>(std::stoul(digits)));
        }
    }
    throw std::invalid_argument("unknown field '" + name + "' (expected q or fP)");
}

std::string Field::name() const { return is_rational() ? "q" : "f" + std::to_string(characteristic); }

FieldScalar::FieldScalar(Field field, long value) : field_(field), value_(value) { reduce(); }

FieldScalar::FieldScalar(Field field, const mpq_class& value) : field_(field), value_(value) {
    value_.canonicalize();
    reduce();
}

void FieldScalar::reduce() {
    if (field_.is_rational()) return;
    const mpz_class p = field_.characteristic;
    mpz_class num = value_.get_num() % p;
    if (num < 0) num += p;
    mpz_class den = value_.get_den() % p;
    if (den == 0) throw std::domain_error("denominator vanishes in " + field_.name());
    if (den != 1) {
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
        num = (num * inv) % p;
    }
    value_ = mpq_class(num);
}

void FieldScalar::check(const FieldScalar& o) const {
    if (!(field_ == o.field_)) throw std::invalid_argument("arithmetic between different fields");
}

FieldScalar FieldScalar::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    return FieldScalar(field_, mpq_class(1) / value_);
}

FieldScalar FieldScalar::operator-() const { return FieldScalar(field_, mpq_class(-value_)); }

FieldScalar& FieldScalar::operator+=(const FieldScalar& o) {
    check(o);
    value_ += o.value_;
    reduce();
    return *this;
}

FieldScalar& FieldScalar::operator-=(const FieldScalar& o) {
    check(o);
    value_ -= o.value_;
    reduce();
    return *this;
}

FieldScalar& FieldScalar::operator*=(const FieldScalar& o) {
    check(o);
    value_ *= o.value_;
    reduce();
    return *this;
}

FieldScalar& FieldScalar::operator/=(const FieldScalar& o) {
    check(o);
    if (o.is_zero()) throw std::domain_error("division by zero");
    value_ /= o.value_;
    reduce();
    return *this;
}

std::string FieldScalar::to_string() const { return value_.get_str(); }

}  // namespace billiards::dga
