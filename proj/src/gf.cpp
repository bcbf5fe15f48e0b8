#include "pkcache/gf.hpp"

#include "pkcache/error.hpp"

namespace pkcache {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Field::Field(std::uint32_t q) : q_(q) {
  if (q > kMaxModulus) {
    throw InvalidArgument("field modulus " + std::to_string(q) + " exceeds 65535");
  }
  if (!is_prime(q)) {
    throw InvalidArgument("field modulus " + std::to_string(q) + " is not prime");
  }
}

Symbol Field::inv(Symbol a) const {
  if (a % q_ == 0) throw DivisionByZero("inverse of zero in F_" + std::to_string(q_));
  // Extended Euclid on (a, q).
  long long r0 = q_, r1 = a % q_;
  long long s0 = 0, s1 = 1;
  while (r1 != 0) {
    const long long quot = r0 / r1;
    const long long r2 = r0 - quot * r1;
    const long long s2 = s0 - quot * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  return reduce(s0);
}

Symbol Field::reduce(long long value) const noexcept {
  long long r = value % static_cast<long long>(q_);
  if (r < 0) r += q_;
  return static_cast<Symbol>(r);
}

FieldElement::FieldElement(const Field& field, Symbol value) : field_(field), value_(value) {
  if (!field.contains(value)) {
    throw InvalidArgument(std::to_string(value) + " is not a residue modulo " +
                          std::to_string(field.order()));
  }
}

namespace {

const Field& common_field(const FieldElement& a, const FieldElement& b) {
  if (a.field() != b.field()) {
    throw FieldMismatch("operands from F_" + std::to_string(a.field().order()) + " and F_" +
                        std::to_string(b.field().order()));
  }
  return a.field();
}

}  // namespace

FieldElement add(const FieldElement& a, const FieldElement& b) {
  const Field& f = common_field(a, b);
  return FieldElement(f, f.add(a.value(), b.value()));
}

FieldElement sub(const FieldElement& a, const FieldElement& b) {
  const Field& f = common_field(a, b);
  return FieldElement(f, f.sub(a.value(), b.value()));
}

FieldElement mul(const FieldElement& a, const FieldElement& b) {
  const Field& f = common_field(a, b);
  return FieldElement(f, f.mul(a.value(), b.value()));
}

FieldElement inv(const FieldElement& a) { return FieldElement(a.field(), a.field().inv(a.value())); }

}  // namespace pkcache
