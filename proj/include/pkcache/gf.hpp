#pragma once

#include <cstdint>
#include <string>

namespace pkcache {

// Residue in [0, q-1]. Containers (vectors, packets, libraries) carry the
// field; plain symbols never do.
using Symbol = std::uint32_t;

// Prime field F_q. Moduli are limited to q < 2^16 so that packets serialize
// to at most four hex digits per symbol; products are formed in 64 bits.
class Field {
 public:
  static constexpr std::uint32_t kMaxModulus = 65535;

  // Throws InvalidArgument unless q is a prime below 2^16.
  explicit Field(std::uint32_t q);

  std::uint32_t order() const noexcept { return q_; }
  bool contains(Symbol a) const noexcept { return a < q_; }

  Symbol add(Symbol a, Symbol b) const noexcept {
    const Symbol s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  Symbol sub(Symbol a, Symbol b) const noexcept { return a >= b ? a - b : a + q_ - b; }
  Symbol neg(Symbol a) const noexcept { return a == 0 ? 0 : q_ - a; }
  Symbol mul(Symbol a, Symbol b) const noexcept {
    return static_cast<Symbol>((static_cast<std::uint64_t>(a) * b) % q_);
  }
  // Throws DivisionByZero for a == 0.
  Symbol inv(Symbol a) const;
  Symbol reduce(long long value) const noexcept;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  std::uint32_t q_;
};

bool is_prime(std::uint64_t n) noexcept;

// A residue bundled with its field, for code that handles single values.
// Arithmetic between elements of different fields throws FieldMismatch.
class FieldElement {
 public:
  // Throws InvalidArgument if value is not already reduced.
  FieldElement(const Field& field, Symbol value);

  const Field& field() const noexcept { return field_; }
  Symbol value() const noexcept { return value_; }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  Field field_;
  Symbol value_;
};

FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement sub(const FieldElement& a, const FieldElement& b);
FieldElement mul(const FieldElement& a, const FieldElement& b);
FieldElement inv(const FieldElement& a);

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) { return add(a, b); }
inline FieldElement operator-(const FieldElement& a, const FieldElement& b) { return sub(a, b); }
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) { return mul(a, b); }

}  // namespace pkcache
