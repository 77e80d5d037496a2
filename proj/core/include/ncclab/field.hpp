#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "ncclab/error.hpp"

namespace ncclab {

class FieldElement;

// GF(p) for a prime p < 2^31. Products of two reduced values fit in 64 bits.
class PrimeField {
 public:
  static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 31;

  // Throws Errc::NotPrime unless p is a prime below 2^31 (trial division).
  explicit PrimeField(std::uint64_t p);

  std::uint32_t modulus() const noexcept { return p_; }

  FieldElement element(std::uint64_t v) const;
  FieldElement from_signed(std::int64_t v) const;
  FieldElement zero() const;
  FieldElement one() const;

  // Number of bits needed to store one element, ceil(log2 p).
  unsigned element_bits() const noexcept;

  // Smallest generator of the multiplicative group.
  FieldElement smallest_generator() const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  friend class FieldElement;
  struct Trusted {};
  PrimeField(std::uint32_t p, Trusted) : p_(p) {}
  std::uint32_t p_;
};

class FieldElement {
 public:
  FieldElement() = default;

  std::uint32_t value() const noexcept { return value_; }
  std::uint32_t modulus() const noexcept { return p_; }
  PrimeField field() const { return PrimeField(p_, PrimeField::Trusted{}); }
  bool is_zero() const noexcept { return value_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  // Square-and-multiply.
  FieldElement pow(std::uint64_t e) const;
  // Throws DivisionByZero on zero.
  FieldElement inv() const;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  friend class PrimeField;
  FieldElement(std::uint32_t v, std::uint32_t p) : value_(v), p_(p) {}
  void check_same(const FieldElement& o) const;

  std::uint32_t value_ = 0;
  std::uint32_t p_ = 0;
};

std::ostream& operator<<(std::ostream& os, const FieldElement& x);

enum class FieldOp { Add, Sub, Mul, Div, Pow, Inv };

// Dispatching form of the arithmetic above. For Pow, b.value() is the exponent;
// for Inv, b is ignored.
FieldElement field_arith(const FieldElement& a, const FieldElement& b, FieldOp op);

struct RootOfUnity {
  FieldElement sigma;
  std::size_t n = 0;

  RootOfUnity inverse() const { return {sigma.inv(), n}; }
};

// sigma = g^((p-1)/n) for the smallest generator g. Throws NoSuchRoot unless n | p-1.
RootOfUnity find_root_of_unity(const PrimeField& field, std::size_t n);

// sigma^n = 1 and sigma^(n/q) != 1 for every prime q | n.
bool has_exact_order(const FieldElement& sigma, std::size_t n);

// beta_i = sum_j alpha_j sigma^(ij), straight from the definition.
std::vector<FieldElement> naive_dft(std::span<const FieldElement> coeffs, const RootOfUnity& root);

// Radix-2 Cooley-Tukey when n is a power of two, naive_dft otherwise.
std::vector<FieldElement> ffft(std::span<const FieldElement> coeffs, const RootOfUnity& root);

// (1/n) * ffft(values, sigma^-1).
std::vector<FieldElement> ffft_inverse(std::span<const FieldElement> values, const RootOfUnity& root);

// Horner's rule. Throws MixedFields if x and coeffs disagree on the field.
FieldElement poly_eval(std::span<const FieldElement> coeffs, const FieldElement& x);

// Coefficients of the unique polynomial of degree < points.size() through the points.
// Throws DuplicatePoint if two x-coordinates coincide.
std::vector<FieldElement> lagrange_interpolate(
    std::span<const std::pair<FieldElement, FieldElement>> points);

// Elementwise conversion helpers used by the data structures and the CLI.
std::vector<FieldElement> to_elements(const PrimeField& field, std::span<const std::uint32_t> values);
std::vector<std::uint32_t> to_values(std::span<const FieldElement> elements);

}  // namespace ncclab
