#include "ncclab/field.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <string>

namespace ncclab {

namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

void check_length(std::size_t got, const RootOfUnity& root) {
  if (got != root.n) {
    throw Error(Errc::LengthMismatch,
                "vector of length " + std::to_string(got) + " for a root of order " +
                    std::to_string(root.n));
  }
}

// Iterative radix-2 transform on raw residues; n a power of two.
void cooley_tukey(std::vector<std::uint64_t>& a, std::uint64_t sigma, std::uint64_t p) {
  const std::size_t n = a.size();
  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  // twiddle[k] = sigma^k for k < n/2; stage len uses stride n/len
  std::vector<std::uint64_t> twiddle(std::max<std::size_t>(n / 2, 1));
  twiddle[0] = 1;
  for (std::size_t k = 1; k < twiddle.size(); ++k) twiddle[k] = twiddle[k - 1] * sigma % p;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const std::uint64_t u = a[start + k];
        const std::uint64_t v = a[start + k + half] * twiddle[k * stride] % p;
        const std::uint64_t sum = u + v;
        a[start + k] = sum >= p ? sum - p : sum;
        a[start + k + half] = u >= v ? u - v : u + p - v;
      }
    }
  }
}

}  // namespace

PrimeField::PrimeField(std::uint64_t p) {
  if (p >= kMaxModulus || !is_prime(p)) {
    throw Error(Errc::NotPrime, "modulus " + std::to_string(p) + " is not a prime below 2^31");
  }
  p_ = static_cast<std::uint32_t>(p);
}

FieldElement PrimeField::element(std::uint64_t v) const {
  return FieldElement(static_cast<std::uint32_t>(v % p_), p_);
}

FieldElement PrimeField::from_signed(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return FieldElement(static_cast<std::uint32_t>(r), p_);
}

FieldElement PrimeField::zero() const { return FieldElement(0, p_); }
FieldElement PrimeField::one() const { return FieldElement(1 % p_, p_); }

unsigned PrimeField::element_bits() const noexcept {
  return static_cast<unsigned>(std::bit_width(p_ - 1));
}

FieldElement PrimeField::smallest_generator() const {
  if (p_ == 2) return one();
  const auto factors = prime_factors(p_ - 1);
  for (std::uint32_t g = 2; g < p_; ++g) {
    const FieldElement candidate = element(g);
    bool ok = true;
    for (auto q : factors) {
      if (candidate.pow((p_ - 1) / q) == one()) {
        ok = false;
        break;
      }
    }
    if (ok) return candidate;
  }
  throw Error(Errc::NoSuchRoot, "no generator found");  // unreachable for prime p
}

void FieldElement::check_same(const FieldElement& o) const {
  if (p_ != o.p_) {
    throw Error(Errc::MixedFields,
                "GF(" + std::to_string(p_) + ") vs GF(" + std::to_string(o.p_) + ")");
  }
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  std::uint64_t s = std::uint64_t{value_} + o.value_;
  if (s >= p_) s -= p_;
  return FieldElement(static_cast<std::uint32_t>(s), p_);
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(o);
  std::uint64_t s = std::uint64_t{value_} + p_ - o.value_;
  if (s >= p_) s -= p_;
  return FieldElement(static_cast<std::uint32_t>(s), p_);
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  return FieldElement(static_cast<std::uint32_t>(std::uint64_t{value_} * o.value_ % p_), p_);
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  check_same(o);
  return *this * o.inv();
}

FieldElement FieldElement::operator-() const {
  return FieldElement(value_ == 0 ? 0 : p_ - value_, p_);
}

FieldElement FieldElement::pow(std::uint64_t e) const {
  std::uint64_t base = value_;
  std::uint64_t acc = 1 % p_;
  while (e > 0) {
    if (e & 1) acc = acc * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return FieldElement(static_cast<std::uint32_t>(acc), p_);
}

FieldElement FieldElement::inv() const {
  if (value_ == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
  return pow(p_ - 2);
}

std::ostream& operator<<(std::ostream& os, const FieldElement& x) { return os << x.value(); }

FieldElement field_arith(const FieldElement& a, const FieldElement& b, FieldOp op) {
  switch (op) {
    case FieldOp::Add: return a + b;
    case FieldOp::Sub: return a - b;
    case FieldOp::Mul: return a * b;
    case FieldOp::Div: return a / b;
    case FieldOp::Pow: return a.pow(b.value());
    case FieldOp::Inv: return a.inv();
  }
  throw Error(Errc::InvalidArgument, "unknown field op");
}

bool has_exact_order(const FieldElement& sigma, std::size_t n) {
  if (n == 0) return false;
  const FieldElement one = sigma.field().one();
  if (sigma.pow(n) != one) return false;
  for (auto q : prime_factors(n)) {
    if (sigma.pow(n / q) == one) return false;
  }
  return true;
}

RootOfUnity find_root_of_unity(const PrimeField& field, std::size_t n) {
  const std::uint64_t order = field.modulus() - 1;
  if (n == 0 || order % n != 0) {
    throw Error(Errc::NoSuchRoot, std::to_string(n) + " does not divide " + std::to_string(order));
  }
  const FieldElement g = field.smallest_generator();
  return RootOfUnity{g.pow(order / n), n};
}

std::vector<FieldElement> naive_dft(std::span<const FieldElement> coeffs, const RootOfUnity& root) {
  check_length(coeffs.size(), root);
  const std::size_t n = root.n;
  const PrimeField field = root.sigma.field();
  std::vector<FieldElement> out(n, field.zero());
  for (std::size_t i = 0; i < n; ++i) {
    FieldElement acc = field.zero();
    const FieldElement step = root.sigma.pow(i);
    FieldElement power = field.one();
    for (std::size_t j = 0; j < n; ++j) {
      acc += coeffs[j] * power;
      power *= step;
    }
    out[i] = acc;
  }
  return out;
}

std::vector<FieldElement> ffft(std::span<const FieldElement> coeffs, const RootOfUnity& root) {
  check_length(coeffs.size(), root);
  if (!std::has_single_bit(root.n)) return naive_dft(coeffs, root);
  const std::uint32_t p = root.sigma.modulus();
  std::vector<std::uint64_t> a;
  a.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    if (c.modulus() != p) throw Error(Errc::MixedFields, "coefficient outside the root's field");
    a.push_back(c.value());
  }
  cooley_tukey(a, root.sigma.value(), p);
  const PrimeField field = root.sigma.field();
  std::vector<FieldElement> out;
  out.reserve(a.size());
  for (auto v : a) out.push_back(field.element(v));
  return out;
}

std::vector<FieldElement> ffft_inverse(std::span<const FieldElement> values, const RootOfUnity& root) {
  check_length(values.size(), root);
  const PrimeField field = root.sigma.field();
  const FieldElement n_elem = field.element(root.n);
  if (n_elem.is_zero()) {
    throw Error(Errc::DivisionByZero, "n is zero in GF(" + std::to_string(field.modulus()) + ")");
  }
  const FieldElement n_inv = n_elem.inv();
  auto out = ffft(values, root.inverse());
  for (auto& x : out) x *= n_inv;
  return out;
}

FieldElement poly_eval(std::span<const FieldElement> coeffs, const FieldElement& x) {
  FieldElement acc = x.field().zero();
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<FieldElement> lagrange_interpolate(
    std::span<const std::pair<FieldElement, FieldElement>> points) {
  const std::size_t n = points.size();
  if (n == 0) return {};
  const PrimeField field = points.front().first.field();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (points[i].first == points[j].first) {
        throw Error(Errc::DuplicatePoint, "x = " + std::to_string(points[i].first.value()));
      }
    }
  }

  // master(x) = prod_i (x - x_i), degree n
  std::vector<FieldElement> master{field.one()};
  for (const auto& [xi, yi] : points) {
    std::vector<FieldElement> next(master.size() + 1, field.zero());
    for (std::size_t k = 0; k < master.size(); ++k) {
      next[k + 1] += master[k];
      next[k] -= master[k] * xi;
    }
    master = std::move(next);
  }

  std::vector<FieldElement> coeffs(n, field.zero());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [xi, yi] = points[i];
    // basis numerator master(x) / (x - x_i) by synthetic division
    std::vector<FieldElement> basis(n, field.zero());
    FieldElement carry = field.zero();
    for (std::size_t k = n; k-- > 0;) {
      carry = master[k + 1] + carry * xi;
      basis[k] = carry;
    }
    const FieldElement denom = poly_eval(basis, xi);
    const FieldElement scale = yi / denom;
    for (std::size_t k = 0; k < n; ++k) coeffs[k] += basis[k] * scale;
  }
  return coeffs;
}

std::vector<FieldElement> to_elements(const PrimeField& field, std::span<const std::uint32_t> values) {
  std::vector<FieldElement> out;
  out.reserve(values.size());
  for (auto v : values) out.push_back(field.element(v));
  return out;
}

std::vector<std::uint32_t> to_values(std::span<const FieldElement> elements) {
  std::vector<std::uint32_t> out;
  out.reserve(elements.size());
  for (const auto& e : elements) out.push_back(e.value());
  return out;
}

}  // namespace ncclab
