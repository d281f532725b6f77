#pragma once

#include <cstdint>
#include <functional>

namespace symcartan {

inline constexpr int kMaxVars = 8;

/// Exponent vector over at most kMaxVars variables, packed one byte per
/// variable with variable 0 in the most significant byte.  Comparing the
/// packed words therefore compares lexicographically in declaration order.
class Monomial {
 public:
  Monomial() = default;

  static Monomial var(int i, int power = 1);

  int exponent(int i) const {
    return static_cast<int>((bits_ >> shift(i)) & 0xFFu);
  }
  int degree() const { return degree_; }
  bool is_one() const { return bits_ == 0; }
  std::uint64_t bits() const { return bits_; }

  Monomial with_exponent(int i, int e) const;
  bool divides(const Monomial& other) const;

  Monomial operator*(const Monomial& other) const;
  // Requires divides(other) from the right operand's side: *this / other.
  Monomial operator/(const Monomial& other) const;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.bits_ == b.bits_;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) {
    return a.bits_ != b.bits_;
  }

 private:
  static int shift(int i) { return 8 * (kMaxVars - 1 - i); }
  std::uint64_t bits_ = 0;
  int degree_ = 0;
};

// Graded lexicographic: higher total degree first, ties broken by
// declaration order.
inline bool grlex_greater(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  return a.bits() > b.bits();
}

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return grlex_greater(a, b);
  }
};

// Ascending grlex, handy for std::map keys in natural reading order.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return grlex_greater(b, a);
  }
};

}  // namespace symcartan

template <>
struct std::hash<symcartan::Monomial> {
  std::size_t operator()(const symcartan::Monomial& m) const noexcept {
    return std::hash<std::uint64_t>{}(m.bits());
  }
};
