#include "symcartan/ring/monomial.hpp"

#include "symcartan/errors.hpp"

namespace symcartan {

Monomial Monomial::var(int i, int power) {
  return Monomial().with_exponent(i, power);
}

Monomial Monomial::with_exponent(int i, int e) const {
  if (i < 0 || i >= kMaxVars) throw ComputationError("variable index out of range");
  if (e < 0 || e > 255) throw ComputationError("exponent out of range");
  Monomial r = *this;
  r.degree_ += e - exponent(i);
  r.bits_ &= ~(std::uint64_t{0xFF} << shift(i));
  r.bits_ |= static_cast<std::uint64_t>(e) << shift(i);
  return r;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (int i = 0; i < kMaxVars; ++i)
    if (exponent(i) > other.exponent(i)) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  // A byte can only overflow if the total degree does.
  if (degree_ + other.degree_ > 255) throw ComputationError("monomial degree overflow");
  Monomial r;
  r.bits_ = bits_ + other.bits_;
  r.degree_ = degree_ + other.degree_;
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  if (!other.divides(*this)) throw ComputationError("monomial does not divide");
  Monomial r;
  r.bits_ = bits_ - other.bits_;
  r.degree_ = degree_ - other.degree_;
  return r;
}

}  // namespace symcartan
