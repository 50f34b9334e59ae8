#pragma once

#include <gmpxx.h>

#include <string>

namespace perfacto {

/// Ring elements are stored as exact rationals; each ring keeps them in its
/// canonical form (integers for Z, residues in [0, n) for Z/n and F_p,
/// lowest terms for Q).
using Scalar = mpq_class;

enum class RingKind { Integers, IntegersMod, PrimeField, Rationals };

/// Result of an extended gcd step on a pair (a, b).
///
/// [[s, t], [u, v]] has unit determinant and maps (a, b) to (g, 0).
struct Gcdex {
  Scalar g, s, t, u, v;
};

/// One of the computable commutative rings the kernel supports.
class Ring {
 public:
  static Ring integers();
  static Ring integers_mod(const mpz_class& n);
  static Ring prime_field(const mpz_class& p);
  static Ring rationals();

  RingKind kind() const { return kind_; }
  /// n for Z/n and F_p; 0 otherwise.
  const mpz_class& modulus() const { return modulus_; }
  bool is_field() const;
  bool is_finite() const;
  std::string name() const;

  Scalar reduce(const Scalar& a) const;
  Scalar from_int(long a) const { return reduce(Scalar(a)); }
  Scalar zero() const { return Scalar(0); }
  Scalar one() const { return reduce(Scalar(1)); }

  Scalar add(const Scalar& a, const Scalar& b) const { return reduce(a + b); }
  Scalar sub(const Scalar& a, const Scalar& b) const { return reduce(a - b); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return reduce(a * b); }
  Scalar neg(const Scalar& a) const { return reduce(-a); }

  bool is_zero(const Scalar& a) const { return sgn(a) == 0; }
  bool is_unit(const Scalar& a) const;
  Scalar inverse(const Scalar& a) const;

  /// Pivot quality for elimination; smaller is better. Only meaningful for
  /// nonzero a.
  mpz_class norm(const Scalar& a) const;
  /// Canonical associate of a (|a| over Z, gcd(a, n) over Z/n, 1 over a
  /// field) together with the unit `u` with u * a == associate.
  std::pair<Scalar, Scalar> normalize(const Scalar& a) const;
  /// Whether b lies in the ideal generated by a.
  bool divides(const Scalar& a, const Scalar& b) const;
  /// Some q with q * a == b. Requires divides(a, b).
  Scalar exact_div(const Scalar& b, const Scalar& a) const;
  Gcdex gcdex(const Scalar& a, const Scalar& b) const;
  /// Generator of the annihilator ideal of a (zero for domains unless a = 0).
  Scalar annihilator(const Scalar& a) const;
  /// Number of elements, or 0 when infinite.
  mpz_class cardinality() const;
  /// Order of the cyclic module R/(a) as an abelian group, 0 when infinite.
  mpz_class cyclic_order(const Scalar& a) const;

  std::string to_string(const Scalar& a) const;
  Scalar parse(const std::string& text) const;

  friend bool operator==(const Ring& x, const Ring& y) {
    return x.kind_ == y.kind_ && x.modulus_ == y.modulus_;
  }
  friend bool operator!=(const Ring& x, const Ring& y) { return !(x == y); }

 private:
  Ring(RingKind kind, mpz_class modulus)
      : kind_(kind), modulus_(std::move(modulus)) {}

  bool modular() const {
    return kind_ == RingKind::IntegersMod || kind_ == RingKind::PrimeField;
  }

  RingKind kind_;
  mpz_class modulus_;
};

bool is_prime(const mpz_class& n);

}  // namespace perfacto
