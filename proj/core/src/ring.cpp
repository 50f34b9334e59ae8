#include "perfacto/ring.hpp"

#include "perfacto/errors.hpp"

namespace perfacto {

namespace {

mpz_class gcd(const mpz_class& a, const mpz_class& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

mpz_class mod(const mpz_class& a, const mpz_class& n) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
  return r;
}

}  // namespace

bool is_prime(const mpz_class& n) {
  return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

Ring Ring::integers() { return Ring(RingKind::Integers, 0); }

Ring Ring::integers_mod(const mpz_class& n) {
  if (n < 2) throw InvalidRing("Z/n requires n >= 2");
  return Ring(RingKind::IntegersMod, n);
}

Ring Ring::prime_field(const mpz_class& p) {
  if (!is_prime(p)) throw InvalidRing("F_p requires p prime, got " + p.get_str());
  return Ring(RingKind::PrimeField, p);
}

Ring Ring::rationals() { return Ring(RingKind::Rationals, 0); }

bool Ring::is_field() const {
  return kind_ == RingKind::PrimeField || kind_ == RingKind::Rationals ||
         (kind_ == RingKind::IntegersMod && is_prime(modulus_));
}

bool Ring::is_finite() const { return modular(); }

std::string Ring::name() const {
  switch (kind_) {
    case RingKind::Integers: return "Z";
    case RingKind::IntegersMod: return "Z/" + modulus_.get_str();
    case RingKind::PrimeField: return "F_" + modulus_.get_str();
    case RingKind::Rationals: return "Q";
  }
  return "?";
}

Scalar Ring::reduce(const Scalar& a) const {
  switch (kind_) {
    case RingKind::Integers:
      if (a.get_den() != 1) throw Error("non-integral scalar over Z: " + a.get_str());
      return a;
    case RingKind::Rationals: {
      Scalar r = a;
      r.canonicalize();
      return r;
    }
    default: {
      if (a.get_den() == 1) return Scalar(mod(a.get_num(), modulus_));
      // a = num / den with den invertible mod n
      mpz_class inv;
      if (mpz_invert(inv.get_mpz_t(), a.get_den_mpz_t(), modulus_.get_mpz_t()) == 0)
        throw Error("denominator not invertible in " + name());
      return Scalar(mod(a.get_num() * inv, modulus_));
    }
  }
}

bool Ring::is_unit(const Scalar& a) const {
  switch (kind_) {
    case RingKind::Integers: return a == 1 || a == -1;
    case RingKind::Rationals: return sgn(a) != 0;
    default: return gcd(a.get_num(), modulus_) == 1;
  }
}

Scalar Ring::inverse(const Scalar& a) const {
  if (!is_unit(a)) throw Error(to_string(a) + " is not a unit in " + name());
  switch (kind_) {
    case RingKind::Integers: return a;
    case RingKind::Rationals: return Scalar(1) / a;
    default: {
      mpz_class inv;
      mpz_invert(inv.get_mpz_t(), a.get_num_mpz_t(), modulus_.get_mpz_t());
      return Scalar(inv);
    }
  }
}

mpz_class Ring::norm(const Scalar& a) const {
  switch (kind_) {
    case RingKind::Integers: return abs(a.get_num());
    case RingKind::Rationals: return 1;
    default: {
      if (is_zero(a)) return modulus_;
      return gcd(a.get_num(), modulus_);
    }
  }
}

std::pair<Scalar, Scalar> Ring::normalize(const Scalar& a) const {
  if (is_zero(a)) return {zero(), one()};
  switch (kind_) {
    case RingKind::Integers:
      return sgn(a) < 0 ? std::pair<Scalar, Scalar>{-a, Scalar(-1)}
                        : std::pair<Scalar, Scalar>{a, Scalar(1)};
    case RingKind::Rationals: return {Scalar(1), Scalar(1) / a};
    default: {
      const mpz_class& n = modulus_;
      mpz_class g = gcd(a.get_num(), n);
      mpz_class cofactor = a.get_num() / g;
      mpz_class rest = n / g;
      mpz_class u = 1;
      if (rest > 1) {
        mpz_invert(u.get_mpz_t(), cofactor.get_mpz_t(), rest.get_mpz_t());
      }
      // lift u0 mod n/g to a unit mod n
      while (gcd(u, n) != 1) u += rest;
      return {Scalar(mod(g, n)), Scalar(mod(u, n))};
    }
  }
}

bool Ring::divides(const Scalar& a, const Scalar& b) const {
  if (is_zero(a)) return is_zero(b);
  switch (kind_) {
    case RingKind::Integers: return mpz_divisible_p(b.get_num_mpz_t(), a.get_num_mpz_t()) != 0;
    case RingKind::Rationals: return true;
    default: {
      mpz_class g = gcd(a.get_num(), modulus_);
      return mpz_divisible_p(b.get_num_mpz_t(), g.get_mpz_t()) != 0;
    }
  }
}

Scalar Ring::exact_div(const Scalar& b, const Scalar& a) const {
  if (!divides(a, b)) throw Error("exact_div: " + to_string(a) + " does not divide " + to_string(b));
  if (is_zero(a)) return zero();
  switch (kind_) {
    case RingKind::Integers: return Scalar(b.get_num() / a.get_num());
    case RingKind::Rationals: return b / a;
    default: {
      auto [g, u] = normalize(a);
      mpz_class q = b.get_num() / g.get_num();
      return reduce(u * Scalar(q));
    }
  }
}

Gcdex Ring::gcdex(const Scalar& a, const Scalar& b) const {
  if (kind_ == RingKind::Rationals) {
    if (!is_zero(a)) return {a, Scalar(1), Scalar(0), reduce(-b / a), Scalar(1)};
    return {b, Scalar(0), Scalar(1), Scalar(1), Scalar(0)};
  }
  if (is_zero(a) && is_zero(b)) return {zero(), one(), zero(), zero(), one()};
  mpz_class g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_num_mpz_t(),
             b.get_num_mpz_t());
  mpz_class u = -(b.get_num() / g);
  mpz_class v = a.get_num() / g;
  return {reduce(Scalar(g)), reduce(Scalar(s)), reduce(Scalar(t)), reduce(Scalar(u)),
          reduce(Scalar(v))};
}

Scalar Ring::annihilator(const Scalar& a) const {
  if (is_zero(a)) return one();
  if (!modular()) return zero();
  mpz_class g = gcd(a.get_num(), modulus_);
  return reduce(Scalar(modulus_ / g));
}

mpz_class Ring::cardinality() const { return modular() ? modulus_ : mpz_class(0); }

mpz_class Ring::cyclic_order(const Scalar& a) const {
  switch (kind_) {
    case RingKind::Integers: return is_zero(a) ? mpz_class(0) : mpz_class(abs(a.get_num()));
    case RingKind::Rationals: return is_zero(a) ? mpz_class(0) : mpz_class(1);
    default: return is_zero(a) ? modulus_ : gcd(a.get_num(), modulus_);
  }
}

std::string Ring::to_string(const Scalar& a) const { return a.get_str(); }

Scalar Ring::parse(const std::string& text) const {
  Scalar value;
  try {
    value = Scalar(text);
  } catch (const std::invalid_argument&) {
    throw ParseError("not a number: '" + text + "'");
  }
  value.canonicalize();
  if (kind_ != RingKind::Rationals && value.get_den() != 1)
    throw ParseError("non-integral entry '" + text + "' over " + name());
  return reduce(value);
}

}  // namespace perfacto
