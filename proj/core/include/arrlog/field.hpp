#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace arrlog {

enum class ErrorCode {
  FieldMismatch,
  DimensionMismatch,
  Singular,
  ZeroForm,
  DuplicateHyperplane,
  InLattice,
  FieldUnsupported,
  UnknownLibrary,
  IndexOutOfRange,
  Parse,
  NotLogarithmic,
  InvalidArgument,
  NotHomogeneous,
  BadPrimeSuspected,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Coefficient field of a computation: the rationals or a word-sized prime field.
struct FieldSpec {
  enum class Kind { Rationals, PrimeField };

  Kind kind = Kind::Rationals;
  std::uint64_t p = 0;

  static FieldSpec rationals() { return {}; }
  /// Throws InvalidArgument unless 2 < p < 2^62 and p is prime.
  static FieldSpec prime(std::uint64_t p);
  /// Accepts "Q" or "Fp:<p>".
  static FieldSpec parse(const std::string& text);

  bool is_prime_field() const { return kind == Kind::PrimeField; }
  std::string to_string() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Arbitrary precision rationals. Elements are always canonical (lowest terms,
/// positive denominator) because every operation goes through mpq_class.
class RationalField {
 public:
  using Elem = mpq_class;

  FieldSpec spec() const { return FieldSpec::rationals(); }

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(long v) const { return Elem(v); }
  Elem from_rational(const mpq_class& q) const { return q; }
  mpq_class to_rational(const Elem& a) const { return a; }

  static bool is_zero(const Elem& a) { return sgn(a) == 0; }
  static bool is_one(const Elem& a) { return a == 1; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const;
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  std::string to_string(const Elem& a) const { return a.get_str(); }

  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

/// Residues modulo a prime p < 2^62, stored in [0, p).
class PrimeField {
 public:
  using Elem = std::uint64_t;

  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }
  FieldSpec spec() const { return FieldSpec::prime(p_); }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long v) const;
  /// Throws FieldUnsupported when p divides the denominator.
  Elem from_rational(const mpq_class& q) const;
  /// Symmetric representative in (-p/2, p/2].
  mpq_class to_rational(Elem a) const;

  static bool is_zero(Elem a) { return a == 0; }
  static bool is_one(Elem a) { return a == 1; }
  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>(static_cast<unsigned __int128>(a) * b % p_);
  }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  /// Extended Euclid; throws Singular on zero.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  bool equal(Elem a, Elem b) const { return a == b; }
  std::string to_string(Elem a) const { return std::to_string(a); }

  // Shoup multiplication: for a fixed multiplicand b, precompute
  // floor(b * 2^64 / p) once and multiply by many a with one high product.
  std::uint64_t shoup_precompute(Elem b) const {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(b) << 64) / p_);
  }
  Elem mul_shoup(Elem a, Elem b, std::uint64_t b_shoup) const {
    auto q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b_shoup) >> 64);
    std::uint64_t r = a * b - q * p_;
    return r >= p_ ? r - p_ : r;
  }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint64_t p_;
};

/// Throws FieldMismatch when two operands live in different fields.
template <class F>
void require_same_field(const F& a, const F& b) {
  if (!(a == b)) {
    throw Error(ErrorCode::FieldMismatch,
                "operands over different fields: " + a.spec().to_string() + " vs " +
                    b.spec().to_string());
  }
}

/// Parses an integer or a fraction "a/b" into a canonical rational.
mpq_class parse_rational(const std::string& text);

}  // namespace arrlog
