#include "arrlog/field.hpp"

#include <array>
#include <cctype>

namespace arrlog {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::ZeroForm: return "ZeroForm";
    case ErrorCode::DuplicateHyperplane: return "DuplicateHyperplane";
    case ErrorCode::InLattice: return "InLattice";
    case ErrorCode::FieldUnsupported: return "FieldUnsupported";
    case ErrorCode::UnknownLibrary: return "UnknownLibrary";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::NotLogarithmic: return "NotLogarithmic";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::BadPrimeSuspected: return "BadPrimeSuspected";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(arrlog::to_string(code)) + ": " + what), code_(code) {}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are a proven deterministic witness set below 2^64.
  static constexpr std::array<std::uint64_t, 7> kBases = {2, 325, 9375, 28178, 450775, 9780504, 1795265022};
  for (std::uint64_t a : kBases) {
    a %= n;
    if (a == 0) continue;
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p <= 2 || p >= (1ULL << 62) || !is_prime(p)) {
    throw Error(ErrorCode::InvalidArgument,
                "prime field modulus must be an odd prime below 2^62, got " + std::to_string(p));
  }
  FieldSpec s;
  s.kind = Kind::PrimeField;
  s.p = p;
  return s;
}

FieldSpec FieldSpec::parse(const std::string& text) {
  if (text == "Q" || text == "QQ") return rationals();
  const std::string prefix = "Fp:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string digits = text.substr(prefix.size());
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw Error(ErrorCode::Parse, "bad prime in field spec '" + text + "'");
    }
    return prime(std::stoull(digits));
  }
  throw Error(ErrorCode::Parse, "field spec must be Q or Fp:<p>, got '" + text + "'");
}

std::string FieldSpec::to_string() const {
  return kind == Kind::Rationals ? "Q" : "Fp:" + std::to_string(p);
}

RationalField::Elem RationalField::inv(const Elem& a) const {
  if (is_zero(a)) throw Error(ErrorCode::Singular, "inverse of zero");
  return Elem(1) / a;
}

PrimeField::PrimeField(std::uint64_t p) : p_(FieldSpec::prime(p).p) {}

PrimeField::Elem PrimeField::from_int(long v) const {
  if (v >= 0) return static_cast<Elem>(v) % p_;
  Elem m = static_cast<Elem>(-(v + 1)) % p_;  // avoids overflow at LONG_MIN
  return neg(add(m, 1));
}

PrimeField::Elem PrimeField::from_rational(const mpq_class& q) const {
  mpz_class pz;
  mpz_set_ui(pz.get_mpz_t(), static_cast<unsigned long>(p_));
  mpz_class num = q.get_num() % pz;
  if (num < 0) num += pz;
  mpz_class den = q.get_den() % pz;
  if (den == 0) {
    throw Error(ErrorCode::FieldUnsupported,
                "denominator of " + q.get_str() + " vanishes modulo " + std::to_string(p_));
  }
  Elem n = mpz_get_ui(num.get_mpz_t());
  Elem d = mpz_get_ui(den.get_mpz_t());
  return mul(n, inv(d));
}

mpq_class PrimeField::to_rational(Elem a) const {
  mpz_class v;
  if (a > p_ / 2) {
    mpz_set_ui(v.get_mpz_t(), static_cast<unsigned long>(p_ - a));
    v = -v;
  } else {
    mpz_set_ui(v.get_mpz_t(), static_cast<unsigned long>(a));
  }
  return mpq_class(v);
}

PrimeField::Elem PrimeField::inv(Elem a) const {
  if (a == 0) throw Error(ErrorCode::Singular, "inverse of zero modulo " + std::to_string(p_));
  // Extended Euclid on signed 128-bit to stay clear of overflow.
  __int128 t = 0, new_t = 1;
  __int128 r = p_, new_r = a;
  while (new_r != 0) {
    __int128 q = r / new_r;
    __int128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p_;
  return static_cast<Elem>(t);
}

PrimeField::Elem PrimeField::pow(Elem a, std::uint64_t e) const { return powmod(a, e, p_); }

mpq_class parse_rational(const std::string& raw) {
  std::string text;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  }
  auto valid_int = [](const std::string& s) {
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start >= s.size()) return false;
    return s.find_first_not_of("0123456789", start) == std::string::npos;
  };
  auto strip_plus = [](std::string s) { return (!s.empty() && s[0] == '+') ? s.substr(1) : s; };
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!valid_int(text)) throw Error(ErrorCode::Parse, "not a rational number: '" + raw + "'");
    return mpq_class(mpz_class(strip_plus(text)));
  }
  std::string num = text.substr(0, slash);
  std::string den = text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') {
    throw Error(ErrorCode::Parse, "not a rational number: '" + raw + "'");
  }
  mpz_class d(den);
  if (d == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + raw + "'");
  mpq_class q(mpz_class(strip_plus(num)), d);
  q.canonicalize();
  return q;
}

}  // namespace arrlog
