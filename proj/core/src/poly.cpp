#include "arrlog/poly.hpp"

#include <memory>
#include <mutex>
#include <sstream>

namespace arrlog {

Monomial monomial(const std::vector<int>& exps) {
  if (exps.size() > static_cast<std::size_t>(kMaxVars))
    throw Error(ErrorCode::DimensionMismatch, "too many variables for a monomial");
  Monomial m;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
    m.e[i] = static_cast<std::uint16_t>(exps[i]);
  }
  return m;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (int i = 0; i < kMaxVars; ++i) m.e[i] = static_cast<std::uint16_t>(a.e[i] + b.e[i]);
  return m;
}

std::string to_string(const Monomial& m, int nvars) {
  std::string s;
  for (int i = 0; i < nvars; ++i) {
    if (m.e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(i + 1);
    if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
  }
  return s.empty() ? "1" : s;
}

std::uint64_t binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (long i = 0; i < k; ++i) r = r * static_cast<unsigned __int128>(n - i) / static_cast<unsigned __int128>(i + 1);
  return static_cast<std::uint64_t>(r);
}

namespace {

constexpr int kTableN = 512;

struct BinomTable {
  std::array<std::array<std::uint64_t, kTableN>, kMaxVars + 1> t{};
  BinomTable() {
    for (int k = 0; k <= kMaxVars; ++k)
      for (int n = 0; n < kTableN; ++n) t[k][n] = binomial(n, k);
  }
};

inline std::uint64_t binom_small(long n, int k) {
  static const BinomTable table;
  if (n < 0 || k < 0) return 0;
  if (n < kTableN && k <= kMaxVars) return table.t[k][n];
  return binomial(n, k);
}

void enumerate(int nvars, int var, int remaining, Monomial& cur, std::vector<Monomial>& out) {
  if (var == nvars - 1) {
    cur.e[var] = static_cast<std::uint16_t>(remaining);
    out.push_back(cur);
    cur.e[var] = 0;
    return;
  }
  for (int x = remaining; x >= 0; --x) {
    cur.e[var] = static_cast<std::uint16_t>(x);
    enumerate(nvars, var + 1, remaining - x, cur, out);
  }
  cur.e[var] = 0;
}

}  // namespace

std::size_t monomial_count(int nvars, int d) {
  if (d < 0) return 0;
  if (nvars == 0) return d == 0 ? 1 : 0;
  return binom_small(d + nvars - 1, nvars - 1);
}

std::vector<Monomial> monomial_basis(int nvars, int d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  if (nvars == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  out.reserve(monomial_count(nvars, d));
  Monomial cur;
  enumerate(nvars, 0, d, cur, out);
  return out;
}

std::size_t monomial_rank(const Monomial& m, int nvars) {
  long r = m.degree();
  std::size_t rank = 0;
  for (int i = 0; i + 1 < nvars; ++i) {
    const int v = nvars - 1 - i;
    const long e = m.e[i];
    rank += binom_small(r - e - 1 + v, v);
    r -= e;
  }
  return rank;
}

const std::vector<Monomial>& monomials_cached(int nvars, int d) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<std::vector<Monomial>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{nvars, d}];
  if (!slot) slot = std::make_unique<std::vector<Monomial>>(monomial_basis(nvars, d));
  return *slot;
}

template <class F>
HomPoly<F> hp_linear(const F& f, const Vec<F>& coeffs) {
  const int n = static_cast<int>(coeffs.size());
  HomPoly<F> h = HomPoly<F>::zero(f, n, 1);
  // Degree-one monomials appear as x1, x2, ... in descending lex order.
  for (int i = 0; i < n; ++i) h.c[i] = coeffs[i];
  return h;
}

template <class F>
HomPoly<F> hp_constant(const F& f, int nvars, const typename F::Elem& v) {
  HomPoly<F> h = HomPoly<F>::zero(f, nvars, 0);
  h.c[0] = v;
  return h;
}

template <class F>
HomPoly<F> hp_mul(const F& f, const HomPoly<F>& a, const HomPoly<F>& b) {
  if (a.nvars != b.nvars) throw Error(ErrorCode::DimensionMismatch, "product of polynomials in different rings");
  HomPoly<F> out = HomPoly<F>::zero(f, a.nvars, a.degree + b.degree);
  if (a.degree < 0 || b.degree < 0) return out;
  const auto& ma = monomials_cached(a.nvars, a.degree);
  const auto& mb = monomials_cached(b.nvars, b.degree);
  std::vector<std::size_t> nzb;
  for (std::size_t j = 0; j < b.c.size(); ++j)
    if (!F::is_zero(b.c[j])) nzb.push_back(j);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (F::is_zero(a.c[i])) continue;
    for (std::size_t j : nzb) {
      const std::size_t k = monomial_rank(mono_mul(ma[i], mb[j]), a.nvars);
      out.c[k] = f.add(out.c[k], f.mul(a.c[i], b.c[j]));
    }
  }
  return out;
}

template <class F>
HomPoly<F> hp_shift(const HomPoly<F>& a, const Monomial& m) {
  HomPoly<F> out{a.nvars, a.degree + m.degree(), {}};
  out.c.assign(monomial_count(a.nvars, out.degree), typename F::Elem(0));
  if (a.degree < 0) return out;
  const auto& ma = monomials_cached(a.nvars, a.degree);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (F::is_zero(a.c[i])) continue;
    out.c[monomial_rank(mono_mul(ma[i], m), a.nvars)] = a.c[i];
  }
  return out;
}

template <class F>
void hp_axpy(const F& f, HomPoly<F>& a, const typename F::Elem& s, const HomPoly<F>& b) {
  if (a.degree != b.degree || a.nvars != b.nvars)
    throw Error(ErrorCode::DimensionMismatch, "sum of polynomials of different degrees");
  if (F::is_zero(s)) return;
  for (std::size_t i = 0; i < a.c.size(); ++i)
    if (!F::is_zero(b.c[i])) a.c[i] = f.add(a.c[i], f.mul(s, b.c[i]));
}

template <class F>
HomPoly<F> hp_scale(const F& f, const HomPoly<F>& a, const typename F::Elem& s) {
  HomPoly<F> out = a;
  for (auto& x : out.c)
    if (!F::is_zero(x)) x = f.mul(x, s);
  return out;
}

template <class F>
bool hp_divide_linear(const F& f, const HomPoly<F>& a, const Vec<F>& lin, HomPoly<F>& out) {
  const int n = a.nvars;
  int piv = -1;
  for (int i = 0; i < n; ++i)
    if (!F::is_zero(lin[i])) {
      piv = i;
      break;
    }
  if (piv < 0) throw Error(ErrorCode::ZeroForm, "division by the zero form");
  out = HomPoly<F>::zero(f, n, a.degree - 1);
  if (a.degree < 1) return a.is_zero();
  HomPoly<F> r = a;
  const auto& ms = monomials_cached(n, a.degree);
  const auto inv = f.inv(lin[piv]);
  // Dense order is descending lex and x_piv leads the divisor, so updates only
  // touch positions after the current one.
  for (std::size_t k = 0; k < r.c.size(); ++k) {
    if (F::is_zero(r.c[k])) continue;
    Monomial m = ms[k];
    if (m.e[piv] == 0) return false;
    m.e[piv]--;
    const auto q = f.mul(r.c[k], inv);
    out.c[monomial_rank(m, n)] = q;
    for (int j = piv; j < n; ++j) {
      if (F::is_zero(lin[j])) continue;
      Monomial t = m;
      t.e[j]++;
      const std::size_t idx = monomial_rank(t, n);
      r.c[idx] = f.sub(r.c[idx], f.mul(q, lin[j]));
    }
  }
  return true;
}

template <class F>
bool hp_proportional(const F& f, const HomPoly<F>& a, const HomPoly<F>& b, typename F::Elem& c) {
  if (a.nvars != b.nvars || a.degree != b.degree) return false;
  std::size_t k = 0;
  while (k < b.c.size() && F::is_zero(b.c[k])) ++k;
  if (k == b.c.size()) return false;
  c = f.div(a.c[k], b.c[k]);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    if (!f.equal(a.c[i], f.mul(c, b.c[i]))) return false;
  return true;
}

template <class F>
HomPoly<F> hp_product_of_linear(const F& f, int nvars, const std::vector<Vec<F>>& forms,
                                const std::vector<int>& powers) {
  HomPoly<F> out = hp_constant(f, nvars, f.one());
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const HomPoly<F> lin = hp_linear(f, forms[i]);
    for (int k = 0; k < powers[i]; ++k) out = hp_mul(f, out, lin);
  }
  return out;
}

template <class F>
std::string hp_to_string(const F& f, const HomPoly<F>& a) {
  return Poly<F>::from_hom(f, a).to_string();
}

template <class F>
Poly<F> Poly<F>::variable(F field, int nvars, int i) {
  if (i < 0 || i >= nvars) throw Error(ErrorCode::IndexOutOfRange, "variable index out of range");
  Poly p(field, nvars);
  Monomial m;
  m.e[i] = 1;
  p.terms_[m] = field.one();
  return p;
}

template <class F>
Poly<F> Poly<F>::constant(F field, int nvars, const Elem& v) {
  Poly p(field, nvars);
  if (!F::is_zero(v)) p.terms_[Monomial{}] = v;
  return p;
}

template <class F>
Poly<F> Poly<F>::from_hom(F field, const HomPoly<F>& h) {
  Poly p(field, h.nvars);
  if (h.degree < 0) return p;
  const auto& ms = monomials_cached(h.nvars, h.degree);
  for (std::size_t i = 0; i < h.c.size(); ++i)
    if (!F::is_zero(h.c[i])) p.terms_[ms[i]] = h.c[i];
  return p;
}

template <class F>
int Poly<F>::degree() const {
  int d = -1;
  for (const auto& [m, v] : terms_) d = std::max(d, m.degree());
  return d;
}

template <class F>
bool Poly<F>::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = terms_.begin()->first.degree();
  for (const auto& [m, v] : terms_)
    if (m.degree() != d) return false;
  return true;
}

template <class F>
HomPoly<F> Poly<F>::to_hom(int degree_if_zero) const {
  if (!is_homogeneous()) throw Error(ErrorCode::NotHomogeneous, "polynomial is not homogeneous");
  const int d = terms_.empty() ? degree_if_zero : degree();
  HomPoly<F> h = HomPoly<F>::zero(field_, nvars_, d);
  for (const auto& [m, v] : terms_) h.c[monomial_rank(m, nvars_)] = v;
  return h;
}

template <class F>
void Poly<F>::add_term(const Monomial& m, const Elem& v) {
  if (F::is_zero(v)) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, v);
    return;
  }
  it->second = field_.add(it->second, v);
  if (F::is_zero(it->second)) terms_.erase(it);
}

template <class F>
Poly<F> Poly<F>::operator+(const Poly& o) const {
  require_same_field(field_, o.field_);
  Poly r = *this;
  for (const auto& [m, v] : o.terms_) r.add_term(m, v);
  return r;
}

template <class F>
Poly<F> Poly<F>::operator-(const Poly& o) const {
  return *this + o.scaled(field_.neg(field_.one()));
}

template <class F>
Poly<F> Poly<F>::operator*(const Poly& o) const {
  require_same_field(field_, o.field_);
  if (nvars_ != o.nvars_) throw Error(ErrorCode::DimensionMismatch, "product of polynomials in different rings");
  Poly r(field_, nvars_);
  for (const auto& [ma, va] : terms_)
    for (const auto& [mb, vb] : o.terms_) r.add_term(mono_mul(ma, mb), field_.mul(va, vb));
  return r;
}

template <class F>
Poly<F> Poly<F>::scaled(const Elem& s) const {
  Poly r(field_, nvars_);
  if (F::is_zero(s)) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace(m, field_.mul(v, s));
  return r;
}

template <class F>
Poly<F> Poly<F>::pow(int e) const {
  Poly r = constant(field_, nvars_, field_.one());
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

template <class F>
std::string Poly<F>::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest lex monomial first, matching monomial_basis order.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    const std::string mono = arrlog::to_string(it->first, nvars_);
    if (mono == "1") {
      os << field_.to_string(it->second);
    } else if (field_.is_one(it->second)) {
      os << mono;
    } else {
      os << field_.to_string(it->second) << "*" << mono;
    }
  }
  return os.str();
}

template <class F>
Poly<F> substitute_linear(const Poly<F>& f, const Matrix<F>& t) {
  const F& field = f.field();
  require_same_field(field, t.field());
  const int n = f.nvars();
  if (static_cast<int>(t.rows()) != n || static_cast<int>(t.cols()) != n)
    throw Error(ErrorCode::DimensionMismatch, "substitution matrix must be square of ambient size");
  if (F::is_zero(determinant(t))) throw Error(ErrorCode::Singular, "substitution matrix is singular");
  std::vector<Poly<F>> images;
  for (int i = 0; i < n; ++i) {
    Poly<F> img(field, n);
    for (int j = 0; j < n; ++j) {
      Monomial m;
      m.e[j] = 1;
      img.add_term(m, t(i, j));
    }
    images.push_back(std::move(img));
  }
  std::vector<std::vector<Poly<F>>> powers(n);
  Poly<F> out(field, n);
  for (const auto& [m, v] : f.terms()) {
    Poly<F> term = Poly<F>::constant(field, n, v);
    for (int i = 0; i < n; ++i) {
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Poly<F>::constant(field, n, field.one()));
      while (static_cast<int>(pw.size()) <= m.e[i]) pw.push_back(pw.back() * images[i]);
      if (m.e[i] > 0) term = term * pw[m.e[i]];
    }
    out = out + term;
  }
  return out;
}

template <class F>
LinearForm<F> LinearForm<F>::make(const F& f, Vec<F> coeffs) {
  (void)f;
  bool nonzero = false;
  for (const auto& x : coeffs) nonzero = nonzero || !F::is_zero(x);
  if (!nonzero) throw Error(ErrorCode::ZeroForm, "linear form is zero");
  return LinearForm{std::move(coeffs)};
}

template <class F>
int LinearForm<F>::pivot() const {
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (!F::is_zero(coeffs[i])) return static_cast<int>(i);
  throw Error(ErrorCode::ZeroForm, "linear form is zero");
}

template <class F>
std::vector<int> LinearForm<F>::support() const {
  std::vector<int> s;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (!F::is_zero(coeffs[i])) s.push_back(static_cast<int>(i));
  return s;
}

template <class F>
Matrix<F> adapted_coordinates(const F& f, const LinearForm<F>& a) {
  const int n = a.nvars();
  Matrix<F> m = Matrix<F>::identity(f, n);
  const int piv = a.pivot();
  for (int j = 0; j < n; ++j) m(piv, j) = a.coeffs[j];
  return m;
}

template <class F>
Matrix<F> divisibility_constraints(const F& f, int nvars, int d, const LinearForm<F>& alpha, int m) {
  if (nvars != alpha.nvars()) throw Error(ErrorCode::DimensionMismatch, "form has the wrong number of variables");
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "multiplicity must be positive");
  const int piv = alpha.pivot();
  const Matrix<F> back = inverse(adapted_coordinates(f, alpha));  // x = back * y
  const auto& cols = monomials_cached(nvars, d);
  std::vector<Monomial> row_monos;
  for (const auto& mono : cols)
    if (mono.e[piv] < m) row_monos.push_back(mono);
  Matrix<F> out(f, row_monos.size(), cols.size());
  std::map<Monomial, std::size_t> row_of;
  for (std::size_t r = 0; r < row_monos.size(); ++r) row_of[row_monos[r]] = r;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    Poly<F> xm(f, nvars);
    xm.add_term(cols[c], f.one());
    const Poly<F> img = substitute_linear(xm, back);
    for (const auto& [mono, v] : img.terms()) {
      auto it = row_of.find(mono);
      if (it != row_of.end()) out(it->second, c) = v;
    }
  }
  return out;
}

template <class F>
std::vector<Poly<F>> wedge_numerators(const std::vector<Poly<F>>& f, const LinearForm<F>& alpha) {
  const int n = alpha.nvars();
  if (static_cast<int>(f.size()) != n) throw Error(ErrorCode::DimensionMismatch, "need one numerator per variable");
  int deg = -1;
  for (const auto& p : f) {
    if (!p.is_homogeneous()) throw Error(ErrorCode::NotHomogeneous, "numerator is not homogeneous");
    if (p.is_zero()) continue;
    if (deg >= 0 && p.degree() != deg) throw Error(ErrorCode::NotHomogeneous, "numerators of different degrees");
    deg = p.degree();
  }
  std::vector<Poly<F>> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.push_back(f[i].scaled(alpha.coeffs[j]) - f[j].scaled(alpha.coeffs[i]));
  return out;
}

std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

int shuffle_sign(const std::vector<int>& i, const std::vector<int>& j) {
  int inversions = 0;
  for (int a : i)
    for (int b : j)
      if (a > b) ++inversions;
  return inversions % 2 ? -1 : 1;
}

#define ARRLOG_INSTANTIATE(F)                                                                          \
  template struct HomPoly<F>;                                                                          \
  template HomPoly<F> hp_linear(const F&, const Vec<F>&);                                              \
  template HomPoly<F> hp_constant(const F&, int, const F::Elem&);                                      \
  template HomPoly<F> hp_mul(const F&, const HomPoly<F>&, const HomPoly<F>&);                          \
  template HomPoly<F> hp_shift(const HomPoly<F>&, const Monomial&);                                    \
  template void hp_axpy(const F&, HomPoly<F>&, const F::Elem&, const HomPoly<F>&);                     \
  template HomPoly<F> hp_scale(const F&, const HomPoly<F>&, const F::Elem&);                           \
  template bool hp_divide_linear(const F&, const HomPoly<F>&, const Vec<F>&, HomPoly<F>&);             \
  template bool hp_proportional(const F&, const HomPoly<F>&, const HomPoly<F>&, F::Elem&);             \
  template HomPoly<F> hp_product_of_linear(const F&, int, const std::vector<Vec<F>>&,                  \
                                           const std::vector<int>&);                                   \
  template std::string hp_to_string(const F&, const HomPoly<F>&);                                      \
  template class Poly<F>;                                                                              \
  template Poly<F> substitute_linear(const Poly<F>&, const Matrix<F>&);                                \
  template struct LinearForm<F>;                                                                       \
  template Matrix<F> adapted_coordinates(const F&, const LinearForm<F>&);                              \
  template Matrix<F> divisibility_constraints(const F&, int, int, const LinearForm<F>&, int);          \
  template std::vector<Poly<F>> wedge_numerators(const std::vector<Poly<F>>&, const LinearForm<F>&);

ARRLOG_INSTANTIATE(RationalField)
ARRLOG_INSTANTIATE(PrimeField)

#undef ARRLOG_INSTANTIATE

}  // namespace arrlog
