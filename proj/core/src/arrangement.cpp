#include "arrlog/arrangement.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace arrlog {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

int parse_int(const std::string& s, const std::string& what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw Error(ErrorCode::Parse, what + " must be a nonnegative integer, got '" + s + "'");
  return std::stoi(s);
}

}  // namespace

ArrangementText parse_arrangement(const std::string& text) {
  ArrangementText a;
  bool have_field = false, have_dim = false;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok[0] == "field") {
      if (have_field) fail("duplicate field line");
      if (tok.size() == 2 && tok[1] == "Q") {
        a.field = FieldSpec::rationals();
      } else if (tok.size() == 3 && tok[1] == "Fp") {
        try {
          a.field = FieldSpec::prime(std::stoull(tok[2]));
        } catch (const std::exception& e) {
          fail(std::string("bad prime: ") + e.what());
        }
      } else {
        fail("expected `field Q` or `field Fp <p>`");
      }
      have_field = true;
      continue;
    }
    if (tok[0] == "dim") {
      if (!have_field) fail("`field` must come before `dim`");
      if (have_dim || tok.size() != 2) fail("expected a single `dim <l>` line");
      try {
        a.dim = parse_int(tok[1], "dim");
      } catch (const Error& e) {
        fail(e.what());
      }
      if (a.dim < 1 || a.dim > kMaxVars) fail("dim must lie in [1, " + std::to_string(kMaxVars) + "]");
      have_dim = true;
      continue;
    }
    if (!have_dim) fail("hyperplane given before `dim`");
    int mult = 1;
    if (auto star = tok.back().find('*'); star != std::string::npos) {
      const std::string m = tok.back().substr(star + 1);
      tok.back().resize(star);
      if (tok.back().empty()) tok.pop_back();
      try {
        mult = parse_int(m, "multiplicity");
      } catch (const Error& e) {
        fail(e.what());
      }
      if (mult < 1) fail("multiplicity must be positive");
    }
    if (static_cast<int>(tok.size()) != a.dim)
      fail("expected " + std::to_string(a.dim) + " coefficients, got " + std::to_string(tok.size()));
    std::vector<mpq_class> row;
    for (const auto& t : tok) {
      try {
        row.push_back(parse_rational(t));
      } catch (const Error& e) {
        fail(e.what());
      }
    }
    a.forms.push_back(std::move(row));
    a.mult.push_back(mult);
  }
  if (!have_field) throw Error(ErrorCode::Parse, "missing `field` line");
  if (!have_dim) throw Error(ErrorCode::Parse, "missing `dim` line");
  return a;
}

ArrangementText read_arrangement_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  ArrangementText a = parse_arrangement(ss.str());
  a.name = path;
  return a;
}

std::string format_arrangement(const ArrangementText& a) {
  std::ostringstream os;
  os << "field " << (a.field.is_prime_field() ? "Fp " + std::to_string(a.field.p) : std::string("Q")) << "\n";
  os << "dim " << a.dim << "\n";
  for (std::size_t i = 0; i < a.forms.size(); ++i) {
    for (std::size_t j = 0; j < a.forms[i].size(); ++j) os << (j ? " " : "") << a.forms[i][j].get_str();
    if (a.mult[i] != 1) os << " *" << a.mult[i];
    os << "\n";
  }
  return os.str();
}

namespace {

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  PrimeField f(p);
  return f.pow(a % p, e);
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    out.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<std::uint64_t> roots_of_unity(int r, std::uint64_t p) {
  if ((p - 1) % r != 0)
    throw Error(ErrorCode::FieldUnsupported,
                "F_" + std::to_string(p) + " has no primitive " + std::to_string(r) + "-th root of unity");
  const auto factors = prime_factors(p - 1);
  std::uint64_t g = 2;
  for (;; ++g) {
    bool generator = true;
    for (auto q : factors) generator = generator && powmod(g, (p - 1) / q, p) != 1;
    if (generator) break;
  }
  const std::uint64_t zeta = powmod(g, (p - 1) / r, p);
  std::vector<std::uint64_t> roots;
  std::uint64_t z = 1;
  for (int k = 0; k < r; ++k) {
    roots.push_back(z);
    z = static_cast<std::uint64_t>(static_cast<unsigned __int128>(z) * zeta % p);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<mpq_class> unit(int dim, int i, long scale = 1) {
  std::vector<mpq_class> v(dim, 0);
  v[i] = scale;
  return v;
}

bool general_position(const std::vector<std::vector<mpq_class>>& forms, int dim, const FieldSpec& field) {
  const int k = std::min<int>(dim, static_cast<int>(forms.size()));
  auto check = [&](auto f) {
    for (const auto& s : subsets(static_cast<int>(forms.size()), k)) {
      std::vector<std::vector<mpq_class>> rows;
      for (int i : s) rows.push_back(forms[i]);
      if (rank(Matrix<decltype(f)>::from_rows(f, rows, dim)) != static_cast<std::size_t>(k)) return false;
    }
    return true;
  };
  return field.is_prime_field() ? check(PrimeField(field.p)) : check(RationalField());
}

}  // namespace

std::vector<std::uint64_t> default_primes_for_roots(int r) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2 * r + 1; out.size() < 3; ++p)
    if (p > 2 && is_prime(p) && (p - 1) % r == 0) out.push_back(p);
  return out;
}

ArrangementText example_library(const std::string& spec_in, std::optional<FieldSpec> field) {
  std::string spec = spec_in;
  if (!spec.empty() && spec[0] == '@') spec = spec.substr(1);
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  std::vector<int> params;
  if (colon != std::string::npos) {
    for (const auto& t : split(spec.substr(colon + 1), ',')) params.push_back(parse_int(trim(t), "library parameter"));
  }
  auto param = [&](std::size_t i, int fallback) { return i < params.size() ? params[i] : fallback; };
  ArrangementText a;
  a.name = "@" + spec;
  a.field = field.value_or(FieldSpec::rationals());
  auto check_dim = [&](int d) {
    if (d < 1 || d > kMaxVars)
      throw Error(ErrorCode::InvalidArgument, "dimension must lie in [1, " + std::to_string(kMaxVars) + "]");
  };

  if (name == "boolean" || name == "empty") {
    a.dim = param(0, 3);
    check_dim(a.dim);
    if (name == "boolean")
      for (int i = 0; i < a.dim; ++i) a.forms.push_back(unit(a.dim, i));
  } else if (name == "braid") {
    a.dim = param(0, 3);
    check_dim(a.dim);
    for (int i = 0; i < a.dim; ++i)
      for (int j = i + 1; j < a.dim; ++j) {
        auto v = unit(a.dim, i);
        v[j] = -1;
        a.forms.push_back(v);
      }
  } else if (name == "braid-ess") {
    // x_i - x_n in the coordinates y_i = x_i - x_n.
    const int n = param(0, 4);
    a.dim = n - 1;
    check_dim(a.dim);
    for (int i = 0; i < a.dim; ++i) a.forms.push_back(unit(a.dim, i));
    for (int i = 0; i < a.dim; ++i)
      for (int j = i + 1; j < a.dim; ++j) {
        auto v = unit(a.dim, i);
        v[j] = -1;
        a.forms.push_back(v);
      }
  } else if (name == "generic") {
    const int n = param(0, 5);
    a.dim = param(1, 3);
    check_dim(a.dim);
    std::mt19937_64 rng(static_cast<std::uint64_t>(param(2, 1)));
    for (int attempt = 0;; ++attempt) {
      if (attempt == 100) throw Error(ErrorCode::InvalidArgument, "could not sample a generic arrangement");
      a.forms.clear();
      for (int i = 0; i < n; ++i) {
        std::vector<mpq_class> v(a.dim);
        for (auto& x : v) {
          if (a.field.is_prime_field()) {
            mpz_class z;
            mpz_set_ui(z.get_mpz_t(), static_cast<unsigned long>(draw(rng, 0, a.field.p - 1)));
            x = z;
          } else {
            x = static_cast<long>(draw(rng, 1, 1000));
          }
        }
        a.forms.push_back(v);
      }
      if (general_position(a.forms, a.dim, a.field)) break;
    }
  } else if (name == "g") {
    const int r = param(0, 3);
    if (r < 1) throw Error(ErrorCode::InvalidArgument, "g:r needs r >= 1");
    if (!field && r > 2) a.field = FieldSpec::prime(default_primes_for_roots(r)[0]);
    a.dim = 3;
    std::vector<mpq_class> roots;
    if (a.field.is_prime_field()) {
      for (auto z : roots_of_unity(r, a.field.p)) {
        mpz_class v;
        mpz_set_ui(v.get_mpz_t(), static_cast<unsigned long>(z));
        roots.emplace_back(v);
      }
    } else {
      if (r > 2) throw Error(ErrorCode::FieldUnsupported, "G(r,r,3) with r > 2 needs F_p with p = 1 mod r");
      roots.emplace_back(1);
      if (r == 2) roots.emplace_back(-1);
    }
    for (auto [i, j] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{0, 2}})
      for (const auto& z : roots) {
        std::vector<mpq_class> v(3, 0);
        v[i] = 1;
        v[j] = -z;
        a.forms.push_back(v);
      }
  } else if (name == "ziegler22") {
    a.dim = 4;
    for (int i = 0; i < 4; ++i) a.forms.push_back(unit(4, i));
    const int top[3] = {2, 3, 4};  // x_i^2 - c^2 x_4^2 for c = 1..top
    for (int i = 0; i < 3; ++i)
      for (int c = 1; c <= top[i]; ++c)
        for (int s : {1, -1}) {
          auto v = unit(4, i);
          v[3] = -s * c;
          a.forms.push_back(v);
        }
  } else if (name == "nine4d") {
    a.dim = 4;
    const int cols[9][4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 0, 1},
                            {0, 0, 1, 1}, {1, 1, 0, 1}, {1, 0, 1, 1}, {0, 1, 1, 1}};
    for (const auto& c : cols) a.forms.push_back({c[0], c[1], c[2], c[3]});
  } else {
    throw Error(ErrorCode::UnknownLibrary, "unknown library arrangement '" + name + "'");
  }
  if (a.field.is_prime_field()) {
    mpz_class pz;
    mpz_set_ui(pz.get_mpz_t(), static_cast<unsigned long>(a.field.p));
    for (auto& row : a.forms)
      for (auto& x : row) {
        if (x.get_den() != 1) continue;
        mpz_class z = x.get_num() % pz;
        if (z < 0) z += pz;
        x = z;
      }
  }
  a.mult.assign(a.forms.size(), 1);
  return a;
}

template <class F>
int Arrangement<F>::degree() const {
  int d = 0;
  for (int m : mult) d += m;
  return d;
}

template <class F>
bool Arrangement<F>::is_simple_multiplicity() const {
  return std::all_of(mult.begin(), mult.end(), [](int m) { return m == 1; });
}

template <class F>
HomPoly<F> Arrangement<F>::defining_polynomial() const {
  return hp_product_of_linear(field, dim, forms, mult);
}

template <class F>
ArrangementText Arrangement<F>::to_text(const std::string& name) const {
  ArrangementText t;
  t.field = field.spec();
  t.dim = dim;
  t.mult = mult;
  t.name = name;
  for (const auto& f : forms) {
    std::vector<mpq_class> row;
    for (const auto& x : f) {
      if constexpr (std::is_same_v<F, PrimeField>) {
        mpz_class z;
        mpz_set_ui(z.get_mpz_t(), static_cast<unsigned long>(x));
        row.emplace_back(z);
      } else {
        row.push_back(field.to_rational(x));
      }
    }
    t.forms.push_back(std::move(row));
  }
  return t;
}

namespace {

template <class F>
bool parallel(const F& f, const Vec<F>& a, const Vec<F>& b) {
  // a and b are parallel iff all 2x2 minors vanish.
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (!f.equal(f.mul(a[i], b[j]), f.mul(a[j], b[i]))) return false;
  return true;
}

template <class F>
bool is_zero_vec(const Vec<F>& v) {
  return std::all_of(v.begin(), v.end(), [](const auto& x) { return F::is_zero(x); });
}

template <class F>
Vec<F> normalized(const F& f, Vec<F> v) {
  for (const auto& x : v)
    if (!F::is_zero(x)) {
      const auto inv = f.inv(x);
      for (auto& y : v) y = f.mul(y, inv);
      break;
    }
  return v;
}

template <class F>
std::string vec_key(const F& f, const Vec<F>& v) {
  std::string k;
  for (const auto& x : v) k += f.to_string(x) + ",";
  return k;
}

template <class F>
void check_simple(const Arrangement<F>& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.forms[i].size() != static_cast<std::size_t>(a.dim))
      throw Error(ErrorCode::DimensionMismatch, "hyperplane " + std::to_string(i) + " has the wrong length");
    if (is_zero_vec<F>(a.forms[i])) throw Error(ErrorCode::ZeroForm, "hyperplane " + std::to_string(i) + " is zero");
    if (a.mult[i] < 1) throw Error(ErrorCode::InvalidArgument, "multiplicities must be positive");
  }
  std::map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto key = vec_key(a.field, normalized(a.field, a.forms[i]));
    auto [it, fresh] = seen.emplace(key, i);
    if (!fresh)
      throw Error(ErrorCode::DuplicateHyperplane,
                  "hyperplanes " + std::to_string(it->second) + " and " + std::to_string(i) + " are parallel");
  }
}

// Reduces v against the rows of a matrix in reduced row echelon form.
template <class F>
Vec<F> reduce(const F& f, Vec<F> v, const Matrix<F>& rref_rows) {
  for (std::size_t r = 0; r < rref_rows.rows(); ++r) {
    std::size_t piv = 0;
    while (piv < rref_rows.cols() && F::is_zero(rref_rows(r, piv))) ++piv;
    if (piv == rref_rows.cols() || F::is_zero(v[piv])) continue;
    const auto s = v[piv];
    for (std::size_t j = piv; j < v.size(); ++j) v[j] = f.sub(v[j], f.mul(s, rref_rows(r, j)));
  }
  return v;
}

template <class F>
Matrix<F> row_space(const F& f, const std::vector<Vec<F>>& rows, std::size_t cols) {
  auto r = rref(Matrix<F>::from_vectors(f, rows, cols));
  std::vector<std::size_t> keep(r.rank);
  for (std::size_t i = 0; i < r.rank; ++i) keep[i] = i;
  return r.matrix.select_rows(keep);
}

template <class F>
std::vector<Vec<F>> rows_of(const Matrix<F>& m) {
  std::vector<Vec<F>> out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(m.row_vector(i));
  return out;
}

template <class F>
std::vector<int> members_of(const Arrangement<F>& a, const Matrix<F>& eq) {
  std::vector<int> m;
  for (std::size_t j = 0; j < a.size(); ++j)
    if (is_zero_vec<F>(reduce(a.field, a.forms[j], eq))) m.push_back(static_cast<int>(j));
  return m;
}

}  // namespace

template <class F>
Arrangement<F> make_arrangement(const F& field, const ArrangementText& text) {
  if (text.field.is_prime_field() != field.spec().is_prime_field() ||
      (text.field.is_prime_field() && text.field.p != field.spec().p)) {
    throw Error(ErrorCode::FieldMismatch,
                "arrangement over " + text.field.to_string() + " used with " + field.spec().to_string());
  }
  Arrangement<F> a{field, text.dim, {}, text.mult};
  if (a.mult.empty()) a.mult.assign(text.forms.size(), 1);
  for (const auto& row : text.forms) {
    Vec<F> v;
    for (const auto& x : row) v.push_back(field.from_rational(x));
    a.forms.push_back(std::move(v));
  }
  check_simple(a);
  return a;
}

template <class F>
ValidationReport validate(const Arrangement<F>& a) {
  check_simple(a);
  ValidationReport r;
  r.rank = a.size() ? static_cast<int>(rank(Matrix<F>::from_vectors(a.field, a.forms, a.dim))) : 0;
  r.essential = r.rank == a.dim;
  return r;
}

template <class F>
Lattice<F> intersection_lattice(const Arrangement<F>& a, int max_codim) {
  const F& f = a.field;
  max_codim = std::clamp(max_codim, 0, a.dim);
  Lattice<F> lat;
  lat.dim = a.dim;
  lat.max_codim = max_codim;
  lat.levels.resize(max_codim + 1);
  lat.levels[0].push_back(Flat<F>{Matrix<F>(f, 0, a.dim), {}, 0, 1});
  for (int k = 1; k <= max_codim; ++k) {
    std::map<std::string, std::size_t> index;
    std::vector<Flat<F>> level;
    for (const auto& x : lat.levels[k - 1]) {
      std::size_t next = 0;
      for (std::size_t j = 0; j < a.size(); ++j) {
        while (next < x.members.size() && x.members[next] < static_cast<int>(j)) ++next;
        if (next < x.members.size() && x.members[next] == static_cast<int>(j)) continue;
        auto rows = rows_of(x.equations);
        rows.push_back(a.forms[j]);
        Matrix<F> eq = row_space(f, rows, a.dim);
        std::string key;
        for (std::size_t r = 0; r < eq.rows(); ++r) key += vec_key(f, eq.row_vector(r)) + ";";
        if (index.count(key)) continue;
        index.emplace(key, level.size());
        level.push_back(Flat<F>{eq, members_of(a, eq), k, 0});
      }
    }
    std::sort(level.begin(), level.end(), [](const Flat<F>& u, const Flat<F>& v) { return u.members < v.members; });
    lat.levels[k] = std::move(level);
    if (lat.levels[k].empty()) {
      lat.levels.resize(k);
      lat.max_codim = k - 1;
      break;
    }
  }
  for (int k = 1; k < static_cast<int>(lat.levels.size()); ++k) {
    for (auto& x : lat.levels[k]) {
      long s = 0;
      for (int j = 0; j < k; ++j)
        for (const auto& y : lat.levels[j])
          if (std::includes(x.members.begin(), x.members.end(), y.members.begin(), y.members.end())) s += y.mobius;
      x.mobius = -s;
    }
  }
  return lat;
}

template <class F>
std::vector<long> characteristic_polynomial(const Arrangement<F>& a) {
  const auto lat = intersection_lattice(a, a.dim);
  std::vector<long> chi(a.dim + 1, 0);
  for (const auto& level : lat.levels)
    for (const auto& x : level) chi[a.dim - x.codim] += x.mobius;
  return chi;
}

std::string polynomial_to_string(const std::vector<long>& coeffs, const std::string& var) {
  std::string s;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    const long c = coeffs[k];
    if (c == 0) continue;
    const long mag = c < 0 ? -c : c;
    s += s.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
    if (mag != 1 || k == 0) s += std::to_string(mag);
    if (k > 0) s += var + (k > 1 ? "^" + std::to_string(k) : "");
  }
  return s.empty() ? "0" : s;
}

template <class F>
Arrangement<F> delete_hyperplane(const Arrangement<F>& a, std::size_t i) {
  if (i >= a.size()) throw Error(ErrorCode::IndexOutOfRange, "hyperplane index " + std::to_string(i) + " out of range");
  Arrangement<F> d = a;
  d.forms.erase(d.forms.begin() + static_cast<long>(i));
  d.mult.erase(d.mult.begin() + static_cast<long>(i));
  return d;
}

template <class F>
Arrangement<F> add_hyperplane(const Arrangement<F>& a, const Vec<F>& form) {
  Arrangement<F> b = a;
  b.forms.push_back(form);
  b.mult.push_back(1);
  check_simple(b);
  return b;
}

template <class F>
Vec<F> pullback_form(const F& f, const Vec<F>& form, int pivot, const Vec<F>& h) {
  const auto ratio = f.div(form[pivot], h[pivot]);
  Vec<F> out;
  for (std::size_t j = 0; j < form.size(); ++j) {
    if (static_cast<int>(j) == pivot) continue;
    out.push_back(f.sub(form[j], f.mul(ratio, h[j])));
  }
  return out;
}

namespace {

template <class F>
Restriction<F> restrict_impl(const Arrangement<F>& a, const Vec<F>& h, std::optional<std::size_t> skip) {
  const F& f = a.field;
  if (a.dim < 2) throw Error(ErrorCode::InvalidArgument, "restriction needs dimension at least 2");
  const int pivot = LinearForm<F>::make(f, h).pivot();
  Matrix<F> embedding(f, a.dim - 1, a.dim);
  {
    std::size_t row = 0;
    const auto inv = f.inv(h[pivot]);
    for (int j = 0; j < a.dim; ++j) {
      if (j == pivot) continue;
      embedding(row, j) = f.one();
      embedding(row, pivot) = f.neg(f.mul(h[j], inv));
      ++row;
    }
  }
  Restriction<F> r{Arrangement<F>{f, a.dim - 1, {}, {}}, embedding, pivot, h, {}, {}};
  std::map<std::string, int> index;
  r.trace_index.assign(a.size(), -1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (skip && *skip == i) continue;
    Vec<F> img = pullback_form(f, a.forms[i], pivot, h);
    if (is_zero_vec<F>(img))
      throw Error(ErrorCode::InLattice, "hyperplane " + std::to_string(i) + " coincides with the restricting hyperplane");
    const auto key = vec_key(f, normalized(f, img));
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, static_cast<int>(r.arrangement.size())).first;
      r.arrangement.forms.push_back(img);
      r.arrangement.mult.push_back(1);
      r.ziegler_multiplicity.push_back(0);
    }
    r.trace_index[i] = it->second;
    r.ziegler_multiplicity[it->second] += a.mult[i];
  }
  return r;
}

}  // namespace

template <class F>
Restriction<F> restrict_to(const Arrangement<F>& a, std::size_t i) {
  if (i >= a.size()) throw Error(ErrorCode::IndexOutOfRange, "hyperplane index " + std::to_string(i) + " out of range");
  return restrict_impl(a, a.forms[i], i);
}

template <class F>
Restriction<F> restrict_to_form(const Arrangement<F>& a, const Vec<F>& h) {
  if (h.size() != static_cast<std::size_t>(a.dim)) throw Error(ErrorCode::DimensionMismatch, "form has the wrong length");
  return restrict_impl(a, h, std::nullopt);
}

template <class F>
GenericityCertificate<F> is_k_generic(const Matrix<F>& x, const Arrangement<F>& a, const Lattice<F>& lattice, int k) {
  const F& f = a.field;
  if (x.cols() != static_cast<std::size_t>(a.dim)) throw Error(ErrorCode::DimensionMismatch, "subspace has the wrong ambient dimension");
  const Matrix<F> eq = row_space(f, rows_of(x), a.dim);
  const int cx = static_cast<int>(eq.rows());
  const auto members = members_of(a, eq);
  {
    std::vector<Vec<F>> rows;
    for (int j : members) rows.push_back(a.forms[j]);
    const std::size_t r = rows.empty() ? 0 : rank(Matrix<F>::from_vectors(f, rows, a.dim));
    if (static_cast<int>(r) == cx) throw Error(ErrorCode::InLattice, "the subspace is a flat of the arrangement");
  }
  if (k > lattice.max_codim && lattice.max_codim < a.dim) {
    return is_k_generic(x, a, intersection_lattice(a, k), k);
  }
  GenericityCertificate<F> cert;
  cert.k = k;
  cert.generic = true;
  for (int c = 1; c <= std::min<int>(k, static_cast<int>(lattice.levels.size()) - 1); ++c) {
    for (const auto& y : lattice.levels[c]) {
      auto rows = rows_of(eq);
      for (auto& r : rows_of(y.equations)) rows.push_back(std::move(r));
      if (static_cast<int>(rank(Matrix<F>::from_vectors(f, rows, a.dim))) != cx + c) {
        cert.generic = false;
        cert.witness = y.members;
        cert.witness_codim = c;
        return cert;
      }
    }
  }
  return cert;
}

template <class F>
GenericityCertificate<F> is_k_generic(const Matrix<F>& x, const Arrangement<F>& a, int k) {
  return is_k_generic(x, a, intersection_lattice(a, std::max(k, 0)), k);
}

template <class F>
int genericity_level(const Matrix<F>& x, const Arrangement<F>& a, const Lattice<F>& lattice) {
  const int cx = static_cast<int>(rank(x));
  int level = 0;
  for (int k = 1; k <= a.dim - cx; ++k) {
    if (!is_k_generic(x, a, lattice, k).generic) break;
    level = k;
  }
  return level;
}

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo + 1;
  return span == 0 ? rng() : lo + rng() % span;
}

template <class F>
SampledHyperplane<F> sample_generic_hyperplane(const Arrangement<F>& a, std::uint64_t seed, int max_attempts) {
  const F& f = a.field;
  std::mt19937_64 rng(seed);
  const auto lattice = intersection_lattice(a, a.dim - 1);
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    Vec<F> v;
    for (int j = 0; j < a.dim; ++j) {
      if constexpr (std::is_same_v<F, PrimeField>) {
        v.push_back(draw(rng, 0, f.modulus() - 1));
      } else {
        v.push_back(f.from_int(static_cast<long>(draw(rng, 1, 1000))));
      }
    }
    if (is_zero_vec<F>(v)) continue;
    Matrix<F> x(f, 1, a.dim);
    for (int j = 0; j < a.dim; ++j) x(0, j) = v[j];
    try {
      auto cert = is_k_generic(x, a, lattice, a.dim - 1);
      if (cert.generic) return SampledHyperplane<F>{v, attempt, cert};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InLattice) throw;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "no certified generic hyperplane after " + std::to_string(max_attempts) +
                                              " samples from seed " + std::to_string(seed) + "; try another seed");
}

#define ARRLOG_INSTANTIATE(F)                                                                              \
  template struct Arrangement<F>;                                                                          \
  template Arrangement<F> make_arrangement(const F&, const ArrangementText&);                              \
  template ValidationReport validate(const Arrangement<F>&);                                               \
  template Lattice<F> intersection_lattice(const Arrangement<F>&, int);                                    \
  template std::vector<long> characteristic_polynomial(const Arrangement<F>&);                             \
  template Arrangement<F> delete_hyperplane(const Arrangement<F>&, std::size_t);                           \
  template Arrangement<F> add_hyperplane(const Arrangement<F>&, const Vec<F>&);                            \
  template Vec<F> pullback_form(const F&, const Vec<F>&, int, const Vec<F>&);                              \
  template Restriction<F> restrict_to(const Arrangement<F>&, std::size_t);                                 \
  template Restriction<F> restrict_to_form(const Arrangement<F>&, const Vec<F>&);                          \
  template GenericityCertificate<F> is_k_generic(const Matrix<F>&, const Arrangement<F>&, int);            \
  template GenericityCertificate<F> is_k_generic(const Matrix<F>&, const Arrangement<F>&, const Lattice<F>&, \
                                                 int);                                                     \
  template int genericity_level(const Matrix<F>&, const Arrangement<F>&, const Lattice<F>&);               \
  template SampledHyperplane<F> sample_generic_hyperplane(const Arrangement<F>&, std::uint64_t, int);

ARRLOG_INSTANTIATE(RationalField)
ARRLOG_INSTANTIATE(PrimeField)

#undef ARRLOG_INSTANTIATE

}  // namespace arrlog
