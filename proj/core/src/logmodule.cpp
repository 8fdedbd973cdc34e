#include "arrlog/logmodule.hpp"

#include <algorithm>
#include <stdexcept>

namespace arrlog {

std::string to_string(LogKind k) { return k == LogKind::Derivations ? "D" : "Omega"; }

namespace {

std::map<std::vector<int>, std::size_t> subset_index(int n, int k) {
  std::map<std::vector<int>, std::size_t> out;
  const auto all = subsets(n, k);
  for (std::size_t i = 0; i < all.size(); ++i) out.emplace(all[i], i);
  return out;
}

std::vector<int> complement(int n, const std::vector<int>& s) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (!std::binary_search(s.begin(), s.end(), i)) out.push_back(i);
  return out;
}

template <class F>
bool divisible_power(const F& f, HomPoly<F> g, const Vec<F>& alpha, int m) {
  for (int k = 0; k < m; ++k) {
    if (g.is_zero()) return true;
    HomPoly<F> q;
    if (!hp_divide_linear(f, g, alpha, q)) return false;
    g = std::move(q);
  }
  return true;
}

template <class F>
typename F::Elem minor_det(const Matrix<F>& a, const std::vector<int>& rows, const std::vector<int>& cols) {
  Matrix<F> s(a.field(), rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = a(rows[i], cols[j]);
  return rows.empty() ? a.field().one() : determinant(s);
}

template <class F>
Piece<F> kernel_piece(const Matrix<F>& c) {
  const auto r = rref(c);
  Piece<F> out;
  out.basis = kernel_from_rref(r);
  std::vector<char> is_pivot(c.cols(), 0);
  for (auto p : r.pivots) is_pivot[p] = 1;
  for (std::size_t j = 0; j < c.cols(); ++j)
    if (!is_pivot[j]) out.coords.push_back(j);
  return out;
}

template <class F>
Piece<F> unit_piece(const F& f, std::size_t n) {
  Piece<F> out;
  for (std::size_t j = 0; j < n; ++j) {
    Vec<F> v(n, f.zero());
    v[j] = f.one();
    out.basis.push_back(std::move(v));
    out.coords.push_back(j);
  }
  return out;
}

template <class F>
HomPoly<F> segment(const Vec<F>& v, std::size_t off, int nvars, int degree) {
  HomPoly<F> h{nvars, degree, {}};
  const std::size_t n = monomial_count(nvars, degree);
  h.c.assign(v.begin() + off, v.begin() + off + n);
  return h;
}

template <class F>
std::vector<int> log_twists(const Arrangement<F>& a, LogKind kind, int p) {
  const int shift = kind == LogKind::Forms ? a.degree() : 0;
  std::vector<int> out;
  for (const auto& fam : subsets(a.dim, p)) {
    int deg = 0;
    for (std::size_t h = 0; h < a.size(); ++h) {
      const auto supp = a.form(h).support();
      const bool forced = kind == LogKind::Derivations
                              ? std::includes(fam.begin(), fam.end(), supp.begin(), supp.end())
                              : std::none_of(supp.begin(), supp.end(),
                                             [&](int j) { return std::binary_search(fam.begin(), fam.end(), j); });
      if (forced) deg += a.mult[h];
    }
    out.push_back(deg - shift);
  }
  return out;
}

template <class F>
std::vector<int> basis_twists(const std::vector<CoeffVector<F>>& basis, int extra) {
  std::vector<int> out;
  for (const auto& b : basis) out.push_back(b.degree + extra);
  return out;
}

template <class F>
void normalize_leading(const F& f, Vec<F>& v) {
  for (const auto& x : v) {
    if (F::is_zero(x)) continue;
    if (f.is_one(x)) return;
    const auto inv = f.inv(x);
    for (auto& y : v)
      if (!F::is_zero(y)) y = f.mul(y, inv);
    return;
  }
}

template <class F>
std::size_t leading_index(const Vec<F>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!F::is_zero(v[i])) return i;
  return v.size();
}

template <class F>
void eliminate_with(const F& f, Vec<F>& v, const typename F::Elem* row, std::size_t piv, std::size_t n) {
  if (F::is_zero(v[piv])) return;
  const auto c = v[piv];
  for (std::size_t j = piv; j < n; ++j)
    if (!F::is_zero(row[j])) v[j] = f.sub(v[j], f.mul(c, row[j]));
}

}  // namespace

template <class F>
CoeffVector<F> coeff_zero(const F& f, LogKind kind, int p, int nvars, int degree, int denominator_degree) {
  CoeffVector<F> v{kind, p, nvars, degree, denominator_degree, {}};
  const auto n = subsets(nvars, p).size();
  for (std::size_t i = 0; i < n; ++i) v.coeffs.push_back(HomPoly<F>::zero(f, nvars, degree + denominator_degree));
  return v;
}

template <class F>
bool is_logarithmic(const Arrangement<F>& a, const CoeffVector<F>& v) {
  const F& f = a.field;
  const int l = a.dim;
  if (v.nvars != l) throw Error(ErrorCode::DimensionMismatch, "element lives in a different ring");
  const auto fams = subsets(l, v.p);
  if (v.coeffs.size() != fams.size()) throw Error(ErrorCode::DimensionMismatch, "wrong number of coefficients");
  const int pd = v.poly_degree();
  for (const auto& c : v.coeffs)
    if (c.degree != pd) throw Error(ErrorCode::NotHomogeneous, "coefficients of mixed degree");
  if (v.kind == LogKind::Forms && v.denominator_degree != a.degree())
    throw Error(ErrorCode::DimensionMismatch, "form denominator does not match Q(A,m)");
  if (v.kind == LogKind::Derivations && v.denominator_degree != 0)
    throw Error(ErrorCode::DimensionMismatch, "derivations carry no denominator");
  for (std::size_t h = 0; h < a.size(); ++h) {
    const Vec<F>& alpha = a.forms[h];
    const int m = a.mult[h];
    if (v.kind == LogKind::Derivations) {
      if (v.p == 0) break;
      // theta(alpha, x_K) for every (p-1)-subset K.
      Matrix<F> rows(f, l + 1, l);
      for (int j = 0; j < l; ++j) rows(0, j) = alpha[j];
      for (int j = 0; j < l; ++j) rows(j + 1, j) = f.one();
      for (const auto& k : subsets(l, v.p - 1)) {
        std::vector<int> rsel{0};
        for (int x : k) rsel.push_back(x + 1);
        HomPoly<F> g = HomPoly<F>::zero(f, l, pd);
        for (std::size_t i = 0; i < fams.size(); ++i) {
          const auto c = minor_det(rows, rsel, fams[i]);
          if (!F::is_zero(c)) hp_axpy(f, g, c, v.coeffs[i]);
        }
        if (!divisible_power(f, g, alpha, m)) return false;
      }
    } else {
      if (v.p >= l) break;
      const auto index = subset_index(l, v.p);
      for (const auto& k : subsets(l, v.p + 1)) {
        HomPoly<F> g = HomPoly<F>::zero(f, l, pd);
        for (int j : k) {
          if (F::is_zero(alpha[j])) continue;
          std::vector<int> rest;
          for (int x : k)
            if (x != j) rest.push_back(x);
          const int s = shuffle_sign(rest, {j});
          const auto c = s > 0 ? alpha[j] : f.neg(alpha[j]);
          hp_axpy(f, g, c, v.coeffs[index.at(rest)]);
        }
        if (!divisible_power(f, g, alpha, m)) return false;
      }
    }
  }
  return true;
}

template <class F>
CoeffVector<F> star_forms_to_derivations(const F& f, const CoeffVector<F>& v) {
  if (v.kind != LogKind::Forms) throw Error(ErrorCode::InvalidArgument, "expected a form");
  const int l = v.nvars;
  const auto fams = subsets(l, v.p);
  const auto index = subset_index(l, l - v.p);
  CoeffVector<F> out{LogKind::Derivations, l - v.p, l, v.poly_degree(), 0, {}};
  out.coeffs.resize(index.size());
  for (std::size_t i = 0; i < fams.size(); ++i) {
    const auto comp = complement(l, fams[i]);
    out.coeffs[index.at(comp)] =
        shuffle_sign(fams[i], comp) > 0 ? v.coeffs[i] : hp_scale(f, v.coeffs[i], f.neg(f.one()));
  }
  return out;
}

template <class F>
CoeffVector<F> star_derivations_to_forms(const F& f, const CoeffVector<F>& v, int denominator_degree) {
  if (v.kind != LogKind::Derivations) throw Error(ErrorCode::InvalidArgument, "expected a derivation");
  const int l = v.nvars;
  const int p = l - v.p;
  const auto index = subset_index(l, v.p);
  CoeffVector<F> out{LogKind::Forms, p, l, v.degree - denominator_degree, denominator_degree, {}};
  for (const auto& fam : subsets(l, p)) {
    const auto comp = complement(l, fam);
    const auto& c = v.coeffs[index.at(comp)];
    out.coeffs.push_back(shuffle_sign(fam, comp) > 0 ? c : hp_scale(f, c, f.neg(f.one())));
  }
  return out;
}

// ---- graded modules

template <class F>
GradedModule<F>::GradedModule(F field, int nvars, std::vector<int> twists)
    : field_(std::move(field)), nvars_(nvars), twists_(std::move(twists)) {}

template <class F>
std::size_t GradedModule<F>::ambient_dim(int d) const {
  std::size_t n = 0;
  for (int t : twists_) n += monomial_count(nvars_, d - t);
  return n;
}

template <class F>
std::size_t GradedModule<F>::offset(std::size_t component, int d) const {
  std::size_t n = 0;
  for (std::size_t c = 0; c < component; ++c) n += monomial_count(nvars_, d - twists_[c]);
  return n;
}

template <class F>
int GradedModule<F>::lowest_degree() const {
  return twists_.empty() ? 0 : *std::min_element(twists_.begin(), twists_.end());
}

template <class F>
const Piece<F>& GradedModule<F>::piece(int d) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(d);
    if (it != cache_.end()) return *it->second;
  }
  auto fresh = std::make_unique<Piece<F>>(compute_piece(d));
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = cache_.find(d);
  if (it == cache_.end()) it = cache_.emplace(d, std::move(fresh)).first;
  return *it->second;
}

template <class F>
Vec<F> GradedModule<F>::multiply(const Vec<F>& v, int d, const Monomial& mu) const {
  const int e = mu.degree();
  Vec<F> out(ambient_dim(d + e), field_.zero());
  std::size_t in_off = 0, out_off = 0;
  for (std::size_t c = 0; c < twists_.size(); ++c) {
    const int deg = d - twists_[c];
    const std::size_t n_in = monomial_count(nvars_, deg);
    if (n_in > 0) {
      const auto& mons = monomials_cached(nvars_, deg);
      for (std::size_t i = 0; i < n_in; ++i) {
        if (F::is_zero(v[in_off + i])) continue;
        out[out_off + monomial_rank(mono_mul(mons[i], mu), nvars_)] = v[in_off + i];
      }
    }
    in_off += n_in;
    out_off += monomial_count(nvars_, deg + e);
  }
  return out;
}

template <class F>
Matrix<F> ConstrainedModule<F>::constraint_matrix(int d) const {
  const F& f = this->field();
  const int l = this->nvars();
  const int nv = l - 1;
  const auto& tw = this->twists();
  std::vector<int> block_degree(blocks_.size(), -1);
  std::vector<std::size_t> block_off(blocks_.size() + 1, 0);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    std::size_t rows = 0;
    if (!blocks_[b].terms.empty()) {
      const auto& [c, base] = blocks_[b].terms.front();
      block_degree[b] = base.degree + d - tw[c];
      for (int k = 0; k < blocks_[b].m; ++k) rows += monomial_count(nv, block_degree[b] - k);
    }
    block_off[b + 1] = block_off[b] + rows;
  }
  Matrix<F> out(f, block_off.back(), this->ambient_dim(d));
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto& blk = blocks_[b];
    if (block_off[b + 1] == block_off[b]) continue;
    const Chart<F>& chart = charts_[blk.chart];
    const int piv = chart.pivot();
    std::vector<std::size_t> layer_off(blk.m, block_off[b]);
    for (int k = 1; k < blk.m; ++k) layer_off[k] = layer_off[k - 1] + monomial_count(nv, block_degree[b] - k + 1);
    Vec<F> unit(l, f.zero());
    unit[piv] = f.one();
    const Layered<F> x = chart.restrict_linear(unit, blk.m);
    for (const auto& [c, base] : blk.terms) {
      const int degc = d - tw[c];
      if (degc < 0) continue;
      std::vector<Layered<F>> powers{base};
      for (int e = 1; e <= degc; ++e) powers.push_back(chart.multiply(powers.back(), x, blk.m));
      const auto& mons = monomials_cached(l, degc);
      const std::size_t col_off = this->offset(c, d);
      for (std::size_t i = 0; i < mons.size(); ++i) {
        const Layered<F>& t = powers[mons[i].e[piv]];
        const Monomial rest = chart.drop_pivot(mons[i]);
        for (int k = 0; k < blk.m; ++k) {
          const HomPoly<F>& layer = t.layer[k];
          if (layer.degree < 0) continue;
          const auto& lm = monomials_cached(nv, layer.degree);
          for (std::size_t s = 0; s < layer.c.size(); ++s) {
            if (F::is_zero(layer.c[s])) continue;
            auto& dst = out(layer_off[k] + monomial_rank(mono_mul(lm[s], rest), nv), col_off + i);
            dst = f.add(dst, layer.c[s]);
          }
        }
      }
    }
  }
  return out;
}

template <class F>
Piece<F> ConstrainedModule<F>::compute_piece(int d) const {
  const std::size_t n = this->ambient_dim(d);
  if (n == 0) return {};
  const Matrix<F> c = constraint_matrix(d);
  if (c.rows() == 0) return unit_piece(this->field(), n);
  return kernel_piece(c);
}

template <class F>
LogModule<F>::LogModule(const Arrangement<F>& a, LogKind kind, int p)
    : ConstrainedModule<F>(a.field, a.dim, log_twists(a, kind, p)), a_(a), kind_(kind), p_(p) {
  const F& f = a.field;
  const int l = a.dim;
  if (p < 0 || p > l) throw Error(ErrorCode::InvalidArgument, "order p must lie in [0, l]");
  shift_ = kind == LogKind::Forms ? a.degree() : 0;
  families_ = subsets(l, p);
  std::vector<std::vector<char>> forced(families_.size(), std::vector<char>(a.size(), 0));
  for (std::size_t i = 0; i < families_.size(); ++i) {
    const auto& fam = families_[i];
    std::vector<Vec<F>> forms;
    std::vector<int> powers;
    for (std::size_t h = 0; h < a.size(); ++h) {
      const auto supp = a.form(h).support();
      const bool fz = kind == LogKind::Derivations
                          ? std::includes(fam.begin(), fam.end(), supp.begin(), supp.end())
                          : std::none_of(supp.begin(), supp.end(),
                                         [&](int j) { return std::binary_search(fam.begin(), fam.end(), j); });
      if (!fz) continue;
      forced[i][h] = 1;
      forms.push_back(a.forms[h]);
      powers.push_back(a.mult[h]);
    }
    prefactor_.push_back(hp_product_of_linear(f, l, forms, powers));
  }
  for (std::size_t h = 0; h < a.size(); ++h) {
    const int m = a.mult[h];
    this->charts_.emplace_back(f, a.forms[h]);
    const Chart<F>& chart = this->charts_.back();
    const int piv = chart.pivot();
    const Matrix<F> n = adapted_coordinates(f, a.form(h));
    const Matrix<F> inv = kind == LogKind::Forms ? inverse(n) : n;
    std::map<std::size_t, Layered<F>> restricted;  // restricted prefactor per family
    auto restricted_prefactor = [&](std::size_t i) -> const Layered<F>& {
      auto it = restricted.find(i);
      if (it != restricted.end()) return it->second;
      Layered<F> acc = layered_zero(f, l - 1, 0, m);
      acc.layer[0].c[0] = f.one();
      for (std::size_t g = 0; g < a.size(); ++g) {
        if (!forced[i][g]) continue;
        const Layered<F> lin = chart.restrict_linear(a.forms[g], m);
        for (int k = 0; k < a.mult[g]; ++k) acc = chart.multiply(acc, lin, m);
      }
      return restricted.emplace(i, std::move(acc)).first->second;
    };
    for (const auto& j : families_) {
      const bool has_piv = std::binary_search(j.begin(), j.end(), piv);
      if ((kind == LogKind::Derivations) != has_piv) continue;
      ConstraintBlock<F> blk{h, m, {}};
      for (std::size_t i = 0; i < families_.size(); ++i) {
        if (forced[i][h]) continue;  // alpha_H^m already divides this coefficient
        const auto c = kind == LogKind::Derivations ? minor_det(n, j, families_[i]) : minor_det(inv, families_[i], j);
        if (F::is_zero(c)) continue;
        Layered<F> t = restricted_prefactor(i);
        for (auto& layer : t.layer) layer = hp_scale(f, layer, c);
        blk.terms.emplace_back(i, std::move(t));
      }
      if (!blk.terms.empty()) this->blocks_.push_back(std::move(blk));
    }
  }
}

template <class F>
CoeffVector<F> LogModule<F>::element(const Vec<F>& v, int d) const {
  const F& f = this->field();
  const int l = this->nvars();
  CoeffVector<F> out{kind_, p_, l, d, shift_, {}};
  for (std::size_t i = 0; i < families_.size(); ++i) {
    const int deg = d - this->twists()[i];
    if (deg < 0) {
      out.coeffs.push_back(HomPoly<F>::zero(f, l, d + shift_));
      continue;
    }
    out.coeffs.push_back(hp_mul(f, prefactor_[i], segment<F>(v, this->offset(i, d), l, deg)));
  }
  return out;
}

template <class F>
ExtendedFormModule<F>::ExtendedFormModule(const Arrangement<F>& a_prime, std::vector<CoeffVector<F>> basis, Vec<F> h)
    : ConstrainedModule<F>(a_prime.field, a_prime.dim, basis_twists(basis, -1)),
      basis_(std::move(basis)),
      denominator_degree_(a_prime.degree() + 1) {
  const F& f = a_prime.field;
  const int l = a_prime.dim;
  for (const auto& b : basis_)
    if (b.kind != LogKind::Forms || b.p != 1 || b.nvars != l || b.denominator_degree != a_prime.degree())
      throw Error(ErrorCode::InvalidArgument, "basis must consist of logarithmic 1-forms of the deleted arrangement");
  this->charts_.emplace_back(f, h);
  const Chart<F>& chart = this->charts_.back();
  const int piv = chart.pivot();
  // alpha_H * omega restricted to H must be proportional to d alpha_H:
  // a_j N_piv - a_piv N_j vanishes on H for every j != piv.
  for (int j = 0; j < l; ++j) {
    if (j == piv) continue;
    ConstraintBlock<F> blk{0, 1, {}};
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      HomPoly<F> g = hp_scale(f, basis_[k].coeffs[piv], h[j]);
      hp_axpy(f, g, f.neg(h[piv]), basis_[k].coeffs[j]);
      Layered<F> t = chart.restrict(g, 1);
      if (t.layer[0].is_zero()) continue;
      blk.terms.emplace_back(k, std::move(t));
    }
    if (!blk.terms.empty()) this->blocks_.push_back(std::move(blk));
  }
}

template <class F>
CoeffVector<F> ExtendedFormModule<F>::element(const Vec<F>& v, int d) const {
  const F& f = this->field();
  const int l = this->nvars();
  CoeffVector<F> out = coeff_zero(f, LogKind::Forms, 1, l, d, denominator_degree_);
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const int deg = d - this->twists()[k];
    if (deg < 0) continue;
    const HomPoly<F> g = segment<F>(v, this->offset(k, d), l, deg);
    if (g.is_zero()) continue;
    for (int i = 0; i < l; ++i) hp_axpy(f, out.coeffs[i], f.one(), hp_mul(f, g, basis_[k].coeffs[i]));
  }
  return out;
}

template <class F>
FreeSpanModule<F>::FreeSpanModule(const F& field, int nvars, std::vector<CoeffVector<F>> basis)
    : ElementModule<F>(field, nvars, basis_twists(basis, 0)), basis_(std::move(basis)) {
  if (basis_.empty()) throw Error(ErrorCode::InvalidArgument, "free span needs at least one element");
}

template <class F>
CoeffVector<F> FreeSpanModule<F>::element(const Vec<F>& v, int d) const {
  const F& f = this->field();
  const auto& b0 = basis_.front();
  CoeffVector<F> out = coeff_zero(f, b0.kind, b0.p, b0.nvars, d, b0.denominator_degree);
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const int deg = d - this->twists()[k];
    if (deg < 0) continue;
    const HomPoly<F> g = segment<F>(v, this->offset(k, d), this->nvars(), deg);
    if (g.is_zero()) continue;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i)
      hp_axpy(f, out.coeffs[i], f.one(), hp_mul(f, g, basis_[k].coeffs[i]));
  }
  return out;
}

template <class F>
Piece<F> FreeSpanModule<F>::compute_piece(int d) const {
  return unit_piece(this->field(), this->ambient_dim(d));
}

template <class F>
Matrix<F> product_matrix(const GradedModule<F>& m, const std::vector<Vec<F>>& gens, const std::vector<int>& degrees,
                         int d) {
  const int l = m.nvars();
  const auto& tw = m.twists();
  std::size_t rows = 0;
  for (int g : degrees) rows += monomial_count(l, d - g);
  Matrix<F> out(m.field(), rows, m.ambient_dim(d));
  std::vector<std::size_t> out_off(tw.size());
  for (std::size_t c = 0; c < tw.size(); ++c) out_off[c] = m.offset(c, d);
  std::size_t r = 0;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    const int e = d - degrees[j];
    if (e < 0) continue;
    // Nonzero entries of g_j as (component, monomial, value).
    struct Entry {
      std::size_t comp;
      Monomial mono;
      typename F::Elem value;
    };
    std::vector<Entry> entries;
    std::size_t in_off = 0;
    for (std::size_t c = 0; c < tw.size(); ++c) {
      const int deg = degrees[j] - tw[c];
      const std::size_t n = monomial_count(l, deg);
      if (n > 0) {
        const auto& mons = monomials_cached(l, deg);
        for (std::size_t i = 0; i < n; ++i)
          if (!F::is_zero(gens[j][in_off + i])) entries.push_back({c, mons[i], gens[j][in_off + i]});
      }
      in_off += n;
    }
    for (const auto& mu : monomials_cached(l, e)) {
      auto* row = out.row(r++);
      for (const auto& en : entries) row[out_off[en.comp] + monomial_rank(mono_mul(en.mono, mu), l)] = en.value;
    }
  }
  return out;
}

template <class F>
SyzygyModule<F>::SyzygyModule(const GradedModule<F>& parent, std::vector<Vec<F>> gens, std::vector<int> degrees,
                              int generated_through)
    : GradedModule<F>(parent.field(), parent.nvars(), std::move(degrees)),
      parent_(parent),
      gens_(std::move(gens)),
      generated_through_(generated_through) {}

template <class F>
std::size_t SyzygyModule<F>::dimension(int d) const {
  if (d <= generated_through_) {
    const std::size_t amb = this->ambient_dim(d);
    const std::size_t image = parent_.dimension(d);
    if (image > amb) throw std::logic_error("generators cannot span the parent piece");
    return amb - image;
  }
  return this->piece(d).basis.size();
}

template <class F>
Piece<F> SyzygyModule<F>::compute_piece(int d) const {
  const Matrix<F> p = product_matrix(parent_, gens_, this->twists(), d);
  if (p.rows() == 0) return {};
  if (p.cols() == 0) return unit_piece(this->field(), p.rows());
  return kernel_piece(p.transpose());
}

// ---- generators

template <class F>
void extend_generators(const GradedModule<F>& m, GeneratorSet<F>& set, int hi, const SweepStop<F>& stop) {
  const F& f = m.field();
  for (int d = set.degree_bound_used + 1; d <= hi; ++d) {
    set.degree_bound_used = d;
    DegreeStep step;
    step.degree = d;
    step.dimension = m.dimension(d);
    if (step.dimension > 0) {
      const Matrix<F> prods = product_matrix(m, set.vectors, set.degrees, d);
      std::optional<RrefResult<F>> red;
      if (prods.rows() > 0) {
        red = rref(prods);
        step.span_rank = red->rank;
      }
      if (step.span_rank > step.dimension) throw std::logic_error("products escape the graded piece");
      if (step.span_rank < step.dimension) {
        const Piece<F>& piece = m.piece(d);
        const std::size_t n = m.ambient_dim(d);
        std::vector<Vec<F>> fresh;
        std::vector<std::size_t> fresh_piv;
        for (const auto& b : piece.basis) {
          Vec<F> v = b;
          if (red)
            for (std::size_t i = 0; i < red->rank; ++i) eliminate_with(f, v, red->matrix.row(i), red->pivots[i], n);
          for (std::size_t i = 0; i < fresh.size(); ++i) eliminate_with(f, v, fresh[i].data(), fresh_piv[i], n);
          const std::size_t lead = leading_index<F>(v);
          if (lead == n) continue;
          normalize_leading(f, v);
          fresh_piv.push_back(lead);
          fresh.push_back(std::move(v));
          if (step.span_rank + fresh.size() == step.dimension) break;
        }
        if (step.span_rank + fresh.size() != step.dimension)
          throw std::logic_error("piece basis does not complete the span of products");
        step.new_generators = fresh.size();
        for (auto& v : fresh) {
          set.vectors.push_back(std::move(v));
          set.degrees.push_back(d);
        }
      }
    }
    set.ledger.push_back(step);
    if (stop && stop(set)) {
      set.stopped_early = true;
      return;
    }
  }
}

template <class F>
GeneratorSet<F> minimal_generators(const GradedModule<F>& m, int lo, int hi, const SweepStop<F>& stop) {
  GeneratorSet<F> set;
  set.degree_lo = lo;
  set.degree_bound_used = lo - 1;
  extend_generators(m, set, hi, stop);
  return set;
}

template <class F>
GradedBasis<F> graded_basis(const Arrangement<F>& a, LogKind kind, int p, int d) {
  LogModule<F> mod(a, kind, p);
  GradedBasis<F> out{kind, p, d, {}};
  for (const auto& v : mod.piece(d).basis) out.basis.push_back(mod.element(v, d));
  return out;
}

template <class F>
std::pair<int, int> default_degree_range(const Arrangement<F>& a, LogKind kind) {
  const int q = a.degree();
  return kind == LogKind::Forms ? std::pair{-q, 0} : std::pair{0, q};
}

// ---- Saito

template <class F>
HomPoly<F> poly_determinant(const F& f, const std::vector<std::vector<HomPoly<F>>>& m) {
  const std::size_t n = m.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty determinant");
  if (n == 1) return m[0][0];
  std::optional<HomPoly<F>> acc;
  int expected = 0;
  for (std::size_t i = 0; i < n; ++i) expected += m[i][i].degree;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<HomPoly<F>>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<HomPoly<F>> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    const HomPoly<F> sub = poly_determinant(f, minor);
    if (sub.is_zero()) continue;
    HomPoly<F> term = hp_mul(f, m[0][j], sub);
    if (j % 2 == 1) term = hp_scale(f, term, f.neg(f.one()));
    if (!acc) {
      acc = std::move(term);
    } else {
      if (acc->degree != term.degree) throw Error(ErrorCode::NotHomogeneous, "determinant terms of different degrees");
      hp_axpy(f, *acc, f.one(), term);
    }
  }
  if (!acc) return HomPoly<F>::zero(f, m[0][0].nvars, expected);
  return *acc;
}

namespace {

template <class F>
std::vector<std::vector<HomPoly<F>>> coefficient_matrix(const std::vector<CoeffVector<F>>& v) {
  std::vector<std::vector<HomPoly<F>>> out;
  for (const auto& x : v) out.push_back(x.coeffs);
  return out;
}

}  // namespace

template <class F>
FreenessResult<F> saito_check(const Arrangement<F>& a, std::optional<int> bound) {
  const F& f = a.field;
  const std::size_t l = static_cast<std::size_t>(a.dim);
  LogModule<F> mod(a, LogKind::Derivations, 1);
  const HomPoly<F> q = a.defining_polynomial();
  FreenessResult<F> res;
  res.verdict = "not free up to bound";
  std::size_t tested = 0;
  auto stop = [&](const GeneratorSet<F>& s) {
    if (s.degrees.size() > l) {
      res.verdict = "not free";
      return true;
    }
    if (s.degrees.size() == l && tested != l) {
      tested = l;
      std::vector<CoeffVector<F>> ders;
      for (std::size_t k = 0; k < l; ++k) ders.push_back(mod.element(s.vectors[k], s.degrees[k]));
      const HomPoly<F> det = poly_determinant(f, coefficient_matrix(ders));
      typename F::Elem c;
      if (!det.is_zero() && det.degree == q.degree && hp_proportional(f, det, q, c) && !F::is_zero(c)) {
        res.verdict = "free";
        res.free = true;
        res.basis = std::move(ders);
        res.det_scalar = c;
        return true;
      }
    }
    return false;
  };
  res.generators = minimal_generators(mod, 0, bound.value_or(a.degree()), SweepStop<F>(stop));
  if (res.free) res.exponents = res.generators.degrees;
  return res;
}

template <class F>
std::vector<CoeffVector<F>> dual_form_basis(const Arrangement<F>& a, const std::vector<CoeffVector<F>>& ders,
                                            const typename F::Elem& c) {
  const F& f = a.field;
  const std::size_t l = static_cast<std::size_t>(a.dim);
  if (ders.size() != l) throw Error(ErrorCode::DimensionMismatch, "need l derivations");
  const auto theta = coefficient_matrix(ders);
  const auto cinv = f.inv(c);
  const int q = a.degree();
  std::vector<CoeffVector<F>> out;
  for (std::size_t j = 0; j < l; ++j) {
    CoeffVector<F> w{LogKind::Forms, 1, a.dim, -ders[j].degree, q, {}};
    for (std::size_t i = 0; i < l; ++i) {
      HomPoly<F> cof;
      if (l == 1) {
        cof = hp_constant(f, a.dim, f.one());
      } else {
        std::vector<std::vector<HomPoly<F>>> minor;
        for (std::size_t r = 0; r < l; ++r) {
          if (r == j) continue;
          std::vector<HomPoly<F>> row;
          for (std::size_t k = 0; k < l; ++k)
            if (k != i) row.push_back(theta[r][k]);
          minor.push_back(std::move(row));
        }
        cof = poly_determinant(f, minor);
      }
      const auto s = (i + j) % 2 == 0 ? cinv : f.neg(cinv);
      w.coeffs.push_back(hp_scale(f, cof, s));
    }
    out.push_back(std::move(w));
  }
  return out;
}

template <class F>
bool forms_saito(const Arrangement<F>& a, const std::vector<CoeffVector<F>>& forms) {
  const F& f = a.field;
  if (forms.size() != static_cast<std::size_t>(a.dim)) return false;
  const HomPoly<F> q = a.defining_polynomial();
  HomPoly<F> target = hp_constant(f, a.dim, f.one());
  for (int k = 1; k < a.dim; ++k) target = hp_mul(f, target, q);
  const HomPoly<F> det = poly_determinant(f, coefficient_matrix(forms));
  typename F::Elem c;
  return !det.is_zero() && det.degree == target.degree && hp_proportional(f, det, target, c) && !F::is_zero(c);
}

// ---- resolutions

template <class F>
BettiTable<F> betti_table(const GradedModule<F>& m, int lo, int hi) {
  return betti_table(m, minimal_generators(m, lo, hi));
}

template <class F>
BettiTable<F> betti_table(const GradedModule<F>& m, GeneratorSet<F> gens) {
  const int l = m.nvars();
  BettiTable<F> out;
  out.nvars = l;
  auto bound_for = [&](const GeneratorSet<F>& g) {
    const int top = g.degrees.empty() ? g.degree_bound_used : *std::max_element(g.degrees.begin(), g.degrees.end());
    return top + l + 2;
  };
  int vb = bound_for(gens);
  for (int guard = 0; guard < 8 && gens.degree_bound_used < vb; ++guard) {
    extend_generators(m, gens, vb);
    vb = std::max(vb, bound_for(gens));
  }
  out.validity_bound = vb;
  out.columns.push_back(gens.degrees);
  bool ok = true;
  if (gens.degree_bound_used < vb) {
    ok = false;
    out.note = "generator sweep did not reach the validity bound";
  }
  std::vector<std::unique_ptr<SyzygyModule<F>>> chain;
  const GradedModule<F>* parent = &m;
  GeneratorSet<F> cur = gens;
  while (!cur.degrees.empty()) {
    if (static_cast<int>(out.columns.size()) > l + 1) {
      ok = false;
      out.note = "resolution longer than the number of variables allows";
      break;
    }
    auto syz = std::make_unique<SyzygyModule<F>>(*parent, cur.vectors, cur.degrees, vb);
    const int lo = syz->lowest_degree();
    GeneratorSet<F> next = minimal_generators(*syz, lo, vb);
    if (next.degrees.empty()) {
      // The last map must be injective at every checked degree.
      for (int d = lo; d <= vb; ++d) {
        const Matrix<F> p = product_matrix(*parent, cur.vectors, cur.degrees, d);
        if (p.rows() > 0 && rank(p) != p.rows()) {
          ok = false;
          out.note = "tail map not injective in degree " + std::to_string(d);
          break;
        }
      }
      break;
    }
    if (out.columns.size() == 1) {
      for (std::size_t r = 0; r < next.vectors.size(); ++r) {
        std::vector<HomPoly<F>> rel;
        for (std::size_t j = 0; j < cur.degrees.size(); ++j)
          rel.push_back(segment<F>(next.vectors[r], syz->offset(j, next.degrees[r]), l, next.degrees[r] - cur.degrees[j]));
        out.relations.push_back(std::move(rel));
      }
    }
    if (*std::max_element(next.degrees.begin(), next.degrees.end()) >= vb) {
      ok = false;
      out.note = "relations found at the validity bound";
    }
    out.columns.push_back(next.degrees);
    parent = syz.get();
    chain.push_back(std::move(syz));
    cur = std::move(next);
  }
  for (auto& col : out.columns) std::sort(col.begin(), col.end());
  out.pd = static_cast<int>(out.columns.size()) - 1;
  for (int d = gens.degree_lo; d <= vb; ++d) {
    long alt = 0;
    for (std::size_t i = 0; i < out.columns.size(); ++i) {
      long s = 0;
      for (int t : out.columns[i]) s += static_cast<long>(monomial_count(l, d - t));
      alt += (i % 2 == 0) ? s : -s;
    }
    if (alt == static_cast<long>(m.dimension(d))) {
      out.hilbert_checked.push_back(d);
    } else {
      ok = false;
      if (out.note.empty()) out.note = "alternating dimension count fails in degree " + std::to_string(d);
    }
  }
  out.certified_free_tail = ok;
  return out;
}

template <class F>
std::optional<SpogShape> spog_detect(const BettiTable<F>& b) {
  if (!b.certified_free_tail || b.columns.size() != 2 || b.columns[1].size() != 1) return std::nullopt;
  if (b.columns[0].size() != static_cast<std::size_t>(b.nvars) + 1 || b.relations.size() != 1) return std::nullopt;
  const int r = b.columns[1][0];
  const auto& rel = b.relations[0];
  bool found = false;
  for (const auto& c : rel)
    if (c.degree == 1 && !c.is_zero()) found = true;
  if (!found) return std::nullopt;
  SpogShape s;
  s.level = r - 1;
  s.degrees = b.columns[0];
  s.degrees.erase(std::find(s.degrees.begin(), s.degrees.end(), s.level));
  return s;
}

#define ARRLOG_INSTANTIATE(F)                                                                                  \
  template CoeffVector<F> coeff_zero(const F&, LogKind, int, int, int, int);                                   \
  template bool is_logarithmic(const Arrangement<F>&, const CoeffVector<F>&);                                 \
  template CoeffVector<F> star_forms_to_derivations(const F&, const CoeffVector<F>&);                          \
  template CoeffVector<F> star_derivations_to_forms(const F&, const CoeffVector<F>&, int);                     \
  template class GradedModule<F>;                                                                              \
  template class ElementModule<F>;                                                                             \
  template class ConstrainedModule<F>;                                                                         \
  template class LogModule<F>;                                                                                 \
  template class ExtendedFormModule<F>;                                                                        \
  template class FreeSpanModule<F>;                                                                            \
  template class SyzygyModule<F>;                                                                              \
  template Matrix<F> product_matrix(const GradedModule<F>&, const std::vector<Vec<F>>&, const std::vector<int>&, \
                                    int);                                                                      \
  template void extend_generators(const GradedModule<F>&, GeneratorSet<F>&, int, const SweepStop<F>&);         \
  template GeneratorSet<F> minimal_generators(const GradedModule<F>&, int, int, const SweepStop<F>&);          \
  template GradedBasis<F> graded_basis(const Arrangement<F>&, LogKind, int, int);                              \
  template std::pair<int, int> default_degree_range(const Arrangement<F>&, LogKind);                           \
  template HomPoly<F> poly_determinant(const F&, const std::vector<std::vector<HomPoly<F>>>&);                  \
  template FreenessResult<F> saito_check(const Arrangement<F>&, std::optional<int>);                           \
  template std::vector<CoeffVector<F>> dual_form_basis(const Arrangement<F>&, const std::vector<CoeffVector<F>>&, \
                                                       const F::Elem&);                                        \
  template bool forms_saito(const Arrangement<F>&, const std::vector<CoeffVector<F>>&);                        \
  template BettiTable<F> betti_table(const GradedModule<F>&, int, int);                                        \
  template BettiTable<F> betti_table(const GradedModule<F>&, GeneratorSet<F>);                                 \
  template std::optional<SpogShape> spog_detect(const BettiTable<F>&);

ARRLOG_INSTANTIATE(RationalField)
ARRLOG_INSTANTIATE(PrimeField)

#undef ARRLOG_INSTANTIATE

}  // namespace arrlog
