#pragma once

// Independent reference computations for the unit tests. Nothing here calls
// the library's linear algebra or module solvers: polynomials are sparse maps
// of exponent vectors and ranks come from a plain rational elimination.

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <vector>

namespace oracle {

using Exps = std::vector<int>;
using Poly = std::map<Exps, mpq_class>;
using Row = std::vector<mpq_class>;

inline void add_to(Poly& p, const Exps& e, const mpq_class& c) {
  if (c == 0) return;
  auto& slot = p[e];
  slot += c;
  if (slot == 0) p.erase(e);
}

inline Poly mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exps e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      add_to(out, e, ca * cb);
    }
  return out;
}

inline Poly linear(const std::vector<mpq_class>& a) {
  Poly p;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Exps e(a.size(), 0);
    e[i] = 1;
    add_to(p, e, a[i]);
  }
  return p;
}

/// Replace x_k by the polynomial `by`.
inline Poly substitute(const Poly& f, int k, const Poly& by) {
  Poly out;
  for (const auto& [e, c] : f) {
    Exps rest = e;
    rest[k] = 0;
    Poly term{{rest, c}};
    for (int j = 0; j < e[k]; ++j) term = mul(term, by);
    for (const auto& [te, tc] : term) add_to(out, te, tc);
  }
  return out;
}

/// All exponent vectors of total degree d in n variables.
inline std::vector<Exps> monomials(int n, int d) {
  std::vector<Exps> out;
  if (d < 0) return out;
  Exps e(n, 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n - 1) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (int v = left; v >= 0; --v) {
      e[i] = v;
      self(self, i + 1, left - v);
    }
  };
  if (n > 0) rec(rec, 0, d);
  return out;
}

inline std::size_t rank(std::vector<Row> rows) {
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const mpq_class t = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= t * rows[r][j];
    }
    ++r;
  }
  return r;
}

/// Linear conditions "alpha^m divides g" on a polynomial g given as a linear
/// combination of unknowns: coefficient polynomials per unknown. Works in
/// coordinates where alpha becomes x_piv and reads off the low x_piv powers.
inline void divisibility_rows(const std::vector<Poly>& per_unknown, const std::vector<mpq_class>& alpha, int m,
                              std::vector<Row>& rows) {
  int piv = 0;
  while (alpha[piv] == 0) ++piv;
  // x_piv = (y - sum_{j != piv} a_j x_j) / a_piv
  Poly by;
  Exps e(alpha.size(), 0);
  e[piv] = 1;
  by[e] = 1 / alpha[piv];
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (static_cast<int>(j) == piv || alpha[j] == 0) continue;
    Exps ej(alpha.size(), 0);
    ej[j] = 1;
    by[ej] = -alpha[j] / alpha[piv];
  }
  std::map<Exps, Row> collected;
  for (std::size_t u = 0; u < per_unknown.size(); ++u)
    for (const auto& [ex, c] : substitute(per_unknown[u], piv, by))
      if (ex[piv] < m) {
        auto& row = collected[ex];
        row.resize(per_unknown.size());
        row[u] += c;
      }
  for (auto& [ex, row] : collected) rows.push_back(row);
}

/// dim D(A, m)_d from theta(alpha_H) in (alpha_H^m(H)).
inline std::size_t derivation_dim(const std::vector<std::vector<mpq_class>>& forms, const std::vector<int>& mult, int l,
                                  int d) {
  const auto mons = monomials(l, d);
  const std::size_t unknowns = l * mons.size();
  if (unknowns == 0) return 0;
  std::vector<Row> rows;
  for (std::size_t h = 0; h < forms.size(); ++h) {
    std::vector<Poly> per(unknowns);
    for (int i = 0; i < l; ++i)
      for (std::size_t k = 0; k < mons.size(); ++k)
        if (forms[h][i] != 0) per[i * mons.size() + k][mons[k]] = forms[h][i];
    divisibility_rows(per, forms[h], mult[h], rows);
  }
  return unknowns - rank(rows);
}

/// dim Omega^1(A)_d for a simple arrangement: omega = sum g_i dx_i / Q with
/// g_i a_j - g_j a_i divisible by alpha_H for every H and i < j.
inline std::size_t form_dim(const std::vector<std::vector<mpq_class>>& forms, int l, int d) {
  const int nd = d + static_cast<int>(forms.size());
  const auto mons = monomials(l, nd);
  const std::size_t unknowns = l * mons.size();
  if (unknowns == 0) return 0;
  std::vector<Row> rows;
  for (const auto& a : forms)
    for (int i = 0; i < l; ++i)
      for (int j = i + 1; j < l; ++j) {
        std::vector<Poly> per(unknowns);
        for (std::size_t k = 0; k < mons.size(); ++k) {
          if (a[j] != 0) per[i * mons.size() + k][mons[k]] = a[j];
          if (a[i] != 0) per[j * mons.size() + k][mons[k]] = -a[i];
        }
        divisibility_rows(per, a, 1, rows);
      }
  return unknowns - rank(rows);
}

/// Leibniz determinant, for small matrices.
inline mpq_class leibniz(const std::vector<Row>& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  mpq_class total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    mpq_class term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// chi(A, t) by Whitney's subset expansion, coefficients from t^0 up.
inline std::vector<long> whitney_chi(const std::vector<std::vector<mpq_class>>& forms, int l) {
  std::vector<long> chi(l + 1, 0);
  const std::size_t n = forms.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<Row> rows;
    int size = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) {
        rows.push_back(forms[i]);
        ++size;
      }
    chi[l - rank(rows)] += size % 2 ? -1 : 1;
  }
  return chi;
}

}  // namespace oracle
