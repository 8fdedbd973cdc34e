#include "arrlog/matrix.hpp"

#include <algorithm>
#include <numeric>

namespace arrlog {

template <class F>
Matrix<F> Matrix<F>::from_rows(F field, const std::vector<std::vector<mpq_class>>& rows, std::size_t cols) {
  Matrix m(field, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = field.from_rational(rows[i][j]);
  }
  return m;
}

template <class F>
Matrix<F> Matrix<F>::from_vectors(F field, const std::vector<Vec<F>>& rows, std::size_t cols) {
  Matrix m(field, 0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

template <class F>
Matrix<F> Matrix<F>::identity(F field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
  return m;
}

template <class F>
void Matrix<F>::append_row(const Vec<F>& r) {
  if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "row length does not match column count");
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

template <class F>
Matrix<F> Matrix<F>::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

template <class F>
Matrix<F> Matrix<F>::select_rows(const std::vector<std::size_t>& idx) const {
  Matrix s(field_, 0, cols_);
  for (std::size_t i : idx) s.append_row(row_vector(i));
  return s;
}

template <class F>
bool Matrix<F>::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Elem& e) { return F::is_zero(e); });
}

namespace {

// Row reduction over F_p. Forward elimination picks, among rows with a nonzero
// entry in the current column, the one with fewest nonzeros; the pivot row is
// scaled to a leading one and applied through its nonzero pattern only.
RrefResult<PrimeField> rref_prime(const Matrix<PrimeField>& in) {
  const PrimeField& f = in.field();
  const std::uint64_t p = f.modulus();
  const std::size_t nr = in.rows(), nc = in.cols();
  std::vector<std::vector<std::uint64_t>> rows(nr);
  std::vector<std::size_t> nnz(nr, 0);
  for (std::size_t i = 0; i < nr; ++i) {
    rows[i].assign(in.row(i), in.row(i) + nc);
    for (auto v : rows[i]) nnz[i] += v != 0;
  }
  std::vector<std::size_t> order(nr);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> support;
  std::size_t r = 0;
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    std::size_t best = nr;
    for (std::size_t k = r; k < nr; ++k) {
      if (rows[order[k]][c] != 0 && (best == nr || nnz[order[k]] < nnz[order[best]])) best = k;
    }
    if (best == nr) continue;
    std::swap(order[r], order[best]);
    auto& prow = rows[order[r]];
    const std::uint64_t inv = f.inv(prow[c]);
    const std::uint64_t inv_s = f.shoup_precompute(inv);
    support.clear();
    for (std::size_t j = c; j < nc; ++j) {
      if (prow[j] != 0) {
        prow[j] = f.mul_shoup(prow[j], inv, inv_s);
        support.push_back(j);
      }
    }
    for (std::size_t k = r + 1; k < nr; ++k) {
      auto& row = rows[order[k]];
      const std::uint64_t factor = row[c];
      if (factor == 0) continue;
      const std::uint64_t neg = p - factor;
      const std::uint64_t neg_s = f.shoup_precompute(neg);
      std::size_t& cnt = nnz[order[k]];
      for (std::size_t j : support) {
        const std::uint64_t before = row[j];
        std::uint64_t v = before + f.mul_shoup(prow[j], neg, neg_s);
        if (v >= p) v -= p;
        row[j] = v;
        cnt += (before == 0) - (v == 0);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  // Back substitution, pivots from last to first.
  for (std::size_t k = pivots.size(); k-- > 0;) {
    const auto& prow = rows[order[k]];
    const std::size_t c = pivots[k];
    support.clear();
    for (std::size_t j = c; j < nc; ++j)
      if (prow[j] != 0) support.push_back(j);
    for (std::size_t i = 0; i < k; ++i) {
      auto& row = rows[order[i]];
      const std::uint64_t factor = row[c];
      if (factor == 0) continue;
      const std::uint64_t neg = p - factor;
      const std::uint64_t neg_s = f.shoup_precompute(neg);
      for (std::size_t j : support) {
        std::uint64_t v = row[j] + f.mul_shoup(prow[j], neg, neg_s);
        row[j] = v >= p ? v - p : v;
      }
    }
  }
  RrefResult<PrimeField> out{Matrix<PrimeField>(f, nr, nc), pivots, pivots.size()};
  for (std::size_t i = 0; i < pivots.size(); ++i) std::copy(rows[order[i]].begin(), rows[order[i]].end(), out.matrix.row(i));
  return out;
}

void make_primitive(std::vector<mpz_class>& row, std::size_t from) {
  mpz_class g = 0;
  for (std::size_t j = from; j < row.size(); ++j) {
    if (sgn(row[j]) != 0) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), row[j].get_mpz_t());
      if (g == 1) return;
    }
  }
  if (g <= 1) return;
  for (std::size_t j = from; j < row.size(); ++j)
    if (sgn(row[j]) != 0) mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), g.get_mpz_t());
}

// row <- (p/g) row - (b/g) pivot, where p = pivot[c], b = row[c].
void eliminate(std::vector<mpz_class>& row, const std::vector<mpz_class>& pivot, std::size_t c,
               const std::vector<std::size_t>& support, mpz_class& g, mpz_class& sp, mpz_class& sb) {
  mpz_gcd(g.get_mpz_t(), pivot[c].get_mpz_t(), row[c].get_mpz_t());
  mpz_divexact(sp.get_mpz_t(), pivot[c].get_mpz_t(), g.get_mpz_t());
  mpz_divexact(sb.get_mpz_t(), row[c].get_mpz_t(), g.get_mpz_t());
  if (sp != 1) {
    for (auto& v : row)
      if (sgn(v) != 0) v *= sp;
  }
  for (std::size_t j : support) mpz_submul(row[j].get_mpz_t(), sb.get_mpz_t(), pivot[j].get_mpz_t());
}

// Row reduction over Q on primitive integer rows. Each rational row is cleared
// of denominators, reduced fraction-free and divided by its content after
// every update; the pivot is divided out only at the end.
RrefResult<RationalField> rref_rational(const Matrix<RationalField>& in) {
  const RationalField f;
  const std::size_t nr = in.rows(), nc = in.cols();
  std::vector<std::vector<mpz_class>> rows(nr, std::vector<mpz_class>(nc));
  std::vector<std::size_t> nnz(nr, 0);
  for (std::size_t i = 0; i < nr; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < nc; ++j) {
      const auto& q = in(i, j);
      if (sgn(q) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    }
    for (std::size_t j = 0; j < nc; ++j) {
      const auto& q = in(i, j);
      if (sgn(q) == 0) continue;
      rows[i][j] = l / q.get_den() * q.get_num();
      ++nnz[i];
    }
    make_primitive(rows[i], 0);
  }
  std::vector<std::size_t> order(nr);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> pivots, support;
  mpz_class g, sp, sb;
  std::size_t r = 0;
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    std::size_t best = nr;
    for (std::size_t k = r; k < nr; ++k) {
      const std::size_t i = order[k];
      if (sgn(rows[i][c]) != 0 && (best == nr || nnz[i] < nnz[order[best]])) best = k;
    }
    if (best == nr) continue;
    std::swap(order[r], order[best]);
    const auto& prow = rows[order[r]];
    support.clear();
    for (std::size_t j = c; j < nc; ++j)
      if (sgn(prow[j]) != 0) support.push_back(j);
    for (std::size_t k = r + 1; k < nr; ++k) {
      const std::size_t i = order[k];
      auto& row = rows[i];
      if (sgn(row[c]) == 0) continue;
      eliminate(row, prow, c, support, g, sp, sb);
      make_primitive(row, c + 1);
      std::size_t cnt = 0;
      for (std::size_t j = c + 1; j < nc; ++j) cnt += sgn(row[j]) != 0;
      nnz[i] = cnt;
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t k = pivots.size(); k-- > 0;) {
    const auto& prow = rows[order[k]];
    const std::size_t c = pivots[k];
    support.clear();
    for (std::size_t j = c; j < nc; ++j)
      if (sgn(prow[j]) != 0) support.push_back(j);
    for (std::size_t i = 0; i < k; ++i) {
      auto& row = rows[order[i]];
      if (sgn(row[c]) == 0) continue;
      eliminate(row, prow, c, support, g, sp, sb);
      make_primitive(row, 0);
    }
  }
  RrefResult<RationalField> out{Matrix<RationalField>(f, nr, nc), pivots, pivots.size()};
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    const auto& row = rows[order[i]];
    const mpz_class& lead = row[pivots[i]];
    for (std::size_t j = 0; j < nc; ++j) {
      if (sgn(row[j]) == 0) continue;
      mpq_class q(row[j], lead);
      q.canonicalize();
      out.matrix(i, j) = q;
    }
  }
  return out;
}

RrefResult<RationalField> rref_dispatch(const Matrix<RationalField>& m) { return rref_rational(m); }
RrefResult<PrimeField> rref_dispatch(const Matrix<PrimeField>& m) { return rref_prime(m); }

}  // namespace

template <class F>
RrefResult<F> rref(const Matrix<F>& m) {
  return rref_dispatch(m);
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m).rank;
}

template <class F>
std::vector<Vec<F>> kernel_from_rref(const RrefResult<F>& r) {
  const F& f = r.matrix.field();
  const std::size_t nc = r.matrix.cols();
  std::vector<char> is_pivot(nc, 0);
  for (auto c : r.pivots) is_pivot[c] = 1;
  std::vector<Vec<F>> out;
  for (std::size_t free = 0; free < nc; ++free) {
    if (is_pivot[free]) continue;
    Vec<F> v(nc, f.zero());
    v[free] = f.one();
    for (std::size_t i = 0; i < r.rank; ++i) {
      const auto& e = r.matrix(i, free);
      if (!F::is_zero(e)) v[r.pivots[i]] = f.neg(e);
    }
    out.push_back(std::move(v));
  }
  return out;
}

template <class F>
std::vector<Vec<F>> kernel_basis(const Matrix<F>& m) {
  return kernel_from_rref(rref(m));
}

template <class F>
bool in_span(const F& field, const Vec<F>& v, const std::vector<Vec<F>>& basis) {
  for (const auto& b : basis) {
    if (b.size() != v.size()) throw Error(ErrorCode::DimensionMismatch, "in_span: vector length mismatch");
  }
  if (std::all_of(v.begin(), v.end(), [](const auto& e) { return F::is_zero(e); })) return true;
  if (basis.empty()) return false;
  Matrix<F> m = Matrix<F>::from_vectors(field, basis, v.size());
  const std::size_t before = rank(m);
  m.append_row(v);
  return rank(m) == before;
}

template <class F>
Matrix<F> multiply(const Matrix<F>& a, const Matrix<F>& b) {
  require_same_field(a.field(), b.field());
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  const F& f = a.field();
  Matrix<F> c(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto& x = a(i, k);
      if (F::is_zero(x)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = f.add(c(i, j), f.mul(x, b(k, j)));
    }
  return c;
}

template <class F>
Vec<F> apply(const Matrix<F>& a, const Vec<F>& v) {
  if (a.cols() != v.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
  const F& f = a.field();
  Vec<F> out(a.rows(), f.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!F::is_zero(v[j])) out[i] = f.add(out[i], f.mul(a(i, j), v[j]));
  return out;
}

template <class F>
Matrix<F> inverse(const Matrix<F>& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw Error(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
  const F& f = a.field();
  Matrix<F> aug(f, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = f.one();
  }
  auto r = rref(aug);
  if (r.rank < n || r.pivots[n - 1] != n - 1) throw Error(ErrorCode::Singular, "matrix is not invertible");
  Matrix<F> inv(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.matrix(i, n + j);
  return inv;
}

template <class F>
typename F::Elem determinant(const Matrix<F>& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  const F& f = a.field();
  Matrix<F> m = a;
  auto det = f.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t i = c; i < n; ++i)
      if (!F::is_zero(m(i, c))) {
        piv = i;
        break;
      }
    if (piv == n) return f.zero();
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = f.neg(det);
    }
    det = f.mul(det, m(c, c));
    const auto inv = f.inv(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (F::is_zero(m(i, c))) continue;
      const auto factor = f.mul(m(i, c), inv);
      for (std::size_t j = c; j < n; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(c, j)));
    }
  }
  return det;
}

#define ARRLOG_INSTANTIATE(F)                                                                  \
  template class Matrix<F>;                                                                    \
  template RrefResult<F> rref(const Matrix<F>&);                                               \
  template std::size_t rank(const Matrix<F>&);                                                 \
  template std::vector<Vec<F>> kernel_basis(const Matrix<F>&);                                 \
  template std::vector<Vec<F>> kernel_from_rref(const RrefResult<F>&);                         \
  template bool in_span(const F&, const Vec<F>&, const std::vector<Vec<F>>&);                  \
  template Matrix<F> multiply(const Matrix<F>&, const Matrix<F>&);                             \
  template Vec<F> apply(const Matrix<F>&, const Vec<F>&);                                      \
  template Matrix<F> inverse(const Matrix<F>&);                                                \
  template typename F::Elem determinant(const Matrix<F>&);

ARRLOG_INSTANTIATE(RationalField)
ARRLOG_INSTANTIATE(PrimeField)

#undef ARRLOG_INSTANTIATE

}  // namespace arrlog
