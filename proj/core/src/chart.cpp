#include "arrlog/chart.hpp"

namespace arrlog {

template <class F>
Layered<F> layered_zero(const F& f, int nvars, int degree, int m) {
  Layered<F> out{degree, {}};
  for (int k = 0; k < m; ++k) out.layer.push_back(HomPoly<F>::zero(f, nvars, degree - k));
  return out;
}

template <class F>
Chart<F>::Chart(F field, Vec<F> alpha) : field_(std::move(field)), alpha_(std::move(alpha)) {
  pivot_ = LinearForm<F>::make(field_, alpha_).pivot();
}

template <class F>
Monomial Chart<F>::drop_pivot(const Monomial& m) const {
  Monomial out;
  int k = 0;
  for (int j = 0; j < ambient_vars(); ++j) {
    if (j == pivot_) continue;
    out.e[k++] = m.e[j];
  }
  return out;
}

template <class F>
Layered<F> Chart<F>::restrict_linear(const Vec<F>& beta, int m) const {
  const F& f = field_;
  Layered<F> out = layered_zero(f, restricted_vars(), 1, m);
  const auto r = f.div(beta[pivot_], alpha_[pivot_]);
  int k = 0;
  for (int j = 0; j < ambient_vars(); ++j) {
    if (j == pivot_) continue;
    out.layer[0].c[k++] = f.sub(beta[j], f.mul(r, alpha_[j]));
  }
  if (m > 1) out.layer[1].c[0] = r;
  return out;
}

template <class F>
Layered<F> Chart<F>::multiply(const Layered<F>& a, const Layered<F>& b, int m) const {
  const F& f = field_;
  Layered<F> out = layered_zero(f, restricted_vars(), a.degree + b.degree, m);
  for (int i = 0; i < m && i < static_cast<int>(a.layer.size()); ++i) {
    if (a.layer[i].degree < 0 || a.layer[i].is_zero()) continue;
    for (int j = 0; i + j < m && j < static_cast<int>(b.layer.size()); ++j) {
      if (b.layer[j].degree < 0) continue;
      const HomPoly<F> prod = hp_mul(f, a.layer[i], b.layer[j]);
      hp_axpy(f, out.layer[i + j], f.one(), prod);
    }
  }
  return out;
}

template <class F>
const Layered<F>& Chart<F>::pivot_power(int e, int m) const {
  auto& cache = powers_[m];
  if (cache.empty()) {
    Layered<F> one = layered_zero(field_, restricted_vars(), 0, m);
    one.layer[0].c[0] = field_.one();
    cache.push_back(std::move(one));
  }
  if (static_cast<int>(cache.size()) <= e) {
    Vec<F> unit(ambient_vars(), field_.zero());
    unit[pivot_] = field_.one();
    const Layered<F> x = restrict_linear(unit, m);
    while (static_cast<int>(cache.size()) <= e) cache.push_back(multiply(cache.back(), x, m));
  }
  return cache[e];
}

template <class F>
Layered<F> Chart<F>::restrict(const HomPoly<F>& h, int m) const {
  const F& f = field_;
  Layered<F> out = layered_zero(f, restricted_vars(), h.degree, m);
  if (h.degree < 0) return out;
  const auto& mons = monomials_cached(ambient_vars(), h.degree);
  const int nv = restricted_vars();
  for (std::size_t i = 0; i < h.c.size(); ++i) {
    if (F::is_zero(h.c[i])) continue;
    const Monomial rest = drop_pivot(mons[i]);
    const Layered<F>& pw = pivot_power(mons[i].e[pivot_], m);
    for (int k = 0; k < m; ++k) {
      const HomPoly<F>& src = pw.layer[k];
      if (src.degree < 0) continue;
      const auto& sm = monomials_cached(nv, src.degree);
      for (std::size_t s = 0; s < src.c.size(); ++s) {
        if (F::is_zero(src.c[s])) continue;
        auto& dst = out.layer[k].c[monomial_rank(mono_mul(sm[s], rest), nv)];
        dst = f.add(dst, f.mul(h.c[i], src.c[s]));
      }
    }
  }
  return out;
}

template <class F>
HomPoly<F> Chart<F>::pullback(const HomPoly<F>& h) const {
  return restrict(h, 1).layer[0];
}

template class Chart<RationalField>;
template class Chart<PrimeField>;
template Layered<RationalField> layered_zero(const RationalField&, int, int, int);
template Layered<PrimeField> layered_zero(const PrimeField&, int, int, int);

}  // namespace arrlog
