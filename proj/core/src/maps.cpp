#include "arrlog/maps.hpp"

#include <algorithm>
#include <map>

namespace arrlog {

namespace {

std::map<std::vector<int>, std::size_t> subset_index(int n, int k) {
  std::map<std::vector<int>, std::size_t> out;
  const auto all = subsets(n, k);
  for (std::size_t i = 0; i < all.size(); ++i) out.emplace(all[i], i);
  return out;
}

template <class F>
std::size_t rank_of(const F& f, const std::vector<Vec<F>>& rows) {
  if (rows.empty() || rows.front().empty()) return 0;
  return rank(Matrix<F>::from_vectors(f, rows, rows.front().size()));
}

template <class F>
typename F::Elem ratio_to(const F& f, const Vec<F>& beta, const Vec<F>& rep) {
  for (std::size_t k = 0; k < rep.size(); ++k)
    if (!F::is_zero(rep[k])) return f.div(beta[k], rep[k]);
  throw Error(ErrorCode::ZeroForm, "zero representative form");
}

}  // namespace

template <class F>
CoeffVector<F> euler_restrict_der(const CoeffVector<F>& theta, const Arrangement<F>& a, const Restriction<F>& r,
                                  bool verify) {
  if (theta.kind != LogKind::Derivations) throw Error(ErrorCode::InvalidArgument, "expected a derivation");
  if (verify && !is_logarithmic(a, theta))
    throw Error(ErrorCode::NotLogarithmic, "derivation is not logarithmic for the arrangement");
  const F& f = a.field;
  const Chart<F> chart(f, r.hyperplane);
  const int piv = chart.pivot();
  const int l = a.dim;
  const auto index = subset_index(l, theta.p);
  CoeffVector<F> out{LogKind::Derivations, theta.p, l - 1, theta.degree, 0, {}};
  for (const auto& jr : subsets(l - 1, theta.p)) {
    std::vector<int> j;
    for (int k : jr) j.push_back(k < piv ? k : k + 1);
    out.coeffs.push_back(chart.pullback(theta.coeffs[index.at(j)]));
  }
  return out;
}

template <class F>
CoeffVector<F> euler_restrict_der(const CoeffVector<F>& theta, const Arrangement<F>& a, std::size_t i) {
  return euler_restrict_der(theta, a, restrict_to(a, i));
}

template <class F>
CoeffVector<F> restrict_form(const CoeffVector<F>& omega, const Arrangement<F>& a_prime, const Restriction<F>& r,
                             bool verify) {
  if (omega.kind != LogKind::Forms) throw Error(ErrorCode::InvalidArgument, "expected a form");
  for (int t : r.trace_index)
    if (t < 0) throw Error(ErrorCode::InvalidArgument, "the restricting hyperplane belongs to the arrangement");
  if (verify && !is_logarithmic(a_prime, omega))
    throw Error(ErrorCode::NotLogarithmic, "form is not logarithmic for the arrangement");
  const F& f = a_prime.field;
  const int l = a_prime.dim;
  const Chart<F> chart(f, r.hyperplane);
  const Matrix<F> p = r.embedding.transpose();  // dx_i = sum_k p(i, k) dxbar_k on H
  const auto fams = subsets(l, omega.p);
  std::vector<HomPoly<F>> pulled;
  for (const auto& c : omega.coeffs) pulled.push_back(chart.pullback(c));
  // Powers of each trace to clear and the scalar left over.
  const std::size_t nx = r.arrangement.size();
  std::vector<int> total(nx, 0);
  auto scalar = f.one();
  for (std::size_t i = 0; i < a_prime.size(); ++i) {
    const int x = r.trace_index[i];
    total[x] += a_prime.mult[i];
    const Vec<F> beta = pullback_form(f, a_prime.forms[i], r.pivot, r.hyperplane);
    const auto c = ratio_to(f, beta, r.arrangement.forms[x]);
    for (int k = 0; k < a_prime.mult[i]; ++k) scalar = f.mul(scalar, c);
  }
  const auto inv_scalar = f.inv(scalar);
  CoeffVector<F> out{LogKind::Forms, omega.p, l - 1, omega.degree, r.arrangement.degree(), {}};
  for (const auto& kr : subsets(l - 1, omega.p)) {
    HomPoly<F> g = HomPoly<F>::zero(f, l - 1, omega.poly_degree());
    for (std::size_t i = 0; i < fams.size(); ++i) {
      Matrix<F> sub(f, omega.p, omega.p);
      for (int s = 0; s < omega.p; ++s)
        for (int t = 0; t < omega.p; ++t) sub(s, t) = p(fams[i][s], kr[t]);
      const auto c = omega.p == 0 ? f.one() : determinant(sub);
      if (!F::is_zero(c)) hp_axpy(f, g, c, pulled[i]);
    }
    for (std::size_t x = 0; x < nx; ++x) {
      for (int k = 1; k < total[x]; ++k) {
        HomPoly<F> q;
        if (g.is_zero()) {
          q = HomPoly<F>::zero(f, l - 1, g.degree - 1);
        } else if (!hp_divide_linear(f, g, r.arrangement.forms[x], q)) {
          throw Error(ErrorCode::NotLogarithmic, "restricted numerator is not divisible by a repeated trace");
        }
        g = std::move(q);
      }
    }
    out.coeffs.push_back(hp_scale(f, g, inv_scalar));
  }
  return out;
}

template <class F>
CoeffVector<F> restrict_form(const CoeffVector<F>& omega, const Arrangement<F>& a_prime, const Vec<F>& h) {
  return restrict_form(omega, a_prime, restrict_to_form(a_prime, h));
}

template <class F>
Vec<F> flatten(const CoeffVector<F>& v) {
  Vec<F> out;
  for (const auto& c : v.coeffs) out.insert(out.end(), c.c.begin(), c.c.end());
  return out;
}

namespace {

template <class F>
SurjectivityVerdict finish(std::vector<int> gens, std::vector<SurjectivityStep> ledger) {
  SurjectivityVerdict v;
  v.target_generator_degrees = std::move(gens);
  v.ledger = std::move(ledger);
  v.surjective = true;
  for (const auto& s : v.ledger) {
    const bool is_gen_degree =
        std::find(v.target_generator_degrees.begin(), v.target_generator_degrees.end(), s.degree) !=
        v.target_generator_degrees.end();
    if (is_gen_degree && s.image_dim < s.target_dim) {
      v.surjective = false;
      if (!v.first_failure) v.first_failure = s.degree;
    }
  }
  return v;
}

}  // namespace

template <class F>
SurjectivityVerdict surjectivity_check_der(const Arrangement<F>& a, std::size_t i, int p,
                                           std::optional<std::pair<int, int>> range) {
  const F& f = a.field;
  const Restriction<F> r = restrict_to(a, i);
  LogModule<F> target(r.arrangement, LogKind::Derivations, p);
  LogModule<F> source(a, LogKind::Derivations, p);
  const auto [lo, hi] = range.value_or(std::pair{0, static_cast<int>(r.arrangement.size())});
  const auto gens = minimal_generators(target, lo, hi);
  std::vector<SurjectivityStep> ledger;
  if (!gens.degrees.empty()) {
    for (int d = gens.degrees.front(); d <= gens.degrees.back(); ++d) {
      SurjectivityStep s{d, source.dimension(d), 0, target.dimension(d)};
      std::vector<Vec<F>> images;
      for (const auto& v : source.piece(d).basis)
        images.push_back(flatten(euler_restrict_der(source.element(v, d), a, r, false)));
      s.image_dim = rank_of(f, images);
      ledger.push_back(s);
    }
  }
  return finish<F>(gens.degrees, std::move(ledger));
}

template <class F>
SurjectivityVerdict surjectivity_check_forms(const ElementModule<F>& source, const Arrangement<F>& a_prime,
                                             const Restriction<F>& r, const ElementModule<F>& target,
                                             const std::vector<int>& target_generator_degrees) {
  const F& f = a_prime.field;
  std::vector<SurjectivityStep> ledger;
  if (!target_generator_degrees.empty()) {
    const auto [lo, hi] = std::minmax_element(target_generator_degrees.begin(), target_generator_degrees.end());
    for (int d = *lo; d <= *hi; ++d) {
      SurjectivityStep s{d, source.dimension(d), 0, target.dimension(d)};
      std::vector<Vec<F>> images;
      for (const auto& v : source.piece(d).basis)
        images.push_back(flatten(restrict_form(source.element(v, d), a_prime, r, false)));
      s.image_dim = rank_of(f, images);
      ledger.push_back(s);
    }
  }
  return finish<F>(target_generator_degrees, std::move(ledger));
}

template <class F>
SurjectivityVerdict surjectivity_check_forms(const ElementModule<F>& source, const Arrangement<F>& a_prime,
                                             const Vec<F>& h, std::optional<std::pair<int, int>> range) {
  const Restriction<F> r = restrict_to_form(a_prime, h);
  LogModule<F> target(r.arrangement, LogKind::Forms, 1);
  const auto [lo, hi] = range.value_or(default_degree_range(r.arrangement, LogKind::Forms));
  const auto gens = minimal_generators(target, lo, hi);
  return surjectivity_check_forms(source, a_prime, r, target, gens.degrees);
}

template <class F>
bool preparation_check(const CoeffVector<F>& omega, const Arrangement<F>& a, std::size_t i) {
  const F& f = a.field;
  if (omega.kind != LogKind::Forms || omega.p != 1) throw Error(ErrorCode::InvalidArgument, "expected a 1-form");
  const Chart<F> chart(f, a.forms.at(i));
  const Restriction<F> r = restrict_to(a, i);
  HomPoly<F> g = chart.pullback(omega.coeffs[chart.pivot()]);
  for (const auto& rep : r.arrangement.forms) {
    if (g.is_zero()) return true;
    HomPoly<F> q;
    if (!hp_divide_linear(f, g, rep, q)) return false;
    g = std::move(q);
  }
  return true;
}

#define ARRLOG_INSTANTIATE(F)                                                                                     \
  template CoeffVector<F> euler_restrict_der(const CoeffVector<F>&, const Arrangement<F>&, const Restriction<F>&, \
                                             bool);                                                               \
  template CoeffVector<F> euler_restrict_der(const CoeffVector<F>&, const Arrangement<F>&, std::size_t);          \
  template CoeffVector<F> restrict_form(const CoeffVector<F>&, const Arrangement<F>&, const Restriction<F>&, bool); \
  template CoeffVector<F> restrict_form(const CoeffVector<F>&, const Arrangement<F>&, const Vec<F>&);             \
  template Vec<F> flatten(const CoeffVector<F>&);                                                                 \
  template SurjectivityVerdict surjectivity_check_der(const Arrangement<F>&, std::size_t, int,                    \
                                                      std::optional<std::pair<int, int>>);                        \
  template SurjectivityVerdict surjectivity_check_forms(const ElementModule<F>&, const Arrangement<F>&,           \
                                                        const Vec<F>&, std::optional<std::pair<int, int>>);       \
  template SurjectivityVerdict surjectivity_check_forms(const ElementModule<F>&, const Arrangement<F>&,           \
                                                        const Restriction<F>&, const ElementModule<F>&,           \
                                                        const std::vector<int>&);                                 \
  template bool preparation_check(const CoeffVector<F>&, const Arrangement<F>&, std::size_t);

ARRLOG_INSTANTIATE(RationalField)
ARRLOG_INSTANTIATE(PrimeField)

#undef ARRLOG_INSTANTIATE

}  // namespace arrlog
