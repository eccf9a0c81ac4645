#include "minorank/certificate.hpp"

#include "minorank/errors.hpp"
#include "minorank/tensor_ops.hpp"

namespace minorank {

Tensor evaluate_term(const Tensor& like, const RankTerm& term) {
  const int d = like.order();
  const Field& f = like.field();
  Tensor out = like.zeros_like();
  struct Plan {
    const std::vector<Elem>* values;
    std::vector<std::size_t> mult;  // per axis multiplier into the factor index
  };
  std::vector<Plan> plans;
  for (const Factor& fac : term.factors) {
    Plan p{&fac.values, std::vector<std::size_t>(std::size_t(d), 0)};
    std::size_t m = 1;
    auto axes = mask_axes(fac.part);
    for (std::size_t i = axes.size(); i-- > 0;) {
      p.mult[std::size_t(axes[i])] = m;
      m *= like.extent(axes[i]);
    }
    if (m != fac.values.size()) fail(ErrorKind::InvalidInput, "factor size does not match its part");
    plans.push_back(std::move(p));
  }
  std::vector<std::size_t> pos(std::size_t(d), 0), shape = like.shape();
  std::size_t li = 0;
  do {
    Elem v = 1;
    for (const Plan& p : plans) {
      std::size_t idx = 0;
      for (int a = 0; a < d; ++a) idx += p.mult[std::size_t(a)] * pos[std::size_t(a)];
      v = f.mul(v, (*p.values)[idx]);
      if (!v) break;
    }
    out.mutable_values()[li++] = v;
  } while (next_index(shape, pos));
  return out;
}

Tensor evaluate_terms(const Tensor& like, const std::vector<RankTerm>& terms) {
  Tensor sum = like.zeros_like();
  for (const RankTerm& t : terms) sum += evaluate_term(like, t);
  return sum;
}

bool certifies(const RankCertificate& cert, const Tensor& t) {
  if (cert.family.order() != t.order()) return false;
  for (const RankTerm& term : cert.terms) {
    if (!cert.family.contains(term.partition)) return false;
    if (term.factors.size() != term.partition.size()) return false;
    for (std::size_t i = 0; i < term.factors.size(); ++i)
      if (term.factors[i].part != term.partition[i]) return false;
  }
  Tensor target = t;
  if (cert.modifier) {
    if (!cert.modifier->same_shape(t)) return false;
    AxisMask all = full_mask(t.order());
    for (std::size_t li = 0; li < t.size(); ++li)
      if (cert.modifier->value(li) && !in_diagonal(t.labels_of(li), all)) return false;
    target += *cert.modifier;
  }
  return evaluate_terms(t, cert.terms) == target;
}

Factor factor_from(AxisMask part, const Tensor& on_part) { return Factor{part, on_part.values()}; }

Factor indicator_factor(const Tensor& like, int axis, std::size_t position) {
  Factor f{AxisMask(1) << axis, std::vector<Elem>(like.extent(axis), 0)};
  f.values[position] = 1;
  return f;
}

}  // namespace minorank
