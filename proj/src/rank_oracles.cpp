#include "minorank/rank_oracles.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "minorank/covering.hpp"
#include "minorank/errors.hpp"
#include "minorank/matrix.hpp"
#include "minorank/span_basis.hpp"
#include "rank_search.hpp"

namespace minorank {

std::uint64_t default_node_budget() {
  if (const char* env = std::getenv("MINORANK_NODE_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
    }
  }
  return 100000000ull;
}

namespace {

void check_family(const Tensor& t, const PartitionFamily& R) {
  if (R.empty()) fail(ErrorKind::InvalidInput, "partition family is empty");
  if (R.order() != t.order()) fail(ErrorKind::AxisMismatch, "partition family order differs from tensor order");
}

RankCertificate make_cert(const PartitionFamily& R, std::vector<RankTerm> terms) {
  RankCertificate c;
  c.notion = notion_name(R);
  c.family = R;
  c.terms = std::move(terms);
  return c;
}

RankTerm whole_term(const Tensor& t) {
  AxisMask all = full_mask(t.order());
  return RankTerm{{all}, {Factor{all, t.values()}}};
}

bool is_matrix_case(const Tensor& t, const PartitionFamily& R) {
  return t.order() == 2 && R.contains({1u, 2u});
}

std::vector<RankTerm> matrix_terms(const Tensor& t) {
  RankFactorization rf = rank_factorization(flatten(t, 1u));
  std::vector<RankTerm> terms;
  for (std::size_t i = 0; i < rf.cols.size(); ++i)
    terms.push_back(RankTerm{{1u, 2u}, {Factor{1u, rf.cols[i]}, Factor{2u, rf.rows[i]}}});
  return terms;
}

bool antichain_case(const Tensor& t, const PartitionFamily& R) {
  if (t.order() != 3 || !(R == PartitionFamily::slice_rank(3))) return false;
  if (t.support_size() > 64) return false;
  return is_antichain(support_of(t));
}

// One slice-rank term per covering slice; each support point goes to the
// first slice containing it.
std::vector<RankTerm> cover_terms(const Tensor& t, const CoverSolution& cover) {
  std::vector<RankTerm> terms;
  std::vector<std::size_t> pos(3);
  std::vector<std::vector<std::size_t>> rest_idx(3);
  for (int a = 0; a < 3; ++a) rest_idx[std::size_t(a)] = sub_indices(t, 7u & ~(1u << a));
  for (const CoverConstraint& c : cover.covers) {
    AxisMask single = 1u << c.type, rest = 7u & ~single;
    std::size_t m = 1;
    for (int a : mask_axes(rest)) m *= t.extent(a);
    terms.push_back(RankTerm{canonical_partition({single, rest}), {}});
    FieldVector ind(t.extent(c.type), 0);
    ind[std::size_t(c.value - 1)] = 1;
    FieldVector body(m, 0);
    Factor fi{single, ind}, fr{rest, body};
    if (terms.back().partition[0] == single)
      terms.back().factors = {fi, fr};
    else
      terms.back().factors = {fr, fi};
  }
  for (std::size_t li = 0; li < t.size(); ++li) {
    if (!t.value(li)) continue;
    t.unravel(li, pos);
    for (std::size_t i = 0; i < cover.covers.size(); ++i) {
      const CoverConstraint& c = cover.covers[i];
      if (int(pos[std::size_t(c.type)]) + 1 != c.value) continue;
      RankTerm& term = terms[i];
      Factor& body = term.factors[0].part == (1u << c.type) ? term.factors[1] : term.factors[0];
      body.values[rest_idx[std::size_t(c.type)][li]] = t.value(li);
      break;
    }
  }
  return terms;
}

std::vector<std::size_t> diagonal_points(const Tensor& t) {
  std::vector<std::size_t> out;
  const AxisMask all = full_mask(t.order());
  for (std::size_t li = 0; li < t.size(); ++li)
    if (in_diagonal(t.labels_of(li), all)) out.push_back(li);
  return out;
}

}  // namespace

std::optional<RankCertificate> rrank_decide(const Tensor& t, const PartitionFamily& R, std::size_t k,
                                            const OracleOptions& opt) {
  check_family(t, R);
  if (t.is_zero()) return make_cert(R, {});
  if (opt.fast_paths) {
    if (R.has_single_part()) {
      if (k == 0) return std::nullopt;
      return make_cert(R, {whole_term(t)});
    }
    if (is_matrix_case(t, R)) {
      auto terms = matrix_terms(t);
      if (terms.size() > k) return std::nullopt;
      return make_cert(R, std::move(terms));
    }
    if (antichain_case(t, R)) {
      CoverSolution cover = scc_exact(support_of(t));
      if (cover.size() > k) return std::nullopt;
      return make_cert(R, cover_terms(t, cover));
    }
  }
  auto out = detail::rank_search(t, R, k, {}, opt.node_budget);
  if (!out.found) return std::nullopt;
  return make_cert(R, std::move(out.terms));
}

RankReport rrank_exact(const Tensor& t, const PartitionFamily& R, const OracleOptions& opt) {
  check_family(t, R);
  RankReport rep;
  rep.notion = notion_name(R);
  rep.exhausted_below = true;
  if (t.is_zero()) {
    rep.certificate = make_cert(R, {});
    rep.method = "zero";
    return rep;
  }
  if (opt.fast_paths) {
    if (R.has_single_part()) {
      rep.certificate = make_cert(R, {whole_term(t)});
      rep.method = "single-part";
    } else if (is_matrix_case(t, R)) {
      rep.certificate = make_cert(R, matrix_terms(t));
      rep.method = "matrix";
    } else if (antichain_case(t, R)) {
      CoverSolution cover = scc_exact(support_of(t));
      rep.certificate = make_cert(R, cover_terms(t, cover));
      rep.nodes = cover.nodes;
      rep.method = "antichain";
    }
    if (!rep.method.empty()) {
      rep.value = rep.certificate.value();
      return rep;
    }
  }
  rep.method = "search";
  for (std::size_t k = 1;; ++k) {
    auto out = detail::rank_search(t, R, k, {}, opt.node_budget);
    rep.nodes += out.nodes;
    if (out.found) {
      rep.certificate = make_cert(R, std::move(out.terms));
      rep.value = rep.certificate.value();
      return rep;
    }
  }
}

std::size_t rrank(const Tensor& t, const PartitionFamily& R, const OracleOptions& opt) {
  return rrank_exact(t, R, opt).value;
}
std::size_t tensor_rank(const Tensor& t, const OracleOptions& opt) {
  return rrank(t, PartitionFamily::tensor_rank(t.order()), opt);
}
std::size_t slice_rank(const Tensor& t, const OracleOptions& opt) {
  return rrank(t, PartitionFamily::slice_rank(t.order()), opt);
}
std::size_t partition_rank(const Tensor& t, const OracleOptions& opt) {
  return rrank(t, PartitionFamily::partition_rank(t.order()), opt);
}

std::optional<std::size_t> spanning_rank(const Field& f, const std::vector<FieldVector>& S,
                                         const std::vector<FieldVector>& F, const OracleOptions& opt) {
  if (F.empty()) return 0;
  const std::size_t n = F[0].size();
  for (const auto& v : S)
    if (v.size() != n) fail(ErrorKind::AxisMismatch, "spanning rank vectors differ in length");
  for (const auto& v : F)
    if (v.size() != n) fail(ErrorKind::AxisMismatch, "spanning rank vectors differ in length");
  SpanBasis all(f, n), target(f, n);
  for (const auto& v : S) all.insert(v);
  for (const auto& v : F) {
    if (!all.contains(v)) return std::nullopt;
    target.insert(v);
  }
  detail::SpanProblem prob;
  prob.field = f;
  prob.length = n;
  for (const auto& v : S) prob.units.push_back({v});
  prob.targets = F;
  for (std::size_t k = target.dimension();; ++k) {
    std::uint64_t nodes = 0;
    if (detail::span_cover(prob, k, opt.node_budget, nodes)) return k;
  }
}

namespace {

// Branch and bound over the entries of a matrix whose row and column labels
// agree; lower bound rank(current) - #unassigned.
struct MatrixEssential {
  FieldMatrix m;
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  std::size_t best = std::size_t(1) << 40;
  FieldMatrix best_m;
  std::uint64_t nodes = 0, budget = 0;

  void run(std::size_t i) {
    if (++nodes > budget) fail(ErrorKind::ScaleExceeded, "essential rank search exceeded the node budget");
    std::size_t r = mat_rank(m);
    std::size_t left = cells.size() - i;
    if (r >= best + left) return;
    if (i == cells.size()) {
      best = r;
      best_m = m;
      return;
    }
    auto [a, b] = cells[i];
    const Elem keep = m.at(a, b);
    for (int v = 0; v < m.field().p(); ++v) {
      m.set(a, b, Elem(v));
      run(i + 1);
      if (best == 0) break;
    }
    m.set(a, b, keep);
  }
};

EssentialReport essential_from_search(const Tensor& t, const PartitionFamily& R, std::size_t k,
                                      const std::vector<std::size_t>& E, const OracleOptions& opt, bool& found) {
  auto out = detail::rank_search(t, R, k, E, opt.node_budget);
  EssentialReport rep;
  rep.nodes = out.nodes;
  found = out.found;
  if (!found) return rep;
  rep.modifier = t.zeros_like();
  const Field& f = t.field();
  for (std::size_t i = 0; i < E.size(); ++i) rep.modifier.set_value(E[i], f.neg(out.extra_coeffs[i]));
  rep.certificate = make_cert(R, std::move(out.terms));
  rep.certificate.modifier = rep.modifier;
  rep.value = rep.certificate.value();
  return rep;
}

}  // namespace

EssentialReport essential_rank_exact(const Tensor& t, const PartitionFamily& R, const OracleOptions& opt) {
  check_family(t, R);
  const std::vector<std::size_t> E = diagonal_points(t);
  EssentialReport rep;
  if (opt.fast_paths && R.has_single_part()) {
    bool off = !off_diagonal_support(t).empty();
    rep.modifier = t.zeros_like();
    if (!off) {
      rep.modifier = t.scaled(t.field().neg(1));
      rep.certificate = make_cert(R, {});
    } else {
      rep.certificate = make_cert(R, {whole_term(t)});
    }
    rep.certificate.modifier = rep.modifier;
    rep.value = rep.certificate.value();
    return rep;
  }
  if (opt.fast_paths && is_matrix_case(t, R)) {
    MatrixEssential me;
    me.m = flatten(t, 1u);
    me.budget = opt.node_budget;
    for (std::size_t li : E) {
      auto pos = t.labels_of(li);
      me.cells.emplace_back(*t.position(0, pos[0]), *t.position(1, pos[1]));
    }
    me.run(0);
    Tensor tv = unflatten(me.best_m, t, 1u);
    rep.modifier = tv - t;
    rep.certificate = make_cert(R, matrix_terms(tv));
    rep.certificate.modifier = rep.modifier;
    rep.value = me.best;
    rep.nodes = me.nodes;
    return rep;
  }
  for (std::size_t k = 0;; ++k) {
    bool found = false;
    EssentialReport r = essential_from_search(t, R, k, E, opt, found);
    rep.nodes += r.nodes;
    if (found) {
      r.nodes = rep.nodes;
      return r;
    }
  }
}

std::optional<EssentialReport> essential_rank_decide(const Tensor& t, const PartitionFamily& R, std::size_t k,
                                                     const OracleOptions& opt) {
  check_family(t, R);
  if (opt.fast_paths && (R.has_single_part() || is_matrix_case(t, R))) {
    EssentialReport rep = essential_rank_exact(t, R, opt);
    if (rep.value > k) return std::nullopt;
    return rep;
  }
  bool found = false;
  EssentialReport rep = essential_from_search(t, R, k, diagonal_points(t), opt, found);
  if (!found) return std::nullopt;
  return rep;
}

DisjointReport disjoint_rank_exact(const Tensor& t, const PartitionFamily& R, const OracleOptions& opt) {
  check_family(t, R);
  const int d = t.order();
  DisjointReport rep;
  rep.selection.sets.assign(std::size_t(d), {});
  rep.selection.disjoint = true;
  std::vector<Label> labels;
  for (const Axis& a : t.axes()) labels.insert(labels.end(), a.begin(), a.end());
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  std::vector<std::vector<int>> options;
  long double count = 1;
  for (Label l : labels) {
    std::vector<int> o;
    for (int a = 0; a < d; ++a)
      if (t.position(a, l)) o.push_back(a);
    count *= (long double)o.size();
    options.push_back(std::move(o));
  }
  if (count > (long double)opt.node_budget)
    fail(ErrorKind::ScaleExceeded, "too many disjoint label assignments to enumerate");
  if (t.is_zero()) return rep;
  RankMemo memo(R, opt);
  const std::size_t ceiling = memo.rank(t);
  std::vector<std::size_t> choice(labels.size(), 0);
  while (true) {
    ++rep.assignments;
    MinorSelection sel;
    sel.sets.assign(std::size_t(d), {});
    sel.disjoint = true;
    for (std::size_t i = 0; i < labels.size(); ++i) sel.sets[std::size_t(options[i][choice[i]])].push_back(labels[i]);
    bool nonempty = true;
    for (const Axis& a : sel.sets) nonempty &= !a.empty();
    if (nonempty && memo.at_least(restrict_to(t, sel), rep.value + 1)) {
      rep.value = memo.rank(restrict_to(t, sel));
      rep.selection = sel;
      if (rep.value == ceiling) break;
    }
    std::size_t i = labels.size();
    while (i > 0 && ++choice[i - 1] == options[i - 1].size()) choice[--i] = 0;
    if (i == 0) break;
  }
  return rep;
}

RankMemo::RankMemo(PartitionFamily R, OracleOptions opt) : R_(std::move(R)), opt_(opt) {}

namespace {
std::string memo_key(const Tensor& t) {
  std::string key;
  key.push_back(char(t.field().p()));
  for (const Axis& a : t.axes()) {
    key.push_back('|');
    for (Label l : a) key.append(reinterpret_cast<const char*>(&l), sizeof l);
  }
  key.push_back('#');
  key.append(t.values().begin(), t.values().end());
  return key;
}
}  // namespace

std::size_t RankMemo::rank(const Tensor& t) {
  ++queries_;
  auto key = memo_key(t);
  auto it = cache_.find(key);
  if (it != cache_.end() && it->second.first == it->second.second) return it->second.first;
  std::size_t v = rrank(t, R_, opt_);
  cache_[key] = {v, v};
  return v;
}

bool RankMemo::at_least(const Tensor& t, std::size_t k) {
  ++queries_;
  if (k == 0) return true;
  auto key = memo_key(t);
  auto it = cache_.find(key);
  if (it == cache_.end()) it = cache_.emplace(key, std::make_pair(std::size_t(0), ~std::size_t(0))).first;
  auto& [lo, hi] = it->second;
  if (lo >= k) return true;
  if (hi < k) return false;
  if (rrank_decide(t, R_, k - 1, opt_)) {
    hi = k - 1;
    return false;
  }
  lo = k;
  return true;
}

PartitionFamily named_family(const std::string& notion, int d) {
  if (notion == "tr") return PartitionFamily::tensor_rank(d);
  if (notion == "sr") return PartitionFamily::slice_rank(d);
  if (notion == "pr") return PartitionFamily::partition_rank(d);
  fail(ErrorKind::UnknownKind, "unknown rank notion '" + notion + "'");
}

}  // namespace minorank
