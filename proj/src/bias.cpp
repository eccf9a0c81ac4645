#include "minorank/bias.hpp"

#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "minorank/errors.hpp"
#include "minorank/partition.hpp"

namespace minorank {

Elem multilinear_form(const Tensor& t, const std::vector<FieldVector>& us) {
  if (int(us.size()) != t.order()) fail(ErrorKind::AxisMismatch, "multilinear form needs one vector per axis");
  Tensor cur = t;
  for (std::size_t a = 0; a + 1 < us.size(); ++a) cur = contract(us[a], cur);
  return dot(t.field(), cur.values(), us.back());
}

std::string BiasValue::fraction() const {
  return boost::multiprecision::numerator(value).str() + "/" + boost::multiprecision::denominator(value).str();
}

namespace {

std::size_t enumerated_length(const Tensor& t) {
  std::size_t n = 0;
  for (int a = 0; a + 1 < t.order(); ++a) n += t.extent(a);
  return n;
}

// Number of (u_1, ..., u_{d-1}) with (u_1 ... u_{d-1}).T = 0.
std::uint64_t vanishing_count(const Tensor& t) {
  if (t.order() == 1) return t.is_zero() ? 1 : 0;
  if (t.is_zero()) return t.field().power(enumerated_length(t));
  std::uint64_t total = 0;
  FieldVector u(t.extent(0), 0);
  do {
    total += vanishing_count(contract(u, t));
  } while (next_vector(t.field(), u));
  return total;
}

BigInt big_power(int p, std::size_t n) {
  BigInt r = 1;
  for (std::size_t i = 0; i < n; ++i) r *= p;
  return r;
}

}  // namespace

BiasValue bias_exact(const Tensor& t, std::uint64_t budget) {
  const std::size_t n = enumerated_length(t);
  if (t.field().power(n) > budget)
    fail(ErrorKind::ScaleExceeded, "exact bias needs " + std::to_string(t.field().p()) + "^" + std::to_string(n) +
                                       " contractions");
  BiasValue b;
  b.hits = vanishing_count(t);
  b.total = big_power(t.field().p(), n);
  b.value = Rational(BigInt(b.hits), b.total);
  b.estimate = b.value.convert_to<double>();
  return b;
}

BiasValue bias_mc(const Tensor& t, std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) fail(ErrorKind::InvalidInput, "bias sampling needs at least one sample");
  constexpr std::uint64_t kChunk = 4096;
  const int p = t.field().p();
  BiasValue b;
  b.exact = false;
  b.seed = seed;
  std::uint64_t hits = 0;
  for (std::uint64_t chunk = 0; chunk * kChunk < samples; ++chunk) {
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(chunk), std::uint32_t(chunk >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<int> val(0, p - 1);
    const std::uint64_t end = std::min(samples, (chunk + 1) * kChunk);
    for (std::uint64_t s = chunk * kChunk; s < end; ++s) {
      Tensor cur = t;
      while (cur.order() > 1) {
        FieldVector u(cur.extent(0));
        for (auto& x : u) x = Elem(val(rng));
        cur = contract(u, cur);
      }
      if (cur.is_zero()) ++hits;
    }
  }
  b.hits = hits;
  b.total = samples;
  b.estimate = double(hits) / double(samples);
  b.std_error = std::sqrt(b.estimate * (1 - b.estimate) / double(samples));
  b.value = Rational(BigInt(hits), BigInt(samples));
  return b;
}

AnalyticRank analytic_rank_of(const BiasValue& b, int p, std::size_t exponent) {
  // bias = hits / p^n, so ar = n - log_p(hits).
  AnalyticRank ar;
  BigInt h = b.hits;
  if (h == 0) fail(ErrorKind::InvalidInput, "bias is zero");
  std::size_t k = 0;
  BigInt pk = 1;
  while (pk * p <= h) pk *= p, ++k;
  ar.exact = pk == h;
  const BigInt n = exponent;
  if (ar.exact) {
    ar.value = n - k;
    ar.lo = ar.hi = ar.value;
  } else {
    ar.lo = n - k - 1;
    ar.hi = n - k;
  }
  ar.approx = double(exponent) - std::log(double(b.hits)) / std::log(double(p));
  return ar;
}

AnalyticRank analytic_rank(const Tensor& t, std::uint64_t budget) {
  return analytic_rank_of(bias_exact(t, budget), t.field().p(), enumerated_length(t));
}

bool averaging_check(const Tensor& t, std::uint64_t budget) {
  if (t.order() < 2) fail(ErrorKind::InvalidInput, "averaging needs order at least 2");
  const Rational lhs = bias_exact(t, budget).value;
  Rational sum = 0;
  BigInt count = 0;
  FieldVector u(t.extent(0), 0);
  do {
    sum += bias_exact(contract(u, t), budget).value;
    ++count;
  } while (next_vector(t.field(), u));
  return lhs == sum / Rational(count);
}

FieldVector combine(const Field& f, const std::vector<FieldVector>& us, const FieldVector& v) {
  FieldVector w(us.empty() ? 0 : us[0].size(), 0);
  for (std::size_t h = 0; h < us.size(); ++h)
    if (v[h]) axpy(f, w, v[h], us[h]);
  return w;
}

bool is_separated(const Tensor& t, const std::vector<FieldVector>& us, std::size_t q, RankMemo& memo) {
  const Field& f = t.field();
  FieldVector v(us.size(), 0);
  while (next_vector(f, v)) {
    if (!memo.at_least(contract(combine(f, us, v), t), q)) return false;
  }
  return true;
}

std::optional<std::vector<FieldVector>> separated_projections(const Tensor& t, std::size_t q, std::size_t l,
                                                              const OracleOptions& opt) {
  if (t.order() < 2) fail(ErrorKind::InvalidInput, "projections need order at least 2");
  const Field& f = t.field();
  const std::size_t n = t.extent(0);
  if (f.power(n) > opt.node_budget) fail(ErrorKind::ScaleExceeded, "too many projection vectors to scan");
  RankMemo memo(PartitionFamily::partition_rank(t.order() - 1), opt);
  std::vector<FieldVector> us;
  for (std::size_t h = 0; h < l; ++h) {
    bool found = false;
    FieldVector u(n, 0);
    while (!found && next_vector(f, u)) {
      bool ok = true;
      FieldVector v(h, 0);
      do {
        FieldVector w = u;
        for (std::size_t i = 0; i < h; ++i) axpy(f, w, v[i], us[i]);
        ok = memo.at_least(contract(w, t), q);
      } while (ok && next_vector(f, v));
      if (ok) {
        us.push_back(u);
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  if (!is_separated(t, us, q, memo)) fail(ErrorKind::VerificationFailed, "greedy projections are not separated");
  return us;
}


namespace {

constexpr unsigned kMaxBits = 1u << 20;

using Real = boost::multiprecision::cpp_bin_float_50;

BigInt checked_pow(const BigInt& base, const BigInt& exp) {
  if (exp == 0) return 1;
  if (base <= 1) return base;
  const std::size_t bits = boost::multiprecision::msb(base) + 1;
  if (exp > kMaxBits || bits * exp.convert_to<std::size_t>() > kMaxBits + bits)
    fail(ErrorKind::ParameterOutOfRange, "bound value exceeds 2^" + std::to_string(kMaxBits));
  return boost::multiprecision::pow(base, exp.convert_to<unsigned>());
}

BigInt ceil_real(const Real& x) {
  Real c = boost::multiprecision::ceil(x);
  return c.convert_to<BigInt>();
}

// ceil(2^e) for real e >= 0, capped.
BigInt pow2_real(const Real& e) {
  if (e > Real(kMaxBits)) fail(ErrorKind::ParameterOutOfRange, "bound value exceeds 2^" + std::to_string(kMaxBits));
  return ceil_real(boost::multiprecision::pow(Real(2), e));
}

}  // namespace

BoundFunction BoundFunction::oracle() { return {}; }

BoundFunction BoundFunction::janzer(int d, int p, double c) {
  if (d < 2 || c <= 0) fail(ErrorKind::ParameterOutOfRange, "janzer preset needs d >= 2 and c > 0");
  BoundFunction b;
  b.name_ = "janzer";
  b.d_ = d;
  b.p_ = p;
  b.constant_ = c;
  return b;
}

BoundFunction BoundFunction::milicevic(int d, double C) {
  if (d < 2 || C <= 0) fail(ErrorKind::ParameterOutOfRange, "milicevic preset needs d >= 2 and C > 0");
  BoundFunction b;
  b.name_ = "milicevic";
  b.d_ = d;
  b.constant_ = C;
  return b;
}

BoundFunction BoundFunction::by_name(const std::string& name, int d, int p, double constant) {
  if (name == "oracle") return oracle();
  if (name == "janzer") return janzer(d, p, constant);
  if (name == "milicevic") return milicevic(d, constant);
  fail(ErrorKind::UnknownKind, "unknown bound preset " + name);
}

BigInt BoundFunction::operator()(const BigInt& r) const {
  if (r < 0) fail(ErrorKind::ParameterOutOfRange, "negative rank");
  if (name_ == "oracle") return r;
  if (name_ == "janzer") {
    // c' = 4^{d^d}
    BigInt dd = checked_pow(d_, d_);
    BigInt cp = checked_pow(4, dd);
    if (cp > kMaxBits) fail(ErrorKind::ParameterOutOfRange, "janzer exponent 4^{d^d} too large");
    const unsigned e = cp.convert_to<unsigned>();
    Real base = Real(constant_) * boost::multiprecision::log(Real(p_));
    Real lg = boost::multiprecision::log2(base) * e;
    if (r > 1) lg += boost::multiprecision::log2(Real(r)) * e;
    if (lg > Real(kMaxBits)) fail(ErrorKind::ParameterOutOfRange, "janzer bound exceeds 2^" + std::to_string(kMaxBits));
    if (r == 0) return 0;
    return ceil_real(boost::multiprecision::pow(base, e) * Real(checked_pow(r, cp)));
  }
  // milicevic, with g = 2^{C d^2}: 2^{d^g} (r^{2^g} + 1)
  Real g = boost::multiprecision::pow(Real(2), Real(constant_) * d_ * d_);  // 2^{C d^2}
  if (g > Real(64)) fail(ErrorKind::ParameterOutOfRange, "milicevic exponent 2^{C d^2} too large");
  Real outer = boost::multiprecision::pow(Real(d_), g);                      // d^{2^{Cd^2}}
  Real rexp = boost::multiprecision::pow(Real(2), g);                        // 2^{2^{Cd^2}}
  Real lg = outer;
  if (r > 1) lg += boost::multiprecision::log2(Real(r)) * rexp;
  if (lg > Real(kMaxBits)) fail(ErrorKind::ParameterOutOfRange, "milicevic bound exceeds 2^" + std::to_string(kMaxBits));
  BigInt lead = pow2_real(outer);
  BigInt re = ceil_real(rexp);
  return lead * (checked_pow(r, re) + 1);
}

}  // namespace minorank
