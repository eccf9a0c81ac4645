#include "minorank/budgets.hpp"

#include <functional>
#include <map>

#include "minorank/errors.hpp"

namespace minorank {

namespace {

constexpr std::size_t kMaxBits = std::size_t(1) << 20;

void need(bool ok, const std::string& what) {
  if (!ok) fail(ErrorKind::ParameterOutOfRange, what);
}

std::size_t bits(const BigInt& x) { return x <= 0 ? 0 : std::size_t(boost::multiprecision::msb(x)) + 1; }

BigInt ipow(const BigInt& base, const BigInt& exp) {
  need(exp >= 0, "negative exponent");
  if (exp == 0) return 1;
  if (base == 0 || base == 1) return base;
  need(exp <= BigInt(kMaxBits) && bits(base) * exp.convert_to<std::size_t>() <= kMaxBits + bits(base),
       "budget value exceeds 2^" + std::to_string(kMaxBits));
  return boost::multiprecision::pow(base, exp.convert_to<unsigned>());
}

BigInt mul(const BigInt& a, const BigInt& b) {
  need(bits(a) + bits(b) <= kMaxBits + 1, "budget value exceeds 2^" + std::to_string(kMaxBits));
  return a * b;
}

BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

using Eval = std::function<BigInt(const BudgetParams&)>;

struct Entry {
  BudgetInfo info;
  Eval eval;
};

BudgetParams with_l(BudgetParams p, const BigInt& l) {
  p.l = l;
  return p;
}

BigInt F_pr(int d, int q, const BigInt& l) {
  need(d >= 2, "F_{d,pr} needs d >= 2");
  BigInt f = l;
  for (int e = 3; e <= d; ++e) f = ipow(mul(ipow(q, l), f), e - 1);
  return f;
}

BigInt G_pr(const BudgetParams& p) {
  need(p.d >= 2, "G_{d,pr} needs d >= 2");
  BigInt g = p.l;
  for (int e = 3; e <= p.d; ++e) {
    BoundFunction A = BoundFunction::by_name(p.a_preset, e, p.field, p.a_constant);
    g = A(g + p.l + 1);
  }
  return g;
}

BigInt G_tr_prime(int d, const BigInt& l) {
  need(d >= 2, "G'_{d,tr} needs d >= 2");
  BigInt g = l;
  for (int e = 3; e <= d; ++e) {
    // (2.10^6)^{2^e} read as (2 * 10^6)^{2^e}, exponent (3 * 2^{e-1})(3 * 2^e)
    const BigInt lead = ipow(BigInt(2000000), ipow(2, e));
    const BigInt ex = mul(3 * ipow(2, e - 1), 3 * ipow(2, e));
    g = mul(lead, ipow(g, ex));
  }
  return g;
}

BigInt F_sr3(const BigInt& l) { return 48 * l * l * l; }
BigInt G_sr3(const BigInt& l) { return 51 * l * l * l; }

const std::map<std::string, Entry>& registry();

BigInt call(const std::string& name, const BudgetParams& p) {
  auto it = registry().find(name);
  if (it == registry().end()) fail(ErrorKind::UnknownBudget, "unknown budget " + name);
  return it->second.eval(p);
}

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> reg = [] {
    std::map<std::string, Entry> r;
    auto add = [&](std::string name, std::string formula, std::vector<std::string> uses, Eval e) {
      r[name] = Entry{BudgetInfo{name, std::move(formula), std::move(uses)}, std::move(e)};
    };
    add("Fpr", "F_{2,pr}(l) = l, F_{d,pr}(l) = (|F|^l F_{d-1,pr}(l))^{d-1}", {"d", "l", "field"},
        [](const BudgetParams& p) { return F_pr(p.d, p.field, p.l); });
    add("Fpr_cap", "|F|^{d! l}, the closed-form cap on F_{d,pr}", {"d", "l", "field"},
        [](const BudgetParams& p) { return ipow(p.field, mul(factorial(p.d), p.l)); });
    add("Gpr", "G_{2,pr}(l) = l, G_{d,pr}(l) = A_{d,F}(G_{d-1,pr}(l) + l + 1)", {"d", "l", "field", "a_preset", "a_constant"},
        G_pr);
    add("Ftr", "F_{d,tr}(l) = l", {"l"}, [](const BudgetParams& p) { return p.l; });
    add("Gtr", "G_{d,tr}(l) = l", {"l"}, [](const BudgetParams& p) { return p.l; });
    add("Fmat_multi", "s l rows and columns for s matrices", {"s", "l"},
        [](const BudgetParams& p) { return BigInt(p.s) * p.l; });
    add("Gmat_disjoint", "3 l: erk >= 3l gives drk >= l", {"l"}, [](const BudgetParams& p) { return 3 * p.l; });
    add("Gmat_disjoint_multi", "s(s+1) l + l", {"s", "l"},
        [](const BudgetParams& p) { return BigInt(p.s * (p.s + 1)) * p.l + p.l; });
    add("Fsr3", "48 l^3", {"l"}, [](const BudgetParams& p) { return F_sr3(p.l); });
    add("Gsr3", "51 l^3", {"l"}, [](const BudgetParams& p) { return G_sr3(p.l); });
    add("Gtr3_disjoint", "17500 l^3", {"l"}, [](const BudgetParams& p) { return 17500 * p.l * p.l * p.l; });
    add("Gsr3_disjoint", "17500 ((l^2 + l + 5) l (4l)^2)^3 + 3l", {"l"}, [](const BudgetParams& p) {
      const BigInt& l = p.l;
      const BigInt inner = (l * l + l + 5) * l * (4 * l) * (4 * l);
      return 17500 * inner * inner * inner + 3 * l;
    });
    add("Gtr_prime", "G'_{2,tr}(l) = l, G'_{d,tr}(l) = (2*10^6)^{2^d} G'_{d-1,tr}(l)^{(3*2^{d-1})(3*2^d)}",
        {"d", "l"}, [](const BudgetParams& p) { return G_tr_prime(p.d, p.l); });
    add("Gfrank1_disjoint", "d^2 (4 m^3)^{2^{d-1}} l", {"d", "m", "l"}, [](const BudgetParams& p) {
      need(p.d >= 2, "d >= 2");
      return mul(BigInt(p.d * p.d) * ipow(4 * p.m * p.m * p.m, ipow(2, p.d - 1)), p.l);
    });
    add("Gfrank1_disjoint3", "10 m l", {"m", "l"}, [](const BudgetParams& p) { return 10 * p.m * p.l; });
    add("F4trp", "300 l^{3l+9}, l >= 2", {"l"}, [](const BudgetParams& p) {
      need(p.l >= 2, "F_{4,trp} is stated for l >= 2");
      return 300 * ipow(p.l, 3 * p.l + 9);
    });
    add("G4trp", "300 l^{3l+9}, l >= 2", {"l"}, [](const BudgetParams& p) { return call("F4trp", p); });
    add("F41sr", "F_{4,1xsr}(l) = F_{3,sr}(l)", {"l"}, [](const BudgetParams& p) { return F_sr3(p.l); });
    add("G41sr", "G_{4,1xsr}(l) = l G_{3,sr}(l)", {"l"}, [](const BudgetParams& p) { return p.l * G_sr3(p.l); });
    add("F4pr22", "F_{4,pr(2,2)}(l) = F_{4,1xsr}(112 l^4)", {"l"},
        [](const BudgetParams& p) { return call("F41sr", with_l(p, 112 * ipow(p.l, 4))); });
    add("G4pr22", "G_{4,pr(2,2)}(l) = G_{4,1xsr}(112 l^4) + 3l", {"l"},
        [](const BudgetParams& p) { return call("G41sr", with_l(p, 112 * ipow(p.l, 4))) + 3 * p.l; });
    add("FRs", "F_{d,R,1}(l) = F_{d,R}(l), F_{d,R,s}(l) = F_{d,R}(sl) + F_{d,R,s-1}(l)", {"s", "l", "base"},
        [](const BudgetParams& p) {
          need(p.s >= 1, "s >= 1");
          BigInt f = call(p.base, p);
          for (std::size_t k = 2; k <= p.s; ++k) f += call(p.base, with_l(p, BigInt(k) * p.l));
          return f;
        });
    add("GRs", "G_{d,R,1}(l) = G_{d,R}(l), G_{d,R,s}(l) = G_{d,R}(sl)", {"s", "l", "base_g"},
        [](const BudgetParams& p) {
          need(p.s >= 1, "s >= 1");
          return call(p.base_g, with_l(p, BigInt(p.s) * p.l));
        });
    add("HRs", "H_{d,R,1}(l) = 0, H_{d,R,s}(l) = F_{d,R}(sl) + H_{d,R,s-1}(l)", {"s", "l", "base"},
        [](const BudgetParams& p) {
          need(p.s >= 1, "s >= 1");
          BigInt h = 0;
          for (std::size_t k = 2; k <= p.s; ++k) h += call(p.base, with_l(p, BigInt(k) * p.l));
          return h;
        });
    add("GRs_prime", "G'_{d,R,1}(l) = G'_{d,R}(l), G'_{d,R,s}(l) = G'_{d,R}(G_{d,R}(sl))",
        {"s", "l", "base_g", "base_prime"}, [](const BudgetParams& p) {
          need(p.s >= 1, "s >= 1");
          if (p.s == 1) return call(p.base_prime, p);
          return call(p.base_prime, with_l(p, call(p.base_g, with_l(p, BigInt(p.s) * p.l))));
        });
    add("GRs_prime_h0", "G'_{d,R,s}(l) + c d H_{d,R,s}(l), the H = 0 replacement, c configurable",
        {"s", "l", "d", "base", "base_g", "base_prime", "h_multiplier"}, [](const BudgetParams& p) {
          need(p.h_multiplier >= 0, "multiplier must be non-negative");
          return call("GRs_prime", p) + p.h_multiplier * p.d * call("HRs", p);
        });
    add("Fprod", "F_{d1+d2,R1xR2}(l) = max(l, F_{d1,R1}(l), F_{d2,R2}(l))", {"l", "d", "d2", "base", "base2"},
        [](const BudgetParams& p) {
          BudgetParams q = p;
          q.d = p.d2;
          return std::max({p.l, call(p.base, p), call(p.base2, q)});
        });
    add("Gprod", "G_{d1+d2,R1xR2}(l) = l G_{d1,R1}(l) G_{d2,R2}(l)", {"l", "d", "d2", "base_g", "base2_g"},
        [](const BudgetParams& p) {
          BudgetParams q = p;
          q.d = p.d2;
          return mul(mul(p.l, call(p.base_g, p)), call(p.base2_g, q));
        });
    add("Fpow", "F_{Dd,R^D}(l) = max(l, F_{d,R}(l))", {"l", "D", "base"},
        [](const BudgetParams& p) { return std::max(p.l, call(p.base, p)); });
    add("Gpow", "G_{Dd,R^D}(l) = l^{D-1} G_{d,R}(l)^D", {"l", "D", "base_g"}, [](const BudgetParams& p) {
      need(p.D >= 1, "D >= 1");
      return mul(ipow(p.l, p.D - 1), ipow(call(p.base_g, p), p.D));
    });
    add("slice_transform_terms", "m sr^2 (l = sr)", {"m", "l"}, [](const BudgetParams& p) { return p.m * p.l * p.l; });
    add("equiv_terms", "l (l m + l^2 + 1)", {"l", "m"},
        [](const BudgetParams& p) { return p.l * (p.l * p.m + p.l * p.l + 1); });
    add("essential_terms", "l^2 (m + d'(d - d')) + l^3 + l", {"l", "m", "d", "dprime"}, [](const BudgetParams& p) {
      need(p.dprime >= 1 && p.dprime < p.d, "need 1 <= d' < d");
      return p.l * p.l * (p.m + p.dprime * (p.d - p.dprime)) + p.l * p.l * p.l + p.l;
    });
    add("essential_order3", "(m + 2) l^2", {"l", "m"}, [](const BudgetParams& p) { return (p.m + 2) * p.l * p.l; });
    add("essential_chain", "(4 l^3)^{2^d}", {"l", "d"},
        [](const BudgetParams& p) { return ipow(4 * p.l * p.l * p.l, ipow(2, p.d)); });
    return r;
  }();
  return reg;
}

}  // namespace

const std::vector<BudgetInfo>& budget_catalog() {
  static const std::vector<BudgetInfo> cat = [] {
    std::vector<BudgetInfo> out;
    for (const auto& [name, e] : registry()) out.push_back(e.info);
    return out;
  }();
  return cat;
}

BigInt budget_eval(const std::string& name, const BudgetParams& p) {
  if (p.l < 0 || p.m < 0) fail(ErrorKind::ParameterOutOfRange, "l and m must be non-negative");
  if (p.d < 1 || p.d > 64 || p.d2 < 1 || p.d2 > 64) fail(ErrorKind::ParameterOutOfRange, "order out of range");
  if (p.field < 2) fail(ErrorKind::ParameterOutOfRange, "field order must be at least 2");
  return call(name, p);
}

}  // namespace minorank
