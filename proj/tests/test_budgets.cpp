#include "doctest.h"
#include "minorank/budgets.hpp"
#include "minorank/errors.hpp"

using namespace minorank;

namespace {

BigInt eval(const std::string& name, BudgetParams p) { return budget_eval(name, p); }

BudgetParams P(int d, long l) {
  BudgetParams p;
  p.d = d;
  p.l = l;
  return p;
}

struct Golden {
  std::string name;
  BudgetParams params;
  std::string value;
};

// Values computed independently with Python integers.
std::vector<Golden> goldens() {
  std::vector<Golden> g;
  auto add = [&](std::string n, BudgetParams p, std::string v) { g.push_back({n, p, v}); };
  add("Fpr", P(2, 7), "7");
  add("Gpr", P(2, 7), "7");
  add("Fpr", P(3, 1), "4");
  add("Fpr", P(3, 2), "64");
  add("Fpr", P(4, 1), "512");
  {
    BudgetParams p = P(3, 2);
    p.field = 3;
    add("Fpr", p, "324");
    p = P(4, 1);
    p.field = 3;
    add("Fpr", p, "19683");
  }
  add("Fpr_cap", P(3, 1), "64");
  add("Gpr", P(4, 3), "11");  // identity A: G_3 = 2l + 1, G_4 = 3l + 2
  add("Gtr_prime", P(2, 5), "5");
  add("Gtr_prime", P(3, 1), "256000000000000000000000000000000000000000000000000");
  add("Gtr_prime", P(3, 2),
      "127314748520905380391777855525586135065716774604121015664758778084648831235208544136462336000000000000000000000"
      "000000000000000000000000000");
  add("F4trp", P(4, 2), "9830400");
  add("G4trp", P(4, 2), "9830400");
  add("F4trp", P(4, 3), "116226146700");
  add("Gsr3_disjoint", P(3, 1), "24586240003");
  add("Gsr3_disjoint", P(3, 2), "48847912960006");
  add("Gtr3_disjoint", P(3, 2), "140000");
  add("Fsr3", P(3, 2), "384");
  add("Gsr3", P(3, 2), "408");
  add("F4pr22", P(4, 1), "67436544");
  add("G4pr22", P(4, 1), "8024948739");
  add("F4pr22", P(4, 2), "276220084224");
  {
    BudgetParams p = P(3, 1);
    p.s = 3;
    add("FRs", p, "644");
    add("HRs", p, "640");
    p = P(3, 2);
    p.s = 3;
    add("GRs", p, "13");
  }
  {
    BudgetParams p = P(3, 2);
    p.d2 = 2;
    add("Gprod", p, "20");
    p = P(3, 2);
    p.D = 3;
    p.base_g = "Gsr3";
    add("Gpow", p, "271669248");
  }
  add("essential_chain", P(3, 1), "65536");
  add("essential_chain", P(3, 2), "1099511627776");
  {
    BudgetParams p = P(3, 2);
    p.m = 1;
    add("essential_terms", p, "22");
    add("Gfrank1_disjoint", p, "4608");
    p = P(3, 3);
    p.m = 2;
    add("equiv_terms", p, "48");
  }
  return g;
}

}  // namespace

TEST_CASE("budget golden values") {
  const auto g = goldens();
  CHECK(g.size() >= 20);
  for (const auto& x : g) {
    CAPTURE(x.name);
    CHECK(eval(x.name, x.params).str() == x.value);
  }
}

TEST_CASE("budget identities") {
  for (long l = 1; l <= 6; ++l) {
    // base cases
    CHECK(eval("Gpr", P(2, l)) == l);
    CHECK(eval("Fpr", P(2, l)) == l);
    // s = 1 reduces to the one-dimensional budgets
    for (int d = 2; d <= 4; ++d) {
      BudgetParams p = P(d, l);
      p.s = 1;
      CHECK(eval("FRs", p) == eval("Fpr", p));
      CHECK(eval("GRs", p) == eval("Gpr", p));
      CHECK(eval("HRs", p) == 0);
    }
    // recursions one step at a time
    for (std::size_t s = 2; s <= 4; ++s) {
      BudgetParams p = P(3, l), q = P(3, l), b = P(3, l * long(s));
      p.s = s;
      q.s = s - 1;
      CHECK(eval("FRs", p) == eval("Fpr", b) + eval("FRs", q));
      CHECK(eval("HRs", p) == eval("Fpr", b) + eval("HRs", q));
      CHECK(eval("GRs", p) == eval("Gpr", b));
    }
    // the F_{d,pr} recursion against its cap |F|^{d! l}
    for (int d = 2; d <= 4; ++d) CHECK(eval("Fpr", P(d, l)) <= eval("Fpr_cap", P(d, l)));
    // order-4 chain
    CHECK(eval("F41sr", P(4, l)) == eval("Fsr3", P(3, l)));
    CHECK(eval("G41sr", P(4, l)) == l * eval("Gsr3", P(3, l)));
    CHECK(eval("essential_order3", [&] { auto p = P(3, l); p.m = 1; return p; }()) == 3 * l * l);
  }
  // product and tensor-power recursions
  BudgetParams p = P(3, 2);
  p.base = "Fsr3";
  p.base2 = "Fpr";
  p.d2 = 3;
  CHECK(eval("Fprod", p) == std::max({BigInt(2), eval("Fsr3", P(3, 2)), eval("Fpr", P(3, 2))}));
  p.D = 1;
  p.base_g = "Gsr3";
  CHECK(eval("Gpow", p) == eval("Gsr3", P(3, 2)));
}

TEST_CASE("H multiplier") {
  BudgetParams p = P(3, 1);
  p.s = 2;
  p.base_prime = "Gtr3_disjoint";
  const BigInt base = eval("GRs_prime", p);
  // G'_{3,tr}(G_{3,pr}(2)) with identity A: 17500 * 5^3
  CHECK(base == 17500 * 125);
  const BigInt h = eval("HRs", p);
  CHECK(h == 64);
  p.h_multiplier = 0;
  CHECK(eval("GRs_prime_h0", p) == base);
  p.h_multiplier = 1;
  CHECK(eval("GRs_prime_h0", p) == base + 3 * h);
  p.h_multiplier = 5;
  CHECK(eval("GRs_prime_h0", p) == base + 15 * h);
}

TEST_CASE("budget errors") {
  auto kind = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidInput;
  };
  CHECK(kind([] { eval("nope", P(3, 1)); }) == ErrorKind::UnknownBudget);
  CHECK(kind([] { eval("F4trp", P(4, 1)); }) == ErrorKind::ParameterOutOfRange);
  CHECK(kind([] { eval("Gtr_prime", P(6, 2)); }) == ErrorKind::ParameterOutOfRange);
  CHECK(kind([] { eval("Fpr", P(3, -1)); }) == ErrorKind::ParameterOutOfRange);
  BudgetParams p = P(3, 1);
  p.a_preset = "bogus";
  CHECK(kind([&] { eval("Gpr", p); }) == ErrorKind::UnknownKind);
  p = P(3, 2);
  p.dprime = 3;
  CHECK(kind([&] { eval("essential_terms", p); }) == ErrorKind::ParameterOutOfRange);
  for (const auto& b : budget_catalog()) CHECK_FALSE(b.formula.empty());
}
