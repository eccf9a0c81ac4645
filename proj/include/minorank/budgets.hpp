#pragma once

#include <string>
#include <vector>

#include "minorank/bias.hpp"

namespace minorank {

// Parameters shared by every budget. Unused fields are ignored by a given
// budget; `base`/`base2` name the one-dimensional budgets that the
// multidimensional and product recursions are built from.
struct BudgetParams {
  int d = 3;
  BigInt l = 1;
  std::size_t s = 1;
  int field = 2;              // |F|
  BigInt m = 0;               // slice bound in the equivalence transforms
  int dprime = 1;             // |C| in the essential transform
  int D = 1;                  // tensor power
  int d2 = 2;                 // order of the second factor in a product
  std::string base = "Fpr";   // F_{d,R} for the s-recursions / first factor
  std::string base_g = "Gpr"; // G_{d,R}
  std::string base2 = "Ftr";  // second factor of a product
  std::string base2_g = "Gtr";
  std::string base_prime = "Gtr_prime";  // G'_{d,R}, disjoint rank
  std::string a_preset = "oracle";  // A_{d,F}: pr <= A(ar)
  double a_constant = 1.0;
  BigInt h_multiplier = 1;     // G' + c d H in the H = 0 replacement
};

struct BudgetInfo {
  std::string name;
  std::string formula;
  std::vector<std::string> uses;  // parameters read
};

const std::vector<BudgetInfo>& budget_catalog();
// Exact value. UnknownBudget for names outside the catalog,
// ParameterOutOfRange for parameters outside a budget's domain or values
// beyond 2^(2^20).
BigInt budget_eval(const std::string& name, const BudgetParams& p);

}  // namespace minorank
