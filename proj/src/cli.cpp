#include "minorank/cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "minorank/bias.hpp"
#include "minorank/budgets.hpp"
#include "minorank/counterexample.hpp"
#include "minorank/disjoint.hpp"
#include "minorank/errors.hpp"
#include "minorank/generate.hpp"
#include "minorank/json_io.hpp"
#include "minorank/minors.hpp"
#include "minorank/rank_oracles.hpp"

namespace minorank {

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    fail(ErrorKind::VerificationFailed, "SHA-256 failed");
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidInput, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::InvalidInput, "cannot write " + path);
  out << text;
}

Json parse_json(const std::string& text, const std::string& what) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorKind::InvalidInput, what + " is not valid JSON");
  return j;
}

PartitionFamily parse_notion(const std::string& notion, int d) {
  if (notion == "tr") return PartitionFamily::tensor_rank(d);
  if (notion == "sr") return PartitionFamily::slice_rank(d);
  if (notion == "pr") return PartitionFamily::partition_rank(d);
  PartitionFamily r = family_from_json(parse_json(read_file(notion), notion));
  if (r.order() != d) fail(ErrorKind::AxisMismatch, "family order differs from tensor order");
  return r;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::RankTooLow:
    case ErrorKind::Infeasible:
    case ErrorKind::Obstructed:
      return 2;
    case ErrorKind::ScaleExceeded:
      return 3;
    default:
      return 1;
  }
}

struct Input {
  std::string digest;
  Tensor tensor;
};

Input load_tensor(const std::string& path) {
  const std::string text = read_file(path);
  return {sha256_hex(text), tensor_from_json(parse_json(text, path))};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"minorank: rank minors of tensors over finite fields"};
  app.require_subcommand(1);
  std::uint64_t node_budget = default_node_budget();
  app.add_option("--node-budget", node_budget, "oracle node budget (default: MINORANK_NODE_BUDGET or 1e8)");

  std::string notion = "pr", input, cert_path;
  std::size_t target = 1;
  bool essential = false, disjoint_flag = false;

  auto* rank = app.add_subcommand("rank", "exact rank with a certificate");
  rank->add_option("--notion", notion, "tr | sr | pr | family JSON file");
  rank->add_option("--input", input, "tensor JSON")->required();
  rank->add_flag("--essential", essential, "essential rank (minimum over E-supported modifiers)");
  rank->add_flag("--disjoint", disjoint_flag, "disjoint rank (largest rank on disjoint label sets)");
  rank->add_option("--emit-certificate", cert_path, "write the certificate here");

  auto* minor = app.add_subcommand("minor", "minor extraction");
  auto* minor_find = minor->add_subcommand("find", "find a small minor of rank >= target");
  minor->require_subcommand(1);
  minor_find->add_option("--notion", notion);
  minor_find->add_option("--target", target)->required();
  minor_find->add_option("--input", input)->required();
  minor_find->add_option("--emit-certificate", cert_path, "write the restricted tensor's certificate here");

  auto* disj = app.add_subcommand("disjoint", "disjoint minors");
  auto* disj_find = disj->add_subcommand("find", "find disjoint label sets of rank >= target");
  disj->require_subcommand(1);
  disj_find->add_option("--notion", notion);
  disj_find->add_option("--target", target)->required();
  disj_find->add_option("--input", input)->required();

  bool exact = false;
  std::uint64_t samples = 0, seed = 0;
  auto* bias = app.add_subcommand("bias", "bias and analytic rank");
  bias->add_option("--input", input)->required();
  auto* exact_flag = bias->add_flag("--exact", exact, "full enumeration");
  auto* samples_opt = bias->add_option("--samples", samples, "Monte Carlo samples");
  bias->add_option("--seed", seed);
  exact_flag->excludes(samples_opt);

  unsigned threads = 0;
  auto* vc = app.add_subcommand("verify-counterexample", "machine check of the counterexample tensor");
  vc->add_option("--threads", threads, "0 = hardware concurrency");

  BudgetParams bp;
  std::string budget_name, l_text = "1", m_text = "0", mult_text = "1";
  bool list = false;
  auto* budget = app.add_subcommand("budget", "exact values of the quantitative bounds");
  budget->add_option("--name", budget_name);
  budget->add_flag("--list", list, "list the available budgets");
  budget->add_option("--l", l_text);
  budget->add_option("--d", bp.d);
  budget->add_option("--s", bp.s);
  budget->add_option("--field", bp.field, "|F|");
  budget->add_option("--m", m_text);
  budget->add_option("--dprime", bp.dprime);
  budget->add_option("--D", bp.D);
  budget->add_option("--d2", bp.d2);
  budget->add_option("--base", bp.base);
  budget->add_option("--base-g", bp.base_g);
  budget->add_option("--base2", bp.base2);
  budget->add_option("--base2-g", bp.base2_g);
  budget->add_option("--base-prime", bp.base_prime);
  budget->add_option("--a-preset", bp.a_preset, "oracle | janzer | milicevic");
  budget->add_option("--a-constant", bp.a_constant);
  budget->add_option("--multiplier", mult_text, "constant c in G' + c d H");

  GenerateParams gp;
  std::string kind, output;
  auto* gen = app.add_subcommand("generate", "structured random tensors");
  gen->add_option("--kind", kind, "random | rank1sum | diagonal | antichain | esupported | obstruction | gowers")
      ->required();
  gen->add_option("--d", gp.d);
  gen->add_option("--n", gp.n);
  gen->add_option("--k", gp.k);
  gen->add_option("--p", gp.p);
  gen->add_option("--density", gp.density);
  gen->add_option("--seed", gp.seed);
  gen->add_option("--output", output, "also write the tensor JSON here");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return 1;
  }

  OracleOptions opt;
  opt.node_budget = node_budget;
  MinorOptions mopt;
  mopt.oracle = opt;

  Json report;
  std::string command;
  for (const auto* sub : app.get_subcommands()) {
    command = sub->get_name();
    for (const auto* s2 : sub->get_subcommands()) command += " " + s2->get_name();
  }
  report["command"] = command;
  report["version"] = MINORANK_VERSION;
  std::string joined;
  for (const auto& a : args) joined += a + '\0';
  report["input_sha256"] = sha256_hex(joined);
  report["node_budget"] = node_budget;
  const auto start = std::chrono::steady_clock::now();
  auto seconds = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

  try {
    Json result;
    if (rank->parsed()) {
      Input in = load_tensor(input);
      report["input_sha256"] = in.digest;
      const PartitionFamily R = parse_notion(notion, in.tensor.order());
      result["notion"] = notion_name(R);
      result["family"] = family_to_json(R);
      if (essential && disjoint_flag) fail(ErrorKind::InvalidInput, "--essential and --disjoint are exclusive");
      if (disjoint_flag) {
        DisjointReport r = disjoint_rank_exact(in.tensor, R, opt);
        result["kind"] = "disjoint";
        result["value"] = r.value;
        result["selection"] = selection_to_json(r.selection);
      } else if (essential) {
        EssentialReport r = essential_rank_exact(in.tensor, R, opt);
        result["kind"] = "essential";
        result["value"] = r.value;
        result["certificate"] = certificate_to_json(r.certificate, in.tensor);
        result["certificate_ok"] = certifies(r.certificate, in.tensor);
      } else {
        RankReport r = rrank_exact(in.tensor, R, opt);
        result["kind"] = "rank";
        result["value"] = r.value;
        result["method"] = r.method;
        result["nodes"] = r.nodes;
        result["certificate"] = certificate_to_json(r.certificate, in.tensor);
        result["certificate_ok"] = certifies(r.certificate, in.tensor);
      }
      if (!cert_path.empty() && result.contains("certificate")) {
        write_file(cert_path, canonical_dump(result["certificate"]));
        result["certificate_path"] = cert_path;
      }
    } else if (minor_find->parsed()) {
      Input in = load_tensor(input);
      report["input_sha256"] = in.digest;
      const PartitionFamily R = parse_notion(notion, in.tensor.order());
      MinorResult m = general_minor_find(in.tensor, R, target, mopt);
      result["notion"] = notion_name(R);
      result["target"] = target;
      result["verified"] = m.verified;
      result["selection"] = selection_to_json(m.selection);
      result["max_size"] = m.selection.max_size();
      result["route"] = m.route;
      if (!cert_path.empty()) {
        Tensor sub = restrict_to(in.tensor, m.selection);
        RankReport r = rrank_exact(sub, R, opt);
        Json c = certificate_to_json(r.certificate, sub);
        c["restricted_tensor"] = tensor_to_json(sub);
        write_file(cert_path, canonical_dump(c));
        result["certificate_path"] = cert_path;
      }
    } else if (disj_find->parsed()) {
      Input in = load_tensor(input);
      report["input_sha256"] = in.digest;
      const PartitionFamily R = parse_notion(notion, in.tensor.order());
      DisjointCertificate c = disjoint_rank_find(in.tensor, R, target, opt);
      result["notion"] = c.notion;
      result["disjoint"] = true;
      result["bound"] = c.bound;
      result["verified"] = c.verified;
      result["selection"] = selection_to_json(c.selection);
      result["route"] = c.route;
    } else if (bias->parsed()) {
      Input in = load_tensor(input);
      report["input_sha256"] = in.digest;
      if (!exact && samples == 0) exact = true;
      BiasValue b = exact ? bias_exact(in.tensor, node_budget) : bias_mc(in.tensor, samples, seed);
      result["exact"] = b.exact;
      result["bias"] = b.fraction();
      result["estimate"] = b.estimate;
      if (!exact) {
        result["samples"] = samples;
        result["seed"] = seed;
        result["std_error"] = b.std_error;
        report["seed"] = seed;
      } else {
        std::size_t n = 0;
        for (int a = 0; a + 1 < in.tensor.order(); ++a) n += in.tensor.extent(a);
        AnalyticRank ar = analytic_rank_of(b, in.tensor.field().p(), n);
        result["analytic_rank_exact"] = ar.exact;
        if (ar.exact) result["analytic_rank"] = ar.value.str();
        result["analytic_rank_bracket"] = {ar.lo.str(), ar.hi.str()};
      }
    } else if (vc->parsed()) {
      CounterexampleReport r = verify_counterexample(threads, false);
      result["passed"] = r.passed;
      result["points"] = r.points;
      result["sum_values"] = r.sum_values;
      result["sum_values_ok"] = r.sum_values_ok;
      result["reflected_antichain"] = r.reflected_antichain;
      result["lc3_full"] = r.lc3_full;
      result["scc_full"] = r.scc_full;
      result["slice_rank"] = r.slice_rank;
      result["certificate_ok"] = r.certificate_ok;
      result["removal_ok"] = r.removal_ok;
      result["minors_checked"] = r.combinations;
      result["max_minor_cover"] = r.max_minor_cover;
      result["cover_mismatches"] = r.cover_mismatches;
      result["threads"] = r.threads;
      if (!r.passed) fail(ErrorKind::VerificationFailed, "counterexample check failed");
    } else if (budget->parsed()) {
      if (list) {
        result["budgets"] = Json::array();
        for (const auto& b : budget_catalog())
          result["budgets"].push_back({{"name", b.name}, {"formula", b.formula}, {"uses", b.uses}});
      } else {
        if (budget_name.empty()) fail(ErrorKind::InvalidInput, "--name or --list is required");
        try {
          bp.l = BigInt(l_text);
          bp.m = BigInt(m_text);
          bp.h_multiplier = BigInt(mult_text);
        } catch (const std::exception&) {
          fail(ErrorKind::ParameterOutOfRange, "l, m and --multiplier must be integers");
        }
        const BigInt v = budget_eval(budget_name, bp);
        result["name"] = budget_name;
        result["value"] = v.str();
        result["parameters"] = {{"d", bp.d}, {"l", bp.l.str()}, {"s", bp.s}, {"field", bp.field},
                                {"m", bp.m.str()}, {"dprime", bp.dprime}, {"D", bp.D}, {"d2", bp.d2},
                                {"base", bp.base}, {"base_g", bp.base_g}, {"base2", bp.base2},
                                {"base2_g", bp.base2_g}, {"base_prime", bp.base_prime},
                                {"a_preset", bp.a_preset}, {"a_constant", bp.a_constant},
                                {"multiplier", bp.h_multiplier.str()}};
      }
    } else if (gen->parsed()) {
      std::vector<Tensor> ts = generate(kind, gp);
      Json tj = ts.size() == 1 ? tensor_to_json(ts[0]) : Json::object();
      if (ts.size() > 1) {
        tj["tensors"] = Json::array();
        for (const auto& t : ts) tj["tensors"].push_back(tensor_to_json(t));
      }
      if (!output.empty()) write_file(output, canonical_dump(tj));
      // no timing: identical parameters give byte-identical output
      report["seed"] = gp.seed;
      report["result"] = tj;
      out << canonical_dump(report);
      return 0;
    }
    report["result"] = result;
    report["seconds"] = seconds();
    out << canonical_dump(report);
    return 0;
  } catch (const Error& e) {
    report["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
    report["seconds"] = seconds();
    out << canonical_dump(report);
    err << e.what() << "\n";
    return exit_code(e.kind());
  }
}

}  // namespace minorank
