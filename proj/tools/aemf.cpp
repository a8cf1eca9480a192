#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "aemf/aemf.hpp"

namespace {

using namespace aemf;

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2, kInfeasible = 3, kUnsupported = 4 };

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void spill(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

Instance load(const std::string& path) {
  Instance inst = parse_instance(slurp(path));
  for (const std::string& w : inst.warnings()) std::cerr << "warning: " << w << '\n';
  return inst;
}

nlohmann::json meta_json(const GadgetMeta& meta) {
  nlohmann::json j;
  j["kind"] = to_string(meta.kind);
  if (meta.kind == GadgetMeta::Kind::ApproxChain) j["k"] = meta.chain_k;
  j["expected_yes_value"] = to_string(meta.expected_yes_value);
  j["expected_no_bound"] = to_string(meta.expected_no_bound);
  j["bonus_edges"] = meta.bonus_edges;
  j["padded_triples"] = meta.padded_triples;
  j["solve_supported"] = meta.solve_supported;
  j["notes"] = meta.notes;
  return j;
}

void write_generated(const std::string& out, const Instance& inst, const nlohmann::json& meta) {
  spill(out, format_instance(inst));
  if (!out.empty() && out != "-") spill(out + ".meta.json", meta.dump(2) + "\n");
}

struct Options {
  std::string instance;
  std::string flow;
  std::string output;
  std::string method = "auto";
  bool integer = false;
  std::vector<std::string> at;

  std::string x3c;
  std::size_t chain_k = 1;
  std::string chain_deviation = "shift";
  bool no_pad = false;

  RandomParams random;
  std::string random_deviation = "constant";
  std::size_t budget = kOracleBudget;
};

int run_solve(const Options& o) {
  const Instance inst = load(o.instance);
  SolveResult result;
  if (!o.at.empty()) {
    std::vector<Rational> lambda;
    for (const std::string& s : o.at) lambda.push_back(parse_rational(s));
    result = finalize_solution(inst, lambda, "evaluate");
  } else {
    result = solve(inst, SolveOptions{parse_method(o.method), o.integer});
  }
  std::ostringstream text;
  write_solution(text, result);
  spill(o.output, text.str());
  return kOk;
}

int run_verify(const Options& o) {
  const Instance inst = load(o.instance);
  const FlowReport report = verify_flow(inst, parse_flow(slurp(o.flow), inst.num_edges()));
  for (const Violation& v : report.violations) std::cout << "violation " << v.message << '\n';
  std::cout << (report.ok() ? "feasible" : "infeasible") << " value " << to_string(report.value) << '\n';
  return report.ok() ? kOk : kFailure;
}

int run_breakpoints(const Options& o) {
  const Instance inst = load(o.instance);
  std::ostringstream text;
  write_breakpoints_csv(text, breakpoint_profile(inst));
  spill(o.output, text.str());
  return kOk;
}

int run_oracle(const Options& o) {
  const Instance inst = load(o.instance);
  OracleResult r;
  bool linear = true;
  for (const HomologousSet& s : inst.sets()) linear = linear && s.deviation.is_linear();
  if (o.integer) {
    r = oracle_integer(inst, o.budget);
  } else if (linear) {
    r = oracle_fractional(inst, o.budget);
  } else if (inst.k() == 1 && inst.set(0).deviation.is_concave()) {
    r = oracle_concave_grid(inst);
  } else {
    throw UnsupportedDeviation("fractional oracle needs affine deviations or one concave set; try --integer");
  }
  std::cout << "v " << to_string(r.value) << '\n';
  for (std::size_t i = 0; i < r.lambda.size(); ++i) std::cout << "l " << i << ' ' << to_string(r.lambda[i]) << '\n';
  std::cout << "c candidates " << r.candidates << '\n';
  return kOk;
}

int report(const Error& e, int code) {
  std::cerr << "error: " << e.kind() << ": " << e.what() << '\n';
  return code;
}

RandomDeviation random_kind(const std::string& name) {
  if (name == "constant") return RandomDeviation::Constant;
  if (name == "affine") return RandomDeviation::Affine;
  if (name == "concave") return RandomDeviation::ConcaveQuadratic;
  if (name == "mixed") return RandomDeviation::Mixed;
  throw InvalidInstance("unknown random deviation '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Almost equal maximum flow solver"};
  app.require_subcommand(1);
  Options o;

  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve an instance");
  solve_cmd->add_option("instance", o.instance, "Instance file")->required();
  solve_cmd->add_flag("--integer", o.integer, "Integral flows and lambdas");
  solve_cmd->add_option("--method", o.method, "auto, parametric or concave")
      ->check(CLI::IsMember({"auto", "parametric", "concave"}));
  solve_cmd->add_option("--at", o.at, "Evaluate F at these lambdas instead of optimising");
  solve_cmd->add_option("-o,--output", o.output, "Output file (default stdout)");

  CLI::App* verify_cmd = app.add_subcommand("verify", "Check a flow against an instance");
  verify_cmd->add_option("instance", o.instance, "Instance file")->required();
  verify_cmd->add_option("flow", o.flow, "Flow or solution file")->required();

  CLI::App* gen = app.add_subcommand("generate", "Write a gadget or random instance");
  gen->require_subcommand(1);
  CLI::App* gen_x3c = gen->add_subcommand("x3c", "Exact cover gadget");
  gen_x3c->add_option("x3c", o.x3c, "X3C file")->required();
  gen_x3c->add_flag("--no-pad", o.no_pad, "Keep the triple count as given");
  CLI::App* gen_approx = gen->add_subcommand("approx", "Approximation gadget");
  gen_approx->add_option("x3c", o.x3c, "X3C file")->required();
  gen_approx->add_option("--k", o.chain_k, "Chain parameter k")->check(CLI::PositiveNumber);
  gen_approx->add_option("--deviation", o.chain_deviation, "shift (x+1) or scale (kx)")
      ->check(CLI::IsMember({"shift", "scale"}));
  CLI::App* gen_convex = gen->add_subcommand("convex", "Convex-deviation gadget");
  gen_convex->add_option("x3c", o.x3c, "X3C file")->required();
  CLI::App* gen_random = gen->add_subcommand("random", "Random instance");
  gen_random->add_option("--n", o.random.n, "Nodes");
  gen_random->add_option("--m", o.random.m, "Edges");
  gen_random->add_option("--k", o.random.k, "Homologous sets");
  gen_random->add_option("--cap-max", o.random.cap_max, "Largest capacity");
  gen_random->add_option("--deviation", o.random_deviation, "constant, affine, concave or mixed")
      ->check(CLI::IsMember({"constant", "affine", "concave", "mixed"}));
  gen_random->add_option("--shift", o.random.shift, "Constant shift (-1 draws one per set)");
  gen_random->add_option("--seed", o.random.seed, "Seed");
  for (CLI::App* sub : {gen_x3c, gen_approx, gen_convex, gen_random}) {
    sub->add_option("-o,--output", o.output, "Instance file; metadata goes to <file>.meta.json")->required();
  }

  CLI::App* bp_cmd = app.add_subcommand("breakpoints", "Breakpoints of F as CSV");
  bp_cmd->add_option("instance", o.instance, "Instance file")->required();
  bp_cmd->add_option("-o,--output", o.output, "CSV file (default stdout)");

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Brute-force optimum");
  oracle_cmd->add_option("instance", o.instance, "Instance file")->required();
  oracle_cmd->add_flag("--integer", o.integer, "Integer optimum");
  oracle_cmd->add_option("--budget", o.budget, "Largest number of candidates");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve_cmd) return run_solve(o);
    if (*verify_cmd) return run_verify(o);
    if (*bp_cmd) return run_breakpoints(o);
    if (*oracle_cmd) return run_oracle(o);
    if (*gen_random) {
      o.random.deviation = random_kind(o.random_deviation);
      nlohmann::json meta;
      meta["kind"] = "Random";
      meta["n"] = o.random.n;
      meta["m"] = o.random.m;
      meta["k"] = o.random.k;
      meta["cap_max"] = o.random.cap_max;
      meta["deviation"] = o.random_deviation;
      meta["shift"] = o.random.shift;
      meta["seed"] = o.random.seed;
      write_generated(o.output, generate_random(o.random), meta);
      return kOk;
    }
    const X3CInstance x3c = parse_x3c(slurp(o.x3c));
    GadgetInstance g = *gen_x3c ? generate_x3c_gadget(x3c, !o.no_pad)
                       : *gen_approx
                           ? generate_approx_gadget(x3c, o.chain_k,
                                                    o.chain_deviation == "shift" ? ChainDeviation::ConstantShift
                                                                                 : ChainDeviation::Affine)
                           : generate_convex_gadget(x3c);
    write_generated(o.output, g.instance, meta_json(g.meta));
    return kOk;
  } catch (const Infeasible& e) {
    return report(e, kInfeasible);
  } catch (const BudgetExceeded& e) {
    return report(e, kUnsupported);
  } catch (const UnsupportedDeviation& e) {
    return report(e, kUnsupported);
  } catch (const Error& e) {
    return report(e, kFailure);
  } catch (const std::exception& e) {
    std::cerr << "error: Error: " << e.what() << '\n';
    return kFailure;
  }
}
