#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "turan/certificate.hpp"
#include "turan/errors.hpp"
#include "turan/flags.hpp"
#include "turan/geometry.hpp"
#include "turan/graph.hpp"
#include "turan/oracle.hpp"
#include "turan/pattern.hpp"
#include "turan/rational.hpp"
#include "turan/reproduce.hpp"
#include "turan/sdp_io.hpp"

namespace {

using namespace turan;
using nlohmann::json;

// Bad command-line literals exit 2; failures while computing or reading
// files exit 1. Handlers wrap literal parsing in usage() to mark the former.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
auto usage(F&& f) {
  try {
    return f();
  } catch (const InvalidError& e) {
    throw UsageError(e.what());
  }
}

ForbiddenFamily build_family(const std::vector<std::string>& subgraph,
                             const std::vector<std::string>& induced) {
  ForbiddenFamily fam;
  for (const auto& name : subgraph)
    for (auto& g : named_family(name))
      fam.members.push_back({std::move(g), ContainMode::kSubgraph});
  for (const auto& name : induced)
    for (auto& g : named_family(name))
      fam.members.push_back({std::move(g), ContainMode::kInduced});
  return fam;
}

json value_json(const DensityValue& v) {
  json j;
  j["approx"] = v.approx;
  j["error"] = v.error_bound;
  if (v.exact)
    j["exact"] = rational_to_string(v.rational);
  else
    j["exact"] = nullptr;
  return j;
}

struct Args {
  std::string format = "text";
  int order = 0;
  int arity = 3;
  bool directed = false;
  bool allow_digons = false;
  std::vector<std::string> forbid, forbid_induced;
  std::string target, graph, pattern;
  bool exact = false;
  int points = 0;
  int trials = 0;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  int from = 0;
  std::uint64_t denom_bound = 1u << 20;
  std::string cert_path, problem_path, solution_path, out_path, problem_out;
};

bool structured(const Args& a) { return a.format == "structured"; }

int cmd_enumerate(const Args& a) {
  ForbiddenFamily fam = usage([&] { return build_family(a.forbid, a.forbid_induced); });
  EnumerateOptions opt;
  opt.order = a.order;
  opt.arity = a.arity;
  opt.directed = a.directed;
  opt.allow_digons = a.allow_digons;
  opt.family = std::move(fam);
  auto classes = enumerate_graphs(opt);
  if (structured(a)) {
    json j;
    j["order"] = a.order;
    j["count"] = classes.size();
    json gs = json::array();
    for (const auto& g : classes) gs.push_back(g.to_string());
    j["graphs"] = std::move(gs);
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& g : classes) std::cout << g.to_string() << "\n";
  }
  return 0;
}

int cmd_density(const Args& a) {
  auto targets = usage([&] { return named_family(a.target); });
  int hint = targets.empty() ? 3 : targets.front().arity();
  auto g = usage([&] { return UniformGraph::parse(a.graph, hint); });
  Rat d = family_density(targets, g);
  if (structured(a)) {
    json j;
    j["graph"] = g.to_string();
    j["target"] = a.target;
    j["density"] = rational_to_string(d);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << rational_to_string(d) << "\n";
  }
  return 0;
}

int cmd_blowup(const Args& a) {
  Pattern p = usage([&] { return Pattern::parse(a.pattern); });
  auto targets = usage([&] { return named_family(a.target); });
  if (!p.recursive.empty())
    throw UsageError("blowup needs a non-recursive pattern; use iterate");
  Rat total = 0;
  for (const auto& t : targets) total += blowup_density(p, t);
  if (structured(a)) {
    json j;
    j["pattern"] = p.to_string();
    j["target"] = a.target;
    j["value"] = rational_to_string(total);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << rational_to_string(total) << "\n";
  }
  return 0;
}

int cmd_iterate(const Args& a) {
  Pattern p = usage([&] { return Pattern::parse(a.pattern); });
  auto targets = usage([&] { return named_family(a.target); });
  if (p.recursive.empty())
    throw UsageError("iterate needs at least one recursive part; use blowup");
  Rat total = 0;
  for (const auto& t : targets) total += iterated_density(p, t);
  if (structured(a)) {
    json j;
    j["pattern"] = p.to_string();
    j["target"] = a.target;
    j["value"] = rational_to_string(total);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << rational_to_string(total) << "\n";
  }
  return 0;
}

int cmd_optimize(const Args& a) {
  Pattern p = usage([&] { return Pattern::parse(a.pattern); });
  auto targets = usage([&] { return named_family(a.target); });
  OptimizeResult res = optimize_weights(p, targets, a.tol);
  if (structured(a)) {
    json j;
    j["pattern"] = p.to_string();
    j["target"] = a.target;
    j["value"] = value_json(res.value);
    j["weights"] = res.weights;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "value: " << res.value.to_string() << "\n";
    std::cout << "weights:";
    for (double w : res.weights) std::cout << " " << format_double(w);
    std::cout << "\n";
  }
  return 0;
}

int cmd_geometric(const Args& a) {
  if (a.exact) {
    auto rows = geometric_exact(a.points);
    if (structured(a)) {
      json j;
      j["points"] = a.points;
      json cs = json::array();
      for (const auto& r : rows)
        cs.push_back({{"graph", r.rep.to_string()}, {"prob", rational_to_string(r.prob)}});
      j["classes"] = std::move(cs);
      std::cout << j.dump(2) << "\n";
    } else {
      for (const auto& r : rows)
        std::cout << r.rep.to_string() << " " << rational_to_string(r.prob) << "\n";
    }
    return 0;
  }
  if (a.trials <= 0) throw UsageError("choose --exact or a positive --trials");
  auto rep = geometric_sample(a.points, a.trials, a.seed);
  if (structured(a)) {
    json j;
    j["points"] = rep.n;
    j["trials"] = rep.trials;
    j["seed"] = rep.seed;
    j["edge"] = {{"mean", rep.edge_mean}, {"stderr", rep.edge_stderr}};
    auto stats = [](const std::vector<SampleStat>& v) {
      json arr = json::array();
      for (const auto& s : v)
        arr.push_back({{"graph", s.rep.to_string()}, {"mean", s.mean}, {"stderr", s.stderr_}});
      return arr;
    };
    j["classes4"] = stats(rep.classes4);
    j["classes5"] = stats(rep.classes5);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "edge " << format_double(rep.edge_mean) << " +- "
              << format_double(rep.edge_stderr) << "\n";
    for (const auto& s : rep.classes4)
      std::cout << s.rep.to_string() << " " << format_double(s.mean) << " +- "
                << format_double(s.stderr_) << "\n";
    for (const auto& s : rep.classes5)
      std::cout << s.rep.to_string() << " " << format_double(s.mean) << " +- "
                << format_double(s.stderr_) << "\n";
  }
  return 0;
}

int cmd_sdp_export(const Args& a) {
  ForbiddenFamily fam = usage([&] { return build_family(a.forbid, a.forbid_induced); });
  auto targets = usage([&] { return named_family(a.target); });
  DensityProblem prob = assemble_problem(a.order, fam, targets, a.arity, a.directed);
  export_problem(prob, a.out_path);
  if (!a.problem_out.empty()) save_problem(prob, a.problem_out);
  std::cout << "wrote " << a.out_path << " (" << prob.graphs.size() << " constraints, "
            << prob.types.size() << " types)\n";
  return 0;
}

int cmd_sdp_round(const Args& a) {
  DensityProblem prob = load_problem(a.problem_path);
  SolverSolution sol = import_solution(prob, a.solution_path);
  Certificate cert = round_solution(prob, sol, a.denom_bound);
  save_certificate(cert, a.out_path);
  std::cout << "bound: " << rational_to_string(cert.bound) << "\n";
  return 0;
}

int cmd_verify(const Args& a) {
  Certificate cert = load_certificate(a.cert_path);
  DensityProblem prob = load_problem(a.problem_path);
  Verdict v = verify(cert, prob);
  if (v.valid) {
    std::cout << "valid: bound " << rational_to_string(v.certified_bound) << " (worst constraint "
              << v.worst_graph << ")\n";
    return 0;
  }
  std::cerr << "invalid: " << v.reason << "; recomputed bound "
            << rational_to_string(v.certified_bound) << "\n";
  return 1;
}

int cmd_oracle(const Args& a) {
  ForbiddenFamily fam = usage([&] { return build_family(a.forbid, a.forbid_induced); });
  auto targets = usage([&] { return named_family(a.target); });
  if (a.from > 0) {
    auto seq = density_sequence(fam, targets, a.from, a.order, a.arity, a.directed);
    if (structured(a)) {
      json j;
      json vals = json::array();
      for (std::size_t i = 0; i < seq.size(); ++i)
        vals.push_back({{"order", a.from + static_cast<int>(i)},
                        {"density", rational_to_string(seq[i])}});
      j["sequence"] = std::move(vals);
      std::cout << j.dump(2) << "\n";
    } else {
      for (std::size_t i = 0; i < seq.size(); ++i)
        std::cout << (a.from + static_cast<int>(i)) << ": " << rational_to_string(seq[i]) << "\n";
    }
    return 0;
  }
  OracleResult res = turan_h_number(a.order, fam, targets, a.arity, a.directed);
  if (structured(a)) {
    json j;
    j["order"] = res.order;
    j["max_count"] = res.max_count;
    j["max_density"] = rational_to_string(res.max_density);
    json ws = json::array();
    for (const auto& w : res.witnesses) ws.push_back(w.to_string());
    j["witnesses"] = std::move(ws);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "order: " << res.order << "\n";
    std::cout << "max_count: " << res.max_count << "\n";
    std::cout << "max_density: " << rational_to_string(res.max_density) << "\n";
    for (const auto& w : res.witnesses) std::cout << "witness: " << w.to_string() << "\n";
  }
  return 0;
}

int cmd_reproduce() {
  auto rows = reproduce_rows();
  std::size_t failed = 0;
  for (const auto& r : rows) {
    if (!r.passed) ++failed;
    std::cout << "[" << r.criterion << "] " << (r.passed ? "PASS" : "FAIL") << " " << r.name
              << ": " << r.detail << "\n";
  }
  std::cout << rows.size() << " rows, " << (rows.size() - failed) << " passed, " << failed
            << " failed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for extremal densities of small hypergraphs and digraphs"};
  app.require_subcommand(1);
  Args a;

  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", a.format, "output format")
        ->check(CLI::IsMember({"text", "structured"}));
  };
  auto add_family = [&](CLI::App* c) {
    c->add_option("--forbid", a.forbid, "forbidden subgraphs (name or graph string)");
    c->add_option("--forbid-induced", a.forbid_induced, "forbidden induced subgraphs");
  };
  auto add_shape = [&](CLI::App* c) {
    c->add_option("--arity", a.arity, "edge size")->check(CLI::IsMember({2, 3}));
    c->add_flag("--directed", a.directed, "oriented 2-graphs");
  };

  CLI::App* c_enum = app.add_subcommand("enumerate", "list isomorphism classes");
  c_enum->add_option("--order", a.order, "vertex count")->required();
  add_shape(c_enum);
  c_enum->add_flag("--allow-digons", a.allow_digons, "permit both arcs on a pair");
  add_family(c_enum);
  add_format(c_enum);

  CLI::App* c_dens = app.add_subcommand("density", "induced density of a target in a graph");
  c_dens->add_option("--target", a.target, "target graph or family")->required();
  c_dens->add_option("--graph", a.graph, "host graph string")->required();
  add_format(c_dens);

  CLI::App* c_blow = app.add_subcommand("blowup", "exact blow-up density of a pattern");
  c_blow->add_option("--pattern", a.pattern, "pattern text")->required();
  c_blow->add_option("--target", a.target, "target graph or family")->required();
  add_format(c_blow);

  CLI::App* c_iter = app.add_subcommand("iterate", "exact iterated construction density");
  c_iter->add_option("--pattern", a.pattern, "pattern text with recursive parts")->required();
  c_iter->add_option("--target", a.target, "target graph or family")->required();
  add_format(c_iter);

  CLI::App* c_opt = app.add_subcommand("optimize", "maximize the density over part weights");
  c_opt->add_option("--pattern", a.pattern, "pattern text")->required();
  c_opt->add_option("--target", a.target, "target graph or family")->required();
  c_opt->add_option("--tol", a.tol, "refinement tolerance")->check(CLI::Range(1e-12, 1.0));
  add_format(c_opt);

  CLI::App* c_geo = app.add_subcommand("geometric", "chord-subdivision parity construction");
  c_geo->add_option("--points", a.points, "circle points")->required();
  c_geo->add_flag("--exact", a.exact, "exact dyadic distribution (points <= 6)");
  c_geo->add_option("--trials", a.trials, "Monte Carlo trials");
  c_geo->add_option("--seed", a.seed, "RNG seed");
  add_format(c_geo);

  CLI::App* c_exp = app.add_subcommand("sdp-export", "assemble and export a solver problem");
  c_exp->add_option("--order", a.order, "constraint order N")->required();
  add_shape(c_exp);
  add_family(c_exp);
  c_exp->add_option("--target", a.target, "target graph or family")->required();
  c_exp->add_option("--out", a.out_path, "solver input path")->required();
  c_exp->add_option("--problem-out", a.problem_out, "problem descriptor path");

  CLI::App* c_rnd = app.add_subcommand("sdp-round", "round a solver solution to a certificate");
  c_rnd->add_option("--problem", a.problem_path, "problem descriptor path")->required();
  c_rnd->add_option("--solution", a.solution_path, "solver solution path")->required();
  c_rnd->add_option("--out", a.out_path, "certificate path")->required();
  c_rnd->add_option("--denom-bound", a.denom_bound, "max denominator for rounded factors");

  CLI::App* c_ver = app.add_subcommand("verify", "re-check a certificate exactly");
  c_ver->add_option("--cert", a.cert_path, "certificate path")->required();
  c_ver->add_option("--problem", a.problem_path, "problem descriptor path")->required();

  CLI::App* c_ora = app.add_subcommand("oracle", "exhaustive small-order maxima");
  c_ora->add_option("--order", a.order, "vertex count")->required();
  add_shape(c_ora);
  add_family(c_ora);
  c_ora->add_option("--target", a.target, "target graph or family")->required();
  c_ora->add_option("--from", a.from, "emit the density sequence from this order");
  add_format(c_ora);

  CLI::App* c_rep = app.add_subcommand("reproduce", "run the acceptance table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(c_enum)) return cmd_enumerate(a);
    if (app.got_subcommand(c_dens)) return cmd_density(a);
    if (app.got_subcommand(c_blow)) return cmd_blowup(a);
    if (app.got_subcommand(c_iter)) return cmd_iterate(a);
    if (app.got_subcommand(c_opt)) return cmd_optimize(a);
    if (app.got_subcommand(c_geo)) return cmd_geometric(a);
    if (app.got_subcommand(c_exp)) return cmd_sdp_export(a);
    if (app.got_subcommand(c_rnd)) return cmd_sdp_round(a);
    if (app.got_subcommand(c_ver)) return cmd_verify(a);
    if (app.got_subcommand(c_ora)) return cmd_oracle(a);
    if (app.got_subcommand(c_rep)) return cmd_reproduce();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
