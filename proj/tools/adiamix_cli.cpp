// Command-line front end: instance generation, enumeration, holonomy and
// diffusion runs, the full adiabatic check, classical baselines, and the
// scaling / entropy experiments.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "adiamix/adiabatic.hpp"
#include "adiamix/classical.hpp"
#include "adiamix/errors.hpp"
#include "adiamix/experiment.hpp"
#include "adiamix/gauge.hpp"
#include "adiamix/graph.hpp"
#include "adiamix/solution_space.hpp"

namespace {

using namespace adiamix;
using nlohmann::json;

enum ExitCode : int { kOk = 0, kUsage = 1, kNumerical = 2, kCapacity = 3 };

struct Common {
  std::string graph_path;
  int n = 0;
  int m = -1;
  std::uint64_t seed = 1;
  std::optional<double> theta;
  std::string out;
  std::string format = "csv";
};

void add_graph_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--graph", c.graph_path, "Edge-list file (otherwise generated from --n/--m/--seed)");
  cmd->add_option("--n", c.n, "Vertex count");
  cmd->add_option("--m", c.m, "Edge count (default: m = n)");
  cmd->add_option("--seed", c.seed, "PRNG seed");
}

void add_output_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out, "Output path (default: stdout)");
  cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

Graph load_graph(const Common& c) {
  if (!c.graph_path.empty()) return read_graph_file(c.graph_path);
  if (c.n < 1) throw InvalidArgument("give --graph or --n");
  return generate_random_graph(c.n, c.m < 0 ? c.n : c.m, c.seed);
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write '" + c.out + "'");
  f << text;
}

json state_summary(const AmplitudeVector& psi, const SolutionBasis& basis) {
  const TrivialProbability tp = trivial_probability(psi, basis);
  json j = {{"Ns", basis.size()},
            {"dn", tp.d_n},
            {"cn", tp.c_n},
            {"S", entropy(psi)},
            {"Pk", cardinality_probability(psi, basis)}};
  j["Sbar"] = basis.size() >= 2 ? json(normalized_entropy(psi, basis.size())) : json(nullptr);
  return j;
}

std::string state_output(const Common& c, const AmplitudeVector& psi, const SolutionBasis& basis) {
  if (c.format == "json") return state_summary(psi, basis).dump(2) + "\n";
  std::ostringstream out;
  write_probability_csv(out, psi, basis);
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-abelian adiabatic mixing for graph independent sets"};
  app.require_subcommand(1);
  Common c;

  // gen
  auto* gen = app.add_subcommand("gen", "Sample a uniform random graph with n vertices and m edges");
  gen->add_option("--n", c.n, "Vertex count")->required();
  gen->add_option("--m", c.m, "Edge count")->required();
  gen->add_option("--seed", c.seed, "PRNG seed");
  gen->add_option("--out", c.out, "Output path (default: stdout)");

  // enumerate
  std::string median_out;
  bool count_only = false;
  int max_vertices = 30;
  auto* en = app.add_subcommand("enumerate", "List all independent sets (the ground manifold)");
  add_graph_options(en, c);
  add_output_options(en, c);
  en->add_option("--median-out", median_out, "Write median-graph edges as CSV");
  en->add_flag("--count-only", count_only, "Only count N_s (no vertex limit)");
  en->add_option("--max-vertices", max_vertices, "Basis vertex limit");

  // holonomy / diffuse
  int loops = 1;
  auto* hol = app.add_subcommand("holonomy", "Apply the loop holonomy exp(2 pi i A) to the empty-set state");
  add_graph_options(hol, c);
  add_output_options(hol, c);
  hol->add_option("--theta", c.theta, "Cone angle in radians (default pi/2)");
  hol->add_option("--loops", loops, "Number of loops")->check(CLI::PositiveNumber);

  double t = 0.0;
  auto* dif = app.add_subcommand("diffuse", "Median-graph diffusion exp(i t A) from the empty-set state");
  add_graph_options(dif, c);
  add_output_options(dif, c);
  dif->add_option("--theta", c.theta, "Cone angle in radians (default pi/2)");
  dif->add_option("--t", t, "Dimensionless time")->required();

  // adiabatic-check
  std::vector<double> times{25, 50, 100, 200, 400};
  double delta = 1.0;
  int steps = 0;
  auto* adi = app.add_subcommand("adiabatic-check", "Full state-vector loop compared with the holonomy");
  add_graph_options(adi, c);
  add_output_options(adi, c);
  adi->add_option("--theta", c.theta, "Cone angle in radians (default pi/2)");
  adi->add_option("--T", times, "Loop durations")->delimiter(',');
  adi->add_option("--delta", delta, "Coupling Delta");
  adi->add_option("--steps", steps, "Time slices per loop (default max(1000, 40 T Delta))");

  // baseline
  std::uint64_t trials = 10000;
  std::string dimacs_out;
  auto* base = app.add_subcommand("baseline", "Classical 2-SAT and random-guess baselines");
  add_graph_options(base, c);
  add_output_options(base, c);
  base->add_option("--trials", trials, "Random picks")->check(CLI::PositiveNumber);
  base->add_option("--dimacs-out", dimacs_out, "Write the 2-SAT clauses in DIMACS CNF");

  // case1 / case2
  CaseConfig cfg;
  std::string fit_out;
  std::string summary_out;
  auto add_case_options = [&](CLI::App* cmd) {
    cmd->add_option("--n-min", cfg.n_min, "Smallest n");
    cmd->add_option("--n-max", cfg.n_max, "Largest n");
    cmd->add_option("--instances", cfg.instances, "Instances per n")->check(CLI::PositiveNumber);
    cmd->add_option("--theta", c.theta, "Cone angle in radians");
    cmd->add_option("--seed", cfg.seed, "Master seed");
    cmd->add_flag("--log-first", cfg.log_first, "Average logs instead of logging averages");
    cmd->add_flag("--record-walltime", cfg.record_walltime, "Fill walltime_ms (output no longer reproducible)");
    cmd->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
    cmd->add_option("--max-vertices", cfg.limits.max_vertices, "Basis vertex limit");
    cmd->add_option("--fit-out", fit_out, "Write both fits as JSON");
    cmd->add_option("--summary-out", summary_out, "Write per-n means and standard errors as CSV");
    add_output_options(cmd, c);
  };
  auto* case1 = app.add_subcommand("case1", "m = n scaling study");
  add_case_options(case1);
  auto* case2 = app.add_subcommand("case2", "m = floor(n^2/4) scaling study");
  add_case_options(case2);

  // entropy-trace
  double t_max = 10 * std::numbers::pi;
  int samples = 401;
  auto* ent = app.add_subcommand("entropy-trace", "Normalised entropy of the diffusing state over time");
  add_graph_options(ent, c);
  add_output_options(ent, c);
  ent->add_option("--theta", c.theta, "Cone angle in radians (default pi/2)");
  ent->add_option("--t-max", t_max, "Final time");
  ent->add_option("--samples", samples, "Evenly spaced samples in [0, t-max]")->check(CLI::PositiveNumber);

  // fit
  std::string fit_in;
  std::string fit_case;
  auto* fit = app.add_subcommand("fit", "Least-squares fit of an x,y CSV, or refit a case CSV");
  fit->add_option("--in", fit_in, "Input CSV")->required();
  fit->add_option("--case", fit_case, "Treat input as case1/case2 records")->check(CLI::IsMember({"case1", "case2"}));
  fit->add_flag("--log-first", cfg.log_first, "Average logs instead of logging averages");
  fit->add_option("--out", c.out, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  const double default_theta = std::numbers::pi / 2.0;
  try {
    if (gen->parsed()) {
      emit(c, serialize_graph(generate_random_graph(c.n, c.m, c.seed)));
    } else if (en->parsed()) {
      const Graph g = load_graph(c);
      if (count_only) {
        emit(c, std::to_string(count_independent_sets(g)) + "\n");
        return kOk;
      }
      EnumerationLimits limits;
      limits.max_vertices = max_vertices;
      const SolutionBasis basis = enumerate_independent_sets(g, limits);
      if (!median_out.empty()) {
        std::ofstream f(median_out);
        if (!f) throw InvalidArgument("cannot write '" + median_out + "'");
        write_median_csv(f, median_adjacency(basis));
      }
      if (c.format == "json") {
        json j = {{"n", basis.n()}, {"Ns", basis.size()}, {"histogram", basis.cardinality_histogram()}};
        std::vector<std::uint64_t> bits;
        for (const auto s : basis.solutions()) bits.push_back(s.bits);
        j["solutions"] = bits;
        emit(c, j.dump(2) + "\n");
      } else {
        std::ostringstream out;
        write_basis_csv(out, basis);
        emit(c, out.str());
      }
    } else if (hol->parsed() || dif->parsed()) {
      const Graph g = load_graph(c);
      const SolutionBasis basis = enumerate_independent_sets(g);
      const GaugeMatrix a(basis, median_adjacency(basis), c.theta.value_or(default_theta));
      AmplitudeVector psi = basis_state(basis.size(), 0);
      if (hol->parsed()) {
        for (int i = 0; i < loops; ++i) psi = holonomy_apply(a, psi);
      } else {
        psi = diffuse(a, psi, t);
      }
      emit(c, state_output(c, psi, basis));
    } else if (adi->parsed()) {
      const Graph g = load_graph(c);
      const auto pts = convergence_study(g, c.theta.value_or(default_theta), delta, times, steps);
      if (c.format == "json") {
        json j = json::array();
        for (const auto& p : pts) {
          j.push_back({{"T", p.total_time}, {"steps", p.steps}, {"leakage", p.leakage}, {"fidelity", p.fidelity}});
        }
        emit(c, j.dump(2) + "\n");
      } else {
        std::ostringstream out;
        write_convergence_csv(out, pts);
        emit(c, out.str());
      }
    } else if (base->parsed()) {
      const Graph g = load_graph(c);
      const ClauseSet clauses = graph_to_clauses(g);
      if (!dimacs_out.empty()) {
        std::ofstream f(dimacs_out);
        if (!f) throw InvalidArgument("cannot write '" + dimacs_out + "'");
        write_dimacs(f, clauses);
      }
      const auto plain = solve_2sat(clauses);
      const auto nontrivial = find_nontrivial_classical(g);
      const BaselineResult pair = random_pair_baseline(g, trials, c.seed);
      json j = {{"n", g.n()}, {"m", g.m()}};
      std::uint64_t plain_bits = 0;
      if (plain) {
        for (int v = 0; v < g.n(); ++v) {
          if ((*plain)[static_cast<std::size_t>(v)]) plain_bits |= std::uint64_t{1} << v;
        }
      }
      j["two_sat_solution"] = plain_bits;
      j["nontrivial"] = nontrivial ? json(nontrivial->bits) : json(nullptr);
      j["pair"] = {{"trials", pair.trials}, {"failures", pair.failures}, {"rate", pair.rate},
                   {"expected", pair.expected}, {"sigma", pair.sigma}};
      if (g.n() >= 3) {
        const BaselineResult triple = random_triple_baseline(g, trials, c.seed + 1);
        j["triple"] = {{"trials", triple.trials}, {"failures", triple.failures}, {"rate", triple.rate},
                       {"expected", triple.expected}};
      }
      if (c.format == "json") {
        emit(c, j.dump(2) + "\n");
      } else {
        std::ostringstream out;
        out << std::setprecision(12) << "quantity,value\n"
            << "two_sat_solution," << plain_bits << '\n'
            << "nontrivial," << (nontrivial ? std::to_string(nontrivial->bits) : "none") << '\n'
            << "pair_failure_rate," << pair.rate << '\n'
            << "pair_failure_expected," << pair.expected << '\n'
            << "pair_failure_sigma," << pair.sigma << '\n';
        if (j.contains("triple")) {
          out << "triple_failure_rate," << j["triple"]["rate"].get<double>() << '\n'
              << "triple_failure_expected," << j["triple"]["expected"].get<double>() << '\n';
        }
        emit(c, out.str());
      }
    } else if (case1->parsed() || case2->parsed()) {
      const bool linear = case1->parsed();
      const CaseConfig defaults = linear ? default_case1_config() : default_case2_config();
      const CLI::App* cmd = linear ? case1 : case2;
      if (cmd->count("--n-min") == 0) cfg.n_min = defaults.n_min;
      if (cmd->count("--n-max") == 0) cfg.n_max = defaults.n_max;
      cfg.theta = c.theta.value_or(defaults.theta);
      const CaseResult result = run_case(linear ? CaseKind::EdgesLinear : CaseKind::EdgesQuadratic, cfg);
      for (const auto& f : result.failures) {
        std::cerr << "instance n=" << f.n << " #" << f.instance << " seed=" << f.seed << " failed: " << f.message
                  << '\n';
      }
      if (c.format == "json") {
        emit(c, case_result_to_json(result) + "\n");
      } else {
        std::ostringstream out;
        write_case_csv(out, result.records);
        emit(c, out.str());
      }
      if (!fit_out.empty()) {
        std::ofstream f(fit_out);
        if (!f) throw InvalidArgument("cannot write '" + fit_out + "'");
        f << "{\"Ns\": " << fit_to_json(result.ns_fit) << ", \"cn\": " << fit_to_json(result.cn_fit) << "}\n";
      }
      if (!summary_out.empty()) {
        std::ofstream f(summary_out);
        if (!f) throw InvalidArgument("cannot write '" + summary_out + "'");
        write_summary_csv(f, result.summary);
      }
    } else if (ent->parsed()) {
      const Graph g = load_graph(c);
      const auto trace = entropy_trace(g, c.theta.value_or(default_theta), t_max, samples);
      if (c.format == "json") {
        json j = json::array();
        for (const auto& s : trace) j.push_back({{"t", s.t}, {"S", s.s}, {"Sbar", s.sbar}});
        emit(c, j.dump(2) + "\n");
      } else {
        std::ostringstream out;
        write_entropy_csv(out, trace);
        emit(c, out.str());
      }
    } else if (fit->parsed()) {
      std::ifstream in(fit_in);
      if (!in) throw InvalidArgument("cannot open '" + fit_in + "'");
      std::ostringstream buf;
      buf << in.rdbuf();
      if (!fit_case.empty()) {
        CaseResult r;
        r.kind = fit_case == "case1" ? CaseKind::EdgesLinear : CaseKind::EdgesQuadratic;
        r.records = parse_case_csv(buf.str());
        summarize_and_fit(r, cfg.log_first);
        emit(c, "{\"Ns\": " + fit_to_json(r.ns_fit) + ", \"cn\": " + fit_to_json(r.cn_fit) + "}\n");
      } else {
        std::vector<double> xs;
        std::vector<double> ys;
        std::istringstream lines(buf.str());
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(lines, line)) {
          ++line_no;
          if (line.empty() || line[0] == '#') continue;
          std::replace(line.begin(), line.end(), ',', ' ');
          std::istringstream ls(line);
          double x = 0.0;
          double y = 0.0;
          if (!(ls >> x >> y)) {
            if (line_no == 1) continue;  // header
            throw ParseError(line_no, "expected two numbers");
          }
          xs.push_back(x);
          ys.push_back(y);
        }
        emit(c, fit_to_json(fit_linear(xs, ys)) + "\n");
      }
    }
  } catch (const CapacityError& e) {
    std::cerr << "capacity exceeded: " << e.what() << '\n';
    return kCapacity;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}
