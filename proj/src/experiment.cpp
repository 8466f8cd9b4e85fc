#include "adiamix/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>
#include <variant>

#include <json.hpp>

#include "adiamix/errors.hpp"
#include "adiamix/rng.hpp"

namespace adiamix {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// exp(i t A) applied repeatedly from a fixed start vector. Dense matrices keep
// one eigendecomposition; large ones step forward with Chebyshev.
class Evolver {
 public:
  Evolver(const GaugeMatrix& a, AmplitudeVector psi0, const PropagationOptions& options)
      : a_(a), psi0_(std::move(psi0)), current_(psi0_), options_(options) {
    const bool dense = options.method == PropagationMethod::Dense ||
                       (options.method == PropagationMethod::Automatic && a.dim() <= options.dense_limit);
    if (dense) spectral_ = std::make_unique<SpectralPropagator>(a);
  }

  /// State at time t; t must not decrease between calls.
  AmplitudeVector at(double t) {
    if (t == 0.0) return psi0_;
    if (spectral_) return spectral_->apply(psi0_, t);
    if (t > current_t_) {
      current_ = diffuse(a_, current_, t - current_t_, chebyshev_options());
      current_t_ = t;
    }
    return current_;
  }

 private:
  PropagationOptions chebyshev_options() const {
    PropagationOptions o = options_;
    o.method = PropagationMethod::Chebyshev;
    return o;
  }

  const GaugeMatrix& a_;
  AmplitudeVector psi0_;
  AmplitudeVector current_;
  double current_t_ = 0.0;
  PropagationOptions options_;
  std::unique_ptr<SpectralPropagator> spectral_;
};

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& v) {
  MeanSe r;
  if (v.empty()) return r;
  for (double x : v) r.mean += x;
  r.mean /= static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - r.mean) * (x - r.mean);
    r.se = std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
  }
  return r;
}

template <typename Job>
void parallel_for(std::size_t count, unsigned threads, Job&& job) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) job(i);
    });
  }
  for (auto& th : pool) th.join();
}

nlohmann::json fit_json(const std::optional<FitResult>& fit) {
  if (!fit) return nullptr;
  return {{"slope", fit->slope},
          {"intercept", fit->intercept},
          {"stderr", fit->slope_stderr},
          {"intercept_stderr", fit->intercept_stderr},
          {"residual_variance", fit->residual_variance},
          {"points", fit->points}};
}

}  // namespace

FitResult fit_linear(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw InvalidArgument("fit_linear: xs and ys differ in length");
  if (xs.size() < 2) throw InvalidArgument("fit_linear: need at least two points");
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw InvalidArgument("fit_linear: all x values are equal");

  FitResult r;
  r.points = xs.size();
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (r.slope * xs[i] + r.intercept);
    rss += e * e;
  }
  if (xs.size() > 2) {
    r.residual_variance = rss / (n - 2.0);
    r.slope_stderr = std::sqrt(r.residual_variance / sxx);
    r.intercept_stderr = std::sqrt(r.residual_variance * (1.0 / n + mx * mx / sxx));
  }
  return r;
}

double predicted_max_independent_size(double n) {
  if (!(n > 2.0)) throw InvalidArgument("predicted_max_independent_size: n must exceed 2");
  return 4.0 * (std::log(n / (4.0 * std::log(n / 2.0))) + 1.0);
}

int edges_for(CaseKind kind, int n) {
  return kind == CaseKind::EdgesLinear ? n : (n * n) / 4;
}

CaseConfig default_case1_config() {
  CaseConfig c;
  c.n_min = 8;
  c.n_max = 18;
  c.theta = std::numbers::pi / 2.0;
  return c;
}

CaseConfig default_case2_config() {
  CaseConfig c;
  c.n_min = 8;
  c.n_max = 32;
  c.theta = 1.2;
  return c;
}

ExperimentRecord run_instance(CaseKind kind, int n, int instance, const CaseConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentRecord r;
  r.n = n;
  r.m = edges_for(kind, n);
  r.instance = instance;
  r.seed = derive_seed(config.seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(instance));
  r.theta = config.theta;

  const Graph g = generate_random_graph(n, r.m, r.seed);
  const SolutionBasis basis = enumerate_independent_sets(g, config.limits);
  const GaugeMatrix gauge(basis, median_adjacency(basis), config.theta);
  Evolver evolver(gauge, basis_state(basis.size(), 0), config.propagation);

  const AmplitudeVector one_loop = evolver.at(kTwoPi);
  const TrivialProbability tp = trivial_probability(one_loop, basis);
  r.num_solutions = basis.size();
  r.d_n = tp.d_n;
  r.c_n = tp.c_n;
  r.sbar[0] = normalized_entropy(one_loop, basis.size());
  r.sbar[1] = normalized_entropy(evolver.at(2.0 * kTwoPi), basis.size());
  r.sbar[2] = normalized_entropy(evolver.at(3.0 * kTwoPi), basis.size());
  r.max_cardinality = basis.max_cardinality();
  r.predicted_max_cardinality = kind == CaseKind::EdgesQuadratic
                                    ? predicted_max_independent_size(n)
                                    : std::numeric_limits<double>::quiet_NaN();
  if (config.record_walltime) {
    r.walltime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return r;
}

CaseResult run_case(CaseKind kind, const CaseConfig& config) {
  if (config.instances < 1) throw InvalidArgument("instances must be >= 1");
  if (config.n_min > config.n_max) throw InvalidArgument("n-min exceeds n-max");
  if (!(config.theta >= 0.0 && config.theta <= std::numbers::pi)) throw InvalidArgument("theta outside [0, pi]");
  if (kind == CaseKind::EdgesQuadratic && config.n_min < 3) {
    throw InvalidArgument("quadratic case needs n >= 3 so that ln(n/2) > 0");
  }
  if (kind == CaseKind::EdgesLinear && config.n_min < 3) {
    throw InvalidArgument("linear case needs n >= 3 so that m = n fits in n(n-1)/2");
  }

  struct Job {
    int n;
    int instance;
  };
  std::vector<Job> jobs;
  for (int n = config.n_min; n <= config.n_max; ++n) {
    for (int i = 0; i < config.instances; ++i) jobs.push_back({n, i});
  }
  std::vector<std::variant<ExperimentRecord, InstanceFailure>> out(jobs.size());
  parallel_for(jobs.size(), config.threads, [&](std::size_t j) {
    const Job job = jobs[j];
    try {
      out[j] = run_instance(kind, job.n, job.instance, config);
    } catch (const std::exception& e) {
      out[j] = InstanceFailure{job.n, job.instance,
                               derive_seed(config.seed, static_cast<std::uint64_t>(job.n),
                                           static_cast<std::uint64_t>(job.instance)),
                               e.what()};
    }
  });

  CaseResult result;
  result.kind = kind;
  for (auto& o : out) {
    if (auto* rec = std::get_if<ExperimentRecord>(&o)) {
      result.records.push_back(*rec);
    } else {
      result.failures.push_back(std::get<InstanceFailure>(o));
    }
  }
  summarize_and_fit(result, config.log_first);
  return result;
}

CaseResult run_case1(const CaseConfig& config) { return run_case(CaseKind::EdgesLinear, config); }
CaseResult run_case2(const CaseConfig& config) { return run_case(CaseKind::EdgesQuadratic, config); }

void summarize_and_fit(CaseResult& result, bool log_first) {
  const bool linear = result.kind == CaseKind::EdgesLinear;
  auto log_fn = [linear](double v) { return linear ? std::log2(v) : std::log(v); };

  std::map<int, std::vector<const ExperimentRecord*>> by_n;
  for (const auto& r : result.records) by_n[r.n].push_back(&r);

  result.summary.clear();
  std::vector<double> x_ns;
  std::vector<double> y_ns;
  std::vector<double> x_cn;
  std::vector<double> y_cn;
  for (const auto& [n, recs] : by_n) {
    std::vector<double> ns;
    std::vector<double> log_ns;
    std::vector<double> cn;
    std::vector<double> log_cn;
    for (const auto* r : recs) {
      ns.push_back(static_cast<double>(r->num_solutions));
      log_ns.push_back(log_fn(static_cast<double>(r->num_solutions)));
      cn.push_back(r->c_n);
      log_cn.push_back(log_fn(r->c_n));
    }
    PointSummary s;
    s.n = n;
    s.count = recs.size();
    const MeanSe a = mean_se(ns);
    const MeanSe b = mean_se(log_ns);
    const MeanSe c = mean_se(cn);
    const MeanSe d = mean_se(log_cn);
    s.mean_ns = a.mean;
    s.se_ns = a.se;
    s.mean_log_ns = b.mean;
    s.se_log_ns = b.se;
    s.mean_cn = c.mean;
    s.se_cn = c.se;
    s.mean_log_cn = d.mean;
    s.se_log_cn = d.se;
    result.summary.push_back(s);

    const double nd = n;
    x_ns.push_back(linear ? nd : std::log(nd / std::log(nd / 2.0)));
    x_cn.push_back(linear ? nd : std::log(nd));
    y_ns.push_back(log_first ? s.mean_log_ns : log_fn(s.mean_ns));
    y_cn.push_back(log_first ? s.mean_log_cn : log_fn(s.mean_cn));
  }
  result.ns_fit.reset();
  result.cn_fit.reset();
  if (by_n.size() >= 3) {
    result.ns_fit = fit_linear(x_ns, y_ns);
    result.cn_fit = fit_linear(x_cn, y_cn);
  }
}

void write_case_csv(std::ostream& out, std::span<const ExperimentRecord> records) {
  out << "n,m,seed,theta,Ns,dn,cn,Sbar2pi,max_card,walltime_ms\n";
  std::ostringstream line;
  line << std::setprecision(17);
  for (const auto& r : records) {
    line.str("");
    line << r.n << ',' << r.m << ',' << r.seed << ',' << r.theta << ',' << r.num_solutions << ',' << r.d_n << ','
         << r.c_n << ',' << r.sbar[0] << ',' << r.max_cardinality << ',' << std::setprecision(6) << r.walltime_ms
         << std::setprecision(17) << '\n';
    out << line.str();
  }
}

std::vector<ExperimentRecord> parse_case_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<ExperimentRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line.rfind("n,m,seed", 0) != 0) throw ParseError(line_no, "unexpected case CSV header");
      continue;
    }
    std::vector<std::string> f;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() != 10) throw ParseError(line_no, "expected 10 fields, got " + std::to_string(f.size()));
    try {
      ExperimentRecord r;
      r.n = std::stoi(f[0]);
      r.m = std::stoi(f[1]);
      r.seed = std::stoull(f[2]);
      r.theta = std::stod(f[3]);
      r.num_solutions = static_cast<std::size_t>(std::stoull(f[4]));
      r.d_n = std::stod(f[5]);
      r.c_n = std::stod(f[6]);
      r.sbar[0] = std::stod(f[7]);
      r.max_cardinality = std::stoi(f[8]);
      r.walltime_ms = std::stod(f[9]);
      records.push_back(r);
    } catch (const std::logic_error&) {
      throw ParseError(line_no, "non-numeric field");
    }
  }
  return records;
}

void write_summary_csv(std::ostream& out, std::span<const PointSummary> summary) {
  out << "n,count,mean_Ns,se_Ns,mean_log_Ns,se_log_Ns,mean_cn,se_cn,mean_log_cn,se_log_cn\n"
      << std::setprecision(12);
  for (const auto& s : summary) {
    out << s.n << ',' << s.count << ',' << s.mean_ns << ',' << s.se_ns << ',' << s.mean_log_ns << ','
        << s.se_log_ns << ',' << s.mean_cn << ',' << s.se_cn << ',' << s.mean_log_cn << ',' << s.se_log_cn
        << '\n';
  }
}

std::string fit_to_json(const std::optional<FitResult>& fit) { return fit_json(fit).dump(); }

std::string case_result_to_json(const CaseResult& result) {
  nlohmann::json j;
  j["case"] = result.kind == CaseKind::EdgesLinear ? "case1" : "case2";
  j["records"] = nlohmann::json::array();
  for (const auto& r : result.records) {
    nlohmann::json rec = {{"n", r.n},
                          {"m", r.m},
                          {"instance", r.instance},
                          {"seed", r.seed},
                          {"theta", r.theta},
                          {"Ns", r.num_solutions},
                          {"dn", r.d_n},
                          {"cn", r.c_n},
                          {"Sbar", {r.sbar[0], r.sbar[1], r.sbar[2]}},
                          {"max_card", r.max_cardinality},
                          {"walltime_ms", r.walltime_ms}};
    if (std::isfinite(r.predicted_max_cardinality)) rec["predicted_max_card"] = r.predicted_max_cardinality;
    j["records"].push_back(rec);
  }
  j["failures"] = nlohmann::json::array();
  for (const auto& f : result.failures) {
    j["failures"].push_back({{"n", f.n}, {"instance", f.instance}, {"seed", f.seed}, {"message", f.message}});
  }
  j["summary"] = nlohmann::json::array();
  for (const auto& s : result.summary) {
    j["summary"].push_back({{"n", s.n},
                            {"count", s.count},
                            {"mean_Ns", s.mean_ns},
                            {"se_Ns", s.se_ns},
                            {"mean_log_Ns", s.mean_log_ns},
                            {"se_log_Ns", s.se_log_ns},
                            {"mean_cn", s.mean_cn},
                            {"se_cn", s.se_cn},
                            {"mean_log_cn", s.mean_log_cn},
                            {"se_log_cn", s.se_log_cn}});
  }
  j["fit_Ns"] = fit_json(result.ns_fit);
  j["fit_cn"] = fit_json(result.cn_fit);
  return j.dump(2);
}

std::vector<EntropySample> entropy_trace(const GaugeMatrix& a, double t_max, int samples,
                                         const PropagationOptions& options) {
  if (samples < 1) throw InvalidArgument("entropy_trace: samples must be >= 1");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw InvalidArgument("entropy_trace: t_max must be finite and >= 0");
  if (a.dim() < 2) throw InvalidArgument("entropy_trace: need at least two solutions");
  Evolver evolver(a, basis_state(a.dim(), 0), options);
  const double log_ns = std::log(static_cast<double>(a.dim()));
  std::vector<EntropySample> trace;
  trace.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double t = samples == 1 ? 0.0 : t_max * i / (samples - 1);
    const AmplitudeVector psi = evolver.at(t);
    EntropySample s;
    s.t = t;
    s.s = entropy(psi);
    s.sbar = s.s / log_ns;
    trace.push_back(s);
  }
  return trace;
}

std::vector<EntropySample> entropy_trace(const Graph& g, double theta, double t_max, int samples,
                                         const EnumerationLimits& limits, const PropagationOptions& options) {
  const SolutionBasis basis = enumerate_independent_sets(g, limits);
  const GaugeMatrix gauge(basis, median_adjacency(basis), theta);
  return entropy_trace(gauge, t_max, samples, options);
}

void write_entropy_csv(std::ostream& out, std::span<const EntropySample> trace) {
  out << "t,S,Sbar\n" << std::setprecision(12);
  for (const auto& s : trace) out << s.t << ',' << s.s << ',' << s.sbar << '\n';
}

}  // namespace adiamix
