#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "clusterlab/catalog.hpp"
#include "clusterlab/counterexamples.hpp"
#include "clusterlab/explorer.hpp"
#include "clusterlab/rank2.hpp"
#include "clusterlab/seed.hpp"

using namespace clusterlab;

namespace {

constexpr int kUsage = 1;
constexpr int kViolation = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string matrix_file;
  std::string preset;
  std::string seq;
  std::size_t max_vertices = 10000;
  std::size_t depth = 0;
  std::string format;
  std::uint64_t rng_seed = 1;
  unsigned threads = 1;
  std::string out;

  long b = 1, c = 1;
  std::string check = "all";
  long lo = -12, hi = 20;
  std::size_t trials = 0;

  long alpha = 1, beta = 1, gamma = 3;

  std::size_t rank = 4;
  long bound = 3;
  std::size_t frozen = 2;
  std::uint64_t budget = 10'000'000;
  std::string reproducers;
};

ExchangeMatrix load_matrix(const Options& o) {
  if (!o.matrix_file.empty() && !o.preset.empty()) throw UsageError("--matrix and --preset are exclusive");
  if (!o.preset.empty()) {
    if (o.preset == "a2") return rank2_matrix(1, 1);
    if (o.preset == "brick-wall") return brick_wall_matrix();
    if (o.preset == "gr25") return grassmannian_2_5_matrix();
    if (o.preset == "rank2") return rank2_matrix(o.b, o.c);
    throw UsageError("unknown preset " + o.preset);
  }
  if (o.matrix_file.empty()) throw UsageError("--matrix FILE or --preset NAME is required");
  std::ifstream in(o.matrix_file);
  if (!in) throw UsageError("cannot read " + o.matrix_file);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(o.matrix_file + ": " + e.what());
  }
  // Either {"n": .., "frozen": .., "rows": ..} or a bare array of rows.
  if (j.is_array()) {
    const std::size_t n = j.empty() ? 0 : j[0].size();
    if (j.size() < n) throw UsageError("matrix needs at least as many rows as columns");
    return matrix_from_json({{"n", n}, {"frozen", j.size() - n}, {"rows", j}});
  }
  return matrix_from_json(j);
}

std::vector<std::size_t> parse_sequence(const std::string& text, std::size_t n) {
  std::vector<std::size_t> ks;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    long k = 0;
    try {
      k = std::stol(item, &pos);
    } catch (const std::exception&) {
      throw UsageError("bad sequence entry '" + item + "'");
    }
    if (pos != item.size() || k < 1 || static_cast<std::size_t>(k) > n)
      throw UsageError("sequence entries must lie in 1.." + std::to_string(n));
    ks.push_back(static_cast<std::size_t>(k - 1));
  }
  return ks;
}

std::string denominator_string(const DenominatorVector& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw UsageError("cannot write " + o.out);
  f << text;
}

std::string pick_format(const Options& o, const std::string& fallback, std::initializer_list<const char*> allowed) {
  const std::string f = o.format.empty() ? fallback : o.format;
  for (const char* a : allowed)
    if (f == a) return f;
  throw UsageError("unsupported --format " + f);
}

int cmd_mutate(const Options& o) {
  const auto b = load_matrix(o);
  const auto ks = parse_sequence(o.seq, b.rank());
  const auto s = apply_sequence(initial_seed(b), ks);
  const auto names = s.variable_names();
  if (pick_format(o, "table", {"table", "json"}) == "json") {
    auto j = to_json(s);
    nlohmann::json dens = nlohmann::json::array();
    for (const auto& x : s.cluster) dens.push_back(denominator_vector(x, s.rank()));
    j["denominators"] = dens;
    emit(o, j.dump(2) + "\n");
    return 0;
  }
  std::string text = "matrix " + s.matrix.to_string() + "\n";
  for (std::size_t i = 0; i < s.rank(); ++i)
    text += "x" + std::to_string(i + 1) + "' = " + to_string(s.cluster[i], names) + "  denominator " +
            denominator_string(denominator_vector(s.cluster[i], s.rank())) + "\n";
  emit(o, text);
  return 0;
}

int cmd_explore(const Options& o) {
  const auto g = explore(load_matrix(o), {o.max_vertices, o.depth == 0 ? 64 : o.depth, o.threads});
  const auto f = pick_format(o, "dot", {"dot", "json", "table"});
  if (f == "dot") emit(o, export_dot(g));
  if (f == "json") emit(o, export_json(g));
  if (f == "table") {
    std::ostringstream t;
    t << "vertices\t" << g.vertices.size() << "\nedges\t" << g.edges.size() << "\nstatus\t"
      << (g.complete ? "complete" : "truncated") << "\nboundary\t" << g.boundary_vertices().size()
      << "\ncluster_variables\t" << g.cluster_variables().size() << "\nanomalies\t" << g.anomalies.size() << "\n";
    emit(o, t.str());
  }
  std::cerr << (g.complete ? "complete" : "truncated") << ": " << g.vertices.size() << " vertices, " << g.edges.size()
            << " edges\n";
  return g.anomalies.empty() ? 0 : kViolation;
}

int cmd_rank2(const Options& o) {
  const auto f = pick_format(o, "table", {"table", "json"});
  const std::size_t trials = o.trials == 0 ? 100 : o.trials;
  bool ok = true;
  nlohmann::json j;
  std::string text;
  const bool all = o.check == "all";
  if (!all && o.check != "denominators" && o.check != "periodicity" && o.check != "coefficients")
    throw UsageError("--check must be denominators, periodicity, coefficients or all");
  if (all || o.check == "denominators") {
    const auto r = verify_denominator_theorem(o.b, o.c, o.lo, o.hi);
    ok = ok && r.ok();
    j["denominators"] = to_json(r);
    text += to_table(r) + "denominators " + (r.ok() ? "agree" : "DISAGREE") + "\n";
  }
  if ((all && coxeter_number(o.b, o.c)) || o.check == "periodicity") {
    const auto r = verify_periodicity(o.b, o.c, trials, o.rng_seed);
    ok = ok && r.ok();
    j["periodicity"] = {{"trials", r.trials},
                        {"failures", r.failures},
                        {"engine_periodic", r.engine_periodic},
                        {"period", r.period ? nlohmann::json(*r.period) : nlohmann::json()},
                        {"ok", r.ok()}};
    text += "periodicity " + std::string(r.ok() ? "ok" : "FAILED") + " period " +
            (r.period ? std::to_string(*r.period) : "none") + " failures " + std::to_string(r.failures) + "\n";
  }
  if ((all && coxeter_number(o.b, o.c)) || o.check == "coefficients") {
    const auto r = verify_coefficient_identities(o.b, o.c, trials, o.rng_seed);
    ok = ok && r.ok();
    j["coefficients"] = {{"rational_checks", r.rational_checks},
                         {"rational_failures", r.rational_failures},
                         {"tropical_checks", r.tropical_checks},
                         {"tropical_failures", r.tropical_failures},
                         {"ok", r.ok()}};
    text += "coefficient identities " + std::string(r.ok() ? "ok" : "FAILED") + "\n";
  }
  emit(o, f == "json" ? j.dump(2) + "\n" : text);
  return ok ? 0 : kViolation;
}

int cmd_fuzz(const Options& o) {
  FuzzConfig config;
  config.trials = o.trials == 0 ? 200 : o.trials;
  config.max_rank = o.rank;
  config.bound = o.bound;
  config.max_frozen = o.frozen;
  config.max_length = o.depth == 0 ? 10 : o.depth;
  config.rng_seed = o.rng_seed;
  config.threads = o.threads;
  config.work_budget = o.budget;
  config.reproducer_dir = o.reproducers;
  pick_format(o, "json", {"json"});
  const auto r = laurent_fuzz(config);
  emit(o, to_json(r).dump(2) + "\n");
  std::cerr << r.steps << " steps, " << r.laurent_violations << " Laurent violations, " << r.exchange_mismatches
            << " exchange mismatches, " << r.exhausted << " exhausted\n";
  return r.ok() ? 0 : kViolation;
}

int cmd_counterexample(const Options& o) {
  CyclicalFuzzConfig config;
  config.alpha = o.alpha;
  config.beta = o.beta;
  config.gamma = o.gamma;
  config.trials = o.trials == 0 ? 500 : o.trials;
  config.depth = o.depth == 0 ? 12 : o.depth;
  config.rng_seed = o.rng_seed;
  config.threads = o.threads;
  pick_format(o, "json", {"json"});
  const auto r = fuzz_cyclical(config);
  auto j = to_json(r);
  j["bias"] = to_json(bias_profile(b_family(o.alpha, o.beta, o.gamma)));
  emit(o, j.dump(2) + "\n");
  return r.ok() ? 0 : kViolation;
}

int cmd_wall(const Options& o) {
  const auto r = brick_wall_regions({o.max_vertices, o.depth == 0 ? 5 : o.depth, o.threads});
  emit(o, pick_format(o, "table", {"table", "json"}) == "json" ? to_json(r).dump(2) + "\n" : to_table(r));
  const bool found = std::all_of(r.regions.begin(), r.regions.end(), [](const auto& w) { return w.in_graph; });
  if (!found) std::cerr << "some regions were not reached; increase --depth or --max-vertices\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact cluster algebra computations"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format: dot, json or table");
    sub->add_option("--out", o.out, "Write output to FILE");
    sub->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  };
  auto matrix = [&](CLI::App* sub) {
    sub->add_option("--matrix", o.matrix_file, "Matrix JSON file")->check(CLI::ExistingFile);
    sub->add_option("--preset", o.preset, "a2, brick-wall, gr25 or rank2 (with --b, --c)");
    sub->add_option("--b", o.b);
    sub->add_option("--c", o.c);
  };

  auto* mutate_cmd = app.add_subcommand("mutate", "Apply a mutation sequence to the initial seed");
  matrix(mutate_cmd);
  common(mutate_cmd);
  mutate_cmd->add_option("--seq", o.seq, "1-based indices k1,k2,...");

  auto* explore_cmd = app.add_subcommand("explore", "Enumerate the exchange graph");
  matrix(explore_cmd);
  common(explore_cmd);
  explore_cmd->add_option("--max-vertices", o.max_vertices)->check(CLI::PositiveNumber);
  explore_cmd->add_option("--depth", o.depth, "BFS depth bound");

  auto* rank2_cmd = app.add_subcommand("rank2", "Rank-2 denominators, periodicity and coefficients");
  common(rank2_cmd);
  rank2_cmd->add_option("--b", o.b)->required();
  rank2_cmd->add_option("--c", o.c)->required();
  rank2_cmd->add_option("--check", o.check, "denominators, periodicity, coefficients or all");
  rank2_cmd->add_option("--lo", o.lo, "First index of the denominator window");
  rank2_cmd->add_option("--hi", o.hi, "Last index of the denominator window");
  rank2_cmd->add_option("--trials", o.trials, "Random points");
  rank2_cmd->add_option("--rng-seed", o.rng_seed);

  auto* fuzz_cmd = app.add_subcommand("fuzz", "Random Laurent phenomenon checks");
  common(fuzz_cmd);
  fuzz_cmd->add_option("--rank", o.rank)->check(CLI::Range(1, 8));
  fuzz_cmd->add_option("--trials", o.trials);
  fuzz_cmd->add_option("--depth", o.depth, "Maximum sequence length");
  fuzz_cmd->add_option("--bound", o.bound, "Entry bound")->check(CLI::Range(0, 100));
  fuzz_cmd->add_option("--frozen", o.frozen, "Maximum frozen rows");
  fuzz_cmd->add_option("--budget", o.budget, "Work budget per trial (0 = unlimited)");
  fuzz_cmd->add_option("--reproducers", o.reproducers, "Directory for positivity reproducers");
  fuzz_cmd->add_option("--rng-seed", o.rng_seed);

  auto* cex_cmd = app.add_subcommand("counterexample", "Fuzz the non-skew-symmetrizable rank-3 family");
  common(cex_cmd);
  cex_cmd->add_option("--alpha", o.alpha);
  cex_cmd->add_option("--beta", o.beta);
  cex_cmd->add_option("--gamma", o.gamma);
  cex_cmd->add_option("--trials", o.trials);
  cex_cmd->add_option("--depth", o.depth);
  cex_cmd->add_option("--rng-seed", o.rng_seed);

  auto* wall_cmd = app.add_subcommand("wall", "Brick wall region denominators");
  common(wall_cmd);
  wall_cmd->add_option("--depth", o.depth, "BFS depth bound");
  wall_cmd->add_option("--max-vertices", o.max_vertices)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*mutate_cmd) return cmd_mutate(o);
    if (*explore_cmd) return cmd_explore(o);
    if (*rank2_cmd) return cmd_rank2(o);
    if (*fuzz_cmd) return cmd_fuzz(o);
    if (*cex_cmd) return cmd_counterexample(o);
    if (*wall_cmd) return cmd_wall(o);
  } catch (const LaurentViolation& e) {
    std::cerr << "Laurent violation: " << e.what() << "\n" << e.dump().dump(2) << "\n";
    return kViolation;
  } catch (const RegularityViolation& e) {
    std::cerr << "regularity violation: " << e.what() << "\n";
    return kViolation;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
