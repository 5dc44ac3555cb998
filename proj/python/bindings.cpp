#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "clusterlab/catalog.hpp"
#include "clusterlab/counterexamples.hpp"
#include "clusterlab/explorer.hpp"
#include "clusterlab/rank2.hpp"
#include "clusterlab/seed.hpp"

namespace py = pybind11;
using namespace clusterlab;
using nlohmann::json;

namespace {

// Matrices cross the boundary as {"n", "frozen", "rows"} JSON text.
ExchangeMatrix parse_matrix(const std::string& text) { return matrix_from_json(json::parse(text)); }

std::string seed_json(const Seed& s) {
  auto j = to_json(s);
  const auto names = s.variable_names();
  json expansions = json::array();
  json dens = json::array();
  for (const auto& x : s.cluster) {
    expansions.push_back(to_string(x, names));
    dens.push_back(denominator_vector(x, s.rank()));
  }
  j["expansions"] = expansions;
  j["denominators"] = dens;
  return j.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact cluster algebra computations";

  py::register_exception<LaurentViolation>(m, "LaurentViolation");
  py::register_exception<RegularityViolation>(m, "RegularityViolation");

  m.def("mutate_matrix", [](const std::string& b, std::size_t k) { return to_json(mutate(parse_matrix(b), k)).dump(); });
  m.def("skew_symmetrizer", [](const std::string& b) -> std::optional<std::vector<std::string>> {
    const auto d = find_skew_symmetrizer(parse_matrix(b));
    if (!d) return std::nullopt;
    std::vector<std::string> out;
    for (const auto& v : d->d) out.push_back(v.get_str());
    return out;
  });
  m.def("apply_sequence", [](const std::string& b, const std::vector<std::size_t>& ks) {
    return seed_json(apply_sequence(initial_seed(parse_matrix(b)), ks));
  });
  m.def(
      "explore",
      [](const std::string& b, std::size_t max_vertices, std::size_t max_depth, unsigned threads, bool dot) {
        py::gil_scoped_release release;
        const auto g = explore(parse_matrix(b), {max_vertices, max_depth, threads});
        return dot ? export_dot(g) : export_json(g);
      },
      py::arg("matrix"), py::arg("max_vertices") = 10000, py::arg("max_depth") = 64, py::arg("threads") = 1,
      py::arg("dot") = false);
  m.def("coxeter_number", &coxeter_number);
  m.def("denominator_report", [](long b, long c, long lo, long hi) {
    return to_json(verify_denominator_theorem(b, c, lo, hi)).dump();
  });
  m.def("periodicity", [](long b, long c, std::size_t trials, std::uint64_t seed) {
    const auto r = verify_periodicity(b, c, trials, seed);
    return json{{"trials", r.trials},
                {"failures", r.failures},
                {"engine_periodic", r.engine_periodic},
                {"period", r.period ? json(*r.period) : json()},
                {"ok", r.ok()}}
        .dump();
  });
  m.def("r_from_q", [](long b, long c, long k) {
    std::vector<long> out;
    for (const auto& v : r_from_q(b, c, k)) out.push_back(v.get_si());
    return out;
  });
  m.def("b_family", [](long a, long b, long g) { return to_json(b_family(a, b, g)).dump(); });
  m.def("is_cyclical", [](const std::string& b) { return is_cyclical(parse_matrix(b)); });
  m.def("bias_profile", [](const std::string& b) { return to_json(bias_profile(parse_matrix(b))).dump(); });
  m.def("fuzz_cyclical", [](long a, long b, long g, std::size_t trials, std::size_t depth, std::uint64_t seed, unsigned threads) {
    py::gil_scoped_release release;
    CyclicalFuzzConfig c{a, b, g, trials, depth, seed, threads, true};
    return to_json(fuzz_cyclical(c)).dump();
  });
  m.def("laurent_fuzz", [](std::size_t trials, std::size_t max_rank, long bound, std::size_t max_frozen,
                           std::size_t max_length, std::uint64_t seed, std::uint64_t budget, unsigned threads) {
    py::gil_scoped_release release;
    FuzzConfig c;
    c.trials = trials;
    c.max_rank = max_rank;
    c.bound = bound;
    c.max_frozen = max_frozen;
    c.max_length = max_length;
    c.rng_seed = seed;
    c.work_budget = budget;
    c.threads = threads;
    return to_json(laurent_fuzz(c)).dump();
  });
  m.def("brick_wall", [](std::size_t depth) { return to_json(brick_wall_regions({10000, depth, 1})).dump(); });
}
