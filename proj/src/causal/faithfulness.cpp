#include "opthy/causal/faithfulness.hpp"

#include "opthy/errors.hpp"


namespace opthy {

std::string to_string(Faithfulness f) { return f == Faithfulness::Faithful ? "Faithful" : "FineTuned"; }

namespace {

void check_alignment(const Dag& dag, const VariableSpace& space) {
  if (dag.size() != space.size()) throw ValidationError("DAG and space have different variables");
  for (std::size_t i = 0; i < dag.size(); ++i) {
    if (dag.nodes()[i] != space.at(i).name) throw ValidationError("DAG node order differs from the space");
  }
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(std::uint64_t{trial} >> 32)};
  return std::mt19937_64(seq);
}

// Failure flags of one trial, one per reference statement.
std::vector<char> run_trial(const Dag& dag, const VariableSpace& space, const std::vector<CiStatement>& refs,
                            std::uint64_t seed, std::size_t trial, double tolerance) {
  auto rng = trial_rng(seed, trial);
  const auto joint = sample_factorization(dag, space, rng);
  std::vector<char> failed(refs.size(), 0);
  for (std::size_t k = 0; k < refs.size(); ++k) failed[k] = check_ci(joint, refs[k], tolerance) ? 0 : 1;
  return failed;
}

FaithfulnessReport summarize(const std::vector<CiStatement>& refs, const std::vector<std::vector<char>>& flags,
                             std::size_t trials, std::uint64_t seed, double tolerance) {
  FaithfulnessReport r;
  r.seed = seed;
  r.trials = trials;
  r.tolerance = tolerance;
  for (std::size_t k = 0; k < refs.size(); ++k) {
    CiFailureRate f{refs[k], 0, 0.0};
    for (const auto& trial : flags) f.failures += static_cast<std::size_t>(trial[k]);
    f.rate = static_cast<double>(f.failures) / static_cast<double>(trials);
    if (f.rate > kFineTuningThreshold) r.verdict = Faithfulness::FineTuned;
    r.rates.push_back(std::move(f));
  }
  return r;
}

void validate(const Dag& dag, const VariableSpace& space, const CiSet& reference, std::size_t trials) {
  if (trials == 0) throw ValidationError("faithfulness probe needs at least one trial");
  check_alignment(dag, space);
  for (const auto& s : reference) {
    (void)space.index_of(s.lhs);
    for (const auto& v : s.rhs) (void)space.index_of(v);
    for (const auto& v : s.given) (void)space.index_of(v);
  }
}

}  // namespace

RealJoint sample_factorization(const Dag& dag, const VariableSpace& space, std::mt19937_64& rng) {
  check_alignment(dag, space);
  const std::size_t n = space.size();
  std::exponential_distribution<double> expo(1.0);
  // cpt[v][parent configuration * |v| + value]
  std::vector<std::vector<double>> cpt(n);
  std::vector<std::vector<std::size_t>> parent_list(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t configs = 1;
    const auto par = dag.parents(v);
    for (std::size_t u = 0; u < n; ++u) {
      if (par >> u & 1u) {
        parent_list[v].push_back(u);
        configs *= space.at(u).values.size();
      }
    }
    const std::size_t k = space.at(v).values.size();
    cpt[v].resize(configs * k);
    for (std::size_t c = 0; c < configs; ++c) {
      // Normalized exponentials are a uniform draw from the simplex.
      double total = 0.0;
      for (std::size_t i = 0; i < k; ++i) total += cpt[v][c * k + i] = expo(rng);
      for (std::size_t i = 0; i < k; ++i) cpt[v][c * k + i] /= total;
    }
  }
  std::vector<double> mass(space.cell_count());
  for (std::size_t cell = 0; cell < mass.size(); ++cell) {
    const auto a = space.assignment(cell);
    double m = 1.0;
    for (std::size_t v = 0; v < n; ++v) {
      std::size_t c = 0;
      for (auto u : parent_list[v]) c = c * space.at(u).values.size() + a[u];
      m *= cpt[v][c * space.at(v).values.size() + a[v]];
    }
    mass[cell] = m;
  }
  return RealJoint(space, std::move(mass));
}

FaithfulnessReport faithfulness_probe_serial(const Dag& dag, const VariableSpace& space, const CiSet& reference,
                                             std::size_t trials, std::uint64_t seed, double tolerance) {
  validate(dag, space, reference, trials);
  const std::vector<CiStatement> refs(reference.begin(), reference.end());
  std::vector<std::vector<char>> flags(trials);
  for (std::size_t t = 0; t < trials; ++t) flags[t] = run_trial(dag, space, refs, seed, t, tolerance);
  return summarize(refs, flags, trials, seed, tolerance);
}

FaithfulnessReport faithfulness_probe(const Dag& dag, const VariableSpace& space, const CiSet& reference,
                                      std::size_t trials, std::uint64_t seed, double tolerance) {
  validate(dag, space, reference, trials);
  const std::vector<CiStatement> refs(reference.begin(), reference.end());
  std::vector<std::vector<char>> flags(trials);
  const auto total = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < total; ++t) {
    flags[static_cast<std::size_t>(t)] = run_trial(dag, space, refs, seed, static_cast<std::size_t>(t), tolerance);
  }
  return summarize(refs, flags, trials, seed, tolerance);
}

}  // namespace opthy
