#include "opthy/causal/discovery.hpp"

#include "opthy/errors.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include <omp.h>

namespace opthy {

namespace {

struct Problem {
  std::vector<std::string> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::uint64_t codes = 1;
  StatementUniverse universe;
  std::vector<bool> observed;
  std::vector<bool> required;
};

Problem setup(const CiSet& observed, const CiSet& required, const VariableSpace& space) {
  if (space.size() > kMaxDiscoveryVariables) {
    throw PreconditionError("DAG enumeration is limited to " + std::to_string(kMaxDiscoveryVariables) +
                            " variables, got " + std::to_string(space.size()));
  }
  for (const auto& r : required) {
    if (!observed.count(r)) throw PreconditionError("required statement " + r.str() + " is not observed");
  }
  Problem p{{}, {}, 1, StatementUniverse(space), {}, {}};
  for (const auto& v : space.variables()) p.nodes.push_back(v.name);
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (std::size_t j = i + 1; j < space.size(); ++j) {
      p.pairs.emplace_back(i, j);
      p.codes *= 3;
    }
  }
  p.observed = p.universe.bits(observed);
  p.required = p.universe.bits(required);
  return p;
}

// Pair k is absent, i->j or j->i according to base-3 digit k of the code.
std::uint64_t decode(const Problem& p, std::uint64_t code) {
  std::uint64_t mask = 0;
  for (const auto& [i, j] : p.pairs) {
    const auto d = code % 3;
    code /= 3;
    if (d == 1) mask |= std::uint64_t{1} << (i * Dag::kMaxNodes + j);
    if (d == 2) mask |= std::uint64_t{1} << (j * Dag::kMaxNodes + i);
  }
  return mask;
}

bool consistent(const Problem& p, std::uint64_t mask) {
  if (!is_acyclic(p.nodes.size(), mask)) return false;
  const Dag dag(p.nodes, mask);
  const std::size_t n = p.nodes.size();
  std::vector<std::int64_t> memo(n << n, -1);
  for (std::size_t i = 0; i < p.universe.size(); ++i) {
    const auto& e = p.universe.entry(i);
    auto& slot = memo[(e.lhs << n) | e.given];
    if (slot < 0) slot = d_connected(dag, e.lhs, e.given);
    const bool implied = (static_cast<std::uint32_t>(slot) & e.rhs) == 0;
    if (implied && !p.observed[i]) return false;
    if (!implied && p.required[i]) return false;
  }
  return true;
}

void order(std::vector<std::uint64_t>& masks) {
  std::sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
    const int ca = std::popcount(a), cb = std::popcount(b);
    return ca != cb ? ca < cb : a < b;
  });
}

std::vector<Dag> to_dags(const Problem& p, const std::vector<std::uint64_t>& masks) {
  std::vector<Dag> out;
  out.reserve(masks.size());
  for (auto m : masks) out.emplace_back(p.nodes, m);
  return out;
}

bool has_consistent_proper_subset(std::uint64_t mask, const std::unordered_set<std::uint64_t>& pool) {
  // Walk every proper sub-mask of the edge set.
  for (std::uint64_t sub = (mask - 1) & mask;; sub = (sub - 1) & mask) {
    if (pool.count(sub)) return true;
    if (sub == 0) return false;
  }
}

std::vector<std::uint64_t> consistent_serial(const Problem& p) {
  std::vector<std::uint64_t> found;
  for (std::uint64_t code = 0; code < p.codes; ++code) {
    const auto mask = decode(p, code);
    if (consistent(p, mask)) found.push_back(mask);
  }
  order(found);
  return found;
}

std::vector<std::uint64_t> consistent_parallel(const Problem& p) {
  std::vector<std::vector<std::uint64_t>> per_thread(static_cast<std::size_t>(omp_get_max_threads()));
  const auto total = static_cast<std::int64_t>(p.codes);
#pragma omp parallel
  {
    auto& local = per_thread[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 256)
    for (std::int64_t code = 0; code < total; ++code) {
      const auto mask = decode(p, static_cast<std::uint64_t>(code));
      if (consistent(p, mask)) local.push_back(mask);
    }
  }
  std::vector<std::uint64_t> found;
  for (auto& v : per_thread) found.insert(found.end(), v.begin(), v.end());
  order(found);
  return found;
}

std::vector<std::uint64_t> minimal_of(const std::vector<std::uint64_t>& found) {
  const std::unordered_set<std::uint64_t> pool(found.begin(), found.end());
  std::vector<std::uint64_t> out;
  for (auto m : found) {
    if (m == 0 || !has_consistent_proper_subset(m, pool)) out.push_back(m);
  }
  return out;
}

}  // namespace

std::vector<Dag> consistent_dags(const CiSet& observed, const CiSet& required, const VariableSpace& space) {
  const auto p = setup(observed, required, space);
  return to_dags(p, consistent_parallel(p));
}

std::vector<Dag> consistent_dags_serial(const CiSet& observed, const CiSet& required, const VariableSpace& space) {
  const auto p = setup(observed, required, space);
  return to_dags(p, consistent_serial(p));
}

std::vector<Dag> minimal_dags(const CiSet& observed, const CiSet& required, const VariableSpace& space) {
  const auto p = setup(observed, required, space);
  return to_dags(p, minimal_of(consistent_parallel(p)));
}

std::vector<Dag> minimal_dags_serial(const CiSet& observed, const CiSet& required, const VariableSpace& space) {
  const auto p = setup(observed, required, space);
  return to_dags(p, minimal_of(consistent_serial(p)));
}

std::size_t count_dags(std::size_t n) {
  if (n > kMaxDiscoveryVariables) throw PreconditionError("too many nodes to count");
  std::size_t pairs = n * (n - (n ? 1 : 0)) / 2;
  std::uint64_t codes = 1;
  for (std::size_t k = 0; k < pairs; ++k) codes *= 3;
  std::size_t count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pr;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pr.emplace_back(i, j);
  }
  for (std::uint64_t code = 0; code < codes; ++code) {
    std::uint64_t mask = 0, c = code;
    for (const auto& [i, j] : pr) {
      const auto d = c % 3;
      c /= 3;
      if (d == 1) mask |= std::uint64_t{1} << (i * Dag::kMaxNodes + j);
      if (d == 2) mask |= std::uint64_t{1} << (j * Dag::kMaxNodes + i);
    }
    if (is_acyclic(n, mask)) ++count;
  }
  return count;
}

}  // namespace opthy
