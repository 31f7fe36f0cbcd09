#include "opthy/causal/ci.hpp"

#include "opthy/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace opthy {

CiStatement CiStatement::make(std::string lhs, std::vector<std::string> rhs, std::vector<std::string> given) {
  if (rhs.empty()) throw ValidationError("independence statement with empty right-hand side");
  std::sort(rhs.begin(), rhs.end());
  std::sort(given.begin(), given.end());
  if (std::adjacent_find(rhs.begin(), rhs.end()) != rhs.end() ||
      std::adjacent_find(given.begin(), given.end()) != given.end()) {
    throw ValidationError("independence statement repeats a variable");
  }
  const auto in = [](const std::vector<std::string>& v, const std::string& x) {
    return std::binary_search(v.begin(), v.end(), x);
  };
  if (in(rhs, lhs) || in(given, lhs)) throw ValidationError("'" + lhs + "' appears on both sides");
  for (const auto& r : rhs) {
    if (in(given, r)) throw ValidationError("'" + r + "' is both tested and conditioned on");
  }
  if (rhs.size() == 1 && rhs.front() < lhs) std::swap(lhs, rhs.front());
  return {std::move(lhs), std::move(rhs), std::move(given)};
}

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ",") + s;
  return out;
}

std::vector<std::string> split_set(std::string text) {
  text.erase(std::remove_if(text.begin(), text.end(), [](char c) { return c == '{' || c == '}' || c == ' '; }),
             text.end());
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

std::string CiStatement::str() const {
  std::string out = lhs + " _||_ " + (rhs.size() > 1 ? "{" + join(rhs) + "}" : join(rhs));
  if (!given.empty()) out += " | " + join(given);
  return out;
}

CiStatement CiStatement::parse(const std::string& text) {
  const auto sep = text.find("_||_");
  if (sep == std::string::npos) throw ValidationError("not an independence statement: '" + text + "'");
  auto lhs = split_set(text.substr(0, sep));
  auto rest = text.substr(sep + 4);
  std::string given;
  if (auto bar = rest.find('|'); bar != std::string::npos) {
    given = rest.substr(bar + 1);
    rest = rest.substr(0, bar);
  }
  if (lhs.size() != 1) throw ValidationError("left-hand side must be one variable: '" + text + "'");
  return make(lhs.front(), split_set(rest), split_set(given));
}

StatementUniverse::StatementUniverse(const VariableSpace& space) : space_(space) {
  const std::size_t n = space.size();
  if (n > 12) throw PreconditionError("too many variables for statement enumeration");
  std::map<CiStatement, std::size_t> seen;
  std::uint32_t pow3 = 1;
  for (std::size_t i = 1; i < n; ++i) pow3 *= 3;
  for (std::size_t lhs = 0; lhs < n; ++lhs) {
    // Each other variable is absent, tested or conditioned on.
    for (std::uint32_t code = 0; code < pow3; ++code) {
      std::uint32_t rhs = 0, given = 0, c = code;
      for (std::size_t v = 0; v < n; ++v) {
        if (v == lhs) continue;
        if (c % 3 == 1) rhs |= 1u << v;
        if (c % 3 == 2) given |= 1u << v;
        c /= 3;
      }
      if (!rhs) continue;
      auto stmt = CiStatement::make(space.at(lhs).name, space.names_of(rhs), space.names_of(given));
      if (seen.count(stmt)) continue;
      seen.emplace(stmt, entries_.size());
      entries_.push_back({space.index_of(stmt.lhs), space.mask_of(stmt.rhs), given});
      canonical_.push_back(std::move(stmt));
    }
  }
}

CiStatement StatementUniverse::statement(std::size_t i) const { return canonical_.at(i); }

std::size_t StatementUniverse::index_of(const CiStatement& s) const {
  auto it = std::find(canonical_.begin(), canonical_.end(), s);
  if (it == canonical_.end()) throw LookupError("statement " + s.str() + " is not over this space");
  return static_cast<std::size_t>(it - canonical_.begin());
}

std::vector<bool> StatementUniverse::bits(const CiSet& set) const {
  std::vector<bool> out(size(), false);
  for (const auto& s : set) out[index_of(s)] = true;
  return out;
}

CiSet StatementUniverse::statements(const std::vector<bool>& bits) const {
  CiSet out;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) out.insert(canonical_[i]);
  }
  return out;
}

namespace {

// Flat index into the marginal over `mask` for a full assignment.
std::size_t sub_index(const VariableSpace& space, const std::vector<std::size_t>& full, std::uint32_t mask) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (mask >> i & 1u) idx = idx * space.at(i).values.size() + full[i];
  }
  return idx;
}

// Compares p(l,r,g) p(g) with p(l,g) p(r,g) on every cell of l,r,g. Cells with
// p(r,g) = 0 drop out: both products vanish there.
template <class T, class Eq>
bool holds(const JointTable<T>& joint, std::size_t lhs, std::uint32_t rhs, std::uint32_t given, Eq equal) {
  const auto& space = joint.space();
  const std::uint32_t l = 1u << lhs;
  const std::uint32_t all = l | rhs | given;
  const auto p_lrg = joint.marginal(all);
  const auto p_lg = joint.marginal(l | given);
  const auto p_rg = joint.marginal(rhs | given);
  const auto p_g = joint.marginal(given);
  std::vector<std::size_t> full(space.size(), 0);
  for (std::size_t cell = 0; cell < p_lrg.size(); ++cell) {
    // Decode the cell of `all` into the full assignment slots.
    std::size_t rem = cell;
    for (std::size_t i = space.size(); i-- > 0;) {
      if (all >> i & 1u) {
        full[i] = rem % space.at(i).values.size();
        rem /= space.at(i).values.size();
      }
    }
    const T& rg = p_rg[sub_index(space, full, rhs | given)];
    const T& g = p_g[sub_index(space, full, given)];
    if (!equal(p_lrg[cell] * g, p_lg[sub_index(space, full, l | given)] * rg, rg * g)) return false;
  }
  return true;
}

}  // namespace

bool check_ci(const ExactJoint& joint, const CiStatement& stmt) {
  const auto& s = joint.space();
  const auto c = CiStatement::make(stmt.lhs, stmt.rhs, stmt.given);
  return holds(joint, s.index_of(c.lhs), s.mask_of(c.rhs), s.mask_of(c.given),
               [](const Rational& a, const Rational& b, const Rational&) { return a == b; });
}

bool check_ci(const RealJoint& joint, const CiStatement& stmt, double tolerance) {
  const auto& s = joint.space();
  const auto c = CiStatement::make(stmt.lhs, stmt.rhs, stmt.given);
  return holds(joint, s.index_of(c.lhs), s.mask_of(c.rhs), s.mask_of(c.given),
               [tolerance](double a, double b, double scale) {
                 if (scale <= 0.0) return true;
                 return std::abs(a - b) <= tolerance * scale;
               });
}

CiSet ci_report(const ExactJoint& joint) {
  const StatementUniverse u(joint.space());
  CiSet out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto& e = u.entry(i);
    if (holds(joint, e.lhs, e.rhs, e.given, [](const Rational& a, const Rational& b, const Rational&) { return a == b; })) {
      out.insert(u.statement(i));
    }
  }
  return out;
}

CiSet independence_family(const VariableSpace& space, const std::vector<std::string>& names) {
  const std::uint32_t allowed = space.mask_of(names);
  const StatementUniverse u(space);
  CiSet out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto& e = u.entry(i);
    const std::uint32_t used = (1u << e.lhs) | e.rhs | e.given;
    if ((used & ~allowed) == 0) out.insert(u.statement(i));
  }
  return out;
}

}  // namespace opthy
