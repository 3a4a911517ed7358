#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "domain.hpp"
#include "parallel.hpp"
#include "report.hpp"

// Loop drivers shared by every equational check. A property callback returns
// std::nullopt when the identity holds and a JSON witness when it does not.
namespace rrb::detail {

using Witness = std::optional<nlohmann::json>;

template <class Fn>
Report check_points(std::string name, const Domain &d, Fn &&fn)
{
  Report r(std::move(name));
  r.seed = d.seed;
  for (const auto &u : d.points) {
    ++r.pairs_checked;
    if (auto w = fn(u)) {
      r.fail(std::move(*w));
      return r;
    }
  }
  return r;
}

/// outer(u) -> ctx is evaluated once per first argument; inner(ctx, v) -> Witness.
template <class Outer, class Inner>
Report check_pairs(std::string name, const Domain &d, Outer &&outer, Inner &&inner)
{
  Report r(std::move(name));
  r.seed = d.seed;
  if (d.product) {
    for (const auto &u : d.points) {
      auto ctx = outer(u);
      for (const auto &v : d.points) {
        ++r.pairs_checked;
        if (auto w = inner(ctx, v)) {
          r.fail(std::move(*w));
          return r;
        }
      }
    }
  }
  for (const auto &[u, v] : d.pairs) {
    ++r.pairs_checked;
    if (auto w = inner(outer(u), v)) {
      r.fail(std::move(*w));
      return r;
    }
  }
  return r;
}

template <class Fn>
Report check_pairs(std::string name, const Domain &d, Fn &&fn)
{
  return check_pairs(
      std::move(name), d, [](const IntVec &u) { return u; },
      [&](const IntVec &u, const IntVec &v) { return fn(u, v); });
}

/// outer(x) -> c1, middle(c1, y) -> c2, holds(c2, z) -> bool, and describe(c2, z) -> json
/// builds the witness for the first failing triple. The outer loop may run in parallel,
/// so the callbacks must be safe to call concurrently.
template <class Outer, class Middle, class Holds, class Describe>
Report check_triples(std::string name, const Domain &d, Outer &&outer, Middle &&middle, Holds &&holds,
                     Describe &&describe)
{
  Report r(std::move(name));
  r.seed = d.seed;
  if (d.product && !d.points.empty()) {
    const auto &pts = d.points;
    using Found = std::optional<std::pair<nlohmann::json, std::uint64_t>>;
    auto fail = first_failure(pts.size(), [&](std::size_t xi) -> Found {
      auto c1 = outer(pts[xi]);
      std::uint64_t seen = 0;
      for (const auto &y : pts) {
        auto c2 = middle(c1, y);
        for (const auto &z : pts) {
          ++seen;
          if (!holds(c2, z)) [[unlikely]]
            return std::pair{describe(c2, z), seen};
        }
      }
      return std::nullopt;
    });
    std::uint64_t n = pts.size();
    if (fail) {
      r.pairs_checked += fail->first * n * n + fail->second.second;
      r.fail(std::move(fail->second.first));
      return r;
    }
    r.pairs_checked += n * n * n;
  }
  for (const auto &[x, y, z] : d.triples) {
    ++r.pairs_checked;
    auto c1 = outer(x);
    auto c2 = middle(c1, y);
    if (!holds(c2, z)) {
      r.fail(describe(c2, z));
      return r;
    }
  }
  return r;
}

/// A triple identity lhs = rhs: sides(c2, z) -> pair{lhs, rhs}; label(c2, z) -> json naming
/// the arguments, to which the failing sides are added.
template <class Outer, class Middle, class Sides, class Label>
Report check_triple_identity(std::string name, const Domain &d, Outer &&outer, Middle &&middle, Sides &&sides,
                             Label &&label)
{
  return check_triples(
      std::move(name), d, outer, middle,
      [&](const auto &c, const IntVec &z) {
        auto [lhs, rhs] = sides(c, z);
        return lhs == rhs;
      },
      [&](const auto &c, const IntVec &z) {
        auto [lhs, rhs] = sides(c, z);
        nlohmann::json j = label(c, z);
        j["lhs"] = lhs;
        j["rhs"] = rhs;
        return j;
      });
}

} // namespace rrb::detail
