#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "error.hpp"
#include "intvec.hpp"
#include "perm.hpp"
#include "report.hpp"

namespace rrb {

/// A group given by its identity, multiplication and inversion. Element equality is
/// operator==, and elements must be hashable for closure and deduplication.
template <class G>
concept Group = requires(const G &g, const typename G::element_type &a) {
  { g.identity() } -> std::convertible_to<typename G::element_type>;
  { g.mul(a, a) } -> std::convertible_to<typename G::element_type>;
  { g.inv(a) } -> std::convertible_to<typename G::element_type>;
  { std::hash<typename G::element_type>{}(a) } -> std::convertible_to<std::size_t>;
} && std::equality_comparable<typename G::element_type>;

/// A Group that can list all of its elements.
template <class G>
concept EnumerableGroup = Group<G> && requires(const G &g) {
  { g.elements() } -> std::convertible_to<std::vector<typename G::element_type>>;
};

/// S_n acting on {1..n}.
struct SymmetricGroup {
  using element_type = Perm;
  std::size_t n = 0;

  Perm identity() const { return Perm::identity(n); }
  Perm mul(const Perm &a, const Perm &b) const { return a * b; }
  Perm inv(const Perm &a) const { return a.inverse(); }
  std::vector<Perm> elements() const
  {
    if (n > 8)
      throw InputError("refusing to list S_n for n > 8");
    return all_perms(n);
  }
};

/// A finitely generated abelian group written additively.
struct AdditiveGroup {
  using element_type = IntVec;
  Signature sig;

  IntVec identity() const { return IntVec(sig); }
  IntVec mul(const IntVec &a, const IntVec &b) const { return a + b; }
  IntVec inv(const IntVec &a) const { return -a; }
  std::vector<IntVec> elements() const { return enumerate_all(sig); }
};

template <Group G>
std::size_t element_order(const G &g, const typename G::element_type &a, std::size_t limit = 1u << 20)
{
  auto e = g.identity();
  auto x = a;
  for (std::size_t k = 1; k <= limit; ++k) {
    if (x == e)
      return k;
    x = g.mul(x, a);
  }
  throw InputError("element order exceeds search limit");
}

/// Order, commutativity and the sorted multiset of element orders. This separates all
/// groups of order <= 8, which is all this project needs for identification.
struct Fingerprint {
  std::size_t order = 0;
  bool abelian = true;
  std::vector<std::size_t> element_orders;

  friend bool operator==(const Fingerprint &, const Fingerprint &) = default;
};

inline void to_json(nlohmann::json &j, const Fingerprint &f)
{
  j = nlohmann::json{{"order", f.order}, {"abelian", f.abelian}, {"element_orders", f.element_orders}};
}

template <Group G>
Fingerprint fingerprint(const G &g, std::span<const typename G::element_type> elements)
{
  Fingerprint f;
  f.order = elements.size();
  for (const auto &a : elements) {
    f.element_orders.push_back(element_order(g, a));
    for (const auto &b : elements)
      if (f.abelian && !(g.mul(a, b) == g.mul(b, a)))
        f.abelian = false;
  }
  std::sort(f.element_orders.begin(), f.element_orders.end());
  return f;
}

template <EnumerableGroup G>
Fingerprint fingerprint(const G &g)
{
  auto elems = g.elements();
  return fingerprint(g, std::span<const typename G::element_type>(elems));
}

/// Group axioms checked over every triple of the given elements.
template <Group G>
Report check_group_axioms(const G &g, std::span<const typename G::element_type> elems)
{
  Report r("group_axioms");
  auto e = g.identity();
  for (const auto &a : elems) {
    r.pairs_checked += 1;
    if (!(g.mul(e, a) == a) || !(g.mul(a, e) == a)) {
      r.fail({{"axiom", "identity"}, {"a", a}});
      return r;
    }
    if (!(g.mul(a, g.inv(a)) == e) || !(g.mul(g.inv(a), a) == e)) {
      r.fail({{"axiom", "inverse"}, {"a", a}});
      return r;
    }
  }
  for (const auto &a : elems)
    for (const auto &b : elems) {
      auto ab = g.mul(a, b);
      for (const auto &c : elems) {
        r.pairs_checked += 1;
        if (!(g.mul(ab, c) == g.mul(a, g.mul(b, c)))) {
          r.fail({{"axiom", "associativity"}, {"a", a}, {"b", b}, {"c", c}});
          return r;
        }
      }
    }
  return r;
}

template <class E>
struct ClosureResult {
  std::vector<E> elements;   // breadth-first order: by word length, then discovery order
  std::vector<std::size_t> level_sizes;
  bool stabilized = false;   // a level added nothing before the bound was reached
};

/// All products of at most `bound` generators and their inverses.
template <Group G>
ClosureResult<typename G::element_type> closure(const G &g, std::span<const typename G::element_type> gens,
                                                std::size_t bound)
{
  using E = typename G::element_type;
  if (bound < 1)
    throw InputError("closure bound must be at least 1");
  std::vector<E> letters;
  for (const auto &x : gens) {
    letters.push_back(x);
    letters.push_back(g.inv(x));
  }
  ClosureResult<E> out;
  std::unordered_set<E> seen;
  out.elements.push_back(g.identity());
  seen.insert(g.identity());
  out.level_sizes.push_back(1);
  std::vector<E> frontier = out.elements;
  for (std::size_t len = 1; len <= bound; ++len) {
    std::vector<E> next;
    for (const auto &w : frontier)
      for (const auto &x : letters) {
        E y = g.mul(w, x);
        if (seen.insert(y).second)
          next.push_back(y);
      }
    out.level_sizes.push_back(next.size());
    if (next.empty()) {
      out.stabilized = true;
      break;
    }
    out.elements.insert(out.elements.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

} // namespace rrb
