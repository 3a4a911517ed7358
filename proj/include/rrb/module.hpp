#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "group.hpp"
#include "intvec.hpp"
#include "report.hpp"

namespace rrb {

/// A left action of a group G on an abelian group V by automorphisms (a ZG-module).
template <Group G, class Act>
class ModuleAction {
public:
  using group_type = G;
  using element_type = typename G::element_type;

  ModuleAction(G group, Signature sig, Act act) : group_(std::move(group)), sig_(sig), act_(std::move(act)) {}

  const G &group() const { return group_; }
  Signature signature() const { return sig_; }

  IntVec act(const element_type &g, const IntVec &v) const { return act_(g, v); }

private:
  G group_;
  Signature sig_;
  Act act_;
};

/// A module whose action is type-erased, for modules assembled at run time.
template <Group G>
using AnyModule = ModuleAction<G, std::function<IntVec(const typename G::element_type &, const IntVec &)>>;

inline Signature concat(Signature a, Signature b)
{
  auto m = a.moduli();
  m.insert(m.end(), b.moduli().begin(), b.moduli().end());
  return Signature(std::move(m));
}

inline IntVec join(Signature joint, const IntVec &a, const IntVec &b)
{
  auto e = a.entries();
  auto f = b.entries();
  e.insert(e.end(), f.begin(), f.end());
  return IntVec(joint, e);
}

inline IntVec slice(const IntVec &v, std::size_t start, Signature part)
{
  std::vector<std::int64_t> e(part.rank());
  for (std::size_t i = 0; i < part.rank(); ++i)
    e[i] = v[start + i];
  return IntVec(part, e);
}

/// The permutation representation of S_n on Z^n: w e_i = e_{w(i)}.
inline auto permutation_module(std::size_t n)
{
  return ModuleAction(SymmetricGroup{n}, Signature::free(n),
                      [](const Perm &w, const IntVec &v) { return v.permuted(w); });
}

/// The sign representation of S_n on Z.
inline auto sign_module(std::size_t n)
{
  return ModuleAction(SymmetricGroup{n}, Signature::free(1),
                      [](const Perm &w, const IntVec &v) { return w.sign() > 0 ? v : -v; });
}

template <Group G>
auto trivial_module(G group, Signature sig)
{
  return ModuleAction(std::move(group), sig,
                      [](const typename G::element_type &, const IntVec &v) { return v; });
}

/// Z acting on Z through a character chi: Z -> {+1, -1}; `alternating` selects
/// chi(n) = (-1)^n, otherwise chi is trivial.
inline auto character_module(bool alternating)
{
  return ModuleAction(AdditiveGroup{Signature::free(1)}, Signature::free(1),
                      [alternating](const IntVec &g, const IntVec &v) {
                        return (alternating && (g[0] % 2 != 0)) ? -v : v;
                      });
}

/// Given an abelian G and a G-module A with action rho, the module V = A x G with
/// x.(a, y) = (rho(x) a, y).
template <class Rho>
auto projection_module(Signature g_sig, Signature a_sig, Rho rho)
{
  Signature v_sig = concat(a_sig, g_sig);
  return ModuleAction(AdditiveGroup{g_sig}, v_sig,
                      [=](const IntVec &x, const IntVec &v) {
                        IntVec a = slice(v, 0, a_sig);
                        IntVec y = slice(v, a_sig.rank(), g_sig);
                        return join(v_sig, rho(x, a), y);
                      });
}

inline std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m)
{
  std::int64_t r = 1 % m, b = IntVec::reduce(base, m);
  while (exp > 0) {
    if (exp & 1)
      r = r * b % m;
    b = b * b % m;
    exp >>= 1;
  }
  return r;
}

/// Z_n acting on V = Z_m x Z_n by [j].([k],[l]) = ([r^j k], [l]).
/// Requires gcd(r, m) = 1 and r^n = 1 mod m.
inline auto power_module(std::int64_t m, std::int64_t n, std::int64_t r)
{
  if (m < 1 || n < 1)
    throw InputError("power module needs positive m and n");
  if (std::gcd(IntVec::reduce(r, m), m) != 1 && m != 1)
    throw InputError("r must be coprime to m");
  if (pow_mod(r, n, m) != 1 % m)
    throw InputError("r^n must be 1 modulo m");
  Signature a_sig = Signature::cyclic(m);
  return projection_module(Signature::cyclic(n), a_sig, [=](const IntVec &x, const IntVec &a) {
    return IntVec(a_sig, {pow_mod(r, x[0], m) * a[0]});
  });
}

/// act(e, v) = v, act(gh, v) = act(g, act(h, v)), act(g, u + v) = act(g, u) + act(g, v).
template <class Module>
Report check_module_axioms(const Module &m, std::span<const typename Module::element_type> group_elems,
                           std::span<const IntVec> vecs)
{
  Report r("module_axioms");
  const auto &g = m.group();
  auto e = g.identity();
  for (const auto &v : vecs) {
    ++r.pairs_checked;
    if (!(m.act(e, v) == v)) {
      r.fail({{"axiom", "unit"}, {"v", v}});
      return r;
    }
  }
  for (const auto &a : group_elems)
    for (const auto &b : group_elems) {
      auto ab = g.mul(a, b);
      for (const auto &v : vecs) {
        ++r.pairs_checked;
        if (!(m.act(ab, v) == m.act(a, m.act(b, v)))) {
          r.fail({{"axiom", "compatibility"}, {"g", a}, {"h", b}, {"v", v}});
          return r;
        }
      }
    }
  for (const auto &a : group_elems)
    for (const auto &u : vecs)
      for (const auto &v : vecs) {
        ++r.pairs_checked;
        if (!(m.act(a, u + v) == m.act(a, u) + m.act(a, v))) {
          r.fail({{"axiom", "additivity"}, {"g", a}, {"u", u}, {"v", v}});
          return r;
        }
      }
  return r;
}

} // namespace rrb
