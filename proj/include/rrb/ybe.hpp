#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "brace.hpp"
#include "check.hpp"
#include "group.hpp"
#include "intvec.hpp"
#include "module.hpp"
#include "perm.hpp"
#include "perm_rb.hpp"
#include "report.hpp"
#include "rota_baxter.hpp"
#include "semidirect.hpp"

namespace rrb {

/// r(x, y) = (sigma_x(y), tau_y(x)) on X = {1..n}, stored 0-based. tau is always the one
/// determined by sigma: tau_y(x) = sigma^{-1}_{sigma_x(y)}(x).
class SetYBE {
public:
  static SetYBE from_sigma(std::vector<Perm> sigma)
  {
    SetYBE r;
    r.n_ = sigma.size();
    if (r.n_ == 0 || r.n_ > kMaxRank)
      throw InputError("solution size must be between 1 and " + std::to_string(kMaxRank));
    for (const auto &s : sigma)
      if (s.degree() != r.n_)
        throw InputError("sigma entry has the wrong degree");
    r.sigma_ = std::move(sigma);
    std::vector<Perm> inv;
    for (const auto &s : r.sigma_)
      inv.push_back(s.inverse());
    for (std::size_t y = 0; y < r.n_; ++y) {
      std::vector<int> img(r.n_);
      for (std::size_t x = 0; x < r.n_; ++x)
        img[x] = inv[r.sigma_[x](static_cast<int>(y))](static_cast<int>(x));
      try {
        r.tau_.push_back(Perm::from_images0(img));
      } catch (const InputError &) {
        throw InputError("derived tau_" + std::to_string(y + 1) + " is not a permutation; r is degenerate");
      }
    }
    return r;
  }

  /// Validates a supplied tau table against the formula.
  static SetYBE from_tables(std::vector<Perm> sigma, const std::vector<Perm> &tau)
  {
    SetYBE r = from_sigma(std::move(sigma));
    if (tau.size() != r.n_)
      throw InputError("tau table has the wrong length");
    for (std::size_t y = 0; y < r.n_; ++y)
      if (!(tau[y] == r.tau_[y]))
        throw InputError("tau_" + std::to_string(y + 1) + " disagrees with sigma^{-1}_{sigma_x(y)}(x)");
    return r;
  }

  static SetYBE flip(std::size_t n) { return from_sigma(std::vector<Perm>(n, Perm::identity(n))); }

  std::size_t size() const { return n_; }
  const std::vector<Perm> &sigma() const { return sigma_; }
  const std::vector<Perm> &tau() const { return tau_; }

  /// 0-based r(x, y).
  std::pair<int, int> operator()(int x, int y) const { return {sigma_[x](y), tau_[y](x)}; }

  friend bool operator==(const SetYBE &, const SetYBE &) = default;

private:
  std::size_t n_ = 0;
  std::vector<Perm> sigma_, tau_;
};

inline void to_json(nlohmann::json &j, const SetYBE &r)
{
  j = nlohmann::json{{"n", r.size()}, {"sigma", perms_json(r.sigma())}, {"tau", perms_json(r.tau())}};
}

inline SetYBE set_ybe_from_json(const nlohmann::json &j)
{
  if (!j.is_object() || !j.contains("sigma"))
    throw InputError("solution needs a \"sigma\" array");
  auto sigma = perms_from_json(j.at("sigma"));
  if (j.contains("n") && j.at("n").get<std::size_t>() != sigma.size())
    throw InputError("\"n\" does not match the length of \"sigma\"");
  if (j.contains("tau"))
    return SetYBE::from_tables(std::move(sigma), perms_from_json(j.at("tau")));
  return SetYBE::from_sigma(std::move(sigma));
}

/// r^2 = id on X^2, non-degeneracy, the braid relation r1 r2 r1 = r2 r1 r2 on X^3, and the
/// equivalent condition sigma_x sigma_{sigma_x^{-1}(y)} = sigma_y sigma_{sigma_y^{-1}(x)}.
/// The two braid criteria are also required to agree.
inline Report ybe_check(const SetYBE &r)
{
  int n = static_cast<int>(r.size());
  Report rep("ybe");
  rep.info["n"] = n;

  Report inv("involutive");
  for (int x = 0; x < n && inv.holds; ++x)
    for (int y = 0; y < n && inv.holds; ++y) {
      ++inv.pairs_checked;
      auto [a, b] = r(x, y);
      auto [c, d] = r(a, b);
      if (c != x || d != y)
        inv.fail({{"x", x + 1}, {"y", y + 1}, {"r(x,y)", {a + 1, b + 1}}, {"r(r(x,y))", {c + 1, d + 1}}});
    }

  // sigma_x and tau_x are Perm values, so only their count is recorded here.
  Report nondeg("non_degenerate");
  nondeg.pairs_checked = 2 * r.size();

  Report braid("braid");
  using T3 = std::array<int, 3>;
  auto r1 = [&](T3 t) {
    auto [a, b] = r(t[0], t[1]);
    return T3{a, b, t[2]};
  };
  auto r2 = [&](T3 t) {
    auto [b, c] = r(t[1], t[2]);
    return T3{t[0], b, c};
  };
  for (int x = 0; x < n && braid.holds; ++x)
    for (int y = 0; y < n && braid.holds; ++y)
      for (int z = 0; z < n && braid.holds; ++z) {
        ++braid.pairs_checked;
        T3 t{x, y, z};
        T3 lhs = r1(r2(r1(t)));
        T3 rhs = r2(r1(r2(t)));
        if (lhs != rhs)
          braid.fail({{"x", x + 1},
                      {"y", y + 1},
                      {"z", z + 1},
                      {"r1r2r1", {lhs[0] + 1, lhs[1] + 1, lhs[2] + 1}},
                      {"r2r1r2", {rhs[0] + 1, rhs[1] + 1, rhs[2] + 1}}});
      }

  Report cond("condition_iii_prime");
  const auto &s = r.sigma();
  for (int x = 0; x < n && cond.holds; ++x)
    for (int y = 0; y < n && cond.holds; ++y) {
      ++cond.pairs_checked;
      Perm lhs = s[x] * s[s[x].inverse()(y)];
      Perm rhs = s[y] * s[s[y].inverse()(x)];
      if (!(lhs == rhs))
        cond.fail({{"x", x + 1}, {"y", y + 1}, {"lhs", lhs.to_cycles()}, {"rhs", rhs.to_cycles()}});
    }

  Report agree("braid_criteria_agree");
  agree.pairs_checked = 1;
  if (braid.holds != cond.holds)
    agree.fail({{"braid", braid.holds}, {"condition_iii_prime", cond.holds}});

  rep.add(std::move(inv));
  rep.add(std::move(nondeg));
  rep.add(std::move(braid));
  rep.add(std::move(cond));
  rep.add(std::move(agree));
  return rep;
}

/// (u |> v, R(u |> v)^{-1}.u)
template <class Op>
std::pair<IntVec, IntVec> upsilon(const Op &R, const IntVec &u, const IntVec &v)
{
  IntVec w = R.triangle(u, v);
  return {w, R.act(R.group().inv(R(w)), u)};
}

/// (u |> v, (u |> v)^dagger |> u), the form through the descendent inverse.
template <class Op>
std::pair<IntVec, IntVec> upsilon_via_dagger(const Op &R, const IntVec &u, const IntVec &v)
{
  IntVec w = R.triangle(u, v);
  return {w, R.triangle(R.dagger(w), u)};
}

/// The two expressions of the solution agree and it is involutive, on R's pair domain.
template <class Op>
Report upsilon_check(const Op &R)
{
  Domain d = R.domain();
  Report r("upsilon");
  r.seed = d.seed;
  r.add(detail::check_pairs("upsilon_forms_agree", d, [&](const IntVec &u, const IntVec &v) -> detail::Witness {
    auto a = upsilon(R, u, v);
    auto b = upsilon_via_dagger(R, u, v);
    if (a == b)
      return std::nullopt;
    return nlohmann::json{{"u", u}, {"v", v}, {"action_form", {a.first, a.second}}, {"dagger_form", {b.first, b.second}}};
  }));
  r.add(detail::check_pairs("upsilon_involutive", d, [&](const IntVec &u, const IntVec &v) -> detail::Witness {
    auto a = upsilon(R, u, v);
    auto b = upsilon(R, a.first, a.second);
    if (b.first == u && b.second == v)
      return std::nullopt;
    return nlohmann::json{{"u", u}, {"v", v}, {"image", {a.first, a.second}}, {"twice", {b.first, b.second}}};
  }));
  return r;
}

/// Braid relation for Upsilon on all triples of a list of points.
template <class Op>
Report upsilon_braid_check(const Op &R, const std::vector<IntVec> &points)
{
  Report r("upsilon_braid");
  using T3 = std::array<IntVec, 3>;
  auto r1 = [&](const T3 &t) {
    auto [a, b] = upsilon(R, t[0], t[1]);
    return T3{a, b, t[2]};
  };
  auto r2 = [&](const T3 &t) {
    auto [b, c] = upsilon(R, t[1], t[2]);
    return T3{t[0], b, c};
  };
  for (const auto &x : points)
    for (const auto &y : points)
      for (const auto &z : points) {
        ++r.pairs_checked;
        T3 t{x, y, z};
        T3 lhs = r1(r2(r1(t)));
        T3 rhs = r2(r1(r2(t)));
        if (lhs != rhs) {
          r.fail({{"x", x}, {"y", y}, {"z", z}});
          return r;
        }
      }
  return r;
}

/// The solution on X = basis of Z^n read off from sigma_x = R(e_x).
template <class Op>
SetYBE restrict_to_basis(const Op &R)
{
  Signature sig = R.signature();
  std::vector<Perm> sigma;
  for (std::size_t x = 0; x < sig.rank(); ++x)
    sigma.push_back(R(IntVec::basis(sig, x)));
  return SetYBE::from_sigma(std::move(sigma));
}

/// Upsilon_R(e_x, e_y) = (e_{sigma_x(y)}, e_{tau_y(x)}) for every basis pair.
template <class Op>
Report basis_upsilon_check(const Op &R, const SetYBE &r)
{
  Signature sig = R.signature();
  Report rep("upsilon_on_basis");
  int n = static_cast<int>(r.size());
  if (sig.rank() != r.size())
    throw InputError("solution size does not match the module rank");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      ++rep.pairs_checked;
      auto got = upsilon(R, IntVec::basis(sig, x), IntVec::basis(sig, y));
      auto [a, b] = r(x, y);
      if (!(got.first == IntVec::basis(sig, a) && got.second == IntVec::basis(sig, b))) {
        rep.fail({{"x", x + 1}, {"y", y + 1}, {"upsilon", {got.first, got.second}}, {"r", {a + 1, b + 1}}});
        return rep;
      }
    }
  return rep;
}

using StructureElem = SemidirectElem<Perm>;

/// H_r = <(e_x, sigma_x)> inside Z^X x| Sym_X, enumerated up to a word length, with the map
/// a -> R_r(a) read off its elements.
struct StructureGroup {
  SetYBE solution;
  std::size_t bound = 0;
  std::vector<StructureElem> elements;
  std::vector<std::size_t> level_sizes;
  std::unordered_map<IntVec, Perm> rr_map;
  std::optional<nlohmann::json> conflict;

  Signature signature() const { return Signature::free(solution.size()); }

  /// R_r(a); only defined for vectors reached within the bound.
  Perm rr(const IntVec &a) const
  {
    auto it = rr_map.find(a);
    if (it == rr_map.end())
      throw InputError("vector " + a.str() + " lies outside the enumerated part of the structure group");
    return it->second;
  }
};

namespace detail {
inline Report structure_graph_report(const StructureGroup &H)
{
  Report r("single_valued");
  r.pairs_checked = H.elements.size();
  if (H.conflict)
    r.fail(*H.conflict);
  return r;
}
} // namespace detail

/// Enumerates H_r to `bound` letters. Throws CheckFailed if two elements share a vector.
inline StructureGroup structure_group(const SetYBE &r, std::size_t bound = 4)
{
  StructureGroup H;
  H.solution = r;
  H.bound = bound;
  std::size_t n = r.size();
  Signature sig = Signature::free(n);
  SemidirectGroup G(permutation_module(n));
  std::vector<StructureElem> gens;
  for (std::size_t x = 0; x < n; ++x)
    gens.push_back({IntVec::basis(sig, x), r.sigma()[x]});
  auto c = closure(G, std::span<const StructureElem>(gens), bound);
  H.elements = std::move(c.elements);
  H.level_sizes = std::move(c.level_sizes);
  for (const auto &h : H.elements) {
    auto [it, fresh] = H.rr_map.emplace(h.vec, h.grp);
    if (!fresh && !(it->second == h.grp) && !H.conflict)
      H.conflict = nlohmann::json{{"vec", h.vec}, {"first", it->second.to_cycles()}, {"second", h.grp.to_cycles()}};
  }
  if (H.conflict) {
    Report rep("structure_group");
    rep.add(detail::structure_graph_report(H));
    throw CheckFailed(rep);
  }
  return H;
}

/// R_r as an operator on the natural Sym_X-module Z^X, checked on the ball of radius
/// floor(bound / 2), where every sum the identity needs stays inside the enumeration.
inline auto structure_operator(const StructureGroup &H)
{
  auto map = std::make_shared<const StructureGroup>(H);
  auto ball = enumerate_ball(H.signature(), static_cast<std::int64_t>(H.bound / 2));
  return RelRBOp(permutation_module(H.solution.size()), [map](const IntVec &a) { return map->rr(a); },
                 std::optional<DomainPolicy>(Listed{ball}));
}

/// The construction reversed: H_r is single valued, covers the ball of radius `bound`,
/// R_r(e_x) = sigma_x, R_r is an operator, pi is a brace isomorphism on the checked ball,
/// and Upsilon_{R_r} restricted to X^2 is r.
inline Report roundtrip_check(const SetYBE &r, std::size_t bound = 4)
{
  Report rep("roundtrip");
  rep.info["bound"] = bound;
  StructureGroup H = structure_group(r, bound);
  rep.info["elements"] = H.elements.size();
  rep.info["level_sizes"] = H.level_sizes;
  rep.add(detail::structure_graph_report(H));
  Signature sig = H.signature();

  Report cover("ball_coverage");
  for (const auto &v : enumerate_ball(sig, static_cast<std::int64_t>(bound))) {
    ++cover.pairs_checked;
    if (!H.rr_map.count(v)) {
      cover.fail({{"missing", v}});
      break;
    }
  }
  rep.add(std::move(cover));

  Report gens("generators");
  for (std::size_t x = 0; x < r.size(); ++x) {
    ++gens.pairs_checked;
    Perm got = H.rr(IntVec::basis(sig, x));
    if (!(got == r.sigma()[x])) {
      gens.fail({{"x", x + 1}, {"R_r(e_x)", got.to_cycles()}, {"sigma_x", r.sigma()[x].to_cycles()}});
      break;
    }
  }
  rep.add(std::move(gens));

  auto R = structure_operator(H);
  rep.add(verify_rrb(R));

  SemidirectGroup G(R.module());
  Domain d = R.domain();
  rep.add(detail::check_pairs("brace_isomorphism", d, [&](const IntVec &a, const IntVec &b) -> detail::Witness {
    auto prod = G.mul({a, R(a)}, {b, R(b)});
    IntVec star = R.star(a, b);
    if (prod.vec == star && prod.grp == R(star))
      return std::nullopt;
    return nlohmann::json{{"a", a}, {"b", b}, {"product", prod}, {"a*b", star}};
  }));
  rep.add(basis_upsilon_check(R, r));
  return rep;
}

/// The adjoint action of H_r on Z^X: h.b = vec(h (b, 1) h^{-1}).
inline auto adjoint_module(std::size_t n)
{
  using G = SemidirectGroup<PermModule>;
  return ModuleAction(G(permutation_module(n)), Signature::free(n), [n](const StructureElem &h, const IntVec &b) {
    G g(permutation_module(n));
    auto c = g.mul(g.mul(h, {b, Perm::identity(n)}), g.inv(h));
    if (!c.grp.is_identity())
      throw InputError("conjugate of a pure translation is not a translation");
    return c.vec;
  });
}

/// Ad_{(a, R_r(a))} b = R_r(a) b, and pi: (a, R_r(a)) -> a is a bijective 1-cocycle for the
/// adjoint action whose inverse is an operator.
inline Report adjoint_cocycle_check(const StructureGroup &H)
{
  Report rep("adjoint_cocycle");
  std::size_t n = H.solution.size();
  auto R = structure_operator(H);
  Domain d = R.domain();
  auto Ad = adjoint_module(n);

  rep.add(detail::check_pairs("adjoint_is_action", d, [&](const IntVec &a, const IntVec &b) -> detail::Witness {
    IntVec lhs = Ad.act({a, R(a)}, b);
    IntVec rhs = R.act(R(a), b);
    if (lhs == rhs)
      return std::nullopt;
    return nlohmann::json{{"a", a}, {"b", b}, {"Ad", lhs}, {"R(a)b", rhs}};
  }));

  std::vector<StructureElem> elems;
  for (const auto &a : d.points)
    elems.push_back({a, R(a)});
  OneCocycle<decltype(Ad)> pi{Ad, [](const StructureElem &h) { return h.vec; }, elems,
                              [R](const IntVec &a) { return StructureElem{a, R(a)}; }};
  rep.add(cocycle_check(pi));
  rep.add(cocycle_bijectivity(pi, d.points));
  try {
    auto back = rrb_from_cocycle(pi, std::optional<DomainPolicy>(Listed{d.points}));
    Report ok("inverse_is_operator");
    ok.pairs_checked = d.points.size() * d.points.size();
    rep.add(std::move(ok));
  } catch (const CheckFailed &e) {
    rep.add(e.report());
  }
  return rep;
}

} // namespace rrb
