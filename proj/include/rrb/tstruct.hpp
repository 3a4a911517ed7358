#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "brace.hpp"
#include "check.hpp"
#include "domain.hpp"
#include "intvec.hpp"
#include "report.hpp"
#include "rota_baxter.hpp"

namespace rrb {

/// A bijection T of an abelian group. Finite groups may use a table; otherwise T is a
/// formula and every check is restricted to `window`.
struct TStructure {
  Signature sig;
  std::function<IntVec(const IntVec &)> map;
  std::function<IntVec(const IntVec &)> inverse;
  std::vector<IntVec> window;

  IntVec operator()(const IntVec &v) const { return map(v); }

  /// T^k, with negative powers through the inverse.
  IntVec power(IntVec v, std::int64_t k) const
  {
    if (k < 0 && !inverse)
      throw InputError("negative power of T needs its inverse");
    for (std::int64_t i = 0; i < k; ++i)
      v = map(v);
    for (std::int64_t i = 0; i > k; --i)
      v = inverse(v);
    return v;
  }

  /// images[i] is the image of the i-th element of enumerate_all(sig).
  static TStructure from_table(Signature sig, const std::vector<IntVec> &images)
  {
    auto elems = enumerate_all(sig);
    if (images.size() != elems.size())
      throw InputError("T table has " + std::to_string(images.size()) + " entries, expected " +
                       std::to_string(elems.size()));
    auto fwd = std::make_shared<std::unordered_map<IntVec, IntVec>>();
    auto bwd = std::make_shared<std::unordered_map<IntVec, IntVec>>();
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (!(images[i].signature() == sig))
        throw InputError("T table entry has the wrong signature");
      (*fwd)[elems[i]] = images[i];
      if (!bwd->emplace(images[i], elems[i]).second)
        throw InputError("T is not a bijection: " + images[i].str() + " is hit twice");
    }
    return {sig, [fwd](const IntVec &v) { return fwd->at(v); }, [bwd](const IntVec &v) { return bwd->at(v); },
            elems};
  }

  static TStructure identity(Signature sig, std::vector<IntVec> window)
  {
    auto id = [](const IntVec &v) { return v; };
    return {sig, id, id, std::move(window)};
  }

  static TStructure negation(Signature sig, std::vector<IntVec> window)
  {
    auto neg = [](const IntVec &v) { return -v; };
    return {sig, neg, neg, std::move(window)};
  }

  /// The whole group when finite, otherwise the box of the given radius.
  static std::vector<IntVec> default_window(Signature sig, std::int64_t radius = 3)
  {
    return sig.is_finite() ? enumerate_all(sig) : enumerate_box(sig, radius);
  }
};

/// Accepts {"moduli": [...], "table": [...]} with entries as integers (rank 1) or entry
/// arrays, or {"moduli": [...], "kind": "identity" | "negation", "window": K}.
inline TStructure tstructure_from_json(const nlohmann::json &j)
{
  if (!j.is_object() || !j.contains("moduli"))
    throw InputError("T-structure JSON needs a \"moduli\" array");
  Signature sig(j.at("moduli").get<std::vector<std::int64_t>>());
  if (j.contains("table")) {
    if (!sig.is_finite())
      throw InputError("a T table needs a finite group");
    std::vector<IntVec> images;
    for (const auto &e : j.at("table")) {
      if (e.is_number_integer())
        images.emplace_back(sig, std::vector<std::int64_t>{e.get<std::int64_t>()});
      else
        images.emplace_back(sig, e.get<std::vector<std::int64_t>>());
    }
    return TStructure::from_table(sig, images);
  }
  std::string kind = j.value("kind", "identity");
  auto window = TStructure::default_window(sig, j.value("window", 3));
  if (kind == "identity")
    return TStructure::identity(sig, window);
  if (kind == "negation")
    return TStructure::negation(sig, window);
  throw InputError("unknown T kind: " + kind);
}

/// T(ka) = k T^k(a) for every window point a and every k in [kmin, kmax].
inline Report tstruct_check(const TStructure &T, std::int64_t kmin = -6, std::int64_t kmax = 6)
{
  if (kmin > kmax)
    throw InputError("empty k range");
  Report r("t_structure");
  r.info["k_range"] = {kmin, kmax};
  r.info["window_size"] = T.window.size();
  Domain d;
  d.points = T.window;

  Report bij("bijective");
  std::unordered_set<IntVec> seen;
  for (const auto &a : T.window) {
    ++bij.pairs_checked;
    IntVec t = T(a);
    if (!seen.insert(t).second) {
      bij.fail({{"a", a}, {"T(a)", t}, {"reason", "image repeated"}});
      break;
    }
    if (T.inverse && !(T.inverse(t) == a)) {
      bij.fail({{"a", a}, {"T(a)", t}, {"inverse", T.inverse(t)}});
      break;
    }
  }
  if (!bij.holds)
    throw InputError("T is not a bijection on its window: " + bij.counterexample->dump());
  r.add(std::move(bij));

  Report law = detail::check_points("scaling", d, [&](const IntVec &a) -> detail::Witness {
    for (std::int64_t k = kmin; k <= kmax; ++k) {
      IntVec lhs = T(k * a);
      IntVec rhs = k * T.power(a, k);
      if (!(lhs == rhs))
        return nlohmann::json{{"a", a}, {"k", k}, {"T(ka)", lhs}, {"kT^k(a)", rhs}};
    }
    return std::nullopt;
  });
  law.pairs_checked *= static_cast<std::uint64_t>(kmax - kmin + 1);
  r.add(std::move(law));
  return r;
}

/// T(v) = R(v)^{-1} v = -v^dagger, with inverse w -> (-w)^dagger.
template <class Op>
TStructure t_from_rrb(const Op &R)
{
  auto op = std::make_shared<const Op>(R);
  return {R.signature(), [op](const IntVec &v) { return op->act(op->group().inv((*op)(v)), v); },
          [op](const IntVec &w) { return op->dagger(-w); }, R.domain().points};
}

/// R(nv)^{-1} (mv) = m T^n(v) for v in R's domain and 0 <= m, n <= bound.
template <class Op>
Report scaled_power_check(const Op &R, std::int64_t bound = 4)
{
  TStructure T = t_from_rrb(R);
  Domain d = R.domain();
  Report r = detail::check_points("scaled_powers", d, [&](const IntVec &v) -> detail::Witness {
    IntVec tn = v;
    for (std::int64_t n = 0; n <= bound; ++n) {
      auto g = R.group().inv(R(n * v));
      for (std::int64_t m = 0; m <= bound; ++m) {
        IntVec lhs = R.act(g, m * v);
        IntVec rhs = m * tn;
        if (!(lhs == rhs))
          return nlohmann::json{{"v", v}, {"m", m}, {"n", n}, {"lhs", lhs}, {"rhs", rhs}};
      }
      tn = T(tn);
    }
    return std::nullopt;
  });
  r.pairs_checked *= static_cast<std::uint64_t>((bound + 1) * (bound + 1));
  r.info["bound"] = bound;
  return r;
}

/// T(a) = rho(pi^{-1}(a)^{-1}) a for a bijective 1-cocycle.
template <class Module>
TStructure t_from_cocycle(const OneCocycle<Module> &c, std::vector<IntVec> window)
{
  if (!c.inverse)
    throw InputError("the cocycle has no inverse; it must be bijective");
  require(cocycle_check(c));
  require(cocycle_bijectivity(c, window));
  auto cp = std::make_shared<const OneCocycle<Module>>(c);
  Signature sig = c.module.signature();
  return {sig,
          [cp](const IntVec &a) { return cp->module.act(cp->module.group().inv(cp->inverse(a)), a); },
          [cp](const IntVec &b) { return cp->pi(cp->module.group().inv(cp->inverse(-b))); }, std::move(window)};
}

/// (Z_m, *, rho) rebuilt from a T-structure on Z_m, with pi the identity.
struct CyclicBraceDatum {
  std::int64_t m = 1;
  std::vector<std::int64_t> rho;               // rho(a) is multiplication by rho[a]
  std::vector<std::vector<std::int64_t>> star; // star[a][b] = a * b
  std::uint64_t order_of_t = 1;
  bool order_divides_modulus = true;
  bool lift_sensitive = false;
  Report report;

  std::int64_t mul(std::int64_t a, std::int64_t b) const { return star[IntVec::reduce(a, m)][IntVec::reduce(b, m)]; }
};

inline void to_json(nlohmann::json &j, const CyclicBraceDatum &d)
{
  j = nlohmann::json{{"modulus", d.m},
                     {"rho", d.rho},
                     {"star", d.star},
                     {"order_of_T", d.order_of_t},
                     {"order_divides_modulus", d.order_divides_modulus},
                     {"lift_sensitive", d.lift_sensitive}};
}

namespace detail {
inline Report cyclic_datum_report(const CyclicBraceDatum &D)
{
  std::int64_t m = D.m;
  Report r("cyclic_brace_datum");
  auto add = [m](std::int64_t a, std::int64_t b) { return (a + b) % m; };
  auto sub = [m](std::int64_t a, std::int64_t b) { return ((a - b) % m + m) % m; };

  Report aut("rho_automorphism");
  for (std::int64_t a = 0; a < m && aut.holds; ++a) {
    ++aut.pairs_checked;
    if (std::gcd(D.rho[a], m) != 1 && m != 1)
      aut.fail({{"a", a}, {"rho(a)", D.rho[a]}});
  }
  r.add(std::move(aut));

  Report unit("star_identity");
  for (std::int64_t a = 0; a < m && unit.holds; ++a) {
    ++unit.pairs_checked;
    if (D.mul(0, a) != a || D.mul(a, 0) != a)
      unit.fail({{"a", a}, {"0*a", D.mul(0, a)}, {"a*0", D.mul(a, 0)}});
  }
  r.add(std::move(unit));

  Report inv("star_inverse");
  for (std::int64_t a = 0; a < m && inv.holds; ++a) {
    ++inv.pairs_checked;
    bool found = false;
    for (std::int64_t b = 0; b < m && !found; ++b)
      found = D.mul(a, b) == 0 && D.mul(b, a) == 0;
    if (!found)
      inv.fail({{"a", a}});
  }
  r.add(std::move(inv));

  Report assoc("star_associativity");
  for (std::int64_t a = 0; a < m && assoc.holds; ++a)
    for (std::int64_t b = 0; b < m && assoc.holds; ++b)
      for (std::int64_t c = 0; c < m && assoc.holds; ++c) {
        ++assoc.pairs_checked;
        if (D.mul(D.mul(a, b), c) != D.mul(a, D.mul(b, c)))
          assoc.fail({{"a", a}, {"b", b}, {"c", c}});
      }
  r.add(std::move(assoc));

  Report mod("rho_homomorphism");
  for (std::int64_t a = 0; a < m && mod.holds; ++a)
    for (std::int64_t b = 0; b < m && mod.holds; ++b) {
      ++mod.pairs_checked;
      if (D.rho[D.mul(a, b)] != D.rho[a] * D.rho[b] % m)
        mod.fail({{"a", a}, {"b", b}, {"rho(a*b)", D.rho[D.mul(a, b)]}, {"rho(a)rho(b)", D.rho[a] * D.rho[b] % m}});
    }
  r.add(std::move(mod));

  Report coc("identity_cocycle");
  for (std::int64_t a = 0; a < m && coc.holds; ++a)
    for (std::int64_t b = 0; b < m && coc.holds; ++b) {
      ++coc.pairs_checked;
      if (D.mul(a, b) != add(a, D.rho[a] * b % m))
        coc.fail({{"a", a}, {"b", b}});
    }
  r.add(std::move(coc));

  Report brace("brace_law");
  for (std::int64_t a = 0; a < m && brace.holds; ++a)
    for (std::int64_t b = 0; b < m && brace.holds; ++b)
      for (std::int64_t c = 0; c < m && brace.holds; ++c) {
        ++brace.pairs_checked;
        std::int64_t lhs = D.mul(a, add(b, c));
        std::int64_t rhs = add(sub(D.mul(a, b), a), D.mul(a, c));
        if (lhs != rhs)
          brace.fail({{"a", a}, {"b", b}, {"c", c}, {"lhs", lhs}, {"rhs", rhs}});
      }
  r.add(std::move(brace));
  return r;
}
} // namespace detail

/// rho(a) n = n T^{-T(a)}(1) and a * n = a + rho(a) n on Z_m, the exponent lifted to [0, m).
/// Throws CheckFailed when T fails the scaling law on k in [0, m) or the datum fails an axiom.
inline CyclicBraceDatum cyclic_reconstruct(const TStructure &T)
{
  if (T.sig.rank() != 1 || T.sig.modulus(0) < 1)
    throw InputError("cyclic reconstruction needs T on Z_m");
  std::int64_t m = T.sig.modulus(0);
  if (!T.inverse)
    throw InputError("cyclic reconstruction needs the inverse of T");
  TStructure full = T;
  full.window = enumerate_all(T.sig);
  require(tstruct_check(full, 0, m - 1));

  auto val = [&](std::int64_t x) { return IntVec(T.sig, {x}); };
  CyclicBraceDatum D;
  D.m = m;

  std::vector<std::int64_t> tab(m);
  for (std::int64_t a = 0; a < m; ++a)
    tab[a] = T(val(a))[0];
  std::vector<std::int64_t> cur(m);
  std::iota(cur.begin(), cur.end(), 0);
  D.order_of_t = 0;
  do {
    for (auto &x : cur)
      x = tab[x];
    ++D.order_of_t;
  } while (!std::all_of(cur.begin(), cur.end(), [&, i = std::int64_t{0}](std::int64_t x) mutable { return x == i++; }));
  D.order_divides_modulus = m % static_cast<std::int64_t>(D.order_of_t) == 0;

  D.rho.resize(m);
  for (std::int64_t a = 0; a < m; ++a) {
    std::int64_t lift = tab[a];
    D.rho[a] = T.power(val(1), -lift)[0];
    if (T.power(val(1), -(lift + m))[0] != D.rho[a])
      D.lift_sensitive = true;
  }
  D.star.assign(m, std::vector<std::int64_t>(m));
  for (std::int64_t a = 0; a < m; ++a)
    for (std::int64_t b = 0; b < m; ++b)
      D.star[a][b] = (a + b * D.rho[a]) % m;

  D.report = detail::cyclic_datum_report(D);
  D.report.info["order_of_T"] = D.order_of_t;
  D.report.info["order_divides_modulus"] = D.order_divides_modulus;
  D.report.info["lift_sensitive"] = D.lift_sensitive;
  require(D.report);
  return D;
}

} // namespace rrb
