#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "check.hpp"
#include "domain.hpp"
#include "module.hpp"
#include "parallel.hpp"
#include "report.hpp"
#include "rota_baxter.hpp"

namespace rrb {

/// A brace (V, +, *) on an abelian group V, presented through its gamma function:
/// left(x) returns a callable y -> gamma(x)y and x * y = x + gamma(x)y. Evaluating
/// left(x) once per x lets triple checks avoid recomputing it.
template <class Left>
class BraceView {
public:
  using inverse_fn = std::function<IntVec(const IntVec &)>;

  BraceView(Signature sig, Left left, DomainPolicy policy, inverse_fn inv = {})
      : sig_(sig), left_(std::move(left)), policy_(std::move(policy)), inv_(std::move(inv))
  {
  }

  Signature signature() const { return sig_; }
  const DomainPolicy &policy() const { return policy_; }
  Domain domain() const { return make_domain(sig_, policy_); }

  auto left(const IntVec &x) const { return left_(x); }
  IntVec gamma(const IntVec &x, const IntVec &y) const { return left_(x)(y); }
  IntVec star(const IntVec &x, const IntVec &y) const { return x + gamma(x, y); }

  bool has_inverse() const { return static_cast<bool>(inv_) || sig_.is_finite(); }

  /// Inverse for *. Without a stored formula, found by search over a finite V.
  IntVec inverse(const IntVec &x) const
  {
    if (inv_)
      return inv_(x);
    if (!sig_.is_finite())
      throw InputError("brace inverse unknown on an infinite group");
    IntVec zero(sig_);
    auto l = left_(x);
    for (const auto &y : enumerate_all(sig_))
      if (x + l(y) == zero)
        return y;
    throw InputError("element has no inverse for the brace product");
  }

private:
  Signature sig_;
  Left left_;
  DomainPolicy policy_;
  inverse_fn inv_;
};

/// A brace from an explicit product x * y.
template <class Star>
auto brace_from_star(Signature sig, Star star, DomainPolicy policy,
                     std::function<IntVec(const IntVec &)> inv = {})
{
  auto left = [star](const IntVec &x) {
    return [star, x](const IntVec &y) { return star(x, y) - x; };
  };
  return BraceView<decltype(left)>(sig, std::move(left), std::move(policy), std::move(inv));
}

/// x * (y + z) = x * y + x * z - x on the yielded triples.
template <class Left>
Report brace_law_check(const BraceView<Left> &B)
{
  Domain d = B.domain();
  return detail::check_triple_identity(
      "brace_law", d, [&](const IntVec &x) { return std::pair{x, B.left(x)}; },
      [&](const auto &c, const IntVec &y) {
        const auto &[x, l] = c;
        return std::tuple{&x, &l, y, x + l(y)};
      },
      [&](const auto &c, const IntVec &z) {
        const auto &[xp, lp, y, xy] = c;
        const IntVec &x = *xp;
        return std::pair{x + (*lp)(y + z), xy + (x + (*lp)(z)) - x};
      },
      [](const auto &c, const IntVec &z) {
        return nlohmann::json{{"x", *std::get<0>(c)}, {"y", std::get<2>(c)}, {"z", z}};
      });
}

/// (V, *) is a group with unit 0, and the brace law holds.
template <class Left>
Report brace_check(const BraceView<Left> &B)
{
  Domain d = B.domain();
  IntVec zero(B.signature());
  Report r("brace");
  r.seed = d.seed;
  r.add(detail::check_points("mult_identity", d, [&](const IntVec &x) -> detail::Witness {
    if (B.star(x, zero) == x && B.star(zero, x) == x)
      return std::nullopt;
    return nlohmann::json{{"x", x}};
  }));
  if (B.has_inverse())
    r.add(detail::check_points("mult_inverse", d, [&](const IntVec &x) -> detail::Witness {
      IntVec xi = B.inverse(x);
      if (B.star(x, xi) == zero && B.star(xi, x) == zero)
        return std::nullopt;
      return nlohmann::json{{"x", x}, {"inverse", xi}};
    }));
  r.add(detail::check_triple_identity(
      "mult_associativity", d, [&](const IntVec &x) { return x; },
      [&](const IntVec &x, const IntVec &y) { return std::tuple{x, y, B.star(x, y), B.left(x)}; },
      [&](const auto &c, const IntVec &z) {
        const auto &[x, y, xy, lx] = c;
        return std::pair{B.star(xy, z), x + lx(B.star(y, z))};
      },
      [](const auto &c, const IntVec &z) {
        return nlohmann::json{{"x", std::get<0>(c)}, {"y", std::get<1>(c)}, {"z", z}};
      }));
  r.add(brace_law_check(B));
  return r;
}

namespace detail {
template <class Op>
struct OperatorLeft {
  std::shared_ptr<const Op> op;
  auto operator()(const IntVec &x) const
  {
    return [m = &op->module(), g = (*op)(x)](const IntVec &y) { return m->act(g, y); };
  }
};
} // namespace detail

/// The brace (V, +, *_R) without checking the brace law.
template <class Op>
auto brace_view(const Op &R)
{
  auto op = std::make_shared<const Op>(R);
  return BraceView(R.signature(), detail::OperatorLeft<Op>{op}, R.policy(),
                   [op](const IntVec &u) { return op->dagger(u); });
}

/// The brace (V, +, *_R). Throws CheckFailed if the brace law fails on R's domain.
template <class Op>
auto brace_from_rrb(const Op &R)
{
  auto B = brace_view(R);
  require(brace_law_check(B));
  return B;
}

/// The three laws quantified over triples, evaluated in one pass with shared
/// intermediate values: x |> (y + z) = x |> y + x |> z, x |> (y |> z) = (x + x |> y) |> z,
/// and the brace law for x * y = x + x |> y. Each law keeps its own verdict and count.
template <class Op>
Report operator_triple_laws(const Op &R)
{
  Domain d = R.domain();
  detail::require_domain(R, d);
  static constexpr const char *names[3] = {"left_distributive", "pregroup_associativity", "brace_law"};

  // Per-law first failure (witness and its 1-based position) within a run of triples.
  struct Outcome {
    std::array<std::optional<nlohmann::json>, 3> witness;
    std::array<std::uint64_t, 3> at{};
    std::uint64_t visited = 0;
    bool all_failed() const { return witness[0] && witness[1] && witness[2]; }
  };

  auto sides = [&](int law, const IntVec &x, const IntVec &y, const IntVec &z) {
    auto g = R(x);
    IntVec gz = R.act(g, z);
    IntVec gyz = R.act(g, y + z);
    IntVec xy = x + R.act(g, y);
    if (law == 0)
      return std::pair{gyz, R.act(g, y) + gz};
    if (law == 1)
      return std::pair{R.act(g, R.act(R(y), z)), R.act(R(xy), z)};
    return std::pair{x + gyz, xy + (x + gz) - x};
  };
  auto record = [&](Outcome &out, const bool *ok, const IntVec &x, const IntVec &y, const IntVec &z) {
    for (int i = 0; i < 3; ++i)
      if (!ok[i] && !out.witness[i]) {
        auto [lhs, rhs] = sides(i, x, y, z);
        out.witness[i] = nlohmann::json{{"x", x}, {"y", y}, {"z", z}, {"lhs", lhs}, {"rhs", rhs}};
        out.at[i] = out.visited;
      }
  };
  // One triple with R(x) = g, R(y) = h, R(x + g.y) = k precomputed.
  auto step_with = [&](Outcome &out, const IntVec &x, const auto &g, const IntVec &y, const IntVec &gy,
                       const IntVec &xy, const auto &k, const IntVec &z, const IntVec &gz, const IntVec &hz) {
    ++out.visited;
    IntVec gyz = R.act(g, y + z);
    bool ok[3] = {gyz == gy + gz, R.act(g, hz) == R.act(k, z), x + gyz == xy + (x + gz) - x};
    if (!(ok[0] && ok[1] && ok[2])) [[unlikely]]
      record(out, ok, x, y, z);
  };
  auto step = [&](Outcome &out, const IntVec &x, const auto &g, const IntVec &y, const auto &h, const auto &k,
                  const IntVec &gy, const IntVec &xy, const IntVec &z) {
    step_with(out, x, g, y, gy, xy, k, z, R.act(g, z), R.act(h, z));
  };

  std::vector<Outcome> runs;
  if (d.product && !d.points.empty()) {
    const auto &pts = d.points;
    const std::size_t n = pts.size();
    // R(y).z for all y, z, when the table is small enough to keep
    std::vector<IntVec> hz;
    if (n <= 1024) {
      hz.reserve(n * n);
      for (const auto &y : pts) {
        auto h = R(y);
        for (const auto &z : pts)
          hz.push_back(R.act(h, z));
      }
    }
    runs = parallel_map(n, [&](std::size_t xi) {
      Outcome out;
      const IntVec &x = pts[xi];
      auto g = R(x);
      std::vector<IntVec> gz;
      gz.reserve(n);
      for (const auto &z : pts)
        gz.push_back(R.act(g, z));
      for (std::size_t yi = 0; yi < n; ++yi) {
        const IntVec &y = pts[yi];
        IntVec gy = R.act(g, y);
        IntVec xy = x + gy;
        auto k = R(xy);
        if (hz.empty()) {
          auto h = R(y);
          for (std::size_t zi = 0; zi < n; ++zi)
            step_with(out, x, g, y, gy, xy, k, pts[zi], gz[zi], R.act(h, pts[zi]));
        } else {
          for (std::size_t zi = 0; zi < n; ++zi)
            step_with(out, x, g, y, gy, xy, k, pts[zi], gz[zi], hz[yi * n + zi]);
        }
        if (out.all_failed())
          break;
      }
      return out;
    });
  }
  {
    Outcome extra;
    for (const auto &[x, y, z] : d.triples) {
      auto g = R(x);
      IntVec gy = R.act(g, y);
      IntVec xy = x + gy;
      step(extra, x, g, y, R(y), R(xy), gy, xy, z);
      if (extra.all_failed())
        break;
    }
    runs.push_back(std::move(extra));
  }

  Report r("operator_triple_laws");
  r.seed = d.seed;
  for (int i = 0; i < 3; ++i) {
    Report law(names[i]);
    law.seed = d.seed;
    for (const auto &o : runs) {
      if (o.witness[i]) {
        law.pairs_checked += o.at[i];
        law.fail(*o.witness[i]);
        break;
      }
      law.pairs_checked += o.visited;
    }
    r.add(std::move(law));
  }
  return r;
}

/// The multiplicative group (V, *) of a brace.
template <class Left>
struct BraceGroup {
  using element_type = IntVec;
  std::shared_ptr<const BraceView<Left>> brace;

  IntVec identity() const { return IntVec(brace->signature()); }
  IntVec mul(const IntVec &a, const IntVec &b) const { return brace->star(a, b); }
  IntVec inv(const IntVec &a) const { return brace->inverse(a); }
  std::vector<IntVec> elements() const { return enumerate_all(brace->signature()); }
};

/// gamma(x)y = -x + x * y as an action of (V, *) on (V, +).
template <class Left>
auto gamma_function(const BraceView<Left> &B)
{
  auto bp = std::make_shared<const BraceView<Left>>(B);
  return ModuleAction(BraceGroup<Left>{bp}, B.signature(),
                      [bp](const IntVec &x, const IntVec &y) { return bp->gamma(x, y); });
}

/// gamma is an action by automorphisms: gamma(x*y) = gamma(x)gamma(y) and gamma(x) additive.
template <class Left>
Report gamma_check(const BraceView<Left> &B)
{
  Domain d = B.domain();
  Report r("gamma_function");
  r.seed = d.seed;
  auto label = [](const auto &c, const IntVec &z) {
    return nlohmann::json{{"x", *std::get<0>(c)}, {"y", std::get<2>(c)}, {"z", z}};
  };
  r.add(detail::check_triple_identity(
      "gamma_homomorphism", d, [&](const IntVec &x) { return std::pair{x, B.left(x)}; },
      [&](const auto &c, const IntVec &y) {
        const auto &[x, lx] = c;
        return std::tuple{&x, &lx, y, B.left(x + lx(y)), B.left(y)};
      },
      [&](const auto &c, const IntVec &z) {
        const auto &[xp, lxp, y, lxy, ly] = c;
        return std::pair{lxy(z), (*lxp)(ly(z))};
      },
      label));
  r.add(detail::check_triple_identity(
      "gamma_additive", d, [&](const IntVec &x) { return std::pair{x, B.left(x)}; },
      [&](const auto &c, const IntVec &y) { return std::tuple{&c.first, &c.second, y, c.second(y)}; },
      [&](const auto &c, const IntVec &z) {
        const auto &[xp, lxp, y, ly] = c;
        return std::pair{(*lxp)(y + z), ly + (*lxp)(z)};
      },
      label));
  return r;
}

/// gamma(x) = Phi(R(x)) pointwise on R's domain.
template <class Left, class Op>
Report gamma_matches_operator(const BraceView<Left> &B, const Op &R)
{
  Domain d = R.domain();
  return detail::check_pairs(
      "gamma_equals_action", d, [&](const IntVec &x) { return std::tuple{x, B.left(x), R(x)}; },
      [&](const auto &c, const IntVec &y) -> detail::Witness {
        const auto &[x, lx, g] = c;
        IntVec lhs = lx(y);
        IntVec rhs = R.act(g, y);
        if (lhs == rhs)
          return std::nullopt;
        return nlohmann::json{{"x", x}, {"y", y}, {"gamma", lhs}, {"action", rhs}};
      });
}

/// A map pi: G -> V with pi(xy) = pi(x) + x.pi(y). `elements` are the group elements
/// the check ranges over; `inverse`, when present, is a claimed two-sided inverse.
template <class Module>
struct OneCocycle {
  using element_type = typename Module::element_type;

  Module module;
  std::function<IntVec(const element_type &)> pi;
  std::vector<element_type> elements;
  std::function<element_type(const IntVec &)> inverse;
};

template <class Module>
Report cocycle_check(const OneCocycle<Module> &c)
{
  const auto &G = c.module.group();
  Report r("cocycle");
  {
    Report unit("cocycle_unit");
    unit.pairs_checked = 1;
    IntVec p = c.pi(G.identity());
    if (!p.is_zero())
      unit.fail({{"pi(e)", p}});
    r.add(std::move(unit));
  }
  Report law("cocycle_law");
  for (const auto &x : c.elements) {
    IntVec px = c.pi(x);
    for (const auto &y : c.elements) {
      ++law.pairs_checked;
      IntVec lhs = c.pi(G.mul(x, y));
      IntVec rhs = px + c.module.act(x, c.pi(y));
      if (!(lhs == rhs)) {
        law.fail({{"x", x}, {"y", y}, {"lhs", lhs}, {"rhs", rhs}});
        r.add(std::move(law));
        return r;
      }
    }
  }
  r.add(std::move(law));
  return r;
}

/// Checks inverse(pi(x)) = x on the listed elements and pi(inverse(v)) = v on `vecs`.
template <class Module>
Report cocycle_bijectivity(const OneCocycle<Module> &c, const std::vector<IntVec> &vecs)
{
  Report r("cocycle_bijective");
  if (!c.inverse) {
    r.fail({{"reason", "no inverse supplied"}});
    return r;
  }
  for (const auto &x : c.elements) {
    ++r.pairs_checked;
    if (!(c.inverse(c.pi(x)) == x)) {
      r.fail({{"x", x}, {"pi(x)", c.pi(x)}});
      return r;
    }
  }
  for (const auto &v : vecs) {
    ++r.pairs_checked;
    if (!(c.pi(c.inverse(v)) == v)) {
      r.fail({{"v", v}, {"inverse(v)", c.inverse(v)}});
      return r;
    }
  }
  return r;
}

/// R = pi^{-1}: V -> G. Throws InputError without an inverse and CheckFailed if the
/// cocycle law, bijectivity or the operator identity fails.
template <class Module>
auto rrb_from_cocycle(const OneCocycle<Module> &c, std::optional<DomainPolicy> policy = std::nullopt)
{
  if (!c.inverse)
    throw InputError("cocycle has no inverse; it is not known to be bijective");
  require(cocycle_check(c));
  RelRBOp R(c.module, c.inverse, std::move(policy));
  require(cocycle_bijectivity(c, R.domain().points));
  require(verify_rrb(R));
  return R;
}

/// The identity map of V as a 1-cocycle of (V, *) acting through gamma.
template <class Left>
auto identity_cocycle(const BraceView<Left> &B)
{
  auto m = gamma_function(B);
  using M = decltype(m);
  auto id = [](const IntVec &v) { return v; };
  return OneCocycle<M>{std::move(m), id, B.domain().points, id};
}

} // namespace rrb
