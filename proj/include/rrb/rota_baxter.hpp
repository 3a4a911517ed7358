#pragma once

#include <optional>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "check.hpp"
#include "domain.hpp"
#include "group.hpp"
#include "module.hpp"
#include "report.hpp"
#include "semidirect.hpp"

namespace rrb {

/// A map R: V -> G into a group acting on the abelian group V, together with the
/// domain policy used to check it. It is a relative Rota-Baxter operator of weight 0 when
///
///     R(u) R(v) = R(u + R(u).v)   for all u, v in V.
///
/// `Eval` is any callable IntVec -> G::element_type. It may memoize internally but must
/// then be safe to call from several threads.
template <class Module, class Eval>
class RelRBOp {
public:
  using module_type = Module;
  using group_type = typename Module::group_type;
  using element_type = typename Module::element_type;

  RelRBOp(Module m, Eval eval, std::optional<DomainPolicy> policy = std::nullopt)
      : module_(std::move(m)), eval_(std::move(eval)),
        policy_(policy ? std::move(*policy) : default_policy(module_.signature()))
  {
  }

  element_type operator()(const IntVec &v) const { return eval_(v); }

  const Module &module() const { return module_; }
  const group_type &group() const { return module_.group(); }
  Signature signature() const { return module_.signature(); }
  const Eval &evaluator() const { return eval_; }

  const DomainPolicy &policy() const { return policy_; }
  Domain domain() const { return make_domain(signature(), policy_); }

  RelRBOp with_policy(DomainPolicy p) const
  {
    RelRBOp copy = *this;
    copy.policy_ = std::move(p);
    return copy;
  }

  IntVec act(const element_type &g, const IntVec &v) const { return module_.act(g, v); }

  /// u |> v = R(u).v
  IntVec triangle(const IntVec &u, const IntVec &v) const { return act((*this)(u), v); }

  /// u * v = u + R(u).v, the descendent product.
  IntVec star(const IntVec &u, const IntVec &v) const { return u + triangle(u, v); }

  /// Inverse of u for the descendent product: -R(u)^{-1}.u
  IntVec dagger(const IntVec &u) const { return -act(group().inv((*this)(u)), u); }

private:
  Module module_;
  Eval eval_;
  DomainPolicy policy_;
};

template <class Module, class Eval>
RelRBOp(Module, Eval) -> RelRBOp<Module, Eval>;
template <class Module, class Eval>
RelRBOp(Module, Eval, std::optional<DomainPolicy>) -> RelRBOp<Module, Eval>;

/// The constant map onto the identity element.
template <class Module>
auto trivial_operator(Module m, std::optional<DomainPolicy> policy = std::nullopt)
{
  auto e = m.group().identity();
  return RelRBOp(std::move(m), [e](const IntVec &) { return e; }, std::move(policy));
}

/// (a, x) -> x on V = A x G for a projection_module.
template <class Module>
auto projection_operator(Module m, Signature g_sig, std::optional<DomainPolicy> policy = std::nullopt)
{
  std::size_t offset = m.signature().rank() - g_sig.rank();
  return RelRBOp(
      std::move(m), [=](const IntVec &v) { return slice(v, offset, g_sig); }, std::move(policy));
}

namespace detail {
template <class Op>
void require_domain(const Op &R, const Domain &d)
{
  if (d.points.empty() && d.pairs.empty())
    throw InputError("domain policy yields no elements");
  (void)R;
}
} // namespace detail

/// R(u)R(v) = R(u + R(u).v) on every pair the domain yields.
template <class Op>
Report verify_rrb(const Op &R)
{
  Domain d = R.domain();
  detail::require_domain(R, d);
  const auto &G = R.group();
  return detail::check_pairs(
      "rota_baxter", d, [&](const IntVec &u) { return std::pair{u, R(u)}; },
      [&](const auto &ctx, const IntVec &v) -> detail::Witness {
        const auto &[u, ru] = ctx;
        auto lhs = G.mul(ru, R(v));
        auto rhs = R(u + R.act(ru, v));
        if (lhs == rhs)
          return std::nullopt;
        return nlohmann::json{{"u", u}, {"v", v}, {"lhs", lhs}, {"rhs", rhs}};
      });
}

/// The consequences of the operator identity: R(0) = e, the two inversion formulas,
/// the equivalent form R(u)R(R(u)^{-1}.v) = R(u + v), and the commutation relation.
template <class Op>
Report verify_derived_identities(const Op &R)
{
  Domain d = R.domain();
  detail::require_domain(R, d);
  const auto &G = R.group();
  Report r("derived_identities");
  r.seed = d.seed;

  {
    Report unit("unit");
    unit.pairs_checked = 1;
    auto r0 = R(IntVec(R.signature()));
    if (!(r0 == G.identity()))
      unit.fail({{"R(0)", r0}});
    r.add(std::move(unit));
  }
  r.add(detail::check_points("minus", d, [&](const IntVec &u) -> detail::Witness {
    auto ru_inv = G.inv(R(u));
    auto lhs = R(-u);
    auto rhs = G.inv(R(R.act(ru_inv, u)));
    if (lhs == rhs)
      return std::nullopt;
    return nlohmann::json{{"u", u}, {"lhs", lhs}, {"rhs", rhs}};
  }));
  r.add(detail::check_points("inverse", d, [&](const IntVec &u) -> detail::Witness {
    auto ru_inv = G.inv(R(u));
    auto rhs = R(-R.act(ru_inv, u));
    if (ru_inv == rhs)
      return std::nullopt;
    return nlohmann::json{{"u", u}, {"lhs", ru_inv}, {"rhs", rhs}};
  }));
  r.add(detail::check_pairs(
      "equivalent_form", d, [&](const IntVec &u) { return std::pair{u, R(u)}; },
      [&](const auto &ctx, const IntVec &v) -> detail::Witness {
        const auto &[u, ru] = ctx;
        auto lhs = G.mul(ru, R(R.act(G.inv(ru), v)));
        auto rhs = R(u + v);
        if (lhs == rhs)
          return std::nullopt;
        return nlohmann::json{{"u", u}, {"v", v}, {"lhs", lhs}, {"rhs", rhs}};
      }));
  r.add(detail::check_pairs(
      "commutation", d, [&](const IntVec &u) { return std::pair{u, R(u)}; },
      [&](const auto &ctx, const IntVec &v) -> detail::Witness {
        const auto &[u, ru] = ctx;
        auto rv = R(v);
        auto lhs = G.mul(ru, R(R.act(G.inv(ru), v)));
        auto rhs = G.mul(rv, R(R.act(G.inv(rv), u)));
        if (lhs == rhs)
          return std::nullopt;
        return nlohmann::json{{"u", u}, {"v", v}, {"lhs", lhs}, {"rhs", rhs}};
      }));
  return r;
}

/// Whether (u, R(u)) (v, R(v)) lies on the graph of R.
template <class Op>
bool graph_product_in_graph(const Op &R, const IntVec &u, const IntVec &v)
{
  SemidirectGroup H(R.module());
  auto p = H.mul({u, R(u)}, {v, R(v)});
  return R(p.vec) == p.grp;
}

/// The graph {(u, R(u))} is a subgroup of V x| G: contains the unit, closed under
/// products and inverses on the yielded domain.
template <class Op>
Report graph_subgroup_check(const Op &R)
{
  Domain d = R.domain();
  detail::require_domain(R, d);
  SemidirectGroup H(R.module());
  Report r("graph_subgroup");
  r.seed = d.seed;
  {
    Report unit("graph_identity");
    unit.pairs_checked = 1;
    auto e = H.identity();
    if (!(R(e.vec) == e.grp))
      unit.fail({{"R(0)", R(e.vec)}});
    r.add(std::move(unit));
  }
  r.add(detail::check_pairs(
      "graph_product", d, [&](const IntVec &u) { return std::pair{u, R(u)}; },
      [&](const auto &ctx, const IntVec &v) -> detail::Witness {
        const auto &[u, ru] = ctx;
        auto p = H.mul({u, ru}, {v, R(v)});
        auto on_graph = R(p.vec);
        if (on_graph == p.grp)
          return std::nullopt;
        return nlohmann::json{{"u", u}, {"v", v}, {"product", p}, {"R(product.vec)", on_graph}};
      }));
  r.add(detail::check_points("graph_inverse", d, [&](const IntVec &u) -> detail::Witness {
    auto q = H.inv({u, R(u)});
    auto on_graph = R(q.vec);
    if (on_graph == q.grp)
      return std::nullopt;
    return nlohmann::json{{"u", u}, {"inverse", q}, {"R(inverse.vec)", on_graph}};
  }));
  return r;
}

/// (V, *) with u * v = u + R(u).v, unit 0 and inverse u^dagger = -R(u)^{-1}.u.
template <class Op>
class DescendentGroup {
public:
  using element_type = IntVec;

  explicit DescendentGroup(Op op) : op_(std::move(op)) {}

  const Op &op() const { return op_; }

  IntVec identity() const { return IntVec(op_.signature()); }
  IntVec mul(const IntVec &u, const IntVec &v) const { return op_.star(u, v); }
  IntVec inv(const IntVec &u) const { return op_.dagger(u); }
  std::vector<IntVec> elements() const { return enumerate_all(op_.signature()); }

  /// Left multiplication L_u v = u |> v.
  IntVec left(const IntVec &u, const IntVec &v) const { return op_.triangle(u, v); }

private:
  Op op_;
};

/// Builds the descendent group; throws CheckFailed if R is not an operator on its domain.
template <class Op>
DescendentGroup<Op> descendent(const Op &R)
{
  require(verify_rrb(R));
  return DescendentGroup<Op>(R);
}

/// Group axioms of (V, *), R: (V, *) -> G a homomorphism, and L an action of (V, *) on V
/// with (L_u)^{-1} = L_{u^dagger}.
template <class Op>
Report check_descendent(const DescendentGroup<Op> &D)
{
  const Op &R = D.op();
  Domain d = R.domain();
  detail::require_domain(R, d);
  const auto &G = R.group();
  IntVec zero(R.signature());
  Report r("descendent_group");
  r.seed = d.seed;

  r.add(detail::check_points("identity", d, [&](const IntVec &u) -> detail::Witness {
    if (D.mul(zero, u) == u && D.mul(u, zero) == u)
      return std::nullopt;
    return nlohmann::json{{"u", u}};
  }));
  r.add(detail::check_points("inverse", d, [&](const IntVec &u) -> detail::Witness {
    auto ud = D.inv(u);
    if (D.mul(u, ud) == zero && D.mul(ud, u) == zero)
      return std::nullopt;
    return nlohmann::json{{"u", u}, {"dagger", ud}};
  }));
  r.add(detail::check_triple_identity(
      "associativity", d, [&](const IntVec &u) { return std::pair{u, R(u)}; },
      [&](const auto &c, const IntVec &v) {
        IntVec uv = c.first + R.act(c.second, v);
        return std::tuple{c.first, c.second, v, R(v), uv, R(uv)};
      },
      [&](const auto &c, const IntVec &w) {
        const auto &[u, ru, v, rv, uv, ruv] = c;
        return std::pair{uv + R.act(ruv, w), u + R.act(ru, v + R.act(rv, w))};
      },
      [](const auto &c, const IntVec &w) {
        return nlohmann::json{{"u", std::get<0>(c)}, {"v", std::get<2>(c)}, {"w", w}};
      }));
  r.add(detail::check_pairs(
      "homomorphism", d, [&](const IntVec &u) { return std::pair{u, R(u)}; },
      [&](const auto &c, const IntVec &v) -> detail::Witness {
        auto lhs = R(c.first + R.act(c.second, v));
        auto rhs = G.mul(c.second, R(v));
        if (lhs == rhs)
          return std::nullopt;
        return nlohmann::json{{"u", c.first}, {"v", v}, {"lhs", lhs}, {"rhs", rhs}};
      }));
  r.add(detail::check_triple_identity(
      "left_action", d, [&](const IntVec &u) { return std::pair{u, R(u)}; },
      [&](const auto &c, const IntVec &v) {
        return std::tuple{c.first, c.second, v, R(v), R(c.first + R.act(c.second, v))};
      },
      [&](const auto &c, const IntVec &w) {
        const auto &[u, ru, v, rv, ruv] = c;
        return std::pair{R.act(ruv, w), R.act(ru, R.act(rv, w))};
      },
      [](const auto &c, const IntVec &w) {
        return nlohmann::json{{"u", std::get<0>(c)}, {"v", std::get<2>(c)}, {"w", w}};
      }));
  r.add(detail::check_pairs(
      "left_inverse", d, [&](const IntVec &u) { return std::pair{u, R(D.inv(u))}; },
      [&](const auto &c, const IntVec &w) -> detail::Witness {
        IntVec back = R.act(c.second, D.left(c.first, w));
        if (back == w)
          return std::nullopt;
        return nlohmann::json{{"u", c.first}, {"w", w}, {"L_dagger(L_u w)", back}};
      }));
  return r;
}

namespace detail {
template <class Op>
auto triangle_label()
{
  return [](const auto &c, const IntVec &z) {
    return nlohmann::json{{"x", std::get<0>(c)}, {"y", std::get<2>(c)}, {"z", z}};
  };
}
} // namespace detail

/// x |> (y + z) = x |> y + x |> z
template <class Op>
Report left_distributive_check(const Op &R, const Domain &d)
{
  return detail::check_triple_identity(
      "left_distributive", d, [&](const IntVec &x) { return std::pair{x, R(x)}; },
      [&](const auto &c, const IntVec &y) { return std::tuple{c.first, c.second, y, R.act(c.second, y)}; },
      [&](const auto &c, const IntVec &z) {
        const auto &[x, g, y, gy] = c;
        return std::pair{R.act(g, y + z), gy + R.act(g, z)};
      },
      detail::triangle_label<Op>());
}

/// x |> (y |> z) = (x + x |> y) |> z
template <class Op>
Report pregroup_associativity_check(const Op &R, const Domain &d)
{
  return detail::check_triple_identity(
      "pregroup_associativity", d, [&](const IntVec &x) { return std::pair{x, R(x)}; },
      [&](const auto &c, const IntVec &y) {
        const auto &[x, g] = c;
        return std::tuple{x, g, y, R(y), R(x + R.act(g, y))};
      },
      [&](const auto &c, const IntVec &z) {
        const auto &[x, g, y, h, k] = c;
        return std::pair{R.act(g, R.act(h, z)), R.act(k, z)};
      },
      detail::triangle_label<Op>());
}

/// (V, +, |>) is a pre-group: x |> (y + z) = x |> y + x |> z and
/// x |> (y |> z) = (x + x |> y) |> z.
template <class Op>
Report pregroup_check(const Op &R)
{
  Domain d = R.domain();
  detail::require_domain(R, d);
  Report r("pregroup");
  r.seed = d.seed;
  r.add(left_distributive_check(R, d));
  r.add(pregroup_associativity_check(R, d));
  return r;
}

} // namespace rrb
