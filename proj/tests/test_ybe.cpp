#include <gtest/gtest.h>

#include "rrb/rrb.hpp"
#include "support.hpp"

using namespace rrb;
using support::Naive;

namespace {

Perm cyc(const char *s, std::size_t n) { return Perm::parse_cycles(s, n); }

// r(x, y) = (sigma_x(y), tau_y(x)) from plain tables; nullopt when tau is not bijective.
struct NaiveSolution {
  std::vector<Naive> sigma, tau;

  static std::optional<NaiveSolution> make(const std::vector<Naive> &sigma)
  {
    std::size_t n = sigma.size();
    NaiveSolution s{sigma, {}};
    for (std::size_t y = 0; y < n; ++y) {
      Naive t(n);
      std::set<int> seen;
      for (std::size_t x = 0; x < n; ++x) {
        t[x] = support::naive_inverse(sigma[sigma[x][y]])[x];
        seen.insert(t[x]);
      }
      if (seen.size() != n)
        return std::nullopt;
      s.tau.push_back(t);
    }
    return s;
  }

  std::pair<int, int> r(int x, int y) const { return {sigma[x][y], tau[y][x]}; }

  bool involutive() const
  {
    int n = static_cast<int>(sigma.size());
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        auto [a, b] = r(x, y);
        if (r(a, b) != std::pair{x, y})
          return false;
      }
    return true;
  }

  bool braid() const
  {
    int n = static_cast<int>(sigma.size());
    using T = std::array<int, 3>;
    auto r1 = [&](T t) { auto [a, b] = r(t[0], t[1]); return T{a, b, t[2]}; };
    auto r2 = [&](T t) { auto [b, c] = r(t[1], t[2]); return T{t[0], b, c}; };
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          if (r1(r2(r1({x, y, z}))) != r2(r1(r2({x, y, z}))))
            return false;
    return true;
  }

  bool condition_iii() const
  {
    std::size_t n = sigma.size();
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        auto lhs = support::naive_compose(sigma[x], sigma[support::naive_inverse(sigma[x])[y]]);
        auto rhs = support::naive_compose(sigma[y], sigma[support::naive_inverse(sigma[y])[x]]);
        if (lhs != rhs)
          return false;
      }
    return true;
  }
};

bool subcheck(const Report &r, const char *name)
{
  const Report *s = r.find(name);
  EXPECT_NE(s, nullptr) << name;
  return s && s->holds;
}

}

TEST(SetYBE, Flip)
{
  auto r = SetYBE::flip(3);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      EXPECT_EQ(r(x, y), (std::pair{y, x}));
  EXPECT_TRUE(ybe_check(r).holds);
}

TEST(SetYBE, TauFromSigma)
{
  auto r = SetYBE::from_sigma(parse_tuple("((2 3),(1),(1))"));
  Naive s1 = {0, 2, 1}, id = {0, 1, 2};
  auto n = NaiveSolution::make({s1, id, id});
  ASSERT_TRUE(n);
  for (int y = 0; y < 3; ++y)
    EXPECT_EQ(r.tau()[y], support::to_perm(n->tau[y]));
  EXPECT_TRUE(ybe_check(r).holds);
}

TEST(SetYBE, ConstantTransposition)
{
  auto r = SetYBE::from_sigma({cyc("(1 2)", 2), cyc("(1 2)", 2)});
  auto n = NaiveSolution::make({{1, 0}, {1, 0}});
  ASSERT_TRUE(n);
  bool expected = n->involutive() && n->braid();
  EXPECT_EQ(n->braid(), n->condition_iii());
  auto rep = ybe_check(r);
  EXPECT_EQ(rep.holds, expected);
  EXPECT_EQ(subcheck(rep, "condition_iii_prime"), n->condition_iii());
}

TEST(SetYBE, EveryS3TableAgreesWithOracle)
{
  auto perms = support::naive_all(3);
  int bijective = 0;
  std::set<std::string> passing;
  for (const auto &a : perms)
    for (const auto &b : perms)
      for (const auto &c : perms) {
        std::vector<Naive> s{a, b, c};
        auto n = NaiveSolution::make(s);
        if (!n) {
          EXPECT_THROW(SetYBE::from_sigma(support::to_perms(s)), InputError);
          continue;
        }
        ++bijective;
        auto rep = ybe_check(SetYBE::from_sigma(support::to_perms(s)));
        EXPECT_EQ(subcheck(rep, "involutive"), n->involutive());
        EXPECT_EQ(subcheck(rep, "braid"), n->braid());
        EXPECT_EQ(subcheck(rep, "condition_iii_prime"), n->condition_iii());
        EXPECT_TRUE(subcheck(rep, "braid_criteria_agree"));
        EXPECT_EQ(rep.holds, n->involutive() && n->braid());
        if (rep.holds)
          passing.insert(tuple_str(support::to_perms(s)));
      }
  EXPECT_GT(bijective, 0);
  for (const auto &t : enumerate_single(3))
    EXPECT_TRUE(passing.count(tuple_str(t.sigma))) << tuple_str(t.sigma);
}

TEST(SetYBE, JsonAndValidation)
{
  auto r = SetYBE::from_sigma(parse_tuple("((1 2),(1 2),(1))"));
  nlohmann::json j = r;
  EXPECT_EQ(set_ybe_from_json(j), r);
  j["tau"][2] = nlohmann::json::array({3, 2, 1});
  EXPECT_THROW(set_ybe_from_json(j), InputError);
  EXPECT_THROW(set_ybe_from_json(nlohmann::json::parse(R"({"n":3,"sigma":[[1,2],[2,1]]})")), InputError);
  EXPECT_THROW(SetYBE::from_sigma({Perm::identity(2), cyc("(1 2)", 2)}), InputError);
  EXPECT_THROW(set_ybe_from_json(nlohmann::json::parse(R"({"tau":[[1]]})")), InputError);
}

TEST(Restrict, BasisSolutions)
{
  auto flip = restrict_to_basis(perm_operator(SigmaTuple::single(parse_tuple("((1),(1),(1))"))));
  EXPECT_EQ(flip, SetYBE::flip(3));
  auto r = restrict_to_basis(perm_operator(SigmaTuple::single(parse_tuple("((1 2),(1 2),(1))"))));
  EXPECT_EQ(r.sigma()[0], cyc("(1 2)", 3));
  EXPECT_EQ(r.sigma()[1], cyc("(1 2)", 3));
  EXPECT_TRUE(r.sigma()[2].is_identity());
  for (const auto &t : enumerate_single(3)) {
    auto s = restrict_to_basis(perm_operator(t));
    EXPECT_TRUE(ybe_check(s).holds) << tuple_str(t.sigma);
  }
}

TEST(Upsilon, BasisFormula)
{
  Signature sig = Signature::free(3);
  for (const auto &t : enumerate_single(3)) {
    auto R = perm_operator(t, Bounded{2, 32});
    EXPECT_TRUE(basis_upsilon_check(R, restrict_to_basis(R)).holds);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        int a = t.sigma[i](j);
        int b = t.sigma[a].inverse()(i);
        auto got = upsilon(R, IntVec::basis(sig, i), IntVec::basis(sig, j));
        EXPECT_EQ(got.first, IntVec::basis(sig, a));
        EXPECT_EQ(got.second, IntVec::basis(sig, b));
      }
    EXPECT_EQ(upsilon(R, IntVec(sig), IntVec(sig)), (std::pair{IntVec(sig), IntVec(sig)}));
  }
}

TEST(Upsilon, InvolutiveOnTheBox)
{
  auto R = perm_operator(SigmaTuple::single(parse_tuple("((1 3),(1),(1 3))")), Bounded{2, 32});
  auto rep = upsilon_check(R);
  EXPECT_TRUE(rep.holds);
  auto pts = enumerate_ball(R.signature(), 1);
  EXPECT_TRUE(upsilon_braid_check(R, pts).holds);
}

TEST(Upsilon, UnitriangularOperatorOnZ2)
{
  Signature v2 = Signature::free(2);
  auto M = ModuleAction(AdditiveGroup{Signature::free(1)}, v2, [v2](const IntVec &k, const IntVec &v) {
    return IntVec(v2, {v[0] + k[0] * v[1], v[1]});
  });
  for (std::int64_t s : {-2, 1, 3}) {
    RelRBOp R(M, [s](const IntVec &v) { return IntVec(Signature::free(1), {s * v[1]}); },
              std::optional<DomainPolicy>(Bounded{2, 32}));
    EXPECT_TRUE(verify_rrb(R).holds);
    EXPECT_TRUE(upsilon_check(R).holds);
    for (const auto &u : enumerate_box(v2, 2))
      for (const auto &v : enumerate_box(v2, 2)) {
        std::int64_t x = u[0], y = u[1], zz = v[0], w = v[1];
        auto got = upsilon(R, u, v);
        EXPECT_EQ(got.first, IntVec(v2, {zz + s * y * w, w}));
        EXPECT_EQ(got.second, IntVec(v2, {x - s * y * w, y}));
      }
  }
}

TEST(StructureGroup, FlipIsFreeAbelian)
{
  auto H = structure_group(SetYBE::flip(2), 4);
  EXPECT_FALSE(H.conflict);
  for (const auto &h : H.elements)
    EXPECT_TRUE(h.grp.is_identity());
  EXPECT_EQ(H.elements.size(), enumerate_ball(Signature::free(2), 4).size());
  for (const auto &[v, p] : H.rr_map)
    EXPECT_TRUE(p.is_identity());
}

TEST(StructureGroup, GeneratorsAndExtend)
{
  for (const auto &t : enumerate_single(3)) {
    auto r = restrict_to_basis(perm_operator(t));
    auto H = structure_group(r, 6);
    Signature sig = H.signature();
    for (std::size_t x = 0; x < 3; ++x)
      EXPECT_EQ(H.rr(IntVec::basis(sig, x)), r.sigma()[x]);
    RecursiveRBOp R(t);
    for (const auto &v : enumerate_ball(sig, 3))
      ASSERT_EQ(H.rr(v), R(v)) << tuple_str(t.sigma) << " at " << v.str();
  }
  auto H = structure_group(SetYBE::flip(2), 2);
  EXPECT_THROW(H.rr(IntVec(Signature::free(2), {5, 0})), InputError);
}

TEST(RoundTrip, AllS3Solutions)
{
  EXPECT_TRUE(roundtrip_check(SetYBE::flip(2)).holds);
  for (const auto &t : enumerate_single(3)) {
    auto r = restrict_to_basis(perm_operator(t));
    auto rep = roundtrip_check(r, 4);
    EXPECT_TRUE(rep.holds) << tuple_str(t.sigma);
    EXPECT_TRUE(subcheck(rep, "upsilon_on_basis"));
    EXPECT_TRUE(subcheck(rep, "brace_isomorphism"));
  }
}

TEST(RoundTrip, FourPointSolutions)
{
  auto all = enumerate_single(4);
  for (std::size_t i = 0; i < all.size(); i += 17) {
    auto r = restrict_to_basis(perm_operator(all[i]));
    EXPECT_TRUE(roundtrip_check(r, 3).holds) << tuple_str(all[i].sigma);
  }
}

TEST(Adjoint, FlipActsTrivially)
{
  auto Ad = adjoint_module(2);
  Signature sig = Signature::free(2);
  for (const auto &a : enumerate_box(sig, 2))
    for (const auto &b : enumerate_box(sig, 2))
      EXPECT_EQ(Ad.act({a, Perm::identity(2)}, b), b);
  EXPECT_TRUE(adjoint_cocycle_check(structure_group(SetYBE::flip(2), 4)).holds);
}

TEST(Adjoint, S3Solutions)
{
  for (const auto &t : enumerate_single(3)) {
    auto H = structure_group(restrict_to_basis(perm_operator(t)), 4);
    auto rep = adjoint_cocycle_check(H);
    EXPECT_TRUE(rep.holds) << tuple_str(t.sigma);
    EXPECT_TRUE(subcheck(rep, "inverse_is_operator"));
  }
}
