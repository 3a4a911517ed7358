#include <gtest/gtest.h>

#include "rrb/rrb.hpp"
#include "support.hpp"

using namespace rrb;

namespace {

Perm cyc(const char *s, std::size_t n) { return Perm::parse_cycles(s, n); }

}

TEST(Perm, ComposeAppliesRightFactorFirst)
{
  Perm p = cyc("(1 2)", 3), q = cyc("(2 3)", 3);
  support::Naive np = {1, 0, 2}, nq = {0, 2, 1};
  auto expect = support::naive_compose(np, nq);
  EXPECT_EQ((p * q).images(), (std::vector<int>{expect[0] + 1, expect[1] + 1, expect[2] + 1}));
  EXPECT_EQ((p * q).images(), (std::vector<int>{2, 3, 1}));
  EXPECT_EQ((p * q).to_cycles(), "(1 2 3)");
}

TEST(Perm, IdentityAndInverse)
{
  Perm id = Perm::identity(3), t = cyc("(1 2)", 3);
  EXPECT_EQ(id * t, t);
  for (const auto &p : all_perms(4)) {
    EXPECT_TRUE((p * p.inverse()).is_identity());
    EXPECT_TRUE((p.inverse() * p).is_identity());
  }
}

TEST(Perm, ParseAndPrint)
{
  EXPECT_EQ(cyc("(1 3 2)", 3), cyc("(132)", 3));
  EXPECT_EQ(cyc("(1,3,2)", 3), cyc("(2 1 3)", 3));
  EXPECT_EQ(cyc("(1 2)(3 4)", 4).images(), (std::vector<int>{2, 1, 4, 3}));
  EXPECT_EQ(Perm::identity(3).to_cycles(), "(1)");
  EXPECT_EQ(cyc("(3 1 4 2)", 4).to_cycles(), "(1 4 2 3)");
}

TEST(Perm, RejectsBadInput)
{
  EXPECT_THROW(Perm::from_images({1, 1, 3}), InputError);
  EXPECT_THROW(Perm::from_images({0, 1}), InputError);
  EXPECT_THROW(cyc("(1 2)", 3) * Perm::identity(2), InputError);
  EXPECT_THROW(cyc("(1 5)", 3), InputError);
}

TEST(Perm, JsonForms)
{
  Perm p = cyc("(1 2)", 3);
  nlohmann::json j = p;
  EXPECT_EQ(j, nlohmann::json::parse(R"({"n":3,"images":[2,1,3]})"));
  EXPECT_EQ(perm_from_json(j), p);
  EXPECT_EQ(perm_from_json(nlohmann::json::array({2, 1, 3})), p);
  EXPECT_EQ(perm_from_json("(1 2)", 3), p);
  EXPECT_THROW(perm_from_json(nlohmann::json::parse(R"({"n":4,"images":[2,1,3]})")), InputError);
}

TEST(Perm, SignAndOrder)
{
  EXPECT_EQ(cyc("(1 2)", 3).sign(), -1);
  EXPECT_EQ(cyc("(1 2 3)", 3).sign(), 1);
  EXPECT_EQ(cyc("(1 2)(3 4 5)", 5).order(), 6u);
  EXPECT_EQ(cyc("(1 2 3)", 3).pow(-1), cyc("(1 3 2)", 3));
  EXPECT_EQ(cyc("(1 2 3)", 3).pow(4), cyc("(1 2 3)", 3));
}

TEST(IntVec, ReductionAndEquality)
{
  Signature sig({0, 3, 2});
  IntVec a(sig, {5, 4, 3}), b(sig, {5, 1, 1});
  EXPECT_EQ(a, b);
  EXPECT_TRUE((a + (-a)).is_zero());
  EXPECT_EQ(a - b, IntVec(sig));
  EXPECT_EQ(3 * IntVec(sig, {1, 1, 1}), IntVec(sig, {3, 0, 1}));
  EXPECT_THROW(IntVec(sig, {1, 2}), InputError);
  EXPECT_THROW(a + IntVec(Signature::free(3)), InputError);
}

TEST(IntVec, JsonRoundTrip)
{
  IntVec v(Signature::free(3), {2, 0, -1});
  nlohmann::json j = v;
  EXPECT_EQ(j, nlohmann::json::parse(R"({"moduli":[0,0,0],"entries":{"1":2,"3":-1}})"));
  EXPECT_EQ(intvec_from_json(j), v);
  EXPECT_THROW(intvec_from_json(nlohmann::json::parse(R"({"moduli":[0],"entries":{"2":1}})")), InputError);
}

TEST(IntVec, Enumerations)
{
  EXPECT_EQ(enumerate_all(Signature({3, 2})).size(), 6u);
  EXPECT_EQ(enumerate_box(Signature::free(2), 1).size(), 9u);
  EXPECT_EQ(enumerate_ball(Signature::free(2), 2).size(), 13u);
  EXPECT_THROW(enumerate_all(Signature::free(1)), InputError);
}

TEST(PermAct, MovesBasisVectors)
{
  Signature sig = Signature::free(3);
  auto M = permutation_module(3);
  Perm w = cyc("(1 2 3)", 3);
  EXPECT_EQ(M.act(w, IntVec::basis(sig, 0)), IntVec::basis(sig, 1));
  IntVec v(sig, {4, -1, 7});
  EXPECT_EQ(M.act(Perm::identity(3), v), v);
  EXPECT_EQ(M.act(w, M.act(w.inverse(), v)), v);
  EXPECT_THROW(M.act(Perm::identity(2), v), InputError);
}

TEST(Semidirect, ProductFormula)
{
  Signature sig = Signature::free(3);
  SemidirectGroup G(permutation_module(3));
  SemidirectElem<Perm> a{IntVec::basis(sig, 0), cyc("(1 2)", 3)};
  SemidirectElem<Perm> b{IntVec::basis(sig, 0), Perm::identity(3)};
  auto c = G.mul(a, b);
  EXPECT_EQ(c.vec, IntVec(sig, {1, 1, 0}));
  EXPECT_EQ(c.grp, cyc("(1 2)", 3));
  EXPECT_EQ(G.mul(G.identity(), c), c);
  EXPECT_EQ(G.mul(c, G.inv(c)), G.identity());
}

TEST(Semidirect, SampledAxioms)
{
  SemidirectGroup G(permutation_module(3));
  Rng rng(kDefaultSeed);
  auto perms = all_perms(3);
  std::vector<SemidirectElem<Perm>> elems;
  for (int i = 0; i < 11; ++i)
    elems.push_back({detail::random_vec(Signature::free(3), rng, 5), perms[rng.uniform(0, 5)]});
  // 11^3 = 1331 triples
  auto r = check_group_axioms(G, std::span<const SemidirectElem<Perm>>(elems));
  EXPECT_TRUE(r.holds);
  EXPECT_GE(r.pairs_checked, 1000u);
  for (const auto &x : elems) {
    auto inv = G.inv(x);
    EXPECT_EQ(inv.grp, x.grp.inverse());
    EXPECT_EQ(inv.vec, -x.vec.permuted(x.grp.inverse()));
  }
}

TEST(GroupAxioms, Exhaustive)
{
  SymmetricGroup s4{4};
  auto e4 = s4.elements();
  EXPECT_TRUE(check_group_axioms(s4, std::span<const Perm>(e4)).holds);
  AdditiveGroup a{Signature({4, 2})};
  auto ea = a.elements();
  EXPECT_TRUE(check_group_axioms(a, std::span<const IntVec>(ea)).holds);
}

TEST(ModuleAxioms, StandardModules)
{
  auto perms = all_perms(3);
  auto box = enumerate_box(Signature::free(3), 1);
  EXPECT_TRUE(check_module_axioms(permutation_module(3), std::span<const Perm>(perms), std::span<const IntVec>(box)).holds);
  auto line = enumerate_box(Signature::free(1), 3);
  EXPECT_TRUE(check_module_axioms(sign_module(3), std::span<const Perm>(perms), std::span<const IntVec>(line)).holds);

  auto pm = power_module(3, 2, 2);
  auto g = enumerate_all(Signature::cyclic(2));
  auto v = enumerate_all(pm.signature());
  EXPECT_TRUE(check_module_axioms(pm, std::span<const IntVec>(g), std::span<const IntVec>(v)).holds);

  auto chi = character_module(true);
  EXPECT_TRUE(check_module_axioms(chi, std::span<const IntVec>(line), std::span<const IntVec>(line)).holds);
}

TEST(ModuleAxioms, DetectsBrokenAction)
{
  auto bad = ModuleAction(SymmetricGroup{2}, Signature::free(1), [](const Perm &w, const IntVec &v) {
    return w.is_identity() ? v : 2 * v;
  });
  auto perms = all_perms(2);
  auto line = enumerate_box(Signature::free(1), 1);
  auto r = check_module_axioms(bad, std::span<const Perm>(perms), std::span<const IntVec>(line));
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.counterexample);
  EXPECT_EQ((*r.counterexample)["axiom"], "compatibility");
}

TEST(PowerModule, RejectsBadParameters)
{
  EXPECT_THROW(power_module(3, 2, 3), InputError);
  EXPECT_THROW(power_module(4, 2, 2), InputError);
  EXPECT_THROW(power_module(7, 2, 2), InputError);
  EXPECT_NO_THROW(power_module(7, 3, 2));
}

TEST(Closure, SmallCases)
{
  SymmetricGroup s2{2};
  std::vector<Perm> none{Perm::identity(2)};
  EXPECT_EQ(closure(s2, std::span<const Perm>(none), 3).elements.size(), 1u);
  std::vector<Perm> swap{cyc("(1 2)", 2)};
  auto c = closure(s2, std::span<const Perm>(swap), 5);
  EXPECT_EQ(c.elements.size(), 2u);
  EXPECT_TRUE(c.stabilized);
  AdditiveGroup z{Signature::free(1)};
  std::vector<IntVec> one{IntVec(Signature::free(1), {1})};
  auto zc = closure(z, std::span<const IntVec>(one), 4);
  EXPECT_EQ(zc.elements.size(), 9u);
  EXPECT_FALSE(zc.stabilized);
  EXPECT_THROW(closure(s2, std::span<const Perm>(swap), 0), InputError);
}

TEST(Closure, DihedralSubgroup)
{
  auto gens = parse_tuple("((2 4),(1 3),(1 4 3 2),(1 2 3 4))");
  auto H = generated_subgroup(gens);
  auto f = fingerprint(SymmetricGroup{4}, std::span<const Perm>(H.elements));
  EXPECT_EQ(f.order, 8u);
  EXPECT_FALSE(f.abelian);
  EXPECT_EQ(f.element_orders, (std::vector<std::size_t>{1, 2, 2, 2, 2, 2, 4, 4}));
}

TEST(Fingerprint, SeparatesOrderEightGroups)
{
  AdditiveGroup z8{Signature::cyclic(8)}, z42{Signature({4, 2})}, z222{Signature({2, 2, 2})};
  auto f8 = fingerprint(z8), f42 = fingerprint(z42), f222 = fingerprint(z222);
  EXPECT_NE(f8, f42);
  EXPECT_NE(f42, f222);
  EXPECT_TRUE(f8.abelian);
}

TEST(Threads, ResultsIndependentOfThreadCount)
{
  set_max_threads(1);
  auto one = enumerate_single(4);
  auto r1 = nlohmann::json(verify_rrb(perm_operator(one[37], Bounded{2}))).dump();
  set_max_threads(4);
  auto four = enumerate_single(4);
  auto r4 = nlohmann::json(verify_rrb(perm_operator(four[37], Bounded{2}))).dump();
  set_max_threads(std::max(1u, std::thread::hardware_concurrency()));
  EXPECT_EQ(one, four);
  EXPECT_EQ(r1, r4);
}
