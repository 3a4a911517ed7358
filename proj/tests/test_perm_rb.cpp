#include <gtest/gtest.h>

#include "rrb/rrb.hpp"
#include "support.hpp"

using namespace rrb;
using support::Naive;

namespace {

std::set<std::string> as_strings(const std::vector<SigmaTuple> &ts)
{
  std::set<std::string> out;
  for (const auto &t : ts)
    out.insert(tuple_str(t.sigma));
  return out;
}

// Every tuple in S_n^n passing the naive single conditions.
std::set<std::string> naive_singles(std::size_t n)
{
  auto perms = support::naive_all(n);
  std::set<std::string> out;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::vector<Naive> s;
    for (auto i : idx)
      s.push_back(perms[i]);
    if (support::naive_single(s))
      out.insert(tuple_str(support::to_perms(s)));
    std::size_t k = n;
    while (k > 0 && ++idx[k - 1] == perms.size())
      idx[--k] = 0;
    if (k == 0)
      return out;
  }
}

std::set<std::pair<std::string, std::string>> naive_pairs(std::size_t n)
{
  auto perms = support::naive_all(n);
  std::vector<std::vector<Naive>> tuples;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::vector<Naive> s;
    for (auto i : idx)
      s.push_back(perms[i]);
    tuples.push_back(s);
    std::size_t k = n;
    while (k > 0 && ++idx[k - 1] == perms.size())
      idx[--k] = 0;
    if (k == 0)
      break;
  }
  std::set<std::pair<std::string, std::string>> out;
  for (const auto &s : tuples)
    for (const auto &b : tuples)
      if (s != b && support::naive_pair(s, b))
        out.insert({tuple_str(support::to_perms(s)), tuple_str(support::to_perms(b))});
  return out;
}

std::set<std::pair<std::string, std::string>> pair_strings(const std::vector<SigmaTuple> &ts)
{
  std::set<std::pair<std::string, std::string>> out;
  for (const auto &t : ts)
    out.insert({tuple_str(t.sigma), tuple_str(t.sigma_bar)});
  return out;
}

}

TEST(Conditions, SingleExamples)
{
  EXPECT_TRUE(check_single_conditions(parse_tuple("((1),(1),(1))")));
  EXPECT_TRUE(check_single_conditions(parse_tuple("((1),(1),(1 2))")));
  EXPECT_FALSE(check_single_conditions(parse_tuple("((1 2),(1),(1))")));
  EXPECT_TRUE(check_single_conditions(parse_tuple("((2 4),(1 3),(1 4 3 2),(1 2 3 4))")));
}

TEST(Conditions, PairExamples)
{
  auto c = parse_tuple("((1 2 3),(1 2 3),(1 2 3))"), cb = parse_tuple("((1 3 2),(1 3 2),(1 3 2))");
  EXPECT_TRUE(check_pair_conditions(c, cb));
  EXPECT_TRUE(check_pair_conditions(cb, c));
  auto s = parse_tuple("((1),(1),(1 2))");
  EXPECT_TRUE(check_pair_conditions(s, s));
  EXPECT_FALSE(check_pair_conditions(parse_tuple("((1),(1),(1))"), parse_tuple("((1 2),(1),(1))")));
}

TEST(Conditions, AgreeWithNaiveOracleOnAllOfS3)
{
  auto perms = support::naive_all(3);
  for (const auto &a : perms)
    for (const auto &b : perms)
      for (const auto &c : perms) {
        std::vector<Naive> s{a, b, c};
        ASSERT_EQ(check_single_conditions(support::to_perms(s)), support::naive_single(s));
      }
}

TEST(Conditions, ReportNamesFirstViolation)
{
  auto r = tuple_conditions_report(SigmaTuple::single(parse_tuple("((1 2),(1),(1))")));
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.counterexample);
  EXPECT_TRUE(tuple_conditions_report(SigmaTuple::single(parse_tuple("((1),(1))"))).holds);
}

TEST(Enumerate, MatchesNaiveScan)
{
  for (std::size_t n : {1u, 2u, 3u, 4u})
    EXPECT_EQ(as_strings(enumerate_single(n)), naive_singles(n)) << "n=" << n;
}

TEST(Enumerate, SmallCases)
{
  auto one = enumerate_single(1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_TRUE(one[0].sigma[0].is_identity());
  EXPECT_EQ(as_strings(enumerate_single(2)), (std::set<std::string>{"((1),(1))", "((1 2),(1 2))"}));
  EXPECT_THROW(enumerate_single(0), InputError);
  EXPECT_THROW(enumerate_single(6), InputError);
  EXPECT_THROW(enumerate_single(5, SearchStrategy::Scan), InputError);
}

TEST(Enumerate, GoldenThree)
{
  auto g = support::load_golden("sigma_n3.json");
  auto got = as_strings(enumerate_single(3));
  EXPECT_EQ(got.size(), 10u);
  EXPECT_EQ(got, support::golden_singles(g));
}

TEST(Enumerate, GoldenFour)
{
  auto g = support::load_golden("sigma_n4.json");
  auto got = enumerate_single(4);
  EXPECT_EQ(got.size(), 88u);
  EXPECT_EQ(g.at("count").get<std::size_t>(), 88u);
  EXPECT_EQ(as_strings(got), support::golden_singles(g));
}

TEST(Enumerate, StrategiesAgree)
{
  for (std::size_t n : {2u, 3u, 4u})
    EXPECT_EQ(enumerate_single(n, SearchStrategy::Scan), enumerate_single(n, SearchStrategy::Backtrack));
}

TEST(Enumerate, OutputIsSorted)
{
  auto t = enumerate_single(4);
  EXPECT_TRUE(std::is_sorted(t.begin(), t.end()));
}

TEST(Enumerate, ClosedUnderRelabelling)
{
  auto all = enumerate_single(3);
  std::set<SigmaTuple> set(all.begin(), all.end());
  for (const auto &t : all)
    for (const auto &w : all_perms(3))
      EXPECT_TRUE(set.count(relabel(t, w))) << tuple_str(t.sigma) << " by " << w.to_cycles();
}

TEST(Pairs, MatchNaiveScan)
{
  EXPECT_TRUE(enumerate_pairs(1).empty());
  EXPECT_EQ(pair_strings(enumerate_pairs(2)), naive_pairs(2));
  EXPECT_EQ(pair_strings(enumerate_pairs(3)), naive_pairs(3));
}

TEST(Pairs, GoldenThree)
{
  auto g = support::load_golden("sigma_n3.json");
  std::set<std::pair<std::string, std::string>> want;
  for (const auto &p : g.at("pairs"))
    want.insert({tuple_str(parse_tuple(p.at("sigma").get<std::string>())),
                 tuple_str(parse_tuple(p.at("sigma_bar").get<std::string>()))});
  auto got = enumerate_pairs(3);
  EXPECT_EQ(pair_strings(got), want);
  EXPECT_EQ(unordered_pair_count(got), 1u);
}

TEST(Extend, BaseValues)
{
  for (const auto &t : enumerate_single(3)) {
    Signature sig = Signature::free(3);
    EXPECT_TRUE(extend(t, IntVec(sig)).is_identity());
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_EQ(extend(t, IntVec::basis(sig, i)), t.sigma[i]);
      EXPECT_EQ(extend(t, IntVec::basis(sig, i, -1)), t.sigma_bar[i]);
    }
  }
  auto p = enumerate_pairs(3).front();
  EXPECT_EQ(extend(p, IntVec::basis(Signature::free(3), 1, -1)), p.sigma_bar[1]);
}

TEST(Extend, ReductionOrdersAgree)
{
  // R(e_j + e_k) reduced at j is sigma_j R(e_{sigma_j^{-1}(k)}), at k it is sigma_k R(e_{sigma_k^{-1}(j)})
  Signature sig = Signature::free(3);
  for (const auto &t : enumerate_single(3)) {
    for (int j = 0; j < 3; ++j)
      for (int k = j + 1; k < 3; ++k) {
        Perm via_j = t.sigma[j] * t.sigma[t.sigma[j].inverse()(k)];
        Perm via_k = t.sigma[k] * t.sigma[t.sigma[k].inverse()(j)];
        EXPECT_EQ(via_j, via_k);
        EXPECT_EQ(extend(t, IntVec::basis(sig, j) + IntVec::basis(sig, k)), via_j);
      }
    auto r = well_definedness_check(t, 4);
    EXPECT_TRUE(r.holds) << tuple_str(t.sigma);
    EXPECT_EQ(r.pairs_checked, enumerate_ball(sig, 4).size());
  }
  for (const auto &t : enumerate_pairs(3))
    EXPECT_TRUE(well_definedness_check(t, 4).holds);
}

TEST(Extend, RejectsInvalidTuple)
{
  EXPECT_THROW(RecursiveRBOp(SigmaTuple::single(parse_tuple("((1 2),(1),(1))"))), InputError);
  EXPECT_THROW(SigmaTuple::single({Perm::identity(3)}), InputError);
  RecursiveRBOp R(SigmaTuple::single(parse_tuple("((1),(1))")));
  EXPECT_THROW(R(IntVec(Signature::free(3))), InputError);
}

TEST(Operators, AllVerifyOnTheBox)
{
  for (const auto &t : enumerate_single(3)) {
    auto R = perm_operator(t, Bounded{3});
    EXPECT_TRUE(verify_rrb(R).holds) << tuple_str(t.sigma);
  }
  for (const auto &t : enumerate_pairs(3))
    EXPECT_TRUE(verify_rrb(perm_operator(t, Bounded{3})).holds);
}

TEST(Operators, SampleOfFour)
{
  auto all = enumerate_single(4);
  for (std::size_t i = 0; i < all.size(); i += 11)
    EXPECT_TRUE(verify_rrb(perm_operator(all[i], Bounded{1, 64})).holds) << tuple_str(all[i].sigma);
}

TEST(Json, TupleRoundTrip)
{
  auto t = SigmaTuple::single(parse_tuple("((2 3),(1),(1))"));
  nlohmann::json j = t;
  EXPECT_EQ(sigma_tuple_from_json(j), t);
  auto p = enumerate_pairs(3).front();
  nlohmann::json jp = p;
  EXPECT_EQ(sigma_tuple_from_json(jp), p);
  EXPECT_EQ(sigma_tuple_from_json(nlohmann::json::parse("[[1,3,2],[1,2,3],[1,2,3]]")), t);
  EXPECT_THROW(sigma_tuple_from_json(nlohmann::json::parse("[]")), InputError);
  EXPECT_THROW(parse_tuple("((1 2),(1)"), InputError);
}

TEST(Subgroup, DihedralExample)
{
  auto s = parse_tuple("((2 4),(1 3),(1 4 3 2),(1 2 3 4))");
  ASSERT_TRUE(check_single_conditions(s));
  auto H = generated_subgroup(s);
  auto f = fingerprint(SymmetricGroup{4}, std::span<const Perm>(H.elements));
  EXPECT_EQ(f, (Fingerprint{8, false, {1, 2, 2, 2, 2, 2, 4, 4}}));
  EXPECT_TRUE(verify_rrb(perm_operator(SigmaTuple::single(s), Bounded{2})).holds);
}
