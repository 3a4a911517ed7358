#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "check.hpp"
#include "error.hpp"
#include "group.hpp"
#include "intvec.hpp"
#include "module.hpp"
#include "parallel.hpp"
#include "perm.hpp"
#include "report.hpp"
#include "rota_baxter.hpp"

namespace rrb {

/// Values R(e_i) = sigma_i and R(-e_i) = sigma_bar_i of an operator on the permutation
/// module of S_n. A single tuple has sigma_bar = sigma.
struct SigmaTuple {
  std::size_t n = 0;
  std::vector<Perm> sigma;
  std::vector<Perm> sigma_bar;

  static SigmaTuple single(std::vector<Perm> s) { return pair(s, s); }

  static SigmaTuple pair(std::vector<Perm> s, std::vector<Perm> sb)
  {
    SigmaTuple t;
    t.n = s.size();
    if (t.n == 0 || t.n > kMaxRank)
      throw InputError("tuple length must be between 1 and " + std::to_string(kMaxRank));
    if (sb.size() != t.n)
      throw InputError("sigma and sigma_bar have different lengths");
    for (const auto &p : s)
      if (p.degree() != t.n)
        throw InputError("tuple entry of degree " + std::to_string(p.degree()) + ", expected " + std::to_string(t.n));
    for (const auto &p : sb)
      if (p.degree() != t.n)
        throw InputError("tuple entry of degree " + std::to_string(p.degree()) + ", expected " + std::to_string(t.n));
    t.sigma = std::move(s);
    t.sigma_bar = std::move(sb);
    return t;
  }

  bool is_single() const { return sigma == sigma_bar; }

  friend bool operator==(const SigmaTuple &, const SigmaTuple &) = default;
  friend bool operator<(const SigmaTuple &a, const SigmaTuple &b)
  {
    return std::tie(a.sigma, a.sigma_bar) < std::tie(b.sigma, b.sigma_bar);
  }
};

inline std::string tuple_str(const std::vector<Perm> &s)
{
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i)
    out += (i ? "," : "") + s[i].to_cycles();
  return out + ")";
}

inline nlohmann::json perms_json(const std::vector<Perm> &s)
{
  nlohmann::json a = nlohmann::json::array();
  for (const auto &p : s)
    a.push_back(p.images());
  return a;
}

inline void to_json(nlohmann::json &j, const SigmaTuple &t)
{
  if (t.is_single())
    j = perms_json(t.sigma);
  else
    j = nlohmann::json{{"sigma", perms_json(t.sigma)}, {"sigma_bar", perms_json(t.sigma_bar)}};
}

/// Reads an array of permutations (image arrays or cycle strings); the tuple length fixes n.
inline std::vector<Perm> perms_from_json(const nlohmann::json &j)
{
  if (!j.is_array() || j.empty())
    throw InputError("expected a non-empty array of permutations");
  std::vector<Perm> out;
  for (const auto &e : j)
    out.push_back(perm_from_json(e, j.size()));
  return out;
}

/// Accepts a bare array (single tuple) or {"sigma": [...], "sigma_bar": [...]}.
inline SigmaTuple sigma_tuple_from_json(const nlohmann::json &j)
{
  if (j.is_array())
    return SigmaTuple::single(perms_from_json(j));
  if (j.is_object() && j.contains("sigma")) {
    auto s = perms_from_json(j.at("sigma"));
    if (!j.contains("sigma_bar"))
      return SigmaTuple::single(std::move(s));
    return SigmaTuple::pair(std::move(s), perms_from_json(j.at("sigma_bar")));
  }
  throw InputError("unrecognized tuple format");
}

/// "(1 2),(1),(1 3)" or "((1 2),(1),(1 3))": cycle notation separated by commas at depth 0.
inline std::vector<Perm> parse_tuple(std::string_view text)
{
  std::string s(text);
  auto strip = [](std::string &x) {
    auto b = x.find_first_not_of(" \t");
    auto e = x.find_last_not_of(" \t");
    x = b == std::string::npos ? "" : x.substr(b, e - b + 1);
  };
  strip(s);
  if (s.size() >= 2 && s.front() == '(' && s[1] == '(' && s.back() == ')')
    s = s.substr(1, s.size() - 2);
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(')
      ++depth;
    if (c == ')')
      --depth;
    if (depth < 0)
      throw InputError("unbalanced parentheses in tuple");
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (depth != 0)
    throw InputError("unbalanced parentheses in tuple");
  parts.push_back(cur);
  std::vector<Perm> out;
  for (auto &p : parts) {
    strip(p);
    out.push_back(Perm::parse_cycles(p, parts.size()));
  }
  return out;
}

namespace detail {

// One equation A_a B_{A_a^{-1}(b)} = C_c D_{C_c^{-1}(d)}, or = 1 when `unit` is set.
// Families: false = sigma, true = sigma_bar.
struct TupleCondition {
  bool fa, fb;
  int a, b;
  bool unit;
  bool fc, fd;
  int c, d;
};

inline std::vector<TupleCondition> tuple_conditions(std::size_t n, bool pair)
{
  std::vector<TupleCondition> out;
  int m = static_cast<int>(n);
  for (int i = 0; i < m; ++i) {
    out.push_back({false, pair, i, i, true, false, false, 0, 0});
    if (pair)
      out.push_back({true, false, i, i, true, false, false, 0, 0});
  }
  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k < m; ++k) {
      out.push_back({false, false, j, k, false, false, false, k, j});
      if (pair)
        out.push_back({true, true, j, k, false, true, true, k, j});
    }
  if (pair)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        out.push_back({false, true, j, k, false, true, false, k, j});
  return out;
}

inline const char *condition_family(const TupleCondition &c)
{
  if (c.unit)
    return "unit";
  if (c.fa != c.fb)
    return "mixed";
  return c.fa ? "sigma_bar_compat" : "sigma_compat";
}

// Slot of (family, index): interleaved for pairs, plain index for single tuples.
inline int cond_slot(bool bar, int i, bool pair) { return pair ? 2 * i + (bar ? 1 : 0) : i; }

struct CondEval {
  const std::vector<Perm> *s;
  const std::vector<Perm> *sb;
  const Perm &get(bool bar, int i) const { return bar ? (*sb)[i] : (*s)[i]; }

  bool holds(const TupleCondition &c) const
  {
    const Perm &A = get(c.fa, c.a);
    Perm lhs = A * get(c.fb, A.inverse()(c.b));
    if (c.unit)
      return lhs.is_identity();
    const Perm &C = get(c.fc, c.c);
    return lhs == C * get(c.fd, C.inverse()(c.d));
  }
};

inline std::optional<nlohmann::json> first_violation(const std::vector<Perm> &s, const std::vector<Perm> &sb,
                                                     bool pair)
{
  if (s.size() != sb.size())
    throw InputError("sigma and sigma_bar have different lengths");
  for (const auto &p : s)
    if (p.degree() != s.size())
      throw InputError("inconsistent permutation degree in tuple");
  for (const auto &p : sb)
    if (p.degree() != s.size())
      throw InputError("inconsistent permutation degree in tuple");
  CondEval ev{&s, &sb};
  for (const auto &c : tuple_conditions(s.size(), pair))
    if (!ev.holds(c))
      return nlohmann::json{{"family", condition_family(c)}, {"j", c.a + 1}, {"k", c.b + 1}};
  return std::nullopt;
}

} // namespace detail

/// sigma_i sigma_{sigma_i^{-1}(i)} = 1 and sigma_j sigma_{sigma_j^{-1}(k)} = sigma_k sigma_{sigma_k^{-1}(j)}.
inline bool check_single_conditions(const std::vector<Perm> &s)
{
  return !detail::first_violation(s, s, false);
}

/// The unit, sigma-sigma, sigma_bar-sigma_bar and mixed compatibility families.
inline bool check_pair_conditions(const std::vector<Perm> &s, const std::vector<Perm> &sb)
{
  return !detail::first_violation(s, sb, true);
}

inline bool check_pair_conditions(const SigmaTuple &t) { return check_pair_conditions(t.sigma, t.sigma_bar); }

/// Report form of the pair conditions, naming the first violated family.
inline Report tuple_conditions_report(const SigmaTuple &t)
{
  Report r("tuple_conditions");
  bool pair = !t.is_single();
  r.pairs_checked = detail::tuple_conditions(t.n, pair).size();
  if (auto w = detail::first_violation(t.sigma, t.sigma_bar, pair))
    r.fail(*w);
  return r;
}

/// The operator determined by a tuple pair, evaluated by recursion on |v| = sum |v_i|:
/// R(v) = sigma_i R(sigma_i^{-1}(v - e_i)) if v_i > 0 and
/// R(v) = sigma_bar_i R(sigma_bar_i^{-1}(v + e_i)) if v_i < 0, with i the first nonzero
/// coordinate. Values are memoized in a table shared by copies and safe for concurrent use.
class RecursiveRBOp {
public:
  explicit RecursiveRBOp(SigmaTuple t) : s_(std::make_shared<State>())
  {
    if (auto w = detail::first_violation(t.sigma, t.sigma_bar, true))
      throw InputError("tuple violates the compatibility conditions: " + w->dump());
    s_->sig = Signature::free(t.n);
    for (std::size_t i = 0; i < t.n; ++i) {
      s_->sigma_inv.push_back(t.sigma[i].inverse());
      s_->sigma_bar_inv.push_back(t.sigma_bar[i].inverse());
    }
    s_->t = std::move(t);
  }

  const SigmaTuple &tuple() const { return s_->t; }
  Signature signature() const { return s_->sig; }

  std::size_t memo_size() const
  {
    std::shared_lock lock(s_->mu);
    return s_->memo.size();
  }

  Perm operator()(const IntVec &v) const
  {
    if (!(v.signature() == s_->sig))
      throw InputError("vector does not lie in Z^" + std::to_string(s_->t.n));
    return eval(v);
  }

private:
  struct State {
    SigmaTuple t;
    Signature sig;
    std::vector<Perm> sigma_inv, sigma_bar_inv;
    mutable std::shared_mutex mu;
    std::unordered_map<IntVec, Perm> memo;
  };

  Perm eval(const IntVec &v) const
  {
    std::size_t i = 0;
    while (i < v.rank() && v[i] == 0)
      ++i;
    if (i == v.rank())
      return Perm::identity(s_->t.n);
    {
      std::shared_lock lock(s_->mu);
      if (auto it = s_->memo.find(v); it != s_->memo.end())
        return it->second;
    }
    Perm out;
    if (v[i] > 0)
      out = s_->t.sigma[i] * eval(v.with(i, v[i] - 1).permuted(s_->sigma_inv[i]));
    else
      out = s_->t.sigma_bar[i] * eval(v.with(i, v[i] + 1).permuted(s_->sigma_bar_inv[i]));
    std::unique_lock lock(s_->mu);
    s_->memo.emplace(v, out);
    return out;
  }

  std::shared_ptr<State> s_;
};

/// R(v) for the operator of tuple t.
inline Perm extend(const SigmaTuple &t, const IntVec &v) { return RecursiveRBOp(t)(v); }

using PermModule = decltype(permutation_module(1));
using PermOperator = RelRBOp<PermModule, RecursiveRBOp>;

inline PermOperator perm_operator(const SigmaTuple &t, std::optional<DomainPolicy> policy = std::nullopt)
{
  return PermOperator(permutation_module(t.n), RecursiveRBOp(t), std::move(policy));
}

/// Every value the recursion can produce at v when each step may reduce any nonzero
/// coordinate. The operator is well defined exactly when each such set is a singleton.
class ReductionOracle {
public:
  explicit ReductionOracle(SigmaTuple t) : t_(std::move(t))
  {
    for (std::size_t i = 0; i < t_.n; ++i) {
      s_inv_.push_back(t_.sigma[i].inverse());
      sb_inv_.push_back(t_.sigma_bar[i].inverse());
    }
  }

  const std::set<Perm> &values(const IntVec &v)
  {
    if (auto it = memo_.find(v); it != memo_.end())
      return it->second;
    std::set<Perm> out;
    if (v.is_zero()) {
      out.insert(Perm::identity(t_.n));
    } else {
      for (std::size_t i = 0; i < v.rank(); ++i) {
        if (v[i] == 0)
          continue;
        bool pos = v[i] > 0;
        const Perm &p = pos ? t_.sigma[i] : t_.sigma_bar[i];
        IntVec rest = v.with(i, v[i] + (pos ? -1 : 1)).permuted(pos ? s_inv_[i] : sb_inv_[i]);
        for (const auto &q : values(rest))
          out.insert(p * q);
      }
    }
    return memo_.emplace(v, std::move(out)).first->second;
  }

private:
  SigmaTuple t_;
  std::vector<Perm> s_inv_, sb_inv_;
  std::unordered_map<IntVec, std::set<Perm>> memo_;
};

/// For every v with |v| <= radius, all reduction orders agree and match extend().
inline Report well_definedness_check(const SigmaTuple &t, std::int64_t radius)
{
  Report r("well_defined");
  r.info["radius"] = radius;
  ReductionOracle oracle(t);
  RecursiveRBOp R(t);
  for (const auto &v : enumerate_ball(Signature::free(t.n), radius)) {
    ++r.pairs_checked;
    const auto &vals = oracle.values(v);
    Perm fixed = R(v);
    if (vals.size() != 1 || *vals.begin() != fixed) {
      nlohmann::json all = nlohmann::json::array();
      for (const auto &p : vals)
        all.push_back(p.to_cycles());
      r.fail({{"v", v}, {"values", all}, {"extend", fixed.to_cycles()}});
      return r;
    }
  }
  return r;
}

namespace detail {

inline void tuple_odometer(std::size_t n, const std::vector<Perm> &perms, std::size_t first,
                           std::vector<std::vector<Perm>> &out)
{
  std::vector<std::size_t> idx(n, 0);
  idx[0] = first;
  std::vector<Perm> cur(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i)
      cur[i] = perms[idx[i]];
    if (check_single_conditions(cur))
      out.push_back(cur);
    std::size_t pos = n;
    while (pos > 1 && ++idx[pos - 1] == perms.size())
      idx[--pos] = 0;
    if (pos <= 1)
      return;
  }
}

// Depth-first search over slot assignments; each condition is tested as soon as every
// slot it refers to is assigned, at the depth of the last such slot.
class TupleSearch {
public:
  TupleSearch(std::size_t n, bool pair) : n_(n), pair_(pair), conds_(tuple_conditions(n, pair))
  {
    perms_ = all_perms(n);
    slots_ = pair ? 2 * n : n;
  }

  std::vector<std::vector<Perm>> run_from(std::size_t first)
  {
    std::vector<std::vector<Perm>> found;
    assign_.assign(slots_, Perm());
    set_.assign(slots_, false);
    assign_[0] = perms_[first];
    set_[0] = true;
    if (consistent(0))
      dfs(1, found);
    return found;
  }

  std::size_t first_choices() const { return perms_.size(); }
  std::size_t slots() const { return slots_; }

private:
  std::optional<int> dependent_slot(bool fam_base, int base, bool fam_dep, int arg) const
  {
    int bs = cond_slot(fam_base, base, pair_);
    if (!set_[bs])
      return std::nullopt;
    return cond_slot(fam_dep, assign_[bs].inverse()(arg), pair_);
  }

  bool consistent(int depth) const
  {
    for (const auto &c : conds_) {
      int hi = -1;
      bool ready = true;
      auto need = [&](int s) {
        if (!set_[s])
          ready = false;
        hi = std::max(hi, s);
      };
      need(cond_slot(c.fa, c.a, pair_));
      if (!ready)
        continue;
      need(*dependent_slot(c.fa, c.a, c.fb, c.b));
      if (!c.unit) {
        int cs = cond_slot(c.fc, c.c, pair_);
        need(cs);
        if (!ready)
          continue;
        need(*dependent_slot(c.fc, c.c, c.fd, c.d));
      }
      if (!ready || hi != depth)
        continue;
      if (!eval(c))
        return false;
    }
    return true;
  }

  bool eval(const TupleCondition &c) const
  {
    auto get = [&](bool bar, int i) -> const Perm & { return assign_[cond_slot(bar, i, pair_)]; };
    const Perm &A = get(c.fa, c.a);
    Perm lhs = A * get(c.fb, A.inverse()(c.b));
    if (c.unit)
      return lhs.is_identity();
    const Perm &C = get(c.fc, c.c);
    return lhs == C * get(c.fd, C.inverse()(c.d));
  }

  void dfs(std::size_t depth, std::vector<std::vector<Perm>> &found)
  {
    if (depth == slots_) {
      found.push_back(assign_);
      return;
    }
    for (const auto &p : perms_) {
      assign_[depth] = p;
      set_[depth] = true;
      if (consistent(static_cast<int>(depth)))
        dfs(depth + 1, found);
      set_[depth] = false;
    }
  }

  std::size_t n_;
  bool pair_;
  std::vector<TupleCondition> conds_;
  std::vector<Perm> perms_;
  std::size_t slots_;
  std::vector<Perm> assign_;
  std::vector<bool> set_;
};

inline std::vector<std::vector<Perm>> search_all(std::size_t n, bool pair)
{
  std::size_t firsts = all_perms(n).size();
  auto parts = parallel_map(firsts, [&](std::size_t f) { return TupleSearch(n, pair).run_from(f); });
  std::vector<std::vector<Perm>> out;
  for (auto &p : parts)
    out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  return out;
}

} // namespace detail

enum class SearchStrategy { Automatic, Scan, Backtrack };

/// All tuples in S_n^n satisfying the single-tuple conditions, in lexicographic order of
/// their image arrays. Automatic scans for n <= 4 and backtracks for n = 5.
inline std::vector<SigmaTuple> enumerate_single(std::size_t n, SearchStrategy how = SearchStrategy::Automatic)
{
  if (n < 1 || n > 5)
    throw InputError("enumeration supports 1 <= n <= 5");
  if (how == SearchStrategy::Automatic)
    how = n <= 4 ? SearchStrategy::Scan : SearchStrategy::Backtrack;
  if (how == SearchStrategy::Scan && n > 4)
    throw InputError("a direct scan is limited to n <= 4");
  std::vector<std::vector<Perm>> raw;
  if (how == SearchStrategy::Scan) {
    auto perms = all_perms(n);
    auto parts = parallel_map(perms.size(), [&](std::size_t f) {
      std::vector<std::vector<Perm>> part;
      detail::tuple_odometer(n, perms, f, part);
      return part;
    });
    for (auto &p : parts)
      raw.insert(raw.end(), p.begin(), p.end());
  } else {
    raw = detail::search_all(n, false);
  }
  std::vector<SigmaTuple> out;
  for (auto &s : raw)
    out.push_back(SigmaTuple::single(std::move(s)));
  std::sort(out.begin(), out.end());
  return out;
}

/// Ordered pairs (sigma, sigma_bar) with sigma != sigma_bar satisfying the pair conditions,
/// sorted lexicographically.
inline std::vector<SigmaTuple> enumerate_pairs(std::size_t n)
{
  if (n < 1 || n > 4)
    throw InputError("pair enumeration supports 1 <= n <= 4");
  std::vector<SigmaTuple> out;
  for (auto &slots : detail::search_all(n, true)) {
    std::vector<Perm> s, sb;
    for (std::size_t i = 0; i < n; ++i) {
      s.push_back(slots[2 * i]);
      sb.push_back(slots[2 * i + 1]);
    }
    if (s != sb)
      out.push_back(SigmaTuple::pair(std::move(s), std::move(sb)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Number of distinct unordered pairs {sigma, sigma_bar} among ordered pairs.
inline std::size_t unordered_pair_count(const std::vector<SigmaTuple> &pairs)
{
  std::set<std::pair<std::vector<Perm>, std::vector<Perm>>> seen;
  for (const auto &t : pairs)
    seen.insert(std::minmax(t.sigma, t.sigma_bar));
  return seen.size();
}

/// sigma_i -> w sigma_{w^{-1}(i)} w^{-1}.
inline SigmaTuple relabel(const SigmaTuple &t, const Perm &w)
{
  Perm wi = w.inverse();
  auto conj = [&](const std::vector<Perm> &s) {
    std::vector<Perm> out(t.n);
    for (std::size_t i = 0; i < t.n; ++i)
      out[i] = w * s[wi(static_cast<int>(i))] * wi;
    return out;
  };
  return SigmaTuple::pair(conj(t.sigma), conj(t.sigma_bar));
}

/// The subgroup of S_n generated by the entries of sigma.
inline ClosureResult<Perm> generated_subgroup(const std::vector<Perm> &gens)
{
  if (gens.empty())
    throw InputError("no generators");
  std::size_t n = gens.front().degree();
  std::size_t fact = 1;
  for (std::size_t k = 2; k <= n; ++k)
    fact *= k;
  return closure(SymmetricGroup{n}, std::span<const Perm>(gens), fact);
}

namespace detail {
inline Perm alternating_product(const Perm &first, const Perm &second, std::int64_t count)
{
  Perm two = first * second;
  Perm out = two.pow(count / 2);
  if (count % 2)
    out = out * first;
  return out;
}
} // namespace detail

/// Operators Z -> S_n for the sign representation. If r1 is odd, R(1) = r1 and R(-1) = rm1
/// must be odd involutions and R(k) is the alternating product r1 rm1 r1 ... (k factors) for
/// k > 0, rm1 r1 rm1 ... (-k factors) for k < 0. If r1 is even, R(k) = r1^k and rm1 is unused.
inline auto sign_rep_operator(std::size_t n, const Perm &r1, std::optional<Perm> rm1 = std::nullopt,
                              std::optional<DomainPolicy> policy = std::nullopt)
{
  if (r1.degree() != n || (rm1 && rm1->degree() != n))
    throw InputError("permutation degree does not match n");
  std::function<Perm(const IntVec &)> eval;
  if (r1.is_odd()) {
    if (!rm1)
      throw InputError("R(1) is odd, so R(-1) must be given");
    Perm a = r1, b = *rm1;
    if (!(a * a).is_identity() || !(b * b).is_identity())
      throw InputError("R(1) and R(-1) must be involutions");
    if (!b.is_odd())
      throw InputError("R(-1) must be an odd permutation");
    eval = [a, b](const IntVec &v) {
      std::int64_t k = v[0];
      return k >= 0 ? detail::alternating_product(a, b, k) : detail::alternating_product(b, a, -k);
    };
  } else {
    Perm a = r1;
    eval = [a](const IntVec &v) { return a.pow(v[0]); };
  }
  return RelRBOp(sign_module(n), std::move(eval), std::move(policy));
}

} // namespace rrb
