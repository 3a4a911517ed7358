#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "error.hpp"
#include "report.hpp"

namespace rrb::bch {

using Rational = boost::multiprecision::cpp_rational;
/// Generator indices, 0-based.
using Word = std::vector<std::uint8_t>;

/// Degree first, then lexicographic.
struct WordOrder {
  bool operator()(const Word &a, const Word &b) const
  {
    if (a.size() != b.size())
      return a.size() < b.size();
    return a < b;
  }
};

inline std::string rational_str(const Rational &q)
{
  return q.str();
}

inline std::string word_str(const Word &w)
{
  if (w.empty())
    return "1";
  std::string s;
  for (auto g : w)
    s += (s.empty() ? "x" : " x") + std::to_string(g + 1);
  return s;
}

/// Noncommutative polynomial in n generators, truncated above degree D.
class NCPoly {
public:
  using Terms = std::map<Word, Rational, WordOrder>;

  NCPoly(std::size_t gens, std::size_t degree) : n_(gens), d_(degree)
  {
    if (gens < 1 || gens > 9)
      throw InputError("generator count must be between 1 and 9");
  }

  static NCPoly constant(std::size_t gens, std::size_t degree, Rational c)
  {
    NCPoly p(gens, degree);
    p.add_term({}, c);
    return p;
  }

  static NCPoly generator(std::size_t gens, std::size_t degree, std::size_t i)
  {
    if (i >= gens)
      throw InputError("generator index out of range");
    NCPoly p(gens, degree);
    p.add_term(Word{static_cast<std::uint8_t>(i)}, 1);
    return p;
  }

  std::size_t gens() const { return n_; }
  std::size_t degree() const { return d_; }
  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const Word &w) const
  {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational constant_term() const { return coefficient({}); }

  void add_term(const Word &w, const Rational &c)
  {
    if (w.size() > d_ || c == 0)
      return;
    for (auto g : w)
      if (g >= n_)
        throw InputError("word uses a generator out of range");
    auto [it, fresh] = terms_.emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0)
        terms_.erase(it);
    }
  }

  /// The degree-k part.
  NCPoly homogeneous(std::size_t k) const
  {
    NCPoly p(n_, d_);
    for (const auto &[w, c] : terms_)
      if (w.size() == k)
        p.terms_.emplace(w, c);
    return p;
  }

  NCPoly operator+(const NCPoly &o) const
  {
    same_shape(o);
    NCPoly p = *this;
    for (const auto &[w, c] : o.terms_)
      p.add_term(w, c);
    return p;
  }

  NCPoly operator-() const
  {
    NCPoly p = *this;
    for (auto &[w, c] : p.terms_)
      c = -c;
    return p;
  }

  NCPoly operator-(const NCPoly &o) const { return *this + (-o); }

  friend NCPoly operator*(const Rational &k, const NCPoly &f)
  {
    NCPoly p(f.n_, f.d_);
    if (k == 0)
      return p;
    for (const auto &[w, c] : f.terms_)
      p.terms_.emplace(w, k * c);
    return p;
  }

  /// Concatenation product, truncated.
  NCPoly operator*(const NCPoly &o) const
  {
    same_shape(o);
    NCPoly p(n_, d_);
    for (const auto &[u, a] : terms_)
      for (const auto &[v, b] : o.terms_) {
        if (u.size() + v.size() > d_)
          break; // o's terms are ordered by degree
        Word w = u;
        w.insert(w.end(), v.begin(), v.end());
        p.add_term(w, a * b);
      }
    return p;
  }

  friend bool operator==(const NCPoly &a, const NCPoly &b)
  {
    return a.n_ == b.n_ && a.d_ == b.d_ && a.terms_ == b.terms_;
  }

  std::string str() const
  {
    if (terms_.empty())
      return "0";
    std::string s;
    for (const auto &[w, c] : terms_) {
      if (!s.empty())
        s += " + ";
      s += "(" + rational_str(c) + ") " + word_str(w);
    }
    return s;
  }

private:
  void same_shape(const NCPoly &o) const
  {
    if (o.n_ != n_ || o.d_ != d_)
      throw InputError("polynomials have different generator counts or truncation degrees");
  }

  std::size_t n_, d_;
  Terms terms_;
};

inline void to_json(nlohmann::json &j, const NCPoly &p)
{
  nlohmann::json terms = nlohmann::json::array();
  for (const auto &[w, c] : p.terms())
    terms.push_back({{"word", word_str(w)}, {"coefficient", rational_str(c)}});
  j = nlohmann::json{{"generators", p.gens()}, {"degree", p.degree()}, {"terms", terms}};
}

inline NCPoly nc_mul(const NCPoly &f, const NCPoly &g) { return f * g; }

inline NCPoly bracket(const NCPoly &f, const NCPoly &g) { return f * g - g * f; }

/// sum_k f^k / k!
inline NCPoly nc_exp(const NCPoly &f)
{
  if (f.constant_term() != 0)
    throw InputError("exp needs a series without constant term");
  NCPoly one = NCPoly::constant(f.gens(), f.degree(), 1);
  NCPoly sum = one, power = one;
  for (std::size_t k = 1; k <= f.degree(); ++k) {
    power = Rational(1, static_cast<long>(k)) * (power * f);
    sum = sum + power;
  }
  return sum;
}

/// sum_k (-1)^{k+1} (g - 1)^k / k
inline NCPoly nc_log(const NCPoly &g)
{
  if (g.constant_term() != 1)
    throw InputError("log needs a series with constant term 1");
  NCPoly h = g - NCPoly::constant(g.gens(), g.degree(), 1);
  NCPoly sum(g.gens(), g.degree()), power = NCPoly::constant(g.gens(), g.degree(), 1);
  for (std::size_t k = 1; k <= g.degree(); ++k) {
    power = power * h;
    Rational c(k % 2 ? 1 : -1, static_cast<long>(k));
    sum = sum + c * power;
  }
  return sum;
}

/// sum_k (1 - g)^k, for g with constant term 1.
inline NCPoly nc_inverse(const NCPoly &g)
{
  if (g.constant_term() != 1)
    throw InputError("series inverse needs constant term 1");
  NCPoly one = NCPoly::constant(g.gens(), g.degree(), 1);
  NCPoly h = one - g, sum = one, power = one;
  for (std::size_t k = 1; k <= g.degree(); ++k) {
    power = power * h;
    sum = sum + power;
  }
  return sum;
}

/// x_{i1} x_{i2} ... x_{ik} -> [x_{i1}, [x_{i2}, [..., x_{ik}]]]
inline NCPoly dynkin(const NCPoly &f)
{
  NCPoly out(f.gens(), f.degree());
  for (const auto &[w, c] : f.terms()) {
    if (w.empty())
      continue;
    NCPoly acc = NCPoly::generator(f.gens(), f.degree(), w.back());
    for (std::size_t i = w.size() - 1; i-- > 0;)
      acc = bracket(NCPoly::generator(f.gens(), f.degree(), w[i]), acc);
    out = out + c * acc;
  }
  return out;
}

/// The first degree k whose component fails dynkin(P_k) = k P_k, or 0 when every one passes
/// and the constant term vanishes.
inline std::optional<std::size_t> dynkin_failure(const NCPoly &f)
{
  if (f.constant_term() != 0)
    return 0;
  for (std::size_t k = 1; k <= f.degree(); ++k) {
    NCPoly pk = f.homogeneous(k);
    if (!(dynkin(pk) == Rational(static_cast<long>(k)) * pk))
      return k;
  }
  return std::nullopt;
}

inline bool is_lie(const NCPoly &f) { return !dynkin_failure(f); }

inline Report lie_check(const NCPoly &f, const std::string &name = "dynkin_primitive")
{
  Report r(name);
  r.pairs_checked = f.degree();
  if (auto k = dynkin_failure(f))
    r.fail({{"degree", *k}, {"component", f.homogeneous(*k)}});
  return r;
}

/// log(e^x e^y)
inline NCPoly bch(const NCPoly &x, const NCPoly &y) { return nc_log(nc_exp(x) * nc_exp(y)); }

/// g y g^{-1}
inline NCPoly conjugate(const NCPoly &g, const NCPoly &y) { return g * y * nc_inverse(g); }

/// BCH(B(x), B(y)) - B(x + e^{B(x)} y e^{-B(x)}); the report holds when this is zero.
inline Report verify_eqB(const std::function<NCPoly(const NCPoly &)> &B, const NCPoly &x, const NCPoly &y)
{
  NCPoly bx = B(x), by = B(y);
  if (!is_lie(bx) || !is_lie(by))
    throw InputError("B returned an element outside the free Lie algebra");
  NCPoly residual = bch(bx, by) - B(x + conjugate(nc_exp(bx), y));
  Report r("bch_rota_baxter");
  r.pairs_checked = 1;
  r.info["residual"] = residual;
  if (!residual.is_zero())
    r.fail({{"x", x}, {"y", y}, {"residual", residual}});
  return r;
}

inline bool is_lyndon(const Word &w)
{
  if (w.empty())
    return false;
  for (std::size_t i = 1; i < w.size(); ++i)
    if (!std::lexicographical_compare(w.begin(), w.end(), w.begin() + i, w.end()))
      return false;
  return true;
}

/// Standard bracketing: w = uv with v the longest proper Lyndon suffix.
inline std::pair<NCPoly, std::string> lyndon_bracket(const Word &w, std::size_t gens, std::size_t degree)
{
  if (w.size() == 1)
    return {NCPoly::generator(gens, degree, w[0]), "x" + std::to_string(w[0] + 1)};
  for (std::size_t i = 1; i < w.size(); ++i) {
    Word v(w.begin() + i, w.end());
    if (is_lyndon(v)) {
      auto [pu, su] = lyndon_bracket(Word(w.begin(), w.begin() + i), gens, degree);
      auto [pv, sv] = lyndon_bracket(v, gens, degree);
      return {bracket(pu, pv), "[" + su + "," + sv + "]"};
    }
  }
  throw InputError("not a Lyndon word");
}

/// Coefficients in the Lyndon basis, for display.
inline std::vector<std::pair<std::string, Rational>> lyndon_expansion(NCPoly f)
{
  if (!is_lie(f))
    throw InputError("only Lie elements have a Lyndon expansion");
  std::vector<std::pair<std::string, Rational>> out;
  while (!f.is_zero()) {
    // the smallest word of a Lie polynomial's lowest component is Lyndon
    auto [w, c] = *f.terms().begin();
    if (!is_lyndon(w))
      throw InputError("leading word " + word_str(w) + " is not Lyndon");
    auto [p, s] = lyndon_bracket(w, f.gens(), f.degree());
    out.emplace_back(s, c);
    f = f - c * p;
  }
  return out;
}

} // namespace rrb::bch
