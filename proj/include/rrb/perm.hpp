#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "error.hpp"

namespace rrb {

/// Largest supported permutation degree (and rank of integer vectors).
inline constexpr std::size_t kMaxDegree = 16;

/// A bijection of {0..n-1}. Externally (cycle strings, JSON) points are 1-based.
///
/// Composition follows the "apply the right factor first" rule:
/// (p * q)(i) = p(q(i)).
class Perm {
public:
  Perm() = default;

  static Perm identity(std::size_t n)
  {
    check_degree(n);
    Perm p;
    p.n_ = static_cast<std::uint8_t>(n);
    for (std::size_t i = 0; i < n; ++i)
      p.img_[i] = static_cast<std::uint8_t>(i);
    return p;
  }

  /// Builds from 0-based images; throws InputError unless they form a bijection.
  static Perm from_images0(std::span<const int> images)
  {
    check_degree(images.size());
    Perm p;
    p.n_ = static_cast<std::uint8_t>(images.size());
    std::array<bool, kMaxDegree> seen{};
    for (std::size_t i = 0; i < images.size(); ++i) {
      int v = images[i];
      if (v < 0 || static_cast<std::size_t>(v) >= images.size() || seen[v])
        throw InputError("permutation images are not a bijection");
      seen[v] = true;
      p.img_[i] = static_cast<std::uint8_t>(v);
    }
    return p;
  }

  /// Builds from 1-based images, e.g. {2,1,3} for (1 2) in S3.
  static Perm from_images(std::span<const int> images)
  {
    std::vector<int> zero(images.begin(), images.end());
    for (int &v : zero)
      --v;
    return from_images0(zero);
  }

  static Perm from_images(std::initializer_list<int> images)
  {
    std::vector<int> v(images);
    return from_images(std::span<const int>(v));
  }

  /// Parses cycle notation such as "(1 2)(3 4)", "(1,3,2)", "(132)" or "(1)".
  /// Digits without separators are read one point each (only sensible for n <= 9).
  static Perm parse_cycles(std::string_view text, std::size_t n)
  {
    Perm p = identity(n);
    std::size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
        ++pos;
    };
    skip_ws();
    if (pos == text.size())
      return p;
    std::vector<bool> used(n, false);
    while (pos < text.size()) {
      skip_ws();
      if (pos == text.size())
        break;
      if (text[pos] != '(')
        throw InputError("expected '(' in cycle string: " + std::string(text));
      std::size_t close = text.find(')', pos);
      if (close == std::string_view::npos)
        throw InputError("unbalanced cycle string: " + std::string(text));
      std::string_view body = text.substr(pos + 1, close - pos - 1);
      pos = close + 1;

      std::vector<int> cycle;
      bool has_sep = body.find_first_of(" ,\t") != std::string_view::npos;
      if (has_sep) {
        std::size_t i = 0;
        while (i < body.size()) {
          while (i < body.size() && (body[i] == ' ' || body[i] == ',' || body[i] == '\t'))
            ++i;
          if (i == body.size())
            break;
          std::size_t j = i;
          while (j < body.size() && std::isdigit(static_cast<unsigned char>(body[j])))
            ++j;
          if (j == i)
            throw InputError("bad token in cycle string: " + std::string(text));
          cycle.push_back(std::stoi(std::string(body.substr(i, j - i))));
          i = j;
        }
      } else {
        for (char c : body) {
          if (!std::isdigit(static_cast<unsigned char>(c)))
            throw InputError("bad character in cycle string: " + std::string(text));
          cycle.push_back(c - '0');
        }
      }
      if (cycle.empty())
        continue;
      for (int v : cycle) {
        if (v < 1 || static_cast<std::size_t>(v) > n)
          throw InputError("cycle point out of range in: " + std::string(text));
        if (used[v - 1] && cycle.size() > 1)
          throw InputError("cycles are not disjoint in: " + std::string(text));
        used[v - 1] = true;
      }
      if (cycle.size() < 2)
        continue;
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        int from = cycle[k] - 1;
        int to = cycle[(k + 1) % cycle.size()] - 1;
        p.img_[from] = static_cast<std::uint8_t>(to);
      }
    }
    return p;
  }

  std::size_t degree() const { return n_; }

  /// 0-based image.
  int operator()(int i) const { return img_[i]; }

  /// 1-based image.
  int image1(int i) const { return img_[i - 1] + 1; }

  Perm operator*(const Perm &q) const
  {
    if (q.n_ != n_)
      throw InputError("permutation degree mismatch");
    Perm r;
    r.n_ = n_;
    for (std::size_t i = 0; i < n_; ++i)
      r.img_[i] = img_[q.img_[i]];
    return r;
  }

  Perm inverse() const
  {
    Perm r;
    r.n_ = n_;
    for (std::size_t i = 0; i < n_; ++i)
      r.img_[img_[i]] = static_cast<std::uint8_t>(i);
    return r;
  }

  Perm pow(long long k) const
  {
    Perm base = k < 0 ? inverse() : *this;
    unsigned long long e = k < 0 ? static_cast<unsigned long long>(-k) : static_cast<unsigned long long>(k);
    Perm r = identity(n_);
    while (e) {
      if (e & 1u)
        r = r * base;
      base = base * base;
      e >>= 1u;
    }
    return r;
  }

  bool is_identity() const
  {
    for (std::size_t i = 0; i < n_; ++i)
      if (img_[i] != i)
        return false;
    return true;
  }

  /// +1 for even permutations, -1 for odd ones.
  int sign() const
  {
    std::array<bool, kMaxDegree> seen{};
    int transpositions = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (seen[i])
        continue;
      std::size_t len = 0;
      for (std::size_t j = i; !seen[j]; j = img_[j]) {
        seen[j] = true;
        ++len;
      }
      transpositions += static_cast<int>(len) - 1;
    }
    return transpositions % 2 == 0 ? 1 : -1;
  }

  bool is_odd() const { return sign() < 0; }

  std::size_t order() const
  {
    std::array<bool, kMaxDegree> seen{};
    std::size_t ord = 1;
    for (std::size_t i = 0; i < n_; ++i) {
      if (seen[i])
        continue;
      std::size_t len = 0;
      for (std::size_t j = i; !seen[j]; j = img_[j]) {
        seen[j] = true;
        ++len;
      }
      ord = std::lcm(ord, len);
    }
    return ord;
  }

  std::vector<int> images() const
  {
    std::vector<int> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      out[i] = img_[i] + 1;
    return out;
  }

  /// Canonical cycle notation: each cycle starts at its least point, identity is "(1)".
  std::string to_cycles() const
  {
    std::string out;
    std::array<bool, kMaxDegree> seen{};
    for (std::size_t i = 0; i < n_; ++i) {
      if (seen[i] || img_[i] == i) {
        seen[i] = true;
        continue;
      }
      out += '(';
      bool first = true;
      for (std::size_t j = i; !seen[j]; j = img_[j]) {
        seen[j] = true;
        if (!first)
          out += ' ';
        out += std::to_string(j + 1);
        first = false;
      }
      out += ')';
    }
    return out.empty() ? "(1)" : out;
  }

  friend bool operator==(const Perm &a, const Perm &b)
  {
    return a.n_ == b.n_ && std::equal(a.img_.begin(), a.img_.begin() + a.n_, b.img_.begin());
  }

  /// Lexicographic on image arrays.
  friend bool operator<(const Perm &a, const Perm &b)
  {
    if (a.n_ != b.n_)
      return a.n_ < b.n_;
    return std::lexicographical_compare(a.img_.begin(), a.img_.begin() + a.n_,
                                        b.img_.begin(), b.img_.begin() + b.n_);
  }

  std::size_t hash() const
  {
    std::size_t h = n_;
    for (std::size_t i = 0; i < n_; ++i)
      h = h * 31u + img_[i];
    return h;
  }

private:
  static void check_degree(std::size_t n)
  {
    if (n > kMaxDegree)
      throw InputError("permutation degree " + std::to_string(n) + " exceeds supported maximum " +
                       std::to_string(kMaxDegree));
  }

  std::array<std::uint8_t, kMaxDegree> img_{};
  std::uint8_t n_ = 0;
};

/// All permutations of degree n in lexicographic order of image arrays.
inline std::vector<Perm> all_perms(std::size_t n)
{
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 0);
  std::vector<Perm> out;
  do {
    out.push_back(Perm::from_images0(images));
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

inline void to_json(nlohmann::json &j, const Perm &p)
{
  j = nlohmann::json{{"n", p.degree()}, {"images", p.images()}};
}

/// Accepts {"n":3,"images":[2,1,3]}, a bare image array, or a cycle string (needs `n`).
inline Perm perm_from_json(const nlohmann::json &j, std::size_t n_hint = 0)
{
  if (j.is_string())
    return Perm::parse_cycles(j.get<std::string>(), n_hint);
  if (j.is_array())
    return Perm::from_images(j.get<std::vector<int>>());
  if (j.is_object() && j.contains("images")) {
    auto images = j.at("images").get<std::vector<int>>();
    if (j.contains("n") && j.at("n").get<std::size_t>() != images.size())
      throw InputError("permutation JSON: n does not match images length");
    return Perm::from_images(images);
  }
  throw InputError("cannot read a permutation from JSON: " + j.dump());
}

inline void from_json(const nlohmann::json &j, Perm &p) { p = perm_from_json(j); }

} // namespace rrb

template <>
struct std::hash<rrb::Perm> {
  std::size_t operator()(const rrb::Perm &p) const noexcept { return p.hash(); }
};
