#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <variant>
#include <vector>

#include "intvec.hpp"

namespace rrb {

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Every element of a finite group.
struct Exhaustive {};

/// Free coordinates in [-radius, radius] (torsion ones over their full range), plus seeded
/// random pairs and triples lying outside that box.
struct Bounded {
  std::int64_t radius = 3;
  std::size_t outside = 256;
  std::uint64_t seed = kDefaultSeed;
};

/// Seeded random pairs and triples only; free coordinates drawn from [-spread, spread].
struct Sampled {
  std::size_t count = 1000;
  std::uint64_t seed = kDefaultSeed;
  std::int64_t spread = 10;
};

/// An explicit list of points; pairs and triples are all combinations of them.
struct Listed {
  std::vector<IntVec> points;
};

using DomainPolicy = std::variant<Exhaustive, Bounded, Sampled, Listed>;

inline DomainPolicy default_policy(Signature sig)
{
  if (sig.is_finite())
    return Exhaustive{};
  return Bounded{};
}

/// The points a policy yields. When `product` is set, pair and triple checks range over
/// all combinations of `points`; `pairs` and `triples` are checked in addition.
struct Domain {
  std::vector<IntVec> points;
  bool product = true;
  std::vector<std::array<IntVec, 2>> pairs;
  std::vector<std::array<IntVec, 3>> triples;
  std::optional<std::uint64_t> seed;

  std::uint64_t pair_count() const
  {
    return (product ? points.size() * points.size() : 0) + pairs.size();
  }
};

/// Deterministic across platforms: mt19937_64 output reduced by modulo.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::int64_t uniform(std::int64_t lo, std::int64_t hi)
  {
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(gen_() % span);
  }
  double uniform_real(double lo, double hi)
  {
    return lo + (hi - lo) * (static_cast<double>(gen_() >> 11) * 0x1.0p-53);
  }

private:
  std::mt19937_64 gen_;
};

namespace detail {

inline IntVec random_vec(Signature sig, Rng &rng, std::int64_t spread)
{
  std::vector<std::int64_t> e(sig.rank());
  for (std::size_t i = 0; i < sig.rank(); ++i)
    e[i] = sig.modulus(i) == 0 ? rng.uniform(-spread, spread) : rng.uniform(0, sig.modulus(i) - 1);
  return IntVec(sig, e);
}

inline bool in_box(const IntVec &v, std::int64_t radius)
{
  for (std::size_t i = 0; i < v.rank(); ++i)
    if (v.signature().modulus(i) == 0 && (v[i] < -radius || v[i] > radius))
      return false;
  return true;
}

inline bool has_free_factor(Signature sig)
{
  for (auto m : sig.moduli())
    if (m == 0)
      return true;
  return false;
}

/// A vector with at least one free coordinate outside the box.
inline IntVec random_outside(Signature sig, Rng &rng, std::int64_t radius)
{
  std::int64_t spread = 3 * radius + 3;
  while (true) {
    IntVec v = random_vec(sig, rng, spread);
    if (!in_box(v, radius))
      return v;
  }
}

} // namespace detail

inline Domain make_domain(Signature sig, const DomainPolicy &policy)
{
  Domain d;
  std::visit(
      [&](const auto &p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Exhaustive>) {
          d.points = enumerate_all(sig);
        } else if constexpr (std::is_same_v<P, Bounded>) {
          d.points = enumerate_box(sig, p.radius);
          d.seed = p.seed;
          if (detail::has_free_factor(sig)) {
            Rng rng(p.seed);
            for (std::size_t k = 0; k < p.outside; ++k)
              d.pairs.push_back({detail::random_outside(sig, rng, p.radius),
                                 detail::random_outside(sig, rng, p.radius)});
            for (std::size_t k = 0; k < p.outside; ++k)
              d.triples.push_back({detail::random_outside(sig, rng, p.radius),
                                   detail::random_outside(sig, rng, p.radius),
                                   detail::random_outside(sig, rng, p.radius)});
          }
        } else if constexpr (std::is_same_v<P, Sampled>) {
          d.product = false;
          d.seed = p.seed;
          Rng rng(p.seed);
          for (std::size_t k = 0; k < p.count; ++k)
            d.pairs.push_back({detail::random_vec(sig, rng, p.spread), detail::random_vec(sig, rng, p.spread)});
          for (std::size_t k = 0; k < p.count; ++k)
            d.triples.push_back({detail::random_vec(sig, rng, p.spread), detail::random_vec(sig, rng, p.spread),
                                 detail::random_vec(sig, rng, p.spread)});
          for (auto &pr : d.pairs)
            d.points.push_back(pr[0]);
        } else {
          d.points = p.points;
        }
      },
      policy);
  return d;
}

} // namespace rrb
