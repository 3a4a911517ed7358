#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <mutex>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "error.hpp"
#include "perm.hpp"

namespace rrb {

/// Largest rank of an IntVec; entries are stored inline.
inline constexpr std::size_t kMaxRank = 8;

/// The abelian group prod_i Z_{m_i}; a modulus of 0 stands for the free factor Z.
///
/// Signatures are interned, so copies are a pointer and equality is pointer identity.
class Signature {
public:
  Signature() : data_(empty()) {}

  explicit Signature(std::vector<std::int64_t> moduli)
  {
    if (moduli.size() > kMaxRank)
      throw InputError("signature rank exceeds " + std::to_string(kMaxRank));
    for (auto m : moduli)
      if (m < 0)
        throw InputError("negative modulus in signature");
    data_ = &intern(std::move(moduli));
  }

  static Signature free(std::size_t rank) { return Signature(std::vector<std::int64_t>(rank, 0)); }
  static Signature cyclic(std::int64_t m) { return Signature({m}); }

  std::size_t rank() const { return data_->moduli.size(); }
  std::int64_t modulus(std::size_t i) const { return data_->moduli[i]; }
  const std::vector<std::int64_t> &moduli() const { return data_->moduli; }

  bool is_free() const { return data_->free; }
  bool is_finite() const { return data_->finite; }

  /// Group order; only meaningful when is_finite().
  std::int64_t order() const
  {
    std::int64_t o = 1;
    for (auto m : data_->moduli)
      o *= m;
    return o;
  }

  friend bool operator==(Signature a, Signature b) { return a.data_ == b.data_; }

private:
  struct Data {
    std::vector<std::int64_t> moduli;
    bool free;
    bool finite;
  };

  static const Data *empty()
  {
    static const Data *e = &intern({});
    return e;
  }

  static const Data &intern(std::vector<std::int64_t> moduli)
  {
    static std::mutex mu;
    static std::map<std::vector<std::int64_t>, Data> table;
    std::lock_guard lock(mu);
    auto it = table.find(moduli);
    if (it == table.end()) {
      bool free = std::all_of(moduli.begin(), moduli.end(), [](auto m) { return m == 0; });
      bool finite = std::all_of(moduli.begin(), moduli.end(), [](auto m) { return m > 0; });
      it = table.emplace(moduli, Data{moduli, free, finite}).first;
    }
    return it->second;
  }

  const Data *data_;
};

/// An element of a finitely generated abelian group given by a Signature.
/// Entries are kept reduced into [0, m) for torsion factors, so equality is structural.
class IntVec {
public:
  IntVec() : e_{} {}

  explicit IntVec(Signature sig)
      : sig_(sig), rank_(static_cast<std::uint8_t>(sig.rank())), torsion_(!sig.is_free()), e_{}
  {
  }

  IntVec(Signature sig, std::span<const std::int64_t> entries) : IntVec(sig)
  {
    if (entries.size() != sig.rank())
      throw InputError("vector length does not match signature rank");
    for (std::size_t i = 0; i < entries.size(); ++i)
      e_[i] = reduce(entries[i], sig.modulus(i));
  }

  IntVec(Signature sig, std::initializer_list<std::int64_t> entries)
      : IntVec(sig, std::span<const std::int64_t>(entries.begin(), entries.size()))
  {
  }

  static IntVec basis(Signature sig, std::size_t i, std::int64_t coef = 1)
  {
    IntVec v(sig);
    v.e_[i] = reduce(coef, sig.modulus(i));
    return v;
  }

  Signature signature() const { return sig_; }
  std::size_t rank() const { return rank_; }
  std::int64_t operator[](std::size_t i) const { return e_[i]; }

  /// Returns a copy with entry i replaced (and reduced).
  IntVec with(std::size_t i, std::int64_t value) const
  {
    IntVec r = *this;
    r.e_[i] = reduce(value, sig_.modulus(i));
    return r;
  }

  bool is_zero() const
  {
    for (std::size_t i = 0; i < rank(); ++i)
      if (e_[i] != 0)
        return false;
    return true;
  }

  /// Taxicab norm sum_i |a_i| of the stored representatives.
  std::int64_t norm1() const
  {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < rank(); ++i)
      s += std::llabs(e_[i]);
    return s;
  }

  IntVec operator+(const IntVec &o) const
  {
    same_signature(o);
    if (!torsion_) {
      IntVec r(*this, Uninit{});
      for (std::size_t i = 0; i < kMaxRank; ++i)
        r.e_[i] = e_[i] + o.e_[i];
      return r;
    }
    IntVec r = *this;
    for (std::size_t i = 0; i < rank_; ++i)
      r.e_[i] = fix(i, e_[i] + o.e_[i]);
    return r;
  }

  IntVec operator-(const IntVec &o) const
  {
    same_signature(o);
    if (!torsion_) {
      IntVec r(*this, Uninit{});
      for (std::size_t i = 0; i < kMaxRank; ++i)
        r.e_[i] = e_[i] - o.e_[i];
      return r;
    }
    IntVec r = *this;
    for (std::size_t i = 0; i < rank_; ++i)
      r.e_[i] = fix(i, e_[i] - o.e_[i]);
    return r;
  }

  IntVec operator-() const
  {
    if (!torsion_) {
      IntVec r(*this, Uninit{});
      for (std::size_t i = 0; i < kMaxRank; ++i)
        r.e_[i] = -e_[i];
      return r;
    }
    IntVec r = *this;
    for (std::size_t i = 0; i < rank_; ++i)
      r.e_[i] = fix(i, -e_[i]);
    return r;
  }

  IntVec &operator+=(const IntVec &o) { return *this = *this + o; }

  friend IntVec operator*(std::int64_t k, const IntVec &v)
  {
    IntVec r(v.sig_);
    for (std::size_t i = 0; i < v.rank(); ++i)
      r.e_[i] = v.fix(i, k * v.e_[i]);
    return r;
  }

  /// Coordinate permutation: (w.v)_{w(i)} = v_i, i.e. w e_i = e_{w(i)}.
  IntVec permuted(const Perm &w) const
  {
    if (w.degree() != rank_)
      throw InputError("permutation degree does not match vector rank");
    IntVec r = *this;
    for (std::size_t i = 0; i < rank_; ++i)
      r.e_[w(static_cast<int>(i))] = e_[i];
    return r;
  }

  std::vector<std::int64_t> entries() const { return {e_.begin(), e_.begin() + rank()}; }

  friend bool operator==(const IntVec &a, const IntVec &b)
  {
    if (!(a.sig_ == b.sig_))
      return false;
    // entries past the rank are always zero
    std::int64_t diff = 0;
    for (std::size_t i = 0; i < kMaxRank; ++i)
      diff |= a.e_[i] ^ b.e_[i];
    return diff == 0;
  }

  friend bool operator<(const IntVec &a, const IntVec &b)
  {
    if (a.rank() != b.rank())
      return a.rank() < b.rank();
    return std::lexicographical_compare(a.e_.begin(), a.e_.begin() + a.rank(), b.e_.begin(),
                                        b.e_.begin() + b.rank());
  }

  std::size_t hash() const
  {
    std::size_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < rank(); ++i)
      h = (h ^ static_cast<std::size_t>(e_[i] + 0x9e3779b9)) * 1099511628211ull;
    return h;
  }

  /// Human-readable form, e.g. "(1, -2, 0)".
  std::string str() const
  {
    std::string s = "(";
    for (std::size_t i = 0; i < rank(); ++i) {
      if (i)
        s += ", ";
      s += std::to_string(e_[i]);
    }
    return s + ")";
  }

  static std::int64_t reduce(std::int64_t x, std::int64_t m)
  {
    if (m == 0)
      return x;
    x %= m;
    return x < 0 ? x + m : x;
  }

private:
  struct Uninit {};
  // Copies the signature only; the caller must write every entry.
  IntVec(const IntVec &meta, Uninit) : sig_(meta.sig_), rank_(meta.rank_), torsion_(meta.torsion_) {}

  std::int64_t fix(std::size_t i, std::int64_t x) const { return torsion_ ? reduce(x, sig_.modulus(i)) : x; }

  void same_signature(const IntVec &o) const
  {
    if (!(o.sig_ == sig_))
      throw InputError("vectors have different signatures");
  }

  Signature sig_;
  std::uint8_t rank_ = 0;
  bool torsion_ = false;
  std::array<std::int64_t, kMaxRank> e_;
};

/// Every element of a finite signature, lexicographic with the first coordinate slowest.
inline std::vector<IntVec> enumerate_all(Signature sig)
{
  if (!sig.is_finite())
    throw InputError("cannot enumerate a group with a free factor");
  std::vector<IntVec> out;
  std::vector<std::int64_t> cur(sig.rank(), 0);
  while (true) {
    out.emplace_back(sig, cur);
    std::size_t i = sig.rank();
    while (i > 0) {
      --i;
      if (++cur[i] < sig.modulus(i))
        break;
      cur[i] = 0;
      if (i == 0)
        return out;
    }
    if (sig.rank() == 0)
      return out;
  }
}

/// Box: free coordinates in [-radius, radius], torsion coordinates over their full range.
inline std::vector<IntVec> enumerate_box(Signature sig, std::int64_t radius)
{
  std::vector<IntVec> out;
  std::vector<std::int64_t> lo(sig.rank()), hi(sig.rank());
  for (std::size_t i = 0; i < sig.rank(); ++i) {
    lo[i] = sig.modulus(i) == 0 ? -radius : 0;
    hi[i] = sig.modulus(i) == 0 ? radius : sig.modulus(i) - 1;
  }
  std::vector<std::int64_t> cur = lo;
  while (true) {
    out.emplace_back(sig, cur);
    std::size_t i = sig.rank();
    bool done = true;
    while (i > 0) {
      --i;
      if (++cur[i] <= hi[i]) {
        done = false;
        break;
      }
      cur[i] = lo[i];
    }
    if (done)
      return out;
  }
}

/// All vectors of a free signature with taxicab norm <= radius, in lexicographic order.
inline std::vector<IntVec> enumerate_ball(Signature sig, std::int64_t radius)
{
  std::vector<IntVec> out;
  for (auto &v : enumerate_box(sig, radius))
    if (v.norm1() <= radius)
      out.push_back(v);
  return out;
}

inline void to_json(nlohmann::json &j, const IntVec &v)
{
  nlohmann::json entries = nlohmann::json::object();
  for (std::size_t i = 0; i < v.rank(); ++i)
    if (v[i] != 0)
      entries[std::to_string(i + 1)] = v[i];
  j = nlohmann::json{{"moduli", v.signature().moduli()}, {"entries", entries}};
}

inline IntVec intvec_from_json(const nlohmann::json &j)
{
  if (!j.is_object() || !j.contains("moduli"))
    throw InputError("vector JSON needs a \"moduli\" array");
  Signature sig(j.at("moduli").get<std::vector<std::int64_t>>());
  std::vector<std::int64_t> e(sig.rank(), 0);
  if (j.contains("entries")) {
    for (auto &[key, value] : j.at("entries").items()) {
      std::size_t idx = std::stoul(key);
      if (idx < 1 || idx > sig.rank())
        throw InputError("vector entry index out of range: " + key);
      e[idx - 1] = value.get<std::int64_t>();
    }
  }
  return IntVec(sig, e);
}

inline void from_json(const nlohmann::json &j, IntVec &v) { v = intvec_from_json(j); }

} // namespace rrb

template <>
struct std::hash<rrb::IntVec> {
  std::size_t operator()(const rrb::IntVec &v) const noexcept { return v.hash(); }
};
