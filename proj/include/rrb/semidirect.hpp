#pragma once

#include <cstddef>
#include <functional>

#include <nlohmann/json.hpp>

#include "group.hpp"
#include "intvec.hpp"

namespace rrb {

/// A pair (v, g) in V x| G.
template <class E>
struct SemidirectElem {
  IntVec vec;
  E grp;

  friend bool operator==(const SemidirectElem &, const SemidirectElem &) = default;
};

template <class E>
void to_json(nlohmann::json &j, const SemidirectElem<E> &x)
{
  j = nlohmann::json{{"vec", x.vec}, {"grp", x.grp}};
}

/// V x|_Phi G with (u, g)(v, h) = (u + g.v, gh).
template <class Module>
class SemidirectGroup {
public:
  using base_element = typename Module::element_type;
  using element_type = SemidirectElem<base_element>;

  explicit SemidirectGroup(Module m) : m_(std::move(m)) {}

  const Module &module() const { return m_; }

  element_type identity() const { return {IntVec(m_.signature()), m_.group().identity()}; }

  element_type mul(const element_type &a, const element_type &b) const
  {
    if (!(a.vec.signature() == b.vec.signature()))
      throw InputError("semidirect product: incompatible vector signatures");
    return {a.vec + m_.act(a.grp, b.vec), m_.group().mul(a.grp, b.grp)};
  }

  /// (v, g)^{-1} = (-g^{-1}.v, g^{-1}).
  element_type inv(const element_type &a) const
  {
    auto gi = m_.group().inv(a.grp);
    return {-m_.act(gi, a.vec), gi};
  }

private:
  Module m_;
};

} // namespace rrb

template <class E>
struct std::hash<rrb::SemidirectElem<E>> {
  std::size_t operator()(const rrb::SemidirectElem<E> &x) const noexcept
  {
    return x.vec.hash() * 1000003u ^ std::hash<E>{}(x.grp);
  }
};
