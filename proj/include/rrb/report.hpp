#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace rrb {

/// Outcome of one verification. Counterexamples are the first failure in domain order.
struct Report {
  std::string check;
  bool holds = true;
  std::optional<nlohmann::json> counterexample;
  std::uint64_t pairs_checked = 0;
  std::optional<std::uint64_t> seed;
  std::vector<Report> subchecks;
  nlohmann::json info = nlohmann::json::object();

  Report() = default;
  explicit Report(std::string name) : check(std::move(name)) {}

  /// Folds a child verdict into this report.
  Report &add(Report child)
  {
    holds = holds && child.holds;
    pairs_checked += child.pairs_checked;
    if (!seed && child.seed)
      seed = child.seed;
    if (!counterexample && child.counterexample)
      counterexample = nlohmann::json{{"subcheck", child.check}, {"witness", *child.counterexample}};
    subchecks.push_back(std::move(child));
    return *this;
  }

  void fail(nlohmann::json witness)
  {
    holds = false;
    if (!counterexample)
      counterexample = std::move(witness);
  }

  const Report *find(std::string_view name) const
  {
    if (check == name)
      return this;
    for (const auto &s : subchecks)
      if (const Report *r = s.find(name))
        return r;
    return nullptr;
  }
};

inline void to_json(nlohmann::json &j, const Report &r)
{
  j = nlohmann::json{{"check", r.check},
                     {"holds", r.holds},
                     {"counterexample", r.counterexample ? *r.counterexample : nlohmann::json(nullptr)},
                     {"pairs_checked", r.pairs_checked},
                     {"seed", r.seed ? nlohmann::json(*r.seed) : nlohmann::json(nullptr)}};
  if (!r.subchecks.empty())
    j["subchecks"] = r.subchecks;
  if (!r.info.empty())
    j["info"] = r.info;
}

/// Thrown when a mathematical precondition check fails. The CLI maps this to exit code 1.
class CheckFailed : public std::runtime_error {
public:
  explicit CheckFailed(Report r)
      : std::runtime_error("check failed: " + r.check), report_(std::move(r))
  {
  }
  const Report &report() const { return report_; }

private:
  Report report_;
};

inline void require(const Report &r)
{
  if (!r.holds)
    throw CheckFailed(r);
}

} // namespace rrb
