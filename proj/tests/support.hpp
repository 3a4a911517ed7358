#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <nlohmann/json.hpp>

#include "rrb/perm_rb.hpp"

namespace support {

inline std::string golden_dir()
{
  if (const char *env = std::getenv("RRB_GOLDEN_DIR"))
    return env;
  return RRB_GOLDEN_DIR_DEFAULT;
}

inline nlohmann::json load_golden(const std::string &name)
{
  std::ifstream in(golden_dir() + "/" + name);
  if (!in)
    throw std::runtime_error("missing golden file " + name);
  return nlohmann::json::parse(in);
}

struct CliResult {
  int code = -1;
  std::string out;
  double seconds = 0;
};

/// Runs the rrb binary with the given argument string; stderr is discarded.
inline CliResult run_cli(const std::string &args)
{
  CliResult r;
  std::string cmd = std::string("\"") + RRB_CLI + "\" " + args + " 2>/dev/null";
  auto t0 = std::chrono::steady_clock::now();
  FILE *p = popen(cmd.c_str(), "r");
  if (!p)
    return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0)
    r.out.append(buf.data(), got);
  int status = pclose(p);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

/// Golden tuples as a set of canonical cycle strings.
inline std::set<std::string> golden_singles(const nlohmann::json &g)
{
  std::set<std::string> out;
  for (const auto &t : g.at("singles"))
    out.insert(rrb::tuple_str(rrb::parse_tuple(t.get<std::string>())));
  return out;
}

// A permutation as 0-based images, with its own composition; used as an oracle that shares
// no code with the library.
using Naive = std::vector<int>;

inline Naive naive_compose(const Naive &p, const Naive &q)
{
  Naive r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    r[i] = p[q[i]];
  return r;
}

inline Naive naive_inverse(const Naive &p)
{
  Naive r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    r[p[i]] = static_cast<int>(i);
  return r;
}

inline Naive naive_identity(std::size_t n)
{
  Naive r(n);
  for (std::size_t i = 0; i < n; ++i)
    r[i] = static_cast<int>(i);
  return r;
}

inline std::vector<Naive> naive_all(std::size_t n)
{
  std::vector<Naive> out;
  Naive p = naive_identity(n);
  do
    out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// sigma_i sigma_{sigma_i^{-1}(i)} = 1 and sigma_j sigma_{sigma_j^{-1}(k)} = sigma_k sigma_{sigma_k^{-1}(j)}.
inline bool naive_single(const std::vector<Naive> &s)
{
  std::size_t n = s.size();
  auto id = naive_identity(n);
  for (std::size_t i = 0; i < n; ++i)
    if (naive_compose(s[i], s[naive_inverse(s[i])[i]]) != id)
      return false;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k)
      if (naive_compose(s[j], s[naive_inverse(s[j])[k]]) != naive_compose(s[k], s[naive_inverse(s[k])[j]]))
        return false;
  return true;
}

/// The four families of conditions for a pair (sigma, sigma_bar).
inline bool naive_pair(const std::vector<Naive> &s, const std::vector<Naive> &b)
{
  std::size_t n = s.size();
  auto id = naive_identity(n);
  auto inv = [](const Naive &p, int i) { return naive_inverse(p)[i]; };
  for (std::size_t i = 0; i < n; ++i) {
    if (naive_compose(s[i], b[inv(s[i], i)]) != id || naive_compose(b[i], s[inv(b[i], i)]) != id)
      return false;
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      if (naive_compose(s[j], s[inv(s[j], k)]) != naive_compose(s[k], s[inv(s[k], j)]))
        return false;
      if (naive_compose(b[j], b[inv(b[j], k)]) != naive_compose(b[k], b[inv(b[k], j)]))
        return false;
    }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (naive_compose(s[j], b[inv(s[j], k)]) != naive_compose(b[k], s[inv(b[k], j)]))
        return false;
  return true;
}

inline rrb::Perm to_perm(const Naive &p) { return rrb::Perm::from_images0(p); }

inline std::vector<rrb::Perm> to_perms(const std::vector<Naive> &s)
{
  std::vector<rrb::Perm> out;
  for (const auto &p : s)
    out.push_back(to_perm(p));
  return out;
}

} // namespace support
