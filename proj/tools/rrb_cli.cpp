#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rrb/rrb.hpp"

using nlohmann::json;
using namespace rrb;

namespace {

struct Outcome {
  json result;
  bool holds = true;
};

json read_json_file(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
}

struct TupleInput {
  std::string tuple, bar, file;

  void add_to(CLI::App *cmd)
  {
    cmd->add_option("--tuple", tuple, "sigma tuple in cycle notation, e.g. \"(1 2),(1),(1 3)\"");
    cmd->add_option("--bar", bar, "sigma_bar tuple for an operator given by a pair");
    cmd->add_option("--file", file, "tuple JSON file");
  }

  bool given() const { return !tuple.empty() || !file.empty(); }

  SigmaTuple get() const
  {
    if (!file.empty()) {
      json j = read_json_file(file);
      if (j.is_object() && j.contains("tuple"))
        return sigma_tuple_from_json(j.at("tuple"));
      return sigma_tuple_from_json(j);
    }
    if (tuple.empty())
      throw InputError("give --tuple or --file");
    auto s = parse_tuple(tuple);
    if (bar.empty())
      return SigmaTuple::single(std::move(s));
    return SigmaTuple::pair(std::move(s), parse_tuple(bar));
  }
};

json tuple_json(const SigmaTuple &t)
{
  if (t.is_single())
    return tuple_str(t.sigma);
  return json{{"sigma", tuple_str(t.sigma)}, {"sigma_bar", tuple_str(t.sigma_bar)}};
}

Outcome collect(json out, const std::vector<Report> &reps)
{
  Outcome o;
  json arr = json::array();
  for (const auto &r : reps) {
    arr.push_back(r);
    o.holds = o.holds && r.holds;
  }
  out["reports"] = arr;
  o.result = std::move(out);
  return o;
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string &s)
{
  auto colon = s.find(':', s.front() == '-' ? 1 : 0);
  if (colon == std::string::npos)
    throw InputError("range must look like lo:hi, got " + s);
  try {
    return {std::stoll(s.substr(0, colon)), std::stoll(s.substr(colon + 1))};
  } catch (const std::exception &) {
    throw InputError("range must look like lo:hi, got " + s);
  }
}

std::vector<std::int64_t> parse_int_list(const std::string &s)
{
  std::string t = s;
  for (char &c : t)
    if (c == ',' || c == '[' || c == ']' || c == ':')
      c = ' ';
  std::istringstream in(t);
  std::vector<std::int64_t> out;
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      if (used != tok.size())
        throw InputError("");
    } catch (const std::exception &) {
      throw InputError("not an integer list: " + s);
    }
  }
  return out;
}

std::int64_t default_radius(std::size_t n) { return n <= 3 ? 3 : 1; }

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"rrb: relative Rota-Baxter operators of weight zero, braces and Yang-Baxter solutions"};
  app.require_subcommand(1);
  app.fallthrough();

  unsigned threads = 0;
  std::uint64_t seed = kDefaultSeed;
  std::string json_path;
  app.add_option("--threads", threads, "cap on worker threads (default: all cores)");
  app.add_option("--seed", seed, "seed for every sampled domain")->capture_default_str();
  app.add_option("--json", json_path, "also write the report to this file");

  // enumerate
  auto *enumerate = app.add_subcommand("enumerate", "list sigma tuples satisfying the tuple conditions");
  std::size_t n = 3;
  bool pairs = false, count_only = false;
  std::string strategy = "auto";
  enumerate->add_option("--n", n, "degree")->required();
  enumerate->add_flag("--pairs", pairs, "operators given by pairs (sigma, sigma_bar) with sigma != sigma_bar");
  enumerate->add_flag("--count-only", count_only, "print only the count");
  enumerate->add_option("--strategy", strategy, "auto, scan or backtrack")->capture_default_str();

  // verify
  auto *verify = app.add_subcommand("verify", "check an operator built from a sigma tuple");
  TupleInput verify_in;
  verify_in.add_to(verify);
  std::int64_t radius = -1, reduction_radius = 4;
  bool conditions_only = false;
  verify->add_option("--radius", radius, "box radius for the identity checks (default 3 for n <= 3, else 1)");
  verify->add_option("--reduction-radius", reduction_radius, "taxicab radius for the reduction-order check")
      ->capture_default_str();
  verify->add_flag("--conditions-only", conditions_only, "stop after the tuple conditions and the generated group");

  // ybe
  auto *ybe = app.add_subcommand("ybe", "set-theoretic solutions, structure groups and the round trip");
  TupleInput ybe_in;
  std::string y_action, y_file;
  ybe->add_option("action", y_action, "check, from-tuple or roundtrip")
      ->required()
      ->check(CLI::IsMember({"check", "from-tuple", "roundtrip"}));
  ybe->add_option("path", y_file, "solution or tuple JSON");
  ybe_in.add_to(ybe);
  std::size_t bound = 4, y_n = 0;
  ybe->add_option("--n", y_n, "expected size of X");
  ybe->add_option("--bound", bound, "word length bound for the structure group")->capture_default_str();

  // brace
  auto *brace = app.add_subcommand("brace", "brace and gamma function of an operator");
  TupleInput brace_in;
  brace_in.add_to(brace);
  std::string power;
  std::int64_t brace_radius = 2;
  brace->add_option("--power", power, "m:n:r, the projection operator on Z_m x Z_n with [j].k = r^j k");
  brace->add_option("--radius", brace_radius, "box radius on free modules")->capture_default_str();

  // tstruct
  auto *tstruct = app.add_subcommand("tstruct", "T-structures");
  std::string t_action, t_file, krange = "-6:6", table;
  std::int64_t modulus = 0;
  TupleInput t_in;
  tstruct->add_option("action", t_action, "check or reconstruct")->required()->check(CLI::IsMember({"check", "reconstruct"}));
  tstruct->add_option("path", t_file, "T-structure JSON for check");
  tstruct->add_option("--krange", krange, "k range lo:hi")->capture_default_str();
  tstruct->add_option("--modulus", modulus, "m for reconstruct on Z_m");
  tstruct->add_option("--table", table, "T(0), ..., T(m-1); identity when omitted");
  t_in.add_to(tstruct);

  // lie
  auto *lie = app.add_subcommand("lie", "numeric checks on SL(2, R)");
  std::string l_action, family = "Bs";
  double s = 0.5;
  std::size_t samples = 1000;
  lie->add_option("action", l_action, "check")->required()->check(CLI::IsMember({"check"}));
  lie->add_option("--family", family, "Bs, Bps, Rs or all")->capture_default_str();
  auto *s_opt = lie->add_option("--s", s, "parameter s")->capture_default_str();
  lie->add_option("--samples", samples, "sample count")->capture_default_str();

  // bch
  auto *bchc = app.add_subcommand("bch", "truncated BCH series of the generators");
  std::size_t gens = 2, degree = 4;
  bool lyndon = false;
  bchc->add_option("--gens", gens, "number of generators")->capture_default_str();
  bchc->add_option("--degree", degree, "truncation degree")->capture_default_str();
  bchc->add_flag("--lyndon", lyndon, "also print coefficients in the Lyndon basis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string command;
  for (int i = 0; i < argc; ++i)
    command += (i ? " " : "") + std::string(i ? argv[i] : "rrb");

  if (threads > 0)
    set_max_threads(threads);
  auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  int code = 0;
  try {
    if (enumerate->parsed()) {
      json out{{"n", n}, {"pairs", pairs}};
      std::vector<SigmaTuple> found;
      if (pairs) {
        found = enumerate_pairs(n);
        out["unordered_count"] = unordered_pair_count(found);
      } else {
        SearchStrategy how = SearchStrategy::Automatic;
        if (strategy == "scan")
          how = SearchStrategy::Scan;
        else if (strategy == "backtrack")
          how = SearchStrategy::Backtrack;
        else if (strategy != "auto")
          throw InputError("unknown strategy: " + strategy);
        found = enumerate_single(n, how);
      }
      out["count"] = found.size();
      if (!count_only) {
        json list = json::array(), cycles = json::array();
        for (const auto &t : found) {
          list.push_back(t);
          cycles.push_back(tuple_json(t));
        }
        out["tuples"] = list;
        out["cycles"] = cycles;
      }
      outcome.result = out;
    } else if (verify->parsed()) {
      SigmaTuple t = verify_in.get();
      json out{{"tuple", tuple_json(t)}};
      Report cond = tuple_conditions_report(t);
      auto sub = generated_subgroup(t.is_single() ? t.sigma : [&] {
        auto g = t.sigma;
        g.insert(g.end(), t.sigma_bar.begin(), t.sigma_bar.end());
        return g;
      }());
      out["generated_subgroup"] = fingerprint(SymmetricGroup{t.n}, std::span<const Perm>(sub.elements));
      if (!cond.holds || conditions_only) {
        outcome = collect(out, {cond});
      } else {
        std::int64_t rad = radius >= 0 ? radius : default_radius(t.n);
        out["radius"] = rad;
        auto R = perm_operator(t, Bounded{rad, 256, seed});
        outcome = collect(out, {cond, verify_rrb(R), verify_derived_identities(R), operator_triple_laws(R),
                                scaled_power_check(R, 4), well_definedness_check(t, reduction_radius)});
      }
    } else if (ybe->parsed()) {
      if (!y_file.empty())
        ybe_in.file = y_file;
      SetYBE r = [&] {
        if (!ybe_in.file.empty()) {
          json j = read_json_file(ybe_in.file);
          // a solution carries sigma without sigma_bar; anything else is read as a tuple
          if (j.is_object() && j.contains("sigma") && !j.contains("sigma_bar"))
            return set_ybe_from_json(j);
        }
        SigmaTuple t = ybe_in.get();
        if (!t.is_single())
          throw InputError("a solution comes from a single tuple");
        return restrict_to_basis(perm_operator(t));
      }();
      if (y_n && y_n != r.size())
        throw InputError("--n does not match the solution size");
      json out{{"solution", r}};
      std::vector<Report> reps{ybe_check(r)};
      if (y_action == "roundtrip") {
        out["bound"] = bound;
        if (r.size() > 4)
          throw InputError("the round trip is supported for |X| <= 4");
        if (reps[0].holds) {
          reps.push_back(roundtrip_check(r, bound));
          reps.push_back(adjoint_cocycle_check(structure_group(r, bound)));
        }
      }
      outcome = collect(out, reps);
    } else if (brace->parsed()) {
      if (!power.empty()) {
        auto p = parse_int_list(power);
        if (p.size() != 3)
          throw InputError("--power needs m:n:r");
        auto R = projection_operator(power_module(p[0], p[1], p[2]), Signature::cyclic(p[1]));
        auto D = descendent(R);
        auto B = brace_from_rrb(R);
        json out{{"power", p}, {"descendent_group", fingerprint(D)}};
        outcome = collect(out, {check_descendent(D), brace_check(B), gamma_check(B), gamma_matches_operator(B, R)});
      } else {
        SigmaTuple t = brace_in.get();
        auto R = perm_operator(t, Bounded{brace_radius, 256, seed});
        auto B = brace_view(R);
        json out{{"tuple", tuple_json(t)}, {"radius", brace_radius}};
        outcome = collect(out, {brace_check(B), gamma_check(B), gamma_matches_operator(B, R)});
      }
    } else if (tstruct->parsed()) {
      if (t_action == "check") {
        auto [lo, hi] = parse_range(krange);
        if (t_in.given()) {
          SigmaTuple t = t_in.get();
          auto R = perm_operator(t, Bounded{default_radius(t.n), 256, seed});
          json out{{"tuple", tuple_json(t)}};
          outcome = collect(out, {tstruct_check(t_from_rrb(R), lo, hi), scaled_power_check(R, 4)});
        } else {
          if (t_file.empty())
            throw InputError("tstruct check needs a file or --tuple");
          TStructure T = tstructure_from_json(read_json_file(t_file));
          outcome = collect(json{{"moduli", T.sig.moduli()}}, {tstruct_check(T, lo, hi)});
        }
      } else {
        if (modulus < 1)
          throw InputError("reconstruct needs --modulus m >= 1");
        Signature sig = Signature::cyclic(modulus);
        TStructure T = TStructure::identity(sig, enumerate_all(sig));
        if (!table.empty()) {
          std::vector<IntVec> img;
          for (auto v : parse_int_list(table))
            img.emplace_back(sig, std::vector<std::int64_t>{v});
          T = TStructure::from_table(sig, img);
        }
        try {
          CyclicBraceDatum D = cyclic_reconstruct(T);
          json out = D;
          outcome = collect(out, {D.report});
        } catch (const CheckFailed &e) {
          outcome = collect(json{{"modulus", modulus}}, {e.report()});
        }
      }
    } else if (lie->parsed()) {
      std::vector<lie::Family> fams;
      // --family all sweeps s over -1, -0.5, 0.5, 1 unless --s is given
      bool sweep = family == "all" && s_opt->count() == 0;
      std::vector<double> ss = sweep ? std::vector<double>{-1, -0.5, 0.5, 1} : std::vector<double>{s};
      std::vector<std::string> names = family == "all" ? std::vector<std::string>{"Bs", "Bps", "Rs"}
                                                       : std::vector<std::string>{family};
      for (const auto &nm : names)
        for (double v : ss)
          fams.push_back(lie::Family::parse(nm, v));
      std::vector<Report> reps;
      for (const auto &F : fams)
        reps.push_back(lie::family_check(F, samples, seed));
      outcome = collect(json{{"samples", samples}}, reps);
    } else if (bchc->parsed()) {
      if (gens < 1)
        throw InputError("--gens must be at least 1");
      if (degree > 8)
        throw InputError("--degree above 8 is not supported");
      bch::NCPoly z = bch::NCPoly::generator(gens, degree, 0);
      for (std::size_t i = 1; i < gens; ++i)
        z = bch::bch(z, bch::NCPoly::generator(gens, degree, i));
      json out{{"series", z}, {"text", z.str()}};
      if (lyndon) {
        json lj = json::array();
        for (const auto &[word, c] : bch::lyndon_expansion(z))
          lj.push_back({{"bracket", word}, {"coefficient", bch::rational_str(c)}});
        out["lyndon"] = lj;
      }
      outcome = collect(out, {bch::lie_check(z)});
    }
    code = outcome.holds ? 0 : 1;
  } catch (const InputError &e) {
    std::cerr << "rrb: " << e.what() << "\n";
    return 2;
  } catch (const CheckFailed &e) {
    outcome.result = json{{"reports", json::array({e.report()})}};
    outcome.holds = false;
    code = 1;
  } catch (const json::exception &e) {
    std::cerr << "rrb: bad JSON input: " << e.what() << "\n";
    return 2;
  }

  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json report{{"command", command}, {"seed", seed}, {"holds", outcome.holds}, {"result", outcome.result},
              {"wall_time_s", wall}};
  std::string text = report.dump(2);
  std::cout << text << "\n";
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) {
      std::cerr << "rrb: cannot write " << json_path << "\n";
      return 2;
    }
    out << text << "\n";
  }
  return code;
}
