#include "mcsp/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mcsp/fpt_solver.hpp"
#include "mcsp/io.hpp"
#include "mcsp/oracle.hpp"

namespace mcsp {

namespace {

using nlohmann::json;

struct RunConfig {
  std::string engine = "fpt";
  int k = 1;
  std::uint64_t seed = 0;
  std::uint64_t branch_budget = 0;
  bool stats = false;
  bool as_json = false;
  bool tokens = false;
  std::string input;
  std::string output;
};

struct EngineOutcome {
  std::optional<CommonStringPartition> csp;
  json stats = json::object();
};

EngineOutcome run_engine(const Instance& inst, const std::string& engine, int k, std::uint64_t budget) {
  EngineOutcome out;
  if (engine == "fpt") {
    FptSolver solver(inst, SolverConfig{k, budget});
    out.csp = solver.solve();
    out.stats = solver.stats().to_json();
  } else if (engine == "oracle") {
    OracleResult res = brute_force_min_csp(inst, k);
    out.csp = res.witness;
    out.stats = {{"explored", res.explored}};
  } else {
    if (inst.is_anagram()) {
      auto csp = greedy_csp(inst);
      out.stats = {{"greedy_size", csp->size()}};
      if (csp->size() <= k) out.csp = csp;
    }
  }
  return out;
}

void print_blocks(std::ostream& out, const Instance& inst, const CommonStringPartition& csp) {
  for (std::size_t i = 0; i < csp.x_blocks.size(); ++i) {
    const Block& xb = csp.x_blocks[i];
    const Block& yb = csp.y_blocks[static_cast<std::size_t>(csp.matching[i])];
    out << "  x[" << xb.first << ".." << xb.last << "] = y[" << yb.first << ".." << yb.last
        << "]  " << inst.render(Interval{Side::X, xb.first, xb.last}) << '\n';
  }
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  json doc{{"engine", cfg.engine}, {"k", cfg.k}};
  auto fail = [&](int code, const std::string& status, const std::string& msg) {
    err << "mcsp: " << msg << '\n';
    if (cfg.as_json) {
      doc["status"] = status;
      doc["error"] = msg;
      out << doc.dump() << '\n';
    }
    return code;
  };
  std::optional<Instance> inst;
  try {
    inst = read_instance_file(cfg.input, cfg.tokens);
  } catch (const ParseError& e) {
    return fail(kExitParse, "parse_error", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(kExitParse, "parse_error", e.what());
  }
  EngineOutcome res;
  try {
    res = run_engine(*inst, cfg.engine, cfg.k, cfg.branch_budget);
  } catch (const BudgetExceeded& e) {
    return fail(kExitResource, "resource", e.what());
  } catch (const OracleLimitExceeded& e) {
    return fail(kExitResource, "resource", e.what());
  }
  if (res.csp && !cfg.output.empty()) std::ofstream(cfg.output) << to_json(*res.csp).dump(2) << '\n';
  if (cfg.as_json) {
    doc["status"] = res.csp ? "yes" : "none";
    if (res.csp) {
      doc["size"] = res.csp->size();
      doc["csp"] = to_json(*res.csp);
    }
    if (cfg.stats) doc["stats"] = res.stats;
    out << doc.dump() << '\n';
  } else {
    if (res.csp) {
      out << "yes, size " << res.csp->size() << '\n';
      print_blocks(out, *inst, *res.csp);
      out << to_json(*res.csp).dump() << '\n';
    } else {
      out << "none\n";
    }
    if (cfg.stats) out << "stats " << res.stats.dump(2) << '\n';
  }
  return res.csp ? kExitYes : kExitNo;
}

int cmd_verify(const RunConfig& cfg, const std::string& csp_path, std::ostream& out, std::ostream& err) {
  std::optional<Instance> inst;
  CommonStringPartition csp;
  try {
    inst = read_instance_file(cfg.input, cfg.tokens);
    csp = csp_from_json(read_json_file(csp_path));
  } catch (const std::exception& e) {
    err << "mcsp: " << e.what() << '\n';
    if (cfg.as_json) out << json{{"status", "parse_error"}, {"error", e.what()}}.dump() << '\n';
    return kExitParse;
  }
  CspDefect d = diagnose_csp(*inst, csp, cfg.k);
  if (cfg.as_json)
    out << json{{"status", d == CspDefect::None ? "valid" : "invalid"}, {"reason", defect_name(d)}, {"size", csp.size()}}
               .dump()
        << '\n';
  else
    out << (d == CspDefect::None ? "valid" : "invalid: " + std::string(defect_name(d))) << '\n';
  return d == CspDefect::None ? kExitYes : kExitNo;
}

int cmd_gen(int n, int k, int sigma, std::uint64_t seed, const RunConfig& cfg, std::ostream& out,
            std::ostream& err) {
  GeneratedInstance g = generate_instance(n, k, sigma, seed);
  const bool tokens = cfg.tokens || sigma > 26;
  std::string text = format_instance(g.inst, tokens);
  if (cfg.output.empty()) {
    out << text;
    err << "planted " << k << '\n';
  } else {
    std::ofstream(cfg.output) << text;
    if (cfg.as_json)
      out << json{{"path", cfg.output}, {"planted", k}, {"n", n}, {"sigma", sigma}, {"seed", seed}}.dump() << '\n';
    else
      out << "planted " << k << '\n';
  }
  return kExitYes;
}

json bench_one(const Instance& inst, const std::string& engine, int k_max, std::uint64_t budget) {
  json rec{{"engine", engine}};
  auto t0 = std::chrono::steady_clock::now();
  try {
    if (engine == "fpt") {
      BranchStats total;
      std::optional<int> size;
      for (int k = 1; k <= k_max && !size; ++k) {
        FptSolver solver(inst, SolverConfig{k, budget});
        auto csp = solver.solve();
        total.merge(solver.stats());
        if (csp) size = csp->size();
      }
      rec["decision"] = size ? "yes" : "none";
      if (size) rec["size"] = *size;
      rec["states"] = total.states;
    } else if (engine == "oracle") {
      OracleResult res = brute_force_min_csp(inst, k_max);
      rec["decision"] = res.min_size ? "yes" : "none";
      if (res.min_size) rec["size"] = *res.min_size;
      rec["explored"] = res.explored;
    } else {
      if (!inst.is_anagram()) {
        rec["decision"] = "none";
      } else {
        auto csp = greedy_csp(inst);
        rec["decision"] = csp->size() <= k_max ? "yes" : "none";
        rec["size"] = csp->size();
      }
    }
  } catch (const BudgetExceeded& e) {
    rec["decision"] = "resource";
    rec["error"] = e.what();
  } catch (const OracleLimitExceeded& e) {
    rec["decision"] = "resource";
    rec["error"] = e.what();
  } catch (const std::exception& e) {
    rec["decision"] = "error";
    rec["error"] = e.what();
  }
  rec["wall_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

int cmd_bench(const std::string& dir, int k_max, const std::vector<std::string>& engines, const RunConfig& cfg,
              std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec))
    if (entry.is_regular_file()) files.push_back(entry.path());
  if (ec) {
    err << "mcsp: cannot read " << dir << ": " << ec.message() << '\n';
    return kExitParse;
  }
  std::sort(files.begin(), files.end());
  json instances = json::array();
  std::map<std::pair<std::string, std::string>, std::pair<int, int>> agree;  // agreeing, compared
  int greedy_below_oracle = 0;
  for (const auto& path : files) {
    json row{{"file", path.filename().string()}};
    json runs = json::object();
    try {
      Instance inst = read_instance_file(path.string(), cfg.tokens);
      row["n"] = inst.n();
      for (const auto& e : engines) runs[e] = bench_one(inst, e, k_max, cfg.branch_budget);
    } catch (const std::exception& e) {
      row["error"] = e.what();
    }
    for (std::size_t a = 0; a < engines.size(); ++a) {
      for (std::size_t b = a + 1; b < engines.size(); ++b) {
        if (!runs.contains(engines[a]) || !runs.contains(engines[b])) continue;
        const auto& da = runs[engines[a]]["decision"];
        const auto& db = runs[engines[b]]["decision"];
        auto decided = [](const json& d) { return d == "yes" || d == "none"; };
        if (!decided(da) || !decided(db)) continue;
        auto& cell = agree[{engines[a], engines[b]}];
        cell.second += 1;
        cell.first += da == db ? 1 : 0;
      }
    }
    if (runs.contains("greedy") && runs.contains("oracle") && runs["greedy"].contains("size") &&
        runs["oracle"].contains("size") && runs["greedy"]["size"].get<int>() < runs["oracle"]["size"].get<int>())
      ++greedy_below_oracle;
    row["runs"] = runs;
    instances.push_back(row);
  }
  json matrix = json::object();
  for (const auto& [key, cell] : agree)
    matrix[key.first + "/" + key.second] = {
        {"agree", cell.first}, {"compared", cell.second},
        {"rate", cell.second ? static_cast<double>(cell.first) / cell.second : 1.0}};
  json report{{"k_max", k_max},
              {"engines", engines},
              {"instances", instances},
              {"agreement", matrix},
              {"greedy_below_oracle", greedy_below_oracle}};
  if (!cfg.output.empty()) std::ofstream(cfg.output) << report.dump(2) << '\n';
  if (cfg.as_json || cfg.output.empty()) {
    out << report.dump(cfg.as_json ? -1 : 2) << '\n';
  } else {
    out << files.size() << " instances\n";
    for (const auto& [key, cell] : agree)
      out << "  " << key.first << " vs " << key.second << ": " << cell.first << '/' << cell.second << " agree\n";
    out << "  greedy below oracle: " << greedy_below_oracle << '\n';
  }
  return kExitYes;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum common string partition toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;
  cfg.branch_budget = default_branch_budget();

  auto* solve = app.add_subcommand("solve", "Decide whether a partition of size at most k exists");
  solve->add_option("--engine", cfg.engine)->check(CLI::IsMember({"fpt", "oracle", "greedy"}));
  solve->add_option("--k", cfg.k)->required()->check(CLI::PositiveNumber);
  solve->add_flag("--stats", cfg.stats);
  solve->add_option("--branch-budget", cfg.branch_budget)->check(CLI::PositiveNumber);
  solve->add_flag("--json", cfg.as_json);
  solve->add_flag("--tokens", cfg.tokens);
  solve->add_option("-o,--output", cfg.output, "Write the partition JSON here");
  solve->add_option("file", cfg.input)->required();

  std::string csp_path;
  auto* verify = app.add_subcommand("verify", "Check a partition against an instance");
  verify->add_option("--k", cfg.k)->required()->check(CLI::PositiveNumber);
  verify->add_flag("--json", cfg.as_json);
  verify->add_flag("--tokens", cfg.tokens);
  verify->add_option("file", cfg.input)->required();
  verify->add_option("csp", csp_path)->required();

  int n = 0, sigma = 2;
  auto* gen = app.add_subcommand("gen", "Generate an instance with a planted partition");
  gen->add_option("--n", n)->required();
  gen->add_option("--k", cfg.k)->required();
  gen->add_option("--sigma", sigma);
  gen->add_option("--seed", cfg.seed);
  gen->add_flag("--json", cfg.as_json);
  gen->add_flag("--tokens", cfg.tokens);
  gen->add_option("-o,--output", cfg.output);

  std::string dir;
  int k_max = 4;
  std::vector<std::string> engines{"fpt", "oracle", "greedy"};
  auto* bench = app.add_subcommand("bench", "Run engines over a directory of instances");
  bench->add_option("--dir", dir)->required();
  bench->add_option("--k-max", k_max)->check(CLI::PositiveNumber);
  bench->add_option("--engines", engines)->delimiter(',')->check(CLI::IsMember({"fpt", "oracle", "greedy"}));
  bench->add_option("--branch-budget", cfg.branch_budget)->check(CLI::PositiveNumber);
  bench->add_flag("--json", cfg.as_json);
  bench->add_flag("--tokens", cfg.tokens);
  bench->add_option("-o,--output", cfg.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitParse;
  }

  try {
    if (*solve) return cmd_solve(cfg, out, err);
    if (*verify) return cmd_verify(cfg, csp_path, out, err);
    if (*gen) return cmd_gen(n, cfg.k, sigma, cfg.seed, cfg, out, err);
    return cmd_bench(dir, k_max, engines, cfg, out, err);
  } catch (const std::domain_error& e) {
    err << "mcsp: " << e.what() << '\n';
    return kExitParse;
  }
}

}  // namespace mcsp
