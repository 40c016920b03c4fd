#include "cli.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "polytree/errors.hpp"
#include "polytree/generators.hpp"
#include "polytree/instance.hpp"
#include "polytree/kernelizer.hpp"
#include "polytree/polytree.hpp"
#include "polytree/solver_dp.hpp"
#include "polytree/solver_enum.hpp"
#include "polytree/solver_fpt.hpp"

namespace polytree::cli {

namespace {

using json = nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spill(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

struct SolveRequest {
  std::string algo;
  std::uint64_t seed = 0;
  bool truncate = false;
  std::size_t max_n = 20;
};

json solve_report(const Instance& inst, const SolveRequest& req, bool optimize) {
  const auto start = std::chrono::steady_clock::now();
  Solution sol;
  if (req.algo == "enum") {
    sol = solve_enum(inst);
  } else if (req.algo == "dp") {
    DpOptions o;
    o.max_n = req.max_n;
    sol = solve_dp(inst, o);
  } else if (req.algo == "repsets") {
    FptOptions o;
    o.seed = req.seed;
    o.truncate = req.truncate ? Truncation::kOn : Truncation::kAuto;
    sol = solve_fpt(inst, o);
  } else {
    throw UsageError("unknown algorithm '" + req.algo + "'");
  }
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);

  json arcs = json::array();
  for (const Arc& a : sol.best_arcs) arcs.push_back({inst.name(a.parent), inst.name(a.child)});
  json r;
  r["algo"] = req.algo;
  r["n"] = inst.size();
  r["d"] = dependent_vertices(inst).size();
  r["p"] = inst.max_parent_size();
  r["delta"] = inst.delta();
  r["best_score"] = sol.best_score;
  r["decision"] = optimize ? json(nullptr) : json(sol.best_score >= inst.threshold() ? "yes" : "no");
  r["arcs"] = std::move(arcs);
  r["wall_ms"] = elapsed.count();
  r["seed"] = req.seed;
  return r;
}

void print_report(const json& r, bool as_json, std::ostream& out) {
  if (as_json) {
    out << r.dump() << "\n";
    return;
  }
  out << "best_score " << r["best_score"].get<Score>() << "\n";
  if (!r["decision"].is_null()) out << "decision " << r["decision"].get<std::string>() << "\n";
  for (const auto& a : r["arcs"]) out << "arc " << a[0].get<std::string>() << " " << a[1].get<std::string>() << "\n";
}

int decision_code(const json& r) {
  return r["decision"].is_null() || r["decision"] == "yes" ? kYes : kNo;
}

struct BenchItem {
  std::filesystem::path file;
  Score t = 0;
  std::string algo;
};

std::vector<BenchItem> read_suite(const std::filesystem::path& path) {
  std::vector<BenchItem> items;
  std::istringstream in(slurp(path));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    BenchItem item;
    std::string file;
    if (!(ls >> file)) continue;
    std::string extra;
    if (!(ls >> item.t >> item.algo) || (ls >> extra) || item.t < 0) {
      throw ParseError(ParseErrorKind::kMalformedEntry, line_no, "expected 'scorefile t algo'");
    }
    item.file = std::filesystem::path(file).is_absolute() ? std::filesystem::path(file) : path.parent_path() / file;
    items.push_back(std::move(item));
  }
  return items;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polytree structure learning: exact solvers, kernelization and instance generators"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "Find the best polytree or decide score >= t");
  SolveRequest req;
  std::string in_path;
  std::optional<Score> t;
  bool optimize = false;
  bool as_json = false;
  solve->add_option("--algo", req.algo, "dp | enum | repsets")->required()->check(CLI::IsMember({"dp", "enum", "repsets"}));
  solve->add_option("--in", in_path, "Score file")->required();
  solve->add_option("--t", t, "Threshold (decision mode)");
  solve->add_flag("--optimize", optimize, "Report the optimum and ignore t");
  solve->add_option("--seed", req.seed, "Seed for randomized truncation");
  solve->add_flag("--truncate", req.truncate, "Always use randomized truncation (repsets)");
  solve->add_option("--max-n", req.max_n, "Largest n the DP accepts");
  solve->add_flag("--json", as_json, "One JSON object per result");

  // kernelize
  auto* kern = app.add_subcommand("kernelize", "Reduce an instance to its necessary vertices");
  std::string kern_out;
  std::string kern_map;
  std::uint64_t kern_seed = 0;
  Score kern_t = 0;
  kern->add_option("--in", in_path, "Score file")->required();
  kern->add_option("--t", kern_t, "Threshold (carried over)");
  kern->add_option("--out", kern_out, "Reduced score file (default: stdout)");
  kern->add_option("--map", kern_map, "Vertex map file: 'reduced-name original-name' lines");
  kern->add_option("--seed", kern_seed, "Seed for randomized truncation");

  // generate
  auto* gen = app.add_subcommand("generate", "Write a generated score file");
  gen->require_subcommand(1);
  std::string gen_out;
  gen->add_option("--out", gen_out, "Output score file; the threshold goes to <out>.t");
  auto* gen_is = gen->add_subcommand("is-reduction", "From an Independent Set instance");
  std::string graph_path;
  std::size_t gen_k = 0;
  gen_is->add_option("--graph", graph_path, "Graph file ('n m' then 'u v' lines)")->required();
  gen_is->add_option("--k", gen_k, "Independent set size")->required();
  auto* gen_mis = gen->add_subcommand("mis-reduction", "From a Multicolored Independent Set instance");
  std::string partition_path;
  gen_mis->add_option("--graph", graph_path, "Graph file")->required();
  gen_mis->add_option("--partition", partition_path, "One class of vertex indices per line")->required();
  auto* gen_rand = gen->add_subcommand("random", "Random instance");
  std::size_t rn = 8;
  std::size_t rdelta = 4;
  std::size_t rp = 2;
  Score rmax = 100;
  std::uint64_t rseed = 0;
  gen_rand->add_option("--n", rn, "Vertex count");
  gen_rand->add_option("--delta", rdelta, "Upper bound on potential parent sets per vertex");
  gen_rand->add_option("--p", rp, "Largest parent-set size");
  gen_rand->add_option("--max-score", rmax, "Largest local score");
  gen_rand->add_option("--seed", rseed, "Random seed");

  // verify
  auto* verify = app.add_subcommand("verify", "Check an arc set against an instance");
  std::string arcs_path;
  Score verify_t = 0;
  verify->add_option("--in", in_path, "Score file")->required();
  verify->add_option("--arcs", arcs_path, "Arc file ('PARENT CHILD' lines)")->required();
  verify->add_option("--t", verify_t, "Threshold")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "Run a suite of 'scorefile t algo' lines, one JSON line each");
  std::string suite_path;
  unsigned threads = std::max(1U, std::thread::hardware_concurrency());
  std::uint64_t bench_seed = 0;
  bench->add_option("--suite", suite_path, "Suite file")->required();
  bench->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_seed, "Seed for repsets runs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kYes : kUsage;
  }

  try {
    if (*solve) {
      if (!optimize && !t) throw UsageError("--t is required unless --optimize is given");
      const Instance inst = read_instance(in_path, optimize ? 0 : *t);
      const json r = solve_report(inst, req, optimize);
      print_report(r, as_json, out);
      return decision_code(r);
    }
    if (*kern) {
      const Instance inst = read_instance(in_path, kern_t);
      KernelOptions ko;
      ko.seed = kern_seed;
      const KernelResult k = kernelize(inst, ko);
      const std::string text = write_instance(k.reduced);
      if (kern_out.empty()) {
        out << text;
      } else {
        spill(kern_out, text);
      }
      if (!kern_map.empty()) {
        std::string map;
        for (const auto& [a, b] : k.vertex_map) map += a + " " + b + "\n";
        spill(kern_map, map);
      }
      err << "kernel: n " << inst.size() << " -> " << k.reduced.size() << ", d " << k.d << ", p " << k.p << "\n";
      return kYes;
    }
    if (*gen) {
      Instance inst;
      std::optional<Score> threshold;
      if (*gen_is) {
        inst = gen_from_independent_set(parse_graph(slurp(graph_path)), gen_k);
        threshold = inst.threshold();
      } else if (*gen_mis) {
        inst = gen_from_multicolored_is(parse_graph(slurp(graph_path)), parse_partition(slurp(partition_path)));
        threshold = inst.threshold();
      } else {
        inst = gen_random(rn, rdelta, rp, rmax, rseed);
      }
      const std::string text = write_instance(inst);
      if (gen_out.empty()) {
        out << text;
        if (threshold) err << "t=" << *threshold << "\n";
      } else {
        spill(gen_out, text);
        if (threshold) spill(gen_out + ".t", "t=" + std::to_string(*threshold) + "\n");
      }
      return kYes;
    }
    if (*verify) {
      const Instance inst = read_instance(in_path, verify_t);
      const ArcSet arcs = parse_arcs(slurp(arcs_path), inst);
      const VerifyReport r = verify_solution(inst, arcs);
      out << "polytree " << (r.polytree ? "true" : "false") << "\n";
      out << "score " << r.score << "\n";
      out << "meets_t " << (r.meets_t ? "true" : "false") << "\n";
      return r.polytree && r.meets_t ? kYes : kNo;
    }
    if (*bench) {
      const auto items = read_suite(suite_path);
      std::vector<json> results(items.size());
      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        for (std::size_t i = next++; i < items.size(); i = next++) {
          SolveRequest r;
          r.algo = items[i].algo;
          r.seed = bench_seed;
          try {
            json j = solve_report(read_instance(items[i].file, items[i].t), r, false);
            j["file"] = items[i].file.string();
            results[i] = std::move(j);
          } catch (const std::exception& e) {
            results[i] = json{{"file", items[i].file.string()}, {"algo", items[i].algo}, {"error", e.what()}};
          }
        }
      };
      std::vector<std::thread> pool;
      for (unsigned i = 0; i < std::min<std::size_t>(threads, items.size()); ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
      bool failed = false;
      for (const auto& j : results) {
        out << j.dump() << "\n";
        failed = failed || j.contains("error");
      }
      return failed ? kFailure : kYes;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace polytree::cli
