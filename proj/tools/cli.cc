// Copyright 2026 The dsp-pack Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "dsp/baseline.h"
#include "dsp/bounds.h"
#include "dsp/containers.h"
#include "dsp/exact.h"
#include "dsp/fixtures.h"
#include "dsp/json_io.h"
#include "dsp/profile.h"
#include "dsp/ptas_short.h"
#include "dsp/square.h"
#include "json.hpp"

namespace dsp::cli {
namespace {

using json = nlohmann::json;

const std::vector<std::string> kAlgos = {"two-approx", "five-thirds",
                                         "ptas-short", "square",
                                         "exact-dsp",  "exact-gsp"};

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A file path, or the name of a built-in instance.
Instance LoadInstance(const std::string& source) {
  std::ifstream probe(source);
  if (!probe) {
    const std::vector<std::string> names = named_instance_names();
    if (std::find(names.begin(), names.end(), source) != names.end()) {
      return named_instance(source);
    }
    throw UsageError("cannot read " + source);
  }
  return instance_from_json(ReadFile(source));
}

std::string InstanceId(const std::string& source) {
  const size_t slash = source.find_last_of('/');
  std::string base = slash == std::string::npos ? source
                                                : source.substr(slash + 1);
  const size_t dot = base.rfind(".json");
  if (dot != std::string::npos) base = base.substr(0, dot);
  return base;
}

void Emit(const std::string& text, const std::string& path,
          std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

OracleBudget Budget(std::int64_t nodes, double seconds) {
  OracleBudget b;
  if (nodes > 0) b.node_limit = nodes;
  b.time_limit_s = seconds;
  return b;
}

std::string ParamsField(const std::map<std::string, std::string>& params) {
  std::string s;
  for (const auto& [k, v] : params) {
    if (!s.empty()) s += ";";
    s += k + "=" + v;
  }
  std::replace(s.begin(), s.end(), ',', ' ');
  return s;
}

std::string Color(Int id) {
  return "hsl(" + std::to_string((id * 47) % 360) + ",60%,70%)";
}

}  // namespace

Solution solve(const Instance& instance, const AlgoOptions& options,
               GeomPlacement* placement) {
  const std::string& algo = options.algo;
  if (algo == "two-approx") return two_approx(instance);
  if (algo == "five-thirds") {
    FiveThirdsOptions o;
    if (!options.eps.empty()) o.eps = parse_rational(options.eps);
    if (options.mode == "enumerate") {
      o.mode = FiveThirdsMode::kEnumerate;
    } else if (options.mode != "guided") {
      throw UsageError("unknown --mode " + options.mode);
    }
    if (options.budget > 0) o.reference_budget.node_limit = options.budget;
    Solution s = five_thirds(instance, o);
    s.report.params["seed"] = std::to_string(options.seed);
    return s;
  }
  if (algo == "ptas-short") {
    PtasOptions o;
    if (!options.eps.empty()) o.eps = parse_rational(options.eps);
    o.seed = options.seed;
    return ptas_short(instance, o);
  }
  if (algo == "square") {
    SquareOptions o;
    if (!options.beta.empty()) o.beta = parse_rational(options.beta);
    if (!options.eps.empty()) o.eps = parse_rational(options.eps);
    if (options.budget > 0) o.reference_budget.node_limit = options.budget;
    return square_dsp(instance, o);
  }
  if (algo == "exact-dsp" || algo == "exact-gsp") {
    const OracleBudget budget = Budget(options.budget, 600.0);
    Solution s;
    s.report.algorithm = algo;
    s.report.lower_bound = lower_bound(instance).value;
    if (algo == "exact-dsp") {
      const ExactDspResult r = exact_dsp(instance, budget);
      s.schedule = r.schedule;
      s.report.proven_optimal = r.proven_optimal;
      s.report.params["proven_lower_bound"] = std::to_string(r.lower_bound);
      s.report.params["nodes"] = std::to_string(r.nodes);
    } else {
      const ExactGspResult r = exact_gsp(instance, budget);
      for (const auto& [id, xy] : r.placement.pos) s.schedule.starts[id] = xy.first;
      s.report.proven_optimal = r.proven_optimal;
      s.report.params["gsp_height"] = std::to_string(r.peak);
      s.report.params["proven_lower_bound"] = std::to_string(r.lower_bound);
      s.report.params["nodes"] = std::to_string(r.nodes);
      if (placement != nullptr) *placement = r.placement;
    }
    s.report.peak = validate_schedule(instance, s.schedule, true);
    s.report.set_ratio();
    return s;
  }
  throw UsageError("unknown --algo " + algo);
}

std::string render_svg(const Instance& instance, const Schedule& schedule,
                       const GeomPlacement& placement) {
  const Int W = instance.W();
  const DemandProfile profile = build_profile(instance, schedule);
  const Int pk = peak(profile);
  const bool geometric = !placement.pos.empty();
  const Int H = std::max<Int>({1, pk, geometric ? placement.box_h : 0});
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << W
      << " " << H << "\" width=\"800\" height=\"" << std::max<Int>(200, 800 * H / W)
      << "\" preserveAspectRatio=\"none\">\n";
  auto rect = [&](Int id, Int x, Int y, Int w, Int h) {
    svg << "  <rect x=\"" << x << "\" y=\"" << H - y - h << "\" width=\"" << w
        << "\" height=\"" << h << "\" fill=\"" << Color(id)
        << "\" stroke=\"#333\" stroke-width=\"0.02\"><title>task " << id
        << "</title></rect>\n";
  };
  if (geometric) {
    for (const auto& [id, xy] : placement.pos) {
      const Task& t = instance.task(id);
      rect(id, xy.first, xy.second, t.w, t.h);
    }
  } else {
    DemandProfile stack(W);
    for (const Task& t : instance.tasks()) {
      if (!schedule.contains(t.id) || t.h == 0) continue;
      const Int s = schedule.start(t.id);
      for (size_t i = stack.run_index(s); i < stack.runs().size(); ++i) {
        const Int lo = std::max(s, stack.runs()[i].start);
        const Int hi = std::min(s + t.w, stack.run_end(i));
        if (lo >= hi) break;
        rect(t.id, lo, stack.runs()[i].demand, hi - lo, t.h);
      }
      stack.add(s, t.w, t.h);
    }
  }
  svg << "  <path d=\"M0 " << H;
  for (size_t i = 0; i < profile.runs().size(); ++i) {
    const Int y = H - profile.runs()[i].demand;
    svg << " L" << profile.runs()[i].start << " " << y << " L"
        << profile.run_end(i) << " " << y;
  }
  svg << " L" << W << " " << H << "\" fill=\"none\" stroke=\"#c00\" "
      << "stroke-width=\"0.05\"/>\n</svg>\n";
  return svg.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Demand strip packing solvers and tools", "dsp"};
  app.require_subcommand(1);

  AlgoOptions algo;
  std::string instance_path;
  std::string schedule_path;
  std::string out_path;

  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve an instance");
  solve_cmd->add_option("instance", instance_path, "Instance JSON or name")
      ->required();
  solve_cmd->add_option("--algo", algo.algo)->check(CLI::IsMember(kAlgos));
  solve_cmd->add_option("--eps", algo.eps, "Rational, e.g. 1/10");
  solve_cmd->add_option("--beta", algo.beta, "Aspect bound for square");
  solve_cmd->add_option("--seed", algo.seed);
  solve_cmd->add_option("--mode", algo.mode)
      ->check(CLI::IsMember({"guided", "enumerate"}));
  solve_cmd->add_option("--budget", algo.budget, "Oracle node limit");
  solve_cmd->add_option("--out", out_path);

  Int max_peak = -1;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Validate a schedule");
  verify_cmd->add_option("instance", instance_path)->required();
  verify_cmd->add_option("schedule", schedule_path)->required();
  verify_cmd->add_option("--max-peak", max_peak);

  std::vector<std::string> sources;
  std::string algo_list = "two-approx,five-thirds,ptas-short,square";
  bool with_exact = false;
  int random_count = 0;
  int jobs = 1;
  GeneratorParams gp;
  CLI::App* bench_cmd = app.add_subcommand("bench", "CSV benchmark rows");
  bench_cmd->add_option("instances", sources, "Instance files or names");
  bench_cmd->add_option("--algo", algo_list, "Comma-separated algorithms");
  bench_cmd->add_flag("--exact", with_exact, "Fill the exact column");
  bench_cmd->add_option("--random", random_count, "Add seeded instances");
  bench_cmd->add_option("--seed", algo.seed);
  bench_cmd->add_option("--eps", algo.eps);
  bench_cmd->add_option("--beta", algo.beta);
  bench_cmd->add_option("--mode", algo.mode)
      ->check(CLI::IsMember({"guided", "enumerate"}));
  bench_cmd->add_option("--budget", algo.budget);
  bench_cmd->add_option("--jobs", jobs)->check(CLI::Range(1, 256));
  bench_cmd->add_option("--n-max", gp.n_max);
  bench_cmd->add_option("--W-max", gp.W_max);
  bench_cmd->add_option("--h-max", gp.h_max);
  bench_cmd->add_option("--out", out_path);

  std::string kind = "random";
  std::string name;
  std::string beta_text;
  Int W = 10;
  Int layers = 30;
  Int parts = 3;
  std::vector<Int> A;
  Int inv_eps = 4;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Emit an instance");
  gen_cmd->add_option("--kind", kind)
      ->check(CLI::IsMember({"random", "flat", "hardness", "named"}));
  gen_cmd->add_option("--seed", gp.seed);
  gen_cmd->add_option("--n-min", gp.n_min);
  gen_cmd->add_option("--n-max", gp.n_max);
  gen_cmd->add_option("--W-min", gp.W_min);
  gen_cmd->add_option("--W-max", gp.W_max);
  gen_cmd->add_option("--h-min", gp.h_min);
  gen_cmd->add_option("--h-max", gp.h_max);
  gen_cmd->add_option("--beta", beta_text, "Aspect bound h <= w <= beta h");
  gen_cmd->add_option("--W", W, "Path width for flat instances");
  gen_cmd->add_option("--layers", layers);
  gen_cmd->add_option("--parts", parts);
  gen_cmd->add_option("--A", A, "Multiset for the hardness reduction")
      ->delimiter(',');
  gen_cmd->add_option("--inv-eps", inv_eps);
  gen_cmd->add_option("--name", name);
  gen_cmd->add_option("--out", out_path);

  CLI::App* render_cmd = app.add_subcommand("render", "Write an SVG");
  render_cmd->add_option("instance", instance_path)->required();
  render_cmd->add_option("schedule", schedule_path);
  render_cmd->add_option("--out", out_path)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) {
      const Instance inst = LoadInstance(instance_path);
      GeomPlacement placement;
      const Solution s = solve(inst, algo, &placement);
      json j = json::parse(schedule_to_json(s.schedule));
      j["report"] = json::parse(report_to_json(s.report));
      if (!placement.pos.empty()) {
        j["placement"] = json::parse(placement_to_json(placement));
      }
      Emit(j.dump(2) + "\n", out_path, out);
      return kExitOk;
    }
    if (verify_cmd->parsed()) {
      const Instance inst = LoadInstance(instance_path);
      const Schedule s = schedule_from_json(ReadFile(schedule_path));
      const Int pk = validate_schedule(inst, s, true);
      if (max_peak >= 0 && pk > max_peak) {
        err << "peak " << pk << " exceeds --max-peak " << max_peak << "\n";
        return kExitValidation;
      }
      out << "valid, peak " << pk << "\n";
      return kExitOk;
    }
    if (bench_cmd->parsed()) {
      std::vector<std::string> algos;
      std::stringstream ss(algo_list);
      for (std::string a; std::getline(ss, a, ',');) {
        if (std::find(kAlgos.begin(), kAlgos.end(), a) == kAlgos.end()) {
          throw UsageError("unknown algorithm " + a);
        }
        algos.push_back(a);
      }
      std::vector<std::pair<std::string, Instance>> instances;
      for (const std::string& src : sources) {
        instances.emplace_back(InstanceId(src), LoadInstance(src));
      }
      for (int i = 0; i < random_count; ++i) {
        GeneratorParams p = gp;
        p.n_min = std::min<Int>(1, p.n_max);
        p.h_min = std::min<Int>(1, p.h_max);
        p.seed = algo.seed + i;
        instances.emplace_back("random-" + std::to_string(p.seed),
                               random_instance(p));
      }
      std::vector<std::string> exact(instances.size());
      std::vector<std::string> rows(instances.size() * algos.size());
      std::atomic<size_t> next{0};
      const size_t exact_jobs = with_exact ? instances.size() : 0;
      const size_t total = exact_jobs + rows.size();
      auto work = [&] {
        for (size_t k = next++; k < total; k = next++) {
          if (k < exact_jobs) {
            const ExactDspResult r =
                exact_dsp(instances[k].second, Budget(algo.budget, 30.0));
            if (r.proven_optimal) exact[k] = std::to_string(r.peak);
            continue;
          }
          const size_t idx = k - exact_jobs;
          const auto& [id, inst] = instances[idx / algos.size()];
          AlgoOptions o = algo;
          o.algo = algos[idx % algos.size()];
          std::ostringstream row;
          row << id << "," << o.algo << ",";
          try {
            const Solution s = solve(inst, o);
            row << s.report.peak << "," << s.report.lower_bound << ",{exact},"
                << std::fixed << std::setprecision(4)
                << to_double(s.report.ratio) << "," << std::setprecision(2)
                << s.report.wall_ms << "," << o.seed << ","
                << ParamsField(s.report.params);
          } catch (const Error& e) {
            std::string what = e.what();
            std::replace(what.begin(), what.end(), ',', ' ');
            row << ",,{exact},,," << o.seed << ",error=" << what;
          }
          rows[idx] = row.str();
        }
      };
      std::vector<std::thread> pool;
      for (int t = 1; t < jobs; ++t) pool.emplace_back(work);
      work();
      for (std::thread& t : pool) t.join();
      std::string csv = std::string(kBenchHeader) + "\n";
      for (size_t idx = 0; idx < rows.size(); ++idx) {
        std::string row = rows[idx];
        row.replace(row.find("{exact}"), 7, exact[idx / algos.size()]);
        csv += row + "\n";
      }
      Emit(csv, out_path, out);
      return kExitOk;
    }
    if (gen_cmd->parsed()) {
      Instance inst;
      if (kind == "random") {
        if (!beta_text.empty()) gp.beta = parse_rational(beta_text);
        inst = random_instance(gp);
      } else if (kind == "flat") {
        inst = random_flat_instance(W, layers, parts, gp.seed);
      } else if (kind == "hardness") {
        inst = hardness_instance(A, inv_eps);
      } else {
        inst = named_instance(name);
      }
      Emit(json::parse(instance_to_json(inst)).dump(2) + "\n", out_path, out);
      return kExitOk;
    }
    if (render_cmd->parsed()) {
      const Instance inst = LoadInstance(instance_path);
      Schedule s;
      GeomPlacement placement;
      if (!schedule_path.empty()) {
        const std::string text = ReadFile(schedule_path);
        s = schedule_from_json(text);
        const json j = json::parse(text);
        if (j.contains("placement")) {
          placement = placement_from_json(j.at("placement").dump());
        }
      } else {
        s = two_approx(inst).schedule;
      }
      validate_schedule(inst, s, false);
      Emit(render_svg(inst, s, placement), out_path, out);
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "validation failed: " << e.what() << "\n";
    return kExitValidation;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "internal defect: " << e.what() << "\n";
    return kExitDefect;
  }
  return kExitUsage;
}

}  // namespace dsp::cli
