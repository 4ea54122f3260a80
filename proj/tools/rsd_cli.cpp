#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rsd/generators.hpp"
#include "rsd/graph.hpp"
#include "rsd/history_lab.hpp"
#include "rsd/labeling.hpp"
#include "rsd/protocol.hpp"
#include "rsd/upper_set.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    buf << in.rdbuf();
  }
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

rsd::Graph load_graph(const std::string& path) {
  auto g = rsd::parse_graph(read_input(path));
  if (g.size() < 2) throw UsageError("size discovery needs a graph with at least two nodes");
  return g;
}

nlohmann::ordered_json oracle_json(const rsd::Graph& g) {
  const auto o = rsd::build_oracle(g);
  const auto& d = o.decomposition;
  const auto& plan = o.plan;
  const auto& w = o.weights;
  nlohmann::ordered_json j;
  j["n"] = g.size();
  j["delta"] = d.delta;
  j["h"] = d.height;
  j["root"] = d.root;
  j["levels"] = d.levels;
  auto us = nlohmann::ordered_json::array();
  for (std::size_t l = 0; l < plan.levels.size(); ++l) {
    auto members = nlohmann::ordered_json::array();
    for (const auto& m : plan.levels[l].members) {
      nlohmann::ordered_json e;
      e["node"] = m.node;
      e["private_children"] = m.private_children;
      e["tagged_ids"] = m.tagged_ids;
      members.push_back(e);
    }
    us.push_back({{"level", l}, {"members", members}});
  }
  j["upper_sets"] = us;
  j["weights"] = w;
  j["variants"] = plan.variants;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Size discovery in radio networks with collision detection"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a graph file");
  std::string kind = "tree";
  int n = 0, delta = 4, index = -1, extra = -1;
  std::uint64_t seed = 1;
  std::string out_path;
  gen->add_option("--kind", kind, "tree | graph | star | family")
      ->check(CLI::IsMember({"tree", "graph", "star", "family"}));
  gen->add_option("--n", n, "Number of nodes (tree, graph)");
  gen->add_option("--delta", delta, "Degree cap, star degree, or family Delta");
  gen->add_option("--index", index, "Family member i");
  gen->add_option("--extra", extra, "Extra edges for --kind graph (default n/2)");
  gen->add_option("--seed", seed, "Generator seed");
  gen->add_option("-o,--output", out_path, "Output file (default stdout)");

  // oracle / label / run
  std::string graph_path;
  auto* oracle = app.add_subcommand("oracle", "Levels, upper sets and weights as JSON");
  oracle->add_option("graph", graph_path, "Graph file or -")->required();
  oracle->add_option("-o,--output", out_path);

  auto* label = app.add_subcommand("label", "Labels file and length statistics");
  label->add_option("graph", graph_path, "Graph file or -")->required();
  label->add_option("-o,--output", out_path, "Labels file (default stdout)");

  auto* run = app.add_subcommand("run", "Simulate size discovery");
  std::string trace_path, report_path;
  run->add_option("graph", graph_path, "Graph file or -")->required();
  run->add_option("--trace", trace_path, "Write the round trace here");
  run->add_option("--report", report_path, "Write the JSON report here (default stdout)");

  // lowerbound
  auto* lb = app.add_subcommand("lowerbound", "Lower-bound laboratory");
  lb->require_subcommand(1);
  int beta = 0, max_beta = 64, rounds = 200, trials = 50, labelings = 20, lb_delta = 4;
  std::string delta_text;
  auto* patterns = lb->add_subcommand("patterns", "Exact z^2 * 3^(2z) for z = 2^(beta+1)");
  patterns->add_option("--beta", beta)->required()->check(CLI::NonNegativeNumber);
  patterns->add_option("--max-beta", max_beta, "Guard against runaway sizes");
  auto* crossover = lb->add_subcommand("crossover", "Evaluate z^2 * 3^(2z) < Delta/2");
  crossover->add_option("--beta", beta)->required()->check(CLI::NonNegativeNumber);
  crossover->add_option("--delta", delta_text, "Delta as a decimal integer")->required();
  crossover->add_option("--max-beta", max_beta, "Guard against runaway sizes");
  auto* lemmas = lb->add_subcommand("lemmas", "Check the history lemmas on the tree family");
  lemmas->add_option("--delta", lb_delta)->check(CLI::Range(2, 64));
  lemmas->add_option("--rounds", rounds)->check(CLI::NonNegativeNumber);
  lemmas->add_option("--trials", trials, "Seeded automata per labeling")->check(CLI::PositiveNumber);
  lemmas->add_option("--labelings", labelings)->check(CLI::PositiveNumber);
  lemmas->add_option("--beta", beta, "Label length for sampled labelings")->default_val(2)->check(CLI::Range(0, 8));
  lemmas->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      rsd::Graph g = [&] {
        if (kind == "star") {
          if (delta < 1) throw UsageError("star needs --delta >= 1");
          return rsd::gen::star(delta);
        }
        if (kind == "family") {
          if (delta < 2 || index < delta / 2 || index > delta - 1)
            throw UsageError("family needs --delta >= 2 and floor(delta/2) <= --index <= delta-1");
          return rsd::gen::family_tree(delta, index);
        }
        if (n < 2) throw UsageError(kind + " needs --n >= 2");
        if (kind == "tree") return rsd::gen::random_tree(n, delta, seed);
        return rsd::gen::random_graph(n, delta, seed, extra >= 0 ? extra : n / 2);
      }();
      write_output(out_path, rsd::format_graph(g));
      return kOk;
    }
    if (*oracle) {
      const auto g = load_graph(graph_path);
      write_output(out_path, oracle_json(g).dump(2) + "\n");
      return kOk;
    }
    if (*label) {
      const auto g = load_graph(graph_path);
      const auto o = rsd::build_oracle(g);
      const auto& scheme = o.labels;
      write_output(out_path, rsd::format_labels(scheme));
      const int bound = rsd::label_length_bound(o.decomposition.delta);
      std::cerr << "max_bits " << scheme.max_bits() << " mean_bits " << scheme.mean_bits() << " bound " << bound
                << '\n';
      return static_cast<int>(scheme.max_bits()) <= bound ? kOk : kVerificationFailure;
    }
    if (*run) {
      const auto g = load_graph(graph_path);
      rsd::protocol::RunOptions opt;
      opt.record_trace = !trace_path.empty();
      opt.cap_multiplier = rsd::protocol::round_cap_multiplier_from_env();
      const auto res = rsd::protocol::run_protocol(g, opt);
      if (opt.record_trace) write_output(trace_path, rsd::radio::format_trace(res.trace));
      write_output(report_path, rsd::protocol::report_json(g, res) + "\n");
      if (!res.ok) {
        std::cerr << "run failed: " << res.failure << '\n';
        return kVerificationFailure;
      }
      return kOk;
    }
    if (*patterns || *crossover) {
      if (beta > max_beta) throw UsageError("--beta exceeds --max-beta " + std::to_string(max_beta));
      if (*patterns) {
        std::cout << rsd::lab::pattern_bound(beta) << '\n';
        return kOk;
      }
      rsd::lab::BigInt d;
      try {
        d = rsd::lab::BigInt(delta_text);
      } catch (const std::exception&) {
        throw UsageError("--delta must be a decimal integer");
      }
      const bool holds = rsd::lab::crossover_holds(beta, d);
      std::cout << "beta " << beta << " delta " << d << ' ' << (holds ? "holds" : "fails");
      if (beta <= 20) std::cout << " (" << rsd::lab::pattern_bound(beta) << " < " << d << "/2)";
      std::cout << '\n';
      return kOk;
    }
    if (*lemmas) {
      rsd::lab::LemmaConfig cfg;
      cfg.delta = lb_delta;
      cfg.automata = trials;
      cfg.labelings = labelings;
      cfg.rounds = rounds;
      cfg.beta = beta;
      cfg.seed = seed;
      const auto report = rsd::lab::check_lemmas(cfg);
      std::cout << rsd::lab::lemma_report_json(report) << '\n';
      return report.violations.empty() ? kOk : kVerificationFailure;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const rsd::GraphError& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerificationFailure;
  }
  return kUsage;
}
