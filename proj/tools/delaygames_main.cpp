// Command-line front end: instance I/O, generators, game solving, the
// lookahead approximation, the exact oracle, and machine-readable reports.

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <delaygames/delaygames.hpp>

namespace {

using namespace delaygames;
using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Dpa load_instance(const std::string& path) { return parse_dpa(read_file(path)); }

struct Config {
  std::size_t vertex_budget = kDefaultVertexBudget;
  std::size_t layer_cap = kDefaultLayerCap;
  unsigned parallelism = 1;

  Budgets budgets() const { return {vertex_budget, layer_cap}; }
};

void emit(const ordered_json& result, const ordered_json& meta, bool as_json,
          const std::string& text) {
  if (as_json) {
    ordered_json payload;
    payload["result"] = result;
    payload["meta"] = meta;
    std::cout << payload.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

std::string describe_approx(const LookaheadReport& r) {
  std::ostringstream out;
  if (r.outcome == LookaheadReport::Outcome::Win) {
    out << "outcome: win\n";
    out << "k_star: " << r.k_star << "\n";
    out << "reported lookahead: " << r.reported << "\n";
  } else {
    out << "outcome: no win for any lookahead (scanned up to k=" << r.effective_bound
        << ", bound by " << r.bound_reason << ")\n";
  }
  out << "layers: preperiod=" << r.preperiod << " period=" << r.period << "\n";
  out << "scanned:";
  for (const auto& [k, o] : r.scanned) out << " k=" << k << (o ? ":O" : ":I");
  out << "\n";
  return out.str();
}

std::string describe_exact(const ExactReport& r) {
  std::ostringstream out;
  if (r.found)
    out << "outcome: exact minimal lookahead k_opt=" << r.k_opt << "\n";
  else
    out << "outcome: no win up to k=" << r.bound << "\n";
  out << "winners:";
  for (const auto& [k, o] : r.winners) out << " k=" << k << (o ? ":O" : ":I");
  out << "\n";
  return out.str();
}

int run(int argc, char** argv) {
  CLI::App app{"factor-2 approximation of the minimal lookahead Player O needs "
               "to win a delay game given by a deterministic parity automaton"};
  app.require_subcommand(1);
  app.fallthrough(true);  // budget flags may follow the subcommand

  Config cfg;
  app.add_option("--vertex-budget", cfg.vertex_budget, "maximum game vertices")
      ->check(CLI::PositiveNumber);
  app.add_option("--layer-cap", cfg.layer_cap, "maximum distinct behavior layers")
      ->check(CLI::PositiveNumber);
  app.add_option("--parallel", cfg.parallelism, "worker count for the approx scan")
      ->check(CLI::PositiveNumber);

  std::string file;
  bool as_json = false;
  bool binary_search = false;
  std::string cap_text;
  std::uint32_t max_k = 0;
  std::uint32_t k_value = 0;

  CLI::App* approx = app.add_subcommand("approx", "approximate the minimal lookahead");
  approx->add_option("file", file, "instance JSON")->required();
  approx->add_flag("--binary-search", binary_search,
                   "binary-search the scan (assumes monotonicity)");
  approx->add_option("--cap", cap_text, "extra bound on the scanned k");
  approx->add_flag("--json", as_json, "machine-readable output");

  CLI::App* exact = app.add_subcommand("exact", "exact minimal lookahead (small k)");
  exact->add_option("file", file, "instance JSON")->required();
  exact->add_option("--max-k", max_k, "largest lookahead to test")->required();
  exact->add_flag("--json", as_json, "machine-readable output");

  CLI::App* cmp = app.add_subcommand("compare", "run both and check the sandwich");
  cmp->add_option("file", file, "instance JSON")->required();
  cmp->add_option("--max-k", max_k, "largest lookahead for the exact side")->required();
  cmp->add_flag("--json", as_json, "machine-readable output");

  CLI::App* solve_gk = app.add_subcommand("solve-gk", "winner of the behavior game");
  solve_gk->add_option("file", file, "instance JSON")->required();
  solve_gk->add_option("--k", k_value, "block length (k >= 1)")
      ->required()
      ->check(CLI::PositiveNumber);
  solve_gk->add_flag("--json", as_json, "machine-readable output");

  CLI::App* solve_queue = app.add_subcommand("solve-queue", "winner of the queue game");
  solve_queue->add_option("file", file, "instance JSON")->required();
  solve_queue->add_option("--k", k_value, "lookahead (k >= 0)")->required();
  solve_queue->add_flag("--json", as_json, "machine-readable output");

  CLI::App* gen = app.add_subcommand("gen", "generate instances");
  gen->require_subcommand(1);
  std::uint32_t gen_states = 1, gen_colors = 1, gen_in = 1, gen_out = 1, gen_d = 1;
  std::uint64_t gen_seed = 0;
  CLI::App* gen_random = gen->add_subcommand("random", "seeded uniform instance");
  gen_random->add_option("--states", gen_states)->required()->check(CLI::PositiveNumber);
  gen_random->add_option("--colors", gen_colors)->required()->check(CLI::PositiveNumber);
  gen_random->add_option("--in", gen_in)->required()->check(CLI::PositiveNumber);
  gen_random->add_option("--out", gen_out)->required()->check(CLI::PositiveNumber);
  gen_random->add_option("--seed", gen_seed)->required();
  CLI::App* gen_pred = gen->add_subcommand("prediction", "prediction family instance");
  gen_pred->add_option("--d", gen_d, "prediction distance")
      ->required()
      ->check(CLI::PositiveNumber);

  CLI::App* export_pg_cmd = app.add_subcommand("export-pg", "write a game in the "
                                               "parity-game interchange format");
  export_pg_cmd->add_option("file", file, "instance JSON")->required();
  std::optional<std::uint32_t> gk_k, queue_k;
  std::string out_path;
  auto* gk_opt = export_pg_cmd->add_option("--gk", gk_k, "export the behavior game");
  auto* queue_opt =
      export_pg_cmd->add_option("--queue", queue_k, "export the queue game");
  gk_opt->excludes(queue_opt);
  export_pg_cmd->add_option("--out", out_path, "output path")->required();
  export_pg_cmd->add_flag("--json", as_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  }

  ApproxOptions approx_opts;
  approx_opts.budgets = cfg.budgets();
  approx_opts.workers = cfg.parallelism;

  if (approx->parsed()) {
    approx_opts.scan = binary_search ? ScanMode::BinarySearch : ScanMode::Linear;
    if (!cap_text.empty()) {
      try {
        approx_opts.cap = BigUint(cap_text);
      } catch (const std::invalid_argument&) {
        std::cerr << "usage error: --cap expects a positive integer\n";
        return 1;
      }
      if (*approx_opts.cap < 1ul) {
        std::cerr << "usage error: --cap expects a positive integer\n";
        return 1;
      }
    }
    const LookaheadReport r = approx_min_lookahead(load_instance(file), approx_opts);
    emit(approx_result_json(r), approx_meta_json(r), as_json, describe_approx(r));
    return 0;
  }
  if (exact->parsed()) {
    const ExactReport r = exact_min_lookahead(load_instance(file), max_k, cfg.budgets());
    emit(exact_result_json(r), exact_meta_json(r), as_json, describe_exact(r));
    return 0;
  }
  if (cmp->parsed()) {
    const CompareReport r = compare(load_instance(file), max_k, approx_opts);
    std::ostringstream text;
    text << describe_exact(r.exact) << describe_approx(r.approx)
         << "sandwich: " << sandwich_name(r.sandwich) << "\n";
    emit(compare_result_json(r), compare_meta_json(r), as_json, text.str());
    return 0;
  }
  if (solve_gk->parsed() || solve_queue->parsed()) {
    const Dpa dpa = load_instance(file);
    const auto t0 = std::chrono::steady_clock::now();
    ParityGame game;
    if (solve_gk->parsed()) {
      const Tracking tracking(dpa);
      const LayerSequence layers = layer_sequence(tracking, cfg.layer_cap);
      game = build_abstract_game(tracking, layers.at(BigUint(k_value)),
                                 cfg.vertex_budget);
    } else {
      game = build_queue_game(dpa, k_value, cfg.vertex_budget);
    }
    const Solution sol = solve_parity(game);
    const Player winner = sol.winner_of(game.initial);
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    ordered_json result;
    result["k"] = k_value;
    result["winner"] = player_name(winner);
    result["game"] = game_stats(game);
    ordered_json meta;
    meta["wall_ms"] = static_cast<std::uint64_t>(ms);
    std::ostringstream text;
    text << "k: " << k_value << "\nwinner: " << player_name(winner) << "\n"
         << "game: " << game_stats(game).dump() << "\n";
    emit(result, meta, as_json, text.str());
    return 0;
  }
  if (gen->parsed()) {
    const Dpa dpa = gen_random->parsed()
                        ? random_dpa(gen_states, gen_colors, gen_in, gen_out, gen_seed)
                        : prediction_family(gen_d);
    std::cout << serialize_dpa(dpa);
    return 0;
  }
  if (export_pg_cmd->parsed()) {
    if (!gk_k && !queue_k) {
      std::cerr << "usage error: one of --gk or --queue is required\n";
      return 1;
    }
    const Dpa dpa = load_instance(file);
    ParityGame game;
    if (gk_k) {
      if (*gk_k < 1) {
        std::cerr << "usage error: --gk expects k >= 1\n";
        return 1;
      }
      const Tracking tracking(dpa);
      const LayerSequence layers = layer_sequence(tracking, cfg.layer_cap);
      game =
          build_abstract_game(tracking, layers.at(BigUint(*gk_k)), cfg.vertex_budget);
    } else {
      game = build_queue_game(dpa, *queue_k, cfg.vertex_budget);
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ParseError("cannot write file: " + out_path);
    out << export_pg(game);
    out.close();
    ordered_json result;
    result["out"] = out_path;
    result["game"] = game_stats(game);
    emit(result, ordered_json::object(), as_json,
         "wrote " + out_path + "\ngame: " + game_stats(game).dump() + "\n");
    return 0;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const std::bad_alloc&) {
    std::cerr << "resource limit: out of memory\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
