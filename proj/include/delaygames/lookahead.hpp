#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include <delaygames/arena.hpp>
#include <delaygames/automaton.hpp>
#include <delaygames/bigint.hpp>
#include <delaygames/errors.hpp>
#include <delaygames/parity_solver.hpp>
#include <delaygames/tracking.hpp>

namespace delaygames {

inline constexpr std::size_t kDefaultLayerCap = 1'000'000;

struct Budgets {
  std::size_t vertex_budget = kDefaultVertexBudget;
  std::size_t layer_cap = kDefaultLayerCap;
};

/// Upper bound 2^(n^2 c + 1) on the lookahead worth scanning, where n is the
/// state count and c the number of colors.
inline BigUint k_max(const Dpa& dpa) {
  const unsigned long n = dpa.state_count;
  const unsigned long c = dpa.colors().size();
  const unsigned long exponent = n * n * c + 1;
  if (exponent > 1'000'000'000ul)
    throw ResourceLimitError("k_max: exponent " + std::to_string(exponent) +
                             " too large to materialize");
  return big_pow2(exponent);
}

namespace detail {

inline bool o_wins(const ParityGame& game) {
  return solve_parity(game).winner_of(game.initial) == Player::O;
}

}  // namespace detail

/// Winner of the behavior-function game for block length k >= 1, from the
/// initial vertex. k may exceed the machine-word range; the layer index is
/// folded through the periodic layer sequence.
inline bool wins_abstract(const Dpa& dpa, const BigUint& k, const Budgets& budgets = {}) {
  if (k < 1ul) throw std::invalid_argument("wins_abstract: k must be positive");
  const Tracking tracking(dpa);
  const LayerSequence layers = layer_sequence(tracking, budgets.layer_cap);
  return detail::o_wins(
      build_abstract_game(tracking, layers.at(k), budgets.vertex_budget));
}

/// Winner of the explicit delay game with lookahead k (exact but exponential
/// in k).
inline bool wins_exact(const Dpa& dpa, std::uint32_t k, const Budgets& budgets = {}) {
  return detail::o_wins(build_queue_game(dpa, k, budgets.vertex_budget));
}

enum class ScanMode {
  Linear,        // sound: preserves minimality of the found k
  BinarySearch,  // opt-in: assumes the winner is monotone in k (unproven)
};

struct ApproxOptions {
  ScanMode scan = ScanMode::Linear;
  std::optional<BigUint> cap;  // extra user bound on the scan
  Budgets budgets;
  unsigned workers = 1;  // candidate-k evaluations per parallel batch
};

/// Result of the factor-2 approximation. On a win, `reported` = 2 k* - 1 is
/// an upper bound on the minimal sufficient lookahead, and the true optimum
/// lies in [k*, reported]; reported is always odd.
struct LookaheadReport {
  enum class Outcome { Win, NoWin };
  Outcome outcome = Outcome::NoWin;
  std::uint64_t k_star = 0;    // minimal k whose behavior game O wins
  std::uint64_t reported = 0;  // 2 * k_star - 1
  std::vector<std::pair<std::uint64_t, bool>> scanned;  // (k, O wins), increasing k
  std::size_t preperiod = 0;
  std::size_t period = 0;
  std::uint64_t effective_bound = 0;
  std::string bound_reason;  // "k_max" | "layers" | "cap"
  BigUint k_max_value;
  std::size_t layer_count = 0;
  std::size_t max_layer_size = 0;
  std::size_t max_game_vertices = 0;
  double wall_seconds = 0.0;
};

/// Scans k = 1, 2, ... and returns 2k-1 for the first k whose delay-free
/// behavior game is won by Player O, or NoWin when none is up to the
/// effective bound min(k_max, preperiod + period, cap). The truncation at
/// preperiod + period is sound: the game for block length k depends only on
/// the layer F_k, and layers repeat from there on.
inline LookaheadReport approx_min_lookahead(const Dpa& dpa,
                                            const ApproxOptions& opts = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  LookaheadReport report;

  const Tracking tracking(dpa);
  const LayerSequence layers = layer_sequence(tracking, opts.budgets.layer_cap);
  report.preperiod = layers.preperiod;
  report.period = layers.period;
  report.layer_count = layers.layers.size();
  for (const auto& layer : layers.layers)
    report.max_layer_size = std::max(report.max_layer_size, layer.size());
  report.k_max_value = k_max(dpa);

  BigUint bound = report.k_max_value;
  report.bound_reason = "k_max";
  const BigUint layer_bound(static_cast<unsigned long>(layers.preperiod + layers.period));
  if (layer_bound < bound) {
    bound = layer_bound;
    report.bound_reason = "layers";
  }
  if (opts.cap && *opts.cap < bound) {
    bound = *opts.cap;
    report.bound_reason = "cap";
  }
  // bound <= preperiod + period <= layer cap, so it fits a machine word.
  const std::uint64_t last = bound.get_ui();
  report.effective_bound = last;

  std::size_t max_vertices = 0;
  auto eval = [&](std::uint64_t k) {
    try {
      const ParityGame game = build_abstract_game(tracking, layers.at(BigUint(k)),
                                                  opts.budgets.vertex_budget);
      const bool win = detail::o_wins(game);
      return std::pair<bool, std::size_t>(win, game.vertex_count());
    } catch (const ResourceLimitError& e) {
      throw ResourceLimitError(std::string(e.what()) + " (scan reached k=" +
                               std::to_string(k) + ")");
    }
  };

  if (opts.scan == ScanMode::Linear) {
    const std::uint64_t width = std::max(1u, opts.workers);
    for (std::uint64_t base = 1; base <= last && report.outcome == LookaheadReport::Outcome::NoWin;
         base += width) {
      const std::uint64_t batch = std::min<std::uint64_t>(width, last - base + 1);
      std::vector<std::pair<bool, std::size_t>> results(batch);
      if (batch == 1) {
        results[0] = eval(base);
      } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(batch);
        pool.reserve(batch);
        for (std::uint64_t i = 0; i < batch; ++i)
          pool.emplace_back([&, i] {
            try {
              results[i] = eval(base + i);
            } catch (...) {
              errors[i] = std::current_exception();
            }
          });
        for (auto& t : pool) t.join();
        for (const auto& e : errors)
          if (e) std::rethrow_exception(e);
      }
      for (std::uint64_t i = 0; i < batch; ++i) {
        report.scanned.emplace_back(base + i, results[i].first);
        max_vertices = std::max(max_vertices, results[i].second);
        if (results[i].first && report.outcome == LookaheadReport::Outcome::NoWin) {
          report.outcome = LookaheadReport::Outcome::Win;
          report.k_star = base + i;
        }
      }
    }
  } else {
    // Binary search over [1, last]; relies on monotonicity of the winner in
    // k, which holds for the delay games themselves but is not established
    // for the behavior game. Documented as opt-in.
    std::vector<std::pair<std::uint64_t, bool>> evaluated;
    auto probe = [&](std::uint64_t k) {
      for (const auto& e : evaluated)
        if (e.first == k) return e.second;
      const auto [win, sz] = eval(k);
      max_vertices = std::max(max_vertices, sz);
      evaluated.emplace_back(k, win);
      return win;
    };
    std::uint64_t lo = 1, hi = last;
    while (lo < hi) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (probe(mid))
        hi = mid;
      else
        lo = mid + 1;
    }
    if (probe(lo)) {
      report.outcome = LookaheadReport::Outcome::Win;
      report.k_star = lo;
    }
    std::sort(evaluated.begin(), evaluated.end());
    report.scanned = std::move(evaluated);
  }

  if (report.outcome == LookaheadReport::Outcome::Win)
    report.reported = 2 * report.k_star - 1;
  report.max_game_vertices = max_vertices;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

/// Exact minimal lookahead by exhaustive queue games, limited to small
/// bounds. Evaluates k = 0, 1, ... without monotonicity shortcuts.
struct ExactReport {
  bool found = false;
  std::uint32_t k_opt = 0;  // valid on found
  std::uint32_t bound = 0;
  std::vector<std::pair<std::uint32_t, bool>> winners;  // per evaluated k
  std::size_t max_game_vertices = 0;
  double wall_seconds = 0.0;
};

inline ExactReport exact_min_lookahead(const Dpa& dpa, std::uint32_t bound,
                                       const Budgets& budgets = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  ExactReport report;
  report.bound = bound;
  for (std::uint32_t k = 0; k <= bound; ++k) {
    const ParityGame game = build_queue_game(dpa, k, budgets.vertex_budget);
    report.max_game_vertices = std::max(report.max_game_vertices, game.vertex_count());
    const bool win = detail::o_wins(game);
    report.winners.emplace_back(k, win);
    if (win) {
      report.found = true;
      report.k_opt = k;
      break;
    }
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

enum class Sandwich {
  Holds,          // k_opt <= reported <= 2 k_opt - 1
  Violated,       // the above failed (a bug, if it ever happens)
  Boundary,       // k_opt = 0: the approximation never reports below 1
  NotApplicable,  // one of the two sides produced no value to compare
};

inline const char* sandwich_name(Sandwich s) {
  switch (s) {
    case Sandwich::Holds: return "holds";
    case Sandwich::Violated: return "violated";
    case Sandwich::Boundary: return "boundary";
    default: return "not_applicable";
  }
}

struct CompareReport {
  ExactReport exact;
  LookaheadReport approx;
  Sandwich sandwich = Sandwich::NotApplicable;
};

/// Runs the exact oracle (up to `bound`) and the approximation side by side
/// and checks the factor-2 sandwich k_opt <= reported <= 2 k_opt - 1.
inline CompareReport compare(const Dpa& dpa, std::uint32_t bound,
                             const ApproxOptions& opts = {}) {
  CompareReport report;
  report.exact = exact_min_lookahead(dpa, bound, opts.budgets);
  report.approx = approx_min_lookahead(dpa, opts);
  const bool approx_win = report.approx.outcome == LookaheadReport::Outcome::Win;
  if (report.exact.found && report.exact.k_opt == 0) {
    report.sandwich = Sandwich::Boundary;
  } else if (report.exact.found && approx_win) {
    const std::uint64_t k_opt = report.exact.k_opt;
    const std::uint64_t reported = report.approx.reported;
    report.sandwich = (k_opt <= reported && reported <= 2 * k_opt - 1)
                          ? Sandwich::Holds
                          : Sandwich::Violated;
  }
  return report;
}

// --- JSON report schemas (deterministic `result` payloads) ---

inline nlohmann::ordered_json approx_result_json(const LookaheadReport& r) {
  nlohmann::ordered_json j;
  const bool win = r.outcome == LookaheadReport::Outcome::Win;
  j["outcome"] = win ? "win" : "no_win";
  if (win) {
    j["k_star"] = r.k_star;
    j["reported"] = r.reported;
  }
  nlohmann::ordered_json scanned = nlohmann::ordered_json::array();
  for (const auto& [k, o] : r.scanned)
    scanned.push_back({{"k", k}, {"winner", o ? "O" : "I"}});
  j["scanned_ks"] = std::move(scanned);
  j["layer_stats"] = {{"preperiod", r.preperiod}, {"period", r.period}};
  j["effective_bound"] = r.effective_bound;
  j["bound_reason"] = r.bound_reason;
  return j;
}

inline nlohmann::ordered_json approx_meta_json(const LookaheadReport& r) {
  nlohmann::ordered_json j;
  j["k_max"] = big_to_string(r.k_max_value);
  j["layer_count"] = r.layer_count;
  j["max_layer_size"] = r.max_layer_size;
  j["max_game_vertices"] = r.max_game_vertices;
  j["wall_ms"] = static_cast<std::uint64_t>(r.wall_seconds * 1000.0);
  return j;
}

inline nlohmann::ordered_json exact_result_json(const ExactReport& r) {
  nlohmann::ordered_json j;
  j["outcome"] = r.found ? "exact" : "no_win_up_to";
  if (r.found)
    j["k_opt"] = r.k_opt;
  else
    j["bound"] = r.bound;
  nlohmann::ordered_json winners = nlohmann::ordered_json::array();
  for (const auto& [k, o] : r.winners)
    winners.push_back({{"k", k}, {"winner", o ? "O" : "I"}});
  j["winners"] = std::move(winners);
  return j;
}

inline nlohmann::ordered_json exact_meta_json(const ExactReport& r) {
  nlohmann::ordered_json j;
  j["max_game_vertices"] = r.max_game_vertices;
  j["wall_ms"] = static_cast<std::uint64_t>(r.wall_seconds * 1000.0);
  return j;
}

inline nlohmann::ordered_json compare_result_json(const CompareReport& r) {
  nlohmann::ordered_json j;
  if (r.exact.found)
    j["k_opt"] = r.exact.k_opt;
  else
    j["k_opt"] = nullptr;
  if (r.approx.outcome == LookaheadReport::Outcome::Win)
    j["reported"] = r.approx.reported;
  else
    j["reported"] = nullptr;
  switch (r.sandwich) {
    case Sandwich::Holds: j["sandwich_holds"] = true; break;
    case Sandwich::Violated: j["sandwich_holds"] = false; break;
    case Sandwich::Boundary: j["sandwich_holds"] = "boundary"; break;
    case Sandwich::NotApplicable: j["sandwich_holds"] = nullptr; break;
  }
  j["exact"] = exact_result_json(r.exact);
  j["approx"] = approx_result_json(r.approx);
  return j;
}

inline nlohmann::ordered_json compare_meta_json(const CompareReport& r) {
  nlohmann::ordered_json j;
  j["exact"] = exact_meta_json(r.exact);
  j["approx"] = approx_meta_json(r.approx);
  return j;
}

}  // namespace delaygames
