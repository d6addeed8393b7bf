#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include <delaygames/errors.hpp>
#include <delaygames/parity_game.hpp>

namespace delaygames {

/// Winner partition plus positional strategies. The strategy of a player is
/// defined exactly on the vertices that player owns inside their own winning
/// region; -1 everywhere else.
struct Solution {
  std::vector<std::uint32_t> win_o;  // ascending vertex ids
  std::vector<std::uint32_t> win_i;
  std::vector<std::int64_t> strategy_o;  // per vertex, -1 = undefined
  std::vector<std::int64_t> strategy_i;

  Player winner_of(std::uint32_t v) const {
    return std::binary_search(win_o.begin(), win_o.end(), v) ? Player::O : Player::I;
  }
};

namespace detail {

inline int pidx(Player p) { return p == Player::O ? 0 : 1; }

/// Parity that wins for the given player under max-parity semantics.
inline std::uint32_t winning_parity(Player p) { return p == Player::O ? 0 : 1; }

/// True iff the restricted graph contains a cycle whose maximal color has
/// the given parity. `adj` must only mention alive vertices.
inline bool has_cycle_with_max_parity(const std::vector<std::vector<std::uint32_t>>& adj,
                                      const std::vector<char>& alive,
                                      const std::vector<std::uint32_t>& colors,
                                      std::uint32_t parity) {
  const std::size_t n = adj.size();
  std::vector<std::uint32_t> mark(n, 0);
  std::uint32_t epoch = 0;
  std::vector<std::uint32_t> stack;
  for (std::uint32_t x = 0; x < n; ++x) {
    if (!alive[x] || colors[x] % 2 != parity) continue;
    // Look for a cycle through x among vertices of color <= colors[x].
    ++epoch;
    stack.assign(1, x);
    while (!stack.empty()) {
      const std::uint32_t v = stack.back();
      stack.pop_back();
      for (std::uint32_t s : adj[v]) {
        if (!alive[s] || colors[s] > colors[x]) continue;
        if (s == x) return true;
        if (mark[s] != epoch) {
          mark[s] = epoch;
          stack.push_back(s);
        }
      }
    }
  }
  return false;
}

/// Vertices lying on a cycle whose maximal color has the given parity.
inline std::vector<char> on_cycle_with_max_parity(
    const std::vector<std::vector<std::uint32_t>>& adj,
    const std::vector<std::uint32_t>& colors, std::uint32_t parity) {
  const std::size_t n = adj.size();
  std::vector<char> on(n, 0);
  std::vector<std::uint32_t> mark(n, 0);
  std::uint32_t epoch = 0;
  std::vector<std::uint32_t> stack;
  for (std::uint32_t x = 0; x < n; ++x) {
    if (colors[x] % 2 != parity) continue;
    ++epoch;
    stack.assign(1, x);
    bool found = false;
    while (!stack.empty() && !found) {
      const std::uint32_t v = stack.back();
      stack.pop_back();
      for (std::uint32_t s : adj[v]) {
        if (colors[s] > colors[x]) continue;
        if (s == x) {
          found = true;
          break;
        }
        if (mark[s] != epoch) {
          mark[s] = epoch;
          stack.push_back(s);
        }
      }
    }
    on[x] = found;
  }
  return on;
}

class ZielonkaSolver {
 public:
  explicit ZielonkaSolver(const ParityGame& game)
      : game_(&game),
        n_(static_cast<std::uint32_t>(game.vertices.size())),
        alive_(n_, 1),
        preds_(n_),
        in_set_(n_, 0),
        cnt_(n_, 0),
        cnt_epoch_(n_, 0),
        epoch_(0) {
    strat_[0].assign(n_, -1);
    strat_[1].assign(n_, -1);
    for (std::uint32_t v = 0; v < n_; ++v)
      for (std::uint32_t s : game.successors[v]) preds_[s].push_back(v);
  }

  /// Attractor of `targets` for `player` within the alive subgame. Records
  /// the attracting move for player-owned vertices pulled in; when
  /// `record_target_moves` is set, also records a staying move (lowest alive
  /// successor) for player-owned target vertices.
  std::vector<std::uint32_t> attract(Player player,
                                     std::span<const std::uint32_t> targets,
                                     bool record_target_moves) {
    ++epoch_;
    std::vector<std::uint32_t> set;
    for (std::uint32_t t : targets) {
      if (!alive_[t] || in_set_[t] == epoch_) continue;
      in_set_[t] = epoch_;
      set.push_back(t);
    }
    if (record_target_moves) {
      for (std::uint32_t t : set) {
        if (game_->vertices[t].owner != player) continue;
        std::int64_t pick = -1;
        for (std::uint32_t s : game_->successors[t])
          if (alive_[s] && (pick < 0 || s < pick)) pick = s;
        assert(pick >= 0);
        strat_[pidx(player)][t] = pick;
      }
    }
    for (std::size_t qi = 0; qi < set.size(); ++qi) {
      const std::uint32_t u = set[qi];
      for (std::uint32_t w : preds_[u]) {
        if (!alive_[w] || in_set_[w] == epoch_) continue;
        if (game_->vertices[w].owner == player) {
          std::int64_t pick = -1;
          for (std::uint32_t s : game_->successors[w])
            if (alive_[s] && in_set_[s] == epoch_ && (pick < 0 || s < pick)) pick = s;
          assert(pick >= 0);
          strat_[pidx(player)][w] = pick;
        } else {
          if (cnt_epoch_[w] != epoch_) {
            cnt_epoch_[w] = epoch_;
            std::uint32_t c = 0;
            for (std::uint32_t s : game_->successors[w]) c += alive_[s] ? 1 : 0;
            cnt_[w] = c;
          }
          if (--cnt_[w] > 0) continue;
        }
        in_set_[w] = epoch_;
        set.push_back(w);
      }
    }
    return set;
  }

  Solution solve() {
    struct Frame {
      int phase = 0;
      Player p = Player::O;
      std::vector<std::uint32_t> removed_a, removed_b;
    };
    std::vector<Frame> stack;
    std::array<std::vector<std::uint32_t>, 2> ret;
    stack.emplace_back();

    while (!stack.empty()) {
      const std::size_t fi = stack.size() - 1;
      switch (stack[fi].phase) {
        case 0: {
          bool any = false;
          std::uint32_t d = 0;
          for (std::uint32_t v = 0; v < n_; ++v) {
            if (!alive_[v]) continue;
            d = any ? std::max(d, game_->vertices[v].color) : game_->vertices[v].color;
            any = true;
          }
          if (!any) {
            ret[0].clear();
            ret[1].clear();
            stack.pop_back();
            break;
          }
          const Player p = d % 2 == 0 ? Player::O : Player::I;
          std::vector<std::uint32_t> targets;
          for (std::uint32_t v = 0; v < n_; ++v)
            if (alive_[v] && game_->vertices[v].color == d) targets.push_back(v);
          stack[fi].p = p;
          stack[fi].removed_a = attract(p, targets, true);
          for (std::uint32_t v : stack[fi].removed_a) alive_[v] = 0;
          stack[fi].phase = 1;
          stack.emplace_back();
          break;
        }
        case 1: {
          const Player p = stack[fi].p;
          std::vector<std::uint32_t> w_p = std::move(ret[pidx(p)]);
          std::vector<std::uint32_t> w_np = std::move(ret[pidx(opponent(p))]);
          for (std::uint32_t v : stack[fi].removed_a) alive_[v] = 1;
          if (w_np.empty()) {
            w_p.insert(w_p.end(), stack[fi].removed_a.begin(),
                       stack[fi].removed_a.end());
            ret[pidx(p)] = std::move(w_p);
            ret[pidx(opponent(p))].clear();
            stack.pop_back();
          } else {
            stack[fi].removed_b = attract(opponent(p), w_np, false);
            for (std::uint32_t v : stack[fi].removed_b) alive_[v] = 0;
            stack[fi].phase = 2;
            stack.emplace_back();
          }
          break;
        }
        case 2: {
          const Player p = stack[fi].p;
          std::vector<std::uint32_t> w_p = std::move(ret[pidx(p)]);
          std::vector<std::uint32_t> w_np = std::move(ret[pidx(opponent(p))]);
          for (std::uint32_t v : stack[fi].removed_b) alive_[v] = 1;
          w_np.insert(w_np.end(), stack[fi].removed_b.begin(),
                      stack[fi].removed_b.end());
          ret[pidx(p)] = std::move(w_p);
          ret[pidx(opponent(p))] = std::move(w_np);
          stack.pop_back();
          break;
        }
        default:
          throw std::logic_error("zielonka: invalid phase");
      }
    }

    Solution sol;
    sol.win_o = std::move(ret[0]);
    sol.win_i = std::move(ret[1]);
    std::sort(sol.win_o.begin(), sol.win_o.end());
    std::sort(sol.win_i.begin(), sol.win_i.end());
    sol.strategy_o = std::move(strat_[0]);
    sol.strategy_i = std::move(strat_[1]);
    // Keep strategies only where the owner also wins.
    for (std::uint32_t v = 0; v < n_; ++v) {
      const bool o_wins = std::binary_search(sol.win_o.begin(), sol.win_o.end(), v);
      if (!(o_wins && game_->vertices[v].owner == Player::O)) sol.strategy_o[v] = -1;
      if (!(!o_wins && game_->vertices[v].owner == Player::I)) sol.strategy_i[v] = -1;
    }
    return sol;
  }

 private:
  const ParityGame* game_;
  std::uint32_t n_;
  std::vector<char> alive_;
  std::vector<std::vector<std::uint32_t>> preds_;
  std::vector<std::uint32_t> in_set_;
  std::vector<std::uint32_t> cnt_;
  std::vector<std::uint32_t> cnt_epoch_;
  std::uint32_t epoch_;
  std::array<std::vector<std::int64_t>, 2> strat_;
};

}  // namespace detail

/// Least set A containing `targets` such that player-owned vertices with
/// some successor in A and opponent-owned vertices with all successors in A
/// belong to A. Returned ascending.
inline std::vector<std::uint32_t> attractor(const ParityGame& game, Player player,
                                            std::span<const std::uint32_t> targets) {
  for (std::uint32_t t : targets)
    if (t >= game.vertices.size())
      throw ValidationError("attractor: target vertex out of range");
  detail::ZielonkaSolver solver(game);
  std::vector<std::uint32_t> a = solver.attract(player, targets, false);
  std::sort(a.begin(), a.end());
  return a;
}

/// Zielonka's recursive attractor decomposition, with the recursion run on
/// an explicit stack. Deterministic; strategy tie-breaks pick the lowest
/// successor index.
inline Solution solve_parity(const ParityGame& game) {
  game.validate();
  return detail::ZielonkaSolver(game).solve();
}

/// Exact oracle: enumerates the positional strategies of each player in turn
/// and checks all counter-responses by cycle analysis. The per-player
/// product of out-degrees must stay within `profile_limit`.
inline Solution brute_force_solve(const ParityGame& game,
                                  std::uint64_t profile_limit = 1'000'000) {
  game.validate();
  const std::uint32_t n = static_cast<std::uint32_t>(game.vertices.size());
  std::vector<std::uint32_t> colors(n);
  for (std::uint32_t v = 0; v < n; ++v) colors[v] = game.vertices[v].color;

  Solution sol;
  sol.strategy_o.assign(n, -1);
  sol.strategy_i.assign(n, -1);
  std::array<std::vector<char>, 2> won;  // [pidx][v]

  for (Player p : {Player::O, Player::I}) {
    std::vector<std::uint32_t> owned;
    std::uint64_t profiles = 1;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (game.vertices[v].owner != p) continue;
      owned.push_back(v);
      const std::uint64_t deg = game.successors[v].size();
      if (profiles > profile_limit / deg)
        throw ResourceLimitError("brute_force_solve: more than " +
                                 std::to_string(profile_limit) +
                                 " strategy profiles for player " + player_name(p));
      profiles *= deg;
    }

    const std::uint32_t bad_parity = detail::winning_parity(opponent(p));
    std::vector<std::size_t> choice(owned.size(), 0);
    std::vector<char>& region = won[detail::pidx(p)];
    region.assign(n, 0);
    std::vector<std::size_t> best_choice;
    std::size_t best_count = 0;
    bool have_best = false;

    std::vector<std::vector<std::uint32_t>> adj(n);
    for (;;) {
      for (std::uint32_t v = 0; v < n; ++v) adj[v] = game.successors[v];
      for (std::size_t i = 0; i < owned.size(); ++i)
        adj[owned[i]] = {game.successors[owned[i]][choice[i]]};

      // good(v): no cycle with the opponent's maximal parity is reachable.
      const std::vector<char> on_bad =
          detail::on_cycle_with_max_parity(adj, colors, bad_parity);
      std::vector<char> reaches_bad = on_bad;
      std::vector<std::vector<std::uint32_t>> rev(n);
      for (std::uint32_t v = 0; v < n; ++v)
        for (std::uint32_t s : adj[v]) rev[s].push_back(v);
      std::vector<std::uint32_t> queue;
      for (std::uint32_t v = 0; v < n; ++v)
        if (reaches_bad[v]) queue.push_back(v);
      for (std::size_t qi = 0; qi < queue.size(); ++qi)
        for (std::uint32_t w : rev[queue[qi]])
          if (!reaches_bad[w]) {
            reaches_bad[w] = 1;
            queue.push_back(w);
          }

      std::size_t count = 0;
      for (std::uint32_t v = 0; v < n; ++v) {
        if (reaches_bad[v]) continue;
        region[v] = 1;
        ++count;
      }
      if (!have_best || count > best_count) {
        have_best = true;
        best_count = count;
        best_choice = choice;
      }

      std::size_t pos = 0;
      while (pos < owned.size()) {
        if (++choice[pos] < game.successors[owned[pos]].size()) break;
        choice[pos++] = 0;
      }
      if (pos == owned.size()) break;
    }

    std::size_t region_size = 0;
    for (std::uint32_t v = 0; v < n; ++v) region_size += region[v];
    if (region_size != best_count)
      throw std::logic_error("brute_force_solve: no uniform optimal strategy");
    auto& strat = p == Player::O ? sol.strategy_o : sol.strategy_i;
    for (std::size_t i = 0; i < owned.size(); ++i)
      if (region[owned[i]])
        strat[owned[i]] = game.successors[owned[i]][best_choice[i]];
  }

  for (std::uint32_t v = 0; v < n; ++v) {
    if (won[0][v] == won[1][v])
      throw std::logic_error("brute_force_solve: determinacy violated at vertex " +
                             std::to_string(v));
    (won[0][v] ? sol.win_o : sol.win_i).push_back(v);
  }
  return sol;
}

/// Soundness check: the regions partition the vertices, each winner's
/// strategy-restricted subgraph never leaves the region regardless of the
/// opponent's moves, and contains no cycle of the opponent's parity.
inline bool verify_solution(const ParityGame& game, const Solution& sol) {
  const std::uint32_t n = static_cast<std::uint32_t>(game.vertices.size());
  if (sol.strategy_o.size() != n || sol.strategy_i.size() != n) return false;

  std::vector<int> side(n, -1);
  for (std::uint32_t v : sol.win_o) {
    if (v >= n || side[v] != -1) return false;
    side[v] = 0;
  }
  for (std::uint32_t v : sol.win_i) {
    if (v >= n || side[v] != -1) return false;
    side[v] = 1;
  }
  for (std::uint32_t v = 0; v < n; ++v)
    if (side[v] == -1) return false;

  std::vector<std::uint32_t> colors(n);
  for (std::uint32_t v = 0; v < n; ++v) colors[v] = game.vertices[v].color;

  for (Player p : {Player::O, Player::I}) {
    const int mine = detail::pidx(p);
    const auto& strat = p == Player::O ? sol.strategy_o : sol.strategy_i;
    std::vector<char> in_region(n, 0);
    for (std::uint32_t v = 0; v < n; ++v) in_region[v] = side[v] == mine;

    std::vector<std::vector<std::uint32_t>> adj(n);
    for (std::uint32_t v = 0; v < n; ++v) {
      if (!in_region[v]) continue;
      if (game.vertices[v].owner == p) {
        const std::int64_t s = strat[v];
        if (s < 0 || s >= n) return false;
        bool is_edge = false;
        for (std::uint32_t t : game.successors[v]) is_edge = is_edge || t == s;
        if (!is_edge || !in_region[static_cast<std::uint32_t>(s)]) return false;
        adj[v].push_back(static_cast<std::uint32_t>(s));
      } else {
        for (std::uint32_t t : game.successors[v])
          if (!in_region[t]) return false;
        adj[v] = game.successors[v];
      }
    }
    if (detail::has_cycle_with_max_parity(adj, in_region, colors,
                                          detail::winning_parity(opponent(p))))
      return false;
  }
  return true;
}

inline nlohmann::ordered_json solution_json(const Solution& sol) {
  nlohmann::ordered_json j;
  j["win_O"] = sol.win_o;
  j["win_I"] = sol.win_i;
  nlohmann::ordered_json so = nlohmann::ordered_json::object();
  nlohmann::ordered_json si = nlohmann::ordered_json::object();
  for (std::size_t v = 0; v < sol.strategy_o.size(); ++v) {
    if (sol.strategy_o[v] >= 0) so[std::to_string(v)] = sol.strategy_o[v];
    if (sol.strategy_i[v] >= 0) si[std::to_string(v)] = sol.strategy_i[v];
  }
  j["strategy_O"] = std::move(so);
  j["strategy_I"] = std::move(si);
  return j;
}

}  // namespace delaygames
