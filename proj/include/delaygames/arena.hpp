#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <delaygames/automaton.hpp>
#include <delaygames/bitset.hpp>
#include <delaygames/errors.hpp>
#include <delaygames/parity_game.hpp>
#include <delaygames/tracking.hpp>

namespace delaygames {

inline constexpr std::size_t kDefaultVertexBudget = 5'000'000;

namespace detail {

/// Restriction of a behavior function to a domain D: the domain bit set
/// plus one value set per state occurring in D (ascending). Values do not
/// depend on the color component of the argument, so states suffice.
struct Restriction {
  TrackedSet domain;
  std::vector<TrackedSet> values;
  friend bool operator==(const Restriction&, const Restriction&) = default;
};

struct RestrictionHash {
  std::size_t operator()(const Restriction& r) const {
    std::size_t h = hash_bitset(r.domain);
    for (const TrackedSet& v : r.values) h = hash_mix(h, hash_bitset(v));
    return h;
  }
};

inline std::vector<std::uint32_t> domain_states(const Tracking& tracking,
                                                const TrackedSet& domain) {
  std::vector<std::uint32_t> states;
  domain.for_each([&](std::size_t slot) {
    const std::uint32_t q = tracking.slot_state(slot).state;
    if (states.empty() || states.back() != q) states.push_back(q);
  });
  return states;
}

inline Restriction restrict_function(const BehaviorFunction& f,
                                     const TrackedSet& domain,
                                     std::span<const std::uint32_t> states) {
  Restriction r{domain, {}};
  r.values.reserve(states.size());
  for (std::uint32_t q : states) r.values.push_back(f.values[q]);
  return r;
}

inline std::string join_word(const std::vector<std::string>& sigma,
                             std::span<const std::uint32_t> word) {
  bool compact = true;
  for (const std::string& s : sigma) compact = compact && s.size() == 1;
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!compact && i > 0) out += ',';
    out += sigma[word[i]];
  }
  return out;
}

}  // namespace detail

/// Builds the delay-free game played on restricted behavior functions: from
/// the initial vertex Player I picks a restriction with domain
/// {(q_init, omega(q_init))}; at a restriction r Player O picks some
/// (q, c) in dom(r), scoring color c; Player I then picks any restriction
/// with domain r(q, c). All non-scoring vertices carry the neutral color
/// min C. Only the part reachable from the initial vertex is materialized,
/// and distinct functions agreeing on a domain are merged.
inline ParityGame build_abstract_game(const Tracking& tracking,
                                      std::span<const BehaviorFunction> layer,
                                      std::size_t vertex_budget = kDefaultVertexBudget) {
  if (layer.empty())
    throw ValidationError("build_abstract_game: empty behavior layer");
  vertex_budget = std::min<std::size_t>(vertex_budget, 0xfffffff0u);  // 32-bit ids

  // Canonical evaluation order, so that identical inputs build identical games.
  std::vector<const BehaviorFunction*> fs;
  fs.reserve(layer.size());
  for (const BehaviorFunction& f : layer) fs.push_back(&f);
  std::sort(fs.begin(), fs.end(),
            [](const BehaviorFunction* a, const BehaviorFunction* b) { return *a < *b; });

  const Dpa& dpa = tracking.dpa();
  const std::uint32_t neutral = dpa.min_color();

  ParityGame game;
  auto add_vertex = [&](Player owner, std::uint32_t color, std::string label) {
    if (game.vertices.size() >= vertex_budget)
      throw ResourceLimitError("build_abstract_game: vertex budget of " +
                               std::to_string(vertex_budget) + " exceeded");
    game.vertices.push_back({owner, color, std::move(label)});
    game.successors.emplace_back();
    return static_cast<std::uint32_t>(game.vertices.size() - 1);
  };

  game.initial = add_vertex(Player::I, neutral, "init");

  std::unordered_map<detail::Restriction, std::uint32_t, detail::RestrictionHash> o_ids;
  std::vector<detail::Restriction> o_keys;  // by O-ordinal
  std::vector<std::uint32_t> o_vids;        // O-ordinal -> vertex id

  // Returns the O-vertex for the given domain/function, creating it on
  // first sight; newly created vertices are expanded by the loop below.
  auto o_vertex = [&](detail::Restriction key) {
    auto it = o_ids.find(key);
    if (it != o_ids.end()) return it->second;
    const std::uint32_t id =
        add_vertex(Player::O, neutral, "r" + std::to_string(o_keys.size()));
    o_ids.emplace(key, id);
    o_keys.push_back(std::move(key));
    o_vids.push_back(id);
    return id;
  };

  // Appends edges source -> restriction of each layer function to `domain`,
  // merging duplicate restrictions.
  auto link_restrictions = [&](std::uint32_t source, const TrackedSet& domain) {
    const std::vector<std::uint32_t> states = detail::domain_states(tracking, domain);
    std::unordered_set<std::uint32_t> linked;
    for (const BehaviorFunction* f : fs) {
      const std::uint32_t id = o_vertex(detail::restrict_function(*f, domain, states));
      if (linked.insert(id).second) game.successors[source].push_back(id);
    }
  };

  link_restrictions(game.initial, tracking.singleton(dpa.initial));

  for (std::size_t w = 0; w < o_keys.size(); ++w) {
    const std::uint32_t o_id = o_vids[w];
    const detail::Restriction key = o_keys[w];  // copy: o_keys grows in the loop
    const std::vector<std::uint32_t> states = detail::domain_states(tracking, key.domain);

    key.domain.for_each([&](std::size_t slot) {
      const TrackedState pick = tracking.slot_state(slot);
      const std::uint32_t i_id =
          add_vertex(Player::I, pick.color,
                     game.vertices[o_id].label + ":(q" + std::to_string(pick.state) +
                         "," + std::to_string(pick.color) + ")");
      game.successors[o_id].push_back(i_id);
      const std::size_t pos = static_cast<std::size_t>(
          std::lower_bound(states.begin(), states.end(), pick.state) - states.begin());
      link_restrictions(i_id, key.values[pos]);
    });
  }
  return game;
}

/// Builds the explicit delay game with lookahead k as a parity game. A
/// vertex is an automaton state plus the queue of revealed-but-unconsumed
/// input letters. Player I appends letters while the queue holds at most k
/// of them; with k+1 pending, Player O picks an output letter, consuming
/// the queue front. Targets of consuming moves are split into
/// post-transition copies (label suffix '*') carrying the entered state's
/// color; all other vertices carry the neutral color min C.
inline ParityGame build_queue_game(const Dpa& dpa, std::uint32_t k,
                                   std::size_t vertex_budget = kDefaultVertexBudget) {
  vertex_budget = std::min<std::size_t>(vertex_budget, 0xfffffff0u);  // 32-bit ids
  const std::uint64_t a_count = dpa.sigma_i.size();
  const std::uint64_t b_count = dpa.sigma_o.size();
  const std::uint32_t neutral = dpa.min_color();

  // pow[len] = a_count^len, offset[len] = first id of the length-len block.
  std::vector<std::uint64_t> pow(k + 2);
  std::vector<std::uint64_t> offset(k + 3);
  pow[0] = 1;
  offset[0] = 0;
  for (std::uint32_t len = 0; len <= k + 1; ++len) {
    offset[len + 1] = offset[len] + pow[len] * dpa.state_count;
    if (offset[len + 1] > vertex_budget)
      throw ResourceLimitError("build_queue_game: vertex budget of " +
                               std::to_string(vertex_budget) + " exceeded at k=" +
                               std::to_string(k));
    if (len + 1 < pow.size()) pow[len + 1] = pow[len] * a_count;
  }
  const std::uint64_t base_count = offset[k + 2];

  auto base_id = [&](std::uint32_t q, std::uint32_t len, std::uint64_t rank) {
    return static_cast<std::uint32_t>(offset[len] + rank * dpa.state_count + q);
  };
  auto word_of = [&](std::uint32_t len, std::uint64_t rank) {
    std::vector<std::uint32_t> w(len);
    for (std::uint32_t i = 0; i < len; ++i) {
      w[len - 1 - i] = static_cast<std::uint32_t>(rank % a_count);
      rank /= a_count;
    }
    return w;
  };

  ParityGame game;
  game.vertices.resize(base_count);
  game.successors.resize(base_count);
  game.initial = base_id(dpa.initial, 0, 0);

  for (std::uint32_t len = 0; len <= k + 1; ++len) {
    for (std::uint64_t rank = 0; rank < pow[len]; ++rank) {
      const std::vector<std::uint32_t> w = word_of(len, rank);
      for (std::uint32_t q = 0; q < dpa.state_count; ++q) {
        auto& v = game.vertices[base_id(q, len, rank)];
        v.owner = len <= k ? Player::I : Player::O;
        v.color = neutral;
        v.label = "q" + std::to_string(q) + "|" + detail::join_word(dpa.sigma_i, w);
      }
    }
  }

  // Post-transition copies, created on demand for targets of consuming moves.
  std::unordered_map<std::uint64_t, std::uint32_t> post_ids;  // q * pow[k] + rank
  std::vector<std::pair<std::uint32_t, std::uint64_t>> post_todo;
  auto post_id = [&](std::uint32_t q, std::uint64_t rank) {
    const std::uint64_t key = static_cast<std::uint64_t>(q) * pow[k] + rank;
    auto it = post_ids.find(key);
    if (it != post_ids.end()) return it->second;
    if (game.vertices.size() >= vertex_budget)
      throw ResourceLimitError("build_queue_game: vertex budget of " +
                               std::to_string(vertex_budget) + " exceeded at k=" +
                               std::to_string(k));
    game.vertices.push_back(
        {Player::I, dpa.color(q),
         "q" + std::to_string(q) + "|" +
             detail::join_word(dpa.sigma_i, word_of(k, rank)) + "*"});
    game.successors.emplace_back();
    const std::uint32_t id = static_cast<std::uint32_t>(game.vertices.size() - 1);
    post_ids.emplace(key, id);
    post_todo.emplace_back(q, rank);
    return id;
  };

  // Appending moves of Player I from a queue of length len <= k.
  auto append_edges = [&](std::vector<std::uint32_t>& succs, std::uint32_t q,
                          std::uint32_t len, std::uint64_t rank) {
    for (std::uint32_t a = 0; a < a_count; ++a)
      succs.push_back(base_id(q, len + 1, rank * a_count + a));
  };

  for (std::uint32_t len = 0; len <= k; ++len)
    for (std::uint64_t rank = 0; rank < pow[len]; ++rank)
      for (std::uint32_t q = 0; q < dpa.state_count; ++q)
        append_edges(game.successors[base_id(q, len, rank)], q, len, rank);

  // Consuming moves of Player O from a full queue of length k+1.
  for (std::uint64_t rank = 0; rank < pow[k] * a_count; ++rank) {
    const std::uint32_t front = static_cast<std::uint32_t>(rank / pow[k]);
    const std::uint64_t rest = rank % pow[k];
    for (std::uint32_t q = 0; q < dpa.state_count; ++q) {
      for (std::uint32_t b = 0; b < b_count; ++b) {
        const std::uint32_t target = post_id(dpa.next(q, front, b), rest);
        game.successors[base_id(q, k + 1, rank)].push_back(target);
      }
    }
  }

  // Post copies move like the matching base vertex with queue length k.
  for (std::size_t i = 0; i < post_todo.size(); ++i) {
    const auto [q, rank] = post_todo[i];
    append_edges(game.successors[post_ids[static_cast<std::uint64_t>(q) * pow[k] + rank]],
                 q, k, rank);
  }
  return game;
}

}  // namespace delaygames
