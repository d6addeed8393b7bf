#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include <delaygames/errors.hpp>

namespace delaygames {

/// Player O wins a play iff the limsup of the vertex colors is even
/// (max parity). In the interchange format Player O is side 0 and Player I
/// is side 1.
enum class Player : std::uint8_t { O = 0, I = 1 };

inline Player opponent(Player p) { return p == Player::O ? Player::I : Player::O; }
inline const char* player_name(Player p) { return p == Player::O ? "O" : "I"; }

/// Finite two-player arena with vertex ownership and max-parity winning
/// condition. Every vertex must have at least one successor.
struct ParityGame {
  struct Vertex {
    Player owner = Player::O;
    std::uint32_t color = 0;
    std::string label;  // diagnostic only
  };

  std::vector<Vertex> vertices;
  std::vector<std::vector<std::uint32_t>> successors;
  std::uint32_t initial = 0;

  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t edge_count() const {
    std::size_t m = 0;
    for (const auto& s : successors) m += s.size();
    return m;
  }

  void validate() const {
    if (vertices.empty()) throw ValidationError("parity game has no vertices");
    if (successors.size() != vertices.size())
      throw ValidationError("successor table size mismatch");
    if (initial >= vertices.size())
      throw ValidationError("initial vertex out of range");
    for (std::size_t v = 0; v < vertices.size(); ++v) {
      if (successors[v].empty())
        throw ValidationError("vertex " + std::to_string(v) + " has no successor");
      for (std::uint32_t s : successors[v])
        if (s >= vertices.size())
          throw ValidationError("vertex " + std::to_string(v) +
                                " has an out-of-range successor");
    }
  }
};

/// Line-oriented interchange format: header `parity <max-id>;`, then one
/// `<id> <color> <owner> <successors> "<label>";` line per vertex, with
/// owner 1 = Player I and owner 0 = Player O, max-parity semantics.
inline std::string export_pg(const ParityGame& game) {
  std::string out = "parity " + std::to_string(game.vertices.size() - 1) + ";\n";
  for (std::size_t v = 0; v < game.vertices.size(); ++v) {
    out += std::to_string(v);
    out += ' ';
    out += std::to_string(game.vertices[v].color);
    out += ' ';
    out += game.vertices[v].owner == Player::I ? '1' : '0';
    out += ' ';
    for (std::size_t i = 0; i < game.successors[v].size(); ++i) {
      if (i > 0) out += ',';
      out += std::to_string(game.successors[v][i]);
    }
    out += " \"";
    for (char c : game.vertices[v].label)
      if (c != '"' && c != '\n') out += c;
    out += "\";\n";
  }
  return out;
}

inline nlohmann::ordered_json game_stats(const ParityGame& game) {
  std::size_t owned_i = 0;
  std::uint32_t min_c = game.vertices.empty() ? 0 : game.vertices[0].color;
  std::uint32_t max_c = min_c;
  std::vector<std::uint32_t> colors;
  for (const auto& v : game.vertices) {
    if (v.owner == Player::I) ++owned_i;
    min_c = std::min(min_c, v.color);
    max_c = std::max(max_c, v.color);
    colors.push_back(v.color);
  }
  std::sort(colors.begin(), colors.end());
  colors.erase(std::unique(colors.begin(), colors.end()), colors.end());

  nlohmann::ordered_json j;
  j["vertex_count"] = game.vertices.size();
  j["edge_count"] = game.edge_count();
  j["initial"] = game.initial;
  j["owner_counts"] = {{"I", owned_i}, {"O", game.vertices.size() - owned_i}};
  j["color_count"] = colors.size();
  j["min_color"] = min_c;
  j["max_color"] = max_c;
  return j;
}

}  // namespace delaygames
