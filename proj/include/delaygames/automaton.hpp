#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include <delaygames/errors.hpp>

namespace delaygames {

/// One step of a product-alphabet word, as indices into sigma_i and sigma_o.
struct Letter {
  std::uint32_t in = 0;
  std::uint32_t out = 0;
  friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

/// Ultimately periodic word prefix.cycle^omega in finite presentation.
struct LassoWord {
  Word prefix;
  Word cycle;  // must be non-empty
};

/// Deterministic parity automaton over a product alphabet sigma_i x sigma_o.
/// A run is accepting iff the largest color visited infinitely often is even
/// (max parity). The transition table is total.
struct Dpa {
  std::vector<std::string> sigma_i;
  std::vector<std::string> sigma_o;
  std::uint32_t state_count = 0;
  std::uint32_t initial = 0;
  std::vector<std::uint32_t> delta;  // ((q * |sigma_i|) + in) * |sigma_o| + out
  std::vector<std::uint32_t> omega;  // per-state color

  std::uint32_t next(std::uint32_t q, std::uint32_t in, std::uint32_t out) const {
    return delta[(static_cast<std::size_t>(q) * sigma_i.size() + in) * sigma_o.size() +
                 out];
  }
  std::uint32_t next(std::uint32_t q, Letter l) const { return next(q, l.in, l.out); }
  std::uint32_t color(std::uint32_t q) const { return omega[q]; }

  /// The color set C: distinct values of omega in ascending order.
  std::vector<std::uint32_t> colors() const {
    std::vector<std::uint32_t> c = omega;
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
  }

  std::uint32_t min_color() const { return *std::min_element(omega.begin(), omega.end()); }
  std::uint32_t max_color() const { return *std::max_element(omega.begin(), omega.end()); }

  std::uint32_t in_index(std::string_view label) const {
    for (std::uint32_t i = 0; i < sigma_i.size(); ++i)
      if (sigma_i[i] == label) return i;
    throw ValidationError("symbol not in input alphabet: '" + std::string(label) + "'");
  }

  std::uint32_t out_index(std::string_view label) const {
    for (std::uint32_t i = 0; i < sigma_o.size(); ++i)
      if (sigma_o[i] == label) return i;
    throw ValidationError("symbol not in output alphabet: '" + std::string(label) + "'");
  }

  void validate() const;

  friend bool operator==(const Dpa&, const Dpa&) = default;
};

/// End state and maximal color of a finite run segment, start state included.
struct RunResult {
  std::uint32_t state = 0;
  std::uint32_t max_color = 0;
  friend bool operator==(const RunResult&, const RunResult&) = default;
};

namespace detail {

inline void check_alphabet(const std::vector<std::string>& sigma, const char* name) {
  if (sigma.empty()) throw ValidationError(std::string(name) + ": alphabet is empty");
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const std::string& s = sigma[i];
    const std::string loc = std::string(name) + "[" + std::to_string(i) + "]";
    if (s.empty()) throw ValidationError(loc + ": empty symbol label");
    for (char ch : s) {
      if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',')
        throw ValidationError(loc + ": symbol '" + s +
                              "' contains whitespace or a comma");
    }
    for (std::size_t j = 0; j < i; ++j)
      if (sigma[j] == s)
        throw ValidationError(loc + ": duplicate symbol '" + s + "'");
  }
}

}  // namespace detail

inline void Dpa::validate() const {
  detail::check_alphabet(sigma_i, "sigma_i");
  detail::check_alphabet(sigma_o, "sigma_o");
  if (state_count == 0) throw ValidationError("states: must be positive");
  if (initial >= state_count)
    throw ValidationError("initial: state " + std::to_string(initial) +
                          " out of range");
  if (omega.size() != state_count)
    throw ValidationError("colors: expected " + std::to_string(state_count) +
                          " entries, got " + std::to_string(omega.size()));
  const std::size_t expected =
      static_cast<std::size_t>(state_count) * sigma_i.size() * sigma_o.size();
  if (delta.size() != expected)
    throw ValidationError("transitions: table has " + std::to_string(delta.size()) +
                          " entries, expected " + std::to_string(expected));
  for (std::size_t i = 0; i < delta.size(); ++i)
    if (delta[i] >= state_count)
      throw ValidationError("transitions: target state " + std::to_string(delta[i]) +
                            " out of range");
}

/// Parses the canonical JSON instance format. Throws ParseError on malformed
/// documents and ValidationError on semantic defects, each with a location.
inline Dpa parse_dpa(std::string_view text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("syntax error: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("top-level value must be an object");

  static const char* kKeys[] = {"sigma_i", "sigma_o", "states",
                                "initial", "colors",  "transitions"};
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : kKeys) known = known || item.key() == k;
    if (!known) throw ParseError("unknown field '" + item.key() + "'");
  }
  for (const char* k : kKeys)
    if (!j.contains(k)) throw ParseError(std::string("missing field '") + k + "'");

  auto string_array = [&](const char* key) {
    const json& a = j.at(key);
    if (!a.is_array()) throw ParseError(std::string(key) + ": expected an array");
    std::vector<std::string> out;
    for (const json& e : a) {
      if (!e.is_string())
        throw ParseError(std::string(key) + ": expected string entries");
      out.push_back(e.get<std::string>());
    }
    return out;
  };
  auto get_uint = [&](const json& v, const std::string& what) -> std::uint32_t {
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() > 0xffffffffull)
      throw ParseError(what + ": expected a non-negative integer");
    return v.get<std::uint32_t>();
  };

  Dpa dpa;
  dpa.sigma_i = string_array("sigma_i");
  dpa.sigma_o = string_array("sigma_o");
  detail::check_alphabet(dpa.sigma_i, "sigma_i");
  detail::check_alphabet(dpa.sigma_o, "sigma_o");
  dpa.state_count = get_uint(j.at("states"), "states");
  if (dpa.state_count == 0) throw ValidationError("states: must be positive");
  dpa.initial = get_uint(j.at("initial"), "initial");
  if (dpa.initial >= dpa.state_count)
    throw ValidationError("initial: state " + std::to_string(dpa.initial) +
                          " out of range");

  const json& colors = j.at("colors");
  if (!colors.is_array()) throw ParseError("colors: expected an array");
  for (std::size_t i = 0; i < colors.size(); ++i)
    dpa.omega.push_back(get_uint(colors[i], "colors[" + std::to_string(i) + "]"));
  if (dpa.omega.size() != dpa.state_count)
    throw ValidationError("colors: expected " + std::to_string(dpa.state_count) +
                          " entries, got " + std::to_string(dpa.omega.size()));

  const std::size_t a_count = dpa.sigma_i.size();
  const std::size_t b_count = dpa.sigma_o.size();
  const std::size_t table_size =
      static_cast<std::size_t>(dpa.state_count) * a_count * b_count;
  if (table_size > 100'000'000)
    throw ValidationError("instance too large: transition table would have " +
                          std::to_string(table_size) + " entries");

  std::unordered_map<std::string, std::uint32_t> in_idx, out_idx;
  for (std::uint32_t i = 0; i < a_count; ++i) in_idx[dpa.sigma_i[i]] = i;
  for (std::uint32_t i = 0; i < b_count; ++i) out_idx[dpa.sigma_o[i]] = i;

  constexpr std::uint32_t kUnset = 0xffffffffu;
  dpa.delta.assign(table_size, kUnset);

  const json& transitions = j.at("transitions");
  if (!transitions.is_array()) throw ParseError("transitions: expected an array");
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    const std::string loc = "transitions[" + std::to_string(i) + "]";
    const json& t = transitions[i];
    if (!t.is_object()) throw ParseError(loc + ": expected an object");
    for (const auto& item : t.items())
      if (item.key() != "from" && item.key() != "in" && item.key() != "out" &&
          item.key() != "to")
        throw ParseError(loc + ": unknown field '" + item.key() + "'");
    for (const char* k : {"from", "in", "out", "to"})
      if (!t.contains(k)) throw ParseError(loc + ": missing field '" + std::string(k) + "'");
    if (!t.at("in").is_string() || !t.at("out").is_string())
      throw ParseError(loc + ": 'in' and 'out' must be symbol strings");

    const std::uint32_t from = get_uint(t.at("from"), loc + ": from");
    const std::uint32_t to = get_uint(t.at("to"), loc + ": to");
    if (from >= dpa.state_count)
      throw ValidationError(loc + ": state " + std::to_string(from) + " out of range");
    if (to >= dpa.state_count)
      throw ValidationError(loc + ": state " + std::to_string(to) + " out of range");
    const auto ia = in_idx.find(t.at("in").get<std::string>());
    if (ia == in_idx.end())
      throw ValidationError(loc + ": unknown input symbol '" +
                            t.at("in").get<std::string>() + "'");
    const auto ib = out_idx.find(t.at("out").get<std::string>());
    if (ib == out_idx.end())
      throw ValidationError(loc + ": unknown output symbol '" +
                            t.at("out").get<std::string>() + "'");

    std::uint32_t& slot =
        dpa.delta[(static_cast<std::size_t>(from) * a_count + ia->second) * b_count +
                  ib->second];
    if (slot != kUnset)
      throw ValidationError(loc + ": duplicate transition (" + std::to_string(from) +
                            ", '" + dpa.sigma_i[ia->second] + "', '" +
                            dpa.sigma_o[ib->second] + "')");
    slot = to;
  }
  for (std::uint32_t q = 0; q < dpa.state_count; ++q)
    for (std::uint32_t a = 0; a < a_count; ++a)
      for (std::uint32_t b = 0; b < b_count; ++b)
        if (dpa.next(q, a, b) == kUnset)
          throw ValidationError("missing transition (" + std::to_string(q) + ", '" +
                                dpa.sigma_i[a] + "', '" + dpa.sigma_o[b] + "')");
  dpa.validate();
  return dpa;
}

/// Canonical serialization: fixed key order, transitions sorted by
/// (from, in, out). parse_dpa(serialize_dpa(d)) is structurally equal to d,
/// and the output is a fixed point of parse-then-serialize.
inline std::string serialize_dpa(const Dpa& dpa) {
  nlohmann::ordered_json j;
  j["sigma_i"] = dpa.sigma_i;
  j["sigma_o"] = dpa.sigma_o;
  j["states"] = dpa.state_count;
  j["initial"] = dpa.initial;
  j["colors"] = dpa.omega;
  nlohmann::ordered_json ts = nlohmann::ordered_json::array();
  for (std::uint32_t q = 0; q < dpa.state_count; ++q)
    for (std::uint32_t a = 0; a < dpa.sigma_i.size(); ++a)
      for (std::uint32_t b = 0; b < dpa.sigma_o.size(); ++b) {
        nlohmann::ordered_json t;
        t["from"] = q;
        t["in"] = dpa.sigma_i[a];
        t["out"] = dpa.sigma_o[b];
        t["to"] = dpa.next(q, a, b);
        ts.push_back(std::move(t));
      }
  j["transitions"] = std::move(ts);
  return j.dump(2) + "\n";
}

namespace detail {

inline void check_letter(const Dpa& dpa, Letter l) {
  if (l.in >= dpa.sigma_i.size() || l.out >= dpa.sigma_o.size())
    throw ValidationError("symbol not in alphabet");
}

}  // namespace detail

/// Runs the automaton from `start` over `word`; returns the end state and the
/// maximal color among all visited states, start included. The empty word
/// yields (start, omega(start)).
inline RunResult run_prefix(const Dpa& dpa, std::uint32_t start,
                            std::span<const Letter> word) {
  if (start >= dpa.state_count)
    throw ValidationError("start state out of range");
  std::uint32_t q = start;
  std::uint32_t c = dpa.color(q);
  for (Letter l : word) {
    detail::check_letter(dpa, l);
    q = dpa.next(q, l);
    c = std::max(c, dpa.color(q));
  }
  return {q, c};
}

/// Acceptance of the ultimately periodic word prefix.cycle^omega: follow the
/// run until the state at a cycle boundary repeats, then take the maximal
/// color on the repeating segment and test evenness.
inline bool accepts_lasso(const Dpa& dpa, const LassoWord& lasso) {
  if (lasso.cycle.empty()) throw ValidationError("lasso cycle must be non-empty");
  for (Letter l : lasso.prefix) detail::check_letter(dpa, l);
  for (Letter l : lasso.cycle) detail::check_letter(dpa, l);

  std::uint32_t q = dpa.initial;
  for (Letter l : lasso.prefix) q = dpa.next(q, l);

  // One entry per cycle iteration: boundary state before the iteration and
  // the maximal color over the states visited during it (endpoint included).
  std::vector<std::int64_t> seen_at(dpa.state_count, -1);
  std::vector<std::uint32_t> seg_color;
  std::int64_t iteration = 0;
  while (seen_at[q] < 0) {
    seen_at[q] = iteration++;
    std::uint32_t c = 0;
    std::uint32_t p = q;
    for (Letter l : lasso.cycle) {
      p = dpa.next(p, l);
      c = std::max(c, dpa.color(p));
    }
    seg_color.push_back(c);
    q = p;
  }
  std::uint32_t top = 0;
  for (std::int64_t t = seen_at[q]; t < iteration; ++t)
    top = std::max(top, seg_color[static_cast<std::size_t>(t)]);
  return top % 2 == 0;
}

/// Seeded uniform instance generator; deterministic in all arguments.
inline Dpa random_dpa(std::uint32_t n, std::uint32_t colors, std::uint32_t in_size,
                      std::uint32_t out_size, std::uint64_t seed) {
  if (n == 0 || colors == 0 || in_size == 0 || out_size == 0)
    throw std::invalid_argument("random_dpa: all sizes must be positive");
  Dpa dpa;
  for (std::uint32_t i = 0; i < in_size; ++i) dpa.sigma_i.push_back(std::to_string(i));
  for (std::uint32_t i = 0; i < out_size; ++i) dpa.sigma_o.push_back(std::to_string(i));
  dpa.state_count = n;
  dpa.initial = 0;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> color_dist(0, colors - 1);
  std::uniform_int_distribution<std::uint32_t> state_dist(0, n - 1);
  for (std::uint32_t q = 0; q < n; ++q) dpa.omega.push_back(color_dist(rng));
  const std::size_t table =
      static_cast<std::size_t>(n) * in_size * out_size;
  dpa.delta.reserve(table);
  for (std::size_t i = 0; i < table; ++i) dpa.delta.push_back(state_dist(rng));
  dpa.validate();
  return dpa;
}

/// Safety automaton for the prediction language over binary alphabets:
/// output b_i must equal input a_(i+d). States store the queue of the last
/// up-to-d output letters (ordered by length, then lexicographically), plus
/// an absorbing bad state of color 1; tracking states have color 0. With a
/// full queue x_1..x_d, reading (a, b) checks a = x_1, dequeues, enqueues b;
/// a mismatch moves to the bad state.
inline Dpa prediction_family(std::uint32_t d) {
  if (d < 1) throw std::invalid_argument("prediction_family: d must be >= 1");
  if (d > 20) throw ValidationError("prediction_family: d too large");

  const std::uint32_t tracking = (1u << (d + 1)) - 1;  // strings of length <= d
  const std::uint32_t bad = tracking;
  auto index_of = [](std::uint32_t len, std::uint32_t bits) {
    return ((1u << len) - 1) + bits;  // length-major, then lexicographic
  };

  Dpa dpa;
  dpa.sigma_i = {"0", "1"};
  dpa.sigma_o = {"0", "1"};
  dpa.state_count = tracking + 1;
  dpa.initial = 0;
  dpa.omega.assign(dpa.state_count, 0);
  dpa.omega[bad] = 1;
  dpa.delta.assign(static_cast<std::size_t>(dpa.state_count) * 4, bad);

  auto set_edge = [&](std::uint32_t q, std::uint32_t a, std::uint32_t b,
                      std::uint32_t to) {
    dpa.delta[(static_cast<std::size_t>(q) * 2 + a) * 2 + b] = to;
  };
  for (std::uint32_t len = 0; len <= d; ++len) {
    for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
      const std::uint32_t q = index_of(len, bits);
      for (std::uint32_t a = 0; a < 2; ++a) {
        for (std::uint32_t b = 0; b < 2; ++b) {
          if (len < d) {
            set_edge(q, a, b, index_of(len + 1, bits * 2 + b));
          } else {
            const std::uint32_t front = (bits >> (d - 1)) & 1u;
            const std::uint32_t rest = d == 1 ? 0 : (bits & ((1u << (d - 1)) - 1));
            set_edge(q, a, b, a == front ? index_of(d, rest * 2 + b) : bad);
          }
        }
      }
    }
  }
  // bad state rows were pre-filled with self-loops to bad
  dpa.validate();
  return dpa;
}

}  // namespace delaygames
