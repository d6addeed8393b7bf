#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <delaygames/automaton.hpp>
#include <delaygames/bigint.hpp>
#include <delaygames/bitset.hpp>
#include <delaygames/errors.hpp>

namespace delaygames {

/// Automaton state paired with the maximal color seen along the current
/// input block.
struct TrackedState {
  std::uint32_t state = 0;
  std::uint32_t color = 0;
  friend bool operator==(const TrackedState&, const TrackedState&) = default;
  friend bool operator<(const TrackedState& a, const TrackedState& b) {
    return a.state != b.state ? a.state < b.state : a.color < b.color;
  }
};

/// Subset of Q x C, as a bit pattern indexed by (state, color-index). The
/// encoding gives constant-time unions and canonical equality/hashing.
using TrackedSet = Bitset;

/// Total map q -> delta_p*({(q, omega(q))}, w) for some input block w. The
/// block itself is not stored; functions from different blocks compare equal
/// iff they agree on every start state.
struct BehaviorFunction {
  std::vector<TrackedSet> values;  // indexed by start state
  friend bool operator==(const BehaviorFunction&, const BehaviorFunction&) = default;
  friend bool operator<(const BehaviorFunction& a, const BehaviorFunction& b) {
    return a.values < b.values;
  }
};

struct BehaviorFunctionHash {
  std::size_t operator()(const BehaviorFunction& f) const {
    std::size_t h = f.values.size();
    for (const TrackedSet& s : f.values) h = detail::hash_mix(h, detail::hash_bitset(s));
    return h;
  }
};

/// Color-tracking projection of a DPA: the tracked step delta_t, the
/// input-projected powerset step delta_p, and behavior functions for input
/// blocks. Pure and safe to share across threads after construction.
class Tracking {
 public:
  explicit Tracking(const Dpa& dpa) : dpa_(&dpa), colors_(dpa.colors()) {
    color_pos_.assign(colors_.back() + 1, 0);
    for (std::uint32_t i = 0; i < colors_.size(); ++i) color_pos_[colors_[i]] = i;

    // step_table[slot(q, ci) * |sigma_i| + a] = union over b of the
    // singleton delta_t((q, colors[ci]), (a, b)).
    const std::size_t a_count = dpa.sigma_i.size();
    step_table_.reserve(slot_count() * a_count);
    for (std::uint32_t q = 0; q < dpa.state_count; ++q) {
      for (std::uint32_t ci = 0; ci < colors_.size(); ++ci) {
        for (std::uint32_t a = 0; a < a_count; ++a) {
          TrackedSet s(slot_count());
          for (std::uint32_t b = 0; b < dpa.sigma_o.size(); ++b) {
            const TrackedState t = delta_t({q, colors_[ci]}, {a, b});
            s.set(slot(t.state, t.color));
          }
          step_table_.push_back(std::move(s));
        }
      }
    }
  }

  const Dpa& dpa() const { return *dpa_; }
  std::uint32_t color_count() const { return static_cast<std::uint32_t>(colors_.size()); }
  std::uint32_t color_value(std::uint32_t index) const { return colors_[index]; }
  std::size_t slot_count() const {
    return static_cast<std::size_t>(dpa_->state_count) * colors_.size();
  }

  std::uint32_t color_index(std::uint32_t color) const {
    assert(color < color_pos_.size() && colors_[color_pos_[color]] == color);
    return color_pos_[color];
  }

  std::size_t slot(std::uint32_t state, std::uint32_t color) const {
    return static_cast<std::size_t>(state) * colors_.size() + color_index(color);
  }

  TrackedState slot_state(std::size_t slot) const {
    return {static_cast<std::uint32_t>(slot / colors_.size()),
            colors_[slot % colors_.size()]};
  }

  /// delta_t((q, c), (a, b)) = (q', max(c, omega(q'))) with q' = delta(q, (a, b)).
  TrackedState delta_t(TrackedState ts, Letter l) const {
    const std::uint32_t q2 = dpa_->next(ts.state, l);
    return {q2, std::max(ts.color, dpa_->color(q2))};
  }

  /// Powerset step over input letter a, with the output letter projected
  /// away: union of delta_t over all elements and all output letters.
  TrackedSet delta_p(const TrackedSet& s, std::uint32_t a) const {
    assert(!s.none());
    TrackedSet out(slot_count());
    const std::size_t a_count = dpa_->sigma_i.size();
    s.for_each([&](std::size_t sl) { out |= step_table_[sl * a_count + a]; });
    return out;
  }

  /// Extension of delta_p to input words.
  TrackedSet delta_p_star(TrackedSet s, std::span<const std::uint32_t> word) const {
    for (std::uint32_t a : word) s = delta_p(s, a);
    return s;
  }

  /// {(q, omega(q))}: the start set of a fresh tracking block.
  TrackedSet singleton(std::uint32_t q) const {
    TrackedSet s(slot_count());
    s.set(slot(q, dpa_->color(q)));
    return s;
  }

  TrackedSet make_set(std::span<const TrackedState> elements) const {
    TrackedSet s(slot_count());
    for (const TrackedState& e : elements) s.set(slot(e.state, e.color));
    return s;
  }

  std::vector<TrackedState> elements(const TrackedSet& s) const {
    std::vector<TrackedState> out;
    s.for_each([&](std::size_t sl) { out.push_back(slot_state(sl)); });
    return out;
  }

  /// Behavior function of the empty block: f(q) = {(q, omega(q))}.
  BehaviorFunction behavior_identity() const {
    BehaviorFunction f;
    f.values.reserve(dpa_->state_count);
    for (std::uint32_t q = 0; q < dpa_->state_count; ++q)
      f.values.push_back(singleton(q));
    return f;
  }

  /// Pointwise powerset step: if f summarizes block w, the result
  /// summarizes wa.
  BehaviorFunction behavior_step(const BehaviorFunction& f, std::uint32_t a) const {
    BehaviorFunction g;
    g.values.reserve(f.values.size());
    for (const TrackedSet& s : f.values) g.values.push_back(delta_p(s, a));
    return g;
  }

 private:
  const Dpa* dpa_;
  std::vector<std::uint32_t> colors_;     // ascending distinct colors
  std::vector<std::uint32_t> color_pos_;  // color value -> dense index
  std::vector<TrackedSet> step_table_;
};

/// The layers F_0, F_1, ... with F_k = { f_w : |w| = k }, stored up to the
/// first repetition F_(mu+lambda) = F_mu. Because each layer is a
/// deterministic function of its predecessor over a finite space, the
/// sequence is eventually periodic, which makes astronomically large block
/// lengths addressable by index folding.
struct LayerSequence {
  std::vector<std::vector<BehaviorFunction>> layers;  // each canonically sorted
  std::size_t preperiod = 0;  // mu
  std::size_t period = 1;     // lambda

  /// Index of the stored layer equal to F_k.
  std::size_t fold(const BigUint& k) const {
    if (k < layers.size()) return k.get_ui();
    BigUint shifted = k - static_cast<unsigned long>(preperiod);
    const unsigned long r =
        mpz_fdiv_ui(shifted.get_mpz_t(), static_cast<unsigned long>(period));
    return preperiod + static_cast<std::size_t>(r);
  }

  const std::vector<BehaviorFunction>& at(const BigUint& k) const {
    return layers[fold(k)];
  }
};

/// Iterates F_(i+1) = { behavior_step(f, a) : f in F_i, a in sigma_i } from
/// F_0 = {identity} until a layer repeats. Throws ResourceLimitError if no
/// repetition shows up within `cap` distinct layers.
inline LayerSequence layer_sequence(const Tracking& tracking, std::size_t cap) {
  struct LayerHash {
    std::size_t operator()(const std::vector<BehaviorFunction>& layer) const {
      std::size_t h = layer.size();
      BehaviorFunctionHash fh;
      for (const BehaviorFunction& f : layer) h = detail::hash_mix(h, fh(f));
      return h;
    }
  };

  LayerSequence seq;
  std::unordered_map<std::vector<BehaviorFunction>, std::size_t, LayerHash> seen;
  std::vector<BehaviorFunction> current{tracking.behavior_identity()};
  const std::uint32_t a_count =
      static_cast<std::uint32_t>(tracking.dpa().sigma_i.size());

  for (;;) {
    auto it = seen.find(current);
    if (it != seen.end()) {
      seq.preperiod = it->second;
      seq.period = seq.layers.size() - it->second;
      return seq;
    }
    if (seq.layers.size() >= cap)
      throw ResourceLimitError("layer_sequence: no repetition within " +
                               std::to_string(cap) + " layers");
    seen.emplace(current, seq.layers.size());
    seq.layers.push_back(current);

    std::vector<BehaviorFunction> next;
    std::unordered_set<BehaviorFunction, BehaviorFunctionHash> dedup;
    for (const BehaviorFunction& f : current) {
      for (std::uint32_t a = 0; a < a_count; ++a) {
        BehaviorFunction g = tracking.behavior_step(f, a);
        if (dedup.insert(g).second) next.push_back(std::move(g));
      }
    }
    std::sort(next.begin(), next.end());
    current = std::move(next);
  }
}

}  // namespace delaygames
