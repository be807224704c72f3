#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "apr/ars.hpp"
#include "apr/model.hpp"

namespace apr::model {

/// Explicit state space of a model. `states[id]` is the valuation behind Ars
/// object `id`; object ids follow the lexicographic order of their labels.
struct Expansion {
  Model model;
  Ars ars;
  std::vector<ModelState> states;
  StateSet initial;
};

inline std::string render_state(const Model& m, const ModelState& s) {
  std::string out = "<";
  bool first = true;
  auto put = [&](const std::string& part) {
    if (!first) out += ',';
    out += part;
    first = false;
  };
  for (std::size_t p = 0; p < m.processes.size(); ++p) put(m.processes[p].locations[s.locations[p]]);
  for (std::size_t v = 0; v < m.variables.size(); ++v) {
    const int value = s.values[v];
    put(m.variables[v].is_bool ? (value != 0 ? "true" : "false") : std::to_string(value));
  }
  out += '>';
  return out;
}

namespace detail {

// Mixed-radix coding of ModelState: processes first, then variables.
class StateCodec {
 public:
  explicit StateCodec(const Model& m) : model_(m) {
    for (const Process& p : m.processes) radix_.push_back(p.locations.size());
    for (const Variable& v : m.variables) radix_.push_back(static_cast<std::size_t>(v.hi - v.lo) + 1);
  }

  /// Product of all radices, or nullopt once it exceeds `cap`.
  [[nodiscard]] std::optional<std::size_t> size(std::size_t cap) const {
    std::size_t total = 1;
    for (std::size_t r : radix_) {
      if (r > cap || total > cap / r) return std::nullopt;
      total *= r;
    }
    return total;
  }

  [[nodiscard]] ModelState decode(std::size_t code) const {
    ModelState s;
    std::size_t k = 0;
    for (; k < model_.processes.size(); ++k) {
      s.locations.push_back(static_cast<std::uint32_t>(code % radix_[k]));
      code /= radix_[k];
    }
    for (const Variable& v : model_.variables) {
      s.values.push_back(v.lo + static_cast<int>(code % radix_[k]));
      code /= radix_[k++];
    }
    return s;
  }

  [[nodiscard]] std::size_t encode(const ModelState& s) const {
    std::size_t code = 0;
    for (std::size_t k = radix_.size(); k-- > 0;) {
      const std::size_t digit = k < model_.processes.size()
                                    ? s.locations[k]
                                    : static_cast<std::size_t>(s.values[k - model_.processes.size()] -
                                                               model_.variables[k - model_.processes.size()].lo);
      code = code * radix_[k] + digit;
    }
    return code;
  }

 private:
  const Model& model_;
  std::vector<std::size_t> radix_;
};

// Successor of `s` along `edge` of process `p`; throws when an assigned
// value leaves its variable's domain.
inline ModelState fire(const Model& m, const ModelState& s, std::size_t p, const ProcessEdge& edge) {
  ModelState next = s;
  next.locations[p] = static_cast<std::uint32_t>(edge.to);
  for (const Assignment& a : edge.assignments) {
    const int value = evaluate(*a.value, s);
    const Variable& var = m.variables[a.variable];
    if (!var.in_domain(value)) {
      throw InputError("assignment " + var.name + " := " + std::to_string(value) + " in process " +
                       m.processes[p].name + " leaves the domain [" + std::to_string(var.lo) + ".." +
                       std::to_string(var.hi) + "] (from state " + render_state(m, s) + ")");
    }
    next.values[a.variable] = value;
  }
  return next;
}

}  // namespace detail

/// Eager interleaving expansion of the full Cartesian state space.
inline Expansion expand(Model model, std::size_t max_states = 1'000'000) {
  const detail::StateCodec codec(model);
  const auto total = codec.size(max_states);
  if (!total || *total > max_states) {
    throw ResourceError("state space exceeds the cap of " + std::to_string(max_states) + " states");
  }

  std::vector<ModelState> by_code;
  std::vector<std::string> label_of_code;
  by_code.reserve(*total);
  label_of_code.reserve(*total);
  for (std::size_t c = 0; c < *total; ++c) {
    by_code.push_back(codec.decode(c));
    label_of_code.push_back(render_state(model, by_code.back()));
  }

  std::vector<std::size_t> order(*total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return label_of_code[a] < label_of_code[b]; });
  std::vector<ObjectId> id_of_code(*total);
  std::vector<std::string> labels;
  std::vector<ModelState> states;
  labels.reserve(*total);
  states.reserve(*total);
  for (std::size_t i = 0; i < order.size(); ++i) {
    id_of_code[order[i]] = static_cast<ObjectId>(i);
    labels.push_back(std::move(label_of_code[order[i]]));
    states.push_back(by_code[order[i]]);
  }

  std::vector<Transition> edges;
  for (ObjectId id = 0; id < states.size(); ++id) {
    const ModelState& s = states[id];
    for (std::size_t p = 0; p < model.processes.size(); ++p) {
      for (const ProcessEdge& edge : model.processes[p].edges) {
        if (edge.from != s.locations[p] || !holds(edge.guard, s)) continue;
        edges.push_back({id, id_of_code[codec.encode(detail::fire(model, s, p, edge))]});
      }
    }
  }

  // Initial states: every initial location per process times every initial value per variable.
  std::vector<ObjectId> initial;
  for (ObjectId id = 0; id < states.size(); ++id) {
    const ModelState& s = states[id];
    bool ok = true;
    for (std::size_t p = 0; p < model.processes.size() && ok; ++p) {
      const auto& init = model.processes[p].initial;
      ok = std::find(init.begin(), init.end(), s.locations[p]) != init.end();
    }
    for (std::size_t v = 0; v < model.variables.size() && ok; ++v) {
      const auto& init = model.variables[v].initial;
      ok = std::find(init.begin(), init.end(), s.values[v]) != init.end();
    }
    if (ok) initial.push_back(id);
  }

  Ars ars(std::move(labels), edges);
  return {std::move(model), std::move(ars), std::move(states), StateSet(std::move(initial))};
}

inline StateSet eval_state_predicate(const Expansion& x, const ExprPtr& expr) {
  std::vector<ObjectId> out;
  for (ObjectId id = 0; id < x.states.size(); ++id) {
    if (holds(expr, x.states[id])) out.push_back(id);
  }
  return StateSet(std::move(out));
}

inline StateSet eval_state_predicate(const Expansion& x, std::string_view text) {
  return eval_state_predicate(x, parse_state_predicate(x.model, text));
}

inline constexpr std::string_view kPetersonSource = R"(# Peterson's mutual exclusion for two processes.
var b0: bool = false
var b1: bool = false
var x: int[0..1] = 0 | 1

process P0 {
  loc noncrit0 init
  loc wait0
  loc crit0
  edge noncrit0 -> wait0 do b0 := true; x := 1
  edge wait0 -> crit0 when x = 0 || !b1
  edge crit0 -> noncrit0 do b0 := false
}

process P1 {
  loc noncrit1 init
  loc wait1
  loc crit1
  edge noncrit1 -> wait1 do b1 := true; x := 0
  edge wait1 -> crit1 when x = 1 || !b0
  edge crit1 -> noncrit1 do b1 := false
}
)";

inline Model builtin_peterson() { return parse_model(kPetersonSource); }

}  // namespace apr::model
