#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "apr/ars.hpp"

namespace apr {

/// ⟨P⟩ ⇒ ⟨Q⟩, or the distinguished invalid predicate ⊥ that Dis produces.
class AprPredicate {
 public:
  AprPredicate() = default;
  AprPredicate(StateSet source, StateSet target) : source_(std::move(source)), target_(std::move(target)) {}

  static AprPredicate bottom() {
    AprPredicate p;
    p.bottom_ = true;
    return p;
  }

  [[nodiscard]] bool is_bottom() const noexcept { return bottom_; }
  [[nodiscard]] const StateSet& source() const noexcept { return source_; }
  [[nodiscard]] const StateSet& target() const noexcept { return target_; }

  friend bool operator==(const AprPredicate&, const AprPredicate&) = default;

 private:
  StateSet source_;
  StateSet target_;
  bool bottom_ = false;
};

struct AprPredicateHash {
  std::size_t operator()(const AprPredicate& p) const noexcept {
    StateSetHash h;
    return h(p.source()) * 31 + h(p.target()) + (p.is_bottom() ? 0x5bd1e995 : 0);
  }
};

enum class RuleName { Axiom, Subs, Der, Dis };

inline constexpr std::array<RuleName, 4> kAllRules = {RuleName::Axiom, RuleName::Subs, RuleName::Der,
                                                      RuleName::Dis};

inline std::string_view to_string(RuleName r) noexcept {
  switch (r) {
    case RuleName::Axiom: return "Axiom";
    case RuleName::Subs: return "Subs";
    case RuleName::Der: return "Der";
    case RuleName::Dis: return "Dis";
  }
  return "?";
}

inline std::optional<RuleName> parse_rule_name(std::string_view s) noexcept {
  for (RuleName r : kAllRules) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

/// How Subs and Der partition their premise sets.
///  - eager: Der carves out of D(P) every source of an already-known Der node
///    that fits, keeping the remainder as one premise (reproduces the worked
///    proof shapes, where recurring sets become buds). Subs emits P \ Q.
///  - singleton: Der emits one premise per element of D(P). Subs emits P \ Q.
///  - monolithic: both rules emit exactly one premise (no splitting).
enum class SplitStrategy { Eager, Singleton, Monolithic };

inline std::string_view to_string(SplitStrategy s) noexcept {
  switch (s) {
    case SplitStrategy::Eager: return "eager";
    case SplitStrategy::Singleton: return "singleton";
    case SplitStrategy::Monolithic: return "monolithic";
  }
  return "?";
}

inline std::optional<SplitStrategy> parse_split_strategy(std::string_view s) noexcept {
  for (SplitStrategy v : {SplitStrategy::Eager, SplitStrategy::Singleton, SplitStrategy::Monolithic}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

inline void require_members(const Ars& ars, const AprPredicate& pred) {
  ars.require_members(pred.source());
  ars.require_members(pred.target());
}

/// Side condition of `rule` on ⟨P⟩⇒⟨Q⟩, evaluated directly from its
/// definition (independent of applicable_rule's case split).
inline bool side_condition_holds(const Ars& ars, const AprPredicate& pred, RuleName rule) {
  require_members(ars, pred);
  const StateSet& p = pred.source();
  const StateSet& q = pred.target();
  switch (rule) {
    case RuleName::Axiom:
      return p.empty();
    case RuleName::Subs:
      return intersects(p, q);
    case RuleName::Der:
      return !intersects(p, q) && is_runnable(ars, p);
    case RuleName::Dis:
      return !intersects(p, q) && !p.empty() && intersects(p, ars.normal_forms());
  }
  return false;
}

/// The unique rule of Axiom/Subs/Der/Dis whose side condition holds.
inline RuleName applicable_rule(const Ars& ars, const AprPredicate& pred) {
  if (pred.is_bottom()) throw PreconditionError("no rule applies to the bottom predicate");
  require_members(ars, pred);
  const StateSet& p = pred.source();
  if (p.empty()) return RuleName::Axiom;
  if (intersects(p, pred.target())) return RuleName::Subs;
  if (!intersects(p, ars.normal_forms())) return RuleName::Der;
  return RuleName::Dis;
}

struct RuleApplication {
  RuleName rule;
  std::vector<AprPredicate> premises;

  friend bool operator==(const RuleApplication&, const RuleApplication&) = default;
};

/// Applies the unique applicable rule and returns its premises.
/// `der_sources` lists the sources of Der nodes known so far (in creation
/// order); only the eager strategy consults it.
inline RuleApplication premises(const Ars& ars, const AprPredicate& pred, SplitStrategy strategy,
                                std::span<const StateSet> der_sources = {}) {
  const RuleName rule = applicable_rule(ars, pred);
  const StateSet& q = pred.target();
  RuleApplication out{rule, {}};
  switch (rule) {
    case RuleName::Axiom:
      break;
    case RuleName::Subs:
      out.premises.emplace_back(difference(pred.source(), q), q);
      break;
    case RuleName::Dis:
      out.premises.push_back(AprPredicate::bottom());
      break;
    case RuleName::Der: {
      StateSet rest = derivative(ars, pred.source());
      if (strategy == SplitStrategy::Singleton) {
        for (ObjectId t : rest) out.premises.emplace_back(StateSet{t}, q);
        break;
      }
      if (strategy == SplitStrategy::Eager) {
        for (const StateSet& known : der_sources) {
          if (!known.empty() && is_subset(known, rest)) {
            out.premises.emplace_back(known, q);
            rest = difference(rest, known);
            if (rest.empty()) break;
          }
        }
      }
      if (!rest.empty()) out.premises.emplace_back(std::move(rest), q);
      break;
    }
  }
  return out;
}

}  // namespace apr
