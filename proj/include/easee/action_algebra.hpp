#pragma once

// Actions, action sequences and equivalence sets.
//
// A sequence is a string over a finite alphabet of action indices. An
// equivalence set is a list of unordered pairs {v, w} of sequences that are
// known to have the same effect from every state. The relation generated by
// rewriting one window at a time (u.v.u' -> u.w.u') is an equivalence
// relation; it is undecidable in general, so every query that explores it
// takes an explicit length and size budget.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace easee {

using Action = std::uint8_t;
inline constexpr std::size_t kMaxActions = 256;

// Ordered list of distinct, non-empty action names. The position of a name is
// its canonical index.
class ActionSet {
 public:
  ActionSet() = default;
  explicit ActionSet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Action a) const { return names_.at(a); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Action> find(std::string_view name) const;
  Action index_of(std::string_view name) const;  // throws ValidationError

  friend bool operator==(const ActionSet&, const ActionSet&) = default;

 private:
  std::vector<std::string> names_;
};

// Value type for a string of action indices. Storage is a byte string so
// short sequences stay inline and hashing is cheap.
class ActionSequence {
 public:
  ActionSequence() = default;
  ActionSequence(std::initializer_list<Action> items);
  explicit ActionSequence(const std::vector<Action>& items);

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  Action operator[](std::size_t i) const { return static_cast<Action>(items_[i]); }
  Action back() const { return static_cast<Action>(items_.back()); }

  void push_back(Action a) { items_.push_back(static_cast<char>(a)); }
  ActionSequence with(Action a) const;
  ActionSequence substr(std::size_t pos, std::size_t len = std::string::npos) const;
  bool starts_with(const ActionSequence& prefix) const;
  std::vector<Action> to_vector() const;

  const std::string& bytes() const { return items_; }
  // Inverse of bytes(); no validation against an alphabet.
  static ActionSequence from_bytes(std::string bytes);

  // Plain lexicographic order over indices (shorter prefix first).
  friend std::strong_ordering operator<=>(const ActionSequence& a, const ActionSequence& b) {
    return a.items_.compare(b.items_) <=> 0;
  }
  friend bool operator==(const ActionSequence&, const ActionSequence&) = default;

 private:
  friend ActionSequence concat(const ActionSequence&, const ActionSequence&);
  std::string items_;
};

ActionSequence concat(const ActionSequence& a, const ActionSequence& b);

// Length first, then lexicographic. The minimum of a class under this order is
// its canonical representative.
bool shortlex_less(const ActionSequence& a, const ActionSequence& b);

struct ActionSequenceHash {
  std::size_t operator()(const ActionSequence& s) const noexcept {
    return std::hash<std::string>{}(s.bytes());
  }
};

// Renders "a b c" with action names, or "-" for the empty sequence.
std::string to_string(const ActionSequence& s, const ActionSet& actions);
ActionSequence parse_sequence(std::string_view text, const ActionSet& actions);

using SequencePair = std::pair<ActionSequence, ActionSequence>;

// Unordered pairs of distinct sequences, deduplicated. Each pair is stored
// with the shortlex-smaller side first; insertion order is otherwise kept.
class EquivalenceSet {
 public:
  EquivalenceSet() = default;
  explicit EquivalenceSet(const std::vector<SequencePair>& pairs, std::string source_text = {});

  // Returns false if the pair was already present. Throws ValidationError if
  // both sides are identical.
  bool add(ActionSequence v, ActionSequence w);

  const std::vector<SequencePair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  std::size_t longest_side() const;
  const std::string& source_text() const { return source_text_; }
  void set_source_text(std::string text) { source_text_ = std::move(text); }

 private:
  std::vector<SequencePair> pairs_;
  std::string source_text_;
};

// An action alphabet together with an equivalence set over it, as written in
// the text format:
//
//   actions: F L R
//   equiv: R L ~ -      # '-' is the empty sequence
//
struct Prior {
  ActionSet actions;
  EquivalenceSet omega;
};

Prior parse_prior(std::string_view text);
std::string to_dsl(const ActionSet& actions, const EquivalenceSet& omega);

// Every w obtained from s by replacing one occurrence of a side of a pair
// with the other side, keeping only results of length <= max_len (default
// |s|, so an empty side is not inserted everywhere). Always contains s.
std::set<ActionSequence> one_step_rewrites(const ActionSequence& s, const EquivalenceSet& omega,
                                           std::optional<std::size_t> max_len = std::nullopt);

struct ClosureBudget {
  std::size_t max_len = 0;
  std::size_t max_nodes = 100000;
};

// max_len = |s| + longest side of omega.
ClosureBudget default_budget(std::size_t query_len, const EquivalenceSet& omega);

// Breadth-first walk over chained one-step rewrites. Sequences longer than
// max_len are never visited. The visitor returns true to stop early; the
// return value says whether it did. Throws BudgetExceeded once more than
// max_nodes distinct sequences have been generated.
bool visit_closure(const ActionSequence& s, const EquivalenceSet& omega, const ClosureBudget& budget,
                   const std::function<bool(const ActionSequence&)>& visitor);

std::set<ActionSequence> closure(const ActionSequence& s, const EquivalenceSet& omega,
                                 const ClosureBudget& budget);

bool equivalent(const ActionSequence& s, const ActionSequence& t, const EquivalenceSet& omega,
                const ClosureBudget& budget);
bool equivalent(const ActionSequence& s, const ActionSequence& t, const EquivalenceSet& omega);

// Shortlex-minimal member of the (budgeted) closure of s.
ActionSequence canonical_representative(const ActionSequence& s, const EquivalenceSet& omega,
                                        const ClosureBudget& budget);

}  // namespace easee
