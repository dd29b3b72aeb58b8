#include "easee/action_algebra.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_set>

#include "easee/error.hpp"

namespace easee {

namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

// A directed rewrite lhs -> rhs; each pair contributes both orientations.
struct Rule {
  std::string lhs;
  std::string rhs;
};

std::vector<Rule> rules_of(const EquivalenceSet& omega) {
  std::vector<Rule> rules;
  rules.reserve(2 * omega.size());
  for (const auto& [v, w] : omega.pairs()) {
    rules.push_back({v.bytes(), w.bytes()});
    rules.push_back({w.bytes(), v.bytes()});
  }
  return rules;
}

template <typename Emit>
void for_each_rewrite(const std::string& s, const std::vector<Rule>& rules, std::size_t max_len,
                      Emit&& emit) {
  for (const auto& rule : rules) {
    if (rule.lhs.size() > s.size()) continue;
    if (s.size() - rule.lhs.size() + rule.rhs.size() > max_len) continue;
    for (std::size_t i = 0; i + rule.lhs.size() <= s.size(); ++i) {
      if (s.compare(i, rule.lhs.size(), rule.lhs) != 0) continue;
      std::string out;
      out.reserve(s.size() - rule.lhs.size() + rule.rhs.size());
      out.append(s, 0, i);
      out.append(rule.rhs);
      out.append(s, i + rule.lhs.size(), std::string::npos);
      emit(std::move(out));
    }
  }
}

}  // namespace

ActionSet::ActionSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw ValidationError("action set must contain at least one action");
  if (names_.size() > kMaxActions) throw ValidationError("too many actions (max 256)");
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw ValidationError("action names must be non-empty");
    if (n == "-" || n == "~" || n.find('#') != std::string::npos)
      throw ValidationError("reserved action name '" + n + "'");
    if (!seen.insert(n).second) throw ValidationError("duplicate action name '" + n + "'");
  }
}

std::optional<Action> ActionSet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<Action>(i);
  return std::nullopt;
}

Action ActionSet::index_of(std::string_view name) const {
  if (auto a = find(name)) return *a;
  throw ValidationError("unknown action '" + std::string(name) + "'");
}

ActionSequence::ActionSequence(std::initializer_list<Action> items) {
  for (Action a : items) push_back(a);
}

ActionSequence::ActionSequence(const std::vector<Action>& items) {
  for (Action a : items) push_back(a);
}

ActionSequence ActionSequence::from_bytes(std::string bytes) {
  ActionSequence s;
  s.items_ = std::move(bytes);
  return s;
}

ActionSequence ActionSequence::with(Action a) const {
  ActionSequence out = *this;
  out.push_back(a);
  return out;
}

ActionSequence ActionSequence::substr(std::size_t pos, std::size_t len) const {
  return from_bytes(items_.substr(pos, len));
}

bool ActionSequence::starts_with(const ActionSequence& prefix) const {
  return items_.size() >= prefix.items_.size() &&
         items_.compare(0, prefix.items_.size(), prefix.items_) == 0;
}

std::vector<Action> ActionSequence::to_vector() const {
  std::vector<Action> out;
  out.reserve(items_.size());
  for (char c : items_) out.push_back(static_cast<Action>(c));
  return out;
}

ActionSequence concat(const ActionSequence& a, const ActionSequence& b) {
  return ActionSequence::from_bytes(a.items_ + b.items_);
}

bool shortlex_less(const ActionSequence& a, const ActionSequence& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::string to_string(const ActionSequence& s, const ActionSet& actions) {
  if (s.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ' ';
    out += actions.name(s[i]);
  }
  return out;
}

ActionSequence parse_sequence(std::string_view text, const ActionSet& actions) {
  const auto tokens = split_ws(trim(text));
  if (tokens.empty()) throw ValidationError("empty sequence; write '-' for the empty sequence");
  if (tokens.size() == 1 && tokens[0] == "-") return {};
  ActionSequence s;
  for (auto tok : tokens) {
    if (tok == "-") throw ValidationError("'-' must appear alone");
    s.push_back(actions.index_of(tok));
  }
  return s;
}

EquivalenceSet::EquivalenceSet(const std::vector<SequencePair>& pairs, std::string source_text)
    : source_text_(std::move(source_text)) {
  for (const auto& [v, w] : pairs) add(v, w);
}

bool EquivalenceSet::add(ActionSequence v, ActionSequence w) {
  if (v == w) throw ValidationError("equivalence pair has identical sides");
  if (shortlex_less(w, v)) std::swap(v, w);
  for (const auto& p : pairs_)
    if (p.first == v && p.second == w) return false;
  pairs_.emplace_back(std::move(v), std::move(w));
  return true;
}

std::size_t EquivalenceSet::longest_side() const {
  std::size_t n = 0;
  for (const auto& [v, w] : pairs_) n = std::max({n, v.size(), w.size()});
  return n;
}

Prior parse_prior(std::string_view text) {
  std::optional<ActionSet> actions;
  std::vector<std::pair<std::size_t, std::string_view>> equivs;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError(line_no, "expected 'actions:' or 'equiv:'");
    const auto key = trim(line.substr(0, colon));
    const auto body = trim(line.substr(colon + 1));
    if (key == "actions") {
      if (actions) throw ParseError(line_no, "duplicate 'actions:' declaration");
      std::vector<std::string> names;
      for (auto tok : split_ws(body)) names.emplace_back(tok);
      try {
        actions.emplace(std::move(names));
      } catch (const ValidationError& e) {
        throw ParseError(line_no, e.what());
      }
    } else if (key == "equiv") {
      equivs.emplace_back(line_no, body);
    } else {
      throw ParseError(line_no, "unknown declaration '" + std::string(key) + "'");
    }
  }
  if (!actions) throw ParseError(line_no, "missing 'actions:' declaration");

  EquivalenceSet omega;
  for (const auto& [n, body] : equivs) {
    const auto tilde = body.find('~');
    if (tilde == std::string_view::npos || body.find('~', tilde + 1) != std::string_view::npos)
      throw ParseError(n, "expected '<seq> ~ <seq>'");
    try {
      omega.add(parse_sequence(body.substr(0, tilde), *actions),
                parse_sequence(body.substr(tilde + 1), *actions));
    } catch (const ValidationError& e) {
      throw ParseError(n, e.what());
    }
  }
  omega.set_source_text(std::string(text));
  return {std::move(*actions), std::move(omega)};
}

std::string to_dsl(const ActionSet& actions, const EquivalenceSet& omega) {
  std::ostringstream out;
  out << "actions:";
  for (const auto& n : actions.names()) out << ' ' << n;
  out << '\n';
  for (const auto& [v, w] : omega.pairs())
    out << "equiv: " << to_string(w, actions) << " ~ " << to_string(v, actions) << '\n';
  return out.str();
}

std::set<ActionSequence> one_step_rewrites(const ActionSequence& s, const EquivalenceSet& omega,
                                           std::optional<std::size_t> max_len) {
  std::set<ActionSequence> out{s};
  for_each_rewrite(s.bytes(), rules_of(omega), max_len.value_or(s.size()),
                   [&](std::string w) { out.insert(ActionSequence::from_bytes(std::move(w))); });
  return out;
}

ClosureBudget default_budget(std::size_t query_len, const EquivalenceSet& omega) {
  return {query_len + omega.longest_side(), ClosureBudget{}.max_nodes};
}

bool visit_closure(const ActionSequence& s, const EquivalenceSet& omega, const ClosureBudget& budget,
                   const std::function<bool(const ActionSequence&)>& visitor) {
  if (budget.max_len < s.size())
    throw ValidationError("closure budget max_len is shorter than the query");
  if (budget.max_nodes < 1) throw ValidationError("closure budget max_nodes must be >= 1");

  const auto rules = rules_of(omega);
  std::unordered_set<std::string> seen{s.bytes()};
  std::deque<std::string> frontier{s.bytes()};
  while (!frontier.empty()) {
    std::string cur = std::move(frontier.front());
    frontier.pop_front();
    if (visitor(ActionSequence::from_bytes(cur))) return true;
    for_each_rewrite(cur, rules, budget.max_len, [&](std::string w) {
      if (seen.insert(w).second) {
        if (seen.size() > budget.max_nodes)
          throw BudgetExceeded("closure exceeded " + std::to_string(budget.max_nodes) + " sequences");
        frontier.push_back(std::move(w));
      }
    });
  }
  return false;
}

std::set<ActionSequence> closure(const ActionSequence& s, const EquivalenceSet& omega,
                                 const ClosureBudget& budget) {
  std::set<ActionSequence> out;
  visit_closure(s, omega, budget, [&](const ActionSequence& w) {
    out.insert(w);
    return false;
  });
  return out;
}

bool equivalent(const ActionSequence& s, const ActionSequence& t, const EquivalenceSet& omega,
                const ClosureBudget& budget) {
  if (s == t) return true;
  // Search from the shorter side so the length bound covers both.
  const bool swap = t.size() < s.size();
  const auto& from = swap ? t : s;
  const auto& to = swap ? s : t;
  return visit_closure(from, omega, budget, [&](const ActionSequence& w) { return w == to; });
}

bool equivalent(const ActionSequence& s, const ActionSequence& t, const EquivalenceSet& omega) {
  return equivalent(s, t, omega, default_budget(std::max(s.size(), t.size()), omega));
}

ActionSequence canonical_representative(const ActionSequence& s, const EquivalenceSet& omega,
                                        const ClosureBudget& budget) {
  ActionSequence best = s;
  visit_closure(s, omega, budget, [&](const ActionSequence& w) {
    if (shortlex_less(w, best)) best = w;
    return false;
  });
  return best;
}

}  // namespace easee
