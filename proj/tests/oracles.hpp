#pragma once

// Brute-force reference implementations used only by the tests. They share no
// code with the library beyond plain data conversion.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "easee/action_algebra.hpp"

namespace oracle {

using Word = std::vector<int>;
using WordPair = std::pair<Word, Word>;

inline std::vector<WordPair> pairs_of(const easee::EquivalenceSet& omega) {
  std::vector<WordPair> out;
  for (const auto& [v, w] : omega.pairs()) {
    Word a, b;
    for (auto x : v.to_vector()) a.push_back(x);
    for (auto x : w.to_vector()) b.push_back(x);
    out.emplace_back(a, b);
  }
  return out;
}

inline Word word_of(const easee::ActionSequence& s) {
  Word w;
  for (auto x : s.to_vector()) w.push_back(x);
  return w;
}

// Every word over {0..k-1} of length <= max_len, partitioned by the
// equivalence generated by single window replacements that stay inside the
// enumerated set.
class Partition {
 public:
  Partition(int alphabet, const std::vector<WordPair>& pairs, int max_len) {
    words_.push_back({});
    for (std::size_t head = 0; head < words_.size(); ++head) {
      if (static_cast<int>(words_[head].size()) == max_len) continue;
      for (int a = 0; a < alphabet; ++a) {
        Word w = words_[head];
        w.push_back(a);
        words_.push_back(std::move(w));
      }
    }
    for (std::size_t i = 0; i < words_.size(); ++i) index_[words_[i]] = i;
    parent_.resize(words_.size());
    std::iota(parent_.begin(), parent_.end(), 0);

    for (std::size_t i = 0; i < words_.size(); ++i) {
      const Word& s = words_[i];
      for (const auto& [v, w] : pairs) {
        for (const auto* lhs : {&v, &w}) {
          const Word& rhs = (lhs == &v) ? w : v;
          if (lhs->size() > s.size()) continue;
          for (std::size_t p = 0; p + lhs->size() <= s.size(); ++p) {
            if (!std::equal(lhs->begin(), lhs->end(), s.begin() + p)) continue;
            Word t(s.begin(), s.begin() + p);
            t.insert(t.end(), rhs.begin(), rhs.end());
            t.insert(t.end(), s.begin() + p + lhs->size(), s.end());
            auto it = index_.find(t);
            if (it != index_.end()) unite(i, it->second);
          }
        }
      }
    }
  }

  bool same(const Word& a, const Word& b) { return find(index_.at(a)) == find(index_.at(b)); }
  bool contains(const Word& a) const { return index_.count(a) > 0; }

  // Number of classes whose shortest member has length t, for t = 0..d.
  std::vector<std::size_t> layer_counts(int d) {
    std::map<std::size_t, std::size_t> shortest;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      const auto r = find(i);
      auto it = shortest.find(r);
      if (it == shortest.end() || words_[i].size() < it->second) shortest[r] = words_[i].size();
    }
    std::vector<std::size_t> counts(d + 1, 0);
    for (const auto& [r, len] : shortest)
      if (static_cast<int>(len) <= d) ++counts[len];
    return counts;
  }

 private:
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

  std::vector<Word> words_;
  std::map<Word, std::size_t> index_;
  std::vector<std::size_t> parent_;
};

// A layered DAG reduced to plain arrays: node depths and (from, to) edges
// sorted by source.
struct Dag {
  int depth = 0;
  std::vector<int> node_depth;
  std::vector<std::pair<int, int>> edges;
};

// Entropy objective of a per-edge policy, by a forward pass written
// independently of the library. Edges into dead ends must carry zero
// probability for the layer sums to stay at one.
inline double policy_value(const Dag& dag, const std::vector<double>& prob, const std::vector<double>& weights) {
  std::vector<double> mass(dag.node_depth.size(), 0.0);
  mass[0] = 1.0;
  for (std::size_t i = 0; i < dag.edges.size(); ++i) mass[dag.edges[i].second] += mass[dag.edges[i].first] * prob[i];
  double total = 0.0;
  for (std::size_t v = 0; v < mass.size(); ++v)
    if (dag.node_depth[v] > 0 && mass[v] > 0.0) total -= weights[dag.node_depth[v] - 1] * mass[v] * std::log(mass[v]);
  return total;
}

// Maximizes policy_value by block-coordinate search: each node's action
// distribution in turn is chosen by a dense grid over its simplex, then
// refined by successively finer local grids. Sweeps repeat until no block
// improves.
inline double grid_search_optimum(const Dag& dag, const std::vector<double>& weights) {
  const std::size_t n = dag.node_depth.size();
  std::vector<bool> viable(n, false);
  for (std::size_t v = n; v-- > 0;) {
    if (dag.node_depth[v] == dag.depth) viable[v] = true;
    for (const auto& [a, b] : dag.edges)
      if (a == static_cast<int>(v) && viable[b]) viable[v] = true;
  }
  std::vector<std::vector<std::size_t>> blocks(n);
  for (std::size_t i = 0; i < dag.edges.size(); ++i)
    if (viable[dag.edges[i].second]) blocks[dag.edges[i].first].push_back(i);
  std::vector<double> prob(dag.edges.size(), 0.0);
  for (const auto& b : blocks)
    for (auto i : b) prob[i] = 1.0 / static_cast<double>(b.size());

  // Points of the (k-1)-simplex around `center` on a grid of spacing `step`
  // with `radius` cells each way (radius < 0: whole simplex).
  auto search_block = [&](const std::vector<std::size_t>& b, double step, int radius) {
    const std::size_t k = b.size();
    std::vector<double> center(k);
    for (std::size_t j = 0; j < k; ++j) center[j] = prob[b[j]];
    double best_val = policy_value(dag, prob, weights);
    std::vector<double> best = center;
    std::vector<int> off(k - 1, radius < 0 ? 0 : -radius);
    const int lo = radius < 0 ? 0 : -radius;
    const int hi = radius < 0 ? static_cast<int>(std::lround(1.0 / step)) : radius;
    for (;;) {
      std::vector<double> cand(k);
      double rest = 1.0;
      bool ok = true;
      for (std::size_t j = 0; j + 1 < k; ++j) {
        cand[j] = (radius < 0 ? 0.0 : center[j]) + off[j] * step;
        if (cand[j] < 0.0 || cand[j] > 1.0) ok = false;
        rest -= cand[j];
      }
      cand[k - 1] = rest;
      if (ok && rest >= -1e-15) {
        cand[k - 1] = std::max(0.0, rest);
        for (std::size_t j = 0; j < k; ++j) prob[b[j]] = cand[j];
        const double val = policy_value(dag, prob, weights);
        if (val > best_val) {
          best_val = val;
          best = cand;
        }
      }
      std::size_t j = 0;
      while (j + 1 < k && ++off[j] > hi) off[j++] = lo;
      if (j + 1 >= k) break;
    }
    for (std::size_t j = 0; j < k; ++j) prob[b[j]] = best[j];
    return best_val;
  };

  double value = policy_value(dag, prob, weights);
  for (int sweep = 0; sweep < 500; ++sweep) {
    const double before = value;
    for (const auto& b : blocks) {
      if (b.size() < 2) continue;
      const double coarse = b.size() == 2 ? 1.0 / 400 : b.size() == 3 ? 1.0 / 80 : 1.0 / 24;
      if (sweep == 0) search_block(b, coarse, -1);
      for (double step = coarse; step > 1e-10; step *= 0.5) value = search_block(b, step, 2);
    }
    if (value - before < 1e-13) break;
  }
  return value;
}

}  // namespace oracle
