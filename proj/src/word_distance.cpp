#include "pdaed/word_distance.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace pdaed {

std::uint64_t edit_distance_words(const Word& a, const Word& b) {
  std::vector<std::uint64_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::uint64_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::uint64_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::uint64_t above = row[j];
      row[j] = std::min({above + 1, row[j - 1] + 1, diagonal + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diagonal = above;
    }
  }
  return row[b.size()];
}

namespace {

constexpr std::size_t kUnreached = static_cast<std::size_t>(-1);

// Shortest path lengths from `source` in the two-layer graph where layer 1
// means "some transition read `letter`". With no letter the layers coincide.
std::vector<std::size_t> layered_bfs(const Nfa& nfa, State source, const Letter* letter) {
  const std::size_t n = nfa.num_states();
  std::vector<std::size_t> dist(2 * n, kUnreached);
  std::deque<std::size_t> queue;
  dist[source] = 0;
  queue.push_back(source);
  while (!queue.empty()) {
    const std::size_t node = queue.front();
    queue.pop_front();
    const auto state = static_cast<State>(node % n);
    const std::size_t layer = node / n;
    for (const auto& t : nfa.outgoing(state)) {
      const std::size_t next_layer = (layer == 1 || (letter != nullptr && t.letter == *letter)) ? 1 : 0;
      const std::size_t next = next_layer * n + t.to;
      if (dist[next] == kUnreached) {
        dist[next] = dist[node] + 1;
        queue.push_back(next);
      }
    }
  }
  return dist;
}

std::vector<Distance> letter_matrix(const Nfa& nfa, const Letter* letter) {
  const std::size_t n = nfa.num_states();
  std::vector<Distance> m(n * n, Distance::infinity());
  for (State source = 0; source < n; ++source) {
    const auto dist = layered_bfs(nfa, source, letter);
    for (State target = 0; target < n; ++target) {
      Distance best = Distance::infinity();
      // No match: delete the letter (empty run, same state) or substitute it
      // into a nonempty run and insert the rest.
      if (target == source) best = 1;
      if (dist[target] != kUnreached && dist[target] > 0) best = std::min(best, Distance(dist[target]));
      // Match: the run reads the letter once, every other letter is inserted.
      if (dist[n + target] != kUnreached) best = std::min(best, Distance(dist[n + target] - 1));
      m[target * n + source] = best;
    }
  }
  return m;
}

}  // namespace

EditCostTable::EditCostTable(const Nfa& nfa)
    : n_(nfa.num_states()), initials_(nfa.initials()), finals_(nfa.finals()) {
  insertion_.assign(n_ * n_, Distance::infinity());
  for (State source = 0; source < n_; ++source) {
    const auto dist = layered_bfs(nfa, source, nullptr);
    for (State target = 0; target < n_; ++target) {
      if (dist[target] != kUnreached) insertion_[target * n_ + source] = dist[target];
    }
  }
  for (Letter a : nfa.alphabet()) by_letter_.emplace(a, letter_matrix(nfa, &a));
  foreign_ = letter_matrix(nfa, nullptr);
}

const std::vector<Distance>& EditCostTable::matrix(Letter a) const {
  auto it = by_letter_.find(a);
  return it == by_letter_.end() ? foreign_ : it->second;
}

EditCostTable build_edit_cost_table(const Nfa& nfa) { return EditCostTable(nfa); }

DistanceVector initial_distances(const EditCostTable& table) {
  const std::size_t n = table.num_states();
  DistanceVector d(n, Distance::infinity());
  for (State s = 0; s < n; ++s) {
    for (State i : table.initials()) d[s] = std::min(d[s], table.insertion(s, i));
  }
  return d;
}

DistanceVector distance_step(const DistanceVector& current, Letter a, const EditCostTable& table) {
  const std::size_t n = table.num_states();
  const auto& m = table.matrix(a);
  DistanceVector next(n, Distance::infinity());
  for (State s = 0; s < n; ++s) {
    for (State prev = 0; prev < n; ++prev) next[s] = std::min(next[s], current[prev] + m[s * n + prev]);
  }
  return next;
}

DistanceVector distances_after(const Word& word, const EditCostTable& table) {
  DistanceVector d = initial_distances(table);
  for (Letter a : word) d = distance_step(d, a, table);
  return d;
}

Distance word_to_nfa_distance(const Word& word, const EditCostTable& table) {
  const DistanceVector d = distances_after(word, table);
  Distance best = Distance::infinity();
  for (State f : table.finals()) best = std::min(best, d[f]);
  return best;
}

Distance word_to_nfa_distance(const Word& word, const Nfa& nfa) {
  return word_to_nfa_distance(word, build_edit_cost_table(nfa));
}

StateSet reach_set(const Word& u, const StateSet& from, const Nfa& nfa) {
  return forward_closure(nfa, nfa_post(nfa, from, u));
}

bool nested_reach_empty(std::span<const Word> parts, const Nfa& nfa) {
  StateSet current;
  for (State s = 0; s < nfa.num_states(); ++s) current.insert(s);
  for (const Word& u : parts) {
    if (current.empty()) break;
    current = reach_set(u, current, nfa);
  }
  return current.empty();
}

}  // namespace pdaed
