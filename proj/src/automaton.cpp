#include "ggt/automaton.hpp"

#include <queue>

namespace ggt {

NormalFormCounter::NormalFormCounter(unsigned rank, const std::vector<Rule>& rules) : alphabet_(2 * rank) {
  // Trie over the forbidden factors (rule left sides).
  std::vector<std::vector<int>> child(1, std::vector<int>(alphabet_, -1));
  std::vector<bool> terminal(1, false);
  for (const Rule& r : rules) {
    int s = 0;
    for (Letter l : r.lhs.letters()) {
      if (child[s][l] == -1) {
        child[s][l] = static_cast<int>(child.size());
        child.emplace_back(alphabet_, -1);
        terminal.push_back(false);
      }
      s = child[s][l];
    }
    terminal[s] = true;
  }

  // Failure links; a state is dead once any forbidden factor has occurred.
  std::size_t n = child.size();
  std::vector<int> fail(n, 0);
  next_.assign(n, std::vector<int>(alphabet_, 0));
  dead_ = terminal;
  std::queue<int> bfs;
  for (unsigned c = 0; c < alphabet_; ++c) {
    int v = child[0][c];
    if (v == -1) {
      next_[0][c] = 0;
    } else {
      next_[0][c] = v;
      fail[v] = 0;
      bfs.push(v);
    }
  }
  while (!bfs.empty()) {
    int s = bfs.front();
    bfs.pop();
    if (dead_[fail[s]]) dead_[s] = true;
    for (unsigned c = 0; c < alphabet_; ++c) {
      int v = child[s][c];
      if (v == -1) {
        next_[s][c] = next_[fail[s]][c];
      } else {
        next_[s][c] = v;
        fail[v] = next_[fail[s]][c];
        bfs.push(v);
      }
    }
  }
}

std::vector<BigInt> NormalFormCounter::spheres(unsigned radius) const {
  std::vector<BigInt> out;
  out.reserve(radius + 1);
  out.push_back(1);
  std::vector<BigInt> cur(next_.size());
  cur[0] = 1;
  for (unsigned k = 1; k <= radius; ++k) {
    std::vector<BigInt> nxt(next_.size());
    for (std::size_t s = 0; s < next_.size(); ++s) {
      if (dead_[s] || cur[s] == 0) continue;
      for (unsigned c = 0; c < alphabet_; ++c) {
        int t = next_[s][c];
        if (!dead_[t]) nxt[t] += cur[s];
      }
    }
    BigInt total = 0;
    for (const BigInt& v : nxt) total += v;
    out.push_back(total);
    cur = std::move(nxt);
  }
  return out;
}

}  // namespace ggt
