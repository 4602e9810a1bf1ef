#pragma once

#include <vector>

#include "ggt/exact.hpp"
#include "ggt/rewriting.hpp"
#include "ggt/words.hpp"

namespace ggt {

// Counts irreducible words of a confluent shortlex system by length. The
// irreducible words are the words avoiding every rule left side as a factor,
// a regular language; counting walks in its Aho-Corasick automaton gives the
// exact sphere cardinalities of the group at any radius.
class NormalFormCounter {
 public:
  NormalFormCounter(unsigned rank, const std::vector<Rule>& rules);

  // spheres()[k] = number of normal forms of length exactly k, 0 <= k <= R.
  std::vector<BigInt> spheres(unsigned radius) const;

 private:
  unsigned alphabet_;
  std::vector<std::vector<int>> next_;  // state x letter -> state
  std::vector<bool> dead_;
};

}  // namespace ggt
