#pragma once

#include <cstddef>
#include <vector>

#include "ggt/words.hpp"

namespace ggt {

struct Rule {
  Word lhs;
  Word rhs;
  friend bool operator==(const Rule&, const Rule&) = default;
};

// Shortlex rewriting system over the symmetrized alphabet. Rules are always
// oriented so the left side is shortlex-greater, which makes every rule
// length-reducing or length-preserving-and-lex-reducing.
class RewritingSystem {
 public:
  explicit RewritingSystem(unsigned rank) : rank_(rank) {}

  unsigned rank() const { return rank_; }
  const std::vector<Rule>& rules() const { return rules_; }
  bool confluent() const { return confluent_; }

  // Adds an oriented rule; rejects orientations that violate shortlex.
  void add_rule(Word lhs, Word rhs);
  void mark_confluent(bool c) { confluent_ = c; }

  // Leftmost rewriting to a fixpoint. For a confluent system this is the
  // unique (shortlex-least, hence geodesic) normal form.
  Word rewrite(const Word& w) const;

  bool reducible(const Word& w) const;

  // Checks that every critical pair resolves to a common normal form.
  bool locally_confluent() const;

 private:
  unsigned rank_;
  std::vector<Rule> rules_;
  std::size_t max_lhs_{0};
  bool confluent_{false};

  friend RewritingSystem complete_presentation(unsigned rank, const std::vector<Word>& relators, unsigned cap);
};

// Free-reduction rules xX -> e, Xx -> e for every generator.
std::vector<Rule> free_group_rules(unsigned rank);

// Knuth-Bendix completion under shortlex, seeded with the free-reduction
// rules plus one equation per relator. Throws CompletionExceededCap after
// `cap` rule additions; on success the returned system is certified locally
// confluent (so rewriting computes shortlex normal forms of the quotient).
RewritingSystem complete_presentation(unsigned rank, const std::vector<Word>& relators, unsigned cap);

}  // namespace ggt
