#include "ggt/rewriting.hpp"

#include <algorithm>
#include <deque>

#include "ggt/errors.hpp"

namespace ggt {

namespace {

bool is_factor_at(const std::vector<Letter>& hay, std::size_t pos, const Word& needle) {
  if (pos + needle.size() > hay.size()) return false;
  for (std::size_t i = 0; i < needle.size(); ++i) {
    if (hay[pos + i] != needle[i]) return false;
  }
  return true;
}

Word splice(const Word& w, std::size_t pos, std::size_t len, const Word& repl) {
  std::vector<Letter> out;
  out.reserve(w.size() - len + repl.size());
  out.insert(out.end(), w.letters().begin(), w.letters().begin() + static_cast<long>(pos));
  out.insert(out.end(), repl.letters().begin(), repl.letters().end());
  out.insert(out.end(), w.letters().begin() + static_cast<long>(pos + len), w.letters().end());
  return Word(std::move(out));
}

}  // namespace

void RewritingSystem::add_rule(Word lhs, Word rhs) {
  if (!shortlex_less(rhs, lhs)) fail(ErrorCode::validation, "rule not shortlex-decreasing");
  max_lhs_ = std::max(max_lhs_, lhs.size());
  rules_.push_back(Rule{std::move(lhs), std::move(rhs)});
  confluent_ = false;
}

Word RewritingSystem::rewrite(const Word& w) const {
  Word cur = w;
  bool changed = true;
  while (changed) {
    changed = false;
    const auto& ls = cur.letters();
    for (std::size_t pos = 0; pos < ls.size() && !changed; ++pos) {
      for (const Rule& r : rules_) {
        if (is_factor_at(ls, pos, r.lhs)) {
          cur = splice(cur, pos, r.lhs.size(), r.rhs);
          changed = true;
          break;
        }
      }
    }
  }
  return cur;
}

bool RewritingSystem::reducible(const Word& w) const {
  const auto& ls = w.letters();
  for (std::size_t pos = 0; pos < ls.size(); ++pos) {
    for (const Rule& r : rules_) {
      if (is_factor_at(ls, pos, r.lhs)) return true;
    }
  }
  return false;
}

std::vector<Rule> free_group_rules(unsigned rank) {
  std::vector<Rule> rules;
  for (unsigned i = 0; i < rank; ++i) {
    Letter x = letter_code(Gen{i, false});
    Letter ix = inverse_letter(x);
    rules.push_back(Rule{Word({x, ix}), Word()});
    rules.push_back(Rule{Word({ix, x}), Word()});
  }
  return rules;
}

namespace {

// Critical pairs of (l1->r1) against (l2->r2): l2 occurring inside l1, and
// proper suffix/prefix overlaps.
void collect_critical_pairs(const Rule& a, const Rule& b, bool same_rule,
                            std::vector<std::pair<Word, Word>>& out) {
  const Word& l1 = a.lhs;
  const Word& l2 = b.lhs;
  // Inclusion: l2 inside l1 (skip the trivial self-overlap).
  if (l2.size() <= l1.size()) {
    for (std::size_t p = 0; p + l2.size() <= l1.size(); ++p) {
      if (same_rule && p == 0 && l2.size() == l1.size()) continue;
      if (is_factor_at(l1.letters(), p, l2)) {
        out.emplace_back(a.rhs, splice(l1, p, l2.size(), b.rhs));
      }
    }
  }
  // Overlap: proper suffix of l1 equals proper prefix of l2.
  for (std::size_t k = 1; k < l1.size() && k < l2.size(); ++k) {
    bool match = true;
    for (std::size_t i = 0; i < k; ++i) {
      if (l1[l1.size() - k + i] != l2[i]) {
        match = false;
        break;
      }
    }
    if (!match) continue;
    // Superposition word: l1 + l2[k..).
    std::vector<Letter> left(a.rhs.letters());
    left.insert(left.end(), l2.letters().begin() + static_cast<long>(k), l2.letters().end());
    std::vector<Letter> right(l1.letters().begin(), l1.letters().end() - static_cast<long>(k));
    right.insert(right.end(), b.rhs.letters().begin(), b.rhs.letters().end());
    out.emplace_back(Word(std::move(left)), Word(std::move(right)));
  }
}

}  // namespace

bool RewritingSystem::locally_confluent() const {
  std::vector<std::pair<Word, Word>> pairs;
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    for (std::size_t j = 0; j < rules_.size(); ++j) {
      collect_critical_pairs(rules_[i], rules_[j], i == j, pairs);
    }
  }
  for (const auto& [u, v] : pairs) {
    if (!(rewrite(u) == rewrite(v))) return false;
  }
  return true;
}

RewritingSystem complete_presentation(unsigned rank, const std::vector<Word>& relators, unsigned cap) {
  if (cap == 0) fail(ErrorCode::usage, "completion cap must be positive");
  RewritingSystem sys(rank);
  for (Rule& r : free_group_rules(rank)) sys.add_rule(std::move(r.lhs), std::move(r.rhs));

  std::deque<std::pair<Word, Word>> equations;
  for (const Word& rel : relators) {
    Word r = free_reduce(rel);
    if (!r.empty()) equations.emplace_back(r, Word());
  }

  unsigned additions = 0;
  while (!equations.empty()) {
    auto [u, v] = equations.front();
    equations.pop_front();
    Word nu = sys.rewrite(u);
    Word nv = sys.rewrite(v);
    if (nu == nv) continue;
    if (shortlex_less(nu, nv)) std::swap(nu, nv);

    if (++additions > cap) {
      fail(ErrorCode::completion_exceeded_cap,
           "completion exceeded cap of " + std::to_string(cap) + " rule additions");
    }
    sys.add_rule(nu, nv);
    const Rule fresh = sys.rules_.back();

    // Retire rules whose left side the fresh rule now reduces, and keep
    // right sides normalized.
    for (std::size_t i = 0; i + 1 < sys.rules_.size();) {
      Rule& r = sys.rules_[i];
      bool lhs_hit = false;
      for (std::size_t p = 0; p + fresh.lhs.size() <= r.lhs.size() && !lhs_hit; ++p) {
        lhs_hit = is_factor_at(r.lhs.letters(), p, fresh.lhs);
      }
      if (lhs_hit) {
        equations.emplace_back(r.lhs, r.rhs);
        sys.rules_.erase(sys.rules_.begin() + static_cast<long>(i));
      } else {
        r.rhs = sys.rewrite(r.rhs);
        ++i;
      }
    }

    std::vector<std::pair<Word, Word>> pairs;
    for (std::size_t i = 0; i < sys.rules_.size(); ++i) {
      const Rule& last = sys.rules_.back();
      collect_critical_pairs(sys.rules_[i], last, &sys.rules_[i] == &last, pairs);
      if (&sys.rules_[i] != &last) collect_critical_pairs(last, sys.rules_[i], false, pairs);
    }
    for (auto& p : pairs) equations.push_back(std::move(p));
  }

  if (!sys.locally_confluent()) {
    fail(ErrorCode::validation, "completion terminated on a non-confluent system");
  }
  sys.mark_confluent(true);
  return sys;
}

}  // namespace ggt
