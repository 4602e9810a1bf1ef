#include <doctest.h>
#include <omp.h>

#include "ggt/errors.hpp"
#include "ggt/models.hpp"
#include "ggt/presentation.hpp"
#include "ggt/rewriting.hpp"
#include "ggt/words.hpp"
#include "oracles.hpp"

using namespace ggt;

namespace {

Word W(const std::string& s, unsigned rank = 2) { return Word::parse(s, rank); }

std::vector<Word> all_reduced_words(unsigned rank, unsigned max_len) {
  std::vector<Word> out{Word()};
  std::size_t level_begin = 0;
  for (unsigned len = 1; len <= max_len; ++len) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (Letter l = 0; l < 2 * rank; ++l) {
        if (!out[i].empty() && out[i].letters().back() == inverse_letter(l)) continue;
        Word child = out[i];
        child.push(l);
        out.push_back(std::move(child));
      }
    }
    level_begin = level_end;
  }
  return out;
}

}  // namespace

TEST_CASE("free reduction") {
  CHECK(free_reduce(W("aAb")) == W("b"));
  CHECK(free_reduce(W("")) == W(""));
  CHECK(free_reduce(W("abBa")) == W("aa"));
  CHECK(free_reduce(free_reduce(W("abBa"))) == free_reduce(W("abBa")));
  CHECK(free_reduce(W("aA")) == W(""));
}

TEST_CASE("inverse word") {
  CHECK(inverse_word(W("ab")) == W("BA"));
  CHECK(inverse_word(W("")) == W(""));
  CHECK(inverse_word(inverse_word(W("aBa"))) == W("aBa"));
  for (const Word& w : all_reduced_words(2, 4)) {
    CHECK(inverse_word(inverse_word(w)) == w);
  }
}

TEST_CASE("multiplication per model") {
  FreeModel f2(2);
  CHECK(f2.mul(W("a"), W("A")) == W(""));

  FreeAbelianModel z2(2);
  Word prod = z2.mul(W("ab"), W("a"));
  CHECK(prod == W("aab"));
  auto [x, y] = oracles::abelian_exponents(prod);
  CHECK(x == 2);
  CHECK(y == 1);

  TorsionFreeProductModel t2(2);
  CHECK(t2.mul(W("a"), W("a")) == W(""));
  CHECK(oracles::torsion_rewrite("aa") == "");
}

TEST_CASE("geodesic lengths") {
  FreeModel f2(2);
  CHECK(f2.geodesic_length(W("aBa")) == 3);

  FreeAbelianModel z2(2);
  auto [x, y] = oracles::abelian_exponents(W("abA"));
  CHECK(z2.geodesic_length(W("abA")) == static_cast<std::uint64_t>(std::llabs(x) + std::llabs(y)));
  CHECK(z2.geodesic_length(W("abA")) == 1);

  TorsionFreeProductModel t2(2);
  CHECK(oracles::torsion_rewrite("aab") == "b");
  CHECK(t2.geodesic_length(W("aab")) == 1);
}

TEST_CASE("cyclic reduction with reconstruction identity") {
  auto [core1, conj1] = cyclic_reduce(W("abA"));
  CHECK(core1 == W("b"));
  CHECK(conj1 == W("a"));

  auto [core2, conj2] = cyclic_reduce(W("ab"));
  CHECK(core2 == W("ab"));
  CHECK(conj2 == W(""));

  // Oracle: reconstruction identity and cyclically reduced core.
  for (const Word& w : all_reduced_words(2, 6)) {
    auto [core, conj] = cyclic_reduce(w);
    Word rebuilt = reduced_concat(reduced_concat(conj, core), inverse_word(conj));
    CHECK(rebuilt == w);
    if (core.size() >= 2) {
      CHECK(core.letters().front() != inverse_letter(core.letters().back()));
    }
  }
  auto [core3, conj3] = cyclic_reduce(W("BabAb"));
  CHECK(core3 == W("b"));
  CHECK(reduced_concat(reduced_concat(conj3, core3), inverse_word(conj3)) == W("BabAb"));
}

TEST_CASE("word powers") {
  CHECK(word_pow(W("ab"), 3) == W("ababab"));
  CHECK(word_pow(W("abA"), 2) == W("abbA"));
  CHECK(word_pow(W("ab"), -2) == W("BABA"));
  CHECK(word_pow(W("ab"), 0) == W(""));
}

TEST_CASE("completion: torsion relator over rank 1") {
  Word rel = Word::parse("aa", 1);
  RewritingSystem sys = complete_presentation(1, {rel}, 100);
  REQUIRE(sys.rules().size() == 2);
  CHECK(sys.rules()[0].lhs == Word::parse("aa", 1));
  CHECK(sys.rules()[0].rhs == Word::parse("", 1));
  CHECK(sys.rules()[1].lhs == Word::parse("A", 1));
  CHECK(sys.rules()[1].rhs == Word::parse("a", 1));
  CHECK(sys.confluent());
}

TEST_CASE("completion: free group means only cancellation rules") {
  RewritingSystem sys = complete_presentation(2, {}, 100);
  CHECK(sys.rules().size() == 4);
  FreeModel f2(2);
  for (const Word& w : all_reduced_words(2, 4)) {
    Word padded = concat(W("aA"), w);
    CHECK(sys.rewrite(padded) == f2.normal_form(padded));
  }
}

TEST_CASE("completion cap is enforced") {
  CHECK_THROWS_AS(complete_presentation(2, {W("abAB")}, 1), Error);
  try {
    complete_presentation(2, {W("abAB")}, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::completion_exceeded_cap);
  }
}

namespace {

// Partition-and-length agreement between a rewriting quotient and a builtin
// model, exhaustively over all words up to max_len.
void check_model_agreement(const GroupModel& rw, const GroupModel& builtin, unsigned max_len) {
  std::map<std::string, std::string> rw_to_builtin;
  std::map<std::string, int> builtin_seen;
  for (const Word& w : all_reduced_words(2, max_len)) {
    CHECK(rw.geodesic_length(w) == builtin.geodesic_length(w));
    std::string key_rw = rw.normal_form(w).str();
    std::string key_b = builtin.normal_form(w).str();
    auto [it, inserted] = rw_to_builtin.emplace(key_rw, key_b);
    if (!inserted) CHECK(it->second == key_b);
    builtin_seen[key_b] = 1;
  }
  CHECK(rw_to_builtin.size() == builtin_seen.size());
}

}  // namespace

TEST_CASE("rewriting quotient agrees with builtin torsion model up to length 6") {
  RewritingModel rw("z2*z", complete_presentation(2, {W("aa")}, 200));
  TorsionFreeProductModel builtin(2);
  check_model_agreement(rw, builtin, 6);
}

TEST_CASE("rewriting quotient agrees with builtin abelian model up to length 6") {
  RewritingModel rw("z^2", complete_presentation(2, {W("abAB")}, 200));
  FreeAbelianModel builtin(2);
  check_model_agreement(rw, builtin, 6);
}

TEST_CASE("normal form idempotent and compatible with mul, all models") {
  FreeModel f2(2);
  FreeAbelianModel z2(2);
  TorsionFreeProductModel t2(2);
  auto words = all_reduced_words(2, 4);
  for (const GroupModel* m : {static_cast<const GroupModel*>(&f2), static_cast<const GroupModel*>(&z2),
                              static_cast<const GroupModel*>(&t2)}) {
    for (const Word& u : words) {
      Word nf = m->normal_form(u);
      REQUIRE(m->normal_form(nf) == nf);
    }
    for (std::size_t i = 0; i < words.size(); i += 7) {
      for (std::size_t j = 0; j < words.size(); j += 5) {
        const Word& u = words[i];
        const Word& v = words[j];
        REQUIRE(m->normal_form(m->mul(u, v)) == m->mul(m->normal_form(u), m->normal_form(v)));
      }
    }
  }
}

TEST_CASE("seminorm properties exhaustive to length 8") {
  FreeModel f2(2);
  FreeAbelianModel z2(2);
  TorsionFreeProductModel t2(2);
  auto words = all_reduced_words(2, 8);

  for (const GroupModel* m : {static_cast<const GroupModel*>(&f2), static_cast<const GroupModel*>(&z2),
                              static_cast<const GroupModel*>(&t2)}) {
    // The norm is a function of the element, so distinct normal forms cover
    // all word pairs; inverse symmetry and the zero law stay per-word.
    std::map<std::string, Word> classes;
    for (const Word& w : words) {
      std::uint64_t n = m->geodesic_length(w);
      REQUIRE(m->geodesic_length(inverse_word(w)) == n);
      REQUIRE((n == 0) == m->is_identity(w));
      Word nf = m->normal_form(w);
      REQUIRE(nf.size() == n);
      classes.emplace(nf.str(), nf);
    }
    std::vector<Word> elems;
    elems.reserve(classes.size());
    for (auto& [k, w] : classes) elems.push_back(w);
    std::uint64_t violations = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : violations)
    for (long long i = 0; i < static_cast<long long>(elems.size()); ++i) {
      const Word& u = elems[static_cast<std::size_t>(i)];
      std::uint64_t lu = u.size();
      for (const Word& v : elems) {
        if (m->geodesic_length(concat(u, v)) > lu + v.size()) ++violations;
      }
    }
    REQUIRE(violations == 0);
  }
}

TEST_CASE("free model length equals reduced length to 8") {
  FreeModel f2(2);
  for (const Word& w : all_reduced_words(2, 8)) {
    REQUIRE(f2.geodesic_length(w) == w.size());
  }
}

TEST_CASE("presentation parsing") {
  Presentation p = parse_presentation_text("generators: a b\nrelators: aa abAB\n");
  CHECK(p.rank() == 2);
  REQUIRE(p.relators.size() == 2);
  CHECK(p.relators[0] == W("aa"));
  CHECK(p.relators[1] == W("abAB"));
  CHECK(p.print_word(p.parse_word("aB")) == "aB");

  Presentation free_p = parse_presentation_text("generators: a b\nrelators:\n");
  CHECK(free_p.relators.empty());

  CHECK_THROWS_AS(parse_presentation_text("generators: a b\nrelators: ax\n"), Error);
  CHECK_THROWS_AS(parse_presentation_text("relators: aa\n"), Error);
}

TEST_CASE("builtin model registry") {
  CHECK(make_builtin_model("free:2")->kind() == ModelKind::free);
  CHECK(make_builtin_model("abelian:1")->rank() == 1);
  CHECK(make_builtin_model("torsion:2")->kind() == ModelKind::free_product_with_torsion);
  CHECK_THROWS_AS(make_builtin_model("nope:3"), Error);
}
