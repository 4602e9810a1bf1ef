#include "ggt/models.hpp"

#include <cstdlib>

#include "ggt/errors.hpp"

namespace ggt {

namespace {

constexpr unsigned kCompletionCap = 400;

RewritingSystem complete_for(unsigned rank, const std::vector<Word>& relators) {
  return complete_presentation(rank, relators, kCompletionCap);
}

}  // namespace

FreeModel::FreeModel(unsigned rank) : rank_(rank), rules_(complete_for(rank, {})) {
  if (rank == 0 || rank > 26) fail(ErrorCode::usage, "free model rank must be in 1..26");
}

FreeAbelianModel::FreeAbelianModel(unsigned rank) : rank_(rank), rules_(1) {
  if (rank == 0 || rank > 26) fail(ErrorCode::usage, "abelian model rank must be in 1..26");
  std::vector<Word> relators;
  for (unsigned i = 0; i < rank; ++i) {
    for (unsigned j = i + 1; j < rank; ++j) {
      Letter x = letter_code(Gen{i, false});
      Letter y = letter_code(Gen{j, false});
      relators.push_back(Word({x, y, inverse_letter(x), inverse_letter(y)}));
    }
  }
  rules_ = complete_for(rank, relators);
}

std::vector<std::int64_t> FreeAbelianModel::exponents(const Word& w) const {
  std::vector<std::int64_t> e(rank_, 0);
  for (Letter l : w.letters()) {
    Gen g = letter_gen(l);
    e[g.index] += g.inverse ? -1 : 1;
  }
  return e;
}

Word FreeAbelianModel::normal_form(const Word& w) const {
  auto e = exponents(w);
  std::vector<Letter> out;
  for (unsigned i = 0; i < rank_; ++i) {
    Letter l = letter_code(Gen{i, e[i] < 0});
    for (std::int64_t k = 0; k < std::llabs(e[i]); ++k) out.push_back(l);
  }
  return Word(std::move(out));
}

std::uint64_t FreeAbelianModel::geodesic_length(const Word& w) const {
  auto e = exponents(w);
  std::uint64_t total = 0;
  for (auto v : e) total += static_cast<std::uint64_t>(std::llabs(v));
  return total;
}

TorsionFreeProductModel::TorsionFreeProductModel(unsigned torsion_order) : n_(torsion_order), rules_(2) {
  if (n_ < 2) fail(ErrorCode::usage, "torsion order must be >= 2");
  Letter a = letter_code(Gen{0, false});
  std::vector<Letter> rel(n_, a);
  rules_ = complete_for(2, {Word(std::move(rel))});
}

Word TorsionFreeProductModel::normal_form(const Word& w) const {
  // Syllable stack; adjacent entries always carry distinct generators, so a
  // vanishing syllable just pops. Exponents of a live in Z_n, of b in Z.
  struct Syllable {
    unsigned gen;
    std::int64_t exp;
  };
  std::vector<Syllable> syl;
  for (Letter l : w.letters()) {
    Gen g = letter_gen(l);
    std::int64_t delta = g.inverse ? -1 : 1;
    if (!syl.empty() && syl.back().gen == g.index) {
      syl.back().exp += delta;
    } else {
      syl.push_back({g.index, delta});
    }
    Syllable& top = syl.back();
    if (top.gen == 0) top.exp = ((top.exp % n_) + n_) % n_;
    if (top.exp == 0) syl.pop_back();
  }
  std::vector<Letter> out;
  for (const Syllable& s : syl) {
    if (s.gen == 0) {
      std::int64_t e = s.exp;  // in 1..n-1
      bool use_inverse = static_cast<unsigned>(2 * e) > n_;
      std::int64_t reps = use_inverse ? n_ - e : e;
      Letter l = letter_code(Gen{0, use_inverse});
      for (std::int64_t k = 0; k < reps; ++k) out.push_back(l);
    } else {
      Letter l = letter_code(Gen{1, s.exp < 0});
      for (std::int64_t k = 0; k < std::llabs(s.exp); ++k) out.push_back(l);
    }
  }
  return Word(std::move(out));
}

std::uint64_t TorsionFreeProductModel::geodesic_length(const Word& w) const { return normal_form(w).size(); }

RewritingModel::RewritingModel(std::string name, RewritingSystem system)
    : name_(std::move(name)), system_(std::move(system)) {
  if (!system_.confluent()) fail(ErrorCode::validation, "rewriting model requires a certified confluent system");
}

std::shared_ptr<const GroupModel> make_builtin_model(const std::string& spec) {
  auto colon = spec.find(':');
  std::string head = colon == std::string::npos ? spec : spec.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  int n = arg.empty() ? -1 : std::atoi(arg.c_str());
  if (head == "free" && n > 0) return std::make_shared<FreeModel>(static_cast<unsigned>(n));
  if (head == "abelian" && n > 0) return std::make_shared<FreeAbelianModel>(static_cast<unsigned>(n));
  if (head == "torsion" && n > 1) return std::make_shared<TorsionFreeProductModel>(static_cast<unsigned>(n));
  fail(ErrorCode::usage, "unknown builtin model '" + spec + "' (expect free:R, abelian:R, torsion:N)");
}

}  // namespace ggt
