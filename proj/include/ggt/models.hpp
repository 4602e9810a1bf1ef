#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ggt/rewriting.hpp"
#include "ggt/words.hpp"

namespace ggt {

enum class ModelKind { free, free_abelian, free_product_with_torsion, rewriting_quotient };

// A concrete group with decidable word problem: normal forms and exact
// geodesic lengths over its generating set. Models are immutable after
// construction and safe to share across threads.
class GroupModel {
 public:
  virtual ~GroupModel() = default;

  virtual unsigned rank() const = 0;
  virtual ModelKind kind() const = 0;
  virtual std::string name() const = 0;

  // Canonical (shortlex-least geodesic) word for the element of w.
  virtual Word normal_form(const Word& w) const = 0;

  virtual std::uint64_t geodesic_length(const Word& w) const { return normal_form(w).size(); }

  bool equal(const Word& a, const Word& b) const { return normal_form(a) == normal_form(b); }
  bool is_identity(const Word& w) const { return normal_form(w).empty(); }

  // Product in normal form.
  Word mul(const Word& a, const Word& b) const { return normal_form(concat(a, b)); }

  // A confluent shortlex system whose irreducible words are exactly the
  // normal forms. Present for every shipped model; powers exact sphere
  // counting beyond enumeration range.
  virtual const RewritingSystem* certified_rules() const { return nullptr; }
};

class FreeModel final : public GroupModel {
 public:
  explicit FreeModel(unsigned rank);
  unsigned rank() const override { return rank_; }
  ModelKind kind() const override { return ModelKind::free; }
  std::string name() const override { return "free:" + std::to_string(rank_); }
  Word normal_form(const Word& w) const override { return free_reduce(w); }
  std::uint64_t geodesic_length(const Word& w) const override { return free_reduce(w).size(); }
  const RewritingSystem* certified_rules() const override { return &rules_; }

 private:
  unsigned rank_;
  RewritingSystem rules_;
};

// Z^rank with the standard generators; geodesic length is the l1-norm of the
// exponent vector.
class FreeAbelianModel final : public GroupModel {
 public:
  explicit FreeAbelianModel(unsigned rank);
  unsigned rank() const override { return rank_; }
  ModelKind kind() const override { return ModelKind::free_abelian; }
  std::string name() const override { return "abelian:" + std::to_string(rank_); }
  Word normal_form(const Word& w) const override;
  std::uint64_t geodesic_length(const Word& w) const override;
  const RewritingSystem* certified_rules() const override { return &rules_; }

  std::vector<std::int64_t> exponents(const Word& w) const;

 private:
  unsigned rank_;
  RewritingSystem rules_;
};

// Z_n * Z over generators a (torsion of order n) and b (infinite order).
class TorsionFreeProductModel final : public GroupModel {
 public:
  explicit TorsionFreeProductModel(unsigned torsion_order);
  unsigned rank() const override { return 2; }
  ModelKind kind() const override { return ModelKind::free_product_with_torsion; }
  std::string name() const override { return "torsion:" + std::to_string(n_); }
  Word normal_form(const Word& w) const override;
  std::uint64_t geodesic_length(const Word& w) const override;
  const RewritingSystem* certified_rules() const override { return &rules_; }

 private:
  unsigned n_;
  RewritingSystem rules_;
};

// Quotient of the free group by the normal closure of the relators, realized
// through a completed shortlex system.
class RewritingModel final : public GroupModel {
 public:
  RewritingModel(std::string name, RewritingSystem system);
  unsigned rank() const override { return system_.rank(); }
  ModelKind kind() const override { return ModelKind::rewriting_quotient; }
  std::string name() const override { return name_; }
  Word normal_form(const Word& w) const override { return system_.rewrite(w); }
  const RewritingSystem* certified_rules() const override { return &system_; }

 private:
  std::string name_;
  RewritingSystem system_;
};

// Parses "free:R", "abelian:R", "torsion:N".
std::shared_ptr<const GroupModel> make_builtin_model(const std::string& spec);

}  // namespace ggt
