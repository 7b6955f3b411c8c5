#pragma once

// Propositional substrate: signatures, formulas, atoms and truth sets.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dorep {

inline constexpr std::size_t kMaxProps = 16;

/// Ordered set of proposition names. The order fixes bit positions in atom masks.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<std::string> props);

  std::size_t size() const { return props_.size(); }
  std::size_t atom_count() const { return std::size_t{1} << props_.size(); }
  const std::string& name(std::size_t i) const { return props_.at(i); }
  const std::vector<std::string>& props() const { return props_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  bool operator==(const Signature&) const = default;

 private:
  std::vector<std::string> props_;
};

/// A complete truth assignment X ⊆ Φ, bit i set iff prop i is true.
struct Atom {
  std::uint32_t mask = 0;

  bool has(std::size_t prop) const { return (mask >> prop) & 1u; }
  auto operator<=>(const Atom&) const = default;
};

/// Set of atoms, stored as a bitset over the 2^|Φ| atoms of a signature.
class TruthSet {
 public:
  TruthSet() = default;
  explicit TruthSet(std::size_t atom_count);
  static TruthSet full(std::size_t atom_count);
  static TruthSet singleton(std::size_t atom_count, Atom a);

  std::size_t atom_count() const { return atom_count_; }
  bool contains(Atom a) const {
    return (words_[a.mask >> 6] >> (a.mask & 63)) & 1u;
  }
  void insert(Atom a) { words_[a.mask >> 6] |= std::uint64_t{1} << (a.mask & 63); }
  void erase(Atom a) { words_[a.mask >> 6] &= ~(std::uint64_t{1} << (a.mask & 63)); }

  std::size_t count() const;
  bool empty() const;
  bool subset_of(const TruthSet& other) const;
  std::optional<Atom> first() const;
  std::vector<Atom> atoms() const;

  TruthSet operator&(const TruthSet& other) const;
  TruthSet operator|(const TruthSet& other) const;
  TruthSet complement() const;

  bool operator==(const TruthSet&) const = default;

 private:
  std::size_t atom_count_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Immutable propositional formula. Copies share structure.
class Formula {
 public:
  enum class Kind { True, False, Prop, Not, And, Or, Implies, Iff };

  static Formula top();
  static Formula bottom();
  static Formula prop(std::size_t index, std::string name);
  static Formula negation(Formula f);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula biconditional(Formula lhs, Formula rhs);

  Kind kind() const;
  std::size_t prop_index() const;
  const std::string& prop_name() const;
  /// Operand of Not, left operand of binary connectives.
  const Formula& lhs() const;
  const Formula& rhs() const;

  /// Structural equality.
  bool operator==(const Formula& other) const;

  /// Minimal-parenthesis rendering in the parser's grammar.
  std::string to_string() const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Parses the formula grammar. Keywords (`if`, `then`, `else`, `do`) end a formula.
Formula parse_formula(std::string_view text, const Signature& sig);

bool evaluate(const Formula& f, Atom a);
TruthSet truth_set(const Formula& f, const Signature& sig);
bool satisfiable(const Formula& f, const Signature& sig);
bool entails(const Formula& premise, const Formula& conclusion, const Signature& sig);
bool equivalent(const Formula& a, const Formula& b, const Signature& sig);

/// φ_X: conjunction of literals in canonical prop order.
Formula atom_formula(const Signature& sig, Atom x);
/// All 2^|Φ| atoms in bitmask order.
std::vector<Atom> all_atoms(const Signature& sig);
/// Human-readable "{p,q}" label; "{}" for the empty atom.
std::string atom_label(const Signature& sig, Atom x);
std::optional<Atom> parse_atom_label(std::string_view label, const Signature& sig);

}  // namespace dorep
