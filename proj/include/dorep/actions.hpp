#pragma once

// The action algebra over a finite menu F: do(φ), if-then-else, and sequencing.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dorep/logic.hpp"
#include "dorep/random.hpp"

namespace dorep {

class SelectionModel;

struct MenuOptions {
  bool collapse_equivalent = false;
};

/// The finite set F of formulas that may appear under do(·).
///
/// Members are deduplicated by structural identity, so `p | q` and `q | p` are
/// distinct choices. With `collapse_equivalent` set, members are deduplicated by
/// truth set instead and lookups match any equivalent formula.
///
/// Every member must be satisfiable and the formula `true` must be present. The
/// menu is *rich* when each atom and each two-atom disjunction is matched by
/// some member's truth set; the first such member (in menu order) plays that
/// role in closeness queries.
class Menu {
 public:
  using Options = MenuOptions;

  Menu(Signature sig, std::vector<Formula> formulas, Options options = {});

  const Signature& signature() const { return data_->sig; }
  std::size_t size() const { return data_->formulas.size(); }
  const Formula& at(std::size_t i) const { return data_->formulas.at(i); }
  const TruthSet& truth(std::size_t i) const { return data_->truth.at(i); }
  const std::vector<Formula>& formulas() const { return data_->formulas; }
  bool collapses_equivalent() const { return data_->options.collapse_equivalent; }

  std::optional<std::size_t> index_of(const Formula& f) const;
  std::size_t true_index() const { return data_->true_index; }

  bool rich() const { return data_->rich; }
  /// Throws RichnessViolation naming the missing atom or pair.
  void require_rich() const;
  /// Member whose truth set is exactly {x}.
  std::size_t atom_member(Atom x) const;
  /// Member whose truth set is exactly {x, y}; the atom member when x == y.
  std::size_t pair_member(Atom x, Atom y) const;

  bool operator==(const Menu& other) const;

 private:
  struct Data {
    Signature sig;
    std::vector<Formula> formulas;
    std::vector<TruthSet> truth;
    Options options;
    std::size_t true_index = 0;
    bool rich = false;
    std::vector<std::optional<std::size_t>> atom_members;
    // indexed [x * atom_count + y]
    std::vector<std::optional<std::size_t>> pair_members;
  };
  std::shared_ptr<const Data> data_;
};

/// Menu of all atoms (bitmask order), all two-atom disjunctions, then `true`.
/// A disjunction covering every atom is omitted since `true` already plays its role.
Menu rich_menu(const Signature& sig);

/// f_α: atom index → menu index.
struct CompiledAct {
  std::vector<std::uint32_t> choice;

  std::uint32_t operator[](Atom x) const { return choice[x.mask]; }
  auto operator<=>(const CompiledAct&) const = default;
};

/// Immutable action syntax tree.
class Action {
 public:
  enum class Kind { Do, IfThenElse, Seq };

  static Action make_do(Formula effect);
  static Action branch(Formula condition, Action then_act, Action else_act);
  /// `if condition then act`, i.e. with `else do(true)`.
  static Action guarded(Formula condition, Action then_act);
  static Action sequence(Action first, Action second);

  Kind kind() const;
  /// Payload of Do, condition of IfThenElse.
  const Formula& formula() const;
  /// Then-branch / first step.
  const Action& first() const;
  /// Else-branch / second step.
  const Action& second() const;

  bool contains_seq() const;
  std::string to_string() const;

 private:
  struct Node;
  explicit Action(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Action parse_action(std::string_view text, const Signature& sig);

/// Follows the f_α recursion. Throws SeqNotCompilable or MenuViolation.
CompiledAct compile(const Action& act, const Menu& menu);

/// Right-nested if-chain over atoms in bitmask order realizing `f`.
Action canonical_act(const CompiledAct& f, const Menu& menu);
/// A syntactically different realization of `f`: left-nested, tested on
/// negated atoms from the highest mask down.
Action alternative_act(const CompiledAct& f, const Menu& menu);
/// Uniformly random table.
CompiledAct random_act(const Menu& menu, Rng& rng);

CompiledAct constant_act(const Menu& menu, std::size_t member);
/// Table of `if cond then a else b`, where `cond` is given by its truth set.
CompiledAct conditional_act(const TruthSet& cond, const CompiledAct& then_act,
                            const CompiledAct& else_act);
/// Table of `if cond then a` (else do(true)).
CompiledAct guarded_act(const Menu& menu, const TruthSet& cond, const CompiledAct& then_act);

/// ⟦α⟧ as a state-indexed map. Seq interprets as composition ⟦β⟧∘⟦α⟧.
std::vector<std::size_t> interpret(const Action& act, const SelectionModel& sm);

/// The finite quotient of A_F: all |F|^(2^|Φ|) tables, enumerated in
/// lexicographic order with the empty atom most significant.
class ActSpace {
 public:
  static constexpr std::uint64_t kDefaultCap = 1'000'000;

  /// Throws CapExceeded (with the computed cardinality) when the space is larger than `cap`.
  explicit ActSpace(const Menu& menu, std::uint64_t cap = kDefaultCap);

  /// |F|^(2^|Φ|), or nullopt if it does not fit in 64 bits.
  static std::optional<std::uint64_t> cardinality(std::size_t menu_size, std::size_t atom_count);

  std::uint64_t size() const { return size_; }
  std::size_t atom_count() const { return atom_count_; }
  CompiledAct at(std::uint64_t index) const;
  std::uint64_t index_of(const CompiledAct& f) const;

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = CompiledAct;
    using difference_type = std::ptrdiff_t;
    using pointer = const CompiledAct*;
    using reference = const CompiledAct&;

    iterator() = default;
    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    iterator operator++(int) {
      iterator tmp = *this;
      ++*this;
      return tmp;
    }
    bool operator==(const iterator& other) const { return index_ == other.index_; }

   private:
    friend class ActSpace;
    iterator(std::uint64_t index, std::size_t radix, CompiledAct current)
        : index_(index), radix_(radix), current_(std::move(current)) {}
    std::uint64_t index_ = 0;
    std::size_t radix_ = 0;
    CompiledAct current_;
  };

  iterator begin() const;
  iterator end() const;

 private:
  std::size_t radix_;
  std::size_t atom_count_;
  std::uint64_t size_;
};

}  // namespace dorep
