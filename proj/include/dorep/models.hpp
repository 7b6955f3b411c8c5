#pragma once

// Basic models, well-order families and selection functions, plus the
// structural checks (centering, language-basedness) and the executable forms
// of the two model-level lemmas.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dorep/actions.hpp"
#include "dorep/logic.hpp"
#include "dorep/random.hpp"

namespace dorep {

/// States are opaque ids; each carries the atom its valuation makes true.
/// Two states are theory-equivalent exactly when their atoms coincide.
class BasicModel {
 public:
  BasicModel(Signature sig, std::vector<std::string> states, std::vector<Atom> state_atoms);

  /// `valuation` maps each proposition to the states where it holds; its keys
  /// must be exactly the signature's propositions.
  static BasicModel from_valuation(Signature sig, std::vector<std::string> states,
                                   const std::map<std::string, std::vector<std::string>>& valuation);

  const Signature& signature() const { return sig_; }
  std::size_t size() const { return names_.size(); }
  const std::string& state_name(std::size_t s) const { return names_.at(s); }
  const std::vector<std::string>& state_names() const { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  Atom atom_of(std::size_t s) const { return atoms_.at(s); }
  bool equivalent_states(std::size_t a, std::size_t b) const { return atoms_[a] == atoms_[b]; }
  bool satisfies(std::size_t s, const TruthSet& t) const { return t.contains(atoms_[s]); }
  std::vector<std::size_t> extension(const TruthSet& t) const;

 private:
  Signature sig_;
  std::vector<std::string> names_;
  std::vector<Atom> atoms_;
};

/// One state per atom, named by its atom label, in bitmask order.
BasicModel canonical_model(const Signature& sig);

/// Per-state rankings of all states. `order(w)[0]` is closest to `w`.
class WellOrderFamily {
 public:
  explicit WellOrderFamily(std::vector<std::vector<std::size_t>> orders);

  std::size_t size() const { return orders_.size(); }
  const std::vector<std::size_t>& order(std::size_t base) const { return orders_.at(base); }
  std::size_t rank(std::size_t base, std::size_t state) const {
    return ranks_[base * orders_.size() + state];
  }
  const std::vector<std::vector<std::size_t>>& orders() const { return orders_; }
  bool centered() const;

  bool operator==(const WellOrderFamily& other) const { return orders_ == other.orders_; }

 private:
  std::vector<std::vector<std::size_t>> orders_;
  std::vector<std::size_t> ranks_;
};

/// Random language-based family; with `centered`, each base state ranks itself first.
WellOrderFamily random_language_based_family(const BasicModel& model, Rng& rng, bool centered);

/// A basic model with an extensional selection function c(state, member).
class SelectionModel {
 public:
  /// `table[state][member]`. Throws FRichnessViolation if a member has empty
  /// extension, PreconditionViolation if success fails anywhere.
  SelectionModel(BasicModel model, Menu menu, std::vector<std::vector<std::size_t>> table);

  const BasicModel& model() const { return model_; }
  const Menu& menu() const { return menu_; }
  std::size_t select(std::size_t state, std::size_t member) const {
    return table_[state][member];
  }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }
  /// The inducing family, when built by induce_selection.
  const std::optional<WellOrderFamily>& family() const { return family_; }

 private:
  friend SelectionModel induce_selection(const BasicModel&, const WellOrderFamily&, const Menu&);
  BasicModel model_;
  Menu menu_;
  std::vector<std::vector<std::size_t>> table_;
  std::optional<WellOrderFamily> family_;
};

/// Throws FRichnessViolation naming a member with empty extension.
void require_f_rich(const BasicModel& model, const Menu& menu);

/// c(ω, φ) = the order_ω-minimal φ-state.
SelectionModel induce_selection(const BasicModel& model, const WellOrderFamily& family,
                                const Menu& menu);

struct CenteringWitness {
  std::size_t state;
  std::size_t member;
  bool operator==(const CenteringWitness&) const = default;
};

/// First (state, member) pair, in state-major order, with ω ⊨ φ but c(ω, φ) ≠ ω.
std::optional<CenteringWitness> check_centering(const SelectionModel& sm);

/// Under order(base), `between` sits between two equivalent states `first` and `last`.
struct InterleavingWitness {
  std::size_t base;
  std::size_t first;
  std::size_t between;
  std::size_t last;
  bool operator==(const InterleavingWitness&) const = default;
};

/// Equivalent bases whose quotient orders differ.
struct QuotientMismatchWitness {
  std::size_t state;
  std::size_t other;
  bool operator==(const QuotientMismatchWitness&) const = default;
};

using LanguageBasedWitness = std::variant<InterleavingWitness, QuotientMismatchWitness>;

std::optional<LanguageBasedWitness> check_language_based(const WellOrderFamily& family,
                                                         const BasicModel& model);

/// Requires ψ ⊨ φ, φ and `true` in the menu, and a centered selection.
/// Returns the first state not fixed by ⟦if ψ then do(φ)⟧, or nullopt.
std::optional<std::size_t> check_lemma1(const SelectionModel& sm, const Formula& condition,
                                        const Formula& effect);

/// For an induced, language-based selection with φ ≡ φ_1 ∨ … ∨ φ_n (all parts in
/// the menu), returns the first index i such that do(ψ) and do(φ_i) agree on
/// every φ_X-state for all menu members ψ with φ_i ⊨ ψ ⊨ φ. nullopt means no
/// index works, which contradicts the lemma.
std::optional<std::size_t> check_lemma2(const SelectionModel& sm, const Formula& whole,
                                        const std::vector<Formula>& parts, Atom x);

}  // namespace dorep
