#include "dorep/models.hpp"

#include <algorithm>
#include <set>

#include "dorep/error.hpp"

namespace dorep {

BasicModel::BasicModel(Signature sig, std::vector<std::string> states, std::vector<Atom> state_atoms)
    : sig_(std::move(sig)), names_(std::move(states)), atoms_(std::move(state_atoms)) {
  if (names_.empty()) throw Error(ErrorKind::InvalidModel, "a model needs at least one state");
  if (names_.size() != atoms_.size()) {
    throw Error(ErrorKind::InvalidModel, "state list and atom list differ in length");
  }
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!seen.insert(n).second) throw Error(ErrorKind::InvalidModel, "duplicate state id '" + n + "'");
  }
  for (auto a : atoms_) {
    if (a.mask >= sig_.atom_count()) throw Error(ErrorKind::InvalidModel, "atom outside signature");
  }
}

BasicModel BasicModel::from_valuation(
    Signature sig, std::vector<std::string> states,
    const std::map<std::string, std::vector<std::string>>& valuation) {
  std::vector<Atom> atoms(states.size());
  if (valuation.size() != sig.size()) {
    throw Error(ErrorKind::InvalidModel, "valuation keys must be exactly the signature's propositions");
  }
  for (const auto& [prop, holds_at] : valuation) {
    auto p = sig.index_of(prop);
    if (!p) throw Error(ErrorKind::InvalidModel, "valuation names unknown proposition '" + prop + "'");
    for (const auto& s : holds_at) {
      auto it = std::find(states.begin(), states.end(), s);
      if (it == states.end()) {
        throw Error(ErrorKind::InvalidModel, "valuation of '" + prop + "' names unknown state '" + s + "'");
      }
      atoms[static_cast<std::size_t>(it - states.begin())].mask |= 1u << *p;
    }
  }
  return BasicModel(std::move(sig), std::move(states), std::move(atoms));
}

std::optional<std::size_t> BasicModel::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> BasicModel::extension(const TruthSet& t) const {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < size(); ++s) {
    if (satisfies(s, t)) out.push_back(s);
  }
  return out;
}

BasicModel canonical_model(const Signature& sig) {
  std::vector<std::string> names;
  auto atoms = all_atoms(sig);
  for (auto a : atoms) names.push_back(atom_label(sig, a));
  return BasicModel(sig, std::move(names), std::move(atoms));
}

// ---------------------------------------------------------------------------

WellOrderFamily::WellOrderFamily(std::vector<std::vector<std::size_t>> orders)
    : orders_(std::move(orders)) {
  const std::size_t n = orders_.size();
  ranks_.assign(n * n, 0);
  for (std::size_t base = 0; base < n; ++base) {
    const auto& ord = orders_[base];
    if (ord.size() != n) {
      throw Error(ErrorKind::InvalidModel,
                  "order for state " + std::to_string(base) + " does not rank every state");
    }
    std::vector<bool> seen(n, false);
    for (std::size_t r = 0; r < n; ++r) {
      if (ord[r] >= n || seen[ord[r]]) {
        throw Error(ErrorKind::InvalidModel,
                    "order for state " + std::to_string(base) + " is not a permutation");
      }
      seen[ord[r]] = true;
      ranks_[base * n + ord[r]] = r;
    }
  }
}

bool WellOrderFamily::centered() const {
  for (std::size_t base = 0; base < orders_.size(); ++base) {
    if (orders_[base][0] != base) return false;
  }
  return true;
}

WellOrderFamily random_language_based_family(const BasicModel& model, Rng& rng, bool centered) {
  const std::size_t n = model.size();
  // Theory classes in order of first appearance.
  std::vector<Atom> classes;
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t s = 0; s < n; ++s) {
    auto it = std::find(classes.begin(), classes.end(), model.atom_of(s));
    if (it == classes.end()) {
      classes.push_back(model.atom_of(s));
      members.push_back({s});
    } else {
      members[static_cast<std::size_t>(it - classes.begin())].push_back(s);
    }
  }
  const std::size_t k = classes.size();
  // One quotient order per theory class.
  std::vector<std::vector<std::size_t>> quotient(k);
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<std::size_t> rest;
    for (std::size_t d = 0; d < k; ++d) {
      if (!centered || d != c) rest.push_back(d);
    }
    rng.shuffle(rest);
    if (centered) quotient[c].push_back(c);
    quotient[c].insert(quotient[c].end(), rest.begin(), rest.end());
  }
  std::vector<std::vector<std::size_t>> orders(n);
  for (std::size_t base = 0; base < n; ++base) {
    const auto own = static_cast<std::size_t>(
        std::find(classes.begin(), classes.end(), model.atom_of(base)) - classes.begin());
    for (auto c : quotient[own]) {
      auto block = members[c];
      rng.shuffle(block);
      if (centered && c == own) {
        std::iter_swap(block.begin(), std::find(block.begin(), block.end(), base));
      }
      orders[base].insert(orders[base].end(), block.begin(), block.end());
    }
  }
  return WellOrderFamily(std::move(orders));
}

// ---------------------------------------------------------------------------

void require_f_rich(const BasicModel& model, const Menu& menu) {
  if (!(model.signature() == menu.signature())) {
    throw Error(ErrorKind::InvalidModel, "model and menu use different signatures");
  }
  for (std::size_t i = 0; i < menu.size(); ++i) {
    if (model.extension(menu.truth(i)).empty()) {
      throw Error(ErrorKind::FRichnessViolation,
                  "menu formula '" + menu.at(i).to_string() + "' has no state in the model");
    }
  }
}

SelectionModel::SelectionModel(BasicModel model, Menu menu,
                               std::vector<std::vector<std::size_t>> table)
    : model_(std::move(model)), menu_(std::move(menu)), table_(std::move(table)) {
  require_f_rich(model_, menu_);
  if (table_.size() != model_.size()) {
    throw Error(ErrorKind::InvalidModel, "selection table must have one row per state");
  }
  for (std::size_t s = 0; s < table_.size(); ++s) {
    if (table_[s].size() != menu_.size()) {
      throw Error(ErrorKind::InvalidModel, "selection table row must have one entry per menu formula");
    }
    for (std::size_t m = 0; m < menu_.size(); ++m) {
      const auto t = table_[s][m];
      if (t >= model_.size() || !model_.satisfies(t, menu_.truth(m))) {
        throw Error(ErrorKind::PreconditionViolation,
                    "selection fails success at state '" + model_.state_name(s) + "' for '" +
                        menu_.at(m).to_string() + "'");
      }
    }
  }
}

SelectionModel induce_selection(const BasicModel& model, const WellOrderFamily& family,
                                const Menu& menu) {
  require_f_rich(model, menu);
  if (family.size() != model.size()) {
    throw Error(ErrorKind::InvalidModel, "well-order family size differs from the state count");
  }
  std::vector<std::vector<std::size_t>> table(model.size(), std::vector<std::size_t>(menu.size()));
  for (std::size_t s = 0; s < model.size(); ++s) {
    for (std::size_t m = 0; m < menu.size(); ++m) {
      for (auto t : family.order(s)) {
        if (model.satisfies(t, menu.truth(m))) {
          table[s][m] = t;
          break;
        }
      }
    }
  }
  SelectionModel sm(model, menu, std::move(table));
  sm.family_ = family;
  return sm;
}

std::optional<CenteringWitness> check_centering(const SelectionModel& sm) {
  for (std::size_t s = 0; s < sm.model().size(); ++s) {
    for (std::size_t m = 0; m < sm.menu().size(); ++m) {
      if (sm.model().satisfies(s, sm.menu().truth(m)) && sm.select(s, m) != s) {
        return CenteringWitness{s, m};
      }
    }
  }
  return std::nullopt;
}

std::optional<LanguageBasedWitness> check_language_based(const WellOrderFamily& family,
                                                         const BasicModel& model) {
  const std::size_t n = model.size();
  if (family.size() != n) {
    throw Error(ErrorKind::InvalidModel, "well-order family size differs from the state count");
  }
  // (a) equivalence classes are contiguous in every order.
  for (std::size_t base = 0; base < n; ++base) {
    const auto& ord = family.order(base);
    for (std::size_t i = 0; i < n; ++i) {
      // Last position of ord[i]'s class.
      std::size_t last = i;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (model.equivalent_states(ord[i], ord[j])) last = j;
      }
      for (std::size_t j = i + 1; j < last; ++j) {
        if (!model.equivalent_states(ord[i], ord[j])) {
          return InterleavingWitness{base, ord[i], ord[j], ord[last]};
        }
      }
    }
  }
  // (b) equivalent bases induce the same order on classes.
  auto quotient = [&](std::size_t base) {
    std::vector<Atom> seq;
    for (auto s : family.order(base)) {
      if (seq.empty() || seq.back() != model.atom_of(s)) seq.push_back(model.atom_of(s));
    }
    return seq;
  };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (model.equivalent_states(a, b) && quotient(a) != quotient(b)) {
        return QuotientMismatchWitness{a, b};
      }
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> check_lemma1(const SelectionModel& sm, const Formula& condition,
                                        const Formula& effect) {
  const auto& sig = sm.model().signature();
  if (!entails(condition, effect, sig)) {
    throw Error(ErrorKind::PreconditionViolation,
                "'" + condition.to_string() + "' does not entail '" + effect.to_string() + "'");
  }
  if (check_centering(sm)) {
    throw Error(ErrorKind::PreconditionViolation, "selection function is not centered");
  }
  const auto image = interpret(Action::guarded(condition, Action::make_do(effect)), sm);
  for (std::size_t s = 0; s < image.size(); ++s) {
    if (image[s] != s) return s;
  }
  return std::nullopt;
}

std::optional<std::size_t> check_lemma2(const SelectionModel& sm, const Formula& whole,
                                        const std::vector<Formula>& parts, Atom x) {
  const auto& model = sm.model();
  const auto& menu = sm.menu();
  const auto& sig = model.signature();
  if (parts.empty()) throw Error(ErrorKind::PreconditionViolation, "empty decomposition");
  if (!sm.family()) {
    throw Error(ErrorKind::PreconditionViolation, "selection is not induced by a well-order family");
  }
  if (check_language_based(*sm.family(), model)) {
    throw Error(ErrorKind::PreconditionViolation, "inducing family is not language-based");
  }
  const TruthSet whole_t = truth_set(whole, sig);
  TruthSet cover(sig.atom_count());
  std::vector<std::size_t> part_idx;
  for (const auto& p : parts) {
    auto idx = menu.index_of(p);
    if (!idx) {
      throw Error(ErrorKind::PreconditionViolation,
                  "part '" + p.to_string() + "' is not a menu choice");
    }
    part_idx.push_back(*idx);
    cover = cover | menu.truth(*idx);
  }
  if (!(cover == whole_t)) {
    throw Error(ErrorKind::PreconditionViolation,
                "parts are not equivalent to '" + whole.to_string() + "'");
  }
  const auto states = model.extension(TruthSet::singleton(sig.atom_count(), x));
  for (std::size_t i = 0; i < part_idx.size(); ++i) {
    const TruthSet& part_t = menu.truth(part_idx[i]);
    bool ok = true;
    for (std::size_t psi = 0; psi < menu.size() && ok; ++psi) {
      const TruthSet& psi_t = menu.truth(psi);
      if (!part_t.subset_of(psi_t) || !psi_t.subset_of(whole_t)) continue;
      for (auto s : states) {
        if (sm.select(s, psi) != sm.select(s, part_idx[i])) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return i;
  }
  return std::nullopt;
}

}  // namespace dorep
