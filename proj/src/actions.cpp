#include "dorep/actions.hpp"

#include <algorithm>

#include "dorep/error.hpp"
#include "dorep/models.hpp"
#include "lexer.hpp"

namespace dorep {

// ---------------------------------------------------------------------------
// Menu

Menu::Menu(Signature sig, std::vector<Formula> formulas, Options options) {
  auto data = std::make_shared<Data>();
  data->sig = std::move(sig);
  data->options = options;
  const std::size_t atoms = data->sig.atom_count();

  for (auto& f : formulas) {
    TruthSet t = truth_set(f, data->sig);
    if (t.empty()) {
      throw Error(ErrorKind::MenuViolation,
                  "menu formula '" + f.to_string() + "' is unsatisfiable");
    }
    bool duplicate = false;
    for (std::size_t i = 0; i < data->formulas.size(); ++i) {
      if (options.collapse_equivalent ? data->truth[i] == t : data->formulas[i] == f) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    data->formulas.push_back(std::move(f));
    data->truth.push_back(std::move(t));
  }

  std::optional<std::size_t> top;
  for (std::size_t i = 0; i < data->formulas.size(); ++i) {
    const bool is_top = options.collapse_equivalent
                            ? data->truth[i].count() == atoms
                            : data->formulas[i].kind() == Formula::Kind::True;
    if (is_top) {
      top = i;
      break;
    }
  }
  if (!top) throw Error(ErrorKind::MenuViolation, "menu must contain 'true'");
  data->true_index = *top;

  data->atom_members.assign(atoms, std::nullopt);
  data->pair_members.assign(atoms * atoms, std::nullopt);
  for (std::size_t i = 0; i < data->formulas.size(); ++i) {
    const auto& t = data->truth[i];
    const auto n = t.count();
    if (n == 1) {
      auto x = t.first()->mask;
      if (!data->atom_members[x]) data->atom_members[x] = i;
    } else if (n == 2) {
      auto members = t.atoms();
      auto x = members[0].mask;
      auto y = members[1].mask;
      if (!data->pair_members[x * atoms + y]) {
        data->pair_members[x * atoms + y] = i;
        data->pair_members[y * atoms + x] = i;
      }
    }
  }
  bool rich = std::all_of(data->atom_members.begin(), data->atom_members.end(),
                          [](const auto& m) { return m.has_value(); });
  for (std::size_t x = 0; x < atoms && rich; ++x) {
    for (std::size_t y = x + 1; y < atoms && rich; ++y) {
      if (!data->pair_members[x * atoms + y]) {
        // A two-atom space has `true` as its only pairwise disjunction.
        if (atoms == 2) {
          data->pair_members[x * atoms + y] = *top;
          data->pair_members[y * atoms + x] = *top;
        } else {
          rich = false;
        }
      }
    }
  }
  data->rich = rich;
  data_ = std::move(data);
}

std::optional<std::size_t> Menu::index_of(const Formula& f) const {
  if (data_->options.collapse_equivalent) {
    TruthSet t = truth_set(f, data_->sig);
    for (std::size_t i = 0; i < size(); ++i) {
      if (data_->truth[i] == t) return i;
    }
    return std::nullopt;
  }
  for (std::size_t i = 0; i < size(); ++i) {
    if (data_->formulas[i] == f) return i;
  }
  return std::nullopt;
}

void Menu::require_rich() const {
  const auto& sig = data_->sig;
  const std::size_t atoms = sig.atom_count();
  for (std::uint32_t x = 0; x < atoms; ++x) {
    if (!data_->atom_members[x]) {
      throw Error(ErrorKind::RichnessViolation,
                  "menu lacks the atom " + atom_label(sig, Atom{x}));
    }
  }
  for (std::uint32_t x = 0; x < atoms; ++x) {
    for (std::uint32_t y = x + 1; y < atoms; ++y) {
      if (!data_->pair_members[x * atoms + y]) {
        throw Error(ErrorKind::RichnessViolation,
                    "menu lacks a disjunction of atoms " + atom_label(sig, Atom{x}) + " and " +
                        atom_label(sig, Atom{y}));
      }
    }
  }
}

std::size_t Menu::atom_member(Atom x) const {
  const auto& m = data_->atom_members.at(x.mask);
  if (!m) require_rich();
  return *m;
}

std::size_t Menu::pair_member(Atom x, Atom y) const {
  if (x == y) return atom_member(x);
  const auto& m = data_->pair_members.at(x.mask * data_->sig.atom_count() + y.mask);
  if (!m) require_rich();
  return *m;
}

bool Menu::operator==(const Menu& other) const {
  return data_ == other.data_ ||
         (data_->sig == other.data_->sig && data_->formulas == other.data_->formulas &&
          data_->options.collapse_equivalent == other.data_->options.collapse_equivalent);
}

Menu rich_menu(const Signature& sig) {
  std::vector<Formula> fs;
  const auto atoms = all_atoms(sig);
  for (auto x : atoms) fs.push_back(atom_formula(sig, x));
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      if (atoms.size() == 2) continue;
      fs.push_back(Formula::disjunction(atom_formula(sig, atoms[i]), atom_formula(sig, atoms[j])));
    }
  }
  fs.push_back(Formula::top());
  return Menu(sig, std::move(fs));
}

// ---------------------------------------------------------------------------
// Action

struct Action::Node {
  Kind kind;
  std::optional<Formula> formula;
  std::optional<Action> first;
  std::optional<Action> second;
  bool has_seq = false;
};

Action Action::make_do(Formula effect) {
  return Action(std::make_shared<const Node>(Node{Kind::Do, std::move(effect), {}, {}, false}));
}

Action Action::branch(Formula condition, Action then_act, Action else_act) {
  const bool seq = then_act.contains_seq() || else_act.contains_seq();
  return Action(std::make_shared<const Node>(
      Node{Kind::IfThenElse, std::move(condition), std::move(then_act), std::move(else_act), seq}));
}

Action Action::guarded(Formula condition, Action then_act) {
  return branch(std::move(condition), std::move(then_act), make_do(Formula::top()));
}

Action Action::sequence(Action first, Action second) {
  return Action(std::make_shared<const Node>(
      Node{Kind::Seq, std::nullopt, std::move(first), std::move(second), true}));
}

Action::Kind Action::kind() const { return node_->kind; }
const Formula& Action::formula() const { return *node_->formula; }
const Action& Action::first() const { return *node_->first; }
const Action& Action::second() const { return *node_->second; }
bool Action::contains_seq() const { return node_->has_seq; }

namespace {

void render(const Action& a, std::string& out, bool nested) {
  switch (a.kind()) {
    case Action::Kind::Do:
      out += "do(" + a.formula().to_string() + ")";
      return;
    case Action::Kind::IfThenElse:
      if (nested) out += '(';
      out += "if " + a.formula().to_string() + " then ";
      render(a.first(), out, true);
      out += " else ";
      render(a.second(), out, a.second().kind() == Action::Kind::Seq);
      if (nested) out += ')';
      return;
    case Action::Kind::Seq:
      if (nested) out += '(';
      render(a.first(), out, a.first().kind() == Action::Kind::IfThenElse);
      out += "; ";
      render(a.second(), out, true);
      if (nested) out += ')';
      return;
  }
}

}  // namespace

std::string Action::to_string() const {
  std::string out;
  render(*this, out, false);
  return out;
}

namespace {

// seq    := simple (";" simple)*
// simple := "do" "(" formula ")" | "if" formula "then" simple ("else" simple)? | "(" seq ")"
class ActionParser {
 public:
  ActionParser(detail::Lexer& lex, const Signature& sig) : lex_(lex), sig_(sig) {}

  Action seq() {
    Action a = simple();
    while (lex_.accept(detail::Tok::Semicolon)) a = Action::sequence(a, simple());
    return a;
  }

 private:
  Action simple() {
    using detail::Tok;
    switch (lex_.peek().kind) {
      case Tok::Do: {
        lex_.next();
        lex_.expect(Tok::LParen);
        Formula f = detail::parse_formula(lex_, sig_);
        lex_.expect(Tok::RParen);
        return Action::make_do(std::move(f));
      }
      case Tok::If: {
        lex_.next();
        Formula cond = detail::parse_formula(lex_, sig_);
        lex_.expect(Tok::Then);
        Action then_act = simple();
        if (lex_.accept(Tok::Else)) return Action::branch(std::move(cond), then_act, simple());
        return Action::guarded(std::move(cond), std::move(then_act));
      }
      case Tok::LParen: {
        lex_.next();
        Action a = seq();
        lex_.expect(Tok::RParen);
        return a;
      }
      default: lex_.fail("expected action");
    }
  }

  detail::Lexer& lex_;
  const Signature& sig_;
};

}  // namespace

Action parse_action(std::string_view text, const Signature& sig) {
  detail::Lexer lex(text);
  Action a = ActionParser(lex, sig).seq();
  if (lex.peek().kind != detail::Tok::End) lex.fail("expected end of action");
  return a;
}

// ---------------------------------------------------------------------------
// Compilation

CompiledAct constant_act(const Menu& menu, std::size_t member) {
  return CompiledAct{std::vector<std::uint32_t>(menu.signature().atom_count(),
                                                static_cast<std::uint32_t>(member))};
}

CompiledAct conditional_act(const TruthSet& cond, const CompiledAct& then_act,
                            const CompiledAct& else_act) {
  CompiledAct out = else_act;
  for (std::uint32_t x = 0; x < out.choice.size(); ++x) {
    if (cond.contains(Atom{x})) out.choice[x] = then_act.choice[x];
  }
  return out;
}

CompiledAct guarded_act(const Menu& menu, const TruthSet& cond, const CompiledAct& then_act) {
  return conditional_act(cond, then_act, constant_act(menu, menu.true_index()));
}

CompiledAct compile(const Action& act, const Menu& menu) {
  switch (act.kind()) {
    case Action::Kind::Do: {
      auto idx = menu.index_of(act.formula());
      if (!idx) {
        throw Error(ErrorKind::MenuViolation,
                    "do(" + act.formula().to_string() + ") is not a menu choice");
      }
      return constant_act(menu, *idx);
    }
    case Action::Kind::IfThenElse:
      return conditional_act(truth_set(act.formula(), menu.signature()),
                             compile(act.first(), menu), compile(act.second(), menu));
    case Action::Kind::Seq:
      throw Error(ErrorKind::SeqNotCompilable,
                  "sequential action '" + act.to_string() + "' has no atom table");
  }
  return {};
}

Action canonical_act(const CompiledAct& f, const Menu& menu) {
  const auto& sig = menu.signature();
  const std::size_t n = f.choice.size();
  Action chain = Action::make_do(menu.at(f.choice[n - 1]));
  for (std::size_t x = n - 1; x-- > 0;) {
    chain = Action::branch(atom_formula(sig, Atom{static_cast<std::uint32_t>(x)}),
                           Action::make_do(menu.at(f.choice[x])), chain);
  }
  return chain;
}

// ---------------------------------------------------------------------------
// Interpretation

Action alternative_act(const CompiledAct& f, const Menu& menu) {
  const auto& sig = menu.signature();
  Action chain = Action::make_do(menu.at(f.choice[0]));
  for (std::size_t x = 1; x < f.choice.size(); ++x) {
    chain = Action::branch(Formula::negation(atom_formula(sig, Atom{static_cast<std::uint32_t>(x)})),
                           chain, Action::make_do(menu.at(f.choice[x])));
  }
  return chain;
}

CompiledAct random_act(const Menu& menu, Rng& rng) {
  CompiledAct f;
  f.choice.resize(menu.signature().atom_count());
  for (auto& c : f.choice) c = static_cast<std::uint32_t>(rng.below(menu.size()));
  return f;
}

std::vector<std::size_t> interpret(const Action& act, const SelectionModel& sm) {
  const auto& model = sm.model();
  const std::size_t n = model.size();
  std::vector<std::size_t> out(n);
  switch (act.kind()) {
    case Action::Kind::Do: {
      auto idx = sm.menu().index_of(act.formula());
      if (!idx) {
        throw Error(ErrorKind::MenuViolation,
                    "do(" + act.formula().to_string() + ") is not a menu choice");
      }
      for (std::size_t s = 0; s < n; ++s) out[s] = sm.select(s, *idx);
      return out;
    }
    case Action::Kind::IfThenElse: {
      const TruthSet cond = truth_set(act.formula(), model.signature());
      const auto a = interpret(act.first(), sm);
      const auto b = interpret(act.second(), sm);
      for (std::size_t s = 0; s < n; ++s) out[s] = model.satisfies(s, cond) ? a[s] : b[s];
      return out;
    }
    case Action::Kind::Seq: {
      const auto a = interpret(act.first(), sm);
      const auto b = interpret(act.second(), sm);
      for (std::size_t s = 0; s < n; ++s) out[s] = b[a[s]];
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// ActSpace

std::optional<std::uint64_t> ActSpace::cardinality(std::size_t menu_size, std::size_t atom_count) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < atom_count; ++i) {
    if (menu_size != 0 && total > ~std::uint64_t{0} / menu_size) return std::nullopt;
    total *= menu_size;
  }
  return total;
}

ActSpace::ActSpace(const Menu& menu, std::uint64_t cap)
    : radix_(menu.size()), atom_count_(menu.signature().atom_count()), size_(0) {
  auto n = cardinality(radix_, atom_count_);
  if (!n || *n > cap) {
    throw Error(ErrorKind::CapExceeded,
                "act space has " +
                    (n ? std::to_string(*n)
                       : std::to_string(radix_) + "^" + std::to_string(atom_count_)) +
                    " tables, above the cap of " + std::to_string(cap));
  }
  size_ = *n;
}

CompiledAct ActSpace::at(std::uint64_t index) const {
  CompiledAct f{std::vector<std::uint32_t>(atom_count_, 0)};
  for (std::size_t x = atom_count_; x-- > 0;) {
    f.choice[x] = static_cast<std::uint32_t>(index % radix_);
    index /= radix_;
  }
  return f;
}

std::uint64_t ActSpace::index_of(const CompiledAct& f) const {
  std::uint64_t index = 0;
  for (auto c : f.choice) index = index * radix_ + c;
  return index;
}

ActSpace::iterator& ActSpace::iterator::operator++() {
  ++index_;
  for (std::size_t x = current_.choice.size(); x-- > 0;) {
    if (++current_.choice[x] < radix_) return *this;
    current_.choice[x] = 0;
  }
  return *this;
}

ActSpace::iterator ActSpace::begin() const { return iterator(0, radix_, at(0)); }
ActSpace::iterator ActSpace::end() const { return iterator(size_, radix_, CompiledAct{}); }

}  // namespace dorep
