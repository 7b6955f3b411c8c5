#include "dorep/logic.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <set>

#include "dorep/error.hpp"
#include "dorep/rational.hpp"
#include "lexer.hpp"

namespace dorep {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::UnknownProposition: return "unknown-proposition";
    case ErrorKind::InvalidSignature: return "invalid-signature";
    case ErrorKind::MenuViolation: return "menu-violation";
    case ErrorKind::SeqNotCompilable: return "seq-not-compilable";
    case ErrorKind::FRichnessViolation: return "f-richness-violation";
    case ErrorKind::RichnessViolation: return "richness-violation";
    case ErrorKind::CapExceeded: return "cap-exceeded";
    case ErrorKind::PreconditionViolation: return "precondition-violation";
    case ErrorKind::Unsatisfiable: return "unsatisfiable";
    case ErrorKind::NotTotal: return "not-total";
    case ErrorKind::NotTransitive: return "not-transitive";
    case ErrorKind::InvalidModel: return "invalid-model";
    case ErrorKind::InvalidPreference: return "invalid-preference";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return Error(ErrorKind::Parse, "malformed rational '" + s + "'"); };
  if (s.empty()) throw bad();
  std::size_t i = (s[0] == '-') ? 1 : 0;
  bool slash = false;
  bool digits = false;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits = true;
    } else if (s[i] == '/' && !slash && digits) {
      slash = true;
      digits = false;
    } else {
      throw bad();
    }
  }
  if (!digits) throw bad();
  Rational q;
  if (q.set_str(s, 10) != 0) throw bad();
  if (q.get_den() == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------------------
// Signature

namespace {

bool valid_identifier(const std::string& name) {
  if (name.empty()) return false;
  auto head = static_cast<unsigned char>(name[0]);
  if (!(std::isalpha(head) || name[0] == '_')) return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

Signature::Signature(std::vector<std::string> props) : props_(std::move(props)) {
  if (props_.size() > kMaxProps) {
    throw Error(ErrorKind::InvalidSignature,
                "signature has " + std::to_string(props_.size()) +
                    " propositions; at most " + std::to_string(kMaxProps) + " supported");
  }
  std::set<std::string> seen;
  for (const auto& p : props_) {
    if (!valid_identifier(p) || detail::is_keyword(p)) {
      throw Error(ErrorKind::InvalidSignature, "invalid proposition name '" + p + "'");
    }
    if (!seen.insert(p).second) {
      throw Error(ErrorKind::InvalidSignature, "duplicate proposition name '" + p + "'");
    }
  }
}

std::optional<std::size_t> Signature::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < props_.size(); ++i) {
    if (props_[i] == name) return i;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// TruthSet

TruthSet::TruthSet(std::size_t atom_count)
    : atom_count_(atom_count), words_((atom_count + 63) / 64, 0) {}

TruthSet TruthSet::full(std::size_t atom_count) { return TruthSet(atom_count).complement(); }

TruthSet TruthSet::singleton(std::size_t atom_count, Atom a) {
  TruthSet t(atom_count);
  t.insert(a);
  return t;
}

std::size_t TruthSet::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool TruthSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

bool TruthSet::subset_of(const TruthSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

std::optional<Atom> TruthSet::first() const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] != 0) {
      return Atom{static_cast<std::uint32_t>(i * 64 + std::countr_zero(words_[i]))};
    }
  }
  return std::nullopt;
}

std::vector<Atom> TruthSet::atoms() const {
  std::vector<Atom> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    auto w = words_[i];
    while (w != 0) {
      out.push_back(Atom{static_cast<std::uint32_t>(i * 64 + std::countr_zero(w))});
      w &= w - 1;
    }
  }
  return out;
}

TruthSet TruthSet::operator&(const TruthSet& other) const {
  TruthSet r = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= other.words_[i];
  return r;
}

TruthSet TruthSet::operator|(const TruthSet& other) const {
  TruthSet r = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] |= other.words_[i];
  return r;
}

TruthSet TruthSet::complement() const {
  TruthSet r = *this;
  for (auto& w : r.words_) w = ~w;
  if (atom_count_ % 64 != 0 && !r.words_.empty()) {
    r.words_.back() &= (std::uint64_t{1} << (atom_count_ % 64)) - 1;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Formula

struct Formula::Node {
  Kind kind = Kind::True;
  std::size_t prop = 0;
  std::string name;
  std::optional<Formula> lhs;
  std::optional<Formula> rhs;
};

Formula Formula::top() {
  static const Formula f(std::make_shared<const Node>(Node{Kind::True, 0, {}, {}, {}}));
  return f;
}

Formula Formula::bottom() {
  static const Formula f(std::make_shared<const Node>(Node{Kind::False, 0, {}, {}, {}}));
  return f;
}

Formula Formula::prop(std::size_t index, std::string name) {
  return Formula(std::make_shared<const Node>(Node{Kind::Prop, index, std::move(name), {}, {}}));
}

Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Kind::Not, 0, {}, std::move(f), {}}));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return Formula(
      std::make_shared<const Node>(Node{Kind::And, 0, {}, std::move(lhs), std::move(rhs)}));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return Formula(
      std::make_shared<const Node>(Node{Kind::Or, 0, {}, std::move(lhs), std::move(rhs)}));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
  return Formula(
      std::make_shared<const Node>(Node{Kind::Implies, 0, {}, std::move(lhs), std::move(rhs)}));
}

Formula Formula::biconditional(Formula lhs, Formula rhs) {
  return Formula(
      std::make_shared<const Node>(Node{Kind::Iff, 0, {}, std::move(lhs), std::move(rhs)}));
}

Formula::Kind Formula::kind() const { return node_->kind; }
std::size_t Formula::prop_index() const { return node_->prop; }
const std::string& Formula::prop_name() const { return node_->name; }
const Formula& Formula::lhs() const { return *node_->lhs; }
const Formula& Formula::rhs() const { return *node_->rhs; }

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  const Node& a = *node_;
  const Node& b = *other.node_;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Kind::True:
    case Kind::False: return true;
    case Kind::Prop: return a.prop == b.prop && a.name == b.name;
    case Kind::Not: return *a.lhs == *b.lhs;
    default: return *a.lhs == *b.lhs && *a.rhs == *b.rhs;
  }
}

namespace {

int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Iff: return 1;
    case Formula::Kind::Implies: return 2;
    case Formula::Kind::Or: return 3;
    case Formula::Kind::And: return 4;
    case Formula::Kind::Not: return 5;
    default: return 6;
  }
}

void render(const Formula& f, std::string& out);

void render_child(const Formula& f, bool parens, std::string& out) {
  if (parens) out += '(';
  render(f, out);
  if (parens) out += ')';
}

void render(const Formula& f, std::string& out) {
  using K = Formula::Kind;
  const int prec = precedence(f.kind());
  const char* op = nullptr;
  switch (f.kind()) {
    case K::True: out += "true"; return;
    case K::False: out += "false"; return;
    case K::Prop: out += f.prop_name(); return;
    case K::Not:
      out += '!';
      render_child(f.lhs(), precedence(f.lhs().kind()) < prec, out);
      return;
    case K::And: op = " & "; break;
    case K::Or: op = " | "; break;
    case K::Implies: op = " -> "; break;
    case K::Iff: op = " <-> "; break;
  }
  // `->` associates to the right, everything else to the left.
  const bool right_assoc = f.kind() == K::Implies;
  const int lp = precedence(f.lhs().kind());
  const int rp = precedence(f.rhs().kind());
  render_child(f.lhs(), right_assoc ? lp <= prec : lp < prec, out);
  out += op;
  render_child(f.rhs(), right_assoc ? rp < prec : rp <= prec, out);
}

}  // namespace

std::string Formula::to_string() const {
  std::string out;
  render(*this, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

const char* describe(Tok t) {
  switch (t) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "identifier";
    case Tok::True: return "'true'";
    case Tok::False: return "'false'";
    case Tok::Not: return "'!'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Implies: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Semicolon: return "';'";
    case Tok::If: return "'if'";
    case Tok::Then: return "'then'";
    case Tok::Else: return "'else'";
    case Tok::Do: return "'do'";
  }
  return "token";
}

bool is_keyword(std::string_view w) {
  return w == "true" || w == "false" || w == "if" || w == "then" || w == "else" || w == "do";
}

void Lexer::advance() {
  while (offset_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[offset_]))) {
    ++offset_;
  }
  current_.pos = offset_;
  if (offset_ >= src_.size()) {
    current_.kind = Tok::End;
    current_.text = {};
    return;
  }
  const char c = src_[offset_];
  auto single = [&](Tok k, std::size_t len) {
    current_.kind = k;
    current_.text = src_.substr(offset_, len);
    offset_ += len;
  };
  if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
    std::size_t end = offset_ + 1;
    while (end < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_')) {
      ++end;
    }
    auto word = src_.substr(offset_, end - offset_);
    Tok k = Tok::Ident;
    if (word == "true") k = Tok::True;
    else if (word == "false") k = Tok::False;
    else if (word == "if") k = Tok::If;
    else if (word == "then") k = Tok::Then;
    else if (word == "else") k = Tok::Else;
    else if (word == "do") k = Tok::Do;
    single(k, word.size());
    return;
  }
  switch (c) {
    case '!': single(Tok::Not, 1); return;
    case '&': single(Tok::And, 1); return;
    case '|': single(Tok::Or, 1); return;
    case '(': single(Tok::LParen, 1); return;
    case ')': single(Tok::RParen, 1); return;
    case ';': single(Tok::Semicolon, 1); return;
    case '-':
      if (src_.substr(offset_, 2) == "->") {
        single(Tok::Implies, 2);
        return;
      }
      break;
    case '<':
      if (src_.substr(offset_, 3) == "<->") {
        single(Tok::Iff, 3);
        return;
      }
      break;
    default: break;
  }
  throw Error(ErrorKind::Parse,
              std::string("unexpected character '") + c + "' at position " +
                  std::to_string(offset_),
              offset_);
}

namespace {

class FormulaParser {
 public:
  FormulaParser(Lexer& lex, const Signature& sig) : lex_(lex), sig_(sig) {}

  Formula iff() {
    Formula f = imp();
    while (lex_.accept(Tok::Iff)) f = Formula::biconditional(f, imp());
    return f;
  }

 private:
  Formula imp() {
    Formula f = disj();
    if (lex_.accept(Tok::Implies)) return Formula::implication(f, imp());
    return f;
  }

  Formula disj() {
    Formula f = conj();
    while (lex_.accept(Tok::Or)) f = Formula::disjunction(f, conj());
    return f;
  }

  Formula conj() {
    Formula f = unary();
    while (lex_.accept(Tok::And)) f = Formula::conjunction(f, unary());
    return f;
  }

  Formula unary() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Not: lex_.next(); return Formula::negation(unary());
      case Tok::True: lex_.next(); return Formula::top();
      case Tok::False: lex_.next(); return Formula::bottom();
      case Tok::LParen: {
        lex_.next();
        Formula f = iff();
        lex_.expect(Tok::RParen);
        return f;
      }
      case Tok::Ident: {
        Token id = lex_.next();
        auto idx = sig_.index_of(id.text);
        if (!idx) {
          throw Error(ErrorKind::UnknownProposition,
                      "unknown proposition '" + std::string(id.text) + "' at position " +
                          std::to_string(id.pos),
                      id.pos);
        }
        return Formula::prop(*idx, std::string(id.text));
      }
      default: lex_.fail("expected formula");
    }
  }

  Lexer& lex_;
  const Signature& sig_;
};

}  // namespace

Formula parse_formula(Lexer& lex, const Signature& sig) {
  return FormulaParser(lex, sig).iff();
}

}  // namespace detail

Formula parse_formula(std::string_view text, const Signature& sig) {
  detail::Lexer lex(text);
  Formula f = detail::parse_formula(lex, sig);
  if (lex.peek().kind != detail::Tok::End) lex.fail("expected end of formula");
  return f;
}

// ---------------------------------------------------------------------------
// Semantics

bool evaluate(const Formula& f, Atom a) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True: return true;
    case K::False: return false;
    case K::Prop: return a.has(f.prop_index());
    case K::Not: return !evaluate(f.lhs(), a);
    case K::And: return evaluate(f.lhs(), a) && evaluate(f.rhs(), a);
    case K::Or: return evaluate(f.lhs(), a) || evaluate(f.rhs(), a);
    case K::Implies: return !evaluate(f.lhs(), a) || evaluate(f.rhs(), a);
    case K::Iff: return evaluate(f.lhs(), a) == evaluate(f.rhs(), a);
  }
  return false;
}

TruthSet truth_set(const Formula& f, const Signature& sig) {
  using K = Formula::Kind;
  const std::size_t n = sig.atom_count();
  switch (f.kind()) {
    case K::True: return TruthSet::full(n);
    case K::False: return TruthSet(n);
    case K::Prop: {
      if (f.prop_index() >= sig.size()) {
        throw Error(ErrorKind::UnknownProposition,
                    "proposition '" + f.prop_name() + "' is outside the signature");
      }
      TruthSet t(n);
      for (std::uint32_t m = 0; m < n; ++m) {
        if (Atom{m}.has(f.prop_index())) t.insert(Atom{m});
      }
      return t;
    }
    case K::Not: return truth_set(f.lhs(), sig).complement();
    case K::And: return truth_set(f.lhs(), sig) & truth_set(f.rhs(), sig);
    case K::Or: return truth_set(f.lhs(), sig) | truth_set(f.rhs(), sig);
    case K::Implies: return truth_set(f.lhs(), sig).complement() | truth_set(f.rhs(), sig);
    case K::Iff: {
      auto a = truth_set(f.lhs(), sig);
      auto b = truth_set(f.rhs(), sig);
      return (a & b) | (a.complement() & b.complement());
    }
  }
  return TruthSet(n);
}

bool satisfiable(const Formula& f, const Signature& sig) { return !truth_set(f, sig).empty(); }

bool entails(const Formula& premise, const Formula& conclusion, const Signature& sig) {
  return truth_set(premise, sig).subset_of(truth_set(conclusion, sig));
}

bool equivalent(const Formula& a, const Formula& b, const Signature& sig) {
  return truth_set(a, sig) == truth_set(b, sig);
}

Formula atom_formula(const Signature& sig, Atom x) {
  std::optional<Formula> out;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    Formula lit = Formula::prop(i, sig.name(i));
    if (!x.has(i)) lit = Formula::negation(lit);
    out = out ? Formula::conjunction(*out, lit) : lit;
  }
  return out ? *out : Formula::top();
}

std::vector<Atom> all_atoms(const Signature& sig) {
  std::vector<Atom> out;
  out.reserve(sig.atom_count());
  for (std::uint32_t m = 0; m < sig.atom_count(); ++m) out.push_back(Atom{m});
  return out;
}

std::string atom_label(const Signature& sig, Atom x) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (!x.has(i)) continue;
    if (!first) out += ',';
    out += sig.name(i);
    first = false;
  }
  out += '}';
  return out;
}

std::optional<Atom> parse_atom_label(std::string_view label, const Signature& sig) {
  if (label.size() < 2 || label.front() != '{' || label.back() != '}') return std::nullopt;
  label = label.substr(1, label.size() - 2);
  Atom a;
  while (!label.empty()) {
    auto comma = label.find(',');
    auto name = label.substr(0, comma);
    auto idx = sig.index_of(name);
    if (!idx || a.has(*idx)) return std::nullopt;
    a.mask |= 1u << *idx;
    if (comma == std::string_view::npos) break;
    label = label.substr(comma + 1);
    if (label.empty()) return std::nullopt;
  }
  return a;
}

}  // namespace dorep
