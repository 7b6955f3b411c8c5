#include "dorep/representation.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>

#include "dorep/error.hpp"

namespace dorep {

StateDependentUtility::StateDependentUtility(std::size_t atom_count, std::size_t menu_size,
                                             std::vector<Rational> values)
    : atom_count_(atom_count), menu_size_(menu_size), values_(std::move(values)) {
  if (values_.size() != atom_count_ * menu_size_) {
    throw Error(ErrorKind::InvalidModel, "state-dependent utility needs one value per atom and member");
  }
}

Rational StateDependentUtility::score(const CompiledAct& f) const {
  Rational total = 0;
  for (std::size_t x = 0; x < f.choice.size(); ++x) total += values_[x * menu_size_ + f.choice[x]];
  return total;
}

// ---------------------------------------------------------------------------

namespace {

LinearConstraint comparison_row(const CompiledAct& better, const CompiledAct& worse,
                                std::size_t menu_size, bool strict) {
  std::map<std::size_t, Rational> coeff;
  for (std::size_t x = 0; x < better.choice.size(); ++x) {
    coeff[x * menu_size + better.choice[x]] += 1;
    coeff[x * menu_size + worse.choice[x]] -= 1;
  }
  LinearConstraint c;
  for (auto& [var, a] : coeff) {
    if (sgn(a) != 0) c.terms.emplace_back(var, std::move(a));
  }
  c.sense = strict ? LinearConstraint::Sense::AtLeast : LinearConstraint::Sense::Equal;
  c.rhs = strict ? 1 : 0;
  return c;
}

// x ⪰ y, y ⪰ z, z ≻ x among {a, b, c}.
std::optional<std::array<CompiledAct, 3>> intransitive_triple(const PreferenceRelation& pr,
                                                              const CompiledAct& a,
                                                              const CompiledAct& b,
                                                              const CompiledAct& c) {
  const std::array<const CompiledAct*, 3> acts{&a, &b, &c};
  std::array<std::size_t, 3> p{0, 1, 2};
  do {
    const auto& x = *acts[p[0]];
    const auto& y = *acts[p[1]];
    const auto& z = *acts[p[2]];
    if (pr.at_least(x, y) && pr.at_least(y, z) && !pr.at_least(x, z)) {
      return std::array<CompiledAct, 3>{x, y, z};
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return std::nullopt;
}

}  // namespace

StateDependentResult solve_state_dependent(const PreferenceRelation& pr, LpOptions options) {
  const auto& menu = pr.menu();
  const ActSpace space(menu, options.cap);
  const std::size_t m = menu.size();
  const std::size_t vars = space.atom_count() * m;

  std::vector<std::pair<CompiledAct, CompiledAct>> pairs;
  std::vector<LinearConstraint> rows;
  auto relate = [&](const CompiledAct& better, const CompiledAct& worse) {
    const bool strict = pr.compare(better, worse) > 0;
    rows.push_back(comparison_row(better, worse, m, strict));
    pairs.emplace_back(better, worse);
  };

  std::optional<std::array<CompiledAct, 3>> cycle;
  if (pr.has_overrides()) {
    for (const auto& [better, worse] : pr.strict_overrides()) {
      for (const auto& c : space) {
        if (c == better || c == worse) continue;
        cycle = intransitive_triple(pr, better, worse, c);
        if (cycle) break;
      }
      if (cycle) break;
    }
  }

  if (cycle) {
    const auto& [x, y, z] = *cycle;
    relate(x, y);
    relate(y, z);
    relate(z, x);
  } else {
    std::vector<std::vector<std::uint64_t>> classes;
    if (!pr.has_overrides()) {
      classes = pr.base_classes(space);
    } else {
      std::vector<CompiledAct> acts(space.begin(), space.end());
      std::vector<std::uint64_t> order(acts.size());
      std::iota(order.begin(), order.end(), std::uint64_t{0});
      std::stable_sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
        return pr.compare(acts[a], acts[b]) > 0;
      });
      for (std::size_t i = 0; i < order.size(); ++i) {
        if (i == 0 || pr.compare(acts[order[i - 1]], acts[order[i]]) != 0) classes.emplace_back();
        classes.back().push_back(order[i]);
      }
    }
    for (std::size_t k = 0; k < classes.size(); ++k) {
      const auto& cls = classes[k];
      for (std::size_t i = 1; i < cls.size(); ++i) relate(space.at(cls[i - 1]), space.at(cls[i]));
      if (k + 1 < classes.size()) relate(space.at(cls.front()), space.at(classes[k + 1].front()));
    }
  }

  auto result = solve_feasibility(vars, rows);
  if (result.feasible()) {
    return StateDependentUtility(space.atom_count(), m, std::move(*result.solution));
  }
  LpInfeasibility bad{std::move(rows), std::move(pairs), std::move(*result.certificate), std::nullopt};
  bad.canc = certificate_to_canc(bad, options.tuple_limit);
  return bad;
}

std::optional<CancWitness> certificate_to_canc(const LpInfeasibility& lp, std::uint64_t tuple_limit) {
  struct Use {
    const CompiledAct* better;
    const CompiledAct* worse;
    Rational weight;
    bool strict;
  };
  std::vector<Use> uses;
  for (std::size_t k = 0; k < lp.constraints.size(); ++k) {
    const auto& y = lp.certificate.multipliers.at(k);
    if (sgn(y) == 0) continue;
    const auto& [f, g] = lp.pairs.at(k);
    const bool strict = lp.constraints[k].sense == LinearConstraint::Sense::AtLeast;
    if (sgn(y) > 0) uses.push_back({&f, &g, y, strict});
    else uses.push_back({&g, &f, -y, strict});
  }
  mpz_class den = 1;
  for (const auto& u : uses) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), u.weight.get_den_mpz_t());
  std::vector<mpz_class> counts;
  mpz_class common = 0;
  for (const auto& u : uses) {
    counts.push_back(u.weight.get_num() * (den / u.weight.get_den()));
    mpz_gcd(common.get_mpz_t(), common.get_mpz_t(), counts.back().get_mpz_t());
  }
  mpz_class total = 0;
  for (auto& c : counts) {
    c /= common;
    total += c;
  }
  if (uses.empty() || total > tuple_limit) return std::nullopt;

  // A strict comparison goes last: its conclusion is the one that fails.
  const auto last = static_cast<std::size_t>(
      std::find_if(uses.begin(), uses.end(), [](const Use& u) { return u.strict; }) - uses.begin());
  if (last == uses.size()) return std::nullopt;
  CancWitness w;
  for (std::size_t k = 0; k < uses.size(); ++k) {
    auto times = counts[k].get_ui();
    if (k == last) --times;
    for (unsigned long t = 0; t < times; ++t) {
      w.alphas.push_back(*uses[k].better);
      w.betas.push_back(*uses[k].worse);
    }
  }
  w.alphas.push_back(*uses[last].better);
  w.betas.push_back(*uses[last].worse);
  return w;
}

// ---------------------------------------------------------------------------

AtomOrders extract_well_orders(const PreferenceRelation& pr, bool centered) {
  const auto& menu = pr.menu();
  menu.require_rich();
  const auto atoms = all_atoms(menu.signature());
  const std::size_t n = atoms.size();
  AtomOrders orders;
  for (auto w : atoms) {
    std::vector<bool> close(n * n);
    for (auto x : atoms) {
      for (auto y : atoms) close[x.mask * n + y.mask] = closeness(pr, w, x, y);
    }
    auto le = [&](Atom x, Atom y) { return close[x.mask * n + y.mask]; };
    for (auto x : atoms) {
      for (auto y : atoms) {
        if (!le(x, y) && !le(y, x)) {
          throw Error(ErrorKind::NotTotal, "closeness at " + atom_label(menu.signature(), w) +
                                               " leaves " + atom_label(menu.signature(), x) + " and " +
                                               atom_label(menu.signature(), y) + " unrelated");
        }
      }
    }
    for (auto x : atoms) {
      for (auto y : atoms) {
        for (auto z : atoms) {
          if (le(x, y) && le(y, z) && !le(x, z)) {
            throw Error(ErrorKind::NotTransitive,
                        "closeness at " + atom_label(menu.signature(), w) + " is not transitive");
          }
        }
      }
    }
    std::vector<Atom> order = atoms;
    std::stable_sort(order.begin(), order.end(),
                     [&](Atom x, Atom y) { return le(x, y) && !le(y, x); });
    if (centered) {
      for (auto y : atoms) {
        if (!le(w, y)) {
          throw Error(ErrorKind::PreconditionViolation,
                      "atom " + atom_label(menu.signature(), w) + " is not closest to itself");
        }
      }
      std::rotate(order.begin(), std::find(order.begin(), order.end(), w),
                  std::find(order.begin(), order.end(), w) + 1);
    }
    orders.push_back(std::move(order));
  }
  return orders;
}

Atom min_choice(const AtomOrders& orders, Atom w, const TruthSet& t) {
  for (auto x : orders.at(w.mask)) {
    if (t.contains(x)) return x;
  }
  throw Error(ErrorKind::Unsatisfiable, "no atom satisfies the formula");
}

std::optional<Lemma4Witness> check_lemma4(const PreferenceRelation& pr, const AtomOrders& orders) {
  const auto& menu = pr.menu();
  menu.require_rich();
  for (auto w : all_atoms(menu.signature())) {
    const auto only_w = TruthSet::singleton(menu.signature().atom_count(), w);
    for (std::size_t phi = 0; phi < menu.size(); ++phi) {
      const auto x = min_choice(orders, w, menu.truth(phi));
      if (conditional_compare(pr, only_w, constant_act(menu, phi),
                              constant_act(menu, menu.atom_member(x))) != 0) {
        return Lemma4Witness{w, phi};
      }
    }
  }
  return std::nullopt;
}

std::optional<Lemma5Witness> check_lemma5(const StateDependentUtility& u_star,
                                          const AtomOrders& orders, const Menu& menu) {
  for (auto w : all_atoms(menu.signature())) {
    for (std::size_t phi = 0; phi < menu.size(); ++phi) {
      const auto x = min_choice(orders, w, menu.truth(phi));
      for (std::size_t other = phi + 1; other < menu.size(); ++other) {
        if (min_choice(orders, w, menu.truth(other)) == x && u_star.at(w, phi) != u_star.at(w, other)) {
          return Lemma5Witness{w, phi, other};
        }
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

BuiltRepresentation build_representation(const Menu& menu, AtomOrders orders,
                                         StateDependentUtility u_star) {
  const auto& sig = menu.signature();
  const auto atoms = all_atoms(sig);
  const std::size_t n = atoms.size();
  if (orders.size() != n || u_star.atom_count() != n || u_star.menu_size() != menu.size()) {
    throw Error(ErrorKind::InvalidModel, "orders and utility do not match the menu's signature");
  }
  if (auto bad = check_lemma5(u_star, orders, menu)) {
    throw Error(ErrorKind::InvalidModel,
                "utility is not well defined at " + atom_label(sig, bad->w) + ": '" +
                    menu.at(bad->member).to_string() + "' and '" + menu.at(bad->other).to_string() +
                    "' select the same atom with different values");
  }

  std::vector<std::string> names;
  std::vector<Atom> valuation;
  std::vector<std::pair<Atom, Atom>> pairs;
  for (auto x : atoms) {
    for (auto w : atoms) {
      names.push_back("(" + atom_label(sig, x) + "," + atom_label(sig, w) + ")");
      valuation.push_back(x);
      pairs.emplace_back(x, w);
    }
  }
  BasicModel model(sig, std::move(names), std::move(valuation));

  std::vector<std::vector<std::size_t>> ranked(n * n);
  for (auto w : atoms) {
    for (auto w2 : atoms) {
      auto& order = ranked[paired_state(n, w, w2)];
      for (auto x : orders[w.mask]) {
        order.push_back(paired_state(n, x, w));
        for (auto v : atoms) {
          if (v != w) order.push_back(paired_state(n, x, v));
        }
      }
    }
  }
  auto sm = induce_selection(model, WellOrderFamily(std::move(ranked)), menu);

  const Rational cell = Rational(1, static_cast<unsigned long>(n * n));
  std::vector<Rational> probability(n * n, cell);
  // u(X, W) = u*(W, φ) / π(Ω_W) with π(Ω_W) = 1/n.
  std::vector<Rational> utility(n * n, Rational(0));
  for (auto w : atoms) {
    for (std::size_t phi = 0; phi < menu.size(); ++phi) {
      const auto x = min_choice(orders, w, menu.truth(phi));
      utility[paired_state(n, x, w)] = u_star.at(w, phi) * static_cast<unsigned long>(n);
    }
  }
  return BuiltRepresentation{SEURepresentation(std::move(sm), std::move(probability), std::move(utility)),
                             std::move(orders), std::move(u_star), std::move(pairs)};
}

BuiltRepresentation build_representation(const PreferenceRelation& pr, LpOptions options) {
  auto solved = solve_state_dependent(pr, options);
  if (std::holds_alternative<LpInfeasibility>(solved)) {
    throw Error(ErrorKind::Unsatisfiable, "no additive state-dependent utility represents the preference");
  }
  auto orders = extract_well_orders(pr, true);
  return build_representation(pr.menu(), std::move(orders),
                              std::get<StateDependentUtility>(std::move(solved)));
}

std::optional<Eq2Witness> check_eq2(const BuiltRepresentation& built) {
  const auto& sm = built.rep.selection();
  const auto& menu = sm.menu();
  const std::size_t n = built.orders.size();
  for (std::size_t s = 0; s < sm.model().size(); ++s) {
    const auto w = built.state_pairs[s].first;
    for (std::size_t phi = 0; phi < menu.size(); ++phi) {
      const auto x = min_choice(built.orders, w, menu.truth(phi));
      if (sm.select(s, phi) != paired_state(n, x, w)) return Eq2Witness{s, phi};
    }
  }
  return std::nullopt;
}

VerifyReport verify_representation(const SEURepresentation& rep, const PreferenceRelation& pr,
                                   VerifyOptions options) {
  const auto& menu = pr.menu();
  VerifyReport report;
  auto agree = [&](const CompiledAct& a, const CompiledAct& b, const Rational& ea, const Rational& eb) {
    ++report.coverage.count;
    const auto verdict = pr.compare(a, b);
    const int s = cmp(ea, eb);
    const bool ok = (s > 0 && verdict > 0) || (s < 0 && verdict < 0) || (s == 0 && verdict == 0);
    if (!ok) {
      report.passed = false;
      report.witness.emplace(a, b);
    }
    return ok;
  };

  const auto size = ActSpace::cardinality(menu.size(), menu.signature().atom_count());
  if (size && *size <= options.exhaustive_limit) {
    const ActSpace space(menu, *size);
    std::vector<CompiledAct> acts(space.begin(), space.end());
    std::vector<Rational> eu;
    for (const auto& f : acts) eu.push_back(rep.expected_utility(f));
    for (std::size_t i = 0; i < acts.size(); ++i) {
      for (std::size_t j = i + 1; j < acts.size(); ++j) {
        if (!agree(acts[i], acts[j], eu[i], eu[j])) return report;
      }
    }
    return report;
  }

  report.coverage.kind = Coverage::Kind::Sampled;
  report.coverage.seed = options.seed;
  Rng rng(options.seed);
  for (std::uint64_t k = 0; k < options.pairs; ++k) {
    const auto a = random_act(menu, rng);
    const auto b = random_act(menu, rng);
    if (!agree(a, b, rep.expected_utility(a), rep.expected_utility(b))) return report;
  }
  return report;
}

}  // namespace dorep
