#include "dorep/axioms.hpp"

#include <algorithm>
#include <set>

#include "dorep/error.hpp"

namespace dorep {

const char* to_string(AxiomId id) {
  switch (id) {
    case AxiomId::Cent: return "cent";
    case AxiomId::Ssc: return "ssc";
    case AxiomId::Trans: return "trans";
    case AxiomId::Canc: return "canc";
    case AxiomId::Reflexivity: return "reflexivity";
    case AxiomId::Transitivity: return "transitivity";
    case AxiomId::Independence: return "independence";
  }
  return "?";
}

namespace {

bool well_formed(const CompiledAct& f, const Menu& menu) {
  if (f.choice.size() != menu.signature().atom_count()) return false;
  return std::all_of(f.choice.begin(), f.choice.end(),
                     [&](std::uint32_t c) { return c < menu.size(); });
}

bool valid_atom(Atom a, const Menu& menu) { return a.mask < menu.signature().atom_count(); }

// ψ ⊨ φ on members.
bool member_entails(const Menu& menu, std::size_t a, std::size_t b) {
  return menu.truth(a).subset_of(menu.truth(b));
}

bool cent_violated(const PreferenceRelation& pr, std::size_t condition, std::size_t effect) {
  const auto& menu = pr.menu();
  const auto act = guarded_act(menu, menu.truth(condition), constant_act(menu, effect));
  return pr.compare(act, constant_act(menu, menu.true_index())) != 0;
}

// ψ breaks candidate φ_i at X: do(ψ) ≁ do(φ_i) conditional on φ_X.
bool breaks(const PreferenceRelation& pr, Atom x, std::size_t psi, std::size_t part) {
  const auto& menu = pr.menu();
  const auto only_x = TruthSet::singleton(menu.signature().atom_count(), x);
  return conditional_compare(pr, only_x, constant_act(menu, psi), constant_act(menu, part)) != 0;
}

bool same_multisets(const std::vector<CompiledAct>& alphas, const std::vector<CompiledAct>& betas,
                    std::size_t atom_count) {
  for (std::size_t x = 0; x < atom_count; ++x) {
    std::vector<std::uint32_t> a, b;
    for (const auto& f : alphas) a.push_back(f.choice[x]);
    for (const auto& f : betas) b.push_back(f.choice[x]);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return false;
  }
  return true;
}

std::weak_ordering branch_compare(const PreferenceRelation& pr, const TruthSet& cond,
                                  const CompiledAct& a, const CompiledAct& b,
                                  const CompiledAct& otherwise) {
  return pr.compare(conditional_act(cond, a, otherwise), conditional_act(cond, b, otherwise));
}

// First subset (by size, then lexicographically) of `pool` with at most
// `max_size` elements whose truth sets cover `target`.
std::optional<std::vector<std::size_t>> first_cover(const Menu& menu,
                                                    const std::vector<std::size_t>& pool,
                                                    const TruthSet& target, std::size_t max_size) {
  std::vector<std::size_t> pick;
  std::optional<std::vector<std::size_t>> found;
  auto search = [&](auto&& self, std::size_t start, std::size_t remaining, const TruthSet& covered) -> bool {
    if (remaining == 0) {
      if (covered == target) {
        found = pick;
        return true;
      }
      return false;
    }
    for (std::size_t i = start; i + remaining <= pool.size(); ++i) {
      pick.push_back(pool[i]);
      if (self(self, i + 1, remaining - 1, covered | menu.truth(pool[i]))) return true;
      pick.pop_back();
    }
    return false;
  };
  const TruthSet none(target.atom_count());
  for (std::size_t size = 1; size <= std::min(max_size, pool.size()); ++size) {
    if (search(search, 0, size, none)) return found;
  }
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------

bool revalidates(const PreferenceRelation& pr, const Witness& witness) {
  const auto& menu = pr.menu();
  const std::size_t atoms = menu.signature().atom_count();
  struct Visitor {
    const PreferenceRelation& pr;
    const Menu& menu;
    std::size_t atoms;

    bool operator()(const CentWitness& w) const {
      if (w.condition >= menu.size() || w.effect >= menu.size()) return false;
      return member_entails(menu, w.condition, w.effect) && cent_violated(pr, w.condition, w.effect);
    }
    bool operator()(const SscWitness& w) const {
      if (w.whole >= menu.size() || !valid_atom(w.atom, menu)) return false;
      if (w.parts.empty() || w.parts.size() != w.breakers.size()) return false;
      TruthSet covered(atoms);
      for (std::size_t i = 0; i < w.parts.size(); ++i) {
        const auto part = w.parts[i];
        const auto psi = w.breakers[i];
        if (part >= menu.size() || psi >= menu.size()) return false;
        if (!member_entails(menu, part, psi) || !member_entails(menu, psi, w.whole)) return false;
        if (!breaks(pr, w.atom, psi, part)) return false;
        covered = covered | menu.truth(part);
      }
      return covered == menu.truth(w.whole);
    }
    bool operator()(const TransWitness& w) const {
      if (!menu.rich()) return false;
      for (auto a : {w.w, w.x, w.y, w.z}) {
        if (!valid_atom(a, menu)) return false;
      }
      return closeness(pr, w.w, w.x, w.y) && closeness(pr, w.w, w.y, w.z) &&
             !closeness(pr, w.w, w.x, w.z);
    }
    bool operator()(const CancWitness& w) const {
      const std::size_t n = w.alphas.size();
      if (n == 0 || w.betas.size() != n) return false;
      for (std::size_t i = 0; i < n; ++i) {
        if (!well_formed(w.alphas[i], menu) || !well_formed(w.betas[i], menu)) return false;
      }
      if (!same_multisets(w.alphas, w.betas, atoms)) return false;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!pr.at_least(w.alphas[i], w.betas[i])) return false;
      }
      return pr.compare(w.betas[n - 1], w.alphas[n - 1]) < 0;
    }
    bool operator()(const ReflexivityWitness& w) const {
      return well_formed(w.act, menu) && pr.compare(w.act, w.act) != 0;
    }
    bool operator()(const TransitivityWitness& w) const {
      if (!well_formed(w.a, menu) || !well_formed(w.b, menu) || !well_formed(w.c, menu)) return false;
      return pr.at_least(w.a, w.b) && pr.at_least(w.b, w.c) && !pr.at_least(w.a, w.c);
    }
    bool operator()(const IndependenceWitness& w) const {
      if (w.condition.atom_count() != atoms) return false;
      for (const auto* f : {&w.alpha, &w.beta, &w.gamma, &w.gamma_prime}) {
        if (!well_formed(*f, menu)) return false;
      }
      return branch_compare(pr, w.condition, w.alpha, w.beta, w.gamma) !=
             branch_compare(pr, w.condition, w.alpha, w.beta, w.gamma_prime);
    }
  };
  return std::visit(Visitor{pr, menu, atoms}, witness);
}

// ---------------------------------------------------------------------------

AxiomReport check_cent(const PreferenceRelation& pr) {
  const auto& menu = pr.menu();
  AxiomReport report;
  report.axiom = AxiomId::Cent;
  auto fail = [&](std::size_t psi, std::size_t phi) {
    report.passed = false;
    report.witness = CentWitness{psi, phi};
    return report;
  };
  for (std::size_t i = 0; i < menu.size(); ++i) {
    ++report.coverage.count;
    if (cent_violated(pr, i, i)) return fail(i, i);
  }
  for (std::size_t psi = 0; psi < menu.size(); ++psi) {
    for (std::size_t phi = 0; phi < menu.size(); ++phi) {
      if (psi == phi || !member_entails(menu, psi, phi)) continue;
      ++report.coverage.count;
      if (cent_violated(pr, psi, phi)) return fail(psi, phi);
    }
  }
  return report;
}

AxiomReport check_ssc(const PreferenceRelation& pr, SscOptions options) {
  const auto& menu = pr.menu();
  menu.require_rich();
  AxiomReport report;
  report.axiom = AxiomId::Ssc;
  const auto atoms = all_atoms(menu.signature());
  for (std::size_t whole = 0; whole < menu.size(); ++whole) {
    const auto& target = menu.truth(whole);
    std::vector<std::size_t> inside;
    for (std::size_t i = 0; i < menu.size(); ++i) {
      if (member_entails(menu, i, whole)) inside.push_back(i);
    }
    for (auto x : atoms) {
      // A decomposition fails at X exactly when each of its parts is broken
      // by some ψ, so only covers drawn from broken members matter.
      std::vector<std::size_t> broken;
      std::vector<std::size_t> breaker_of(menu.size(), menu.size());
      TruthSet reach(target.atom_count());
      for (auto part : inside) {
        ++report.coverage.count;
        for (auto psi : inside) {
          if (psi == part || !member_entails(menu, part, psi)) continue;
          if (breaks(pr, x, psi, part)) {
            breaker_of[part] = psi;
            broken.push_back(part);
            reach = reach | menu.truth(part);
            break;
          }
        }
      }
      if (!(reach == target)) continue;
      auto cover = first_cover(menu, broken, target, options.max_parts);
      if (!cover) continue;
      SscWitness w{whole, *cover, x, {}};
      for (auto part : *cover) w.breakers.push_back(breaker_of[part]);
      report.passed = false;
      report.witness = std::move(w);
      return report;
    }
  }
  return report;
}

AxiomReport check_trans(const PreferenceRelation& pr) {
  const auto& menu = pr.menu();
  menu.require_rich();
  AxiomReport report;
  report.axiom = AxiomId::Trans;
  const auto atoms = all_atoms(menu.signature());
  const std::size_t n = atoms.size();
  for (auto w : atoms) {
    std::vector<bool> close(n * n);
    for (auto x : atoms) {
      for (auto y : atoms) close[x.mask * n + y.mask] = closeness(pr, w, x, y);
    }
    for (auto x : atoms) {
      for (auto y : atoms) {
        for (auto z : atoms) {
          ++report.coverage.count;
          if (close[x.mask * n + y.mask] && close[y.mask * n + z.mask] && !close[x.mask * n + z.mask]) {
            report.passed = false;
            report.witness = TransWitness{w, x, y, z};
            return report;
          }
        }
      }
    }
  }
  return report;
}

AxiomReport check_canc(const PreferenceRelation& pr, CancOptions options) {
  if (options.max_n < 1) throw Error(ErrorKind::PreconditionViolation, "max_n must be at least 1");
  const auto& menu = pr.menu();
  const std::size_t atoms = menu.signature().atom_count();
  Rng rng(options.seed);
  AxiomReport report;
  report.axiom = AxiomId::Canc;
  report.coverage.kind = Coverage::Kind::Sampled;
  report.coverage.seed = options.seed;

  // n = 1: two syntactically different actions with the same table must be indifferent.
  for (std::size_t k = 0; k < options.equal_table_sample; ++k) {
    const auto f = random_act(menu, rng);
    ++report.coverage.count;
    if (pr.compare(canonical_act(f, menu), alternative_act(f, menu)) != 0) {
      report.passed = false;
      report.witness = CancWitness{{f}, {f}};
      return report;
    }
  }

  if (options.max_n < 2) return report;
  const std::uint64_t sizes = options.max_n - 1;
  for (std::size_t n = 2; n <= options.max_n; ++n) {
    std::uint64_t quota = options.budget / sizes + (n - 2 < options.budget % sizes ? 1 : 0);
    std::vector<CompiledAct> alphas(n), betas(n);
    std::vector<int> verdict(n);
    std::vector<std::uint32_t> column(n);
    for (std::uint64_t t = 0; t < quota; ++t) {
      for (auto& a : alphas) a = random_act(menu, rng);
      for (auto& b : betas) b.choice.assign(atoms, 0);
      for (std::size_t x = 0; x < atoms; ++x) {
        for (std::size_t i = 0; i < n; ++i) column[i] = alphas[i].choice[x];
        rng.shuffle(column);
        for (std::size_t i = 0; i < n; ++i) betas[i].choice[x] = column[i];
      }
      ++report.coverage.count;
      for (std::size_t i = 0; i < n; ++i) {
        const auto c = pr.compare(alphas[i], betas[i]);
        verdict[i] = c > 0 ? 1 : (c < 0 ? -1 : 0);
      }
      // orientation +1 reads the tuple as given, -1 swaps the two lists.
      for (int orientation : {1, -1}) {
        for (std::size_t last = 0; last < n; ++last) {
          if (orientation * verdict[last] <= 0) continue;
          bool premises = true;
          for (std::size_t i = 0; i < n && premises; ++i) {
            if (i != last && orientation * verdict[i] < 0) premises = false;
          }
          if (!premises) continue;
          CancWitness w;
          for (std::size_t i = 0; i <= n; ++i) {
            if (i == last) continue;
            const std::size_t j = i == n ? last : i;
            w.alphas.push_back(orientation > 0 ? alphas[j] : betas[j]);
            w.betas.push_back(orientation > 0 ? betas[j] : alphas[j]);
          }
          report.passed = false;
          report.witness = std::move(w);
          return report;
        }
      }
    }
  }
  return report;
}

std::vector<AxiomReport> derive_consequences(const PreferenceRelation& pr,
                                             ConsequenceOptions options) {
  const auto& menu = pr.menu();
  const std::size_t atoms = menu.signature().atom_count();
  Rng rng(options.seed);

  std::vector<CompiledAct> sample;
  std::set<CompiledAct> seen;
  for (const auto& [better, worse] : pr.strict_overrides()) {
    for (const auto* f : {&better, &worse}) {
      if (seen.insert(*f).second) sample.push_back(*f);
    }
  }
  for (std::size_t k = 0; k < options.sample; ++k) {
    auto f = random_act(menu, rng);
    if (seen.insert(f).second) sample.push_back(std::move(f));
  }
  const Coverage sampled{Coverage::Kind::Sampled, options.seed, 0};

  AxiomReport reflexive{AxiomId::Reflexivity, true, sampled, std::nullopt};
  for (const auto& f : sample) {
    ++reflexive.coverage.count;
    if (pr.compare(f, f) != 0) {
      reflexive.passed = false;
      reflexive.witness = ReflexivityWitness{f};
      break;
    }
  }

  AxiomReport transitive{AxiomId::Transitivity, true, sampled, std::nullopt};
  const std::size_t m = sample.size();
  std::vector<bool> geq(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) geq[i * m + j] = pr.at_least(sample[i], sample[j]);
  }
  for (std::size_t a = 0; a < m && transitive.passed; ++a) {
    for (std::size_t b = 0; b < m && transitive.passed; ++b) {
      if (!geq[a * m + b]) continue;
      for (std::size_t c = 0; c < m; ++c) {
        ++transitive.coverage.count;
        if (geq[b * m + c] && !geq[a * m + c]) {
          transitive.passed = false;
          transitive.witness = TransitivityWitness{sample[a], sample[b], sample[c]};
          break;
        }
      }
    }
  }

  AxiomReport independent{AxiomId::Independence, true, sampled, std::nullopt};
  for (std::uint64_t k = 0; k < options.independence_samples; ++k) {
    TruthSet cond(atoms);
    for (std::size_t x = 0; x < atoms; ++x) {
      if (rng.below(2) == 1) cond.insert(Atom{static_cast<std::uint32_t>(x)});
    }
    IndependenceWitness w{cond, random_act(menu, rng), random_act(menu, rng),
                          random_act(menu, rng), random_act(menu, rng)};
    ++independent.coverage.count;
    if (branch_compare(pr, w.condition, w.alpha, w.beta, w.gamma) !=
        branch_compare(pr, w.condition, w.alpha, w.beta, w.gamma_prime)) {
      independent.passed = false;
      independent.witness = std::move(w);
      break;
    }
  }
  return {reflexive, transitive, independent};
}

}  // namespace dorep
