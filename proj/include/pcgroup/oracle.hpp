#pragma once

// Brute-force ground truth.  A BruteGroup memoizes the full multiplication
// table of a presentation (the only shared kernel is `multiply`); every
// structural object is then recomputed from the table alone — inverses by
// row search, orders by cycle length, subgroups by product closure over
// element sets — so the echelon machinery can be cross-checked end to end.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "pcgroup/constructions.hpp"
#include "pcgroup/subgroup.hpp"

namespace pcg {

class BruteGroup {
 public:
  explicit BruteGroup(const PcPresentation& P,
                      std::uint64_t max_memo_order = std::uint64_t{1} << 12)
      : owner_(P) {
    detail::check_size_guard(P, "BruteGroup");
    if (P.order() > max_memo_order)
      throw size_limit_error("BruteGroup: order " + std::to_string(P.order()) +
                             " exceeds the memo bound " +
                             std::to_string(max_memo_order));
    const std::size_t n = static_cast<std::size_t>(P.order());
    // enumerate normal forms with a private odometer, least-significant last
    std::vector<std::uint32_t> exps(P.rank(), 0);
    elems_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      elems_.push_back(Element{exps});
      for (std::size_t t = exps.size(); t-- > 0;) {
        if (++exps[t] < P.p()) break;
        exps[t] = 0;
      }
    }
    table_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        table_[i * n + j] =
            static_cast<std::uint16_t>(index_of(multiply(P, elems_[i], elems_[j])));
    inv_.assign(n, n);  // n = sentinel for "no two-sided inverse found"
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (mult(i, j) == 0 && mult(j, i) == 0) {
          inv_[i] = j;
          break;
        }
  }

  const PcPresentation& group() const { return owner_; }
  std::size_t size() const { return elems_.size(); }
  const Element& element(std::size_t i) const { return elems_[i]; }

  // mixed-radix rank of a normal form, independent of the core's indexing
  std::size_t index_of(const Element& a) const {
    detail::check_element(owner_, a, "BruteGroup");
    std::size_t idx = 0;
    for (const std::uint32_t e : a.exps) idx = idx * owner_.p() + e;
    return idx;
  }

  std::size_t mult(std::size_t i, std::size_t j) const {
    return table_[i * size() + j];
  }
  bool has_inverse(std::size_t i) const { return inv_[i] != size(); }
  std::size_t inv(std::size_t i) const { return inv_[i]; }

  std::size_t pow(std::size_t i, std::uint64_t e) const {
    std::size_t r = 0;
    for (std::uint64_t s = 0; s < e; ++s) r = mult(r, i);
    return r;
  }

  std::uint64_t order_of(std::size_t i) const {
    std::uint64_t ord = 1;
    std::size_t r = i;
    while (r != 0) {
      r = mult(r, i);
      ++ord;
    }
    return ord;
  }

  // [a,b] = a^{-1} b^{-1} a b, all factors taken from the table
  std::size_t comm(std::size_t i, std::size_t j) const {
    return mult(mult(mult(inv(i), inv(j)), i), j);
  }
  // b^{-1} a b
  std::size_t conj(std::size_t i, std::size_t j) const {
    return mult(mult(inv(j), i), j);
  }

 private:
  // owned copy: the oracle must stay valid when built from a temporary
  PcPresentation owner_;
  std::vector<Element> elems_;
  std::vector<std::uint16_t> table_;
  std::vector<std::size_t> inv_;
};

struct CayleyReport {
  bool pass = true;
  bool exhaustive = true;
  std::uint64_t triples = 0;
  std::uint64_t violation_count = 0;
  std::vector<std::string> violations;  // capped sample of failures
};

namespace detail {

inline void cayley_violation(CayleyReport& rep, const std::string& what) {
  rep.pass = false;
  ++rep.violation_count;
  if (rep.violations.size() < 8) rep.violations.push_back(what);
}

}  // namespace detail

// Group-axiom audit of the memoized table: identity, cancellation, two-sided
// inverses, and associativity (every triple up to order 3^5, then a seeded
// random sample of 10^4 triples).
inline CayleyReport cayley_sanity(const BruteGroup& B, std::uint64_t seed = 1) {
  CayleyReport rep;
  const std::size_t n = B.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (B.mult(0, i) != i || B.mult(i, 0) != i)
      detail::cayley_violation(
          rep, "identity axiom fails at " + detail::exps_string(B.element(i)));
    if (!B.has_inverse(i))
      detail::cayley_violation(
          rep, "no two-sided inverse for " + detail::exps_string(B.element(i)));
  }
  std::vector<char> seen(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t j = 0; j < n; ++j) seen[B.mult(i, j)] = 1;
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
      detail::cayley_violation(rep, "row of " +
                                        detail::exps_string(B.element(i)) +
                                        " is not a permutation");
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t j = 0; j < n; ++j) seen[B.mult(j, i)] = 1;
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
      detail::cayley_violation(rep, "column of " +
                                        detail::exps_string(B.element(i)) +
                                        " is not a permutation");
  }
  const auto check_triple = [&](std::size_t i, std::size_t j, std::size_t k) {
    ++rep.triples;
    if (B.mult(B.mult(i, j), k) != B.mult(i, B.mult(j, k)))
      detail::cayley_violation(rep, "associativity fails at (" +
                                        detail::exps_string(B.element(i)) +
                                        ", " +
                                        detail::exps_string(B.element(j)) +
                                        ", " +
                                        detail::exps_string(B.element(k)) +
                                        ")");
  };
  if (B.size() <= 243) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) check_triple(i, j, k);
  } else {
    rep.exhaustive = false;
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 10000; ++t)
      check_triple(static_cast<std::size_t>(rng() % n),
                   static_cast<std::size_t>(rng() % n),
                   static_cast<std::size_t>(rng() % n));
  }
  return rep;
}

namespace detail {

// product closure of an index set, by table lookups only
inline std::vector<std::size_t> brute_close_indices(
    const BruteGroup& B, std::vector<std::size_t> seeds) {
  std::vector<char> in(B.size(), 0);
  std::vector<std::size_t> members{0};
  in[0] = 1;
  for (const std::size_t s : seeds)
    if (!in[s]) {
      in[s] = 1;
      members.push_back(s);
    }
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = 0; b < members.size(); ++b) {
      const std::size_t pr = B.mult(members[a], members[b]);
      if (!in[pr]) {
        in[pr] = 1;
        members.push_back(pr);
      }
    }
  std::sort(members.begin(), members.end());
  return members;
}

inline std::vector<Element> indices_to_elements(
    const BruteGroup& B, const std::vector<std::size_t>& idx) {
  std::vector<Element> out;
  out.reserve(idx.size());
  for (const std::size_t i : idx) out.push_back(B.element(i));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::size_t> elements_to_indices(
    const BruteGroup& B, const std::vector<Element>& els) {
  std::vector<std::size_t> idx;
  idx.reserve(els.size());
  for (const Element& e : els) idx.push_back(B.index_of(e));
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace detail

// {[a,b] : a,b in G} as a sorted element list, by the 'order squared' loop
inline std::vector<Element> brute_commutator_set(const BruteGroup& B) {
  std::vector<char> in(B.size(), 0);
  for (std::size_t i = 0; i < B.size(); ++i)
    for (std::size_t j = 0; j < B.size(); ++j) in[B.comm(i, j)] = 1;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < B.size(); ++i)
    if (in[i]) idx.push_back(i);
  return detail::indices_to_elements(B, idx);
}

// Exhaustively recomputed subgroups, selected by name:
//   "close"               a = generating elements
//   "center"              no arguments
//   "derived"             no arguments
//   "power"               a = subgroup element set (empty = whole), k = i
//   "section_centralizer" a = element set of L, b = element set of N
inline std::vector<Element> brute_subgroup(const BruteGroup& B,
                                           const std::string& kind,
                                           const std::vector<Element>& a = {},
                                           const std::vector<Element>& b = {},
                                           std::uint32_t k = 0) {
  if (kind == "close")
    return detail::indices_to_elements(
        B, detail::brute_close_indices(B, detail::elements_to_indices(B, a)));
  if (kind == "center") {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < B.size(); ++i) {
      bool central = true;
      for (std::size_t j = 0; j < B.size() && central; ++j)
        central = B.mult(i, j) == B.mult(j, i);
      if (central) idx.push_back(i);
    }
    return detail::indices_to_elements(B, idx);
  }
  if (kind == "derived") {
    std::vector<std::size_t> seeds;
    for (std::size_t i = 0; i < B.size(); ++i)
      for (std::size_t j = 0; j < B.size(); ++j)
        seeds.push_back(B.comm(i, j));
    return detail::indices_to_elements(B,
                                       detail::brute_close_indices(B, seeds));
  }
  if (kind == "power") {
    std::vector<std::size_t> domain;
    if (a.empty()) {
      domain.resize(B.size());
      for (std::size_t i = 0; i < B.size(); ++i) domain[i] = i;
    } else {
      domain = detail::elements_to_indices(B, a);
    }
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) q *= B.group().p();
    std::vector<std::size_t> seeds;
    for (const std::size_t i : domain) seeds.push_back(B.pow(i, q));
    return detail::indices_to_elements(B,
                                       detail::brute_close_indices(B, seeds));
  }
  if (kind == "section_centralizer") {
    const std::vector<std::size_t> l = detail::elements_to_indices(B, a);
    std::unordered_set<std::size_t> nset;
    for (const Element& e : b) nset.insert(B.index_of(e));
    nset.insert(0);
    std::vector<std::size_t> idx;
    for (std::size_t g = 0; g < B.size(); ++g) {
      bool ok = true;
      for (const std::size_t li : l)
        if (!nset.count(B.comm(g, li))) {
          ok = false;
          break;
        }
      if (ok) idx.push_back(g);
    }
    return detail::indices_to_elements(B, idx);
  }
  throw input_error(
      "brute_subgroup: unknown kind '" + kind +
      "' (known: close, center, derived, power, section_centralizer)");
}

struct Mismatch {
  std::string operation;
  std::string arguments;
  std::vector<Element> only_lattice;  // produced by the echelon machinery only
  std::vector<Element> only_oracle;   // produced by the table only
};

struct DiffReport {
  std::uint64_t checks = 0;
  std::vector<Mismatch> mismatches;
  std::vector<std::string> skipped;
  bool agree = true;
};

namespace detail {

inline void diff_sets(DiffReport& rep, const std::string& op,
                      const std::string& args,
                      const std::vector<Element>& lattice,
                      const std::vector<Element>& oracle) {
  ++rep.checks;
  if (lattice == oracle) return;
  Mismatch m{op, args, {}, {}};
  std::set_difference(lattice.begin(), lattice.end(), oracle.begin(),
                      oracle.end(), std::back_inserter(m.only_lattice));
  std::set_difference(oracle.begin(), oracle.end(), lattice.begin(),
                      lattice.end(), std::back_inserter(m.only_oracle));
  rep.agree = false;
  rep.mismatches.push_back(std::move(m));
}

inline void diff_scalar(DiffReport& rep, const std::string& op,
                        const std::string& args, const std::string& lattice,
                        const std::string& oracle) {
  ++rep.checks;
  if (lattice == oracle) return;
  rep.agree = false;
  rep.mismatches.push_back(
      Mismatch{op, args + ": lattice " + lattice + ", oracle " + oracle,
               {}, {}});
}

// all subgroups as sorted element-index sets, by coset-pruned closure over
// raw sets (no echelon forms involved)
inline std::vector<std::vector<std::size_t>> brute_all_subgroups(
    const BruteGroup& B) {
  std::set<std::vector<std::size_t>> found;
  std::vector<std::vector<std::size_t>> work{{0}};
  found.insert(work.front());
  std::vector<char> covered(B.size());
  for (std::size_t w = 0; w < work.size(); ++w) {
    const std::vector<std::size_t> s = work[w];
    std::fill(covered.begin(), covered.end(), 0);
    for (std::size_t x = 0; x < B.size(); ++x) {
      if (covered[x]) continue;
      for (const std::size_t m : s) covered[B.mult(m, x)] = 1;
      std::vector<std::size_t> gens = s;
      gens.push_back(x);
      std::vector<std::size_t> t = brute_close_indices(B, gens);
      if (t.size() == s.size()) continue;
      if (found.insert(t).second) work.push_back(std::move(t));
    }
  }
  return {found.begin(), found.end()};
}

// all subgroups whose elements lie inside the given sorted index set
inline std::vector<std::vector<std::size_t>> brute_subgroups_within(
    const BruteGroup& B, const std::vector<std::size_t>& domain) {
  std::set<std::vector<std::size_t>> found;
  std::vector<std::vector<std::size_t>> work{{0}};
  found.insert(work.front());
  for (std::size_t w = 0; w < work.size(); ++w) {
    const std::vector<std::size_t> s = work[w];
    for (const std::size_t x : domain) {
      if (std::binary_search(s.begin(), s.end(), x)) continue;
      std::vector<std::size_t> gens = s;
      gens.push_back(x);
      std::vector<std::size_t> t = brute_close_indices(B, gens);
      if (found.insert(t).second) work.push_back(std::move(t));
    }
  }
  return {found.begin(), found.end()};
}

inline bool brute_is_normal(const BruteGroup& B,
                            const std::vector<std::size_t>& sub) {
  std::unordered_set<std::size_t> in(sub.begin(), sub.end());
  for (const std::size_t s : sub)
    for (std::size_t g = 0; g < B.size(); ++g)
      if (!in.count(B.conj(s, g))) return false;
  return true;
}

inline bool brute_is_abelian(const BruteGroup& B,
                             const std::vector<std::size_t>& sub) {
  for (const std::size_t x : sub)
    for (const std::size_t y : sub)
      if (B.mult(x, y) != B.mult(y, x)) return false;
  return true;
}

inline bool subset_of(const std::vector<std::size_t>& small,
                      const std::vector<std::size_t>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace detail

// Recompute every lattice-level object from the multiplication table and
// compare; any disagreement is listed as a symmetric difference.
inline DiffReport diff_report(const PcPresentation& P) {
  const BruteGroup B(P);
  DiffReport rep;
  const std::size_t n = B.size();
  const std::uint32_t p = P.p();

  // element enumeration order
  detail::diff_sets(rep, "enumerate_elements", "", enumerate_elements(P),
                    [&] {
                      std::vector<Element> e;
                      for (std::size_t i = 0; i < n; ++i)
                        e.push_back(B.element(i));
                      return e;
                    }());

  // element arithmetic against the table
  for (std::size_t i = 0; i < n; ++i) {
    const Element a = B.element(i);
    const Element li = inverse(P, a);
    const Element oi = B.element(B.inv(i));
    ++rep.checks;
    if (li != oi)
      detail::diff_scalar(rep, "inverse", detail::exps_string(a),
                          detail::exps_string(li), detail::exps_string(oi));
    const std::uint64_t lo = element_order(P, a);
    const std::uint64_t oo = B.order_of(i);
    ++rep.checks;
    if (lo != oo)
      detail::diff_scalar(rep, "element_order", detail::exps_string(a),
                          std::to_string(lo), std::to_string(oo));
  }
  // explicit pairwise diff at small orders; above that the per-x commutator
  // set comparison below still exercises every [x,g] pair as a set
  if (n <= 64) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Element lc = commutator(P, B.element(i), B.element(j));
        const Element oc = B.element(B.comm(i, j));
        ++rep.checks;
        if (lc != oc)
          detail::diff_scalar(rep, "commutator",
                              detail::exps_string(B.element(i)) + "," +
                                  detail::exps_string(B.element(j)),
                              detail::exps_string(lc),
                              detail::exps_string(oc));
        const Element lj = conjugate(P, B.element(i), B.element(j));
        const Element oj = B.element(B.conj(i, j));
        ++rep.checks;
        if (lj != oj)
          detail::diff_scalar(rep, "conjugate",
                              detail::exps_string(B.element(i)) + "," +
                                  detail::exps_string(B.element(j)),
                              detail::exps_string(lj),
                              detail::exps_string(oj));
      }
  }

  // named subgroups
  const Subgroup whole = whole_group(P);
  const Subgroup zen = center(P);
  const Subgroup der = derived_subgroup(P);
  detail::diff_sets(rep, "center", "", elements(zen),
                    brute_subgroup(B, "center"));
  detail::diff_sets(rep, "derived_subgroup", "", elements(der),
                    brute_subgroup(B, "derived"));
  detail::diff_sets(rep, "close", "commutator set",
                    elements(close(P, brute_commutator_set(B))),
                    brute_subgroup(B, "derived"));

  // cyclic closures
  for (std::size_t i = 0; i < n; ++i)
    detail::diff_sets(rep, "close", detail::exps_string(B.element(i)),
                      elements(close(P, {B.element(i)})),
                      brute_subgroup(B, "close", {B.element(i)}));

  // lower central series, term by term
  {
    const std::vector<Subgroup> lcs = lower_central_series(P);
    std::vector<std::vector<Element>> brute_terms;
    std::vector<std::size_t> gamma(n);
    for (std::size_t i = 0; i < n; ++i) gamma[i] = i;
    brute_terms.push_back(detail::indices_to_elements(B, gamma));
    while (gamma.size() > 1) {
      std::vector<std::size_t> seeds;
      for (const std::size_t x : gamma)
        for (std::size_t g = 0; g < n; ++g) seeds.push_back(B.comm(x, g));
      std::vector<std::size_t> next = detail::brute_close_indices(B, seeds);
      if (next.size() == gamma.size()) break;
      gamma = std::move(next);
      brute_terms.push_back(detail::indices_to_elements(B, gamma));
    }
    detail::diff_scalar(rep, "lower_central_series", "length",
                        std::to_string(lcs.size()),
                        std::to_string(brute_terms.size()));
    for (std::size_t t = 0; t < lcs.size() && t < brute_terms.size(); ++t)
      detail::diff_sets(rep, "lower_central_series", "term " +
                        std::to_string(t + 1),
                        elements(lcs[t]), brute_terms[t]);
  }

  // power subgroups of the whole group and of the derived subgroup
  for (std::uint32_t k = 1;; ++k) {
    const Subgroup gp = power_subgroup(whole, k);
    detail::diff_sets(rep, "power_subgroup",
                      "whole, i=" + std::to_string(k), elements(gp),
                      brute_subgroup(B, "power", {}, {}, k));
    if (gp.trivial()) break;
  }
  detail::diff_sets(rep, "power_subgroup", "derived, i=1",
                    elements(power_subgroup(der, 1)),
                    brute_subgroup(B, "power", elements(der), {}, 1));

  // section centralizers the checkers rely on
  detail::diff_sets(rep, "section_centralizer", "whole over trivial",
                    elements(section_centralizer(P, whole, trivial_subgroup(P))),
                    brute_subgroup(B, "section_centralizer",
                                   elements(whole), {}));
  if (!der.trivial()) {
    detail::diff_sets(rep, "section_centralizer", "derived over trivial",
                      elements(section_centralizer(P, der, trivial_subgroup(P))),
                      brute_subgroup(B, "section_centralizer",
                                     elements(der), {}));
    detail::diff_sets(
        rep, "section_centralizer", "derived over derived powers",
        elements(section_centralizer(P, der, power_subgroup(der, 1))),
        brute_subgroup(B, "section_centralizer", elements(der),
                       elements(power_subgroup(der, 1))));
    detail::diff_sets(rep, "section_centralizer", "whole over derived",
                      elements(section_centralizer(P, whole, der)),
                      brute_subgroup(B, "section_centralizer",
                                     elements(whole), elements(der)));
  }

  // membership
  {
    const std::vector<Element> der_set = brute_subgroup(B, "derived");
    for (std::size_t i = 0; i < n; ++i) {
      const Element a = B.element(i);
      const bool lat = contains(der, a);
      const bool ora =
          std::binary_search(der_set.begin(), der_set.end(), a);
      ++rep.checks;
      if (lat != ora)
        detail::diff_scalar(rep, "contains",
                            "derived, " + detail::exps_string(a),
                            lat ? "yes" : "no", ora ? "yes" : "no");
    }
  }

  // chief series: structural validation of every term against the table
  {
    const std::vector<Subgroup> chief = canonical_chief_series(P);
    ++rep.checks;
    if (chief.front() != whole || !chief.back().trivial()) {
      rep.agree = false;
      rep.mismatches.push_back(
          Mismatch{"canonical_chief_series", "endpoints wrong", {}, {}});
    }
    for (std::size_t t = 0; t + 1 < chief.size(); ++t) {
      const std::vector<std::size_t> hi =
          detail::elements_to_indices(B, elements(chief[t]));
      const std::vector<std::size_t> lo =
          detail::elements_to_indices(B, elements(chief[t + 1]));
      ++rep.checks;
      if (lo.size() * p != hi.size() || !detail::subset_of(lo, hi) ||
          !detail::brute_is_normal(B, lo)) {
        rep.agree = false;
        rep.mismatches.push_back(Mismatch{
            "canonical_chief_series",
            "term " + std::to_string(t + 2) + " is not a normal step of index " +
                std::to_string(p),
            {}, {}});
      }
    }
  }

  // full subgroup lattice as sets of element sets (small orders)
  if (n <= 64) {
    const std::vector<std::vector<std::size_t>> brute_subs =
        detail::brute_all_subgroups(B);
    const std::vector<Subgroup> lattice_subs = all_subgroups(P);
    detail::diff_scalar(rep, "all_subgroups", "count",
                        std::to_string(lattice_subs.size()),
                        std::to_string(brute_subs.size()));
    std::set<std::vector<Element>> brute_sets;
    for (const std::vector<std::size_t>& s : brute_subs)
      brute_sets.insert(detail::indices_to_elements(B, s));
    std::uint64_t missing = 0;
    for (const Subgroup& s : lattice_subs) {
      ++rep.checks;
      if (!brute_sets.count(elements(s))) ++missing;
    }
    if (missing != 0) {
      rep.agree = false;
      rep.mismatches.push_back(Mismatch{
          "all_subgroups",
          std::to_string(missing) + " lattice subgroups unseen by the oracle",
          {}, {}});
    }

    // per-subgroup structure: normality, index, closure round-trip
    for (const Subgroup& s : lattice_subs) {
      const std::vector<Element> sset = elements(s);
      const std::vector<std::size_t> idx = detail::elements_to_indices(B, sset);
      const bool lat_norm = is_normal(s);
      const bool ora_norm = detail::brute_is_normal(B, idx);
      ++rep.checks;
      if (lat_norm != ora_norm)
        detail::diff_scalar(rep, "is_normal",
                            "subgroup of order " + std::to_string(s.order()),
                            lat_norm ? "yes" : "no", ora_norm ? "yes" : "no");
      detail::diff_scalar(rep, "index",
                          "whole over order " + std::to_string(s.order()),
                          std::to_string(index(whole, s)),
                          std::to_string(n / idx.size()));
      detail::diff_sets(rep, "close", "subgroup generators round-trip",
                        elements(close(P, s.generators())), sset);
    }

    // maximal proper normal-in-G subgroups of the whole group
    if (n > 1) {
      std::vector<std::vector<Element>> bru;
      for (const std::vector<std::size_t>& s : brute_subs)
        if (s.size() * p == n && detail::brute_is_normal(B, s))
          bru.push_back(detail::indices_to_elements(B, s));
      std::sort(bru.begin(), bru.end());
      std::vector<std::vector<Element>> lat;
      for (const Subgroup& s : maximal_normal_under(P, whole))
        lat.push_back(elements(s));
      std::sort(lat.begin(), lat.end());
      ++rep.checks;
      if (lat != bru) {
        rep.agree = false;
        rep.mismatches.push_back(Mismatch{
            "maximal_normal_under",
            "whole: families differ (" + std::to_string(lat.size()) +
                " lattice vs " + std::to_string(bru.size()) + " oracle)",
            {}, {}});
      }
    }
  }

  // maximal normal-in-G subgroups of the derived subgroup: a maximal
  // G-normal subgroup sits under a G-chief factor, so it has index p
  if (!der.trivial()) {
    const std::vector<std::size_t> dIdx =
        detail::elements_to_indices(B, elements(der));
    std::vector<std::vector<Element>> bru;
    for (const std::vector<std::size_t>& s :
         detail::brute_subgroups_within(B, dIdx))
      if (s.size() * p == dIdx.size() && detail::brute_is_normal(B, s))
        bru.push_back(detail::indices_to_elements(B, s));
    std::sort(bru.begin(), bru.end());
    std::vector<std::vector<Element>> lat;
    for (const Subgroup& s : maximal_normal_under(P, der))
      lat.push_back(elements(s));
    std::sort(lat.begin(), lat.end());
    ++rep.checks;
    if (lat != bru) {
      rep.agree = false;
      rep.mismatches.push_back(Mismatch{
          "maximal_normal_under",
          "derived: families differ (" + std::to_string(lat.size()) +
              " lattice vs " + std::to_string(bru.size()) + " oracle)",
          {}, {}});
    }
  }

  // Frattini subgroup via the p-group identity: closure of p-th powers
  // together with all commutators
  {
    std::vector<std::size_t> seeds;
    for (std::size_t i = 0; i < n; ++i) seeds.push_back(B.pow(i, p));
    for (const Element& c : brute_commutator_set(B))
      seeds.push_back(B.index_of(c));
    const std::vector<std::size_t> phi =
        detail::brute_close_indices(B, seeds);
    const auto [frat, rank] = frattini_rank(whole);
    detail::diff_sets(rep, "frattini", "", elements(frat),
                      detail::indices_to_elements(B, phi));
    std::uint32_t brank = 0;
    for (std::uint64_t q = n / phi.size(); q > 1; q /= p) ++brank;
    detail::diff_scalar(rep, "frattini", "rank", std::to_string(rank),
                        std::to_string(brank));
  }

  // intersections over a small family of named subgroups
  {
    std::vector<Subgroup> fam{zen, der, power_subgroup(whole, 1)};
    for (std::uint32_t g = 0; g < P.rank(); ++g)
      fam.push_back(close(P, {generator(P, g)}));
    for (std::size_t a = 0; a < fam.size(); ++a)
      for (std::size_t b = a + 1; b < fam.size(); ++b) {
        std::vector<Element> meet;
        const std::vector<Element> ea = elements(fam[a]);
        const std::vector<Element> eb = elements(fam[b]);
        std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(),
                              std::back_inserter(meet));
        detail::diff_sets(rep, "intersection",
                          "pair " + std::to_string(a) + "," +
                              std::to_string(b),
                          elements(intersection(fam[a], fam[b])), meet);
      }
  }

  // structure predicates on the whole group and the derived subgroup
  {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    detail::diff_scalar(rep, "is_abelian", "whole",
                        is_abelian(whole) ? "yes" : "no",
                        detail::brute_is_abelian(B, all) ? "yes" : "no");
    const std::vector<Element> hp = brute_subgroup(
        B, "power", {}, {}, p == 2 ? 2u : 1u);
    detail::diff_scalar(
        rep, "is_powerful", "whole", is_powerful(whole) ? "yes" : "no",
        detail::subset_of(
            detail::elements_to_indices(B, brute_subgroup(B, "derived")),
            detail::elements_to_indices(B, hp))
            ? "yes"
            : "no");
  }

  // commutator sets with fixed first entry, and the witness scan
  {
    const std::vector<Element> derived_set = elements(der);
    std::vector<Element> brute_witnesses;
    std::vector<std::size_t> kx;
    for (std::size_t i = 0; i < n; ++i) {
      kx.clear();
      std::vector<char> in(n, 0);
      for (std::size_t g = 0; g < n; ++g) in[B.comm(i, g)] = 1;
      for (std::size_t t = 0; t < n; ++t)
        if (in[t]) kx.push_back(t);
      const std::vector<Element> brute_kx = detail::indices_to_elements(B, kx);
      const CommutatorSet lat = commutator_set_Kx(P, B.element(i));
      detail::diff_sets(rep, "commutator_set_Kx",
                        detail::exps_string(B.element(i)), lat.set, brute_kx);
      detail::diff_sets(rep, "commutator_set_Kx span",
                        detail::exps_string(B.element(i)), elements(lat.span),
                        brute_subgroup(B, "close", brute_kx));
      const bool brute_eq = brute_kx == derived_set;
      detail::diff_scalar(rep, "commutator_set_Kx equals_derived",
                          detail::exps_string(B.element(i)),
                          lat.equals_derived ? "yes" : "no",
                          brute_eq ? "yes" : "no");
      if (brute_eq) brute_witnesses.push_back(B.element(i));
    }
    std::sort(brute_witnesses.begin(), brute_witnesses.end());
    detail::diff_sets(rep, "witness_exhaustive", "", witness_exhaustive(P),
                      brute_witnesses);
  }

  return rep;
}

}  // namespace pcg
