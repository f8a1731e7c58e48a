// Witness machinery over the derived subgroup of a pc-presented p-group:
// commutator sets K_x = {[x,g] : g in G}, the centralizer families whose
// union obstructs single-element coverage, constructive witness selection
// with a branch trace, decomposition of two-generator metacyclic subgroups,
// verifiers for the structural facts the selection relies on, and a
// per-group coverage audit.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pcgroup/subgroup.hpp"

namespace pcg {

namespace detail {

inline std::string exps_string(const Element& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.exps.size(); ++i) {
    if (i != 0) s += ",";
    s += std::to_string(a.exps[i]);
  }
  return s + ")";
}

inline std::uint64_t upow(std::uint64_t base, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e-- != 0) r *= base;
  return r;
}

/** Exponent e with v = base^e (v a power of base). */
inline std::uint32_t plog(std::uint64_t v, std::uint32_t base) {
  std::uint32_t e = 0;
  while (v > 1) {
    v /= base;
    ++e;
  }
  return e;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Cached element table

/** All elements in lexicographic order with precomputed inverses, so a full
 *  commutator scan costs three multiplications per pair. */
class GroupScan {
 public:
  explicit GroupScan(const PcPresentation& P)
      : P_(&P), elems_(enumerate_elements(P)) {
    inv_.reserve(elems_.size());
    for (const Element& a : elems_) inv_.push_back(inverse(P, a));
  }

  const PcPresentation& group() const { return *P_; }
  const std::vector<Element>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  const Element& at(std::size_t i) const { return elems_[i]; }
  const Element& inverse_at(std::size_t i) const { return inv_[i]; }
  std::size_t index_of(const Element& a) const {
    return static_cast<std::size_t>(element_index(*P_, a));
  }

  /** [elems[xi], elems[gi]] = (x^-1 g^-1 x) g. */
  Element commutator_at(std::size_t xi, std::size_t gi) const {
    return multiply(
        *P_, multiply(*P_, multiply(*P_, inv_[xi], inv_[gi]), elems_[xi]),
        elems_[gi]);
  }

 private:
  const PcPresentation* P_;
  std::vector<Element> elems_;
  std::vector<Element> inv_;
};

// ---------------------------------------------------------------------------
// Commutator sets

/** The set K_x(H) = {[x,h] : h in H} together with the subgroup it
 *  generates. */
struct CommutatorSet {
  Element base;                // x
  Subgroup domain;             // H
  std::vector<Element> set;    // sorted, duplicate-free
  Subgroup span;               // subgroup generated by the set
  bool equals_derived = false; // set coincides with the derived subgroup
};

inline CommutatorSet commutator_set_Kx(const PcPresentation& P, const Element& x,
                                    const Subgroup& H) {
  detail::check_owner(P, H, "commutator_set_Kx");
  detail::check_element(P, x, "commutator_set_Kx");
  std::set<Element> acc;
  const Element xinv = inverse(P, x);
  for (const Element& h : elements(H))
    acc.insert(multiply(
        P, multiply(P, multiply(P, xinv, inverse(P, h)), x), h));
  CommutatorSet out;
  out.base = x;
  out.domain = H;
  out.set.assign(acc.begin(), acc.end());
  out.span = close(P, out.set);
  out.equals_derived = (out.set == elements(derived_subgroup(P)));
  return out;
}

inline CommutatorSet commutator_set_Kx(const PcPresentation& P,
                                    const Element& x) {
  return commutator_set_Kx(P, x, whole_group(P));
}

// ---------------------------------------------------------------------------
// Exhaustive witness scan

namespace detail {

struct ExhaustiveScan {
  std::vector<Element> full;  // x whose commutator set is all of the target
  bool union_covers = false;  // the union over all x equals the target set
};

/** For every x, decide whether {[x,g] : g in G} equals the element set of
 *  `target`; also record whether the union over all x covers the target.
 *  Every commutator must land inside the target (it is the derived
 *  subgroup in all uses), otherwise the scan aborts. */
inline ExhaustiveScan exhaustive_commutator_scan(const GroupScan& scan,
                                                 const Subgroup& target) {
  const std::size_t order = scan.size();
  std::vector<char> in_target(order, 0);
  for (const Element& t : elements(target)) in_target[scan.index_of(t)] = 1;
  const std::uint64_t want = target.order();
  std::vector<std::uint32_t> stamp(order, 0);
  std::vector<char> covered(order, 0);
  std::uint32_t tick = 0;
  ExhaustiveScan out;
  for (std::size_t xi = 0; xi < order; ++xi) {
    ++tick;
    std::uint64_t hit = 0;
    for (std::size_t gi = 0; gi < order; ++gi) {
      const Element c = scan.commutator_at(xi, gi);
      const std::size_t ci = scan.index_of(c);
      if (!in_target[ci])
        throw invariant_violation(
            "exhaustive commutator scan: a commutator escaped the derived "
            "subgroup");
      covered[ci] = 1;
      if (stamp[ci] != tick) {
        stamp[ci] = tick;
        if (++hit == want) break;  // the set can only repeat from here on
      }
    }
    if (hit == want) out.full.push_back(scan.at(xi));
  }
  std::uint64_t seen = 0;
  for (std::size_t i = 0; i < order; ++i)
    if (covered[i] != 0) ++seen;
  out.union_covers = (seen == want);
  return out;
}

/** For every x, whether close({[x,u] : u in domain}) equals `target`. */
inline std::vector<char> commutator_span_equals(
    const GroupScan& scan, const std::vector<Element>& domain,
    const Subgroup& target) {
  const PcPresentation& P = scan.group();
  std::vector<std::size_t> dom;
  dom.reserve(domain.size());
  for (const Element& u : domain) dom.push_back(scan.index_of(u));
  std::vector<char> out(scan.size(), 0);
  for (std::size_t xi = 0; xi < scan.size(); ++xi) {
    Subgroup S = trivial_subgroup(P);
    for (const std::size_t ui : dom) {
      const Element c = scan.commutator_at(xi, ui);
      if (!contains(S, c)) {
        std::vector<Element> gens = S.generators();
        gens.push_back(c);
        S = close(P, gens);
      }
    }
    out[xi] = (S == target) ? 1 : 0;
  }
  return out;
}

/** Whether {[x,g] : g in G} is exactly the element set of `derived`. */
inline bool commutator_set_covers(const PcPresentation& P, const Element& x,
                                  const Subgroup& derived) {
  std::set<Element> seen;
  const Element xinv = inverse(P, x);
  bool escaped = false;
  for_each_element(P, [&](const Element& g) {
    const Element c =
        multiply(P, multiply(P, multiply(P, xinv, inverse(P, g)), x), g);
    if (!contains(derived, c)) escaped = true;
    seen.insert(c);
  });
  if (escaped)
    throw invariant_violation(
        "commutator_set_covers: a commutator escaped the derived subgroup");
  return seen.size() == derived.order();
}

}  // namespace detail

/** Every x whose commutator set {[x,g] : g in G} is the whole derived
 *  subgroup as a set, in lexicographic order.  Guarded. */
inline std::vector<Element> witness_exhaustive(const PcPresentation& P) {
  detail::check_size_guard(P, "witness_exhaustive");
  const GroupScan scan(P);
  return detail::exhaustive_commutator_scan(scan, derived_subgroup(P)).full;
}

// ---------------------------------------------------------------------------
// Special subgroup families

enum class Want : std::uint32_t {
  centralizers = 1,  // C and C*: centralizers of the derived quotients
  d_family = 2,      // kernels over maximal normal subgroups of [G,G]
  r_family = 4,      // square-layer kernels, p = 2 only
};

inline Want operator|(Want a, Want b) {
  return static_cast<Want>(static_cast<std::uint32_t>(a) |
                           static_cast<std::uint32_t>(b));
}

inline bool want_has(Want mask, Want flag) {
  return (static_cast<std::uint32_t>(mask) &
          static_cast<std::uint32_t>(flag)) != 0;
}

/** The obstruction subgroups used by the constructive witness search.
 *  Only the requested members are populated:
 *   - c:     largest subgroup acting trivially on [G,G] / [G,G]^p
 *   - cstar: same with modulus [G,G]^{p^2}
 *   - d_of:  for each maximal G-normal T < [G,G], the largest D(T) with
 *            [D(T), G] <= T; d_union is the union of their element sets
 *   - r_of:  for p = 2 and nontrivial ([G,G])^2, for each maximal G-normal
 *            U < ([G,G])^2 the largest R(U) with [R(U), G^2] <= U. */
struct SpecialSubgroups {
  Subgroup c;
  Subgroup cstar;
  std::vector<std::pair<Subgroup, Subgroup>> d_of;
  std::vector<Element> d_union;
  std::vector<std::pair<Subgroup, Subgroup>> r_of;
  std::vector<Element> r_union;
};

inline SpecialSubgroups special_subgroups(const PcPresentation& P,
                                          Want want) {
  const Subgroup whole = whole_group(P);
  const Subgroup derived = derived_subgroup(P);
  SpecialSubgroups out;
  if (want_has(want, Want::centralizers)) {
    out.c = section_centralizer(P, derived, power_subgroup(derived, 1));
    out.cstar = section_centralizer(P, derived, power_subgroup(derived, 2));
  }
  if (want_has(want, Want::d_family)) {
    if (derived.trivial())
      throw precondition_error(
          "special_subgroups: the maximal-kernel family needs a nonabelian "
          "group");
    std::set<Element> un;
    for (const Subgroup& T : maximal_normal_under(P, derived)) {
      Subgroup dt = section_centralizer(P, whole, T);
      for (const Element& a : elements(dt)) un.insert(a);
      out.d_of.emplace_back(T, std::move(dt));
    }
    out.d_union.assign(un.begin(), un.end());
  }
  if (want_has(want, Want::r_family)) {
    if (P.p() != 2)
      throw precondition_error(
          "special_subgroups: the square-layer family is defined only for "
          "p = 2");
    const Subgroup dsq = power_subgroup(derived, 1);
    if (dsq.trivial())
      throw precondition_error(
          "special_subgroups: the square-layer family needs nontrivial "
          "squares inside the derived subgroup");
    const Subgroup sq = power_subgroup(whole, 1);
    std::set<Element> un;
    for (const Subgroup& U : maximal_normal_under(P, dsq)) {
      Subgroup ru = section_centralizer(P, sq, U);
      for (const Element& a : elements(ru)) un.insert(a);
      out.r_of.emplace_back(U, std::move(ru));
    }
    out.r_union.assign(un.begin(), un.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Constructive witness selection

/** How a witness was chosen: the branch taken, named auxiliary elements
 *  (partners, layer elements) and free-form notes. */
struct WitnessTrace {
  std::string branch;  // "a", "b", "c1", "c2", "c3" or "d"
  std::vector<std::pair<std::string, Element>> aux;
  std::vector<std::string> notes;
};

struct WitnessResult {
  Element x;
  WitnessTrace trace;
};

/** Pick an element x with {[x,g] : g in G} equal to the whole derived
 *  subgroup, by structural case analysis rather than exhaustive search:
 *
 *   a   derived subgroup cyclic: least pair (x, y) with y in the deep
 *       centralizer C* and <[x,y]> = [G,G];
 *   b   two-generator derived subgroup, odd p: least x avoiding every
 *       maximal-kernel subgroup D(T) with G = <x>C;
 *   c*  p = 2 with proper C: via the layer T = [G,G]' * gamma_3 analysis --
 *       c1 picks x outside C, c2 additionally needs a layer element t with
 *       [x,t] a square not in T^2, c3 picks x inside C but outside every
 *       D(T) with a derived element g giving such a class;
 *   d   p = 2 with C = G: least x avoiding the maximal kernels and, when
 *       the derived squares are nontrivial, the square-layer kernels.
 *
 *  The chosen element is re-verified exhaustively before being returned;
 *  a verification failure signals an implementation bug, never an expected
 *  outcome.  Three-generator derived subgroups are outside the guaranteed
 *  range and raise a precondition error. */
inline WitnessResult witness_constructive(const PcPresentation& P) {
  detail::check_size_guard(P, "witness_constructive");
  const Subgroup whole = whole_group(P);
  const Subgroup derived = derived_subgroup(P);
  const std::uint32_t d = frattini_rank(derived).second;
  if (d > 2)
    throw precondition_error(
        "witness_constructive: derived subgroup needs three or more "
        "generators");
  WitnessResult res;
  auto finish = [&](Element x) {
    if (!detail::commutator_set_covers(P, x, derived))
      throw invariant_violation(
          "witness_constructive: selected element does not cover the "
          "derived subgroup (branch " +
          res.trace.branch + ")");
    res.x = std::move(x);
    return res;
  };

  if (d <= 1) {
    res.trace.branch = "a";
    const SpecialSubgroups ss = special_subgroups(P, Want::centralizers);
    res.trace.notes.push_back("derived subgroup cyclic of order " +
                              std::to_string(derived.order()));
    const std::vector<Element> partners = elements(ss.cstar);
    for (const Element& x : enumerate_elements(P))
      for (const Element& y : partners)
        if (element_order(P, commutator(P, x, y)) == derived.order()) {
          res.trace.aux.emplace_back("y", y);
          res.trace.notes.push_back(
              "partner from the deep centralizer generates the derived "
              "subgroup with x");
          return finish(x);
        }
    throw invariant_violation(
        "witness_constructive: no generating pair found in the deep "
        "centralizer");
  }

  const std::uint32_t p = P.p();
  if (p != 2) {
    res.trace.branch = "b";
    const SpecialSubgroups ss =
        special_subgroups(P, Want::centralizers | Want::d_family);
    const bool c_whole = (ss.c == whole);
    for (const Element& x : enumerate_elements(P)) {
      if (std::binary_search(ss.d_union.begin(), ss.d_union.end(), x))
        continue;
      if (!c_whole && contains(ss.c, x)) continue;
      res.trace.notes.push_back(
          "avoids every maximal-kernel subgroup and generates the group "
          "together with the derived-quotient centralizer");
      return finish(x);
    }
    throw invariant_violation(
        "witness_constructive: every element lies in a maximal kernel");
  }

  const SpecialSubgroups ss =
      special_subgroups(P, Want::centralizers | Want::d_family);
  const Subgroup dsq = power_subgroup(derived, 1);
  if (ss.c != whole) {
    const Subgroup gamma3 = commutator_subgroup(derived, whole);
    std::vector<Element> tg = gamma3.generators();
    for (const Element& g : dsq.generators()) tg.push_back(g);
    const Subgroup layer = close(P, tg);  // gamma_3 * squares of [G,G]
    const Subgroup layer_sq = power_subgroup(layer, 1);
    res.trace.notes.push_back("derived-quotient centralizer has index " +
                              std::to_string(whole.order() / ss.c.order()));
    if (contains(layer_sq, commutator_subgroup(derived, ss.c))) {
      res.trace.branch = "c1";
      for (const Element& x : enumerate_elements(P))
        if (!contains(ss.c, x)) {
          res.trace.notes.push_back(
              "centralizer action on the layer is deep; any element outside "
              "the centralizer works");
          return finish(x);
        }
      throw invariant_violation(
          "witness_constructive: centralizer of the derived quotient is "
          "proper but covers the group");
    }
    if (!contains(layer_sq, commutator_subgroup(layer, whole))) {
      res.trace.branch = "c2";
      const std::vector<Element> layer_elems = elements(layer);
      for (const Element& x : enumerate_elements(P)) {
        if (contains(ss.c, x)) continue;
        for (const Element& t : layer_elems) {
          const Element c = commutator(P, x, t);
          if (contains(dsq, c) && !contains(layer_sq, c)) {
            res.trace.aux.emplace_back("t", t);
            res.trace.notes.push_back(
                "layer element pairs with x into a square outside the "
                "doubled layer");
            return finish(x);
          }
        }
      }
      throw invariant_violation(
          "witness_constructive: no element outside the centralizer pairs "
          "into the square class");
    }
    res.trace.branch = "c3";
    const std::vector<Element> derived_elems = elements(derived);
    for (const Element& x : elements(ss.c)) {
      if (std::binary_search(ss.d_union.begin(), ss.d_union.end(), x))
        continue;
      for (const Element& g : derived_elems) {
        const Element c = commutator(P, x, g);
        if (contains(dsq, c) && !contains(layer_sq, c)) {
          res.trace.aux.emplace_back("g", g);
          res.trace.notes.push_back(
              "derived element pairs with x into a square outside the "
              "doubled layer");
          return finish(x);
        }
      }
    }
    throw invariant_violation(
        "witness_constructive: no centralizer element outside the maximal "
        "kernels pairs into the square class");
  }

  res.trace.branch = "d";
  std::vector<Element> avoid = ss.d_union;
  if (!dsq.trivial()) {
    const SpecialSubgroups sr = special_subgroups(P, Want::r_family);
    std::set<Element> merged(avoid.begin(), avoid.end());
    merged.insert(sr.r_union.begin(), sr.r_union.end());
    avoid.assign(merged.begin(), merged.end());
    res.trace.notes.push_back(
        "square-layer kernels joined into the avoidance set");
  } else {
    res.trace.notes.push_back(
        "derived squares trivial; only maximal kernels to avoid");
  }
  for (const Element& x : enumerate_elements(P)) {
    if (std::binary_search(avoid.begin(), avoid.end(), x)) continue;
    return finish(x);
  }
  throw invariant_violation(
      "witness_constructive: the avoidance set covers the whole group");
}

// ---------------------------------------------------------------------------
// Two-generator metacyclic decomposition

/** Generators a, b of a nonabelian two-generator subgroup H with
 *  ord(a) = p^m, ord(b) = p^{n+k}, [a,b] = b^{p^n}, k >= 1 and
 *  n >= m >= 2k; then |H| = p^{m+n+k}. */
struct BlackburnDecomposition {
  Element a;
  Element b;
  std::uint32_t m = 0;
  std::uint32_t n = 0;
  std::uint32_t k = 0;
};

/** Search for the lexicographically least decomposition of H, or nothing if
 *  no generator pair satisfies the relations. */
inline std::optional<BlackburnDecomposition> blackburn_decomposition(
    const Subgroup& H) {
  const PcPresentation& P = H.group();
  const std::uint32_t p = P.p();
  const std::vector<Element> hs = elements(H);
  std::vector<std::uint32_t> ordlog(hs.size());
  for (std::size_t i = 0; i < hs.size(); ++i)
    ordlog[i] = detail::plog(element_order(P, hs[i]), p);
  const std::uint32_t hlog = detail::plog(H.order(), p);
  for (std::size_t ai = 0; ai < hs.size(); ++ai) {
    const std::uint32_t m = ordlog[ai];
    if (m < 2 || m >= hlog) continue;
    for (std::size_t bi = 0; bi < hs.size(); ++bi) {
      const std::uint32_t e = ordlog[bi];  // n + k
      if (m + e != hlog || e < m + 1) continue;
      const Element c = commutator(P, hs[ai], hs[bi]);
      if (is_identity(c)) continue;
      for (std::uint32_t n = m; n + 1 <= e; ++n) {
        const std::uint32_t k = e - n;
        if (m < 2 * k) continue;
        if (c != power(P, hs[bi],
                       static_cast<std::int64_t>(detail::upow(p, n))))
          continue;
        if (close(P, {hs[ai], hs[bi]}) == H)
          return BlackburnDecomposition{hs[ai], hs[bi], m, n, k};
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Canonical chief series

/** Descending chain G = S_0 > S_1 > ... > 1 where each S_{t+1} is the
 *  lexicographically least maximal G-normal subgroup of S_t.  Every quotient
 *  has order p and every term is normal, so the chain is deterministic. */
inline std::vector<Subgroup> canonical_chief_series(const PcPresentation& P) {
  std::vector<Subgroup> series{whole_group(P)};
  while (!series.back().trivial()) {
    std::vector<Subgroup> maxima = maximal_normal_under(P, series.back());
    series.push_back(std::move(maxima.front()));
  }
  return series;
}

// ---------------------------------------------------------------------------
// Lemma verifiers

/** Outcome of checking one structural fact on one group.  `instances` counts
 *  hypothesis-satisfying configurations whose conclusion was verified;
 *  `vacuous` means the hypotheses never held. */
struct LemmaReport {
  std::string lemma;
  enum class Verdict { pass, vacuous, fail } verdict = Verdict::pass;
  std::string note;
  std::uint64_t instances = 0;
  std::vector<std::string> samples;
  std::optional<std::string> counterexample;
};

inline const std::vector<std::string>& lemma_ids() {
  static const std::vector<std::string> ids = {
      "blackburn", "powerful", "index2",       "central",
      "LN",        "C",        "D",            "R",
      "prop_DR",   "hall_petrescu", "cyclic"};
  return ids;
}

namespace detail {

inline void add_sample(LemmaReport& rep, std::string s) {
  if (rep.samples.size() < 8) rep.samples.push_back(std::move(s));
}

inline LemmaReport vacuous_report(std::string id, std::string why) {
  LemmaReport rep;
  rep.lemma = std::move(id);
  rep.verdict = LemmaReport::Verdict::vacuous;
  rep.note = std::move(why);
  return rep;
}

inline void fail_with(LemmaReport& rep, std::string what) {
  rep.verdict = LemmaReport::Verdict::fail;
  if (!rep.counterexample) rep.counterexample = std::move(what);
}

/** Section pairs (L, N) with N < L, both normal: adjacent terms of the
 *  canonical chief series, and for each maximal G-normal T < [G,G] the
 *  interleaved power chain [G,G] >= T >= [G,G]^p >= T^p >= ... */
inline std::vector<std::pair<Subgroup, Subgroup>> lemma_section_pairs(
    const PcPresentation& P, const Subgroup& derived) {
  std::vector<std::pair<Subgroup, Subgroup>> out;
  std::set<std::pair<Subgroup, Subgroup>> seen;
  auto add = [&](const Subgroup& L, const Subgroup& N) {
    if (L.order() == N.order()) return;
    if (seen.insert({L, N}).second) out.emplace_back(L, N);
  };
  const std::vector<Subgroup> chief = canonical_chief_series(P);
  for (std::size_t t = 0; t + 1 < chief.size(); ++t)
    add(chief[t], chief[t + 1]);
  if (!derived.trivial()) {
    for (const Subgroup& T : maximal_normal_under(P, derived)) {
      std::vector<Subgroup> terms{derived, T};
      for (std::uint32_t i = 1;; ++i) {
        Subgroup di = power_subgroup(derived, i);
        Subgroup ti = power_subgroup(T, i);
        const bool done = di.trivial() && ti.trivial();
        terms.push_back(std::move(di));
        terms.push_back(std::move(ti));
        if (done) break;
      }
      for (std::size_t t = 0; t + 1 < terms.size(); ++t) {
        if (!contains(terms[t], terms[t + 1]))
          throw invariant_violation(
              "lemma_section_pairs: interleaved power chain is not "
              "descending");
        add(terms[t], terms[t + 1]);
      }
    }
  }
  return out;
}

/** The constructive witness as a candidate list; empty when the derived
 *  subgroup needs three or more generators. */
inline std::vector<Element> witness_candidates(const PcPresentation& P) {
  try {
    return {witness_constructive(P).x};
  } catch (const precondition_error&) {
    return {};
  }
}

inline std::vector<Element> sorted_commutator_set(const GroupScan& scan,
                                                  const Element& x) {
  std::set<Element> acc;
  const std::size_t xi = scan.index_of(x);
  for (std::size_t gi = 0; gi < scan.size(); ++gi)
    acc.insert(scan.commutator_at(xi, gi));
  return {acc.begin(), acc.end()};
}

// --- blackburn: structure of a two-generator derived subgroup -------------

inline LemmaReport verify_blackburn(const PcPresentation& P) {
  LemmaReport rep;
  rep.lemma = "blackburn";
  const Subgroup derived = derived_subgroup(P);
  if (frattini_rank(derived).second > 2)
    return vacuous_report("blackburn",
                          "derived subgroup needs three or more generators");
  if (is_abelian(derived)) {
    ++rep.instances;
    add_sample(rep, "derived subgroup abelian, order " +
                        std::to_string(derived.order()));
  } else {
    const std::optional<BlackburnDecomposition> dec =
        blackburn_decomposition(derived);
    if (!dec) {
      fail_with(rep,
                "nonabelian two-generator derived subgroup admits no "
                "metacyclic generator pair");
      return rep;
    }
    ++rep.instances;
    add_sample(rep, "decomposition a=" + exps_string(dec->a) +
                        " b=" + exps_string(dec->b) + " m=" +
                        std::to_string(dec->m) + " n=" +
                        std::to_string(dec->n) + " k=" +
                        std::to_string(dec->k));
  }
  if (!is_powerful(derived)) {
    fail_with(rep, "derived subgroup is not powerful");
    return rep;
  }
  ++rep.instances;
  if (!contains(power_subgroup(derived, 2),
                commutator_subgroup(derived, derived))) {
    fail_with(rep,
              "second derived subgroup escapes the p^2-th powers of the "
              "derived subgroup");
    return rep;
  }
  ++rep.instances;
  rep.note = "two-generator derived subgroup has the metacyclic structure";
  return rep;
}

// --- powerful: power structure of subgroups of a powerful group -----------

inline LemmaReport verify_powerful(const PcPresentation& P) {
  LemmaReport rep;
  rep.lemma = "powerful";
  const Subgroup whole = whole_group(P);
  if (!is_powerful(whole))
    return vacuous_report("powerful", "group is not powerful");
  std::vector<Subgroup> gpow{whole};
  while (!gpow.back().trivial())
    gpow.push_back(
        power_subgroup(whole, static_cast<std::uint32_t>(gpow.size())));
  const bool two_generated = frattini_rank(whole).second <= 2;
  for (const Subgroup& H : all_subgroups(P)) {
    const bool h_powerful = is_powerful(H);
    if (two_generated && !h_powerful) {
      fail_with(rep,
                "subgroup of a two-generator powerful group is not powerful"
                " (order " +
                    std::to_string(H.order()) + ")");
      return rep;
    }
    if (two_generated) ++rep.instances;
    if (!h_powerful) continue;
    for (std::uint32_t i = 1; i < gpow.size(); ++i) {
      const Subgroup hp = power_subgroup(H, i);
      if (!contains(gpow[i], hp))
        throw invariant_violation(
            "verify_powerful: power subgroup escaped the ambient powers");
      if (gpow[i].order() / hp.order() > whole.order() / H.order()) {
        fail_with(rep, "power index grows past the subgroup index at depth " +
                           std::to_string(i) + " for a subgroup of order " +
                           std::to_string(H.order()));
        return rep;
      }
      ++rep.instances;
    }
  }
  rep.note = "power indices stay bounded by subgroup indices";
  return rep;
}

// --- index2: lifting coverage across a normal subgroup --------------------

inline LemmaReport verify_index2(const PcPresentation& P) {
  LemmaReport rep;
  rep.lemma = "index2";
  const std::vector<Element> xs = witness_candidates(P);
  if (xs.empty())
    return vacuous_report("index2", "no constructive witness available");
  const Subgroup derived = derived_subgroup(P);
  const auto pairs = lemma_section_pairs(P, derived);
  const GroupScan scan(P);
  for (const Element& x : xs) {
    const std::vector<Element> K = sorted_commutator_set(scan, x);
    auto in_k = [&](const Element& a) {
      return std::binary_search(K.begin(), K.end(), a);
    };
    for (const auto& [L, N] : pairs) {
      const std::vector<Element> l_elems = elements(L);
      const std::vector<Element> n_elems = elements(N);
      std::set<Element> k_residues;
      for (const Element& kk : K) k_residues.insert(coset_residue(N, kk));
      bool coset_cover = true;
      for (const Element& l : l_elems)
        if (k_residues.count(coset_residue(N, l)) == 0) {
          coset_cover = false;
          break;
        }
      // cross-check the residue formulation against literal products
      if (K.size() * n_elems.size() <= (std::size_t{1} << 22)) {
        std::vector<char> prod(scan.size(), 0);
        for (const Element& kk : K)
          for (const Element& m : n_elems)
            prod[scan.index_of(multiply(P, kk, m))] = 1;
        bool direct_cover = true;
        for (const Element& l : l_elems)
          if (prod[scan.index_of(l)] == 0) {
            direct_cover = false;
            break;
          }
        if (direct_cover != coset_cover)
          throw invariant_violation(
              "verify_index2: residue cosets disagree with literal "
              "products");
      }
      if (!coset_cover) continue;
      bool base_cover = true;
      for (const Element& m : n_elems)
        if (!in_k(m)) {
          base_cover = false;
          break;
        }
      if (!base_cover) continue;
      ++rep.instances;
      for (const Element& l : l_elems)
        if (!in_k(l)) {
          fail_with(rep, "element " + exps_string(l) +
                             " of the lifted subgroup is not a commutator "
                             "of x=" +
                             exps_string(x));
          return rep;
        }
      add_sample(rep, "L order " + std::to_string(L.order()) + ", N order " +
                          std::to_string(N.order()) + ", x=" +
                          exps_string(x));
    }
  }
  if (rep.instances == 0)
    return vacuous_report(
        "index2", "no section pair met the coset-cover hypotheses");
  rep.note = "coset coverage plus base coverage lifts to full coverage";
  return rep;
}

// --- central: coverage of a section generated by commutators --------------

inline LemmaReport verify_central(const PcPresentation& P) {
  LemmaReport rep;
  rep.lemma = "central";
  const std::vector<Element> xs = witness_candidates(P);
  if (xs.empty())
    return vacuous_report("central", "no constructive witness available");
  const Subgroup whole = whole_group(P);
  const Subgroup derived = derived_subgroup(P);
  const Subgroup c =
      section_centralizer(P, derived, power_subgroup(derived, 1));
  const auto pairs = lemma_section_pairs(P, derived);
  const std::vector<std::pair<std::string, std::vector<Element>>> s_options =
      {{"group generators", whole.generators()},
       {"centralizer generators", c.generators()}};
  for (const Element& x : xs) {
    for (const auto& [L, N] : pairs) {
      for (const auto& [s_name, S] : s_options) {
        bool commutes_into = true;
        for (const Element& l : L.generators()) {
          for (const Element& s : S)
            if (!contains(N, commutator(P, l, s))) {
              commutes_into = false;
              break;
            }
          if (!commutes_into) break;
        }
        if (!commutes_into) continue;
        std::vector<Element> gens = N.generators();
        for (const Element& s : S) gens.push_back(commutator(P, x, s));
        if (close(P, gens) != L) continue;
        ++rep.instances;
        std::vector<Element> span_gens = N.generators();
        for (const Element& s : S) span_gens.push_back(s);
        const Subgroup sn = close(P, span_gens);
        std::set<Element> targets;
        for (const Element& u : elements(sn))
          targets.insert(coset_residue(N, commutator(P, x, u)));
        for (const Element& l : elements(L))
          if (targets.count(coset_residue(N, l)) == 0) {
            fail_with(rep, "coset of " + exps_string(l) +
                               " is not a commutator coset of x=" +
                               exps_string(x) + " over " + s_name);
            return rep;
          }
        add_sample(rep, "L order " + std::to_string(L.order()) +
                            ", N order " + std::to_string(N.order()) +
                            ", S = " + s_name);
      }
    }
  }
  if (rep.instances == 0)
    return vacuous_report(
        "central", "no section pair is generated by commutators of a "
                   "witness against a centralizing set");
  rep.note = "commutator-generated central sections are covered "
             "cosetwise";
  return rep;
}

// --- LN: power tower of a cyclically covered section -----------------------

inline LemmaReport verify_LN(const PcPresentation& P) {
  LemmaReport rep;
  rep.lemma = "LN";
  const std::vector<Element> xs = witness_candidates(P);
  if (xs.empty())
    return vacuous_report("LN", "no constructive witness available");
  const Subgroup derived = derived_subgroup(P);
  const auto pairs = lemma_section_pairs(P, derived);
  const GroupScan scan(P);
  const std::uint32_t p = P.p();
  std::vector<Element> K;  // computed on first part-(ii) instance
  for (const Element& x : xs) {
    for (const auto& [L, N] : pairs) {
      if (!is_powerful(L) || frattini_rank(L).second > 2) continue;
      const Subgroup np = power_subgroup(N, 1);
      const bool index_p = (L.order() / N.order() == p);
      auto generates_over = [&](const Subgroup& big, const Subgroup& small,
                                const Element& cand) {
        if (big.order() == small.order()) return contains(small, cand);
        if (big.order() / small.order() == p)
          return contains(big, cand) && !contains(small, cand);
        std::vector<Element> gens = small.generators();
        gens.push_back(cand);
        return close(P, gens) == big;
      };
      std::optional<Element> g;
      for (const Element& cand : scan.elements()) {
        const Element c = commutator(P, x, cand);
        if (index_p) {
          if (!contains(L, c) || contains(N, c)) continue;
        } else if (!generates_over(L, N, c)) {
          continue;
        }
        if (!contains(np, commutator(P, c, cand))) continue;
        g = cand;
        break;
      }
      if (!g) continue;
      ++rep.instances;
      for (std::uint32_t i = 1;; ++i) {
        const Subgroup li = power_subgroup(L, i);
        const Subgroup ni = power_subgroup(N, i);
        const Element gi =
            power(P, *g, static_cast<std::int64_t>(upow(p, i)));
        if (!generates_over(li, ni, commutator(P, x, gi))) {
          fail_with(rep, "depth-" + std::to_string(i) +
                             " powers are not generated by the commutator "
                             "with g^(p^" +
                             std::to_string(i) + "), g=" + exps_string(*g));
          return rep;
        }
        if (li.trivial()) break;
      }
      add_sample(rep, "tower: L order " + std::to_string(L.order()) +
                          ", N order " + std::to_string(N.order()) + ", g=" +
                          exps_string(*g));
      if (index_p && contains(N, power_subgroup(L, 1))) {
        const Subgroup lp = power_subgroup(L, 1);
        const Subgroup lp2 = power_subgroup(L, 2);
        std::optional<Element> h;
        for (const Element& cand : scan.elements()) {
          const Element c = commutator(P, x, cand);
          if (!generates_over(N, lp, c)) continue;
          if (!contains(lp2, commutator(P, c, cand))) continue;
          h = cand;
          break;
        }
        if (h) {
          ++rep.instances;
          if (K.empty()) K = sorted_commutator_set(scan, x);
          for (const Element& l : elements(L))
            if (!std::binary_search(K.begin(), K.end(), l)) {
              fail_with(rep, "element " + exps_string(l) +
                                 " of the covered section is not a "
                                 "commutator of x=" +
                                 exps_string(x));
              return rep;
            }
          add_sample(rep, "full coverage: L order " +
                              std::to_string(L.order()) + ", h=" +
                              exps_string(*h));
        }
      }
    }
  }
  if (rep.instances == 0)
    return vacuous_report(
        "LN", "no powerful two-generator section admitted a cyclic "
              "commutator generator");
  rep.note = "cyclic commutator generation descends the power tower";
  return rep;
}

// --- C: depth of centralizer commutators -----------------------------------

inline LemmaReport verify_C(const PcPresentation& P) {
  LemmaReport rep;
  rep.lemma = "C";
  const Subgroup whole = whole_group(P);
  const Subgroup derived = derived_subgroup(P);
  if (!is_powerful(derived))
    return vacuous_report("C", "derived subgroup is not powerful");
  const Subgroup c =
      section_centralizer(P, derived, power_subgroup(derived, 1));
  std::vector<Subgroup> dpow{derived};
  while (!dpow.back().trivial())
    dpow.push_back(
        power_subgroup(derived, static_cast<std::uint32_t>(dpow.size())));
  std::vector<Subgroup> cpow{c};
  while (!cpow.back().trivial())
    cpow.push_back(
        power_subgroup(c, static_cast<std::uint32_t>(cpow.size())));
  auto d_at = [&](std::size_t t) -> const Subgroup& {
    return t < dpow.size() ? dpow[t] : dpow.back();
  };
  for (std::size_t i = 0; i < dpow.size(); ++i)
    for (std::size_t j = 0; j < cpow.size(); ++j) {
      if (!contains(d_at(i + j + 1),
                    commutator_subgroup(dpow[i], cpow[j]))) {
        fail_with(rep, "commutators of depth-" + std::to_string(i) +
                           " derived powers with depth-" + std::to_string(j) +
                           " centralizer powers are too shallow");
        return rep;
      }
      ++rep.instances;
    }
  for (std::size_t j = 0; j < cpow.size(); ++j) {
    if (!contains(d_at(j), commutator_subgroup(whole, cpow[j]))) {
      fail_with(rep, "commutators of the group with depth-" +
                         std::to_string(j) +
                         " centralizer powers are too shallow");
      return rep;
    }
    ++rep.instances;
  }
  if (frattini_rank(derived).second <= 2) {
    if (whole.order() / c.order() > P.p()) {
      fail_with(rep, "derived-quotient centralizer has index above p");
      return rep;
    }
    ++rep.instances;
  }
  rep.note = "centralizer commutators gain a full power of p in depth";
  return rep;
}

// --- D: maximal kernels characterize non-witnesses -------------------------

inline LemmaReport verify_D(const PcPresentation& P) {
  LemmaReport rep;
  rep.lemma = "D";
  const Subgroup whole = whole_group(P);
  const Subgroup derived = derived_subgroup(P);
  if (derived.trivial()) return vacuous_report("D", "group is abelian");
  const std::uint32_t dg = frattini_rank(derived).second;
  const SpecialSubgroups ss = special_subgroups(
      P, dg <= 2 ? (Want::d_family | Want::centralizers) : Want::d_family);
  const GroupScan scan(P);
  const std::vector<char> spans =
      commutator_span_equals(scan, scan.elements(), derived);
  for (std::size_t xi = 0; xi < scan.size(); ++xi) {
    const bool in_d = std::binary_search(ss.d_union.begin(),
                                         ss.d_union.end(), scan.at(xi));
    if ((spans[xi] != 0) == in_d) {
      fail_with(rep,
                "element " + exps_string(scan.at(xi)) +
                    (in_d ? " lies in a maximal kernel yet its commutators "
                            "generate the derived subgroup"
                          : " avoids every maximal kernel yet its "
                            "commutators generate a proper subgroup"));
      return rep;
    }
  }
  rep.instances += scan.size();
  if (dg <= 2) {
    const Subgroup phi = frattini_rank(whole).first;
    for (const auto& [t, dt] : ss.d_of) {
      if (!contains(dt, phi)) {
        fail_with(rep, "a maximal kernel misses the Frattini subgroup");
        return rep;
      }
      if (!contains(ss.c, dt)) {
        fail_with(rep,
                  "a maximal kernel escapes the derived-quotient "
                  "centralizer");
        return rep;
      }
      if (plog(whole.order() / dt.order(), P.p()) % 2 != 0) {
        fail_with(rep, "a maximal kernel has odd logarithmic index " +
                           std::to_string(plog(whole.order() / dt.order(),
                                               P.p())));
        return rep;
      }
      rep.instances += 3;
      add_sample(rep, "kernel over layer of order " +
                          std::to_string(t.order()) + " has index p^" +
                          std::to_string(plog(whole.order() / dt.order(),
                                              P.p())));
    }
    if (ss.d_union.size() >= whole.order()) {
      fail_with(rep, "the maximal kernels cover the whole group");
      return rep;
    }
    ++rep.instances;
  }
  rep.note = "an element generates the derived subgroup by commutators "
             "exactly when it avoids every maximal kernel";
  return rep;
}

// --- R: square-layer kernels for p = 2 -------------------------------------

inline LemmaReport verify_R(const PcPresentation& P) {
  LemmaReport rep;
  rep.lemma = "R";
  if (P.p() != 2) return vacuous_report("R", "defined only for p = 2");
  const Subgroup whole = whole_group(P);
  const Subgroup derived = derived_subgroup(P);
  if (frattini_rank(derived).second > 2)
    return vacuous_report("R",
                          "derived subgroup needs three or more generators");
  const Subgroup dsq = power_subgroup(derived, 1);
  if (dsq.trivial())
    return vacuous_report("R", "derived squares are trivial");
  const Subgroup c =
      section_centralizer(P, derived, power_subgroup(derived, 1));
  if (c != whole)
    return vacuous_report(
        "R", "derived-quotient centralizer is a proper subgroup");
  const Subgroup sq = power_subgroup(whole, 1);
  if (commutator_subgroup(whole, sq) != dsq) {
    fail_with(rep,
              "commutators against the squares differ from the derived "
              "squares");
    return rep;
  }
  ++rep.instances;
  const SpecialSubgroups ss = special_subgroups(P, Want::r_family);
  const GroupScan scan(P);
  const std::vector<char> spans =
      commutator_span_equals(scan, elements(sq), dsq);
  for (std::size_t xi = 0; xi < scan.size(); ++xi) {
    const bool in_r = std::binary_search(ss.r_union.begin(),
                                         ss.r_union.end(), scan.at(xi));
    if ((spans[xi] != 0) == in_r) {
      fail_with(rep,
                "element " + exps_string(scan.at(xi)) +
                    (in_r ? " lies in a square-layer kernel yet covers the "
                            "derived squares"
                          : " avoids every square-layer kernel yet misses "
                            "the derived squares"));
      return rep;
    }
  }
  rep.instances += scan.size();
  for (const auto& [u, ru] : ss.r_of) {
    if (!contains(ru, sq)) {
      fail_with(rep, "a square-layer kernel misses the squares subgroup");
      return rep;
    }
    if (ru.order() >= whole.order()) {
      fail_with(rep, "a square-layer kernel is the whole group");
      return rep;
    }
    rep.instances += 2;
    add_sample(rep, "kernel over square layer of order " +
                        std::to_string(u.order()) + " has order " +
                        std::to_string(ru.order()));
  }
  for (std::size_t i = 0; i < ss.r_of.size(); ++i)
    for (std::size_t j = i + 1; j < ss.r_of.size(); ++j) {
      const Subgroup meet =
          intersection(ss.r_of[i].second, ss.r_of[j].second);
      for (const auto& [w, rw] : ss.r_of) {
        if (!contains(rw, meet)) {
          fail_with(rep,
                    "two square-layer kernels meet outside a third kernel");
          return rep;
        }
        ++rep.instances;
      }
    }
  rep.note = "square-layer kernels characterize square coverage and pairwise "
             "meet inside every kernel";
  return rep;
}

// --- prop_DR: a witness avoiding both kernel families ----------------------

inline LemmaReport verify_prop_DR(const PcPresentation& P) {
  LemmaReport rep;
  rep.lemma = "prop_DR";
  if (P.p() != 2)
    return vacuous_report("prop_DR", "defined only for p = 2");
  const Subgroup whole = whole_group(P);
  const Subgroup derived = derived_subgroup(P);
  if (frattini_rank(derived).second != 2)
    return vacuous_report("prop_DR",
                          "derived subgroup is not two-generated");
  const Subgroup c =
      section_centralizer(P, derived, power_subgroup(derived, 1));
  if (c != whole)
    return vacuous_report(
        "prop_DR", "derived-quotient centralizer is a proper subgroup");
  const Subgroup dsq = power_subgroup(derived, 1);
  const Subgroup sq = power_subgroup(whole, 1);
  const GroupScan scan(P);
  const std::vector<char> spans_d =
      commutator_span_equals(scan, scan.elements(), derived);
  const std::vector<char> spans_q =
      commutator_span_equals(scan, elements(sq), dsq);
  std::uint64_t count = 0;
  std::optional<Element> least;
  for (std::size_t xi = 0; xi < scan.size(); ++xi)
    if (spans_d[xi] != 0 && spans_q[xi] != 0) {
      ++count;
      if (!least) least = scan.at(xi);
    }
  rep.instances = 1;
  if (!least) {
    fail_with(rep,
              "no element generates the derived subgroup and the derived "
              "squares simultaneously");
    return rep;
  }
  rep.note = std::to_string(count) + " of " + std::to_string(scan.size()) +
             " elements qualify; least is " + exps_string(*least);
  return rep;
}

// --- hall_petrescu: p-th power of a commutator against the centralizer ----

inline LemmaReport verify_hall_petrescu(const PcPresentation& P) {
  LemmaReport rep;
  rep.lemma = "hall_petrescu";
  if (P.p() == 2)
    return vacuous_report("hall_petrescu", "defined only for odd p");
  const Subgroup derived = derived_subgroup(P);
  if (derived.trivial())
    return vacuous_report("hall_petrescu", "group is abelian");
  if (frattini_rank(derived).second > 2)
    return vacuous_report("hall_petrescu",
                          "derived subgroup needs three or more generators");
  const Element x = witness_constructive(P).x;
  const Subgroup c =
      section_centralizer(P, derived, power_subgroup(derived, 1));
  const Subgroup dpow2 = power_subgroup(derived, 2);
  const std::int64_t p = P.p();
  for (const Element& u : elements(c)) {
    const Element lhs = power(P, commutator(P, x, u), p);
    const Element rhs = commutator(P, x, power(P, u, p));
    if (!contains(dpow2, multiply(P, lhs, inverse(P, rhs)))) {
      fail_with(rep, "p-th power of [x,u] deviates from [x,u^p] for u=" +
                         exps_string(u) + ", x=" + exps_string(x));
      return rep;
    }
    ++rep.instances;
  }
  rep.note = "commutator powers against the centralizer agree modulo deep "
             "derived powers, x=" +
             exps_string(x);
  return rep;
}

// --- cyclic: full coverage when the derived subgroup is cyclic -------------

inline LemmaReport verify_cyclic(const PcPresentation& P) {
  LemmaReport rep;
  rep.lemma = "cyclic";
  const Subgroup whole = whole_group(P);
  const Subgroup derived = derived_subgroup(P);
  if (frattini_rank(derived).second > 1)
    return vacuous_report("cyclic", "derived subgroup is not cyclic");
  const Subgroup cstar =
      section_centralizer(P, derived, power_subgroup(derived, 2));
  if (whole.order() / cstar.order() > P.p()) {
    fail_with(rep, "deep centralizer has index above p");
    return rep;
  }
  ++rep.instances;
  const std::vector<Element> partners = elements(cstar);
  const Subgroup dpow2 = power_subgroup(derived, 2);
  for (const Element& x : enumerate_elements(P))
    for (const Element& y : partners) {
      const Element c = commutator(P, x, y);
      if (element_order(P, c) != derived.order()) continue;
      if (!contains(dpow2, commutator(P, c, y))) {
        fail_with(rep, "[x,y,y] escapes the deep derived powers for x=" +
                           exps_string(x) + ", y=" + exps_string(y));
        return rep;
      }
      if (!commutator_set_covers(P, x, derived)) {
        fail_with(rep, "x=" + exps_string(x) +
                           " generates the derived subgroup with a deep "
                           "partner yet does not cover it");
        return rep;
      }
      rep.instances += 2;
      rep.note = "pair x=" + exps_string(x) + ", y=" + exps_string(y) +
                 " generates; x covers the derived subgroup";
      return rep;
    }
  fail_with(rep,
            "no generating pair with partner in the deep centralizer");
  return rep;
}

}  // namespace detail

/** Check one named structural fact on G.  Valid ids are those returned by
 *  lemma_ids(); anything else raises an input error. */
inline LemmaReport verify_lemma(const PcPresentation& P,
                                const std::string& id) {
  detail::check_size_guard(P, "verify_lemma");
  if (id == "blackburn") return detail::verify_blackburn(P);
  if (id == "powerful") return detail::verify_powerful(P);
  if (id == "index2") return detail::verify_index2(P);
  if (id == "central") return detail::verify_central(P);
  if (id == "LN") return detail::verify_LN(P);
  if (id == "C") return detail::verify_C(P);
  if (id == "D") return detail::verify_D(P);
  if (id == "R") return detail::verify_R(P);
  if (id == "prop_DR") return detail::verify_prop_DR(P);
  if (id == "hall_petrescu") return detail::verify_hall_petrescu(P);
  if (id == "cyclic") return detail::verify_cyclic(P);
  std::string known;
  for (const std::string& k : lemma_ids())
    known += (known.empty() ? "" : ", ") + k;
  throw input_error("verify_lemma: unknown lemma id '" + id +
                    "' (known: " + known + ")");
}

// ---------------------------------------------------------------------------
// Coverage audit

/** One-group summary: does a single element cover the derived subgroup by
 *  commutators, does the constructive selection find one, and how does the
 *  group sit relative to the guaranteed two-generator range. */
struct AuditReport {
  std::string group;
  std::uint32_t p = 0;
  std::uint64_t order = 0;
  std::uint32_t derived_rank = 0;
  bool derived_powerful = false;
  enum class Verdict { pass, fail, out_of_hypothesis } verdict =
      Verdict::fail;
  std::uint64_t witness_count = 0;
  bool witness_exists = false;
  bool commutators_cover_derived = false;  // union over all x
  std::optional<Element> constructive;
  std::string branch;
  std::vector<std::string> notes;
};

inline AuditReport theorem_A_audit(const PcPresentation& P,
                                  std::string label = {}) {
  detail::check_size_guard(P, "theorem_A_audit");
  AuditReport rep;
  rep.group = label.empty() ? "p" + std::to_string(P.p()) + "-order" +
                                  std::to_string(P.order())
                            : std::move(label);
  rep.p = P.p();
  rep.order = P.order();
  const Subgroup derived = derived_subgroup(P);
  rep.derived_rank = frattini_rank(derived).second;
  rep.derived_powerful = is_powerful(derived);
  const GroupScan scan(P);
  const detail::ExhaustiveScan ex =
      detail::exhaustive_commutator_scan(scan, derived);
  rep.witness_count = ex.full.size();
  rep.witness_exists = !ex.full.empty();
  rep.commutators_cover_derived = ex.union_covers;
  if (rep.derived_rank > 2) {
    rep.verdict = AuditReport::Verdict::out_of_hypothesis;
    rep.notes.push_back("derived subgroup needs " +
                        std::to_string(rep.derived_rank) +
                        " generators; outside the guaranteed range");
    rep.notes.push_back(rep.witness_exists
                            ? "a single-element witness still exists"
                            : "no single element covers the derived "
                              "subgroup");
    return rep;
  }
  try {
    WitnessResult w = witness_constructive(P);
    rep.constructive = w.x;
    rep.branch = w.trace.branch;
    for (std::string& n : w.trace.notes) rep.notes.push_back(std::move(n));
    const bool listed = std::binary_search(ex.full.begin(), ex.full.end(),
                                           *rep.constructive);
    if (!listed)
      rep.notes.push_back(
          "constructive witness missing from the exhaustive witness list");
    rep.verdict = (rep.witness_exists && listed)
                      ? AuditReport::Verdict::pass
                      : AuditReport::Verdict::fail;
  } catch (const invariant_violation& e) {
    rep.verdict = AuditReport::Verdict::fail;
    rep.notes.push_back(std::string("constructive selection failed: ") +
                        e.what());
  }
  return rep;
}

}  // namespace pcg
