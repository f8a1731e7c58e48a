// Subgroups of a pc-presented p-group in canonical echelon form: generators
// with strictly increasing leading indices, leading exponent 1, and zero
// entries at every deeper pivot slot.  Because the generator chain refines a
// central series, the leading slot of a product adds like a vector-space
// coordinate, which makes the canonical form unique per subgroup and gives an
// O(rank) membership sift.

#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "pcgroup/presentation.hpp"

namespace pcg {

namespace detail {

inline std::uint32_t inverse_mod(std::uint32_t e, std::uint32_t p) {
  // p prime, 0 < e < p
  std::uint32_t r = 1, base = e, k = p - 2;
  while (k != 0) {
    if (k & 1) r = static_cast<std::uint32_t>((std::uint64_t{r} * base) % p);
    base = static_cast<std::uint32_t>((std::uint64_t{base} * base) % p);
    k >>= 1;
  }
  return r;
}

inline int leading_index(const Element& a) {
  for (std::size_t i = 0; i < a.exps.size(); ++i)
    if (a.exps[i] != 0) return static_cast<int>(i);
  return -1;
}

}  // namespace detail

/** Subgroup in canonical echelon form.  Value type; build with close(). */
class Subgroup {
 public:
  Subgroup() = default;

  const PcPresentation& group() const {
    if (owner_ == nullptr)
      throw input_error("subgroup: default-constructed value has no group");
    return *owner_;
  }
  const std::vector<Element>& generators() const { return gens_; }
  const std::vector<std::uint32_t>& pivots() const { return pivots_; }
  std::uint64_t order() const { return order_; }
  bool trivial() const { return gens_.empty(); }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.owner_ == b.owner_ && a.gens_ == b.gens_;
  }
  friend bool operator!=(const Subgroup& a, const Subgroup& b) {
    return !(a == b);
  }

  /** Deterministic order on subgroups of one group. */
  friend bool operator<(const Subgroup& a, const Subgroup& b) {
    return std::lexicographical_compare(a.gens_.begin(), a.gens_.end(),
                                        b.gens_.begin(), b.gens_.end());
  }

 private:
  friend Subgroup close(const PcPresentation&, const std::vector<Element>&);

  const PcPresentation* owner_ = nullptr;
  std::vector<Element> gens_;          // echelonized, canonical
  std::vector<std::uint32_t> pivots_;  // leading index of each generator
  std::uint64_t order_ = 1;
};

namespace detail {

/** Reduce a against the pivot table; the residue is either trivial (member)
 *  or has a leading index not yet used as a pivot. */
inline Element sift(const PcPresentation& P,
                    const std::vector<std::optional<Element>>& pivot,
                    Element a) {
  for (;;) {
    const int d = leading_index(a);
    if (d < 0) return a;
    const auto& s = pivot[static_cast<std::size_t>(d)];
    if (!s.has_value()) return a;
    // pivot leading exponent is 1, so s^{p-e} * a clears slot d
    a = multiply(P, power(P, *s, P.p() - a.exps[static_cast<std::size_t>(d)]),
                 a);
  }
}

inline void check_same_group(const Subgroup& a, const Subgroup& b,
                             const char* what) {
  if (&a.group() != &b.group())
    throw input_error(std::string(what) +
                      ": subgroups belong to different groups");
}

inline void check_owner(const PcPresentation& P, const Subgroup& s,
                        const char* what) {
  if (&s.group() != &P)
    throw input_error(std::string(what) +
                      ": subgroup belongs to a different group");
}

}  // namespace detail

/** Subgroup generated by the given elements: sift-insert each generator and
 *  close the pivot set under p-th powers and pairwise commutators, then
 *  normalize to the unique canonical echelon form. */
inline Subgroup close(const PcPresentation& P,
                      const std::vector<Element>& gens) {
  const std::uint32_t n = P.rank();
  for (const Element& g : gens) detail::check_element(P, g, "close");
  std::vector<std::optional<Element>> pivot(n);
  std::deque<Element> queue(gens.begin(), gens.end());

  while (!queue.empty()) {
    Element a = std::move(queue.front());
    queue.pop_front();
    Element r = detail::sift(P, pivot, std::move(a));
    const int d = detail::leading_index(r);
    if (d < 0) continue;
    const std::uint32_t e = r.exps[static_cast<std::size_t>(d)];
    if (e != 1) r = power(P, r, detail::inverse_mod(e, P.p()));
    // closure obligations for the new pivot, in both orientations
    queue.push_back(power(P, r, P.p()));
    for (const auto& s : pivot)
      if (s.has_value()) {
        queue.push_back(commutator(P, r, *s));
        queue.push_back(commutator(P, *s, r));
      }
    pivot[static_cast<std::size_t>(d)] = std::move(r);
  }

  Subgroup S;
  S.owner_ = &P;
  for (std::uint32_t d = 0; d < n; ++d)
    if (pivot[d].has_value()) {
      S.gens_.push_back(std::move(*pivot[d]));
      S.pivots_.push_back(d);
      S.order_ *= P.p();
    }
  // canonical form: clear entries at deeper pivot slots, shallowest first
  for (std::size_t i = 0; i < S.gens_.size(); ++i)
    for (std::size_t j = i + 1; j < S.gens_.size(); ++j) {
      const std::uint32_t c = S.gens_[i].exps[S.pivots_[j]];
      if (c != 0)
        S.gens_[i] = multiply(P, S.gens_[i], power(P, S.gens_[j], P.p() - c));
    }
  return S;
}

inline Subgroup trivial_subgroup(const PcPresentation& P) {
  return close(P, {});
}

inline Subgroup whole_group(const PcPresentation& P) {
  std::vector<Element> gens;
  gens.reserve(P.rank());
  for (std::uint32_t i = 0; i < P.rank(); ++i) gens.push_back(generator(P, i));
  return close(P, gens);
}

/** Canonical representative of the right coset S·a: clear the exponent at
 *  every pivot slot, shallowest first.  Left-multiplying by a generator
 *  supported at depth >= t never changes slots < t, so the result is the
 *  unique element of S·a with zero entries at all pivot slots; two elements
 *  share a residue exactly when they lie in the same coset. */
inline Element coset_residue(const Subgroup& S, const Element& a) {
  const PcPresentation& P = S.group();
  detail::check_element(P, a, "coset_residue");
  Element r = a;
  for (std::size_t t = 0; t < S.pivots().size(); ++t) {
    const std::uint32_t e = r.exps[S.pivots()[t]];
    if (e != 0)
      r = multiply(P, power(P, S.generators()[t], P.p() - e), r);
  }
  return r;
}

/** Membership test by sifting through the echelon generators. */
inline bool contains(const Subgroup& S, const Element& a) {
  return is_identity(coset_residue(S, a));
}

/** Whether B is contained in A (generator test). */
inline bool contains(const Subgroup& A, const Subgroup& B) {
  detail::check_same_group(A, B, "contains");
  return std::all_of(B.generators().begin(), B.generators().end(),
                     [&](const Element& g) { return contains(A, g); });
}

/** |A : B| for B <= A. */
inline std::uint64_t index(const Subgroup& A, const Subgroup& B) {
  detail::check_same_group(A, B, "index");
  if (!contains(A, B))
    throw precondition_error("index: second subgroup is not contained in the "
                             "first");
  return A.order() / B.order();
}

/** All elements of S in lexicographic order.  Guarded. */
inline std::vector<Element> elements(const Subgroup& S) {
  const PcPresentation& P = S.group();
  if (S.order() > P.size_guard())
    throw size_limit_error("elements: subgroup order exceeds the size guard");
  const std::uint32_t p = P.p();
  const std::size_t m = S.generators().size();
  // powers[i][a] = gens[i]^a
  std::vector<std::vector<Element>> powers(m);
  for (std::size_t i = 0; i < m; ++i) {
    powers[i].resize(p);
    powers[i][0] = identity(P);
    for (std::uint32_t a = 1; a < p; ++a)
      powers[i][a] = multiply(P, powers[i][a - 1], S.generators()[i]);
  }
  std::vector<Element> out;
  out.reserve(static_cast<std::size_t>(S.order()));
  std::vector<Element> prefix(m + 1);
  prefix[0] = identity(P);
  std::vector<std::uint32_t> digit(m, 0);
  for (std::size_t level = 0;;) {
    if (level == m) {
      out.push_back(prefix[m]);
      // advance odometer from the deepest level
      while (level > 0 && digit[level - 1] + 1 == p) {
        digit[level - 1] = 0;
        --level;
      }
      if (level == 0) break;
      ++digit[level - 1];
      prefix[level] =
          multiply(P, prefix[level - 1], powers[level - 1][digit[level - 1]]);
      continue;
    }
    prefix[level + 1] =
        multiply(P, prefix[level], powers[level][digit[level]]);
    ++level;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/** [A, B]: generated by generator commutators, closed under conjugation by
 *  the generators of A and B (fixpoint).  When A and B are normal this is the
 *  full commutator subgroup. */
inline Subgroup commutator_subgroup(const Subgroup& A, const Subgroup& B) {
  detail::check_same_group(A, B, "commutator_subgroup");
  const PcPresentation& P = A.group();
  std::vector<Element> gens;
  for (const Element& a : A.generators())
    for (const Element& b : B.generators()) {
      gens.push_back(commutator(P, a, b));
      gens.push_back(commutator(P, b, a));
    }
  Subgroup S = close(P, gens);
  std::vector<Element> conjugators = A.generators();
  conjugators.insert(conjugators.end(), B.generators().begin(),
                     B.generators().end());
  for (bool grew = true; grew;) {
    grew = false;
    for (const Element& s : S.generators()) {
      for (const Element& c : conjugators) {
        const Element x = conjugate(P, s, c);
        if (!contains(S, x)) {
          std::vector<Element> g2 = S.generators();
          g2.push_back(x);
          S = close(P, g2);
          grew = true;
          break;
        }
      }
      if (grew) break;
    }
  }
  return S;
}

/** Descending lower central series, ending with the trivial subgroup. */
inline std::vector<Subgroup> lower_central_series(const PcPresentation& P) {
  const Subgroup G = whole_group(P);
  std::vector<Subgroup> series{G};
  while (!series.back().trivial()) {
    Subgroup next = commutator_subgroup(series.back(), G);
    if (next.order() >= series.back().order())
      throw invariant_violation(
          "lower_central_series: series failed to descend");
    series.push_back(std::move(next));
  }
  return series;
}

/** H^{p^i}, generated by the p^i-th powers of all elements of H. */
inline Subgroup power_subgroup(const Subgroup& H, std::uint32_t i) {
  const PcPresentation& P = H.group();
  if (i == 0) return H;
  std::uint64_t q = 1;
  for (std::uint32_t t = 0; t < i; ++t) q *= P.p();
  std::set<Element> powers;
  for (const Element& h : elements(H))
    powers.insert(power(P, h, static_cast<std::int64_t>(q)));
  return close(P, std::vector<Element>(powers.begin(), powers.end()));
}

/** Frattini subgroup H^p [H,H] together with the minimal generator count
 *  d(H) = log_p |H : Phi(H)|. */
inline std::pair<Subgroup, std::uint32_t> frattini_rank(const Subgroup& H) {
  const PcPresentation& P = H.group();
  std::vector<Element> gens;
  for (const Element& h : H.generators()) gens.push_back(power(P, h, P.p()));
  for (const Element& a : H.generators())
    for (const Element& b : H.generators())
      gens.push_back(commutator(P, a, b));
  Subgroup phi = close(P, gens);
  std::uint64_t idx = H.order() / phi.order();
  std::uint32_t d = 0;
  while (idx > 1) {
    idx /= P.p();
    ++d;
  }
  return {std::move(phi), d};
}

/** Structural predicates of H relative to its ambient group. */
struct StructurePredicates {
  bool abelian = false;
  bool normal = false;               // normal in the ambient group
  bool powerful = false;             // [H,H] <= H^p (p odd) or <= H^4 (p = 2)
  bool powerfully_embedded = false;  // [H,G] <= H^p (p odd) or <= H^4 (p = 2)
  bool cyclic = false;
  std::uint64_t exponent = 1;
};

inline bool is_normal(const Subgroup& H) {
  const PcPresentation& P = H.group();
  for (const Element& h : H.generators())
    for (std::uint32_t i = 0; i < P.rank(); ++i)
      if (!contains(H, conjugate(P, h, generator(P, i)))) return false;
  return true;
}

inline bool is_abelian(const Subgroup& H) {
  const PcPresentation& P = H.group();
  for (const Element& a : H.generators())
    for (const Element& b : H.generators())
      if (!is_identity(commutator(P, a, b))) return false;
  return true;
}

/** [H,H] <= H^p for odd p, [H,H] <= H^4 for p = 2. */
inline bool is_powerful(const Subgroup& H) {
  const PcPresentation& P = H.group();
  const Subgroup deep_power = power_subgroup(H, P.p() == 2 ? 2 : 1);
  return contains(deep_power, commutator_subgroup(H, H));
}

/** [H,G] <= H^p for odd p, [H,G] <= H^4 for p = 2. */
inline bool is_powerfully_embedded(const Subgroup& H) {
  const PcPresentation& P = H.group();
  const Subgroup deep_power = power_subgroup(H, P.p() == 2 ? 2 : 1);
  return contains(deep_power, commutator_subgroup(H, whole_group(P)));
}

inline StructurePredicates structure_predicates(const Subgroup& H) {
  const PcPresentation& P = H.group();
  StructurePredicates out;
  out.abelian = is_abelian(H);
  out.normal = is_normal(H);
  out.powerful = is_powerful(H);
  out.powerfully_embedded = is_powerfully_embedded(H);
  out.cyclic = frattini_rank(H).second <= 1;
  out.exponent = 1;
  for (const Element& h : elements(H))
    out.exponent = std::max(out.exponent, element_order(P, h));
  return out;
}

/** Largest subgroup C with [L, C] <= N, for N <= L both normal in G:
 *  C = {g in G : [l, g] in N for every generator l of L}.  Testing the
 *  generators of L suffices because N is normal; candidates already inside
 *  the partial result are products of accepted elements and are skipped. */
inline Subgroup section_centralizer(const PcPresentation& P, const Subgroup& L,
                                    const Subgroup& N) {
  detail::check_owner(P, L, "section_centralizer");
  detail::check_owner(P, N, "section_centralizer");
  if (!contains(L, N))
    throw precondition_error("section_centralizer: N must be contained in L");
  if (!is_normal(N) || !is_normal(L))
    throw precondition_error(
        "section_centralizer: L and N must be normal in the group");
  Subgroup C = trivial_subgroup(P);
  for_each_element(P, [&](const Element& g) {
    if (contains(C, g)) return;
    for (const Element& l : L.generators())
      if (!contains(N, commutator(P, l, g))) return;
    std::vector<Element> gens = C.generators();
    gens.push_back(g);
    C = close(P, gens);
  });
  return C;
}

/** All maximal G-normal proper subgroups of N: the hyperplane preimages of
 *  the elementary abelian, G-central quotient N / ([N,G] N^p).  Every such
 *  subgroup has index p in N; there are (p^r - 1)/(p - 1) of them where r is
 *  the quotient's rank.  Sorted deterministically. */
inline std::vector<Subgroup> maximal_normal_under(const PcPresentation& P,
                                                  const Subgroup& N) {
  detail::check_owner(P, N, "maximal_normal_under");
  if (N.trivial())
    throw precondition_error("maximal_normal_under: N must be nontrivial");
  if (!is_normal(N))
    throw precondition_error("maximal_normal_under: N must be normal");
  std::vector<Element> mg =
      commutator_subgroup(N, whole_group(P)).generators();
  const Subgroup npow = power_subgroup(N, 1);
  for (const Element& g : npow.generators()) mg.push_back(g);
  const Subgroup M = close(P, mg);

  // coset basis of N over M
  std::vector<Element> basis;
  Subgroup span = M;
  for (const Element& g : N.generators())
    if (!contains(span, g)) {
      basis.push_back(g);
      std::vector<Element> gens = span.generators();
      gens.push_back(g);
      span = close(P, gens);
    }
  if (span != N)
    throw invariant_violation("maximal_normal_under: basis span mismatch");

  const std::uint32_t r = static_cast<std::uint32_t>(basis.size());
  const std::uint32_t p = P.p();
  std::vector<Subgroup> out;
  // functionals phi with first nonzero coordinate 1, lexicographic order
  std::vector<std::uint32_t> phi(r, 0);
  for (std::uint32_t s = 0; s < r; ++s) {
    std::fill(phi.begin(), phi.end(), 0);
    phi[s] = 1;
    for (;;) {
      // kernel basis: e_t for t < s, and b_t * b_s^{-phi_t} for t > s
      std::vector<Element> gens = M.generators();
      for (std::uint32_t t = 0; t < r; ++t) {
        if (t == s) continue;
        if (phi[t] == 0)
          gens.push_back(basis[t]);
        else
          gens.push_back(multiply(P, basis[t],
                                  power(P, basis[s], p - phi[t])));
      }
      Subgroup T = close(P, gens);
      if (N.order() / T.order() != p)
        throw invariant_violation(
            "maximal_normal_under: hyperplane preimage has wrong index");
      out.push_back(std::move(T));
      // next functional with pivot s: increment digits right of s
      std::uint32_t t = r;
      bool done = true;
      while (t > s + 1) {
        --t;
        if (++phi[t] < p) {
          done = false;
          break;
        }
        phi[t] = 0;
      }
      if (done) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/** A intersect B, by filtering the elements of the smaller subgroup. */
inline Subgroup intersection(const Subgroup& A, const Subgroup& B) {
  detail::check_same_group(A, B, "intersection");
  const PcPresentation& P = A.group();
  const Subgroup& small = A.order() <= B.order() ? A : B;
  const Subgroup& large = A.order() <= B.order() ? B : A;
  Subgroup S = trivial_subgroup(P);
  for (const Element& x : elements(small)) {
    if (contains(S, x) || !contains(large, x)) continue;
    std::vector<Element> gens = S.generators();
    gens.push_back(x);
    S = close(P, gens);
  }
  return S;
}

/** Derived subgroup [G, G]. */
inline Subgroup derived_subgroup(const PcPresentation& P) {
  const Subgroup G = whole_group(P);
  return commutator_subgroup(G, G);
}

/** Center Z(G) as the centralizer of G over the trivial subgroup. */
inline Subgroup center(const PcPresentation& P) {
  return section_centralizer(P, whole_group(P), trivial_subgroup(P));
}

/** Every subgroup of G, sorted canonically.  Breadth-first closure of
 *  one-generator extensions; within one parent, all representatives of a
 *  coset S·x generate the same extension, so each coset is tried once.
 *  Exponential in general and guarded by the presentation's size guard. */
inline std::vector<Subgroup> all_subgroups(const PcPresentation& P) {
  detail::check_size_guard(P, "all_subgroups");
  const std::vector<Element> elems = enumerate_elements(P);
  std::set<Subgroup> found;
  std::vector<Subgroup> work{trivial_subgroup(P)};
  found.insert(work.front());
  std::vector<char> covered(elems.size());
  for (std::size_t w = 0; w < work.size(); ++w) {
    const Subgroup S = work[w];
    const std::vector<Element> s_elems = elements(S);
    std::fill(covered.begin(), covered.end(), 0);
    for (const Element& x : elems) {
      if (covered[element_index(P, x)]) continue;
      for (const Element& s : s_elems)
        covered[element_index(P, multiply(P, s, x))] = 1;
      std::vector<Element> gens = S.generators();
      gens.push_back(x);
      Subgroup T = close(P, gens);
      if (T.order() == S.order()) continue;  // x was already in S
      if (found.insert(T).second) work.push_back(std::move(T));
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace pcg
