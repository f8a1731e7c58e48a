// Power-commutator presentations of finite p-groups and exact arithmetic on
// their normal forms.  Every generator has relative order p; power relations
// g_i^p and commutator relations [g_j, g_i] (j > i) are words supported on
// strictly deeper generators, so the generator chain refines a central series
// with elementary abelian factors and collection always terminates.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pcg {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/** Base class for all errors raised by this library. */
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Structurally invalid input: bad presentation data, bad element, ... */
class input_error : public error {
 public:
  using error::error;
};

/** A precondition of an operation does not hold for the given arguments. */
class precondition_error : public error {
 public:
  using error::error;
};

/** An enumeration would exceed the configured size guard. */
class size_limit_error : public error {
 public:
  using error::error;
};

/** An internal cross-check failed; indicates a bug, not bad input. */
class invariant_violation : public error {
 public:
  using error::error;
};

// ---------------------------------------------------------------------------
// Elements and words
// ---------------------------------------------------------------------------

/** Exponent vector of a normal form g_1^{e_1} ... g_n^{e_n}, entries in [0,p).
 *  Comparison is lexicographic; it is used everywhere a deterministic order
 *  of elements is needed. */
struct Element {
  std::vector<std::uint32_t> exps;

  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element& a, const Element& b) {
    return std::lexicographical_compare_three_way(
        a.exps.begin(), a.exps.end(), b.exps.begin(), b.exps.end());
  }
};

/** One syllable of an unreduced word: generator index (0-based) raised to an
 *  arbitrary integer exponent. */
struct Letter {
  std::uint32_t gen = 0;
  std::int64_t exp = 0;
};

/** Unreduced word in the generators; collapses to a unique Element under
 *  collection. */
using Word = std::vector<Letter>;

namespace detail {

/** Relation word stored as an exponent vector (support obeys the depth
 *  constraints, entries in [0,p)). */
using ExpVec = std::vector<std::uint32_t>;

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/** p^n, saturating at the largest uint64 instead of wrapping. */
inline std::uint64_t saturating_pow(std::uint64_t p, std::uint32_t n) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / p)
      return std::numeric_limits<std::uint64_t>::max();
    r *= p;
  }
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// PcPresentation
// ---------------------------------------------------------------------------

/** A named relation: g_i^p = word (PowerRelation) with word supported on
 *  indices > i, or [g_j, g_i] = word (CommRelation, j > i) with word supported
 *  on indices > j.  Generator indices are 0-based; exponents must lie in
 *  (0, p) and a generator may appear at most once per word. */
struct PowerRelation {
  std::uint32_t gen = 0;
  Word word;
};

struct CommRelation {
  std::uint32_t hi = 0;  // j in [g_j, g_i]
  std::uint32_t lo = 0;  // i
  Word word;
};

/** Immutable power-commutator presentation.  Omitted relations are trivial.
 *  Once the consistency overlaps hold the group has order exactly p^n and
 *  every element has a unique normal form. */
class PcPresentation {
 public:
  static constexpr std::uint64_t default_size_guard = std::uint64_t{1} << 20;

  PcPresentation(std::uint32_t p, std::uint32_t n,
                 const std::vector<PowerRelation>& powers = {},
                 const std::vector<CommRelation>& comms = {},
                 std::uint64_t size_guard = default_size_guard)
      : p_(p), n_(n), size_guard_(size_guard) {
    if (!detail::is_prime(p_)) {
      throw input_error("pc presentation: p = " + std::to_string(p_) +
                        " is not prime");
    }
    power_.assign(n_, detail::ExpVec(n_, 0));
    comm_.assign(std::size_t{n_} * n_, detail::ExpVec{});
    for (const auto& r : powers) {
      if (r.gen >= n_)
        throw input_error("pc presentation: power relation for generator " +
                          std::to_string(r.gen + 1) + " out of range");
      power_[r.gen] = pack_word(r.word, r.gen, "power word for g" +
                                                   std::to_string(r.gen + 1));
    }
    for (const auto& r : comms) {
      if (r.hi >= n_ || r.lo >= r.hi)
        throw input_error(
            "pc presentation: commutator relation indices (g" +
            std::to_string(r.hi + 1) + ", g" + std::to_string(r.lo + 1) +
            ") must satisfy n >= j > i >= 1");
      comm_at(r.hi, r.lo) =
          pack_word(r.word, r.hi,
                    "commutator word for [g" + std::to_string(r.hi + 1) +
                        ", g" + std::to_string(r.lo + 1) + "]");
      if (std::all_of(comm_at(r.hi, r.lo).begin(), comm_at(r.hi, r.lo).end(),
                      [](std::uint32_t e) { return e == 0; }))
        comm_at(r.hi, r.lo).clear();
    }
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t rank() const { return n_; }

  /** p^n, saturating; exact whenever it is below the size guard. */
  std::uint64_t order() const { return detail::saturating_pow(p_, n_); }

  std::uint64_t size_guard() const { return size_guard_; }

  /** Word for g_i^p as an exponent vector (all-zero means g_i^p = 1). */
  const detail::ExpVec& power_word(std::uint32_t i) const { return power_[i]; }

  /** Word for [g_j, g_i], j > i; empty vector means they commute. */
  const detail::ExpVec& comm_word(std::uint32_t j, std::uint32_t i) const {
    return comm_[std::size_t{j} * n_ + i];
  }

  bool comm_trivial(std::uint32_t j, std::uint32_t i) const {
    return comm_[std::size_t{j} * n_ + i].empty();
  }

  /** Structural equality of the relation tables. */
  friend bool operator==(const PcPresentation& a, const PcPresentation& b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.power_ == b.power_ &&
           a.comm_ == b.comm_;
  }

 private:
  detail::ExpVec& comm_at(std::uint32_t j, std::uint32_t i) {
    return comm_[std::size_t{j} * n_ + i];
  }

  /** Validate a relation word and store it as an exponent vector.  The word
   *  must be supported on indices > owner with exponents in (0, p). */
  detail::ExpVec pack_word(const Word& w, std::uint32_t owner,
                           const std::string& what) const {
    detail::ExpVec v(n_, 0);
    for (const Letter& l : w) {
      if (l.gen >= n_)
        throw input_error("pc presentation: " + what + " uses generator g" +
                          std::to_string(l.gen + 1) + " beyond rank " +
                          std::to_string(n_));
      if (l.gen <= owner)
        throw input_error("pc presentation: " + what +
                          " must be supported on generators deeper than g" +
                          std::to_string(owner + 1));
      if (l.exp <= 0 || l.exp >= p_)
        throw input_error("pc presentation: " + what +
                          " has exponent outside (0, p)");
      if (v[l.gen] != 0)
        throw input_error("pc presentation: " + what + " repeats generator g" +
                          std::to_string(l.gen + 1));
      v[l.gen] = static_cast<std::uint32_t>(l.exp);
    }
    return v;
  }

  std::uint32_t p_;
  std::uint32_t n_;
  std::uint64_t size_guard_;
  std::vector<detail::ExpVec> power_;
  std::vector<detail::ExpVec> comm_;
};

// ---------------------------------------------------------------------------
// Collection from the left
// ---------------------------------------------------------------------------

namespace detail {

/** A pending syllable g^e with 0 < e < p.  The work stack keeps the leftmost
 *  pending syllable at the back. */
struct StackLetter {
  std::uint32_t gen;
  std::uint32_t exp;
};

/** Push a relation word so its syllables are consumed leftmost-first. */
inline void push_word(std::vector<StackLetter>& stack, const ExpVec& w) {
  for (std::uint32_t g = static_cast<std::uint32_t>(w.size()); g-- > 0;)
    if (w[g] != 0) stack.push_back({g, w[g]});
}

/** Collect v * (word on the stack) to normal form.  Invariant throughout:
 *  the group element equals v times the stack content read back-to-front.
 *  Each step either merges the leftmost syllable into v (when v has no
 *  deeper support), swaps it past a commuting tail block, or applies
 *  g_j^a g_i -> g_j^{a-1} g_i g_j [g_j, g_i] once; all corrections are
 *  strictly deeper, which is what makes the loop finite. */
inline ExpVec collect(const PcPresentation& P, ExpVec v,
                      std::vector<StackLetter>& stack) {
  const std::uint32_t p = P.p();
  while (!stack.empty()) {
    const StackLetter l = stack.back();
    stack.pop_back();
    int deepest = -1;
    for (int t = static_cast<int>(v.size()) - 1; t >= 0; --t)
      if (v[t] != 0) {
        deepest = t;
        break;
      }
    if (deepest <= static_cast<int>(l.gen)) {
      const std::uint32_t s = v[l.gen] + l.exp;  // at most 2p-2
      v[l.gen] = s % p;
      if (s >= p) push_word(stack, P.power_word(l.gen));
    } else if (P.comm_trivial(static_cast<std::uint32_t>(deepest), l.gen)) {
      // The deepest block commutes with g_{l.gen}: swap the blocks whole.
      const auto j = static_cast<std::uint32_t>(deepest);
      const std::uint32_t a = v[j];
      v[j] = 0;
      stack.push_back({j, a});
      stack.push_back(l);
    } else {
      const auto j = static_cast<std::uint32_t>(deepest);
      v[j] -= 1;
      if (l.exp > 1) stack.push_back({l.gen, l.exp - 1});
      push_word(stack, P.comm_word(j, l.gen));
      stack.push_back({j, 1});
      stack.push_back({l.gen, 1});
    }
  }
  return v;
}

inline void check_element(const PcPresentation& P, const Element& a,
                          const char* what) {
  if (a.exps.size() != P.rank())
    throw input_error(std::string(what) + ": element rank " +
                      std::to_string(a.exps.size()) +
                      " does not match presentation rank " +
                      std::to_string(P.rank()));
  for (std::uint32_t e : a.exps)
    if (e >= P.p())
      throw input_error(std::string(what) +
                        ": element entry outside [0, p)");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Group operations
// ---------------------------------------------------------------------------

inline Element identity(const PcPresentation& P) {
  return Element{std::vector<std::uint32_t>(P.rank(), 0)};
}

inline bool is_identity(const Element& a) {
  return std::all_of(a.exps.begin(), a.exps.end(),
                     [](std::uint32_t e) { return e == 0; });
}

/** g_i (0-based) as an element. */
inline Element generator(const PcPresentation& P, std::uint32_t i) {
  if (i >= P.rank())
    throw input_error("generator index " + std::to_string(i + 1) +
                      " out of range");
  Element a = identity(P);
  a.exps[i] = 1;
  return a;
}

/** Element from a raw exponent vector; entries must lie in [0, p). */
inline Element element_from(const PcPresentation& P,
                            std::vector<std::uint32_t> exps) {
  Element a{std::move(exps)};
  detail::check_element(P, a, "element_from");
  return a;
}

inline Element multiply(const PcPresentation& P, const Element& a,
                        const Element& b) {
  detail::check_element(P, a, "multiply");
  detail::check_element(P, b, "multiply");
  std::vector<detail::StackLetter> stack;
  stack.reserve(P.rank() + 4);
  detail::push_word(stack, b.exps);
  return Element{detail::collect(P, a.exps, stack)};
}

/** Inverse by clearing slots left to right: multiplying on the right by
 *  g_i^{p-e} only touches slots >= i, so after pass i the product a*x is
 *  trivial up to slot i. */
inline Element inverse(const PcPresentation& P, const Element& a) {
  detail::check_element(P, a, "inverse");
  Element x = identity(P);
  Element r = a;
  for (std::uint32_t i = 0; i < P.rank(); ++i) {
    const std::uint32_t e = r.exps[i];
    if (e == 0) continue;
    Element step = identity(P);
    step.exps[i] = P.p() - e;
    x = multiply(P, x, step);
    r = multiply(P, r, step);
  }
  return x;
}

inline Element power(const PcPresentation& P, const Element& a,
                     std::int64_t k) {
  detail::check_element(P, a, "power");
  Element base = a;
  if (k < 0) {
    base = inverse(P, base);
    k = -k;
  }
  Element r = identity(P);
  auto e = static_cast<std::uint64_t>(k);
  while (e != 0) {
    if (e & 1) r = multiply(P, r, base);
    e >>= 1;
    if (e != 0) base = multiply(P, base, base);
  }
  return r;
}

/** b^{-1} a b. */
inline Element conjugate(const PcPresentation& P, const Element& a,
                         const Element& b) {
  return multiply(P, multiply(P, inverse(P, b), a), b);
}

/** [a, b] = a^{-1} b^{-1} a b, computed as (ba)^{-1}(ab). */
inline Element commutator(const PcPresentation& P, const Element& a,
                          const Element& b) {
  return multiply(P, inverse(P, multiply(P, b, a)), multiply(P, a, b));
}

/** Collapse an arbitrary word to its normal form. */
inline Element evaluate(const PcPresentation& P, const Word& w) {
  Element r = identity(P);
  for (const Letter& l : w) {
    if (l.gen >= P.rank())
      throw input_error("evaluate: generator g" + std::to_string(l.gen + 1) +
                        " out of range");
    r = multiply(P, r, power(P, generator(P, l.gen), l.exp));
  }
  return r;
}

/** Order of a, always a power of p. */
inline std::uint64_t element_order(const PcPresentation& P, const Element& a) {
  detail::check_element(P, a, "element_order");
  Element t = a;
  std::uint64_t ord = 1;
  while (!is_identity(t)) {
    t = power(P, t, P.p());
    ord *= P.p();
  }
  return ord;
}

/** Rank of a in the lexicographic enumeration of all exponent vectors. */
inline std::uint64_t element_index(const PcPresentation& P, const Element& a) {
  detail::check_element(P, a, "element_index");
  std::uint64_t idx = 0;
  for (std::uint32_t i = 0; i < P.rank(); ++i) idx = idx * P.p() + a.exps[i];
  return idx;
}

inline Element element_at(const PcPresentation& P, std::uint64_t idx) {
  Element a = identity(P);
  for (std::uint32_t i = P.rank(); i-- > 0;) {
    a.exps[i] = static_cast<std::uint32_t>(idx % P.p());
    idx /= P.p();
  }
  if (idx != 0)
    throw input_error("element_at: index beyond group order");
  return a;
}

namespace detail {

inline void check_size_guard(const PcPresentation& P, const char* what) {
  if (P.order() > P.size_guard())
    throw size_limit_error(std::string(what) + ": group order exceeds the " +
                           "size guard of " + std::to_string(P.size_guard()) +
                           " elements");
}

}  // namespace detail

/** Visit every exponent vector in lexicographic order.  Guarded. */
inline void for_each_element(const PcPresentation& P,
                             const std::function<void(const Element&)>& fn) {
  detail::check_size_guard(P, "for_each_element");
  Element a = identity(P);
  const std::uint32_t n = P.rank();
  for (;;) {
    fn(a);
    std::uint32_t i = n;
    while (i > 0) {
      --i;
      if (++a.exps[i] < P.p()) break;
      a.exps[i] = 0;
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

/** All elements in lexicographic order.  Guarded. */
inline std::vector<Element> enumerate_elements(const PcPresentation& P) {
  detail::check_size_guard(P, "enumerate_elements");
  std::vector<Element> out;
  out.reserve(static_cast<std::size_t>(P.order()));
  for_each_element(P, [&](const Element& a) { out.push_back(a); });
  return out;
}

// ---------------------------------------------------------------------------
// Consistency
// ---------------------------------------------------------------------------

/** Result of the overlap tests.  When a presentation fails, (k, j, i) are the
 *  1-based generator indices of the first failing overlap in test order, and
 *  lhs/rhs are the two distinct collected normal forms. */
struct ConsistencyReport {
  enum class Overlap { none, associativity, power_left, power_right,
                       power_self };

  bool consistent = true;
  Overlap overlap = Overlap::none;
  std::uint32_t k = 0, j = 0, i = 0;  // 1-based; unused trailing indices are 0
  Element lhs, rhs;
  std::uint64_t overlaps_checked = 0;

  std::string describe() const {
    if (consistent) return "consistent";
    std::string where;
    switch (overlap) {
      case Overlap::associativity:
        where = "associativity overlap (g" + std::to_string(k) + ",g" +
                std::to_string(j) + ",g" + std::to_string(i) + ")";
        break;
      case Overlap::power_left:
        where = "power overlap g" + std::to_string(j) + "^p * g" +
                std::to_string(i);
        break;
      case Overlap::power_right:
        where = "power overlap g" + std::to_string(j) + " * g" +
                std::to_string(i) + "^p";
        break;
      case Overlap::power_self:
        where = "power overlap g" + std::to_string(i) + "^p * g" +
                std::to_string(i);
        break;
      default:
        where = "unknown overlap";
    }
    return "inconsistent at " + where;
  }
};

/** Overlap tests for a presentation with prime relative orders: associativity
 *  overlaps (g_k g_j) g_i vs g_k (g_j g_i) for k >= j >= i, and the power
 *  overlaps of g_j^p against a shallower g_i and of g_i^p against g_i itself.
 *  Together these certify that collected normal forms are unique, i.e. that
 *  |G| = p^n. */
inline ConsistencyReport check_consistency(const PcPresentation& P) {
  ConsistencyReport rep;
  const std::uint32_t n = P.rank();
  std::vector<Element> gen(n), pw(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    gen[i] = generator(P, i);
    pw[i] = Element{P.power_word(i)};  // already a normal form
  }
  auto fail = [&](ConsistencyReport::Overlap o, std::uint32_t k,
                  std::uint32_t j, std::uint32_t i, Element lhs, Element rhs) {
    rep.consistent = false;
    rep.overlap = o;
    rep.k = k;
    rep.j = j;
    rep.i = i;
    rep.lhs = std::move(lhs);
    rep.rhs = std::move(rhs);
  };

  for (std::uint32_t k = 0; k < n; ++k)
    for (std::uint32_t j = 0; j <= k; ++j)
      for (std::uint32_t i = 0; i <= j; ++i) {
        Element lhs = multiply(P, multiply(P, gen[k], gen[j]), gen[i]);
        Element rhs = multiply(P, gen[k], multiply(P, gen[j], gen[i]));
        ++rep.overlaps_checked;
        if (lhs != rhs) {
          fail(ConsistencyReport::Overlap::associativity, k + 1, j + 1, i + 1,
               std::move(lhs), std::move(rhs));
          return rep;
        }
      }

  for (std::uint32_t j = 0; j < n; ++j)
    for (std::uint32_t i = 0; i <= j; ++i) {
      if (i < j) {
        // g_j^p * g_i  vs  g_j^{p-1} * (g_j * g_i)
        Element lhs = multiply(P, pw[j], gen[i]);
        Element rhs = multiply(P, power(P, gen[j], P.p() - 1),
                               multiply(P, gen[j], gen[i]));
        ++rep.overlaps_checked;
        if (lhs != rhs) {
          fail(ConsistencyReport::Overlap::power_left, 0, j + 1, i + 1,
               std::move(lhs), std::move(rhs));
          return rep;
        }
        // g_j * g_i^p  vs  (g_j g_i) * g_i^{p-1}
        lhs = multiply(P, gen[j], pw[i]);
        rhs = multiply(P, multiply(P, gen[j], gen[i]),
                       power(P, gen[i], P.p() - 1));
        ++rep.overlaps_checked;
        if (lhs != rhs) {
          fail(ConsistencyReport::Overlap::power_right, 0, j + 1, i + 1,
               std::move(lhs), std::move(rhs));
          return rep;
        }
      } else {
        // g_i^p * g_i  vs  g_i * g_i^p
        Element lhs = multiply(P, pw[i], gen[i]);
        Element rhs = multiply(P, gen[i], pw[i]);
        ++rep.overlaps_checked;
        if (lhs != rhs) {
          fail(ConsistencyReport::Overlap::power_self, 0, 0, i + 1,
               std::move(lhs), std::move(rhs));
          return rep;
        }
      }
    }

  return rep;
}

namespace detail {

/** Rebuild the sparse word for an exponent vector, shifting generator
 *  indices by `offset`. */
inline Word shifted_word(const ExpVec& v, std::uint32_t offset) {
  Word w;
  for (std::uint32_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) w.push_back({i + offset, static_cast<std::int64_t>(v[i])});
  return w;
}

}  // namespace detail

/** Presentation of A x B: A's generators first, B's generators after them,
 *  with all cross commutators trivial.  Consistent whenever A and B are. */
inline PcPresentation direct_product(const PcPresentation& A,
                                     const PcPresentation& B) {
  if (A.p() != B.p())
    throw input_error("direct_product: factors have different primes");
  const std::uint32_t na = A.rank(), nb = B.rank();
  std::vector<PowerRelation> powers;
  std::vector<CommRelation> comms;
  for (std::uint32_t i = 0; i < na; ++i)
    if (!is_identity(Element{A.power_word(i)}))
      powers.push_back({i, detail::shifted_word(A.power_word(i), 0)});
  for (std::uint32_t i = 0; i < nb; ++i)
    if (!is_identity(Element{B.power_word(i)}))
      powers.push_back({i + na, detail::shifted_word(B.power_word(i), na)});
  for (std::uint32_t j = 1; j < na; ++j)
    for (std::uint32_t i = 0; i < j; ++i)
      if (!A.comm_word(j, i).empty())
        comms.push_back({j, i, detail::shifted_word(A.comm_word(j, i), 0)});
  for (std::uint32_t j = 1; j < nb; ++j)
    for (std::uint32_t i = 0; i < nb; ++i)
      if (i < j && !B.comm_word(j, i).empty())
        comms.push_back(
            {j + na, i + na, detail::shifted_word(B.comm_word(j, i), na)});
  return PcPresentation(A.p(), na + nb, powers, comms,
                        std::max(A.size_guard(), B.size_guard()));
}

}  // namespace pcg
