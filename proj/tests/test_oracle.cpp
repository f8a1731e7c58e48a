// Brute-force oracle: multiplication-table ground truth, group-axiom audit,
// and the lattice-vs-oracle diff.

#include <algorithm>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "pcgroup/oracle.hpp"

using namespace pcg;

namespace {

Element el(const PcPresentation& P, std::vector<std::uint32_t> exps) {
  (void)P;
  return Element{std::move(exps)};
}

PcPresentation d8() {
  return PcPresentation(2, 3, {{1, {{2, 1}}}}, {{1, 0, {{2, 1}}}});
}

PcPresentation q8() {
  return PcPresentation(2, 3, {{0, {{2, 1}}}, {1, {{2, 1}}}},
                        {{1, 0, {{2, 1}}}});
}

PcPresentation c8() {
  return PcPresentation(2, 3, {{0, {{1, 1}}}, {1, {{2, 1}}}}, {});
}

PcPresentation heis(std::uint32_t p) {
  return PcPresentation(p, 3, {}, {{1, 0, {{2, 1}}}});
}

PcPresentation wreath3() {
  return PcPresentation(3, 4, {}, {{1, 0, {{2, 1}}}, {2, 0, {{3, 1}}}});
}

PcPresentation jordan32() {
  return PcPresentation(
      2, 5, {{0, {{2, 1}}}},
      {{1, 0, {{3, 1}}}, {2, 1, {{4, 1}}}, {3, 0, {{4, 1}}}});
}

PcPresentation c2group64() {
  return PcPresentation(2, 6,
                        {{0, {{3, 1}}}, {1, {{4, 1}}}, {2, {{5, 1}}}},
                        {{1, 0, {{2, 1}}},
                         {2, 0, {{4, 1}}},
                         {3, 1, {{4, 1}, {5, 1}}},
                         {3, 2, {{5, 1}}},
                         {4, 0, {{5, 1}}}});
}

PcPresentation blackburn32() {
  return PcPresentation(2, 5,
                        {{0, {{1, 1}}}, {2, {{3, 1}}}, {3, {{4, 1}}}},
                        {{2, 0, {{4, 1}}}});
}

// claims order 8 but g1^2 = g2 together with [g2,g1] = g3 collapses it
PcPresentation planted_inconsistency() {
  return PcPresentation(2, 3, {{0, {{1, 1}}}}, {{1, 0, {{2, 1}}}});
}

}  // namespace

TEST_CASE("brute group table agrees with collection on construction") {
  const PcPresentation D = d8();
  const BruteGroup B(D);
  REQUIRE(B.size() == 8);
  for (std::size_t i = 0; i < B.size(); ++i) {
    REQUIRE(B.index_of(B.element(i)) == i);
    REQUIRE(B.has_inverse(i));
    REQUIRE(B.mult(i, B.inv(i)) == 0);
  }
  // spec'd order example: the rotation generator has order 4
  REQUIRE(B.order_of(B.index_of(generator(D, 1))) == 4);
  REQUIRE(B.order_of(0) == 1);

  const PcPresentation tiny(3, 3, {}, {{1, 0, {{2, 1}}}}, 4);
  REQUIRE_THROWS_AS(BruteGroup{tiny}, pcg::size_limit_error);
  REQUIRE_THROWS_AS(BruteGroup(heis(3), 16), pcg::size_limit_error);
}

TEST_CASE("brute commutator sets") {
  const PcPresentation D = d8();
  REQUIRE(brute_commutator_set(BruteGroup(D)) ==
          std::vector<Element>{el(D, {0, 0, 0}), el(D, {0, 0, 1})});

  REQUIRE(brute_commutator_set(BruteGroup(c8())) ==
          std::vector<Element>{identity(c8())});

  const PcPresentation H = heis(3);
  const std::vector<Element> kh = brute_commutator_set(BruteGroup(H));
  REQUIRE(kh == std::vector<Element>{el(H, {0, 0, 0}), el(H, {0, 0, 1}),
                                     el(H, {0, 0, 2})});
  REQUIRE(close(H, kh) == derived_subgroup(H));
}

TEST_CASE("brute subgroups by kind") {
  const PcPresentation D = d8();
  const BruteGroup B(D);
  REQUIRE(brute_subgroup(B, "center") ==
          std::vector<Element>{el(D, {0, 0, 0}), el(D, {0, 0, 1})});
  REQUIRE(brute_subgroup(B, "derived") ==
          std::vector<Element>{el(D, {0, 0, 0}), el(D, {0, 0, 1})});
  REQUIRE(brute_subgroup(B, "close", {identity(D)}) ==
          std::vector<Element>{identity(D)});
  const std::vector<Element> rot =
      brute_subgroup(B, "close", {generator(D, 1)});
  REQUIRE(rot.size() == 4);
  REQUIRE(std::binary_search(rot.begin(), rot.end(), el(D, {0, 0, 1})));
  REQUIRE(brute_subgroup(B, "section_centralizer",
                         brute_subgroup(B, "close",
                                        {generator(D, 0), generator(D, 1)})) ==
          brute_subgroup(B, "center"));

  const BruteGroup BH(heis(3));
  REQUIRE(brute_subgroup(BH, "power", {}, {}, 1) ==
          std::vector<Element>{identity(heis(3))});

  REQUIRE_THROWS_AS(brute_subgroup(B, "nope"), pcg::input_error);
}

TEST_CASE("cayley sanity: axioms and associativity") {
  const CayleyReport rd = cayley_sanity(BruteGroup(d8()));
  REQUIRE(rd.pass);
  REQUIRE(rd.exhaustive);
  REQUIRE(rd.triples == 512);
  REQUIRE(rd.violation_count == 0);

  const CayleyReport rt = cayley_sanity(BruteGroup(PcPresentation(2, 0)));
  REQUIRE(rt.pass);
  REQUIRE(rt.triples == 1);

  const CayleyReport rw = cayley_sanity(BruteGroup(wreath3()));
  REQUIRE(rw.pass);
  REQUIRE(rw.exhaustive);
  REQUIRE(rw.triples == 81ull * 81 * 81);

  // above the exhaustive cutoff the check samples seeded random triples
  const PcPresentation big = direct_product(heis(3), heis(3));
  const BruteGroup BB(big);
  const CayleyReport rb = cayley_sanity(BB, 7);
  REQUIRE(rb.pass);
  REQUIRE_FALSE(rb.exhaustive);
  REQUIRE(rb.triples == 10000);
  const CayleyReport rb2 = cayley_sanity(BB, 7);
  REQUIRE(rb2.pass == rb.pass);
  REQUIRE(rb2.triples == rb.triples);
  REQUIRE(cayley_sanity(BB, 8).pass);

  // the planted inconsistency is caught by the table audit as well
  const CayleyReport bad = cayley_sanity(BruteGroup(planted_inconsistency()));
  REQUIRE_FALSE(bad.pass);
  REQUIRE(bad.violation_count > 0);
  REQUIRE_FALSE(bad.violations.empty());
}

TEST_CASE("diff plumbing records symmetric differences") {
  DiffReport rep;
  const PcPresentation D = d8();
  detail::diff_sets(rep, "demo", "equal", {identity(D)}, {identity(D)});
  REQUIRE(rep.agree);
  REQUIRE(rep.checks == 1);
  detail::diff_sets(rep, "demo", "differs",
                    {el(D, {0, 0, 0}), el(D, {0, 1, 0})},
                    {el(D, {0, 0, 0}), el(D, {1, 0, 0})});
  REQUIRE_FALSE(rep.agree);
  REQUIRE(rep.mismatches.size() == 1);
  REQUIRE(rep.mismatches[0].operation == "demo");
  REQUIRE(rep.mismatches[0].only_lattice ==
          std::vector<Element>{el(D, {0, 1, 0})});
  REQUIRE(rep.mismatches[0].only_oracle ==
          std::vector<Element>{el(D, {1, 0, 0})});
  detail::diff_scalar(rep, "demo", "scalar", "4", "8");
  REQUIRE(rep.mismatches.size() == 2);
}

TEST_CASE("lattice and oracle agree on every small group") {
  const std::vector<PcPresentation> groups = {
      PcPresentation(2, 0), d8(),        q8(),
      c8(),                 heis(3),     heis(5),
      wreath3(),            jordan32(),  blackburn32(),
      c2group64(),          direct_product(heis(3), PcPresentation(3, 2))};
  for (const PcPresentation& P : groups) {
    const DiffReport rep = diff_report(P);
    INFO("group of order " << P.order());
    for (const Mismatch& m : rep.mismatches)
      INFO(m.operation << " [" << m.arguments << "]");
    REQUIRE(rep.agree);
    REQUIRE(rep.mismatches.empty());
    REQUIRE(rep.skipped.empty());
    REQUIRE(rep.checks > 0);
  }
}
