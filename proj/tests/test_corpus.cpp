// Presentation text format (parse + serialize round trips, frozen error
// positions) and the built-in families: closed-form instances are compared
// against independently hand-written presentations, and every corpus entry
// re-derives its advertised invariants.

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "pcgroup/corpus.hpp"

using namespace pcg;
using Catch::Matchers::ContainsSubstring;

namespace {

// dihedral of order 8: g1 reflection, g2 rotation, g3 = g2^2
PcPresentation d8() {
  return PcPresentation(2, 3, {{1, {{2, 1}}}}, {{1, 0, {{2, 1}}}});
}

// quaternion of order 8
PcPresentation q8() {
  return PcPresentation(2, 3, {{0, {{2, 1}}}, {1, {{2, 1}}}},
                        {{1, 0, {{2, 1}}}});
}

// cyclic of order 8
PcPresentation c8() {
  return PcPresentation(2, 3, {{0, {{1, 1}}}, {1, {{2, 1}}}}, {});
}

// Heisenberg group modulo p: two generators, commutator central
PcPresentation heis(std::uint32_t p) {
  return PcPresentation(p, 3, {}, {{1, 0, {{2, 1}}}});
}

// dihedral of order 16
PcPresentation d16() {
  return PcPresentation(2, 4, {{1, {{2, 1}}}, {2, {{3, 1}}}},
                        {{1, 0, {{2, 1}, {3, 1}}}, {2, 0, {{3, 1}}}});
}

// wreath-type group of order 81: cyclic top acting on a shifted base
PcPresentation wreath3() {
  return PcPresentation(3, 4, {}, {{1, 0, {{2, 1}}}, {2, 0, {{3, 1}}}});
}

// order 32: C4 acting on C8 by the fifth-power map; g1, g2 = g1^2 on top,
// g3, g4 = g3^2, g5 = g3^4 below
PcPresentation blackburn32() {
  return PcPresentation(2, 5,
                        {{0, {{1, 1}}}, {2, {{3, 1}}}, {3, {{4, 1}}}},
                        {{2, 0, {{4, 1}}}});
}

// order 32: cyclic top of order 4 acting on an elementary abelian base by a
// single Jordan block
PcPresentation jordan32() {
  return PcPresentation(
      2, 5, {{0, {{2, 1}}}},
      {{1, 0, {{3, 1}}}, {2, 1, {{4, 1}}}, {3, 0, {{4, 1}}}});
}

// order 64 2-group with two-step power structure
PcPresentation c2group64() {
  return PcPresentation(
      2, 6, {{0, {{3, 1}}}, {1, {{4, 1}}}, {2, {{5, 1}}}},
      {{1, 0, {{2, 1}}},
       {2, 0, {{4, 1}}},
       {3, 1, {{4, 1}, {5, 1}}},
       {3, 2, {{5, 1}}},
       {4, 0, {{5, 1}}}});
}

// upper unitriangular 4x4 matrices over F_p; superdiagonal first
PcPresentation ut4(std::uint32_t p) {
  const std::int64_t m = p - 1;
  return PcPresentation(p, 6, {},
                        {{1, 0, {{3, m}}},
                         {2, 1, {{4, m}}},
                         {3, 2, {{5, 1}}},
                         {4, 0, {{5, m}}}});
}

parse_error expect_parse_error(const std::string& text) {
  try {
    parse_presentation(text);
  } catch (const parse_error& e) {
    return e;
  }
  throw std::runtime_error("expected parse_error for input: " + text);
}

}  // namespace

TEST_CASE("parsing the documented example produces the dihedral group") {
  const PcPresentation P = parse_presentation(
      "pcgroup p=2 n=3\n"
      "pow g2 = g3\n"
      "comm g2 g1 = g3\n");
  CHECK(P == d8());
  CHECK(P.order() == 8);
}

TEST_CASE("parsing tolerates comments, blank lines, CRLF, and tabs") {
  const PcPresentation P = parse_presentation(
      "# leading comment\r\n"
      "\r\n"
      "  pcgroup   p=2  n=3   # header\r\n"
      "\tpow\tg2\t=\tg3\r\n"
      "comm g2 g1 = g3 # trailing comment\r\n");
  CHECK(P == d8());
}

TEST_CASE("parsing strips a UTF-8 byte-order mark") {
  const PcPresentation P =
      parse_presentation("\xEF\xBB\xBFpcgroup p=2 n=1\n");
  CHECK(P == PcPresentation(2, 1));
}

TEST_CASE("parsing handles the trivial group and missing final newline") {
  const PcPresentation T = parse_presentation("pcgroup p=2 n=0");
  CHECK(T.rank() == 0);
  CHECK(T.order() == 1);
  const PcPresentation P = parse_presentation(
      "pcgroup p=2 n=3\npow g2 = g3\ncomm g2 g1 = g3");
  CHECK(P == d8());
}

TEST_CASE("parsing reads explicit exponents and multi-letter words") {
  CHECK(parse_presentation("pcgroup p=5 n=2\npow g1 = g2^3\n") ==
        PcPresentation(5, 2, {{0, {{1, 3}}}}, {}));
  CHECK(parse_presentation("pcgroup p=5 n=3\npow g1 = g2^2*g3\n") ==
        PcPresentation(5, 3, {{0, {{1, 2}, {2, 1}}}}, {}));
  // factors may appear in any order and '1' spells the empty word
  CHECK(parse_presentation("pcgroup p=5 n=3\npow g1 = g3*g2^4\n") ==
        PcPresentation(5, 3, {{0, {{1, 4}, {2, 1}}}}, {}));
  CHECK(parse_presentation("pcgroup p=3 n=2\npow g1 = 1\ncomm g2 g1 = 1\n") ==
        PcPresentation(3, 2));
  CHECK(parse_presentation("pcgroup p=2 n=3\npow g2 = g3^1\n") ==
        PcPresentation(2, 3, {{1, {{2, 1}}}}, {}));
}

TEST_CASE("parse errors carry exact line and column positions") {
  SECTION("missing header") {
    const parse_error e = expect_parse_error("");
    CHECK(e.line() == 1);
    CHECK(e.column() == 1);
    CHECK_THAT(e.what(), ContainsSubstring("missing 'pcgroup"));
    const parse_error f = expect_parse_error("# only comments\n\n");
    CHECK(f.line() == 1);
    CHECK(f.column() == 1);
  }
  SECTION("relation before header") {
    const parse_error e = expect_parse_error("pow g1 = 1\n");
    CHECK(e.line() == 1);
    CHECK(e.column() == 1);
    CHECK_THAT(e.what(), ContainsSubstring("expected 'pcgroup"));
  }
  SECTION("non-prime modulus") {
    const parse_error e = expect_parse_error("pcgroup p=6 n=2\n");
    CHECK(e.line() == 1);
    CHECK(e.column() == 11);
    CHECK_THAT(e.what(), ContainsSubstring("p = 6 is not prime"));
  }
  SECTION("malformed header tokens") {
    const parse_error e = expect_parse_error("pcgroup q=2 n=2\n");
    CHECK(e.line() == 1);
    CHECK(e.column() == 9);
    const parse_error f = expect_parse_error("pcgroup p=2\n");
    CHECK(f.line() == 1);
    CHECK(f.column() == 1);
    CHECK_THAT(f.what(), ContainsSubstring("header must be exactly"));
    const parse_error g = expect_parse_error("pcgroup p=2x n=3\n");
    CHECK(g.line() == 1);
    CHECK(g.column() == 11);
    CHECK_THAT(g.what(), ContainsSubstring("'2x' is not an unsigned number"));
  }
  SECTION("duplicate header") {
    const parse_error e =
        expect_parse_error("pcgroup p=2 n=3\npcgroup p=2 n=3\n");
    CHECK(e.line() == 2);
    CHECK(e.column() == 1);
    CHECK_THAT(e.what(), ContainsSubstring("duplicate header"));
  }
  SECTION("unknown directive") {
    const parse_error e = expect_parse_error("pcgroup p=2 n=3\nfoo g1\n");
    CHECK(e.line() == 2);
    CHECK(e.column() == 1);
    CHECK_THAT(e.what(), ContainsSubstring("unknown directive 'foo'"));
  }
  SECTION("generator index out of range") {
    const parse_error e =
        expect_parse_error("pcgroup p=2 n=3\npow g4 = 1\n");
    CHECK(e.line() == 2);
    CHECK(e.column() == 5);
    CHECK_THAT(e.what(), ContainsSubstring("generator index 4 outside 1..3"));
  }
  SECTION("commutator word too shallow") {
    const parse_error e =
        expect_parse_error("pcgroup p=2 n=3\ncomm g3 g1 = g2\n");
    CHECK(e.line() == 2);
    CHECK(e.column() == 14);
    CHECK_THAT(e.what(), ContainsSubstring("depth-constraint violation"));
    CHECK_THAT(e.what(), ContainsSubstring("deeper than g3, got g2"));
  }
  SECTION("power word too shallow") {
    const parse_error e =
        expect_parse_error("pcgroup p=2 n=3\npow g2 = g1\n");
    CHECK(e.line() == 2);
    CHECK(e.column() == 10);
    CHECK_THAT(e.what(), ContainsSubstring("depth-constraint violation"));
    const parse_error f =
        expect_parse_error("pcgroup p=2 n=3\npow g2 = g2\n");
    CHECK(f.line() == 2);
    CHECK(f.column() == 10);
  }
  SECTION("commutator indices in the wrong order") {
    const parse_error e =
        expect_parse_error("pcgroup p=2 n=3\ncomm g1 g2 = g3\n");
    CHECK(e.line() == 2);
    CHECK(e.column() == 6);
    CHECK_THAT(e.what(),
               ContainsSubstring("requires the first index to be deeper"));
  }
  SECTION("exponent out of range") {
    const parse_error e =
        expect_parse_error("pcgroup p=5 n=2\npow g1 = g2^0\n");
    CHECK(e.line() == 2);
    CHECK(e.column() == 13);
    CHECK_THAT(e.what(), ContainsSubstring("exponent 0 outside (0, p)"));
    const parse_error f =
        expect_parse_error("pcgroup p=5 n=2\npow g1 = g2^5\n");
    CHECK(f.line() == 2);
    CHECK(f.column() == 13);
  }
  SECTION("repeated generator within a word") {
    const parse_error e = expect_parse_error(
        "pcgroup p=3 n=3\ncomm g2 g1 = g3*g3^2\n");
    CHECK(e.line() == 2);
    CHECK(e.column() == 17);
    CHECK_THAT(e.what(), ContainsSubstring("generator g3 repeated"));
  }
  SECTION("identity combined with generators") {
    const parse_error e =
        expect_parse_error("pcgroup p=2 n=3\npow g2 = 1*g3\n");
    CHECK(e.line() == 2);
    CHECK(e.column() == 10);
    CHECK_THAT(e.what(), ContainsSubstring("cannot be combined"));
  }
  SECTION("missing word") {
    const parse_error e = expect_parse_error("pcgroup p=2 n=3\npow g2 =\n");
    CHECK(e.line() == 2);
    CHECK_THAT(e.what(), ContainsSubstring("missing word"));
  }
  SECTION("duplicate relations") {
    const parse_error e = expect_parse_error(
        "pcgroup p=2 n=3\npow g2 = g3\npow g2 = g3\n");
    CHECK(e.line() == 3);
    CHECK(e.column() == 5);
    CHECK_THAT(e.what(), ContainsSubstring("duplicate power relation"));
    const parse_error f = expect_parse_error(
        "pcgroup p=2 n=3\ncomm g2 g1 = g3\ncomm g2 g1 = 1\n");
    CHECK(f.line() == 3);
    CHECK(f.column() == 6);
    CHECK_THAT(f.what(), ContainsSubstring("duplicate commutator relation"));
  }
  SECTION("rank beyond the supported maximum") {
    const parse_error e = expect_parse_error("pcgroup p=2 n=300\n");
    CHECK(e.line() == 1);
    CHECK_THAT(e.what(), ContainsSubstring("exceeds the supported maximum"));
  }
  SECTION("messages carry the position prefix") {
    const parse_error e = expect_parse_error("pcgroup p=6 n=2\n");
    CHECK_THAT(e.what(),
               ContainsSubstring("parse error at line 1, column 11:"));
  }
}

TEST_CASE("serialization emits the canonical form") {
  CHECK(serialize_presentation(d8()) ==
        "# format_version=1\n"
        "pcgroup p=2 n=3\n"
        "pow g2 = g3\n"
        "comm g2 g1 = g3\n");
  CHECK(serialize_presentation(q8()) ==
        "# format_version=1\n"
        "pcgroup p=2 n=3\n"
        "pow g1 = g3\n"
        "pow g2 = g3\n"
        "comm g2 g1 = g3\n");
  CHECK(serialize_presentation(PcPresentation(2, 0)) ==
        "# format_version=1\npcgroup p=2 n=0\n");
  CHECK_THAT(serialize_presentation(ut4(3)),
             ContainsSubstring("comm g2 g1 = g4^2\n"));
}

TEST_CASE("parse of serialize is the identity on the corpus") {
  for (const CorpusEntry& entry : default_corpus()) {
    INFO(entry.name);
    CHECK(parse_presentation(serialize_presentation(entry.presentation)) ==
          entry.presentation);
  }
  for (const PcPresentation& P :
       {jordan32(), c2group64(), ut4(3), PcPresentation(2, 0), wreath3()}) {
    CHECK(parse_presentation(serialize_presentation(P)) == P);
  }
}

TEST_CASE("closed-form families match hand-written presentations") {
  CHECK(build_family("dihedral:8").presentation == d8());
  CHECK(build_family("dihedral:16").presentation == d16());
  CHECK(build_family("quaternion:8").presentation == q8());
  CHECK(build_family("cyclic:8").presentation == c8());
  CHECK(build_family("heisenberg:3").presentation == heis(3));
  CHECK(build_family("wreath_cyclic:3").presentation == wreath3());
  CHECK(build_family("blackburn_metacyclic:2,2,2,1").presentation ==
        blackburn32());
  CHECK(build_family("unitriangular4:2").presentation == ut4(2));
  CHECK(build_family("unitriangular4:3").presentation == ut4(3));
  CHECK(build_family("unitriangular3:2").presentation == heis(2));
  CHECK(build_family("unitriangular3:3").presentation ==
        PcPresentation(3, 3, {}, {{1, 0, {{2, 2}}}}));
  CHECK(build_family("unitriangular3:5").presentation ==
        PcPresentation(5, 3, {}, {{1, 0, {{2, 4}}}}));
  CHECK(build_family("extraspecial:2,1,+").presentation == d8());
  CHECK(build_family("extraspecial:2,1,-").presentation == q8());
  CHECK(build_family("extraspecial:3,1,+").presentation == heis(3));
  CHECK(build_family("elem_abelian:8").presentation == PcPresentation(2, 3));
  CHECK(build_family("cyclic:27").presentation ==
        PcPresentation(3, 3, {{0, {{1, 1}}}, {1, {{2, 1}}}}, {}));
}

TEST_CASE("family entries advertise verified invariants") {
  const CorpusEntry d512 = build_family("dihedral:512");
  CHECK(d512.order == 512);
  CHECK(d512.nilpotency_class == 8);
  CHECK(d512.derived_rank == 1);
  CHECK(d512.derived_powerful);
  CHECK(d512.name == "dihedral:512");
  CHECK(d512.family == "dihedral");
  REQUIRE(d512.params.size() == 1);
  CHECK(d512.params[0].first == "order");
  CHECK(d512.params[0].second == "512");

  const CorpusEntry u = build_family("unitriangular4:2");
  CHECK(u.order == 64);
  CHECK(u.nilpotency_class == 3);
  CHECK(u.derived_rank == 3);

  const CorpusEntry w = build_family("wreath_cyclic:3");
  CHECK(w.order == 81);
  CHECK(w.nilpotency_class == 3);
  CHECK(w.derived_rank == 2);

  const CorpusEntry b = build_family("blackburn_metacyclic:2,4,4,2");
  CHECK(b.order == 1024);
  CHECK(b.nilpotency_class == 2);
  CHECK(b.derived_rank == 1);

  const CorpusEntry sd = build_family("semidihedral:32");
  CHECK(sd.order == 32);
  CHECK(sd.nilpotency_class == 4);
  CHECK(sd.derived_rank == 1);

  const CorpusEntry es = build_family("extraspecial:3,2,+");
  CHECK(es.order == 243);
  CHECK(es.nilpotency_class == 2);
  CHECK(es.derived_rank == 1);
}

TEST_CASE("family parameters accept positional and keyed forms") {
  const PcPresentation by_token = build_family("dihedral:16").presentation;
  CHECK(build_family("dihedral", {"16"}).presentation == by_token);
  CHECK(build_family("dihedral", {"order=16"}).presentation == by_token);
  CHECK(build_family("dihedral:order=16").presentation == by_token);
  CHECK(build_family("dihedral", {"16"}).name == "dihedral:16");
  CHECK(build_family("dihedral", {"order=16"}).name == "dihedral:16");
  CHECK(build_family("extraspecial", {"type=-", "3", "1"}).presentation ==
        build_family("extraspecial:3,1,-").presentation);
  CHECK(build_family("blackburn_metacyclic", {"2", "2", "2", "1"}).name ==
        "blackburn_metacyclic:2,2,2,1");
}

TEST_CASE("family construction rejects out-of-range parameters") {
  CHECK_THROWS_AS(build_family("frobnitz:8"), input_error);
  CHECK_THROWS_MATCHES(build_family("frobnitz:8"), input_error,
                       Catch::Matchers::MessageMatches(
                           ContainsSubstring("unknown family 'frobnitz'")));
  CHECK_THROWS_AS(build_family("dihedral:12"), input_error);
  CHECK_THROWS_AS(build_family("dihedral:4"), input_error);
  CHECK_THROWS_AS(build_family("quaternion:4"), input_error);
  CHECK_THROWS_AS(build_family("semidihedral:8"), input_error);
  CHECK_THROWS_AS(build_family("cyclic:1"), input_error);
  CHECK_THROWS_AS(build_family("cyclic:12"), input_error);
  CHECK_THROWS_AS(build_family("elem_abelian:0"), input_error);
  CHECK_THROWS_AS(build_family("heisenberg:4"), input_error);
  CHECK_THROWS_AS(build_family("extraspecial:2,1,x"), input_error);
  CHECK_THROWS_AS(build_family("extraspecial:2,0,+"), input_error);
  CHECK_THROWS_AS(build_family("unitriangular3:6"), input_error);
  CHECK_THROWS_AS(build_family("wreath_cyclic:13"), input_error);
  // constraint k > 0 and n >= m >= 2k
  CHECK_THROWS_AS(build_family("blackburn_metacyclic:3,1,2,1"), input_error);
  CHECK_THROWS_AS(build_family("blackburn_metacyclic:3,2,1,1"), input_error);
  CHECK_THROWS_AS(build_family("blackburn_metacyclic:3,2,2,0"), input_error);
  CHECK_THROWS_AS(build_family("dihedral"), input_error);
  CHECK_THROWS_AS(build_family("dihedral:8,16"), input_error);
  CHECK_THROWS_AS(build_family("dihedral:size=8"), input_error);
  CHECK_THROWS_AS(build_family("dihedral:order=8,order=16"), input_error);
  CHECK_THROWS_AS(build_family("dihedral:x"), input_error);
  CHECK_THROWS_AS(build_family("cyclic:1099511627777"), input_error);
}

TEST_CASE("the default corpus is complete, unique, and size-bounded") {
  const std::vector<CorpusEntry>& corpus = default_corpus();
  CHECK(corpus.size() == 45);

  std::set<std::string> names;
  std::size_t small = 0;
  for (const CorpusEntry& e : corpus) {
    INFO(e.name);
    CHECK(names.insert(e.name).second);
    CHECK(e.presentation.order() == e.order);
    if (e.presentation.p() == 2) CHECK(e.order <= 1024);
    if (e.presentation.p() == 3) CHECK(e.order <= 729);
    if (e.presentation.p() == 5) CHECK(e.order <= 625);
    if (e.order <= 243) ++small;
    CHECK(build_family(e.name).presentation == e.presentation);
  }
  // the cross-check slice that fits the element-level oracle
  CHECK(small == 35);

  // families promised by the regression contract are all present
  for (const std::string& required :
       {"dihedral:512", "quaternion:512", "semidihedral:512", "heisenberg:3",
        "extraspecial:3,2,+", "wreath_cyclic:3", "unitriangular4:2",
        "blackburn_metacyclic:2,4,4,2", "cyclic:625"}) {
    CHECK(names.count(required) == 1);
  }
}

TEST_CASE("family names listing matches the dispatcher") {
  const std::vector<std::string>& names = family_names();
  CHECK(names.size() == 11);
  for (const std::string& name : names) {
    CHECK_THROWS_AS(build_family(name, {}), input_error);  // missing params
  }
}
