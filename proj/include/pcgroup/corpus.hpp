#pragma once

// Presentation file format and the built-in group families.  The text format
// is line-based: a `pcgroup p=<prime> n=<rank>` header followed by `pow` and
// `comm` relation lines; parsing reports 1-based line/column positions and
// enforces the depth constraints up front.  Families are constructed either
// from closed-form relation data (cyclic towers, metacyclic 2-groups,
// extraspecial central products) or by reading relations off an explicit
// model (unitriangular matrices, wreath products); every entry is validated
// at build time: consistency overlaps plus recomputed order, nilpotency
// class, derived rank, and derived powerfulness must match the expectations
// recorded in the entry.

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pcgroup/presentation.hpp"
#include "pcgroup/subgroup.hpp"

namespace pcg {

inline constexpr int presentation_format_version = 1;

/** Input-format failure with the 1-based position of the offending token. */
class parse_error : public input_error {
 public:
  parse_error(std::size_t line, std::size_t column, const std::string& what)
      : input_error("parse error at line " + std::to_string(line) +
                    ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace detail {

/** Largest accepted rank; keeps the n-by-n relation table allocation sane. */
inline constexpr std::uint32_t max_parse_rank = 256;

struct Token {
  std::string text;
  std::size_t column = 0;  // 1-based
};

inline std::vector<Token> split_tokens(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    out.push_back(Token{line.substr(start, i - start), start + 1});
  }
  return out;
}

inline std::uint64_t parse_number(const std::string& text, std::size_t line,
                                  std::size_t col, const std::string& what) {
  std::uint64_t value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || text.empty())
    throw parse_error(line, col,
                      what + ": '" + text + "' is not an unsigned number");
  return value;
}

/** `g<k>` with 1 <= k <= n; returns the 0-based index. */
inline std::uint32_t parse_generator(const std::string& text, std::size_t line,
                                     std::size_t col, std::uint32_t n) {
  if (text.size() < 2 || text[0] != 'g')
    throw parse_error(line, col,
                      "expected a generator reference 'g<k>', got '" + text +
                          "'");
  const std::uint64_t k =
      parse_number(text.substr(1), line, col + 1, "generator index");
  if (k < 1 || k > n)
    throw parse_error(line, col,
                      "generator index " + std::to_string(k) +
                          " outside 1.." + std::to_string(n));
  return static_cast<std::uint32_t>(k - 1);
}

/** Word after `=`: either `1` or `*`-joined `g<k>` / `g<k>^<e>` items.  The
 *  support must lie strictly deeper than `owner` (0-based). */
inline Word parse_word(const std::string& line, std::size_t start,
                       std::size_t line_no, std::uint32_t n, std::uint32_t p,
                       std::uint32_t owner, const std::string& what) {
  // carve the remainder into '*'-separated pieces, tracking columns
  std::vector<Token> pieces;
  std::size_t i = start;
  while (i <= line.size()) {
    std::size_t stop = line.find('*', i);
    if (stop == std::string::npos) stop = line.size();
    std::size_t a = i, b = stop;
    while (a < b && (line[a] == ' ' || line[a] == '\t')) ++a;
    while (b > a && (line[b - 1] == ' ' || line[b - 1] == '\t')) --b;
    pieces.push_back(Token{line.substr(a, b - a), a + 1});
    if (stop == line.size()) break;
    i = stop + 1;
  }
  if (pieces.size() == 1 && pieces[0].text.empty())
    throw parse_error(line_no, pieces[0].column, what + ": missing word");
  if (pieces.size() == 1 && pieces[0].text == "1") return {};

  Word word;
  std::vector<bool> seen(n, false);
  for (const Token& piece : pieces) {
    if (piece.text.empty())
      throw parse_error(line_no, piece.column, what + ": empty word factor");
    if (piece.text == "1")
      throw parse_error(line_no, piece.column,
                        what + ": '1' cannot be combined with generators");
    const std::size_t caret = piece.text.find('^');
    const std::string gen_text = piece.text.substr(0, caret);
    const std::uint32_t k =
        parse_generator(gen_text, line_no, piece.column, n);
    std::uint64_t e = 1;
    if (caret != std::string::npos) {
      e = parse_number(piece.text.substr(caret + 1), line_no,
                       piece.column + caret + 1, "exponent");
      if (e == 0 || e >= p)
        throw parse_error(line_no, piece.column + caret + 1,
                          "exponent " + std::to_string(e) +
                              " outside (0, p) for p = " + std::to_string(p));
    }
    if (k <= owner)
      throw parse_error(line_no, piece.column,
                        "depth-constraint violation: " + what +
                            " may only use generators deeper than g" +
                            std::to_string(owner + 1) + ", got g" +
                            std::to_string(k + 1));
    if (seen[k])
      throw parse_error(line_no, piece.column,
                        what + ": generator g" + std::to_string(k + 1) +
                            " repeated");
    seen[k] = true;
    word.push_back(Letter{k, static_cast<std::int64_t>(e)});
  }
  return word;
}

}  // namespace detail

/** Parse the line-based presentation format.  `#` starts a comment; blank
 *  lines are skipped; the first significant line must be the
 *  `pcgroup p=<prime> n=<rank>` header.  Structural validity only —
 *  consistency is a separate check.  `size_guard` is forwarded to the
 *  presentation and bounds later element-enumeration work on it. */
inline PcPresentation parse_presentation(
    const std::string& text,
    std::uint64_t size_guard = PcPresentation::default_size_guard) {
  std::uint32_t p = 0, n = 0;
  bool have_header = false;
  std::vector<PowerRelation> powers;
  std::vector<CommRelation> comms;
  std::vector<bool> pow_seen;
  std::set<std::pair<std::uint32_t, std::uint32_t>> comm_seen;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    const bool last = eol == text.size();
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.size() >= 3 &&
        static_cast<unsigned char>(line[0]) == 0xEF &&
        static_cast<unsigned char>(line[1]) == 0xBB &&
        static_cast<unsigned char>(line[2]) == 0xBF)
      line.erase(0, 3);  // UTF-8 byte-order mark
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);

    const std::vector<detail::Token> tokens = detail::split_tokens(line);
    if (tokens.empty()) {
      if (last) break;
      continue;
    }

    if (!have_header) {
      if (tokens[0].text != "pcgroup")
        throw parse_error(line_no, tokens[0].column,
                          "expected 'pcgroup p=<prime> n=<rank>' header, got "
                          "'" +
                              tokens[0].text + "'");
      if (tokens.size() != 3)
        throw parse_error(line_no, tokens[0].column,
                          "header must be exactly 'pcgroup p=<prime> "
                          "n=<rank>'");
      if (tokens[1].text.rfind("p=", 0) != 0)
        throw parse_error(line_no, tokens[1].column,
                          "expected 'p=<prime>', got '" + tokens[1].text +
                              "'");
      if (tokens[2].text.rfind("n=", 0) != 0)
        throw parse_error(line_no, tokens[2].column,
                          "expected 'n=<rank>', got '" + tokens[2].text +
                              "'");
      const std::uint64_t pv = detail::parse_number(
          tokens[1].text.substr(2), line_no, tokens[1].column + 2, "p");
      const std::uint64_t nv = detail::parse_number(
          tokens[2].text.substr(2), line_no, tokens[2].column + 2, "n");
      if (!detail::is_prime(pv))
        throw parse_error(line_no, tokens[1].column + 2,
                          "p = " + std::to_string(pv) + " is not prime");
      if (nv > detail::max_parse_rank)
        throw parse_error(line_no, tokens[2].column + 2,
                          "rank " + std::to_string(nv) +
                              " exceeds the supported maximum " +
                              std::to_string(detail::max_parse_rank));
      p = static_cast<std::uint32_t>(pv);
      n = static_cast<std::uint32_t>(nv);
      pow_seen.assign(n, false);
      have_header = true;
      if (last) break;
      continue;
    }

    if (tokens[0].text == "pcgroup")
      throw parse_error(line_no, tokens[0].column, "duplicate header line");

    if (tokens[0].text == "pow") {
      if (tokens.size() < 3 || tokens[2].text != "=")
        throw parse_error(line_no, tokens[0].column,
                          "power relation must be 'pow g<i> = <word>'");
      const std::uint32_t i =
          detail::parse_generator(tokens[1].text, line_no, tokens[1].column,
                                  n);
      if (pow_seen[i])
        throw parse_error(line_no, tokens[1].column,
                          "duplicate power relation for g" +
                              std::to_string(i + 1));
      pow_seen[i] = true;
      const std::size_t word_start =
          tokens[2].column;  // column of '='; word begins after it
      Word w = detail::parse_word(line, word_start, line_no, n, p, i,
                                  "power word for g" + std::to_string(i + 1));
      if (!w.empty()) powers.push_back(PowerRelation{i, std::move(w)});
    } else if (tokens[0].text == "comm") {
      if (tokens.size() < 4 || tokens[3].text != "=")
        throw parse_error(line_no, tokens[0].column,
                          "commutator relation must be 'comm g<j> g<i> = "
                          "<word>'");
      const std::uint32_t j =
          detail::parse_generator(tokens[1].text, line_no, tokens[1].column,
                                  n);
      const std::uint32_t i =
          detail::parse_generator(tokens[2].text, line_no, tokens[2].column,
                                  n);
      if (j <= i)
        throw parse_error(line_no, tokens[1].column,
                          "commutator [g" + std::to_string(j + 1) + ", g" +
                              std::to_string(i + 1) +
                              "] requires the first index to be deeper");
      if (!comm_seen.insert({j, i}).second)
        throw parse_error(line_no, tokens[1].column,
                          "duplicate commutator relation for [g" +
                              std::to_string(j + 1) + ", g" +
                              std::to_string(i + 1) + "]");
      const std::size_t word_start = tokens[3].column;
      Word w = detail::parse_word(line, word_start, line_no, n, p, j,
                                  "commutator word for [g" +
                                      std::to_string(j + 1) + ", g" +
                                      std::to_string(i + 1) + "]");
      if (!w.empty()) comms.push_back(CommRelation{j, i, std::move(w)});
    } else {
      throw parse_error(line_no, tokens[0].column,
                        "unknown directive '" + tokens[0].text +
                            "' (expected 'pow' or 'comm')");
    }
    if (last) break;
  }

  if (!have_header)
    throw parse_error(1, 1, "missing 'pcgroup p=<prime> n=<rank>' header");
  try {
    return PcPresentation(p, n, powers, comms, size_guard);
  } catch (const input_error& e) {
    throw parse_error(1, 1, e.what());  // defensive; constraints pre-checked
  }
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace detail {

inline std::string word_text(const ExpVec& w) {
  std::string out;
  for (std::uint32_t k = 0; k < w.size(); ++k) {
    if (w[k] == 0) continue;
    if (!out.empty()) out += '*';
    out += 'g';
    out += std::to_string(k + 1);
    if (w[k] != 1) {
      out += '^';
      out += std::to_string(w[k]);
    }
  }
  return out;
}

}  // namespace detail

/** Canonical text: a version comment, the header, then the nontrivial power
 *  relations in generator order and the nontrivial commutator relations in
 *  (j, i) order.  parse(serialize(P)) == P for every valid presentation. */
inline std::string serialize_presentation(const PcPresentation& P) {
  std::string out =
      "# format_version=" + std::to_string(presentation_format_version) +
      "\n";
  out += "pcgroup p=" + std::to_string(P.p()) +
         " n=" + std::to_string(P.rank()) + "\n";
  const std::uint32_t n = P.rank();
  for (std::uint32_t i = 0; i < n; ++i) {
    const detail::ExpVec& w = P.power_word(i);
    if (std::all_of(w.begin(), w.end(),
                    [](std::uint32_t e) { return e == 0; }))
      continue;
    out += "pow g" + std::to_string(i + 1) + " = " + detail::word_text(w) +
           "\n";
  }
  for (std::uint32_t j = 1; j < n; ++j)
    for (std::uint32_t i = 0; i < j; ++i) {
      if (P.comm_trivial(j, i)) continue;
      out += "comm g" + std::to_string(j + 1) + " g" + std::to_string(i + 1) +
             " = " + detail::word_text(P.comm_word(j, i)) + "\n";
    }
  return out;
}

// ---------------------------------------------------------------------------
// Corpus entries
// ---------------------------------------------------------------------------

/** One built-in group: a presentation plus the invariants the family
 *  construction promises.  Entries are only created by build_family, which
 *  re-derives every expectation and refuses to hand out a mismatch. */
struct CorpusEntry {
  std::string name;    // canonical token, e.g. "dihedral:16"
  std::string family;  // family key
  std::vector<std::pair<std::string, std::string>> params;  // canonical order
  PcPresentation presentation;
  std::uint64_t order = 0;
  std::uint32_t nilpotency_class = 0;
  std::uint32_t derived_rank = 0;  // d(G')
  bool derived_powerful = true;
};

namespace detail {

inline void validate_entry(const CorpusEntry& e) {
  const ConsistencyReport c = check_consistency(e.presentation);
  if (!c.consistent)
    throw invariant_violation("family " + e.name + ": " + c.describe());
  if (e.presentation.order() != e.order)
    throw invariant_violation(
        "family " + e.name + ": order " +
        std::to_string(e.presentation.order()) + " does not match expected " +
        std::to_string(e.order));
  const std::uint32_t klass =
      static_cast<std::uint32_t>(lower_central_series(e.presentation).size() -
                                 1);
  if (klass != e.nilpotency_class)
    throw invariant_violation("family " + e.name + ": nilpotency class " +
                              std::to_string(klass) +
                              " does not match expected " +
                              std::to_string(e.nilpotency_class));
  const Subgroup der = derived_subgroup(e.presentation);
  const std::uint32_t drank = frattini_rank(der).second;
  if (drank != e.derived_rank)
    throw invariant_violation("family " + e.name + ": derived rank " +
                              std::to_string(drank) +
                              " does not match expected " +
                              std::to_string(e.derived_rank));
  if (is_powerful(der) != e.derived_powerful)
    throw invariant_violation("family " + e.name +
                              ": derived-subgroup powerfulness does not "
                              "match the expectation");
}

inline CorpusEntry make_entry(
    std::string family,
    std::vector<std::pair<std::string, std::string>> params,
    PcPresentation presentation, std::uint64_t order, std::uint32_t klass,
    std::uint32_t derived_rank, bool derived_powerful) {
  std::string name = family;
  for (std::size_t i = 0; i < params.size(); ++i)
    name += (i == 0 ? ":" : ",") + params[i].second;
  CorpusEntry entry{std::move(name),
                    std::move(family),
                    std::move(params),
                    std::move(presentation),
                    order,
                    klass,
                    derived_rank,
                    derived_powerful};
  validate_entry(entry);
  return entry;
}

/** N = p^e with p prime and e >= 1, or nothing. */
inline std::optional<std::pair<std::uint64_t, std::uint32_t>> prime_power_of(
    std::uint64_t N) {
  if (N < 2) return std::nullopt;
  if (N > (std::uint64_t{1} << 40))
    throw input_error("order " + std::to_string(N) +
                      " is out of the supported range");
  std::uint64_t p = N;
  for (std::uint64_t d = 2; d * d <= N; ++d)
    if (N % d == 0) {
      p = d;
      break;
    }
  std::uint32_t e = 0;
  std::uint64_t rest = N;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) return std::nullopt;
  return std::make_pair(p, e);
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b,
                            std::uint64_t m) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t modpow(std::uint64_t base, std::uint64_t exp,
                            std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

/** Base-p digits of `value` as a word over the refined chain of a cyclic
 *  group whose generators start at 0-based index `offset`. */
inline Word digit_word(std::uint64_t value, std::uint32_t p,
                       std::uint32_t length, std::uint32_t offset) {
  Word w;
  for (std::uint32_t u = 0; u < length; ++u) {
    const std::uint32_t digit = static_cast<std::uint32_t>(value % p);
    value /= p;
    if (digit != 0)
      w.push_back(Letter{offset + u, static_cast<std::int64_t>(digit)});
  }
  return w;
}

/** Refined pc presentation of the metacyclic group
 *    <a, b | a^{p^A} = b^z, b^{p^B} = 1, b^a = b^r>
 *  on the chain a, a^p, ..., a^{p^{A-1}}, b, b^p, ..., b^{p^{B-1}}.
 *  Requires r^{p^A} = 1 and z(r - 1) = 0 in Z/p^B so the extension exists. */
inline PcPresentation metacyclic_pc(std::uint32_t p, std::uint32_t A,
                                    std::uint32_t B, std::uint64_t r,
                                    std::uint64_t z) {
  const std::uint64_t pB = saturating_pow(p, B);
  if (pB == std::numeric_limits<std::uint64_t>::max())
    throw input_error("metacyclic family: cyclic part overflows");
  if (A == 0 || B == 0 || r == 0 || r >= pB || z >= pB)
    throw invariant_violation("metacyclic family: parameters out of range");
  if (modpow(r, saturating_pow(p, A), pB) != 1)
    throw invariant_violation("metacyclic family: action order does not "
                              "divide p^A");
  if (mulmod(z, (r + pB - 1) % pB, pB) != 0)
    throw invariant_violation("metacyclic family: a^{p^A} is not fixed by "
                              "the action");
  const std::uint32_t n = A + B;
  std::vector<PowerRelation> powers;
  std::vector<CommRelation> comms;
  for (std::uint32_t t = 1; t < A; ++t)
    powers.push_back(PowerRelation{t - 1, Word{Letter{t, 1}}});
  if (z != 0) powers.push_back(PowerRelation{A - 1, digit_word(z, p, B, A)});
  for (std::uint32_t s = 1; s < B; ++s)
    powers.push_back(PowerRelation{A + s - 1, Word{Letter{A + s, 1}}});
  for (std::uint32_t s = 1; s <= B; ++s)
    for (std::uint32_t t = 1; t <= A; ++t) {
      const std::uint64_t rp = modpow(r, saturating_pow(p, t - 1), pB);
      const std::uint64_t e =
          mulmod(saturating_pow(p, s - 1), (rp + pB - 1) % pB, pB);
      if (e == 0) continue;
      comms.push_back(CommRelation{A + s - 1, t - 1, digit_word(e, p, B, A)});
    }
  return PcPresentation(p, n, powers, comms);
}

/** Read a presentation off a concrete group model: powers and commutators of
 *  the chain generators are computed in the model and peeled back into
 *  normal-form words, so a relation can only be wrong if the model is. */
template <class Model>
PcPresentation presentation_from_model(const Model& M) {
  const std::uint32_t n = M.rank();
  const std::uint32_t p = M.p();
  const auto to_word = [&](const std::vector<std::uint32_t>& exps,
                           std::uint32_t owner, const char* what) {
    Word w;
    for (std::uint32_t k = 0; k < n; ++k) {
      if (exps[k] == 0) continue;
      if (k <= owner)
        throw invariant_violation(std::string("model relation (") + what +
                                  ") breaks the chain constraint");
      w.push_back(Letter{k, static_cast<std::int64_t>(exps[k])});
    }
    return w;
  };
  std::vector<PowerRelation> powers;
  std::vector<CommRelation> comms;
  for (std::uint32_t i = 0; i < n; ++i) {
    auto x = M.identity();
    for (std::uint32_t c = 0; c < p; ++c) x = M.mul(x, M.generator(i));
    Word w = to_word(M.peel(x), i, "power");
    if (!w.empty()) powers.push_back(PowerRelation{i, std::move(w)});
  }
  for (std::uint32_t hi = 1; hi < n; ++hi)
    for (std::uint32_t lo = 0; lo < hi; ++lo) {
      const auto c = M.mul(
          M.mul(M.mul(M.inv(M.generator(hi)), M.inv(M.generator(lo))),
                M.generator(hi)),
          M.generator(lo));
      Word w = to_word(M.peel(c), hi, "commutator");
      if (!w.empty()) comms.push_back(CommRelation{hi, lo, std::move(w)});
    }
  return PcPresentation(p, n, powers, comms);
}

/** Upper unitriangular matrices over F_p in dimension 3 or 4, with the chain
 *  ordered superdiagonal first, then the second diagonal, then the corner. */
struct MatrixModel {
  using Mat = std::array<std::uint32_t, 16>;

  std::uint32_t p_ = 2;
  std::uint32_t dim_ = 3;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> chain_;

  static MatrixModel unitriangular(std::uint32_t p, std::uint32_t dim) {
    MatrixModel m;
    m.p_ = p;
    m.dim_ = dim;
    for (std::uint32_t off = 1; off < dim; ++off)
      for (std::uint32_t row = 0; row + off < dim; ++row)
        m.chain_.push_back({row, row + off});
    return m;
  }

  std::uint32_t rank() const {
    return static_cast<std::uint32_t>(chain_.size());
  }
  std::uint32_t p() const { return p_; }

  Mat identity() const {
    Mat e{};
    for (std::uint32_t i = 0; i < dim_; ++i) e[i * dim_ + i] = 1;
    return e;
  }

  Mat generator(std::uint32_t i) const {
    Mat g = identity();
    g[chain_[i].first * dim_ + chain_[i].second] = 1;
    return g;
  }

  Mat mul(const Mat& a, const Mat& b) const {
    Mat c{};
    for (std::uint32_t i = 0; i < dim_; ++i)
      for (std::uint32_t k = 0; k < dim_; ++k) {
        const std::uint32_t aik = a[i * dim_ + k];
        if (aik == 0) continue;
        for (std::uint32_t j = 0; j < dim_; ++j)
          c[i * dim_ + j] =
              (c[i * dim_ + j] + aik * b[k * dim_ + j]) % p_;
      }
    return c;
  }

  Mat inv(const Mat& a) const {
    // (E + N)^{-1} = E - N + N^2 - N^3 for nilpotent N, dim <= 4
    Mat n{};
    for (std::uint32_t i = 0; i < dim_ * dim_; ++i) n[i] = a[i];
    for (std::uint32_t i = 0; i < dim_; ++i)
      n[i * dim_ + i] = 0;
    Mat out = identity();
    Mat power = identity();
    std::uint32_t sign = p_ - 1;  // -1 mod p
    for (std::uint32_t s = 1; s < dim_; ++s) {
      power = mul(power, n);
      for (std::uint32_t i = 0; i < dim_ * dim_; ++i)
        out[i] = (out[i] + sign * power[i]) % p_;
      sign = (p_ - sign) % p_;
    }
    return out;
  }

  std::vector<std::uint32_t> peel(Mat x) const {
    std::vector<std::uint32_t> exps(rank(), 0);
    for (std::uint32_t i = 0; i < rank(); ++i) {
      const auto [row, col] = chain_[i];
      const std::uint32_t e = x[row * dim_ + col];
      exps[i] = e;
      if (e != 0) {
        Mat down = identity();
        down[row * dim_ + col] = p_ - e;  // generator^{-e}
        x = mul(down, x);
      }
    }
    if (x != identity())
      throw invariant_violation(
          "matrix model: element escapes the normal-form span");
    return exps;
  }
};

/** C_p wr C_p: the top cyclic generator followed by the base module filtered
 *  by powers of (shift - 1), which refines the lower central series. */
struct WreathModel {
  struct Elt {
    std::uint32_t k = 0;
    std::vector<std::uint32_t> v;
    friend bool operator==(const Elt&, const Elt&) = default;
  };

  std::uint32_t p_ = 2;
  std::vector<std::vector<std::uint32_t>> basis_;  // u_s = (shift-1)^{s-1} e_1

  static WreathModel wreath(std::uint32_t p) {
    WreathModel m;
    m.p_ = p;
    std::vector<std::uint32_t> u(p, 0);
    u[0] = 1;
    for (std::uint32_t s = 0; s < p; ++s) {
      m.basis_.push_back(u);
      const std::vector<std::uint32_t> shifted = m.shift(u, 1);
      for (std::uint32_t i = 0; i < p; ++i)
        u[i] = (shifted[i] + p - u[i]) % p;
    }
    return m;
  }

  std::uint32_t rank() const { return p_ + 1; }
  std::uint32_t p() const { return p_; }

  std::vector<std::uint32_t> shift(const std::vector<std::uint32_t>& v,
                                   std::uint32_t by) const {
    std::vector<std::uint32_t> out(p_, 0);
    for (std::uint32_t i = 0; i < p_; ++i) out[(i + by) % p_] = v[i];
    return out;
  }

  Elt identity() const { return Elt{0, std::vector<std::uint32_t>(p_, 0)}; }

  Elt generator(std::uint32_t i) const {
    if (i == 0) return Elt{1, std::vector<std::uint32_t>(p_, 0)};
    return Elt{0, basis_[i - 1]};
  }

  Elt mul(const Elt& a, const Elt& b) const {
    Elt c;
    c.k = (a.k + b.k) % p_;
    c.v = shift(a.v, b.k);
    for (std::uint32_t i = 0; i < p_; ++i) c.v[i] = (c.v[i] + b.v[i]) % p_;
    return c;
  }

  Elt inv(const Elt& a) const {
    Elt c;
    c.k = (p_ - a.k) % p_;
    c.v = shift(a.v, c.k);
    for (std::uint32_t i = 0; i < p_; ++i) c.v[i] = (p_ - c.v[i]) % p_;
    return c;
  }

  std::vector<std::uint32_t> peel(Elt x) const {
    std::vector<std::uint32_t> exps(rank(), 0);
    exps[0] = x.k;
    // strip the top generator: remaining base part is x.v unchanged
    std::vector<std::uint32_t> w = x.v;
    for (std::uint32_t s = p_; s >= 1; --s) {
      const std::uint32_t c = w[s - 1];  // leading coordinate of u_s
      exps[s] = c;
      if (c != 0)
        for (std::uint32_t i = 0; i < p_; ++i)
          w[i] = (w[i] + p_ - (c * basis_[s - 1][i]) % p_) % p_;
    }
    if (std::any_of(w.begin(), w.end(),
                    [](std::uint32_t e) { return e != 0; }))
      throw invariant_violation(
          "wreath model: element escapes the normal-form span");
    return exps;
  }
};

// --- family builders -------------------------------------------------------

inline CorpusEntry build_cyclic(std::uint64_t order) {
  const auto pe = prime_power_of(order);
  if (!pe)
    throw input_error("cyclic: order " + std::to_string(order) +
                      " must be a prime power p^e with e >= 1");
  const auto [p, e] = *pe;
  std::vector<PowerRelation> powers;
  for (std::uint32_t t = 0; t + 1 < e; ++t)
    powers.push_back(PowerRelation{t, Word{Letter{t + 1, 1}}});
  return make_entry("cyclic", {{"order", std::to_string(order)}},
                    PcPresentation(static_cast<std::uint32_t>(p), e, powers),
                    order, 1, 0, true);
}

inline CorpusEntry build_elem_abelian(std::uint64_t order) {
  const auto pe = prime_power_of(order);
  if (!pe)
    throw input_error("elem_abelian: order " + std::to_string(order) +
                      " must be a prime power p^r with r >= 1");
  const auto [p, r] = *pe;
  return make_entry("elem_abelian", {{"order", std::to_string(order)}},
                    PcPresentation(static_cast<std::uint32_t>(p), r), order,
                    1, 0, true);
}

inline std::uint32_t two_power_exponent(const char* family,
                                        std::uint64_t order,
                                        std::uint32_t min_exp) {
  const auto pe = prime_power_of(order);
  if (!pe || pe->first != 2 || pe->second < min_exp)
    throw input_error(std::string(family) + ": order " +
                      std::to_string(order) + " must be 2^a with a >= " +
                      std::to_string(min_exp));
  return pe->second;
}

inline CorpusEntry build_dihedral(std::uint64_t order) {
  const std::uint32_t a = two_power_exponent("dihedral", order, 3);
  const std::uint32_t B = a - 1;
  return make_entry("dihedral", {{"order", std::to_string(order)}},
                    metacyclic_pc(2, 1, B, saturating_pow(2, B) - 1, 0),
                    order, a - 1, 1, true);
}

inline CorpusEntry build_quaternion(std::uint64_t order) {
  const std::uint32_t a = two_power_exponent("quaternion", order, 3);
  const std::uint32_t B = a - 1;
  return make_entry("quaternion", {{"order", std::to_string(order)}},
                    metacyclic_pc(2, 1, B, saturating_pow(2, B) - 1,
                                  saturating_pow(2, B - 1)),
                    order, a - 1, 1, true);
}

inline CorpusEntry build_semidihedral(std::uint64_t order) {
  const std::uint32_t a = two_power_exponent("semidihedral", order, 4);
  const std::uint32_t B = a - 1;
  return make_entry("semidihedral", {{"order", std::to_string(order)}},
                    metacyclic_pc(2, 1, B, saturating_pow(2, B - 1) - 1, 0),
                    order, a - 1, 1, true);
}

inline void require_prime(const char* family, std::uint64_t p) {
  if (!is_prime(p))
    throw input_error(std::string(family) + ": p = " + std::to_string(p) +
                      " is not prime");
}

inline CorpusEntry build_heisenberg(std::uint64_t p) {
  require_prime("heisenberg", p);
  const std::uint32_t q = static_cast<std::uint32_t>(p);
  return make_entry("heisenberg", {{"p", std::to_string(p)}},
                    PcPresentation(q, 3, {}, {{1, 0, Word{Letter{2, 1}}}}),
                    saturating_pow(q, 3), 2, 1, true);
}

inline CorpusEntry build_extraspecial(std::uint64_t p, std::uint64_t m,
                                      const std::string& type) {
  require_prime("extraspecial", p);
  if (m < 1)
    throw input_error("extraspecial: m must be at least 1");
  std::string variant;
  if (type == "+" || type == "plus")
    variant = "+";
  else if (type == "-" || type == "minus")
    variant = "-";
  else
    throw input_error("extraspecial: type '" + type +
                      "' must be '+' or '-'");
  const std::uint32_t q = static_cast<std::uint32_t>(p);
  const std::uint32_t mm = static_cast<std::uint32_t>(m);
  const std::uint32_t n = 2 * mm + 1;
  const std::uint64_t order = saturating_pow(q, n);
  if (order == std::numeric_limits<std::uint64_t>::max())
    throw input_error("extraspecial: order overflows");
  const std::uint32_t z = n - 1;  // central generator, 0-based
  std::vector<PowerRelation> powers;
  std::vector<CommRelation> comms;
  for (std::uint32_t i = 0; i < mm; ++i)
    comms.push_back(CommRelation{2 * i + 1, 2 * i, Word{Letter{z, 1}}});
  if (q == 2) {
    // '+' is a central product of dihedral pairs (x^2 = 1, y^2 = z); '-'
    // swaps the first pair for a quaternion pair (x^2 = y^2 = z)
    for (std::uint32_t i = 0; i < mm; ++i)
      powers.push_back(PowerRelation{2 * i + 1, Word{Letter{z, 1}}});
    if (variant == "-")
      powers.push_back(PowerRelation{0, Word{Letter{z, 1}}});
  } else if (variant == "-") {
    // exponent p^2: one generator of order p^2, the rest exponent p
    powers.push_back(PowerRelation{0, Word{Letter{z, 1}}});
  }
  return make_entry(
      "extraspecial",
      {{"p", std::to_string(p)}, {"m", std::to_string(m)}, {"type", variant}},
      PcPresentation(q, n, powers, comms), order, 2, 1, true);
}

inline CorpusEntry build_unitriangular3(std::uint64_t p) {
  require_prime("unitriangular3", p);
  const std::uint32_t q = static_cast<std::uint32_t>(p);
  return make_entry(
      "unitriangular3", {{"p", std::to_string(p)}},
      presentation_from_model(MatrixModel::unitriangular(q, 3)),
      saturating_pow(q, 3), 2, 1, true);
}

inline CorpusEntry build_unitriangular4(std::uint64_t p) {
  require_prime("unitriangular4", p);
  const std::uint32_t q = static_cast<std::uint32_t>(p);
  return make_entry(
      "unitriangular4", {{"p", std::to_string(p)}},
      presentation_from_model(MatrixModel::unitriangular(q, 4)),
      saturating_pow(q, 6), 3, 3, true);
}

inline CorpusEntry build_wreath_cyclic(std::uint64_t p) {
  require_prime("wreath_cyclic", p);
  if (p > 11)
    throw input_error("wreath_cyclic: p = " + std::to_string(p) +
                      " gives order p^{p+1} beyond the supported range");
  const std::uint32_t q = static_cast<std::uint32_t>(p);
  return make_entry("wreath_cyclic", {{"p", std::to_string(p)}},
                    presentation_from_model(WreathModel::wreath(q)),
                    saturating_pow(q, q + 1), q, q - 1, true);
}

inline CorpusEntry build_blackburn_metacyclic(std::uint64_t p,
                                              std::uint64_t m,
                                              std::uint64_t n,
                                              std::uint64_t k) {
  require_prime("blackburn_metacyclic", p);
  if (k < 1 || m < 2 * k || n < m)
    throw input_error(
        "blackburn_metacyclic: parameters must satisfy k > 0 and n >= m >= "
        "2k, got m=" + std::to_string(m) + " n=" + std::to_string(n) +
        " k=" + std::to_string(k));
  const std::uint64_t total = m + n + k;
  if (total > 40 ||
      saturating_pow(p, static_cast<std::uint32_t>(total)) ==
          std::numeric_limits<std::uint64_t>::max())
    throw input_error("blackburn_metacyclic: order p^{m+n+k} overflows");
  const std::uint32_t q = static_cast<std::uint32_t>(p);
  const std::uint32_t A = static_cast<std::uint32_t>(m);
  const std::uint32_t B = static_cast<std::uint32_t>(n + k);
  return make_entry(
      "blackburn_metacyclic",
      {{"p", std::to_string(p)},
       {"m", std::to_string(m)},
       {"n", std::to_string(n)},
       {"k", std::to_string(k)}},
      metacyclic_pc(q, A, B,
                    1 + saturating_pow(p, static_cast<std::uint32_t>(n)), 0),
      saturating_pow(q, static_cast<std::uint32_t>(total)), 2, 1, true);
}

inline std::uint64_t param_value(const std::string& key,
                                 const std::string& text) {
  std::uint64_t value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || text.empty())
    throw input_error("family parameter " + key + ": '" + text +
                      "' is not an unsigned number");
  return value;
}

}  // namespace detail

/** The closed list of built-in family names. */
inline const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{
      "cyclic",          "elem_abelian", "dihedral",
      "quaternion",      "semidihedral", "heisenberg",
      "extraspecial",    "unitriangular3", "unitriangular4",
      "wreath_cyclic",   "blackburn_metacyclic"};
  return names;
}

/** Build one family instance.  `args` are positional values or key=value
 *  pairs against the family's canonical parameter list: cyclic(order),
 *  elem_abelian(order), dihedral(order), quaternion(order),
 *  semidihedral(order), heisenberg(p), extraspecial(p, m, type),
 *  unitriangular3(p), unitriangular4(p), wreath_cyclic(p),
 *  blackburn_metacyclic(p, m, n, k). */
inline CorpusEntry build_family(const std::string& name,
                                const std::vector<std::string>& args) {
  static const std::map<std::string, std::vector<std::string>> schemas{
      {"cyclic", {"order"}},
      {"elem_abelian", {"order"}},
      {"dihedral", {"order"}},
      {"quaternion", {"order"}},
      {"semidihedral", {"order"}},
      {"heisenberg", {"p"}},
      {"extraspecial", {"p", "m", "type"}},
      {"unitriangular3", {"p"}},
      {"unitriangular4", {"p"}},
      {"wreath_cyclic", {"p"}},
      {"blackburn_metacyclic", {"p", "m", "n", "k"}}};
  const auto schema = schemas.find(name);
  if (schema == schemas.end()) {
    std::string known;
    for (const std::string& f : family_names())
      known += (known.empty() ? "" : ", ") + f;
    throw input_error("unknown family '" + name + "' (known: " + known + ")");
  }
  const std::vector<std::string>& keys = schema->second;
  std::vector<std::optional<std::string>> values(keys.size());
  std::size_t positional = 0;
  for (const std::string& arg : args) {
    const std::size_t eq = arg.find('=');
    if (eq != std::string::npos) {
      const std::string key = arg.substr(0, eq);
      const auto slot = std::find(keys.begin(), keys.end(), key);
      if (slot == keys.end())
        throw input_error("family " + name + ": unknown parameter '" + key +
                          "'");
      const std::size_t idx =
          static_cast<std::size_t>(slot - keys.begin());
      if (values[idx])
        throw input_error("family " + name + ": parameter '" + key +
                          "' given twice");
      values[idx] = arg.substr(eq + 1);
    } else {
      while (positional < keys.size() && values[positional]) ++positional;
      if (positional >= keys.size())
        throw input_error("family " + name + ": too many parameters (takes " +
                          std::to_string(keys.size()) + ")");
      values[positional] = arg;
    }
  }
  for (std::size_t i = 0; i < keys.size(); ++i)
    if (!values[i]) {
      std::string sig;
      for (const std::string& key : keys)
        sig += (sig.empty() ? "" : ", ") + key;
      throw input_error("family " + name + ": missing parameter '" + keys[i] +
                        "' (takes " + sig + ")");
    }
  const auto num = [&](std::size_t i) {
    return detail::param_value(keys[i], *values[i]);
  };
  if (name == "cyclic") return detail::build_cyclic(num(0));
  if (name == "elem_abelian") return detail::build_elem_abelian(num(0));
  if (name == "dihedral") return detail::build_dihedral(num(0));
  if (name == "quaternion") return detail::build_quaternion(num(0));
  if (name == "semidihedral") return detail::build_semidihedral(num(0));
  if (name == "heisenberg") return detail::build_heisenberg(num(0));
  if (name == "extraspecial")
    return detail::build_extraspecial(num(0), num(1), *values[2]);
  if (name == "unitriangular3") return detail::build_unitriangular3(num(0));
  if (name == "unitriangular4") return detail::build_unitriangular4(num(0));
  if (name == "wreath_cyclic") return detail::build_wreath_cyclic(num(0));
  return detail::build_blackburn_metacyclic(num(0), num(1), num(2), num(3));
}

/** Token form: `name` or `name:arg1,arg2,...` with the same argument rules. */
inline CorpusEntry build_family(const std::string& token) {
  const std::size_t colon = token.find(':');
  const std::string name = token.substr(0, colon);
  std::vector<std::string> args;
  if (colon != std::string::npos) {
    std::size_t i = colon + 1;
    while (i <= token.size()) {
      std::size_t stop = token.find(',', i);
      if (stop == std::string::npos) stop = token.size();
      args.push_back(token.substr(i, stop - i));
      i = stop + 1;
    }
  }
  return build_family(name, args);
}

/** The built-in regression corpus: every family at desk scale, 2-groups up
 *  to order 2^10 and odd-p groups up to 3^6 and 5^4. */
inline const std::vector<CorpusEntry>& default_corpus() {
  static const std::vector<CorpusEntry> corpus = [] {
    std::vector<CorpusEntry> c;
    const auto add = [&c](const std::string& token) {
      c.push_back(build_family(token));
    };
    add("cyclic:4");
    add("cyclic:32");
    add("cyclic:27");
    add("cyclic:625");
    add("elem_abelian:8");
    add("elem_abelian:9");
    for (std::uint64_t order = 8; order <= 512; order *= 2)
      add("dihedral:" + std::to_string(order));
    for (std::uint64_t order = 8; order <= 512; order *= 2)
      add("quaternion:" + std::to_string(order));
    for (std::uint64_t order = 16; order <= 512; order *= 2)
      add("semidihedral:" + std::to_string(order));
    add("heisenberg:3");
    add("heisenberg:5");
    add("extraspecial:2,2,+");
    add("extraspecial:2,2,-");
    add("extraspecial:3,1,-");
    add("extraspecial:3,2,+");
    add("extraspecial:5,1,+");
    add("unitriangular3:2");
    add("unitriangular3:3");
    add("unitriangular3:5");
    add("unitriangular4:2");
    add("unitriangular4:3");
    add("wreath_cyclic:2");
    add("wreath_cyclic:3");
    add("blackburn_metacyclic:2,2,2,1");
    add("blackburn_metacyclic:2,3,3,1");
    add("blackburn_metacyclic:2,4,4,2");
    add("blackburn_metacyclic:3,2,2,1");
    add("blackburn_metacyclic:3,2,3,1");
    return c;
  }();
  return corpus;
}

}  // namespace pcg
