#pragma once

// Batch driver behind the command-line binary.  Subcommands: `check`
// (consistency overlaps plus oracle sanity), `lemmas` (the lemma verifier
// suite), `audit` (single-element commutator coverage), `witness`
// (exhaustive and constructive covering elements), `oracle-diff` (lattice
// machinery against the brute-force oracle) and `corpus` (everything on the
// built-in families).  A target is a presentation file path or a `--family
// name:params` token.  Reports go to stdout, diagnostics to stderr; exit
// code 0 means every verdict was pass or vacuous, 1 means some verdict
// failed, 2 means the request itself was unusable (usage, parse, or size
// errors).  Machine-format output is byte-deterministic for a fixed
// configuration: corpus rows are assembled in corpus order no matter how
// many worker threads computed them.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "pcgroup/corpus.hpp"
#include "pcgroup/oracle.hpp"
#include "pcgroup/report.hpp"

namespace pcg {

/** Everything one invocation depends on; equal configs (including the seed)
 *  produce byte-identical machine reports. */
struct RunConfig {
  std::string command;
  std::string file;                // positional target: presentation file
  std::string family;              // --family token, e.g. "dihedral:8"
  std::vector<std::string> only;   // lemma id filter, empty = all
  std::string format = "human";
  std::uint64_t max_order = PcPresentation::default_size_guard;
  std::uint32_t jobs = 1;
  std::uint64_t seed = 0;
  bool constructive = false;
  bool exhaustive = false;
};

namespace detail {

/** Largest group the element-level oracle commands are willing to touch. */
inline constexpr std::uint64_t oracle_order_bound = std::uint64_t{1} << 12;

struct Target {
  std::string name;
  PcPresentation presentation;
};

inline Target load_target(const RunConfig& cfg) {
  if (!cfg.file.empty() && !cfg.family.empty())
    throw input_error(
        "give either a presentation file or --family, not both");
  if (cfg.file.empty() && cfg.family.empty())
    throw input_error(
        "a target is required: a presentation file or --family name:params");
  if (!cfg.family.empty()) {
    CorpusEntry entry = build_family(cfg.family);
    if (entry.order > cfg.max_order)
      throw input_error("group " + entry.name + " has order " +
                        std::to_string(entry.order) +
                        ", above the size bound " +
                        std::to_string(cfg.max_order) +
                        "; raise --max-order to allow it");
    return Target{std::move(entry.name), std::move(entry.presentation)};
  }
  std::ifstream in(cfg.file, std::ios::binary);
  if (!in)
    throw input_error("cannot open presentation file '" + cfg.file + "'");
  std::ostringstream text;
  text << in.rdbuf();
  PcPresentation P = parse_presentation(text.str(), cfg.max_order);
  if (P.order() > cfg.max_order)
    throw input_error("group in '" + cfg.file + "' has order " +
                      std::to_string(P.order()) +
                      ", above the size bound " +
                      std::to_string(cfg.max_order) +
                      "; raise --max-order to allow it");
  return Target{cfg.file, std::move(P)};
}

inline Verdict lemma_verdict(LemmaReport::Verdict v) {
  switch (v) {
    case LemmaReport::Verdict::pass:
      return Verdict::pass;
    case LemmaReport::Verdict::vacuous:
      return Verdict::vacuous;
    case LemmaReport::Verdict::fail:
      return Verdict::fail;
  }
  return Verdict::fail;
}

template <class Fill>
ReportRow timed(Fill&& fill) {
  const auto start = std::chrono::steady_clock::now();
  ReportRow row = fill();
  row.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return row;
}

inline ReportRow consistency_row(const Target& t) {
  const ConsistencyReport c = check_consistency(t.presentation);
  ReportRow row;
  row.group = t.name;
  row.check = "consistency";
  row.instances = c.overlaps_checked;
  if (c.consistent) {
    row.verdict = Verdict::pass;
    row.note = "all collection overlaps agree";
  } else {
    row.verdict = Verdict::fail;
    row.note = "inconsistent presentation";
    row.counterexample = c.describe();
  }
  return row;
}

inline ReportRow sanity_row(const Target& t, std::uint64_t seed) {
  ReportRow row;
  row.group = t.name;
  row.check = "cayley_sanity";
  if (t.presentation.order() > oracle_order_bound) {
    row.verdict = Verdict::vacuous;
    row.note = "order " + std::to_string(t.presentation.order()) +
               " exceeds the oracle bound " +
               std::to_string(oracle_order_bound);
    return row;
  }
  const BruteGroup oracle(t.presentation);
  const CayleyReport c = cayley_sanity(oracle, seed);
  row.instances = c.triples;
  if (c.pass) {
    row.verdict = Verdict::pass;
    row.note = std::string("group axioms and ") +
               (c.exhaustive ? "full" : "sampled") +
               " associativity hold on the oracle table";
  } else {
    row.verdict = Verdict::fail;
    row.note = "oracle multiplication table violates the group axioms";
    if (!c.violations.empty()) row.counterexample = c.violations.front();
  }
  return row;
}

inline void lemma_rows(const Target& t, const std::vector<std::string>& only,
                       std::vector<ReportRow>& rows) {
  const std::vector<std::string>& all = lemma_ids();
  const std::vector<std::string>& ids = only.empty() ? all : only;
  for (const std::string& id : ids)
    if (std::find(all.begin(), all.end(), id) == all.end()) {
      std::string known;
      for (const std::string& k : all)
        known += (known.empty() ? "" : ", ") + k;
      throw input_error("unknown lemma id '" + id + "' (known: " + known +
                        ")");
    }
  for (const std::string& id : ids)
    rows.push_back(timed([&] {
      const LemmaReport lr = verify_lemma(t.presentation, id);
      ReportRow row;
      row.group = t.name;
      row.check = lr.lemma;
      row.verdict = lemma_verdict(lr.verdict);
      row.note = lr.note;
      row.instances = lr.instances;
      row.counterexample = lr.counterexample;
      return row;
    }));
}

inline ReportRow audit_row(const Target& t) {
  const AuditReport a = theorem_A_audit(t.presentation, t.name);
  ReportRow row;
  row.group = t.name;
  row.check = "theorem_A";
  row.instances = a.witness_count;
  const std::string basics =
      "d(G')=" + std::to_string(a.derived_rank) + "; " +
      std::to_string(a.witness_count) + " witnesses; union of commutator "
      "sets " +
      (a.commutators_cover_derived ? "covers" : "does not cover") + " G'";
  switch (a.verdict) {
    case AuditReport::Verdict::pass:
      row.verdict = Verdict::pass;
      row.note = basics + "; constructive branch " + a.branch + ", x=" +
                 exps_string(*a.constructive);
      break;
    case AuditReport::Verdict::out_of_hypothesis:
      row.verdict = Verdict::vacuous;
      row.note = "out of hypothesis: " + basics;
      break;
    case AuditReport::Verdict::fail:
      row.verdict = Verdict::fail;
      row.note = basics;
      row.counterexample =
          a.notes.empty() ? std::string("coverage audit failed")
                          : a.notes.front();
      break;
  }
  return row;
}

inline ReportRow witness_exhaustive_row(const Target& t) {
  const std::vector<Element> witnesses = witness_exhaustive(t.presentation);
  const std::uint32_t d =
      frattini_rank(derived_subgroup(t.presentation)).second;
  ReportRow row;
  row.group = t.name;
  row.check = "witness_exhaustive";
  row.instances = witnesses.size();
  if (!witnesses.empty()) {
    row.verdict = Verdict::pass;
    row.note = std::to_string(witnesses.size()) +
               " covering elements; least x=" +
               exps_string(witnesses.front());
  } else if (d > 2) {
    row.verdict = Verdict::vacuous;
    row.note = "no covering element; d(G')=" + std::to_string(d) +
               " is outside the guaranteed range";
  } else {
    row.verdict = Verdict::fail;
    row.note = "no covering element found though d(G')=" + std::to_string(d);
  }
  return row;
}

inline ReportRow witness_constructive_row(const Target& t) {
  ReportRow row;
  row.group = t.name;
  row.check = "witness_constructive";
  try {
    const WitnessResult w = witness_constructive(t.presentation);
    row.verdict = Verdict::pass;
    row.instances = 1;
    row.note = "branch " + w.trace.branch + "; x=" + exps_string(w.x);
  } catch (const precondition_error& e) {
    row.verdict = Verdict::vacuous;
    row.note = e.what();
  } catch (const invariant_violation& e) {
    row.verdict = Verdict::fail;
    row.note = "constructive selection failed";
    row.counterexample = e.what();
  }
  return row;
}

inline ReportRow oracle_row(const Target& t) {
  const DiffReport d = diff_report(t.presentation);
  const bool ok = d.agree && d.mismatches.empty() && d.skipped.empty();
  ReportRow row;
  row.group = t.name;
  row.check = "oracle";
  row.instances = d.checks;
  if (ok) {
    row.verdict = Verdict::pass;
    row.note = std::to_string(d.checks) + " comparisons agree";
  } else {
    row.verdict = Verdict::fail;
    row.note = std::to_string(d.mismatches.size()) +
               " mismatching comparisons, " +
               std::to_string(d.skipped.size()) + " skipped";
    if (!d.mismatches.empty()) {
      const Mismatch& m = d.mismatches.front();
      row.counterexample = m.operation + " " + m.arguments + ": " +
                           std::to_string(m.only_lattice.size()) +
                           " lattice-only vs " +
                           std::to_string(m.only_oracle.size()) +
                           " oracle-only elements";
    } else if (!d.skipped.empty()) {
      row.counterexample = "skipped: " + d.skipped.front();
    }
  }
  return row;
}

inline void require_oracle_range(const Target& t) {
  if (t.presentation.order() > oracle_order_bound)
    throw input_error("oracle-diff supports orders up to " +
                      std::to_string(oracle_order_bound) + "; " + t.name +
                      " has order " +
                      std::to_string(t.presentation.order()));
}

/** Run fn(0..count-1) on `jobs` workers; the first exception wins and is
 *  rethrown after every worker has stopped. */
template <class F>
void parallel_for(std::size_t count, std::uint32_t jobs, F&& fn) {
  std::size_t workers = jobs == 0 ? 1 : jobs;
  workers = std::min<std::size_t>(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      while (!stop.load(std::memory_order_relaxed)) {
        const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          const std::lock_guard<std::mutex> guard(error_mutex);
          if (!first_error) first_error = std::current_exception();
          stop.store(true, std::memory_order_relaxed);
        }
      }
    });
  for (std::thread& worker : pool) worker.join();
  if (first_error) std::rethrow_exception(first_error);
}

/** Every check on one group, in the fixed corpus row order. */
inline void corpus_rows(const Target& t, std::uint64_t seed,
                        std::vector<ReportRow>& rows) {
  rows.push_back(timed([&] { return consistency_row(t); }));
  rows.push_back(timed([&] { return sanity_row(t, seed); }));
  lemma_rows(t, {}, rows);
  rows.push_back(timed([&] { return audit_row(t); }));
  rows.push_back(timed([&] { return witness_exhaustive_row(t); }));
  rows.push_back(timed([&] { return witness_constructive_row(t); }));
  rows.push_back(timed([&] { return oracle_row(t); }));
}

inline Report execute(const RunConfig& cfg) {
  Report report;
  report.command = cfg.command;
  report.seed = cfg.seed;
  if (cfg.command == "corpus") {
    const std::vector<CorpusEntry>& corpus = default_corpus();
    std::vector<std::size_t> selected;
    for (std::size_t i = 0; i < corpus.size(); ++i)
      if (corpus[i].order <= cfg.max_order) selected.push_back(i);
    std::vector<std::vector<ReportRow>> chunks(selected.size());
    parallel_for(selected.size(), cfg.jobs, [&](std::size_t k) {
      const CorpusEntry& entry = corpus[selected[k]];
      const Target t{entry.name, entry.presentation};
      corpus_rows(t, cfg.seed, chunks[k]);
    });
    for (std::vector<ReportRow>& chunk : chunks)
      for (ReportRow& row : chunk) report.rows.push_back(std::move(row));
    return report;
  }
  const Target t = load_target(cfg);
  if (cfg.command == "check") {
    report.rows.push_back(timed([&] { return consistency_row(t); }));
    report.rows.push_back(timed([&] { return sanity_row(t, cfg.seed); }));
  } else if (cfg.command == "lemmas") {
    lemma_rows(t, cfg.only, report.rows);
  } else if (cfg.command == "audit") {
    report.rows.push_back(timed([&] { return audit_row(t); }));
  } else if (cfg.command == "witness") {
    const bool both = !cfg.constructive && !cfg.exhaustive;
    if (cfg.exhaustive || both)
      report.rows.push_back(timed([&] { return witness_exhaustive_row(t); }));
    if (cfg.constructive || both)
      report.rows.push_back(
          timed([&] { return witness_constructive_row(t); }));
  } else if (cfg.command == "oracle-diff") {
    require_oracle_range(t);
    report.rows.push_back(timed([&] { return oracle_row(t); }));
  } else {
    throw input_error("unknown command '" + cfg.command + "'");
  }
  return report;
}

}  // namespace detail

/** Parse arguments (without the program name), run the request, and write
 *  the report to `out` and diagnostics to `err`.  Returns the process exit
 *  code: 0 all pass/vacuous, 1 some verdict failed, 2 unusable request. */
inline int main_dispatch(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  RunConfig cfg;
  CLI::App app{
      "finite p-group presentation toolkit: consistency checks, lemma "
      "suites, witness audits, and brute-force oracle diffs",
      "pcgroup"};
  app.require_subcommand(1);

  const auto add_target = [&cfg](CLI::App* sub) {
    sub->add_option("target", cfg.file, "presentation file path");
    sub->add_option("--family", cfg.family,
                    "built-in family instance, e.g. dihedral:8 or "
                    "blackburn_metacyclic:2,2,2,1");
  };
  const auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "report format")
        ->check(CLI::IsMember({"human", "machine"}))
        ->capture_default_str();
    sub->add_option("--max-order", cfg.max_order,
                    "refuse groups larger than this")
        ->capture_default_str();
    sub->add_option("--jobs", cfg.jobs, "corpus worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--seed", cfg.seed, "seed for sampled oracle checks")
        ->capture_default_str();
  };

  CLI::App* check = app.add_subcommand(
      "check", "consistency overlaps plus oracle sanity for one group");
  add_target(check);
  add_common(check);

  CLI::App* lemmas =
      app.add_subcommand("lemmas", "run the lemma verifier suite");
  add_target(lemmas);
  add_common(lemmas);
  lemmas
      ->add_option("--only", cfg.only,
                   "comma-separated lemma ids (default: all)")
      ->delimiter(',');

  CLI::App* audit = app.add_subcommand(
      "audit", "single-element commutator coverage audit");
  add_target(audit);
  add_common(audit);

  CLI::App* witness =
      app.add_subcommand("witness", "compute covering witnesses");
  add_target(witness);
  add_common(witness);
  CLI::Option* wc = witness->add_flag("--constructive", cfg.constructive,
                                      "structural selection only");
  CLI::Option* we = witness->add_flag("--exhaustive", cfg.exhaustive,
                                      "exhaustive enumeration only");
  wc->excludes(we);

  CLI::App* oracle = app.add_subcommand(
      "oracle-diff", "diff the lattice machinery against the oracle");
  add_target(oracle);
  add_common(oracle);

  CLI::App* corpus = app.add_subcommand(
      "corpus", "run every check on the built-in corpus");
  add_common(corpus);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("pcgroup");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  for (CLI::App* sub : {check, lemmas, audit, witness, oracle, corpus})
    if (sub->parsed()) cfg.command = sub->get_name();

  try {
    const Report report = detail::execute(cfg);
    out << emit_report(report, cfg.format);
    out.flush();
    return report_has_fail(report) ? 1 : 0;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace pcg
