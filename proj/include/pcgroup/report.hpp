#pragma once

// Structured run reports.  Commands collect uniform rows (group, check name,
// verdict, note, counterexample) and emit them either as aligned
// human-readable text or as a stable machine-readable JSON document.  The
// machine format is byte-deterministic for a fixed run configuration: row
// content never depends on wall-clock or scheduling, and the `timings` key
// is always null there — measured durations appear in the human format only.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcgroup/presentation.hpp"

namespace pcg {

inline constexpr int report_format_version = 1;

enum class Verdict { pass, vacuous, fail };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::vacuous:
      return "vacuous";
    case Verdict::fail:
      return "fail";
  }
  return "fail";
}

/** One check outcome for one group.  `check` is the lemma id or command
 *  aspect ("consistency", "theorem_A", ...); `instances` counts the
 *  configurations the check actually examined. */
struct ReportRow {
  std::string group;
  std::string check;
  Verdict verdict = Verdict::pass;
  std::string note;
  std::uint64_t instances = 0;
  std::optional<std::string> counterexample;
  std::optional<double> seconds;  // human-format display only
};

struct Report {
  std::string command;
  std::uint64_t seed = 0;
  std::vector<ReportRow> rows;
};

inline bool report_has_fail(const Report& report) {
  for (const ReportRow& row : report.rows)
    if (row.verdict == Verdict::fail) return true;
  return false;
}

namespace detail {

inline std::string emit_machine(const Report& report) {
  nlohmann::ordered_json doc;
  doc["format_version"] = report_format_version;
  doc["command"] = report.command;
  doc["seed"] = report.seed;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const ReportRow& row : report.rows) {
    nlohmann::ordered_json r;
    r["group"] = row.group;
    r["lemma"] = row.check;
    r["verdict"] = verdict_name(row.verdict);
    r["note"] = row.note;
    r["instances"] = row.instances;
    if (row.counterexample)
      r["counterexample"] = *row.counterexample;
    else
      r["counterexample"] = nullptr;
    r["timings"] = nullptr;  // never emitted: keeps equal runs byte-equal
    rows.push_back(std::move(r));
  }
  doc["results"] = std::move(rows);
  return doc.dump(2) + "\n";
}

inline std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

inline std::string seconds_text(double seconds) {
  // fixed-point with millisecond resolution, no locale involvement
  const std::uint64_t ms =
      static_cast<std::uint64_t>(seconds * 1000.0 + 0.5);
  std::string whole = std::to_string(ms / 1000);
  std::string frac = std::to_string(ms % 1000);
  return whole + "." + std::string(3 - frac.size(), '0') + frac + "s";
}

inline std::string emit_human(const Report& report) {
  std::string out = "# report format_version=" +
                    std::to_string(report_format_version) + " command=" +
                    report.command + " seed=" + std::to_string(report.seed) +
                    "\n";
  std::size_t wg = 5, wc = 5, wv = 7, wi = 9;
  for (const ReportRow& row : report.rows) {
    wg = std::max(wg, row.group.size());
    wc = std::max(wc, row.check.size());
    wi = std::max(wi, std::to_string(row.instances).size());
  }
  out += pad("group", wg) + "  " + pad("check", wc) + "  " +
         pad("verdict", wv) + "  " + pad("instances", wi) + "  note\n";
  std::uint64_t npass = 0, nvac = 0, nfail = 0;
  for (const ReportRow& row : report.rows) {
    out += pad(row.group, wg) + "  " + pad(row.check, wc) + "  " +
           pad(verdict_name(row.verdict), wv) + "  " +
           pad(std::to_string(row.instances), wi) + "  " + row.note;
    if (row.seconds) out += "  [" + seconds_text(*row.seconds) + "]";
    out += "\n";
    if (row.counterexample)
      out += std::string(wg, ' ') + "  counterexample: " +
             *row.counterexample + "\n";
    switch (row.verdict) {
      case Verdict::pass:
        ++npass;
        break;
      case Verdict::vacuous:
        ++nvac;
        break;
      case Verdict::fail:
        ++nfail;
        break;
    }
  }
  out += std::to_string(report.rows.size()) + " checks: " +
         std::to_string(npass) + " pass, " + std::to_string(nvac) +
         " vacuous, " + std::to_string(nfail) + " fail\n";
  return out;
}

}  // namespace detail

/** Render a report.  `format` is "human" (aligned text, shows measured
 *  durations) or "machine" (stable JSON document). */
inline std::string emit_report(const Report& report,
                               const std::string& format) {
  if (format == "machine") return detail::emit_machine(report);
  if (format == "human") return detail::emit_human(report);
  throw input_error("unknown report format '" + format +
                    "' (expected human or machine)");
}

}  // namespace pcg
