#pragma once

#include <string>

#include "json.hpp"
#include "lexcat/audit.hpp"

namespace lexcat::io {

inline std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

/// suite=... instance=... clause=... verdict=... cells=N grid="..." witness="..."
inline std::string format_record(const AuditRecord& r) {
  return "suite=" + r.suite + " instance=" + r.instance + " clause=" + r.clause + " verdict=" + to_string(r.verdict) +
         " cells=" + std::to_string(r.cells) + " grid=" + quoted(r.grid) + " witness=" + quoted(r.witness);
}

/// Sorted by (suite, instance, clause), one record per line.
inline std::string format_report(AuditReport rep) {
  rep.sort();
  std::string out;
  for (const auto& r : rep.records) out += format_record(r) + "\n";
  return out;
}

/// 0 all pass, 1 any failure, 3 otherwise skipped.
inline int exit_code(const AuditReport& rep) {
  if (rep.any_fail()) return 1;
  if (rep.any_skipped()) return 3;
  return 0;
}

/// Exit code for a library error surfaced at the command line.
inline int exit_code(const Error& e) {
  switch (e.code()) {
    case ErrorCode::malformed: return 2;
    case ErrorCode::cone_mismatch:
    case ErrorCode::saturation_bound: return 1;
    default: return 3;
  }
}

}  // namespace lexcat::io
