#pragma once

#include <algorithm>
#include <string>
#include <tuple>
#include <vector>

namespace lexcat {

enum class Verdict { pass, fail, skipped };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::skipped: return "skipped";
  }
  return "?";
}

/// One clause of one audit on one instance.  `cells` counts the grid cells
/// examined; `witness` replays the first failure (or states the skip reason).
struct AuditRecord {
  std::string suite;
  std::string instance;
  std::string clause;
  Verdict verdict = Verdict::pass;
  std::size_t cells = 0;
  std::string witness;
  std::string grid;
};

struct AuditReport {
  std::vector<AuditRecord> records;

  void add(AuditRecord r) { records.push_back(std::move(r)); }
  void merge(const AuditReport& other) { records.insert(records.end(), other.records.begin(), other.records.end()); }

  [[nodiscard]] const AuditRecord* find(const std::string& clause) const {
    for (const auto& r : records)
      if (r.clause == clause) return &r;
    return nullptr;
  }
  [[nodiscard]] bool all_pass() const {
    return std::all_of(records.begin(), records.end(), [](const auto& r) { return r.verdict == Verdict::pass; });
  }
  [[nodiscard]] bool any_fail() const {
    return std::any_of(records.begin(), records.end(), [](const auto& r) { return r.verdict == Verdict::fail; });
  }
  [[nodiscard]] bool any_skipped() const {
    return std::any_of(records.begin(), records.end(), [](const auto& r) { return r.verdict == Verdict::skipped; });
  }

  void sort() {
    std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
      return std::tie(a.suite, a.instance, a.clause) < std::tie(b.suite, b.instance, b.clause);
    });
  }
};

/// Accumulates one clause over many grid cells; the first failure is kept.
class ClauseTally {
 public:
  ClauseTally(std::string suite, std::string instance, std::string clause, std::string grid)
      : record_{std::move(suite), std::move(instance), std::move(clause), Verdict::pass, 0, {}, std::move(grid)} {}

  void pass() { ++record_.cells; }
  void fail(const std::string& witness) {
    ++record_.cells;
    if (record_.verdict != Verdict::fail) {
      record_.verdict = Verdict::fail;
      record_.witness = witness;
    }
    ++failures_;
  }
  void check(bool ok, const std::string& witness) { ok ? pass() : fail(witness); }
  /// A cell whose limits or colimits the instance does not contain.
  void unavailable() { ++unavailable_; }
  void skip(const std::string& reason) {
    record_.verdict = Verdict::skipped;
    record_.witness = reason;
  }
  [[nodiscard]] bool failed() const { return record_.verdict == Verdict::fail; }
  [[nodiscard]] std::size_t failures() const { return failures_; }
  [[nodiscard]] AuditRecord record() const {
    auto r = record_;
    if (r.verdict == Verdict::fail) r.witness += " (" + std::to_string(failures_) + " failing cells)";
    if (unavailable_ > 0) r.grid += " unavailable=" + std::to_string(unavailable_);
    return r;
  }

 private:
  AuditRecord record_;
  std::size_t failures_ = 0;
  std::size_t unavailable_ = 0;
};

}  // namespace lexcat
