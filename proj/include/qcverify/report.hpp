#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qcv {

struct Verdict {
  std::string name;
  bool pass = false;
  bool exact = false;      // exact arithmetic or numeric with tolerance
  std::string value;       // residual, witness or computed quantity
  std::string detail;
};

// Machine-readable result of one CLI command. Deterministic for a fixed
// (command, seed) pair; rationals rendered as fraction strings, floats as
// shortest round-trip decimals.
struct Report {
  std::string command;
  uint64_t seed = 0;
  double wall_ms = 0;
  std::vector<Verdict> verdicts;
  std::vector<std::pair<std::string, std::string>> notes;

  bool pass() const {
    for (auto& v : verdicts)
      if (!v.pass) return false;
    return true;
  }
  void add(const std::string& name, bool ok, bool exact, const std::string& value,
           const std::string& detail = "") {
    verdicts.push_back({name, ok, exact, value, detail});
  }
  void note(const std::string& k, const std::string& v) { notes.push_back({k, v}); }

  std::string to_json() const;
  std::string to_text() const;
};

}  // namespace qcv
