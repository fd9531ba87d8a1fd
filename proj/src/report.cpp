#include "qcverify/report.hpp"

#include <json.hpp>
#include <sstream>

#include "qcverify/scalar.hpp"

namespace qcv {

std::string Report::to_json() const {
  // deterministic for a fixed (command, seed): wall time is reported in the
  // text rendering only
  nlohmann::json j;
  j["schema"] = "qcverify-report/1";
  j["command"] = command;
  j["seed"] = seed;
  j["pass"] = pass();
  j["verdicts"] = nlohmann::json::array();
  for (auto& v : verdicts) {
    nlohmann::json e;
    e["name"] = v.name;
    e["pass"] = v.pass;
    e["arithmetic"] = v.exact ? "exact" : "numeric";
    e["value"] = v.value;
    if (!v.detail.empty()) e["detail"] = v.detail;
    j["verdicts"].push_back(e);
  }
  if (!notes.empty()) {
    nlohmann::json n = nlohmann::json::object();
    for (auto& [k, v] : notes) n[k] = v;
    j["notes"] = n;
  }
  return j.dump(2);
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << "== " << command << " (seed " << seed << ", " << double_str(wall_ms) << " ms)\n";
  for (auto& v : verdicts) {
    os << (v.pass ? "  pass  " : "  FAIL  ") << v.name;
    if (!v.value.empty()) os << " = " << v.value;
    os << (v.exact ? "  [exact]" : "  [numeric]");
    if (!v.detail.empty()) os << "  (" << v.detail << ")";
    os << "\n";
  }
  for (auto& [k, v] : notes) os << "  note: " << k << ": " << v << "\n";
  os << (pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace qcv
