#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcverify/chart.hpp"
#include "qcverify/lie_frame.hpp"
#include "qcverify/qc_structure.hpp"

namespace qcv {

// Built-in catalogue of every Lie algebra and coordinate coframe the engine
// verifies, keyed by short names:
//   l1, l1_tilde, l2, l3, l3_tilde   seven-dimensional qc examples
//   heis7, heis11                    quaternionic Heisenberg (n = 1, 2)
//   su2, su11, heis3, e2, e11, psu11 three-dimensional Bianchi groups
//   g7, g7_eps                       seven-dimensional solvable Sp(2)-hypo group
struct RegistryEntry {
  LieFrame frame;
  std::string description;
  std::optional<CoordChart> chart;
};

const std::vector<std::string>& registry_names();
const RegistryEntry& registry_get(const std::string& name);
bool registry_has(const std::string& name);

// Standard qc data (H = e_1..e_4n, Reeb = last three, omega_s the standard
// quaternionic 2-forms). Available for l1, l2, l3, heis7, heis11.
QcStructure standard_qc(const std::string& name);

// Quaternionic Heisenberg algebra for arbitrary n >= 1.
LieFrame quaternionic_heisenberg(int n);

}  // namespace qcv
