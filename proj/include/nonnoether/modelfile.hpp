#pragma once

#include "nonnoether/model.hpp"

#include <string>

namespace nonnoether {

// JSON model files. Layout (indices are 1-based, matching the coordinate
// names z1..z2n):
// {
//   "name": "toda2",
//   "dim": 4,
//   "coords": ["z1","z2","z3","z4"],
//   "poisson":    [{"i":1,"j":3,"expr":"1"}, ...],          // W_ij, i<j
//   "symplectic": [{"i":1,"j":3,"expr":"1"}, ...],          // optional
//   "hamiltonian": "1/2*z1^2 + ...",
//   "symmetry": ["...", ...],                               // 2n components
//   "s_form":   [{"i":1,"expr":"..."}, ...],                // optional
//   "volume":   "1"                                          // optional coeff
// }
// The loader parses every expression under the shared grammar and runs the
// geometric consistency checks before returning.
PhaseModel load_model_file(const std::string& path);
PhaseModel load_model_json_text(const std::string& text, const std::string& origin);

std::string model_to_json_text(const PhaseModel& m);
void save_model_file(const PhaseModel& m, const std::string& path);

} // namespace nonnoether
