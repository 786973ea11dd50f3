#pragma once

#include <string>

#include "qpencil/vqge.hpp"

namespace qpencil {

// Built-in demonstration pencils on five qubits (32 x 32), usable from the
// CLI without input files. "example1" is a commuting pencil with distinct
// generalized eigenvalues {0.6685, 0.9265, 1.3643, 1.8171}; "example2" is
// non-commuting with {-1.5872, 0.4480, 1.4396, 1.9370}.
vqge::MatrixPencil builtin_pencil(const std::string& name);
bool is_builtin_pencil(const std::string& name);

}  // namespace qpencil
