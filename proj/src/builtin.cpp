#include "qpencil/builtin.hpp"

namespace qpencil {

bool is_builtin_pencil(const std::string& name) {
  return name == "example1" || name == "example2";
}

vqge::MatrixPencil builtin_pencil(const std::string& name) {
  using pauli::PauliSum;
  if (name == "example1") {
    PauliSum g(5), s(5);
    g.add_term(1.0, "IIIII").add_term(0.2, "XZIII").add_term(0.5, "XIIII");
    s.add_term(1.0, "IIIII").add_term(0.441, "XZIII").add_term(0.3939, "XIIII");
    return {std::move(g), std::move(s)};
  }
  if (name == "example2") {
    PauliSum g(5), s(5);
    g.add_term(1.0, "IIIII")
        .add_term(0.63, "XZIII")
        .add_term(1.2, "XIIII")
        .add_term(0.2, "ZIIII");
    s.add_term(1.0, "IIIII").add_term(0.1741, "XZIII").add_term(0.2981, "XIIII");
    return {std::move(g), std::move(s)};
  }
  throw ValidityError("unknown builtin pencil: " + name);
}

}  // namespace qpencil
