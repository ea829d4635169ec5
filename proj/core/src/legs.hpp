#pragma once

#include "smc/structure.hpp"

namespace smc::detail {

struct Legs {
  Matrix clockwise, counter;
};

Legs pentagon_legs(const Field& F, const StructureSpaces& sp, const Matrix& a);
Legs unit_legs(const Field& F, const StructureSpaces& sp, const Matrix& a, const Matrix& l, const Matrix& c);
Legs hexagon_legs(const Field& F, const StructureSpaces& sp, const Matrix& a, const Matrix& c);
/// First column where x and y differ, or -1.
int first_difference(const Matrix& x, const Matrix& y);

}  // namespace smc::detail
