// Builds K*I_4 + R_4(1,1,1,1), finds its Lie index and prints its radical
// and second Lie center.

#include <iostream>

#include "lienil/lienil.hpp"

int main() {
  using namespace lienil;
  const Algebra a = block_triangular_algebra(BlockSpec{4, {1, 1, 1, 1}, true, Field::rationals()});

  for (std::size_t n = 1; n <= 3; ++n) {
    const auto r = satisfies_ln(a, n);
    std::cout << "L_" << n << ": " << (r.holds ? "yes" : "no; witness " + describe_witness(a, *r.witness)) << "\n";
  }

  const auto rad = radical(a);
  std::cout << "radical: dim " << rad.subspace.dim() << ", nilpotency index " << rad.nilpotency_index << "\n";

  std::cout << "Z_2:";
  for (const auto& e : subspace_elements(a, lie_center(a, 2))) std::cout << " " << e.to_string();
  std::cout << "\n";
}
