#include <iostream>

#include "pea/pea.hpp"

using namespace pea;

int main() {
  // the 14-element interval [0,(3,0)] in Z lex S3
  auto g = parse_group("lex(Z,finite:S3)");
  auto m = materialize(gamma(g, g->parse("(3,0)")), 100);
  std::cout << "elements: " << m.table.size() << "\n";
  std::cout << "axioms valid: " << (check_axioms(m.table).valid ? "yes" : "no") << "\n";
  std::cout << "commutative: " << (is_commutative(m.table) ? "yes" : "no") << "\n";

  auto rdp = check_rdp(m.table);
  std::cout << "rdp: " << (rdp.holds ? "HOLDS" : "FAILS witness=");
  for (std::size_t i = 0; i < rdp.witness.size(); ++i) std::cout << (i ? "," : "") << m.table.name(rdp.witness[i]);
  std::cout << "\n";

  if (auto d = find_n_decomposition(m.table, 3)) {
    std::cout << "3-decomposition slices:";
    for (auto k : d->sizes()) std::cout << " " << k;
    std::cout << "\n";
  }

  // refining a quadruple of the positive cone of Z lex Z
  auto z = integers();
  auto zz = lex(integers(), z);
  auto q = parse_quadruple(*zz, "(2,-1);(1,5)=(1,2);(2,2)");
  std::string label;
  auto t = lift_group_refine(builtin_oracle(z), z, q, &label);
  std::cout << "lift (" << label << "): " << zz->format(t.c11) << " " << zz->format(t.c12) << " / "
            << zz->format(t.c21) << " " << zz->format(t.c22) << "\n";
  return 0;
}
