// Builds a directed round fold map on a small tree and prints its open book data.
#include <iostream>

#include <rfm/rfm.hpp>

int main() {
  using namespace rfm;
  DecompositionGraph g;
  g.pieces = {{0, PieceKind::pants()}, {1, PieceKind::solid_torus()}, {2, PieceKind::solid_torus()},
              {3, PieceKind::solid_torus()}};
  for (PieceId leaf = 1; leaf <= 3; ++leaf) g.gluings.push_back({{0, static_cast<int>(leaf - 1)}, {leaf, 0}, kPlumbing});

  const auto labeling = label_tree(g);
  const auto d = construct_directed(g, labeling);
  std::cout << serialize_descriptor(d);

  const auto book = openbook_summary(d);
  std::cout << "binding components " << book.binding_components << ", page euler characteristic "
            << book.page_euler_characteristic << ", H1 = " << to_string(first_homology(g)) << '\n';
}
