#include "coxq/catalog.hpp"

#include <stdexcept>

namespace coxq {

namespace {

BwGraph path_graph(int n, const std::vector<std::string>& black) {
  if (n < 1) throw std::invalid_argument("catalog: rank must be >= 1");
  std::vector<std::string> names;
  names.reserve(n);
  for (int i = 1; i <= n; ++i) names.push_back(std::to_string(i));
  BwGraph g(names);
  for (int i = 0; i + 1 < n; ++i) g.set_bond(i, i + 1, 3);
  for (const auto& name : black) {
    auto id = g.find(name);
    if (!id) throw std::invalid_argument("catalog: unknown black node " + name);
    g.set_black(*id, true);
  }
  return g;
}

}  // namespace

BwGraph make_A(int n, const std::vector<std::string>& black) {
  return path_graph(n, black);
}

BwGraph make_B(int n, const std::vector<std::string>& black) {
  if (n < 2) throw std::invalid_argument("make_B: rank must be >= 2");
  BwGraph g = path_graph(n, black);
  g.set_bond(0, 1, 4);
  return g;
}

BwGraph make_D(int n, const std::vector<std::string>& black) {
  if (n < 4) throw std::invalid_argument("make_D: rank must be >= 4");
  BwGraph g = path_graph(n, black);
  g.set_bond(n - 2, n - 1, 2);
  g.set_bond(n - 3, n - 1, 3);
  return g;
}

BwGraph make_E(int n, const std::vector<std::string>& black) {
  if (n < 6 || n > 8) throw std::invalid_argument("make_E: rank must be 6..8");
  BwGraph g = path_graph(n, black);
  g.set_bond(n - 2, n - 1, 2);
  g.set_bond(2, n - 1, 3);
  return g;
}

BwGraph make_F4(const std::vector<std::string>& black) {
  BwGraph g = path_graph(4, black);
  g.set_bond(1, 2, 4);
  return g;
}

BwGraph make_H(int n, const std::vector<std::string>& black) {
  if (n < 2 || n > 4) throw std::invalid_argument("make_H: rank must be 2..4");
  BwGraph g = path_graph(n, black);
  g.set_bond(0, 1, 5);
  return g;
}

BwGraph make_I2(int m, const std::vector<std::string>& black) {
  if (m != kInfiniteBond && m < 3)
    throw std::invalid_argument("make_I2: m must be >= 3 or infinite");
  BwGraph g = path_graph(2, black);
  g.set_bond(0, 1, m);
  return g;
}

}  // namespace coxq
