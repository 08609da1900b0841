#include "rayforge/quadrature.hpp"

namespace rayforge {

std::vector<double> quadrature_weights(const std::vector<double>& s) {
  if (s.empty()) fail_input("quadrature_weights: empty sample array");
  std::vector<double> w(s.size(), 0.0);
  std::size_t m = s.size() - 1;
  if (m == 0) return w;
  if (m == 1) {
    w[0] = w[1] = 0.5 * (s[1] - s[0]);
    return w;
  }
  std::size_t i = 0;
  for (; i + 2 <= m; i += 2) {
    auto q = quad3_weights(s[i], s[i + 1], s[i + 2], s[i], s[i + 2]);
    w[i] += q[0];
    w[i + 1] += q[1];
    w[i + 2] += q[2];
  }
  if (i == m - 1) {
    auto q = quad3_weights(s[m - 2], s[m - 1], s[m], s[m - 1], s[m]);
    w[m - 2] += q[0];
    w[m - 1] += q[1];
    w[m] += q[2];
  }
  return w;
}

}  // namespace rayforge
