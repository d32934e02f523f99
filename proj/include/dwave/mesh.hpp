#pragma once

#include <optional>
#include <string>
#include <vector>

namespace dwave {

/// Graded 1-D grid on [0, 1] or composite grid on [0, 1] u [1, L].
struct Mesh {
  std::vector<double> nodes;
  std::optional<std::size_t> interface_index;  // node at x = 1 (composite)
  double domain_right = 1.0;

  std::size_t size() const { return nodes.size(); }
  /// Index of the last node of the degenerate part (x = 1).
  std::size_t left_end() const { return interface_index.value_or(nodes.size() - 1); }
  double min_cell() const;
  double max_cell() const;
  /// One-column CSV with header "x".
  std::string to_csv() const;
};

/// x_i = (i/n)^grading, i = 0..n. Requires n >= 16 and grading in [1, 4].
Mesh build_graded(int n, double grading);

/// Graded nodes on [0, 1] followed by n_right uniform cells on [1, L].
Mesh build_composite(int n_left, double grading, int n_right, double L);

}  // namespace dwave
