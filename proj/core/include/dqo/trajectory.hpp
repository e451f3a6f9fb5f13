#pragma once

#include <cstddef>
#include <vector>

namespace dqo {

// Uniformly sampled expectation values <q>(t), <qdot>(t).
struct Trajectory {
  double t0 = 0.0;
  double h = 0.0;
  std::vector<double> q;
  std::vector<double> qdot;

  std::size_t size() const { return q.size(); }
  double time(std::size_t k) const { return t0 + static_cast<double>(k) * h; }

  // Throws Error{domain} unless q and qdot have equal length >= 2 and h > 0.
  void validate() const;
};

}  // namespace dqo
