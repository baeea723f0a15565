#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace rit {

// One outstanding (or not-yet-arrived, with a virtual radius) target.
struct DagItem {
  int id = 0;
  double radius = 0.0;  // actual or virtual radial coordinate, >= rho
  double theta = 0.0;
};

struct DagVertex {
  int id = -1;  // -1 marks the vehicle source
  double radius = 0.0;
  double theta = 0.0;
};

// DAG of feasible capture successions for a perimeter-bound vehicle.
// Vertices are sorted by (radius, id) with the source first at (rho, phi).
// Edge j -> k exists iff radius_j < radius_k strictly and
//   radius_k - radius_j >= v * rho * angle_distance(theta_k, theta_j),
// i.e. after taking j at the perimeter the vehicle can still walk the arc to
// k's perimeter point before k descends to it.  Equal radii get no edge in
// either direction.  Adjacency is CSR; successor lists are ascending in
// (radius, id) because vertices are.
struct ReachabilityDag {
  std::vector<DagVertex> vertices;
  std::vector<std::uint32_t> offsets;    // size() == vertices.size() + 1
  std::vector<std::uint32_t> adjacency;  // successor vertex indexes
  double v = 0.0;
  double rho = 0.0;

  std::span<const std::uint32_t> successors(std::uint32_t u) const {
    return {adjacency.data() + offsets[u], adjacency.data() + offsets[u + 1]};
  }
};

// Builds the DAG for a vehicle at perimeter angle phi.  Radii below
// rho - 1e-9 are rejected; tiny deficits from float noise are clamped to rho.
ReachabilityDag build_reachability_graph(double phi,
                                         std::span<const DagItem> items,
                                         double v, double rho);

// Maximum-cardinality source path, returned as vertex indexes starting with
// the source (index 0).  Among maximum paths the (radius, id)-lexicographically
// smallest vertex sequence is returned, so the result does not depend on the
// order items were handed in.  O(V + E) after the build's sort.
std::vector<std::uint32_t> longest_path(const ReachabilityDag& dag);

// Exhaustive enumeration of every source path, same tie rule.  Test oracle;
// refuses instances with more than 15 vertices.
std::vector<std::uint32_t> longest_path_bruteforce(const ReachabilityDag& dag);

}  // namespace rit
