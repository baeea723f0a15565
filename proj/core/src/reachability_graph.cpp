#include "rit/reachability_graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rit/geometry.hpp"

namespace rit {

namespace {

double wrap_to_circle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w;
}

// Both angles pre-wrapped to [0, 2*pi), so no fmod in the pair loop.
inline double fast_angle_distance(double a, double b) {
  double d = a > b ? a - b : b - a;
  return d > kPi ? kTwoPi - d : d;
}

inline bool edge_between(const DagVertex& from, const DagVertex& to, double v,
                         double rho) {
  if (!(from.radius < to.radius)) return false;  // equal radii: no edge
  return to.radius - from.radius >=
         v * rho * fast_angle_distance(to.theta, from.theta);
}

}  // namespace

ReachabilityDag build_reachability_graph(double phi,
                                         std::span<const DagItem> items,
                                         double v, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("reachability: rho must be positive");
  if (!(v >= 0.0)) throw std::invalid_argument("reachability: v must be >= 0");

  ReachabilityDag dag;
  dag.v = v;
  dag.rho = rho;
  dag.vertices.reserve(items.size() + 1);
  dag.vertices.push_back({-1, rho, wrap_to_circle(phi)});
  for (const DagItem& it : items) {
    double r = it.radius;
    if (r < rho) {
      if (r < rho - 1e-9)
        throw std::invalid_argument("reachability: item radius below rho");
      r = rho;  // float noise from a target sitting right on the perimeter
    }
    dag.vertices.push_back({it.id, r, wrap_to_circle(it.theta)});
  }

  // Sort by (radius, id); the source carries id -1 so it stays in front even
  // if some item sits exactly on the perimeter.
  std::sort(dag.vertices.begin(), dag.vertices.end(),
            [](const DagVertex& a, const DagVertex& b) {
              if (a.radius != b.radius) return a.radius < b.radius;
              return a.id < b.id;
            });
  if (dag.vertices[0].id != -1)
    throw std::logic_error("reachability: source not first after sort");

  const std::uint32_t n = static_cast<std::uint32_t>(dag.vertices.size());
  dag.offsets.assign(n + 1, 0);
  for (std::uint32_t j = 0; j < n; ++j) {
    std::uint32_t deg = 0;
    for (std::uint32_t k = j + 1; k < n; ++k)
      deg += edge_between(dag.vertices[j], dag.vertices[k], v, rho) ? 1u : 0u;
    dag.offsets[j + 1] = deg;
  }
  for (std::uint32_t j = 0; j < n; ++j) dag.offsets[j + 1] += dag.offsets[j];

  dag.adjacency.resize(dag.offsets[n]);
  for (std::uint32_t j = 0; j < n; ++j) {
    std::uint32_t at = dag.offsets[j];
    for (std::uint32_t k = j + 1; k < n; ++k)
      if (edge_between(dag.vertices[j], dag.vertices[k], v, rho))
        dag.adjacency[at++] = k;
  }
  return dag;
}

std::vector<std::uint32_t> longest_path(const ReachabilityDag& dag) {
  const std::uint32_t n = static_cast<std::uint32_t>(dag.vertices.size());
  // gain[u]: most targets collectable on a path starting at u (u included
  // unless u is the source).  Successor indexes exceed u, so one sweep from
  // the top is a reverse topological order.
  std::vector<std::uint32_t> gain(n, 0);
  for (std::uint32_t u = n; u-- > 0;) {
    std::uint32_t best = 0;
    for (std::uint32_t k : dag.successors(u))
      if (gain[k] > best) best = gain[k];
    gain[u] = best + (u == 0 ? 0u : 1u);
  }

  // Greedy reconstruction: successor lists are (radius, id)-ascending, so
  // taking the first one that still completes a maximum path yields the
  // lexicographically smallest maximum path.
  std::vector<std::uint32_t> path{0};
  std::uint32_t u = 0;
  std::uint32_t need = gain[0];
  while (need > 0) {
    for (std::uint32_t k : dag.successors(u)) {
      if (gain[k] == need) {
        path.push_back(k);
        u = k;
        --need;
        break;
      }
    }
  }
  return path;
}

namespace {

struct BruteState {
  const ReachabilityDag* dag;
  std::vector<std::uint32_t> current{0};
  std::vector<std::uint32_t> best{0};

  // Lexicographic comparison on (radius, id) keys after the shared source.
  bool current_beats_best() const {
    if (current.size() != best.size()) return current.size() > best.size();
    for (std::size_t i = 1; i < current.size(); ++i) {
      const DagVertex& a = dag->vertices[current[i]];
      const DagVertex& b = dag->vertices[best[i]];
      if (a.radius != b.radius) return a.radius < b.radius;
      if (a.id != b.id) return a.id < b.id;
    }
    return false;
  }

  void visit(std::uint32_t u) {
    if (current_beats_best()) best = current;
    for (std::uint32_t k : dag->successors(u)) {
      current.push_back(k);
      visit(k);
      current.pop_back();
    }
  }
};

}  // namespace

std::vector<std::uint32_t> longest_path_bruteforce(const ReachabilityDag& dag) {
  if (dag.vertices.size() > 15)
    throw std::invalid_argument("bruteforce longest path: too many vertices");
  BruteState st;
  st.dag = &dag;
  st.visit(0);
  return st.best;
}

}  // namespace rit
