#pragma once

#include <cstdint>
#include <vector>

#include "rggmst/rgg.hpp"

namespace rggmst {

struct MstEdge {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  double weight = 0.0;
};

/// Minimum spanning forest: one minimum spanning tree per component.
///
/// `total_weight` is always accumulated in ascending edge-weight order. Every
/// minimum spanning forest of a graph has the same sorted weight sequence, so
/// two correct solvers agree on the total bit for bit.
struct MstResult {
  double total_weight = 0.0;
  std::vector<MstEdge> edges;
  std::vector<std::uint32_t> degrees;  // per node, inside its component's tree
  std::size_t components = 0;
  bool forest = false;  // components > 1
};

/// Kruskal over the total order (weight, min index, max index), using
/// filter-Kruskal partitioning so that heavy edges are mostly discarded by a
/// connectivity test instead of being sorted.
MstResult minimum_spanning_forest(const Rgg& g);

/// Exhaustive search over spanning forests. Throws ParameterError for n > 10.
MstResult brute_force_mst(const Rgg& g);

/// Packs an arbitrary acyclic edge set over n nodes into an MstResult
/// (degrees, component count, ascending-order total).
MstResult make_forest_result(std::size_t n, std::vector<MstEdge> edges);

struct DegreeStats {
  std::uint32_t max_degree = 0;
  std::vector<std::size_t> histogram;  // histogram[d] = nodes of degree d
};

DegreeStats mst_degree_stats(const MstResult& m);

namespace reference {

/// Plain Kruskal with a full sort; the serial baseline the filtered variant
/// is tested and benchmarked against.
MstResult kruskal_full_sort(const Rgg& g);

}  // namespace reference

}  // namespace rggmst
