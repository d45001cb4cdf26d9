#pragma once

#include "cliquemerge/clique_graph.hpp"
#include "cliquemerge/vertex_set.hpp"

namespace cliquemerge {

/// Projection-time model t(N) = a N^3 + b N^2.
struct CostModel {
  double a = 1.0;
  double b = 0.0;

  double projection_time(double size) const { return (a * size + b) * size * size; }

  static CostModel nominal() { return CostModel{1.0, 0.0}; }

  friend bool operator==(const CostModel&, const CostModel&) = default;
};

// |Ci|^3 + |Cj|^3 - |Ci ∪ Cj|^3
double nominal_weight(const VertexSet& ci, const VertexSet& cj);

// t(|Ci|) + t(|Cj|) - t(|Ci ∪ Cj|)
double estimated_weight(const VertexSet& ci, const VertexSet& cj, const CostModel& m);

WeightFunction nominal_weight_function();
WeightFunction estimated_weight_function(const CostModel& m);

// Weight induced by any per-clique cost c: c(|Ci|) + c(|Cj|) - c(|Ci ∪ Cj|).
WeightFunction cost_difference_weight(std::function<double(std::size_t)> cost);

}  // namespace cliquemerge
