#include "cliquemerge/weights.hpp"

#include <utility>

namespace cliquemerge {

namespace {

double cube(std::size_t k) {
  const double x = static_cast<double>(k);
  return x * x * x;
}

}  // namespace

double nominal_weight(const VertexSet& ci, const VertexSet& cj) {
  return cube(ci.size()) + cube(cj.size()) - cube(union_size(ci, cj));
}

double estimated_weight(const VertexSet& ci, const VertexSet& cj, const CostModel& m) {
  const auto t = [&](std::size_t k) { return m.projection_time(static_cast<double>(k)); };
  return t(ci.size()) + t(cj.size()) - t(union_size(ci, cj));
}

WeightFunction nominal_weight_function() {
  return [](const VertexSet& ci, const VertexSet& cj) { return nominal_weight(ci, cj); };
}

WeightFunction estimated_weight_function(const CostModel& m) {
  return [m](const VertexSet& ci, const VertexSet& cj) { return estimated_weight(ci, cj, m); };
}

WeightFunction cost_difference_weight(std::function<double(std::size_t)> cost) {
  return [cost = std::move(cost)](const VertexSet& ci, const VertexSet& cj) {
    return cost(ci.size()) + cost(cj.size()) - cost(union_size(ci, cj));
  };
}

}  // namespace cliquemerge
