#ifndef MDB_HEURISTIC_HPP
#define MDB_HEURISTIC_HPP

#include <cstdint>
#include <optional>

#include "mdb/graph.hpp"
#include "mdb/solution.hpp"

namespace mdb {

/// Greedy construction of a large initial solution to seed pruning.
///
/// Grows one side a vertex at a time (highest degree into the surviving
/// opposite set first), deleting opposite vertices with the most
/// non-neighbors whenever the defect budget would overflow, until the grown
/// side reaches theta. Runs once in each orientation and keeps the better
/// result. Returns nothing when neither pass ends with both sides at theta
/// or more and at least one edge.
std::optional<Solution> greedy_initial(const BipartiteGraph& g, std::int64_t k, std::int64_t theta);

}  // namespace mdb

#endif
