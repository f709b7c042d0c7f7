#ifndef MDB_ORACLE_HPP
#define MDB_ORACLE_HPP

#include <cstdint>
#include <optional>

#include "mdb/graph.hpp"
#include "mdb/solution.hpp"

namespace mdb {

/// Exhaustive reference answer for small graphs.
///
/// Enumerates every subset of the smaller side meeting the threshold; for a
/// fixed subset the best opposite set of each size takes the vertices with
/// the fewest non-neighbors (an exchange argument makes that optimal for
/// both the edge count and the defect budget). Independent of the search
/// algorithms on purpose.
///
/// Throws ContractViolation when the enumerated side exceeds `max_enum_side`
/// (default 20) to guard against accidental exponential blowup.
std::optional<Solution> brute_force_mdb(const BipartiteGraph& g, std::int64_t k, std::int64_t theta,
                                        int max_enum_side = 20);

}  // namespace mdb

#endif
