#ifndef MDB_SOLUTION_HPP
#define MDB_SOLUTION_HPP

#include <cstdint>
#include <vector>

#include "mdb/graph.hpp"

namespace mdb {

/// A candidate answer: one vertex set per side plus its induced edge count.
struct Solution {
    std::vector<Vertex> left;
    std::vector<Vertex> right;
    std::int64_t edges = 0;
};

}  // namespace mdb

#endif
