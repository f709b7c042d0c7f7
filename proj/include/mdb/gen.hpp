#ifndef MDB_GEN_HPP
#define MDB_GEN_HPP

#include <cstdint>

#include "mdb/graph.hpp"

namespace mdb {

enum class DegreeDistribution { PowerLaw, Normal };

struct GenParams {
    Vertex n_left = 100;
    Vertex n_right = 100;
    double density = 0.2;  // target |E| / (n_left * n_right), in (0, 1)
    DegreeDistribution distribution = DegreeDistribution::PowerLaw;
    double powerlaw_exponent = 2.5;
    std::uint64_t seed = 1;
};

/// Random bipartite graph with the requested density, exactly
/// round(density * n_left * n_right) edges. Per-vertex weights come from the
/// chosen distribution and edges are sampled proportionally without
/// replacement. Deterministic for a fixed seed; samplers are hand-rolled so
/// output does not depend on the standard library's distribution internals.
BipartiteGraph generate_bipartite(const GenParams& params);

}  // namespace mdb

#endif
