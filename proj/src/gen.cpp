#include "mdb/gen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>
#include <vector>

#include "mdb/errors.hpp"

namespace mdb {

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Pareto tail with pdf proportional to x^-exponent on [1, inf).
double sample_powerlaw(std::mt19937_64& rng, double exponent) {
    double u = uniform01(rng);
    if (u >= 1.0) u = std::nextafter(1.0, 0.0);
    return std::pow(1.0 - u, -1.0 / (exponent - 1.0));
}

double sample_normal(std::mt19937_64& rng, double mean, double sigma) {
    double u1 = uniform01(rng);
    double u2 = uniform01(rng);
    if (u1 <= 0.0) u1 = std::nextafter(0.0, 1.0);
    double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    return mean + sigma * z;
}

std::vector<double> vertex_weights(std::mt19937_64& rng, const GenParams& p, Vertex n,
                                   Vertex opposite_n) {
    std::vector<double> w(static_cast<std::size_t>(n));
    if (p.distribution == DegreeDistribution::PowerLaw) {
        for (auto& x : w) x = sample_powerlaw(rng, p.powerlaw_exponent);
    } else {
        double mean = p.density * static_cast<double>(opposite_n);
        double sigma = mean / 4.0;
        for (auto& x : w) x = std::max(1e-9, sample_normal(rng, mean, sigma));
    }
    return w;
}

// Index sampling proportional to weight via the cumulative sums.
struct WeightedPicker {
    std::vector<double> cumulative;

    explicit WeightedPicker(const std::vector<double>& weights) {
        cumulative.reserve(weights.size());
        double acc = 0.0;
        for (double w : weights) cumulative.push_back(acc += w);
    }

    Vertex pick(std::mt19937_64& rng) const {
        double x = uniform01(rng) * cumulative.back();
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
        if (it == cumulative.end()) --it;
        return static_cast<Vertex>(it - cumulative.begin());
    }
};

}  // namespace

BipartiteGraph generate_bipartite(const GenParams& p) {
    if (p.n_left <= 0 || p.n_right <= 0) throw ContractViolation("side sizes must be positive");
    if (!(p.density > 0.0 && p.density < 1.0)) throw ContractViolation("density must lie in (0, 1)");

    const std::int64_t total = static_cast<std::int64_t>(p.n_left) * p.n_right;
    const std::int64_t target = std::llround(p.density * static_cast<double>(total));
    if (target < 1) throw ContractViolation("density too small: zero edges requested");

    std::mt19937_64 rng(p.seed);
    WeightedPicker left(vertex_weights(rng, p, p.n_left, p.n_right));
    WeightedPicker right(vertex_weights(rng, p, p.n_right, p.n_left));

    std::unordered_set<std::int64_t> used;
    used.reserve(static_cast<std::size_t>(target) * 2);
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(static_cast<std::size_t>(target));
    std::int64_t attempts = 0;
    const std::int64_t attempt_cap = 200 * target + 1000000;
    while (static_cast<std::int64_t>(edges.size()) < target && attempts < attempt_cap) {
        ++attempts;
        Vertex u = left.pick(rng);
        Vertex v = right.pick(rng);
        std::int64_t key = static_cast<std::int64_t>(u) * p.n_right + v;
        if (used.insert(key).second) edges.emplace_back(u, v);
    }

    // Rejection can stall when a few heavy vertices saturate; top up from a
    // shuffled list of the remaining pairs.
    if (static_cast<std::int64_t>(edges.size()) < target) {
        std::vector<std::int64_t> rest;
        rest.reserve(static_cast<std::size_t>(total - static_cast<std::int64_t>(edges.size())));
        for (std::int64_t key = 0; key < total; ++key)
            if (!used.count(key)) rest.push_back(key);
        for (std::size_t i = rest.size(); i > 1; --i)
            std::swap(rest[i - 1], rest[static_cast<std::size_t>(rng() % i)]);
        for (std::size_t i = 0; static_cast<std::int64_t>(edges.size()) < target; ++i) {
            std::int64_t key = rest[i];
            edges.emplace_back(static_cast<Vertex>(key / p.n_right),
                               static_cast<Vertex>(key % p.n_right));
        }
    }
    return BipartiteGraph::from_edges(p.n_left, p.n_right, std::move(edges));
}

}  // namespace mdb
