#include <doctest.h>

#include <random>

#include "mdb/bounds.hpp"
#include "support.hpp"

using namespace mdb;

TEST_SUITE_BEGIN("bounds");

TEST_CASE("upper_bounds examples") {
    SUBCASE("no candidates left: bounds collapse to the partial set") {
        auto g = test::complete(2, 2);
        SearchInstance inst(g, 3);
        inst.update_after_add({Side::Left, 0});  // absorbs everything
        REQUIRE(inst.candidate_total() == 0);
        auto b = upper_bounds(inst);
        CHECK(b.ub_left == 2);
        CHECK(b.ub_right == 2);
        CHECK(b.ub_edges == 4);
    }

    SUBCASE("complete candidates, zero budget") {
        auto g = test::complete(2, 2);
        SearchInstance inst(g, 0);
        auto b = upper_bounds(inst);
        CHECK(b.ub_left == 2);
        CHECK(b.ub_right == 2);
        CHECK(b.ub_edges == 4);
    }

    SUBCASE("one candidate per side, budget one") {
        auto g = BipartiteGraph::from_edges(2, 2, {{0, 0}, {0, 1}, {1, 1}});
        std::vector<Vertex> sl = {0}, sr = {0}, cl = {1}, cr = {1};
        SearchInstance inst(g, 1, sl, sr, cl, cr);
        REQUIRE(inst.nd_to_partial({Side::Left, 1}) == 1);
        REQUIRE(inst.nd_to_partial({Side::Right, 1}) == 0);
        auto b = upper_bounds(inst);
        CHECK(b.ub_left == 2);
        CHECK(b.ub_right == 2);
        CHECK(b.ub_edges == 3);
    }
}

TEST_CASE("can_prune") {
    CHECK(can_prune({2, 2, 4}, {3, 2}, 0));
    CHECK(can_prune({5, 5, 20}, {3, 3}, 20));
    CHECK_FALSE(can_prune({5, 5, 20}, {3, 3}, 19));
    CHECK(can_prune({5, 1, 20}, {2, 2}, 0));
}

TEST_CASE("bounds dominate every completion on random instances") {
    std::mt19937_64 rng(77);
    for (int it = 0; it < 150; ++it) {
        auto g = test::random_graph(rng, 6);
        std::int64_t k = static_cast<std::int64_t>(rng() % 4);
        SearchInstance inst(g, k);
        int plays = static_cast<int>(rng() % 4);
        for (int p = 0; p < plays && inst.candidate_total() > 0; ++p) {
            Vertex nl = inst.candidate_size(Side::Left);
            std::int64_t pick =
                static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(inst.candidate_total()));
            VertexRef u = pick < nl
                              ? VertexRef{Side::Left, inst.candidates(Side::Left)[static_cast<std::size_t>(pick)]}
                              : VertexRef{Side::Right,
                                          inst.candidates(Side::Right)[static_cast<std::size_t>(pick - nl)]};
            if (rng() & 1)
                inst.update_after_add(u);
            else
                inst.remove_candidate(u);
        }

        auto b = upper_bounds(inst);
        auto truth = test::best_completion(g, k, inst.partial(Side::Left), inst.partial(Side::Right),
                                           inst.candidates(Side::Left), inst.candidates(Side::Right));
        CHECK(b.ub_edges >= truth.edges);
        CHECK(b.ub_left >= truth.max_left);
        CHECK(b.ub_right >= truth.max_right);
        CHECK(b.ub_left >= inst.partial_size(Side::Left));
        CHECK(b.ub_right >= inst.partial_size(Side::Right));
        CHECK(b.ub_edges >= inst.partial_edges());
    }
}

TEST_CASE("bounds are exact when the candidate set is empty") {
    std::mt19937_64 rng(78);
    for (int it = 0; it < 60; ++it) {
        auto g = test::random_graph(rng, 5);
        std::int64_t k = 2 + static_cast<std::int64_t>(rng() % 4);
        SearchInstance inst(g, k);
        while (inst.candidate_total() > 0) {
            VertexRef u{};
            bool ok = false;
            for (Side s : {Side::Left, Side::Right}) {
                for (Vertex v : inst.candidates(s)) {
                    if (inst.non_edges() + inst.nd_to_partial({s, v}) <= k) {
                        u = {s, v};
                        ok = true;
                        break;
                    }
                }
                if (ok) break;
            }
            if (!ok) break;
            if (rng() % 3 == 0)
                inst.remove_candidate(u);
            else
                inst.update_after_add(u);
        }
        while (inst.candidate_total() > 0) {
            auto span = inst.candidates(Side::Left);
            VertexRef u = span.empty() ? VertexRef{Side::Right, inst.candidates(Side::Right)[0]}
                                       : VertexRef{Side::Left, span[0]};
            inst.remove_candidate(u);
        }
        auto b = upper_bounds(inst);
        CHECK(b.ub_left == inst.partial_size(Side::Left));
        CHECK(b.ub_right == inst.partial_size(Side::Right));
        CHECK(b.ub_edges == inst.partial_edges());
    }
}

TEST_SUITE_END();
