#include <doctest.h>

#include <set>

#include "rwig/combinatorics.hpp"
#include "rwig/contact_graph.hpp"
#include "rwig/error.hpp"

using namespace rwig;
using namespace rwig::contact;

TEST_CASE("from_assignment groups walkers by state") {
    const std::vector<std::size_t> states{4, 1, 4, 0};
    const auto g = from_assignment(states);
    CHECK(g.cliques() == std::vector<std::vector<int>>{{0, 2}, {1}, {3}});
    CHECK(g.clique_masks() == std::vector<WalkerMask>{0b0101, 0b0010, 0b1000});

    const std::map<std::string, std::size_t> keyed{{"a", 2}, {"b", 2}, {"c", 1}};
    const std::vector<std::string> order{"c", "a", "b"};
    CHECK(from_assignment(keyed, order).cliques() == std::vector<std::vector<int>>{{0}, {1, 2}});
    const std::vector<std::string> missing{"a", "z"};
    CHECK_THROWS_AS(from_assignment(keyed, missing), InputError);
}

TEST_CASE("enumerate_graphs matches the count and never repeats") {
    for (std::size_t m = 1; m <= 7; ++m)
        for (std::size_t n = 1; n <= 7; ++n) {
            const auto graphs = enumerate_graphs(m, n);
            CHECK(combinatorics::BigCount(graphs.size()) ==
                  combinatorics::contact_graph_count(m, n));
            const std::set<ContactGraph> unique(graphs.begin(), graphs.end());
            CHECK(unique.size() == graphs.size());
            for (const auto& g : graphs) CHECK(g.n_cliques() <= n);
        }
}

TEST_CASE("labelled graphs per unlabelled graph equal the multiplicity") {
    for (std::size_t m = 1; m <= 7; ++m) {
        std::map<UnlabelledContactGraph, std::size_t> tally;
        for (const auto& g : enumerate_graphs(m, m)) ++tally[to_unlabelled(g)];
        const auto shapes = enumerate_unlabelled(static_cast<int>(m), m);
        CHECK(shapes.size() == tally.size());
        for (const auto& u : shapes) CHECK(combinatorics::multiplicity(u.clique_sizes) == tally[u]);
    }
}

TEST_CASE("any_labelling round-trips through to_unlabelled") {
    for (const auto& u : enumerate_unlabelled(8, 8)) CHECK(to_unlabelled(any_labelling(u, 8)) == u);
    const UnlabelledContactGraph u{combinatorics::IntegerPartition::from_parts({2, 1})};
    CHECK(any_labelling(u, 3).cliques() == std::vector<std::vector<int>>{{0, 1}, {2}});
    CHECK_THROWS_AS(any_labelling(u, 4), InputError);
}

TEST_CASE("unlabelled space sizes") {
    CHECK(enumerate_unlabelled(9, 9).size() == 30);
    CHECK(enumerate_unlabelled(4, 4).size() == 5);
    CHECK(enumerate_unlabelled(4, 2).size() == 3);
    CHECK(enumerate_unlabelled(1, 1).size() == 1);
}

TEST_CASE("GraphEnumerator streams in restricted growth string order") {
    GraphEnumerator e(3, 2);
    std::vector<std::vector<int>> seen;
    while (e.next()) seen.emplace_back(e.rgs().begin(), e.rgs().end());
    CHECK(seen == std::vector<std::vector<int>>{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1}});
}
