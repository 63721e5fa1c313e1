#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "rwig/error.hpp"
#include "rwig/io.hpp"

using namespace rwig;

namespace {

template <class F>
auto from_text(const std::string& text, F&& read) {
    std::istringstream in(text);
    return read(in);
}

}  // namespace

TEST_CASE("matrix input in JSON and CSV") {
    const auto a = from_text(R"({"n": 2, "rows": [[0.5, 0.5], [0.25, 0.75]]})", io::read_matrix);
    const auto b = from_text("0.5,0.5\n0.25, 0.75\n", io::read_matrix);
    CHECK(a == b);
    CHECK(a(1, 1) == 0.75);
    CHECK_THROWS_WITH_AS(from_text("0.5,0.5\n0.25,abc\n", io::read_matrix),
                         doctest::Contains("line 2"), InputError);
    CHECK_THROWS_WITH_AS(from_text("0.5,0.5\n1.0\n", io::read_matrix), doctest::Contains("line 2"),
                         InputError);
    CHECK_THROWS_AS(from_text(R"({"n": 3, "rows": [[1.0]]})", io::read_matrix), InputError);
    CHECK_THROWS_AS(from_text("{\"rows\": [[1.0]", io::read_matrix), InputError);
}

TEST_CASE("vector input") {
    const auto v = from_text(R"({"probs": [0.2, 0.8]})", io::read_vector);
    CHECK(v == from_text("0.2,0.8\n", io::read_vector));
    CHECK(v == from_text("0.2\n0.8\n", io::read_vector));
    std::ostringstream out;
    io::write_vector(out, v);
    CHECK(from_text(out.str(), io::read_vector) == v);
}

TEST_CASE("ensemble files") {
    const std::string text = R"({
      "n_states": 3,
      "walkers": [
        {"label": "a", "s0": [1, 0, 0], "policy": [[0.5, 0.5, 0], [0.5, 0, 0.5], [0, 0.5, 0.5]]},
        {"label": "b", "s0": [0, 0, 1], "policy": [[0.5, 0.5, 0], [0.5, 0, 0.5], [0, 0.5, 0.5]]}
      ],
      "adjacency": [[0, 1, 0], [1, 0, 1], [0, 1, 0]]
    })";
    const auto e = from_text(text, io::read_ensemble);
    CHECK(e.labels() == std::vector<std::string>{"a", "b"});

    std::string bad = text;
    const std::string links = "[[0, 1, 0], [1, 0, 1]";
    bad.replace(bad.find(links), links.size(), "[[0, 0, 0], [1, 0, 1]");
    CHECK_THROWS_WITH_AS(from_text(bad, io::read_ensemble), doctest::Contains("without a link"),
                         InputError);

    std::ostringstream out;
    io::write_ensemble(out, e);
    const auto back = from_text(out.str(), io::read_ensemble);
    CHECK(back.labels() == e.labels());
    CHECK(back[1].policy == e[1].policy);
    CHECK(back[1].initial == e[1].initial);
}

TEST_CASE("graph distribution round-trip") {
    std::mt19937_64 rng(4);
    const auto e = oracle::sparse_ensemble(4, 3, rng);
    const auto d = pmf::full_distribution(e, 2);
    const auto labels = e.labels();
    std::ostringstream out;
    io::write_distribution(out, d, labels);
    const auto j = io::json::parse(out.str());
    for (std::size_t i = 1; i < j.size(); ++i) CHECK(j[i - 1]["p"] >= j[i]["p"]);
    std::istringstream in(out.str());
    const auto back = io::read_distribution(in, labels);
    REQUIRE(back.entries.size() == d.entries.size());
    for (std::size_t i = 0; i < d.entries.size(); ++i) CHECK(back.entries[i] == d.entries[i]);
}

TEST_CASE("unlabelled distribution round-trip") {
    const auto d = pmf::unlabelled_steady_state_distribution(5, io::preset_vector("multimodal", 6));
    std::ostringstream out;
    io::write_distribution(out, d);
    std::istringstream in(out.str());
    const auto back = io::read_unlabelled_distribution(in);
    REQUIRE(back.entries.size() == d.entries.size());
    for (std::size_t i = 0; i < d.entries.size(); ++i) CHECK(back.entries[i] == d.entries[i]);
}

TEST_CASE("graph JSON") {
    const std::vector<std::string> labels{"w1", "w2", "w3"};
    const auto g = contact::ContactGraph::from_cells({{0, 1}, {2}});
    CHECK(io::graph_to_json(g, labels).dump() == R"([["w1","w2"],["w3"]])");
    CHECK(io::graph_from_json(io::json::parse(R"([["w3"],["w2","w1"]])"), labels) == g);
    CHECK_THROWS_AS(io::graph_from_json(io::json::parse(R"([["w9"]])"), labels), InputError);
}

TEST_CASE("sequence and histogram round-trip") {
    std::mt19937_64 rng(6);
    const auto e = oracle::sparse_ensemble(5, 3, rng);
    const auto seq = simulate::sample_sequence(e, 10, 3);
    std::ostringstream out;
    io::write_sequence(out, seq, e.labels());
    std::istringstream in(out.str());
    const auto labels = e.labels();
    CHECK(io::read_sequence(in, labels).snapshots == seq.snapshots);

    const simulate::Histogram h{{1, 0.125}, {4, 0.875}};
    std::ostringstream hout;
    io::write_histogram(hout, h);
    CHECK(hout.str().rfind("value,probability\n", 0) == 0);
    std::istringstream hin(hout.str());
    CHECK(io::read_histogram(hin) == h);
}

TEST_CASE("preset vectors") {
    for (const char* name : {"s033", "s096", "multimodal"}) {
        const auto v = io::preset_vector(name, 15);
        double sum = 0.0;
        for (double p : v.probs()) sum += p;
        CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
    CHECK(io::preset_vector("s096", 15)[14] == doctest::Approx(0.96));
    const auto mm = io::preset_vector("multimodal", 15);
    CHECK(mm[0] / mm[14] == doctest::Approx((1.0 / 1200) / 0.32));
    CHECK_THROWS_AS(io::preset_vector("other", 5), InputError);
}
