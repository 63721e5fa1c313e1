#include "rwig/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "rwig/error.hpp"

namespace rwig::ingest {

namespace {

[[noreturn]] void fail_line(std::size_t line, const std::string& what) {
    throw InputError("line " + std::to_string(line) + ": " + what);
}

bool skippable(const std::string& line) {
    const auto first = line.find_first_not_of(" \t\r");
    return first == std::string::npos || line[first] == '#';
}

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

std::vector<SnapshotRecord> parse_colocation(std::istream& in) {
    std::map<std::int64_t, std::set<std::pair<std::string, std::string>>> bins;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        std::istringstream fields(line);
        std::string t_str, a, b, extra;
        if (!(fields >> t_str >> a >> b) || (fields >> extra))
            fail_line(line_no, "expected three fields \"t i j\"");
        std::int64_t t = 0;
        const auto [ptr, ec] = std::from_chars(t_str.data(), t_str.data() + t_str.size(), t);
        if (ec != std::errc{} || ptr != t_str.data() + t_str.size())
            fail_line(line_no, "time bin '" + t_str + "' is not an integer");
        if (a == b) fail_line(line_no, "self contact");
        if (b < a) std::swap(a, b);
        bins[t].emplace(std::move(a), std::move(b));
    }
    std::vector<SnapshotRecord> out;
    out.reserve(bins.size());
    for (auto& [t, pairs] : bins) out.push_back({t, {pairs.begin(), pairs.end()}});
    return out;
}

void write_colocation(std::ostream& out, std::span<const SnapshotRecord> records) {
    for (const auto& r : records)
        for (const auto& [a, b] : r.edges) out << r.t << ' ' << a << ' ' << b << '\n';
}

std::vector<std::string> parse_roster(std::istream& in) {
    std::set<std::string> ids;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string id;
        if (fields >> id) ids.insert(id);
    }
    return {ids.begin(), ids.end()};
}

CliqueUnionResult validate_clique_union(const SnapshotRecord& record,
                                        std::span<const std::string> roster) {
    CliqueUnionResult result;
    result.t = record.t;
    std::set<std::string> ids(roster.begin(), roster.end());
    for (const auto& [a, b] : record.edges) {
        ids.insert(a);
        ids.insert(b);
    }
    result.nodes.assign(ids.begin(), ids.end());
    if (result.nodes.empty()) return result;

    auto index_of = [&](const std::string& id) {
        return static_cast<std::size_t>(
            std::lower_bound(result.nodes.begin(), result.nodes.end(), id) - result.nodes.begin());
    };
    UnionFind uf(result.nodes.size());
    for (const auto& [a, b] : record.edges) uf.unite(index_of(a), index_of(b));

    std::map<std::size_t, std::vector<int>> components;
    for (std::size_t i = 0; i < result.nodes.size(); ++i)
        components[uf.find(i)].push_back(static_cast<int>(i));
    std::map<std::size_t, std::size_t> edge_count;
    for (const auto& [a, b] : record.edges) ++edge_count[uf.find(index_of(a))];

    std::vector<std::vector<int>> cells;
    for (auto& [root, members] : components) {
        const std::size_t c = members.size();
        const std::size_t expected = c * (c - 1) / 2;
        const std::size_t have = edge_count[root];
        if (have != expected) {
            NonCliqueComponent bad;
            for (int i : members) bad.nodes.push_back(result.nodes[i]);
            bad.edges = have;
            bad.missing_pairs = expected - have;
            result.violations.push_back(std::move(bad));
        }
        cells.push_back(std::move(members));
    }
    result.graph = contact::ContactGraph::from_cells(std::move(cells));
    return result;
}

DatasetDistributions dataset_distributions(std::span<const SnapshotRecord> records,
                                           std::span<const std::string> roster) {
    DatasetDistributions out;
    std::vector<contact::ContactGraph> graphs;
    for (const auto& r : records) {
        auto v = validate_clique_union(r, roster);
        if (!v.ok())
            throw InputError("snapshot t=" + std::to_string(r.t) + " is not a union of cliques (" +
                             std::to_string(v.violations.front().missing_pairs) +
                             " missing pairs in component of " +
                             std::to_string(v.violations.front().nodes.size()) + " nodes)");
        graphs.push_back(v.graph);
        out.graphs.push_back(std::move(v));
    }
    out.clique_sizes = simulate::clique_size_distribution(graphs, 2);
    out.clique_counts = simulate::clique_count_distribution(graphs, !roster.empty());
    return out;
}

std::vector<SnapshotRecord> to_records(const simulate::ContactSequence& sequence,
                                       std::span<const std::string> labels) {
    std::vector<SnapshotRecord> out;
    for (std::size_t t = 0; t < sequence.snapshots.size(); ++t) {
        std::set<std::pair<std::string, std::string>> pairs;
        for (const auto& clique : sequence.snapshots[t].cliques())
            for (std::size_t i = 0; i < clique.size(); ++i)
                for (std::size_t j = i + 1; j < clique.size(); ++j) {
                    std::string a = labels[clique[i]], b = labels[clique[j]];
                    if (b < a) std::swap(a, b);
                    pairs.emplace(std::move(a), std::move(b));
                }
        if (!pairs.empty())
            out.push_back({static_cast<std::int64_t>(t), {pairs.begin(), pairs.end()}});
    }
    return out;
}

}  // namespace rwig::ingest
