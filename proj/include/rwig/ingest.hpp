#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rwig/contact_graph.hpp"
#include "rwig/simulate.hpp"

namespace rwig::ingest {

/// Co-location pairs observed in one time bin. Each pair is stored with the
/// smaller id first; pairs are sorted and unique.
struct SnapshotRecord {
    std::int64_t t = 0;
    std::vector<std::pair<std::string, std::string>> edges;

    friend bool operator==(const SnapshotRecord&, const SnapshotRecord&) = default;
};

/// Reads whitespace-separated "t i j" lines (blank lines and lines starting
/// with '#' are skipped). Records come back in ascending t with duplicate
/// pairs collapsed. Errors name the offending line.
std::vector<SnapshotRecord> parse_colocation(std::istream& in);

/// Inverse of parse_colocation: one "t i j" line per pair.
void write_colocation(std::ostream& out, std::span<const SnapshotRecord> records);

/// One id per line; blank lines ignored.
std::vector<std::string> parse_roster(std::istream& in);

struct NonCliqueComponent {
    std::vector<std::string> nodes;
    std::size_t edges = 0;
    std::size_t missing_pairs = 0;
};

struct CliqueUnionResult {
    std::int64_t t = 0;
    /// Sorted node ids; position is the dense index used by `graph`.
    std::vector<std::string> nodes;
    /// Components as cliques. Meaningful only when ok().
    contact::ContactGraph graph;
    std::vector<NonCliqueComponent> violations;

    bool ok() const noexcept { return violations.empty(); }
};

/// Splits the record into connected components and checks that each
/// component of c nodes carries all c(c-1)/2 pairs. Roster nodes absent from
/// the record join as singletons.
CliqueUnionResult validate_clique_union(const SnapshotRecord& record,
                                        std::span<const std::string> roster = {});

struct DatasetDistributions {
    simulate::Histogram clique_sizes;   // cliques of size >= 2
    simulate::Histogram clique_counts;  // singletons counted only with a roster
    std::vector<CliqueUnionResult> graphs;
};

/// Throws InputError naming the first timestamp that is not a union of
/// cliques.
DatasetDistributions dataset_distributions(std::span<const SnapshotRecord> records,
                                           std::span<const std::string> roster = {});

/// Snapshot records of a sampled sequence: step k becomes t = k and every
/// pair of walkers in a shared clique becomes an edge.
std::vector<SnapshotRecord> to_records(const simulate::ContactSequence& sequence,
                                       std::span<const std::string> labels);

}  // namespace rwig::ingest
