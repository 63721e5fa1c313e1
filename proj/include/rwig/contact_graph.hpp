#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rwig/combinatorics.hpp"

namespace rwig::contact {

/// Bit set over dense walker indices. Operations that need one require
/// M <= 64.
using WalkerMask = std::uint64_t;

inline constexpr std::size_t kMaxMaskWalkers = 64;

/// A realisation of the contact graph: a partition of the walkers into
/// cliques. Walkers are dense indices 0..M-1; labels live with the ensemble.
class ContactGraph {
public:
    ContactGraph() = default;
    explicit ContactGraph(combinatorics::SetPartition cliques) : cliques_(std::move(cliques)) {}

    static ContactGraph from_cells(std::vector<std::vector<int>> cells) {
        return ContactGraph(combinatorics::SetPartition::from_cells(std::move(cells)));
    }

    const combinatorics::SetPartition& partition() const noexcept { return cliques_; }
    const std::vector<std::vector<int>>& cliques() const noexcept { return cliques_.cells(); }
    std::size_t n_cliques() const noexcept { return cliques_.n_cells(); }
    std::size_t n_walkers() const noexcept { return cliques_.n_elements(); }

    std::vector<WalkerMask> clique_masks() const;

    friend bool operator==(const ContactGraph&, const ContactGraph&) = default;
    friend auto operator<=>(const ContactGraph& a, const ContactGraph& b) {
        return a.cliques_ <=> b.cliques_;
    }

private:
    combinatorics::SetPartition cliques_;
};

/// Contact graph up to walker relabelling: the multiset of clique sizes.
struct UnlabelledContactGraph {
    combinatorics::IntegerPartition clique_sizes;

    std::size_t n_cliques() const noexcept { return clique_sizes.size(); }
    int n_walkers() const noexcept { return clique_sizes.total(); }

    friend bool operator==(const UnlabelledContactGraph&, const UnlabelledContactGraph&) = default;
    friend auto operator<=>(const UnlabelledContactGraph& a, const UnlabelledContactGraph& b) {
        return a.clique_sizes <=> b.clique_sizes;
    }
};

/// Walkers sharing a state form one clique. `states[w]` is walker w's state.
ContactGraph from_assignment(std::span<const std::size_t> states);

/// Keyed variant: `walker_order` fixes the dense indexing, and every walker
/// in it must appear in `assignment`.
ContactGraph from_assignment(const std::map<std::string, std::size_t>& assignment,
                             std::span<const std::string> walker_order);

/// Streams every contact graph M walkers can form on N states (at most
/// min(N, M) cliques), in restricted-growth-string order.
class GraphEnumerator {
public:
    GraphEnumerator(std::size_t m_walkers, std::size_t n_states);

    bool next() { return gen_.next(); }
    ContactGraph graph() const { return ContactGraph(gen_.partition()); }
    std::span<const int> rgs() const noexcept { return gen_.rgs(); }
    std::size_t n_cliques() const noexcept { return gen_.n_cells(); }

private:
    combinatorics::SetPartitionGenerator gen_;
};

std::vector<ContactGraph> enumerate_graphs(std::size_t m_walkers, std::size_t n_states);

UnlabelledContactGraph to_unlabelled(const ContactGraph& g);

/// Canonical labelling: walkers in index order fill the cliques in
/// non-increasing size order.
ContactGraph any_labelling(const UnlabelledContactGraph& u, std::size_t n_walkers);

/// Every clique-size multiset of M walkers with at most `max_cliques` parts.
std::vector<UnlabelledContactGraph> enumerate_unlabelled(int m_walkers, std::size_t max_cliques);

}  // namespace rwig::contact
