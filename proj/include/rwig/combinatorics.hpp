#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rwig::combinatorics {

/// Exact integer. Counts are non-negative; expansion weights are signed.
using BigCount = boost::multiprecision::cpp_int;
using BigInt = boost::multiprecision::cpp_int;

BigCount factorial(unsigned n);
BigCount binomial(unsigned n, unsigned k);

/// Stirling number of the second kind S(m, k): number of k-cell partitions of
/// an m-element set. Evaluated with the alternating binomial sum
/// (1/k!) sum_j (-1)^(k-j) C(k,j) j^m, which divides exactly.
BigCount stirling2(unsigned m, unsigned k);

/// Bell number via B_{n+1} = sum_k C(n,k) B_k.
BigCount bell(unsigned m);

/// Number of contact graphs M walkers can form on N states:
/// sum_{m <= min(N, M)} S(M, m).
BigCount contact_graph_count(unsigned m_walkers, unsigned n_states);

/// Partition of {0, ..., n-1} in canonical form: cells ordered by their
/// minimum element, elements ascending within a cell.
class SetPartition {
public:
    SetPartition() = default;

    /// Canonicalizes `cells`; throws InputError unless they form a partition
    /// of {0, ..., n-1} for some n.
    static SetPartition from_cells(std::vector<std::vector<int>> cells);

    /// Builds from a restricted growth string (rgs[0] == 0,
    /// rgs[i] <= max(rgs[0..i-1]) + 1).
    static SetPartition from_rgs(std::span<const int> rgs);

    const std::vector<std::vector<int>>& cells() const noexcept { return cells_; }
    std::size_t n_cells() const noexcept { return cells_.size(); }
    std::size_t n_elements() const noexcept { return n_elements_; }

    /// Cell index of every element, which is the restricted growth string.
    std::vector<int> rgs() const;

    friend bool operator==(const SetPartition&, const SetPartition&) = default;
    friend auto operator<=>(const SetPartition& a, const SetPartition& b) {
        return a.cells_ <=> b.cells_;
    }

private:
    std::vector<std::vector<int>> cells_;
    std::size_t n_elements_ = 0;
};

/// Streams every partition of an n-element set in restricted-growth-string
/// order. Partitions with more than `max_cells` cells are pruned during
/// generation.
///
///     for (SetPartitionGenerator gen(5, 3); gen.next();) use(gen.rgs());
class SetPartitionGenerator {
public:
    explicit SetPartitionGenerator(std::size_t n_labels,
                                   std::optional<std::size_t> max_cells = std::nullopt);

    /// Advances to the next partition. The first call yields the one-cell
    /// partition. Returns false once the stream is exhausted.
    bool next();

    std::span<const int> rgs() const noexcept { return rgs_; }
    std::size_t n_cells() const noexcept { return n_cells_; }
    SetPartition partition() const { return SetPartition::from_rgs(rgs_); }

private:
    std::vector<int> rgs_;
    // prefix_cells_[i] = number of distinct cells among rgs_[0..i-1]
    std::vector<int> prefix_cells_;
    std::size_t n_cells_ = 0;
    int limit_ = 0;
    bool started_ = false;
    bool done_ = false;
};

/// Multiset of positive integers in non-increasing order.
struct IntegerPartition {
    std::vector<int> parts;

    int total() const noexcept;
    std::size_t size() const noexcept { return parts.size(); }

    /// Sorts `parts` non-increasing; throws InputError on a non-positive part.
    static IntegerPartition from_parts(std::vector<int> parts);

    friend bool operator==(const IntegerPartition&, const IntegerPartition&) = default;
    friend auto operator<=>(const IntegerPartition& a, const IntegerPartition& b) {
        return a.parts <=> b.parts;
    }
};

/// Streams the integer partitions of `total` in reverse lexicographic order,
/// starting from [total]. With `max_parts`, longer partitions are skipped.
class IntegerPartitionGenerator {
public:
    explicit IntegerPartitionGenerator(int total,
                                       std::optional<std::size_t> max_parts = std::nullopt);

    bool next();
    const IntegerPartition& current() const noexcept { return current_; }

private:
    bool advance();

    IntegerPartition current_;
    int total_;
    std::size_t max_parts_;
    bool started_ = false;
    bool done_ = false;
};

std::vector<IntegerPartition> integer_partitions(
    int total, std::optional<std::size_t> max_parts = std::nullopt);

/// (-1)^(c-1) (c-1)! for a cell holding c cliques. Exact for c <= 20.
std::int64_t cell_weight(std::size_t cell_size);

/// Product of cell_weight over the cells of a partition of cliques.
BigInt expansion_weight(const SetPartition& pi);

/// Labelled realisations per clique-size multiset:
/// M! / (prod q_i! * prod c_j!), c_j = number of parts equal to j.
BigCount multiplicity(const IntegerPartition& q);

}  // namespace rwig::combinatorics
