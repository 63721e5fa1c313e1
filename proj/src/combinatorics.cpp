#include "rwig/combinatorics.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "rwig/error.hpp"

namespace rwig::combinatorics {

BigCount factorial(unsigned n) {
    BigCount r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

BigCount binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigCount r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

BigCount stirling2(unsigned m, unsigned k) {
    if (k > m) return 0;
    BigInt acc = 0;
    for (unsigned j = 0; j <= k; ++j) {
        BigInt term = binomial(k, j) * boost::multiprecision::pow(BigInt(j), m);
        if ((k - j) % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc / factorial(k);
}

BigCount bell(unsigned m) {
    std::vector<BigCount> b{1};
    b.reserve(m + 1);
    for (unsigned n = 0; n < m; ++n) {
        BigCount next = 0;
        for (unsigned k = 0; k <= n; ++k) next += binomial(n, k) * b[k];
        b.push_back(std::move(next));
    }
    return b[m];
}

BigCount contact_graph_count(unsigned m_walkers, unsigned n_states) {
    if (m_walkers == 0 || n_states == 0)
        throw InputError("contact_graph_count: walkers and states must be positive");
    BigCount total = 0;
    for (unsigned m = 0; m <= std::min(m_walkers, n_states); ++m)
        total += stirling2(m_walkers, m);
    return total;
}

// ---------------------------------------------------------------------------
// SetPartition

SetPartition SetPartition::from_cells(std::vector<std::vector<int>> cells) {
    std::size_t n = 0;
    for (auto& c : cells) {
        if (c.empty()) throw InputError("set partition: empty cell");
        std::sort(c.begin(), c.end());
        n += c.size();
    }
    std::vector<char> seen(n, 0);
    for (const auto& c : cells) {
        for (int e : c) {
            if (e < 0 || static_cast<std::size_t>(e) >= n || seen[e])
                throw InputError("set partition: cells must partition {0..n-1}");
            seen[e] = 1;
        }
    }
    std::sort(cells.begin(), cells.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    SetPartition p;
    p.cells_ = std::move(cells);
    p.n_elements_ = n;
    return p;
}

SetPartition SetPartition::from_rgs(std::span<const int> rgs) {
    SetPartition p;
    p.n_elements_ = rgs.size();
    int next_cell = 0;
    for (std::size_t i = 0; i < rgs.size(); ++i) {
        const int c = rgs[i];
        if (c < 0 || c > next_cell) throw InputError("set partition: invalid growth string");
        if (c == next_cell) {
            p.cells_.emplace_back();
            ++next_cell;
        }
        p.cells_[c].push_back(static_cast<int>(i));
    }
    return p;
}

std::vector<int> SetPartition::rgs() const {
    std::vector<int> out(n_elements_);
    for (std::size_t c = 0; c < cells_.size(); ++c)
        for (int e : cells_[c]) out[e] = static_cast<int>(c);
    return out;
}

// ---------------------------------------------------------------------------
// SetPartitionGenerator

SetPartitionGenerator::SetPartitionGenerator(std::size_t n_labels,
                                             std::optional<std::size_t> max_cells)
    : rgs_(n_labels, 0), prefix_cells_(n_labels, 1) {
    if (n_labels == 0) throw InputError("set_partitions: label set must be non-empty");
    const std::size_t cap = max_cells.value_or(n_labels);
    if (cap == 0) throw InputError("set_partitions: max_cells must be positive");
    limit_ = static_cast<int>(std::min(cap, n_labels));
    prefix_cells_[0] = 0;
}

bool SetPartitionGenerator::next() {
    if (done_) return false;
    if (!started_) {
        started_ = true;
        n_cells_ = 1;
        return true;
    }
    const std::size_t n = rgs_.size();
    for (std::size_t i = n; i-- > 1;) {
        // rgs_[i] may open a new cell (== prefix_cells_[i]) as long as the
        // cell budget allows it.
        if (rgs_[i] < prefix_cells_[i] && rgs_[i] + 1 < limit_) {
            ++rgs_[i];
            int used = std::max(prefix_cells_[i], rgs_[i] + 1);
            for (std::size_t j = i + 1; j < n; ++j) {
                rgs_[j] = 0;
                prefix_cells_[j] = used;
            }
            n_cells_ = static_cast<std::size_t>(used);
            return true;
        }
    }
    done_ = true;
    return false;
}

// ---------------------------------------------------------------------------
// IntegerPartition

int IntegerPartition::total() const noexcept {
    return std::accumulate(parts.begin(), parts.end(), 0);
}

IntegerPartition IntegerPartition::from_parts(std::vector<int> parts) {
    for (int p : parts)
        if (p <= 0) throw InputError("integer partition: parts must be positive");
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return IntegerPartition{std::move(parts)};
}

IntegerPartitionGenerator::IntegerPartitionGenerator(int total,
                                                     std::optional<std::size_t> max_parts)
    : total_(total), max_parts_(max_parts.value_or(static_cast<std::size_t>(total))) {
    if (total < 1) throw InputError("integer_partitions: total must be >= 1");
}

bool IntegerPartitionGenerator::advance() {
    auto& p = current_.parts;
    int ones = 0;
    while (!p.empty() && p.back() == 1) {
        p.pop_back();
        ++ones;
    }
    if (p.empty()) return false;
    const int x = --p.back();
    int rem = ones + 1;
    while (rem >= x) {
        p.push_back(x);
        rem -= x;
    }
    if (rem > 0) p.push_back(rem);
    return true;
}

bool IntegerPartitionGenerator::next() {
    if (done_) return false;
    if (!started_) {
        started_ = true;
        current_.parts = {total_};
        if (current_.size() <= max_parts_) return true;
    }
    while (advance()) {
        if (current_.size() <= max_parts_) return true;
    }
    done_ = true;
    return false;
}

std::vector<IntegerPartition> integer_partitions(int total, std::optional<std::size_t> max_parts) {
    std::vector<IntegerPartition> out;
    for (IntegerPartitionGenerator gen(total, max_parts); gen.next();) out.push_back(gen.current());
    return out;
}

// ---------------------------------------------------------------------------
// Weights and multiplicities

std::int64_t cell_weight(std::size_t cell_size) {
    if (cell_size == 0 || cell_size > 20) throw InputError("cell_weight: cell size out of range");
    std::int64_t f = 1;
    for (std::size_t i = 2; i < cell_size; ++i) f *= static_cast<std::int64_t>(i);
    return (cell_size % 2 == 1) ? f : -f;
}

BigInt expansion_weight(const SetPartition& pi) {
    BigInt w = 1;
    for (const auto& cell : pi.cells()) {
        const unsigned c = static_cast<unsigned>(cell.size());
        BigInt f = factorial(c - 1);
        w *= (c % 2 == 1) ? f : BigInt(-f);
    }
    return w;
}

BigCount multiplicity(const IntegerPartition& q) {
    if (q.parts.empty()) throw InputError("multiplicity: empty clique-size set");
    BigCount denom = 1;
    std::map<int, unsigned> counts;
    for (int p : q.parts) {
        if (p <= 0) throw InputError("multiplicity: parts must be positive");
        denom *= factorial(static_cast<unsigned>(p));
        ++counts[p];
    }
    for (const auto& [size, c] : counts) denom *= factorial(c);
    return factorial(static_cast<unsigned>(q.total())) / denom;
}

}  // namespace rwig::combinatorics
