#include "rwig/simulate.hpp"

#include <algorithm>

#include "rwig/error.hpp"

namespace rwig::simulate {

namespace {

/// Cumulative sums with the tail pinned above 1 so that a draw never falls
/// past the last state carrying mass.
std::vector<double> cumulative(std::span<const double> p) {
    std::vector<double> c(p.size());
    double acc = 0.0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc += p[i];
        c[i] = acc;
        if (p[i] > 0.0) last = i;
    }
    for (std::size_t i = last; i < c.size(); ++i) c[i] = 2.0;
    return c;
}

std::size_t draw(const std::vector<double>& cum, std::mt19937_64& engine) {
    const double u = uniform01(engine);
    return static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
}

class Sampler {
public:
    explicit Sampler(const WalkerEnsemble& ensemble) : n_(ensemble.n_states()) {
        for (const auto& w : ensemble.walkers()) {
            initial_.push_back(cumulative(w.initial.probs()));
            auto& rows = policy_.emplace_back();
            for (std::size_t i = 0; i < n_; ++i) rows.push_back(cumulative(w.policy.row(i)));
        }
    }

    void start(std::vector<std::size_t>& states, std::mt19937_64& engine) const {
        states.resize(initial_.size());
        for (std::size_t w = 0; w < states.size(); ++w) states[w] = draw(initial_[w], engine);
    }

    void advance(std::vector<std::size_t>& states, std::mt19937_64& engine) const {
        for (std::size_t w = 0; w < states.size(); ++w)
            states[w] = draw(policy_[w][states[w]], engine);
    }

private:
    std::size_t n_;
    std::vector<std::vector<double>> initial_;
    std::vector<std::vector<std::vector<double>>> policy_;
};

std::vector<std::size_t> state_at(const Sampler& sampler, std::size_t k, std::uint64_t seed) {
    auto engine = make_engine(seed);
    std::vector<std::size_t> states;
    sampler.start(states, engine);
    for (std::size_t t = 0; t < k; ++t) sampler.advance(states, engine);
    return states;
}

pmf::GraphDistribution tally(std::vector<ContactGraph> draws, std::size_t k) {
    std::map<ContactGraph, std::size_t> counts;
    for (auto& g : draws) ++counts[std::move(g)];
    pmf::GraphDistribution out;
    out.k = k;
    const double total = static_cast<double>(draws.size());
    for (auto& [g, c] : counts) out.entries.emplace_back(g, static_cast<double>(c) / total);
    return out;
}

void check_replicas(std::size_t replicas) {
    if (replicas == 0) throw InputError("empirical_distribution: replicas must be >= 1");
}

Histogram normalize(const std::map<int, double>& weights) {
    double total = 0.0;
    for (const auto& [v, w] : weights) total += w;
    if (total <= 0.0) throw InputError("empty histogram");
    Histogram h;
    for (const auto& [v, w] : weights)
        if (w > 0.0) h[v] = w / total;
    return h;
}

template <class Visit>
void for_each_snapshot(std::span<const ContactSequence> sequences, Visit&& visit) {
    for (const auto& s : sequences)
        for (const auto& g : s.snapshots) visit(g);
}

void add_sizes(const ContactGraph& g, int min_size, double weight, std::map<int, double>& acc) {
    for (const auto& c : g.cliques()) {
        const int size = static_cast<int>(c.size());
        if (size >= min_size) acc[size] += weight;
    }
}

int count_cliques(const ContactGraph& g, bool include_singletons) {
    int n = 0;
    for (const auto& c : g.cliques())
        if (include_singletons || c.size() > 1) ++n;
    return n;
}

}  // namespace

std::uint64_t replica_seed(std::uint64_t seed, std::uint64_t replica) { return seed ^ replica; }

std::mt19937_64 make_engine(std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64& engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

ContactSequence sample_sequence(const WalkerEnsemble& ensemble, std::size_t horizon,
                                std::uint64_t seed) {
    const Sampler sampler(ensemble);
    auto engine = make_engine(seed);
    ContactSequence out;
    out.seed = seed;
    out.snapshots.reserve(horizon + 1);
    std::vector<std::size_t> states;
    sampler.start(states, engine);
    out.snapshots.push_back(contact::from_assignment(states));
    for (std::size_t t = 0; t < horizon; ++t) {
        sampler.advance(states, engine);
        out.snapshots.push_back(contact::from_assignment(states));
    }
    return out;
}

pmf::GraphDistribution empirical_distribution(const WalkerEnsemble& ensemble, std::size_t k,
                                              std::size_t replicas, std::uint64_t seed) {
    check_replicas(replicas);
    const Sampler sampler(ensemble);
    std::vector<ContactGraph> draws(replicas);
    const auto n = static_cast<std::ptrdiff_t>(replicas);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < n; ++r) {
        const auto states = state_at(sampler, k, replica_seed(seed, static_cast<std::uint64_t>(r)));
        draws[r] = contact::from_assignment(states);
    }
    return tally(std::move(draws), k);
}

pmf::GraphDistribution empirical_distribution_serial(const WalkerEnsemble& ensemble,
                                                     std::size_t k, std::size_t replicas,
                                                     std::uint64_t seed) {
    check_replicas(replicas);
    const Sampler sampler(ensemble);
    std::vector<ContactGraph> draws;
    draws.reserve(replicas);
    for (std::size_t r = 0; r < replicas; ++r)
        draws.push_back(contact::from_assignment(state_at(sampler, k, replica_seed(seed, r))));
    return tally(std::move(draws), k);
}

// ---------------------------------------------------------------------------

Histogram clique_size_distribution(std::span<const ContactGraph> snapshots, int min_size) {
    std::map<int, double> acc;
    for (const auto& g : snapshots) add_sizes(g, min_size, 1.0, acc);
    return normalize(acc);
}

Histogram clique_size_distribution(std::span<const ContactSequence> sequences, int min_size) {
    std::map<int, double> acc;
    for_each_snapshot(sequences, [&](const ContactGraph& g) { add_sizes(g, min_size, 1.0, acc); });
    return normalize(acc);
}

Histogram clique_count_distribution(std::span<const ContactGraph> snapshots,
                                    bool include_singletons) {
    std::map<int, double> acc;
    for (const auto& g : snapshots) acc[count_cliques(g, include_singletons)] += 1.0;
    return normalize(acc);
}

Histogram clique_count_distribution(std::span<const ContactSequence> sequences,
                                    bool include_singletons) {
    std::map<int, double> acc;
    for_each_snapshot(sequences, [&](const ContactGraph& g) {
        acc[count_cliques(g, include_singletons)] += 1.0;
    });
    return normalize(acc);
}

Histogram clique_size_distribution(const pmf::UnlabelledDistribution& dist, int min_size) {
    std::map<int, double> acc;
    for (const auto& [u, p] : dist.entries)
        for (int size : u.clique_sizes.parts)
            if (size >= min_size) acc[size] += p;
    return normalize(acc);
}

Histogram clique_count_distribution(const pmf::UnlabelledDistribution& dist,
                                    bool include_singletons) {
    std::map<int, double> acc;
    for (const auto& [u, p] : dist.entries) {
        const auto& parts = u.clique_sizes.parts;
        const auto n = include_singletons
                           ? parts.size()
                           : static_cast<std::size_t>(std::count_if(
                                 parts.begin(), parts.end(), [](int s) { return s > 1; }));
        acc[static_cast<int>(n)] += p;
    }
    return normalize(acc);
}

double mean(const Histogram& h) {
    double m = 0.0;
    for (const auto& [v, p] : h) m += v * p;
    return m;
}

}  // namespace rwig::simulate
