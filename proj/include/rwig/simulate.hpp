#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

#include "rwig/contact_graph.hpp"
#include "rwig/markov.hpp"
#include "rwig/pmf.hpp"

namespace rwig::simulate {

using contact::ContactGraph;
using markov::WalkerEnsemble;

/// Contact graphs at steps 0..K of one realisation.
struct ContactSequence {
    std::uint64_t seed = 0;
    std::vector<ContactGraph> snapshots;

    friend bool operator==(const ContactSequence&, const ContactSequence&) = default;
};

// Stream-splitting rule: replica r of a run seeded with `seed` draws from
// an mt19937_64 seeded through std::seed_seq with (seed XOR r).
std::uint64_t replica_seed(std::uint64_t seed, std::uint64_t replica);
std::mt19937_64 make_engine(std::uint64_t seed);

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
double uniform01(std::mt19937_64& engine);

/// Initial states are drawn from each walker's s[0], then K transitions are
/// drawn walker by walker from the policy rows. Deterministic given `seed`.
ContactSequence sample_sequence(const WalkerEnsemble& ensemble, std::size_t horizon,
                                std::uint64_t seed);

/// Frequency of each contact graph at step k over `replicas` independent
/// realisations; replica r equals sample_sequence(ensemble, k,
/// replica_seed(seed, r)).snapshots[k]. Replicas run in parallel.
pmf::GraphDistribution empirical_distribution(const WalkerEnsemble& ensemble, std::size_t k,
                                              std::size_t replicas, std::uint64_t seed);

pmf::GraphDistribution empirical_distribution_serial(const WalkerEnsemble& ensemble,
                                                     std::size_t k, std::size_t replicas,
                                                     std::uint64_t seed);

/// value -> probability
using Histogram = std::map<int, double>;

/// Sizes of cliques with at least `min_size` walkers, pooled over every
/// snapshot. Throws InputError("empty histogram") when nothing survives.
Histogram clique_size_distribution(std::span<const ContactGraph> snapshots, int min_size = 2);
Histogram clique_size_distribution(std::span<const ContactSequence> sequences, int min_size = 2);

/// Number of cliques per snapshot, one vote per snapshot.
Histogram clique_count_distribution(std::span<const ContactGraph> snapshots,
                                    bool include_singletons = true);
Histogram clique_count_distribution(std::span<const ContactSequence> sequences,
                                    bool include_singletons = true);

/// Exact counterparts over an unlabelled distribution: each clique-size
/// multiset contributes with its probability as weight.
Histogram clique_size_distribution(const pmf::UnlabelledDistribution& dist, int min_size = 2);
Histogram clique_count_distribution(const pmf::UnlabelledDistribution& dist,
                                    bool include_singletons = true);

double mean(const Histogram& h);

}  // namespace rwig::simulate
