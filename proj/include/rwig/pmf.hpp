#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rwig/contact_graph.hpp"
#include "rwig/markov.hpp"

namespace rwig::pmf {

using contact::ContactGraph;
using contact::UnlabelledContactGraph;
using contact::WalkerMask;
using markov::StateVector;
using markov::WalkerEnsemble;

/// Closed-form results in [-kNegativeDust, 0) are rounding noise and are
/// clamped to 0; anything more negative raises ConsistencyError.
inline constexpr double kNegativeDust = 1e-10;

/// Largest clique count the sigma expansion accepts.
inline constexpr std::size_t kMaxExpansionCliques = 20;

/// Probability over contact graphs at one time step. Entries are kept in
/// canonical key order.
template <class Key>
struct Distribution {
    std::size_t k = 0;
    std::vector<std::pair<Key, double>> entries;

    double total() const {
        double s = 0.0;
        for (const auto& e : entries) s += e.second;
        return s;
    }

    /// Probability of `key`, 0 when absent.
    double at(const Key& key) const {
        auto it = std::lower_bound(entries.begin(), entries.end(), key,
                                   [](const auto& e, const Key& k) { return e.first < k; });
        return (it != entries.end() && it->first == key) ? it->second : 0.0;
    }

    /// Descending probability, ties in canonical key order.
    std::vector<std::pair<Key, double>> by_probability() const {
        auto out = entries;
        std::stable_sort(out.begin(), out.end(),
                         [](const auto& a, const auto& b) { return a.second > b.second; });
        return out;
    }
};

using GraphDistribution = Distribution<ContactGraph>;
using UnlabelledDistribution = Distribution<UnlabelledContactGraph>;

// ---------------------------------------------------------------------------
// Sigma terms

/// Probability that every walker in `subset` sits in the same state, given
/// the walkers' state vectors at the time of interest.
double sigma(std::span<const StateVector> states, WalkerMask subset);

/// Same, propagating the ensemble to step k first. `subset` holds dense
/// walker indices; throws InputError when empty or out of range.
double sigma(std::span<const int> subset, const WalkerEnsemble& ensemble, std::size_t k);

/// Sigma of every non-empty walker subset, indexed by mask. Built once in
/// O(2^M N) and read-only afterwards, so it can be shared between threads.
class SigmaTable {
public:
    static constexpr std::size_t kMaxWalkers = 22;

    explicit SigmaTable(std::span<const StateVector> states);

    double operator[](WalkerMask subset) const { return values_[subset]; }
    std::size_t n_walkers() const noexcept { return n_walkers_; }

private:
    std::vector<double> values_;
    std::size_t n_walkers_;
};

// ---------------------------------------------------------------------------
// Sigma expansion

/// One term of the expansion of Pr[G = g]: an integer weight times the
/// product of sigma over the amassed cliques.
struct ExpansionTerm {
    std::int64_t weight;
    std::vector<WalkerMask> amassed;  // ascending by lowest walker
};

/// All partitions of g's cliques, in restricted-growth-string order, with
/// their weights and amassed cliques.
std::vector<ExpansionTerm> sigma_expansion(const ContactGraph& g);

/// Applies the dust clamp described at kNegativeDust.
double clamp_dust(double p);

// ---------------------------------------------------------------------------
// Labelled pmf

double pmf_closed_form(const ContactGraph& g, std::span<const StateVector> states);
double pmf_closed_form(const ContactGraph& g, const WalkerEnsemble& ensemble, std::size_t k);
/// Uses precomputed sigmas; graphs with more than `n_states` cliques get 0.
double pmf_closed_form(const ContactGraph& g, const SigmaTable& table, std::size_t n_states);

/// Direct sum over ordered tuples of distinct states (one per clique). The
/// independent oracle for pmf_closed_form.
double pmf_bruteforce(const ContactGraph& g, std::span<const StateVector> states);
double pmf_bruteforce(const ContactGraph& g, const WalkerEnsemble& ensemble, std::size_t k);

enum class Method { closed_form, bruteforce };

struct DistributionOptions {
    Method method = Method::closed_form;
    /// Upper bound on the number of labelled graphs.
    std::uint64_t budget = 1'000'000;
};

/// Probability of every contact graph at step k. Graphs are evaluated in
/// parallel; the result is identical to full_distribution_serial.
GraphDistribution full_distribution(const WalkerEnsemble& ensemble, std::size_t k,
                                    const DistributionOptions& options = {});

/// Single-threaded reference for full_distribution.
GraphDistribution full_distribution_serial(const WalkerEnsemble& ensemble, std::size_t k,
                                           const DistributionOptions& options = {});

// ---------------------------------------------------------------------------
// Steady state

/// sum_i s_i^q: sigma of any q walkers that all sit at the steady state s.
double steady_state_sigma(std::size_t clique_size, const StateVector& s_tilde);

/// Labelled steady-state probability of g (closed form with steady sigmas).
double steady_state_pmf(const ContactGraph& g, const StateVector& s_tilde);

/// gamma(Q) * Pr[G = any_labelling(u)], with the closed form evaluated on
/// steady sigmas. The combinatorial route is evaluated too and a
/// disagreement above 1e-10 raises ConsistencyError.
double unlabelled_steady_state_pmf(const UnlabelledContactGraph& u, const StateVector& s_tilde);

/// M! * sum over ordered distinct state tuples of prod_j s_{i_j}^{q_j},
/// divided by prod q_i! prod c_j!. Polynomial in N: tuples are grouped by
/// the set of states holding each clique size.
double unlabelled_steady_state_pmf_combinatorial(const UnlabelledContactGraph& u,
                                                 const StateVector& s_tilde);

/// Sums a labelled distribution over walker relabellings.
UnlabelledDistribution marginalize_unlabelled(const GraphDistribution& labelled);

/// Every clique-size multiset of M walkers with at most N parts.
UnlabelledDistribution unlabelled_steady_state_distribution(int m_walkers,
                                                            const StateVector& s_tilde);

}  // namespace rwig::pmf
