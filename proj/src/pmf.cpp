#include "rwig/pmf.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "rwig/error.hpp"

namespace rwig::pmf {

namespace {

using CliqueSet = std::uint32_t;
using Wide = boost::multiprecision::cpp_bin_float_50;

void check_expansion_size(std::size_t m) {
    if (m == 0 || m > kMaxExpansionCliques)
        throw InputError("sigma expansion supports 1.." + std::to_string(kMaxExpansionCliques) +
                         " cliques, got " + std::to_string(m));
}

/// Sum over every partition of m cliques of prod_cells weight(|C|) *
/// sigma(union of C). `sigma_of` maps a clique subset (bit set over clique
/// indices) to its sigma.
template <class Real = double, class SigmaOf>
Real expand(std::size_t m, SigmaOf&& sigma_of) {
    check_expansion_size(m);
    const CliqueSet full = (CliqueSet{1} << m) - 1;
    std::vector<Real> weighted(static_cast<std::size_t>(full) + 1, Real(0));
    for (CliqueSet bits = 1; bits <= full; ++bits) {
        const auto w = combinatorics::cell_weight(static_cast<std::size_t>(std::popcount(bits)));
        weighted[bits] = Real(w) * sigma_of(bits);
    }
    std::vector<CliqueSet> cells(m);
    Real total(0);
    for (combinatorics::SetPartitionGenerator gen(m); gen.next();) {
        const auto rgs = gen.rgs();
        const std::size_t q = gen.n_cells();
        std::fill_n(cells.begin(), q, CliqueSet{0});
        for (std::size_t i = 0; i < m; ++i) cells[rgs[i]] |= CliqueSet{1} << i;
        Real term(1);
        for (std::size_t c = 0; c < q; ++c) term *= weighted[cells[c]];
        total += term;
    }
    return total;
}

/// Walker mask of each clique subset: amassed[bits] = union of the cliques in
/// `bits`.
std::vector<WalkerMask> amassed_masks(std::span<const WalkerMask> cliques) {
    const std::size_t m = cliques.size();
    std::vector<WalkerMask> amassed(std::size_t{1} << m, 0);
    for (std::size_t bits = 1; bits < amassed.size(); ++bits) {
        const auto low = static_cast<std::size_t>(std::countr_zero(bits));
        amassed[bits] = amassed[bits & (bits - 1)] | cliques[low];
    }
    return amassed;
}

void check_graph(const ContactGraph& g, std::size_t n_walkers) {
    if (g.n_walkers() != n_walkers) {
        std::ostringstream msg;
        msg << "contact graph covers " << g.n_walkers() << " walkers but the ensemble has "
            << n_walkers;
        throw InputError(msg.str());
    }
}

void check_states(std::span<const StateVector> states) {
    if (states.empty()) throw InputError("no walkers");
    for (const auto& s : states)
        if (s.size() != states.front().size())
            throw InputError("walker state vectors differ in length");
}

}  // namespace

// ---------------------------------------------------------------------------

double sigma(std::span<const StateVector> states, WalkerMask subset) {
    if (subset == 0) throw InputError("sigma: empty walker subset");
    const std::size_t n = states.front().size();
    std::vector<double> h(n, 1.0);
    for (std::size_t w = 0; w < states.size(); ++w) {
        if (!(subset >> w & 1)) continue;
        const auto p = states[w].probs();
        for (std::size_t i = 0; i < n; ++i) h[i] *= p[i];
    }
    double s = 0.0;
    for (double v : h) s += v;
    return s;
}

double sigma(std::span<const int> subset, const WalkerEnsemble& ensemble, std::size_t k) {
    if (subset.empty()) throw InputError("sigma: empty walker subset");
    if (ensemble.size() > contact::kMaxMaskWalkers)
        throw InputError("sigma: more than 64 walkers");
    WalkerMask mask = 0;
    for (int w : subset) {
        if (w < 0 || static_cast<std::size_t>(w) >= ensemble.size())
            throw InputError("sigma: walker index " + std::to_string(w) + " out of range");
        mask |= WalkerMask{1} << w;
    }
    const auto states = markov::propagate_all(ensemble, k);
    return sigma(states, mask);
}

SigmaTable::SigmaTable(std::span<const StateVector> states) : n_walkers_(states.size()) {
    check_states(states);
    if (n_walkers_ > kMaxWalkers)
        throw InputError("SigmaTable: at most " + std::to_string(kMaxWalkers) + " walkers");
    values_.assign(std::size_t{1} << n_walkers_, 0.0);
    const std::size_t n = states.front().size();
    // Depth-first over subsets in ascending walker order, so every entry is
    // the same product sequence sigma(states, mask) would compute.
    std::vector<std::vector<double>> stack(n_walkers_ + 1, std::vector<double>(n, 1.0));
    auto visit = [&](auto&& self, WalkerMask mask, std::size_t first, std::size_t depth) -> void {
        for (std::size_t w = first; w < n_walkers_; ++w) {
            auto& h = stack[depth + 1];
            const auto p = states[w].probs();
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                h[i] = stack[depth][i] * p[i];
                s += h[i];
            }
            const WalkerMask next = mask | (WalkerMask{1} << w);
            values_[next] = s;
            self(self, next, w + 1, depth + 1);
        }
    };
    visit(visit, 0, 0, 0);
}

// ---------------------------------------------------------------------------

std::vector<ExpansionTerm> sigma_expansion(const ContactGraph& g) {
    const std::size_t m = g.n_cliques();
    check_expansion_size(m);
    const auto cliques = g.clique_masks();
    std::vector<ExpansionTerm> out;
    for (combinatorics::SetPartitionGenerator gen(m); gen.next();) {
        const auto rgs = gen.rgs();
        ExpansionTerm term{1, std::vector<WalkerMask>(gen.n_cells(), 0)};
        std::vector<std::size_t> sizes(gen.n_cells(), 0);
        for (std::size_t i = 0; i < m; ++i) {
            term.amassed[rgs[i]] |= cliques[i];
            ++sizes[rgs[i]];
        }
        for (std::size_t c : sizes) term.weight *= combinatorics::cell_weight(c);
        out.push_back(std::move(term));
    }
    return out;
}

double clamp_dust(double p) {
    if (p >= 0.0) return p;
    if (p >= -kNegativeDust) return 0.0;
    std::ostringstream msg;
    msg.precision(17);
    msg << "closed form produced negative probability " << p;
    throw ConsistencyError(msg.str());
}

double pmf_closed_form(const ContactGraph& g, std::span<const StateVector> states) {
    check_states(states);
    check_graph(g, states.size());
    if (g.n_cliques() > states.front().size()) return 0.0;
    const auto amassed = amassed_masks(g.clique_masks());
    return clamp_dust(
        expand(g.n_cliques(), [&](CliqueSet bits) { return sigma(states, amassed[bits]); }));
}

double pmf_closed_form(const ContactGraph& g, const WalkerEnsemble& ensemble, std::size_t k) {
    check_graph(g, ensemble.size());
    const auto states = markov::propagate_all(ensemble, k);
    return pmf_closed_form(g, states);
}

double pmf_closed_form(const ContactGraph& g, const SigmaTable& table, std::size_t n_states) {
    check_graph(g, table.n_walkers());
    if (g.n_cliques() > n_states) return 0.0;
    const auto amassed = amassed_masks(g.clique_masks());
    return clamp_dust(expand(g.n_cliques(), [&](CliqueSet bits) { return table[amassed[bits]]; }));
}

double pmf_bruteforce(const ContactGraph& g, std::span<const StateVector> states) {
    check_states(states);
    check_graph(g, states.size());
    const std::size_t n = states.front().size();
    const auto& cliques = g.cliques();
    const std::size_t m = cliques.size();
    if (m > n) return 0.0;

    std::vector<char> used(n, 0);
    double total = 0.0;
    // Lexicographic over ordered tuples (i_1, ..., i_m) of distinct states;
    // a zero partial product prunes the subtree.
    auto descend = [&](auto&& self, std::size_t j, double partial) -> void {
        if (j == m) {
            total += partial;
            return;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i]) continue;
            double p = partial;
            for (int w : cliques[j]) p *= states[w][i];
            if (p == 0.0) continue;
            used[i] = 1;
            self(self, j + 1, p);
            used[i] = 0;
        }
    };
    descend(descend, 0, 1.0);
    return total;
}

double pmf_bruteforce(const ContactGraph& g, const WalkerEnsemble& ensemble, std::size_t k) {
    check_graph(g, ensemble.size());
    const auto states = markov::propagate_all(ensemble, k);
    return pmf_bruteforce(g, states);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<ContactGraph> graphs_within_budget(const WalkerEnsemble& ensemble,
                                               const DistributionOptions& options) {
    const auto count = combinatorics::contact_graph_count(
        static_cast<unsigned>(ensemble.size()), static_cast<unsigned>(ensemble.n_states()));
    if (count > options.budget) {
        std::ostringstream msg;
        msg << "full distribution has " << count << " contact graphs, above the budget of "
            << options.budget
            << "; use the unlabelled steady-state route for large walker counts";
        throw InputError(msg.str());
    }
    return contact::enumerate_graphs(ensemble.size(), ensemble.n_states());
}

/// Evaluates one graph with whichever precomputation is available.
struct GraphEvaluator {
    const std::vector<StateVector>& states;
    const SigmaTable* table;
    Method method;

    double operator()(const ContactGraph& g) const {
        if (method == Method::bruteforce) return pmf_bruteforce(g, states);
        if (table) return pmf_closed_form(g, *table, states.front().size());
        return pmf_closed_form(g, states);
    }
};

template <class Loop>
GraphDistribution evaluate_all(const WalkerEnsemble& ensemble, std::size_t k,
                               const DistributionOptions& options, Loop&& loop) {
    auto graphs = graphs_within_budget(ensemble, options);
    const auto states = markov::propagate_all(ensemble, k);
    std::unique_ptr<SigmaTable> table;
    if (options.method == Method::closed_form && ensemble.size() <= SigmaTable::kMaxWalkers)
        table = std::make_unique<SigmaTable>(states);
    const GraphEvaluator eval{states, table.get(), options.method};

    std::vector<double> probs(graphs.size());
    loop(graphs, probs, eval);

    GraphDistribution out;
    out.k = k;
    out.entries.reserve(graphs.size());
    for (std::size_t i = 0; i < graphs.size(); ++i)
        out.entries.emplace_back(std::move(graphs[i]), probs[i]);
    std::sort(out.entries.begin(), out.entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

}  // namespace

GraphDistribution full_distribution(const WalkerEnsemble& ensemble, std::size_t k,
                                    const DistributionOptions& options) {
    return evaluate_all(ensemble, k, options,
                        [](const auto& graphs, auto& probs, const GraphEvaluator& eval) {
                            const auto n = static_cast<std::ptrdiff_t>(graphs.size());
#pragma omp parallel for schedule(dynamic, 16)
                            for (std::ptrdiff_t i = 0; i < n; ++i) probs[i] = eval(graphs[i]);
                        });
}

GraphDistribution full_distribution_serial(const WalkerEnsemble& ensemble, std::size_t k,
                                           const DistributionOptions& options) {
    return evaluate_all(ensemble, k, options,
                        [](const auto& graphs, auto& probs, const GraphEvaluator& eval) {
                            for (std::size_t i = 0; i < graphs.size(); ++i)
                                probs[i] = eval(graphs[i]);
                        });
}

// ---------------------------------------------------------------------------

double steady_state_sigma(std::size_t clique_size, const StateVector& s_tilde) {
    if (clique_size == 0) throw InputError("steady_state_sigma: clique size must be positive");
    double s = 0.0;
    for (double v : s_tilde.probs()) s += std::pow(v, static_cast<double>(clique_size));
    return s;
}

double steady_state_pmf(const ContactGraph& g, const StateVector& s_tilde) {
    const std::size_t m = g.n_cliques();
    if (m > s_tilde.size()) return 0.0;
    // Steady sigmas depend only on clique sizes, so the expansion cancels
    // heavily for many cliques; it is carried out in 50 digits.
    const std::size_t n_walkers = g.n_walkers();
    std::vector<Wide> by_size(n_walkers + 1, Wide(0));
    for (const double v : s_tilde.probs()) {
        const Wide x(v);
        Wide power(1);
        for (std::size_t q = 1; q <= n_walkers; ++q) by_size[q] += power *= x;
    }
    std::vector<std::size_t> sizes;
    for (const auto& c : g.cliques()) sizes.push_back(c.size());
    const Wide p = expand<Wide>(m, [&](CliqueSet bits) {
        std::size_t total = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (bits >> i & 1) total += sizes[i];
        return by_size[total];
    });
    return clamp_dust(p.convert_to<double>());
}

namespace {

void check_unlabelled(const UnlabelledContactGraph& u, const StateVector& s_tilde) {
    if (u.clique_sizes.parts.empty()) throw InputError("unlabelled graph has no cliques");
    if (u.n_cliques() > s_tilde.size())
        throw InputError("unlabelled graph has " + std::to_string(u.n_cliques()) +
                         " cliques but only " + std::to_string(s_tilde.size()) + " states");
}

}  // namespace

double unlabelled_steady_state_pmf_combinatorial(const UnlabelledContactGraph& u,
                                                 const StateVector& s_tilde) {
    check_unlabelled(u, s_tilde);
    // Ordered tuples of distinct states are grouped by which states hold a
    // clique of each size. used[] is a mixed-radix count per distinct size;
    // table[used] sums prod s_i^size over the states processed so far.
    std::vector<int> sizes, counts;
    for (int q : u.clique_sizes.parts) {
        if (sizes.empty() || sizes.back() != q) {
            sizes.push_back(q);
            counts.push_back(0);
        }
        ++counts.back();
    }
    const std::size_t r = sizes.size();
    std::vector<std::size_t> stride(r + 1, 1);
    for (std::size_t j = 0; j < r; ++j) stride[j + 1] = stride[j] * (counts[j] + 1);
    std::vector<double> table(stride[r], 0.0), next;
    table[0] = 1.0;
    for (const double v : s_tilde.probs()) {
        if (v == 0.0) continue;
        next = table;
        for (std::size_t idx = 1; idx < table.size(); ++idx)
            for (std::size_t j = 0; j < r; ++j)
                if ((idx / stride[j]) % (counts[j] + 1) > 0)
                    next[idx] += table[idx - stride[j]] * std::pow(v, sizes[j]);
        table.swap(next);
    }
    // gamma * prod c_j! * table = M! / prod q_i! * table
    combinatorics::BigCount ways = combinatorics::factorial(u.clique_sizes.total());
    for (int q : u.clique_sizes.parts) ways /= combinatorics::factorial(q);
    return ways.convert_to<double>() * table.back();
}

double unlabelled_steady_state_pmf(const UnlabelledContactGraph& u, const StateVector& s_tilde) {
    check_unlabelled(u, s_tilde);
    const auto g = contact::any_labelling(u, static_cast<std::size_t>(u.n_walkers()));
    const double gamma = combinatorics::multiplicity(u.clique_sizes).convert_to<double>();
    const double p = gamma * steady_state_pmf(g, s_tilde);
    const double q = unlabelled_steady_state_pmf_combinatorial(u, s_tilde);
    if (std::abs(p - q) > 1e-10) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "steady-state unlabelled pmf routes disagree: closed form " << p
            << ", combinatorial " << q;
        throw ConsistencyError(msg.str());
    }
    return p;
}

UnlabelledDistribution unlabelled_steady_state_distribution(int m_walkers,
                                                            const StateVector& s_tilde) {
    UnlabelledDistribution out;
    out.k = 0;
    for (auto& u : contact::enumerate_unlabelled(m_walkers, s_tilde.size())) {
        const double p = unlabelled_steady_state_pmf(u, s_tilde);
        out.entries.emplace_back(std::move(u), p);
    }
    std::sort(out.entries.begin(), out.entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

UnlabelledDistribution marginalize_unlabelled(const GraphDistribution& labelled) {
    std::map<UnlabelledContactGraph, double> acc;
    for (const auto& [g, p] : labelled.entries) acc[contact::to_unlabelled(g)] += p;
    UnlabelledDistribution out;
    out.k = labelled.k;
    out.entries.assign(acc.begin(), acc.end());
    return out;
}

}  // namespace rwig::pmf
