#include "rwig/contact_graph.hpp"

#include <algorithm>

#include "rwig/error.hpp"

namespace rwig::contact {

std::vector<WalkerMask> ContactGraph::clique_masks() const {
    if (n_walkers() > kMaxMaskWalkers)
        throw InputError("contact graph: more than 64 walkers");
    std::vector<WalkerMask> out;
    out.reserve(n_cliques());
    for (const auto& c : cliques()) {
        WalkerMask m = 0;
        for (int w : c) m |= WalkerMask{1} << w;
        out.push_back(m);
    }
    return out;
}

ContactGraph from_assignment(std::span<const std::size_t> states) {
    if (states.empty()) throw InputError("from_assignment: no walkers");
    std::vector<int> rgs(states.size());
    std::vector<std::size_t> seen;
    for (std::size_t w = 0; w < states.size(); ++w) {
        auto it = std::find(seen.begin(), seen.end(), states[w]);
        if (it == seen.end()) {
            rgs[w] = static_cast<int>(seen.size());
            seen.push_back(states[w]);
        } else {
            rgs[w] = static_cast<int>(it - seen.begin());
        }
    }
    return ContactGraph(combinatorics::SetPartition::from_rgs(rgs));
}

ContactGraph from_assignment(const std::map<std::string, std::size_t>& assignment,
                             std::span<const std::string> walker_order) {
    std::vector<std::size_t> states;
    states.reserve(walker_order.size());
    for (const auto& label : walker_order) {
        auto it = assignment.find(label);
        if (it == assignment.end())
            throw InputError("from_assignment: walker '" + label + "' has no state");
        states.push_back(it->second);
    }
    return from_assignment(states);
}

GraphEnumerator::GraphEnumerator(std::size_t m_walkers, std::size_t n_states)
    : gen_(m_walkers, n_states) {
    if (n_states == 0) throw InputError("enumerate_graphs: need at least one state");
}

std::vector<ContactGraph> enumerate_graphs(std::size_t m_walkers, std::size_t n_states) {
    std::vector<ContactGraph> out;
    for (GraphEnumerator e(m_walkers, n_states); e.next();) out.push_back(e.graph());
    return out;
}

UnlabelledContactGraph to_unlabelled(const ContactGraph& g) {
    std::vector<int> sizes;
    sizes.reserve(g.n_cliques());
    for (const auto& c : g.cliques()) sizes.push_back(static_cast<int>(c.size()));
    return {combinatorics::IntegerPartition::from_parts(std::move(sizes))};
}

ContactGraph any_labelling(const UnlabelledContactGraph& u, std::size_t n_walkers) {
    if (u.clique_sizes.parts.empty() ||
        static_cast<std::size_t>(u.n_walkers()) != n_walkers)
        throw InputError("any_labelling: clique sizes sum to " + std::to_string(u.n_walkers()) +
                         " but there are " + std::to_string(n_walkers) + " walkers");
    std::vector<std::vector<int>> cells;
    int next = 0;
    for (int size : u.clique_sizes.parts) {
        auto& c = cells.emplace_back();
        for (int i = 0; i < size; ++i) c.push_back(next++);
    }
    return ContactGraph::from_cells(std::move(cells));
}

std::vector<UnlabelledContactGraph> enumerate_unlabelled(int m_walkers, std::size_t max_cliques) {
    std::vector<UnlabelledContactGraph> out;
    for (combinatorics::IntegerPartitionGenerator gen(m_walkers, max_cliques); gen.next();)
        out.push_back({gen.current()});
    return out;
}

}  // namespace rwig::contact
