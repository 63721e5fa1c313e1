// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failures.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "rwig/bench.hpp"
#include "rwig/combinatorics.hpp"
#include "rwig/contact_graph.hpp"
#include "rwig/ingest.hpp"
#include "rwig/io.hpp"
#include "rwig/markov.hpp"
#include "rwig/pmf.hpp"
#include "rwig/simulate.hpp"

using namespace rwig;
using combinatorics::BigCount;
using contact::ContactGraph;
using contact::WalkerMask;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) detail = what;
        ok = ok && cond;
    }
};

int failures = 0;

void criterion(const std::string& id, const std::string& title, double limit_seconds,
               const std::function<void(Outcome&)>& body) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.ok = false;
        out.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > limit_seconds) {
        out.expect(false, "took " + std::to_string(secs) + " s, limit " +
                              std::to_string(limit_seconds) + " s");
    }
    if (!out.ok) ++failures;
    std::cout << (out.ok ? "[PASS] " : "[FAIL] ") << id << ' ' << title << " (" << std::fixed
              << std::setprecision(2) << secs << " s)";
    if (!out.detail.empty()) std::cout << ": " << out.detail;
    std::cout << std::endl;
}

std::string str(const BigCount& v) { return v.str(); }

WalkerMask union_of(const std::vector<WalkerMask>& cliques, std::initializer_list<int> which) {
    WalkerMask m = 0;
    for (int i : which) m |= cliques[static_cast<std::size_t>(i)];
    return m;
}

}  // namespace

int main() {
    criterion("C1", "Bell and Stirling tables exact", 1.0, [](Outcome& o) {
        const int bells[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975};
        for (unsigned m = 0; m <= 10; ++m)
            o.expect(combinatorics::bell(m) == bells[m], "B_" + std::to_string(m));
        // rows n = 1..10, columns k = 1..6
        const long stirling[10][6] = {
            {1, 0, 0, 0, 0, 0},          {1, 1, 0, 0, 0, 0},
            {1, 3, 1, 0, 0, 0},          {1, 7, 6, 1, 0, 0},
            {1, 15, 25, 10, 1, 0},       {1, 31, 90, 65, 15, 1},
            {1, 63, 301, 350, 140, 21},  {1, 127, 966, 1701, 1050, 266},
            {1, 255, 3025, 7770, 6951, 2646}, {1, 511, 9330, 34105, 42525, 22827},
        };
        for (unsigned n = 1; n <= 10; ++n)
            for (unsigned k = 1; k <= 6; ++k)
                o.expect(combinatorics::stirling2(n, k) == stirling[n - 1][k - 1],
                         "S(" + std::to_string(n) + "," + std::to_string(k) + ") = " +
                             str(combinatorics::stirling2(n, k)));
        o.expect(combinatorics::bell(10) == 115975, "B_10");
        o.expect(combinatorics::stirling2(7, 3) == 301, "S(7,3)");
        o.expect(combinatorics::stirling2(10, 5) == 42525, "S(10,5)");
    });

    criterion("C2", "contact-graph counts, 60 cells", 1.0, [](Outcome& o) {
        // rows M = 1..10, columns N = 5..10
        const long table[10][6] = {
            {1, 1, 1, 1, 1, 1},
            {2, 2, 2, 2, 2, 2},
            {5, 5, 5, 5, 5, 5},
            {15, 15, 15, 15, 15, 15},
            {52, 52, 52, 52, 52, 52},
            {202, 203, 203, 203, 203, 203},
            {855, 876, 877, 877, 877, 877},
            {3845, 4111, 4139, 4140, 4140, 4140},
            {18002, 20648, 21110, 21146, 21147, 21147},
            {86472, 109299, 115179, 115929, 115974, 115975},
        };
        int exact = 0;
        for (unsigned m = 1; m <= 10; ++m)
            for (unsigned n = 5; n <= 10; ++n) {
                const auto v = combinatorics::contact_graph_count(m, n);
                const bool hit = v == table[m - 1][n - 5];
                exact += hit;
                o.expect(hit, "M=" + std::to_string(m) + " N=" + std::to_string(n) + " got " + str(v));
            }
        o.detail = o.ok ? std::to_string(exact) + "/60 exact" : o.detail;
    });

    criterion("C3", "closed form equals brute force, M,N <= 5", 120.0, [](Outcome& o) {
        double worst = 0.0, worst_total = 0.0;
        std::uint64_t seed = 1;
        for (std::size_t m = 1; m <= 5; ++m)
            for (std::size_t n = 1; n <= 5; ++n)
                for (int rep = 0; rep < 25; ++rep) {
                    const auto e = bench::random_ensemble(m, n, seed++);
                    for (std::size_t k : {0, 1, 3}) {
                        const auto states = markov::propagate_all(e, k);
                        double total = 0.0;
                        for (const auto& g : contact::enumerate_graphs(m, n)) {
                            const double c = pmf::pmf_closed_form(g, states);
                            const double b = pmf::pmf_bruteforce(g, states);
                            worst = std::max(worst, std::abs(c - b));
                            total += c;
                        }
                        worst_total = std::max(worst_total, std::abs(total - 1.0));
                    }
                }
        o.expect(worst <= 1e-10, "max |closed - brute| = " + std::to_string(worst));
        o.expect(worst_total <= 1e-9, "max |sum - 1| = " + std::to_string(worst_total));
        std::ostringstream d;
        d << "max |closed - brute| = " << std::scientific << worst << ", max |sum - 1| = " << worst_total;
        if (o.ok) o.detail = d.str();
    });

    criterion("C4", "2-, 3- and 4-clique hand expansions", 10.0, [](Outcome& o) {
        double worst = 0.0;
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const auto e = bench::random_ensemble(8, 5, seed);
            const auto s = markov::propagate_all(e, 2);
            auto sg = [&](WalkerMask m) { return pmf::sigma(s, m); };

            const auto g2 = ContactGraph::from_cells({{0, 1, 2}, {3, 4, 5, 6, 7}});
            auto a = g2.clique_masks();
            const double h2 = sg(a[0]) * sg(a[1]) - sg(a[0] | a[1]);
            worst = std::max(worst, std::abs(pmf::pmf_closed_form(g2, s) - h2));

            const auto g3 = ContactGraph::from_cells({{0, 5}, {1, 2, 3}, {4, 6, 7}});
            a = g3.clique_masks();
            const double h3 = sg(a[0]) * sg(a[1]) * sg(a[2]) -
                              sg(union_of(a, {0, 1})) * sg(a[2]) -
                              sg(union_of(a, {0, 2})) * sg(a[1]) -
                              sg(union_of(a, {1, 2})) * sg(a[0]) + 2 * sg(union_of(a, {0, 1, 2}));
            worst = std::max(worst, std::abs(pmf::pmf_closed_form(g3, s) - h3));

            const auto g4 = ContactGraph::from_cells({{0, 7}, {1}, {2, 3, 4}, {5, 6}});
            a = g4.clique_masks();
            const auto one = [&](int i) { return sg(a[static_cast<std::size_t>(i)]); };
            double h4 = one(0) * one(1) * one(2) * one(3);
            const int pairs[6][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2},
                                     {1, 2, 0, 3}, {1, 3, 0, 2}, {2, 3, 0, 1}};
            for (const auto& p : pairs)
                h4 -= sg(union_of(a, {p[0], p[1]})) * one(p[2]) * one(p[3]);
            const int triples[4][4] = {{0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 3, 1}, {1, 2, 3, 0}};
            for (const auto& t : triples) h4 += 2 * sg(union_of(a, {t[0], t[1], t[2]})) * one(t[3]);
            const int pair_pairs[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
            for (const auto& p : pair_pairs)
                h4 += sg(union_of(a, {p[0], p[1]})) * sg(union_of(a, {p[2], p[3]}));
            h4 -= 6 * sg(union_of(a, {0, 1, 2, 3}));
            worst = std::max(worst, std::abs(pmf::pmf_closed_form(g4, s) - h4));
        }
        o.expect(worst <= 1e-12, "max deviation " + std::to_string(worst));
    });

    criterion("C5", "expansion weights", 10.0, [](Outcome& o) {
        // Weight of the fully amassed term, against (-1)^(m-1) (m-1)! and
        // against the recursion beta_m = -sum_{l<m} S(m,l) beta_l.
        std::vector<combinatorics::BigInt> beta{0, 1};
        for (unsigned m = 2; m <= 6; ++m) {
            combinatorics::BigInt b = 0;
            for (unsigned l = 1; l < m; ++l)
                b -= combinatorics::BigInt(combinatorics::stirling2(m, l)) * beta[l];
            beta.push_back(b);
        }
        for (int m = 1; m <= 6; ++m) {
            std::vector<std::vector<int>> cells;
            for (int i = 0; i < m; ++i) cells.push_back({i});
            const auto terms = pmf::sigma_expansion(ContactGraph::from_cells(cells));
            std::int64_t full = 0;
            for (const auto& t : terms)
                if (t.amassed.size() == 1) full = t.weight;
            const auto closed = combinatorics::BigInt(m % 2 ? 1 : -1) *
                                combinatorics::BigInt(combinatorics::factorial(m - 1));
            o.expect(combinatorics::BigInt(full) == closed, "m=" + std::to_string(m));
            o.expect(beta[m] == closed, "recursion m=" + std::to_string(m));
        }
        // Every weight for up to four cliques against the symbolic unrolling.
        for (int m = 1; m <= 4; ++m) {
            const auto sym = oracle::recursive_expansion(m);
            std::vector<std::vector<int>> cells;
            for (int i = 0; i < m; ++i) cells.push_back({i});
            const auto terms = pmf::sigma_expansion(ContactGraph::from_cells(cells));
            o.expect(terms.size() == sym.size(), "term count m=" + std::to_string(m));
            for (const auto& t : terms) {
                std::vector<int> rgs(m);
                for (std::size_t c = 0; c < t.amassed.size(); ++c)
                    for (int i = 0; i < m; ++i)
                        if (t.amassed[c] >> i & 1) rgs[i] = static_cast<int>(c);
                const auto it = sym.find(oracle::canonical_rgs(rgs));
                o.expect(it != sym.end() && it->second == t.weight,
                         "symbolic weight m=" + std::to_string(m));
            }
        }
    });

    criterion("C6", "labelled and unlabelled steady-state routes agree", 120.0, [](Outcome& o) {
        double worst_sum = 0.0, worst_routes = 0.0;
        for (std::size_t n = 2; n <= 6; ++n) {
            std::vector<markov::StateVector> vectors{io::preset_vector("s033", n),
                                                     io::preset_vector("s096", n)};
            if (n >= 4) vectors.push_back(io::preset_vector("multimodal", n));
            for (const auto& s : vectors)
                for (std::size_t m = 1; m <= 6; ++m) {
                    std::map<contact::UnlabelledContactGraph, double> summed;
                    for (const auto& g : contact::enumerate_graphs(m, n))
                        summed[contact::to_unlabelled(g)] += pmf::steady_state_pmf(g, s);
                    for (const auto& [u, p_sum] : summed) {
                        const double eq16 = pmf::unlabelled_steady_state_pmf(u, s);
                        const double eq18 = pmf::unlabelled_steady_state_pmf_combinatorial(u, s);
                        worst_sum = std::max(worst_sum, std::abs(p_sum - eq16));
                        worst_routes = std::max(worst_routes, std::abs(eq16 - eq18));
                    }
                }
        }
        o.expect(worst_sum <= 1e-10, "labelled sum off by " + std::to_string(worst_sum));
        o.expect(worst_routes <= 1e-10, "routes differ by " + std::to_string(worst_routes));
        const auto nine = contact::enumerate_unlabelled(9, 9).size();
        o.expect(nine == 30, "M=9 unlabelled space has " + std::to_string(nine));
    });

    criterion("C7", "Monte Carlo agrees with the exact distribution", 180.0, [](Outcome& o) {
        const auto e = bench::random_ensemble(3, 4, 7);
        const std::size_t replicas = 200000;
        const auto emp = simulate::empirical_distribution(e, 2, replicas, 0);
        const auto exact = pmf::full_distribution(e, 2);
        double worst_z = 0.0;
        for (const auto& [g, p] : exact.entries) {
            const double sd = std::sqrt(p * (1 - p) / static_cast<double>(replicas));
            const double dev = std::abs(emp.at(g) - p);
            const double z = sd > 0 ? dev / sd : (dev > 0 ? INFINITY : 0.0);
            worst_z = std::max(worst_z, z);
        }
        o.expect(worst_z <= 4.0, "worst deviation " + std::to_string(worst_z) + " sd");

        // Walkers on the complete graph whose stationary vector is the preset,
        // started there; mean size of cliques with at least two walkers.
        std::vector<std::vector<int>> complete(15, std::vector<int>(15, 1));
        const auto adj = markov::Adjacency::from_rows(complete);
        auto mean_size = [&](const char* preset) {
            const auto s = io::preset_vector(preset, 15);
            const auto ens = markov::homogeneous_ensemble(10, s, markov::metropolis_policy(adj, s));
            std::vector<ContactGraph> snaps;
            for (std::uint64_t r = 0; r < 2000; ++r)
                snaps.push_back(simulate::sample_sequence(ens, 50, r).snapshots.back());
            return simulate::mean(simulate::clique_size_distribution(snaps, 2));
        };
        const double big = mean_size("s096"), small = mean_size("s033");
        o.expect(big > small, "mean clique size " + std::to_string(big) + " vs " + std::to_string(small));
        std::ostringstream d;
        d << "worst " << std::setprecision(3) << worst_z << " sd; mean clique size " << big
          << " (s_N=0.96) vs " << small << " (s_N=0.33)";
        if (o.ok) o.detail = d.str();
    });

    criterion("C8", "closed form outpaces brute force", 300.0, [](Outcome& o) {
        const auto cells = bench::benchmark_grid({6, 7}, {6, 7}, {5, 0, 120.0, 3});
        double r66 = 0, r77 = 0;
        for (const auto& c : cells) {
            if (c.m_walkers == 6 && c.n_states == 6) r66 = c.ratio();
            if (c.m_walkers == 7 && c.n_states == 7) r77 = c.ratio();
        }
        o.expect(r66 > 1.0, "ratio at M=N=6 is " + std::to_string(r66));
        o.expect(r77 > 5.0, "ratio at M=N=7 is " + std::to_string(r77));
        std::ostringstream d;
        d << "ratio " << std::setprecision(3) << r66 << " at M=N=6, " << r77 << " at M=N=7";
        if (o.ok) o.detail = d.str();
    });

    criterion("C9", "co-location ingest", 60.0, [](Outcome& o) {
        const std::string dir = RWIG_FIXTURES;
        {
            auto in = io::open_input(dir + "/cliques.txt");
            const auto records = ingest::parse_colocation(in);
            for (const auto& r : records) o.expect(ingest::validate_clique_union(r).ok(), "clique fixture");
            std::ostringstream out;
            ingest::write_colocation(out, records);
            std::istringstream back(out.str());
            o.expect(ingest::parse_colocation(back) == records, "round trip");
        }
        {
            auto in = io::open_input(dir + "/path.txt");
            bool flagged = false;
            for (const auto& r : ingest::parse_colocation(in))
                flagged = flagged || !ingest::validate_clique_union(r).ok();
            o.expect(flagged, "path fixture not flagged");
        }
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const auto e = bench::random_ensemble(2 + seed % 9, 2 + seed % 6, seed);
            const auto labels = e.labels();
            const auto records = ingest::to_records(simulate::sample_sequence(e, 25, seed), labels);
            for (const auto& r : records)
                o.expect(ingest::validate_clique_union(r, labels).ok(), "sampled sequence rejected");
        }
        std::string note = "real data: skipped (set RWIG_COLOCATION_DATA)";
        if (const char* path = std::getenv("RWIG_COLOCATION_DATA")) {
            auto in = io::open_input(path);
            const auto records = ingest::parse_colocation(in);
            std::size_t bad = 0;
            for (const auto& r : records) bad += !ingest::validate_clique_union(r).ok();
            note = "real data: " + std::to_string(records.size()) + " snapshots, " +
                   std::to_string(bad) + " not unions of cliques";
        }
        if (o.ok) o.detail = note;
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed")
              << std::endl;
    return failures;
}
