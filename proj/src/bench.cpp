#include "rwig/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "rwig/error.hpp"
#include "rwig/pmf.hpp"

namespace rwig::bench {

namespace {

using Clock = std::chrono::steady_clock;

std::mt19937_64 cell_engine(std::uint64_t seed, std::size_t m, std::size_t n) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(n)};
    return std::mt19937_64(seq);
}

struct Timing {
    double mean = 0.0;
    double min = 0.0;
    bool timed_out = false;
};

template <class Run>
Timing time_method(Run&& run, double warmup_seconds, const GridOptions& options) {
    Timing t;
    if (warmup_seconds > options.budget_seconds) {
        t.mean = t.min = warmup_seconds;
        t.timed_out = true;
        return t;
    }
    double spent = 0.0;
    std::size_t done = 0;
    t.min = INFINITY;
    while (done < options.iterations) {
        const auto start = Clock::now();
        run();
        const double s = std::chrono::duration<double>(Clock::now() - start).count();
        spent += s;
        t.min = std::min(t.min, s);
        ++done;
        if (spent > options.budget_seconds) {
            t.timed_out = done < options.iterations;
            break;
        }
    }
    t.mean = spent / static_cast<double>(done);
    return t;
}

}  // namespace

std::vector<double> dirichlet_row(std::size_t n, std::mt19937_64& engine) {
    std::exponential_distribution<double> exp1(1.0);
    std::vector<double> row(n);
    double sum = 0.0;
    for (auto& v : row) {
        v = exp1(engine);
        sum += v;
    }
    for (auto& v : row) v /= sum;
    return row;
}

markov::WalkerEnsemble random_ensemble(std::size_t m_walkers, std::size_t n_states,
                                       std::uint64_t seed) {
    auto engine = cell_engine(seed, m_walkers, n_states);
    std::vector<markov::Walker> walkers;
    for (std::size_t j = 0; j < m_walkers; ++j) {
        auto s0 = markov::StateVector::from_probs(dirichlet_row(n_states, engine));
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < n_states; ++i) rows.push_back(dirichlet_row(n_states, engine));
        walkers.push_back({"w" + std::to_string(j + 1), std::move(s0),
                           markov::TransitionMatrix::from_rows(rows)});
    }
    return markov::WalkerEnsemble(std::move(walkers));
}

std::vector<BenchCell> benchmark_grid(Range m_range, Range n_range, const GridOptions& options) {
    if (options.iterations < 3) throw InputError("benchmark_grid: iterations must be >= 3");
    if (m_range.first == 0 || n_range.first == 0 || m_range.first > m_range.last ||
        n_range.first > n_range.last)
        throw InputError("benchmark_grid: ranges must be non-empty and positive");

    std::vector<BenchCell> cells;
    for (std::size_t m = m_range.first; m <= m_range.last; ++m) {
        for (std::size_t n = n_range.first; n <= n_range.last; ++n) {
            const auto ensemble = random_ensemble(m, n, options.seed);
            const pmf::DistributionOptions brute{pmf::Method::bruteforce, UINT64_MAX};
            const pmf::DistributionOptions closed{pmf::Method::closed_form, UINT64_MAX};

            // Warm-up doubles as the correctness gate.
            auto start = Clock::now();
            const auto d_brute = pmf::full_distribution_serial(ensemble, options.k, brute);
            const double warm_brute = std::chrono::duration<double>(Clock::now() - start).count();
            start = Clock::now();
            const auto d_closed = pmf::full_distribution_serial(ensemble, options.k, closed);
            const double warm_closed = std::chrono::duration<double>(Clock::now() - start).count();
            for (std::size_t i = 0; i < d_brute.entries.size(); ++i) {
                const double diff =
                    std::abs(d_brute.entries[i].second - d_closed.entries[i].second);
                if (!(d_brute.entries[i].first == d_closed.entries[i].first) || diff > 1e-9) {
                    std::ostringstream msg;
                    msg << "benchmark cell M=" << m << " N=" << n
                        << ": brute force and closed form disagree by " << diff;
                    throw ConsistencyError(msg.str());
                }
            }

            const auto tb = time_method(
                [&] { (void)pmf::full_distribution_serial(ensemble, options.k, brute); },
                warm_brute, options);
            const auto tc = time_method(
                [&] { (void)pmf::full_distribution_serial(ensemble, options.k, closed); },
                warm_closed, options);
            cells.push_back({m, n, tb.mean, tc.mean, tb.min, tc.min, tb.timed_out || tc.timed_out});
        }
    }
    return cells;
}

void write_csv(std::ostream& out, const std::vector<BenchCell>& cells) {
    out << "M,N,t_bruteforce,t_closed_form,ratio,timed_out\n";
    out.precision(9);
    for (const auto& c : cells)
        out << c.m_walkers << ',' << c.n_states << ',' << c.t_bruteforce << ','
            << c.t_closed_form << ',' << c.ratio() << ',' << (c.timed_out ? 1 : 0) << '\n';
}

void write_json(std::ostream& out, const std::vector<BenchCell>& cells) {
    using nlohmann::json;
    std::vector<std::size_t> ms, ns;
    for (const auto& c : cells) {
        if (std::find(ms.begin(), ms.end(), c.m_walkers) == ms.end()) ms.push_back(c.m_walkers);
        if (std::find(ns.begin(), ns.end(), c.n_states) == ns.end()) ns.push_back(c.n_states);
    }
    json ratio = json::array();
    for (std::size_t m : ms) {
        json row = json::array();
        for (std::size_t n : ns) {
            auto it = std::find_if(cells.begin(), cells.end(), [&](const BenchCell& c) {
                return c.m_walkers == m && c.n_states == n;
            });
            row.push_back(it == cells.end() ? json(nullptr) : json(it->ratio()));
        }
        ratio.push_back(std::move(row));
    }
    json detail = json::array();
    for (const auto& c : cells)
        detail.push_back({{"M", c.m_walkers},
                          {"N", c.n_states},
                          {"t_bruteforce", c.t_bruteforce},
                          {"t_closed_form", c.t_closed_form},
                          {"t_bruteforce_min", c.t_bruteforce_min},
                          {"t_closed_form_min", c.t_closed_form_min},
                          {"ratio", c.ratio()},
                          {"timed_out", c.timed_out}});
    out << json{{"m", ms}, {"n", ns}, {"ratio", ratio}, {"cells", detail}}.dump(2) << '\n';
}

}  // namespace rwig::bench
