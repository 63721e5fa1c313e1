// rwig: contact-graph distributions of random walkers on a Markov graph.
//
// Exit codes: 0 ok, 1 input or validation error, 2 consistency violation.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rwig/bench.hpp"
#include "rwig/combinatorics.hpp"
#include "rwig/contact_graph.hpp"
#include "rwig/error.hpp"
#include "rwig/ingest.hpp"
#include "rwig/io.hpp"
#include "rwig/markov.hpp"
#include "rwig/pmf.hpp"
#include "rwig/simulate.hpp"

using namespace rwig;

namespace {

constexpr int kOk = 0;
constexpr int kInput = 1;
constexpr int kConsistency = 2;

// Writes to `path`, or stdout when empty.
template <class Write>
void emit(const std::string& path, Write&& write) {
    if (path.empty()) {
        write(std::cout);
        std::cout.flush();
        return;
    }
    auto out = io::open_output(path);
    write(out);
}

bench::Range parse_range(const std::string& text) {
    const auto colon = text.find(':');
    try {
        const auto first = std::stoul(text.substr(0, colon));
        const auto last = colon == std::string::npos ? first : std::stoul(text.substr(colon + 1));
        return {first, last};
    } catch (const std::exception&) {
        throw InputError("bad range '" + text + "' (expected a:b)");
    }
}

std::vector<std::string> default_labels(std::size_t m) {
    std::vector<std::string> labels;
    for (std::size_t i = 1; i <= m; ++i) labels.push_back("w" + std::to_string(i));
    return labels;
}

// ---------------------------------------------------------------------------

struct PmfArgs {
    std::string ensemble, out;
    std::size_t k = 0;
    bool oracle = false;
    std::uint64_t budget = 1'000'000;
};

int cmd_pmf(const PmfArgs& a) {
    auto in = io::open_input(a.ensemble);
    const auto ensemble = io::read_ensemble(in);
    const auto dist =
        pmf::full_distribution(ensemble, a.k, {pmf::Method::closed_form, a.budget});
    if (a.oracle) {
        const auto check =
            pmf::full_distribution(ensemble, a.k, {pmf::Method::bruteforce, a.budget});
        double worst = 0.0;
        for (std::size_t i = 0; i < dist.entries.size(); ++i)
            worst = std::max(worst, std::abs(dist.entries[i].second - check.entries[i].second));
        if (worst > 1e-9) {
            std::cerr << "oracle mismatch: max deviation " << worst << '\n';
            return kConsistency;
        }
        std::cerr << "oracle ok: max deviation " << worst << '\n';
    }
    const auto labels = ensemble.labels();
    emit(a.out, [&](std::ostream& os) { io::write_distribution(os, dist, labels); });
    return kOk;
}

struct SteadyArgs {
    std::string policy, state, preset, out, sizes_csv, counts_csv;
    int walkers = 0;
    std::size_t states = 0;
    bool exclude_singletons = false;
};

int cmd_steady(const SteadyArgs& a) {
    std::optional<markov::StateVector> s;
    if (!a.policy.empty()) {
        auto in = io::open_input(a.policy);
        s = markov::steady_state(io::read_matrix(in));
    } else if (!a.state.empty()) {
        auto in = io::open_input(a.state);
        s = io::read_vector(in);
    } else {
        if (a.states == 0) throw InputError("--preset needs --states");
        s = io::preset_vector(a.preset, a.states);
    }
    const auto dist = pmf::unlabelled_steady_state_distribution(a.walkers, *s);
    if (std::abs(dist.total() - 1.0) > 1e-9)
        throw ConsistencyError("steady-state distribution sums to " +
                               std::to_string(dist.total()));
    emit(a.out, [&](std::ostream& os) { io::write_distribution(os, dist); });
    if (!a.sizes_csv.empty()) {
        auto os = io::open_output(a.sizes_csv);
        io::write_histogram(os, simulate::clique_size_distribution(dist, 2));
    }
    if (!a.counts_csv.empty()) {
        auto os = io::open_output(a.counts_csv);
        io::write_histogram(os, simulate::clique_count_distribution(dist, !a.exclude_singletons));
    }
    return kOk;
}

struct SampleArgs {
    std::string ensemble, out, snapshots;
    std::size_t horizon = 0;
    std::uint64_t seed = 0;
};

int cmd_sample(const SampleArgs& a) {
    auto in = io::open_input(a.ensemble);
    const auto ensemble = io::read_ensemble(in);
    const auto seq = simulate::sample_sequence(ensemble, a.horizon, a.seed);
    const auto labels = ensemble.labels();
    emit(a.out, [&](std::ostream& os) { io::write_sequence(os, seq, labels); });
    if (!a.snapshots.empty()) {
        auto os = io::open_output(a.snapshots);
        const auto records = ingest::to_records(seq, labels);
        ingest::write_colocation(os, records);
    }
    return kOk;
}

struct AnalyzeArgs {
    std::string input, roster, sizes_csv, counts_csv, graphs_out;
};

int cmd_analyze(const AnalyzeArgs& a) {
    auto in = io::open_input(a.input);
    const auto records = ingest::parse_colocation(in);
    std::vector<std::string> roster;
    if (!a.roster.empty()) {
        auto rin = io::open_input(a.roster);
        roster = ingest::parse_roster(rin);
    }

    bool ok = true;
    for (const auto& r : records) {
        const auto v = ingest::validate_clique_union(r, roster);
        for (const auto& bad : v.violations) {
            ok = false;
            std::cerr << "t=" << r.t << ": non-clique component of " << bad.nodes.size()
                      << " nodes (" << bad.edges << " edges, " << bad.missing_pairs
                      << " missing pairs):";
            for (const auto& n : bad.nodes) std::cerr << ' ' << n;
            std::cerr << '\n';
        }
    }
    if (!ok) return kInput;

    const auto d = ingest::dataset_distributions(records, roster);
    std::cout << d.graphs.size() << " snapshots, mean clique size "
              << simulate::mean(d.clique_sizes) << ", mean clique count "
              << simulate::mean(d.clique_counts) << '\n';
    if (!a.sizes_csv.empty()) {
        auto os = io::open_output(a.sizes_csv);
        io::write_histogram(os, d.clique_sizes);
    }
    if (!a.counts_csv.empty()) {
        auto os = io::open_output(a.counts_csv);
        io::write_histogram(os, d.clique_counts);
    }
    if (!a.graphs_out.empty()) {
        auto os = io::open_output(a.graphs_out);
        for (const auto& g : d.graphs)
            os << io::json{{"t", g.t}, {"graph", io::graph_to_json(g.graph, g.nodes)}}.dump()
               << '\n';
    }
    return kOk;
}

struct BenchArgs {
    std::string m_range = "3:7", n_range = "3:7", csv, json;
    bench::GridOptions grid;
};

int cmd_bench(const BenchArgs& a) {
    const auto cells = bench::benchmark_grid(parse_range(a.m_range), parse_range(a.n_range), a.grid);
    emit(a.csv, [&](std::ostream& os) { bench::write_csv(os, cells); });
    if (!a.json.empty()) {
        auto os = io::open_output(a.json);
        bench::write_json(os, cells);
    }
    return kOk;
}

struct EnumerateArgs {
    unsigned walkers = 0, states = 0;
    bool list = false;
};

int cmd_enumerate(const EnumerateArgs& a) {
    std::cout << combinatorics::contact_graph_count(a.walkers, a.states) << '\n';
    if (a.list) {
        const auto labels = default_labels(a.walkers);
        for (contact::GraphEnumerator e(a.walkers, a.states); e.next();)
            std::cout << io::graph_to_json(e.graph(), labels).dump() << '\n';
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Contact graphs induced by random walkers on a Markov graph"};
    app.require_subcommand(1);

    PmfArgs pmf_args;
    auto* pmf_cmd = app.add_subcommand("pmf", "Labelled contact-graph distribution at step k");
    pmf_cmd->add_option("--ensemble", pmf_args.ensemble, "Ensemble JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    pmf_cmd->add_option("--k", pmf_args.k, "Time step")->required();
    pmf_cmd->add_option("--out", pmf_args.out, "Output JSON (default stdout)");
    pmf_cmd->add_flag("--oracle", pmf_args.oracle, "Recompute by brute force and compare");
    pmf_cmd->add_option("--budget", pmf_args.budget, "Maximum number of labelled graphs")
        ->check(CLI::PositiveNumber);

    SteadyArgs steady_args;
    auto* steady_cmd = app.add_subcommand("steady", "Unlabelled steady-state distribution");
    auto* policy_opt = steady_cmd->add_option("--policy", steady_args.policy, "Transition matrix")
                           ->check(CLI::ExistingFile);
    auto* state_opt = steady_cmd->add_option("--state", steady_args.state, "Steady-state vector")
                          ->check(CLI::ExistingFile);
    auto* preset_opt = steady_cmd->add_option("--preset", steady_args.preset, "s033, s096 or multimodal")
                           ->check(CLI::IsMember({"s033", "s096", "multimodal"}));
    policy_opt->excludes(state_opt)->excludes(preset_opt);
    state_opt->excludes(preset_opt);
    steady_cmd->add_option("--walkers", steady_args.walkers, "Number of walkers M")
        ->required()
        ->check(CLI::PositiveNumber);
    steady_cmd->add_option("--states", steady_args.states, "Number of states N (for --preset)")
        ->check(CLI::PositiveNumber);
    steady_cmd->add_option("--out", steady_args.out, "Output JSON (default stdout)");
    steady_cmd->add_option("--sizes-csv", steady_args.sizes_csv, "Clique-size histogram");
    steady_cmd->add_option("--counts-csv", steady_args.counts_csv, "Clique-count histogram");
    steady_cmd->add_flag("--exclude-singletons", steady_args.exclude_singletons,
                         "Count only cliques of size >= 2");

    SampleArgs sample_args;
    auto* sample_cmd = app.add_subcommand("sample", "Sample one contact sequence");
    sample_cmd->add_option("--ensemble", sample_args.ensemble, "Ensemble JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    sample_cmd->add_option("--horizon", sample_args.horizon, "Number of steps")->required();
    sample_cmd->add_option("--seed", sample_args.seed, "Random seed");
    sample_cmd->add_option("--out", sample_args.out, "Output JSON lines (default stdout)");
    sample_cmd->add_option("--snapshots", sample_args.snapshots, "Also write \"t i j\" co-location lines");

    AnalyzeArgs analyze_args;
    auto* analyze_cmd = app.add_subcommand("analyze", "Validate and summarize co-location data");
    analyze_cmd->add_option("--input", analyze_args.input, "\"t i j\" file")
        ->required()
        ->check(CLI::ExistingFile);
    analyze_cmd->add_option("--roster", analyze_args.roster, "One node id per line")
        ->check(CLI::ExistingFile);
    analyze_cmd->add_option("--sizes-csv", analyze_args.sizes_csv, "Clique-size histogram");
    analyze_cmd->add_option("--counts-csv", analyze_args.counts_csv, "Clique-count histogram");
    analyze_cmd->add_option("--graphs-out", analyze_args.graphs_out, "Per-snapshot graphs as JSON lines");

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "Time brute force against the closed form");
    bench_cmd->add_option("--m-range", bench_args.m_range, "Walkers, a:b")->capture_default_str();
    bench_cmd->add_option("--n-range", bench_args.n_range, "States, a:b")->capture_default_str();
    bench_cmd->add_option("--iterations", bench_args.grid.iterations, "Timed runs per cell")
        ->capture_default_str();
    bench_cmd->add_option("--seed", bench_args.grid.seed, "Random seed");
    bench_cmd->add_option("--k", bench_args.grid.k, "Time step")->capture_default_str();
    bench_cmd->add_option("--budget-seconds", bench_args.grid.budget_seconds,
                          "Per cell and method")
        ->capture_default_str();
    bench_cmd->add_option("--csv", bench_args.csv, "CSV output (default stdout)");
    bench_cmd->add_option("--json", bench_args.json, "Heatmap JSON output");

    EnumerateArgs enum_args;
    auto* enum_cmd = app.add_subcommand("enumerate", "Count (and list) contact graphs");
    enum_cmd->add_option("--walkers", enum_args.walkers, "M")->required()->check(CLI::PositiveNumber);
    enum_cmd->add_option("--states", enum_args.states, "N")->required()->check(CLI::PositiveNumber);
    enum_cmd->add_flag("--list", enum_args.list, "Print every graph as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInput;
    }

    try {
        if (*pmf_cmd) return cmd_pmf(pmf_args);
        if (*steady_cmd) {
            if (steady_args.policy.empty() && steady_args.state.empty() && steady_args.preset.empty())
                throw InputError("steady needs one of --policy, --state or --preset");
            return cmd_steady(steady_args);
        }
        if (*sample_cmd) return cmd_sample(sample_args);
        if (*analyze_cmd) return cmd_analyze(analyze_args);
        if (*bench_cmd) return cmd_bench(bench_args);
        if (*enum_cmd) return cmd_enumerate(enum_args);
    } catch (const ConsistencyError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConsistency;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    }
    return kInput;
}
