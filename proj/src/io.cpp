#include "rwig/io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "rwig/error.hpp"

namespace rwig::io {

namespace {

std::string slurp(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool looks_like_json(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    return first != std::string::npos && (text[first] == '{' || text[first] == '[');
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

double parse_number(std::string_view field, std::size_t line) {
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r'))
        field.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
        throw InputError("line " + std::to_string(line) + ": '" + std::string(field) +
                         "' is not a number");
    return v;
}

std::vector<std::vector<double>> parse_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> row;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            row.push_back(parse_number(std::string_view(line).substr(start, comma - start), line_no));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw InputError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(rows.front().size()) + " values, got " +
                             std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InputError("empty input");
    return rows;
}

template <class T>
T field(const json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key))
        throw InputError(std::string(what) + ": missing \"" + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw InputError(std::string(what) + ": bad \"" + key + "\": " + e.what());
    }
}

markov::TransitionMatrix matrix_from_json(const json& j) {
    auto rows = field<std::vector<std::vector<double>>>(j, "rows", "matrix");
    if (j.contains("n") && field<std::size_t>(j, "n", "matrix") != rows.size())
        throw InputError("matrix: \"n\" does not match the number of rows");
    return markov::TransitionMatrix::from_rows(rows);
}

std::map<std::string, int> index_labels(std::span<const std::string> labels) {
    std::map<std::string, int> idx;
    for (std::size_t i = 0; i < labels.size(); ++i) idx[labels[i]] = static_cast<int>(i);
    return idx;
}

template <class Entries>
void write_entries(std::ostream& out, const Entries& sorted, auto&& graph_json) {
    json arr = json::array();
    for (const auto& [key, p] : sorted) arr.push_back({{"graph", graph_json(key)}, {"p", p}});
    out << std::setprecision(17) << arr.dump() << '\n';
}

}  // namespace

markov::TransitionMatrix read_matrix(std::istream& in) {
    const auto text = slurp(in);
    if (looks_like_json(text)) return matrix_from_json(parse_json(text));
    return markov::TransitionMatrix::from_rows(parse_csv(text));
}

markov::StateVector read_vector(std::istream& in) {
    const auto text = slurp(in);
    if (looks_like_json(text)) {
        const auto j = parse_json(text);
        return markov::StateVector::from_probs(field<std::vector<double>>(j, "probs", "vector"));
    }
    auto rows = parse_csv(text);
    std::vector<double> probs;
    if (rows.size() == 1) {
        probs = std::move(rows.front());
    } else {
        for (auto& r : rows) {
            if (r.size() != 1) throw InputError("vector: expected one row or one column");
            probs.push_back(r.front());
        }
    }
    return markov::StateVector::from_probs(std::move(probs));
}

void write_matrix(std::ostream& out, const markov::TransitionMatrix& m) {
    out << json{{"n", m.n_states()}, {"rows", m.rows()}}.dump() << '\n';
}

void write_vector(std::ostream& out, const markov::StateVector& v) {
    out << json{{"probs", std::vector<double>(v.probs().begin(), v.probs().end())}}.dump() << '\n';
}

markov::WalkerEnsemble read_ensemble(std::istream& in) {
    const auto j = parse_json(slurp(in));
    const auto n = field<std::size_t>(j, "n_states", "ensemble");
    if (!j.contains("walkers") || !j["walkers"].is_array() || j["walkers"].empty())
        throw InputError("ensemble: \"walkers\" must be a non-empty array");

    std::vector<markov::Walker> walkers;
    for (std::size_t w = 0; w < j["walkers"].size(); ++w) {
        const auto& jw = j["walkers"][w];
        const std::string where = "walker " + std::to_string(w);
        auto label = field<std::string>(jw, "label", where.c_str());
        auto s0 = field<std::vector<double>>(jw, "s0", where.c_str());
        auto rows = field<std::vector<std::vector<double>>>(jw, "policy", where.c_str());
        if (s0.size() != n || rows.size() != n)
            throw InputError(where + ": expected " + std::to_string(n) + " states");
        try {
            walkers.push_back({std::move(label), markov::StateVector::from_probs(std::move(s0)),
                               markov::TransitionMatrix::from_rows(rows)});
        } catch (const InputError& e) {
            throw InputError(where + ": " + e.what());
        }
    }
    markov::WalkerEnsemble ensemble(std::move(walkers));

    if (j.contains("adjacency")) {
        const auto adj = markov::Adjacency::from_rows(
            field<std::vector<std::vector<int>>>(j, "adjacency", "ensemble"));
        for (const auto& w : ensemble.walkers()) {
            const auto report = markov::validate_policy(w.policy, adj);
            if (!report.ok()) {
                const auto& [a, b] = report.violations.front();
                throw InputError("walker " + w.label + ": policy moves " + std::to_string(a) +
                                 " -> " + std::to_string(b) + " without a link");
            }
        }
    }
    return ensemble;
}

void write_ensemble(std::ostream& out, const markov::WalkerEnsemble& ensemble) {
    json walkers = json::array();
    for (const auto& w : ensemble.walkers())
        walkers.push_back(
            {{"label", w.label},
             {"s0", std::vector<double>(w.initial.probs().begin(), w.initial.probs().end())},
             {"policy", w.policy.rows()}});
    out << json{{"n_states", ensemble.n_states()}, {"walkers", walkers}}.dump(2) << '\n';
}

json graph_to_json(const contact::ContactGraph& g, std::span<const std::string> labels) {
    json out = json::array();
    for (const auto& clique : g.cliques()) {
        json c = json::array();
        for (int w : clique) c.push_back(labels[static_cast<std::size_t>(w)]);
        out.push_back(std::move(c));
    }
    return out;
}

contact::ContactGraph graph_from_json(const json& j, std::span<const std::string> labels) {
    const auto idx = index_labels(labels);
    if (!j.is_array()) throw InputError("graph: expected an array of cliques");
    std::vector<std::vector<int>> cells;
    for (const auto& jc : j) {
        auto& cell = cells.emplace_back();
        if (!jc.is_array()) throw InputError("graph: expected an array of labels");
        for (const auto& jl : jc) {
            if (!jl.is_string()) throw InputError("graph: labels must be strings");
            auto it = idx.find(jl.get<std::string>());
            if (it == idx.end()) throw InputError("graph: unknown walker " + jl.dump());
            cell.push_back(it->second);
        }
    }
    return contact::ContactGraph::from_cells(std::move(cells));
}

void write_distribution(std::ostream& out, const pmf::GraphDistribution& dist,
                        std::span<const std::string> labels) {
    write_entries(out, dist.by_probability(),
                  [&](const contact::ContactGraph& g) { return graph_to_json(g, labels); });
}

pmf::GraphDistribution read_distribution(std::istream& in, std::span<const std::string> labels) {
    const auto j = parse_json(slurp(in));
    if (!j.is_array()) throw InputError("distribution: expected an array");
    pmf::GraphDistribution dist;
    for (const auto& e : j)
        dist.entries.emplace_back(graph_from_json(e.at("graph"), labels),
                                  field<double>(e, "p", "distribution"));
    std::sort(dist.entries.begin(), dist.entries.end());
    return dist;
}

void write_distribution(std::ostream& out, const pmf::UnlabelledDistribution& dist) {
    write_entries(out, dist.by_probability(),
                  [](const contact::UnlabelledContactGraph& u) { return json(u.clique_sizes.parts); });
}

pmf::UnlabelledDistribution read_unlabelled_distribution(std::istream& in) {
    const auto j = parse_json(slurp(in));
    if (!j.is_array()) throw InputError("distribution: expected an array");
    pmf::UnlabelledDistribution dist;
    for (const auto& e : j) {
        auto parts = field<std::vector<int>>(e, "graph", "distribution");
        dist.entries.emplace_back(
            contact::UnlabelledContactGraph{combinatorics::IntegerPartition::from_parts(parts)},
            field<double>(e, "p", "distribution"));
    }
    std::sort(dist.entries.begin(), dist.entries.end());
    return dist;
}

void write_sequence(std::ostream& out, const simulate::ContactSequence& seq,
                    std::span<const std::string> labels) {
    for (std::size_t t = 0; t < seq.snapshots.size(); ++t)
        out << json{{"t", t}, {"graph", graph_to_json(seq.snapshots[t], labels)}}.dump() << '\n';
}

simulate::ContactSequence read_sequence(std::istream& in, std::span<const std::string> labels) {
    simulate::ContactSequence seq;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw InputError("line " + std::to_string(line_no) + ": " + e.what());
        }
        if (field<std::size_t>(j, "t", "snapshot") != seq.snapshots.size())
            throw InputError("line " + std::to_string(line_no) + ": snapshots out of order");
        seq.snapshots.push_back(graph_from_json(j.at("graph"), labels));
    }
    return seq;
}

void write_histogram(std::ostream& out, const simulate::Histogram& h) {
    out << "value,probability\n" << std::setprecision(17);
    for (const auto& [v, p] : h) out << v << ',' << p << '\n';
}

simulate::Histogram read_histogram(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    simulate::Histogram h;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.rfind("value", 0) == 0) continue;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw InputError("line " + std::to_string(line_no) + ": expected value,probability");
        const std::string_view sv(line);
        h[static_cast<int>(parse_number(sv.substr(0, comma), line_no))] =
            parse_number(sv.substr(comma + 1), line_no);
    }
    return h;
}

markov::StateVector preset_vector(const std::string& name, std::size_t n_states) {
    std::vector<double> p(n_states);
    if (name == "s033" || name == "s096") {
        if (n_states < 2) throw InputError("preset " + name + " needs at least 2 states");
        const double last = name == "s033" ? 0.33 : 0.96;
        std::fill(p.begin(), p.end(), (1.0 - last) / static_cast<double>(n_states - 1));
        p.back() = last;
    } else if (name == "multimodal") {
        if (n_states < 4) throw InputError("preset multimodal needs at least 4 states");
        std::fill(p.begin(), p.end(), 1.0 / 1200.0);
        std::fill(p.end() - 3, p.end(), 0.32);
        double sum = 0.0;
        for (double v : p) sum += v;
        for (double& v : p) v /= sum;
    } else {
        throw InputError("unknown preset '" + name + "' (expected s033, s096 or multimodal)");
    }
    return markov::StateVector::from_probs(std::move(p));
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    return out;
}

}  // namespace rwig::io
