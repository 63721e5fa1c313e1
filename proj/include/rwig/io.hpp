#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "rwig/contact_graph.hpp"
#include "rwig/markov.hpp"
#include "rwig/pmf.hpp"
#include "rwig/simulate.hpp"

namespace rwig::io {

using nlohmann::json;

// Matrices and vectors: JSON {"n": N, "rows": [[..]]} / {"probs": [..]}, or
// CSV with one row per line. The format is picked from the first
// non-blank character.
markov::TransitionMatrix read_matrix(std::istream& in);
markov::StateVector read_vector(std::istream& in);
void write_matrix(std::ostream& out, const markov::TransitionMatrix& m);
void write_vector(std::ostream& out, const markov::StateVector& v);

/// {"n_states": N, "walkers": [{"label", "s0", "policy"}], "adjacency"?}
markov::WalkerEnsemble read_ensemble(std::istream& in);
void write_ensemble(std::ostream& out, const markov::WalkerEnsemble& ensemble);

/// [["w1","w2"],["w3"]]
json graph_to_json(const contact::ContactGraph& g, std::span<const std::string> labels);
contact::ContactGraph graph_from_json(const json& j, std::span<const std::string> labels);

/// [{"graph": ..., "p": ...}] by descending p, ties in canonical order.
void write_distribution(std::ostream& out, const pmf::GraphDistribution& dist,
                        std::span<const std::string> labels);
pmf::GraphDistribution read_distribution(std::istream& in, std::span<const std::string> labels);

/// Same layout with a clique-size list as the graph.
void write_distribution(std::ostream& out, const pmf::UnlabelledDistribution& dist);
pmf::UnlabelledDistribution read_unlabelled_distribution(std::istream& in);

/// One {"t": k, "graph": ...} object per line.
void write_sequence(std::ostream& out, const simulate::ContactSequence& seq,
                    std::span<const std::string> labels);
simulate::ContactSequence read_sequence(std::istream& in, std::span<const std::string> labels);

/// "value,probability"
void write_histogram(std::ostream& out, const simulate::Histogram& h);
simulate::Histogram read_histogram(std::istream& in);

/// Steady-state vector presets: "s033" and "s096" put that mass on the
/// last state and spread the rest evenly; "multimodal" puts 0.32 on each
/// of the last three states and 1/1200 elsewhere, then normalizes.
markov::StateVector preset_vector(const std::string& name, std::size_t n_states);

/// Opens `path` for reading; InputError when it cannot.
std::ifstream open_input(const std::filesystem::path& path);
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace rwig::io
