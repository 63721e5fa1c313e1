#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "rwig/markov.hpp"

namespace rwig::bench {

/// Timing of the brute-force and closed-form full distributions for one
/// (M, N) cell. Times are wall-clock seconds.
struct BenchCell {
    std::size_t m_walkers = 0;
    std::size_t n_states = 0;
    double t_bruteforce = 0.0;      // mean
    double t_closed_form = 0.0;     // mean
    double t_bruteforce_min = 0.0;
    double t_closed_form_min = 0.0;
    bool timed_out = false;

    double ratio() const { return t_bruteforce / t_closed_form; }
};

struct GridOptions {
    std::size_t iterations = 5;
    std::uint64_t seed = 0;
    /// Wall-clock budget per cell and method.
    double budget_seconds = 120.0;
    std::size_t k = 3;
};

struct Range {
    std::size_t first;
    std::size_t last;  // inclusive
};

/// Row drawn from a symmetric Dirichlet(1): normalized unit exponentials.
std::vector<double> dirichlet_row(std::size_t n, std::mt19937_64& engine);

/// M walkers with Dirichlet(1) initial vectors and policy rows.
markov::WalkerEnsemble random_ensemble(std::size_t m_walkers, std::size_t n_states,
                                       std::uint64_t seed);

/// Runs the grid sequentially on the calling thread, (M, N) in row-major
/// order. Each cell discards one warm-up run per method, checks the two
/// distributions agree within 1e-9 (ConsistencyError otherwise), then
/// averages `iterations` timed runs.
std::vector<BenchCell> benchmark_grid(Range m_range, Range n_range, const GridOptions& options);

/// "M,N,t_bruteforce,t_closed_form,ratio,timed_out"
void write_csv(std::ostream& out, const std::vector<BenchCell>& cells);

/// Heatmap-ready grid: {"m": [...], "n": [...], "ratio": [[...]], "cells": [...]}
void write_json(std::ostream& out, const std::vector<BenchCell>& cells);

}  // namespace rwig::bench
