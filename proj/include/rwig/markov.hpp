#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rwig/error.hpp"

namespace rwig::markov {

inline constexpr double kStochasticTolerance = 1e-12;

/// Square 0/1 matrix describing which Markov states are linked.
class Adjacency {
public:
    static Adjacency from_rows(const std::vector<std::vector<int>>& rows);

    std::size_t n_states() const noexcept { return n_; }
    bool linked(std::size_t i, std::size_t j) const { return cells_[i * n_ + j] != 0; }
    std::size_t degree(std::size_t i) const;

private:
    std::size_t n_ = 0;
    std::vector<std::uint8_t> cells_;
};

/// Row-stochastic N x N walker policy. Rows must sum to 1 within 1e-12;
/// inputs are rejected rather than renormalized.
class TransitionMatrix {
public:
    static TransitionMatrix from_rows(const std::vector<std::vector<double>>& rows);
    static TransitionMatrix identity(std::size_t n);

    std::size_t n_states() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
    std::vector<std::vector<double>> rows() const;

    friend bool operator==(const TransitionMatrix&, const TransitionMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// Probability row vector over the N states.
class StateVector {
public:
    /// Validates entries in [0, 1] summing to 1 within 1e-12.
    static StateVector from_probs(std::vector<double> probs);
    static StateVector basis(std::size_t n, std::size_t i);
    static StateVector uniform(std::size_t n);

    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }
    std::span<const double> probs() const noexcept { return probs_; }

    friend bool operator==(const StateVector&, const StateVector&) = default;

private:
    friend StateVector propagate(const StateVector&, const TransitionMatrix&, std::size_t);
    friend StateVector steady_state(const TransitionMatrix&, double, std::size_t);
    explicit StateVector(std::vector<double> p) : probs_(std::move(p)) {}

    std::vector<double> probs_;
};

struct Walker {
    std::string label;
    StateVector initial;
    TransitionMatrix policy;
};

/// Walkers sharing one underlying Markov graph. List order fixes the dense
/// walker indexing 0..M-1 used by every contact-graph operation.
class WalkerEnsemble {
public:
    explicit WalkerEnsemble(std::vector<Walker> walkers);

    std::size_t size() const noexcept { return walkers_.size(); }
    std::size_t n_states() const noexcept { return n_states_; }
    const std::vector<Walker>& walkers() const noexcept { return walkers_; }
    const Walker& operator[](std::size_t i) const { return walkers_[i]; }
    std::vector<std::string> labels() const;

private:
    std::vector<Walker> walkers_;
    std::size_t n_states_ = 0;
};

/// Every walker starts from `initial` and follows `policy`; labels w1..wM.
WalkerEnsemble homogeneous_ensemble(std::size_t m_walkers, const StateVector& initial,
                                    const TransitionMatrix& policy);

/// P = D^{-1} A: equal probability to each neighbouring state.
TransitionMatrix uniform_policy(const Adjacency& adjacency);

/// Metropolis-Hastings walk on `adjacency` whose stationary vector is
/// `target` (which must be strictly positive). Proposals pick a neighbour
/// uniformly; rejected moves stay put.
TransitionMatrix metropolis_policy(const Adjacency& adjacency, const StateVector& target);

/// (P + I) / 2.
TransitionMatrix lazy(const TransitionMatrix& policy);

struct PolicyReport {
    /// Off-diagonal (row, column) pairs, zero-based, where the policy puts
    /// mass on a missing link.
    std::vector<std::pair<std::size_t, std::size_t>> violations;
    bool ok() const noexcept { return violations.empty(); }
};

/// Support check a_ij = 0 => p_ij = 0 for i != j. Diagonal entries are always
/// permitted.
PolicyReport validate_policy(const TransitionMatrix& policy, const Adjacency& adjacency);

/// s0 * P^k by k successive vector-matrix products.
StateVector propagate(const StateVector& s0, const TransitionMatrix& policy, std::size_t k);

/// propagate() applied to every walker of the ensemble.
std::vector<StateVector> propagate_all(const WalkerEnsemble& ensemble, std::size_t k);

class NoSteadyState : public InputError {
public:
    NoSteadyState(const std::string& reason, double residual);
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Fixed point s = sP by power iteration from the uniform vector. The chain
/// must be ergodic on its recurrent part (one closed class, aperiodic);
/// otherwise, or when the residual ||sP - s||_inf stays above `tol` after
/// `max_iters` steps, NoSteadyState is thrown.
StateVector steady_state(const TransitionMatrix& policy, double tol = 1e-12,
                         std::size_t max_iters = 1'000'000);

}  // namespace rwig::markov
