#include "rwig/markov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

namespace rwig::markov {

namespace {

void check_square(std::size_t n, std::size_t row_size, std::size_t row, const char* what) {
    if (row_size != n) {
        std::ostringstream msg;
        msg << what << ": row " << row + 1 << " has " << row_size << " entries, expected " << n;
        throw InputError(msg.str());
    }
}

void check_distribution(std::span<const double> p, const std::string& what) {
    double sum = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (!std::isfinite(p[j]) || p[j] < 0.0 || p[j] > 1.0) {
            std::ostringstream msg;
            msg << what << ": entry " << j + 1 << " = " << p[j] << " outside [0, 1]";
            throw InputError(msg.str());
        }
        sum += p[j];
    }
    if (std::abs(sum - 1.0) > kStochasticTolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << what << ": entries sum to " << sum << ", not 1";
        throw InputError(msg.str());
    }
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double r = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, std::abs(a[i] - b[i]));
    return r;
}

void step(std::span<const double> s, const TransitionMatrix& p, std::vector<double>& out) {
    const std::size_t n = p.n_states();
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double si = s[i];
        if (si == 0.0) continue;
        const auto row = p.row(i);
        for (std::size_t j = 0; j < n; ++j) out[j] += si * row[j];
    }
}

}  // namespace

// ---------------------------------------------------------------------------

Adjacency Adjacency::from_rows(const std::vector<std::vector<int>>& rows) {
    Adjacency a;
    a.n_ = rows.size();
    if (a.n_ == 0) throw InputError("adjacency: empty matrix");
    a.cells_.reserve(a.n_ * a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) {
        check_square(a.n_, rows[i].size(), i, "adjacency");
        for (int v : rows[i]) {
            if (v != 0 && v != 1) throw InputError("adjacency: entries must be 0 or 1");
            a.cells_.push_back(static_cast<std::uint8_t>(v));
        }
    }
    return a;
}

std::size_t Adjacency::degree(std::size_t i) const {
    return static_cast<std::size_t>(
        std::count(cells_.begin() + i * n_, cells_.begin() + (i + 1) * n_, 1));
}

TransitionMatrix TransitionMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    TransitionMatrix m;
    m.n_ = rows.size();
    if (m.n_ == 0) throw InputError("transition matrix: empty matrix");
    m.data_.reserve(m.n_ * m.n_);
    for (std::size_t i = 0; i < m.n_; ++i) {
        check_square(m.n_, rows[i].size(), i, "transition matrix");
        check_distribution(rows[i], "transition matrix row " + std::to_string(i + 1));
        m.data_.insert(m.data_.end(), rows[i].begin(), rows[i].end());
    }
    return m;
}

TransitionMatrix TransitionMatrix::identity(std::size_t n) {
    std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1.0;
    return from_rows(rows);
}

std::vector<std::vector<double>> TransitionMatrix::rows() const {
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < n_; ++i) out.emplace_back(row(i).begin(), row(i).end());
    return out;
}

StateVector StateVector::from_probs(std::vector<double> probs) {
    if (probs.empty()) throw InputError("state vector: empty");
    check_distribution(probs, "state vector");
    return StateVector(std::move(probs));
}

StateVector StateVector::basis(std::size_t n, std::size_t i) {
    if (i >= n) throw InputError("state vector: basis index out of range");
    std::vector<double> p(n, 0.0);
    p[i] = 1.0;
    return StateVector(std::move(p));
}

StateVector StateVector::uniform(std::size_t n) {
    if (n == 0) throw InputError("state vector: empty");
    return StateVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

// ---------------------------------------------------------------------------

WalkerEnsemble::WalkerEnsemble(std::vector<Walker> walkers) : walkers_(std::move(walkers)) {
    if (walkers_.empty()) throw InputError("ensemble: at least one walker required");
    n_states_ = walkers_.front().policy.n_states();
    std::vector<std::string> seen;
    for (const auto& w : walkers_) {
        if (w.policy.n_states() != n_states_ || w.initial.size() != n_states_)
            throw InputError("ensemble: walker '" + w.label + "' does not match N = " +
                             std::to_string(n_states_));
        if (std::find(seen.begin(), seen.end(), w.label) != seen.end())
            throw InputError("ensemble: duplicate walker label '" + w.label + "'");
        seen.push_back(w.label);
    }
}

std::vector<std::string> WalkerEnsemble::labels() const {
    std::vector<std::string> out;
    out.reserve(walkers_.size());
    for (const auto& w : walkers_) out.push_back(w.label);
    return out;
}

WalkerEnsemble homogeneous_ensemble(std::size_t m_walkers, const StateVector& initial,
                                    const TransitionMatrix& policy) {
    std::vector<Walker> ws;
    for (std::size_t j = 0; j < m_walkers; ++j)
        ws.push_back(Walker{"w" + std::to_string(j + 1), initial, policy});
    return WalkerEnsemble(std::move(ws));
}

// ---------------------------------------------------------------------------

TransitionMatrix uniform_policy(const Adjacency& adjacency) {
    const std::size_t n = adjacency.n_states();
    std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            if (adjacency.linked(i, j) != adjacency.linked(j, i))
                throw InputError("uniform_policy: adjacency must be symmetric");
        const std::size_t d = adjacency.degree(i);
        if (d == 0) throw InputError("zero degree row " + std::to_string(i + 1));
        for (std::size_t j = 0; j < n; ++j)
            if (adjacency.linked(i, j)) rows[i][j] = 1.0 / static_cast<double>(d);
    }
    return TransitionMatrix::from_rows(rows);
}

TransitionMatrix metropolis_policy(const Adjacency& adjacency, const StateVector& target) {
    const std::size_t n = adjacency.n_states();
    if (target.size() != n) throw InputError("metropolis_policy: dimension mismatch");
    std::vector<std::size_t> deg(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (target[i] <= 0.0) throw InputError("metropolis_policy: target must be positive");
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && adjacency.linked(i, j)) ++deg[i];
        if (deg[i] == 0) throw InputError("zero degree row " + std::to_string(i + 1));
    }
    std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        double moved = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || !adjacency.linked(i, j)) continue;
            const double accept =
                std::min(1.0, (target[j] * static_cast<double>(deg[i])) /
                                  (target[i] * static_cast<double>(deg[j])));
            rows[i][j] = accept / static_cast<double>(deg[i]);
            moved += rows[i][j];
        }
        rows[i][i] = std::max(0.0, 1.0 - moved);
    }
    return TransitionMatrix::from_rows(rows);
}

TransitionMatrix lazy(const TransitionMatrix& policy) {
    auto rows = policy.rows();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (auto& v : rows[i]) v *= 0.5;
        rows[i][i] += 0.5;
    }
    return TransitionMatrix::from_rows(rows);
}

PolicyReport validate_policy(const TransitionMatrix& policy, const Adjacency& adjacency) {
    const std::size_t n = policy.n_states();
    if (adjacency.n_states() != n)
        throw InputError("validate_policy: policy is " + std::to_string(n) + "x" +
                         std::to_string(n) + " but adjacency has " +
                         std::to_string(adjacency.n_states()) + " states");
    PolicyReport report;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && !adjacency.linked(i, j) && policy(i, j) != 0.0)
                report.violations.emplace_back(i, j);
    return report;
}

StateVector propagate(const StateVector& s0, const TransitionMatrix& policy, std::size_t k) {
    if (s0.size() != policy.n_states()) throw InputError("propagate: dimension mismatch");
    std::vector<double> cur(s0.probs().begin(), s0.probs().end());
    std::vector<double> next(cur.size());
    for (std::size_t t = 0; t < k; ++t) {
        step(cur, policy, next);
        cur.swap(next);
    }
    return StateVector(std::move(cur));
}

std::vector<StateVector> propagate_all(const WalkerEnsemble& ensemble, std::size_t k) {
    std::vector<StateVector> out;
    out.reserve(ensemble.size());
    for (const auto& w : ensemble.walkers()) out.push_back(propagate(w.initial, w.policy, k));
    return out;
}

// ---------------------------------------------------------------------------

NoSteadyState::NoSteadyState(const std::string& reason, double residual)
    : InputError("no steady state reached: " + reason + " (residual " +
                 std::to_string(residual) + ")"),
      residual_(residual) {}

namespace {

struct RecurrentStructure {
    std::vector<std::vector<std::size_t>> closed_classes;
    std::size_t period = 1;  // of the first closed class
};

RecurrentStructure analyse_support(const TransitionMatrix& p) {
    const std::size_t n = p.n_states();
    // reach[i][j]: j reachable from i in zero or more steps
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (std::size_t s = 0; s < n; ++s) {
        std::queue<std::size_t> q;
        q.push(s);
        reach[s][s] = 1;
        while (!q.empty()) {
            const std::size_t u = q.front();
            q.pop();
            for (std::size_t v = 0; v < n; ++v)
                if (p(u, v) > 0.0 && !reach[s][v]) {
                    reach[s][v] = 1;
                    q.push(v);
                }
        }
    }
    RecurrentStructure out;
    std::vector<char> assigned(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (assigned[i]) continue;
        std::vector<std::size_t> cls;
        for (std::size_t j = 0; j < n; ++j)
            if (reach[i][j] && reach[j][i]) cls.push_back(j);
        for (std::size_t j : cls) assigned[j] = 1;
        bool closed = true;
        for (std::size_t j = 0; j < n && closed; ++j)
            if (reach[i][j] && !reach[j][i]) closed = false;
        if (closed) out.closed_classes.push_back(std::move(cls));
    }
    // Period of the first closed class: gcd of level[u] + 1 - level[v] over
    // its internal edges, with BFS levels from one member.
    const auto& cls = out.closed_classes.front();
    std::vector<long> level(n, -1);
    std::queue<std::size_t> q;
    level[cls.front()] = 0;
    q.push(cls.front());
    long g = 0;
    while (!q.empty()) {
        const std::size_t u = q.front();
        q.pop();
        for (std::size_t v = 0; v < n; ++v) {
            if (p(u, v) <= 0.0) continue;
            if (level[v] < 0) {
                level[v] = level[u] + 1;
                q.push(v);
            } else {
                g = std::gcd(g, std::labs(level[u] + 1 - level[v]));
            }
        }
    }
    out.period = g == 0 ? 1 : static_cast<std::size_t>(g);
    return out;
}

double residual_from(std::size_t start, const TransitionMatrix& p, std::size_t iters) {
    const std::size_t n = p.n_states();
    std::vector<double> cur(n, 0.0), next(n);
    cur[start] = 1.0;
    for (std::size_t t = 0; t < iters; ++t) {
        step(cur, p, next);
        cur.swap(next);
    }
    step(cur, p, next);
    return max_abs_diff(cur, next);
}

}  // namespace

StateVector steady_state(const TransitionMatrix& policy, double tol, std::size_t max_iters) {
    if (tol <= 0.0 || max_iters == 0)
        throw InputError("steady_state: tol and max_iters must be positive");
    const std::size_t n = policy.n_states();
    const auto structure = analyse_support(policy);
    const std::size_t probe_iters = std::min<std::size_t>(max_iters, 10'000);
    if (structure.closed_classes.size() != 1) {
        const std::size_t start = structure.closed_classes.front().front();
        throw NoSteadyState("chain has " + std::to_string(structure.closed_classes.size()) +
                                " closed classes",
                            residual_from(start, policy, probe_iters));
    }
    if (structure.period != 1) {
        const std::size_t start = structure.closed_classes.front().front();
        throw NoSteadyState("recurrent class has period " + std::to_string(structure.period),
                            residual_from(start, policy, probe_iters));
    }

    std::vector<double> cur(n, 1.0 / static_cast<double>(n)), next(n);
    double residual = 0.0;
    for (std::size_t it = 0; it < max_iters; ++it) {
        step(cur, policy, next);
        residual = max_abs_diff(cur, next);
        cur.swap(next);
        if (residual <= tol) {
            const double sum = std::accumulate(cur.begin(), cur.end(), 0.0);
            for (auto& v : cur) v /= sum;
            return StateVector(std::move(cur));
        }
    }
    throw NoSteadyState("not converged after " + std::to_string(max_iters) + " iterations",
                        residual);
}

}  // namespace rwig::markov
