#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace bachelier::sim {

enum class Scheme { Euler, ExactWhereAvailable };
enum class Measure { Physical, RiskNeutral };

/// Monte Carlo discretization settings. The same (seed, nPaths, nSteps)
/// always produce the same draws, path by path.
struct SimConfig {
    std::uint64_t seed = 0;
    long n_paths = 100000;
    int n_steps = 250;
    double t_start = 0.0;
    double t_end = 1.0;
    Scheme scheme = Scheme::Euler;

    void validate() const {
        if (n_paths < 1)
            throw std::invalid_argument("SimConfig: nPaths must be >= 1");
        if (n_steps < 1)
            throw std::invalid_argument("SimConfig: nSteps must be >= 1");
        if (!(t_end > t_start))
            throw std::invalid_argument("SimConfig: tEnd must exceed tStart");
    }

    double dt() const { return (t_end - t_start) / n_steps; }
    double time_at(int k) const {
        return t_start + (t_end - t_start) * static_cast<double>(k) / n_steps;
    }
};

/// Simulated trajectories on a uniform time grid: values(p, k) is path p at
/// times[k]. When the generating process carries a rate, `integrals` holds
/// the trapezoidal accumulation of the rate along each path.
struct PathSet {
    Eigen::VectorXd times;     // n_steps + 1 points, uniform
    Eigen::MatrixXd values;    // n_paths x (n_steps + 1)
    Eigen::VectorXd integrals; // size 0, or n_paths
    SimConfig config;
    std::string model_id;

    long n_paths() const { return values.rows(); }
    int n_steps() const { return static_cast<int>(values.cols()) - 1; }
    bool has_integrals() const { return integrals.size() == values.rows(); }
    double terminal(long p) const { return values(p, values.cols() - 1); }
};

} // namespace bachelier::sim
