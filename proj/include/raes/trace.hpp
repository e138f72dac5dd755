#pragma once

#include <span>
#include <string>
#include <vector>

namespace raes {

struct TraceStep {
    long t = 0;
    std::string branch;
    double inst_regret = 0.0;
};

// Per-step and cumulative regret of one (algorithm, instance, seed) run.
struct RegretTrace {
    std::string algo;
    long seed = 0;
    std::vector<TraceStep> steps;
    std::vector<double> cumulative;

    void push(std::string branch, double inst_regret);
    double final_regret() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
    std::size_t size() const { return steps.size(); }
};

// theta*^T (2 a* - a0 - a1)
double instantaneous_regret(std::span<const double> theta_star, std::span<const double> best,
                            std::span<const double> a0, std::span<const double> a1);

} // namespace raes
