#include "raes/trace.hpp"

#include "raes/linalg.hpp"

namespace raes {

void RegretTrace::push(std::string branch, double inst_regret) {
    const long t = static_cast<long>(steps.size()) + 1;
    steps.push_back(TraceStep{t, std::move(branch), inst_regret});
    cumulative.push_back((cumulative.empty() ? 0.0 : cumulative.back()) + inst_regret);
}

double instantaneous_regret(std::span<const double> theta_star, std::span<const double> best,
                            std::span<const double> a0, std::span<const double> a1) {
    return 2.0 * dot(theta_star, best) - dot(theta_star, a0) - dot(theta_star, a1);
}

} // namespace raes
