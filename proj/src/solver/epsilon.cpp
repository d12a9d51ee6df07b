#include "molsrl/solver/epsilon.hpp"

namespace molsrl::solver {

double EpsilonSchedule::operator()(std::size_t episode) const {
    if (anneal_episodes == 0 || episode >= anneal_episodes) return end;
    const double f = static_cast<double>(episode) / static_cast<double>(anneal_episodes);
    return start + (end - start) * f;
}

}  // namespace molsrl::solver
