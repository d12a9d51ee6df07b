#pragma once

#include <cstddef>

namespace molsrl::solver {

/// Linear exploration schedule: start -> end over `anneal_episodes`, then flat.
struct EpsilonSchedule {
    double start = 1.0;
    double end = 0.05;
    std::size_t anneal_episodes = 2000;

    double operator()(std::size_t episode) const;
};

}  // namespace molsrl::solver
