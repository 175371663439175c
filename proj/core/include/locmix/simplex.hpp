#pragma once

#include <vector>

#include "locmix/rational.hpp"

namespace locmix {

// Small dense linear program in standard form: minimize c.x subject to
// A x = b, x >= 0. Solved exactly over the rationals with a two-phase
// simplex under Bland's rule, so every run of the same problem pivots
// identically and terminates.
struct LpProblem {
    std::vector<std::vector<Rat>> rows;  // A
    std::vector<Rat> rhs;                // b
    std::vector<Rat> objective;          // c
};

struct LpSolution {
    enum class Status { optimal, infeasible, unbounded };
    Status status = Status::optimal;
    std::vector<Rat> x;
    Rat objective = 0;
};

LpSolution solve_lp(const LpProblem& problem);

}  // namespace locmix
