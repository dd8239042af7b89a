#pragma once

#include <vector>

namespace mgmw {

enum class Sense { le, eq, ge };
enum class LpStatus { optimal, infeasible, unbounded, stalled };

// Dense LP over nonnegative variables:
//   maximize (or minimize) c.x  subject to  A_i.x (<=,=,>=) b_i,  x >= 0.
struct LpProblem {
    bool maximize = true;
    std::vector<double> objective;
    std::vector<std::vector<double>> rows;
    std::vector<Sense> senses;
    std::vector<double> rhs;

    int add_variable(double cost = 0.0);  // appends a zero column, returns its index
    void add_row(std::vector<double> coeffs, Sense s, double b);
    int variable_count() const { return static_cast<int>(objective.size()); }
};

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    std::vector<double> x;
    double objective = 0.0;
};

constexpr double kLpTolerance = 1e-8;

// Two-phase tableau simplex with Bland's rule. Never throws on infeasible or
// unbounded input; those are reported through status.
LpSolution solve_lp(const LpProblem& p);

// Largest violation of any constraint or bound by x (0 when feasible).
double lp_violation(const LpProblem& p, const std::vector<double>& x);

}  // namespace mgmw
