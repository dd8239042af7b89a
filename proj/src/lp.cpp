#include "mgmw/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mgmw {

int LpProblem::add_variable(double cost) {
    objective.push_back(cost);
    for (auto& r : rows) r.push_back(0.0);
    return variable_count() - 1;
}

void LpProblem::add_row(std::vector<double> coeffs, Sense s, double b) {
    coeffs.resize(objective.size(), 0.0);
    rows.push_back(std::move(coeffs));
    senses.push_back(s);
    rhs.push_back(b);
}

namespace {

constexpr double kPivotEps = 1e-9;
constexpr double kFeasEps = 1e-9;
constexpr int kRefactorEvery = 64;

struct Tableau {
    int m = 0;  // constraint rows
    int cols = 0;
    std::vector<std::vector<double>> a0;  // original rows, for refactoring
    std::vector<double> b0;
    std::vector<std::vector<double>> a;  // m x cols, current B^-1 A
    std::vector<double> b;               // m
    std::vector<int> basis;              // m
    std::vector<double> c;               // current objective (maximisation)
    std::vector<double> d;               // reduced costs
    double value = 0.0;
    std::vector<bool> allowed;           // columns that may enter
    long pivots = 0;

    void pivot(int r, int s) {
        const double p = a[r][s];
        for (int j = 0; j < cols; ++j) a[r][j] /= p;
        b[r] /= p;
        a[r][s] = 1.0;
        for (int i = 0; i < m; ++i) {
            if (i == r) continue;
            const double f = a[i][s];
            if (f == 0.0) continue;
            for (int j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
            a[i][s] = 0.0;
            b[i] -= f * b[r];
            if (b[i] < 0.0 && b[i] > -kFeasEps) b[i] = 0.0;
        }
        basis[r] = s;
        if (++pivots % kRefactorEvery == 0) refactor();
        price();
    }

    // Rebuild B^-1 [A | b] from the original rows so rounding does not pile up.
    void refactor() {
        std::vector<std::vector<double>> w(m, std::vector<double>(cols + 1));
        for (int i = 0; i < m; ++i) {
            std::copy(a0[i].begin(), a0[i].end(), w[i].begin());
            w[i][cols] = b0[i];
        }
        std::vector<int> order(basis);
        for (int k = 0; k < m; ++k) {
            const int col = order[k];
            int piv = k;
            for (int i = k + 1; i < m; ++i) {
                if (std::abs(w[i][col]) > std::abs(w[piv][col])) piv = i;
            }
            if (std::abs(w[piv][col]) < 1e-12) return;  // keep the running tableau
            std::swap(w[k], w[piv]);
            const double p = w[k][col];
            for (double& v : w[k]) v /= p;
            for (int i = 0; i < m; ++i) {
                if (i == k || w[i][col] == 0.0) continue;
                const double f = w[i][col];
                for (int j = 0; j <= cols; ++j) w[i][j] -= f * w[k][j];
            }
        }
        for (int i = 0; i < m; ++i) {
            a[i].assign(w[i].begin(), w[i].begin() + cols);
            for (int bc : order) a[i][bc] = 0.0;
            a[i][order[i]] = 1.0;
            b[i] = w[i][cols];
            if (b[i] < 0.0 && b[i] > -kFeasEps) b[i] = 0.0;
        }
        basis = order;
    }

    void price() {
        d = c;
        value = 0.0;
        for (int i = 0; i < m; ++i) {
            const double cb = c[basis[i]];
            if (cb == 0.0) continue;
            for (int j = 0; j < cols; ++j) d[j] -= cb * a[i][j];
            value += cb * b[i];
        }
    }

    void set_objective(std::vector<double> obj) {
        c = std::move(obj);
        price();
    }

    enum class Outcome { optimal, unbounded, stalled };

    // Bland's rule: first improving column, ties in the ratio test by lowest
    // basic index.
    Outcome run(double tol, long max_pivots) {
        for (long it = 0; it < max_pivots; ++it) {
            int s = -1;
            for (int j = 0; j < cols; ++j) {
                if (allowed[j] && d[j] > tol) {
                    s = j;
                    break;
                }
            }
            if (s < 0) return Outcome::optimal;
            int r = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m; ++i) {
                if (a[i][s] <= kPivotEps) continue;
                const double ratio = std::max(b[i], 0.0) / a[i][s];
                const double slack = 1e-12 * std::max(1.0, std::abs(best));
                const bool better = r < 0 || ratio < best - slack ||
                                    (ratio <= best + slack && basis[i] < basis[r]);
                if (better) {
                    best = std::min(best, ratio);
                    r = i;
                }
            }
            if (r < 0) return Outcome::unbounded;
            pivot(r, s);
        }
        return Outcome::stalled;
    }
};

}  // namespace

LpSolution solve_lp(const LpProblem& p) {
    const int n = p.variable_count();
    const int m = static_cast<int>(p.rows.size());
    LpSolution sol;

    // Column layout: structural | slack/surplus | artificial. Rows are scaled
    // to unit max coefficient and flipped to a nonnegative right-hand side.
    std::vector<double> sign(m, 1.0);
    std::vector<Sense> sense(p.senses);
    for (int i = 0; i < m; ++i) {
        double big = 0.0;
        for (double v : p.rows[i]) big = std::max(big, std::abs(v));
        if (big == 0.0) big = 1.0;
        sign[i] = 1.0 / big;
        if (p.rhs[i] < 0) {
            sign[i] = -sign[i];
            if (sense[i] == Sense::le) sense[i] = Sense::ge;
            else if (sense[i] == Sense::ge) sense[i] = Sense::le;
        }
    }
    int n_slack = 0, n_art = 0;
    for (auto s : sense) {
        if (s != Sense::eq) ++n_slack;
        if (s != Sense::le) ++n_art;
    }
    Tableau t;
    t.m = m;
    t.cols = n + n_slack + n_art;
    t.a0.assign(m, std::vector<double>(t.cols, 0.0));
    t.b0.assign(m, 0.0);
    t.basis.assign(m, -1);
    int next_slack = n, next_art = n + n_slack;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) t.a0[i][j] = sign[i] * p.rows[i][j];
        t.b0[i] = sign[i] * p.rhs[i];
        if (sense[i] == Sense::le) {
            t.a0[i][next_slack] = 1.0;
            t.basis[i] = next_slack++;
        } else {
            if (sense[i] == Sense::ge) t.a0[i][next_slack++] = -1.0;
            t.a0[i][next_art] = 1.0;
            t.basis[i] = next_art++;
        }
    }
    t.a = t.a0;
    t.b = t.b0;
    const int first_art = n + n_slack;
    const long max_pivots = 200L * (m + t.cols) + 1000;
    double scale = 1.0;
    for (double v : t.b) scale = std::max(scale, std::abs(v));

    t.allowed.assign(t.cols, true);
    if (n_art > 0) {
        std::vector<double> c1(t.cols, 0.0);
        for (int j = first_art; j < t.cols; ++j) c1[j] = -1.0;
        t.set_objective(std::move(c1));
        if (t.run(1e-11, max_pivots) == Tableau::Outcome::stalled) {
            sol.status = LpStatus::stalled;
            return sol;
        }
        if (t.value < -kLpTolerance * scale) {
            sol.status = LpStatus::infeasible;
            return sol;
        }
        // Drive remaining artificials out of the basis where possible. Rows
        // where that fails are redundant and keep a zero artificial.
        for (int i = 0; i < t.m; ++i) {
            if (t.basis[i] < first_art) continue;
            int s = -1;
            double big = 1e-7;
            for (int j = 0; j < first_art; ++j) {
                if (std::abs(t.a[i][j]) > big) {
                    big = std::abs(t.a[i][j]);
                    s = j;
                }
            }
            if (s >= 0) t.pivot(i, s);
        }
        for (int j = first_art; j < t.cols; ++j) t.allowed[j] = false;
    }

    double cost_scale = 1.0;
    for (double v : p.objective) cost_scale = std::max(cost_scale, std::abs(v));
    std::vector<double> c2(t.cols, 0.0);
    for (int j = 0; j < n; ++j) c2[j] = (p.maximize ? p.objective[j] : -p.objective[j]) / cost_scale;
    t.set_objective(std::move(c2));
    switch (t.run(1e-10, max_pivots)) {
        case Tableau::Outcome::unbounded: sol.status = LpStatus::unbounded; return sol;
        case Tableau::Outcome::stalled: sol.status = LpStatus::stalled; return sol;
        case Tableau::Outcome::optimal: break;
    }
    t.refactor();
    sol.status = LpStatus::optimal;
    sol.x.assign(n, 0.0);
    for (int i = 0; i < t.m; ++i) {
        if (t.basis[i] < n) sol.x[t.basis[i]] = std::max(0.0, t.b[i]);
    }
    double obj = 0.0;
    for (int j = 0; j < n; ++j) obj += p.objective[j] * sol.x[j];
    sol.objective = obj;
    return sol;
}

double lp_violation(const LpProblem& p, const std::vector<double>& x) {
    double worst = 0.0;
    for (double v : x) worst = std::max(worst, -v);
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) lhs += p.rows[i][j] * x[j];
        const double diff = lhs - p.rhs[i];
        switch (p.senses[i]) {
            case Sense::le: worst = std::max(worst, diff); break;
            case Sense::ge: worst = std::max(worst, -diff); break;
            case Sense::eq: worst = std::max(worst, std::abs(diff)); break;
        }
    }
    return worst;
}

}  // namespace mgmw
