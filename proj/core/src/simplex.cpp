#include "locmix/simplex.hpp"

#include "locmix/errors.hpp"

namespace locmix {

namespace {

// Dense tableau: rows 0..m-1 are constraints with the rhs in the last
// column; row m is the reduced-cost row. basis[i] is the variable basic in
// row i. Bland's rule on both choices prevents cycling.
class Tableau {
public:
    Tableau(int m, int n) : m_(m), n_(n), cells_(m + 1, std::vector<Rat>(n + 1, Rat(0))), basis_(m, -1) {}

    Rat& at(int i, int j) { return cells_[i][j]; }
    Rat& rhs(int i) { return cells_[i][n_]; }
    Rat& cost(int j) { return cells_[m_][j]; }
    Rat& objective() { return cells_[m_][n_]; }
    int& basis(int i) { return basis_[i]; }

    void pivot(int row, int col) {
        const Rat p = cells_[row][col];
        for (int j = 0; j <= n_; ++j) cells_[row][j] /= p;
        for (int i = 0; i <= m_; ++i) {
            if (i == row) continue;
            const Rat factor = cells_[i][col];
            if (factor == 0) continue;
            for (int j = 0; j <= n_; ++j) cells_[i][j] -= factor * cells_[row][j];
        }
        basis_[row] = col;
    }

    // Returns false if unbounded.
    bool run(int limit_cols) {
        for (;;) {
            int entering = -1;
            for (int j = 0; j < limit_cols; ++j)
                if (cells_[m_][j] < 0) {
                    entering = j;
                    break;
                }
            if (entering < 0) return true;
            int leaving = -1;
            Rat best_ratio;
            for (int i = 0; i < m_; ++i) {
                if (cells_[i][entering] <= 0) continue;
                Rat ratio = cells_[i][n_] / cells_[i][entering];
                if (leaving < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leaving])) {
                    leaving = i;
                    best_ratio = ratio;
                }
            }
            if (leaving < 0) return false;
            pivot(leaving, entering);
        }
    }

    int m_, n_;
    std::vector<std::vector<Rat>> cells_;
    std::vector<int> basis_;
};

}  // namespace

LpSolution solve_lp(const LpProblem& problem) {
    const int m = static_cast<int>(problem.rows.size());
    const int n = static_cast<int>(problem.objective.size());
    require_input(problem.rhs.size() == static_cast<size_t>(m), "rhs size mismatch");
    for (const auto& row : problem.rows)
        require_input(row.size() == static_cast<size_t>(n), "row size mismatch");

    // Phase 1: artificials on every row, rhs made nonnegative first.
    Tableau t(m, n + m);
    for (int i = 0; i < m; ++i) {
        const bool flip = problem.rhs[i] < 0;
        for (int j = 0; j < n; ++j)
            t.at(i, j) = flip ? Rat(-problem.rows[i][j]) : problem.rows[i][j];
        t.rhs(i) = flip ? Rat(-problem.rhs[i]) : problem.rhs[i];
        t.at(i, n + i) = 1;
        t.basis(i) = n + i;
    }
    for (int i = 0; i < m; ++i) t.cost(n + i) = 1;
    // Price out the artificial basis.
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= t.n_; ++j) t.cells_[t.m_][j] -= t.cells_[i][j];

    if (!t.run(t.n_)) {
        LpSolution s;
        s.status = LpSolution::Status::infeasible;
        return s;
    }
    if (t.objective() != 0) {
        LpSolution s;
        s.status = LpSolution::Status::infeasible;
        return s;
    }
    // Drive remaining artificials out of the basis. A degenerate pivot on any
    // nonzero real coefficient keeps feasibility (the row's rhs is zero); a
    // row with no real coefficient left is redundant and gets dropped below.
    for (int i = 0; i < m; ++i) {
        if (t.basis(i) < n) continue;
        for (int j = 0; j < n; ++j)
            if (t.at(i, j) != 0) {
                t.pivot(i, j);
                break;
            }
    }

    // Phase 2 on a clean tableau without artificial columns.
    std::vector<int> kept;
    for (int i = 0; i < m; ++i)
        if (t.basis(i) < n) kept.push_back(i);

    Tableau t2(static_cast<int>(kept.size()), n);
    for (size_t r = 0; r < kept.size(); ++r) {
        for (int j = 0; j < n; ++j) t2.at(static_cast<int>(r), j) = t.at(kept[r], j);
        t2.rhs(static_cast<int>(r)) = t.rhs(kept[r]);
        t2.basis(static_cast<int>(r)) = t.basis(kept[r]);
    }
    for (int j = 0; j < n; ++j) t2.cost(j) = problem.objective[j];
    for (size_t r = 0; r < kept.size(); ++r) {
        const Rat factor = t2.cost(t2.basis(static_cast<int>(r)));
        if (factor == 0) continue;
        for (int j = 0; j <= t2.n_; ++j)
            t2.cells_[t2.m_][j] -= factor * t2.cells_[static_cast<int>(r)][j];
    }

    if (!t2.run(n)) {
        LpSolution s;
        s.status = LpSolution::Status::unbounded;
        return s;
    }

    LpSolution s;
    s.status = LpSolution::Status::optimal;
    s.x.assign(n, Rat(0));
    for (int r = 0; r < t2.m_; ++r) s.x[t2.basis(r)] = t2.rhs(r);
    s.objective = 0;
    for (int j = 0; j < n; ++j) s.objective += problem.objective[j] * s.x[j];
    return s;
}

}  // namespace locmix
