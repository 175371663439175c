#include "locmix/decompose.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "locmix/simplex.hpp"

namespace locmix {

namespace {

// Exact Gaussian elimination with nonzero pivoting; the matrices here are
// Vandermonde on distinct rational nodes, hence nonsingular.
std::vector<Rat> solve_linear_system(std::vector<std::vector<Rat>> a,
                                     std::vector<Rat> b) {
    const int n = static_cast<int>(a.size());
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int row = col; row < n; ++row)
            if (a[row][col] != 0) {
                pivot = row;
                break;
            }
        require(pivot >= 0, "singular linear system");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (int row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0) continue;
            const Rat factor = a[row][col] / a[col][col];
            for (int j = col; j < n; ++j) a[row][j] -= factor * a[col][j];
            b[row] -= factor * b[col];
        }
    }
    std::vector<Rat> x(n);
    for (int i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

}  // namespace

SignedMixtureSpec vandermonde_decompose(const MomentProfile& profile, int d) {
    require(d >= 0 && d <= 12, "d outside [0,12]");
    const int n = profile.n;
    const long full = 1L << d;
    require(n >= full, "decomposition requires n >= 2^d");
    require(static_cast<int>(profile.moments.size()) == n + 1,
            "moment profile length mismatch");
    require(profile.moments[0] == 1, "M_0 must be 1");

    // Biased-product slots (a = 2^(d-1) excluded when d >= 1) and their nodes
    // b_a = 1 - 2a/2^d.
    std::vector<int> slots;
    for (long a = 0; a <= full; ++a) {
        if (d >= 1 && 2 * a == full) continue;
        slots.push_back(static_cast<int>(a));
    }
    std::vector<Rat> nodes;
    for (int a : slots) {
        Rat b = Rat(1) - Rat(Int(2L * a), Int(full));
        b.canonicalize();
        nodes.push_back(std::move(b));
    }

    const int k = static_cast<int>(slots.size());
    std::vector<Rat> coeff;  // per slot
    Rat lump;                // c_e + c_o

    if (n >= k + 1) {
        // Full system: the evens+odds lump is the node 0, whose moment column
        // 0^s matches its contribution (1 at s = 0, else 0). Rows s = 0..k,
        // all strictly below n, so evens/odds contribute nothing beyond the
        // lump column.
        std::vector<Rat> all_nodes = nodes;
        all_nodes.push_back(Rat(0));
        const int dim = k + 1;
        std::vector<std::vector<Rat>> a(dim, std::vector<Rat>(dim));
        std::vector<Rat> rhs(dim);
        for (int s = 0; s < dim; ++s) {
            for (int j = 0; j < dim; ++j)
                a[s][j] = (s == 0) ? Rat(1) : rat_pow(all_nodes[j], s);
            rhs[s] = profile.moments[s];
        }
        std::vector<Rat> x = solve_linear_system(std::move(a), std::move(rhs));
        coeff.assign(x.begin(), x.begin() + k);
        lump = x[k];
    } else {
        // n = 2^d exactly: the family is linearly dependent in weight space
        // and only the k moment rows s = 0..k-1 avoid the full-weight parity
        // term. Solve the square system over the biased slots alone and
        // attribute the remainder to the lump; unique on the subfamily with
        // c_e + c_o = 0 (e.g. the bitwise-AND example at n = 4).
        require(n >= k, "decomposition requires n >= number of biased slots");
        std::vector<std::vector<Rat>> a(k, std::vector<Rat>(k));
        std::vector<Rat> rhs(k);
        for (int s = 0; s < k; ++s) {
            for (int j = 0; j < k; ++j)
                a[s][j] = (s == 0) ? Rat(1) : rat_pow(nodes[j], s);
            rhs[s] = profile.moments[s];
        }
        coeff = solve_linear_system(std::move(a), std::move(rhs));
        lump = Rat(1);
        for (const Rat& c : coeff) lump -= c;
    }

    // Full-weight parity moment separates c_e from c_o.
    Rat diff = profile.moments[n];
    for (int j = 0; j < k; ++j) diff -= coeff[j] * rat_pow(nodes[j], n);

    SignedMixtureSpec spec;
    spec.d = d;
    spec.c.assign(spec.slots(), Rat(0));
    for (int j = 0; j < k; ++j) spec.c[slots[j]] = coeff[j];
    spec.c_e = (lump + diff) / 2;
    spec.c_o = (lump - diff) / 2;
    spec.validate_signed();
    return spec;
}

ConvexityReport check_convexity(const SignedMixtureSpec& spec,
                                const Rat& tolerance) {
    ConvexityReport report;
    report.representable = true;
    bool first = true;
    for (const auto& [name, value] : spec.named_coefficients()) {
        if (first || value < report.witness) {
            report.witness = value;
            report.witness_name = name;
            first = false;
        }
        if (value < -tolerance) report.representable = false;
    }
    return report;
}

namespace {

struct ResidualGroup {
    Rat multiplicity;          // weight of |target - fitted| in the objective
    Rat target;                // value to match
    std::vector<Rat> columns;  // fitted value = sum_i c_i columns[i]
};

NearestMixtureResult solve_l1_fit(int d,
                                  const std::vector<ResidualGroup>& groups) {
    // Coefficient order fixes the lexicographic tie-break: c_a ascending in
    // a (the half slot excluded), then c_e, then c_o.
    std::vector<int> slots;
    const long full = 1L << d;
    for (long a = 0; a <= full; ++a) {
        if (d >= 1 && 2 * a == full) continue;
        slots.push_back(static_cast<int>(a));
    }
    const int k = static_cast<int>(slots.size()) + 2;
    const int g = static_cast<int>(groups.size());

    // Variables: c_0..c_{k-1}, t_0..t_{g-1}, then two slacks per group.
    const int var_count = k + g + 2 * g;
    LpProblem lp;
    lp.objective.assign(var_count, Rat(0));
    for (int i = 0; i < g; ++i) lp.objective[k + i] = groups[i].multiplicity;

    auto row_of = [&](int group, bool upper) {
        std::vector<Rat> row(var_count, Rat(0));
        for (int j = 0; j < k; ++j)
            row[j] = upper ? groups[group].columns[j] : Rat(-groups[group].columns[j]);
        row[k + group] = -1;
        row[k + g + 2 * group + (upper ? 0 : 1)] = 1;
        return row;
    };
    for (int i = 0; i < g; ++i) {
        lp.rows.push_back(row_of(i, true));
        lp.rhs.push_back(groups[i].target);
        lp.rows.push_back(row_of(i, false));
        lp.rhs.push_back(Rat(-groups[i].target));
    }
    {
        std::vector<Rat> simplex_row(var_count, Rat(0));
        for (int j = 0; j < k; ++j) simplex_row[j] = 1;
        lp.rows.push_back(std::move(simplex_row));
        lp.rhs.push_back(Rat(1));
    }

    LpSolution sol = solve_lp(lp);
    require(sol.status == LpSolution::Status::optimal,
            "mixture fit LP unexpectedly not optimal");

    // Lexicographic refinement inside the optimal face: pin the objective,
    // then minimize each coefficient in order.
    LpProblem refine = lp;
    {
        std::vector<Rat> obj_row = lp.objective;
        refine.rows.push_back(std::move(obj_row));
        refine.rhs.push_back(sol.objective);
    }
    for (int j = 0; j < k; ++j) {
        LpProblem step = refine;
        step.objective.assign(var_count, Rat(0));
        step.objective[j] = 1;
        LpSolution s = solve_lp(step);
        require(s.status == LpSolution::Status::optimal,
                "mixture fit refinement LP not optimal");
        std::vector<Rat> fix_row(var_count, Rat(0));
        fix_row[j] = 1;
        refine.rows.push_back(std::move(fix_row));
        refine.rhs.push_back(s.x[j]);
        sol = s;
    }

    NearestMixtureResult result;
    result.spec.d = d;
    result.spec.c.assign((1 << d) + 1, Rat(0));
    for (size_t j = 0; j < slots.size(); ++j) result.spec.c[slots[j]] = sol.x[j];
    result.spec.c_e = sol.x[slots.size()];
    result.spec.c_o = sol.x[slots.size() + 1];
    result.spec.validate();

    Rat objective(0);
    for (int i = 0; i < g; ++i) objective += lp.objective[k + i] * sol.x[k + i];
    result.tv = objective / 2;
    return result;
}

std::vector<std::vector<Rat>> family_weight_columns(int n, int d) {
    std::vector<std::vector<Rat>> columns;
    const long full = 1L << d;
    for (long a = 0; a <= full; ++a) {
        if (d >= 1 && 2 * a == full) continue;
        Rat gamma{Int(a), Int(full)};
        gamma.canonicalize();
        columns.push_back(binomial_weights(n, gamma).probabilities());
    }
    columns.push_back(evens_weights(n).probabilities());
    columns.push_back(odds_weights(n).probabilities());
    return columns;
}

}  // namespace

NearestMixtureResult nearest_mixture(const WeightDistribution& w, int d) {
    require(w.n() >= (1 << d), "fit requires n >= 2^d");
    const auto columns = family_weight_columns(w.n(), d);
    std::vector<ResidualGroup> groups(w.n() + 1);
    for (int k = 0; k <= w.n(); ++k) {
        groups[k].multiplicity = 1;
        groups[k].target = w.prob(k);
        for (const auto& col : columns) groups[k].columns.push_back(col[k]);
    }
    return solve_l1_fit(d, groups);
}

NearestMixtureResult nearest_mixture(const ExactDistribution& p, int d,
                                     FitLevel level) {
    if (level == FitLevel::weight || p.is_symmetric()) {
        // For symmetric p the string-level objective against a symmetric
        // mixture collapses exactly to the weight-level one.
        return nearest_mixture(weight_distribution(p), d);
    }

    require(p.n() <= 14, "string-level fit capped at n <= 14");
    require(p.n() >= (1 << d), "fit requires n >= 2^d");
    const int n = p.n();
    const auto columns = family_weight_columns(n, d);

    // Residuals grouped by (weight, probability value): all strings in a
    // group share |P(x) - q_w / C(n,w)|.
    std::map<std::pair<int, Rat>, long> group_sizes;
    for (std::uint64_t x = 0; x < p.size(); ++x)
        group_sizes[{std::popcount(x), p.prob(x)}]++;
    require_resource(group_sizes.size() <= 2048,
                     "string-level fit has too many residual classes");

    std::vector<ResidualGroup> groups;
    for (const auto& [key, count] : group_sizes) {
        const auto& [w, value] = key;
        ResidualGroup group;
        group.multiplicity = Rat(Int(count));
        group.target = value;
        const Rat scale(Int(1), binomial(n, w));
        for (const auto& col : columns) {
            Rat c = col[w] * scale;
            c.canonicalize();
            group.columns.push_back(std::move(c));
        }
        groups.push_back(std::move(group));
    }
    return solve_l1_fit(d, groups);
}

}  // namespace locmix
