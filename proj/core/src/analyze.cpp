#include "locmix/analyze.hpp"

#include <algorithm>
#include <map>

namespace locmix {

std::vector<int> high_degree_inputs(const LocalFunction& f, int A) {
    require(A >= 1, "degree threshold A must be >= 1");
    require_valid(f);
    const DegreeProfile profile = degree_profile(f);
    std::vector<int> s;
    for (int i = 0; i < f.m; ++i) {
        // degree >= n/A without rounding: A * degree >= n.
        if (static_cast<long>(profile.degrees[i]) * A >= f.n) s.push_back(i);
    }
    return s;
}

std::vector<int> find_exception_set(const LocalFunction& f_rho, int k,
                                    const Rat& gamma,
                                    const EnumerationLimits& limits) {
    const ExactDistribution dist = output_distribution(f_rho, limits);
    return kwise_violations(dist, k, gamma).exception_set;
}

ConditioningReport condition_and_bias(const LocalFunction& f,
                                      const std::vector<int>& conditioned,
                                      int d, const Rat& radius, int k,
                                      const EnumerationLimits& limits) {
    require_valid(f);
    require(d >= 0 && d <= 20, "d outside [0,20]");
    require(radius >= 0, "radius must be nonnegative");
    require(static_cast<int>(conditioned.size()) <= 20,
            "too many conditioned inputs");
    for (size_t j = 0; j < conditioned.size(); ++j) {
        require(conditioned[j] >= 0 && conditioned[j] < f.m,
                "conditioned input out of range");
        require(j == 0 || conditioned[j] > conditioned[j - 1],
                "conditioned inputs not sorted/distinct");
    }

    ConditioningReport report;
    report.conditioned_inputs = conditioned;
    report.d = d;
    report.radius = radius;
    report.tuple_size = k;

    const Int full = pow2_int(d);
    const std::uint64_t count = std::uint64_t{1} << conditioned.size();
    for (std::uint64_t r = 0; r < count; ++r) {
        std::map<int, int> assignment;
        ConditioningEntry entry;
        for (size_t t = 0; t < conditioned.size(); ++t) {
            const int bit = (r >> t) & 1;
            assignment[conditioned[t]] = bit;
            entry.rho.push_back(static_cast<std::uint8_t>(bit));
        }

        const LocalFunction f_rho = restrict_inputs(f, assignment);
        const ExactDistribution dist = output_distribution(f_rho, limits);
        entry.weights = weight_distribution(dist);

        for (int w = 0; w <= f.n; ++w)
            entry.mean_weight += Rat(w) * entry.weights.prob(w);

        Rat scaled = entry.mean_weight * Rat(full) / Rat(f.n);
        Int nearest = round_nearest_ties_down(scaled);
        if (nearest < 0) nearest = 0;
        if (nearest > full) nearest = full;
        entry.a = static_cast<int>(nearest.get_si());
        entry.gamma = Rat(Int(entry.a), full);
        entry.gamma.canonicalize();

        for (int w = 0; w <= f.n; ++w) {
            Rat dev = rat_abs(Rat(w) / Rat(f.n) - entry.gamma);
            if (dev > radius) entry.escape_mass += entry.weights.prob(w);
            if (w % 2 == 0) entry.parity_even_prob += entry.weights.prob(w);
        }

        entry.exception_set = kwise_violations(dist, k, entry.gamma).exception_set;

        entry.kolmogorov_to_bin =
            kolmogorov(entry.weights, binomial_weights(f.n, entry.gamma));
        auto gaps = parity_split_kolmogorov(entry.weights, entry.parity_even_prob);
        entry.even_gap = gaps.first;
        entry.odd_gap = gaps.second;

        report.entries.push_back(std::move(entry));
    }
    return report;
}

ContinuityResult continuity_profile(const WeightDistribution& w, int delta,
                                    bool parity_constrained) {
    require(delta >= 0 && delta <= w.n(), "delta outside [0,n]");
    if (parity_constrained)
        require(delta % 2 == 0, "parity-constrained profile needs even delta");
    ContinuityResult result;
    for (int k = 0; k + delta <= w.n(); ++k)
        result.max_gap = std::max(result.max_gap,
                                  rat_abs(w.prob(k) - w.prob(k + delta)));
    if (delta > 0) result.ratio = result.max_gap * Rat(w.n()) / Rat(delta);
    return result;
}

KolmogorovConformance kolmogorov_conformance(const LocalFunction& f_rho,
                                             const Rat& gamma,
                                             const EnumerationLimits& limits) {
    require(gamma >= 0 && gamma <= 1, "gamma outside [0,1]");
    const WeightDistribution w =
        weight_distribution(output_distribution(f_rho, limits));
    KolmogorovConformance result;
    result.distance_to_bin = kolmogorov(w, binomial_weights(f_rho.n, gamma));
    for (int k = 0; k <= f_rho.n; k += 2) result.eta += w.prob(k);
    auto gaps = parity_split_kolmogorov(w, result.eta);
    result.even_gap = gaps.first;
    result.odd_gap = gaps.second;
    return result;
}

F2Polynomial gate_anf(const OutputGate& gate, int vars) {
    // Moebius transform over the gate's cube: coefficient of the subset v is
    // the xor of table entries below v.
    std::vector<std::uint8_t> coeff = gate.table;
    const int k = gate.fan_in();
    for (int bit = 0; bit < k; ++bit) {
        const std::uint64_t mask = std::uint64_t{1} << bit;
        for (std::uint64_t v = 0; v < coeff.size(); ++v)
            if (v & mask) coeff[v] ^= coeff[v ^ mask];
    }
    F2Polynomial p;
    p.vars = vars;
    for (std::uint64_t v = 0; v < coeff.size(); ++v) {
        if (!coeff[v]) continue;
        std::vector<int> mon;
        for (int j = 0; j < k; ++j)
            if ((v >> j) & 1) mon.push_back(gate.inputs[j]);
        p.monomials.push_back(std::move(mon));
    }
    p.normalize();
    return p;
}

F2Polynomial parity_polynomial(const LocalFunction& f) {
    require_valid(f);
    F2Polynomial acc = F2Polynomial::zero(f.m);
    for (const OutputGate& gate : f.outputs) acc = acc ^ gate_anf(gate, f.m);
    return acc;
}

ClassificationResult classify(const LocalFunction& f, int d, int A,
                              const Rat& radius, int k,
                              const EnumerationLimits& limits) {
    require_valid(f);
    require(d >= 0 && d <= 20, "d outside [0,20]");
    const Rat effective_radius =
        (radius < 0) ? Rat(1, 10) * dyadic(1, d) : radius;

    const std::vector<int> s = high_degree_inputs(f, A);
    ConditioningReport report =
        condition_and_bias(f, s, d, effective_radius, k, limits);

    ClassificationResult result;
    result.spec.d = d;
    result.spec.granularity_log2 = static_cast<int>(s.size());
    result.spec.c.assign(result.spec.slots(), Rat(0));

    const Rat share = dyadic(1, s.size());
    for (const ConditioningEntry& entry : report.entries) {
        if (result.spec.has_half_slot() && entry.a == result.spec.half_slot()) {
            result.spec.c_e += share * entry.parity_even_prob;
            result.spec.c_o += share * (Rat(1) - entry.parity_even_prob);
        } else {
            result.spec.c[entry.a] += share;
        }
    }
    result.spec.validate();

    // Full output distribution as the balanced mixture of the conditionings.
    std::map<int, int> assignment;
    std::vector<Rat> probs(std::uint64_t{1} << f.n, Rat(0));
    for (std::uint64_t r = 0; r < report.entries.size(); ++r) {
        assignment.clear();
        for (size_t t = 0; t < s.size(); ++t) assignment[s[t]] = (r >> t) & 1;
        const ExactDistribution dist =
            output_distribution(restrict_inputs(f, assignment), limits);
        for (std::uint64_t y = 0; y < probs.size(); ++y)
            probs[y] += share * dist.prob(y);
    }
    const ExactDistribution full =
        ExactDistribution::from_probabilities(f.n, std::move(probs));

    result.tv_string = tv(full, mixture_strings(result.spec, f.n));
    result.tv_weight =
        tv(weight_distribution(full), mixture_weights(result.spec, f.n));
    result.tv_symmetrization = tv(full, symmetrize(full));
    result.report = std::move(report);
    return result;
}

}  // namespace locmix
