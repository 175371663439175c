#include "locmix/distribution.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <thread>

#include <json.hpp>

namespace locmix {

namespace {

int popcount64(std::uint64_t x) { return std::popcount(x); }

void check_probability_vector(const std::vector<Rat>& p) {
    Rat sum(0);
    for (const Rat& x : p) {
        require_input(x >= 0, "negative probability");
        sum += x;
    }
    require_input(sum == 1, "probabilities do not sum to 1");
}

}  // namespace

ExactDistribution ExactDistribution::from_probabilities(int n,
                                                        std::vector<Rat> probs) {
    require_input(n >= 0 && n < 63, "dimension out of range");
    require_input(probs.size() == (std::uint64_t{1} << n),
                  "probability vector has wrong length");
    check_probability_vector(probs);
    ExactDistribution d;
    d.n_ = n;
    d.p_ = std::move(probs);
    return d;
}

ExactDistribution ExactDistribution::from_counts(int n,
                                                 const std::vector<Int>& counts,
                                                 const Int& denom) {
    require_input(denom > 0, "nonpositive denominator");
    std::vector<Rat> probs;
    probs.reserve(counts.size());
    for (const Int& c : counts) {
        Rat r(c, denom);
        r.canonicalize();
        probs.push_back(std::move(r));
    }
    return from_probabilities(n, std::move(probs));
}

bool ExactDistribution::is_dyadic(unsigned* denom_log2) const {
    unsigned max_k = 0;
    for (const Rat& x : p_) {
        unsigned k = 0;
        if (!locmix::is_dyadic(x, &k)) return false;
        max_k = std::max(max_k, k);
    }
    if (denom_log2) *denom_log2 = max_k;
    return true;
}

bool ExactDistribution::is_symmetric() const {
    const WeightDistribution w = weight_distribution(*this);
    for (std::uint64_t x = 0; x < size(); ++x) {
        int wt = popcount64(x);
        if (p_[x] * binomial(n_, wt) != w.prob(wt)) return false;
    }
    return true;
}

WeightDistribution WeightDistribution::from_probabilities(int n,
                                                          std::vector<Rat> probs) {
    require_input(n >= 0, "dimension out of range");
    require_input(probs.size() == static_cast<size_t>(n) + 1,
                  "weight vector has wrong length");
    check_probability_vector(probs);
    WeightDistribution d;
    d.n_ = n;
    d.p_ = std::move(probs);
    return d;
}

std::vector<double> WeightDistribution::as_doubles() const {
    std::vector<double> v(p_.size());
    for (size_t i = 0; i < p_.size(); ++i) v[i] = to_double(p_[i]);
    return v;
}

// ---------------------------------------------------------------------------
// Named distributions
// ---------------------------------------------------------------------------

namespace {

ExactDistribution parity_uniform(int n, int parity) {
    require(n >= 1, "parity distribution requires n >= 1");
    require(n < 63, "dimension out of range");
    std::vector<Rat> p(std::uint64_t{1} << n, Rat(0));
    Rat mass = dyadic(1, n - 1);
    for (std::uint64_t x = 0; x < p.size(); ++x)
        if ((popcount64(x) & 1) == parity) p[x] = mass;
    return ExactDistribution::from_probabilities(n, std::move(p));
}

}  // namespace

ExactDistribution make_evens(int n) { return parity_uniform(n, 0); }
ExactDistribution make_odds(int n) { return parity_uniform(n, 1); }

NamedDistribution make_named(NamedKind kind, const Rat& gamma, int k,
                             std::uint64_t point) {
    NamedDistribution named;
    named.kind = kind;
    named.gamma = gamma;
    named.k = k;
    named.point = point;
    require(gamma >= 0 && gamma <= 1, "bias outside [0,1]");
    require(k >= 0, "negative weight");
    return named;
}

NamedKind named_kind_from_string(const std::string& name) {
    if (name == "evens") return NamedKind::evens;
    if (name == "odds") return NamedKind::odds;
    if (name == "fixed-weight") return NamedKind::fixed_weight;
    if (name == "biased-product") return NamedKind::biased_product;
    if (name == "binomial") return NamedKind::binomial;
    if (name == "point") return NamedKind::point;
    if (name == "uniform") return NamedKind::uniform;
    throw InputError("unknown named distribution: " + name);
}

ExactDistribution NamedDistribution::realize_strings(int n) const {
    switch (kind) {
        case NamedKind::evens: return make_evens(n);
        case NamedKind::odds: return make_odds(n);
        case NamedKind::fixed_weight: return make_fixed_weight(n, k);
        case NamedKind::biased_product: return make_biased_product(n, gamma);
        case NamedKind::point: return make_point(n, point);
        case NamedKind::uniform: return make_uniform(n);
        case NamedKind::binomial:
            throw PreconditionError("binomial is a weight-level distribution");
    }
    throw PreconditionError("unreachable named kind");
}

WeightDistribution NamedDistribution::realize_weights(int n) const {
    if (kind == NamedKind::binomial) return binomial_weights(n, gamma);
    return weight_distribution(realize_strings(n));
}

ExactDistribution make_point(int n, std::uint64_t x) {
    require(n >= 0 && n < 63, "dimension out of range");
    require(n == 63 || x < (std::uint64_t{1} << n), "point outside cube");
    std::vector<Rat> p(std::uint64_t{1} << n, Rat(0));
    p[x] = 1;
    return ExactDistribution::from_probabilities(n, std::move(p));
}

ExactDistribution make_uniform(int n) { return make_biased_product(n, Rat(1, 2)); }

ExactDistribution make_biased_product(int n, const Rat& gamma) {
    require(n >= 0 && n < 63, "dimension out of range");
    require(gamma >= 0 && gamma <= 1, "bias outside [0,1]");
    std::vector<Rat> p(std::uint64_t{1} << n);
    // gamma^w (1-gamma)^(n-w) depends on the weight only; precompute per weight.
    std::vector<Rat> by_weight(n + 1);
    const Rat one_minus = Rat(1) - gamma;
    for (int w = 0; w <= n; ++w)
        by_weight[w] = rat_pow(gamma, w) * rat_pow(one_minus, n - w);
    for (std::uint64_t x = 0; x < p.size(); ++x) p[x] = by_weight[popcount64(x)];
    return ExactDistribution::from_probabilities(n, std::move(p));
}

ExactDistribution make_fixed_weight(int n, int k) {
    require(n >= 0 && n < 63, "dimension out of range");
    require(k >= 0 && k <= n, "weight outside [0,n]");
    std::vector<Rat> p(std::uint64_t{1} << n, Rat(0));
    Rat mass(Int(1), binomial(n, k));
    mass.canonicalize();
    for (std::uint64_t x = 0; x < p.size(); ++x)
        if (popcount64(x) == k) p[x] = mass;
    return ExactDistribution::from_probabilities(n, std::move(p));
}

WeightDistribution binomial_weights(int n, const Rat& gamma) {
    require(n >= 0, "dimension out of range");
    require(gamma >= 0 && gamma <= 1, "bias outside [0,1]");
    std::vector<Rat> p(n + 1);
    const Rat one_minus = Rat(1) - gamma;
    for (int w = 0; w <= n; ++w) {
        p[w] = Rat(binomial(n, w)) * rat_pow(gamma, w) * rat_pow(one_minus, n - w);
    }
    return WeightDistribution::from_probabilities(n, std::move(p));
}

WeightDistribution evens_weights(int n) {
    std::vector<Rat> p(n + 1, Rat(0));
    for (int w = 0; w <= n; w += 2) {
        Rat r(binomial(n, w), pow2_int(n - 1));
        r.canonicalize();
        p[w] = r;
    }
    return WeightDistribution::from_probabilities(n, std::move(p));
}

WeightDistribution odds_weights(int n) {
    std::vector<Rat> p(n + 1, Rat(0));
    for (int w = 1; w <= n; w += 2) {
        Rat r(binomial(n, w), pow2_int(n - 1));
        r.canonicalize();
        p[w] = r;
    }
    return WeightDistribution::from_probabilities(n, std::move(p));
}

// ---------------------------------------------------------------------------
// Distances and transforms
// ---------------------------------------------------------------------------

Rat tv(const ExactDistribution& p, const ExactDistribution& q) {
    require_input(p.n() == q.n(), "dimension mismatch");
    Rat sum(0);
    for (std::uint64_t x = 0; x < p.size(); ++x)
        sum += rat_abs(p.prob(x) - q.prob(x));
    return sum / 2;
}

Rat tv(const WeightDistribution& p, const WeightDistribution& q) {
    require_input(p.n() == q.n(), "dimension mismatch");
    Rat sum(0);
    for (int w = 0; w <= p.n(); ++w) sum += rat_abs(p.prob(w) - q.prob(w));
    return sum / 2;
}

WeightDistribution weight_distribution(const ExactDistribution& p) {
    std::vector<Rat> w(p.n() + 1, Rat(0));
    for (std::uint64_t x = 0; x < p.size(); ++x) w[popcount64(x)] += p.prob(x);
    return WeightDistribution::from_probabilities(p.n(), std::move(w));
}

ExactDistribution symmetrize(const ExactDistribution& p) {
    const WeightDistribution w = weight_distribution(p);
    std::vector<Rat> mass_by_weight(p.n() + 1);
    for (int k = 0; k <= p.n(); ++k) {
        Rat r = w.prob(k) / Rat(binomial(p.n(), k));
        mass_by_weight[k] = std::move(r);
    }
    std::vector<Rat> out(p.size());
    for (std::uint64_t x = 0; x < p.size(); ++x)
        out[x] = mass_by_weight[popcount64(x)];
    return ExactDistribution::from_probabilities(p.n(), std::move(out));
}

namespace {

// Tails Pr[W >= t] for t = 0..n+1.
std::vector<Rat> tails(const WeightDistribution& w) {
    std::vector<Rat> t(w.n() + 2, Rat(0));
    for (int k = w.n(); k >= 0; --k) t[k] = t[k + 1] + w.prob(k);
    return t;
}

}  // namespace

Rat kolmogorov(const WeightDistribution& w1, const WeightDistribution& w2) {
    require_input(w1.n() == w2.n(), "dimension mismatch");
    const std::vector<Rat> t1 = tails(w1), t2 = tails(w2);
    Rat best(0);
    for (size_t t = 0; t < t1.size(); ++t)
        best = std::max(best, rat_abs(t1[t] - t2[t]));
    return best;
}

std::pair<Rat, Rat> parity_split_kolmogorov(const WeightDistribution& w,
                                            const Rat& eta) {
    require(eta >= 0 && eta <= 1, "eta outside [0,1]");
    const int n = w.n();
    const WeightDistribution bin = binomial_weights(n, Rat(1, 2));
    const std::vector<Rat> bin_tail = tails(bin);
    std::vector<Rat> even_tail(n + 2, Rat(0)), odd_tail(n + 2, Rat(0));
    for (int k = n; k >= 0; --k) {
        even_tail[k] = even_tail[k + 1] + ((k % 2 == 0) ? w.prob(k) : Rat(0));
        odd_tail[k] = odd_tail[k + 1] + ((k % 2 == 1) ? w.prob(k) : Rat(0));
    }
    Rat even_gap(0), odd_gap(0);
    const Rat odd_eta = Rat(1) - eta;
    for (int t = 0; t <= n; ++t) {
        even_gap = std::max(even_gap, rat_abs(even_tail[t] - eta * bin_tail[t]));
        odd_gap = std::max(odd_gap, rat_abs(odd_tail[t] - odd_eta * bin_tail[t]));
    }
    return {even_gap, odd_gap};
}

ExactDistribution marginal(const ExactDistribution& p,
                           const std::vector<int>& coords) {
    for (size_t j = 0; j < coords.size(); ++j) {
        require_input(coords[j] >= 0 && coords[j] < p.n(), "index out of range");
        require_input(j == 0 || coords[j] > coords[j - 1],
                      "coordinates not sorted/distinct");
    }
    const int k = static_cast<int>(coords.size());
    std::vector<Rat> out(std::uint64_t{1} << k, Rat(0));
    for (std::uint64_t x = 0; x < p.size(); ++x) {
        std::uint64_t z = 0;
        for (int j = 0; j < k; ++j) z |= ((x >> coords[j]) & 1) << j;
        out[z] += p.prob(x);
    }
    return ExactDistribution::from_probabilities(k, std::move(out));
}

Rat binary_representation_error(const Rat& gamma, int d) {
    require(gamma >= 0 && gamma <= 1, "gamma outside [0,1]");
    require(d >= 0, "negative d");
    const Rat scaled = gamma * Rat(pow2_int(d));
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num().get_mpz_t(),
               scaled.get_den().get_mpz_t());
    Rat lo = gamma - Rat(fl) / Rat(pow2_int(d));
    Rat hi = Rat(fl + 1) / Rat(pow2_int(d)) - gamma;
    return std::min(lo, hi);
}

KwiseReport kwise_violations(const ExactDistribution& p, int k, const Rat& gamma) {
    require(k >= 1 && k <= p.n(), "k outside [1,n]");
    require(is_dyadic(gamma) && gamma >= 0 && gamma <= 1, "gamma must be dyadic in [0,1]");

    // Target product masses by weight within the tuple.
    std::vector<Rat> target(k + 1);
    const Rat one_minus = Rat(1) - gamma;
    for (int w = 0; w <= k; ++w)
        target[w] = rat_pow(gamma, w) * rat_pow(one_minus, k - w);

    KwiseReport report;
    std::vector<char> covered(p.n(), 0);

    std::vector<int> tuple(k);
    std::iota(tuple.begin(), tuple.end(), 0);
    std::vector<Rat> marg(std::uint64_t{1} << k);

    for (;;) {
        for (auto& r : marg) r = 0;
        for (std::uint64_t x = 0; x < p.size(); ++x) {
            std::uint64_t z = 0;
            for (int j = 0; j < k; ++j) z |= ((x >> tuple[j]) & 1) << j;
            marg[z] += p.prob(x);
        }
        bool violates = false;
        for (std::uint64_t z = 0; z < marg.size(); ++z)
            if (marg[z] != target[popcount64(z)]) {
                violates = true;
                break;
            }
        if (violates) {
            bool disjoint = true;
            for (int idx : tuple)
                if (covered[idx]) {
                    disjoint = false;
                    break;
                }
            if (disjoint) {
                report.violating_tuples.push_back(tuple);
                for (int idx : tuple) covered[idx] = 1;
            }
        }

        // Next k-combination in lexicographic order.
        int j = k - 1;
        while (j >= 0 && tuple[j] == p.n() - k + j) --j;
        if (j < 0) break;
        ++tuple[j];
        for (int t = j + 1; t < k; ++t) tuple[t] = tuple[t - 1] + 1;
    }

    for (int i = 0; i < p.n(); ++i)
        if (covered[i]) report.exception_set.push_back(i);
    return report;
}

ModShiftResult mod_shift_tv(int t, const Rat& gamma, int q) {
    require(t >= 1, "t must be >= 1");
    require(q >= 2, "q must be >= 2");
    require(gamma > 0 && gamma < 1, "gamma outside (0,1)");

    const WeightDistribution bin = binomial_weights(t - 1, gamma);
    std::vector<Rat> d0(q, Rat(0));
    for (int w = 0; w <= t - 1; ++w) d0[w % q] += bin.prob(w);

    Rat sum(0);
    for (int c = 0; c < q; ++c) {
        const Rat& shifted = d0[(c + q - 1) % q];  // mass of 1+|V| at c
        sum += rat_abs(d0[c] - shifted);
    }

    const double g = to_double(gamma);
    const double r = std::sin(M_PI / q) * std::sin(M_PI / q);
    const double lb = std::sqrt(r * std::pow(1.0 - 4.0 * g * (1.0 - g) * r, t - 1));
    return {sum / 2, lb};
}

// ---------------------------------------------------------------------------
// Exact output distribution of a local function
// ---------------------------------------------------------------------------

namespace {

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Gate with non-influential inputs removed; the function is unchanged.
OutputGate prune_gate(const OutputGate& gate) {
    const int k = gate.fan_in();
    std::vector<int> influential;
    for (int pos = 0; pos < k; ++pos) {
        const std::uint64_t bit = std::uint64_t{1} << pos;
        bool matters = false;
        for (std::uint64_t v = 0; v < gate.table.size(); ++v) {
            if (v & bit) continue;
            if (gate.table[v] != gate.table[v | bit]) {
                matters = true;
                break;
            }
        }
        if (matters) influential.push_back(pos);
    }
    if (static_cast<int>(influential.size()) == k) return gate;

    OutputGate out;
    for (int pos : influential) out.inputs.push_back(gate.inputs[pos]);
    out.table.resize(size_t{1} << influential.size());
    for (std::uint64_t v = 0; v < out.table.size(); ++v) {
        std::uint64_t idx = 0;
        for (size_t j = 0; j < influential.size(); ++j)
            if ((v >> j) & 1) idx |= std::uint64_t{1} << influential[j];
        out.table[v] = gate.table[idx];
    }
    return out;
}

struct Component {
    std::vector<int> gates;   // gate indices, ascending
    std::vector<int> inputs;  // global input ids, ascending
};

// Dyadic vector of preimage counts over a denominator 2^denom_log2. Every
// intermediate in the component pipeline is dyadic; rationalization happens
// once at the very end.
struct DyadicVector {
    std::vector<Int> counts;
    unsigned denom_log2 = 0;
};

// Counts over the component's gates (2^|gates| entries) by direct
// enumeration of its input assignments.
DyadicVector enumerate_component(const std::vector<OutputGate>& gates,
                                 const Component& comp, int threads,
                                 std::uint64_t& work_budget) {
    const int ni = static_cast<int>(comp.inputs.size());
    const int ng = static_cast<int>(comp.gates.size());
    const std::uint64_t total = std::uint64_t{1} << ni;
    require_resource(total <= work_budget, "enumeration work budget exceeded");
    work_budget -= total;

    // Component-local input positions per gate.
    std::map<int, int> local;
    for (int j = 0; j < ni; ++j) local[comp.inputs[j]] = j;
    std::vector<std::vector<int>> gate_pos(ng);
    for (int g = 0; g < ng; ++g)
        for (int input : gates[comp.gates[g]].inputs)
            gate_pos[g].push_back(local.at(input));

    const std::uint64_t out_size = std::uint64_t{1} << ng;
    auto run = [&](std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t>& counts) {
        for (std::uint64_t v = lo; v < hi; ++v) {
            std::uint64_t word = 0;
            for (int g = 0; g < ng; ++g) {
                std::uint64_t idx = 0;
                const auto& pos = gate_pos[g];
                for (size_t j = 0; j < pos.size(); ++j)
                    idx |= ((v >> pos[j]) & 1) << j;
                if (gates[comp.gates[g]].table[idx]) word |= std::uint64_t{1} << g;
            }
            counts[word]++;
        }
    };

    std::vector<std::uint64_t> counts(out_size, 0);
    const int nthreads = std::max(1, std::min<int>(threads, 16));
    if (nthreads == 1 || total < (std::uint64_t{1} << 16)) {
        run(0, total, counts);
    } else {
        std::vector<std::vector<std::uint64_t>> partial(
            nthreads, std::vector<std::uint64_t>(out_size, 0));
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (total + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            const std::uint64_t lo = std::min<std::uint64_t>(t * chunk, total);
            const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, total);
            pool.emplace_back([&, lo, hi, t] { run(lo, hi, partial[t]); });
        }
        for (auto& th : pool) th.join();
        // Order-independent integer merge: results identical per thread count.
        for (int t = 0; t < nthreads; ++t)
            for (std::uint64_t w = 0; w < out_size; ++w) counts[w] += partial[t][w];
    }

    DyadicVector result;
    result.denom_log2 = static_cast<unsigned>(ni);
    result.counts.reserve(out_size);
    for (std::uint64_t w = 0; w < out_size; ++w)
        result.counts.emplace_back(static_cast<unsigned long>(counts[w]));
    return result;
}

DyadicVector distribution_impl(const LocalFunction& f,
                               const EnumerationLimits& limits,
                               std::uint64_t& work_budget);

// Counts over one component's gates, conditioning recursively when the
// component has too many inputs to enumerate directly.
DyadicVector component_distribution(const std::vector<OutputGate>& gates,
                                    const Component& comp,
                                    const EnumerationLimits& limits,
                                    std::uint64_t& work_budget) {
    // Conditioning on a high-degree input usually disconnects a large
    // component (selector bits, shared masks), so split well below the hard
    // cap; a component that stays connected costs the same enumeration work
    // spread over the recursion. The total work budget is the actual limit.
    const int split_bits = std::min(limits.max_enum_bits, 18);
    if (static_cast<int>(comp.inputs.size()) <= split_bits)
        return enumerate_component(gates, comp, limits.threads, work_budget);

    // Sub-function holding just this component, then split on the input of
    // largest degree within it.
    LocalFunction sub;
    sub.n = static_cast<int>(comp.gates.size());
    sub.m = static_cast<int>(comp.inputs.size());
    std::map<int, int> local;
    for (int j = 0; j < sub.m; ++j) local[comp.inputs[j]] = j;
    sub.d = 0;
    for (int g : comp.gates) {
        OutputGate gate = gates[g];
        for (int& input : gate.inputs) input = local.at(input);
        sub.d = std::max(sub.d, gate.fan_in());
        sub.outputs.push_back(std::move(gate));
    }

    const DegreeProfile deg = degree_profile(sub);
    const int pivot = static_cast<int>(
        std::max_element(deg.degrees.begin(), deg.degrees.end()) -
        deg.degrees.begin());

    DyadicVector zero = distribution_impl(restrict_inputs(sub, {{pivot, 0}}),
                                          limits, work_budget);
    DyadicVector one = distribution_impl(restrict_inputs(sub, {{pivot, 1}}),
                                         limits, work_budget);
    // Halved mixture: align denominators and add one to the exponent.
    const unsigned e = std::max(zero.denom_log2, one.denom_log2);
    const Int scale0 = pow2_int(e - zero.denom_log2);
    const Int scale1 = pow2_int(e - one.denom_log2);
    DyadicVector mix;
    mix.denom_log2 = e + 1;
    mix.counts.resize(zero.counts.size());
    for (size_t i = 0; i < mix.counts.size(); ++i)
        mix.counts[i] = zero.counts[i] * scale0 + one.counts[i] * scale1;
    return mix;
}

DyadicVector distribution_impl(const LocalFunction& f,
                               const EnumerationLimits& limits,
                               std::uint64_t& work_budget) {
    std::vector<OutputGate> pruned;
    pruned.reserve(f.outputs.size());
    for (const OutputGate& g : f.outputs) pruned.push_back(prune_gate(g));

    DisjointSets sets(std::max(1, f.m));
    for (const OutputGate& g : pruned)
        for (size_t j = 1; j < g.inputs.size(); ++j)
            sets.unite(g.inputs[0], g.inputs[j]);

    // Group gates: constant gates each form a trivial component.
    std::map<int, Component> by_root;
    std::vector<Component> components;
    for (int g = 0; g < static_cast<int>(pruned.size()); ++g) {
        if (pruned[g].inputs.empty()) {
            Component c;
            c.gates.push_back(g);
            components.push_back(std::move(c));
        } else {
            by_root[sets.find(pruned[g].inputs[0])].gates.push_back(g);
        }
    }
    for (auto& [root, comp] : by_root) {
        std::vector<char> seen(f.m, 0);
        for (int g : comp.gates)
            for (int input : pruned[g].inputs)
                if (!seen[input]) {
                    seen[input] = 1;
                    comp.inputs.push_back(input);
                }
        std::sort(comp.inputs.begin(), comp.inputs.end());
        components.push_back(std::move(comp));
    }

    std::vector<DyadicVector> parts;
    parts.reserve(components.size());
    for (const Component& comp : components)
        parts.push_back(component_distribution(pruned, comp, limits, work_budget));

    // Independent components: the full distribution is their product.
    const std::uint64_t out_size = std::uint64_t{1} << f.n;
    DyadicVector full;
    full.counts.assign(out_size, Int(1));
    for (size_t c = 0; c < components.size(); ++c) {
        full.denom_log2 += parts[c].denom_log2;
        const auto& gate_ids = components[c].gates;
        for (std::uint64_t y = 0; y < out_size; ++y) {
            std::uint64_t sub = 0;
            for (size_t j = 0; j < gate_ids.size(); ++j)
                sub |= ((y >> gate_ids[j]) & 1) << j;
            full.counts[y] *= parts[c].counts[sub];
        }
    }
    return full;
}

}  // namespace

ExactDistribution output_distribution(const LocalFunction& f,
                                      const EnumerationLimits& limits) {
    require_valid(f);
    require_resource(f.n <= limits.max_output_bits,
                     "output dimension exceeds dense cap");
    std::uint64_t budget = limits.max_total_work;
    DyadicVector result = distribution_impl(f, limits, budget);
    return ExactDistribution::from_counts(f.n, result.counts,
                                          pow2_int(result.denom_log2));
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

nlohmann::json rat_json(const Rat& r) { return rat_to_string(r); }

Rat rat_from_json(const nlohmann::json& j) {
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_number_float()) return rat_from_double(j.get<double>());
    throw InputError("expected rational (string or number)");
}

}  // namespace

nlohmann::json distribution_to_json(const ExactDistribution& p) {
    nlohmann::json j;
    j["n"] = p.n();
    unsigned denom_log2 = 0;
    if (p.is_dyadic(&denom_log2)) {
        j["denom_log2"] = denom_log2;
        const Int denom = pow2_int(denom_log2);
        auto counts = nlohmann::json::array();
        for (std::uint64_t x = 0; x < p.size(); ++x) {
            Int c = p.prob(x).get_num() * (denom / p.prob(x).get_den());
            require_resource(c.fits_ulong_p(), "count too large for file format");
            counts.push_back(static_cast<std::uint64_t>(c.get_ui()));
        }
        j["counts"] = std::move(counts);
    } else {
        auto probs = nlohmann::json::array();
        for (std::uint64_t x = 0; x < p.size(); ++x) probs.push_back(rat_json(p.prob(x)));
        j["probs"] = std::move(probs);
    }
    return j;
}

ExactDistribution distribution_from_json(const nlohmann::json& j) {
    try {
        const int n = j.at("n").get<int>();
        if (j.contains("counts")) {
            const unsigned d = j.at("denom_log2").get<unsigned>();
            std::vector<Int> counts;
            for (const auto& c : j.at("counts")) {
                if (c.is_string())
                    counts.push_back(Int(c.get<std::string>()));
                else
                    counts.push_back(Int(static_cast<unsigned long>(c.get<std::uint64_t>())));
            }
            return ExactDistribution::from_counts(n, counts, pow2_int(d));
        }
        std::vector<Rat> probs;
        for (const auto& v : j.at("probs")) probs.push_back(rat_from_json(v));
        return ExactDistribution::from_probabilities(n, std::move(probs));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed distribution JSON: ") + e.what());
    }
}

nlohmann::json weights_to_json(const WeightDistribution& w) {
    nlohmann::json j;
    j["n"] = w.n();
    auto arr = nlohmann::json::array();
    for (int k = 0; k <= w.n(); ++k) arr.push_back(rat_json(w.prob(k)));
    j["weights"] = std::move(arr);
    return j;
}

WeightDistribution weights_from_json(const nlohmann::json& j) {
    try {
        const int n = j.at("n").get<int>();
        std::vector<Rat> probs;
        for (const auto& v : j.at("weights")) probs.push_back(rat_from_json(v));
        return WeightDistribution::from_probabilities(n, std::move(probs));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed weight JSON: ") + e.what());
    }
}

void save_distribution(const ExactDistribution& p, const std::string& path) {
    std::ofstream out(path);
    require_input(out.good(), "cannot open for writing: " + path);
    out << distribution_to_json(p).dump(2) << "\n";
}

void save_weights(const WeightDistribution& w, const std::string& path) {
    std::ofstream out(path);
    require_input(out.good(), "cannot open for writing: " + path);
    out << weights_to_json(w).dump(2) << "\n";
}

LoadedDistribution load_any_distribution(const std::string& path) {
    std::ifstream in(path);
    require_input(in.good(), "cannot open for reading: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed JSON in ") + path + ": " + e.what());
    }
    LoadedDistribution loaded;
    if (j.contains("weights")) {
        loaded.is_weights = true;
        loaded.weights = weights_from_json(j);
    } else {
        loaded.dense = distribution_from_json(j);
    }
    return loaded;
}

}  // namespace locmix
