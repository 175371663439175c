#include "locmix/mixture.hpp"

#include <fstream>

#include <json.hpp>

namespace locmix {

Rat SignedMixtureSpec::coefficient_sum() const {
    Rat sum = c_e + c_o;
    for (const Rat& x : c) sum += x;
    return sum;
}

void SignedMixtureSpec::validate_signed() const {
    require(d >= 0 && d <= 20, "mixture d outside [0,20]");
    require(static_cast<int>(c.size()) == slots(), "coefficient vector length");
    if (has_half_slot())
        require(c[half_slot()] == 0, "slot a = 2^(d-1) must be zero");
    require(coefficient_sum() == 1, "coefficients must sum to 1");
}

std::vector<std::pair<std::string, Rat>> SignedMixtureSpec::named_coefficients()
    const {
    std::vector<std::pair<std::string, Rat>> out;
    for (int a = 0; a < slots(); ++a) {
        if (has_half_slot() && a == half_slot()) continue;
        out.emplace_back("a=" + std::to_string(a), c[a]);
    }
    out.emplace_back("c_e", c_e);
    out.emplace_back("c_o", c_o);
    return out;
}

bool same_coefficients(const SignedMixtureSpec& x, const SignedMixtureSpec& y) {
    return x.d == y.d && x.c == y.c && x.c_e == y.c_e && x.c_o == y.c_o;
}

void MixtureSpec::validate() const {
    validate_signed();
    for (const Rat& x : c) require(x >= 0, "negative mixture coefficient");
    require(c_e >= 0 && c_o >= 0, "negative mixture coefficient");
    if (granularity_log2 >= 0) {
        const Int grid = pow2_int(granularity_log2);
        for (int a = 0; a < slots(); ++a) {
            Rat scaled = c[a] * Rat(grid);
            require(scaled.get_den() == 1,
                    "biased coefficient not on the 2^-C grid");
        }
    }
}

WeightDistribution mixture_weights(const MixtureSpec& spec, int n) {
    spec.validate();
    std::vector<Rat> w(n + 1, Rat(0));
    const Int full = pow2_int(spec.d);
    for (int a = 0; a < spec.slots(); ++a) {
        if (spec.c[a] == 0) continue;
        Rat gamma(Int(a), full);
        gamma.canonicalize();
        const WeightDistribution bin = binomial_weights(n, gamma);
        for (int k = 0; k <= n; ++k) w[k] += spec.c[a] * bin.prob(k);
    }
    if (spec.c_e != 0) {
        const WeightDistribution e = evens_weights(n);
        for (int k = 0; k <= n; ++k) w[k] += spec.c_e * e.prob(k);
    }
    if (spec.c_o != 0) {
        const WeightDistribution o = odds_weights(n);
        for (int k = 0; k <= n; ++k) w[k] += spec.c_o * o.prob(k);
    }
    return WeightDistribution::from_probabilities(n, std::move(w));
}

ExactDistribution mixture_strings(const MixtureSpec& spec, int n) {
    // All components are symmetric, so realize the weight mixture per string.
    const WeightDistribution w = mixture_weights(spec, n);
    std::vector<Rat> by_weight(n + 1);
    for (int k = 0; k <= n; ++k) by_weight[k] = w.prob(k) / Rat(binomial(n, k));
    std::vector<Rat> p(std::uint64_t{1} << n);
    for (std::uint64_t x = 0; x < p.size(); ++x)
        p[x] = by_weight[std::popcount(x)];
    return ExactDistribution::from_probabilities(n, std::move(p));
}

MixtureSpec induced_mixture(const SamplerBlueprint& bp) {
    bp.validate();
    MixtureSpec spec;
    spec.d = bp.d;
    spec.granularity_log2 = bp.selector_bits;
    spec.c.assign(spec.slots(), Rat(0));
    const Rat branch_weight = dyadic(1, bp.selector_bits);
    for (const BranchSpec& b : bp.branches) {
        if (b.type == BranchSpec::Type::bias) {
            spec.c[b.a] += branch_weight;
        } else {
            const Rat zero = b.poly.zero_probability();
            spec.c_e += branch_weight * zero;
            spec.c_o += branch_weight * (Rat(1) - zero);
        }
    }
    spec.validate();
    return spec;
}

namespace {

Rat coeff_from_json(const nlohmann::json& v) {
    if (v.is_string()) return rat_from_string(v.get<std::string>());
    if (v.is_number_integer()) return Rat(static_cast<long>(v.get<std::int64_t>()));
    if (v.is_number_float()) return rat_from_double(v.get<double>());
    throw InputError("expected rational coefficient");
}

nlohmann::json coefficients_json(const SignedMixtureSpec& spec) {
    nlohmann::json jc = nlohmann::json::object();
    for (int a = 0; a < spec.slots(); ++a) {
        if (spec.has_half_slot() && a == spec.half_slot()) continue;
        jc["a=" + std::to_string(a)] = rat_to_string(spec.c[a]);
    }
    return jc;
}

}  // namespace

nlohmann::json signed_mixture_to_json(const SignedMixtureSpec& spec) {
    nlohmann::json j;
    j["d"] = spec.d;
    j["c"] = coefficients_json(spec);
    j["c_e"] = rat_to_string(spec.c_e);
    j["c_o"] = rat_to_string(spec.c_o);
    return j;
}

nlohmann::json mixture_to_json(const MixtureSpec& spec) {
    nlohmann::json j = signed_mixture_to_json(spec);
    if (spec.granularity_log2 >= 0) j["C"] = spec.granularity_log2;
    return j;
}

MixtureSpec mixture_from_json(const nlohmann::json& j) {
    MixtureSpec spec;
    try {
        spec.d = j.at("d").get<int>();
        spec.c.assign(spec.slots(), Rat(0));
        for (const auto& [key, value] : j.at("c").items()) {
            require_input(key.rfind("a=", 0) == 0, "coefficient key must be a=<int>");
            const int a = std::stoi(key.substr(2));
            require_input(a >= 0 && a < spec.slots(), "coefficient index out of range");
            spec.c[a] = coeff_from_json(value);
        }
        spec.c_e = coeff_from_json(j.at("c_e"));
        spec.c_o = coeff_from_json(j.at("c_o"));
        if (j.contains("C")) spec.granularity_log2 = j.at("C").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed mixture JSON: ") + e.what());
    }
    spec.validate();
    return spec;
}

void save_mixture(const MixtureSpec& spec, const std::string& path) {
    std::ofstream out(path);
    require_input(out.good(), "cannot open for writing: " + path);
    out << mixture_to_json(spec).dump(2) << "\n";
}

MixtureSpec load_mixture(const std::string& path) {
    std::ifstream in(path);
    require_input(in.good(), "cannot open for reading: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed JSON in ") + path + ": " + e.what());
    }
    return mixture_from_json(j);
}

}  // namespace locmix
