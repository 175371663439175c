#include "locmix/f2_polynomial.hpp"

#include <algorithm>

#include <json.hpp>

#include "locmix/errors.hpp"

namespace locmix {

F2Polynomial F2Polynomial::zero(int vars) {
    F2Polynomial p;
    p.vars = vars;
    return p;
}

F2Polynomial F2Polynomial::one(int vars) {
    F2Polynomial p;
    p.vars = vars;
    p.monomials.push_back({});
    return p;
}

int F2Polynomial::degree() const {
    int d = 0;
    for (const auto& mon : monomials) d = std::max(d, static_cast<int>(mon.size()));
    return d;
}

bool F2Polynomial::evaluate(const std::vector<std::uint8_t>& x) const {
    require_input(static_cast<int>(x.size()) == vars, "assignment length mismatch");
    bool acc = false;
    for (const auto& mon : monomials) {
        bool term = true;
        for (int v : mon)
            if (!x[v]) {
                term = false;
                break;
            }
        acc ^= term;
    }
    return acc;
}

F2Polynomial F2Polynomial::operator^(const F2Polynomial& other) const {
    F2Polynomial out;
    out.vars = std::max(vars, other.vars);
    out.monomials = monomials;
    out.monomials.insert(out.monomials.end(), other.monomials.begin(),
                         other.monomials.end());
    out.normalize();
    return out;
}

void F2Polynomial::normalize() {
    for (auto& mon : monomials) {
        std::sort(mon.begin(), mon.end());
        mon.erase(std::unique(mon.begin(), mon.end()), mon.end());
        for (int v : mon)
            require_input(v >= 0 && v < vars, "monomial variable out of range");
    }
    std::sort(monomials.begin(), monomials.end());
    // Pairs cancel mod 2.
    std::vector<std::vector<int>> kept;
    for (size_t i = 0; i < monomials.size();) {
        size_t j = i;
        while (j < monomials.size() && monomials[j] == monomials[i]) ++j;
        if ((j - i) % 2 == 1) kept.push_back(monomials[i]);
        i = j;
    }
    monomials = std::move(kept);
}

Rat F2Polynomial::zero_probability(int max_enum_bits) const {
    // Only variables that occur can change the value.
    std::vector<int> active;
    for (const auto& mon : monomials)
        for (int v : mon) active.push_back(v);
    std::sort(active.begin(), active.end());
    active.erase(std::unique(active.begin(), active.end()), active.end());

    require_resource(static_cast<int>(active.size()) <= max_enum_bits,
                     "polynomial support exceeds enumeration cap");

    std::vector<int> local(vars, -1);
    for (size_t j = 0; j < active.size(); ++j) local[active[j]] = static_cast<int>(j);

    const std::uint64_t total = std::uint64_t{1} << active.size();
    std::uint64_t zeros = 0;
    std::vector<std::uint8_t> x(vars, 0);
    for (std::uint64_t v = 0; v < total; ++v) {
        for (size_t j = 0; j < active.size(); ++j) x[active[j]] = (v >> j) & 1;
        if (!evaluate(x)) ++zeros;
    }
    Rat r(Int(static_cast<unsigned long>(zeros)), pow2_int(active.size()));
    r.canonicalize();
    return r;
}

nlohmann::json f2_polynomial_to_json(const F2Polynomial& p) {
    nlohmann::json j;
    j["vars"] = p.vars;
    j["monomials"] = p.monomials;
    return j;
}

F2Polynomial f2_polynomial_from_json(const nlohmann::json& j) {
    F2Polynomial p;
    try {
        p.vars = j.at("vars").get<int>();
        p.monomials = j.at("monomials").get<std::vector<std::vector<int>>>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed polynomial JSON: ") + e.what());
    }
    p.normalize();
    return p;
}

}  // namespace locmix
