#include "locmix/samplers.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include <json.hpp>

namespace locmix {

BranchSpec BranchSpec::bias(int a) {
    BranchSpec b;
    b.type = Type::bias;
    b.a = a;
    return b;
}

BranchSpec BranchSpec::polynomial(F2Polynomial p) {
    BranchSpec b;
    b.type = Type::poly;
    b.poly = std::move(p);
    return b;
}

void SamplerBlueprint::validate() const {
    require(n >= 1, "blueprint requires n >= 1");
    require(d >= 0 && d <= 20, "blueprint d outside [0,20]");
    require(selector_bits >= 0 && selector_bits <= 20,
            "selector bit count outside [0,20]");
    require(branches.size() == (size_t{1} << selector_bits),
            "branch count must be exactly 2^C");
    const long full = 1L << d;
    for (const BranchSpec& b : branches) {
        if (b.type == BranchSpec::Type::bias) {
            require(b.a >= 0 && b.a <= full, "bias outside [0, 2^d]");
            require(d == 0 || 2 * b.a != full,
                    "bias a = 2^(d-1) belongs to the polynomial branches");
        } else {
            require(b.poly.degree() <= d, "branch polynomial degree exceeds d");
            require(static_cast<long>(b.poly.monomials.size()) <= 8L * n,
                    "branch polynomial has more than 8n monomials");
            F2Polynomial copy = b.poly;
            copy.normalize();
            require(copy.monomials == b.poly.monomials,
                    "branch polynomial not in normal form");
        }
    }
}

LocalFunction build_evens(int n) {
    require(n >= 2, "build_evens requires n >= 2");
    LocalFunction f;
    f.n = n;
    f.m = n;
    f.d = 2;
    for (int j = 0; j < n; ++j) {
        OutputGate gate;
        int a = j, b = (j + 1) % n;
        if (a > b) std::swap(a, b);
        gate.inputs = {a, b};
        gate.table = {0, 1, 1, 0};  // xor
        f.outputs.push_back(std::move(gate));
    }
    return f;
}

LocalFunction build_odds(int n) {
    LocalFunction f = build_evens(n);
    f.outputs[0].table = {1, 0, 0, 1};  // negated xor
    return f;
}

LocalFunction build_biased(int n, int a, int d) {
    require(n >= 0, "build_biased requires n >= 0");
    require(d >= 0 && d <= 20, "build_biased d outside [0,20]");
    require(a >= 0 && a <= (1L << d), "bias outside [0, 2^d]");
    LocalFunction f;
    f.n = n;
    f.m = n * d;
    f.d = d;
    for (int j = 0; j < n; ++j) {
        OutputGate gate;
        for (int t = 0; t < d; ++t) gate.inputs.push_back(j * d + t);
        gate.table.resize(size_t{1} << d);
        for (std::uint64_t v = 0; v < gate.table.size(); ++v)
            gate.table[v] = v < static_cast<std::uint64_t>(a) ? 1 : 0;
        f.outputs.push_back(std::move(gate));
    }
    return f;
}

namespace {

// Per-branch wiring of one output bit, over global input ids.
struct BranchOutput {
    bool is_bias = false;
    int a = 0;
    std::vector<int> value_bits;               // bias: little-endian value bits
    std::vector<std::vector<int>> monomials;   // poly: bin contents
    int w_lo = -1, w_hi = -1;                  // poly: evens mask bits

    // Same wiring with global ids replaced by positions in the gate's
    // (sorted) input list, so the truth table builds with shifts only.
    BranchOutput compiled(const std::map<int, int>& pos) const {
        BranchOutput c = *this;
        for (int& v : c.value_bits) v = pos.at(v);
        for (auto& mon : c.monomials)
            for (int& v : mon) v = pos.at(v);
        if (!is_bias) {
            c.w_lo = pos.at(w_lo);
            c.w_hi = pos.at(w_hi);
        }
        return c;
    }

    bool eval_positions(std::uint64_t v) const {
        if (is_bias) {
            std::uint64_t value = 0;
            for (size_t t = 0; t < value_bits.size(); ++t)
                value |= ((v >> value_bits[t]) & 1) << t;
            return value < static_cast<std::uint64_t>(a);
        }
        bool y = false;
        for (const auto& mon : monomials) {
            bool term = true;
            for (int var : mon)
                if (!((v >> var) & 1)) {
                    term = false;
                    break;
                }
            y ^= term;
        }
        bool z = (((v >> w_lo) ^ (v >> w_hi)) & 1) != 0;
        if (w_lo == w_hi) z = false;  // n = 1 chain degenerates to constant 0
        return y ^ z;
    }

    void collect_inputs(std::vector<int>& out) const {
        if (is_bias) {
            out.insert(out.end(), value_bits.begin(), value_bits.end());
        } else {
            for (const auto& mon : monomials)
                out.insert(out.end(), mon.begin(), mon.end());
            out.push_back(w_lo);
            out.push_back(w_hi);
        }
    }
};

}  // namespace

BuiltSampler build_mixture(const SamplerBlueprint& bp) {
    bp.validate();
    const int C = bp.selector_bits;
    const int branch_count = 1 << C;

    // Input layout: C selector bits, then one disjoint block per branch.
    int next_input = C;
    // wiring[b][j] describes output j of branch b.
    std::vector<std::vector<BranchOutput>> wiring(branch_count);
    for (int b = 0; b < branch_count; ++b) {
        const BranchSpec& spec = bp.branches[b];
        wiring[b].resize(bp.n);
        if (spec.type == BranchSpec::Type::bias) {
            for (int j = 0; j < bp.n; ++j) {
                BranchOutput& out = wiring[b][j];
                out.is_bias = true;
                out.a = spec.a;
                for (int t = 0; t < bp.d; ++t)
                    out.value_bits.push_back(next_input + j * bp.d + t);
            }
            next_input += bp.n * bp.d;
        } else {
            const int var_base = next_input;
            const int w_base = var_base + spec.poly.vars;
            // Monomials are already lex-sorted; deal them round-robin into bins.
            for (size_t t = 0; t < spec.poly.monomials.size(); ++t) {
                std::vector<int> global;
                for (int var : spec.poly.monomials[t]) global.push_back(var_base + var);
                wiring[b][t % bp.n].monomials.push_back(std::move(global));
            }
            for (int j = 0; j < bp.n; ++j) {
                BranchOutput& out = wiring[b][j];
                out.is_bias = false;
                out.w_lo = w_base + j;
                out.w_hi = w_base + (j + 1) % bp.n;
            }
            next_input += spec.poly.vars + bp.n;
        }
    }

    LocalFunction f;
    f.n = bp.n;
    f.m = next_input;
    f.outputs.resize(bp.n);
    int locality = 0;

    for (int j = 0; j < bp.n; ++j) {
        std::vector<int> inputs;
        for (int c = 0; c < C; ++c) inputs.push_back(c);
        for (int b = 0; b < branch_count; ++b) wiring[b][j].collect_inputs(inputs);
        std::sort(inputs.begin(), inputs.end());
        inputs.erase(std::unique(inputs.begin(), inputs.end()), inputs.end());
        require_resource(inputs.size() <= 22, "mixture gate fan-in exceeds cap");

        std::map<int, int> pos;
        for (size_t t = 0; t < inputs.size(); ++t) pos[inputs[t]] = static_cast<int>(t);
        std::vector<BranchOutput> compiled;
        compiled.reserve(branch_count);
        for (int b = 0; b < branch_count; ++b)
            compiled.push_back(wiring[b][j].compiled(pos));
        // Selector bits are the globally smallest ids, hence positions 0..C-1.
        OutputGate gate;
        gate.inputs = inputs;
        gate.table.resize(size_t{1} << inputs.size());
        const std::uint64_t selector_mask = (std::uint64_t{1} << C) - 1;
        for (std::uint64_t v = 0; v < gate.table.size(); ++v) {
            const int selector = static_cast<int>(v & selector_mask);
            gate.table[v] = compiled[selector].eval_positions(v) ? 1 : 0;
        }
        locality = std::max(locality, gate.fan_in());
        f.outputs[j] = std::move(gate);
    }
    f.d = locality;
    return {std::move(f), locality};
}

LocalFunction build_and_example(int n) {
    require(n >= 2, "build_and_example requires n >= 2");
    LocalFunction f;
    f.n = n;
    f.m = 2 * n;
    f.d = 3;
    for (int j = 0; j < n; ++j) {
        std::vector<int> inputs = {j, (j + 1) % n, n + j};
        std::sort(inputs.begin(), inputs.end());
        OutputGate gate;
        gate.inputs = inputs;
        gate.table.resize(8);
        for (std::uint64_t v = 0; v < 8; ++v) {
            std::map<int, int> bit;
            for (int t = 0; t < 3; ++t) bit[inputs[t]] = (v >> t) & 1;
            const int x_j = bit[j], x_next = bit[(j + 1) % n], y_j = bit[n + j];
            gate.table[v] = ((x_j ^ x_next) & y_j) ? 1 : 0;
        }
        f.outputs.push_back(std::move(gate));
    }
    return f;
}

ExactDistribution signed_example(int n) {
    require(n >= 1 && n < 30, "signed_example requires 1 <= n < 30");
    const std::uint64_t size = std::uint64_t{1} << n;
    std::vector<Int> counts(size);
    Int pow3 = 1;
    std::vector<Int> three(n + 1);
    three[0] = 1;
    for (int k = 1; k <= n; ++k) three[k] = three[k - 1] * 3;
    for (std::uint64_t x = 0; x < size; ++x) {
        const int w = std::popcount(x);
        Int c = three[n - w] + ((w % 2 == 0) ? 1 : -1);
        counts[x] = std::move(c);
    }
    // Nonnegativity and normalization are enforced by the constructor; any
    // failure there signals a bug rather than bad input.
    Int denom;
    mpz_ui_pow_ui(denom.get_mpz_t(), 4, n);
    return ExactDistribution::from_counts(n, counts, denom);
}

nlohmann::json blueprint_to_json(const SamplerBlueprint& bp) {
    nlohmann::json j;
    j["n"] = bp.n;
    j["d"] = bp.d;
    j["C"] = bp.selector_bits;
    j["branches"] = nlohmann::json::array();
    for (const BranchSpec& b : bp.branches) {
        nlohmann::json jb;
        if (b.type == BranchSpec::Type::bias) {
            jb["bias"] = b.a;
        } else {
            jb["poly"] = {{"vars", b.poly.vars}, {"monomials", b.poly.monomials}};
        }
        j["branches"].push_back(std::move(jb));
    }
    return j;
}

SamplerBlueprint blueprint_from_json(const nlohmann::json& j) {
    SamplerBlueprint bp;
    try {
        bp.n = j.at("n").get<int>();
        bp.d = j.at("d").get<int>();
        bp.selector_bits = j.at("C").get<int>();
        for (const auto& jb : j.at("branches")) {
            if (jb.contains("bias")) {
                bp.branches.push_back(BranchSpec::bias(jb.at("bias").get<int>()));
            } else {
                F2Polynomial p;
                p.vars = jb.at("poly").at("vars").get<int>();
                p.monomials =
                    jb.at("poly").at("monomials").get<std::vector<std::vector<int>>>();
                p.normalize();
                bp.branches.push_back(BranchSpec::polynomial(std::move(p)));
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed blueprint JSON: ") + e.what());
    }
    bp.validate();
    return bp;
}

void save_blueprint(const SamplerBlueprint& bp, const std::string& path) {
    std::ofstream out(path);
    require_input(out.good(), "cannot open for writing: " + path);
    out << blueprint_to_json(bp).dump(2) << "\n";
}

SamplerBlueprint load_blueprint(const std::string& path) {
    std::ifstream in(path);
    require_input(in.good(), "cannot open for reading: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed JSON in ") + path + ": " + e.what());
    }
    return blueprint_from_json(j);
}

}  // namespace locmix
