#include "locmix/local_function.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "locmix/rng.hpp"

namespace locmix {

ValidationReport validate(const LocalFunction& f) {
    ValidationReport report;
    auto flag = [&report](int gate, const std::string& rule) {
        report.violations.push_back({gate, rule});
    };

    if (f.n < 0 || f.m < 0 || f.d < 0) flag(-1, "negative dimension");
    if (static_cast<int>(f.outputs.size()) != f.n)
        flag(-1, "output count does not match n");

    for (int g = 0; g < static_cast<int>(f.outputs.size()); ++g) {
        const OutputGate& gate = f.outputs[g];
        if (gate.fan_in() > f.d) flag(g, "fan-in exceeds locality bound");
        bool indices_ok = true;
        for (size_t j = 0; j < gate.inputs.size(); ++j) {
            if (gate.inputs[j] < 0 || gate.inputs[j] >= f.m) {
                flag(g, "index out of range");
                indices_ok = false;
            }
            if (j > 0 && gate.inputs[j] <= gate.inputs[j - 1]) {
                flag(g, "inputs not sorted/distinct");
                indices_ok = false;
            }
        }
        if (indices_ok && gate.inputs.size() < 64 &&
            gate.table.size() != (size_t{1} << gate.inputs.size()))
            flag(g, "table length");
        for (std::uint8_t b : gate.table)
            if (b > 1) {
                flag(g, "table entry not a bit");
                break;
            }
    }
    return report;
}

void require_valid(const LocalFunction& f) {
    ValidationReport r = validate(f);
    if (!r.ok()) {
        const Violation& v = r.violations.front();
        throw InputError("invalid LocalFunction (gate " + std::to_string(v.gate) +
                         "): " + v.rule);
    }
}

std::vector<std::uint8_t> evaluate(const LocalFunction& f,
                                   const std::vector<std::uint8_t>& x) {
    require_input(static_cast<int>(x.size()) == f.m,
                  "input length does not match m");
    std::vector<std::uint8_t> y(f.n);
    for (int g = 0; g < f.n; ++g) {
        const OutputGate& gate = f.outputs[g];
        std::uint64_t idx = 0;
        for (size_t j = 0; j < gate.inputs.size(); ++j)
            idx |= static_cast<std::uint64_t>(x[gate.inputs[j]] & 1) << j;
        y[g] = gate.eval(idx) ? 1 : 0;
    }
    return y;
}

DegreeProfile degree_profile(const LocalFunction& f) {
    DegreeProfile profile;
    profile.degrees.assign(f.m, 0);
    for (const OutputGate& gate : f.outputs)
        for (int i : gate.inputs) profile.degrees[i]++;
    return profile;
}

LocalFunction restrict_inputs(const LocalFunction& f,
                              const std::map<int, int>& assignment) {
    for (const auto& [i, b] : assignment) {
        require_input(i >= 0 && i < f.m, "assignment index out of range");
        require_input(b == 0 || b == 1, "assignment value not a bit");
    }

    // Order-preserving renumbering of the surviving inputs.
    std::vector<int> new_id(f.m, -1);
    int next = 0;
    for (int i = 0; i < f.m; ++i)
        if (!assignment.count(i)) new_id[i] = next++;

    LocalFunction g;
    g.n = f.n;
    g.m = next;
    g.d = f.d;
    g.outputs.reserve(f.outputs.size());

    for (const OutputGate& gate : f.outputs) {
        OutputGate out;
        std::vector<int> kept_pos;  // positions within the old gate
        std::uint64_t fixed_bits = 0;
        for (size_t j = 0; j < gate.inputs.size(); ++j) {
            auto it = assignment.find(gate.inputs[j]);
            if (it == assignment.end()) {
                kept_pos.push_back(static_cast<int>(j));
                out.inputs.push_back(new_id[gate.inputs[j]]);
            } else if (it->second) {
                fixed_bits |= std::uint64_t{1} << j;
            }
        }
        out.table.resize(size_t{1} << kept_pos.size());
        for (std::uint64_t v = 0; v < out.table.size(); ++v) {
            std::uint64_t idx = fixed_bits;
            for (size_t j = 0; j < kept_pos.size(); ++j)
                if ((v >> j) & 1) idx |= std::uint64_t{1} << kept_pos[j];
            out.table[v] = gate.table[idx];
        }
        g.outputs.push_back(std::move(out));
    }
    return g;
}

LocalFunction random_local(int n, int m, int d, std::uint64_t seed) {
    require(n >= 0 && m >= 1, "random_local requires n >= 0, m >= 1");
    require(d >= 1 && d <= m, "random_local requires 1 <= d <= m");

    LocalFunction f;
    f.n = n;
    f.m = m;
    f.d = d;
    f.outputs.resize(n);

    SplitRng root(seed, "random_local");
    for (int g = 0; g < n; ++g) {
        SplitRng wires = root.fork("gate" + std::to_string(g) + "/inputs");
        // Partial Fisher-Yates draw of d distinct indices.
        std::vector<int> pool(m);
        for (int i = 0; i < m; ++i) pool[i] = i;
        std::vector<int> chosen;
        for (int j = 0; j < d; ++j) {
            size_t pick = j + wires.below(m - j);
            std::swap(pool[j], pool[pick]);
            chosen.push_back(pool[j]);
        }
        std::sort(chosen.begin(), chosen.end());
        f.outputs[g].inputs = std::move(chosen);

        SplitRng bits = root.fork("gate" + std::to_string(g) + "/table");
        f.outputs[g].table.resize(size_t{1} << d);
        for (auto& b : f.outputs[g].table) b = bits.next_bit() ? 1 : 0;
    }
    return f;
}

std::string bits_to_string(const std::vector<std::uint8_t>& bits) {
    std::string s(bits.size(), '0');
    for (size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) s[i] = '1';
    return s;
}

std::vector<std::uint8_t> bits_from_string(const std::string& s) {
    std::vector<std::uint8_t> bits(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        require_input(s[i] == '0' || s[i] == '1', "bit string has non-bit character");
        bits[i] = s[i] == '1' ? 1 : 0;
    }
    return bits;
}

nlohmann::json local_function_to_json(const LocalFunction& f) {
    nlohmann::json j;
    j["n"] = f.n;
    j["m"] = f.m;
    j["d"] = f.d;
    j["outputs"] = nlohmann::json::array();
    for (const OutputGate& gate : f.outputs) {
        nlohmann::json jg;
        jg["inputs"] = gate.inputs;
        jg["table"] = bits_to_string(gate.table);
        j["outputs"].push_back(std::move(jg));
    }
    return j;
}

LocalFunction local_function_from_json(const nlohmann::json& j) {
    LocalFunction f;
    try {
        f.n = j.at("n").get<int>();
        f.m = j.at("m").get<int>();
        f.d = j.at("d").get<int>();
        for (const auto& jg : j.at("outputs")) {
            OutputGate gate;
            gate.inputs = jg.at("inputs").get<std::vector<int>>();
            gate.table = bits_from_string(jg.at("table").get<std::string>());
            f.outputs.push_back(std::move(gate));
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed LocalFunction JSON: ") + e.what());
    }
    return f;
}

void save_local_function(const LocalFunction& f, const std::string& path) {
    std::ofstream out(path);
    require_input(out.good(), "cannot open for writing: " + path);
    out << local_function_to_json(f).dump(2) << "\n";
}

LocalFunction load_local_function(const std::string& path) {
    std::ifstream in(path);
    require_input(in.good(), "cannot open for reading: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed JSON in ") + path + ": " + e.what());
    }
    return local_function_from_json(j);
}

}  // namespace locmix
