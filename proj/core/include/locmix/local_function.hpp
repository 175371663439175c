#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "locmix/errors.hpp"

namespace locmix {

// One output bit of a d-local map. `table` is indexed by the assignment to
// `inputs` in little-endian order: bit j of the index is the value of
// inputs[j], so index 0 is the all-zeros assignment.
struct OutputGate {
    std::vector<int> inputs;          // sorted, distinct, in [0, m)
    std::vector<std::uint8_t> table;  // 2^inputs.size() entries, each 0/1

    int fan_in() const { return static_cast<int>(inputs.size()); }
    bool eval(std::uint64_t local_assignment) const {
        return table[local_assignment] != 0;
    }
};

// Explicit wiring + truth tables of a map {0,1}^m -> {0,1}^n where each of
// the n output bits reads at most d input bits.
struct LocalFunction {
    int n = 0;  // output count
    int m = 0;  // input count
    int d = 0;  // declared locality bound
    std::vector<OutputGate> outputs;
};

struct DegreeProfile {
    std::vector<int> degrees;  // degrees[i] = number of gates reading input i

    long total() const {
        long s = 0;
        for (int x : degrees) s += x;
        return s;
    }
};

struct Violation {
    int gate;  // -1 for function-level violations
    std::string rule;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate(const LocalFunction& f);

// Throws InputError listing the first violation.
void require_valid(const LocalFunction& f);

std::vector<std::uint8_t> evaluate(const LocalFunction& f,
                                   const std::vector<std::uint8_t>& x);

DegreeProfile degree_profile(const LocalFunction& f);

// Partially evaluates every gate on `assignment` (input index -> bit) and
// renumbers the surviving inputs order-preservingly. Locality never grows;
// an empty assignment returns f unchanged.
LocalFunction restrict_inputs(const LocalFunction& f,
                              const std::map<int, int>& assignment);

// Seed-deterministic random function: every gate reads exactly min(d, m)
// distinct inputs drawn without replacement, with a uniform truth table.
LocalFunction random_local(int n, int m, int d, std::uint64_t seed);

// Text form of a bit vector: character j is bit j.
std::string bits_to_string(const std::vector<std::uint8_t>& bits);
std::vector<std::uint8_t> bits_from_string(const std::string& s);

nlohmann::json local_function_to_json(const LocalFunction& f);
LocalFunction local_function_from_json(const nlohmann::json& j);
void save_local_function(const LocalFunction& f, const std::string& path);
LocalFunction load_local_function(const std::string& path);

}  // namespace locmix
