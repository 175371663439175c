// locmix: build local samplers, compute exact output distributions and
// distances, decompose symmetric distributions into the dyadic mixture
// family, classify local functions, and learn mixtures from samples.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "locmix/analyze.hpp"
#include "locmix/decompose.hpp"
#include "locmix/learner.hpp"
#include "locmix/mixture.hpp"
#include "locmix/moments.hpp"
#include "locmix/rng.hpp"
#include "locmix/samplers.hpp"
#include "locmix/verification.hpp"

using namespace locmix;
using nlohmann::json;

namespace {

Rat rat_of(long num, long den) {
    Rat r{Int(num), Int(den)};
    r.canonicalize();
    return r;
}

struct GlobalOptions {
    int max_enum_bits = 26;
    int threads = 1;
};

EnumerationLimits limits_from(const GlobalOptions& g) {
    EnumerationLimits limits;
    limits.max_enum_bits = g.max_enum_bits;
    limits.threads = g.threads;
    // Raising the per-component cap raises the total budget with it.
    const int budget_bits = std::min(g.max_enum_bits + 4, 42);
    limits.max_total_work =
        std::max(limits.max_total_work, std::uint64_t{1} << budget_bits);
    return limits;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    require_input(out.good(), "cannot open for writing: " + path);
    out << content;
}

std::string rat_report(const Rat& value) {
    return rat_to_string(value) + " (" + std::to_string(to_double(value)) + ")";
}

json entry_json(const ConditioningEntry& entry) {
    json j;
    std::string rho;
    for (auto b : entry.rho) rho += (b ? '1' : '0');
    j["rho"] = rho;
    j["a"] = entry.a;
    j["gamma"] = rat_to_string(entry.gamma);
    j["mean_weight"] = rat_to_string(entry.mean_weight);
    j["escape_mass"] = rat_to_string(entry.escape_mass);
    j["parity_even_prob"] = rat_to_string(entry.parity_even_prob);
    j["exception_set"] = entry.exception_set;
    j["kolmogorov_to_bin"] = rat_to_string(entry.kolmogorov_to_bin);
    j["even_gap"] = rat_to_string(entry.even_gap);
    j["odd_gap"] = rat_to_string(entry.odd_gap);
    return j;
}

json classification_json(const ClassificationResult& result) {
    json j;
    j["spec"] = mixture_to_json(result.spec);
    j["tv_string"] = rat_to_string(result.tv_string);
    j["tv_weight"] = rat_to_string(result.tv_weight);
    j["tv_symmetrization"] = rat_to_string(result.tv_symmetrization);
    j["conditioned_inputs"] = result.report.conditioned_inputs;
    j["entries"] = json::array();
    for (const auto& entry : result.report.entries)
        j["entries"].push_back(entry_json(entry));
    return j;
}

std::string classification_csv(const ClassificationResult& result) {
    std::string csv =
        "rho,a,gamma,mean_weight,escape_mass,parity_even_prob,"
        "exception_set_size,kolmogorov_to_bin,even_gap,odd_gap\n";
    for (const auto& entry : result.report.entries) {
        std::string rho;
        for (auto b : entry.rho) rho += (b ? '1' : '0');
        csv += rho + "," + std::to_string(entry.a) + "," +
               std::to_string(to_double(entry.gamma)) + "," +
               std::to_string(to_double(entry.mean_weight)) + "," +
               std::to_string(to_double(entry.escape_mass)) + "," +
               std::to_string(to_double(entry.parity_even_prob)) + "," +
               std::to_string(entry.exception_set.size()) + "," +
               std::to_string(to_double(entry.kolmogorov_to_bin)) + "," +
               std::to_string(to_double(entry.even_gap)) + "," +
               std::to_string(to_double(entry.odd_gap)) + "\n";
    }
    return csv;
}

WeightDistribution as_weights(const LoadedDistribution& loaded) {
    return loaded.is_weights ? loaded.weights : weight_distribution(loaded.dense);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"local sampling functions, exact distributions, and the dyadic mixture family"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    app.add_option("--max-enum-bits", global.max_enum_bits,
                   "enumeration cap per conditioned component (default 26)");
    app.add_option("--threads", global.threads,
                   "worker threads for enumeration (default 1, or THREADS env)");
    if (const char* env = std::getenv("THREADS")) global.threads = std::atoi(env);

    // ---- build -------------------------------------------------------------
    auto* build = app.add_subcommand("build", "construct a sampler and write it as JSON");
    std::string build_kind, build_out = "function.json", build_blueprint;
    int build_n = 8, build_a = 1, build_d = 2;
    build->add_option("kind", build_kind, "evens|odds|biased|mixture|and-example")
        ->required();
    build->add_option("--n", build_n, "output bits");
    build->add_option("--a", build_a, "bias numerator for `biased`");
    build->add_option("--d", build_d, "locality / bias denominator exponent");
    build->add_option("--blueprint", build_blueprint, "blueprint JSON for `mixture`");
    build->add_option("--out", build_out, "output path");

    // ---- dist --------------------------------------------------------------
    auto* dist_cmd = app.add_subcommand("dist", "exact output distribution of a function");
    std::string dist_fn, dist_out = "dist.json", dist_named, dist_gamma = "1/2",
                         dist_point;
    bool dist_weights = false;
    int dist_n = 8, dist_k = 0;
    dist_cmd->add_option("--fn", dist_fn, "LocalFunction JSON");
    dist_cmd->add_option("--named", dist_named,
                         "emit a named distribution instead: evens|odds|"
                         "fixed-weight|biased-product|binomial|point|uniform");
    dist_cmd->add_option("--n", dist_n, "dimension for --named");
    dist_cmd->add_option("--gamma", dist_gamma, "bias p/q for --named");
    dist_cmd->add_option("--k", dist_k, "weight for --named fixed-weight");
    dist_cmd->add_option("--point", dist_point, "bit string for --named point");
    dist_cmd->add_option("--out", dist_out, "output path");
    dist_cmd->add_flag("--weights", dist_weights, "emit the weight distribution");

    // ---- tv / kolmogorov ---------------------------------------------------
    auto* tv_cmd = app.add_subcommand("tv", "total variation distance of two distribution files");
    std::string tv_a, tv_b;
    tv_cmd->add_option("--a", tv_a)->required();
    tv_cmd->add_option("--b", tv_b)->required();

    auto* kol_cmd = app.add_subcommand("kolmogorov", "Kolmogorov distance of two distribution files");
    std::string kol_a, kol_b;
    kol_cmd->add_option("--a", kol_a)->required();
    kol_cmd->add_option("--b", kol_b)->required();

    // ---- decompose ----------------------------------------------------------
    auto* dec = app.add_subcommand("decompose", "moment decomposition and convexity verdict");
    std::string dec_dist, dec_out, dec_level = "weight", dec_moments_csv;
    int dec_d = 2;
    bool dec_nearest = false;
    dec->add_option("--dist", dec_dist, "distribution JSON (dense or weights)")->required();
    dec->add_option("--d", dec_d, "locality parameter of the family");
    dec->add_option("--out", dec_out, "write the signed spec JSON here");
    dec->add_flag("--nearest", dec_nearest, "also run the L1 fit over the convex family");
    dec->add_option("--level", dec_level, "nearest-fit level: weight|string");
    dec->add_option("--moments-csv", dec_moments_csv, "write the moment profile as CSV");

    // ---- classify -----------------------------------------------------------
    auto* cls = app.add_subcommand("classify", "run the conditioning pipeline on a function");
    std::string cls_fn, cls_out, cls_csv;
    int cls_d = 2, cls_A = 2, cls_k = 2;
    double cls_radius = -1;
    cls->add_option("--fn", cls_fn)->required();
    cls->add_option("--d", cls_d, "dyadic bias denominator exponent");
    cls->add_option("--A", cls_A, "degree threshold n/A");
    cls->add_option("--k", cls_k, "tuple size for exception sets");
    cls->add_option("--radius", cls_radius, "concentration radius (default 0.1 * 2^-d)");
    cls->add_option("--out", cls_out, "report JSON path");
    cls->add_option("--csv", cls_csv, "per-conditioning CSV path");

    // ---- learn --------------------------------------------------------------
    auto* lrn = app.add_subcommand("learn", "Scheffe tournament over the mixture cover");
    std::string lrn_fn, lrn_samples, lrn_out, lrn_dev;
    bool lrn_binary = false;
    int lrn_n = 16, lrn_d = 2;
    double lrn_eps = 0.1;
    std::uint64_t lrn_seed = 0, lrn_budget = 5000;
    double lrn_constant = 10.0;
    lrn->add_option("--fn", lrn_fn, "sample from this LocalFunction JSON");
    lrn->add_option("--samples", lrn_samples, "read samples from this file");
    lrn->add_flag("--binary", lrn_binary, "samples file is a binary weight list");
    lrn->add_option("--n", lrn_n)->required();
    lrn->add_option("--d", lrn_d);
    lrn->add_option("--epsilon", lrn_eps)->required();
    lrn->add_option("--seed", lrn_seed);
    lrn->add_option("--K", lrn_constant, "sample-count constant in K/eps^2");
    lrn->add_option("--budget", lrn_budget, "hypothesis budget for the tournament");
    lrn->add_option("--out", lrn_out, "chosen spec JSON path");
    lrn->add_option("--deviations", lrn_dev, "per-hypothesis deviation CSV path");

    // ---- verify-example -----------------------------------------------------
    auto* ver = app.add_subcommand("verify-example", "check the bitwise-AND identities");
    int ver_n = 8;
    ver->add_option("--n", ver_n)->required();

    // ---- sweep ---------------------------------------------------------------
    auto* swp = app.add_subcommand("sweep", "seeded random-function batch, distances as CSV");
    int swp_n = 6, swp_m = 9, swp_d = 2, swp_count = 10;
    std::uint64_t swp_seed = 0;
    std::string swp_out = "sweep.csv";
    swp->add_option("--n", swp_n);
    swp->add_option("--m", swp_m);
    swp->add_option("--d", swp_d);
    swp->add_option("--count", swp_count);
    swp->add_option("--seed", swp_seed);
    swp->add_option("--out", swp_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        json err = {{"error", "parse"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    }

    try {
        const EnumerationLimits limits = limits_from(global);

        if (*build) {
            LocalFunction f;
            if (build_kind == "evens") {
                f = build_evens(build_n);
            } else if (build_kind == "odds") {
                f = build_odds(build_n);
            } else if (build_kind == "biased") {
                f = build_biased(build_n, build_a, build_d);
            } else if (build_kind == "and-example") {
                f = build_and_example(build_n);
            } else if (build_kind == "mixture") {
                require_input(!build_blueprint.empty(),
                              "mixture requires --blueprint");
                const auto built = build_mixture(load_blueprint(build_blueprint));
                f = built.function;
                std::cout << "locality " << built.locality << "\n";
            } else {
                throw InputError("unknown build kind: " + build_kind);
            }
            save_local_function(f, build_out);
            std::cout << "wrote " << build_out << " (n=" << f.n << ", m=" << f.m
                      << ", d=" << f.d << ")\n";
        }

        if (*dist_cmd) {
            if (!dist_named.empty()) {
                std::uint64_t point = 0;
                if (!dist_point.empty()) {
                    const auto bits = bits_from_string(dist_point);
                    for (size_t j = 0; j < bits.size(); ++j)
                        point |= std::uint64_t{bits[j]} << j;
                }
                const auto named =
                    make_named(named_kind_from_string(dist_named),
                               rat_from_string(dist_gamma), dist_k, point);
                if (dist_weights || named.kind == NamedKind::binomial)
                    save_weights(named.realize_weights(dist_n), dist_out);
                else
                    save_distribution(named.realize_strings(dist_n), dist_out);
            } else {
                require_input(!dist_fn.empty(), "dist requires --fn or --named");
                const LocalFunction f = load_local_function(dist_fn);
                const auto dist = output_distribution(f, limits);
                if (dist_weights)
                    save_weights(weight_distribution(dist), dist_out);
                else
                    save_distribution(dist, dist_out);
            }
            std::cout << "wrote " << dist_out << "\n";
        }

        if (*tv_cmd) {
            const auto a = load_any_distribution(tv_a);
            const auto b = load_any_distribution(tv_b);
            Rat value;
            if (!a.is_weights && !b.is_weights)
                value = tv(a.dense, b.dense);
            else
                value = tv(as_weights(a), as_weights(b));
            std::cout << rat_report(value) << "\n";
        }

        if (*kol_cmd) {
            const auto a = load_any_distribution(kol_a);
            const auto b = load_any_distribution(kol_b);
            std::cout << rat_report(kolmogorov(as_weights(a), as_weights(b)))
                      << "\n";
        }

        if (*dec) {
            const auto loaded = load_any_distribution(dec_dist);
            const WeightDistribution w = as_weights(loaded);
            const MomentProfile profile = moment_profile(w);
            if (!dec_moments_csv.empty()) {
                std::string csv = "s,moment,moment_decimal\n";
                for (int s = 0; s <= profile.n; ++s)
                    csv += std::to_string(s) + "," +
                           rat_to_string(profile.moments[s]) + "," +
                           std::to_string(to_double(profile.moments[s])) + "\n";
                write_text(dec_moments_csv, csv);
            }
            const auto spec = vandermonde_decompose(profile, dec_d);
            const auto verdict = check_convexity(spec);
            json report;
            report["spec"] = signed_mixture_to_json(spec);
            report["representable"] = verdict.representable;
            report["witness"] = rat_to_string(verdict.witness);
            report["witness_name"] = verdict.witness_name;
            if (dec_nearest) {
                NearestMixtureResult fit;
                if (dec_level == "string" && !loaded.is_weights)
                    fit = nearest_mixture(loaded.dense, dec_d, FitLevel::string);
                else
                    fit = nearest_mixture(w, dec_d);
                report["nearest"] = mixture_to_json(fit.spec);
                report["nearest_tv"] = rat_to_string(fit.tv);
            }
            std::cout << report.dump(2) << "\n";
            if (!dec_out.empty()) write_text(dec_out, report.dump(2) + "\n");
        }

        if (*cls) {
            const LocalFunction f = load_local_function(cls_fn);
            const Rat radius =
                cls_radius < 0 ? Rat(-1) : rat_from_double(cls_radius);
            const auto result = classify(f, cls_d, cls_A, radius, cls_k, limits);
            const json report = classification_json(result);
            std::cout << report.dump(2) << "\n";
            if (!cls_out.empty()) write_text(cls_out, report.dump(2) + "\n");
            if (!cls_csv.empty()) write_text(cls_csv, classification_csv(result));
        }

        if (*lrn) {
            LearnConfig config;
            config.sample_constant = lrn_constant;
            config.hypothesis_budget = lrn_budget;
            LearnResult result;
            SampleBatch batch;
            if (!lrn_fn.empty()) {
                const LocalFunction f = load_local_function(lrn_fn);
                const std::uint64_t count = static_cast<std::uint64_t>(
                    std::ceil(config.sample_constant / (lrn_eps * lrn_eps)));
                batch = sample_from_function(f, count, lrn_seed);
            } else {
                require_input(!lrn_samples.empty(),
                              "learn requires --fn or --samples");
                batch = lrn_binary ? load_samples_binary(lrn_samples)
                                   : load_samples_text(lrn_samples);
            }
            result = learn(batch, lrn_n, lrn_d, lrn_eps, config);
            json report;
            report["spec"] = mixture_to_json(result.spec);
            report["samples_used"] = result.samples_used;
            report["grid"] = result.grid;
            report["max_deviation"] = result.max_deviation;
            std::cout << report.dump(2) << "\n";
            if (!lrn_out.empty())
                write_text(lrn_out, mixture_to_json(result.spec).dump(2) + "\n");
            if (!lrn_dev.empty()) {
                const auto cover = hypothesis_cover_grid(lrn_n, lrn_d, result.grid,
                                                         config.max_cover_count);
                const auto deviations = scheffe_deviations(batch, cover);
                std::string csv = "hypothesis,max_deviation\n";
                for (size_t i = 0; i < deviations.size(); ++i)
                    csv += std::to_string(i) + "," +
                           std::to_string(deviations[i]) + "\n";
                write_text(lrn_dev, csv);
            }
        }

        if (*ver) {
            const auto result = verify_example(ver_n, limits);
            for (const auto& line : result.lines())
                std::cout << "n=" << ver_n << " " << line << "\n";
            std::cout << (result.passed() ? "pass" : "FAIL") << "\n";
            return result.passed() ? 0 : 1;
        }

        if (*swp) {
            std::string csv =
                "seed,n,m,d,tv_symmetrization,nearest_mixture_tv_weight,"
                "kolmogorov_best_binomial\n";
            for (int i = 0; i < swp_count; ++i) {
                const std::uint64_t seed = swp_seed + static_cast<std::uint64_t>(i);
                const auto f = random_local(swp_n, swp_m, swp_d, seed);
                const auto dist = output_distribution(f, limits);
                const auto w = weight_distribution(dist);
                const Rat tv_sym = tv(dist, symmetrize(dist));
                const auto fit = nearest_mixture(w, swp_d);
                Rat best_kol(2);
                for (int a = 0; a <= (1 << swp_d); ++a) {
                    const Rat gamma = rat_of(a, 1 << swp_d);
                    best_kol = std::min(
                        best_kol, kolmogorov(w, binomial_weights(swp_n, gamma)));
                }
                csv += std::to_string(seed) + "," + std::to_string(swp_n) + "," +
                       std::to_string(swp_m) + "," + std::to_string(swp_d) + "," +
                       std::to_string(to_double(tv_sym)) + "," +
                       std::to_string(to_double(fit.tv)) + "," +
                       std::to_string(to_double(best_kol)) + "\n";
            }
            write_text(swp_out, csv);
            std::cout << "wrote " << swp_out << "\n";
        }
    } catch (const InputError& e) {
        json err = {{"error", "parse"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        json err = {{"error", "precondition"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 3;
    } catch (const ResourceError& e) {
        json err = {{"error", "resource"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 4;
    }
    return 0;
}
