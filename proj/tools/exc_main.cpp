#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "exc/amplitudes.hpp"
#include "exc/critical.hpp"
#include "exc/models.hpp"
#include "exc/oracle.hpp"
#include "exc/output.hpp"
#include "exc/qfe.hpp"
#include "exc/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace exc;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitAssumption = 4;

struct ModelError {
    int code;
    std::string message;
};

Model resolve_model(const std::string& spec, int M) {
    if (is_builtin_model(spec)) return builtin_model(spec, M);
    return load_model_file(spec);
}

Model resolve_validated(const std::string& spec, int M) {
    Model m;
    try {
        m = resolve_model(spec, M);
    } catch (const error& e) {
        throw ModelError{kExitValidation, e.what()};
    }
    auto diags = validate(m.eq);
    if (!diags.empty()) {
        std::string msg = "model validation failed:";
        for (const auto& d : diags) msg += "\n  " + d;
        throw ModelError{kExitValidation, msg};
    }
    return m;
}

int mc_threads(int requested) {
#ifdef _OPENMP
    int t = requested > 0 ? requested : omp_get_max_threads();
#else
    int t = 1;
#endif
    if (const char* env = std::getenv("EXC_THREADS")) {
        int cap = std::atoi(env);
        if (cap > 0 && cap < t) t = cap;
    }
    return t;
}

void emit(const OutputRecord& rec, Format fmt) { std::cout << rec.render(fmt); }

int cmd_excursion_moments(int M, int max_total, Format fmt) {
    MomentTable mt = excursion_moments_total_degree(M, max_total);
    OutputRecord rec;
    rec.kind = "excursion_moments";
    rec.context["M"] = std::to_string(M);
    rec.context["max_total_order"] = std::to_string(max_total);
    std::vector<MultiIndex> keys;
    for (const auto& [k, v] : mt.values) keys.push_back(k);
    std::sort(keys.begin(), keys.end(), multiindex_precedes);
    for (const auto& k : keys)
        rec.entries.push_back({k, "", OutputValue::from_surd(mt.at(k))});
    emit(rec, fmt);
    return kExitOk;
}

int cmd_solve(const Model& model, int n_max, int K, Format fmt) {
    SeriesSolution sol = solve_jets(model.eq, n_max, K);
    for (int n0 = 1; n0 <= n_max; ++n0) {
        OutputRecord rec;
        rec.kind = "solve.level";
        rec.context["model"] = model.name.empty() ? "(file)" : model.name;
        rec.context["n0"] = std::to_string(n0);
        rec.context["K"] = std::to_string(K);
        const Jet& jet = sol.level(n0);
        for (int i = 0; i < jet.size(); ++i) {
            const MultiIndex& k = jet.shape().exponent(i);
            Rational g = (total_degree(k) % 2 == 0 ? 1 : -1) * jet[i];
            rec.entries.push_back({k, "g", OutputValue::from_surd(SurdScalar(g))});
        }
        emit(rec, fmt);
    }
    return kExitOk;
}

void push_scalar(OutputRecord* rec, const std::string& label, const CritScalar& s) {
    if (s.exact) {
        rec->entries.push_back({{}, label, OutputValue::from_surd(SurdScalar(s.value))});
    } else {
        rec->entries.push_back({{}, label, OutputValue::from_double(s.mid())});
        rec->context[label + "_enclosure_width"] = render_double(to_double(s.box.width()));
    }
}

int cmd_critical(const Model& model, Format fmt) {
    auto Q = specialize(model.eq);
    CriticalData crit = find_critical(Q);
    shift_constants(model.eq, &crit);

    OutputRecord rec;
    rec.kind = "critical";
    rec.context["model"] = model.name.empty() ? "(file)" : model.name;
    rec.context["M"] = std::to_string(model.eq.M);
    push_scalar(&rec, "u_c", crit.u_c);
    push_scalar(&rec, "y_c", crit.y_c);
    push_scalar(&rec, "B", crit.B);
    push_scalar(&rec, "C", crit.C);
    push_scalar(&rec, "f0", crit.f0);
    for (std::size_t i = 0; i < crit.A.size(); ++i) {
        push_scalar(&rec, "A_" + std::to_string(i), crit.A[i]);
        push_scalar(&rec, "mu_" + std::to_string(i), crit.mu[i]);
    }
    // scaling constants: d_k-matching route plus the printed-formula value
    bool mu_positive = true;
    for (const auto& m : crit.mu) mu_positive = mu_positive && m.box.lo > 0;
    if (mu_positive) {
        if (crit.all_exact()) {
            std::vector<Rational> mu;
            for (const auto& m : crit.mu) mu.push_back(m.value);
            auto sc = scaling_constants(mu);
            for (std::size_t k = 0; k < sc.c.size(); ++k) {
                rec.entries.push_back(
                    {{}, "c_" + std::to_string(k + 1), OutputValue::from_surd(sc.c[k])});
                rec.entries.push_back({{},
                                       "c_printed_formula_" + std::to_string(k + 1),
                                       OutputValue::from_surd(sc.c_printed_formula[k])});
            }
        } else {
            std::vector<double> mu;
            for (const auto& m : crit.mu) mu.push_back(m.mid());
            auto sc = scaling_constants(mu);
            for (std::size_t k = 0; k < sc.c.size(); ++k) {
                rec.entries.push_back(
                    {{}, "c_" + std::to_string(k + 1), OutputValue::from_double(sc.c[k])});
                rec.entries.push_back({{},
                                       "c_printed_formula_" + std::to_string(k + 1),
                                       OutputValue::from_double(sc.c_printed_formula[k])});
            }
        }
    } else {
        rec.context["scaling"] = "unsupported: some mu_i = 0";
    }
    // aperiodicity from the counting prefix
    SeriesSolution counting = solve_jets(model.eq, 12, 0);
    auto prefix = factorial_moment_coefficients(counting, MultiIndex(model.eq.M, 0));
    switch (aperiodicity_check(prefix)) {
        case Aperiodicity::Detected: rec.context["aperiodic"] = "true"; break;
        case Aperiodicity::NotDetected: rec.context["aperiodic"] = "false"; break;
        case Aperiodicity::Inconclusive: rec.context["aperiodic"] = "inconclusive"; break;
    }
    emit(rec, fmt);
    return kExitOk;
}

int cmd_limit_moments(const Model& model, int max_total, Format fmt) {
    CriticalData crit = find_critical(specialize(model.eq));
    shift_constants(model.eq, &crit);
    for (std::size_t i = 0; i < crit.mu.size(); ++i) {
        bool zero = crit.mu[i].exact ? crit.mu[i].value == 0 : !(crit.mu[i].box.lo > 0);
        if (zero)
            throw ModelError{kExitAssumption,
                             "limit law not of excursion type in direction " +
                                 std::to_string(i + 1) + " (mu_" + std::to_string(i) + " = 0)"};
    }
    const int M = model.eq.M;
    MomentTable exc_m = excursion_moments_total_degree(M, max_total);
    OutputRecord rec;
    rec.kind = "limit_moments";
    rec.context["model"] = model.name.empty() ? "(file)" : model.name;
    rec.context["M"] = std::to_string(M);
    rec.context["max_total_order"] = std::to_string(max_total);
    std::vector<MultiIndex> keys;
    for (const auto& [k, v] : exc_m.values) keys.push_back(k);
    std::sort(keys.begin(), keys.end(), multiindex_precedes);
    if (crit.all_exact()) {
        std::vector<Rational> mu;
        for (const auto& m : crit.mu) mu.push_back(m.value);
        auto sc = scaling_constants(mu);
        for (const auto& k : keys) {
            // m_k = prod_i c_i^{k_i} * E[prod X_i^{k_i}]
            SurdScalar v = exc_m.at(k);
            for (int i = 0; i < M; ++i) v *= sc.c[i].pow(static_cast<unsigned long>(k[i]));
            rec.entries.push_back({k, "", OutputValue::from_surd(v)});
        }
    } else {
        std::vector<double> mu;
        for (const auto& m : crit.mu) mu.push_back(m.mid());
        auto sc = scaling_constants(mu);
        for (const auto& k : keys) {
            double v = exc_m.at(k).to_double();
            for (int i = 0; i < M; ++i) v *= std::pow(sc.c[i], k[i]);
            rec.entries.push_back({k, "", OutputValue::from_double(v)});
        }
    }
    emit(rec, fmt);
    return kExitOk;
}

int cmd_mc(int n, long samples, int M, std::uint64_t seed, int threads, Format fmt) {
    auto est = mc_moments(n, samples, M, seed, mc_threads(threads));
    OutputRecord rec;
    rec.kind = "mc";
    rec.context["n"] = std::to_string(n);
    rec.context["samples"] = std::to_string(samples);
    rec.context["M"] = std::to_string(M);
    rec.context["seed"] = std::to_string(seed);
    for (int k = 0; k < M; ++k) {
        rec.entries.push_back({{k + 1}, "mean", OutputValue::from_double(est[k].mean)});
        rec.entries.push_back({{k + 1}, "std_error", OutputValue::from_double(est[k].std_error)});
    }
    emit(rec, fmt);
    return kExitOk;
}

int cmd_verify(const std::string& level) {
    VerifyLevel lvl;
    if (level == "quick") lvl = VerifyLevel::Quick;
    else if (level == "full") lvl = VerifyLevel::Full;
    else {
        std::cerr << "unknown level: " << level << " (expected quick or full)\n";
        return kExitUsage;
    }
    auto results = run_acceptance(lvl);
    for (const auto& r : results) std::cout << format_result_line(r) << "\n";
    return all_passed(results) ? kExitOk : kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact moments of q-functional equations and Brownian excursion integrals"};
    app.require_subcommand(1);

    std::string model_spec = "dyck";
    std::string format_name = "table";
    int M = 1;
    int max_total = 5;
    int n_levels = 10;
    int K = 1;
    long samples = 10000;
    std::uint64_t seed = 1;
    int threads = 0;
    std::string level = "quick";

    auto* cm = app.add_subcommand("excursion-moments",
                                  "joint moments of the excursion power integrals");
    cm->add_option("--M", M, "number of variables")->check(CLI::PositiveNumber);
    cm->add_option("--max", max_total, "maximum total order")->check(CLI::NonNegativeNumber);
    cm->add_option("--format", format_name, "table, json, or csv");

    auto* cs = app.add_subcommand("solve", "coefficient-wise series solution as jets");
    cs->add_option("--model", model_spec, "builtin name (dyck, motzkin, binary) or JSON path");
    cs->add_option("--M", M, "variables for builtin models")->check(CLI::PositiveNumber);
    cs->add_option("--n", n_levels, "number of u0-levels")->check(CLI::PositiveNumber);
    cs->add_option("--K", K, "jet truncation order")->check(CLI::NonNegativeNumber);
    cs->add_option("--format", format_name, "table, json, or csv");

    auto* cc = app.add_subcommand("critical", "critical point, singularity data, constants");
    cc->add_option("--model", model_spec, "builtin name or JSON path");
    cc->add_option("--M", M, "variables for builtin models")->check(CLI::PositiveNumber);
    cc->add_option("--format", format_name, "table, json, or csv");

    auto* cl = app.add_subcommand("limit-moments", "moments of the limit distribution");
    cl->add_option("--model", model_spec, "builtin name or JSON path");
    cl->add_option("--M", M, "variables for builtin models")->check(CLI::PositiveNumber);
    cl->add_option("--max", max_total, "maximum total order")->check(CLI::NonNegativeNumber);
    cl->add_option("--format", format_name, "table, json, or csv");

    auto* cmc = app.add_subcommand("mc", "Monte Carlo estimates over uniform Dyck paths");
    cmc->add_option("--n", n_levels, "half-length of the paths")->check(CLI::PositiveNumber);
    cmc->add_option("--samples", samples, "number of samples")->check(CLI::PositiveNumber);
    cmc->add_option("--M", M, "largest height-moment order")->check(CLI::PositiveNumber);
    cmc->add_option("--seed", seed, "64-bit seed");
    cmc->add_option("--threads", threads, "worker cap (0 = default, also capped by EXC_THREADS)");
    cmc->add_option("--format", format_name, "table, json, or csv");

    auto* cv = app.add_subcommand("verify", "run the acceptance checks");
    cv->add_option("--level", level, "quick or full");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        Format fmt = parse_format(format_name);
        if (cm->parsed()) return cmd_excursion_moments(M, max_total, fmt);
        if (cs->parsed()) return cmd_solve(resolve_validated(model_spec, M), n_levels, K, fmt);
        if (cc->parsed()) return cmd_critical(resolve_validated(model_spec, M), fmt);
        if (cl->parsed()) return cmd_limit_moments(resolve_validated(model_spec, M), max_total, fmt);
        if (cmc->parsed()) return cmd_mc(n_levels, samples, M, seed, threads, fmt);
        if (cv->parsed()) return cmd_verify(level);
    } catch (const ModelError& e) {
        std::cerr << e.message << "\n";
        return e.code;
    } catch (const assumption_error& e) {
        std::cerr << "assumption violation: " << e.what() << "\n";
        return kExitAssumption;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
