#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "riskcap/dual.hpp"
#include "riskcap/engine.hpp"
#include "riskcap/illiquid.hpp"
#include "riskcap/oracle.hpp"
#include "riskcap/properties.hpp"
#include "riskcap/scenario.hpp"

namespace {

using nlohmann::json;
using namespace riskcap;

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitInputError = 2;

// Inline JSON or a path to a JSON file.
std::string read_json_argument(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return arg;
    std::ifstream in(arg);
    if (!in) throw ValidationError("cannot open JSON file '" + arg + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct CommonOptions {
    std::string scenarios_path;
    std::string acceptance_json;
    std::string family;
    double alpha = 0.0;
    bool alpha_set = false;
    std::string utility_kind = "exp";
    double utility_a = 1.0;
    double utility_cap = 1.0;
    std::vector<std::size_t> event_indices;
    double price = 1.0;
    std::string pi_json;
    double tol = 1e-9;
    std::uint64_t seed = 42;
    std::size_t budget = 10000;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--scenarios", opt.scenarios_path, "scenario CSV (header prob,x,s)")->required();
    cmd->add_option("--acceptance", opt.acceptance_json, "acceptance spec as inline JSON or a file path");
    cmd->add_option("--family", opt.family, "acceptance family: var|tvar|shortfall|scenario|expectation");
    cmd->add_option("--alpha", opt.alpha, "acceptance level")->each([&](const std::string&) { opt.alpha_set = true; });
    cmd->add_option("--utility", opt.utility_kind, "shortfall utility kind: exp|linear|capped");
    cmd->add_option("--utility-a", opt.utility_a, "exponential utility coefficient");
    cmd->add_option("--utility-cap", opt.utility_cap, "capped utility ceiling");
    cmd->add_option("--event", opt.event_indices, "scenario event indices (0-based)");
    cmd->add_option("--price", opt.price, "asset price S_0")->required();
    cmd->add_option("--pi", opt.pi_json, "pricing functional as inline JSON or a file path");
    cmd->add_option("--tol", opt.tol, "engine tolerance");
    cmd->add_option("--seed", opt.seed, "seed for randomized searches");
    cmd->add_option("--budget", opt.budget, "trial budget for falsification searches");
    cmd->add_option("--format", opt.format, "output format: json|csv|table")
        ->check(CLI::IsMember({"json", "csv", "table"}));
}

AcceptanceSpec build_spec(const CommonOptions& opt) {
    if (!opt.acceptance_json.empty()) return AcceptanceSpec::from_json(read_json_argument(opt.acceptance_json));
    if (opt.family.empty()) throw ValidationError("give either --acceptance or --family");
    if (opt.family == "var") return AcceptanceSpec::var(opt.alpha);
    if (opt.family == "tvar") return AcceptanceSpec::tvar(opt.alpha);
    if (opt.family == "expectation") return AcceptanceSpec::expectation(opt.alpha);
    if (opt.family == "scenario") {
        if (opt.event_indices.empty()) throw ValidationError("scenario family needs --event indices");
        std::size_t n = 0;
        for (std::size_t i : opt.event_indices) n = std::max(n, i + 1);
        return AcceptanceSpec::scenario(EventMask::from_indices(n, opt.event_indices));
    }
    if (opt.family == "shortfall") {
        Utility u = Utility::linear();
        if (opt.utility_kind == "exp") u = Utility::exponential(opt.utility_a);
        else if (opt.utility_kind == "capped") u = Utility::capped_linear(opt.utility_cap);
        else if (opt.utility_kind != "linear") throw ValidationError("unknown utility '" + opt.utility_kind + "'");
        return AcceptanceSpec::shortfall(u, opt.alpha);
    }
    throw ValidationError("unknown family '" + opt.family + "'");
}

json rho_to_json(const RhoResult& r) {
    json j;
    switch (r.value.tag) {
        case ExtendedValue::Tag::Finite:
            j["rho"] = r.value.value;
            j["status"] = "finite";
            break;
        case ExtendedValue::Tag::PlusInf:
            j["rho"] = "+inf";
            j["status"] = "+inf";
            break;
        case ExtendedValue::Tag::MinusInf:
            j["rho"] = "-inf";
            j["status"] = "-inf";
            break;
    }
    j["reason"] = reason_name(r.value.reason);
    j["method"] = r.method == RhoResult::Method::ClosedForm ? "closed_form" : "bisection";
    j["iterations"] = r.iterations;
    return j;
}

std::string extended_to_cell(const ExtendedValue& v) {
    if (v.is_plus_inf()) return "+inf";
    if (v.is_minus_inf()) return "-inf";
    std::ostringstream out;
    out.precision(17);
    out << v.value;
    return out.str();
}

int run_price(const CommonOptions& opt) {
    const LoadedScenarios data = load_scenarios(opt.scenarios_path);
    const AcceptanceSpec spec = build_spec(opt);
    const EligibleAsset asset(opt.price, data.payoff);
    std::optional<PricingFunctional> pi;
    if (!opt.pi_json.empty()) pi = PricingFunctional::from_json(read_json_argument(opt.pi_json), opt.price);

    const auto results = rho_batch(spec, data.space, data.positions, asset, opt.tol);
    json out = json::array();
    for (std::size_t k = 0; k < results.size(); ++k) {
        json j = rho_to_json(results[k]);
        if (pi) {
            const ExtendedValue composed =
                rho_illiquid(spec, data.space, data.positions[k], asset, *pi, opt.tol);
            j["rho_pi"] = composed.is_finite() ? json(composed.value) : json(composed.to_string());
        }
        out.push_back(j);
    }
    if (opt.format == "json") {
        std::cout << out.dump(2) << "\n";
    } else {
        if (opt.format == "csv") std::cout << "position,rho,status,reason,method,iterations\n";
        for (std::size_t k = 0; k < results.size(); ++k) {
            const json& j = out[k];
            const std::string rho_cell =
                j["rho"].is_string() ? j["rho"].get<std::string>() : extended_to_cell(results[k].value);
            if (opt.format == "csv")
                std::cout << (k + 1) << ',' << rho_cell << ',' << j["status"].get<std::string>() << ','
                          << j["reason"].get<std::string>() << ',' << j["method"].get<std::string>() << ','
                          << results[k].iterations << "\n";
            else
                std::cout << "position " << (k + 1) << ": rho = " << rho_cell << " ("
                          << j["status"].get<std::string>() << ", " << j["method"].get<std::string>()
                          << ")\n";
        }
    }
    return kExitOk;
}

int run_check(const CommonOptions& opt, const std::string& suite) {
    const LoadedScenarios data = load_scenarios(opt.scenarios_path);
    const AcceptanceSpec spec = build_spec(opt);
    const EligibleAsset asset(opt.price, data.payoff);

    if (suite == "cash-sub") {
        const CashSubVerdict verdict =
            cash_subadditivity_report(spec, data.space, asset, opt.budget, opt.seed, opt.tol);
        json j = json::parse(verdict.to_json());
        j["suite"] = "cash-sub";
        std::cout << j.dump(2) << "\n";
        if (verdict.verdict == CashSubVerdict::Verdict::Inconclusive)
            std::cerr << "warning: search exhausted without a verdict\n";
        return kExitOk;
    }
    if (suite == "axioms") {
        const std::size_t samples = std::max<std::size_t>(1, opt.budget / 10);
        const AxiomReport report = axiom_suite(spec, data.space, asset, samples, opt.seed, opt.tol);
        json j;
        j["suite"] = "axioms";
        j["axioms"] = json::parse(report.to_json());
        j["all_claimed_pass"] = report.all_claimed_pass();
        std::cout << j.dump(2) << "\n";
        return report.all_claimed_pass() ? kExitOk : kExitPropertyFailure;
    }
    if (suite == "quasiconvex") {
        const PricingFunctional pi = opt.pi_json.empty()
                                         ? PricingFunctional::linear(opt.price)
                                         : PricingFunctional::from_json(read_json_argument(opt.pi_json), opt.price);
        const std::size_t samples = std::max<std::size_t>(1, opt.budget / 10);
        const QuasiconvexReport report =
            check_quasiconvexity(spec, data.space, asset, pi, samples, opt.seed, opt.tol);
        json j = json::parse(report.to_json());
        j["suite"] = "quasiconvex";
        std::cout << j.dump(2) << "\n";
        return report.consistent() ? kExitOk : kExitPropertyFailure;
    }
    if (suite == "numeraire") {
        json results = json::array();
        bool all_pass = true;
        for (const auto& x : data.positions) {
            const NumeraireCheck check = check_numeraire_identity(spec, data.space, x, asset, opt.tol);
            json j;
            j["pass"] = check.pass;
            j["lhs"] = check.lhs;
            j["rhs"] = check.rhs;
            results.push_back(j);
            all_pass = all_pass && check.pass;
        }
        json j;
        j["suite"] = "numeraire";
        j["positions"] = results;
        j["all_pass"] = all_pass;
        std::cout << j.dump(2) << "\n";
        return all_pass ? kExitOk : kExitPropertyFailure;
    }
    if (suite == "dual") {
        json results = json::array();
        bool all_pass = true;
        for (const auto& x : data.positions) {
            const ExtendedValue primal = rho(spec, data.space, x, asset, opt.tol).value;
            const ExtendedValue dual = dual_rho(spec, data.space, x, asset);
            bool pass;
            if (primal.is_finite() && dual.is_finite())
                pass = std::abs(primal.value - dual.value) <= opt.tol + 1e-9;
            else
                pass = primal.tag == dual.tag;
            json j;
            j["primal"] = extended_to_cell(primal);
            j["dual"] = extended_to_cell(dual);
            j["pass"] = pass;
            results.push_back(j);
            all_pass = all_pass && pass;
        }
        json j;
        j["suite"] = "dual";
        j["positions"] = results;
        j["all_pass"] = all_pass;
        std::cout << j.dump(2) << "\n";
        return all_pass ? kExitOk : kExitPropertyFailure;
    }
    throw ValidationError("unknown suite '" + suite + "'");
}

int run_sweep(CommonOptions opt, const std::string& param, double from, double to, std::size_t steps) {
    if (steps < 2) throw ValidationError("sweep needs at least 2 steps");
    if (!(from < to)) throw ValidationError("sweep needs from < to");
    if (param != "alpha" && param != "price") throw ValidationError("sweep parameter must be alpha or price");

    const LoadedScenarios data = load_scenarios(opt.scenarios_path);
    const Vec& x = data.positions.front();

    std::cout << "param,rho,status,cash_sub\n";
    for (std::size_t k = 0; k < steps; ++k) {
        const double value = from + (to - from) * static_cast<double>(k) / static_cast<double>(steps - 1);
        CommonOptions point = opt;
        if (param == "alpha") {
            point.alpha = value;
            point.alpha_set = true;
            point.acceptance_json.clear(); // alpha sweeps ignore a fixed JSON spec
            if (point.family.empty()) throw ValidationError("alpha sweeps need --family");
        } else {
            point.price = value;
        }
        const AcceptanceSpec spec = build_spec(point);
        const EligibleAsset asset(point.price, data.payoff);
        const RhoResult r = rho(spec, data.space, x, asset, point.tol);
        const CashSubVerdict verdict =
            cash_subadditivity_report(spec, data.space, asset, point.budget, point.seed, point.tol);
        const char* verdict_text =
            verdict.verdict == CashSubVerdict::Verdict::Yes
                ? "Yes"
                : (verdict.verdict == CashSubVerdict::Verdict::No ? "No" : "Inconclusive");
        char value_buf[64];
        std::snprintf(value_buf, sizeof(value_buf), "%.12g", value);
        std::cout << value_buf << ',' << extended_to_cell(r.value) << ','
                  << (r.value.is_finite() ? "finite" : r.value.to_string()) << ',' << verdict_text
                  << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Capital requirements with general eligible assets on finite scenario spaces"};
    app.require_subcommand(1);

    CommonOptions price_opt;
    CLI::App* price_cmd = app.add_subcommand("price", "compute rho for each position column");
    add_common(price_cmd, price_opt);

    CommonOptions check_opt;
    std::string suite;
    CLI::App* check_cmd = app.add_subcommand("check", "run a verdict suite");
    add_common(check_cmd, check_opt);
    check_cmd->add_option("--suite", suite, "axioms|cash-sub|quasiconvex|numeraire|dual")->required();

    CommonOptions sweep_opt;
    std::string sweep_param;
    double sweep_from = 0.0, sweep_to = 0.0;
    std::size_t sweep_steps = 0;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "tabulate rho and cash-sub verdicts over a grid");
    add_common(sweep_cmd, sweep_opt);
    sweep_cmd->add_option("--param", sweep_param, "alpha|price")->required();
    sweep_cmd->add_option("--from", sweep_from)->required();
    sweep_cmd->add_option("--to", sweep_to)->required();
    sweep_cmd->add_option("--steps", sweep_steps)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (price_cmd->parsed()) return run_price(price_opt);
        if (check_cmd->parsed()) return run_check(check_opt, suite);
        if (sweep_cmd->parsed()) return run_sweep(sweep_opt, sweep_param, sweep_from, sweep_to, sweep_steps);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
