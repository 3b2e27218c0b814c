// Command-line front door: run the verification suites, reproduce the
// experiment sweeps, and estimate/certify optimal constants. Same flags and
// seed give byte-identical CSV/JSON; wall-clock timings go to a separate
// .meta.json side channel so the main outputs stay comparable.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "poincare/experiments.hpp"
#include "poincare/io.hpp"

namespace {

using namespace poincare;

std::vector<int> parse_int_list(const std::string& spec, bool geometric) {
    std::vector<int> out;
    auto dots = spec.find("..");
    try {
        if (dots != std::string::npos) {
            int lo = std::stoi(spec.substr(0, dots));
            int hi = std::stoi(spec.substr(dots + 2));
            if (lo <= 0 || hi < lo) throw input_error("bad range '" + spec + "'");
            if (geometric)
                for (long long v = lo; v <= hi; v *= 2) out.push_back(static_cast<int>(v));
            else
                for (int v = lo; v <= hi; ++v) out.push_back(v);
            return out;
        }
        std::size_t pos = 0;
        while (pos < spec.size()) {
            auto comma = spec.find(',', pos);
            if (comma == std::string::npos) comma = spec.size();
            out.push_back(std::stoi(spec.substr(pos, comma - pos)));
            pos = comma + 1;
        }
    } catch (const input_error&) {
        throw;
    } catch (const std::exception&) {
        throw input_error("cannot parse list '" + spec + "'");
    }
    if (out.empty()) throw input_error("empty list '" + spec + "'");
    return out;
}

std::vector<Exponent> parse_p_list(const std::string& spec) {
    std::vector<Exponent> out;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        auto comma = spec.find(',', pos);
        if (comma == std::string::npos) comma = spec.size();
        out.push_back(Exponent::parse(spec.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    if (out.empty()) throw input_error("empty p list");
    return out;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void write_outputs(const std::string& out_dir, const std::string& family, const std::string& csv,
                   const Json& verdict, double elapsed) {
    std::filesystem::create_directories(out_dir);
    write_file(out_dir + "/" + family + ".csv", csv);
    write_file(out_dir + "/" + family + ".verdict.json", verdict.dump(2) + "\n");
    Json meta;
    meta["elapsed_seconds"] = elapsed;
    write_file(out_dir + "/" + family + ".meta.json", meta.dump(2) + "\n");
}

int run_verify(const std::string& suite, int trials, std::uint64_t seed,
               const std::string& out_path) {
    Json summary;
    bool pass = true;
    if (trials == 0) {
        std::cerr << "warning: 0 trials requested; vacuous pass\n";
        summary["suite"] = suite;
        summary["trials"] = 0;
        summary["failures"] = 0;
        summary["seed"] = seed;
    } else if (suite == "thm21") {
        SuiteResult r = thm21_suite(trials, seed);
        summary = r.to_json();
        pass = r.pass();
    } else if (suite == "cor23") {
        SuiteResult r = cor23_suite(trials, seed);
        summary = r.to_json();
        pass = r.pass();
    } else if (suite == "thm41") {
        FlowSuiteResult r = flow_suite(trials, seed);
        summary = r.suite.to_json();
        pass = r.suite.pass();
    } else if (suite == "doubling") {
        SuiteResult r = doubling_suite(trials, seed);
        summary = r.to_json();
        pass = r.pass();
    } else {
        throw input_error("unknown suite '" + suite + "'");
    }
    std::cout << summary.dump(2) << "\n";
    if (!out_path.empty()) write_file(out_path, summary.dump(2) + "\n");
    return pass ? 0 : 1;
}

int run_family(const std::string& family, const std::vector<int>& ks, const std::vector<int>& rs,
               const std::vector<Exponent>& ps, int trials, std::uint64_t seed,
               const std::string& out_dir, bool verdict_gate) {
    Timer timer;
    std::string csv;
    Json verdict;
    bool pass = true;
    if (family == "ex31") {
        Ex31Result r = ex31_sweep(ks, ps);
        csv = r.sweep.to_csv();
        verdict = r.sweep.verdict_json();
        verdict["exact_ok"] = r.exact_ok;
        pass = r.sweep.pass;
    } else if (family == "ex32") {
        Ex32Result r = ex32_sweep(ks, ps);
        csv = r.sweep.to_csv();
        verdict = r.sweep.verdict_json();
        verdict["sums_ok"] = r.sums_ok;
        pass = r.sweep.pass;
    } else if (family == "prop34") {
        if (ps.size() != 1) throw input_error("prop34: pass exactly one p");
        Prop34Result r = prop34_sweep(2, rs, ps.front());
        csv = r.sweep.to_csv();
        verdict = r.sweep.verdict_json();
        verdict["min_c"] = r.min_c;
        verdict["median_c"] = r.median_c;
        pass = r.pass;
    } else if (family == "thm35") {
        if (ps.size() != 1) throw input_error("thm35: pass exactly one p");
        Thm35Result r = thm35_sweep(2, rs, ps.front());
        csv = r.sweep.to_csv();
        verdict = r.sweep.verdict_json();
        verdict["upper_factor"] = r.upper_factor;
        verdict["lower_factor"] = r.lower_factor;
        pass = r.pass;
    } else if (family == "flow") {
        FlowSuiteResult r = flow_suite(trials, seed);
        csv = r.sweep.to_csv();
        verdict = r.suite.to_json();
        verdict["family"] = "flow";
        pass = r.suite.pass();
    } else {
        throw input_error("unknown family '" + family + "'");
    }
    write_outputs(out_dir, family, csv, verdict, timer.seconds());
    std::cout << verdict.dump(2) << "\n";
    return verdict_gate ? (pass ? 0 : 1) : 0;
}

int run_estimate(const std::string& family, const std::string& graph_file,
                 const std::string& region_spec, const Exponent& p, std::uint64_t seed,
                 int restarts, int iters, bool certify, const std::string& out_path) {
    std::optional<Graph> g;
    if (!graph_file.empty())
        g = load_graph(graph_file);
    else if (!family.empty())
        g = generate(family, seed);
    else
        throw input_error("estimate: give --family or --graph");

    Region e = [&]() -> Region {
        if (region_spec == "all") {
            std::vector<VertexId> members;
            for (VertexId x = 0; x < g->size(); ++x) members.push_back(x);
            return classify_region(*g, members);
        }
        auto colon = region_spec.find(':');
        std::string kind = region_spec.substr(0, colon);
        if (kind == "ball") {
            auto args = parse_int_list(region_spec.substr(colon + 1), false);
            if (args.size() != 2) throw input_error("region ball:center,radius");
            return ball(*g, args[0], args[1]);
        }
        if (kind == "members") {
            auto args = parse_int_list(region_spec.substr(colon + 1), false);
            std::vector<VertexId> members(args.begin(), args.end());
            return classify_region(*g, members);
        }
        throw input_error("region spec must be all, ball:c,r or members:a,b,...");
    }();

    Measure m = Measure::counting(g->size());
    ConstantEstimate est;
    if (certify) {
        if (!(p == Exponent::finite(2.0)))
            throw input_error("certify: only p = 2 has an upper certifier");
        try {
            est = certify_constant_p2(*g, e, m, seed, restarts, iters);
        } catch (const size_error& ex) {
            std::cerr << "notice: " << ex.what() << "; returning the lower bound only\n";
            est = estimate_constant(*g, e, m, p, seed, restarts, iters);
        }
    } else {
        est = estimate_constant(*g, e, m, p, seed, restarts, iters);
    }
    Json j = estimate_to_json(est);
    j["p"] = p.str();
    std::cout << j.dump(2) << "\n";
    if (!out_path.empty()) write_file(out_path, j.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete Lp-Poincare inequalities on graph and tree windows"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    auto* seed_opt = app.add_option("--seed", seed, "master seed; every trial derives its own");
    std::string config_path;
    app.add_option("--config", config_path, "JSON file with default values; flags win");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    int trials = 500;
    std::string out_path;
    verify->add_option("--suite", suite, "thm21|cor23|thm41|doubling")->required();
    verify->add_option("--trials", trials, "number of seeded instances");
    verify->add_option("--out", out_path, "write the JSON summary here too");

    auto* reproduce = app.add_subcommand("reproduce", "rerun an experiment family");
    std::string family, k_spec = "8..256", r_spec = "4..12", p_spec, out_dir = ".";
    bool geometric = false;
    int rep_trials = 500;
    reproduce->add_option("family", family, "ex31|ex32|prop34|thm35|flow")->required();
    reproduce->add_option("--k", k_spec, "k values: list or lo..hi");
    reproduce->add_option("--r", r_spec, "r values: list or lo..hi");
    reproduce->add_option("--p", p_spec, "exponents, e.g. 1,2,inf");
    reproduce->add_flag("--geometric", geometric, "ranges step by doubling");
    reproduce->add_option("--trials", rep_trials, "trials (flow family)");
    reproduce->add_option("--out", out_dir, "output directory");

    auto* sweep = app.add_subcommand("sweep", "run a family sweep without the verdict gate");
    std::string s_family, s_k = "8..256", s_r = "4..12", s_p, s_out = ".";
    bool s_geometric = false;
    int s_trials = 100;
    sweep->add_option("family", s_family, "ex31|ex32|prop34|thm35|flow")->required();
    sweep->add_option("--k", s_k, "k values");
    sweep->add_option("--r", s_r, "r values");
    sweep->add_option("--p", s_p, "exponents");
    sweep->add_flag("--geometric", s_geometric, "ranges step by doubling");
    sweep->add_option("--trials", s_trials, "trials (flow family)");
    sweep->add_option("--out", s_out, "output directory");

    auto* estimate = app.add_subcommand("estimate", "estimate or certify an optimal constant");
    std::string e_family, e_graph, e_region = "all", e_p = "2", e_out;
    int restarts = 50, iters = 200;
    bool certify = false;
    estimate->add_option("--family", e_family, "generator family, e.g. cycle:8");
    estimate->add_option("--graph", e_graph, "edge-list file");
    estimate->add_option("--region", e_region, "all | ball:c,r | members:a,b,...");
    estimate->add_option("--p", e_p, "exponent");
    estimate->add_option("--restarts", restarts, "ascent restarts");
    estimate->add_option("--iters", iters, "ascent iterations per restart");
    estimate->add_flag("--certify", certify, "also compute the p=2 relaxation upper bound");
    estimate->add_option("--out", e_out, "write the JSON here too");

    try {
        app.parse(argc, argv);
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw poincare::input_error("cannot open config " + config_path);
            try {
                Json cfg = Json::parse(in);
                auto fill_int = [&](CLI::Option* opt, const char* key, auto& target) {
                    if (opt->count() == 0 && cfg.contains(key)) target = cfg[key];
                };
                fill_int(seed_opt, "seed", seed);
                fill_int(verify->get_option("--trials"), "trials", trials);
                fill_int(reproduce->get_option("--trials"), "trials", rep_trials);
                if (reproduce->get_option("--p")->count() == 0 && cfg.contains("p"))
                    p_spec = cfg["p"].get<std::string>();
                if (reproduce->get_option("--k")->count() == 0 && cfg.contains("k"))
                    k_spec = cfg["k"].get<std::string>();
                if (reproduce->get_option("--r")->count() == 0 && cfg.contains("r"))
                    r_spec = cfg["r"].get<std::string>();
                if (reproduce->get_option("--out")->count() == 0 && cfg.contains("out"))
                    out_dir = cfg["out"].get<std::string>();
            } catch (const Json::exception& e) {
                throw poincare::input_error("bad config " + config_path + ": " + e.what());
            }
        }
        if (verify->parsed()) return run_verify(suite, trials, seed, out_path);
        if (reproduce->parsed()) {
            std::vector<Exponent> ps = p_spec.empty()
                                           ? std::vector<Exponent>{Exponent::finite(2.0)}
                                           : parse_p_list(p_spec);
            return run_family(family, parse_int_list(k_spec, geometric),
                              parse_int_list(r_spec, false), ps, rep_trials, seed, out_dir, true);
        }
        if (sweep->parsed()) {
            std::vector<Exponent> ps = s_p.empty() ? std::vector<Exponent>{Exponent::finite(2.0)}
                                                   : parse_p_list(s_p);
            return run_family(s_family, parse_int_list(s_k, s_geometric),
                              parse_int_list(s_r, false), ps, s_trials, seed, s_out, false);
        }
        if (estimate->parsed())
            return run_estimate(e_family, e_graph, e_region, Exponent::parse(e_p), seed, restarts,
                                iters, certify, e_out);
        return 2;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const poincare::input_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const poincare::size_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const poincare::window_error& e) {
        std::cerr << "window too small: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
