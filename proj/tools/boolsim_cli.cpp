// boolsim: experiment runner for the planar Boolean-model laboratory.
// One subcommand per construct, a flat key = value config file with CLI
// overrides, full config echo in every artifact, deterministic outputs.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "boolsim/config.hpp"
#include "boolsim/estimators.hpp"
#include "boolsim/layout.hpp"
#include "boolsim/model.hpp"
#include "boolsim/multiscale.hpp"
#include "boolsim/parallel.hpp"
#include "boolsim/report.hpp"
#include "boolsim/slice.hpp"

namespace fs = std::filesystem;
using namespace boolsim;

namespace {

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> overrides;  // key=value
    std::string out_dir = "out";
    std::int64_t seed = -1;              // -1: env or default
    int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "config file (key = value lines)");
    cmd->add_option("--set", o.overrides, "override a config key, key=value")
        ->take_all();
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--seed", o.seed, "RNG seed (overrides env BOOLSIM_SEED)");
    cmd->add_option("--threads", o.threads, "worker threads (0 = hardware)");
}

KeyValueConfig merge_config(const CommonOpts& o, const std::string& command) {
    KeyValueConfig cfg;
    if (const char* env = std::getenv("BOOLSIM_SEED")) cfg.set("seed", env);
    if (!o.config_path.empty()) {
        KeyValueConfig file = KeyValueConfig::parse_file(o.config_path);
        for (const std::string& k : file.keys()) cfg.set(k, file.get_string(k));
    }
    for (const std::string& kv : o.overrides) {
        std::size_t eq = kv.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--set", "expected key=value, got '" + kv + "'");
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (o.seed >= 0) cfg.set("seed", std::to_string(o.seed));
    if (!cfg.has("seed")) cfg.set("seed", "12345");
    cfg.set("command", command);
    cfg.set("threads", std::to_string(o.threads));
    return cfg;
}

Json config_echo_json(const KeyValueConfig& cfg) {
    Json j = Json::object();
    for (const std::string& k : cfg.keys()) j[k] = cfg.get_string(k);
    return j;
}

void emit(const CommonOpts& o, const KeyValueConfig& cfg,
          const std::string& command, Json result,
          const std::vector<std::pair<std::string, std::string>>& csvs = {}) {
    fs::create_directories(o.out_dir);
    Json payload{{"command", command},
                 {"config", config_echo_json(cfg)},
                 {"result", std::move(result)}};
    std::string path = o.out_dir + "/" + command + ".json";
    write_text_file(path, payload.dump(2) + "\n");
    for (const auto& [name, content] : csvs)
        write_text_file(o.out_dir + "/" + name, content);
    std::cout << "wrote " << path << "\n";
}

std::vector<double> parse_list(const KeyValueConfig& cfg, const std::string& key) {
    std::string v = cfg.get_string(key);
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < v.size()) {
        std::size_t comma = v.find(',', pos);
        std::string tok = v.substr(pos, comma == std::string::npos ? std::string::npos
                                                                   : comma - pos);
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw ConfigError(key, "bad list entry '" + tok + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw ConfigError(key, "empty list");
    return out;
}

RngStream base_stream(const KeyValueConfig& cfg) {
    return RngStream(static_cast<std::uint64_t>(cfg.get_int("seed")), 0);
}

Phase parse_phase(const KeyValueConfig& cfg) {
    std::string p = cfg.get_string("phase", "occupied");
    if (p == "occupied") return Phase::Occupied;
    if (p == "vacant") return Phase::Vacant;
    throw ConfigError("phase", "must be 'occupied' or 'vacant'");
}

ScaleLadder ladder_from(const KeyValueConfig& cfg) {
    ScaleLadder lad;
    lad.base = cfg.get_double("b", 8.0);
    lad.n_max = static_cast<int>(cfg.get_int("n_max", 5));
    lad.lambda = cfg.get_double("lambda", 0.02);
    lad.law = cfg.get_law("law", RadiusLaw::fixed(1.0));
    lad.reach_factor = cfg.get_double("kappa", 1e3);
    return lad;
}

int run_sample(const CommonOpts& o) {
    KeyValueConfig cfg = merge_config(o, "sample");
    double w = cfg.get_double("window_w", 10.0);
    double h = cfg.get_double("window_h", 10.0);
    Rect window = Rect::from_center({0, 0}, w, h);
    GrainSet set = sample_boolean(Region(window),
                                  cfg.get_double("lambda", 0.1),
                                  cfg.get_law("law", RadiusLaw::fixed(1.0)),
                                  base_stream(cfg).child("sample"));
    Json result = grains_to_json(set);
    if (cfg.get_bool("witness", false)) {
        // Left-right crossing witness for visualization, when one exists.
        CrossingSolver solver;
        auto chain = solver.witness_chain(window, Axis::X, set.grains);
        result["witness"] =
            chain ? witness_to_json(window, set, *chain) : Json(nullptr);
    }
    emit(o, cfg, "sample", std::move(result));
    return 0;
}

int run_sweep(const CommonOpts& o) {
    KeyValueConfig cfg = merge_config(o, "sweep");
    std::vector<double> grid = parse_list(cfg, "lambda_grid");
    std::vector<SweepRow> rows = crossing_prob_sweep(
        grid, cfg.get_double("L", 32.0), cfg.get_law("law", RadiusLaw::fixed(1.0)),
        parse_phase(cfg), cfg.get_u64("n_reps", 2000),
        base_stream(cfg).child("sweep"), o.threads);
    Json result = Json::array();
    for (const SweepRow& r : rows)
        result.push_back(Json{{"lambda", r.lambda}, {"estimate", to_json(r.estimate)}});
    emit(o, cfg, "sweep", std::move(result), {{"sweep.csv", sweep_csv(rows)}});
    return 0;
}

int run_recursion_check(const CommonOpts& o) {
    KeyValueConfig cfg = merge_config(o, "recursion-check");
    std::vector<double> lambdas = parse_list(cfg, "lambda_grid");
    std::vector<double> alphas = parse_list(cfg, "alpha_grid");
    RadiusLaw law = cfg.get_law("law", RadiusLaw::fixed(1.0));
    double kappa = cfg.get_double("kappa", 1e3);
    std::uint64_t n_reps = cfg.get_u64("n_reps", 10000);
    Json cells = Json::array();
    bool any_violated = false;
    RngStream stream = base_stream(cfg).child("recursion");
    int id = 0;
    for (double lam : lambdas) {
        for (double alpha : alphas) {
            RecursionCheck rc = check_recursion(alpha, lam, law, kappa, n_reps,
                                                stream.child(id++), o.threads);
            any_violated = any_violated || rc.verdict == Verdict::Violated;
            cells.push_back(to_json(rc));
        }
    }
    emit(o, cfg, "recursion-check",
         Json{{"cells", std::move(cells)}, {"any_violated", any_violated}});
    return any_violated ? 1 : 0;
}

int run_summability(const CommonOpts& o) {
    KeyValueConfig cfg = merge_config(o, "summability");
    SummabilityCertificate cert = summability_certificate(
        ladder_from(cfg), static_cast<int>(cfg.get_int("n_empirical", 1)),
        cfg.get_u64("n_reps", 10000), base_stream(cfg).child("summability"),
        o.threads);
    emit(o, cfg, "summability", to_json(cert),
         {{"summability.csv", certificate_csv(cert)}});
    std::cout << "summability total = " << cert.total
              << (cert.pass ? "  PASS" : "  FAIL") << "\n";
    return 0;
}

int run_vacancy_cert(const CommonOpts& o) {
    KeyValueConfig cfg = merge_config(o, "vacancy-cert");
    VacancyCertificate vc = vacancy_certificate(
        ladder_from(cfg), static_cast<int>(cfg.get_int("n_head", 1)),
        static_cast<int>(cfg.get_int("n_empirical", 1)),
        cfg.get_u64("n_reps_h", 10000), cfg.get_u64("n_reps_f", 80000),
        base_stream(cfg).child("vacancy"), o.threads);
    emit(o, cfg, "vacancy-cert", to_json(vc),
         {{"vacancy-scales.csv", certificate_csv(vc.scale_bounds)}});
    if (!vc.scale_bounds.chain_applicable) {
        std::cout << "vacancy bound uninformative: "
                  << vc.scale_bounds.chain_reason << "\n";
    } else {
        std::cout << "vacancy lower bound = " << vc.lower_bound
                  << (vc.pass_half ? "  PASS (>= 1/2)" : "") << "\n";
    }
    return 0;
}

int run_slice_check(const CommonOpts& o) {
    KeyValueConfig cfg = merge_config(o, "slice-check");
    double w = cfg.get_double("window_w", 16.0);
    double h = cfg.get_double("window_h", 16.0);
    SliceReport rep = slice_consistency(
        cfg.get_double("lambda", 0.5), cfg.get_law("law", RadiusLaw::fixed(1.0)),
        Rect::from_center({0, 0}, w, h), cfg.get_u64("n_reps", 200),
        base_stream(cfg).child("slice"), o.threads);
    emit(o, cfg, "slice-check", to_json(rep));
    return 0;
}

int run_threshold(const CommonOpts& o) {
    KeyValueConfig cfg = merge_config(o, "threshold");
    std::vector<double> scales = parse_list(cfg, "scales");
    ThresholdEstimate est = estimate_threshold(
        cfg.get_law("law", RadiusLaw::fixed(1.0)), parse_phase(cfg), scales,
        cfg.get_double("p_star", 0.5), cfg.get_double("bracket_tol", 0.03),
        cfg.get_u64("reps_per_probe", 10000), cfg.get_u64("budget", 2000000),
        base_stream(cfg).child("threshold"), o.threads);
    emit(o, cfg, "threshold", to_json(est),
         {{"threshold.csv", threshold_csv(est)}});
    const ScaleBracket& b = est.final_bracket();
    std::cout << "bracket [" << b.lo << ", " << b.hi << "] at L = " << b.scale
              << (est.budget_exhausted ? "  (budget exhausted)" : "") << "\n";
    return 0;
}

int run_lambda_d(const CommonOpts& o) {
    KeyValueConfig cfg = merge_config(o, "lambda-d");
    RadiusLaw law = cfg.get_law("law", RadiusLaw::fixed(1.0));
    double cap = cfg.get_double("window_cap", 256.0);
    std::uint64_t n_reps = cfg.get_u64("n_reps", 2000);
    RngStream stream = base_stream(cfg).child("lambda-d");
    Json result;
    if (cfg.has("censor_target")) {
        CensorBracket cb = censoring_bracket(
            law, cfg.get_double("censor_target"), cap, n_reps,
            cfg.get_double("bracket_tol", 0.03), stream, o.threads);
        result = to_json(cb);
    } else {
        std::vector<double> lambdas = parse_list(cfg, "lambda_grid");
        Json rows = Json::array();
        int id = 0;
        for (double lam : lambdas) {
            rows.push_back(to_json(
                estimate_lambda_D(lam, law, n_reps, cap, stream.child(id++), o.threads)));
        }
        result = Json{{"rows", std::move(rows)}};
    }
    emit(o, cfg, "lambda-d", std::move(result));
    return 0;
}

int run_e_event(const CommonOpts& o) {
    KeyValueConfig cfg = merge_config(o, "e-event");
    EEventReport rep = estimate_E_event(
        cfg.get_double("lambda", 0.05), cfg.get_law("law", RadiusLaw::fixed(1.0)),
        static_cast<int>(cfg.get_int("k_max", 20)), cfg.get_u64("n_reps", 10000),
        base_stream(cfg).child("e-event"), o.threads);
    emit(o, cfg, "e-event", to_json(rep));
    std::cout << "E-event lower bound = " << rep.lower_bound
              << (rep.informative ? "" : "  (uninformative)") << "\n";
    return 0;
}

int run_layout_dump(const CommonOpts& o) {
    KeyValueConfig cfg = merge_config(o, "layout-dump");
    Lemma1Layout layout = build_lemma1_layout(cfg.get_double("alpha", 1.0),
                                              cfg.get_double("kappa", 1e6));
    emit(o, cfg, "layout-dump", to_json(layout));
    return 0;
}

int run_knitting_check(const CommonOpts& o) {
    KeyValueConfig cfg = merge_config(o, "knitting-check");
    Lemma1Layout layout = build_lemma1_layout(cfg.get_double("alpha", 1.0),
                                              cfg.get_double("kappa", 1e6));
    KnittingReport knit = verify_knitting(layout);
    LayoutInvariantReport inv = check_layout_invariants(layout);
    bool ok = knit.all_pass && inv.all_ok();
    emit(o, cfg, "knitting-check",
         Json{{"knitting", to_json(knit)},
              {"invariants", to_json(inv)},
              {"ok", ok}});
    std::cout << (ok ? "all junctions pass" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"boolsim: planar Boolean-model vacancy percolation laboratory"};
    app.require_subcommand(1);

    struct Entry {
        const char* name;
        const char* help;
        int (*run)(const CommonOpts&);
        CommonOpts opts;
    };
    std::vector<Entry> entries{
        {"sample", "draw one restricted Boolean sample", run_sample, {}},
        {"sweep", "crossing probability over a lambda grid", run_sweep, {}},
        {"recursion-check", "scale recursion consistency grid",
         run_recursion_check, {}},
        {"summability", "scale summability certificate", run_summability, {}},
        {"vacancy-cert", "vacancy percolation lower bound", run_vacancy_cert, {}},
        {"slice-check", "3D slice consistency report", run_slice_check, {}},
        {"threshold", "critical intensity bracket", run_threshold, {}},
        {"lambda-d", "component diameter estimates / censor bracket",
         run_lambda_d, {}},
        {"e-event", "truncated diameter event lower bound", run_e_event, {}},
        {"layout-dump", "dump the knitting layout as JSON", run_layout_dump, {}},
        {"knitting-check", "verify the knitting layout", run_knitting_check, {}},
    };
    for (Entry& e : entries) {
        CLI::App* cmd = app.add_subcommand(e.name, e.help);
        add_common(cmd, e.opts);
        cmd->callback([&e] {
            int rc = e.run(e.opts);
            if (rc != 0) throw CLI::RuntimeError(rc);
        });
    }

    try {
        CLI11_PARSE(app, argc, argv);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
