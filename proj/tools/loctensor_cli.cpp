// Command-line surface: instance/graph generators, pipeline runs, the exact
// threshold/QAOA tables, scaling scans, contraction-bound suites, and
// reproduction of the reference table for D = 2..19.
//
// Exit codes: 0 success, 1 verification mismatch or bound violation,
// 2 usage error.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "loctensor/csv.hpp"
#include "loctensor/engine.hpp"
#include "loctensor/instance.hpp"
#include "loctensor/m3l2.hpp"
#include "loctensor/rng.hpp"
#include "loctensor/serialize.hpp"
#include "loctensor/tensor_net.hpp"
#include "loctensor/triangle_free.hpp"

namespace {

using namespace loctensor;
using nlohmann::json;

// reference values for D = 2..19: threshold improvement, optimal tau,
// one-step QAOA improvement (4 printed decimals)
struct TableRow {
    int d;
    double thr;
    int tau;
    double qaoa;
};
constexpr TableRow kReferenceTable[] = {
    {2, 0.2500, 2, 0.2500},   {3, 0.1875, 3, 0.1925},   {4, 0.1406, 3, 0.1624},
    {5, 0.1562, 4, 0.1431},   {6, 0.1221, 5, 0.1294},   {7, 0.1282, 5, 0.1190},
    {8, 0.1166, 6, 0.1108},   {9, 0.1077, 6, 0.1040},   {10, 0.1077, 7, 0.0984},
    {11, 0.0925, 7, 0.0936},  {12, 0.0987, 8, 0.0894},  {13, 0.0886, 9, 0.0858},
    {14, 0.0905, 9, 0.0825},  {15, 0.0853, 10, 0.0796}, {16, 0.0833, 10, 0.0770},
    {17, 0.0816, 11, 0.0747}, {18, 0.0771, 11, 0.0725}, {19, 0.0778, 12, 0.0705},
};

std::string join_args(int argc, char** argv) {
    std::ostringstream ss;
    for (int i = 1; i < argc; ++i) ss << (i > 1 ? " " : "") << argv[i];
    return ss.str();
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> seed, bool& generated) {
    if (seed) {
        generated = false;
        return *seed;
    }
    generated = true;
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) std::cout << content;
    else io::write_file(out_path, content);
}

struct GenFlags {
    std::string type; // max-k-lin-2 | maxcut-bipartite | maxcut-triangle-free
    int n = 0;
    int n_per_side = 0;
    int d = 0;
    int k = 3;
    std::string sign_mode = "random";
};

Instance instance_from_gen(const GenFlags& gen, std::uint64_t seed) {
    if (gen.type == "max-k-lin-2") {
        const SignMode mode =
            gen.sign_mode == "all_plus" ? SignMode::AllPlus : SignMode::UniformRandom;
        return gen_regular_klin2(gen.n, gen.d, gen.k, seed, mode);
    }
    if (gen.type == "maxcut-bipartite")
        return maxcut_as_max2lin2(gen_bipartite_regular_graph(gen.n_per_side, gen.d, seed));
    if (gen.type == "maxcut-triangle-free")
        return maxcut_as_max2lin2(gen_triangle_free_regular_graph(gen.n, gen.d, seed));
    throw CLI::ValidationError("--type", "unknown generator type: " + gen.type);
}

int cmd_reproduce_table(int dmax, const std::string& out_path, const std::string& flags) {
    std::ostringstream ss;
    ss << csv::metadata_header(flags, 0);
    ss << "D,threshold_improvement,tau_star,qaoa_improvement\n";
    std::vector<std::string> diffs;
    for (const TableRow& ref : kReferenceTable) {
        if (ref.d > dmax) break;
        const tf::ThresholdOptimum opt = tf::optimize_threshold(ref.d);
        const double qaoa = tf::qaoa_one_step(ref.d);
        ss << ref.d << ',' << csv::fmt_fixed(opt.improvement, 4) << ',' << opt.tau << ','
           << csv::fmt_fixed(qaoa, 4) << '\n';
        if (std::abs(opt.improvement - ref.thr) > 1e-4)
            diffs.push_back("D=" + std::to_string(ref.d) + " threshold improvement " +
                            csv::fmt(opt.improvement) + " != " + csv::fmt(ref.thr));
        if (opt.tau != ref.tau)
            diffs.push_back("D=" + std::to_string(ref.d) + " tau " + std::to_string(opt.tau) +
                            " != " + std::to_string(ref.tau));
        if (std::abs(qaoa - ref.qaoa) > 1e-4)
            diffs.push_back("D=" + std::to_string(ref.d) + " qaoa " + csv::fmt(qaoa) +
                            " != " + csv::fmt(ref.qaoa));
    }
    emit(out_path, ss.str());
    if (!diffs.empty()) {
        std::cerr << "reference table mismatch:\n";
        for (const std::string& d : diffs) std::cerr << "  " << d << '\n';
        return 1;
    }
    std::cerr << "reference table reproduced (" << std::min(dmax - 1, 18) << " rows)\n";
    return 0;
}

int cmd_scan(int dmin, int dmax, const std::string& out_path, const std::string& flags) {
    const std::vector<tf::ScanRow> rows = tf::scaling_scan(dmin, dmax);
    const std::vector<int> wins = tf::qaoa_wins(rows);
    std::ostringstream ss;
    ss << csv::metadata_header(flags, 0);
    ss << "D,tau_star,thr_improvement,thr_scaled,qaoa_improvement,qaoa_scaled\n";
    for (const tf::ScanRow& r : rows)
        ss << r.d << ',' << r.tau_star << ',' << csv::fmt(r.thr_improvement) << ','
           << csv::fmt(r.thr_scaled) << ',' << csv::fmt(r.qaoa_improvement) << ','
           << csv::fmt(r.qaoa_scaled) << '\n';
    ss << "# qaoa_beats_threshold:";
    for (int d : wins) ss << ' ' << d;
    ss << '\n';
    emit(out_path, ss.str());
    std::cerr << "scan D=" << dmin << ".." << dmax << "; qaoa beats threshold at";
    if (wins.empty()) std::cerr << " (none)";
    for (int d : wins) std::cerr << ' ' << d;
    std::cerr << '\n';
    return 0;
}

int cmd_run(const std::string& instance_path, const GenFlags& gen, std::uint64_t gen_seed,
            const std::string& schedule_path, std::uint64_t trials, std::uint64_t seed,
            bool seed_generated, bool dump_trials, const std::string& out_path,
            const std::string& flags) {
    Instance inst;
    if (!instance_path.empty()) inst = io::instance_from_json(io::read_file(instance_path));
    else inst = instance_from_gen(gen, gen_seed);

    const io::RunSpec spec = io::run_spec_from_json(io::read_file(schedule_path));
    if (spec.expected_k > 0 && spec.expected_k != inst.k)
        throw CLI::ValidationError("--schedule", "schedule expects arity k=" +
                                                     std::to_string(spec.expected_k) +
                                                     " but instance has k=" +
                                                     std::to_string(inst.k));

    std::vector<double> per_trial;
    const TrialStats stats =
        run_trials(inst, spec.init, spec.schedule, spec.rounding, seed, trials,
                   dump_trials ? &per_trial : nullptr);
    json j;
    j["meta"] = {{"version", csv::kVersion},
                 {"flags", flags},
                 {"seed", seed},
                 {"seed_generated", seed_generated}};
    j["n_spins"] = inst.n_spins;
    j["k"] = inst.k;
    j["n_terms"] = inst.terms.size();
    j["trials"] = stats.trials;
    j["mean"] = stats.mean;
    j["stderr"] = stats.stderr_;
    if (dump_trials) j["per_trial"] = per_trial;
    emit(out_path, j.dump(2) + "\n");
    return 0;
}

// one-step evaluation at a fixed degree: hard threshold (given or optimized),
// soft-threshold search, or a linear step with a chosen init, exact when the
// support is finite and Monte Carlo when sampled
int cmd_evaluate(int d, int tau, double grid, double c0, const std::string& init_name,
                 std::uint64_t samples, std::uint64_t seed, bool seed_generated,
                 const std::string& format, const std::string& out_path,
                 const std::string& flags) {
    tf::EvalResult res;
    res.d = d;
    if (c0 != 0.0) {
        InitKind init = InitKind::PlusMinusOne;
        if (init_name == "pm1") init = InitKind::PlusMinusOne;
        else if (init_name == "pm_half") init = InitKind::PlusMinusHalf;
        else if (init_name == "uniform") init = InitKind::ContinuousUniform;
        else if (init_name == "four_point") init = InitKind::FourPoint;
        else throw CLI::ValidationError("--init", "unknown init: " + init_name);
        if (samples > 0) {
            const tf::McEstimate est = tf::mc_local_subgraph(d, init, c0, samples, seed);
            res.improvement = est.value;
            res.method = "monte-carlo";
            res.stderr_ = est.stderr_;
            res.samples = est.samples;
        } else {
            res.improvement = tf::enumerate_local_subgraph(d, init, c0);
            res.method = "exact-enumeration";
        }
        res.params = "c0=" + csv::fmt(c0) + " init=" + init_name;
    } else if (grid > 0.0) {
        const tf::SoftThresholdOptimum best = tf::optimize_soft_threshold(d, grid);
        res.improvement = best.improvement;
        res.method = "exact-binomial";
        res.params = "soft boundary=" + std::to_string(best.boundary) +
                     " q=" + csv::fmt(best.boundary_value) + " grid=" + csv::fmt(grid);
    } else if (tau >= 0) {
        res.improvement = tf::expected_improvement(tf::threshold_rule(d, tau));
        res.method = "exact-binomial";
        res.params = "tau=" + std::to_string(tau);
    } else {
        const tf::ThresholdOptimum best = tf::optimize_threshold(d);
        res.improvement = best.improvement;
        res.method = "exact-binomial";
        res.params = "tau*=" + std::to_string(best.tau);
    }

    if (format == "json") {
        json j;
        j["meta"] = {{"version", csv::kVersion},
                     {"flags", flags},
                     {"seed", seed},
                     {"seed_generated", seed_generated}};
        j["d"] = res.d;
        j["improvement"] = res.improvement;
        j["method"] = res.method;
        j["params"] = res.params;
        if (res.method == "monte-carlo") {
            j["stderr"] = res.stderr_;
            j["samples"] = res.samples;
        }
        emit(out_path, j.dump(2) + "\n");
    } else if (format == "csv") {
        std::ostringstream ss;
        ss << csv::metadata_header(flags, seed);
        ss << "d,improvement,method,params,stderr,samples\n";
        ss << res.d << ',' << csv::fmt(res.improvement) << ',' << res.method << ','
           << res.params << ',' << csv::fmt(res.stderr_) << ',' << res.samples << '\n';
        emit(out_path, ss.str());
    } else {
        throw CLI::ValidationError("--format", "unknown format: " + format);
    }
    return 0;
}

int cmd_check_bounds(const std::string& fixtures_path, int count, std::uint64_t seed,
                     const std::string& flags) {
    int violations = 0;
    int checked = 0;
    auto check_one = [&](const tn::TensorNetwork& net, const std::vector<int>& subset) {
        const tn::LemmaBoundCheck lb = tn::check_lemma_bound(net);
        const tn::CauchySchwarzCheck cs = tn::check_cauchy_schwarz(net, subset);
        const bool cut_nonneg = cs.rhs >= -1e-9;
        if (!lb.holds || !cs.holds || !cut_nonneg) {
            ++violations;
            std::cerr << "violation: |val|=" << csv::fmt(std::abs(lb.value))
                      << " bound=" << csv::fmt(lb.bound) << " val^2=" << csv::fmt(cs.lhs)
                      << " cut=" << csv::fmt(cs.rhs) << "\noffending network:\n"
                      << io::to_json(net) << '\n';
        }
        ++checked;
    };
    if (!fixtures_path.empty()) {
        const auto nets = io::networks_from_json(io::read_file(fixtures_path));
        for (std::size_t i = 0; i < nets.size(); ++i)
            check_one(nets[i], tn::random_subset(rng::mix64(seed ^ i),
                                                 static_cast<int>(nets[i].tensors.size())));
    } else {
        for (int i = 0; i < count; ++i) {
            const std::uint64_t s = rng::mix64(seed ^ static_cast<std::uint64_t>(i));
            const tn::TensorNetwork net = tn::random_network(s);
            check_one(net, tn::random_subset(s + 1, static_cast<int>(net.tensors.size())));
        }
    }
    std::cout << csv::metadata_header(flags, seed);
    std::cout << "checked: " << checked << "\nviolations: " << violations << '\n';
    return violations == 0 ? 0 : 1;
}

int cmd_m3l2_scaling(const std::vector<int>& d_list, std::vector<int> n_list, double alpha,
                     std::uint64_t trials, std::uint64_t seed, const std::string& out_path,
                     const std::string& flags) {
    if (n_list.size() == 1) n_list.assign(d_list.size(), n_list.front());
    const auto rows = m3l2::scaling_experiment(d_list, n_list, alpha, trials, seed);
    std::ostringstream ss;
    ss << csv::metadata_header(flags, seed);
    ss << "D,N,c0,mean,stderr,scaled_ratio,clamp_fraction\n";
    for (const m3l2::ScalingRow& r : rows)
        ss << r.d << ',' << r.n << ',' << csv::fmt(r.c0) << ',' << csv::fmt(r.mean) << ','
           << csv::fmt(r.stderr_) << ',' << csv::fmt(r.scaled_ratio) << ','
           << csv::fmt(r.clamp_fraction) << '\n';
    emit(out_path, ss.str());
    return 0;
}

int cmd_m3l2_report(const std::string& instance_path, const GenFlags& gen,
                    std::uint64_t gen_seed, double c0, double alpha, std::uint64_t trials,
                    std::uint64_t seed, bool seed_generated, const std::string& out_path,
                    const std::string& flags) {
    Instance inst;
    if (!instance_path.empty()) inst = io::instance_from_json(io::read_file(instance_path));
    else inst = instance_from_gen(gen, gen_seed);
    if (c0 == 0.0) {
        const ValidationReport rep = validate_instance(inst);
        if (!rep.degree_regular)
            throw CLI::ValidationError("--alpha", "alpha rule needs a degree-regular instance");
        c0 = alpha * std::pow(static_cast<double>(rep.degree), -0.75);
    }
    const m3l2::ExpansionReport rep = m3l2::make_report(inst, c0, trials, seed);
    json j;
    j["meta"] = {{"version", csv::kVersion},
                 {"flags", flags},
                 {"seed", seed},
                 {"seed_generated", seed_generated}};
    j["c0"] = rep.c0;
    j["linear_term"] = rep.linear_term;
    j["cubic_term_loop"] = rep.cubic_loop;
    if (rep.cubic_oracle) j["cubic_term_oracle"] = *rep.cubic_oracle;
    j["predicted_total"] = rep.predicted_total;
    j["measured_mean"] = rep.measured_mean;
    j["measured_stderr"] = rep.measured_stderr;
    j["trials"] = rep.trials;
    j["clamp_fraction"] = rep.clamp_fraction;
    emit(out_path, j.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bounded-depth local optimization on MAX-K-LIN-2 and triangle-free MAX-CUT"};
    app.require_subcommand(1);
    const std::string flags = join_args(argc, argv);

    // shared options
    std::string out_path;
    std::optional<std::uint64_t> seed_opt;
    std::uint64_t trials = 1000;

    // gen-instance
    auto* gi = app.add_subcommand("gen-instance", "generate a degree-regular MAX-K-LIN-2 instance");
    GenFlags gi_flags;
    gi_flags.type = "max-k-lin-2";
    gi->add_option("--n", gi_flags.n, "number of spins")->required();
    gi->add_option("--d", gi_flags.d, "degree (terms per spin)")->required();
    gi->add_option("--k", gi_flags.k, "arity")->capture_default_str();
    gi->add_option("--sign-mode", gi_flags.sign_mode, "all_plus|random")->capture_default_str();
    gi->add_option("--seed", seed_opt, "generator seed");
    gi->add_option("--out", out_path, "output file (default stdout)");

    // gen-graph
    auto* gg = app.add_subcommand("gen-graph", "generate a regular triangle-free graph");
    std::string gg_type = "bipartite";
    int gg_n = 0, gg_nps = 0, gg_d = 0;
    gg->add_option("--type", gg_type, "bipartite|triangle-free")->capture_default_str();
    gg->add_option("--n", gg_n, "vertices (triangle-free type)");
    gg->add_option("--n-per-side", gg_nps, "vertices per side (bipartite type)");
    gg->add_option("--d", gg_d, "degree")->required();
    gg->add_option("--seed", seed_opt, "generator seed");
    gg->add_option("--out", out_path, "output file (default stdout)");

    // reproduce-table
    auto* rt = app.add_subcommand("reproduce-table",
                                  "emit the threshold/QAOA table for D=2..19 and verify it");
    int rt_dmax = 19;
    rt->add_option("--dmax", rt_dmax, "largest degree")->capture_default_str()->check(CLI::Range(2, 19));
    rt->add_option("--out", out_path, "output file (default stdout)");

    // scan
    auto* sc = app.add_subcommand("scan", "exact threshold-vs-QAOA scan over a degree range");
    int sc_dmin = 2, sc_dmax = 100;
    sc->add_option("--dmin", sc_dmin, "smallest degree")->capture_default_str()->check(CLI::Range(1, 5000));
    sc->add_option("--dmax", sc_dmax, "largest degree")->capture_default_str()->check(CLI::Range(1, 5000));
    sc->add_option("--out", out_path, "output file (default stdout)");

    // run
    auto* rn = app.add_subcommand("run", "run a schedule on an instance over many trials");
    std::string rn_instance, rn_schedule;
    GenFlags rn_gen;
    std::optional<std::uint64_t> rn_gen_seed;
    bool rn_dump = false;
    rn->add_option("--instance", rn_instance, "instance JSON file");
    rn->add_option("--gen-type", rn_gen.type,
                   "max-k-lin-2|maxcut-bipartite|maxcut-triangle-free");
    rn->add_option("--n", rn_gen.n, "spins / vertices for the generator");
    rn->add_option("--n-per-side", rn_gen.n_per_side, "bipartite generator size");
    rn->add_option("--d", rn_gen.d, "generator degree");
    rn->add_option("--k", rn_gen.k, "generator arity")->capture_default_str();
    rn->add_option("--gen-seed", rn_gen_seed, "generator seed (default: run seed)");
    rn->add_option("--schedule", rn_schedule, "schedule JSON file")->required();
    rn->add_option("--trials", trials, "number of independent trials")->capture_default_str();
    rn->add_option("--seed", seed_opt, "run seed");
    rn->add_flag("--dump-trials", rn_dump, "include per-trial objectives");
    rn->add_option("--out", out_path, "output file (default stdout)");

    // evaluate
    auto* ev = app.add_subcommand("evaluate", "one-step evaluation at a fixed degree");
    int ev_d = 3, ev_tau = -1;
    double ev_grid = 0.0, ev_c0 = 0.0;
    std::string ev_init = "pm1", ev_format = "json";
    std::uint64_t ev_samples = 0;
    ev->add_option("--d", ev_d, "degree")->required()->check(CLI::Range(1, 5000));
    ev->add_option("--tau", ev_tau, "hard threshold (omit to optimize)");
    ev->add_option("--grid", ev_grid, "soft-threshold grid step, e.g. 0.01");
    ev->add_option("--c0", ev_c0, "linear-step coefficient (with --init)");
    ev->add_option("--init", ev_init, "pm1|pm_half|uniform|four_point")->capture_default_str();
    ev->add_option("--samples", ev_samples, "Monte Carlo samples (0 = exact enumeration)");
    ev->add_option("--format", ev_format, "json|csv")->capture_default_str();
    ev->add_option("--seed", seed_opt, "sampling seed");
    ev->add_option("--out", out_path, "output file (default stdout)");

    // check-bounds
    auto* cb = app.add_subcommand("check-bounds",
                                  "contraction-bound and doubling-inequality suites");
    std::string cb_fixtures;
    int cb_count = 1000;
    cb->add_option("--fixtures", cb_fixtures, "network JSON fixtures file");
    cb->add_option("--count", cb_count, "number of random networks")->capture_default_str();
    cb->add_option("--seed", seed_opt, "random-network seed");

    // m3l2-scaling
    auto* ms = app.add_subcommand("m3l2-scaling", "scaled-mean table over degrees");
    std::vector<int> ms_d{4, 8, 16, 32};
    std::vector<int> ms_n{96};
    double ms_alpha = 0.25;
    ms->add_option("--d-list", ms_d, "degrees")->capture_default_str();
    ms->add_option("--n-list", ms_n, "spin counts (single value broadcasts)")->capture_default_str();
    ms->add_option("--alpha", ms_alpha, "c0 = alpha * D^(-3/4)")->capture_default_str();
    ms->add_option("--trials", trials, "trials per degree")->capture_default_str();
    ms->add_option("--seed", seed_opt, "run seed");
    ms->add_option("--out", out_path, "output file (default stdout)");

    // m3l2-report
    auto* mr = app.add_subcommand("m3l2-report", "expansion report for one instance");
    std::string mr_instance;
    GenFlags mr_gen;
    mr_gen.type = "max-k-lin-2";
    std::optional<std::uint64_t> mr_gen_seed;
    double mr_c0 = 0.0, mr_alpha = 0.25;
    mr->add_option("--instance", mr_instance, "instance JSON file");
    mr->add_option("--n", mr_gen.n, "generator spins");
    mr->add_option("--d", mr_gen.d, "generator degree");
    mr->add_option("--c0", mr_c0, "step coefficient (overrides --alpha)");
    mr->add_option("--alpha", mr_alpha, "c0 = alpha * D^(-3/4)")->capture_default_str();
    mr->add_option("--trials", trials, "measurement trials")->capture_default_str();
    mr->add_option("--seed", seed_opt, "run seed");
    mr->add_option("--out", out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        bool seed_generated = false;
        if (gi->parsed()) {
            const std::uint64_t seed = resolve_seed(seed_opt, seed_generated);
            const Instance inst = instance_from_gen(gi_flags, seed);
            emit(out_path, io::to_json(inst) + "\n");
            std::cerr << "seed: " << seed << (seed_generated ? " (generated)" : "") << '\n';
            return 0;
        }
        if (gg->parsed()) {
            const std::uint64_t seed = resolve_seed(seed_opt, seed_generated);
            Graph g;
            if (gg_type == "bipartite") g = gen_bipartite_regular_graph(gg_nps, gg_d, seed);
            else if (gg_type == "triangle-free")
                g = gen_triangle_free_regular_graph(gg_n, gg_d, seed);
            else throw CLI::ValidationError("--type", "unknown graph type: " + gg_type);
            emit(out_path, io::to_json(g) + "\n");
            std::cerr << "seed: " << seed << (seed_generated ? " (generated)" : "") << '\n';
            return 0;
        }
        if (rt->parsed()) return cmd_reproduce_table(rt_dmax, out_path, flags);
        if (sc->parsed()) return cmd_scan(sc_dmin, sc_dmax, out_path, flags);
        if (ev->parsed()) {
            const std::uint64_t seed = resolve_seed(seed_opt, seed_generated);
            return cmd_evaluate(ev_d, ev_tau, ev_grid, ev_c0, ev_init, ev_samples, seed,
                                seed_generated, ev_format, out_path, flags);
        }
        if (rn->parsed()) {
            const std::uint64_t seed = resolve_seed(seed_opt, seed_generated);
            return cmd_run(rn_instance, rn_gen, rn_gen_seed.value_or(seed), rn_schedule, trials,
                           seed, seed_generated, rn_dump, out_path, flags);
        }
        if (cb->parsed()) {
            const std::uint64_t seed = resolve_seed(seed_opt, seed_generated);
            return cmd_check_bounds(cb_fixtures, cb_count, seed, flags);
        }
        if (ms->parsed()) {
            const std::uint64_t seed = resolve_seed(seed_opt, seed_generated);
            return cmd_m3l2_scaling(ms_d, ms_n, ms_alpha, trials, seed, out_path, flags);
        }
        if (mr->parsed()) {
            const std::uint64_t seed = resolve_seed(seed_opt, seed_generated);
            return cmd_m3l2_report(mr_instance, mr_gen, mr_gen_seed.value_or(seed), mr_c0,
                                   mr_alpha, trials, seed, seed_generated, out_path, flags);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed JSON input: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
