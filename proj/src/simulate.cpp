#include "o2rc/simulate.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "o2rc/dilute_potts.hpp"
#include "o2rc/errors.hpp"
#include "o2rc/estimators.hpp"
#include "o2rc/oracle.hpp"

namespace o2rc {

namespace {

using json = nlohmann::ordered_json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write " + path);
    f << text;
    if (!f) throw IoError("failed writing " + path);
}

DynamicsConfig dynamics_of(const ExperimentConfig& cfg) {
    DynamicsConfig dyn;
    dyn.scheme = cfg.scheme();
    dyn.burn_in = cfg.burn_in;
    dyn.sweeps_between_measurements = cfg.sweeps_between;
    dyn.interleave_heat_bath = cfg.interleave;
    dyn.metropolis_width = cfg.metropolis_width;
    return dyn;
}

// run `chains` jobs over a worker pool; results land in a vector indexed by
// chain so the merge order never depends on scheduling
template <typename Result, typename Job>
std::vector<Result> run_chain_pool(int chains, int workers, Job job) {
    std::vector<Result> results(chains);
    int nw = workers == 0 ? static_cast<int>(std::thread::hardware_concurrency()) : workers;
    if (nw < 1) nw = 1;
    if (nw > chains) nw = chains;
    if (nw == 1) {
        for (int c = 0; c < chains; ++c) results[c] = job(c);
        return results;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mtx;
    for (int wi = 0; wi < nw; ++wi)
        pool.emplace_back([&]() {
            for (;;) {
                int c = next.fetch_add(1);
                if (c >= chains) return;
                try {
                    results[c] = job(c);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mtx);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    return results;
}

json stats_json(const BatchStats& s) {
    return json{{"mean", s.mean}, {"err", s.err}, {"batches", s.batches}};
}

struct O2ChainResult {
    std::map<std::string, ObservableSeries> series;
    std::string snapshot;
    std::vector<double> final_theta;
};

json simulate_o2_at(const ExperimentConfig& cfg, double t, int t_index,
                    const std::string& out_dir) {
    Graph g = cfg.make_graph(t);
    WeightFunction w = cfg.make_weight(t);
    int site = cfg.resolve_site(g);
    DynamicsConfig dyn = dynamics_of(cfg);
    MeasurementPlan plan;
    plan.site = site;

    auto results = run_chain_pool<O2ChainResult>(cfg.chains, cfg.workers, [&](int c) {
        RngStream rng(cfg.seed, static_cast<std::uint64_t>(c));
        SpinConfig spin(g, w);
        O2ChainResult r;
        r.series = run_chain(spin, dyn, plan, cfg.measurements, rng);
        SnapshotMeta meta{cfg.seed, static_cast<std::uint64_t>(
                                        (dyn.burn_in + static_cast<long long>(cfg.measurements) *
                                                           dyn.sweeps_between_measurements))};
        r.snapshot = snapshot_csv(spin, meta);
        r.final_theta.resize(g.vertex_count());
        for (int v = 0; v < g.vertex_count(); ++v) r.final_theta[v] = spin.theta(v);
        return r;
    });

    // per-(t, chain) series concatenated in chain order
    std::ostringstream csv;
    csv << "chain,sweep_index,observable,value\n";
    for (int c = 0; c < cfg.chains; ++c)
        for (const auto& [name, series] : results[c].series)
            for (size_t i = 0; i < series.values.size(); ++i)
                csv << c << ',' << i << ',' << name << ',' << fmt17(series.values[i]) << '\n';
    write_file(out_dir + "/series_t" + std::to_string(t_index) + ".csv", csv.str());
    write_file(out_dir + "/snapshot_t" + std::to_string(t_index) + ".csv", results[0].snapshot);

    // bond configuration sampled from the final chain-0 spins, as a
    // bit-string in edge order next to the snapshot
    {
        SpinConfig final_state(g, w);
        for (int v = 0; v < g.vertex_count(); ++v)
            if (!final_state.pinned(v)) final_state.set_theta(v, results[0].final_theta[v]);
        RngStream bond_rng(cfg.seed, 1000000 + static_cast<std::uint64_t>(t_index));
        BondConfig bonds = sample_bonds(final_state, ReflectionAxis::imaginary(), bond_rng);
        write_file(out_dir + "/bonds_t" + std::to_string(t_index) + ".txt", bond_bits(bonds) + "\n");
    }

    // merged series per observable
    std::map<std::string, std::vector<double>> merged;
    for (int c = 0; c < cfg.chains; ++c)
        for (const auto& [name, series] : results[c].series) {
            auto& m = merged[name];
            m.insert(m.end(), series.values.begin(), series.values.end());
        }

    json out;
    out["t"] = t;
    for (const auto& [name, values] : merged)
        out[name] = stats_json(batch_means(values));
    auto ratio_entry = [&](const char* num, const char* den) -> json {
        if (!merged.count(num) || !merged.count(den)) return nullptr;
        try {
            RatioEstimate r = ratio_with_ci(merged[num], merged[den]);
            return json{{"ratio", r.ratio}, {"err", r.ratio_err}, {"batches", r.batches}};
        } catch (const UndefinedRatioError&) {
            return json{{"undefined", true}};
        }
    };
    out["ratio_cos1_over_conn"] = ratio_entry("cos1", "conn");
    out["ratio_cos2_over_conn_both"] = ratio_entry("cos2", "conn_both");
    return out;
}

struct DPChainResult {
    std::vector<TauSample> samples;
};

json simulate_dp_at(const ExperimentConfig& cfg, double t, int t_index,
                    const std::string& out_dir) {
    Graph g = cfg.make_graph(t);
    DilutePottsParams params{cfg.dp_q, cfg.dp_lambda, t, cfg.dp_u};
    params.validate();
    int x = cfg.resolve_site(g);
    int y = g.neighbors(x).empty() ? x : g.neighbors(x).front().first;

    auto results = run_chain_pool<DPChainResult>(cfg.chains, cfg.workers, [&](int c) {
        RngStream rng(cfg.seed, static_cast<std::uint64_t>(c));
        DPConfig dp(g);
        DPChainResult r;
        r.samples = run_dp_chain(dp, params, x, y, cfg.burn_in, cfg.measurements,
                                 cfg.sweeps_between, rng);
        return r;
    });

    std::ostringstream csv;
    csv << "chain,sweep_index,observable,value\n";
    for (int c = 0; c < cfg.chains; ++c)
        for (size_t i = 0; i < results[c].samples.size(); ++i) {
            const TauSample& s = results[c].samples[i];
            csv << c << ',' << i << ",valid," << (s.valid ? 1 : 0) << '\n';
            csv << c << ',' << i << ",equal," << (s.equal ? 1 : 0) << '\n';
            csv << c << ',' << i << ",connected," << (s.connected ? 1 : 0) << '\n';
        }
    write_file(out_dir + "/series_t" + std::to_string(t_index) + ".csv", csv.str());

    std::vector<TauSample> merged;
    for (int c = 0; c < cfg.chains; ++c)
        merged.insert(merged.end(), results[c].samples.begin(), results[c].samples.end());
    TauEstimate est = dp_tau_estimator(merged, params.Q);

    json out;
    out["t"] = t;
    out["site_x"] = x;
    out["site_y"] = y;
    out["tau"] = json{{"mean", est.tau}, {"err", est.tau_err}};
    out["rhs"] = json{{"mean", est.rhs}, {"err", est.rhs_err}};
    return out;
}

} // namespace

namespace {

// config record for result files: the worker count is an execution resource,
// identical seeds must give identical outputs whatever it is
std::string config_record(const ExperimentConfig& cfg) {
    std::istringstream is(cfg.serialize());
    std::ostringstream os;
    std::string line;
    while (std::getline(is, line))
        if (line.rfind("workers", 0) != 0) os << line << '\n';
    return os.str();
}

} // namespace

std::string run_simulate(const ExperimentConfig& cfg, const std::string& out_dir) {
    cfg.validate();
    std::filesystem::create_directories(out_dir);
    json summary;
    summary["config"] = config_record(cfg);
    summary["results"] = json::array();
    for (size_t i = 0; i < cfg.t_grid.size(); ++i) {
        json entry = cfg.model == "dilute_potts"
                         ? simulate_dp_at(cfg, cfg.t_grid[i], static_cast<int>(i), out_dir)
                         : simulate_o2_at(cfg, cfg.t_grid[i], static_cast<int>(i), out_dir);
        summary["results"].push_back(entry);
    }
    std::string text = summary.dump(2) + "\n";
    write_file(out_dir + "/summary.json", text);
    return text;
}

std::string run_sweep(const ExperimentConfig& cfg, const std::string& out_dir) {
    cfg.validate();
    std::filesystem::create_directories(out_dir);
    std::ostringstream csv;
    if (cfg.model == "dilute_potts") {
        csv << "t,tau,tau_err,rhs,rhs_err\n";
        for (size_t i = 0; i < cfg.t_grid.size(); ++i) {
            json e = simulate_dp_at(cfg, cfg.t_grid[i], static_cast<int>(i), out_dir);
            csv << fmt17(cfg.t_grid[i]) << ',' << fmt17(e["tau"]["mean"].get<double>()) << ','
                << fmt17(e["tau"]["err"].get<double>()) << ',' << fmt17(e["rhs"]["mean"].get<double>())
                << ',' << fmt17(e["rhs"]["err"].get<double>()) << '\n';
        }
    } else {
        csv << "t,cos1,cos1_err,cos2,cos2_err,p_conn,p_conn_err,p_both,p_both_err,"
               "ratio1,ratio1_err,ratio2,ratio2_err\n";
        for (size_t i = 0; i < cfg.t_grid.size(); ++i) {
            json e = simulate_o2_at(cfg, cfg.t_grid[i], static_cast<int>(i), out_dir);
            auto field = [&](const char* obs, const char* part) {
                return e.contains(obs) && !e[obs].is_null() && e[obs].contains(part)
                           ? fmt17(e[obs][part].get<double>())
                           : std::string("nan");
            };
            csv << fmt17(cfg.t_grid[i]) << ',' << field("cos1", "mean") << ','
                << field("cos1", "err") << ',' << field("cos2", "mean") << ','
                << field("cos2", "err") << ',' << field("conn", "mean") << ','
                << field("conn", "err") << ',' << field("conn_both", "mean") << ','
                << field("conn_both", "err") << ','
                << field("ratio_cos1_over_conn", "ratio") << ','
                << field("ratio_cos1_over_conn", "err") << ','
                << field("ratio_cos2_over_conn_both", "ratio") << ','
                << field("ratio_cos2_over_conn_both", "err") << '\n';
        }
    }
    std::string path = out_dir + "/sweep.csv";
    write_file(path, csv.str());
    return path;
}

std::string oracle_manifest_json() {
    json manifest;
    manifest["format"] = "o2rc-oracle-manifest";
    manifest["version"] = 1;
    json cases = json::array();
    auto push = [&](const std::string& id, double value, double error) {
        cases.push_back(json{{"id", id}, {"value", value}, {"error", error}});
    };

    // series constants
    push("kernel.f_gauss.t1.x0", f_gauss_series(0.0, 1.0, kTermsAccurate), 1e-15);
    push("kernel.f_gauss.t1.xpi", f_gauss_series(kPi, 1.0, kTermsAccurate), 1e-15);
    push("kernel.reflected_half.t0p5.00",
         reflected_kernel_half_images(0.0, 0.0, 0.5, kTermsAccurate), 1e-15);
    push("kernel.reflected_quarter.t1.00",
         reflected_kernel_quarter_images(0.0, 0.0, 1.0, kTermsAccurate), 1e-15);

    // two-vertex instances: one pinned boundary vertex, one free
    Graph g2 = Graph::from_edges(2, {{0, 1, 1.0}}, {0}, Topology::explicit_graph);
    for (double t : {0.5, 1.0}) {
        Graph g2t = Graph::from_edges(2, {{0, 1, t}}, {0}, Topology::explicit_graph);
        OracleSpec spec;
        spec.g = &g2t;
        spec.w = WeightFunction::villain(TimeParam(t), KernelMode::accurate);
        std::string tag = t == 0.5 ? "t0p5" : "t1";
        for (auto [obs, name] : std::initializer_list<std::pair<O2Observable, const char*>>{
                 {O2Observable::cos1, "cos1"},
                 {O2Observable::cos2, "cos2"},
                 {O2Observable::connect, "pconn"},
                 {O2Observable::connect_both, "pboth"},
                 {O2Observable::cos1_not_connect, "zm1"},
                 {O2Observable::cos2_not_both, "zm2"}}) {
            OracleResult r = exact_o2_expectation(spec, obs, 1);
            push("o2.villain." + tag + ".2v." + name, r.value, r.error);
        }
    }
    {
        OracleSpec spec;
        spec.g = &g2;
        spec.w = WeightFunction::xy_exp(1.0);
        OracleResult r = exact_o2_expectation(spec, O2Observable::cos1, 1);
        push("o2.xy.b1.2v.cos1", r.value, r.error);
    }

    // dilute Potts tau identity on a 3-vertex path
    Graph path3 = Graph::box(1, 3, TimeParam(1.0), BoundaryKind::free);
    DPOracleSpec dspec;
    dspec.g = &path3;
    dspec.params = {2, 1.0, 1.0, 1.0};
    DPTauExact te = dp_tau_exact(dspec, 0, 2);
    push("dp.tau.path3.q2.lhs", te.lhs, 1e-13);
    push("dp.tau.path3.q2.rhs", te.rhs, 1e-13);

    manifest["cases"] = cases;
    return manifest.dump(2) + "\n";
}

} // namespace o2rc
