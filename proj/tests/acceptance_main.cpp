// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "o2rc/bonds.hpp"
#include "o2rc/config.hpp"
#include "o2rc/dilute_potts.hpp"
#include "o2rc/dynamics.hpp"
#include "o2rc/estimators.hpp"
#include "o2rc/kernels.hpp"
#include "o2rc/oracle.hpp"
#include "o2rc/simulate.hpp"
#include "o2rc/verify.hpp"

using namespace o2rc;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
    std::printf("%s  criterion %d: %s (%s) [%.1fs]\n", pass ? "PASS" : "FAIL", criterion,
                name.c_str(), detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// ---- criterion 1: kernel identities ----------------------------------

void criterion_1() {
    Timer timer;
    double worst_norm = 0.0, worst_ck = 0.0, worst_dual = 0.0, worst_refl = 0.0;
    const int nodes = 4096;

    for (double t : {0.1, 0.5, 1.0, kTwoPi, 10.0}) {
        double s = 0.0;
        for (int i = 0; i < nodes; ++i)
            s += wrapped_heat_kernel(Angle(0.4), Angle(kTwoPi * i / nodes), TimeParam(t),
                                     KernelMode::accurate);
        worst_norm = std::max(worst_norm, std::fabs(s * kTwoPi / nodes - 1.0));
    }

    for (auto [t, s] : {std::pair{0.5, 0.5}, {1.0, 2.0}, {0.3, 5.0}, {2.0, 7.0}})
        for (double th1 : {0.0, 1.3, 4.4}) {
            double acc = 0.0;
            for (int i = 0; i < nodes; ++i) {
                Angle mid(kTwoPi * i / nodes);
                acc += wrapped_heat_kernel(Angle(th1), mid, TimeParam(t), KernelMode::accurate) *
                       wrapped_heat_kernel(mid, Angle(2.6), TimeParam(s), KernelMode::accurate);
            }
            acc *= kTwoPi / nodes;
            worst_ck = std::max(worst_ck, std::fabs(acc - wrapped_heat_kernel(Angle(th1), Angle(2.6),
                                                                              TimeParam(t + s),
                                                                              KernelMode::accurate)));
        }

    RngStream rng(101, 0);
    for (double t = 1.0; t <= 20.0; t += 0.25)
        for (int i = 0; i < 20; ++i) {
            double x = rng.uniform() * kTwoPi;
            worst_dual = std::max(worst_dual, std::fabs(f_gauss_series(x, t, kTermsAccurate) -
                                                        f_fourier_series(x, t, kTermsAccurate)));
        }

    for (int i = 0; i < 5000; ++i) {
        double t = 0.2 + 5.0 * rng.uniform();
        double a = (rng.uniform() - 0.5) * kPi * 0.999;
        double b = (rng.uniform() - 0.5) * kPi * 0.999;
        worst_refl = std::max(worst_refl,
                              std::fabs(reflected_kernel_half_images(a, b, t, kTermsAccurate) -
                                        reflected_kernel_half(Angle(a), Angle(b), TimeParam(t),
                                                              KernelMode::accurate)));
        double a4 = a / 2, b4 = b / 2;
        worst_refl = std::max(worst_refl,
                              std::fabs(reflected_kernel_quarter_images(a4, b4, t, kTermsAccurate) -
                                        reflected_kernel_quarter(Angle(a4), Angle(b4), TimeParam(t),
                                                                 KernelMode::accurate)));
    }

    bool pass = worst_norm < 1e-9 && worst_ck < 1e-9 && worst_dual < 1e-12 && worst_refl < 1e-12;
    report(1, "kernel identities", pass,
           "norm " + fmt(worst_norm) + ", CK " + fmt(worst_ck) + ", dual " + fmt(worst_dual) +
               ", reflected " + fmt(worst_refl),
           timer.seconds());
}

// ---- criterion 2: single-axis measure preservation -------------------

void criterion_2() {
    Timer timer;
    Graph g = Graph::box(2, 4, TimeParam(1.0), BoundaryKind::wired);
    ReflectionAxis axis = ReflectionAxis::imaginary();
    RngStream rng(102, 0);

    std::vector<WeightFunction> ws;
    for (double t : {0.5, 1.0, 5.0}) ws.push_back(WeightFunction::villain(TimeParam(t)));
    for (double b : {0.5, 2.0}) ws.push_back(WeightFunction::xy_exp(b));

    double worst = 0.0, control = 0.0;
    for (const auto& w : ws) {
        SpinConfig cfg(g, w);
        for (int trial = 0; trial < 1000; ++trial) {
            cfg.randomize_unpinned(rng);
            BondConfig bonds = sample_bonds(cfg, axis, rng);
            int z = cfg.unpinned()[rng.uniform_int(cfg.unpinned_count())];
            worst = std::max(worst, std::fabs(radon_nikodym_single(cfg, bonds, z, axis) - 1.0));
            control = std::max(control,
                               std::fabs(radon_nikodym_single(cfg, bonds, z, axis, 0.5) - 1.0));
        }
    }
    bool pass = worst < 1e-12 && control > 1e-6;
    report(2, "measure preservation, single axis", pass,
           "max |RN-1| " + fmt(worst) + ", perturbed control " + fmt(control), timer.seconds());
}

// ---- criterion 3: pair-bond law ---------------------------------------

void criterion_3() {
    Timer timer;
    RngStream rng(103, 0);

    double worst_feas = 0.0;
    std::vector<WeightFunction> ws;
    for (double t : {0.3, 1.0, 3.0, kTwoPi, 10.0}) ws.push_back(WeightFunction::villain(TimeParam(t)));
    for (double b : {0.2, 1.0, 3.0}) ws.push_back(WeightFunction::xy_exp(b));
    bool feasible = true;
    for (const auto& w : ws)
        for (int i = 0; i < 100000; ++i) {
            try {
                JointBondLaw law = pair_bond_law(w, Angle(rng.uniform() * kTwoPi),
                                                 Angle(rng.uniform() * kTwoPi));
                double lo = std::max(0.0, law.p + law.q - 1.0), hi = std::min(law.p, law.q);
                worst_feas = std::max({worst_feas, lo - law.c, law.c - hi, -law.c});
            } catch (const FeasibilityError&) {
                feasible = false;
            }
        }

    double worst_id = 0.0;
    std::vector<WeightFunction> lws;
    for (double t : {0.5, 1.0, 5.0}) lws.push_back(WeightFunction::villain(TimeParam(t)));
    for (double b : {0.5, 2.0}) lws.push_back(WeightFunction::xy_exp(b));
    for (const auto& w : lws)
        for (int qx = 0; qx < 4; ++qx)
            for (int qy = 0; qy < 4; ++qy)
                for (int i = 0; i < 10000; ++i) {
                    double ax = -kPi / 4 + kPi / 2 * (qx + rng.uniform());
                    double ay = -kPi / 4 + kPi / 2 * (qy + rng.uniform());
                    for (const auto& id : pair_swap_case_identities(w, Angle(ax), Angle(ay)))
                        if (id.applicable) worst_id = std::max(worst_id, std::fabs(id.residual));
                }

    bool pass = feasible && worst_feas <= 0.0 && worst_id < 1e-12;
    report(3, "pair-bond feasibility and case identities", pass,
           "max feasibility violation " + fmt(worst_feas) + ", max case residual " + fmt(worst_id),
           timer.seconds());
}

// ---- criteria 4 and 5: the two-sided correlation bounds ----------------

struct BoundCheck {
    bool exact_ok = true;
    bool mc_ok = true;
    std::string detail;
};

void criteria_4_and_5() {
    Timer timer;
    BoundCheck c4, c5;

    // two-vertex oracle instance: exact cancellation and ratio bounds
    {
        Graph g2 = Graph::from_edges(2, {{0, 1, 1.0}}, {0});
        OracleSpec spec;
        spec.g = &g2;
        spec.w = WeightFunction::villain(TimeParam(1.0), KernelMode::accurate);
        double cos1 = exact_o2_expectation(spec, O2Observable::cos1, 1).value;
        double pconn = exact_o2_expectation(spec, O2Observable::connect, 1).value;
        double zm1 = exact_o2_expectation(spec, O2Observable::cos1_not_connect, 1).value;
        double ratio = cos1 / pconn;
        c4.exact_ok = ratio > 0.0 && ratio <= 1.0 + 1e-12 && std::fabs(zm1) < 1e-8;
        c4.detail = "2v ratio " + fmt(ratio) + ", |zm1| " + fmt(std::fabs(zm1));

        double cos2 = exact_o2_expectation(spec, O2Observable::cos2, 1).value;
        double pboth = exact_o2_expectation(spec, O2Observable::connect_both, 1).value;
        double zm2 = exact_o2_expectation(spec, O2Observable::cos2_not_both, 1).value;
        double ratio2 = cos2 / pboth;
        c5.exact_ok = ratio2 > 0.0 && ratio2 <= 1.0 + 1e-12 && std::fabs(zm2) < 1e-8;
        c5.detail = "2v ratio " + fmt(ratio2) + ", |zm2| " + fmt(std::fabs(zm2));
    }

    // 8x8 wired box at t in {0.7, 1.5}, 1e5 measurements
    for (double t : {0.7, 1.5}) {
        Graph g = Graph::box(2, 8, TimeParam(t), BoundaryKind::wired);
        SpinConfig cfg(g, WeightFunction::villain_tabulated(TimeParam(t)));
        DynamicsConfig dyn;
        dyn.scheme = Scheme::metropolis;
        dyn.burn_in = 2000;
        MeasurementPlan plan;
        plan.site = 8 * 4 + 4;
        RngStream rng(104, static_cast<std::uint64_t>(t * 10));
        auto series = run_chain(cfg, dyn, plan, 100000, rng);

        BatchStats zm1 = batch_means(series.at("zm1").values);
        RatioEstimate r1 = ratio_with_ci(series.at("cos1").values, series.at("conn").values);
        bool mc1 = std::fabs(zm1.mean) < 3.0 * zm1.err && r1.ratio - 3.0 * r1.ratio_err > 0.0 &&
                   r1.ratio - 3.0 * r1.ratio_err <= 1.0;
        c4.mc_ok = c4.mc_ok && mc1;
        c4.detail += "; t=" + fmt(t) + " zm1 " + fmt(zm1.mean) + "+-" + fmt(zm1.err) + " ratio " +
                     fmt(r1.ratio) + "+-" + fmt(r1.ratio_err);

        BatchStats zm2 = batch_means(series.at("zm2").values);
        RatioEstimate r2 = ratio_with_ci(series.at("cos2").values, series.at("conn_both").values);
        bool mc2 = std::fabs(zm2.mean) < 3.0 * zm2.err && r2.ratio - 3.0 * r2.ratio_err > 0.0 &&
                   r2.ratio - 3.0 * r2.ratio_err <= 1.0;
        c5.mc_ok = c5.mc_ok && mc2;
        c5.detail += "; t=" + fmt(t) + " zm2 " + fmt(zm2.mean) + "+-" + fmt(zm2.err) + " ratio " +
                     fmt(r2.ratio) + "+-" + fmt(r2.ratio_err);
    }

    double half = timer.seconds() / 2;
    report(4, "k=1 bound: zero-mean identity and ratio in (0,1]", c4.exact_ok && c4.mc_ok,
           c4.detail, half);
    report(5, "k=2 bound with pair bonds", c5.exact_ok && c5.mc_ok, c5.detail, half);
}

// ---- criterion 6: dilute Potts ----------------------------------------

void criterion_6() {
    Timer timer;
    double worst_row = 0.0, worst_db = 0.0, worst_exp = 0.0, worst_tau = 0.0, worst_fk = 0.0;

    for (int Q : {1, 2, 3, 5})
        for (double lam : {0.3, 1.0, 4.0})
            for (double t : {0.2, 1.0, 3.0}) {
                DilutePottsParams p{Q, lam, t, 1.0};
                std::vector<double> mu = dp_invariant_measure(p);
                auto pe = dp_transition_matrix_oracle(p);
                for (int i = 0; i <= Q; ++i) {
                    double row = 0.0;
                    for (int j = 0; j <= Q; ++j) {
                        double pij = dp_transition_prob(i, j, p);
                        row += pij;
                        worst_db = std::max(worst_db, std::fabs(mu[i] * pij -
                                                                mu[j] * dp_transition_prob(j, i, p)));
                        worst_exp = std::max(worst_exp, std::fabs(pij - pe[i][j]));
                    }
                    worst_row = std::max(worst_row, std::fabs(row - 1.0));
                }
            }

    for (int len : {2, 3})
        for (int Q : {1, 2, 3}) {
            Graph path = Graph::box(1, len, TimeParam(1.0), BoundaryKind::free);
            DPOracleSpec spec;
            spec.g = &path;
            spec.params = {Q, 1.3, 0.8, 1.0};
            DPTauExact te = dp_tau_exact(spec, 0, len - 1);
            worst_tau = std::max(worst_tau, std::fabs(te.lhs - te.rhs));
        }

    for (double t : {0.5, 1.0, 2.0}) {
        FkLimit f = dp_fk_limit_params(t, 2);
        worst_fk = std::max(worst_fk, std::fabs(dp_bond_open_prob(1, 1, {2, 1e6, t, 1.0}) -
                                                (1.0 - std::exp(-f.beta))));
    }

    // 3x3 torus simulation: both sides of the identity within 3 sigma
    Graph torus = Graph::box(2, 3, TimeParam(1.0), BoundaryKind::torus);
    DilutePottsParams p{2, 1.0, 1.0, 1.0};
    DPConfig cfg(torus);
    RngStream rng(106, 0);
    auto samples = run_dp_chain(cfg, p, 0, 4, 500, 60000, 1, rng);
    TauEstimate est = dp_tau_estimator(samples, p.Q);
    double gap = std::fabs(est.tau - est.rhs);
    double sigma = std::hypot(est.tau_err, est.rhs_err);
    bool sim_ok = gap < 3.0 * sigma;

    bool pass = worst_row < 1e-14 && worst_db < 1e-14 && worst_exp < 1e-12 && worst_tau < 1e-12 &&
                worst_fk < 1e-4 && sim_ok;
    report(6, "dilute Potts chain, tau identity, FK limit", pass,
           "rows " + fmt(worst_row) + ", balance " + fmt(worst_db) + ", matexp " + fmt(worst_exp) +
               ", tau " + fmt(worst_tau) + ", fk " + fmt(worst_fk) + ", sim gap " + fmt(gap) +
               " vs 3sigma " + fmt(3 * sigma),
           timer.seconds());
}

// ---- criterion 7: stationarity across dynamics schemes -----------------

void criterion_7() {
    Timer timer;
    Graph g = Graph::box(2, 6, TimeParam(1.0), BoundaryKind::wired);
    WeightFunction w = WeightFunction::villain_tabulated(TimeParam(1.0));
    MeasurementPlan plan;
    plan.site = 6 * 3 + 3;
    plan.connectivity = false;
    plan.pair_connectivity = false;

    struct Entry {
        const char* name;
        Scheme scheme;
        int measurements;
    };
    const Entry entries[] = {
        {"metropolis", Scheme::metropolis, 60000},
        {"heat_bath", Scheme::heat_bath, 20000},
        {"cluster", Scheme::cluster_swapping, 20000},
        {"wolff", Scheme::wolff, 20000},
    };

    std::vector<BatchStats> cos1, cos2;
    for (int i = 0; i < 4; ++i) {
        DynamicsConfig dyn;
        dyn.scheme = entries[i].scheme;
        dyn.burn_in = 1000;
        dyn.interleave_heat_bath = true;
        SpinConfig cfg(g, w);
        RngStream rng(107, static_cast<std::uint64_t>(i));
        auto series = run_chain(cfg, dyn, plan, entries[i].measurements, rng);
        cos1.push_back(batch_means(series.at("cos1").values));
        cos2.push_back(batch_means(series.at("cos2").values));
    }

    bool pass = true;
    std::ostringstream detail;
    for (int i = 0; i < 4; ++i)
        detail << entries[i].name << " " << fmt(cos1[i].mean) << "+-" << fmt(cos1[i].err) << " ";
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            double s1 = std::hypot(cos1[i].err, cos1[j].err);
            double s2 = std::hypot(cos2[i].err, cos2[j].err);
            if (std::fabs(cos1[i].mean - cos1[j].mean) > 3.0 * s1) pass = false;
            if (std::fabs(cos2[i].mean - cos2[j].mean) > 3.0 * s2) pass = false;
        }
    report(7, "stationarity across dynamics schemes", pass, detail.str(), timer.seconds());
}

// ---- criterion 8: reproducibility across worker counts -----------------

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void criterion_8() {
    Timer timer;
    auto base = std::filesystem::temp_directory_path() / "o2rc_acceptance";
    std::filesystem::remove_all(base);
    std::filesystem::create_directories(base);

    ExperimentConfig cfg;
    cfg.model = "villain";
    cfg.side = 4;
    cfg.t_grid = {0.9};
    cfg.dynamics = "cluster";
    cfg.burn_in = 100;
    cfg.measurements = 2000;
    cfg.chains = 4;
    cfg.seed = 42;

    cfg.workers = 1;
    run_simulate(cfg, (base / "w1").string());
    cfg.workers = 4;
    run_simulate(cfg, (base / "w4").string());

    bool pass = true;
    for (const char* name : {"series_t0.csv", "snapshot_t0.csv", "summary.json"}) {
        std::string a = slurp((base / "w1" / name).string());
        std::string b = slurp((base / "w4" / name).string());
        if (a.empty() || a != b) pass = false;
    }
    report(8, "byte-identical outputs across worker counts", pass,
           "chains=4, workers 1 vs 4", timer.seconds());
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criteria_4_and_5();
    criterion_6();
    criterion_7();
    criterion_8();
    if (g_failures == 0)
        std::printf("acceptance: all criteria passed\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return g_failures;
}
