#include "o2rc/verify.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "o2rc/bonds.hpp"
#include "o2rc/dynamics.hpp"
#include "o2rc/errors.hpp"
#include "o2rc/kernels.hpp"
#include "o2rc/oracle.hpp"

namespace o2rc {

namespace {

void add(VerifyReport& r, const std::string& name, double residual, double tol,
         bool bigger_is_better = false) {
    VerifyCheck c;
    c.name = name;
    c.residual = residual;
    c.tolerance = tol;
    c.pass = bigger_is_better ? residual > tol : residual <= tol;
    r.checks.push_back(c);
}

double quadrature_norm_residual(double t) {
    const int n = 4096;
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        s += wrapped_heat_kernel(Angle(0), Angle(kTwoPi * i / n), TimeParam(t), KernelMode::accurate);
    return std::fabs(s * kTwoPi / n - 1.0);
}

double chapman_kolmogorov_residual(double t, double s, double th1, double th3) {
    const int n = 4096;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        Angle mid(kTwoPi * i / n);
        acc += wrapped_heat_kernel(Angle(th1), mid, TimeParam(t), KernelMode::accurate) *
               wrapped_heat_kernel(mid, Angle(th3), TimeParam(s), KernelMode::accurate);
    }
    acc *= kTwoPi / n;
    return std::fabs(acc - wrapped_heat_kernel(Angle(th1), Angle(th3), TimeParam(t + s),
                                               KernelMode::accurate));
}

VerifyReport verify_kernels() {
    VerifyReport r;
    r.suite = "kernels";
    RngStream rng(20240731, 0);

    double worst = 0.0;
    for (double t : {0.1, 0.5, 1.0, kTwoPi, 10.0})
        worst = std::max(worst, quadrature_norm_residual(t));
    add(r, "normalization", worst, 1e-10);

    worst = 0.0;
    for (auto [t, s] : {std::pair{0.5, 0.5}, {1.0, 2.0}, {0.3, 5.0}})
        for (double th : {0.0, 1.1, 2.9})
            worst = std::max(worst, chapman_kolmogorov_residual(t, s, th, 0.7));
    add(r, "chapman_kolmogorov", worst, 1e-9);

    worst = 0.0;
    for (double t = 1.0; t <= 20.0; t += 0.5) {
        for (int i = 0; i < 8; ++i) {
            double x = rng.uniform() * kTwoPi;
            double g = f_gauss_series(x, t, kTermsAccurate);
            double f = f_fourier_series(x, t, kTermsAccurate);
            worst = std::max(worst, std::fabs(g - f));
        }
    }
    add(r, "dual_series_agreement", worst, 1e-12);

    worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
        double th1 = (rng.uniform() - 0.5) * kPi * 0.999;
        double th2 = (rng.uniform() - 0.5) * kPi * 0.999;
        double t = 0.2 + 4.0 * rng.uniform();
        double a = reflected_kernel_half_images(th1, th2, t, kTermsAccurate);
        double b = reflected_kernel_half(Angle(th1), Angle(th2), TimeParam(t), KernelMode::accurate);
        worst = std::max(worst, std::fabs(a - b));
    }
    add(r, "reflected_half_cross_form", worst, 1e-12);

    worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
        double th1 = (rng.uniform() - 0.5) * kPi / 2 * 0.999;
        double th2 = (rng.uniform() - 0.5) * kPi / 2 * 0.999;
        double t = 0.2 + 4.0 * rng.uniform();
        double a = reflected_kernel_quarter_images(th1, th2, t, kTermsAccurate);
        double b = reflected_kernel_quarter(Angle(th1), Angle(th2), TimeParam(t), KernelMode::accurate);
        worst = std::max(worst, std::fabs(a - b));
    }
    add(r, "reflected_quarter_cross_form", worst, 1e-12);

    // reflected kernels non-negative and dominated by the full kernel
    worst = 0.0;
    for (int i = 0; i < 100000; ++i) {
        double th1 = (rng.uniform() - 0.5) * kPi * 0.999;
        double th2 = (rng.uniform() - 0.5) * kPi * 0.999;
        double t = 0.2 + 6.0 * rng.uniform();
        double h = reflected_kernel_half(Angle(th1), Angle(th2), TimeParam(t));
        double full = wrapped_heat_kernel(Angle(th1), Angle(th2), TimeParam(t));
        worst = std::max(worst, std::max(-h, h - full));
    }
    add(r, "reflected_dominated", worst, 1e-12);

    // fast Fourier truncation error for t >= 2 pi
    worst = 0.0;
    for (double t : {kTwoPi, 8.0, 12.0, 20.0})
        for (int i = 0; i < 200; ++i) {
            double x = rng.uniform() * kTwoPi;
            worst = std::max(worst, std::fabs(f_fourier_series(x, t, kFourierTermsFast) -
                                              f_gauss_series(x, t, kTermsAccurate)));
        }
    add(r, "fast_truncation_t_ge_2pi", worst, 1e-10);

    // weight invariance under global rotation and reflection
    worst = 0.0;
    WeightFunction ws[] = {WeightFunction::villain(TimeParam(1.0)), WeightFunction::xy_exp(1.3)};
    for (const auto& w : ws)
        for (int i = 0; i < 20000; ++i) {
            double u = rng.uniform() * kTwoPi, v = rng.uniform() * kTwoPi,
                   phi = rng.uniform() * kTwoPi;
            double base = w(Angle(u), Angle(v));
            worst = std::max(worst, std::fabs(w(Angle(u + phi), Angle(v + phi)) - base));
            worst = std::max(worst, std::fabs(w(Angle(-u), Angle(-v)) - base));
        }
    add(r, "weight_invariance", worst, 1e-14);

    return r;
}

VerifyReport verify_bonds() {
    VerifyReport r;
    r.suite = "bonds";
    RngStream rng(987654321, 0);

    // Radon-Nikodym derivative identically 1
    double worst = 0.0, control = 0.0;
    Graph g = Graph::box(2, 4, TimeParam(1.0), BoundaryKind::wired);
    std::vector<WeightFunction> ws;
    for (double t : {0.5, 1.0, 5.0}) ws.push_back(WeightFunction::villain(TimeParam(t)));
    for (double b : {0.5, 2.0}) ws.push_back(WeightFunction::xy_exp(b));
    for (const auto& w : ws) {
        SpinConfig cfg(g, w);
        for (int trial = 0; trial < 200; ++trial) {
            cfg.randomize_unpinned(rng);
            BondConfig bonds = sample_bonds(cfg, ReflectionAxis::imaginary(), rng);
            int z = cfg.unpinned()[rng.uniform_int(cfg.unpinned_count())];
            double rn = radon_nikodym_single(cfg, bonds, z, ReflectionAxis::imaginary());
            worst = std::max(worst, std::fabs(rn - 1.0));
            double rc = radon_nikodym_single(cfg, bonds, z, ReflectionAxis::imaginary(), 0.5);
            control = std::max(control, std::fabs(rc - 1.0));
        }
    }
    add(r, "radon_nikodym_unity", worst, 1e-12);
    add(r, "radon_nikodym_negative_control", control, 1e-6, /*bigger_is_better=*/true);

    // pair-law feasibility and c >= 0
    worst = 0.0;
    std::vector<WeightFunction> pws;
    for (double t : {0.3, 1.0, 3.0, kTwoPi, 10.0}) pws.push_back(WeightFunction::villain(TimeParam(t)));
    for (double b : {0.2, 1.0, 3.0}) pws.push_back(WeightFunction::xy_exp(b));
    for (const auto& w : pws)
        for (int i = 0; i < 10000; ++i) {
            Angle ux(rng.uniform() * kTwoPi), uy(rng.uniform() * kTwoPi);
            JointBondLaw law = pair_bond_law(w, ux, uy); // throws on violation > 1e-9
            double lo = std::max(0.0, law.p + law.q - 1.0), hi = std::min(law.p, law.q);
            worst = std::max({worst, lo - law.c, law.c - hi, -law.c});
        }
    add(r, "pair_law_feasibility", worst, 1e-12);

    // Villain c: reflection formula vs absorbed quarter-kernel ratio
    worst = 0.0;
    for (double t : {0.5, 1.0, 3.0}) {
        WeightFunction w = WeightFunction::villain(TimeParam(t), KernelMode::accurate);
        for (int i = 0; i < 2000; ++i) {
            double a = (rng.uniform() - 0.5) * kPi / 2 * 0.999;
            double b = (rng.uniform() - 0.5) * kPi / 2 * 0.999;
            JointBondLaw law = pair_bond_law(w, Angle(a), Angle(b));
            double kq = reflected_kernel_quarter(Angle(a), Angle(b), TimeParam(t), KernelMode::accurate);
            double kf = wrapped_heat_kernel(Angle(a), Angle(b), TimeParam(t), KernelMode::accurate);
            worst = std::max(worst, std::fabs(law.c - kq / kf));
        }
    }
    add(r, "villain_c_two_routes", worst, 1e-12);

    // XY convexity inequality on the first quadrant class
    worst = 0.0;
    for (double beta : {0.2, 1.0, 3.0})
        for (int i = 0; i <= 200; ++i)
            for (int j = 0; j <= 200; ++j) {
                double tx = -kPi / 4 + kPi / 2 * i / 200.0;
                double ty = -kPi / 4 + kPi / 2 * j / 200.0;
                double lhs = std::exp(beta * std::cos(tx - ty)) + std::exp(-beta * std::cos(tx - ty));
                double rhs = std::exp(beta * std::sin(tx + ty)) + std::exp(-beta * std::sin(tx + ty));
                worst = std::max(worst, rhs - lhs);
            }
    add(r, "xy_convexity_inequality", worst, 1e-12);

    return r;
}

VerifyReport verify_lemmas() {
    VerifyReport r;
    r.suite = "lemmas";
    RngStream rng(13572468, 0);

    std::vector<WeightFunction> ws;
    for (double t : {0.5, 1.0, 5.0}) ws.push_back(WeightFunction::villain(TimeParam(t)));
    for (double b : {0.5, 2.0}) ws.push_back(WeightFunction::xy_exp(b));

    double worst_b0 = 0.0, worst_b2 = 0.0, worst_opposite = 0.0, worst_rho = 0.0;
    auto scan = [&](const WeightFunction& w, double& acc_b0, double& acc_b2, int reps) {
        for (int qx = 0; qx < 4; ++qx)
            for (int qy = 0; qy < 4; ++qy)
                for (int i = 0; i < reps; ++i) {
                    double ax = -kPi / 4 + kPi / 2 * (qx + rng.uniform());
                    double ay = -kPi / 4 + kPi / 2 * (qy + rng.uniform());
                    auto ids = pair_swap_case_identities(w, Angle(ax), Angle(ay));
                    for (const auto& id : ids) {
                        if (!id.applicable) continue;
                        double& acc = id.name == "b0" ? acc_b0 : acc_b2;
                        acc = std::max(acc, std::fabs(id.residual));
                    }
                    if ((qx + 2) % 4 == qy) {
                        // opposite quadrant classes: both bonds surely closed
                        JointBondLaw law = pair_bond_law(w, Angle(ax), Angle(ay));
                        worst_opposite = std::max(worst_opposite, std::fabs(law.both_closed() - 1.0));
                    }
                }
    };
    for (const auto& w : ws) scan(w, worst_b0, worst_b2, 500);
    add(r, "case_identity_b0", worst_b0, 1e-12);
    add(r, "case_identity_b2", worst_b2, 1e-12);
    add(r, "opposite_quadrants_all_closed", worst_opposite, 1e-15);

    // black-box rho weight: differences are subtracted naively, so the
    // ratios lose some digits near degeneracies
    WeightFunction rho = WeightFunction::rho_cos([](double s) { return std::exp(1.7 * s); }, true);
    double rho_b0 = 0.0;
    scan(rho, rho_b0, worst_rho, 300);
    add(r, "case_identity_rho_cos", std::max(rho_b0, worst_rho), 1e-9);

    return r;
}

VerifyReport verify_dilute() {
    VerifyReport r;
    r.suite = "dilute";
    RngStream rng(24681357, 0);

    std::vector<DilutePottsParams> grid;
    for (int Q : {1, 2, 3, 5})
        for (double lam : {0.3, 1.0, 4.0})
            for (double t : {0.2, 1.0, 3.0}) grid.push_back({Q, lam, t, 1.0});

    double worst_rows = 0.0, worst_db = 0.0, worst_sym = 0.0, worst_quot = 0.0, worst_ck = 0.0,
           worst_exp = 0.0;
    for (const auto& p : grid) {
        std::vector<double> mu = dp_invariant_measure(p);
        auto pe = dp_transition_matrix_oracle(p);
        for (int i = 0; i <= p.Q; ++i) {
            double row = 0.0;
            for (int j = 0; j <= p.Q; ++j) {
                double pij = dp_transition_prob(i, j, p);
                row += pij;
                worst_db = std::max(worst_db,
                                    std::fabs(mu[i] * pij - mu[j] * dp_transition_prob(j, i, p)));
                worst_sym = std::max(worst_sym, std::fabs(dp_transition_density(i, j, p) -
                                                          dp_transition_density(j, i, p)));
                worst_quot = std::max(worst_quot,
                                      std::fabs(dp_transition_density(i, j, p) - pij / mu[j]));
                worst_exp = std::max(worst_exp, std::fabs(pij - pe[i][j]));
            }
            worst_rows = std::max(worst_rows, std::fabs(row - 1.0));
        }
        // Chapman-Kolmogorov: P_{t+s} = P_t P_s with s = t
        DilutePottsParams p2 = p;
        p2.t = 2.0 * p.t;
        for (int i = 0; i <= p.Q; ++i)
            for (int j = 0; j <= p.Q; ++j) {
                double acc = 0.0;
                for (int m = 0; m <= p.Q; ++m)
                    acc += dp_transition_prob(i, m, p) * dp_transition_prob(m, j, p);
                worst_ck = std::max(worst_ck, std::fabs(acc - dp_transition_prob(i, j, p2)));
            }
    }
    add(r, "transition_rows_sum", worst_rows, 1e-14);
    add(r, "detailed_balance", worst_db, 1e-14);
    add(r, "density_symmetry", worst_sym, 1e-12);
    add(r, "density_vs_quotient", worst_quot, 1e-12);
    add(r, "chapman_kolmogorov_matrix", worst_ck, 1e-12);
    add(r, "closed_form_vs_matrix_exponential", worst_exp, 1e-12);

    // tau identity, fully enumerated 3-vertex path
    double worst_tau = 0.0;
    Graph path3 = Graph::box(1, 3, TimeParam(1.0), BoundaryKind::free);
    for (int Q : {1, 2, 3})
        for (double u : {1.0, 0.5}) {
            DilutePottsParams p{Q, 1.3, 0.8, u};
            DPOracleSpec spec;
            spec.g = &path3;
            spec.params = p;
            DPTauExact te = dp_tau_exact(spec, 0, 2);
            worst_tau = std::max(worst_tau, std::fabs(te.lhs - te.rhs));
        }
    add(r, "tau_identity_enumerated", worst_tau, 1e-12);

    // lambda -> infinity FK limit of the bond probability
    double worst_fk = 0.0;
    for (double t : {0.5, 1.0, 2.0})
        for (int Q : {2, 3}) {
            DilutePottsParams p{Q, 1e6, t, 1.0};
            FkLimit f = dp_fk_limit_params(t, Q);
            worst_fk = std::max(worst_fk, std::fabs(dp_bond_open_prob(1, 1, p) - (1.0 - std::exp(-f.beta))));
        }
    add(r, "fk_limit_bond_prob", worst_fk, 1e-4);

    double worst_fk_id = 0.0;
    for (double t : {0.3, 1.0, 4.0})
        for (int Q : {1, 2, 5}) {
            FkLimit f = dp_fk_limit_params(t, Q);
            worst_fk_id = std::max(worst_fk_id, std::fabs(f.p - (1.0 - std::exp(-f.beta))));
        }
    add(r, "fk_p_beta_identity", worst_fk_id, 1e-12);

    (void)rng;
    return r;
}

} // namespace

std::vector<std::vector<double>> dp_transition_matrix_oracle(const DilutePottsParams& p) {
    p.validate();
    int n = p.Q + 1;
    // rate matrix
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    a[0][0] = -p.Q * p.lambda;
    for (int s = 1; s <= p.Q; ++s) {
        a[0][s] = p.lambda;
        a[s][0] = 1.0;
        a[s][s] = -1.0;
    }
    for (auto& row : a)
        for (double& v : row) v *= p.t;

    // scale so the norm is small, Taylor, then square back
    double norm = 0.0;
    for (const auto& row : a) {
        double s = 0.0;
        for (double v : row) s += std::fabs(v);
        norm = std::max(norm, s);
    }
    int squarings = 0;
    while (norm > 0.25) {
        norm /= 2.0;
        ++squarings;
    }
    double scale = std::ldexp(1.0, -squarings);
    for (auto& row : a)
        for (double& v : row) v *= scale;

    auto matmul = [n](const std::vector<std::vector<double>>& x,
                      const std::vector<std::vector<double>>& y) {
        std::vector<std::vector<double>> z(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                for (int j = 0; j < n; ++j) z[i][j] += x[i][k] * y[k][j];
        return z;
    };

    std::vector<std::vector<double>> result(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) result[i][i] = 1.0;
    std::vector<std::vector<double>> term = result;
    for (int k = 1; k <= 20; ++k) {
        term = matmul(term, a);
        for (auto& row : term)
            for (double& v : row) v /= k;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) result[i][j] += term[i][j];
    }
    for (int s = 0; s < squarings; ++s) result = matmul(result, result);
    return result;
}

VerifyReport run_verify_suite(const std::string& suite) {
    if (suite == "kernels") return verify_kernels();
    if (suite == "bonds") return verify_bonds();
    if (suite == "lemmas") return verify_lemmas();
    if (suite == "dilute") return verify_dilute();
    if (suite == "all") {
        VerifyReport all;
        all.suite = "all";
        for (const char* s : {"kernels", "bonds", "lemmas", "dilute"}) {
            VerifyReport r = run_verify_suite(s);
            for (auto& c : r.checks) {
                c.name = r.suite + "." + c.name;
                all.checks.push_back(c);
            }
        }
        return all;
    }
    throw std::invalid_argument("unknown verify suite '" + suite + "'");
}

std::string format_report(const VerifyReport& r) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific;
    for (const auto& c : r.checks)
        os << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  residual=" << c.residual
           << "  tol=" << c.tolerance << '\n';
    os << (r.all_pass() ? "OK" : "FAILED") << "  suite=" << r.suite << '\n';
    return os.str();
}

} // namespace o2rc
