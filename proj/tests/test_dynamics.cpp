#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "o2rc/dynamics.hpp"
#include "o2rc/estimators.hpp"
#include "o2rc/kernels.hpp"

using namespace o2rc;

namespace {

double gt_bond_prob(double th1, double th2, double t) {
    // (f_t(th1 - th2) - f_t(th1 + th2 - pi)) / f_t(th1 - th2)
    double fd = f_t(th1 - th2, TimeParam(t));
    return (fd - f_t(th1 + th2 - kPi, TimeParam(t))) / fd;
}

} // namespace

TEST_CASE("cluster-step bond law equals the rotated-axis single-bond law") {
    RngStream rng(51, 0);
    for (double t : {0.5, 1.0, 3.0, 8.0}) {
        WeightFunction w = WeightFunction::villain(TimeParam(t));
        for (int i = 0; i < 5000; ++i) {
            double nu = rng.uniform() * kTwoPi;
            double thx = rng.uniform() * kTwoPi;
            double thy = rng.uniform() * kTwoPi;
            ReflectionAxis axis(nu + kPi / 2);
            double p = single_bond_prob(w, Angle(thx), Angle(thy), axis);

            double cx = std::cos(thx - nu), cy = std::cos(thy - nu);
            double expected = 0.0;
            if (cx > kOnAxisTol && cy > kOnAxisTol)
                expected = gt_bond_prob(thx - nu, thy - nu, t);
            else if (cx < -kOnAxisTol && cy < -kOnAxisTol)
                expected = gt_bond_prob(kPi + thx - nu, kPi + thy - nu, t);
            CHECK(std::fabs(p - expected) < 1e-12);
        }
    }
}

TEST_CASE("cluster flip map is an involution") {
    RngStream rng(52, 0);
    for (int i = 0; i < 1000; ++i) {
        double nu = rng.uniform() * kTwoPi;
        double th = rng.uniform() * kTwoPi;
        ReflectionAxis axis(nu + kPi / 2);
        // the flip theta -> 2 nu + pi - theta is the axis reflection
        double once = axis.reflect(th);
        CHECK(once == doctest::Approx(canonical_angle(2 * nu + kPi - th)).epsilon(1e-12));
        CHECK(principal_angle(axis.reflect(once) - th) == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("open edges join spins on one side of the step axis") {
    Graph g = Graph::box(2, 4, TimeParam(1.0), BoundaryKind::wired);
    WeightFunction w = WeightFunction::villain(TimeParam(1.0));
    RngStream rng(53, 0);
    SpinConfig cfg(g, w);
    for (int trial = 0; trial < 200; ++trial) {
        cfg.randomize_unpinned(rng);
        double nu = rng.uniform() * kTwoPi;
        ReflectionAxis axis(nu + kPi / 2);
        BondConfig bonds = sample_bonds(cfg, axis, rng);
        CHECK(bonds_consistent(cfg, bonds, axis));
    }
}

TEST_CASE("near-zero temperature: boundary-spanning cluster freezes the step") {
    Graph g = Graph::box(2, 4, TimeParam(0.01), BoundaryKind::wired);
    WeightFunction w = WeightFunction::villain(TimeParam(0.01));
    int identity_steps = 0;
    const int trials = 60;
    for (int s = 0; s < trials; ++s) {
        SpinConfig cfg(g, w); // cold start, all spins on the boundary value
        RngStream rng(54, s);
        cluster_swapping_step(cfg, rng);
        bool unchanged = true;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (cfg.theta(v) != 0.0) unchanged = false;
        identity_steps += unchanged;
    }
    // the only escape is an axis draw nearly parallel to the spins
    CHECK(identity_steps >= trials - 6);
}

TEST_CASE("wolff: boundary-touching growth freezes, lone spin flips") {
    // frozen case: near-zero temperature from a cold start
    Graph g = Graph::box(2, 4, TimeParam(0.01), BoundaryKind::wired);
    WeightFunction w = WeightFunction::villain(TimeParam(0.01));
    int identity_steps = 0;
    const int trials = 60;
    for (int s = 0; s < trials; ++s) {
        SpinConfig cfg(g, w);
        RngStream rng(55, s);
        wolff_step(cfg, rng);
        bool unchanged = true;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (cfg.theta(v) != 0.0) unchanged = false;
        identity_steps += unchanged;
    }
    CHECK(identity_steps >= trials - 6);

    // single free vertex: its cluster is itself, always reflected
    Graph one = Graph::from_edges(1, {}, {});
    SpinConfig cfg(one, WeightFunction::xy_exp(1.0));
    RngStream rng(56, 0);
    int moved = 0;
    for (int i = 0; i < 100; ++i) {
        double before = cfg.theta(0);
        CHECK(wolff_step(cfg, rng) == 1);
        if (cfg.theta(0) != before) ++moved;
    }
    CHECK(moved >= 99);
}

TEST_CASE("run_chain: determinism, lengths, and quadrature agreement") {
    Graph g = Graph::from_edges(2, {{0, 1, 1.0}}, {0});
    WeightFunction w = WeightFunction::villain_tabulated(TimeParam(1.0));
    DynamicsConfig dyn;
    dyn.scheme = Scheme::metropolis;
    dyn.burn_in = 500;
    MeasurementPlan plan;
    plan.site = 1;

    SpinConfig c1(g, w), c2(g, w);
    RngStream r1(57, 3), r2(57, 3);
    auto s1 = run_chain(c1, dyn, plan, 20000, r1);
    auto s2 = run_chain(c2, dyn, plan, 20000, r2);
    CHECK(s1.at("cos1").values == s2.at("cos1").values);
    CHECK(s1.at("cos1").values.size() == 20000);
    CHECK(s1.count("conn") == 1);
    CHECK(s1.count("zm1") == 1);

    // quadrature mean of cos(theta) under w(theta) d theta
    const int nodes = 1 << 14;
    double num = 0.0, den = 0.0;
    for (int i = 0; i < nodes; ++i) {
        double th = kTwoPi * i / nodes;
        double wt = w.eval_diff(th);
        num += std::cos(th) * wt;
        den += wt;
    }
    double exact = num / den;
    BatchStats bs = batch_means(s1.at("cos1").values);
    CHECK(std::fabs(bs.mean - exact) < 3.0 * bs.err);
}

TEST_CASE("schemes agree on a 4x4 box (stationarity cross-check)") {
    Graph g = Graph::box(2, 4, TimeParam(1.0), BoundaryKind::wired);
    WeightFunction w = WeightFunction::villain_tabulated(TimeParam(1.0));
    MeasurementPlan plan;
    plan.site = 5;
    plan.pair_connectivity = false;

    auto run_scheme = [&](Scheme s, int stream) {
        DynamicsConfig dyn;
        dyn.scheme = s;
        dyn.burn_in = 500;
        SpinConfig cfg(g, w);
        RngStream rng(58, stream);
        return run_chain(cfg, dyn, plan, 12000, rng);
    };

    auto m = run_scheme(Scheme::metropolis, 0);
    auto c = run_scheme(Scheme::cluster_swapping, 1);
    auto wl = run_scheme(Scheme::wolff, 2);

    for (const char* obs : {"cos1", "cos2", "conn"}) {
        BatchStats bm = batch_means(m.at(obs).values);
        BatchStats bc = batch_means(c.at(obs).values);
        BatchStats bw = batch_means(wl.at(obs).values);
        CHECK(std::fabs(bm.mean - bc.mean) < 4.0 * std::hypot(bm.err, bc.err));
        CHECK(std::fabs(bm.mean - bw.mean) < 4.0 * std::hypot(bm.err, bw.err));
    }
}

TEST_CASE("pinned spins survive cluster and wolff dynamics") {
    Graph g = Graph::box(2, 4, TimeParam(1.0), BoundaryKind::wired);
    WeightFunction w = WeightFunction::villain_tabulated(TimeParam(1.0));
    SpinConfig cfg(g, w);
    RngStream rng(59, 0);
    DynamicsConfig dyn;
    dyn.scheme = Scheme::cluster_swapping;
    for (int i = 0; i < 300; ++i) dynamics_step(cfg, dyn, rng);
    dyn.scheme = Scheme::wolff;
    for (int i = 0; i < 300; ++i) dynamics_step(cfg, dyn, rng);
    for (int b : g.boundary()) CHECK(cfg.theta(b) == 0.0);
}

TEST_CASE("run_chain validates its counts") {
    Graph g = Graph::from_edges(2, {{0, 1, 1.0}}, {0});
    SpinConfig cfg(g, WeightFunction::xy_exp(1.0));
    RngStream rng(60, 0);
    DynamicsConfig dyn;
    MeasurementPlan plan;
    plan.site = 1;
    CHECK_THROWS_AS(run_chain(cfg, dyn, plan, 0, rng), std::invalid_argument);
    dyn.sweeps_between_measurements = 0;
    CHECK_THROWS_AS(run_chain(cfg, dyn, plan, 10, rng), std::invalid_argument);
}
