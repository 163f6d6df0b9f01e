#include "o2rc.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "o2rc/bonds.hpp"
#include "o2rc/config.hpp"
#include "o2rc/dilute_potts.hpp"
#include "o2rc/errors.hpp"
#include "o2rc/graph.hpp"
#include "o2rc/kernels.hpp"
#include "o2rc/simulate.hpp"
#include "o2rc/verify.hpp"
#include "o2rc/weight.hpp"

using namespace o2rc;

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = new (std::nothrow) char[s.size() + 1];
    if (!out) return nullptr;
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
o2rc_status guarded(Fn&& fn) {
    try {
        g_last_error.clear();
        return fn();
    } catch (const FeasibilityError& e) {
        g_last_error = e.what();
        return O2RC_ERR_FEASIBILITY;
    } catch (const BudgetError& e) {
        g_last_error = e.what();
        return O2RC_ERR_BUDGET;
    } catch (const InsufficientDataError& e) {
        g_last_error = e.what();
        return O2RC_ERR_INSUFFICIENT_DATA;
    } catch (const UndefinedRatioError& e) {
        g_last_error = e.what();
        return O2RC_ERR_INSUFFICIENT_DATA;
    } catch (const ConfigError& e) {
        g_last_error = e.what();
        return O2RC_ERR_CONFIG;
    } catch (const IoError& e) {
        g_last_error = e.what();
        return O2RC_ERR_IO;
    } catch (const std::domain_error& e) {
        g_last_error = e.what();
        return O2RC_ERR_DOMAIN;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return O2RC_ERR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return O2RC_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return O2RC_ERR_INTERNAL;
    }
}

o2rc_status require(bool cond, const char* msg) {
    if (cond) return O2RC_OK;
    g_last_error = msg;
    return O2RC_ERR_INVALID_ARGUMENT;
}

KernelMode mode_of(int accurate) { return accurate ? KernelMode::accurate : KernelMode::fast; }

} // namespace

struct o2rc_weight {
    WeightFunction w;
};

struct o2rc_graph {
    Graph g;
};

extern "C" {

const char* o2rc_version(void) { return "1.0.0"; }

const char* o2rc_last_error(void) { return g_last_error.c_str(); }

void o2rc_string_free(char* s) { delete[] s; }

o2rc_status o2rc_wrapped_heat_kernel(double th1, double th2, double t, int accurate, double* out) {
    if (require(out != nullptr, "null output") != O2RC_OK) return O2RC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *out = wrapped_heat_kernel(Angle(th1), Angle(th2), TimeParam(t), mode_of(accurate));
        return O2RC_OK;
    });
}

o2rc_status o2rc_wrapped_heat_kernel_dual(double th1, double th2, double t, int accurate,
                                          double* out) {
    if (require(out != nullptr, "null output") != O2RC_OK) return O2RC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *out = wrapped_heat_kernel_dual(Angle(th1), Angle(th2), TimeParam(t), mode_of(accurate));
        return O2RC_OK;
    });
}

o2rc_status o2rc_reflected_kernel_half(double th1, double th2, double t, int accurate,
                                       double* out) {
    if (require(out != nullptr, "null output") != O2RC_OK) return O2RC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *out = reflected_kernel_half(Angle(th1), Angle(th2), TimeParam(t), mode_of(accurate));
        return O2RC_OK;
    });
}

o2rc_status o2rc_reflected_kernel_quarter(double th1, double th2, double t, int accurate,
                                          double* out) {
    if (require(out != nullptr, "null output") != O2RC_OK) return O2RC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *out = reflected_kernel_quarter(Angle(th1), Angle(th2), TimeParam(t), mode_of(accurate));
        return O2RC_OK;
    });
}

o2rc_status o2rc_weight_villain(double t, o2rc_weight** out) {
    if (require(out != nullptr, "null output") != O2RC_OK) return O2RC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *out = new o2rc_weight{WeightFunction::villain(TimeParam(t))};
        return O2RC_OK;
    });
}

o2rc_status o2rc_weight_xy(double beta, o2rc_weight** out) {
    if (require(out != nullptr, "null output") != O2RC_OK) return O2RC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *out = new o2rc_weight{WeightFunction::xy_exp(beta)};
        return O2RC_OK;
    });
}

void o2rc_weight_free(o2rc_weight* w) { delete w; }

o2rc_status o2rc_weight_eval(const o2rc_weight* w, double th1, double th2, double* out) {
    if (require(w && out, "null argument") != O2RC_OK) return O2RC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *out = w->w(Angle(th1), Angle(th2));
        return O2RC_OK;
    });
}

o2rc_status o2rc_single_bond_prob(const o2rc_weight* w, double thx, double thy, double axis_angle,
                                  double* out) {
    if (require(w && out, "null argument") != O2RC_OK) return O2RC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *out = single_bond_prob(w->w, Angle(thx), Angle(thy), ReflectionAxis(axis_angle));
        return O2RC_OK;
    });
}

o2rc_status o2rc_pair_bond_law(const o2rc_weight* w, double thx, double thy, double* p, double* q,
                               double* c) {
    if (require(w && p && q && c, "null argument") != O2RC_OK) return O2RC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        JointBondLaw law = pair_bond_law(w->w, Angle(thx), Angle(thy));
        *p = law.p;
        *q = law.q;
        *c = law.c;
        return O2RC_OK;
    });
}

o2rc_status o2rc_graph_box(int dim, int side, double t, const char* bc, o2rc_graph** out) {
    if (require(bc && out, "null argument") != O2RC_OK) return O2RC_ERR_INVALID_ARGUMENT;
    return guarded([&]() -> o2rc_status {
        std::string kind(bc);
        BoundaryKind k;
        if (kind == "wired") k = BoundaryKind::wired;
        else if (kind == "free") k = BoundaryKind::free;
        else if (kind == "torus") k = BoundaryKind::torus;
        else throw std::invalid_argument("bc must be wired, free or torus");
        *out = new o2rc_graph{Graph::box(dim, side, TimeParam(t), k)};
        return O2RC_OK;
    });
}

void o2rc_graph_free(o2rc_graph* g) { delete g; }

o2rc_status o2rc_graph_counts(const o2rc_graph* g, int* vertices, int* edges, int* boundary) {
    if (require(g != nullptr, "null graph") != O2RC_OK) return O2RC_ERR_INVALID_ARGUMENT;
    if (vertices) *vertices = g->g.vertex_count();
    if (edges) *edges = g->g.edge_count();
    if (boundary) *boundary = static_cast<int>(g->g.boundary().size());
    return O2RC_OK;
}

o2rc_status o2rc_graph_serialize(const o2rc_graph* g, char** out_text) {
    if (require(g && out_text, "null argument") != O2RC_OK) return O2RC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *out_text = dup_string(g->g.serialize());
        return *out_text ? O2RC_OK : O2RC_ERR_INTERNAL;
    });
}

o2rc_status o2rc_graph_deserialize(const char* text, o2rc_graph** out) {
    if (require(text && out, "null argument") != O2RC_OK) return O2RC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *out = new o2rc_graph{Graph::deserialize(text)};
        return O2RC_OK;
    });
}

o2rc_status o2rc_dp_transition_prob(int i, int j, int Q, double lambda, double t, double* out) {
    if (require(out != nullptr, "null output") != O2RC_OK) return O2RC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *out = dp_transition_prob(i, j, DilutePottsParams{Q, lambda, t, 1.0});
        return O2RC_OK;
    });
}

o2rc_status o2rc_dp_transition_density(int i, int j, int Q, double lambda, double t, double* out) {
    if (require(out != nullptr, "null output") != O2RC_OK) return O2RC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *out = dp_transition_density(i, j, DilutePottsParams{Q, lambda, t, 1.0});
        return O2RC_OK;
    });
}

o2rc_status o2rc_dp_bond_open_prob(int si, int sj, int Q, double lambda, double t, double* out) {
    if (require(out != nullptr, "null output") != O2RC_OK) return O2RC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *out = dp_bond_open_prob(si, sj, DilutePottsParams{Q, lambda, t, 1.0});
        return O2RC_OK;
    });
}

o2rc_status o2rc_dp_fk_limit(double t, int Q, double* beta, double* p) {
    if (require(beta && p, "null output") != O2RC_OK) return O2RC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        FkLimit f = dp_fk_limit_params(t, Q);
        *beta = f.beta;
        *p = f.p;
        return O2RC_OK;
    });
}

o2rc_status o2rc_config_default(char** out_text) {
    if (require(out_text != nullptr, "null output") != O2RC_OK) return O2RC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        ExperimentConfig cfg;
        *out_text = dup_string(cfg.serialize());
        return *out_text ? O2RC_OK : O2RC_ERR_INTERNAL;
    });
}

o2rc_status o2rc_config_normalize(const char* text, char** out_text) {
    if (require(text && out_text, "null argument") != O2RC_OK) return O2RC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        ExperimentConfig cfg = ExperimentConfig::parse(text);
        *out_text = dup_string(cfg.serialize());
        return *out_text ? O2RC_OK : O2RC_ERR_INTERNAL;
    });
}

o2rc_status o2rc_simulate(const char* config_text, const char* out_dir, char** summary_json) {
    if (require(config_text && out_dir, "null argument") != O2RC_OK)
        return O2RC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        ExperimentConfig cfg = ExperimentConfig::parse(config_text);
        std::string summary = run_simulate(cfg, out_dir);
        if (summary_json) *summary_json = dup_string(summary);
        return O2RC_OK;
    });
}

o2rc_status o2rc_sweep(const char* config_text, const char* out_dir) {
    if (require(config_text && out_dir, "null argument") != O2RC_OK)
        return O2RC_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        ExperimentConfig cfg = ExperimentConfig::parse(config_text);
        run_sweep(cfg, out_dir);
        return O2RC_OK;
    });
}

o2rc_status o2rc_verify(const char* suite, char** report, int* n_failed) {
    if (require(suite != nullptr, "null suite") != O2RC_OK) return O2RC_ERR_INVALID_ARGUMENT;
    return guarded([&]() -> o2rc_status {
        VerifyReport r = run_verify_suite(suite);
        if (report) *report = dup_string(format_report(r));
        int failed = 0;
        for (const auto& c : r.checks)
            if (!c.pass) ++failed;
        if (n_failed) *n_failed = failed;
        return failed == 0 ? O2RC_OK : O2RC_ERR_VERIFICATION;
    });
}

o2rc_status o2rc_oracle_manifest(const char* out_path, char** manifest_json) {
    return guarded([&]() -> o2rc_status {
        std::string text = oracle_manifest_json();
        if (out_path) {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) {
                g_last_error = std::string("cannot write ") + out_path;
                return O2RC_ERR_IO;
            }
            f << text;
        }
        if (manifest_json) *manifest_json = dup_string(text);
        return O2RC_OK;
    });
}

} // extern "C"
