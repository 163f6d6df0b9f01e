// Command-line runner for the o2rc shared library.
//
// Exit codes: 0 success, 2 usage/validation, 3 pair-bond feasibility,
// 4 verification failure, 5 I/O, 9 internal.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "o2rc.h"

namespace {

int exit_code(o2rc_status s) {
    switch (s) {
    case O2RC_OK: return 0;
    case O2RC_ERR_INVALID_ARGUMENT:
    case O2RC_ERR_DOMAIN:
    case O2RC_ERR_CONFIG:
    case O2RC_ERR_BUDGET: return 2;
    case O2RC_ERR_FEASIBILITY: return 3;
    case O2RC_ERR_VERIFICATION: return 4;
    case O2RC_ERR_IO: return 5;
    default: return 9;
    }
}

int fail(o2rc_status s) {
    std::cerr << "error: " << o2rc_last_error() << "\n";
    return exit_code(s);
}

std::string load_config(const std::string& path, const std::vector<std::string>& overrides,
                        bool* ok) {
    std::ostringstream text;
    *ok = true;
    if (!path.empty()) {
        std::ifstream f(path);
        if (!f) {
            std::cerr << "error: cannot read config file '" << path << "'\n";
            *ok = false;
            return "";
        }
        text << f.rdbuf() << '\n';
    }
    // later assignments win, so flag overrides are appended
    for (const std::string& kv : overrides) {
        size_t eq = kv.find('=');
        if (eq == std::string::npos) {
            std::cerr << "error: --set expects key=value, got '" << kv << "'\n";
            *ok = false;
            return "";
        }
        text << kv.substr(0, eq) << " = " << kv.substr(eq + 1) << '\n';
    }
    return text.str();
}

std::string default_out_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("O2RC_OUT_DIR")) return env;
    return ".";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"o2rc: random-cluster Monte Carlo for circle spin models"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::vector<std::string> overrides;
    bool dump_config = false;

    auto add_config_opts = [&](CLI::App* cmd) {
        cmd->add_option("-c,--config", config_path, "configuration file (key = value lines)");
        cmd->add_option("-s,--set", overrides, "override a configuration key (key=value)");
        cmd->add_option("-o,--out", out_dir, "output directory (default $O2RC_OUT_DIR or .)");
        cmd->add_flag("--dump-config", dump_config, "print the normalized configuration and exit");
    };

    CLI::App* sim = app.add_subcommand("simulate", "run chains and write series/summary files");
    add_config_opts(sim);
    CLI::App* swp = app.add_subcommand("sweep", "temperature scan, plot-ready CSV");
    add_config_opts(swp);

    std::string suite = "all";
    CLI::App* ver = app.add_subcommand("verify", "run deterministic identity suites");
    ver->add_option("suite", suite, "kernels | bonds | lemmas | dilute | all");

    std::string manifest_path;
    CLI::App* orc = app.add_subcommand("oracle", "regenerate the oracle manifest");
    orc->add_option("-o,--out", manifest_path, "manifest path (default oracle_manifest.json)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (sim->parsed() || swp->parsed()) {
        bool ok = false;
        std::string config = load_config(config_path, overrides, &ok);
        if (!ok) return 2;

        if (dump_config) {
            char* text = nullptr;
            o2rc_status s = o2rc_config_normalize(config.c_str(), &text);
            if (s != O2RC_OK) return fail(s);
            std::cout << text;
            o2rc_string_free(text);
            return 0;
        }

        std::string dir = default_out_dir(out_dir);
        if (sim->parsed()) {
            char* summary = nullptr;
            o2rc_status s = o2rc_simulate(config.c_str(), dir.c_str(), &summary);
            if (s != O2RC_OK) return fail(s);
            std::cout << summary;
            o2rc_string_free(summary);
        } else {
            o2rc_status s = o2rc_sweep(config.c_str(), dir.c_str());
            if (s != O2RC_OK) return fail(s);
            std::cout << "wrote " << dir << "/sweep.csv\n";
        }
        return 0;
    }

    if (ver->parsed()) {
        char* report = nullptr;
        int n_failed = 0;
        o2rc_status s = o2rc_verify(suite.c_str(), &report, &n_failed);
        if (report) {
            std::cout << report;
            o2rc_string_free(report);
        }
        if (s == O2RC_ERR_VERIFICATION) return 4;
        if (s != O2RC_OK) return fail(s);
        return 0;
    }

    if (orc->parsed()) {
        std::string path = manifest_path.empty() ? "oracle_manifest.json" : manifest_path;
        o2rc_status s = o2rc_oracle_manifest(path.c_str(), nullptr);
        if (s != O2RC_OK) return fail(s);
        std::cout << "wrote " << path << "\n";
        return 0;
    }

    return 2;
}
