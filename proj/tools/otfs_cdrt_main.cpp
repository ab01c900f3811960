// Command-line front end. Links the C API only.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "otfs_cdrt.h"

namespace {

// exit codes: 0 ok, 1 config/input error, 2 validation failure
int exit_code_for(otfs_status status) {
    switch (status) {
        case OTFS_OK: return 0;
        case OTFS_ERR_VALIDATION: return 2;
        default: return 1;
    }
}

struct SessionHolder {
    otfs_session* handle = nullptr;
    ~SessionHolder() { otfs_session_close(handle); }
};

int open_session(const std::string& config, SessionHolder& holder) {
    const otfs_status rc =
        otfs_session_open(config.empty() ? nullptr : config.c_str(), &holder.handle);
    if (rc != OTFS_OK) {
        std::fprintf(stderr, "otfs-cdrt: %s\n", otfs_status_str(rc));
        return exit_code_for(rc);
    }
    return 0;
}

int report_result(const SessionHolder& holder, otfs_status rc, const char* what) {
    if (rc != OTFS_OK) {
        std::fprintf(stderr, "otfs-cdrt: %s failed: %s\n", what,
                     otfs_session_last_error(holder.handle));
        return exit_code_for(rc);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"OTFS-NOMA coordinated direct/relay transmission simulator"};
    app.require_subcommand(1);

    std::string config;
    std::string out_path;
    long long samples = 0;

    auto* sweep_outage = app.add_subcommand("sweep-outage", "SNR sweep of outage probabilities");
    sweep_outage->add_option("--config", config, "JSON config file (defaults when omitted)");
    sweep_outage->add_option("--out", out_path, "output CSV path")->required();

    auto* sweep_sumrate = app.add_subcommand("sweep-sumrate", "SNR sweep of outage sum rates");
    sweep_sumrate->add_option("--config", config, "JSON config file (defaults when omitted)");
    sweep_sumrate->add_option("--out", out_path, "output CSV path")->required();

    auto* validate = app.add_subcommand("validate-cf", "characteristic-function regression checks");
    validate->add_option("--config", config, "JSON config file (defaults when omitted)");
    validate->add_option("--samples", samples, "Monte Carlo samples per check");

    std::string plot_in;
    std::string plot_dir = ".";
    auto* plot = app.add_subcommand("plot", "render a sweep CSV as SVG charts");
    plot->add_option("--in", plot_in, "input CSV")->required();
    plot->add_option("--out", plot_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    if (sweep_outage->parsed() || sweep_sumrate->parsed()) {
        SessionHolder session;
        if (const int rc = open_session(config, session)) {
            return rc;
        }
        const bool outage = sweep_outage->parsed();
        const otfs_status rc = outage ? otfs_sweep_outage(session.handle, out_path.c_str())
                                      : otfs_sweep_sumrate(session.handle, out_path.c_str());
        if (const int code = report_result(session, rc, outage ? "sweep-outage" : "sweep-sumrate")) {
            return code;
        }
        std::printf("wrote %s\n", out_path.c_str());
        return 0;
    }

    if (validate->parsed()) {
        SessionHolder session;
        if (const int rc = open_session(config, session)) {
            return rc;
        }
        const otfs_status rc = otfs_validate_cf(session.handle, samples);
        std::fputs(otfs_session_report(session.handle), stdout);
        if (rc == OTFS_ERR_VALIDATION) {
            return 2;
        }
        return report_result(session, rc, "validate-cf");
    }

    if (plot->parsed()) {
        int files = 0;
        const otfs_status rc = otfs_plot(plot_in.c_str(), plot_dir.c_str(), &files);
        if (rc != OTFS_OK) {
            std::fprintf(stderr, "otfs-cdrt: plot failed (%s)\n", otfs_status_str(rc));
            return exit_code_for(rc);
        }
        std::printf("wrote %d chart(s) to %s\n", files, plot_dir.c_str());
        return 0;
    }

    return 1;
}
