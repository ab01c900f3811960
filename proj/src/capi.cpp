#include "otfs_cdrt.h"

#include <string>

#include "otfs/analysis.hpp"
#include "otfs/config.hpp"
#include "otfs/plot.hpp"
#include "otfs/sweep.hpp"

struct otfs_session {
    otfs::SweepConfig config;
    std::string last_error;
    std::string report;
};

namespace {

otfs_status classify(const std::exception& e) {
    if (dynamic_cast<const otfs::ConfigError*>(&e) != nullptr) {
        return OTFS_ERR_PARSE;
    }
    if (dynamic_cast<const otfs::Error*>(&e) != nullptr) {
        return OTFS_ERR_INVALID_ARG;
    }
    return OTFS_ERR_INTERNAL;
}

template <typename Fn>
otfs_status guarded(otfs_session* session, Fn&& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        if (session != nullptr) {
            session->last_error = e.what();
        }
        return classify(e);
    } catch (...) {
        if (session != nullptr) {
            session->last_error = "unknown error";
        }
        return OTFS_ERR_INTERNAL;
    }
}

template <typename Fn>
otfs_status guarded_stateless(Fn&& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        return classify(e);
    } catch (...) {
        return OTFS_ERR_INTERNAL;
    }
}

} // namespace

extern "C" {

const char* otfs_version(void) { return "0.1.0"; }

const char* otfs_status_str(otfs_status status) {
    switch (status) {
        case OTFS_OK: return "ok";
        case OTFS_ERR_INVALID_ARG: return "invalid argument";
        case OTFS_ERR_PARSE: return "parse/config error";
        case OTFS_ERR_VALIDATION: return "validation failure";
        case OTFS_ERR_IO: return "i/o error";
        case OTFS_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

otfs_status otfs_session_open(const char* config_path, otfs_session** out) {
    if (out == nullptr) {
        return OTFS_ERR_INVALID_ARG;
    }
    *out = nullptr;
    auto session = new otfs_session();
    const otfs_status rc = guarded(session, [&]() {
        session->config = config_path == nullptr ? otfs::default_sweep_config()
                                                 : otfs::load_sweep_config(config_path);
        return OTFS_OK;
    });
    if (rc != OTFS_OK) {
        delete session;
        return rc;
    }
    *out = session;
    return OTFS_OK;
}

void otfs_session_close(otfs_session* session) { delete session; }

const char* otfs_session_last_error(const otfs_session* session) {
    return session == nullptr ? "" : session->last_error.c_str();
}

const char* otfs_session_report(const otfs_session* session) {
    return session == nullptr ? "" : session->report.c_str();
}

otfs_status otfs_sweep_outage(otfs_session* session, const char* csv_path) {
    if (session == nullptr || csv_path == nullptr) {
        return OTFS_ERR_INVALID_ARG;
    }
    return guarded(session, [&]() {
        otfs::write_outage_csv(csv_path, otfs::sweep_outage(session->config));
        return OTFS_OK;
    });
}

otfs_status otfs_sweep_sumrate(otfs_session* session, const char* csv_path) {
    if (session == nullptr || csv_path == nullptr) {
        return OTFS_ERR_INVALID_ARG;
    }
    return guarded(session, [&]() {
        otfs::write_sumrate_csv(csv_path, otfs::sweep_sumrate(session->config));
        return OTFS_OK;
    });
}

otfs_status otfs_validate_cf(otfs_session* session, long long samples) {
    if (session == nullptr) {
        return OTFS_ERR_INVALID_ARG;
    }
    return guarded(session, [&]() {
        const otfs::CfValidation result =
            otfs::validate_cf(session->config, samples > 0 ? samples : 100000);
        session->report = result.report;
        if (!result.passed) {
            session->last_error = "CF validation failed; see report";
            return OTFS_ERR_VALIDATION;
        }
        return OTFS_OK;
    });
}

otfs_status otfs_plot(const char* csv_path, const char* out_dir, int* files_written) {
    if (csv_path == nullptr || out_dir == nullptr) {
        return OTFS_ERR_INVALID_ARG;
    }
    return guarded_stateless([&]() {
        const int n = otfs::plot_csv(csv_path, out_dir);
        if (files_written != nullptr) {
            *files_written = n;
        }
        return OTFS_OK;
    });
}

otfs_status otfs_bessel_k1(double re, double im, double* out_re, double* out_im) {
    if (out_re == nullptr || out_im == nullptr) {
        return OTFS_ERR_INVALID_ARG;
    }
    return guarded_stateless([&]() {
        const otfs::cplx value = otfs::bessel_k1({re, im});
        *out_re = value.real();
        *out_im = value.imag();
        return OTFS_OK;
    });
}

otfs_status otfs_cf_psi(double t, double omega, double* out_re, double* out_im) {
    if (out_re == nullptr || out_im == nullptr) {
        return OTFS_ERR_INVALID_ARG;
    }
    return guarded_stateless([&]() {
        const otfs::cplx value = otfs::psi_kernel(t, omega);
        *out_re = value.real();
        *out_im = value.imag();
        return OTFS_OK;
    });
}

otfs_status otfs_cdf_theta(double z, const int* multiplicities, int n_groups, double omega,
                           double* out_cdf) {
    if (multiplicities == nullptr || n_groups < 1 || out_cdf == nullptr) {
        return OTFS_ERR_INVALID_ARG;
    }
    return guarded_stateless([&]() {
        otfs::CfSpec spec;
        spec.omega = omega;
        spec.multiplicities.assign(multiplicities, multiplicities + n_groups);
        *out_cdf = otfs::gil_pelaez_cdf(z, spec);
        return OTFS_OK;
    });
}

otfs_status otfs_outage_special(double alpha_c, double alpha_e, double rho_s, double rho_r,
                                int nm, double r_xc, double r_xe, double r_xbarc,
                                double omega_sc1, double omega_sr1, double omega_sc2,
                                double omega_re2, double* p_xc, double* p_xe, double* p_xbarc) {
    if (p_xc == nullptr || p_xe == nullptr || p_xbarc == nullptr || nm < 1) {
        return OTFS_ERR_INVALID_ARG;
    }
    return guarded_stateless([&]() {
        otfs::OutageInputs in;
        in.alloc = otfs::PowerAllocation{alpha_c, alpha_e};
        in.rho_s = rho_s;
        in.rho_r = rho_r;
        in.nm = nm;
        in.rates = otfs::RateTargets{r_xc, r_xe, r_xbarc};
        otfs::check_rates(in.rates);
        const otfs::OutageTriple p =
            otfs::outage_special(in, otfs::LinkOmegas{omega_sc1, omega_sr1, omega_sc2, omega_re2});
        *p_xc = p.xc;
        *p_xe = p.xe;
        *p_xbarc = p.xbarc;
        return OTFS_OK;
    });
}

} // extern "C"
