#include "otfs/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace otfs {

int resolve_workers(int hint) {
    if (hint > 0) {
        return hint;
    }
    if (const char* env = std::getenv("OTFS_CDRT_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) {
            return n;
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

struct Counts {
    long long xc = 0;
    long long xe = 0;
    long long xbarc = 0;

    void add(const TrialOutcome& o) {
        xc += o.outage_xc ? 1 : 0;
        xe += o.outage_xe ? 1 : 0;
        xbarc += o.outage_xbarc ? 1 : 0;
    }
    void merge(const Counts& other) {
        xc += other.xc;
        xe += other.xe;
        xbarc += other.xbarc;
    }
};

OutageEstimate to_estimate(long long events, long long trials) {
    OutageEstimate e;
    e.trials = trials;
    e.p_hat = static_cast<double>(events) / static_cast<double>(trials);
    e.ci95_halfwidth = 1.96 * std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(trials));
    e.low_confidence = events < 10;
    return e;
}

} // namespace

OutageEstimates estimate_outage(const Scenario& s, const McConfig& mc) {
    if (mc.trials < 1) {
        throw ConfigError("montecarlo: trials must be >= 1");
    }
    const TrialRunner runner(s);
    const int workers = static_cast<int>(
        std::max<long long>(1, std::min<long long>(resolve_workers(mc.parallelism), mc.trials)));

    std::vector<Counts> partial(static_cast<std::size_t>(workers));
    auto body = [&](int worker) {
        Counts local;
        // contiguous block per worker; trial seeding is index-based, so the
        // partition only affects load balance, never results
        const long long lo = mc.trials * worker / workers;
        const long long hi = mc.trials * (worker + 1) / workers;
        for (long long i = lo; i < hi; ++i) {
            SplitMix64 rng = SplitMix64::substream(mc.master_seed, static_cast<std::uint64_t>(i));
            local.add(runner.run(rng));
        }
        partial[static_cast<std::size_t>(worker)] = local;
    };

    if (workers == 1) {
        body(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back(body, w);
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    Counts total;
    for (const Counts& c : partial) {
        total.merge(c);
    }
    OutageEstimates out;
    out.xc = to_estimate(total.xc, mc.trials);
    out.xe = to_estimate(total.xe, mc.trials);
    out.xbarc = to_estimate(total.xbarc, mc.trials);
    return out;
}

std::vector<double> sample_theta(const ChannelProfile& profile, const FrameParams& frame,
                                 const McConfig& mc, ThetaMode mode) {
    if (mc.trials < 1) {
        throw ConfigError("montecarlo: trials must be >= 1");
    }
    const LinkSampler sampler(profile, frame);
    const GroupStructure& groups = sampler.groups();
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(mc.trials));
    for (long long i = 0; i < mc.trials; ++i) {
        SplitMix64 rng = SplitMix64::substream(mc.master_seed, static_cast<std::uint64_t>(i));
        double value;
        if (mode == ThetaMode::exact) {
            value = sampler.draw_theta(rng);
        } else {
            value = 0.0;
            for (int g = 0; g < groups.G; ++g) {
                value += groups.multiplicities[static_cast<std::size_t>(g)] /
                         rng.next_exp(profile.omega_total);
            }
        }
        if (std::isfinite(value)) {
            samples.push_back(value);
        }
    }
    std::sort(samples.begin(), samples.end());
    return samples;
}

double ks_distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) {
        throw ConfigError("ks_distance: empty sample set");
    }
    double d = 0.0;
    std::size_t ia = 0;
    std::size_t ib = 0;
    while (ia < a.size() && ib < b.size()) {
        if (a[ia] <= b[ib]) {
            ++ia;
        } else {
            ++ib;
        }
        const double fa = static_cast<double>(ia) / static_cast<double>(a.size());
        const double fb = static_cast<double>(ib) / static_cast<double>(b.size());
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

double sup_cdf_gap(const std::vector<double>& sorted_samples, const CfSpec& spec,
                   int grid_points) {
    if (sorted_samples.empty() || grid_points < 2) {
        throw ConfigError("sup_cdf_gap: need samples and at least two grid points");
    }
    const std::size_t n = sorted_samples.size();
    double worst = 0.0;
    for (int g = 0; g < grid_points; ++g) {
        const std::size_t idx =
            static_cast<std::size_t>((static_cast<double>(g) + 0.5) / grid_points * n);
        const double z = sorted_samples[std::min(idx, n - 1)];
        const double empirical =
            static_cast<double>(std::upper_bound(sorted_samples.begin(), sorted_samples.end(), z) -
                                sorted_samples.begin()) /
            static_cast<double>(n);
        const double analytic = gil_pelaez_cdf(z, spec);
        worst = std::max(worst, std::abs(empirical - analytic));
    }
    return worst;
}

} // namespace otfs
