#include "otfs/modem.hpp"

#include <cmath>

namespace otfs {

PowerAllocation::PowerAllocation(double alpha_c_, double alpha_e_)
    : alpha_c(alpha_c_), alpha_e(alpha_e_) {
    if (!(alpha_c > 0.0) || !(alpha_e > 0.0) || !(alpha_c < alpha_e)) {
        throw ConfigError("power allocation: need 0 < alpha_c < alpha_e");
    }
    if (std::abs(alpha_c + alpha_e - 1.0) > 1e-12) {
        throw ConfigError("power allocation: alpha_c + alpha_e must equal 1");
    }
}

namespace {

std::vector<cplx> twiddles(int n, double sign) {
    std::vector<cplx> table(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double angle = sign * 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n);
        table[static_cast<std::size_t>(i)] = {std::cos(angle), std::sin(angle)};
    }
    return table;
}

void check_size(std::size_t got, const FrameParams& frame, const char* what) {
    if (got != static_cast<std::size_t>(frame.grid_size())) {
        throw ConfigError(std::string(what) + ": grid size does not match the frame");
    }
}

// Separable evaluation: a length-N transform over the Doppler axis followed by
// a length-M transform over the delay axis (or vice versa). Signs: the k<->n
// kernel uses +sign_n, the l<->m kernel uses -sign_n.
std::vector<cplx> separable_transform(const std::vector<cplx>& in, const FrameParams& frame,
                                      double sign_n, double scale) {
    const int N = frame.N;
    const int M = frame.M;
    const auto wn = twiddles(N, sign_n);
    const auto wm = twiddles(M, -sign_n);
    // stage 1: transform the inner (length N) axis for each outer index
    std::vector<cplx> mid(in.size());
    for (int outer = 0; outer < M; ++outer) {
        const cplx* col = in.data() + static_cast<std::size_t>(outer) * N;
        for (int a = 0; a < N; ++a) {
            cplx acc{0.0, 0.0};
            for (int b = 0; b < N; ++b) {
                acc += col[b] * wn[static_cast<std::size_t>((static_cast<long long>(a) * b) % N)];
            }
            mid[static_cast<std::size_t>(outer) * N + a] = acc;
        }
    }
    // stage 2: transform the outer (length M) axis for each inner index
    std::vector<cplx> out(in.size());
    for (int a = 0; a < N; ++a) {
        for (int c = 0; c < M; ++c) {
            cplx acc{0.0, 0.0};
            for (int d = 0; d < M; ++d) {
                acc += mid[static_cast<std::size_t>(d) * N + a] *
                       wm[static_cast<std::size_t>((static_cast<long long>(c) * d) % M)];
            }
            out[static_cast<std::size_t>(c) * N + a] = acc * scale;
        }
    }
    return out;
}

} // namespace

TfGrid isfft(const DdGrid& dd, const FrameParams& frame) {
    check_size(dd.values.size(), frame, "isfft");
    const double scale = 1.0 / static_cast<double>(frame.grid_size());
    return TfGrid{separable_transform(dd.values, frame, +1.0, scale)};
}

DdGrid sfft(const TfGrid& tf, const FrameParams& frame) {
    check_size(tf.values.size(), frame, "sfft");
    return DdGrid{separable_transform(tf.values, frame, -1.0, 1.0)};
}

DdGrid superpose(const DdGrid& x_c, const DdGrid& x_e, const PowerAllocation& alloc) {
    if (x_c.values.size() != x_e.values.size()) {
        throw ConfigError("superpose: grid sizes differ");
    }
    const double wc = std::sqrt(alloc.alpha_c);
    const double we = std::sqrt(alloc.alpha_e);
    DdGrid out;
    out.values.resize(x_c.values.size());
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        out.values[i] = wc * x_c.values[i] + we * x_e.values[i];
    }
    return out;
}

DdGrid apply_dd_channel(const ChannelRealization& real, const DdGrid& x, const FrameParams& frame) {
    check_profile(real.profile, frame);
    check_size(x.values.size(), frame, "apply_dd_channel");
    const int N = frame.N;
    const int M = frame.M;
    DdGrid out;
    out.values.assign(x.values.size(), cplx{0.0, 0.0});
    for (std::size_t w = 0; w < real.profile.paths.size(); ++w) {
        const PathTap& tap = real.profile.paths[w];
        const cplx gain = real.gains[w];
        for (int l = 0; l < M; ++l) {
            const int lp = ((l - tap.delay) % M + M) % M;
            for (int k = 0; k < N; ++k) {
                const int kp = ((k - tap.doppler) % N + N) % N;
                out.values[static_cast<std::size_t>(l) * N + k] +=
                    gain * x.values[static_cast<std::size_t>(lp) * N + kp];
            }
        }
    }
    return out;
}

DdGrid zf_equalize(const DdGrid& y, const EigenSpectrum& spec) {
    const FrameParams frame{spec.M, spec.N, 1.0, 0.0};
    check_size(y.values.size(), frame, "zf_equalize");
    double mean_sq = 0.0;
    double min_sq = std::numeric_limits<double>::infinity();
    for (const cplx& lam : spec.lambdas) {
        const double sq = std::norm(lam);
        mean_sq += sq;
        min_sq = std::min(min_sq, sq);
    }
    mean_sq /= static_cast<double>(spec.lambdas.size());
    if (min_sq == 0.0 || min_sq < kSingularRelThreshold * mean_sq) {
        throw SingularChannel("zf_equalize: channel spectrum is singular");
    }
    TfGrid tf = isfft(y, frame);
    for (std::size_t i = 0; i < tf.values.size(); ++i) {
        tf.values[i] /= spec.lambdas[i];
    }
    return sfft(tf, frame);
}

DdGrid random_payload(Payload kind, int nm, SplitMix64& rng) {
    DdGrid out;
    out.values.resize(static_cast<std::size_t>(nm));
    if (kind == Payload::qpsk) {
        const double amp = std::sqrt(0.5);
        for (auto& v : out.values) {
            const std::uint64_t bits = rng.next_u64();
            v = {(bits & 1) ? amp : -amp, (bits & 2) ? amp : -amp};
        }
    } else {
        for (auto& v : out.values) {
            v = rng.next_cgauss(1.0);
        }
    }
    return out;
}

void add_noise(DdGrid& grid, double variance, SplitMix64& rng) {
    for (auto& v : grid.values) {
        v += rng.next_cgauss(variance);
    }
}

} // namespace otfs
