#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "stc/channel.hpp"
#include "stc/decoders.hpp"
#include "stc/stcodes.hpp"

namespace stc {

enum class DecoderKind { Ml, RsaM1, RsaM2Guess, RsaUnpruned };

inline const char* decoder_name(DecoderKind d) {
    switch (d) {
        case DecoderKind::Ml: return "ml";
        case DecoderKind::RsaM1: return "rsa-m1";
        case DecoderKind::RsaM2Guess: return "rsa-m2";
        case DecoderKind::RsaUnpruned: return "rsa-unpruned";
    }
    return "?";
}

struct ExperimentConfig {
    CodeSpec code = CodeSpec::alamouti();
    DecoderKind decoder = DecoderKind::Ml;
    std::vector<double> snr_grid_db;
    long trials = 0;
    std::uint64_t seed = 1;
    std::optional<long> max_errors;  // per-point early stop, batch granularity
    bool noiseless = false;
    int workers = 1;
};

struct MerPoint {
    double snr_db = 0.0;
    long trials = 0;
    long errors = 0;
    double mer = 0.0;
    double ci95_lo = 0.0;
    double ci95_hi = 0.0;
    std::optional<double> mean_slicings;
};

struct Interval {
    double lo, hi;
};

// Wilson score interval; well behaved at zero errors.
inline Interval wilson_interval(long errors, long trials, double z = 1.959963984540054) {
    if (trials < 1) throw std::invalid_argument("wilson_interval: trials must be >= 1");
    if (errors < 0 || errors > trials)
        throw std::invalid_argument("wilson_interval: errors out of range");
    const double n = static_cast<double>(trials);
    const double ph = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (ph + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(ph * (1.0 - ph) / n + z2 / (4.0 * n * n)) / denom;
    // the bounds are exact at the degenerate counts; avoid rounding residue
    return {errors == 0 ? 0.0 : std::max(0.0, center - half),
            errors == trials ? 1.0 : std::min(1.0, center + half)};
}

namespace detail {

struct PointTotals {
    long trials_run = 0;
    long errors = 0;
    long long slicing_sum = 0;
};

inline constexpr long kBatch = 1024;

// Runs trial_fn over trial indices in fixed-size batches. Within a batch the
// workers take contiguous sub-ranges and partial sums are added in worker
// order, so totals do not depend on the worker count. Early stop is checked
// only at batch boundaries for the same reason.
template <typename TrialFn>
PointTotals run_point(long trials, std::optional<long> max_errors, int workers,
                      const TrialFn& trial_fn) {
    PointTotals tot;
    for (long start = 0; start < trials; start += kBatch) {
        const long end = std::min(trials, start + kBatch);
        if (workers <= 1) {
            for (long i = start; i < end; ++i) {
                auto [err, slicings] = trial_fn(i);
                tot.errors += err ? 1 : 0;
                tot.slicing_sum += slicings;
            }
        } else {
            const long chunk = (end - start + workers - 1) / workers;
            std::vector<PointTotals> part(static_cast<std::size_t>(workers));
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w) {
                const long lo = start + static_cast<long>(w) * chunk;
                const long hi = std::min(end, lo + chunk);
                if (lo >= hi) break;
                pool.emplace_back([&, w, lo, hi] {
                    PointTotals& p = part[static_cast<std::size_t>(w)];
                    for (long i = lo; i < hi; ++i) {
                        auto [err, slicings] = trial_fn(i);
                        p.errors += err ? 1 : 0;
                        p.slicing_sum += slicings;
                    }
                });
            }
            for (auto& t : pool) t.join();
            for (const auto& p : part) {
                tot.errors += p.errors;
                tot.slicing_sum += p.slicing_sum;
            }
        }
        tot.trials_run = end;
        if (max_errors && tot.errors >= *max_errors) break;
    }
    return tot;
}

inline void validate(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("run_mer: trials must be >= 1");
    if (cfg.snr_grid_db.empty()) throw std::invalid_argument("run_mer: empty SNR grid");
    for (std::size_t i = 1; i < cfg.snr_grid_db.size(); ++i)
        if (!(cfg.snr_grid_db[i] > cfg.snr_grid_db[i - 1]))
            throw std::invalid_argument("run_mer: SNR grid must be strictly increasing");
    if (cfg.workers < 1) throw std::invalid_argument("run_mer: workers must be >= 1");
    if (cfg.max_errors && *cfg.max_errors < 1)
        throw std::invalid_argument("run_mer: max_errors must be >= 1");
    const bool rsa_dec = cfg.decoder != DecoderKind::Ml;
    if (rsa_dec && cfg.code.kind != CodeKind::RotScaledAlamouti)
        throw std::invalid_argument("run_mer: rsa decoders require the rsa code");
}

}  // namespace detail

// Message-error-rate experiment. Trial i at SNR index si draws everything
// from Rng(seed).fork(si).fork(i): message byte, then H (row-major), then
// noise (column-major), making every trial reproducible in isolation.
inline std::vector<MerPoint> run_mer(const ExperimentConfig& cfg) {
    detail::validate(cfg);
    const Codebook cb(cfg.code);
    const Rng root(cfg.seed);
    const bool wants_slicings = cfg.decoder != DecoderKind::Ml;
    std::vector<MerPoint> out;
    for (std::size_t si = 0; si < cfg.snr_grid_db.size(); ++si) {
        const double snr_db = cfg.snr_grid_db[si];
        const double p = std::pow(10.0, snr_db / 10.0);
        const double scale = std::sqrt(p) * cb.norm();
        const Rng point_rng = root.fork(si);
        auto trial_fn = [&](long i) -> std::pair<bool, int> {
            Rng r = point_rng.fork(static_cast<std::uint64_t>(i));
            const int msg = static_cast<int>(r.next_u64() & 0xff);
            const ChannelMatrix h = sample_channel(r);
            const Matrix2c x = scale * cb.raw(msg);
            const Matrix2c y = cfg.noiseless ? transmit_noiseless(h, x) : transmit(h, x, 1.0, r);
            DecodeResult dr;
            switch (cfg.decoder) {
                case DecoderKind::Ml: dr = ml_decode(cb, h, y, p); break;
                case DecoderKind::RsaM1: dr = rsa_decode(cb, h, y, p, RsaMethod::M1); break;
                case DecoderKind::RsaM2Guess:
                    dr = rsa_decode(cb, h, y, p, RsaMethod::M2Guess);
                    break;
                case DecoderKind::RsaUnpruned:
                    dr = rsa_decode(cb, h, y, p, RsaMethod::Unpruned);
                    break;
            }
            return {dr.message != msg, dr.slicings};
        };
        const detail::PointTotals t =
            detail::run_point(cfg.trials, cfg.max_errors, cfg.workers, trial_fn);
        MerPoint pt;
        pt.snr_db = snr_db;
        pt.trials = t.trials_run;
        pt.errors = t.errors;
        pt.mer = static_cast<double>(t.errors) / static_cast<double>(t.trials_run);
        const Interval ci = wilson_interval(t.errors, t.trials_run);
        pt.ci95_lo = ci.lo;
        pt.ci95_hi = ci.hi;
        if (wants_slicings)
            pt.mean_slicings =
                static_cast<double>(t.slicing_sum) / static_cast<double>(t.trials_run);
        out.push_back(pt);
    }
    return out;
}

// Outage curve with the same trial indexing, batching, and CI treatment.
inline std::vector<MerPoint> run_telatar_curve(double rate, const std::vector<double>& snr_grid_db,
                                               long trials, std::uint64_t seed,
                                               std::optional<long> max_errors = std::nullopt,
                                               int workers = 1) {
    if (trials < 1) throw std::invalid_argument("run_telatar_curve: trials must be >= 1");
    if (snr_grid_db.empty()) throw std::invalid_argument("run_telatar_curve: empty SNR grid");
    if (workers < 1) throw std::invalid_argument("run_telatar_curve: workers must be >= 1");
    const Rng root(seed);
    std::vector<MerPoint> out;
    for (std::size_t si = 0; si < snr_grid_db.size(); ++si) {
        const double snr = std::pow(10.0, snr_grid_db[si] / 10.0);
        const Rng point_rng = root.fork(si);
        auto trial_fn = [&](long i) -> std::pair<bool, int> {
            Rng r = point_rng.fork(static_cast<std::uint64_t>(i));
            return {telatar_capacity(sample_channel(r), snr) < rate, 0};
        };
        const detail::PointTotals t = detail::run_point(trials, max_errors, workers, trial_fn);
        MerPoint pt;
        pt.snr_db = snr_grid_db[si];
        pt.trials = t.trials_run;
        pt.errors = t.errors;
        pt.mer = static_cast<double>(t.errors) / static_cast<double>(t.trials_run);
        const Interval ci = wilson_interval(t.errors, t.trials_run);
        pt.ci95_lo = ci.lo;
        pt.ci95_hi = ci.hi;
        out.push_back(pt);
    }
    return out;
}

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline constexpr const char* kMerCsvHeader =
    "snr_db,code,decoder,trials,errors,mer,ci95_lo,ci95_hi,mean_slicings";

// One CSV document per experiment; mean_slicings stays empty for decoders
// that do not slice.
inline std::string mer_csv(const std::vector<MerPoint>& points, const std::string& code,
                           const std::string& decoder) {
    std::string out = kMerCsvHeader;
    out += '\n';
    for (const MerPoint& p : points) {
        out += format_double(p.snr_db) + ',' + code + ',' + decoder + ',' +
               std::to_string(p.trials) + ',' + std::to_string(p.errors) + ',' +
               format_double(p.mer) + ',' + format_double(p.ci95_lo) + ',' +
               format_double(p.ci95_hi) + ',';
        if (p.mean_slicings) out += format_double(*p.mean_slicings);
        out += '\n';
    }
    return out;
}

}  // namespace stc
