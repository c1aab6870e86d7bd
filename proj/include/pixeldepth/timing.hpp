#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pixeldepth/blob.hpp"

namespace pixeldepth {

struct TimingSample {
    std::string image_id;
    int run_index = 0;
    double elapsed = 0.0; // seconds
};

struct TimingStats {
    std::string image_id;
    double mean = 0.0; // seconds
    double std_dev = 0.0;
    int n_runs = 0;
    // largest repetition batch a sample was averaged over; 1 unless the
    // decode sat below the timer-granularity floor
    int batch = 1;
    std::vector<double> samples; // retained when Protocol::keep_samples

    double std_err() const;
};

enum class OutlierPolicy { none, trim_fraction };

// The measurement protocol: warm-up passes, then n_runs timed passes, each
// visiting every blob exactly once in a fresh seeded-shuffled order, with an
// optional cache-clearing hook between measurements.
struct Protocol {
    int n_runs = 30;
    int warmup_runs = 3;
    uint64_t shuffle_seed = 0x5eed;
    bool clear_cache = true;
    OutlierPolicy outlier_policy = OutlierPolicy::trim_fraction;
    double trim = 0.1;
    bool keep_samples = true;
    // clear_cache scratch-walk size. 0 (the default) drops reusable buffers
    // only; sizing it evicts warm data caches too, which makes decode times
    // track payload memory traffic rather than decoding work.
    size_t cache_scratch_bytes = 0;
    // timer-granularity floor: decodes shorter than this many clock ticks
    // are measured as a batch and divided
    int min_timed_ticks = 50;
    // integrity-check repetitions after each timed decode (outside the timed
    // region); exists so tests can prove verification cost does not leak
    // into measurements
    int verify_repeats = 1;
};

void validate(const Protocol& p);

struct SessionMetadata {
    std::string clock_name;      // "thread_cputime" or "steady"
    double clock_resolution_s = 0.0;
    std::string machine;
    std::string codec_version;
    std::string rng_version;
    double load_average = -1.0;
    Protocol protocol;
};

// Injectable clock for tests; returns nanoseconds.
using ClockFn = std::function<uint64_t()>;

/// Monotonic nanosecond clock used for measurements: thread CPU time where
/// the platform exposes it, the steady clock otherwise.
uint64_t measurement_clock_ns();
const char* measurement_clock_name();
double measurement_clock_resolution_s();

/// Elapsed seconds of exactly one decompress_image call. The caller is
/// responsible for warm-up; integrity verification happens outside the
/// timed region.
double measure_one(const CompressedBlob& blob);

/// Best-effort cache disturbance between measurements: drops codec scratch
/// and walks a scratch buffer to evict warm data. Idempotent.
void clear_cache_hook(size_t scratch_bytes = 8u << 20);

/// Visit order for one run; a pure function of (shuffle_seed, run_index).
std::vector<size_t> session_schedule(uint64_t shuffle_seed, int run_index, size_t n);

/// The full measurement session over a set of blobs. ids must parallel
/// blobs. Strictly single-threaded; refuses to run reentrantly. All samples
/// (pre-trim) are appended to all_samples when provided.
std::vector<TimingStats> run_session(const std::vector<CompressedBlob>& blobs,
                                     const std::vector<std::string>& ids, const Protocol& protocol,
                                     std::vector<TimingSample>* all_samples = nullptr,
                                     ClockFn clock = nullptr);

/// Mean/std after the protocol's trimming policy.
TimingStats aggregate(const std::string& id, std::vector<double> samples, const Protocol& p);

/// For each run-count prefix k, the maximum over images of the relative
/// running-mean shift |m_k - m_{k-1}| / m_k. Input samples are grouped by
/// image id, ordered by run.
std::vector<std::pair<int, double>> stabilization_curve(const std::vector<TimingSample>& samples);

SessionMetadata make_session_metadata(const Protocol& p);

/// JSON-lines serialization: one metadata header record then one record per
/// TimingStats.
std::string session_to_jsonl(const SessionMetadata& meta, const std::vector<TimingStats>& stats);

} // namespace pixeldepth
