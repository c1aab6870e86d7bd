#include "pixeldepth/timing.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstring>
#include <map>
#include <sstream>

#ifdef __unix__
#include <ctime>
#include <unistd.h>
#endif
#ifdef __linux__
#include <cstdlib>
#include <sched.h>
#endif

#include "pixeldepth/codec.hpp"
#include "pixeldepth/image.hpp"
#include "pixeldepth/rng.hpp"

#include <json.hpp>

namespace pixeldepth {

double TimingStats::std_err() const {
    return n_runs > 0 ? std_dev / std::sqrt(static_cast<double>(n_runs)) : 0.0;
}

void validate(const Protocol& p) {
    if (p.n_runs < 2) throw parameter_error("protocol needs n_runs >= 2 for a standard deviation");
    if (p.warmup_runs < 0) throw parameter_error("warmup_runs must be >= 0");
    if (!(p.trim >= 0.0 && p.trim <= 0.25)) throw parameter_error("trim must be in [0, 0.25]");
    if (p.verify_repeats < 1) throw parameter_error("verify_repeats must be >= 1");
}

namespace {

#if defined(__unix__) && defined(CLOCK_THREAD_CPUTIME_ID)
constexpr bool kHaveThreadClock = true;

uint64_t thread_clock_ns() {
    timespec ts{};
    clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
    return static_cast<uint64_t>(ts.tv_sec) * 1000000000ull + static_cast<uint64_t>(ts.tv_nsec);
}

double thread_clock_res_s() {
    timespec ts{};
    clock_getres(CLOCK_THREAD_CPUTIME_ID, &ts);
    return static_cast<double>(ts.tv_sec) + static_cast<double>(ts.tv_nsec) * 1e-9;
}
#else
constexpr bool kHaveThreadClock = false;
#endif

#if !(defined(__unix__) && defined(CLOCK_THREAD_CPUTIME_ID))
uint64_t steady_clock_ns() {
    return static_cast<uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(
            std::chrono::steady_clock::now().time_since_epoch())
            .count());
}
#endif

std::atomic<bool> g_session_active{false};

struct SessionGuard {
    SessionGuard() {
        bool expected = false;
        if (!g_session_active.compare_exchange_strong(expected, true))
            throw std::runtime_error("a timing session is already running in this process");
    }
    ~SessionGuard() { g_session_active.store(false); }
};

// Pin the measuring thread to its current core for the session; core
// migrations show up as tens of microseconds of cache-refill jitter.
struct CpuPin {
#ifdef __linux__
    cpu_set_t previous{};
    bool restore = false;

    CpuPin() {
        if (sched_getaffinity(0, sizeof(previous), &previous) != 0) return;
        const int cpu = sched_getcpu();
        if (cpu < 0) return;
        cpu_set_t one;
        CPU_ZERO(&one);
        CPU_SET(cpu, &one);
        restore = sched_setaffinity(0, sizeof(one), &one) == 0;
    }
    ~CpuPin() {
        if (restore) sched_setaffinity(0, sizeof(previous), &previous);
    }
#endif
};

std::vector<uint8_t>& scratch_buffer() {
    static std::vector<uint8_t> buf;
    return buf;
}

} // namespace

uint64_t measurement_clock_ns() {
#if defined(__unix__) && defined(CLOCK_THREAD_CPUTIME_ID)
    return thread_clock_ns();
#else
    return steady_clock_ns();
#endif
}

const char* measurement_clock_name() {
    return kHaveThreadClock ? "thread_cputime" : "steady";
}

double measurement_clock_resolution_s() {
#if defined(__unix__) && defined(CLOCK_THREAD_CPUTIME_ID)
    return thread_clock_res_s();
#else
    return static_cast<double>(std::chrono::steady_clock::period::num) /
           static_cast<double>(std::chrono::steady_clock::period::den);
#endif
}

double measure_one(const CompressedBlob& blob) {
    const uint64_t t0 = measurement_clock_ns();
    Image img = decompress_image(blob);
    const uint64_t t1 = measurement_clock_ns();
    // keep the decode alive so the timed call cannot be elided
    if (img.pixels.empty()) throw decode_error("decode produced no pixels");
    return static_cast<double>(t1 - t0) * 1e-9;
}

void clear_cache_hook(size_t scratch_bytes) {
    auto& buf = scratch_buffer();
    if (buf.size() != scratch_bytes) buf.assign(scratch_bytes, 0);
    // walk in cache-line strides; volatile sink prevents elision
    static volatile uint8_t sink;
    uint8_t acc = 0;
    for (size_t i = 0; i < buf.size(); i += 64) {
        buf[i] = static_cast<uint8_t>(buf[i] + 1);
        acc ^= buf[i];
    }
    sink = static_cast<uint8_t>(sink + acc);
}

std::vector<size_t> session_schedule(uint64_t shuffle_seed, int run_index, size_t n) {
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    Rng rng(Rng::derive(shuffle_seed, static_cast<uint64_t>(run_index)));
    for (size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.next_below(i)]);
    return order;
}

TimingStats aggregate(const std::string& id, std::vector<double> samples, const Protocol& p) {
    TimingStats st;
    st.image_id = id;
    if (p.keep_samples) st.samples = samples;

    std::vector<double> used = std::move(samples);
    if (p.outlier_policy == OutlierPolicy::trim_fraction && p.trim > 0.0) {
        std::sort(used.begin(), used.end());
        const auto cut = static_cast<size_t>(std::floor(p.trim * static_cast<double>(used.size())));
        if (2 * cut < used.size())
            used = std::vector<double>(used.begin() + cut, used.end() - cut);
    }
    st.n_runs = static_cast<int>(used.size());
    double sum = 0.0;
    for (double v : used) sum += v;
    st.mean = sum / static_cast<double>(used.size());
    double ss = 0.0;
    for (double v : used) ss += (v - st.mean) * (v - st.mean);
    st.std_dev = used.size() > 1 ? std::sqrt(ss / static_cast<double>(used.size() - 1)) : 0.0;
    return st;
}

namespace {

// One timed visit. Falls back to a batch measurement when a single decode
// sits below the timer-granularity floor; reports the batch size used.
std::pair<double, int> timed_decode(const CompressedBlob& blob, const ClockFn& now,
                                    double floor_s) {
    const uint64_t t0 = now();
    Image img = decompress_image(blob);
    const uint64_t t1 = now();
    double elapsed = static_cast<double>(t1 - t0) * 1e-9;
    if (elapsed >= floor_s) return {elapsed, 1};

    int batch = 4;
    if (elapsed > 0.0)
        batch = std::max(4, static_cast<int>(std::ceil(4.0 * floor_s / elapsed)));
    batch = std::min(batch, 4096);
    const uint64_t b0 = now();
    for (int i = 0; i < batch; ++i) {
        Image repeat = decompress_image(blob);
        if (repeat.pixels.empty()) throw decode_error("decode produced no pixels");
    }
    const uint64_t b1 = now();
    return {static_cast<double>(b1 - b0) * 1e-9 / static_cast<double>(batch), batch};
}

} // namespace

std::vector<TimingStats> run_session(const std::vector<CompressedBlob>& blobs,
                                     const std::vector<std::string>& ids, const Protocol& protocol,
                                     std::vector<TimingSample>* all_samples, ClockFn clock) {
    validate(protocol);
    if (blobs.size() != ids.size()) throw parameter_error("blob/id count mismatch");
    if (blobs.empty()) throw parameter_error("session needs at least one blob");

    SessionGuard guard;
    CpuPin pin;
    ClockFn now = clock ? std::move(clock) : ClockFn(&measurement_clock_ns);
    const double floor_s =
        static_cast<double>(protocol.min_timed_ticks) * measurement_clock_resolution_s();

    // reference hashes for integrity checks, computed in the warm-up phase
    // (also serves as the documented one-time decompressor warm-up)
    std::vector<uint64_t> reference(blobs.size());
    for (size_t i = 0; i < blobs.size(); ++i) reference[i] = content_hash(decompress_image(blobs[i]));
    for (int w = 1; w < protocol.warmup_runs; ++w)
        for (size_t i = 0; i < blobs.size(); ++i) {
            if (content_hash(decompress_image(blobs[i])) != reference[i])
                throw decode_error("warm-up decode mismatch for " + ids[i]);
        }

    std::vector<std::vector<double>> samples(blobs.size());
    std::vector<int> batches(blobs.size(), 1);
    for (auto& s : samples) s.reserve(protocol.n_runs);

    for (int run = 0; run < protocol.n_runs; ++run) {
        const auto order = session_schedule(protocol.shuffle_seed, run, blobs.size());
        for (size_t idx : order) {
            if (protocol.clear_cache) clear_cache_hook(protocol.cache_scratch_bytes);
            const auto [elapsed, batch] = timed_decode(blobs[idx], now, floor_s);
            // integrity verification, outside the timed region
            for (int v = 0; v < protocol.verify_repeats; ++v) {
                if (content_hash(decompress_image(blobs[idx])) != reference[idx])
                    throw decode_error("integrity check failed for " + ids[idx]);
            }
            samples[idx].push_back(elapsed);
            batches[idx] = std::max(batches[idx], batch);
            if (all_samples) all_samples->push_back({ids[idx], run, elapsed});
        }
    }

    std::vector<TimingStats> stats;
    stats.reserve(blobs.size());
    for (size_t i = 0; i < blobs.size(); ++i) {
        stats.push_back(aggregate(ids[i], samples[i], protocol));
        stats.back().batch = batches[i];
    }
    return stats;
}

std::vector<std::pair<int, double>> stabilization_curve(const std::vector<TimingSample>& samples) {
    std::map<std::string, std::vector<double>> per_image;
    for (const auto& s : samples) per_image[s.image_id].push_back(s.elapsed);
    size_t max_runs = 0;
    for (auto& [id, v] : per_image) max_runs = std::max(max_runs, v.size());
    if (max_runs < 2) throw parameter_error("stabilization curve needs at least 2 runs");

    std::vector<std::pair<int, double>> curve;
    for (size_t k = 2; k <= max_runs; ++k) {
        double worst = 0.0;
        for (auto& [id, v] : per_image) {
            if (v.size() < k) continue;
            double mk = 0.0, mk1 = 0.0;
            for (size_t i = 0; i < k; ++i) mk += v[i];
            for (size_t i = 0; i + 1 < k; ++i) mk1 += v[i];
            mk /= static_cast<double>(k);
            mk1 /= static_cast<double>(k - 1);
            if (mk > 0.0) worst = std::max(worst, std::abs(mk - mk1) / mk);
        }
        curve.emplace_back(static_cast<int>(k), worst);
    }
    return curve;
}

SessionMetadata make_session_metadata(const Protocol& p) {
    SessionMetadata m;
    m.clock_name = measurement_clock_name();
    m.clock_resolution_s = measurement_clock_resolution_s();
    m.codec_version = kCodecVersion;
    m.rng_version = Rng::algorithm_id;
    m.protocol = p;
#ifdef __unix__
    char host[256] = {0};
    if (gethostname(host, sizeof(host) - 1) == 0 && host[0]) m.machine = host;
#endif
#ifdef __linux__
    double loads[1] = {-1.0};
    if (getloadavg(loads, 1) == 1) m.load_average = loads[0];
#endif
    if (m.machine.empty()) m.machine = "unknown";
    return m;
}

std::string session_to_jsonl(const SessionMetadata& meta, const std::vector<TimingStats>& stats) {
    nlohmann::json header{
        {"type", "session"},
        {"clock", meta.clock_name},
        {"clock_resolution_s", meta.clock_resolution_s},
        {"machine", meta.machine},
        {"codec_version", meta.codec_version},
        {"rng_version", meta.rng_version},
        {"load_average", meta.load_average},
        {"protocol",
         {{"n_runs", meta.protocol.n_runs},
          {"warmup_runs", meta.protocol.warmup_runs},
          {"shuffle_seed", meta.protocol.shuffle_seed},
          {"clear_cache", meta.protocol.clear_cache},
          {"outlier_policy",
           meta.protocol.outlier_policy == OutlierPolicy::trim_fraction ? "trim_fraction" : "none"},
          {"trim", meta.protocol.trim},
          {"verify_repeats", meta.protocol.verify_repeats}}},
    };
    std::ostringstream out;
    out << header.dump() << '\n';
    for (const auto& st : stats) {
        nlohmann::json rec{{"type", "stats"},
                           {"image_id", st.image_id},
                           {"mean", st.mean},
                           {"std", st.std_dev},
                           {"n_runs", st.n_runs},
                           {"batch", st.batch}};
        if (!st.samples.empty()) rec["samples"] = st.samples;
        out << rec.dump() << '\n';
    }
    return out.str();
}

} // namespace pixeldepth
