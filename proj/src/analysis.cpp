#include "pixeldepth/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "pixeldepth/errors.hpp"

namespace pixeldepth {

const RankEntry* RankedSet::find(const std::string& id) const {
    for (const auto& e : entries)
        if (e.image_id == id) return &e;
    return nullptr;
}

int GroupPartition::group_of(const std::string& id) const {
    for (size_t g = 0; g < groups.size(); ++g)
        for (const auto& m : groups[g].members)
            if (m == id) return static_cast<int>(g);
    return -1;
}

RankedSet rank(const std::vector<std::pair<std::string, double>>& values, Measure measure) {
    if (values.empty()) throw parameter_error("rank needs at least one value");
    for (const auto& [id, v] : values)
        if (!std::isfinite(v)) throw data_error("non-finite value for " + id);

    RankedSet set;
    set.measure = measure;
    set.entries.reserve(values.size());
    for (const auto& [id, v] : values) set.entries.push_back({id, v, 0, false});
    std::sort(set.entries.begin(), set.entries.end(), [](const RankEntry& a, const RankEntry& b) {
        if (a.value != b.value) return a.value > b.value;
        return a.image_id < b.image_id;
    });
    for (size_t i = 0; i < set.entries.size(); ++i) {
        set.entries[i].rank = static_cast<int>(i) + 1;
        const bool tie_prev = i > 0 && set.entries[i - 1].value == set.entries[i].value;
        const bool tie_next =
            i + 1 < set.entries.size() && set.entries[i + 1].value == set.entries[i].value;
        set.entries[i].tied = tie_prev || tie_next;
    }
    return set;
}

namespace {

struct Moments {
    double n = 0.0, sum = 0.0, sumsq = 0.0;

    void add(const TimingStats& st) {
        const double sn = static_cast<double>(st.n_runs);
        n += sn;
        sum += sn * st.mean;
        // recover sum of squares from the sample std
        sumsq += (sn - 1.0) * st.std_dev * st.std_dev + sn * st.mean * st.mean;
    }

    double mean() const { return sum / n; }
    double std_dev() const {
        if (n < 2.0) return 0.0;
        const double var = (sumsq - n * mean() * mean()) / (n - 1.0);
        return var > 0.0 ? std::sqrt(var) : 0.0;
    }
};

Group make_group(const std::vector<const TimingStats*>& members) {
    Group g;
    Moments m;
    for (const auto* st : members) {
        g.members.push_back(st->image_id);
        m.add(*st);
    }
    g.mean = m.mean();
    g.std_dev = m.std_dev();
    g.pooled_n = static_cast<int>(m.n);
    return g;
}

bool intervals_overlap(double lo_a, double hi_a, double lo_b, double hi_b) {
    return lo_a <= hi_b && lo_b <= hi_a;
}

} // namespace

GroupPartition partition_significant(const std::vector<TimingStats>& stats) {
    if (stats.empty()) throw parameter_error("partition needs at least one stat");
    for (const auto& st : stats)
        if (st.n_runs < 2 && stats.size() > 1)
            throw parameter_error("partition needs n_runs >= 2 per image");

    std::vector<const TimingStats*> sorted;
    sorted.reserve(stats.size());
    for (const auto& st : stats) sorted.push_back(&st);
    std::sort(sorted.begin(), sorted.end(), [](const TimingStats* a, const TimingStats* b) {
        if (a->mean != b->mean) return a->mean > b->mean;
        return a->image_id < b->image_id;
    });

    // greedy descending scan: join the current group while the candidate's
    // own interval overlaps it
    std::vector<std::vector<const TimingStats*>> raw;
    for (const auto* st : sorted) {
        bool joined = false;
        if (!raw.empty()) {
            const Group g = make_group(raw.back());
            if (intervals_overlap(g.mean - g.std_dev, g.mean + g.std_dev, st->mean - st->std_dev,
                                  st->mean + st->std_dev)) {
                raw.back().push_back(st);
                joined = true;
            }
        }
        if (!joined) raw.push_back({st});
    }

    // merge neighbours until the pooled intervals are pairwise disjoint;
    // groups are ordered, so adjacent disjointness implies the predicate
    std::vector<Group> groups;
    for (const auto& members : raw) groups.push_back(make_group(members));
    bool merged = true;
    while (merged) {
        merged = false;
        for (size_t i = 0; i + 1 < groups.size(); ++i) {
            const Group& a = groups[i];
            const Group& b = groups[i + 1];
            if (!(a.mean - a.std_dev > b.mean + b.std_dev)) {
                std::vector<const TimingStats*> combined;
                for (const auto& id : a.members)
                    for (const auto* st : sorted)
                        if (st->image_id == id) combined.push_back(st);
                for (const auto& id : b.members)
                    for (const auto* st : sorted)
                        if (st->image_id == id) combined.push_back(st);
                groups[i] = make_group(combined);
                groups.erase(groups.begin() + static_cast<long>(i) + 1);
                merged = true;
                break;
            }
        }
    }

    GroupPartition part;
    part.groups = std::move(groups);
    for (size_t g = 0; g < part.groups.size(); ++g) {
        std::string label;
        size_t v = g;
        do {
            label.insert(label.begin(), static_cast<char>('A' + v % 26));
            v = v / 26;
        } while (v-- > 0);
        part.groups[g].label = label;
    }
    return part;
}

JumpSelection select_jumps(const std::vector<TimingStats>& series, int k) {
    if (series.empty()) throw parameter_error("select_jumps needs a non-empty series");
    if (k < 1) throw parameter_error("k must be >= 1");
    if (static_cast<size_t>(k) > series.size())
        throw parameter_error("k exceeds series length");

    JumpSelection sel;
    // pooled measurement noise: variances pooled across images, weighted by
    // degrees of freedom (the between-image spread is the signal, not sigma)
    double weighted_var = 0.0, dof = 0.0;
    for (const auto& st : series) {
        const double d = std::max(0, st.n_runs - 1);
        weighted_var += d * st.std_dev * st.std_dev;
        dof += d;
    }
    sel.pooled_sigma = dof > 0.0 ? std::sqrt(weighted_var / dof) : 0.0;

    // order candidate elements by depth value ascending
    std::vector<size_t> by_value(series.size());
    std::iota(by_value.begin(), by_value.end(), 0);
    std::sort(by_value.begin(), by_value.end(), [&](size_t a, size_t b) {
        if (series[a].mean != series[b].mean) return series[a].mean < series[b].mean;
        return a < b;
    });
    const size_t n = by_value.size();
    auto value = [&](size_t sorted_pos) { return series[by_value[sorted_pos]].mean; };

    // how many sigma-separated bins exist at all (greedy is optimal for
    // fixed-gap counting)
    size_t achievable = 1;
    double last = value(0);
    for (size_t i = 1; i < n; ++i)
        if (value(i) - last > sel.pooled_sigma) {
            ++achievable;
            last = value(i);
        }

    size_t want = static_cast<size_t>(k);
    if (achievable < want) {
        sel.degenerate = true;
        want = achievable;
    }

    if (want <= 1) {
        sel.indices = {by_value[n - 1]}; // the deepest element
        sel.min_gap = 0.0;
        return sel;
    }

    // dynamic program maximizing the minimum pairwise gap, with the extreme
    // values always selected (including both extremes never shrinks the
    // optimum). g[i][j]: best min gap over selections of j picks ending at
    // sorted position i that start at position 0.
    constexpr double kInf = 1e300;
    std::vector<std::vector<double>> g(n, std::vector<double>(want + 1, -kInf));
    std::vector<std::vector<size_t>> from(n, std::vector<size_t>(want + 1, 0));
    g[0][1] = kInf;
    for (size_t j = 2; j <= want; ++j) {
        for (size_t i = j - 1; i < n; ++i) {
            for (size_t p = j - 2; p < i; ++p) {
                if (g[p][j - 1] <= -kInf) continue;
                const double cand = std::min(g[p][j - 1], value(i) - value(p));
                if (cand > g[i][j]) {
                    g[i][j] = cand;
                    from[i][j] = p;
                }
            }
        }
    }

    std::vector<size_t> picks_sorted;
    size_t cur = n - 1;
    for (size_t j = want; j >= 1; --j) {
        picks_sorted.push_back(cur);
        cur = from[cur][j];
        if (j == 1) break;
    }
    sel.min_gap = g[n - 1][want];
    for (size_t pos : picks_sorted) sel.indices.push_back(by_value[pos]);
    std::sort(sel.indices.begin(), sel.indices.end());
    return sel;
}

double rank_correlation(const RankedSet& r1, const RankedSet& r2) {
    if (r1.entries.size() != r2.entries.size())
        throw parameter_error("rankings cover different image sets");

    // midranks with tie correction, Pearson over the midranks
    auto midranks = [](const RankedSet& r) {
        std::map<std::string, double> out;
        size_t i = 0;
        const auto& e = r.entries;
        while (i < e.size()) {
            size_t j = i;
            while (j + 1 < e.size() && e[j + 1].value == e[i].value) ++j;
            const double mid = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
            for (size_t t = i; t <= j; ++t) out[e[t].image_id] = mid;
            i = j + 1;
        }
        return out;
    };
    const auto m1 = midranks(r1);
    const auto m2 = midranks(r2);
    if (m1.size() != m2.size()) throw parameter_error("rankings cover different image sets");

    double n = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (const auto& [id, x] : m1) {
        auto it = m2.find(id);
        if (it == m2.end()) throw parameter_error("image " + id + " missing from second ranking");
        const double y = it->second;
        n += 1.0;
        sx += x; sy += y;
        sxx += x * x; syy += y * y; sxy += x * y;
    }
    const double cov = sxy - sx * sy / n;
    const double vx = sxx - sx * sx / n;
    const double vy = syy - sy * sy / n;
    if (vx <= 0.0 || vy <= 0.0) return 0.0; // a constant ranking carries no order
    return cov / std::sqrt(vx * vy);
}

std::vector<std::pair<std::string, std::string>> group_mapping(const RankedSet& from,
                                                               const GroupPartition& to) {
    std::vector<std::pair<std::string, std::string>> mapping;
    mapping.reserve(from.entries.size());
    for (const auto& e : from.entries) {
        const int g = to.group_of(e.image_id);
        mapping.emplace_back(e.image_id, g >= 0 ? to.groups[g].label : "?");
    }
    return mapping;
}

AggregateOrder aggregate_depth(const DepthMatrix& matrix) {
    const size_t n_codecs = matrix.cells.size();
    if (n_codecs == 0) throw parameter_error("depth matrix has no codec rows");
    const size_t n_images = matrix.cells[0].size();
    if (n_images == 0) throw parameter_error("depth matrix has no image columns");
    for (const auto& row : matrix.cells) {
        if (row.size() != n_images) throw parameter_error("depth matrix is ragged");
        for (double v : row) {
            if (!std::isfinite(v) || v < 0.0) throw data_error("depth matrix cell out of domain");
            if (v == 0.0) throw data_error("harmonic mean undefined for zero cell");
        }
    }

    AggregateOrder out;
    for (size_t h = 0; h < n_images; ++h)
        for (size_t k = 0; k < n_images; ++k) {
            if (h == k) continue;
            bool all = true;
            for (size_t c = 0; c < n_codecs; ++c)
                if (!(matrix.cells[c][h] > matrix.cells[c][k])) {
                    all = false;
                    break;
                }
            if (all) out.partial_order.emplace_back(h, k);
        }

    out.harmonic_means.resize(n_images);
    for (size_t j = 0; j < n_images; ++j) {
        double denom = 0.0;
        for (size_t c = 0; c < n_codecs; ++c) denom += 1.0 / matrix.cells[c][j];
        out.harmonic_means[j] = static_cast<double>(n_codecs) / denom;
    }
    out.total_order.resize(n_images);
    std::iota(out.total_order.begin(), out.total_order.end(), 0);
    std::sort(out.total_order.begin(), out.total_order.end(), [&](size_t a, size_t b) {
        if (out.harmonic_means[a] != out.harmonic_means[b])
            return out.harmonic_means[a] > out.harmonic_means[b];
        return a < b;
    });
    return out;
}

std::vector<SeriesStd> stats_summary(
    const std::vector<std::pair<std::string, std::vector<TimingStats>>>& by_series) {
    if (by_series.empty()) throw parameter_error("stats_summary needs at least one series");
    std::vector<SeriesStd> out;
    for (const auto& [name, stats] : by_series) {
        Moments m;
        for (const auto& st : stats) m.add(st);
        out.push_back({name, m.std_dev()});
    }
    std::sort(out.begin(), out.end(), [](const SeriesStd& a, const SeriesStd& b) {
        if (a.pooled_std != b.pooled_std) return a.pooled_std > b.pooled_std;
        return a.series < b.series;
    });
    return out;
}

} // namespace pixeldepth
