#include "pixeldepth/filters.hpp"

#include <cstdlib>

namespace pixeldepth {

const char* to_string(FilterId f) {
    switch (f) {
        case FilterId::none: return "none";
        case FilterId::sub: return "sub";
        case FilterId::up: return "up";
        case FilterId::average: return "average";
        case FilterId::paeth: return "paeth";
    }
    return "?";
}

uint8_t paeth_predict(uint8_t left, uint8_t above, uint8_t upper_left) {
    const int p = static_cast<int>(left) + above - upper_left;
    const int pa = std::abs(p - left);
    const int pb = std::abs(p - above);
    const int pc = std::abs(p - upper_left);
    if (pa <= pb && pa <= pc) return left;
    if (pb <= pc) return above;
    return upper_left;
}

namespace {

uint8_t predict(FilterId f, uint8_t left, uint8_t above, uint8_t upper_left) {
    switch (f) {
        case FilterId::none: return 0;
        case FilterId::sub: return left;
        case FilterId::up: return above;
        case FilterId::average:
            return static_cast<uint8_t>((static_cast<int>(left) + above) / 2);
        case FilterId::paeth: return paeth_predict(left, above, upper_left);
    }
    return 0;
}

} // namespace

std::vector<uint8_t> apply_filter(std::span<const uint8_t> row,
                                  std::span<const uint8_t> prev_row, FilterId filter) {
    if (row.size() != prev_row.size())
        throw dimension_error("filter rows must have equal length");
    std::vector<uint8_t> out(row.size());
    for (size_t i = 0; i < row.size(); ++i) {
        const uint8_t left = i > 0 ? row[i - 1] : 0;
        const uint8_t above = prev_row[i];
        const uint8_t ul = i > 0 ? prev_row[i - 1] : 0;
        out[i] = static_cast<uint8_t>(row[i] - predict(filter, left, above, ul));
    }
    return out;
}

std::vector<uint8_t> unapply_filter(std::span<const uint8_t> filtered,
                                    std::span<const uint8_t> prev_row, FilterId filter) {
    if (filtered.size() != prev_row.size())
        throw dimension_error("filter rows must have equal length");
    std::vector<uint8_t> out(filtered.begin(), filtered.end());
    unfilter_in_place(out.data(), prev_row.data(), out.size(), filter);
    return out;
}

void unfilter_in_place(uint8_t* row, const uint8_t* prev_row, size_t n, FilterId filter) {
    switch (filter) {
        case FilterId::none:
            break;
        case FilterId::sub:
            for (size_t i = 1; i < n; ++i) row[i] = static_cast<uint8_t>(row[i] + row[i - 1]);
            break;
        case FilterId::up:
            for (size_t i = 0; i < n; ++i) row[i] = static_cast<uint8_t>(row[i] + prev_row[i]);
            break;
        case FilterId::average:
            if (n > 0) row[0] = static_cast<uint8_t>(row[0] + prev_row[0] / 2);
            for (size_t i = 1; i < n; ++i)
                row[i] = static_cast<uint8_t>(
                    row[i] + (static_cast<int>(row[i - 1]) + prev_row[i]) / 2);
            break;
        case FilterId::paeth:
            if (n > 0) row[0] = static_cast<uint8_t>(row[0] + prev_row[0]); // paeth(0,a,0) = a
            for (size_t i = 1; i < n; ++i)
                row[i] = static_cast<uint8_t>(
                    row[i] + paeth_predict(row[i - 1], prev_row[i], prev_row[i - 1]));
            break;
    }
}

FilterId choose_filter_heuristic(std::span<const uint8_t> row, std::span<const uint8_t> prev_row) {
    FilterId best = FilterId::none;
    uint64_t best_score = ~0ull;
    for (int f = 0; f < kFilterCount; ++f) {
        const auto id = static_cast<FilterId>(f);
        const auto filtered = apply_filter(row, prev_row, id);
        uint64_t score = 0;
        for (uint8_t b : filtered) {
            const auto s = static_cast<int8_t>(b);
            score += static_cast<uint64_t>(s < 0 ? -s : s);
        }
        if (score < best_score) {
            best_score = score;
            best = id;
        }
    }
    return best;
}

} // namespace pixeldepth
