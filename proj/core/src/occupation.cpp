#include "srbw/occupation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "srbw/errors.hpp"

namespace srbw {

OccupationProfile::OccupationProfile(int generation_, std::int64_t offset_,
                                     std::vector<std::int64_t> counts_)
    : offset(offset_), counts(std::move(counts_)), generation(generation_) {
    if (counts.empty()) throw std::invalid_argument("OccupationProfile: empty counts");
    if (counts.front() < 1 || counts.back() < 1)
        throw std::invalid_argument("OccupationProfile: padded with zero end counts");
    std::int64_t sum = 0;
    for (std::int64_t c : counts) {
        if (c < 0) throw std::invalid_argument("OccupationProfile: negative count");
        sum += c;
    }
    if (generation < 0 || generation > 62 || sum != (std::int64_t{1} << generation))
        throw std::invalid_argument("OccupationProfile: counts sum to " + std::to_string(sum) +
                                    ", expected 2^" + std::to_string(generation));
}

std::int64_t OccupationProfile::max_step() const {
    std::int64_t m = std::max(counts.front(), counts.back());
    for (std::size_t i = 0; i + 1 < counts.size(); ++i)
        m = std::max(m, static_cast<std::int64_t>(std::llabs(counts[i + 1] - counts[i])));
    return m;
}

std::vector<double> OccupationProfile::positions(double eps) const {
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(std::int64_t{1} << generation));
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double x = site_position(offset + static_cast<std::int64_t>(i), eps);
        for (std::int64_t c = 0; c < counts[i]; ++c) xs.push_back(x);
    }
    return xs;
}

OccupationProfile bin_positions(const std::vector<double>& xs, int generation, double eps) {
    std::map<std::int64_t, std::int64_t> hist;
    for (double x : xs) {
        const double k_real = x / eps - 0.5;
        const auto k = static_cast<std::int64_t>(std::llround(k_real));
        if (std::fabs(x - site_position(k, eps)) > eps / 4.0)
            throw OffGridError("position " + std::to_string(x) +
                               " is farther than eps/4 from every grid site");
        ++hist[k];
    }
    if (hist.empty()) throw std::invalid_argument("bin_positions: no positions");
    const std::int64_t lo = hist.begin()->first;
    const std::int64_t hi = hist.rbegin()->first;
    std::vector<std::int64_t> counts(static_cast<std::size_t>(hi - lo + 1), 0);
    for (auto [k, c] : hist) counts[static_cast<std::size_t>(k - lo)] = c;
    return OccupationProfile{generation, lo, std::move(counts)};
}

OccupationProfile occupation_of_generation(const TreeProfile& profile, int n,
                                           const ModelParams& params) {
    return bin_positions(profile.generation(n), n, params.eps);
}

} // namespace srbw
