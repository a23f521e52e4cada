#include "qsx/amplitude_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qsx/common.hpp"
#include "qsx/rng.hpp"

namespace qsx {

EstimationMode parse_mode(const std::string& name) {
    if (name == "exact") return EstimationMode::Exact;
    if (name == "noisy") return EstimationMode::Noisy;
    if (name == "grover-ml") return EstimationMode::GroverML;
    throw ConfigError("unknown estimation mode '" + name +
                      "' (expected exact, noisy, grover-ml)");
}

std::string mode_name(EstimationMode mode) {
    switch (mode) {
        case EstimationMode::Exact: return "exact";
        case EstimationMode::Noisy: return "noisy";
        case EstimationMode::GroverML: return "grover-ml";
    }
    return "?";
}

QuantumMemory apply_grover(const QuantumMemory& mem, const GoodSet& good, int reps) {
    if (reps < 0) throw ConfigError("apply_grover: reps must be non-negative");
    mem.prefix_probability(good);  // window validation

    QuantumMemory state = mem;
    const auto& prep_good = mem.good_;
    const auto& prep_bad = mem.bad_;
    const std::uint64_t dim = mem.dimension();
    const std::uint64_t w0 = good.window_start;
    const std::uint64_t w1 = good.window_start + good.size();

    for (int r = 0; r < reps; ++r) {
        // Reflection about the marked subspace: flip good-window signs on the
        // ancilla-0 branch only.
        for (std::uint64_t k = w0; k < w1; ++k) state.good_[k] = -state.good_[k];

        // Reflection about the prepared state, as a rank-one update
        // |v> -> 2 <prep|v> |prep> - |v| over both branches.
        std::complex<double> inner = 0.0;
        for (std::uint64_t k = 0; k < dim; ++k)
            inner += std::conj(prep_good[k]) * state.good_[k] +
                     std::conj(prep_bad[k]) * state.bad_[k];
        for (std::uint64_t k = 0; k < dim; ++k) {
            state.good_[k] = 2.0 * inner * prep_good[k] - state.good_[k];
            state.bad_[k] = 2.0 * inner * prep_bad[k] - state.bad_[k];
        }
    }
    return state;
}

namespace {

struct PowerSample {
    std::uint64_t grover_power;
    int hits;
    int shots;
};

double log_likelihood(const std::vector<PowerSample>& data, std::size_t upto,
                      double theta) {
    constexpr double kPFloor = 1e-15;
    double total = 0.0;
    for (std::size_t i = 0; i < upto; ++i) {
        const auto& d = data[i];
        double s = std::sin((2.0 * static_cast<double>(d.grover_power) + 1.0) * theta);
        double p = std::clamp(s * s, kPFloor, 1.0 - kPFloor);
        total += d.hits * std::log(p) + (d.shots - d.hits) * std::log1p(-p);
    }
    return total;
}

// Argmax over a uniform grid on [lo, hi]; ties resolved toward the smallest
// theta. Returns the grid index.
std::size_t grid_argmax(const std::vector<PowerSample>& data, std::size_t upto,
                        double lo, double hi, std::size_t points, double* best_theta) {
    std::size_t best_i = 0;
    double best_v = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points; ++i) {
        double theta = lo + (hi - lo) * static_cast<double>(i) /
                                static_cast<double>(points - 1);
        double v = log_likelihood(data, upto, theta);
        if (v > best_v) {
            best_v = v;
            best_i = i;
            *best_theta = theta;
        }
    }
    return best_i;
}

double golden_section_max(const std::vector<PowerSample>& data, double lo, double hi) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = log_likelihood(data, data.size(), c);
    double fd = log_likelihood(data, data.size(), d);
    while (b - a > 1e-10) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = log_likelihood(data, data.size(), c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = log_likelihood(data, data.size(), d);
        }
    }
    return 0.5 * (a + b);
}

struct Peak {
    double ll;
    double theta;
    double step;  // grid spacing the peak was located at
};

// Local maxima of the cumulative log-likelihood on a uniform grid.
void collect_peaks(const std::vector<PowerSample>& data, std::size_t upto, double lo,
                   double hi, std::size_t points, std::vector<Peak>& out) {
    std::vector<double> v(points);
    double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i)
        v[i] = log_likelihood(data, upto, lo + step * static_cast<double>(i));
    for (std::size_t i = 0; i < points; ++i) {
        bool left_ok = i == 0 || v[i] > v[i - 1];
        bool right_ok = i + 1 == points || v[i] >= v[i + 1];
        if (left_ok && right_ok)
            out.push_back({v[i], lo + step * static_cast<double>(i), step});
    }
}

// Maximum-likelihood QAE. For max powers up to 2^10 the documented coarse
// grid of 10^4 points on [0, pi/2] resolves every likelihood oscillation and
// is used directly. Beyond that the oscillation period of the top power drops
// below the grid spacing, so the schedule is processed level by level on
// shrinking brackets. The sine-squared likelihood has mirror basins around
// its lattice points that low-shot data can transiently favor, so the two
// highest separated peaks are tracked as independent candidates and the
// full-data likelihood picks the winner at the end.
double mlqae_theta(const std::vector<PowerSample>& data) {
    constexpr double kHalfPi = M_PI / 2.0;
    const std::uint64_t max_power = data.back().grover_power;

    if (max_power <= 1024) {
        constexpr std::size_t kGrid = 10000;
        double theta = 0.0;
        std::size_t i = grid_argmax(data, data.size(), 0.0, kHalfPi, kGrid, &theta);
        double step = kHalfPi / (kGrid - 1);
        double lo = i == 0 ? 0.0 : theta - step;
        double hi = std::min(kHalfPi, theta + step);
        return golden_section_max(data, lo, hi);
    }

    std::vector<Peak> candidates = {{0.0, 0.0, 0.0}};
    bool full_range = true;
    for (std::size_t level = 1; level <= data.size(); ++level) {
        double m = static_cast<double>(data[level - 1].grover_power);
        double period = M_PI / (2.0 * m + 1.0);

        std::vector<Peak> peaks;
        if (full_range) {
            auto points = static_cast<std::size_t>(64.0 * kHalfPi / period) + 2;
            points = std::clamp<std::size_t>(points, 257, 20001);
            collect_peaks(data, level, 0.0, kHalfPi, points, peaks);
        } else {
            for (const Peak& cand : candidates) {
                double lo = std::max(0.0, cand.theta - 3.0 * period * 2.0);
                double hi = std::min(kHalfPi, cand.theta + 3.0 * period * 2.0);
                auto points = static_cast<std::size_t>(64.0 * (hi - lo) / period) + 2;
                points = std::clamp<std::size_t>(points, 257, 20001);
                collect_peaks(data, level, lo, hi, points, peaks);
            }
        }

        std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
            if (a.ll != b.ll) return a.ll > b.ll;
            return a.theta < b.theta;
        });
        std::vector<Peak> kept;
        for (const Peak& p : peaks) {
            bool separated = true;
            for (const Peak& k : kept)
                if (std::fabs(p.theta - k.theta) < period) separated = false;
            if (separated) kept.push_back(p);
            if (kept.size() == 2) break;
        }
        candidates = kept;
        full_range = false;
    }

    double best_ll = -std::numeric_limits<double>::infinity();
    double best_theta = 0.0;
    for (const Peak& cand : candidates) {
        double lo = std::max(0.0, cand.theta - cand.step);
        double hi = std::min(kHalfPi, cand.theta + cand.step);
        double theta = golden_section_max(data, lo, hi);
        double ll = log_likelihood(data, data.size(), theta);
        if (ll > best_ll || (ll == best_ll && theta < best_theta)) {
            best_ll = ll;
            best_theta = theta;
        }
    }
    return best_theta;
}

}  // namespace

AmplitudeEstimate estimate_amplitude(const QuantumMemory& mem, const GoodSet& good,
                                     double eps, EstimationMode mode, std::uint64_t seed,
                                     const MlqaeOptions& opts) {
    if (!(eps > 0.0) || eps >= 0.5)
        throw ConfigError("estimate_amplitude: eps must lie in (0, 0.5)");

    const double q_true = std::sqrt(mem.prefix_probability(good));

    AmplitudeEstimate est;
    est.epsilon_target = eps;
    est.mode = mode;
    est.seed = seed;

    switch (mode) {
        case EstimationMode::Exact: {
            est.q_hat = q_true;
            est.ledger.shots = 1;
            est.ledger.prep_queries = 1;
            break;
        }
        case EstimationMode::Noisy: {
            SplitMix64 rng(seed);
            est.q_hat = std::clamp(q_true + rng.uniform(-eps, eps), 0.0, 1.0);
            est.ledger.shots = static_cast<std::uint64_t>(std::ceil(1.0 / eps));
            est.ledger.prep_queries = est.ledger.shots;
            break;
        }
        case EstimationMode::GroverML: {
            const double theta_true = std::asin(std::clamp(q_true, 0.0, 1.0));
            const int schedule_k = std::max(
                1, static_cast<int>(std::ceil(std::log2(opts.schedule_constant / eps))));

            SplitMix64 rng(seed);
            std::vector<PowerSample> data;
            data.reserve(schedule_k + 2);
            for (int level = -1; level <= schedule_k; ++level) {
                std::uint64_t m = level < 0 ? 0 : 1ULL << level;
                double s = std::sin((2.0 * static_cast<double>(m) + 1.0) * theta_true);
                double p = s * s;
                int hits = 0;
                for (int t = 0; t < opts.shots_per_power; ++t)
                    if (rng.bernoulli(p)) ++hits;
                data.push_back({m, hits, opts.shots_per_power});
                est.ledger.shots += opts.shots_per_power;
                est.ledger.grover_applications += m * opts.shots_per_power;
            }
            est.ledger.prep_queries =
                2 * est.ledger.grover_applications + est.ledger.shots;
            est.q_hat = std::sin(mlqae_theta(data));
            break;
        }
    }
    return est;
}

}  // namespace qsx
