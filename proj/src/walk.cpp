#include "loqs/walk.hpp"

#include <cmath>

#include "loqs/util.hpp"

namespace loqs {

WalkState::WalkState(int t_max) : t_max_(t_max) {
    if (t_max < 1) throw ParameterError("WalkState: need t_max >= 1");
    const std::size_t side = 2 * static_cast<std::size_t>(t_max) + 1;
    amps_.assign(side * side * 4, cd(0.0, 0.0));
}

int WalkState::index(int x, int y, int cx, int cy) const {
    if (x < -t_max_ || x > t_max_ || y < -t_max_ || y > t_max_)
        throw ParameterError("WalkState: coordinate outside the lattice");
    const int side = 2 * t_max_ + 1;
    const int ci = ((cx > 0) ? 1 : 0) * 2 + ((cy > 0) ? 1 : 0);
    return ((x + t_max_) * side + (y + t_max_)) * 4 + ci;
}

cd& WalkState::amp(int x, int y, int cx, int cy) {
    return amps_[index(x, y, cx, cy)];
}

cd WalkState::amp(int x, int y, int cx, int cy) const {
    return amps_[index(x, y, cx, cy)];
}

double WalkState::site_probability(int x, int y) const {
    double p = 0.0;
    for (int cx = -1; cx <= 1; cx += 2)
        for (int cy = -1; cy <= 1; cy += 2) p += std::norm(amp(x, y, cx, cy));
    return p;
}

double WalkState::norm_squared() const {
    double p = 0.0;
    for (const cd& a : amps_) p += std::norm(a);
    return p;
}

WalkState WalkState::origin(int t_max) {
    WalkState s(t_max);
    s.amp(0, 0, 1, 1) = cd(1.0, 0.0);
    return s;
}

bool CoinField::is_defect(int x, int y) const {
    const int side = 2 * t_max + 1;
    return defect[(x + t_max) * side + (y + t_max)] != 0;
}

CoinField CoinField::random(int t_max, double p, Rng& rng) {
    if (p < 0.0 || p > 1.0) throw ParameterError("CoinField: p outside [0, 1]");
    CoinField f;
    f.t_max = t_max;
    const int side = 2 * t_max + 1;
    f.defect.assign(static_cast<std::size_t>(side) * side, 0);
    for (int x = -t_max; x <= t_max; ++x)
        for (int y = -t_max; y <= t_max; ++y) {
            if (x == 0 && y == 0) continue;  // walker starts on a live site
            if (rng.uniform() >= p) f.defect[(x + t_max) * side + (y + t_max)] = 1;
        }
    return f;
}

CoinField CoinField::clear(int t_max) {
    CoinField f;
    f.t_max = t_max;
    const int side = 2 * t_max + 1;
    f.defect.assign(static_cast<std::size_t>(side) * side, 0);
    return f;
}

CoinField CoinField::all_defects(int t_max) {
    CoinField f = clear(t_max);
    for (auto& d : f.defect) d = 1;
    const int side = 2 * t_max + 1;
    f.defect[t_max * side + t_max] = 0;
    return f;
}

WalkState step(const WalkState& state, const CoinField& coins) {
    const int t_max = state.extent();
    if (coins.t_max != t_max) throw DimensionError("step: coin field size mismatch");
    WalkState next(t_max);
    const double inv2 = 0.5;  // (H (x) H) entries are +-1/2

    for (int x = -t_max; x <= t_max; ++x) {
        for (int y = -t_max; y <= t_max; ++y) {
            bool occupied = false;
            for (int cx = -1; cx <= 1 && !occupied; cx += 2)
                for (int cy = -1; cy <= 1 && !occupied; cy += 2)
                    occupied = std::norm(state.amp(x, y, cx, cy)) > 0.0;
            if (!occupied) continue;

            const bool defect = coins.is_defect(x, y);
            for (int ncx = -1; ncx <= 1; ncx += 2) {
                for (int ncy = -1; ncy <= 1; ncy += 2) {
                    cd out(0.0, 0.0);
                    if (defect) {
                        // X (x) X: reverse both coin components.
                        out = state.amp(x, y, -ncx, -ncy);
                    } else {
                        // (H (x) H)_{(ncx,ncy),(cx,cy)} = 1/2 * sign, the sign
                        // being minus iff both incoming and outgoing component
                        // are "down" in the same axis.
                        for (int cx = -1; cx <= 1; cx += 2)
                            for (int cy = -1; cy <= 1; cy += 2) {
                                double sign = 1.0;
                                if (ncx < 0 && cx < 0) sign = -sign;
                                if (ncy < 0 && cy < 0) sign = -sign;
                                out += inv2 * sign * state.amp(x, y, cx, cy);
                            }
                    }
                    if (std::norm(out) == 0.0) continue;
                    const int nx = x + ncx, ny = y + ncy;
                    if (nx < -t_max || nx > t_max || ny < -t_max || ny > t_max)
                        throw SizeGuardError("step: walker support would leave the lattice");
                    next.amp(nx, ny, ncx, ncy) += out;
                }
            }
        }
    }
    return next;
}

void random_sign_flips(std::vector<cd>& amps, double p_d, Rng& rng) {
    if (p_d < 0.0 || p_d > 1.0) throw ParameterError("random_sign_flips: p_d outside [0, 1]");
    if (p_d == 0.0) return;
    for (cd& a : amps)
        if (rng.uniform() < p_d) a = -a;
}

WalkState dephase(const WalkState& state, double p_d, Rng& rng) {
    WalkState out = state;
    random_sign_flips(out.raw(), p_d, rng);
    return out;
}

double dephase_map_check(double p_d) {
    if (p_d < 0.0 || p_d > 1.0) throw ParameterError("dephase_map_check: p_d outside [0, 1]");
    const double f = 1.0 - 2.0 * p_d;
    return f * f;
}

WalkMetrics metrics(const WalkState& state, int t_b) {
    const int t_max = state.extent();
    if (t_b < 0 || t_b > t_max) throw ParameterError("metrics: boundary outside [0, t_max]");

    std::vector<double> px(2 * t_max + 1, 0.0);
    double escape = 0.0;
    for (int x = -t_max; x <= t_max; ++x) {
        double col = 0.0;
        for (int y = -t_max; y <= t_max; ++y) col += state.site_probability(x, y);
        px[x + t_max] = col;
        if (std::abs(x) > t_b) escape += col;
    }
    double mean = 0.0, total = 0.0;
    for (int x = -t_max; x <= t_max; ++x) {
        mean += x * px[x + t_max];
        total += px[x + t_max];
    }
    mean /= total;
    double var = 0.0;
    for (int x = -t_max; x <= t_max; ++x) var += (x - mean) * (x - mean) * px[x + t_max];
    var /= total;
    return WalkMetrics{var, escape};
}

WalkSeries ensemble_run(const WalkConfig& config, Rng& rng, int threads) {
    if (config.trials < 1) throw ParameterError("ensemble_run: need trials >= 1");
    const int steps = config.steps > 0 ? config.steps : config.t_max;
    if (steps > config.t_max)
        throw SizeGuardError("ensemble_run: steps exceed the lattice extent");

    const int trials = config.trials;
    std::vector<std::vector<double>> var(trials), esc(trials);
    parallel_for(
        trials,
        [&](std::int64_t trial) {
            Rng field_rng = rng.split(2 * trial);
            Rng flip_rng = rng.split(2 * trial + 1);
            CoinField field = CoinField::random(config.t_max, config.p, field_rng);
            WalkState st = WalkState::origin(config.t_max);
            var[trial].resize(steps);
            esc[trial].resize(steps);
            for (int t = 0; t < steps; ++t) {
                st = step(st, field);
                if (config.p_d > 0.0) random_sign_flips(st.raw(), config.p_d, flip_rng);
                const WalkMetrics m = metrics(st, config.t_b);
                var[trial][t] = m.variance;
                esc[trial][t] = m.escape_prob;
            }
        },
        threads);

    WalkSeries out;
    out.time.resize(steps);
    out.variance_mean.assign(steps, 0.0);
    out.variance_stderr.assign(steps, 0.0);
    out.escape_mean.assign(steps, 0.0);
    out.escape_stderr.assign(steps, 0.0);
    for (int t = 0; t < steps; ++t) {
        out.time[t] = t + 1;
        double vm = 0.0, em = 0.0;
        for (int k = 0; k < trials; ++k) {
            vm += var[k][t];
            em += esc[k][t];
        }
        vm /= trials;
        em /= trials;
        double vv = 0.0, ev = 0.0;
        for (int k = 0; k < trials; ++k) {
            vv += (var[k][t] - vm) * (var[k][t] - vm);
            ev += (esc[k][t] - em) * (esc[k][t] - em);
        }
        out.variance_mean[t] = vm;
        out.escape_mean[t] = em;
        if (trials > 1) {
            out.variance_stderr[t] = std::sqrt(vv / (trials - 1.0) / trials);
            out.escape_stderr[t] = std::sqrt(ev / (trials - 1.0) / trials);
        }
    }
    return out;
}

ClassicalWalkResult classical_walk(const WalkConfig& config, std::int64_t tokens, Rng& rng) {
    if (tokens < 1) throw ParameterError("classical_walk: need tokens >= 1");
    const int steps = config.steps > 0 ? config.steps : config.t_max;
    ClassicalWalkResult out;
    out.variance.assign(steps, 0.0);

    std::vector<double> sum_x(steps, 0.0), sum_x2(steps, 0.0);
    for (std::int64_t tok = 0; tok < tokens; ++tok) {
        Rng trng = rng.split(tok);
        CoinField field = CoinField::random(config.t_max, config.p, trng);
        int x = 0, y = 0, cx = 1, cy = 1;
        for (int t = 0; t < steps; ++t) {
            if (field.is_defect(x, y)) {
                cx = -cx;
                cy = -cy;
            } else {
                cx = trng.bernoulli(0.5) ? 1 : -1;
                cy = trng.bernoulli(0.5) ? 1 : -1;
            }
            x += cx;
            y += cy;
            sum_x[t] += x;
            sum_x2[t] += static_cast<double>(x) * x;
        }
    }
    for (int t = 0; t < steps; ++t) {
        const double mean = sum_x[t] / static_cast<double>(tokens);
        out.variance[t] = sum_x2[t] / static_cast<double>(tokens) - mean * mean;
    }
    return out;
}

}  // namespace loqs
