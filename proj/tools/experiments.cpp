#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

#include "loqs/fock.hpp"
#include "loqs/fusion.hpp"
#include "loqs/gkp.hpp"
#include "loqs/loop.hpp"
#include "loqs/nonfock.hpp"
#include "loqs/permanent.hpp"
#include "loqs/phasespace.hpp"
#include "loqs/qufti.hpp"
#include "loqs/sources.hpp"
#include "loqs/walk.hpp"

#ifndef LOQS_VERSION_STRING
#define LOQS_VERSION_STRING "v0.1.0"
#endif

namespace loqs::cli {

const char* kVersion = LOQS_VERSION_STRING;

const ParamSpec* ExperimentSpec::find_param(const std::string& key) const {
    for (const auto& p : params)
        if (p.name == key) return &p;
    return nullptr;
}

namespace {

template <typename T>
T get_typed(const ExperimentConfig& cfg, const std::string& key) {
    auto it = cfg.params.find(key);
    if (it == cfg.params.end()) throw ConfigError("missing parameter '" + key + "'");
    if (!std::holds_alternative<T>(it->second))
        throw ConfigError("parameter '" + key + "' has the wrong type");
    return std::get<T>(it->second);
}

}  // namespace

std::int64_t RunContext::get_int(const std::string& key) const {
    return get_typed<std::int64_t>(config, key);
}
double RunContext::get_real(const std::string& key) const {
    return get_typed<double>(config, key);
}
bool RunContext::get_bool(const std::string& key) const {
    return get_typed<bool>(config, key);
}
std::string RunContext::get_string(const std::string& key) const {
    return get_typed<std::string>(config, key);
}
std::vector<std::int64_t> RunContext::get_int_list(const std::string& key) const {
    return get_typed<std::vector<std::int64_t>>(config, key);
}
std::vector<double> RunContext::get_real_list(const std::string& key) const {
    return get_typed<std::vector<double>>(config, key);
}

bool RunContext::out_of_budget() {
    if (!has_deadline || budget_hit) return budget_hit;
    if (std::chrono::steady_clock::now() >= deadline) budget_hit = true;
    return budget_hit;
}

// ===========================================================================
// Experiment bodies
// ===========================================================================

namespace {

std::string config_cell(const FockConfiguration& cfg) {
    std::string s;
    for (std::size_t i = 0; i < cfg.size(); ++i) s += (i ? " " : "") + std::to_string(cfg[i]);
    return s;
}

Eigen::Matrix2cd hadamard2() {
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    return h / std::sqrt(2.0);
}

void run_hom(RunContext& ctx) {
    ctx.table.header({{"out_1", "photons"}, {"out_2", "photons"}, {"probability", "1"}});
    const ModeUnitary h = ModeUnitary::unitary(hadamard2());
    const AmplitudeMap dist = full_distribution(h, {1, 1});
    for (const auto& [cfg, amp] : dist.entries)
        ctx.table.row({static_cast<std::int64_t>(cfg[0]), static_cast<std::int64_t>(cfg[1]),
                       std::norm(amp)});
}

void run_distribution(RunContext& ctx) {
    const int m = static_cast<int>(ctx.get_int("m"));
    const int n = static_cast<int>(ctx.get_int("n"));
    const std::string kind = ctx.get_string("ensemble");
    if (kind != "unitary" && kind != "orthogonal")
        throw ConfigError("distribution: ensemble must be 'unitary' or 'orthogonal'");
    Rng rng(ctx.config.seed, 1);
    const ModeUnitary u = random_matrix(
        m, kind == "unitary" ? RandomKind::HaarUnitary : RandomKind::HaarOrthogonal, rng);
    FockConfiguration input(m, 0);
    for (int i = 0; i < n; ++i) input[i] = 1;
    ctx.table.header({{"configuration", "photons-per-mode"},
                      {"amp_re", "1"},
                      {"amp_im", "1"},
                      {"probability", "1"}});
    for (const auto& [cfg, amp] : full_distribution(u, input).entries)
        ctx.table.row({config_cell(cfg), amp.real(), amp.imag(), std::norm(amp)});
}

void run_loop_loss(RunContext& ctx) {
    const int m = static_cast<int>(ctx.get_int("m"));
    const int loops = static_cast<int>(ctx.get_int("loops"));
    const LossParams loss{ctx.get_real("eta_f"), ctx.get_real("eta_s")};
    Rng rng(ctx.config.seed, 2);
    std::vector<SwitchSequence> seqs;
    for (int l = 0; l < loops; ++l) seqs.push_back(SwitchSequence::random(m, rng));
    const LossyLoopMap map = lossy_loop_map(seqs, m, loss);
    const Matrix lmat = loss_matrix(m, loss, loops);
    FockConfiguration ones(m, 1);
    const double psel = postselect_prob(map.full(), ones);

    ctx.table.header({{"i", "mode"},
                      {"j", "mode"},
                      {"loss", "amplitude"},
                      {"map_re", "amplitude"},
                      {"map_im", "amplitude"},
                      {"factorization_err", "amplitude"},
                      {"postselect_all", "probability"}});
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const cd expected = map.ideal(i, j) * lmat(i, j);
            ctx.table.row({static_cast<std::int64_t>(i + 1), static_cast<std::int64_t>(j + 1),
                           lmat(i, j).real(), map.inner(i, j).real(), map.inner(i, j).imag(),
                           std::abs(map.inner(i, j) - expected), psel});
        }
}

void run_loop_similarity(RunContext& ctx) {
    const int m = static_cast<int>(ctx.get_int("m"));
    const int loops = static_cast<int>(ctx.get_int("loops"));
    const int trials = static_cast<int>(ctx.get_int("trials"));
    const LossParams loss{ctx.get_real("eta_f"), ctx.get_real("eta_s")};
    Rng rng(ctx.config.seed, 3);

    ctx.table.header(
        {{"trial", "index"}, {"similarity", "1"}, {"best_so_far", "1"}, {"postselect_all", "probability"}});
    double best = -1.0;
    FockConfiguration ones(m, 1);
    for (int t = 0; t < trials; ++t) {
        if (ctx.out_of_budget()) return;
        Rng trial_rng = rng.split(t);
        std::vector<SwitchSequence> seqs;
        for (int l = 0; l < loops; ++l) seqs.push_back(SwitchSequence::random(m, trial_rng));
        const LossyLoopMap map = lossy_loop_map(seqs, m, loss);
        const double s = similarity(map.inner);
        best = std::max(best, s);
        ctx.table.row({static_cast<std::int64_t>(t), s, best,
                       postselect_prob(map.full(), ones)});
    }
}

void run_loop_mismatch(RunContext& ctx) {
    const int m = static_cast<int>(ctx.get_int("m"));
    const double omega = ctx.get_real("omega");
    const double sigma = ctx.get_real("sigma_over_omega") * omega;
    const int trials = static_cast<int>(ctx.get_int("trials"));
    const auto deltas = ctx.get_real_list("delta_over_omega");
    Rng rng(ctx.config.seed, 4);

    ctx.table.header({{"delta", "time"}, {"sigma", "time"}, {"fidelity", "1"}});
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (ctx.out_of_budget()) return;
        Rng seq_rng = rng.split(i);
        const SwitchSequence seq = SwitchSequence::random(m, seq_rng);
        Rng jit_rng = rng.split(1000 + i);
        const double delta = deltas[i] * omega;
        const double f = mismatch_fidelity(seq, m, delta, sigma, omega, jit_rng, trials);
        ctx.table.row({delta, sigma, f});
    }
}

void run_qufti(RunContext& ctx) {
    const int n = static_cast<int>(ctx.get_int("n"));
    const double phi_min = ctx.get_real("phi_min");
    const double phi_max = ctx.get_real("phi_max");
    const int points = static_cast<int>(ctx.get_int("points"));
    const double dvar = ctx.get_real("dephasing_var");
    const OrcBaselines orc = orc_baselines(n);

    ctx.table.header({{"n", "photons"},
                      {"phi", "rad"},
                      {"P", "probability"},
                      {"dP_dphi", "1/rad"},
                      {"delta_phi", "rad"},
                      {"snl", "rad"},
                      {"hl", "rad"}});
    for (int i = 0; i < points; ++i) {
        const double phi =
            points == 1 ? phi_min : phi_min + (phi_max - phi_min) * i / (points - 1.0);
        const QuftiSignal sig = signal_and_sensitivity({n, phi, dvar});
        ctx.table.row({static_cast<std::int64_t>(n), phi, sig.p, sig.dp_dphi, sig.delta_phi,
                       orc.snl, orc.hl});
    }
}

void run_qufti_conjecture(RunContext& ctx) {
    const int n_max = static_cast<int>(ctx.get_int("n_max"));
    const int points = static_cast<int>(ctx.get_int("phi_points"));
    ctx.table.header({{"n", "photons"}, {"max_abs_diff", "1"}});
    for (int n = 1; n <= n_max; ++n) {
        if (ctx.out_of_budget()) return;
        double worst = 0.0;
        for (int i = 0; i < points; ++i) {
            const double phi = 2.0 * M_PI * i / points;
            const cd ryser = permanent_ryser(qufti_unitary(n, phi).entries);
            worst = std::max(worst, std::abs(ryser - conjectured_permanent(n, phi)));
        }
        ctx.table.row({static_cast<std::int64_t>(n), worst});
    }
}

void run_sources(RunContext& ctx) {
    const double r = ctx.get_real("r");
    const double eta = ctx.get_real("eta");
    const int n = static_cast<int>(ctx.get_int("n"));
    const int n_max = static_cast<int>(ctx.get_int("sources_max"));
    const int step = static_cast<int>(ctx.get_int("sources_step"));
    const double p1 = herald_detect(1, r, eta);

    ctx.table.header(
        {{"sources", "count"}, {"p_herald_one", "probability"}, {"p_prep", "probability"}});
    for (int N = n; N <= n_max; N += step) {
        SpdcParams p{r, eta, N, n};
        ctx.table.row({static_cast<std::int64_t>(N), p1, multiplex_prep_prob(p)});
    }
}

void run_fusion_rate(RunContext& ctx) {
    const std::string kind_s = ctx.get_string("strategy");
    FusionStrategy strat;
    if (kind_s == "balanced")
        strat.kind = FusionStrategy::Kind::Balanced;
    else if (kind_s == "modesty")
        strat.kind = FusionStrategy::Kind::Modesty;
    else if (kind_s == "random")
        strat.kind = FusionStrategy::Kind::Random;
    else if (kind_s == "frugal")
        strat.kind = FusionStrategy::Kind::Frugal;
    else
        throw ConfigError("fusion-rate: unknown strategy '" + kind_s + "'");
    strat.recycled = ctx.get_bool("recycled");
    strat.frugal_slack = static_cast<int>(ctx.get_int("frugal_slack"));
    StrategyRunOptions opts;
    opts.start_unlimited_at = static_cast<int>(ctx.get_int("unlimited_at"));
    const std::int64_t steps = ctx.get_int("steps");
    const bool trace = ctx.get_bool("trace");
    Rng rng(ctx.config.seed, 5);

    if (trace) {
        // Newline-delimited event log of the bucket Markov chain for the
        // first target size.
        opts.keep_trace = true;
        opts.trace_limit = steps;
        const auto d_list = ctx.get_int_list("d_list");
        if (d_list.empty()) throw ConfigError("fusion-rate: d_list must not be empty");
        strat.target_d = static_cast<int>(d_list.front());
        Rng chain_rng = rng.split(0);
        const StrategyRunResult res = run_strategy(strat, steps, chain_rng, opts);
        ctx.table.header({{"step", "index"},
                          {"m", "photons"},
                          {"n", "photons"},
                          {"s", "photons"},
                          {"produced", "photons"},
                          {"banked", "flag"},
                          {"buckets", "size:count"}});
        for (const auto& rec : res.trace) {
            if (ctx.out_of_budget()) return;
            ctx.table.row({rec.step, static_cast<std::int64_t>(rec.m),
                           static_cast<std::int64_t>(rec.n), static_cast<std::int64_t>(rec.s),
                           static_cast<std::int64_t>(rec.produced),
                           static_cast<std::int64_t>(rec.banked ? 1 : 0), rec.bucket_summary});
        }
        return;
    }

    ctx.table.header({{"d", "photons"},
                      {"rate", "states-per-op"},
                      {"wilson_low", "states-per-op"},
                      {"wilson_high", "states-per-op"},
                      {"banked", "count"},
                      {"counted_steps", "count"}});
    int idx = 0;
    for (std::int64_t d : ctx.get_int_list("d_list")) {
        if (ctx.out_of_budget()) return;
        strat.target_d = static_cast<int>(d);
        Rng chain_rng = rng.split(idx++);
        const StrategyRunResult res = run_strategy(strat, steps, chain_rng, opts);
        ctx.table.row({d, res.rate, res.wilson_low, res.wilson_high, res.banked,
                       res.counted_steps});
    }
}

void run_cat_hom(RunContext& ctx) {
    const double alpha = ctx.get_real("alpha");
    const ModeUnitary h = ModeUnitary::unitary(hadamard2());
    const CoherentSuperposition state = CoherentSuperposition::cats(2, 2, alpha, true);
    const double norm = state.norm_squared();
    ctx.table.header({{"out_1", "photons"},
                      {"out_2", "photons"},
                      {"gamma_re", "1"},
                      {"gamma_im", "1"},
                      {"probability", "1"}});
    for (const auto& cfg : enumerate_configurations(2, 2)) {
        const cd g = cat_amplitude(state, h, cfg);
        ctx.table.row({static_cast<std::int64_t>(cfg[0]), static_cast<std::int64_t>(cfg[1]),
                       g.real(), g.imag(), std::norm(g) / norm});
    }
}

void run_spacs(RunContext& ctx) {
    const int n = static_cast<int>(ctx.get_int("n"));
    const double alpha2 = ctx.get_real("alpha2");
    const SpacsStats st = spacs_stats(n, alpha2);
    const char* regime = st.regime == SamplingRegime::Hard
                             ? "hard"
                             : (st.regime == SamplingRegime::Easy ? "easy" : "intermediate");
    ctx.table.header(
        {{"photons_detected", "count"}, {"probability", "1"}, {"regime", "class"}});
    for (int i = 0; i <= n; ++i)
        ctx.table.row({static_cast<std::int64_t>(i), st.p[i], std::string(regime)});
}

void run_passv(RunContext& ctx) {
    const int m = static_cast<int>(ctx.get_int("m"));
    const int n = static_cast<int>(ctx.get_int("n"));
    const auto xis = ctx.get_real_list("xi_list");
    Rng rng(ctx.config.seed, 6);
    const ModeUnitary orth = random_matrix(m, RandomKind::HaarOrthogonal, rng);

    ctx.table.header({{"xi", "1"}, {"pattern", "parity-per-mode"}, {"probability", "1"}});
    for (double xi : xis) {
        for (const auto& [pattern, prob] : passv_parity_distribution(orth, n, xi)) {
            std::string s;
            for (Parity p : pattern) s += (p == Parity::Odd ? 'o' : 'e');
            ctx.table.row({xi, s, prob});
        }
    }
}

void run_integral_check(RunContext& ctx) {
    const int n = static_cast<int>(ctx.get_int("n"));
    const int m = static_cast<int>(ctx.get_int("m"));
    const int unitaries = static_cast<int>(ctx.get_int("unitaries"));
    const std::string method_s = ctx.get_string("method");
    IntegralOptions opts;
    if (method_s == "quadrature")
        opts.method = IntegralMethod::Quadrature;
    else if (method_s == "monte-carlo")
        opts.method = IntegralMethod::MonteCarlo;
    else
        throw ConfigError("integral-check: method must be 'quadrature' or 'monte-carlo'");
    opts.quadrature_order = static_cast<int>(ctx.get_int("order"));
    opts.mc_samples = ctx.get_int("samples");
    opts.threads = ctx.threads;
    Rng rng(ctx.config.seed, 7);

    ctx.table.header({{"trial", "index"},
                      {"p_integral", "probability"},
                      {"p_permanent", "probability"},
                      {"abs_diff", "1"},
                      {"error_estimate", "1"}});
    for (int t = 0; t < unitaries; ++t) {
        if (ctx.out_of_budget()) return;
        Rng trial_rng = rng.split(t);
        const ModeUnitary u = random_matrix(m, RandomKind::HaarUnitary, trial_rng);
        opts.seed = ctx.config.seed ^ static_cast<std::uint64_t>(t);
        const IntegralResult res = integral_prob(u, n, opts);
        const double per = std::norm(permanent_ryser(u.entries.topLeftCorner(n, n)));
        ctx.table.row({static_cast<std::int64_t>(t), res.value, per, std::abs(res.value - per),
                       res.error_estimate});
    }
}

void run_walk(RunContext& ctx) {
    WalkConfig cfg;
    cfg.t_max = static_cast<int>(ctx.get_int("t_max"));
    cfg.p = ctx.get_real("p");
    cfg.p_d = ctx.get_real("p_d");
    cfg.t_b = static_cast<int>(ctx.get_int("t_b"));
    cfg.trials = static_cast<int>(ctx.get_int("trials"));
    Rng rng(ctx.config.seed, 8);
    const WalkSeries series = ensemble_run(cfg, rng, ctx.threads);

    ctx.table.header({{"t", "steps"},
                      {"sigma2", "sites^2"},
                      {"sigma2_stderr", "sites^2"},
                      {"pesc", "probability"},
                      {"pesc_stderr", "probability"}});
    for (std::size_t t = 0; t < series.time.size(); ++t)
        ctx.table.row({static_cast<std::int64_t>(series.time[t]), series.variance_mean[t],
                       series.variance_stderr[t], series.escape_mean[t],
                       series.escape_stderr[t]});
}

void run_gkp(RunContext& ctx) {
    const double db = ctx.get_real("squeezing_db");
    const double xi = xi_from_squeezing_db(db);
    const SymmetricEncoding enc = symmetric_encoding(xi);
    SpinLightParams params{enc.twice_j, enc.g, xi};

    if (ctx.get_bool("comb")) {
        // Serialized resource-state combs for the two extremal outcomes.
        ctx.table.header({{"twice_x", "1"},
                          {"representation", "quadrature"},
                          {"center", "position"},
                          {"weight_re", "1"},
                          {"weight_im", "1"},
                          {"variance", "position^2"}});
        for (int tx : {params.twice_j, -params.twice_j}) {
            const ConditionalState st = conditional_state(tx, params);
            for (const auto& [c, w] : st.position.peaks)
                ctx.table.row({static_cast<std::int64_t>(tx), std::string("q"), c, w.real(),
                               w.imag(), st.position.peak_variance});
            for (const auto& [c, w] : st.momentum.peaks)
                ctx.table.row({static_cast<std::int64_t>(tx), std::string("p"), c, w.real(),
                               w.imag(), st.momentum.peak_variance});
        }
        return;
    }

    const double ps = success_prob(params);
    ctx.table.header({{"twice_x", "1"},
                      {"probability", "1"},
                      {"twice_j", "1"},
                      {"j_exact", "1"},
                      {"success", "probability"}});
    if (params.twice_j <= 80) {
        for (int tx = -params.twice_j; tx <= params.twice_j; tx += 2)
            ctx.table.row({static_cast<std::int64_t>(tx), outcome_prob(tx, params),
                           static_cast<std::int64_t>(params.twice_j), enc.j_exact, ps});
    } else {
        for (int tx : {-params.twice_j, params.twice_j})
            ctx.table.row({static_cast<std::int64_t>(tx), outcome_prob(tx, params),
                           static_cast<std::int64_t>(params.twice_j), enc.j_exact, ps});
    }
}

std::vector<ExperimentSpec> build_catalog() {
    std::vector<ExperimentSpec> cat;

    cat.push_back({"hom",
                   "Two-photon interference table of a balanced beamsplitter",
                   {},
                   run_hom});

    cat.push_back({"distribution",
                   "Output distribution of n photons through a random m-mode network",
                   {{"m", ValueType::Int, std::int64_t{3}, "modes", "mode count"},
                    {"n", ValueType::Int, std::int64_t{2}, "photons", "photons in the first modes"},
                    {"ensemble", ValueType::String, std::string("unitary"), "class",
                     "'unitary' or 'orthogonal'"}},
                   run_distribution});

    cat.push_back({"loop-loss",
                   "Loss matrix and factorization error of the fiber-loop map",
                   {{"m", ValueType::Int, std::int64_t{2}, "modes", "mode count"},
                    {"loops", ValueType::Int, std::int64_t{1}, "count", "inner-loop passes"},
                    {"eta_f", ValueType::Real, 0.99, "1", "fiber efficiency per tau"},
                    {"eta_s", ValueType::Real, 0.9, "1", "switch efficiency"}},
                   run_loop_loss});

    cat.push_back({"loop-similarity",
                   "Monte-Carlo similarity maximization over switch sequences",
                   {{"m", ValueType::Int, std::int64_t{3}, "modes", "mode count"},
                    {"loops", ValueType::Int, std::int64_t{2}, "count", "inner-loop passes"},
                    {"eta_f", ValueType::Real, 0.99, "1", "fiber efficiency per tau"},
                    {"eta_s", ValueType::Real, 1.0, "1", "switch efficiency"},
                    {"trials", ValueType::Int, std::int64_t{1750}, "count", "search iterations"}},
                   run_loop_similarity});

    cat.push_back(
        {"loop-mismatch",
         "Temporal mode-mismatch fidelity of one inner-loop pass",
         {{"m", ValueType::Int, std::int64_t{2}, "modes", "mode count"},
          {"delta_over_omega", ValueType::RealList, std::vector<double>{0.0, 0.1, 0.2, 0.3, 0.4, 0.5},
           "1", "loop-length error in packet widths"},
          {"sigma_over_omega", ValueType::Real, 0.0, "1", "jitter std-dev in packet widths"},
          {"omega", ValueType::Real, 1.0, "time", "packet width"},
          {"trials", ValueType::Int, std::int64_t{250}, "count", "jitter draws"}},
         run_loop_mismatch});

    cat.push_back({"qufti",
                   "Phase signal and sensitivity of the Fourier interferometer",
                   {{"n", ValueType::Int, std::int64_t{4}, "photons", "photon/mode count"},
                    {"phi_min", ValueType::Real, 1e-3, "rad", "first phase sample"},
                    {"phi_max", ValueType::Real, 0.5, "rad", "last phase sample"},
                    {"points", ValueType::Int, std::int64_t{25}, "count", "phase samples"},
                    {"dephasing_var", ValueType::Real, 0.0, "rad^2", "dephasing variance"}},
                   run_qufti});

    cat.push_back({"qufti-conjecture",
                   "Ryser permanent against the closed product form",
                   {{"n_max", ValueType::Int, std::int64_t{10}, "photons", "largest n"},
                    {"phi_points", ValueType::Int, std::int64_t{20}, "count", "phase samples"}},
                   run_qufti_conjecture});

    cat.push_back({"sources",
                   "Multiplexed heralded-source preparation probability",
                   {{"r", ValueType::Real, 0.5, "1", "squeezing parameter"},
                    {"eta", ValueType::Real, 0.9, "1", "detector efficiency"},
                    {"n", ValueType::Int, std::int64_t{20}, "photons", "required heralds"},
                    {"sources_max", ValueType::Int, std::int64_t{300}, "count", "largest N"},
                    {"sources_step", ValueType::Int, std::int64_t{10}, "count", "N increment"}},
                   run_sources});

    cat.push_back(
        {"fusion-rate",
         "Preparation rate of large Fock states under a fusion strategy",
         {{"strategy", ValueType::String, std::string("balanced"), "name",
           "balanced | modesty | random | frugal"},
          {"d_list", ValueType::IntList, std::vector<std::int64_t>{8, 16, 32, 64}, "photons",
           "target sizes"},
          {"steps", ValueType::Int, std::int64_t{1000000}, "count", "fusion ops per target"},
          {"recycled", ValueType::Bool, true, "flag", "keep every outcome"},
          {"frugal_slack", ValueType::Int, std::int64_t{0}, "photons", "frugal d' (0 = d)"},
          {"unlimited_at", ValueType::Int, std::int64_t{1}, "photons",
           "size held in unlimited supply"},
          {"trace", ValueType::Bool, false, "flag",
           "emit the per-event chain trace for the first target instead of rates"}},
         run_fusion_rate});

    cat.push_back({"cat-hom",
                   "Odd-cat two-mode interference amplitudes",
                   {{"alpha", ValueType::Real, 1e-3, "1", "cat amplitude"}},
                   run_cat_hom});

    cat.push_back({"spacs",
                   "Photon-added coherent-state detection statistics",
                   {{"n", ValueType::Int, std::int64_t{10}, "photons", "input SPACS count"},
                    {"alpha2", ValueType::Real, 0.1, "1", "|alpha|^2"}},
                   run_spacs});

    cat.push_back({"passv",
                   "Parity sampling of photon-added squeezed vacuum",
                   {{"m", ValueType::Int, std::int64_t{4}, "modes", "mode count"},
                    {"n", ValueType::Int, std::int64_t{2}, "photons", "added photons"},
                    {"xi_list", ValueType::RealList, std::vector<double>{0.0, 0.5, 1.0}, "1",
                     "squeezing values (results are identical)"}},
                   run_passv});

    cat.push_back(
        {"integral-check",
         "Phase-space integral against |Per|^2",
         {{"n", ValueType::Int, std::int64_t{2}, "photons", "photon count"},
          {"m", ValueType::Int, std::int64_t{3}, "modes", "mode count"},
          {"method", ValueType::String, std::string("quadrature"), "name",
           "quadrature | monte-carlo"},
          {"order", ValueType::Int, std::int64_t{20}, "nodes", "quadrature order per dimension"},
          {"samples", ValueType::Int, std::int64_t{200000}, "count", "Monte Carlo samples"},
          {"unitaries", ValueType::Int, std::int64_t{5}, "count", "random unitaries tested"}},
         run_integral_check});

    cat.push_back({"walk",
                   "Coined walker on a congested lattice with dephasing",
                   {{"t_max", ValueType::Int, std::int64_t{50}, "steps", "lattice half-extent"},
                    {"p", ValueType::Real, 1.0, "1", "probability a site is live"},
                    {"p_d", ValueType::Real, 0.0, "1", "dephasing probability"},
                    {"t_b", ValueType::Int, std::int64_t{10}, "sites", "escape boundary"},
                    {"trials", ValueType::Int, std::int64_t{100}, "count", "ensemble size"}},
                   run_walk});

    cat.push_back({"gkp",
                   "Grid-state outcome probabilities at the symmetric encoding",
                   {{"squeezing_db", ValueType::Real, 10.0, "dB", "input squeezing"},
                    {"comb", ValueType::Bool, false, "flag",
                     "emit the resource-state peak combs instead of outcome probabilities"}},
                   run_gkp});

    return cat;
}

}  // namespace

const std::vector<ExperimentSpec>& experiment_catalog() {
    static const std::vector<ExperimentSpec> cat = build_catalog();
    return cat;
}

const ExperimentSpec* find_experiment(const std::string& name) {
    for (const auto& e : experiment_catalog())
        if (e.name == name) return &e;
    return nullptr;
}

std::string catalog_json() {
    nlohmann::json root = nlohmann::json::array();
    for (const auto& e : experiment_catalog()) {
        nlohmann::json j;
        j["experiment"] = e.name;
        j["summary"] = e.summary;
        j["params"] = nlohmann::json::array();
        for (const auto& p : e.params) {
            nlohmann::json pj;
            pj["name"] = p.name;
            pj["type"] = value_type_name(p.type);
            pj["default"] = format_value(p.default_value);
            pj["unit"] = p.unit;
            pj["description"] = p.description;
            j["params"].push_back(pj);
        }
        root.push_back(j);
    }
    return root.dump(2);
}

ExperimentConfig resolve_config(const RawConfig& raw) {
    ExperimentConfig cfg;

    auto take = [&](const std::string& key) -> std::optional<std::pair<std::string, int>> {
        auto it = raw.entries.find(key);
        if (it == raw.entries.end()) return std::nullopt;
        return it->second;
    };

    const auto exp_entry = take("experiment");
    if (!exp_entry) throw ConfigError("config: missing required key 'experiment'");
    cfg.experiment = exp_entry->first;
    const ExperimentSpec* spec = find_experiment(cfg.experiment);
    if (!spec) {
        std::string names;
        for (const auto& e : experiment_catalog()) names += (names.empty() ? "" : ", ") + e.name;
        throw ConfigError("config: unknown experiment '" + cfg.experiment + "' (expected one of " +
                          names + ")");
    }

    if (const auto v = take("seed"))
        cfg.seed = static_cast<std::uint64_t>(
            std::get<std::int64_t>(parse_value(v->first, ValueType::Int, "seed")));
    if (const auto v = take("output")) cfg.output_path = v->first;
    if (const auto v = take("format")) {
        if (v->first == "csv")
            cfg.format = OutputFormat::Csv;
        else if (v->first == "json-lines")
            cfg.format = OutputFormat::JsonLines;
        else
            throw ConfigError("config line " + std::to_string(v->second) +
                              ": format must be 'csv' or 'json-lines'");
    }
    if (const auto v = take("budget_seconds"))
        cfg.budget_seconds = std::get<double>(parse_value(v->first, ValueType::Real, "budget_seconds"));

    // Schema-checked parameters; reject anything unknown.
    for (const auto& [key, entry] : raw.entries) {
        if (key == "experiment" || key == "seed" || key == "output" || key == "format" ||
            key == "budget_seconds")
            continue;
        const ParamSpec* p = spec->find_param(key);
        if (!p)
            throw ConfigError("config line " + std::to_string(entry.second) + ": unknown key '" +
                              key + "' for experiment '" + cfg.experiment + "'");
        cfg.params[key] =
            parse_value(entry.first, p->type, "config line " + std::to_string(entry.second) +
                                                  " (key '" + key + "')");
    }
    for (const auto& p : spec->params)
        if (!cfg.params.count(p.name)) cfg.params[p.name] = p.default_value;

    return cfg;
}

RunOutcome run_experiment(const ExperimentConfig& config, std::ostream& out, int threads) {
    const ExperimentSpec* spec = find_experiment(config.experiment);
    if (!spec) throw ConfigError("unknown experiment '" + config.experiment + "'");

    const auto start = std::chrono::steady_clock::now();
    TableWriter table(out, config.format, config.experiment);
    RunContext ctx{config, table, std::max(1, threads)};
    if (config.budget_seconds > 0.0) {
        ctx.has_deadline = true;
        ctx.deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                   std::chrono::duration<double>(config.budget_seconds));
    }

    spec->run(ctx);
    table.footer(config.seed, config.hash(), kVersion,
                 ctx.budget_hit ? "runtime budget exceeded" : "");

    RunOutcome outcome;
    outcome.exit_code = ctx.budget_hit ? 3 : 0;
    outcome.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return outcome;
}

}  // namespace loqs::cli
