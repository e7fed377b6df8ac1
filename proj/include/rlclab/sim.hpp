#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rlclab/analysis.hpp"
#include "rlclab/channel.hpp"
#include "rlclab/codec.hpp"
#include "rlclab/crc32.hpp"
#include "rlclab/ppr.hpp"

namespace rlclab {

enum class StopKind {
    UntilDestinationDecodes,  ///< source stops when the destination has the message
    FixedNmax                 ///< source stops at min(destination decode, N_max)
};

struct StopRule {
    StopKind kind = StopKind::UntilDestinationDecodes;
    std::size_t n_max = 0;  ///< used by FixedNmax

    static StopRule until_destination_decodes() { return {StopKind::UntilDestinationDecodes, 0}; }
    static StopRule fixed_n_max(std::size_t n) { return {StopKind::FixedNmax, n}; }
};

struct ExperimentConfig {
    std::size_t k = 20;
    std::size_t l = 128;
    std::uint32_t q = 2;
    double eps_d = 0.0;
    double eps_e = 0.0;
    StopRule stop = StopRule::until_destination_decodes();
    std::optional<SDConfig> ppr;  ///< engaged: eavesdropper runs RLC with SD
    std::size_t trials = 1000;
    std::uint64_t base_seed = 0;
    std::size_t safety_cap = 0;  ///< 0: use the default of 20 K

    std::size_t effective_safety_cap() const { return safety_cap == 0 ? 20 * k : safety_cap; }

    void validate() const {
        if (k < 1 || l < 1 || trials < 1) {
            throw std::invalid_argument("K, L and trials must be positive");
        }
        if (!(eps_d >= 0.0 && eps_d <= 1.0 && eps_e >= 0.0 && eps_e <= 1.0)) {
            throw std::invalid_argument("packet error probabilities must be in [0, 1]");
        }
        FieldSpec probe(q);  // throws for composite order
        if (stop.kind == StopKind::FixedNmax && stop.n_max < k) {
            throw std::invalid_argument("N_max must be at least K");
        }
        if (effective_safety_cap() < k) {
            throw std::invalid_argument("safety cap must be at least K");
        }
        if (ppr && ppr->verify == SDConfig::Verify::Crc32) {
            if (q != 2) {
                throw std::invalid_argument("CRC-32 verification needs q = 2");
            }
            if (l <= kCrcBits) {
                throw std::invalid_argument("CRC-32 verification needs L > 32");
            }
        }
    }

    /// The paper assumes the eavesdropper's channel is no better than the
    /// destination's; sweeps may deliberately violate this.
    bool eps_order_violated() const { return eps_e < eps_d; }
};

/// SD search configuration matched to a channel: the weight cap follows the
/// expected per-packet error count of the eavesdropper's link.
inline SDConfig make_default_sd(double eps_e, std::size_t l) {
    SDConfig sd;
    sd.t_max = default_t_max(ChannelSpec(eps_e, l));
    return sd;
}

struct SdTotals {
    std::uint64_t invocations = 0;
    std::uint64_t columns_solved = 0;
    std::uint64_t columns_unique = 0;
    std::uint64_t candidates = 0;
    std::uint64_t budget_exhausted_columns = 0;
    std::uint64_t promoted_rows = 0;

    void add(const PprOutcome& o) {
        ++invocations;
        columns_solved += o.columns_solved;
        columns_unique += o.columns_unique;
        candidates += o.candidates;
        budget_exhausted_columns += o.budget_exhausted_columns;
        promoted_rows += o.nu;
    }

    void merge(const SdTotals& other) {
        invocations += other.invocations;
        columns_solved += other.columns_solved;
        columns_unique += other.columns_unique;
        candidates += other.candidates;
        budget_exhausted_columns += other.budget_exhausted_columns;
        promoted_rows += other.promoted_rows;
    }
};

struct TrialOutcome {
    std::size_t n_stop = 0;
    bool dest_decoded = false;
    bool eav_rlc_decoded = false;
    bool eav_ppr_decoded = false;
    std::size_t nu = 0;   ///< packets repaired and promoted by PPR
    std::size_t n_e = 0;  ///< error-free eavesdropper receptions before PPR
    bool safety_cap_hit = false;
    bool ppr_ran = false;
    PprOutcome ppr;
};

/// Aggregated probability estimate with a Wilson score interval.
struct Estimate {
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::size_t trials = 0;
};

constexpr double kZ95 = 1.959963984540054;
constexpr double kZ99 = 2.5758293035489004;

inline Estimate wilson_estimate(std::size_t successes, std::size_t trials, double z = kZ95) {
    if (trials == 0) {
        throw std::invalid_argument("estimate needs at least one trial");
    }
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    Estimate e;
    e.p_hat = p;
    e.ci_low = std::max(0.0, center - half);
    e.ci_high = std::min(1.0, center + half);
    e.trials = trials;
    return e;
}

namespace detail {

inline void encode_row(std::span<const Fel> g_row, const FMatrix& u, const FieldSpec& f,
                       std::vector<Fel>& out) {
    const std::size_t l = u.cols();
    out.assign(l, 0);
    for (std::size_t i = 0; i < g_row.size(); ++i) {
        const Fel coeff = g_row[i];
        if (coeff == 0) {
            continue;
        }
        const auto src = u.row(i);
        for (std::size_t c = 0; c < l; ++c) {
            out[c] = f.add(out[c], f.mul(coeff, src[c]));
        }
    }
}

inline FMatrix draw_message(std::size_t k, std::size_t l, const FieldSpec& f, RngStream& rng,
                            bool crc_trailers) {
    FMatrix u(k, l, f);
    for (std::size_t r = 0; r < k; ++r) {
        const std::size_t payload = crc_trailers ? l - kCrcBits : l;
        auto row = u.row(r);
        for (std::size_t c = 0; c < payload; ++c) {
            row[c] = static_cast<Fel>(rng.next_below(f.q));
        }
        if (crc_trailers) {
            crc32_fill_trailer(row);
        }
    }
    return u;
}

}  // namespace detail

/// One full broadcast trial. All randomness is derived from
/// (base_seed, trial_index), so a trial is reproducible in isolation and
/// independent of every other trial. The source transmits coded packets one
/// at a time; both receivers track the rank of their error-free rows, and
/// the eavesdropper additionally stores every corrupted payload so that PPR
/// can run offline once the source stops.
inline TrialOutcome run_trial(const ExperimentConfig& cfg, std::size_t trial_index) {
    const std::uint64_t trial_key = RngStream::derive(cfg.base_seed, trial_index);
    RngStream msg_rng(RngStream::derive(trial_key, 0));
    RngStream ch_d_rng(RngStream::derive(trial_key, 2));
    RngStream ch_e_rng(RngStream::derive(trial_key, 3));

    const FieldSpec field(cfg.q);
    const bool crc_mode = cfg.ppr && cfg.ppr->verify == SDConfig::Verify::Crc32;
    const FMatrix u = detail::draw_message(cfg.k, cfg.l, field, msg_rng, crc_mode);

    GeneratorSpec gen_spec;
    gen_spec.kind = GeneratorKind::FullRankNonSystematic;
    gen_spec.k = cfg.k;
    gen_spec.seed = RngStream::derive(trial_key, 1);
    gen_spec.field = field;
    CodeState code(gen_spec);

    const ChannelSpec link_d(cfg.eps_d, cfg.l);
    const ChannelSpec link_e(cfg.eps_e, cfg.l);

    RankTracker dest_rank(cfg.k, field);
    RankTracker eav_rank(cfg.k, field);
    const bool store_for_ppr = cfg.ppr.has_value();
    FMatrix y(0, cfg.l, field);      // everything the eavesdropper heard
    FMatrix truth(0, cfg.l, field);  // transmitted rows, for oracle verification
    std::vector<std::size_t> eav_clean;

    const std::size_t cap = cfg.stop.kind == StopKind::FixedNmax
                                ? std::min(cfg.stop.n_max, cfg.effective_safety_cap())
                                : cfg.effective_safety_cap();
    TrialOutcome out;
    std::vector<Fel> x_row;
    for (std::size_t n = 1; n <= cap; ++n) {
        const auto g_row = code.next_row();
        detail::encode_row(g_row, u, field, x_row);

        const Reception at_dest = transmit(x_row, link_d, field, ch_d_rng);
        if (at_dest.clean) {
            dest_rank.add_row(g_row);
        }
        const Reception at_eav = transmit(x_row, link_e, field, ch_e_rng);
        if (at_eav.clean) {
            eav_rank.add_row(g_row);
            eav_clean.push_back(n - 1);
        }
        if (store_for_ppr) {
            y.append_row(at_eav.payload);
            truth.append_row(x_row);
        }

        out.n_stop = n;
        if (dest_rank.complete()) {
            break;
        }
        if (cfg.stop.kind == StopKind::UntilDestinationDecodes && n == cap) {
            out.safety_cap_hit = true;
        }
    }
    out.dest_decoded = dest_rank.complete();
    out.eav_rlc_decoded = eav_rank.complete();
    out.eav_ppr_decoded = out.eav_rlc_decoded;
    out.n_e = eav_clean.size();

    if (cfg.ppr && !out.eav_rlc_decoded && out.n_stop > cfg.k && out.n_e < out.n_stop) {
        const IndexSet clean(std::move(eav_clean));
        const FMatrix* oracle = cfg.ppr->verify == SDConfig::Verify::Oracle ? &truth : nullptr;
        out.ppr = ppr_assisted_decode(code, y, clean, *cfg.ppr, oracle);
        out.ppr_ran = true;
        out.nu = out.ppr.nu;
        out.eav_ppr_decoded = out.ppr.decoded.has_value();
    }
    return out;
}

struct ExperimentResult {
    std::size_t trials = 0;
    std::size_t dest_decoded = 0;
    std::size_t eav_rlc_decoded = 0;
    std::size_t eav_ppr_decoded = 0;
    std::size_t ppr_only_gain = 0;  ///< intercepts that needed PPR
    std::size_t safety_cap_hits = 0;
    std::uint64_t n_stop_sum = 0;
    std::uint64_t nu_sum = 0;
    SdTotals sd;

    Estimate p_dec;
    Estimate p_int_rlc;
    std::optional<Estimate> p_int_sd;
    std::optional<Estimate> ppr_gain;
    double mean_n = 0.0;
    double nu_mean = 0.0;
};

/// Runs cfg.trials independent trials, in parallel when threads != 1. Every
/// aggregate is a sum of per-trial integers, so the result is identical for
/// any thread count and schedule.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg, std::size_t threads = 0) {
    cfg.validate();
    if (threads == 0) {
        threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    }
    threads = std::min(threads, cfg.trials);

    struct Accumulator {
        std::size_t dest = 0, rlc = 0, ppr = 0, gain = 0, cap_hits = 0;
        std::uint64_t n_sum = 0, nu_sum = 0;
        SdTotals sd;

        void add(const TrialOutcome& t) {
            dest += t.dest_decoded;
            rlc += t.eav_rlc_decoded;
            ppr += t.eav_ppr_decoded;
            gain += t.eav_ppr_decoded && !t.eav_rlc_decoded;
            cap_hits += t.safety_cap_hit;
            n_sum += t.n_stop;
            nu_sum += t.nu;
            if (t.ppr_ran) {
                sd.add(t.ppr);
            }
        }
    };

    std::vector<Accumulator> locals(threads);
    std::atomic<std::size_t> next{0};
    auto worker = [&](std::size_t slot) {
        Accumulator& acc = locals[slot];
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cfg.trials) {
                break;
            }
            acc.add(run_trial(cfg, i));
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker, t);
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    Accumulator total;
    for (const Accumulator& acc : locals) {
        total.dest += acc.dest;
        total.rlc += acc.rlc;
        total.ppr += acc.ppr;
        total.gain += acc.gain;
        total.cap_hits += acc.cap_hits;
        total.n_sum += acc.n_sum;
        total.nu_sum += acc.nu_sum;
        total.sd.merge(acc.sd);
    }

    ExperimentResult r;
    r.trials = cfg.trials;
    r.dest_decoded = total.dest;
    r.eav_rlc_decoded = total.rlc;
    r.eav_ppr_decoded = total.ppr;
    r.ppr_only_gain = total.gain;
    r.safety_cap_hits = total.cap_hits;
    r.n_stop_sum = total.n_sum;
    r.nu_sum = total.nu_sum;
    r.sd = total.sd;
    r.p_dec = wilson_estimate(total.dest, cfg.trials);
    r.p_int_rlc = wilson_estimate(total.rlc, cfg.trials);
    if (cfg.ppr) {
        r.p_int_sd = wilson_estimate(total.ppr, cfg.trials);
        r.ppr_gain = wilson_estimate(total.gain, cfg.trials);
    }
    r.mean_n = static_cast<double>(total.n_sum) / static_cast<double>(cfg.trials);
    r.nu_mean = static_cast<double>(total.nu_sum) / static_cast<double>(cfg.trials);
    return r;
}

}  // namespace rlclab
