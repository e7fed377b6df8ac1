#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rlclab/channel.hpp"
#include "rlclab/codec.hpp"
#include "rlclab/crc32.hpp"
#include "rlclab/matrix.hpp"

namespace rlclab {

/// Knobs for the exhaustive syndrome-decoding search.
struct SDConfig {
    /// Largest error weight tried per column. 0 still tries the all-zero
    /// candidate. See default_t_max() for the channel-derived default.
    std::size_t t_max = 2;
    /// Cap on (support, values) candidates examined per column; exhaustion
    /// reports the column as unsolved, never as a wrong answer.
    std::uint64_t candidate_budget = 2'000'000;

    enum class Verify { Oracle, Crc32 };
    Verify verify = Verify::Oracle;

    /// Re-run the search after promotions shrink the unknown set.
    bool iterate = false;

    /// Uniqueness certification is skipped (reported false) when the search
    /// has more unknowns than this, since the spark computation behind it is
    /// exponential.
    std::size_t spark_columns_limit = 20;
};

/// Search depth that covers virtually all per-column error weights at a
/// given channel setting: three times the expected per-packet error count,
/// plus slack.
inline std::size_t default_t_max(const ChannelSpec& c) {
    const double expected = static_cast<double>(c.length) * symbol_error_prob(c);
    return static_cast<std::size_t>(std::ceil(3.0 * expected)) + 2;
}

struct SdSolution {
    std::vector<Fel> w;
    bool certified = false;  ///< sparsest-solution uniqueness proven via the spark criterion
};

struct SdStats {
    std::uint64_t candidates = 0;
    bool budget_exhausted = false;
};

/// S = H^T * Y. By construction H^T annihilates the generator, so the
/// syndrome depends only on the error matrix.
inline FMatrix syndrome(const FMatrix& h, const FMatrix& y) {
    return h.transposed() * y;
}

/// Row restriction M_R preserving the order of R.
inline FMatrix restrict_rows(const FMatrix& m, const IndexSet& rows) {
    return m.select_rows(rows);
}

namespace detail {

/// Enumerates candidate error vectors in the canonical search order:
/// weight t = 0, 1, ..., t_max; within a weight, supports in lexicographic
/// order; within a support, nonzero values in ascending odometer order
/// (last position fastest). visit(support, values) returns false to stop.
template <typename Visitor>
void enumerate_candidates(std::size_t m, std::size_t t_max, std::uint32_t q, Visitor&& visit) {
    std::vector<std::size_t> support;
    std::vector<Fel> values;
    if (!visit(support, values)) {  // weight 0
        return;
    }
    for (std::size_t t = 1; t <= t_max && t <= m; ++t) {
        support.resize(t);
        for (std::size_t i = 0; i < t; ++i) {
            support[i] = i;
        }
        bool more_supports = true;
        while (more_supports) {
            values.assign(t, 1);
            bool more_values = true;
            while (more_values) {
                if (!visit(support, values)) {
                    return;
                }
                more_values = false;
                for (std::size_t pos = t; pos-- > 0;) {
                    if (values[pos] + 1 < q) {
                        ++values[pos];
                        std::fill(values.begin() + static_cast<std::ptrdiff_t>(pos) + 1,
                                  values.end(), 1);
                        more_values = true;
                        break;
                    }
                }
            }
            more_supports = false;
            for (std::size_t i = t; i-- > 0;) {
                if (support[i] + (t - i) < m) {
                    ++support[i];
                    for (std::size_t j = i + 1; j < t; ++j) {
                        support[j] = support[j - 1] + 1;
                    }
                    more_supports = true;
                    break;
                }
            }
        }
    }
}

struct ColumnVecHash {
    std::size_t operator()(const std::vector<Fel>& v) const {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (const Fel x : v) {
            h = (h ^ x) * 0x100000001b3ull;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace detail

namespace detail {

inline bool spark_certifies(const FMatrix& ht, std::size_t weight, const SDConfig& cfg,
                            bool rank_full) {
    if (weight == 0) {
        return true;  // the zero vector is trivially the unique weight-0 solution
    }
    if (rank_full) {
        return true;  // independent columns: spark is infinite
    }
    if (ht.cols() > cfg.spark_columns_limit) {
        return false;
    }
    return spark(ht, 2 * weight).exceeds(2 * weight);
}

}  // namespace detail

/// Reference search for the sparsest w with Ht * w^T = s (the per-column
/// l0-minimization solved by exhaustive syndrome decoding). Candidates are
/// tried in the canonical order, so the first hit is the sparsest and the
/// result is reproducible; nullopt means the weight cap or candidate budget
/// was exhausted. `certified` is set when the spark criterion proves the
/// solution is the unique sparsest one.
inline std::optional<SdSolution> syndrome_decode_column(const FMatrix& ht, std::span<const Fel> s,
                                                        const SDConfig& cfg,
                                                        SdStats* stats = nullptr) {
    const std::size_t rows = ht.rows();
    if (s.size() != rows) {
        throw std::invalid_argument("syndrome length mismatch");
    }
    const std::size_t m = ht.cols();
    const FieldSpec f = ht.field();
    SdStats local;
    std::optional<SdSolution> result;
    std::vector<Fel> acc(rows);
    detail::enumerate_candidates(
        m, cfg.t_max, f.q, [&](const std::vector<std::size_t>& support, const std::vector<Fel>& values) {
            if (local.candidates == cfg.candidate_budget) {
                local.budget_exhausted = true;
                return false;
            }
            ++local.candidates;
            acc.assign(rows, 0);
            for (std::size_t i = 0; i < support.size(); ++i) {
                for (std::size_t r = 0; r < rows; ++r) {
                    acc[r] = f.add(acc[r], f.mul(values[i], ht(r, support[i])));
                }
            }
            bool match = true;
            for (std::size_t r = 0; r < rows; ++r) {
                if (acc[r] != s[r]) {
                    match = false;
                    break;
                }
            }
            if (!match) {
                return true;
            }
            SdSolution sol;
            sol.w.assign(m, 0);
            for (std::size_t i = 0; i < support.size(); ++i) {
                sol.w[support[i]] = values[i];
            }
            const bool rank_full = rank(ht) == m;
            sol.certified = detail::spark_certifies(ht, support.size(), cfg, rank_full);
            result = std::move(sol);
            return false;
        });
    if (stats) {
        *stats = local;
    }
    return result;
}

/// Batch solver for the L independent column problems sharing one Ht.
/// Enumerates the candidate space once, indexes candidates by their
/// syndrome, and answers each column by lookup. Produces exactly the same
/// solutions, statistics and certification flags as syndrome_decode_column.
class SyndromeTable {
public:
    SyndromeTable(FMatrix ht, const SDConfig& cfg) : ht_(std::move(ht)), cfg_(cfg) {
        const std::size_t m = ht_.cols();
        const std::size_t rows = ht_.rows();
        const FieldSpec f = ht_.field();
        rank_full_ = rank(ht_) == m;
        const bool track_collisions = m <= cfg_.spark_columns_limit && !rank_full_;
        std::vector<Fel> key(rows);
        detail::enumerate_candidates(
            m, cfg_.t_max, f.q,
            [&](const std::vector<std::size_t>& support, const std::vector<Fel>& values) {
                if (total_ == cfg_.candidate_budget) {
                    truncated_ = true;
                    return false;
                }
                ++total_;
                key.assign(rows, 0);
                for (std::size_t i = 0; i < support.size(); ++i) {
                    for (std::size_t r = 0; r < rows; ++r) {
                        key[r] = f.add(key[r], f.mul(values[i], ht_(r, support[i])));
                    }
                }
                Candidate cand;
                cand.ordinal = total_;
                cand.support.assign(support.begin(), support.end());
                cand.values.assign(values.begin(), values.end());
                auto [it, inserted] = map_.try_emplace(key);
                if (inserted || track_collisions) {
                    it->second.push_back(std::move(cand));
                }
                return true;
            });
        if (track_collisions && !truncated_) {
            min_null_weight_ = scan_collisions();
        }
    }

    struct Lookup {
        std::optional<SdSolution> solution;
        SdStats stats;
    };

    Lookup lookup(std::span<const Fel> s) const {
        if (s.size() != ht_.rows()) {
            throw std::invalid_argument("syndrome length mismatch");
        }
        Lookup out;
        const auto it = map_.find(std::vector<Fel>(s.begin(), s.end()));
        if (it == map_.end()) {
            out.stats.candidates = total_;
            out.stats.budget_exhausted = truncated_;
            return out;
        }
        const Candidate& cand = it->second.front();
        out.stats.candidates = cand.ordinal;
        SdSolution sol;
        sol.w.assign(ht_.cols(), 0);
        for (std::size_t i = 0; i < cand.support.size(); ++i) {
            sol.w[cand.support[i]] = cand.values[i];
        }
        sol.certified = certify(cand.support.size());
        out.solution = std::move(sol);
        return out;
    }

private:
    struct Candidate {
        std::uint64_t ordinal = 0;
        std::vector<std::uint16_t> support;
        std::vector<Fel> values;
    };

    bool certify(std::size_t weight) const {
        if (weight == 0 || rank_full_) {
            return true;
        }
        if (ht_.cols() > cfg_.spark_columns_limit) {
            return false;
        }
        if (min_null_weight_) {
            // exact: either no dependency within reach (spark > 2 t_max) or
            // the lightest null vector found is the spark itself
            return 2 * weight < *min_null_weight_;
        }
        return spark(ht_, 2 * weight).exceeds(2 * weight);
    }

    /// Exact minimum weight of a nonzero null vector of Ht, provided it is
    /// at most 2 t_max: any such vector splits into two candidates with
    /// equal syndromes, so it shows up as an in-bucket collision. Returns
    /// m+1 (heavier than anything certifiable) when no collision exists,
    /// nullopt when the pair scan is too large to run exactly.
    std::optional<std::size_t> scan_collisions() const {
        std::uint64_t pairs = 0;
        for (const auto& [key, list] : map_) {
            if (list.size() > 1) {
                pairs += list.size() * (list.size() - 1) / 2;
            }
        }
        if (pairs > kPairScanCap) {
            return std::nullopt;
        }
        std::size_t best = ht_.cols() + 1;
        std::vector<Fel> diff(ht_.cols());
        const FieldSpec f = ht_.field();
        for (const auto& [key, list] : map_) {
            for (std::size_t i = 0; i + 1 < list.size(); ++i) {
                for (std::size_t j = i + 1; j < list.size(); ++j) {
                    diff.assign(ht_.cols(), 0);
                    for (std::size_t p = 0; p < list[i].support.size(); ++p) {
                        diff[list[i].support[p]] = list[i].values[p];
                    }
                    std::size_t weight = 0;
                    for (std::size_t p = 0; p < list[j].support.size(); ++p) {
                        const std::size_t pos = list[j].support[p];
                        diff[pos] = f.sub(diff[pos], list[j].values[p]);
                    }
                    for (const Fel v : diff) {
                        weight += v != 0;
                    }
                    if (weight < best) {
                        best = weight;
                    }
                }
            }
        }
        return best;
    }

    static constexpr std::uint64_t kPairScanCap = 1'000'000;

    FMatrix ht_;
    SDConfig cfg_;
    bool rank_full_ = false;
    bool truncated_ = false;
    std::uint64_t total_ = 0;
    std::optional<std::size_t> min_null_weight_;
    std::unordered_map<std::vector<Fel>, std::vector<Candidate>, detail::ColumnVecHash> map_;
};

/// Xhat = Y - Ehat elementwise: subtracting the estimated errors from the
/// received rows yields the repaired rows.
inline FMatrix repair(const FMatrix& y_ebar, const FMatrix& ehat_ebar) {
    return y_ebar - ehat_ebar;
}

struct PromoteOutcome {
    std::size_t nu = 0;
    IndexSet promoted;
};

/// Checks each repaired row (against ground truth in Oracle mode, against
/// its CRC-32 trailer in Crc32 mode) and moves the passing ones from the
/// corrupted set to the clean set: their payload in y_work is replaced by
/// the repaired row and their generator rows join the receiver's basis.
inline PromoteOutcome verify_and_promote(const FMatrix& xhat_ebar, const FMatrix* truth_x_ebar,
                                         const SDConfig& cfg, const FMatrix& g, IndexSet& clean,
                                         IndexSet& ebar, FMatrix& y_work, RankTracker& ge_rank) {
    if (xhat_ebar.rows() != ebar.size()) {
        throw std::invalid_argument("repaired rows do not match the corrupted set");
    }
    if (cfg.verify == SDConfig::Verify::Oracle && truth_x_ebar == nullptr) {
        throw std::invalid_argument("oracle verification needs ground-truth rows");
    }
    if (cfg.verify == SDConfig::Verify::Crc32 && g.field().q != 2) {
        throw std::invalid_argument("CRC-32 verification is defined for F_2 only");
    }
    PromoteOutcome out;
    for (std::size_t r = 0; r < xhat_ebar.rows(); ++r) {
        bool ok = false;
        if (cfg.verify == SDConfig::Verify::Oracle) {
            ok = std::equal(xhat_ebar.row(r).begin(), xhat_ebar.row(r).end(),
                            truth_x_ebar->row(r).begin());
        } else {
            ok = crc32_trailer_valid(xhat_ebar.row(r));
        }
        if (ok) {
            out.promoted.insert(ebar[r]);
        }
    }
    for (const std::size_t idx : out.promoted) {
        clean.insert(idx);
        ge_rank.add_row(g.row(idx));
    }
    // copy repaired payloads before shrinking ebar so row positions line up
    for (std::size_t r = 0; r < xhat_ebar.rows(); ++r) {
        if (out.promoted.contains(ebar[r])) {
            std::copy(xhat_ebar.row(r).begin(), xhat_ebar.row(r).end(),
                      y_work.row(ebar[r]).begin());
        }
    }
    for (const std::size_t idx : out.promoted) {
        ebar.erase(idx);
    }
    out.nu = out.promoted.size();
    return out;
}

struct PprOutcome {
    std::size_t nu = 0;              ///< repaired and promoted packets
    IndexSet repaired_indices;       ///< subset of the pre-PPR corrupted set
    std::optional<FMatrix> decoded;  ///< K x L message when the rank reached K
    std::size_t columns_solved = 0;
    std::size_t columns_unique = 0;  ///< solutions certified by the spark criterion
    std::uint64_t candidates = 0;
    std::size_t budget_exhausted_columns = 0;
    bool budget_exhausted = false;
    std::size_t passes = 0;
};

/// Full partial-packet-recovery pipeline at a receiver that failed plain
/// RLC decoding: derive the parity-check matrix, compute the syndrome of
/// everything heard so far, estimate the sparsest per-column errors of the
/// corrupted rows, repair, verify, promote, and finally re-attempt RLC
/// decoding on the enlarged system. With cfg.iterate the search is repeated
/// on the shrunken unknown set until a pass promotes nothing. Column
/// counters accumulate across passes.
///
/// `y` holds all n received rows (clean and corrupted payloads) and must
/// match the rows transmitted by `state`; `clean_rows` lists the indices
/// received error-free. `truth_x` supplies ground-truth coded rows for
/// Oracle verification (simulator only).
inline PprOutcome ppr_assisted_decode(CodeState& state, const FMatrix& y,
                                      const IndexSet& clean_rows, const SDConfig& cfg,
                                      const FMatrix* truth_x = nullptr) {
    const std::size_t n = y.rows();
    if (n != state.transmitted()) {
        throw std::invalid_argument("received rows do not match transmitted count");
    }
    const FMatrix& g = state.generator();
    const std::size_t k = state.spec().k;
    PprOutcome out;
    IndexSet clean = clean_rows;
    IndexSet ebar = clean.complement(n);
    RankTracker ge_rank(k, g.field());
    for (const std::size_t idx : clean) {
        ge_rank.add_row(g.row(idx));
    }
    FMatrix y_work = y;
    const FMatrix& h = state.parity();  // throws when n <= k: no parity rows, nothing to repair
    while (!ebar.empty()) {
        ++out.passes;
        const FMatrix s = syndrome(h, y_work);
        const FMatrix ht = restrict_rows(h, ebar).transposed();
        const SyndromeTable table(ht, cfg);
        const std::size_t m = ebar.size();
        FMatrix ehat(m, y.cols(), y.field());
        std::vector<Fel> column(s.rows());
        for (std::size_t j = 0; j < y.cols(); ++j) {
            for (std::size_t r = 0; r < s.rows(); ++r) {
                column[r] = s(r, j);
            }
            auto res = table.lookup(column);
            out.candidates += res.stats.candidates;
            if (res.stats.budget_exhausted) {
                ++out.budget_exhausted_columns;
                out.budget_exhausted = true;
            }
            if (res.solution) {
                ++out.columns_solved;
                out.columns_unique += res.solution->certified;
                for (std::size_t r = 0; r < m; ++r) {
                    ehat(r, j) = res.solution->w[r];
                }
            }
        }
        const FMatrix xhat = repair(y_work.select_rows(ebar), ehat);
        std::optional<FMatrix> truth_ebar;
        if (truth_x) {
            truth_ebar = truth_x->select_rows(ebar);
        }
        const PromoteOutcome promoted = verify_and_promote(
            xhat, truth_ebar ? &*truth_ebar : nullptr, cfg, g, clean, ebar, y_work, ge_rank);
        out.nu += promoted.nu;
        for (const std::size_t idx : promoted.promoted) {
            out.repaired_indices.insert(idx);
        }
        if (!cfg.iterate || promoted.nu == 0) {
            break;
        }
    }
    if (ge_rank.complete()) {
        out.decoded = rlc_decode(g.select_rows(clean), y_work.select_rows(clean));
    }
    return out;
}

}  // namespace rlclab
