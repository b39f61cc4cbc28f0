// Exhaustive joint search for optimum-distance-spectrum TCM encoders.
//
// The labeling stream covers one reduced-column-echelon representative per
// class (with the constellation's symmetry reduction applied), crossed with
// the noncatastrophic, equally-likely-symbols encoder universe over every
// memory split.  Candidates are ranked by the superiority partial order on
// K-term spectra; because that order is partial the search keeps a Pareto
// frontier, and a run can end with a single optimum or with a split between
// the event-multiplicity and bit-multiplicity leaders.
//
// Screening: a candidate's exact minimum distance comes from the pair-graph
// completion costs alone, so the expensive spectrum enumeration only runs
// for candidates tying or beating the current frontier's minimum distance.
// Everything else is decided by that first distance.
//
// Ties on the full K-term spectrum keep the candidate generated first under
// the ordering (labeling stream position, memory split, encoder stream
// position); work may be distributed over threads, with frontiers merged
// under the same rule, so results do not depend on scheduling.

#ifndef TCMKIT_SEARCH_HPP
#define TCMKIT_SEARCH_HPP

#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "tcmkit/mflsa.hpp"
#include "tcmkit/spectrum.hpp"

namespace tcmkit {

enum class SearchVerdict { ods_found, split_optimum };

struct SearchCandidate {
    EncoderSpec spec;
    Labeling labeling;
    DistanceSpectrum spectrum;
    int labeling_index = 0;
    int split_index = 0;
    std::uint64_t encoder_index = 0;

    std::tuple<int, int, std::uint64_t> order() const {
        return {labeling_index, split_index, encoder_index};
    }
};

struct SearchOptions {
    int spectrum_terms = 5;
    int max_event_length = 64;
    int workers = 1;
    std::string checkpoint_path;            // empty: no checkpoints written
    double checkpoint_interval_seconds = 60.0;
    std::string resume_path;                // empty: start fresh
    std::function<void(const std::string&)> progress;
};

struct SearchResult {
    SearchVerdict verdict = SearchVerdict::ods_found;
    std::optional<SearchCandidate> best_ab;
    std::optional<SearchCandidate> best_a;
    std::optional<SearchCandidate> best_b;
    std::vector<SearchCandidate> frontier;  // mutually non-superior leaders
    std::uint64_t candidates_examined = 0;
    std::uint64_t degenerate_rejections = 0;
    std::uint64_t nonconverged_rejections = 0;
    double runtime_seconds = 0.0;
};

namespace detail {

inline void frontier_update(std::vector<SearchCandidate>& frontier, SearchCandidate cand) {
    for (const SearchCandidate& e : frontier)
        if (is_superior(e.spectrum, cand.spectrum)) return;
    for (SearchCandidate& e : frontier) {
        if (same_spectrum(e.spectrum, cand.spectrum)) {
            if (cand.order() < e.order()) e = std::move(cand);
            return;
        }
    }
    std::erase_if(frontier, [&](const SearchCandidate& e) {
        return is_superior(cand.spectrum, e.spectrum);
    });
    frontier.push_back(std::move(cand));
}

// lexicographic spectrum ranking with one multiplicity as the primary
// criterion; used to name the split-optimum leaders
inline int compare_metric_lex(const DistanceSpectrum& a, const DistanceSpectrum& b,
                              bool bit_metric) {
    const int n = std::max(a.terms.size(), b.terms.size());
    auto metric = [&](const SpectrumTerm& t) -> const Dyadic& {
        return bit_metric ? t.bit_multiplicity_times_k : t.event_multiplicity;
    };
    for (int i = 0; i < n; ++i) {
        const bool ha = i < static_cast<int>(a.terms.size());
        const bool hb = i < static_cast<int>(b.terms.size());
        if (!ha || !hb) return ha == hb ? 0 : (ha ? 1 : -1);  // missing distance is better
        if (!same_spectral_distance(a.terms[i].d_key, b.terms[i].d_key))
            return a.terms[i].d_key > b.terms[i].d_key ? -1 : 1;
        if (metric(a.terms[i]) != metric(b.terms[i]))
            return metric(a.terms[i]) < metric(b.terms[i]) ? -1 : 1;
    }
    return 0;
}

inline const SearchCandidate* best_by_metric(const std::vector<SearchCandidate>& frontier,
                                             bool bit_metric) {
    const SearchCandidate* best = nullptr;
    for (const SearchCandidate& e : frontier) {
        if (!best) { best = &e; continue; }
        int c = compare_metric_lex(e.spectrum, best->spectrum, bit_metric);
        if (c == 0) c = compare_metric_lex(e.spectrum, best->spectrum, !bit_metric);
        if (c < 0 || (c == 0 && e.order() < best->order())) best = &e;
    }
    return best;
}

inline nlohmann::ordered_json spectrum_to_checkpoint(const DistanceSpectrum& ds) {
    nlohmann::ordered_json j;
    j["truncation"] = ds.truncation;
    j["inputs"] = ds.inputs;
    j["terms"] = nlohmann::ordered_json::array();
    for (const SpectrumTerm& t : ds.terms) {
        j["terms"].push_back({{"d_key", t.d_key},
                              {"a_hi", t.event_multiplicity.num_high()},
                              {"a_lo", t.event_multiplicity.num_low()},
                              {"a_exp", t.event_multiplicity.exponent()},
                              {"bk_hi", t.bit_multiplicity_times_k.num_high()},
                              {"bk_lo", t.bit_multiplicity_times_k.num_low()},
                              {"bk_exp", t.bit_multiplicity_times_k.exponent()}});
    }
    return j;
}

inline DistanceSpectrum spectrum_from_checkpoint(const nlohmann::json& j) {
    DistanceSpectrum ds;
    ds.truncation = j.at("truncation").get<int>();
    ds.inputs = j.at("inputs").get<int>();
    for (const auto& t : j.at("terms")) {
        SpectrumTerm term;
        term.d_key = t.at("d_key").get<std::int64_t>();
        term.event_multiplicity = Dyadic::from_parts(
            t.at("a_hi").get<std::uint64_t>(), t.at("a_lo").get<std::uint64_t>(),
            t.at("a_exp").get<int>());
        term.bit_multiplicity_times_k = Dyadic::from_parts(
            t.at("bk_hi").get<std::uint64_t>(), t.at("bk_lo").get<std::uint64_t>(),
            t.at("bk_exp").get<int>());
        term.inputs = ds.inputs;
        ds.terms.push_back(term);
    }
    return ds;
}

}  // namespace detail

inline SearchResult ods_search(int k, int m, int nu, ConstellationFamily family,
                               const SearchOptions& opts = {}) {
    if (m < 2 || m > 3) throw error("ods_search: supported for 2 <= m <= 3");
    if (k < 1 || k > m) throw error("ods_search: need 1 <= k <= m");
    if (nu < 1) throw error("ods_search: need nu >= 1");
    const auto t_start = std::chrono::steady_clock::now();

    Constellation constellation = family == ConstellationFamily::pam
                                      ? Constellation::mpam(1 << m)
                                      : Constellation::mpsk(1 << m);
    const LabelingMode mode =
        family == ConstellationFamily::pam ? LabelingMode::pam : LabelingMode::psk;
    const std::vector<Labeling> labelings = mflsa_all(m, mode);
    const std::vector<std::vector<int>> splits = memory_splits(k, nu);

    SpectrumOptions sopts;
    sopts.terms = opts.spectrum_terms;
    sopts.max_event_length = opts.max_event_length;

    std::vector<SearchCandidate> frontier;
    std::atomic<std::int64_t> best_d1{-1};
    std::atomic<std::uint64_t> examined{0}, degenerate{0}, nonconverged{0};
    std::mutex frontier_mutex;

    int resume_split = 0;
    std::uint64_t resume_encoders = 0;
    if (!opts.resume_path.empty()) {
        std::ifstream in(opts.resume_path);
        if (!in) throw error("ods_search: cannot open resume file " + opts.resume_path);
        nlohmann::json j;
        in >> j;
        if (j.at("k") != k || j.at("m") != m || j.at("nu") != nu ||
            j.at("terms") != opts.spectrum_terms)
            throw error("ods_search: resume file does not match this search");
        resume_split = j.at("cursor").at("split_index").get<int>();
        resume_encoders = j.at("cursor").at("encoders_done").get<std::uint64_t>();
        examined = j.at("examined").get<std::uint64_t>();
        degenerate = j.at("degenerate").get<std::uint64_t>();
        nonconverged = j.at("nonconverged").get<std::uint64_t>();
        for (const auto& e : j.at("frontier")) {
            const std::vector<int> split = e.at("split").get<std::vector<int>>();
            SearchCandidate cand{
                EncoderSpec::parse_octal(e.at("encoder").get<std::string>(), m, nu, &split),
                Labeling::parse(e.at("labeling").get<std::string>()),
                detail::spectrum_from_checkpoint(e.at("spectrum")),
                e.at("labeling_index").get<int>(),
                e.at("split_index").get<int>(),
                e.at("encoder_index").get<std::uint64_t>()};
            detail::frontier_update(frontier, std::move(cand));
        }
        if (!frontier.empty()) best_d1 = frontier.front().spectrum.terms.front().d_key;
    }

    auto write_checkpoint = [&](int split_index, std::uint64_t encoders_done) {
        if (opts.checkpoint_path.empty()) return;
        nlohmann::ordered_json j;
        j["k"] = k;
        j["m"] = m;
        j["nu"] = nu;
        j["family"] = family == ConstellationFamily::pam ? "pam" : "psk";
        j["terms"] = opts.spectrum_terms;
        j["cursor"] = {{"split_index", split_index}, {"encoders_done", encoders_done}};
        j["examined"] = examined.load();
        j["degenerate"] = degenerate.load();
        j["nonconverged"] = nonconverged.load();
        j["frontier"] = nlohmann::ordered_json::array();
        for (const SearchCandidate& e : frontier) {
            j["frontier"].push_back({{"labeling", e.labeling.to_string()},
                                     {"encoder", e.spec.to_octal_string()},
                                     {"split", e.spec.memories()},
                                     {"labeling_index", e.labeling_index},
                                     {"split_index", e.split_index},
                                     {"encoder_index", e.encoder_index},
                                     {"spectrum", detail::spectrum_to_checkpoint(e.spectrum)}});
        }
        std::ofstream out(opts.checkpoint_path + ".tmp");
        out << j.dump(1) << "\n";
        out.close();
        std::rename((opts.checkpoint_path + ".tmp").c_str(), opts.checkpoint_path.c_str());
    };

    auto process = [&](const EncoderSpec& spec, int split_index, std::uint64_t encoder_index) {
        const TrellisSection trellis(spec);
        for (int li = 0; li < static_cast<int>(labelings.size()); ++li) {
            examined.fetch_add(1, std::memory_order_relaxed);
            const PairGraph graph(trellis, labelings[li], constellation);
            const std::int64_t d1 = graph.free_distance_key();
            if (d1 >= detail::kInfDistance) {
                degenerate.fetch_add(1, std::memory_order_relaxed);
                continue;
            }
            const std::int64_t leader = best_d1.load(std::memory_order_relaxed);
            if (leader >= 0 && d1 < leader && !same_spectral_distance(d1, leader)) continue;
            DistanceSpectrum ds;
            try {
                ds = graph.spectrum(sopts);
            } catch (const error&) {
                degenerate.fetch_add(1, std::memory_order_relaxed);
                continue;
            }
            if (!ds.converged) {
                nonconverged.fetch_add(1, std::memory_order_relaxed);
                continue;
            }
            SearchCandidate cand{spec, labelings[li], std::move(ds), li, split_index,
                                 encoder_index};
            std::lock_guard<std::mutex> lock(frontier_mutex);
            detail::frontier_update(frontier, std::move(cand));
            if (!frontier.empty()) {
                const std::int64_t fd = frontier.front().spectrum.terms.front().d_key;
                if (fd > best_d1.load(std::memory_order_relaxed)) best_d1 = fd;
            }
        }
    };

    auto last_checkpoint = std::chrono::steady_clock::now();
    for (int si = resume_split; si < static_cast<int>(splits.size()); ++si) {
        EncoderEnumerator en(k, m, splits[si]);
        std::uint64_t gi = 0;
        if (si == resume_split) {
            for (; gi < resume_encoders; ++gi)
                if (!en.next()) break;
        }
        bool exhausted = false;
        while (!exhausted) {
            // one chunk of encoders, crossed with all labelings
            std::vector<std::pair<std::uint64_t, EncoderSpec>> chunk;
            while (chunk.size() < 1024) {
                auto spec = en.next();
                if (!spec) { exhausted = true; break; }
                chunk.emplace_back(gi++, std::move(*spec));
            }
            if (chunk.empty()) break;
            const int workers = std::max(1, opts.workers);
            if (workers == 1 || chunk.size() < 8) {
                for (const auto& [idx, spec] : chunk) process(spec, si, idx);
            } else {
                std::atomic<std::size_t> cursor{0};
                std::vector<std::thread> pool;
                for (int w = 0; w < workers; ++w) {
                    pool.emplace_back([&] {
                        for (;;) {
                            const std::size_t i = cursor.fetch_add(1);
                            if (i >= chunk.size()) return;
                            process(chunk[i].second, si, chunk[i].first);
                        }
                    });
                }
                for (auto& t : pool) t.join();
            }
            const auto now = std::chrono::steady_clock::now();
            if (!opts.checkpoint_path.empty() &&
                std::chrono::duration<double>(now - last_checkpoint).count() >=
                    opts.checkpoint_interval_seconds) {
                write_checkpoint(si, gi);
                last_checkpoint = now;
            }
            if (opts.progress) {
                opts.progress("split " + std::to_string(si + 1) + "/" +
                              std::to_string(splits.size()) + ", encoders " +
                              std::to_string(gi) + ", examined " +
                              std::to_string(examined.load()));
            }
        }
        resume_encoders = 0;
    }

    if (frontier.empty()) throw error("ods_search: empty encoder universe");
    std::sort(frontier.begin(), frontier.end(),
              [](const SearchCandidate& a, const SearchCandidate& b) {
                  return a.order() < b.order();
              });

    SearchResult result;
    result.frontier = frontier;
    result.candidates_examined = examined;
    result.degenerate_rejections = degenerate;
    result.nonconverged_rejections = nonconverged;
    if (frontier.size() == 1) {
        result.verdict = SearchVerdict::ods_found;
        result.best_ab = frontier.front();
    } else {
        result.verdict = SearchVerdict::split_optimum;
        result.best_a = *detail::best_by_metric(frontier, /*bit_metric=*/false);
        result.best_b = *detail::best_by_metric(frontier, /*bit_metric=*/true);
    }
    if (!opts.checkpoint_path.empty())
        write_checkpoint(static_cast<int>(splits.size()), 0);
    result.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return result;
}

}  // namespace tcmkit

#endif
