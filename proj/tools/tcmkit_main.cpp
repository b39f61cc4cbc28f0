// tcmkit command line: labeling class enumeration, labeling factorization,
// distance spectra, union-bound/simulation sweeps, optimum-encoder searches
// and verification against the bundled reference tables.
//
// Subcommands: labelings, factor, spectrum, search, sweep, verify.
// Exit codes: 0 success, 1 usage error, 2 verification mismatch,
// 3 non-convergence.

#include <CLI11.hpp>

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "tcmkit/bounds.hpp"
#include "tcmkit/mflsa.hpp"
#include "tcmkit/reference.hpp"
#include "tcmkit/search.hpp"
#include "tcmkit/simulate.hpp"
#include "tcmkit/version.hpp"

using nlohmann::ordered_json;
using namespace tcmkit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitNotConverged = 3;

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
    return buf;
}

// content fingerprint for the run manifest (FNV-1a, not cryptographic)
std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "unreadable";
    std::uint64_t h = 0xCBF29CE484222325ull;
    char c;
    while (in.get(c)) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001B3ull;
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

// Every file-producing command records how it was invoked; the produced
// files carry a pointer back to the manifest.
class Manifest {
  public:
    Manifest(int argc, char** argv) {
        std::string cmd;
        for (int i = 0; i < argc; ++i) {
            if (i) cmd += ' ';
            cmd += argv[i];
        }
        j_["command"] = cmd;
        j_["tool_version"] = TCMKIT_VERSION;
        j_["started_at"] = iso_timestamp();
        j_["config"] = ordered_json::object();
        j_["inputs"] = ordered_json::object();
    }

    template <typename T>
    void config(const std::string& key, const T& value) {
        j_["config"][key] = value;
    }

    void input(const std::string& path) { j_["inputs"][path] = file_digest(path); }

    // writes <output>.manifest.json and returns its path
    std::string write_for(const std::string& output_path) {
        const std::string path = output_path + ".manifest.json";
        j_["output"] = output_path;
        j_["finished_at"] = iso_timestamp();
        std::ofstream out(path);
        out << j_.dump(1) << "\n";
        return path;
    }

  private:
    ordered_json j_;
};

Constellation parse_constellation(const std::string& name, Manifest& manifest) {
    int points = 0;
    char family[8] = {0};
    if (std::sscanf(name.c_str(), "%d%3s", &points, family) == 2) {
        const std::string f = family;
        if (f == "pam" || f == "PAM") return Constellation::mpam(points);
        if (f == "psk" || f == "PSK") return Constellation::mpsk(points);
    }
    manifest.input(name);
    return Constellation::load(name);
}

Labeling parse_labeling(const std::string& text, int order) {
    if (text == "nbc") return nbc(order);
    if (text == "brgc") return brgc(order);
    return Labeling::parse(text);
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::string cur;
    for (char c : text + ",") {
        if (c == ',') {
            if (!cur.empty()) out.push_back(std::stoi(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

// encoder text plus -m / --nu / --split flags -> spec
EncoderSpec parse_encoder_arg(const std::string& text, int m, int nu,
                              const std::string& split_text) {
    if (!split_text.empty()) {
        const std::vector<int> split = parse_int_list(split_text);
        int total = 0;
        for (int v : split) total += v;
        if (nu >= 0 && nu != total) throw error("encoder: --nu disagrees with --split");
        return EncoderSpec::parse_octal(text, m, total, &split);
    }
    if (nu < 0) {
        // infer the minimal memory from octal widths (exact for canonical taps)
        int total = 0;
        std::string body = text;
        if (!body.empty() && body.front() == '[') body = body.substr(1, body.size() - 2);
        std::istringstream rows(body);
        std::string row;
        while (std::getline(rows, row, ';')) {
            int width = 1;
            std::istringstream cols(row);
            std::string col;
            while (std::getline(cols, col, ',')) {
                const std::uint64_t v = std::stoull(col, nullptr, 8);
                width = std::max(width, v ? 64 - __builtin_clzll(v) : 1);
            }
            total += width - 1;
        }
        nu = total;
    }
    return EncoderSpec::parse_octal(text, m, nu);
}

std::string format_triples(const DistanceSpectrum& ds) {
    std::string s;
    for (const SpectrumTerm& t : ds.terms) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "{%.2f,%.2f,%.2f} ", t.d2(), t.a(), t.b());
        s += buf;
    }
    if (!s.empty()) s.pop_back();
    return s;
}

ordered_json spectrum_json(const DistanceSpectrum& ds) {
    ordered_json j;
    j["truncation"] = ds.truncation;
    j["converged"] = ds.converged;
    if (!ds.converged) j["residual_mass"] = ds.residual_mass;
    j["terms"] = ordered_json::array();
    for (const SpectrumTerm& t : ds.terms) {
        ordered_json term;
        term["d2"] = t.d2();
        term["a"] = t.a();
        term["b"] = t.b();
        term["a_exact"] = t.event_multiplicity.to_string();
        term["b_exact"] = t.bit_multiplicity_times_k.to_string() +
                          (t.inputs > 1 ? "/" + std::to_string(t.inputs) : "");
        j["terms"].push_back(term);
    }
    return j;
}

ordered_json candidate_json(const SearchCandidate& c) {
    ordered_json j;
    j["labeling"] = c.labeling.to_string();
    j["encoder"] = c.spec.to_octal_string();
    j["memory_split"] = c.spec.memories();
    j["spectrum"] = spectrum_json(c.spectrum);
    return j;
}

void write_text_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw error("cannot write " + path);
    out << text;
}

// ---------------------------------------------------------------- labelings
int cmd_labelings(int argc, char** argv, int m, const std::string& mode_text,
                  std::uint64_t limit, const std::string& output) {
    LabelingMode mode = LabelingMode::full;
    if (mode_text == "pam") mode = LabelingMode::pam;
    else if (mode_text == "psk") mode = LabelingMode::psk;
    else if (mode_text != "full") throw error("labelings: unknown mode " + mode_text);
    if (m == 4 && limit == 0)
        throw error("labelings: m=4 streams more than 10^9 classes, set --limit");
    LabelingClassIter it(m, mode);
    std::string text;
    std::uint64_t count = 0;
    while (auto l = it.next()) {
        text += l->to_string();
        text += '\n';
        if (limit && ++count >= limit) break;
    }
    write_text_output(output, text);
    if (!output.empty() && output != "-") {
        // the list format stays pure (one labeling per line); the manifest
        // sits alongside as <output>.manifest.json
        Manifest manifest(argc, argv);
        manifest.config("m", m);
        manifest.config("mode", mode_text);
        manifest.config("limit", limit);
        manifest.write_for(output);
    }
    return kExitOk;
}

// ------------------------------------------------------------------- factor
int cmd_factor(const std::string& labeling_text) {
    const Labeling l = Labeling::parse(labeling_text);
    const RceFactorization f = rce_factorize(l.matrix());
    std::cout << "labeling:  " << l.to_string() << "\n";
    std::cout << "echelon:   " << Labeling(f.echelon).to_string() << "\n";
    std::cout << "transform: " << f.transform.to_binary_string() << "\n";
    return kExitOk;
}

// ----------------------------------------------------------------- spectrum
int cmd_spectrum(int argc, char** argv, const std::string& encoder_text, int m, int nu,
                 const std::string& split_text, const std::string& labeling_text,
                 const std::string& constellation_text, int terms, int max_len, bool as_json,
                 const std::string& output) {
    Manifest manifest(argc, argv);
    const Constellation x = parse_constellation(constellation_text, manifest);
    int order = 0;
    while ((1 << order) < x.size()) ++order;
    if (m == 0) m = order;
    const Labeling l = parse_labeling(labeling_text, m);
    const EncoderSpec spec = parse_encoder_arg(encoder_text, m, nu, split_text);
    manifest.config("encoder", spec.to_octal_string());
    manifest.config("labeling", l.to_string());
    manifest.config("constellation", constellation_text);
    manifest.config("terms", terms);
    manifest.config("max_event_length", max_len);

    SpectrumOptions opts;
    opts.terms = terms;
    opts.max_event_length = max_len;
    const DistanceSpectrum ds = distance_spectrum(TcmEncoder(spec, l, x), opts);

    std::string text;
    if (as_json) {
        ordered_json j;
        j["encoder"] = spec.to_octal_string();
        j["memory_split"] = spec.memories();
        j["labeling"] = l.to_string();
        j["constellation"] = constellation_text;
        j["spectrum"] = spectrum_json(ds);
        if (!output.empty() && output != "-")
            j["manifest"] = output + ".manifest.json";
        text = j.dump(1) + "\n";
    } else {
        char buf[128];
        text = "encoder " + spec.to_octal_string() + ", labeling [" + l.to_string() + "]\n";
        std::snprintf(buf, sizeof buf, "%-10s %-12s %-12s %-20s %s\n", "d2", "A", "B",
                      "A_exact", "B_exact");
        text += buf;
        for (const SpectrumTerm& t : ds.terms) {
            std::snprintf(buf, sizeof buf, "%-10.4f %-12.6f %-12.6f %-20s %s\n", t.d2(), t.a(),
                          t.b(), t.event_multiplicity.to_string().c_str(),
                          (t.bit_multiplicity_times_k.to_string() +
                           (t.inputs > 1 ? "/" + std::to_string(t.inputs) : ""))
                              .c_str());
            text += buf;
        }
        if (!ds.converged) {
            std::snprintf(buf, sizeof buf,
                          "warning: not converged within the event-length cap "
                          "(open mass %.3e)\n",
                          ds.residual_mass);
            text += buf;
        }
    }
    write_text_output(output, text);
    if (!output.empty() && output != "-") manifest.write_for(output);
    return ds.converged ? kExitOk : kExitNotConverged;
}

// ------------------------------------------------------------------- search
int cmd_search(int argc, char** argv, int k, int m, int nu, const std::string& family_text,
               int terms, int max_len, int workers, const std::string& checkpoint,
               double interval, const std::string& resume, const std::string& output,
               bool quiet) {
    Manifest manifest(argc, argv);
    ConstellationFamily family;
    if (family_text == "pam") family = ConstellationFamily::pam;
    else if (family_text == "psk") family = ConstellationFamily::psk;
    else throw error("search: unknown family " + family_text);
    manifest.config("k", k);
    manifest.config("m", m);
    manifest.config("nu", nu);
    manifest.config("family", family_text);
    manifest.config("terms", terms);
    if (!resume.empty()) manifest.input(resume);

    SearchOptions opts;
    opts.spectrum_terms = terms;
    opts.max_event_length = max_len;
    opts.workers = workers;
    opts.checkpoint_path = checkpoint;
    opts.checkpoint_interval_seconds = interval;
    opts.resume_path = resume;
    if (!quiet)
        opts.progress = [](const std::string& line) { std::cerr << "\r" << line << std::flush; };
    const SearchResult r = ods_search(k, m, nu, family, opts);
    if (!quiet) std::cerr << "\n";

    // text table in the published layout
    std::string text;
    {
        char head[160];
        std::snprintf(head, sizeof head, "%-4s %-28s %-22s %s\n", "nu", "labeling", "encoder",
                      "distance spectrum {d2,A,B}");
        text += head;
        auto row = [&](const SearchCandidate& c, const char* marker) {
            std::string lab = "[" + c.labeling.to_string() + "]^" + marker;
            std::string enc = c.spec.to_octal_string() + "^" + marker;
            char buf[512];
            std::snprintf(buf, sizeof buf, "%-4d %-28s %-22s %s\n", nu, lab.c_str(), enc.c_str(),
                          format_triples(c.spectrum).c_str());
            text += buf;
        };
        if (r.verdict == SearchVerdict::ods_found) {
            row(*r.best_ab, "AB");
        } else {
            row(*r.best_a, "A");
            row(*r.best_b, "B");
        }
    }
    std::cout << text;

    if (!output.empty()) {
        ordered_json j;
        j["k"] = k;
        j["m"] = m;
        j["nu"] = nu;
        j["family"] = family_text;
        j["terms"] = terms;
        j["verdict"] = r.verdict == SearchVerdict::ods_found ? "ods_found" : "split_optimum";
        if (r.best_ab) j["best_ab"] = candidate_json(*r.best_ab);
        if (r.best_a) j["best_a"] = candidate_json(*r.best_a);
        if (r.best_b) j["best_b"] = candidate_json(*r.best_b);
        j["frontier_size"] = r.frontier.size();
        j["candidates_examined"] = r.candidates_examined;
        j["degenerate_rejections"] = r.degenerate_rejections;
        j["nonconverged_rejections"] = r.nonconverged_rejections;
        j["runtime_seconds"] = r.runtime_seconds;
        j["manifest"] = output + ".manifest.json";
        std::ofstream out(output);
        if (!out) throw error("cannot write " + output);
        out << j.dump(1) << "\n";
        manifest.write_for(output);
    }
    return kExitOk;
}

// -------------------------------------------------------------------- sweep
int cmd_sweep(int argc, char** argv, const std::string& encoder_text, int m, int nu,
              const std::string& split_text, const std::string& labeling_text,
              const std::string& constellation_text, const std::string& snr_text, int ns,
              int terms, bool run_sim, std::uint64_t seed, std::uint64_t target_fe,
              std::uint64_t max_frames, int workers, const std::string& output) {
    Manifest manifest(argc, argv);
    const Constellation x = parse_constellation(constellation_text, manifest);
    int order = 0;
    while ((1 << order) < x.size()) ++order;
    if (m == 0) m = order;
    const Labeling l = parse_labeling(labeling_text, m);
    const EncoderSpec spec = parse_encoder_arg(encoder_text, m, nu, split_text);
    manifest.config("encoder", spec.to_octal_string());
    manifest.config("labeling", l.to_string());
    manifest.config("constellation", constellation_text);
    manifest.config("snr", snr_text);
    manifest.config("block_length", ns);
    manifest.config("terms", terms);
    manifest.config("simulate", run_sim);
    manifest.config("seed", seed);
    manifest.config("target_frame_errors", target_fe);

    std::vector<double> snrs;
    {
        double a = 0, b = 0, step = 0;
        if (std::sscanf(snr_text.c_str(), "%lf:%lf:%lf", &a, &b, &step) == 3 && step > 0) {
            for (double v = a; v <= b + 1e-9; v += step) snrs.push_back(v);
        } else {
            std::istringstream in(snr_text);
            std::string tok;
            while (std::getline(in, tok, ',')) snrs.push_back(std::stod(tok));
        }
        if (snrs.empty()) throw error("sweep: empty SNR range");
    }

    const TcmEncoder enc(spec, l, x);
    const DistanceSpectrum ds = distance_spectrum(enc, {terms, 64, false});
    if (!ds.converged) return kExitNotConverged;

    std::string text;
    if (!output.empty() && output != "-")
        text += "# manifest: " + output + ".manifest.json\n";
    text += "esn0_db,ber_bound,fer_bound,ber_sim,ber_ci,fer_sim,fer_ci,frames\n";
    for (double db : snrs) {
        const ChannelConfig ch = ChannelConfig::from_db(db, ns);
        char buf[256];
        std::snprintf(buf, sizeof buf, "%.3f,%.6e,%.6e", db, ber_bound(ds, ch),
                      fer_bound(ds, ch));
        text += buf;
        if (run_sim) {
            SimConfig cfg;
            cfg.seed = seed;
            cfg.target_frame_errors = target_fe;
            cfg.max_frames = max_frames;
            cfg.workers = workers;
            const ErrorRates r = simulate(enc, ch, cfg);
            std::snprintf(buf, sizeof buf, ",%.6e,%.6e,%.6e,%.6e,%" PRIu64, r.ber, r.ber_ci,
                          r.fer, r.fer_ci, r.frames);
            text += buf;
        } else {
            text += ",,,,,";
        }
        text += '\n';
    }
    write_text_output(output, text);
    if (!output.empty() && output != "-") manifest.write_for(output);
    return kExitOk;
}

// ------------------------------------------------------------------- verify
int cmd_verify(const std::string& table_path, bool search_mode, int only_nu, int max_nu,
               int workers) {
    const ReferenceTable table = load_reference_table(table_path);
    bool all_ok = true;
    int checked = 0;

    if (!search_mode) {
        for (const ReferenceRow& row : table.rows) {
            if (only_nu >= 0 && row.nu != only_nu) continue;
            if (max_nu >= 0 && row.nu > max_nu) continue;
            const VerifyReport rep =
                verify_spectrum_row(table, row, std::max(64, 16 * (1 << row.nu)));
            ++checked;
            std::printf("%s  nu=%d %-22s %s\n", rep.ok ? "OK  " : "FAIL", row.nu,
                        row.encoder.c_str(), row.marker.c_str());
            for (const std::string& d : rep.diffs) std::printf("      %s\n", d.c_str());
            all_ok &= rep.ok;
        }
    } else {
        std::vector<int> nus;
        for (const ReferenceRow& row : table.rows) {
            if (row.ungerboeck_only()) continue;
            if (only_nu >= 0 && row.nu != only_nu) continue;
            if (max_nu >= 0 && row.nu > max_nu) continue;
            if (std::find(nus.begin(), nus.end(), row.nu) == nus.end()) nus.push_back(row.nu);
        }
        for (int nu : nus) {
            SearchOptions opts;
            opts.workers = workers;
            const SearchResult r = ods_search(table.k, table.m, nu, table.family, opts);
            for (const ReferenceRow& row : table.rows) {
                if (row.nu != nu || row.ungerboeck_only()) continue;
                const VerifyReport rep = verify_against_reference(r, table, row);
                ++checked;
                std::printf("%s  nu=%d %-22s %s\n", rep.ok ? "OK  " : "FAIL", row.nu,
                            row.encoder.c_str(), row.marker.c_str());
                for (const std::string& d : rep.diffs) std::printf("      %s\n", d.c_str());
                all_ok &= rep.ok;
            }
        }
    }
    if (checked == 0) {
        std::printf("no rows selected\n");
        return kExitUsage;
    }
    return all_ok ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"TCM encoder/labeling design toolkit"};
    app.set_version_flag("--version", TCMKIT_VERSION);
    app.set_config("--config", "", "read defaults from an INI/TOML file");
    app.require_subcommand(1);

    // labelings
    auto* lab = app.add_subcommand("labelings", "enumerate labeling class representatives");
    int lab_m = 3;
    std::string lab_mode = "full", lab_out;
    std::uint64_t lab_limit = 0;
    lab->add_option("-m,--order", lab_m, "label bits per symbol (2..4)");
    lab->add_option("--mode", lab_mode, "full, pam or psk")
        ->check(CLI::IsMember({"full", "pam", "psk"}));
    lab->add_option("--limit", lab_limit, "stop after this many labelings");
    lab->add_option("-o,--output", lab_out, "write to file instead of stdout");

    // factor
    auto* fac = app.add_subcommand("factor", "factor a labeling into class representative "
                                             "and transform");
    std::string fac_labeling;
    fac->add_option("labeling", fac_labeling, "labeling in integer notation, quoted")
        ->required();

    // spectrum
    auto* spc = app.add_subcommand("spectrum", "exact truncated distance spectrum");
    std::string spc_enc, spc_lab = "nbc", spc_con, spc_split, spc_out;
    int spc_m = 0, spc_nu = -1, spc_terms = 5, spc_lmax = 64;
    bool spc_json = false;
    spc->add_option("-g,--encoder", spc_enc, "encoder in octal bracket form, e.g. [13,4]")
        ->required();
    spc->add_option("-x,--constellation", spc_con, "4pam/8pam/16pam/4psk/8psk/16psk or a file")
        ->required();
    spc->add_option("-l,--labeling", spc_lab, "nbc, brgc or integer notation");
    spc->add_option("--nu", spc_nu, "total encoder memory (default: inferred)");
    spc->add_option("--split", spc_split, "per-input memories, e.g. 0,2");
    spc->add_option("-m,--order", spc_m, "label bits (default: from constellation)");
    spc->add_option("-K,--terms", spc_terms, "spectrum truncation");
    spc->add_option("--max-event-length", spc_lmax, "event length cap");
    spc->add_flag("--json", spc_json, "machine-readable output");
    spc->add_option("-o,--output", spc_out, "write to file instead of stdout");

    // search
    auto* sea = app.add_subcommand("search", "exhaustive optimum-spectrum search");
    int sea_k = 1, sea_m = 2, sea_nu = 1, sea_terms = 5, sea_lmax = 64, sea_workers = 1;
    std::string sea_family = "pam", sea_checkpoint, sea_resume, sea_out;
    double sea_interval = 60.0;
    bool sea_quiet = false;
    sea->add_option("-k,--inputs", sea_k, "information bits per symbol")->required();
    sea->add_option("-m,--order", sea_m, "label bits per symbol")->required();
    sea->add_option("--nu", sea_nu, "total encoder memory")->required();
    sea->add_option("--family", sea_family, "pam or psk")
        ->check(CLI::IsMember({"pam", "psk"}));
    sea->add_option("-K,--terms", sea_terms, "spectrum truncation for ranking");
    sea->add_option("--max-event-length", sea_lmax, "event length cap");
    sea->add_option("--workers", sea_workers, "worker threads");
    sea->add_option("--checkpoint", sea_checkpoint, "checkpoint file, written periodically");
    sea->add_option("--checkpoint-interval", sea_interval, "seconds between checkpoints");
    sea->add_option("--resume", sea_resume, "resume from a checkpoint file");
    sea->add_option("-o,--output", sea_out, "write the result as JSON");
    sea->add_flag("-q,--quiet", sea_quiet, "suppress progress output");

    // sweep
    auto* swp = app.add_subcommand("sweep", "bound and simulation sweep over SNR");
    std::string swp_enc, swp_lab = "nbc", swp_con, swp_split, swp_snr = "6:14:1", swp_out;
    int swp_m = 0, swp_nu = -1, swp_ns = 1000, swp_terms = 20, swp_workers = 1;
    bool swp_sim = false;
    std::uint64_t swp_seed = 1, swp_fe = 100, swp_maxframes = 2'000'000;
    swp->add_option("-g,--encoder", swp_enc, "encoder in octal bracket form")->required();
    swp->add_option("-x,--constellation", swp_con, "constellation name or file")->required();
    swp->add_option("-l,--labeling", swp_lab, "nbc, brgc or integer notation");
    swp->add_option("--nu", swp_nu, "total encoder memory (default: inferred)");
    swp->add_option("--split", swp_split, "per-input memories, e.g. 0,2");
    swp->add_option("-m,--order", swp_m, "label bits (default: from constellation)");
    swp->add_option("--snr", swp_snr, "Es/N0 range in dB, start:stop:step or a,b,c list");
    swp->add_option("--ns", swp_ns, "block length in symbols");
    swp->add_option("-K,--terms", swp_terms, "bound truncation");
    swp->add_flag("--simulate", swp_sim, "run the Monte-Carlo simulation at each point");
    swp->add_option("--seed", swp_seed, "simulation seed");
    swp->add_option("--target-frame-errors", swp_fe, "stop after this many frame errors");
    swp->add_option("--max-frames", swp_maxframes, "hard frame cap per point");
    swp->add_option("--workers", swp_workers, "worker threads");
    swp->add_option("-o,--output", swp_out, "write CSV to file instead of stdout");

    // verify
    auto* ver = app.add_subcommand("verify", "check results against a bundled reference table");
    std::string ver_table;
    bool ver_search = false;
    int ver_nu = -1, ver_maxnu = -1, ver_workers = 1;
    ver->add_option("--table", ver_table, "reference table JSON")->required();
    ver->add_flag("--search", ver_search, "re-run the search per memory (slow) instead of "
                                          "re-computing row spectra");
    ver->add_option("--nu", ver_nu, "verify only rows with this memory");
    ver->add_option("--max-nu", ver_maxnu, "skip rows above this memory");
    ver->add_option("--workers", ver_workers, "worker threads for search verification");

    CLI11_PARSE(app, argc, argv);

    try {
        if (lab->parsed()) return cmd_labelings(argc, argv, lab_m, lab_mode, lab_limit, lab_out);
        if (fac->parsed()) return cmd_factor(fac_labeling);
        if (spc->parsed())
            return cmd_spectrum(argc, argv, spc_enc, spc_m, spc_nu, spc_split, spc_lab, spc_con,
                                spc_terms, spc_lmax, spc_json, spc_out);
        if (sea->parsed())
            return cmd_search(argc, argv, sea_k, sea_m, sea_nu, sea_family, sea_terms, sea_lmax,
                              sea_workers, sea_checkpoint, sea_interval, sea_resume, sea_out,
                              sea_quiet);
        if (swp->parsed())
            return cmd_sweep(argc, argv, swp_enc, swp_m, swp_nu, swp_split, swp_lab, swp_con,
                             swp_snr, swp_ns, swp_terms, swp_sim, swp_seed, swp_fe,
                             swp_maxframes, swp_workers, swp_out);
        if (ver->parsed())
            return cmd_verify(ver_table, ver_search, ver_nu, ver_maxnu, ver_workers);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
