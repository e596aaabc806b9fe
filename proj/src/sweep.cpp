#include "bentforge/sweep.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "bentforge/crc32.hpp"
#include "bentforge/polar.hpp"
#include "bentforge/sums.hpp"
#include "bentforge/walsh.hpp"

namespace bentforge {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;
constexpr size_t kCommitEvery = 8;  // tasks between checkpoint commits

std::string with_crc(json record) {
    std::string body = record.dump();
    char buf[16];
    std::snprintf(buf, sizeof buf, "%08x", crc32(body));
    record["crc"] = buf;
    return record.dump();
}

json parse_checked(const std::string& line) {
    json rec = json::parse(line);
    if (!rec.contains("crc")) throw std::runtime_error("checkpoint record missing crc");
    std::string stored = rec["crc"];
    rec.erase("crc");
    char buf[16];
    std::snprintf(buf, sizeof buf, "%08x", crc32(rec.dump()));
    if (stored != buf) throw std::runtime_error("checkpoint record failed crc check (corrupt)");
    return rec;
}

void atomic_write(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

struct BlockResult {
    std::vector<std::string> lines;
    SweepSummary stats;  // per-block contributions
};

// Context shared by every block of one campaign.
struct Campaign {
    const SweepConfig& cfg;
    const FieldContext& ctx;
    int m1;
    std::vector<std::pair<uint64_t, int>> tasks;  // (a exponent, class size)
};

std::vector<std::pair<uint64_t, int>> expand_tasks(const SweepConfig& cfg,
                                                   const FieldContext& ctx) {
    int m1 = ctx.tower_degree(1);
    uint64_t n = (1ull << m1) - 1;
    std::vector<std::pair<uint64_t, int>> tasks;
    auto orbit_size = [&](uint64_t e) {
        int size = 1;
        uint64_t x = 2 * e % n;
        while (x != e) {
            x = 2 * x % n;
            ++size;
        }
        return size;
    };
    switch (cfg.a_selection) {
        case SweepConfig::ASelection::AllClasses:
            for (const CyclotomicClass& cc : cyclotomic_representatives(ctx, m1))
                tasks.emplace_back(cc.rep_exponent, cc.size);
            break;
        case SweepConfig::ASelection::ExplicitList:
            for (uint64_t e : cfg.a_list) tasks.emplace_back(e % n, orbit_size(e % n));
            break;
        case SweepConfig::ASelection::IndexRange:
            if (cfg.a_range_end <= cfg.a_range_begin)
                throw std::invalid_argument("empty coefficient index range");
            for (uint64_t e = cfg.a_range_begin; e < cfg.a_range_end; ++e)
                tasks.emplace_back(e % n, orbit_size(e % n));
            break;
    }
    return tasks;
}

int gamma_code(Gf4Element g) {
    if (g == Gf4Element::one()) return 0;
    if (g == Gf4Element::omega()) return 1;
    return 2;
}

Gf4Element gamma_from_code(int gc) {
    if (gc == 0) return Gf4Element::one();
    return gc == 1 ? Gf4Element::omega() : Gf4Element::omega2();
}

// ---- conjecture2 blocks ----------------------------------------------

BlockResult conjecture_block(const Campaign& run, size_t task_index) {
    const FieldContext& c = run.ctx;
    const SweepConfig& cfg = run.cfg;
    int m1 = run.m1;
    int m2 = c.tower_degree(2);
    auto [a_exp, class_size] = run.tasks[task_index];
    uint64_t a = c.pow(c.subfield_generator(m1), a_exp);

    BlockResult out;
    int64_t kloo = kloosterman(c, a, m1);
    int kmod3 = static_cast<int>((kloo % 3 + 3) % 3);
    bool eligible = (kmod3 == 1);
    BinomialFunction f_one(c, a, Gf4Element::one());

    json cls = {{"type", "class"},
                {"a_index", a_exp},
                {"a", element_to_hex(a)},
                {"class_size", class_size},
                {"k", kloo},
                {"k_mod3", kmod3},
                {"eligible", eligible},
                {"w0", walsh_zero_closed(f_one)}};
    out.lines.push_back(with_crc(cls));

    auto u1 = unit_group(c, 1);
    uint64_t half = (u1.size() - 1) / 2;
    uint64_t g_u2 = c.unit_generator(2);
    Gf4Element zeta = cubic_char(c, g_u2, m1);
    // w2 representative whose half-field character is each GF(4)* value
    uint64_t w2_for_chi[3];
    {
        uint64_t w2 = 1;
        Gf4Element z = Gf4Element::one();
        for (int t = 0; t < 3; ++t) {
            w2_for_chi[gamma_code(z)] = w2;
            w2 = c.mul(w2, g_u2);
            z = z * zeta;
        }
    }

    // pair selection
    std::vector<std::pair<uint64_t, int>> selected;  // (w1 index, gamma code)
    {
        std::mt19937_64 sample_rng(cfg.seed * 0x9e3779b97f4a7c15ull + a_exp);
        for (uint64_t j = 0; j <= half; ++j) {
            if (cfg.omega_selection == SweepConfig::OmegaSelection::SubfieldOnly && j != 0)
                continue;
            for (int gc = 0; gc < 3; ++gc) {
                if (cfg.omega_selection == SweepConfig::OmegaSelection::Sample &&
                    static_cast<int>(sample_rng() % 1000) >= cfg.sample_permille)
                    continue;
                selected.emplace_back(j, gc);
            }
        }
    }

    // the residual sum depends on omega only through (w1, gamma), so one
    // evaluation per selected pair is shared across all b; the circle
    // evaluator is the production path, the full enumeration the oracle
    // exercised by the spot checks below
    std::map<std::pair<uint64_t, int>, int64_t> gauss;
    for (auto [j, gc] : selected) {
        uint64_t omega = c.mul(u1[j], w2_for_chi[gc]);
        gauss[{j, gc}] = residual_gauss_sum_circle(f_one, omega);
    }

    int64_t omega_multiplicity_base =
        static_cast<int64_t>(c.subgroup_order(2) / 3) * ((int64_t{1} << m2) - 1);

    bool full_coverage = (cfg.omega_selection == SweepConfig::OmegaSelection::AllNonzero);
    for (Gf4Element b : cfg.b_selection) {
        int64_t counts[3] = {0, 0, 0};
        int64_t unit_char_sum = 0;
        bool all_consistent = true;
        for (auto [j, gc] : selected) {
            Gf4Element gamma = gamma_from_code(gc);
            // omega representative matching both this gamma and this b
            Gf4Element chi_needed = gamma * b.inverse();
            uint64_t omega = c.mul(u1[j], w2_for_chi[gamma_code(chi_needed)]);
            int64_t s2 = gauss[{j, gc}];
            int64_t weight = (j == 0) ? 1 : 2;
            int64_t walsh = walsh_from_gauss_sum(f_one, omega, s2, kloo);

            json rec = {{"type", "fit"},
                        {"a_index", a_exp},
                        {"b", b.to_string()},
                        {"w1_index", j},
                        {"gamma", gamma.to_string()},
                        {"omega", element_to_hex(omega)},
                        {"s2", s2},
                        {"w", walsh},
                        {"multiplicity", weight * omega_multiplicity_base},
                        {"hypothesis", eligible ? "in" : "out"}};
            if (eligible) {
                ConjectureFit fit = conjecture_check(BinomialFunction(c, a, b), omega, kloo, s2);
                rec["h"] = fit.h_bit;
                rec["dillon"] = fit.dillon_bit;
                rec["consistent"] = fit.consistent;
                ++out.stats.fits_checked;
                if (!fit.consistent) {
                    ++out.stats.inconsistencies;
                    all_consistent = false;
                } else {
                    int bit = fit.h_bit ^ fit.dillon_bit;
                    if (bit == 0) counts[gc] += weight;
                    unit_char_sum += weight * (bit ? -1 : 1);
                }
            } else {
                ++out.stats.out_of_hypothesis;
            }
            out.lines.push_back(with_crc(rec));
        }

        if (eligible && full_coverage) {
            bool div_ok = ((kloo - 4) % 6 == 0);
            int64_t expected_one = (int64_t{1} << (m1 - 1)) + 5 * (kloo - 4) / 6 + 3;
            int64_t expected_other = (int64_t{1} << (m1 - 1)) - (kloo - 4) / 6;
            int64_t char_sum = unit_char_sum * omega_multiplicity_base;
            int64_t w0_minus_1 = walsh_zero_closed(f_one) - 1;
            bool ok = all_consistent && div_ok && counts[0] == expected_one &&
                      counts[1] == expected_other && counts[2] == expected_other &&
                      char_sum == w0_minus_1;
            json prec = {{"type", "parseval"},
                         {"a_index", a_exp},
                         {"b", b.to_string()},
                         {"counts", {counts[0], counts[1], counts[2]}},
                         {"expected", {expected_one, expected_other}},
                         {"char_sum", char_sum},
                         {"w0_minus_1", w0_minus_1},
                         {"divisibility_ok", div_ok},
                         {"ok", ok}};
            if (!ok) ++out.stats.parseval_failures;
            out.lines.push_back(with_crc(prec));
        }
    }

    // soundness spot checks (console statistics only, never persisted):
    // recompute a sample of residual sums at equivalent omegas, and
    // revalidate the class reduction at a non-representative member
    std::mt19937_64 spot_rng(cfg.seed * 0x2545f4914f6cdd1dull + a_exp + 1);
    uint64_t g_odd = c.subfield_generator(c.tower_degree(c.nu()));
    uint64_t odd_order = (1ull << c.tower_degree(c.nu())) - 1;
    for (auto [j, gc] : selected) {
        if (spot_rng() % 100 != 0) continue;
        ++out.stats.spot_checks;
        uint64_t w1 = (spot_rng() & 1) ? c.inv(u1[j]) : u1[j];
        uint64_t w2 = c.mul(w2_for_chi[gc], c.pow(g_u2, 3 * (spot_rng() % 3)));
        uint64_t y = c.pow(g_odd, spot_rng() % odd_order);
        uint64_t omega_alt = c.mul(c.mul(w1, w2), y);
        if (residual_gauss_sum(f_one, omega_alt) != gauss[{j, gc}])
            ++out.stats.spot_check_failures;
    }
    if (class_size > 1 && spot_rng() % 100 < 10) {
        ++out.stats.spot_checks;
        int r = 1 + static_cast<int>(spot_rng() % (class_size - 1));
        uint64_t a_other = a;
        for (int i = 0; i < r; ++i) a_other = c.sqr(a_other);
        bool ok = (kloosterman(c, a_other, m1) == kloo);
        if (ok && eligible && !selected.empty()) {
            auto [j, gc] = selected[spot_rng() % selected.size()];
            uint64_t omega = c.mul(u1[j], w2_for_chi[gc]);
            ok = conjecture_check(BinomialFunction(c, a_other, Gf4Element::one()), omega, kloo)
                     .consistent;
        }
        if (!ok) ++out.stats.spot_check_failures;
    }

    out.lines.push_back(with_crc(json{{"type", "done"}, {"a_index", a_exp}}));
    return out;
}

// ---- bent-agreement blocks ----------------------------------------------

BlockResult bent_block(const Campaign& run, size_t task_index) {
    const FieldContext& c = run.ctx;
    auto [a_exp, class_size] = run.tasks[task_index];
    uint64_t a = c.pow(c.subfield_generator(run.m1), a_exp);
    BlockResult out;
    int64_t kloo = kloosterman(c, a, run.m1);
    out.lines.push_back(with_crc(json{{"type", "class"},
                                      {"a_index", a_exp},
                                      {"a", element_to_hex(a)},
                                      {"class_size", class_size},
                                      {"k", kloo},
                                      {"k_mod3", (kloo % 3 + 3) % 3},
                                      {"eligible", (kloo % 3 + 3) % 3 == 1}}));
    for (Gf4Element b : run.cfg.b_selection) {
        BinomialFunction f(c, a, b);
        BentCertificate cert = bent_certify(f, true);
        bool spectrum_bent = cert.bent_by_spectrum.value();
        if (!cert.agreement) ++out.stats.disagreements;
        out.lines.push_back(with_crc(json{{"type", "bent"},
                                          {"a_index", a_exp},
                                          {"b", b.to_string()},
                                          {"k", kloo},
                                          {"bent_k", cert.bent_by_kloosterman},
                                          {"bent_spectrum", spectrum_bent},
                                          {"agree", cert.agreement}}));
    }
    out.lines.push_back(with_crc(json{{"type", "done"}, {"a_index", a_exp}}));
    return out;
}

// ---- closed-vs-brute blocks ----------------------------------------------

BlockResult closed_vs_brute_block(const Campaign& run, size_t task_index) {
    const FieldContext& c = run.ctx;
    const SweepConfig& cfg = run.cfg;
    auto [a_exp, class_size] = run.tasks[task_index];
    uint64_t a = c.pow(c.subfield_generator(run.m1), a_exp);
    BlockResult out;
    int64_t kloo = kloosterman(c, a, run.m1);
    out.lines.push_back(with_crc(json{{"type", "class"},
                                      {"a_index", a_exp},
                                      {"a", element_to_hex(a)},
                                      {"class_size", class_size},
                                      {"k", kloo},
                                      {"k_mod3", (kloo % 3 + 3) % 3},
                                      {"eligible", (kloo % 3 + 3) % 3 == 1}}));

    std::vector<uint64_t> omegas;
    {
        std::mt19937_64 sample_rng(cfg.seed * 0x9e3779b97f4a7c15ull + a_exp);
        for (uint64_t w = 0; w <= c.mask(); ++w) {
            if (cfg.omega_selection == SweepConfig::OmegaSelection::SubfieldOnly &&
                !c.in_subfield(w, run.m1))
                continue;
            if (cfg.omega_selection == SweepConfig::OmegaSelection::Sample && w != 0 &&
                static_cast<int>(sample_rng() % 1000) >= cfg.sample_permille)
                continue;
            omegas.push_back(w);
        }
    }

    for (Gf4Element b : cfg.b_selection) {
        BinomialFunction f(c, a, b);
        WalshSpectrum sp = walsh_spectrum(f);
        uint64_t mismatch = 0;
        for (uint64_t w : omegas) {
            int64_t closed;
            if (c.nu() == 1) {
                closed = walsh_closed_odd(f, w);
            } else if (w == 0) {
                closed = walsh_zero_closed(f);
            } else {
                int64_t s = residual_gauss_sum(f, w);
                closed = walsh_from_gauss_sum(f, w, s, kloo);
                if (c.nu() == 2 && c.in_subfield(w, run.m1) &&
                    residual_gauss_subfield_closed(f, w) != s)
                    ++mismatch;
            }
            if (closed != sp.at(w)) ++mismatch;
        }
        out.stats.mismatches += mismatch;
        out.lines.push_back(with_crc(json{{"type", "cvb"},
                                          {"a_index", a_exp},
                                          {"b", b.to_string()},
                                          {"omegas_checked", omegas.size()},
                                          {"mismatches", mismatch}}));
    }
    out.lines.push_back(with_crc(json{{"type", "done"}, {"a_index", a_exp}}));
    return out;
}

BlockResult compute_block(const Campaign& run, size_t task_index) {
    switch (run.cfg.mode) {
        case SweepMode::Conjecture2: return conjecture_block(run, task_index);
        case SweepMode::BentAgreement: return bent_block(run, task_index);
        case SweepMode::ClosedVsBrute: return closed_vs_brute_block(run, task_index);
    }
    throw std::logic_error("unreachable");
}

void merge_stats(SweepSummary& total, const SweepSummary& part) {
    total.fits_checked += part.fits_checked;
    total.inconsistencies += part.inconsistencies;
    total.parseval_failures += part.parseval_failures;
    total.disagreements += part.disagreements;
    total.mismatches += part.mismatches;
    total.out_of_hypothesis += part.out_of_hypothesis;
    total.spot_checks += part.spot_checks;
    total.spot_check_failures += part.spot_check_failures;
}

// Re-derive record-borne statistics from already-checkpointed blocks so a
// resumed run reports the same totals as an uninterrupted one.
void stats_from_record(const json& rec, SweepSummary& stats) {
    const std::string type = rec["type"];
    if (type == "fit") {
        if (rec["hypothesis"] == "in") {
            ++stats.fits_checked;
            if (!rec["consistent"].get<bool>()) ++stats.inconsistencies;
        } else {
            ++stats.out_of_hypothesis;
        }
    } else if (type == "parseval") {
        if (!rec["ok"].get<bool>()) ++stats.parseval_failures;
    } else if (type == "bent") {
        if (!rec["agree"].get<bool>()) ++stats.disagreements;
    } else if (type == "cvb") {
        stats.mismatches += rec["mismatches"].get<uint64_t>();
    }
}

void validate(const SweepConfig& cfg, const FieldContext& ctx) {
    if (cfg.mode == SweepMode::Conjecture2 && ctx.nu() != 2)
        throw std::invalid_argument("conjecture sweeps need a degree of the form 4 * odd");
    if (cfg.mode != SweepMode::Conjecture2 && ctx.degree() > 28)
        throw std::invalid_argument("spectrum-based sweeps are limited to degree 28");
    if (cfg.b_selection.empty()) throw std::invalid_argument("empty b selection");
    for (Gf4Element b : cfg.b_selection)
        if (b.is_zero()) throw std::invalid_argument("b must be nonzero");
    if (cfg.omega_selection == SweepConfig::OmegaSelection::Sample &&
        (cfg.sample_permille < 1 || cfg.sample_permille > 1000))
        throw std::invalid_argument("sample rate must be 1..1000 permille");
    if (cfg.checkpoint_path.empty() || cfg.output_path.empty())
        throw std::invalid_argument("checkpoint and output paths are required");
}

SweepSummary run_campaign(const SweepConfig& cfg, std::vector<std::string> prior_lines,
                          std::set<uint64_t> done_exponents) {
    auto t0 = std::chrono::steady_clock::now();
    FieldContext ctx(cfg.m0);
    validate(cfg, ctx);
    Campaign run{cfg, ctx, ctx.tower_degree(1), expand_tasks(cfg, ctx)};

    SweepSummary total;
    total.tasks_total = run.tasks.size();

    std::string header;
    {
        json h = {{"type", "header"},
                  {"version", kFormatVersion},
                  {"config", json::parse(cfg.canonical_json())},
                  {"hash", cfg.config_hash()}};
        header = with_crc(h);
    }

    std::vector<std::string> lines;
    if (prior_lines.empty()) {
        lines.push_back(header);
    } else {
        lines = std::move(prior_lines);
        for (size_t i = 1; i < lines.size(); ++i) stats_from_record(parse_checked(lines[i]), total);
    }

    std::vector<size_t> to_run;
    for (size_t i = 0; i < run.tasks.size(); ++i)
        if (!done_exponents.count(run.tasks[i].first)) to_run.push_back(i);
    total.tasks_skipped = run.tasks.size() - to_run.size();

    uint64_t budget = cfg.limit_tasks ? cfg.limit_tasks : to_run.size();
    if (budget < to_run.size()) {
        to_run.resize(budget);
        total.completed = false;
    }

    // task-parallel computation, single writer committing in task order
    size_t n = to_run.size();
    std::atomic<size_t> next{0};
    std::mutex mu;
    std::condition_variable cv;
    std::map<size_t, BlockResult> ready;
    std::exception_ptr failure = nullptr;

    int nworkers = cfg.worker_count > 0
                       ? cfg.worker_count
                       : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    nworkers = static_cast<int>(std::min<size_t>(nworkers, std::max<size_t>(n, 1)));

    auto worker = [&] {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                BlockResult r = compute_block(run, to_run[i]);
                std::lock_guard<std::mutex> lock(mu);
                ready.emplace(i, std::move(r));
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!failure) failure = std::current_exception();
            }
            cv.notify_all();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    for (int i = 0; i < nworkers; ++i) pool.emplace_back(worker);

    auto commit = [&] {
        std::string content;
        for (const std::string& l : lines) {
            content += l;
            content += '\n';
        }
        atomic_write(cfg.checkpoint_path, content);
    };

    size_t since_commit = 0;
    for (size_t i = 0; i < n; ++i) {
        BlockResult block;
        {
            std::unique_lock<std::mutex> lock(mu);
            cv.wait(lock, [&] { return failure || ready.count(i); });
            if (failure) break;
            block = std::move(ready.at(i));
            ready.erase(i);
        }
        for (std::string& l : block.lines) lines.push_back(std::move(l));
        merge_stats(total, block.stats);
        ++total.tasks_completed;
        if (++since_commit >= kCommitEvery) {
            commit();
            since_commit = 0;
        }
        if (total.tasks_completed % 16 == 0)
            std::fprintf(stderr, "progress: %llu/%zu tasks\n",
                         static_cast<unsigned long long>(total.tasks_completed +
                                                         total.tasks_skipped),
                         run.tasks.size());
    }
    for (std::thread& t : pool) t.join();
    if (failure) {
        commit();
        std::rethrow_exception(failure);
    }
    commit();

    if (total.completed) {
        json summary = {{"type", "summary"},
                        {"tasks", total.tasks_total},
                        {"fits_checked", total.fits_checked},
                        {"inconsistencies", total.inconsistencies},
                        {"parseval_failures", total.parseval_failures},
                        {"disagreements", total.disagreements},
                        {"mismatches", total.mismatches},
                        {"out_of_hypothesis", total.out_of_hypothesis},
                        {"clean", total.inconsistencies == 0 && total.parseval_failures == 0 &&
                                      total.disagreements == 0 && total.mismatches == 0}};
        std::string content;
        for (const std::string& l : lines) {
            content += l;
            content += '\n';
        }
        content += with_crc(summary);
        content += '\n';
        atomic_write(cfg.output_path, content);
        total.records_written = lines.size() + 1;
    }
    total.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return total;
}

}  // namespace

std::vector<CyclotomicClass> cyclotomic_representatives(const FieldContext& ctx, int m1) {
    if (ctx.degree() % m1 != 0) throw std::invalid_argument("level must divide the degree");
    uint64_t n = (1ull << m1) - 1;
    std::vector<CyclotomicClass> classes;
    for (uint64_t e = 0; e < n; ++e) {
        uint64_t x = 2 * e % n;
        int size = 1;
        bool smallest = true;
        while (x != e) {
            if (x < e) {
                smallest = false;
                break;
            }
            x = 2 * x % n;
            ++size;
        }
        if (smallest) classes.push_back({e, size});
    }
    return classes;
}

std::string to_string(SweepMode mode) {
    switch (mode) {
        case SweepMode::Conjecture2: return "conjecture2";
        case SweepMode::BentAgreement: return "bent-agreement";
        case SweepMode::ClosedVsBrute: return "closed-vs-brute";
    }
    throw std::logic_error("unreachable");
}

SweepMode sweep_mode_from_string(const std::string& s) {
    if (s == "conjecture2") return SweepMode::Conjecture2;
    if (s == "bent-agreement") return SweepMode::BentAgreement;
    if (s == "closed-vs-brute") return SweepMode::ClosedVsBrute;
    throw std::invalid_argument("unknown sweep mode: " + s);
}

std::string SweepConfig::canonical_json() const {
    json b_names = json::array();
    for (Gf4Element b : b_selection) b_names.push_back(b.to_string());
    json j = {{"m0", m0},
              {"mode", bentforge::to_string(mode)},
              {"b", b_names},
              {"seed", seed}};
    switch (a_selection) {
        case ASelection::AllClasses: j["a"] = "classes"; break;
        case ASelection::ExplicitList: j["a"] = a_list; break;
        case ASelection::IndexRange:
            j["a"] = {{"begin", a_range_begin}, {"end", a_range_end}};
            break;
    }
    switch (omega_selection) {
        case OmegaSelection::AllNonzero: j["omega"] = "all"; break;
        case OmegaSelection::SubfieldOnly: j["omega"] = "subfield"; break;
        case OmegaSelection::Sample: j["omega"] = {{"sample_permille", sample_permille}}; break;
    }
    return j.dump();
}

std::string SweepConfig::config_hash() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%08x", crc32(canonical_json()));
    return buf;
}

SweepSummary run_sweep(const SweepConfig& config) {
    std::vector<std::string> prior;
    std::set<uint64_t> done;
    if (std::filesystem::exists(config.checkpoint_path)) {
        // behave like a resume when a matching checkpoint is already there
        std::ifstream in(config.checkpoint_path);
        std::string line;
        std::vector<std::string> raw;
        while (std::getline(in, line))
            if (!line.empty()) raw.push_back(line);
        if (!raw.empty()) {
            json header = parse_checked(raw[0]);
            if (header["hash"] != config.config_hash())
                throw std::runtime_error(
                    "checkpoint was written by a different config (hash mismatch)");
            // keep only whole blocks, in order
            prior.push_back(raw[0]);
            std::vector<std::string> pending;
            for (size_t i = 1; i < raw.size(); ++i) {
                json rec = parse_checked(raw[i]);
                pending.push_back(raw[i]);
                if (rec["type"] == "done") {
                    done.insert(rec["a_index"].get<uint64_t>());
                    for (std::string& l : pending) prior.push_back(std::move(l));
                    pending.clear();
                }
            }
        }
    }
    return run_campaign(config, std::move(prior), std::move(done));
}

SweepSummary resume_sweep(const std::string& checkpoint_path, const std::string& output_path,
                          int worker_count) {
    std::ifstream in(checkpoint_path);
    if (!in) throw std::runtime_error("checkpoint not found: " + checkpoint_path);
    std::string line;
    std::getline(in, line);
    json header = parse_checked(line);
    if (header["type"] != "header") throw std::runtime_error("not a sweep checkpoint");

    json cj = header["config"];
    SweepConfig cfg;
    cfg.m0 = cj["m0"];
    cfg.mode = sweep_mode_from_string(cj["mode"]);
    cfg.seed = cj["seed"];
    cfg.b_selection.clear();
    for (const auto& name : cj["b"]) cfg.b_selection.push_back(Gf4Element::parse(name));
    if (cj["a"].is_string()) {
        cfg.a_selection = SweepConfig::ASelection::AllClasses;
    } else if (cj["a"].is_array()) {
        cfg.a_selection = SweepConfig::ASelection::ExplicitList;
        cfg.a_list = cj["a"].get<std::vector<uint64_t>>();
    } else {
        cfg.a_selection = SweepConfig::ASelection::IndexRange;
        cfg.a_range_begin = cj["a"]["begin"];
        cfg.a_range_end = cj["a"]["end"];
    }
    if (cj["omega"].is_string()) {
        cfg.omega_selection = (cj["omega"] == "all") ? SweepConfig::OmegaSelection::AllNonzero
                                                     : SweepConfig::OmegaSelection::SubfieldOnly;
    } else {
        cfg.omega_selection = SweepConfig::OmegaSelection::Sample;
        cfg.sample_permille = cj["omega"]["sample_permille"];
    }
    cfg.worker_count = worker_count;
    cfg.limit_tasks = 0;
    cfg.checkpoint_path = checkpoint_path;
    cfg.output_path = output_path.empty() ? checkpoint_path + ".out" : output_path;
    if (header["hash"] != cfg.config_hash())
        throw std::runtime_error("checkpoint header hash does not match its own config");
    return run_sweep(cfg);
}

}  // namespace bentforge
