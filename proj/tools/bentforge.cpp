// bentforge - binary-field exponential sums, Walsh spectra and bentness
// certification for the binomial family, plus sweep campaigns over
// (a, b, omega).
//
// Exit codes: 0 success, 1 inconsistency found, 2 usage error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bentforge/polar.hpp"
#include "bentforge/sums.hpp"
#include "bentforge/sweep.hpp"
#include "bentforge/walsh.hpp"

using namespace bentforge;
using nlohmann::json;

namespace {

int g_exit = 0;

void emit(const json& j, bool as_json) {
    if (as_json) {
        std::cout << j.dump() << "\n";
        return;
    }
    for (auto it = j.begin(); it != j.end(); ++it)
        std::cout << it.key() << ": " << it.value().dump() << "\n";
}

int default_threads() {
    if (const char* env = std::getenv("BENTFORGE_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 0;  // library default = hardware concurrency
}

std::pair<uint64_t, uint64_t> parse_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos) throw CLI::ValidationError("range must look like LO..HI");
    return {std::stoull(text.substr(0, dots)), std::stoull(text.substr(dots + 2))};
}

// Closed-form Walsh value for any coefficient, reducing into the subfield
// when necessary.
int64_t closed_walsh(const BinomialFunction& f, uint64_t omega) {
    const FieldContext& c = f.context();
    if (!f.is_reduced()) {
        CoefficientReduction red = reduce_coefficient(f);
        return closed_walsh(red.reduced, c.mul(red.alpha_sqrt, omega));
    }
    if (c.nu() == 1) return walsh_closed_odd(f, omega);
    if (omega == 0) return walsh_zero_closed(f);
    int64_t kloo = kloosterman(c, f.a(), c.tower_degree(1));
    return walsh_from_gauss_sum(f, omega, residual_gauss_sum(f, omega), kloo);
}

void setup_context_cmd(CLI::App& app, bool& as_json) {
    auto* cmd = app.add_subcommand("context", "describe a field context");
    auto m0 = std::make_shared<int>(12);
    cmd->add_option("--m0", *m0, "extension degree (even, 4..40)")->required();
    cmd->callback([m0, &as_json] {
        FieldContext ctx(*m0);
        json j = json::parse(ctx.to_json());
        j["nu"] = ctx.nu();
        j["tower"] = ctx.tower();
        json facs = json::array();
        for (const auto& pp : ctx.order_factors())
            facs.push_back({{"prime", pp.prime}, {"exponent", pp.exponent}});
        j["order_factors"] = facs;
        json orders = json::array();
        for (int i = 1; i <= ctx.nu(); ++i) orders.push_back(ctx.subgroup_order(i));
        j["unit_subgroup_orders"] = orders;
        emit(j, as_json);
    });
}

struct SumArgs {
    int m1 = 6;
    std::string a, b, gamma = "1", diag, m_frac = "1";
    int k = 3;
    bool check = false;
};

void setup_sums_cmd(CLI::App& app, bool& as_json) {
    auto* sums = app.add_subcommand("sums", "exponential sums over GF(2^m1)");
    sums->require_subcommand(1);
    auto args = std::make_shared<SumArgs>();

    auto add_common = [&](CLI::App* c, bool needs_a) {
        c->add_option("--m1", args->m1, "subfield degree")->required();
        auto* a = c->add_option("--a", args->a, "coefficient (hex, decimal, or g^k in GF(2^m1))");
        if (needs_a) a->required();
        c->add_flag("--check", args->check, "also run the direct-enumeration oracle");
    };

    auto* kloo = sums->add_subcommand("kloosterman", "K(a) by direct enumeration");
    add_common(kloo, true);
    kloo->callback([args, &as_json] {
        FieldContext ctx(2 * args->m1);
        uint64_t a = parse_element(ctx, args->a, args->m1);
        int64_t value = kloosterman(ctx, a, args->m1);
        json j = {{"sum", "kloosterman"}, {"value", value}, {"closed_form_used", false},
                  {"mod3", kloosterman_mod3(ctx, a, args->m1)}};
        if (args->check) {
            // independent route through the unit circle identity
            int64_t circle = 0;
            for (uint64_t u : unit_group(ctx, 1)) circle += additive_char(ctx, ctx.mul(a, u));
            j["oracle_value"] = 1 - circle;
            if (1 - circle != value) g_exit = 1;
            j["consistent"] = (1 - circle == value);
        }
        emit(j, as_json);
    });

    auto* cubic = sums->add_subcommand("cubic", "cubic sums C(a, b)");
    add_common(cubic, true);
    cubic->add_option("--b", args->b, "linear coefficient (defaults by --diag)");
    cubic->add_option("--diag", args->diag, "diagonal form: aa or a0");
    cubic->callback([args, &as_json] {
        FieldContext ctx(2 * args->m1);
        uint64_t a = parse_element(ctx, args->a, args->m1);
        json j;
        int64_t value = 0;
        bool closed = false;
        if (args->diag == "aa") {
            if (args->m1 % 2 == 0) {
                value = cubic_sum_aa_closed(ctx, a, args->m1);
                closed = true;
            } else {
                value = cubic_sum(ctx, a, a, args->m1);
                j["is_zero_by_criterion"] = cubic_sum_aa_odd_is_zero(ctx, a, args->m1);
            }
        } else if (args->diag == "a0") {
            value = cubic_sum_a0_closed(ctx, a, args->m1);
            closed = true;
        } else if (!args->b.empty()) {
            value = cubic_sum(ctx, a, parse_element(ctx, args->b, args->m1), args->m1);
        } else {
            throw CLI::ValidationError("cubic needs --b or --diag aa|a0");
        }
        j["sum"] = "cubic";
        j["value"] = value;
        j["closed_form_used"] = closed;
        if (args->check) {
            uint64_t b = args->diag == "aa"   ? a
                         : args->diag == "a0" ? 0
                                              : parse_element(ctx, args->b, args->m1);
            int64_t oracle = cubic_sum(ctx, a, b, args->m1);
            j["oracle_value"] = oracle;
            j["consistent"] = (oracle == value);
            if (oracle != value) g_exit = 1;
        }
        emit(j, as_json);
    });

    for (const char* kind : {"coset-cubic", "coset-kloosterman"}) {
        auto* cmd = sums->add_subcommand(kind, "coset-restricted sums over GF(2^m1)*");
        add_common(cmd, true);
        cmd->add_option("--gamma", args->gamma, "coset label: 1, w or w2");
        bool is_cubic = std::string(kind) == "coset-cubic";
        cmd->callback([args, &as_json, is_cubic] {
            FieldContext ctx(2 * args->m1);
            uint64_t a = parse_element(ctx, args->a, args->m1);
            Gf4Element gamma = Gf4Element::parse(args->gamma);
            int64_t value = is_cubic ? coset_cubic_closed(ctx, a, gamma, args->m1)
                                     : coset_kloosterman_closed(ctx, a, gamma, args->m1);
            json j = {{"sum", is_cubic ? "coset-cubic" : "coset-kloosterman"},
                      {"value", value},
                      {"closed_form_used", true}};
            if (args->check) {
                int64_t oracle = is_cubic ? coset_cubic_direct(ctx, a, gamma, args->m1)
                                          : coset_kloosterman_direct(ctx, a, gamma, args->m1);
                j["oracle_value"] = oracle;
                j["consistent"] = (oracle == value);
                if (oracle != value) g_exit = 1;
            }
            emit(j, as_json);
        });
    }

    auto* sigma = sums->add_subcommand("sigma", "tower product-sum identity");
    sigma->add_option("--m", args->m_frac, "parameter m (integer or reduced fraction p/q)");
    sigma->add_option("--k", args->k, "tower height (3..6)");
    sigma->callback([args, &as_json] {
        int64_t num = 0, den = 1;
        auto slash = args->m_frac.find('/');
        num = std::stoll(args->m_frac.substr(0, slash));
        if (slash != std::string::npos) den = std::stoll(args->m_frac.substr(slash + 1));
        TowerSumIdentity id = tower_sum_identity(num, den, args->k);
        emit(json{{"sum", "sigma"},
                  {"value", u128_to_string(id.value())},
                  {"closed_form_used", true},
                  {"oracle_value", u128_to_string(id.lhs)},
                  {"consistent", true}},
             as_json);
    });
}

struct WalshArgs {
    int m0 = 12;
    std::string a, b = "1", omega;
    std::string method = "both";
    std::string spectrum_out;
    bool all = false;
};

void setup_walsh_cmd(CLI::App& app, bool& as_json) {
    auto* cmd = app.add_subcommand("walsh", "Walsh transform of a binomial function");
    auto args = std::make_shared<WalshArgs>();
    cmd->add_option("--m0", args->m0, "extension degree")->required();
    cmd->add_option("--a", args->a, "coefficient in GF(2^m0)*")->required();
    cmd->add_option("--b", args->b, "GF(4)* coefficient: 1, w or w2");
    cmd->add_option("--omega", args->omega, "evaluation point");
    cmd->add_flag("--all", args->all, "whole spectrum (fast transform)");
    cmd->add_flag_callback("--closed", [args] { args->method = "closed"; });
    cmd->add_flag_callback("--brute", [args] { args->method = "brute"; });
    cmd->add_flag_callback("--both", [args] { args->method = "both"; });
    cmd->add_option("--spectrum-out", args->spectrum_out,
                    "dump the spectrum (int32 LE) plus a JSON sidecar");
    cmd->callback([args, &as_json] {
        FieldContext ctx(args->m0);
        BinomialFunction f(ctx, parse_element(ctx, args->a, args->m0),
                           Gf4Element::parse(args->b));
        if (args->all || !args->spectrum_out.empty()) {
            WalshSpectrum sp = walsh_spectrum(f);
            json j = {{"m0", args->m0},
                      {"a", element_to_hex(f.a())},
                      {"b", f.b().to_string()},
                      {"parseval_ok", sp.parseval_ok()},
                      {"bent", sp.is_bent()},
                      {"count", sp.values().size()}};
            if (!args->spectrum_out.empty()) {
                std::string extra = "\"a\":\"" + element_to_hex(f.a()) + "\",\"b\":\"" +
                                    f.b().to_string() + "\"";
                sp.export_binary(args->spectrum_out, extra);
                j["spectrum_file"] = args->spectrum_out;
                j["sidecar"] = args->spectrum_out + ".json";
            }
            emit(j, as_json);
            return;
        }
        if (args->omega.empty()) throw CLI::ValidationError("need --omega or --all");
        uint64_t omega = parse_element(ctx, args->omega, args->m0);
        json j = {{"m0", args->m0},
                  {"a", element_to_hex(f.a())},
                  {"b", f.b().to_string()},
                  {"omega", element_to_hex(omega)}};
        if (args->method == "brute" || args->method == "both")
            j["brute"] = walsh_at(f, omega);
        if (args->method == "closed" || args->method == "both")
            j["closed"] = closed_walsh(f, omega);
        if (args->method == "both") {
            bool ok = (j["brute"] == j["closed"]);
            j["consistent"] = ok;
            if (!ok) g_exit = 1;
        }
        j["value"] = (args->method == "brute") ? j["brute"] : j["closed"];
        emit(j, as_json);
    });
}

void setup_bent_cmd(CLI::App& app, bool& as_json) {
    auto* cmd = app.add_subcommand("bent", "certify bentness");
    auto args = std::make_shared<WalshArgs>();
    auto no_spectrum = std::make_shared<bool>(false);
    cmd->add_option("--m0", args->m0, "extension degree")->required();
    cmd->add_option("--a", args->a, "coefficient in GF(2^m0)*")->required();
    cmd->add_option("--b", args->b, "GF(4)* coefficient");
    cmd->add_flag("--no-spectrum", *no_spectrum, "skip the spectrum cross-check");
    cmd->callback([args, no_spectrum, &as_json] {
        FieldContext ctx(args->m0);
        BinomialFunction f(ctx, parse_element(ctx, args->a, args->m0),
                           Gf4Element::parse(args->b));
        BentCertificate cert = bent_certify(f, !*no_spectrum);
        json j = {{"m0", args->m0},
                  {"a", element_to_hex(f.a())},
                  {"b", f.b().to_string()},
                  {"kloosterman", cert.kloosterman_value},
                  {"bent_by_kloosterman", cert.bent_by_kloosterman},
                  {"criterion_proved", cert.proved},
                  {"agreement", cert.agreement}};
        if (cert.bent_by_spectrum) {
            j["bent_by_spectrum"] = *cert.bent_by_spectrum;
            j["bent"] = *cert.bent_by_spectrum;
        } else {
            j["bent"] = cert.bent_by_kloosterman;
        }
        if (!cert.agreement) {
            std::cerr << "DISAGREEMENT: spectrum verdict contradicts the K = 4 criterion for a="
                      << element_to_hex(f.a()) << " b=" << f.b().to_string() << "\n";
            g_exit = 1;
        }
        emit(j, as_json);
    });
}

void setup_conjecture_cmd(CLI::App& app, bool& as_json) {
    auto* cmd = app.add_subcommand(
        "conjecture", "check the conjectured residual-sum formula over coefficient ranges");
    auto m0 = std::make_shared<int>(12);
    auto range = std::make_shared<std::string>();
    auto a_one = std::make_shared<std::string>();
    cmd->add_option("--m0", *m0, "extension degree (4 * odd)")->required();
    cmd->add_option("--a-range", *range, "generator-power range LO..HI in GF(2^m1)");
    cmd->add_option("--a", *a_one, "single coefficient in GF(2^m1)");
    cmd->callback([m0, range, a_one, &as_json] {
        FieldContext ctx(*m0);
        if (ctx.nu() != 2)
            throw CLI::ValidationError("conjecture checks need m0 = 4 * odd");
        int m1 = ctx.tower_degree(1);
        std::vector<uint64_t> exponents;
        if (!range->empty()) {
            auto [lo, hi] = parse_range(*range);
            for (uint64_t e = lo; e < hi; ++e) exponents.push_back(e);
        } else if (!a_one->empty()) {
            exponents.push_back(ctx.subfield_log(parse_element(ctx, *a_one, m1), m1));
        } else {
            for (const CyclotomicClass& cc : cyclotomic_representatives(ctx, m1))
                exponents.push_back(cc.rep_exponent);
        }
        uint64_t eligible = 0, skipped = 0, inconsistent = 0, count_failures = 0;
        for (uint64_t e : exponents) {
            uint64_t a = ctx.pow(ctx.subfield_generator(m1), e);
            int64_t kloo = kloosterman(ctx, a, m1);
            if ((kloo % 3 + 3) % 3 != 1) {
                ++skipped;
                continue;
            }
            ++eligible;
            for (Gf4Element b :
                 {Gf4Element::one(), Gf4Element::omega(), Gf4Element::omega2()}) {
                ParsevalCounts pc = parseval_count_check(BinomialFunction(ctx, a, b), kloo);
                if (!pc.all_consistent) ++inconsistent;
                if (!pc.ok) ++count_failures;
            }
        }
        json j = {{"m0", *m0},
                  {"coefficients_checked", exponents.size()},
                  {"eligible", eligible},
                  {"out_of_hypothesis", skipped},
                  {"inconsistencies", inconsistent},
                  {"counting_failures", count_failures}};
        if (inconsistent || count_failures) g_exit = 1;
        emit(j, as_json);
    });
}

void apply_config_file(SweepConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("cannot read config file: " + path);
    json j = json::parse(in);
    if (j.contains("m0")) cfg.m0 = j["m0"];
    if (j.contains("mode")) cfg.mode = sweep_mode_from_string(j["mode"]);
    if (j.contains("seed")) cfg.seed = j["seed"];
    if (j.contains("threads")) cfg.worker_count = j["threads"];
    if (j.contains("limit_tasks")) cfg.limit_tasks = j["limit_tasks"];
    if (j.contains("checkpoint")) cfg.checkpoint_path = j["checkpoint"];
    if (j.contains("output")) cfg.output_path = j["output"];
    if (j.contains("b")) {
        cfg.b_selection.clear();
        for (const auto& name : j["b"]) cfg.b_selection.push_back(Gf4Element::parse(name));
    }
    if (j.contains("a_range")) {
        cfg.a_selection = SweepConfig::ASelection::IndexRange;
        cfg.a_range_begin = j["a_range"]["begin"];
        cfg.a_range_end = j["a_range"]["end"];
    } else if (j.contains("a_list")) {
        cfg.a_selection = SweepConfig::ASelection::ExplicitList;
        cfg.a_list = j["a_list"].get<std::vector<uint64_t>>();
    }
    if (j.contains("omega")) {
        std::string o = j["omega"];
        cfg.omega_selection = o == "all"        ? SweepConfig::OmegaSelection::AllNonzero
                              : o == "subfield" ? SweepConfig::OmegaSelection::SubfieldOnly
                                                : SweepConfig::OmegaSelection::Sample;
    }
    if (j.contains("sample_permille")) cfg.sample_permille = j["sample_permille"];
}

json summary_json(const SweepSummary& s) {
    return {{"tasks_total", s.tasks_total},
            {"tasks_completed", s.tasks_completed},
            {"tasks_skipped", s.tasks_skipped},
            {"fits_checked", s.fits_checked},
            {"inconsistencies", s.inconsistencies},
            {"parseval_failures", s.parseval_failures},
            {"disagreements", s.disagreements},
            {"mismatches", s.mismatches},
            {"out_of_hypothesis", s.out_of_hypothesis},
            {"spot_checks", s.spot_checks},
            {"spot_check_failures", s.spot_check_failures},
            {"completed", s.completed},
            {"clean", s.clean()},
            {"elapsed_seconds", s.elapsed_seconds}};
}

void setup_sweep_cmd(CLI::App& app, bool& as_json) {
    auto* cmd = app.add_subcommand("sweep", "run a verification campaign");
    auto cfg = std::make_shared<SweepConfig>();
    auto mode = std::make_shared<std::string>("conjecture2");
    auto range = std::make_shared<std::string>();
    auto omega = std::make_shared<std::string>("all");
    auto bsel = std::make_shared<std::vector<std::string>>();
    auto config_file = std::make_shared<std::string>();
    auto threads = std::make_shared<int>(-1);

    cmd->add_option("--config", *config_file, "JSON config file (flags win)");
    cmd->add_option("--m0", cfg->m0, "extension degree");
    cmd->add_option("--mode", *mode, "conjecture2 | bent-agreement | closed-vs-brute");
    cmd->add_option("--a-range", *range, "generator-power range LO..HI");
    cmd->add_option("--a-list", cfg->a_list, "explicit generator powers");
    cmd->add_option("--b", *bsel, "subset of {1, w, w2}");
    cmd->add_option("--omega", *omega, "all | subfield | sample");
    cmd->add_option("--sample-permille", cfg->sample_permille, "sample rate for --omega sample");
    cmd->add_option("--seed", cfg->seed, "seed for sampling");
    cmd->add_option("--threads", *threads, "worker count (default: env/hardware)");
    cmd->add_option("--limit", cfg->limit_tasks, "stop after N tasks (leaves a resumable checkpoint)");
    cmd->add_option("--checkpoint", cfg->checkpoint_path, "checkpoint path");
    cmd->add_option("--out", cfg->output_path, "final output path");
    cmd->callback([cfg, mode, range, omega, bsel, config_file, threads, cmd, &as_json] {
        if (!config_file->empty()) {
            SweepConfig base;
            apply_config_file(base, *config_file);
            // flags win over the file
            if (cmd->count("--m0") == 0) cfg->m0 = base.m0;
            if (cmd->count("--mode") == 0) *mode = to_string(base.mode);
            if (cmd->count("--a-range") == 0 && cmd->count("--a-list") == 0) {
                cfg->a_selection = base.a_selection;
                cfg->a_list = base.a_list;
                cfg->a_range_begin = base.a_range_begin;
                cfg->a_range_end = base.a_range_end;
            }
            if (cmd->count("--b") == 0) cfg->b_selection = base.b_selection;
            if (cmd->count("--omega") == 0)
                *omega = base.omega_selection == SweepConfig::OmegaSelection::AllNonzero
                             ? "all"
                             : base.omega_selection == SweepConfig::OmegaSelection::SubfieldOnly
                                   ? "subfield"
                                   : "sample";
            if (cmd->count("--sample-permille") == 0) cfg->sample_permille = base.sample_permille;
            if (cmd->count("--seed") == 0) cfg->seed = base.seed;
            if (cmd->count("--threads") == 0 && base.worker_count > 0)
                *threads = base.worker_count;
            if (cmd->count("--limit") == 0) cfg->limit_tasks = base.limit_tasks;
            if (cmd->count("--checkpoint") == 0) cfg->checkpoint_path = base.checkpoint_path;
            if (cmd->count("--out") == 0) cfg->output_path = base.output_path;
        }
        cfg->mode = sweep_mode_from_string(*mode);
        if (!range->empty()) {
            auto [lo, hi] = parse_range(*range);
            cfg->a_selection = SweepConfig::ASelection::IndexRange;
            cfg->a_range_begin = lo;
            cfg->a_range_end = hi;
        } else if (!cfg->a_list.empty()) {
            cfg->a_selection = SweepConfig::ASelection::ExplicitList;
        }
        if (!bsel->empty()) {
            cfg->b_selection.clear();
            for (const std::string& name : *bsel)
                cfg->b_selection.push_back(Gf4Element::parse(name));
        }
        cfg->omega_selection = *omega == "all" ? SweepConfig::OmegaSelection::AllNonzero
                               : *omega == "subfield" ? SweepConfig::OmegaSelection::SubfieldOnly
                                                      : SweepConfig::OmegaSelection::Sample;
        cfg->worker_count = (*threads >= 0) ? *threads : default_threads();

        SweepSummary s = run_sweep(*cfg);
        if (!s.completed)
            std::cerr << "partial run (task limit reached); resume with: bentforge resume --checkpoint "
                      << cfg->checkpoint_path << "\n";
        emit(summary_json(s), as_json);
        if (!s.clean()) g_exit = 1;
    });
}

void setup_resume_cmd(CLI::App& app, bool& as_json) {
    auto* cmd = app.add_subcommand("resume", "continue a sweep from its checkpoint");
    auto path = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto threads = std::make_shared<int>(-1);
    cmd->add_option("--checkpoint", *path, "checkpoint path")->required();
    cmd->add_option("--out", *out, "final output path (default: checkpoint + .out)");
    cmd->add_option("--threads", *threads, "worker count");
    cmd->callback([path, out, threads, &as_json] {
        SweepSummary s =
            resume_sweep(*path, *out, (*threads >= 0) ? *threads : default_threads());
        emit(summary_json(s), as_json);
        if (!s.clean()) g_exit = 1;
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"binary-field exponential sums and bent binomial functions"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    setup_context_cmd(app, as_json);
    setup_sums_cmd(app, as_json);
    setup_walsh_cmd(app, as_json);
    setup_bent_cmd(app, as_json);
    setup_conjecture_cmd(app, as_json);
    setup_sweep_cmd(app, as_json);
    setup_resume_cmd(app, as_json);

    // let --json appear after any subcommand
    for (CLI::App* sub : app.get_subcommands({})) {
        sub->fallthrough();
        for (CLI::App* nested : sub->get_subcommands({})) nested->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return g_exit;
}
