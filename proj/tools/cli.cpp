#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "dpmod/errors.hpp"
#include "dpmod/filtration.hpp"
#include "dpmod/frobmod.hpp"
#include "dpmod/verify.hpp"

namespace dpmod::cli {

namespace {

struct RunConfig {
    std::uint64_t p = 2;
    bool p_given = false;
    std::string example = "ex2";
    std::string gseq_file;
    std::string gens = "s2";
    std::string i_range;
    std::optional<unsigned> e_max;
    std::string format;
    std::string out_path;
    bool pretty = false;

    std::string op;
    std::string target;

    std::string check;
    std::optional<std::uint64_t> i_min;
    std::optional<std::uint64_t> i_max;
    std::optional<unsigned> k_max;
    std::optional<std::uint64_t> budget;
};

// Thrown for configuration problems (exit 2).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::uint64_t> parse_i_range(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream items(text);
    std::string item;
    auto number = [](const std::string& s) {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
            throw UsageError("bad i value '" + s + "'");
        }
        try {
            return static_cast<std::uint64_t>(std::stoull(s));
        } catch (const std::exception&) {
            throw UsageError("i value out of range '" + s + "'");
        }
    };
    while (std::getline(items, item, ',')) {
        if (item.empty()) continue;
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(number(item));
            continue;
        }
        const std::uint64_t lo = number(item.substr(0, dots));
        const std::uint64_t hi = number(item.substr(dots + 2));
        for (std::uint64_t i = lo; i <= hi; ++i) out.push_back(i);
    }
    for (std::size_t k = 1; k < out.size(); ++k) {
        if (out[k] <= out[k - 1]) throw UsageError("i values must be strictly ascending");
    }
    return out;
}

Prime make_prime(std::uint64_t p) {
    if (p > kMaxCliPrime) {
        throw UsageError("p = " + std::to_string(p) + " is larger than the supported " +
                         std::to_string(kMaxCliPrime));
    }
    try {
        return Prime(p);
    } catch (const InputError& e) {
        throw UsageError(e.what());
    }
}

std::unique_ptr<FrobModule> make_module(RunConfig& cfg) {
    if (!cfg.gseq_file.empty()) {
        if (cfg.example != "ex2" && cfg.example != "custom") {
            throw UsageError("--gseq-file cannot be combined with --example " + cfg.example);
        }
        GeneratorSequence gseq = [&] {
            try {
                return load_sequence_file(cfg.gseq_file);
            } catch (const InputError& e) {
                throw UsageError(e.what());
            }
        }();
        if (cfg.p_given && cfg.p != gseq.modulus().value()) {
            throw UsageError("--p " + std::to_string(cfg.p) + " disagrees with the sequence file's p = " +
                             std::to_string(gseq.modulus().value()));
        }
        make_prime(gseq.modulus().value());
        cfg.p = gseq.modulus().value();
        cfg.example = "custom";
        if (gseq.coverage().value_or(0) > 0) {
            const SequenceValidation v = validate_sequence(gseq, static_cast<unsigned>(*gseq.coverage() - 1));
            if (!v.ok) throw InputError("invalid generator sequence: " + v.message);
        }
        return std::make_unique<FrobModule>(std::move(gseq));
    }
    const Prime p = make_prime(cfg.p);
    if (cfg.example == "ex1") return std::make_unique<FrobModule>(GeneratorSequence::ex1(p));
    if (cfg.example == "ex2") return std::make_unique<FrobModule>(GeneratorSequence::ex2(p));
    throw UsageError("--example " + cfg.example + " needs --gseq-file");
}

std::vector<ModuleElement> parse_gens(const std::string& text, Prime p) {
    bool s1 = false;
    bool s2 = false;
    std::stringstream items(text);
    std::string item;
    while (std::getline(items, item, ',')) {
        if (item == "s1") {
            s1 = true;
        } else if (item == "s2") {
            s2 = true;
        } else {
            throw UsageError("unknown generator '" + item + "' (expected s1 and/or s2)");
        }
    }
    std::vector<ModuleElement> gens;
    if (s1) gens.push_back(ModuleElement::s1(p));
    if (s2) gens.push_back(ModuleElement::s2(p));
    if (gens.empty()) throw UsageError("--gens must name s1 and/or s2");
    return gens;
}

std::string gens_label(const std::vector<ModuleElement>& gens, Prime p) {
    std::string out;
    for (const ModuleElement& g : gens) {
        if (!out.empty()) out += ",";
        out += g == ModuleElement::s1(p) ? "s1" : "s2";
    }
    return out;
}

std::string decimal(const Ratio& r) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", r.to_double());
    return buf;
}

Json record_json(const GrowthRecord& r, bool pretty) {
    Json j;
    j["i"] = r.i;
    j["dim"] = r.dim;
    j["ratio_num"] = r.ratio ? Json(r.ratio->num) : Json(nullptr);
    j["ratio_den"] = r.ratio ? Json(r.ratio->den) : Json(nullptr);
    if (pretty) j["ratio"] = r.ratio ? Json(decimal(*r.ratio)) : Json(nullptr);
    j["formula"] = r.formula_value ? Json(*r.formula_value) : Json(nullptr);
    j["match"] = r.match ? Json(*r.match) : Json(nullptr);
    return j;
}

void write_records_csv(std::ostream& os, const GrowthSeries& series, bool pretty) {
    os << "i,dim,ratio_num,ratio_den," << (pretty ? "ratio," : "") << "formula,match\n";
    for (const GrowthRecord& r : series.records) {
        os << r.i << ',' << r.dim << ',';
        if (r.ratio) {
            os << r.ratio->num << ',' << r.ratio->den << ',';
        } else {
            os << ",,";
        }
        if (pretty) os << (r.ratio ? decimal(*r.ratio) : "") << ',';
        if (r.formula_value) os << *r.formula_value;
        os << ',';
        if (r.match) os << (*r.match ? "true" : "false");
        os << '\n';
    }
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_reports_csv(std::ostream& os, const std::vector<CheckReport>& reports) {
    os << "check,p,inputs,oracle,paper,verdict,note\n";
    for (const CheckReport& r : reports) {
        for (const CaseRecord& c : r.cases) {
            os << r.check << ',' << r.p << ',' << csv_field(c.inputs.dump()) << ',' << csv_field(c.oracle) << ','
               << csv_field(c.paper) << ',' << to_string(c.verdict) << ',' << csv_field(c.note) << '\n';
        }
    }
}

class Output {
public:
    Output(const std::string& path, std::ostream& fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw UsageError("cannot open output file '" + path + "'");
        }
        os_ = path.empty() ? &fallback : &file_;
    }
    std::ostream& stream() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

void add_common(CLI::App& cmd, RunConfig& cfg) {
    cmd.add_option_function<std::uint64_t>(
           "--p", [&cfg](const std::uint64_t& p) { cfg.p = p; cfg.p_given = true; }, "prime modulus (default 2)");
    cmd.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd.add_option("--out", cfg.out_path, "write output to this file");
    cmd.add_flag("--pretty", cfg.pretty, "add decimal ratio columns");
}

void add_module_options(CLI::App& cmd, RunConfig& cfg) {
    cmd.add_option("--example", cfg.example, "ex1, ex2 or custom (default ex2)")
        ->check(CLI::IsMember({"ex1", "ex2", "custom"}));
    cmd.add_option("--gseq-file", cfg.gseq_file, "JSON generator sequence {\"p\": 2, \"g\": [...]}");
}

int cmd_table(RunConfig& cfg, const std::string& name, std::ostream& out) {
    const auto module = make_module(cfg);
    const Prime p = module->modulus();
    const auto gens = parse_gens(cfg.gens, p);
    std::vector<std::uint64_t> is;
    if (name == "growth" && cfg.e_max) {
        if (!cfg.i_range.empty()) throw UsageError("use either --i or --e-max");
        for (unsigned e = 1; e <= *cfg.e_max; ++e) is.push_back(checked::pow(p.value(), e));
    } else {
        is = parse_i_range(cfg.i_range);
    }
    Output sink(cfg.out_path, out);

    const GrowthSeries series = growth_series(*module, gens, is);
    std::ostream& os = sink.stream();
    if (cfg.format == "json") {
        Json j;
        j["command"] = name;
        j["p"] = p.value();
        j["example"] = cfg.example;
        j["gens"] = gens_label(gens, p);
        Json records = Json::array();
        for (const GrowthRecord& r : series.records) records.push_back(record_json(r, cfg.pretty));
        j["records"] = std::move(records);
        if (name == "growth") {
            j["empirical_slope_bound"] =
                series.empirical_slope_bound ? Json(to_string(*series.empirical_slope_bound)) : Json(nullptr);
        }
        os << j.dump(2) << '\n';
    } else {
        os << "# dpmod " << kVersion << ' ' << name << " example=" << cfg.example << " p=" << p.value()
           << " gens=" << gens_label(gens, p) << '\n';
        write_records_csv(os, series, cfg.pretty);
        if (name == "growth") {
            os << "# empirical_slope_bound="
               << (series.empirical_slope_bound ? to_string(*series.empirical_slope_bound) : "none") << '\n';
        }
    }
    return 0;
}

int cmd_act(RunConfig& cfg, std::ostream& out) {
    const auto module = make_module(cfg);
    const Prime p = module->modulus();
    Operator op(p);
    ModuleElement target = ModuleElement::zero(p);
    try {
        op = parse_operator(cfg.op, p);
        target = parse_element(cfg.target, p);
    } catch (const InputError& e) {
        throw UsageError(e.what());
    }
    Output sink(cfg.out_path, out);
    const ModuleElement image = act(*module, op, target);
    if (cfg.format == "json") {
        Json j;
        j["command"] = "act";
        j["p"] = p.value();
        j["example"] = cfg.example;
        j["op"] = format_operator(op);
        j["target"] = format_element(target);
        j["result"] = format_element(image);
        sink.stream() << j.dump(2) << '\n';
    } else {
        sink.stream() << format_element(image) << '\n';
    }
    return 0;
}

int cmd_verify(RunConfig& cfg, std::ostream& out) {
    static const std::vector<std::string> checks{"lemma31", "lemma41a", "lemma41b", "thm42", "thm32", "limits", "all"};
    if (std::find(checks.begin(), checks.end(), cfg.check) == checks.end()) {
        throw UsageError("unknown check '" + cfg.check + "'");
    }
    const Prime p = make_prime(cfg.p);
    VerifyDefaults d = verify_defaults(p);
    if (cfg.k_max) {
        if (*cfg.k_max > 6) throw UsageError("--k-max must be <= 6");
        d.lemma31_kmax = d.lemma41a_kmax = *cfg.k_max;
    }
    if (cfg.budget) d.lemma41b_budget = *cfg.budget;
    if (cfg.i_min) d.thm42_imin = *cfg.i_min;
    if (cfg.i_max) d.thm42_imax = *cfg.i_max;
    if (d.thm42_imin < 1 || d.thm42_imin > d.thm42_imax) throw UsageError("need 1 <= --i-min <= --i-max");
    if (cfg.e_max) {
        if (*cfg.e_max < 1 || *cfg.e_max > 40) throw UsageError("--e-max must be in 1..40");
        d.thm32_emax = d.limits_emax = *cfg.e_max;
    }
    Output sink(cfg.out_path, out);

    std::vector<CheckReport> reports;
    if (cfg.check == "all") {
        reports = verify_all(p, d);
    } else if (cfg.check == "lemma31") {
        reports.push_back(check_lemma31(p, d.lemma31_kmax));
    } else if (cfg.check == "lemma41a") {
        reports.push_back(check_lemma41a(p, d.lemma41a_kmax));
    } else if (cfg.check == "lemma41b") {
        reports.push_back(check_lemma41b(p, d.lemma41b_budget));
    } else if (cfg.check == "thm42") {
        reports.push_back(check_thm42(p, d.thm42_imin, d.thm42_imax));
    } else if (cfg.check == "thm32") {
        reports.push_back(check_thm32(p, d.thm32_emax));
    } else {
        reports.push_back(limits_report(p, d.limits_emax));
    }

    if (cfg.format == "csv") {
        sink.stream() << "# dpmod " << kVersion << " verify " << cfg.check << " p=" << p.value() << '\n';
        write_reports_csv(sink.stream(), reports);
    } else {
        sink.stream() << reports_to_json(reports).dump(2) << '\n';
    }
    return total_summary(reports).fail == 0 ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Divided-power D-module engine: filtration dimensions and verification reports", "dpmod"};
    app.require_subcommand(1);
    RunConfig cfg;

    CLI::App* dim = app.add_subcommand("dim", "dim F_i * gens for each i");
    CLI::App* growth = app.add_subcommand("growth", "growth series with exact ratios and slope bound");
    CLI::App* act_cmd = app.add_subcommand("act", "apply an operator to a module element");
    CLI::App* verify = app.add_subcommand("verify", "recompute closed-form claims by brute force");
    for (CLI::App* cmd : {dim, growth, act_cmd, verify}) add_common(*cmd, cfg);
    for (CLI::App* cmd : {dim, growth, act_cmd}) add_module_options(*cmd, cfg);
    for (CLI::App* cmd : {dim, growth}) {
        cmd->add_option("--gens", cfg.gens, "generators, e.g. s1,s2 (default s2)");
        cmd->add_option("--i", cfg.i_range, "i values: a..b ranges and comma lists");
    }
    growth->add_option("--e-max", cfg.e_max, "use i = p, p^2, ..., p^e-max");
    act_cmd->add_option("--op", cfg.op, "operator, e.g. \"x^2*D_4 + D_1\"")->required();
    act_cmd->add_option("--target", cfg.target, "element, e.g. \"(0, 1)\"")->required();
    verify->add_option("check", cfg.check, "lemma31|lemma41a|lemma41b|thm42|thm32|limits|all")->required();
    verify->add_option("--i-min", cfg.i_min, "thm42 lower index");
    verify->add_option("--i-max", cfg.i_max, "thm42 upper index");
    verify->add_option("--e-max", cfg.e_max, "thm32/limits exponent bound");
    verify->add_option("--k-max", cfg.k_max, "lemma31/lemma41a level bound");
    verify->add_option("--budget", cfg.budget, "lemma41b bound on sum e_i p^k_i");

    std::vector<const char*> argv{"dpmod"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (verify->parsed()) {
            if (cfg.format.empty()) cfg.format = "json";
            return cmd_verify(cfg, out);
        }
        if (cfg.format.empty()) cfg.format = "csv";
        if (act_cmd->parsed()) return cmd_act(cfg, out);
        return cmd_table(cfg, dim->parsed() ? "dim" : "growth", out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace dpmod::cli
