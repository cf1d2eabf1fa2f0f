// farsee: stage-effort estimation from prior-stage effort records.
// Subcommands cover dataset validation, interval inspection, rule mining,
// single predictions, jackknife evaluation and report comparison.

#include "farsee/config.hpp"
#include "farsee/errors.hpp"
#include "farsee/evaluate.hpp"
#include "farsee/metrics.hpp"
#include "farsee/pipeline.hpp"
#include "farsee/predict.hpp"
#include "farsee/report.hpp"
#include "farsee/stats.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace {

using farsee::PipelineConfig;
using farsee::Stage;
using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw farsee::SchemaError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw farsee::SchemaError("cannot write file: " + path);
    out << content;
}

struct ConfigOpts {
    std::string config_path;
    std::vector<std::string> intervals; // STAGE=N
    std::vector<std::string> pads;      // STAGE=fraction:F or STAGE=explicit:D1:D2
    std::optional<double> min_support;
    std::optional<double> min_confidence;
    std::optional<std::string> outliers; // none or iqr[:k]
    std::optional<std::string> fallback; // error or median
    std::optional<std::string> unit;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "configuration file (key = value lines)");
        cmd->add_option("--intervals", intervals,
                        "interval count override, STAGE=N (repeatable)");
        cmd->add_option("--pad", pads,
                        "padding override, STAGE=fraction:F or STAGE=explicit:D1:D2");
        cmd->add_option("--min-support", min_support, "minimum rule support in (0,1]");
        cmd->add_option("--min-confidence", min_confidence, "minimum rule confidence in (0,1]");
        cmd->add_option("--outliers", outliers, "outlier policy: none or iqr[:k]");
        cmd->add_option("--fallback", fallback, "no-rule fallback: error or median");
        cmd->add_option("--unit", unit, "effort unit label for reports");
    }

    PipelineConfig build() const {
        PipelineConfig cfg;
        if (!config_path.empty()) cfg = farsee::load_config_file(config_path, cfg);
        for (const auto& spec : intervals) {
            const auto eq = spec.find('=');
            if (eq == std::string::npos) {
                throw farsee::SchemaError("--intervals expects STAGE=N, got '" + spec + "'");
            }
            cfg.intervals_for(farsee::stage_from_code(spec.substr(0, eq))) =
                std::stoi(spec.substr(eq + 1));
        }
        for (const auto& spec : pads) {
            const auto eq = spec.find('=');
            if (eq == std::string::npos) {
                throw farsee::SchemaError("--pad expects STAGE=mode:..., got '" + spec + "'");
            }
            const Stage stage = farsee::stage_from_code(spec.substr(0, eq));
            std::string rest = spec.substr(eq + 1);
            std::vector<std::string> parts;
            std::size_t pos = 0;
            while (true) {
                const auto colon = rest.find(':', pos);
                parts.push_back(rest.substr(pos, colon - pos));
                if (colon == std::string::npos) break;
                pos = colon + 1;
            }
            if (parts[0] == "fraction" && parts.size() == 2) {
                cfg.padding_for(stage) = farsee::PaddingPolicy::fraction_of_range(
                    std::stod(parts[1]));
            } else if (parts[0] == "explicit" && parts.size() == 3) {
                cfg.padding_for(stage) = farsee::PaddingPolicy::explicit_pads(
                    std::stod(parts[1]), std::stod(parts[2]));
            } else {
                throw farsee::SchemaError("--pad expects STAGE=fraction:F or "
                                          "STAGE=explicit:D1:D2, got '" + spec + "'");
            }
        }
        if (min_support) cfg.min_support = *min_support;
        if (min_confidence) cfg.min_confidence = *min_confidence;
        if (outliers) {
            if (*outliers == "none") {
                cfg.outlier_policy = farsee::OutlierPolicy::none();
            } else if (outliers->rfind("iqr", 0) == 0) {
                double k = 1.5;
                if (outliers->size() > 4 && (*outliers)[3] == ':') {
                    k = std::stod(outliers->substr(4));
                }
                cfg.outlier_policy = farsee::OutlierPolicy::iqr(k);
            } else {
                throw farsee::SchemaError("--outliers expects none or iqr[:k]");
            }
        }
        if (fallback) {
            if (*fallback == "error") {
                cfg.fallback = PipelineConfig::FallbackKind::error;
            } else if (*fallback == "median") {
                cfg.fallback = PipelineConfig::FallbackKind::dataset_median;
            } else {
                throw farsee::SchemaError("--fallback expects error or median");
            }
        }
        if (unit) cfg.unit_label = *unit;
        cfg.validate();
        return cfg;
    }
};

Stage parse_target(const std::string& code) {
    const Stage target = farsee::stage_from_code(code);
    if (target == Stage::Planning) {
        throw farsee::SchemaError("EP has no prior stage and cannot be a target");
    }
    return target;
}

std::string fmt(double v, int digits = 4) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v, int digits = 4) {
    return v ? fmt(*v, digits) : std::string("-");
}

// ---------------------------------------------------------------------------
// validate

int cmd_validate(const std::string& dataset_path, const ConfigOpts& opts,
                 const std::string& format) {
    const PipelineConfig cfg = opts.build();
    const farsee::Dataset raw = farsee::parse_dataset(read_file(dataset_path));

    std::array<std::size_t, farsee::kStageCount> missing{};
    for (const auto& rec : raw.records) {
        for (Stage s : farsee::all_stages()) {
            if (!rec.effort(s)) ++missing[farsee::ordinal(s) - 1];
        }
    }
    farsee::PreprocessSummary summary;
    const farsee::Dataset used = farsee::preprocess(raw, cfg, &summary);

    if (format == "json") {
        json j;
        j["records_total"] = summary.records_total;
        j["records_complete"] = summary.records_complete;
        j["records_used"] = summary.records_used;
        for (Stage s : farsee::all_stages()) {
            const std::string code(farsee::stage_code(s));
            j["missing"][code] = missing[farsee::ordinal(s) - 1];
            double lo = *used.records.front().effort(s), hi = lo;
            for (const auto& rec : used.records) {
                lo = std::min(lo, *rec.effort(s));
                hi = std::max(hi, *rec.effort(s));
            }
            j["per_stage"][code] = {{"min", lo}, {"max", hi}};
        }
        json dropped = json::array();
        for (const auto& drop : summary.dropped_outliers) {
            json stages = json::array();
            for (Stage s : drop.stages) stages.push_back(std::string(farsee::stage_code(s)));
            dropped.push_back({{"project_id", drop.project_id}, {"stages", stages}});
        }
        j["dropped_outliers"] = dropped;
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    std::cout << "records: " << summary.records_total << " total, "
              << summary.records_complete << " complete, " << summary.records_used
              << " used\n";
    std::cout << "missing efforts per stage:";
    for (Stage s : farsee::all_stages()) {
        std::cout << ' ' << farsee::stage_code(s) << '=' << missing[farsee::ordinal(s) - 1];
    }
    std::cout << "\n";
    if (!summary.dropped_outliers.empty()) {
        std::cout << "outlier records dropped:\n";
        for (const auto& drop : summary.dropped_outliers) {
            std::cout << "  " << drop.project_id << " (";
            for (std::size_t i = 0; i < drop.stages.size(); ++i) {
                if (i) std::cout << ", ";
                std::cout << farsee::stage_code(drop.stages[i]);
            }
            std::cout << ")\n";
        }
    }
    std::cout << "per-stage range over used records:\n";
    for (Stage s : farsee::all_stages()) {
        double lo = *used.records.front().effort(s), hi = lo;
        for (const auto& rec : used.records) {
            lo = std::min(lo, *rec.effort(s));
            hi = std::max(hi, *rec.effort(s));
        }
        std::cout << "  " << farsee::stage_code(s) << " [" << fmt(lo, 2) << ", "
                  << fmt(hi, 2) << "]\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// discretize

void print_scheme(const farsee::IntervalScheme& s) {
    const auto& u = s.universe;
    std::cout << "stage " << farsee::stage_code(s.stage) << ": universe [" << fmt(u.lower, 4)
              << ", " << fmt(u.upper, 4) << "]  d1=" << fmt(u.d1, 4) << " d2=" << fmt(u.d2, 4)
              << "  n=" << s.n << "  L=" << fmt(s.length, 4) << "\n";
    for (int j = 1; j <= s.n; ++j) {
        const bool last = j == s.n;
        std::cout << "  W" << j << " [" << fmt(s.bounds[j - 1], 4) << ", " << fmt(s.bounds[j], 4)
                  << (last ? "]" : ")") << "  midpoint " << fmt(s.midpoints[j - 1], 4) << "\n";
    }
}

int cmd_discretize(const std::string& dataset_path, const ConfigOpts& opts,
                   const std::string& stage_code_arg, const std::string& format) {
    const PipelineConfig cfg = opts.build();
    const farsee::Dataset used =
        farsee::preprocess(farsee::parse_dataset(read_file(dataset_path)), cfg);

    std::vector<Stage> stages;
    if (stage_code_arg.empty()) {
        stages.assign(farsee::all_stages().begin(), farsee::all_stages().end());
    } else {
        stages.push_back(farsee::stage_from_code(stage_code_arg));
    }
    const auto schemes = farsee::build_schemes(used, cfg, stages);

    if (format == "json") {
        json j = json::array();
        for (const auto& [stage, scheme] : schemes) {
            json s;
            s["stage"] = std::string(farsee::stage_code(stage));
            s["universe"] = {{"lower", scheme.universe.lower},
                             {"upper", scheme.universe.upper},
                             {"d1", scheme.universe.d1},
                             {"d2", scheme.universe.d2}};
            s["n"] = scheme.n;
            s["length"] = scheme.length;
            s["bounds"] = scheme.bounds;
            s["midpoints"] = scheme.midpoints;
            j.push_back(s);
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    for (Stage s : stages) print_scheme(schemes.at(s));
    return 0;
}

// ---------------------------------------------------------------------------
// mine

int cmd_mine(const std::string& dataset_path, const ConfigOpts& opts,
             const std::string& target_code, const std::string& format) {
    const PipelineConfig cfg = opts.build();
    const Stage target = parse_target(target_code);
    const farsee::Dataset used =
        farsee::preprocess(farsee::parse_dataset(read_file(dataset_path)), cfg);
    const farsee::TargetModel model = farsee::build_target_model(used, cfg, target);

    if (format == "json") {
        json j;
        j["target"] = std::string(farsee::stage_code(target));
        j["rules_before_filter"] = model.rules_before_filter;
        json rules = json::array();
        for (const auto& rule : model.rules) rules.push_back(farsee::rule_to_json(rule));
        j["rules"] = rules;
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    std::cout << "rules before target filtering: " << model.rules_before_filter << "\n";
    std::cout << "rules for target " << farsee::stage_code(target) << ": "
              << model.rules.size() << "\n";
    for (const auto& rule : model.rules) std::cout << farsee::format_rule(rule) << "\n";
    if (model.rules.empty()) {
        std::cerr << "warning: no rules survived filtering; consider lowering "
                     "--min-confidence or --min-support\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// predict

int cmd_predict(const std::string& dataset_path, const ConfigOpts& opts,
                const std::string& target_code, const std::vector<std::string>& prior_specs,
                const std::string& rules_path, const std::string& format) {
    const PipelineConfig cfg = opts.build();
    const Stage target = parse_target(target_code);
    if (prior_specs.empty()) {
        throw farsee::SchemaError("at least one --prior STAGE=EFFORT is required");
    }
    std::map<Stage, double> priors;
    for (const auto& spec : prior_specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos) {
            throw farsee::SchemaError("--prior expects STAGE=EFFORT, got '" + spec + "'");
        }
        const Stage stage = farsee::stage_from_code(spec.substr(0, eq));
        priors[stage] = std::stod(spec.substr(eq + 1));
    }

    const farsee::Dataset used =
        farsee::preprocess(farsee::parse_dataset(read_file(dataset_path)), cfg);

    std::vector<farsee::AssociationRule> rules;
    std::map<Stage, farsee::IntervalScheme> schemes;
    double target_median = 0;
    if (rules_path.empty()) {
        farsee::TargetModel model = farsee::build_target_model(used, cfg, target);
        rules = std::move(model.rules);
        schemes = std::move(model.schemes);
        target_median = model.target_median;
    } else {
        rules = farsee::filter_rules(farsee::parse_rules_text(read_file(rules_path)), target);
        std::vector<Stage> stages = farsee::prior_stages(target);
        stages.push_back(target);
        schemes = farsee::build_schemes(used, cfg, stages);
        std::vector<double> efforts;
        for (const auto& rec : used.records) efforts.push_back(*rec.effort(target));
        target_median = farsee::median(efforts);
    }

    const farsee::Query query = farsee::make_query(target, priors, schemes);
    for (Stage s : query.clamped) {
        std::cerr << "warning: " << farsee::stage_code(s)
                  << " effort lies outside the training universe; clamped to the nearest "
                     "edge interval\n";
    }
    const farsee::Fallback fallback = cfg.fallback == PipelineConfig::FallbackKind::error
                                          ? farsee::Fallback::error()
                                          : farsee::Fallback::dataset_median(target_median);
    const farsee::Estimate estimate =
        farsee::predict(farsee::match_rules(rules, query), schemes.at(target), fallback);

    const std::string unit = cfg.unit_label.empty() ? "effort units" : cfg.unit_label;
    if (format == "json") {
        json j;
        j["target"] = std::string(farsee::stage_code(target));
        j["estimate"] = estimate.value;
        j["unit"] = cfg.unit_label;
        j["fallback_used"] = estimate.fallback_used;
        json clamped = json::array();
        for (Stage s : query.clamped) clamped.push_back(std::string(farsee::stage_code(s)));
        j["clamped_stages"] = clamped;
        json contributions = json::array();
        for (const auto& c : estimate.contributions) {
            json entry;
            entry["rule"] = farsee::rule_to_json(c.rule);
            entry["defuzzified"] = c.defuzzified;
            entry["confidence"] = c.confidence;
            contributions.push_back(entry);
        }
        j["contributions"] = contributions;
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    std::cout << "estimated " << farsee::stage_code(target) << " effort: "
              << fmt(estimate.value, 2) << " " << unit << "\n";
    if (estimate.fallback_used) {
        std::cout << "no applicable rules; fell back to the training median\n";
    }
    for (const auto& c : estimate.contributions) {
        std::cout << "  " << farsee::format_rule(c.rule) << "  defuzzified "
                  << fmt(c.defuzzified, 4) << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// evaluate

int cmd_evaluate(const std::string& dataset_path, const ConfigOpts& opts,
                 const std::string& target_code, bool all_targets, const std::string& out_path,
                 const std::string& folds_csv_path) {
    const PipelineConfig cfg = opts.build();
    if (!all_targets && target_code.empty()) {
        throw farsee::SchemaError("evaluate needs --target STAGE or --all");
    }
    std::vector<Stage> targets;
    if (all_targets) {
        targets = farsee::predictable_stages();
    } else {
        targets.push_back(parse_target(target_code));
    }

    const farsee::Dataset raw = farsee::parse_dataset(read_file(dataset_path));
    const farsee::EvaluationReport report = farsee::evaluate(raw, cfg, targets);

    write_file(out_path, farsee::report_to_string(report));
    if (!folds_csv_path.empty()) write_file(folds_csv_path, farsee::folds_csv(report));

    std::cout << "target  " << "model bias/mmre/mdmre      " << "regression bias/mmre/mdmre\n";
    for (const auto& stage : report.stages) {
        std::cout << farsee::stage_code(stage.target) << "      "
                  << fmt_opt(stage.model.mean_bias) << " / " << fmt_opt(stage.model.mmre)
                  << " / " << fmt_opt(stage.model.mdmre) << "   "
                  << fmt_opt(stage.regression.mean_bias) << " / "
                  << fmt_opt(stage.regression.mmre) << " / " << fmt_opt(stage.regression.mdmre)
                  << "\n";
    }
    std::cout << "report written to " << out_path << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// compare

int cmd_compare(const std::string& report_path, const std::string& boxplot_csv_path) {
    json doc;
    try {
        doc = json::parse(read_file(report_path));
    } catch (const json::exception& e) {
        throw farsee::SchemaError("malformed report JSON: " + std::string(e.what()));
    }
    const auto problems = farsee::validate_report_json(doc);
    if (!problems.empty()) {
        std::string msg = "report does not match the expected schema:";
        for (const auto& p : problems) msg += "\n  " + p;
        throw farsee::SchemaError(msg);
    }

    std::cout << "target  rank_sum   z_value    p_value    p_exact\n";
    for (const auto& stage : doc["stages"]) {
        std::cout << stage["target"].get<std::string>() << "      ";
        const json& w = stage["wilcoxon"];
        if (w.is_null()) {
            std::cout << "-          -          -          -          ("
                      << stage.value("wilcoxon_error", std::string("unavailable")) << ")\n";
            continue;
        }
        std::cout << fmt(w["rank_sum"].get<double>(), 1) << "     "
                  << fmt(w["z_value"].get<double>(), 3) << "     "
                  << fmt(w["p_value"].get<double>(), 4) << "     ";
        if (w.contains("p_exact") && !w["p_exact"].is_null()) {
            std::cout << fmt(w["p_exact"].get<double>(), 4);
        } else {
            std::cout << "-";
        }
        if (w["p_value"].get<double>() >= 1.0) std::cout << "  (degenerate-safe)";
        std::cout << "\n";
    }

    const std::string csv = farsee::boxplots_csv(doc);
    if (boxplot_csv_path.empty()) {
        std::cout << "\n" << csv;
    } else {
        write_file(boxplot_csv_path, csv);
        std::cout << "boxplot summaries written to " << boxplot_csv_path << "\n";
    }
    return 0;
}

int run(int argc, char** argv) {
    CLI::App app{"stage-effort estimation from prior-stage effort records"};
    app.require_subcommand(1);

    std::string dataset_path, format = "text", stage_arg, target_code, rules_path;
    std::string out_path = "farsee-report.json", folds_csv_path, boxplot_csv_path;
    std::string report_path;
    std::vector<std::string> prior_specs;
    bool all_targets = false;
    ConfigOpts opts;

    auto* validate = app.add_subcommand("validate", "parse a dataset and report its shape");
    validate->add_option("dataset", dataset_path, "CSV dataset path")->required();
    validate->add_option("--format", format, "text or json");
    opts.attach(validate);

    auto* discretize =
        app.add_subcommand("discretize", "show interval schemes for the dataset");
    discretize->add_option("dataset", dataset_path, "CSV dataset path")->required();
    discretize->add_option("--stage", stage_arg, "restrict to one stage code");
    discretize->add_option("--format", format, "text or json");
    opts.attach(discretize);

    auto* mine = app.add_subcommand("mine", "mine association rules for a target stage");
    mine->add_option("dataset", dataset_path, "CSV dataset path")->required();
    mine->add_option("--target", target_code, "target stage code")->required();
    mine->add_option("--format", format, "text or json");
    opts.attach(mine);

    auto* predict = app.add_subcommand("predict", "estimate a target stage's effort");
    predict->add_option("dataset", dataset_path, "CSV dataset path")->required();
    predict->add_option("--target", target_code, "target stage code")->required();
    predict->add_option("--prior", prior_specs, "prior effort, STAGE=EFFORT (repeatable)");
    predict->add_option("--rules-file", rules_path,
                        "use these rules instead of mining the dataset");
    predict->add_option("--format", format, "text or json");
    opts.attach(predict);

    auto* evaluate = app.add_subcommand("evaluate", "jackknife evaluation against the baseline");
    evaluate->add_option("dataset", dataset_path, "CSV dataset path")->required();
    evaluate->add_option("--target", target_code, "target stage code");
    evaluate->add_flag("--all", all_targets, "evaluate every predictable stage (ES..EI)");
    evaluate->add_option("--out", out_path, "report JSON output path");
    evaluate->add_option("--folds-csv", folds_csv_path, "also write per-fold rows as CSV");
    opts.attach(evaluate);

    auto* compare = app.add_subcommand("compare", "summarize a report for model comparison");
    compare->add_option("report", report_path, "report JSON path")->required();
    compare->add_option("--boxplot-csv", boxplot_csv_path,
                        "write boxplot summaries to this CSV file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (format != "text" && format != "json") {
        throw farsee::SchemaError("--format expects text or json");
    }

    if (app.got_subcommand(validate)) return cmd_validate(dataset_path, opts, format);
    if (app.got_subcommand(discretize)) {
        return cmd_discretize(dataset_path, opts, stage_arg, format);
    }
    if (app.got_subcommand(mine)) return cmd_mine(dataset_path, opts, target_code, format);
    if (app.got_subcommand(predict)) {
        return cmd_predict(dataset_path, opts, target_code, prior_specs, rules_path, format);
    }
    if (app.got_subcommand(evaluate)) {
        return cmd_evaluate(dataset_path, opts, target_code, all_targets, out_path,
                            folds_csv_path);
    }
    if (app.got_subcommand(compare)) return cmd_compare(report_path, boxplot_csv_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const farsee::SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const farsee::ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const farsee::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const farsee::PredictionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
