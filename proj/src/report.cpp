#include "farsee/report.hpp"

#include "farsee/errors.hpp"

#include <charconv>
#include <cmath>

namespace farsee {

using nlohmann::json;

namespace {

double round6(double v) { return std::round(v * 1e6) / 1e6; }

json to_json(const PaddingPolicy& pad) {
    json j;
    if (pad.mode == PaddingPolicy::Mode::fraction) {
        j["mode"] = "fraction";
        j["fraction"] = pad.fraction;
    } else {
        j["mode"] = "explicit";
        j["d1"] = pad.d1;
        j["d2"] = pad.d2;
    }
    return j;
}

json config_to_json(const PipelineConfig& cfg) {
    json j;
    for (Stage s : all_stages()) {
        j["intervals"][std::string(stage_code(s))] = cfg.intervals_for(s);
        j["padding"][std::string(stage_code(s))] = to_json(cfg.padding_for(s));
    }
    j["mining"]["min_support"] = cfg.min_support;
    j["mining"]["min_confidence"] = cfg.min_confidence;
    if (cfg.outlier_policy.kind == OutlierPolicy::Kind::none) {
        j["preprocessing"]["outlier_policy"] = "none";
    } else {
        j["preprocessing"]["outlier_policy"] = "iqr";
        j["preprocessing"]["outlier_k"] = cfg.outlier_policy.k;
    }
    j["prediction"]["fallback"] =
        cfg.fallback == PipelineConfig::FallbackKind::error ? "error" : "median";
    return j;
}

json optional_to_json(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

json fold_side_to_json(const MethodFold& fold) {
    json j;
    j["estimate"] = optional_to_json(fold.estimate);
    j["bias"] = optional_to_json(fold.bias);
    j["abs_residual"] = optional_to_json(fold.abs_residual);
    j["fallback_used"] = fold.fallback_used;
    j["error"] = fold.error;
    return j;
}

json metrics_to_json(const MethodMetrics& m) {
    json j;
    j["mean_bias"] = optional_to_json(m.mean_bias);
    j["mmre"] = optional_to_json(m.mmre);
    j["mdmre"] = optional_to_json(m.mdmre);
    j["folds_used"] = m.folds_used;
    j["folds_failed"] = m.folds_failed;
    j["bias_undefined"] = m.bias_undefined;
    j["fallback_count"] = m.fallback_count;
    return j;
}

json boxplot_to_json(const std::optional<BoxplotSummary>& box) {
    if (!box) return nullptr;
    json j;
    j["median"] = box->median;
    j["q1"] = box->q1;
    j["q3"] = box->q3;
    j["iqr"] = box->iqr;
    j["whisker_low"] = box->whisker_low;
    j["whisker_high"] = box->whisker_high;
    j["outliers"] = box->outliers;
    return j;
}

} // namespace

json rule_to_json(const AssociationRule& rule) {
    json j;
    json antecedent = json::array();
    for (const Item& item : rule.antecedent) antecedent.push_back(item_code(item));
    j["antecedent"] = antecedent;
    if (rule.consequent.size() == 1) {
        j["consequent"] = item_code(rule.consequent.front());
    } else {
        json consequent = json::array();
        for (const Item& item : rule.consequent) consequent.push_back(item_code(item));
        j["consequent"] = consequent;
    }
    j["support"] = round6(rule.support);
    j["confidence"] = round6(rule.confidence);
    return j;
}

json report_to_json(const EvaluationReport& report) {
    json j;
    j["config"] = config_to_json(report.config);

    json summary;
    summary["records_total"] = report.preprocessing.records_total;
    summary["records_complete"] = report.preprocessing.records_complete;
    summary["records_used"] = report.preprocessing.records_used;
    json dropped = json::array();
    for (const auto& drop : report.preprocessing.dropped_outliers) {
        json d;
        d["project_id"] = drop.project_id;
        json stages = json::array();
        for (Stage s : drop.stages) stages.push_back(std::string(stage_code(s)));
        d["stages"] = stages;
        dropped.push_back(d);
    }
    summary["dropped_outliers"] = dropped;
    summary["unit"] = report.unit_label;
    for (Stage s : all_stages()) {
        summary["per_stage"][std::string(stage_code(s))] = {
            {"min", report.stage_min[ordinal(s) - 1]},
            {"max", report.stage_max[ordinal(s) - 1]}};
    }
    j["dataset_summary"] = summary;

    json stages = json::array();
    for (const StageEvaluation& eval : report.stages) {
        json stage;
        stage["target"] = std::string(stage_code(eval.target));
        json rules = json::array();
        for (const auto& rule : eval.rules) rules.push_back(rule_to_json(rule));
        stage["rules"] = rules;
        stage["rules_before_filter"] = eval.rules_before_filter;
        json folds = json::array();
        for (const FoldRow& row : eval.folds) {
            json fold;
            fold["project_id"] = row.project_id;
            fold["actual"] = row.actual;
            fold["clamped"] = row.clamped;
            fold["model"] = fold_side_to_json(row.model);
            fold["regression"] = fold_side_to_json(row.regression);
            folds.push_back(fold);
        }
        stage["folds"] = folds;
        stage["metrics_model"] = metrics_to_json(eval.model);
        stage["metrics_regression"] = metrics_to_json(eval.regression);
        if (eval.wilcoxon) {
            json w;
            w["rank_sum"] = eval.wilcoxon->rank_sum;
            w["z_value"] = eval.wilcoxon->z_value;
            w["p_value"] = eval.wilcoxon->p_value;
            w["p_exact"] = optional_to_json(eval.wilcoxon->p_exact);
            stage["wilcoxon"] = w;
        } else {
            stage["wilcoxon"] = nullptr;
        }
        stage["wilcoxon_error"] = eval.wilcoxon_error;
        stage["boxplots"] = {{"model", boxplot_to_json(eval.boxplot_model)},
                             {"regression", boxplot_to_json(eval.boxplot_regression)}};
        stages.push_back(stage);
    }
    j["stages"] = stages;
    return j;
}

std::string report_to_string(const EvaluationReport& report) {
    return report_to_json(report).dump(2) + "\n";
}

namespace {

void require_keys(const json& obj, const std::vector<std::string>& keys,
                  const std::string& where, std::vector<std::string>& problems) {
    if (!obj.is_object()) {
        problems.push_back(where + ": expected an object");
        return;
    }
    for (const auto& key : keys) {
        if (!obj.contains(key)) problems.push_back(where + ": missing key '" + key + "'");
    }
}

void check_number_or_null(const json& obj, const std::string& key, const std::string& where,
                          std::vector<std::string>& problems) {
    if (obj.contains(key) && !obj[key].is_number() && !obj[key].is_null()) {
        problems.push_back(where + "." + key + ": expected number or null");
    }
}

} // namespace

std::vector<std::string> validate_report_json(const json& doc) {
    std::vector<std::string> problems;
    require_keys(doc, {"config", "dataset_summary", "stages"}, "report", problems);
    if (!doc.is_object()) return problems;

    if (doc.contains("config")) {
        require_keys(doc["config"],
                     {"intervals", "padding", "mining", "preprocessing", "prediction"},
                     "config", problems);
    }
    if (doc.contains("dataset_summary")) {
        require_keys(doc["dataset_summary"],
                     {"records_total", "records_complete", "records_used", "per_stage"},
                     "dataset_summary", problems);
    }

    if (!doc.contains("stages")) return problems;
    if (!doc["stages"].is_array()) {
        problems.push_back("stages: expected an array");
        return problems;
    }
    std::size_t idx = 0;
    for (const auto& stage : doc["stages"]) {
        const std::string where = "stages[" + std::to_string(idx++) + "]";
        require_keys(stage,
                     {"target", "rules", "folds", "metrics_model", "metrics_regression",
                      "wilcoxon", "boxplots"},
                     where, problems);
        if (!stage.is_object()) continue;
        if (stage.contains("rules") && !stage["rules"].is_array()) {
            problems.push_back(where + ".rules: expected an array");
        }
        if (stage.contains("folds")) {
            if (!stage["folds"].is_array()) {
                problems.push_back(where + ".folds: expected an array");
            } else {
                std::size_t fidx = 0;
                for (const auto& fold : stage["folds"]) {
                    const std::string fwhere = where + ".folds[" + std::to_string(fidx++) + "]";
                    require_keys(fold, {"project_id", "actual", "model", "regression"},
                                 fwhere, problems);
                    for (const char* side : {"model", "regression"}) {
                        if (!fold.is_object() || !fold.contains(side)) continue;
                        require_keys(fold[side],
                                     {"estimate", "bias", "abs_residual", "fallback_used", "error"},
                                     fwhere + "." + side, problems);
                        check_number_or_null(fold[side], "estimate", fwhere, problems);
                        check_number_or_null(fold[side], "bias", fwhere, problems);
                    }
                }
            }
        }
        for (const char* metrics : {"metrics_model", "metrics_regression"}) {
            if (!stage.contains(metrics)) continue;
            require_keys(stage[metrics],
                         {"mean_bias", "mmre", "mdmre", "folds_used", "folds_failed"},
                         where + "." + metrics, problems);
            check_number_or_null(stage[metrics], "mean_bias", where, problems);
            check_number_or_null(stage[metrics], "mmre", where, problems);
            check_number_or_null(stage[metrics], "mdmre", where, problems);
        }
        if (stage.contains("wilcoxon") && !stage["wilcoxon"].is_null()) {
            require_keys(stage["wilcoxon"], {"rank_sum", "z_value", "p_value"},
                         where + ".wilcoxon", problems);
        }
        if (stage.contains("boxplots")) {
            require_keys(stage["boxplots"], {"model", "regression"}, where + ".boxplots",
                         problems);
        }
    }
    return problems;
}

std::string folds_csv(const EvaluationReport& report) {
    std::string out =
        "target,project_id,actual,clamped,"
        "model_estimate,model_bias,model_abs_residual,model_fallback_used,model_error,"
        "regression_estimate,regression_bias,regression_abs_residual,regression_error\n";
    auto fmt = [](const std::optional<double>& v) {
        if (!v) return std::string();
        char buf[40];
        auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), *v);
        return std::string(buf, end);
    };
    for (const StageEvaluation& eval : report.stages) {
        for (const FoldRow& row : eval.folds) {
            out += std::string(stage_code(eval.target)) + ',' + row.project_id + ',' +
                   fmt(row.actual) + ',' + (row.clamped ? "1" : "0") + ',' +
                   fmt(row.model.estimate) + ',' + fmt(row.model.bias) + ',' +
                   fmt(row.model.abs_residual) + ',' + (row.model.fallback_used ? "1" : "0") +
                   ',' + row.model.error + ',' + fmt(row.regression.estimate) + ',' +
                   fmt(row.regression.bias) + ',' + fmt(row.regression.abs_residual) + ',' +
                   row.regression.error + '\n';
        }
    }
    return out;
}

std::string boxplots_csv(const json& report_doc) {
    std::string out =
        "target,method,median,q1,q3,iqr,whisker_low,whisker_high,outliers\n";
    auto fmt = [](const json& v) {
        if (v.is_null()) return std::string();
        return v.dump();
    };
    for (const auto& stage : report_doc.at("stages")) {
        for (const char* method : {"model", "regression"}) {
            const json& box = stage.at("boxplots").at(method);
            if (box.is_null()) continue;
            std::string outliers;
            for (const auto& o : box.at("outliers")) {
                if (!outliers.empty()) outliers += ';';
                outliers += o.dump();
            }
            out += stage.at("target").get<std::string>() + ',' + method + ',' +
                   fmt(box.at("median")) + ',' + fmt(box.at("q1")) + ',' + fmt(box.at("q3")) +
                   ',' + fmt(box.at("iqr")) + ',' + fmt(box.at("whisker_low")) + ',' +
                   fmt(box.at("whisker_high")) + ',' + outliers + '\n';
        }
    }
    return out;
}

} // namespace farsee
