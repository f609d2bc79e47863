#include "coploc/report.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace coploc {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

// All rationals reported here are probabilities; the union bound can
// exceed 1, so the decimal is capped while the ratio stays raw.
double prob_value(const Rational& r) { return std::min(1.0, r.to_double()); }

json rational_obj(const Rational& r) {
    return json{{"ratio", r.str()}, {"value", prob_value(r)}};
}

json candidate_set_obj(const ColumnDecode& column, bool degraded_hint) {
    json j;
    j["column"] = column.column;
    json cands = json::array();
    for (const Candidate& c : column.set.candidates)
        cands.push_back(json{{"row", c.row}, {"implied_error", c.implied_error}});
    j["candidates"] = std::move(cands);
    j["complete"] = column.set.complete;
    j["degraded"] = column.set.degraded || degraded_hint;
    return j;
}

json config_obj(const CampaignConfig& config) {
    json j;
    j["dims"] = config.dims;
    j["bit_width"] = config.bit_width;
    j["pool"] = to_string(config.pool_kind);
    j["trials"] = config.trials;
    j["rng_seed"] = config.rng_seed;
    j["error_model"] = to_string(config.error_model);
    j["sign_convention"] = to_string(config.sign_convention);
    j["scheme"] = to_string(config.scheme);
    json ws;
    ws["kind"] = config.weight_source.kind == WeightSource::Kind::file
                     ? "file"
                     : "deterministic_random";
    if (config.weight_source.kind == WeightSource::Kind::file)
        ws["path"] = config.weight_source.path;
    else
        ws["seed"] = config.weight_source.seed;
    j["weight_source"] = std::move(ws);
    if (config.cols) j["cols"] = *config.cols;
    return j;
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) known = true;
        if (!known)
            throw std::invalid_argument("unknown key \"" + item.key() + "\" in " + where);
    }
}

}  // namespace

std::string candidate_set_json(const ColumnDecode& column, bool degraded_hint, int indent) {
    return candidate_set_obj(column, degraded_hint).dump(indent);
}

std::string localize_report_json(const LocalizeReport& report, int indent) {
    json j;
    j["status"] = report.status;
    j["faulty_columns"] = report.faulty_columns;
    j["degraded"] = report.degraded;
    json cols = json::array();
    for (const ColumnDecode& c : report.columns)
        cols.push_back(candidate_set_obj(c, report.degraded));
    j["columns"] = std::move(cols);
    if (report.two_round) {
        json tr;
        tr["status"] = to_string(report.two_round->status);
        if (report.two_round->ok()) {
            tr["row"] = report.two_round->row;
            tr["error"] = report.two_round->error;
        }
        j["two_round"] = std::move(tr);
    }
    return j.dump(indent);
}

std::string pfail_table_json(const std::vector<PfailReport>& rows, int bit_width, int indent) {
    json j;
    j["bit_width"] = bit_width;
    j["magnitude_bound"] = (i64(1) << (bit_width - 1)) - 1;
    json out = json::array();
    for (const PfailReport& r : rows) {
        json row;
        row["L"] = r.dim;
        row["pool"] = to_string(r.pool_kind);
        row["degraded"] = r.degraded;
        if (r.bound) row["bound"] = rational_obj(*r.bound);
        if (r.exact) row["exact"] = rational_obj(*r.exact);
        if (r.repeated_row_fraction)
            row["repeated_row_fraction"] = rational_obj(*r.repeated_row_fraction);
        if (r.empirical) {
            row["empirical"] = json{{"rate", r.empirical->rate},
                                    {"trials", r.empirical->trials},
                                    {"ci_low", r.empirical->ci_low},
                                    {"ci_high", r.empirical->ci_high}};
        }
        out.push_back(std::move(row));
    }
    j["rows"] = std::move(out);
    return j.dump(indent);
}

std::string pfail_table_csv(const std::vector<PfailReport>& rows) {
    std::string csv = "L,bound,exact\n";
    for (const PfailReport& r : rows) {
        csv += std::to_string(r.dim);
        csv += ',';
        if (r.bound) csv += format_double(prob_value(*r.bound));
        csv += ',';
        if (r.exact) csv += format_double(prob_value(*r.exact));
        csv += '\n';
    }
    return csv;
}

CampaignConfig campaign_config_from_json(const std::string& text) {
    json j = json::parse(text);
    reject_unknown_keys(j,
                        {"dims", "bit_width", "pool", "trials", "rng_seed", "error_model",
                         "sign_convention", "weight_source", "scheme", "cols"},
                        "campaign config");
    CampaignConfig c;
    c.dims = j.at("dims").get<std::vector<std::size_t>>();
    c.bit_width = j.value("bit_width", c.bit_width);
    c.pool_kind = pool_kind_from_string(j.value("pool", to_string(c.pool_kind)));
    c.trials = j.value("trials", c.trials);
    c.rng_seed = j.value("rng_seed", c.rng_seed);
    c.error_model = error_model_from_string(j.value("error_model", to_string(c.error_model)));
    c.sign_convention =
        sign_convention_from_string(j.value("sign_convention", to_string(c.sign_convention)));
    c.scheme = scheme_from_string(j.value("scheme", to_string(c.scheme)));
    if (j.contains("weight_source")) {
        const json& ws = j.at("weight_source");
        reject_unknown_keys(ws, {"kind", "seed", "path"}, "weight_source");
        const std::string kind = ws.value("kind", "deterministic_random");
        if (kind == "deterministic_random") {
            c.weight_source.kind = WeightSource::Kind::deterministic_random;
            c.weight_source.seed = ws.value("seed", c.weight_source.seed);
        } else if (kind == "file") {
            c.weight_source.kind = WeightSource::Kind::file;
            c.weight_source.path = ws.at("path").get<std::string>();
        } else {
            throw std::invalid_argument("unknown weight_source kind: " + kind);
        }
    }
    if (j.contains("cols")) c.cols = j.at("cols").get<std::size_t>();
    return c;
}

std::string campaign_config_json(const CampaignConfig& config, int indent) {
    return config_obj(config).dump(indent);
}

std::string campaign_result_json(const CampaignResult& result, int indent) {
    json j;
    j["config"] = config_obj(result.config);
    json dims = json::array();
    for (const DimResult& d : result.dims) {
        json row;
        row["L"] = d.dim;
        row["trials"] = d.trials;
        row["complete_correct"] = d.complete_correct_count;
        row["incomplete"] = d.incomplete_count;
        row["model_violations"] = d.model_violation_count;
        row["rate"] = d.empirical_rate;
        row["ci_low"] = d.ci_low;
        row["ci_high"] = d.ci_high;
        row["degraded"] = d.degraded;
        if (d.analytical_bound) row["bound"] = rational_obj(*d.analytical_bound);
        if (d.analytical_exact) row["exact"] = rational_obj(*d.analytical_exact);
        if (d.repeated_row_fraction) {
            row["repeated_row_fraction"] = rational_obj(*d.repeated_row_fraction);
            row["repeated_row_trials"] = d.repeated_row_trials;
            row["repeated_row_incomplete"] = d.repeated_row_incomplete;
        }
        dims.push_back(std::move(row));
    }
    j["dims"] = std::move(dims);
    return j.dump(indent);
}

std::string campaign_result_csv(const CampaignResult& result) {
    std::string csv = "L,rate,ci_low,ci_high,bound,exact\n";
    for (const DimResult& d : result.dims) {
        csv += std::to_string(d.dim);
        csv += ',';
        csv += format_double(d.empirical_rate);
        csv += ',';
        csv += format_double(d.ci_low);
        csv += ',';
        csv += format_double(d.ci_high);
        csv += ',';
        if (d.analytical_bound) csv += format_double(prob_value(*d.analytical_bound));
        csv += ',';
        if (d.analytical_exact) csv += format_double(prob_value(*d.analytical_exact));
        csv += '\n';
    }
    return csv;
}

}  // namespace coploc
