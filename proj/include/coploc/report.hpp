#pragma once

// JSON and CSV rendering for candidate reports, analytical tables, and
// campaign results, plus campaign-config parsing. All output is
// deterministic: object keys are sorted and rationals carry both the
// exact "num/den" string and a decimal approximation.

#include <string>
#include <vector>

#include "coploc/analysis.hpp"
#include "coploc/campaign.hpp"
#include "coploc/localize.hpp"

namespace coploc {

std::string candidate_set_json(const ColumnDecode& column, bool degraded_hint, int indent = 2);

struct LocalizeReport {
    std::vector<ColumnDecode> columns;     // one-round decodes
    std::optional<TwoRoundResult> two_round;
    std::vector<std::size_t> faulty_columns;
    bool degraded = false;
    std::string status;  // no_fault | localized | incomplete | model_violation
};

std::string localize_report_json(const LocalizeReport& report, int indent = 2);

std::string pfail_table_json(const std::vector<PfailReport>& rows, int bit_width,
                             int indent = 2);
std::string pfail_table_csv(const std::vector<PfailReport>& rows);

CampaignConfig campaign_config_from_json(const std::string& text);
std::string campaign_config_json(const CampaignConfig& config, int indent = 2);
std::string campaign_result_json(const CampaignResult& result, int indent = 2);
// One row per dim: L, rate, ci_low, ci_high, bound, exact (decimal;
// blank bound/exact on degraded dims).
std::string campaign_result_csv(const CampaignResult& result);

// Fixed-precision decimal used everywhere a double is printed outside
// JSON, so CSV output is byte-stable.
std::string format_double(double v);

}  // namespace coploc
