#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "entmono/verifier.hpp"

namespace entmono {

namespace {

std::string fmt(double x) {
  if (!std::isfinite(x)) return "";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

double number_or_nan(const nlohmann::json& j) {
  return j.is_number() ? j.get<double>() : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

void convert_base(VerificationReport& report, Base base) {
  if (base == Base::Nats) return;
  auto it = report.metadata.find("units");
  if (it == report.metadata.end() || it->second != "nats") return;
  const double k = 1.0 / std::numbers::ln2;
  report.lhs *= k;
  report.rhs *= k;
  report.gap *= k;
  report.tolerance *= k;
  it->second = "bits";
}

std::vector<SummaryRow> summarize(const std::vector<VerificationReport>& reports) {
  std::vector<SummaryRow> rows;
  for (const auto& r : reports) {
    auto row = std::find_if(rows.begin(), rows.end(), [&](const SummaryRow& s) {
      return s.check_id == r.check_id && s.measure_id == r.measure_id;
    });
    if (row == rows.end()) {
      rows.push_back(SummaryRow{r.check_id, r.measure_id});
      row = rows.end() - 1;
    }
    ++row->trials;
    if (r.verdict == Verdict::Pass) ++row->passes;
    if (r.verdict == Verdict::Fail) ++row->failures;
    if (r.verdict == Verdict::Skipped || !std::isfinite(r.gap)) continue;
    if (row->evaluated == 0) {
      row->min_gap = row->max_gap = r.gap;
    } else {
      row->min_gap = std::min(row->min_gap, r.gap);
      row->max_gap = std::max(row->max_gap, r.gap);
    }
    row->mean_gap += r.gap;
    ++row->evaluated;
  }
  for (auto& row : rows) {
    if (row.evaluated > 0) {
      row.mean_gap /= row.evaluated;
    } else {
      row.min_gap = row.mean_gap = row.max_gap = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return rows;
}

std::string to_json_line(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["check_id"] = r.check_id;
  j["measure_id"] = r.measure_id;
  j["channel_class"] = r.channel_class ? nlohmann::ordered_json(to_string(*r.channel_class)) : nullptr;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["gap"] = r.gap;
  j["tolerance"] = r.tolerance;
  j["verdict"] = to_string(r.verdict);
  j["seed"] = r.seed;
  j["metadata"] = r.metadata;
  return j.dump();
}

VerificationReport report_from_json_line(const std::string& line) {
  const auto j = nlohmann::json::parse(line);
  VerificationReport r;
  r.check_id = j.at("check_id").get<std::string>();
  r.measure_id = j.at("measure_id").get<std::string>();
  if (!j.at("channel_class").is_null()) r.channel_class = channel_tag_from_string(j.at("channel_class").get<std::string>());
  r.lhs = number_or_nan(j.at("lhs"));
  r.rhs = number_or_nan(j.at("rhs"));
  r.gap = number_or_nan(j.at("gap"));
  r.tolerance = number_or_nan(j.at("tolerance"));
  r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  r.seed = j.at("seed").get<std::uint64_t>();
  r.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
  return r;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << "check_id,measure_id,trials,passes,min_gap,mean_gap,max_gap\n";
  for (const auto& row : rows) {
    out << row.check_id << ',' << row.measure_id << ',' << row.trials << ',' << row.passes << ',' << fmt(row.min_gap)
        << ',' << fmt(row.mean_gap) << ',' << fmt(row.max_gap) << '\n';
  }
  return out.str();
}

void write_reports(const std::string& path, const std::vector<VerificationReport>& reports) {
  std::ofstream jsonl(path + ".jsonl");
  if (!jsonl) throw Error("cannot write " + path + ".jsonl");
  for (const auto& r : reports) jsonl << to_json_line(r) << '\n';
  std::ofstream csv(path + ".csv");
  if (!csv) throw Error("cannot write " + path + ".csv");
  csv << summary_csv(summarize(reports));
}

}  // namespace entmono
