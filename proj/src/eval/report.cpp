// Copyright 2026 The discoprobe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "disco/eval/report.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

#include "disco/common/io.hpp"
#include "disco/synth/task_instance.hpp"

namespace disco::eval {

namespace {

std::string one_decimal(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

}  // namespace

Report make_report(const std::vector<EvalResult>& results, const std::vector<std::string>& tasks) {
  std::vector<std::string> wanted = tasks;
  if (wanted.empty()) wanted.assign(kReportTasks.begin(), kReportTasks.end());
  for (const auto& t : wanted)
    if (std::find(kReportTasks.begin(), kReportTasks.end(), t) == kReportTasks.end())
      throw ValidationError("unknown report task '" + t + "'");

  Report r;
  for (std::size_t i = 0; i < kReportTasks.size(); ++i) {
    const auto task = kReportTasks[i];
    if (std::find(wanted.begin(), wanted.end(), task) == wanted.end()) continue;
    double sum = 0;
    int n = 0;
    for (const auto& res : results)
      if (synth::base_task(res.task) == task) {
        sum += res.test_accuracy;
        ++n;
      }
    if (n == 0) throw MissingTask(std::string(task));
    r.columns.emplace_back(kReportColumns[i]);
    r.values.push_back(100.0 * sum / n);
  }
  if (r.columns.size() == kReportTasks.size()) {
    double sum = 0;
    for (double v : r.values) sum += v;
    r.columns.emplace_back("avg");
    r.values.push_back(sum / static_cast<double>(kReportTasks.size()));
  }

  std::vector<std::string> cells;
  for (double v : r.values) cells.push_back(one_decimal(v));
  r.csv = join(r.columns, ",") + "\n" + join(cells, ",") + "\n";

  std::string head, body;
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    const std::size_t w = std::max(r.columns[i].size(), cells[i].size());
    char buf[64];
    std::snprintf(buf, sizeof buf, "%*s", static_cast<int>(w), r.columns[i].c_str());
    head += (i ? "  " : "") + std::string(buf);
    std::snprintf(buf, sizeof buf, "%*s", static_cast<int>(w), cells[i].c_str());
    body += (i ? "  " : "") + std::string(buf);
  }
  r.txt = head + "\n" + body + "\n";
  return r;
}

void write_report(const Report& report, const std::filesystem::path& dir) {
  write_file_atomic(dir / "report.csv", report.csv);
  write_file_atomic(dir / "report.txt", report.txt);
}

std::string results_jsonl(const std::vector<EvalResult>& results) {
  std::string out;
  for (const auto& r : results) {
    out += nlohmann::json{{"task", r.task},           {"dev_accuracy", r.dev_accuracy},
                          {"test_accuracy", r.test_accuracy}, {"l2", r.l2},
                          {"seed", r.seed},           {"feature_dim", r.feature_dim}}
               .dump();
    out += '\n';
  }
  return out;
}

std::vector<EvalResult> parse_results(std::string_view jsonl) {
  std::vector<EvalResult> out;
  std::size_t line_no = 0;
  for (const auto& line : split(jsonl, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      EvalResult r;
      r.task = j.at("task").get<std::string>();
      r.dev_accuracy = j.at("dev_accuracy").get<double>();
      r.test_accuracy = j.at("test_accuracy").get<double>();
      r.l2 = j.at("l2").get<double>();
      r.seed = j.at("seed").get<std::uint64_t>();
      r.feature_dim = j.at("feature_dim").get<long>();
      if (r.test_accuracy < 0 || r.test_accuracy > 1 || r.dev_accuracy < 0 || r.dev_accuracy > 1)
        throw ValidationError("accuracy outside [0, 1]");
      out.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("results line " + std::to_string(line_no) + ": " + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError("results line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace disco::eval
