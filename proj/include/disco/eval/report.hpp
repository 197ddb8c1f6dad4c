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

#ifndef DISCO_EVAL_REPORT_HPP_
#define DISCO_EVAL_REPORT_HPP_

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "disco/eval/probe.hpp"

namespace disco::eval {

class MissingTask : public ValidationError {
 public:
  explicit MissingTask(const std::string& task) : ValidationError("no result for task " + task), task_(task) {}
  const std::string& task() const { return task_; }

 private:
  std::string task_;
};

// Task names as used in dataset names, and their report columns.
inline constexpr std::array<std::string_view, 7> kReportTasks = {"sp", "bso", "dc", "ssp", "pdtb-e", "pdtb-i", "rst"};
inline constexpr std::array<std::string_view, 7> kReportColumns = {"SP",     "BSO",    "DC",    "SSP",
                                                                   "PDTB-E", "PDTB-I", "RST-DT"};

struct Report {
  std::vector<std::string> columns;
  std::vector<double> values;  // percentages, unrounded
  std::string csv;
  std::string txt;
};

// One column per requested task (all seven when `tasks` is empty) holding
// the mean test accuracy over the task's domains; "avg" is added only when
// all seven tasks are present. Throws MissingTask.
Report make_report(const std::vector<EvalResult>& results, const std::vector<std::string>& tasks = {});

void write_report(const Report& report, const std::filesystem::path& dir);

std::string results_jsonl(const std::vector<EvalResult>& results);
std::vector<EvalResult> parse_results(std::string_view jsonl);

}  // namespace disco::eval

#endif  // DISCO_EVAL_REPORT_HPP_
