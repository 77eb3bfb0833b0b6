// Copyright 2026 The CircuGraph Authors
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

#include "eval/benchmark.hpp"

#include <future>
#include <iomanip>
#include <map>
#include <sstream>

#include "common/error.hpp"

namespace circugraph::eval {

MetricReport score_answer(const std::string& answer, const std::string& reference) {
  MetricReport m;
  const auto c = tokenize(answer);
  const auto r = tokenize(reference);
  m.rouge = rouge_l(c, r);
  m.exact = exact_match(answer, reference);
  if (!c.empty() && !r.empty()) m.bert = bert_style_score(c, r);
  return m;
}

namespace {

std::string fmt(double v) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(6) << v;
  return ss.str();
}

// Tabs and newlines would break the row layout.
std::string cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '\t') {
      out += "\\t";
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out += c;
    }
  }
  return out;
}

BenchmarkRow run_one(const QaCase& c, const BenchmarkMode& mode) {
  BenchmarkRow row;
  row.case_id = c.id;
  row.mode = mode.label;
  try {
    auto o = mode.pipeline->answer(c.question, mode.config);
    row.answer = o.answer.text;
    row.grounded = o.answer.grounded;
    row.usage = o.usage;
  } catch (const Error& e) {
    row.error = std::string(error_code_name(e.code())) + ": " + e.what();
  }
  row.metrics = score_answer(row.answer, c.reference);
  return row;
}

}  // namespace

BenchmarkReport run_benchmark(const std::vector<QaCase>& cases, const std::vector<BenchmarkMode>& modes) {
  for (const auto& m : modes) {
    if (!m.pipeline) throw Error(ErrorCode::kConfig, "benchmark mode " + m.label + " has no pipeline");
  }
  std::vector<std::future<std::vector<BenchmarkRow>>> jobs;
  for (const auto& c : cases) {
    jobs.push_back(std::async(std::launch::async, [&c, &modes] {
      std::vector<BenchmarkRow> rows;
      for (const auto& m : modes) rows.push_back(run_one(c, m));
      return rows;
    }));
  }
  BenchmarkReport report;
  for (auto& j : jobs) {
    for (auto& r : j.get()) report.rows.push_back(std::move(r));
  }
  return report;
}

std::string BenchmarkReport::to_tsv() const {
  std::ostringstream out;
  out << "# ROUGE-L over lowercase word tokens, no stemming; token counts are whitespace tokens of LLM traffic\n";
  out << "case\tmode\texact_match\trouge_p\trouge_r\trouge_f1\tbert\tgrounded";
  for (auto s : pipeline::kStages) {
    std::string n(pipeline::stage_name(s));
    for (auto& c : n) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    out << "\t" << n << "_in\t" << n << "_out\t" << n << "_us";
  }
  out << "\ttotal_in\ttotal_out\ttotal_us\terror\tanswer\n";
  for (const auto& r : rows) {
    out << r.case_id << "\t" << r.mode << "\t" << r.metrics.exact << "\t" << fmt(r.metrics.rouge.precision) << "\t"
        << fmt(r.metrics.rouge.recall) << "\t" << fmt(r.metrics.rouge.f1) << "\t" << fmt(r.metrics.bert) << "\t"
        << (r.grounded ? 1 : 0);
    auto put = [&](const pipeline::StageUsage& s) {
      out << "\t" << s.input_tokens << "\t" << s.output_tokens << "\t" << s.wall.count();
    };
    for (auto s : pipeline::kStages) put(r.usage.stage(s));
    put(r.usage.total());
    out << "\t" << cell(r.error) << "\t" << cell(r.answer) << "\n";
  }
  return out.str();
}

std::string BenchmarkReport::summary() const {
  struct Acc {
    std::size_t n = 0;
    double exact = 0, f1 = 0, bert = 0;
    std::size_t in = 0, outt = 0;
  };
  std::vector<std::string> order;
  std::map<std::string, Acc> by_mode;
  for (const auto& r : rows) {
    if (!by_mode.count(r.mode)) order.push_back(r.mode);
    auto& a = by_mode[r.mode];
    ++a.n;
    a.exact += r.metrics.exact;
    a.f1 += r.metrics.rouge.f1;
    a.bert += r.metrics.bert;
    a.in += r.usage.total().input_tokens;
    a.outt += r.usage.total().output_tokens;
  }
  std::ostringstream out;
  out << std::left << std::setw(16) << "mode" << std::setw(8) << "cases" << std::setw(12) << "exact" << std::setw(12)
      << "rouge_f1" << std::setw(12) << "bert" << std::setw(10) << "in_tok" << "out_tok\n";
  for (const auto& m : order) {
    const auto& a = by_mode[m];
    const double n = static_cast<double>(a.n);
    out << std::left << std::setw(16) << m << std::setw(8) << a.n << std::setw(12) << fmt(a.exact / n).substr(0, 8)
        << std::setw(12) << fmt(a.f1 / n).substr(0, 8) << std::setw(12) << fmt(a.bert / n).substr(0, 8)
        << std::setw(10) << a.in << a.outt << "\n";
  }
  return out.str();
}

std::size_t BenchmarkReport::errors() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += !r.error.empty();
  return n;
}

AblationReport run_ablation(const pipeline::Pipeline& p, const std::vector<QaCase>& cases,
                            const pipeline::PipelineConfig& base) {
  AblationReport report;
  for (auto mode : {retrieval::MatchMode::kWithTemplate, retrieval::MatchMode::kNoTemplate,
                    retrieval::MatchMode::kFuzzyTemplate}) {
    BenchmarkMode bm{std::string(retrieval::mode_name(mode)), &p, base};
    bm.config.matcher_mode = mode;
    bm.config.baseline = pipeline::Baseline::kCircuGraphRag;
    auto bench = run_benchmark(cases, {bm});
    AblationRow row;
    row.mode = bm.label;
    for (const auto& r : bench.rows) row.correct.push_back(r.metrics.exact);
    row.accuracy = row.correct.empty() ? 0 : round_accuracy(row.correct);
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string AblationReport::to_tsv() const {
  std::ostringstream out;
  out << "mode";
  if (!rows.empty()) {
    for (std::size_t i = 0; i < rows.front().correct.size(); ++i) out << "\tcase" << i + 1;
  }
  out << "\taccuracy\n";
  for (const auto& r : rows) {
    out << r.mode;
    for (int c : r.correct) out << "\t" << c;
    out << "\t" << fmt(r.accuracy) << "\n";
  }
  return out.str();
}

namespace {

const std::string& modal(const std::vector<std::string>& outputs) {
  std::map<std::string, std::size_t> counts;
  for (const auto& o : outputs) ++counts[o];
  const std::string* best = &outputs.front();
  for (const auto& o : outputs) {
    if (counts[o] > counts[*best]) best = &o;
  }
  return *best;
}

}  // namespace

double agreement_rate(const std::vector<std::string>& outputs) {
  if (outputs.empty()) throw Error(ErrorCode::kEmptyRounds, "no rounds");
  const auto& m = modal(outputs);
  std::vector<int> same;
  for (const auto& o : outputs) same.push_back(o == m ? 1 : 0);
  return round_accuracy(same);
}

double agreement_similarity(const std::vector<std::string>& outputs) {
  if (outputs.empty()) throw Error(ErrorCode::kEmptyRounds, "no rounds");
  const auto& m = modal(outputs);
  double sum = 0;
  for (const auto& o : outputs) sum += o == m ? 1.0 : rouge_l(o, m).f1;
  return sum / static_cast<double>(outputs.size());
}

ConsistencyReport run_consistency(
    const std::function<std::shared_ptr<const pipeline::Pipeline>(std::size_t)>& round_pipeline,
    const std::vector<QaCase>& cases, const pipeline::PipelineConfig& config, std::size_t rounds) {
  if (rounds == 0) throw Error(ErrorCode::kEmptyRounds, "consistency needs at least one round");
  ConsistencyReport report;
  report.rounds = rounds;
  for (const auto& c : cases) report.cases.push_back({c.id, {}, {}, {}, 0, 0, 0, 0, 0});
  for (std::size_t t = 0; t < rounds; ++t) {
    auto p = round_pipeline(t);
    for (std::size_t i = 0; i < cases.size(); ++i) {
      auto& cc = report.cases[i];
      try {
        auto o = p->answer(cases[i].question, config);
        cc.tm.push_back(o.stages.tm);
        cc.qm.push_back(o.stages.qm);
        cc.answers.push_back(o.answer.text);
      } catch (const Error& e) {
        cc.tm.push_back(std::string("error: ") + e.what());
        cc.qm.push_back(cc.tm.back());
        cc.answers.emplace_back();
      }
    }
  }
  for (std::size_t i = 0; i < cases.size(); ++i) {
    auto& cc = report.cases[i];
    cc.tm_exact_rate = agreement_rate(cc.tm);
    cc.qm_exact_rate = agreement_rate(cc.qm);
    cc.tm_similarity = agreement_similarity(cc.tm);
    cc.qm_similarity = agreement_similarity(cc.qm);
    std::vector<int> ok;
    for (const auto& a : cc.answers) ok.push_back(exact_match(a, cases[i].reference));
    cc.answer_accuracy = round_accuracy(ok);
    report.tm_exact_rate += cc.tm_exact_rate;
    report.qm_exact_rate += cc.qm_exact_rate;
    report.answer_accuracy += cc.answer_accuracy;
  }
  if (!cases.empty()) {
    const double n = static_cast<double>(cases.size());
    report.tm_exact_rate /= n;
    report.qm_exact_rate /= n;
    report.answer_accuracy /= n;
  }
  return report;
}

std::string ConsistencyReport::to_tsv() const {
  std::ostringstream out;
  out << "# rounds=" << rounds << "\n";
  out << "case\ttm_exact_rate\tqm_exact_rate\ttm_similarity\tqm_similarity\tanswer_accuracy\n";
  for (const auto& c : cases) {
    out << c.case_id << "\t" << fmt(c.tm_exact_rate) << "\t" << fmt(c.qm_exact_rate) << "\t" << fmt(c.tm_similarity)
        << "\t" << fmt(c.qm_similarity) << "\t" << fmt(c.answer_accuracy) << "\n";
  }
  out << "mean\t" << fmt(tm_exact_rate) << "\t" << fmt(qm_exact_rate) << "\t\t\t" << fmt(answer_accuracy) << "\n";
  return out.str();
}

}  // namespace circugraph::eval
