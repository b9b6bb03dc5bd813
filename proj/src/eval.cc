#include "xlsrl/eval.h"

#include <cstdio>
#include <set>
#include <stdexcept>
#include <tuple>

#include "xlsrl/error.h"
#include "xlsrl/util.h"

namespace xlsrl {

namespace {

using Item = std::tuple<int, int, std::string>;  // predicate, argument, label

constexpr const char* kSenseRole = "SENSE";

std::set<Item> items(const Sentence& s, const ScoreOptions& options) {
  std::set<Item> out;
  for (const auto& frame : s.frames) {
    if (!options.gold_predicate_mode) out.emplace(frame.predicate_index, 0, frame.sense);
    for (const auto& [idx, role] : frame.args) {
      if (options.excluded.blocks(role)) continue;
      out.emplace(frame.predicate_index, idx, role);
    }
  }
  return out;
}

DependencyKey key_for(const Sentence& gold, const Item& item) {
  const auto& [p, a, label] = item;
  return {gold.token(p).pos, a == 0 ? std::string(kSenseRole) : label};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

Prf Prf::from_counts(const Counts& c) {
  Prf p;
  const long predicted = c.true_positives + c.false_positives;
  const long gold = c.true_positives + c.false_negatives;
  if (predicted > 0) p.precision = static_cast<double>(c.true_positives) / predicted;
  if (gold > 0) p.recall = static_cast<double>(c.true_positives) / gold;
  if (p.precision + p.recall > 0) p.f1 = 2 * p.precision * p.recall / (p.precision + p.recall);
  return p;
}

DependencyScore EvalReport::dependency(const DependencyKey& key) const {
  auto it = per_dependency.find(key);
  return it == per_dependency.end() ? DependencyScore{} : it->second;
}

EvalReport score(const std::vector<Sentence>& gold, const std::vector<Sentence>& pred,
                 const ScoreOptions& options) {
  if (gold.size() != pred.size()) {
    throw DataError("gold has " + std::to_string(gold.size()) + " sentences, prediction has " +
                    std::to_string(pred.size()));
  }
  EvalReport report;
  std::map<DependencyKey, Counts> counts;
  for (size_t i = 0; i < gold.size(); ++i) {
    if (gold[i].size() != pred[i].size()) {
      throw DataError("sentence " + std::to_string(i + 1) + ": gold has " +
                      std::to_string(gold[i].size()) + " tokens, prediction has " +
                      std::to_string(pred[i].size()));
    }
    const auto g = items(gold[i], options);
    const auto p = items(pred[i], options);
    for (const auto& item : p) {
      (g.count(item) ? counts[key_for(gold[i], item)].true_positives
                     : counts[key_for(gold[i], item)].false_positives)++;
    }
    for (const auto& item : g) {
      if (!p.count(item)) counts[key_for(gold[i], item)].false_negatives++;
    }
  }
  for (const auto& [key, c] : counts) {
    DependencyScore d;
    d.counts = c;
    d.prf = Prf::from_counts(c);
    d.support = c.true_positives + c.false_negatives;
    report.per_dependency.emplace(key, d);
    report.counts += c;
  }
  report.overall = Prf::from_counts(report.counts);
  return report;
}

std::string format_report(const EvalReport& r) {
  std::string out;
  out += "labeled precision " + fmt(r.overall.precision) + "  recall " + fmt(r.overall.recall) +
         "  F1 " + fmt(r.overall.f1) + "\n";
  out += "tp " + std::to_string(r.counts.true_positives) + "  fp " +
         std::to_string(r.counts.false_positives) + "  fn " +
         std::to_string(r.counts.false_negatives) + "\n";
  out += "\nper semantic dependency:\n";
  for (const auto& [key, d] : r.per_dependency) {
    char line[160];
    std::snprintf(line, sizeof(line), "  %-16s P %s  R %s  F1 %s  support %ld\n",
                  (key.first + "+" + key.second).c_str(), fmt(d.prf.precision).c_str(),
                  fmt(d.prf.recall).c_str(), fmt(d.prf.f1).c_str(), d.support);
    out += line;
  }
  return out;
}

std::string report_csv(const EvalReport& r) {
  auto row = [](const std::string& scope, const std::string& pos, const std::string& role,
                const Prf& prf, long support, const Counts& c) {
    return scope + "," + pos + "," + role + "," + format_double(prf.precision) + "," +
           format_double(prf.recall) + "," + format_double(prf.f1) + "," +
           std::to_string(support) + "," + std::to_string(c.true_positives) + "," +
           std::to_string(c.false_positives) + "," + std::to_string(c.false_negatives) + "\n";
  };
  std::string out = "scope,pos,role,precision,recall,f1,support,tp,fp,fn\n";
  out += row("overall", "", "", r.overall, r.counts.true_positives + r.counts.false_negatives,
             r.counts);
  for (const auto& [key, d] : r.per_dependency) {
    out += row("dependency", key.first, key.second, d.prf, d.support, d.counts);
  }
  return out;
}

std::string emit_iteration_curves(const std::vector<RoundReport>& reports,
                                  const std::vector<DependencyKey>& keys) {
  std::string out = "round,pos,role,precision,recall,f1,support\n";
  for (const auto& rr : reports) {
    for (const auto& key : keys) {
      const DependencyScore d = rr.report.dependency(key);
      out += std::to_string(rr.round) + "," + key.first + "," + key.second + "," +
             format_double(d.prf.precision) + "," + format_double(d.prf.recall) + "," +
             format_double(d.prf.f1) + "," + std::to_string(d.support) + "\n";
    }
  }
  return out;
}

DependencyKey parse_dependency_key(const std::string& text) {
  const auto plus = text.find('+');
  if (plus == std::string::npos || plus == 0 || plus + 1 == text.size()) {
    throw std::invalid_argument("dependency key must look like POS+ROLE, got '" + text + "'");
  }
  return {text.substr(0, plus), text.substr(plus + 1)};
}

}  // namespace xlsrl
