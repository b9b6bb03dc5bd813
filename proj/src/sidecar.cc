#include "xlsrl/sidecar.h"

#include <charconv>

#include "xlsrl/error.h"

namespace xlsrl {

namespace {

constexpr std::string_view kHeader = "sentence_id\ttoken_index\tkind\tlabel\tcomp\tdep\tcombined";

template <typename T>
T parse_number(std::string_view field, int line) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError("bad number '" + std::string(field) + "'", line);
  }
  return value;
}

}  // namespace

std::string write_cost_sidecar(const std::vector<ProjectedInstance>& instances) {
  std::string out(kHeader);
  out += '\n';
  for (const auto& inst : instances) {
    out += std::to_string(inst.sentence_id) + '\t' + std::to_string(inst.token_index) + '\t' +
           instance_kind_name(inst.kind) + '\t' + inst.label + '\t' + format_double(inst.cost.comp) +
           '\t' + format_double(inst.cost.dep) + '\t' + format_double(inst.cost.combined) + '\n';
  }
  return out;
}

std::vector<CostRow> parse_cost_sidecar(std::string_view text) {
  std::vector<CostRow> rows;
  int line_no = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view line =
        nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1 && line == kHeader) continue;

    const auto f = split(line, '\t');
    if (f.size() != 7) throw ParseError("expected 7 sidecar columns", line_no);
    CostRow row;
    row.sentence_id = parse_number<int>(f[0], line_no);
    row.token_index = parse_number<int>(f[1], line_no);
    if (f[2] == "predicate") {
      row.kind = InstanceKind::kPredicate;
    } else if (f[2] == "argument") {
      row.kind = InstanceKind::kArgument;
    } else {
      throw ParseError("unknown instance kind '" + std::string(f[2]) + "'", line_no);
    }
    row.label = f[3];
    row.cost.comp = parse_number<double>(f[4], line_no);
    row.cost.dep = parse_number<double>(f[5], line_no);
    row.cost.combined = parse_number<double>(f[6], line_no);
    for (double v : {row.cost.comp, row.cost.dep, row.cost.combined}) {
      if (!(v >= 0.0 && v <= 1.0)) throw ParseError("cost outside [0,1]", line_no);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace xlsrl
