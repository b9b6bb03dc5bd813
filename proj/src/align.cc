#include "xlsrl/align.h"

#include <algorithm>
#include <charconv>
#include <iterator>

#include "xlsrl/error.h"

namespace xlsrl {

namespace {

int parse_index(std::string_view s, std::string_view token, int line) {
  if (!s.empty() && s.front() == '-') {
    throw ParseError("negative index in '" + std::string(token) + "'", line);
  }
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("malformed alignment pair '" + std::string(token) + "'", line);
  }
  return value;
}

}  // namespace

std::vector<AlignmentSet> parse_alignments(std::string_view text, bool one_based) {
  std::vector<AlignmentSet> out;
  const int offset = one_based ? 0 : 1;
  int line_no = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view line =
        nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    AlignmentSet set;
    size_t p = 0;
    while (p < line.size()) {
      if (line[p] == ' ' || line[p] == '\t') {
        ++p;
        continue;
      }
      size_t end = line.find_first_of(" \t", p);
      if (end == std::string_view::npos) end = line.size();
      std::string_view token = line.substr(p, end - p);
      p = end;
      // Split on the first '-' after position 0 so "-1-2" reports a negative index.
      size_t dash = token.find('-', 1);
      if (dash == std::string_view::npos) {
        throw ParseError("malformed alignment pair '" + std::string(token) + "'", line_no);
      }
      int i = parse_index(token.substr(0, dash), token, line_no) + offset;
      int j = parse_index(token.substr(dash + 1), token, line_no) + offset;
      if (i < 1 || j < 1) {
        throw ParseError("index 0 in one-based alignment '" + std::string(token) + "'", line_no);
      }
      set.links.insert({i, j});
    }
    out.push_back(std::move(set));
  }
  return out;
}

std::string write_alignments(const std::vector<AlignmentSet>& sets, bool one_based) {
  const int offset = one_based ? 0 : 1;
  std::string out;
  for (const auto& set : sets) {
    bool first = true;
    for (const auto& link : set.links) {
      if (!first) out += ' ';
      first = false;
      out += std::to_string(link.source - offset);
      out += '-';
      out += std::to_string(link.target - offset);
    }
    out += '\n';
  }
  return out;
}

AlignmentSet intersect(const AlignmentSet& forward, const AlignmentSet& backward) {
  AlignmentSet out;
  std::set_intersection(forward.links.begin(), forward.links.end(), backward.links.begin(),
                        backward.links.end(), std::inserter(out.links, out.links.end()));
  return out;
}

AlignmentSet transpose(const AlignmentSet& set) {
  AlignmentSet out;
  for (const auto& link : set.links) out.links.insert({link.target, link.source});
  return out;
}

SentencePair make_pair(Sentence source, Sentence target, AlignmentSet alignment) {
  for (const auto& link : alignment.links) {
    if (link.source < 1 || link.source > source.size() || link.target < 1 ||
        link.target > target.size()) {
      throw DataError("alignment link " + std::to_string(link.source) + "-" +
                      std::to_string(link.target) + " outside sentence lengths " +
                      std::to_string(source.size()) + "/" + std::to_string(target.size()));
    }
  }
  return {std::move(source), std::move(target), std::move(alignment)};
}

}  // namespace xlsrl
