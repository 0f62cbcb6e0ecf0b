#include "augtag/naturalize.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "augtag/core.hpp"
#include "augtag/error.hpp"

namespace augtag {

namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
char to_lower(char c) { return is_upper(c) ? static_cast<char>(c - 'A' + 'a') : c; }

bool is_separator(char c) {
  return c == '.' || c == '_' || c == '/' || c == ' ' || c == '\t' ||
         c == '\n' || c == '\r';
}

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = to_lower(c);
  return out;
}

std::string normalize_spaces(std::string_view s) {
  return join_tokens(split_whitespace(s));
}

}  // namespace

std::string_view to_string(LabelMode mode) {
  switch (mode) {
    case LabelMode::Identity: return "identity";
    case LabelMode::Rules: return "rules";
    case LabelMode::Table: return "table";
    case LabelMode::TableRules: return "table+rules";
    case LabelMode::Numeric: return "numeric";
  }
  return "identity";
}

LabelMode parse_label_mode(std::string_view name) {
  if (name == "identity" || name == "original") return LabelMode::Identity;
  if (name == "rules") return LabelMode::Rules;
  if (name == "table") return LabelMode::Table;
  if (name == "table+rules" || name == "natural") return LabelMode::TableRules;
  if (name == "numeric") return LabelMode::Numeric;
  throw Error(ErrorCode::InvalidArgument,
              "unknown label mode '" + std::string(name) + "'");
}

std::string naturalize_rule(std::string_view raw) {
  std::vector<std::string> fragments;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) fragments.push_back(std::move(cur));
    cur.clear();
  };
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const char c = raw[i];
    if (is_separator(c)) {
      flush();
      continue;
    }
    if (is_upper(c) && i > 0) {
      const char prev = raw[i - 1];
      const bool next_lower = i + 1 < raw.size() && is_lower(raw[i + 1]);
      if (is_lower(prev) || (is_upper(prev) && next_lower)) flush();
    }
    cur += to_lower(c);
  }
  flush();
  return join_tokens(fragments);
}

std::optional<std::string> LabelMap::find_natural(std::string_view raw) const {
  if (is_identity()) return std::string(raw);
  auto it = forward_.find(raw);
  if (it == forward_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> LabelMap::find_raw(std::string_view natural) const {
  if (is_identity()) return std::string(natural);
  auto it = reverse_.find(natural);
  if (it == reverse_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> LabelMap::find_raw_case_insensitive(
    std::string_view natural) const {
  if (is_identity()) return std::string(natural);
  const std::string key = lower_ascii(natural);
  std::optional<std::string> found;
  for (const auto& [nat, raw] : reverse_) {
    if (lower_ascii(nat) != key) continue;
    if (found) return std::nullopt;
    found = raw;
  }
  return found;
}

std::string LabelMap::natural(std::string_view raw) const {
  if (auto n = find_natural(raw)) return *n;
  throw Error(ErrorCode::UnknownNaturalLabel,
              "raw label '" + std::string(raw) + "' is not in the label map");
}

std::string LabelMap::denaturalize(std::string_view natural) const {
  const std::string key = normalize_spaces(natural);
  if (auto r = find_raw(key)) return *r;
  throw Error(ErrorCode::UnknownNaturalLabel,
              "natural label '" + key + "' is not in the label map");
}

bool LabelMap::contains_raw(std::string_view raw) const {
  return is_identity() || forward_.find(raw) != forward_.end();
}

std::string LabelMap::natural_for(const std::string& raw) const {
  if (auto it = overrides_.find(raw); it != overrides_.end()) return it->second;
  switch (mode_) {
    case LabelMode::Identity:
    case LabelMode::Table:
      return raw;
    case LabelMode::Rules:
    case LabelMode::TableRules:
      return naturalize_rule(raw);
    case LabelMode::Numeric:
      return std::to_string(forward_.size());
  }
  return raw;
}

void LabelMap::add_pair(const std::string& raw, const std::string& natural) {
  if (natural.empty()) {
    throw Error(ErrorCode::InvalidArgument,
                "raw label '" + raw + "' has an empty natural form");
  }
  if (auto it = reverse_.find(natural); it != reverse_.end()) {
    throw Error(ErrorCode::CollisionError, "raw labels '" + it->second +
                                               "' and '" + raw +
                                               "' both map to '" + natural +
                                               "'");
  }
  forward_.emplace(raw, natural);
  reverse_.emplace(natural, raw);
}

std::string LabelMap::insert(const std::string& raw) {
  if (is_identity()) return raw;
  if (auto it = forward_.find(raw); it != forward_.end()) return it->second;
  std::string natural = natural_for(raw);
  add_pair(raw, natural);
  return natural;
}

LabelMap build_labelmap(const std::set<std::string>& labels,
                        const LabelTable* overrides, LabelMode mode) {
  LabelMap map;
  map.mode_ = mode;
  if (mode == LabelMode::Identity) return map;

  std::set<std::string> all = labels;
  if (overrides && mode != LabelMode::Numeric) {
    for (const auto& [raw, natural] : *overrides) {
      map.overrides_[raw] = normalize_spaces(natural);
      all.insert(raw);
    }
  } else if (overrides) {
    for (const auto& entry : *overrides) all.insert(entry.first);
  }

  // Collect every collision before reporting.
  std::map<std::string, std::vector<std::string>> by_natural;
  std::size_t next = 0;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const std::string& raw : all) {
    std::string natural = mode == LabelMode::Numeric ? std::to_string(next++)
                                                     : map.natural_for(raw);
    if (natural.empty()) {
      throw Error(ErrorCode::InvalidArgument,
                  "raw label '" + raw + "' has an empty natural form");
    }
    by_natural[natural].push_back(raw);
    pairs.emplace_back(raw, std::move(natural));
  }
  std::string collisions;
  for (const auto& [natural, raws] : by_natural) {
    if (raws.size() < 2) continue;
    if (!collisions.empty()) collisions += "; ";
    collisions += "'" + natural + "' <-";
    for (const auto& r : raws) collisions += " " + r;
  }
  if (!collisions.empty()) {
    throw Error(ErrorCode::CollisionError, "natural labels collide: " + collisions);
  }
  for (const auto& [raw, natural] : pairs) map.add_pair(raw, natural);
  return map;
}

std::string denaturalize(std::string_view natural, const LabelMap& map) {
  return map.denaturalize(natural);
}

LabelTable read_label_table(std::istream& in) {
  LabelTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(lineno) +
                      ": expected raw<TAB>natural",
                  lineno);
    }
    std::string raw = line.substr(0, tab);
    std::string natural = normalize_spaces(line.substr(tab + 1));
    if (raw.empty() || natural.empty()) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(lineno) + ": empty column", lineno);
    }
    table.emplace_back(std::move(raw), std::move(natural));
  }
  return table;
}

void write_label_table(std::ostream& out, const LabelMap& map) {
  for (const auto& [raw, natural] : map.forward()) {
    out << raw << '\t' << natural << '\n';
  }
}

}  // namespace augtag
