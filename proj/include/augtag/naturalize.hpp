#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace augtag {

enum class LabelMode { Identity, Rules, Table, TableRules, Numeric };

std::string_view to_string(LabelMode mode);
LabelMode parse_label_mode(std::string_view name);

// Ordered raw -> natural pairs, as read from a two-column TSV.
using LabelTable = std::vector<std::pair<std::string, std::string>>;

// Splits on '.', '_', '/', whitespace and at camel-case boundaries, then
// lowercases and joins with single spaces. "AddToPlaylist" -> "add to
// playlist", "ABCWord" -> "abc word". Digits stay with their fragment.
std::string naturalize_rule(std::string_view raw);

// Bijection between raw labels and natural labels.
class LabelMap {
 public:
  LabelMap() = default;  // identity
  static LabelMap identity() { return LabelMap(); }

  LabelMode mode() const noexcept { return mode_; }
  bool is_identity() const noexcept { return mode_ == LabelMode::Identity; }
  std::size_t size() const noexcept { return forward_.size(); }

  std::optional<std::string> find_natural(std::string_view raw) const;
  std::optional<std::string> find_raw(std::string_view natural) const;
  // ASCII case-insensitive reverse lookup; nullopt when absent or ambiguous.
  std::optional<std::string> find_raw_case_insensitive(
      std::string_view natural) const;

  // Throws Error(UnknownNaturalLabel) for a raw label outside the map.
  std::string natural(std::string_view raw) const;
  std::string denaturalize(std::string_view natural) const;

  bool contains_raw(std::string_view raw) const;

  // Adds `raw` using the map's mode (override table first, then rules;
  // numeric appends the next index). No-op if present. Throws CollisionError.
  std::string insert(const std::string& raw);

  const std::map<std::string, std::string, std::less<>>& forward() const {
    return forward_;
  }
  const std::map<std::string, std::string, std::less<>>& reverse() const {
    return reverse_;
  }

 private:
  friend LabelMap build_labelmap(const std::set<std::string>&,
                                 const LabelTable*, LabelMode);

  std::string natural_for(const std::string& raw) const;
  void add_pair(const std::string& raw, const std::string& natural);

  LabelMode mode_ = LabelMode::Identity;
  std::map<std::string, std::string, std::less<>> forward_;
  std::map<std::string, std::string, std::less<>> reverse_;
  std::map<std::string, std::string, std::less<>> overrides_;
};

// Overrides take precedence over rules; every override entry is part of the
// map even when its raw label is absent from `labels`. In Table mode a label
// without an override keeps its raw form. Numeric mode numbers the sorted
// union of labels and override keys from "0". Throws Error(CollisionError)
// naming every raw label whose natural form collides.
LabelMap build_labelmap(const std::set<std::string>& labels,
                        const LabelTable* overrides, LabelMode mode);

std::string denaturalize(std::string_view natural, const LabelMap& map);

// raw<TAB>natural per line, '#' comments and blank lines ignored.
LabelTable read_label_table(std::istream& in);
void write_label_table(std::ostream& out, const LabelMap& map);

namespace tables {

const LabelTable& conll2003();
const LabelTable& ontonotes();
const std::vector<std::string>& snips_slots();
const std::vector<std::string>& snips_intents();
const std::vector<std::string>& atis_slots();
const std::vector<std::string>& atis_intents();

struct SnipsDomain {
  std::string code;    // "We", "Mu", ...
  std::string intent;  // "GetWeather", ...
  std::vector<std::string> slots;
};

const std::vector<SnipsDomain>& snips_domains();

// Looks up "conll", "ontonotes"; nullptr otherwise.
const LabelTable* builtin(std::string_view name);

}  // namespace tables

}  // namespace augtag
