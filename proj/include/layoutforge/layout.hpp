#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "partition.hpp"
#include "stats.hpp"
#include "unicode.hpp"

namespace layoutforge {

/// A key position. `layer` indexes Geometry::layers; row and column are
/// 1-based (row 1 is the top row).
struct Slot {
  int layer = 0;
  int row = 1;
  int column = 1;
  friend auto operator<=>(const Slot&, const Slot&) = default;
};

/// Rows x columns per layer. Columns 1..columns/2 belong to the left hand.
struct Geometry {
  int rows = 3;
  int columns = 10;
  int home_row = 2;
  std::vector<std::string> layers{"base", "shift", "ctrl"};
  std::vector<Slot> left_priority;
  std::vector<Slot> right_priority;

  Hand hand_of(const Slot& slot) const { return slot.column <= columns / 2 ? Hand::Left : Hand::Right; }

  const std::vector<Slot>& priority(Hand hand) const {
    return hand == Hand::Left ? left_priority : right_priority;
  }

  bool in_bounds(const Slot& s) const {
    return s.layer >= 0 && s.layer < static_cast<int>(layers.size()) && s.row >= 1 &&
           s.row <= rows && s.column >= 1 && s.column <= columns;
  }

  int layer_index(std::string_view name) const {
    const auto it = std::find(layers.begin(), layers.end(), name);
    if (it == layers.end()) {
      throw Error(ErrorKind::InvalidArgument, "unknown layer '" + std::string(name) + "'");
    }
    return static_cast<int>(it - layers.begin());
  }

  /// Home row first, then rows by distance from home (above before below);
  /// columns inner to outer; layers in order.
  std::vector<Slot> default_priority(Hand hand) const {
    std::vector<int> row_order{home_row};
    for (int d = 1; d < rows; ++d) {
      if (home_row - d >= 1) row_order.push_back(home_row - d);
      if (home_row + d <= rows) row_order.push_back(home_row + d);
    }
    std::vector<int> column_order;
    const int half = columns / 2;
    if (hand == Hand::Left) {
      for (int c = half; c >= 1; --c) column_order.push_back(c);
    } else {
      for (int c = half + 1; c <= columns; ++c) column_order.push_back(c);
    }
    std::vector<Slot> out;
    for (int layer = 0; layer < static_cast<int>(layers.size()); ++layer) {
      for (int row : row_order) {
        for (int column : column_order) out.push_back({layer, row, column});
      }
    }
    return out;
  }

  void fill_default_priorities() {
    left_priority = default_priority(Hand::Left);
    right_priority = default_priority(Hand::Right);
  }

  /// Three rows of ten columns on base, shift and ctrl layers.
  static Geometry standard() {
    Geometry g;
    g.fill_default_priorities();
    return g;
  }

  void validate() const {
    const auto bad = [](const std::string& why) { return Error(ErrorKind::InvariantViolation, why); };
    if (rows < 1 || columns < 2) throw bad("geometry needs at least one row and two columns");
    if (home_row < 1 || home_row > rows) throw bad("home row outside the grid");
    if (layers.empty()) throw bad("geometry needs at least one layer");
    if (std::set<std::string>(layers.begin(), layers.end()).size() != layers.size()) {
      throw bad("duplicate layer names");
    }
    for (Hand hand : {Hand::Left, Hand::Right}) {
      const auto& order = priority(hand);
      std::set<Slot> seen;
      for (const auto& s : order) {
        if (!in_bounds(s)) throw bad("priority slot outside the grid");
        if (hand_of(s) != hand) {
          throw bad(std::string(to_string(hand)) + " priority lists a slot of the other hand");
        }
        if (!seen.insert(s).second) throw bad("priority lists a slot twice");
      }
      if (seen.size() != capacity_of_hand(hand)) {
        throw bad(std::string(to_string(hand)) + " priority does not cover every slot of the hand");
      }
    }
  }

  std::size_t capacity_of_hand(Hand hand) const {
    const int half = columns / 2;
    const int per_row = hand == Hand::Left ? half : columns - half;
    return static_cast<std::size_t>(per_row) * static_cast<std::size_t>(rows) * layers.size();
  }

  friend bool operator==(const Geometry&, const Geometry&) = default;
};

struct KeyPosition {
  CodePoint letter = 0;
  Hand hand = Hand::Left;
  Slot slot;
  friend bool operator==(const KeyPosition&, const KeyPosition&) = default;
};

/// Injective letter -> slot map over a geometry.
class KeyboardLayout {
 public:
  KeyboardLayout() = default;
  KeyboardLayout(std::string name, Geometry geometry)
      : name_(std::move(name)), geometry_(std::move(geometry)) {}

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  const Geometry& geometry() const { return geometry_; }
  const std::map<CodePoint, Slot>& assignment() const { return by_letter_; }
  const std::map<Slot, CodePoint>& slots() const { return by_slot_; }
  const nlohmann::json& config() const { return config_; }
  void set_config(nlohmann::json config) { config_ = std::move(config); }
  std::size_t size() const { return by_letter_.size(); }

  void place(CodePoint letter, const Slot& slot) {
    if (!geometry_.in_bounds(slot)) {
      throw Error(ErrorKind::InvariantViolation, "slot for " + code_point_label(letter) + " is outside the grid");
    }
    if (by_letter_.contains(letter)) {
      throw Error(ErrorKind::InvariantViolation, "letter " + code_point_label(letter) + " is placed twice");
    }
    if (const auto it = by_slot_.find(slot); it != by_slot_.end()) {
      throw Error(ErrorKind::InvariantViolation, "letters " + code_point_label(it->second) + " and " +
                                                     code_point_label(letter) + " share one slot");
    }
    by_letter_.emplace(letter, slot);
    by_slot_.emplace(slot, letter);
  }

  std::optional<Slot> slot_of(CodePoint letter) const {
    const auto it = by_letter_.find(letter);
    if (it == by_letter_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<Hand> hand_of(CodePoint letter) const {
    const auto s = slot_of(letter);
    if (!s) return std::nullopt;
    return geometry_.hand_of(*s);
  }

  std::vector<KeyPosition> keys() const {
    std::vector<KeyPosition> out;
    out.reserve(by_slot_.size());
    for (const auto& [slot, letter] : by_slot_) out.push_back({letter, geometry_.hand_of(slot), slot});
    return out;
  }

  /// Same layout with the hands exchanged: every column c maps to
  /// columns + 1 - c.
  KeyboardLayout mirrored() const {
    KeyboardLayout out(name_, geometry_);
    for (auto& s : out.geometry_.left_priority) s.column = geometry_.columns + 1 - s.column;
    for (auto& s : out.geometry_.right_priority) s.column = geometry_.columns + 1 - s.column;
    std::swap(out.geometry_.left_priority, out.geometry_.right_priority);
    for (const auto& [slot, letter] : by_slot_) {
      out.place(letter, {slot.layer, slot.row, geometry_.columns + 1 - slot.column});
    }
    return out;
  }

  friend bool operator==(const KeyboardLayout&, const KeyboardLayout&) = default;

 private:
  std::string name_;
  Geometry geometry_;
  std::map<CodePoint, Slot> by_letter_;
  std::map<Slot, CodePoint> by_slot_;
  nlohmann::json config_ = nlohmann::json::object();
};

/// Places each hand's letters, most frequent first, into that hand's
/// priority slots.
inline KeyboardLayout build_layout(const HandPartition& partition, const NGramTable& mono,
                                   const Geometry& geometry, std::string name = "generated") {
  geometry.validate();
  KeyboardLayout layout(std::move(name), geometry);
  for (Hand hand : {Hand::Left, Hand::Right}) {
    auto letters = partition.side(hand);
    std::stable_sort(letters.begin(), letters.end(), [&mono](CodePoint a, CodePoint b) {
      const auto ca = mono.count(Gram(1, a));
      const auto cb = mono.count(Gram(1, b));
      return ca != cb ? ca > cb : a < b;
    });
    const auto& order = geometry.priority(hand);
    if (letters.size() > order.size()) {
      throw Error(ErrorKind::CapacityExceeded,
                  std::string(to_string(hand)) + " hand overflows by " +
                      std::to_string(letters.size() - order.size()) + " letters");
    }
    for (std::size_t i = 0; i < letters.size(); ++i) layout.place(letters[i], order[i]);
  }
  return layout;
}

namespace detail {

inline nlohmann::json slot_json(const Geometry& g, const Slot& s) {
  return nlohmann::json::array({g.layers[static_cast<std::size_t>(s.layer)], s.row, s.column});
}

[[noreturn]] inline void malformed(const std::string& where, const std::string& why) {
  throw Error(ErrorKind::MalformedLayout, "malformed layout at " + where + ": " + why);
}

inline const nlohmann::json& field(const nlohmann::json& obj, const std::string& key,
                                   const std::string& where) {
  if (!obj.is_object()) malformed(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) malformed(where, "missing \"" + key + "\"");
  return *it;
}

inline int int_field(const nlohmann::json& obj, const std::string& key, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_number_integer()) malformed(where + "/" + key, "expected an integer");
  return v.get<int>();
}

inline std::string string_field(const nlohmann::json& obj, const std::string& key,
                                const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_string()) malformed(where + "/" + key, "expected a string");
  return v.get<std::string>();
}

inline Slot parse_slot(const Geometry& g, const nlohmann::json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3 || !v[0].is_string() || !v[1].is_number_integer() ||
      !v[2].is_number_integer()) {
    malformed(where, "slot must be [layer, row, column]");
  }
  const auto layer = std::find(g.layers.begin(), g.layers.end(), v[0].get<std::string>());
  if (layer == g.layers.end()) malformed(where, "unknown layer");
  return {static_cast<int>(layer - g.layers.begin()), v[1].get<int>(), v[2].get<int>()};
}

}  // namespace detail

/// JSON layout file. Keys are written in slot order, so output is canonical.
inline std::string serialize_layout(const KeyboardLayout& layout) {
  const auto& g = layout.geometry();
  auto priority = [&](Hand hand) {
    auto arr = nlohmann::json::array();
    for (const auto& s : g.priority(hand)) arr.push_back(detail::slot_json(g, s));
    return arr;
  };
  nlohmann::json geometry{{"rows", g.rows},
                          {"columns", g.columns},
                          {"home_row", g.home_row},
                          {"layers", g.layers},
                          {"position_priority", {{"left", priority(Hand::Left)}, {"right", priority(Hand::Right)}}}};
  auto keys = nlohmann::json::array();
  for (const auto& k : layout.keys()) {
    keys.push_back({{"letter", utf8::encode(k.letter)},
                    {"code_point", code_point_label(k.letter)},
                    {"hand", to_string(k.hand)},
                    {"layer", g.layers[static_cast<std::size_t>(k.slot.layer)]},
                    {"row", k.slot.row},
                    {"column", k.slot.column}});
  }
  nlohmann::json doc{{"name", layout.name()}, {"geometry", geometry}, {"keys", keys}};
  if (!layout.config().empty()) doc["config"] = layout.config();
  return doc.dump(2) + "\n";
}

/// Geometry from a JSON object (layout file `geometry` or a standalone
/// geometry config). Missing fields take the standard values.
inline Geometry geometry_from_json(const nlohmann::json& j, const std::string& where = "/geometry") {
  if (!j.is_object()) detail::malformed(where, "expected an object");
  Geometry g;
  if (j.contains("rows")) g.rows = detail::int_field(j, "rows", where);
  if (j.contains("columns")) g.columns = detail::int_field(j, "columns", where);
  g.home_row = j.contains("home_row") ? detail::int_field(j, "home_row", where) : (g.rows + 1) / 2;
  if (j.contains("layers")) {
    const auto& layers = j.at("layers");
    if (!layers.is_array()) detail::malformed(where + "/layers", "expected an array of names");
    g.layers.clear();
    for (const auto& l : layers) {
      if (!l.is_string()) detail::malformed(where + "/layers", "layer names must be strings");
      g.layers.push_back(l.get<std::string>());
    }
  }
  g.fill_default_priorities();
  if (j.contains("position_priority")) {
    const auto& pp = j.at("position_priority");
    for (Hand hand : {Hand::Left, Hand::Right}) {
      const std::string key(to_string(hand));
      const std::string at = where + "/position_priority/" + key;
      const auto& arr = detail::field(pp, key, where + "/position_priority");
      if (!arr.is_array()) detail::malformed(at, "expected an array of slots");
      auto& target = hand == Hand::Left ? g.left_priority : g.right_priority;
      target.clear();
      for (std::size_t i = 0; i < arr.size(); ++i) {
        target.push_back(detail::parse_slot(g, arr[i], at + "/" + std::to_string(i)));
      }
    }
  }
  g.validate();
  return g;
}

inline KeyboardLayout parse_layout(std::string_view bytes) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::MalformedLayout, std::string("malformed layout: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) detail::malformed("/", "expected an object");
  const auto name = detail::string_field(doc, "name", "");
  const auto geometry = doc.contains("geometry") ? geometry_from_json(doc.at("geometry")) : Geometry::standard();
  KeyboardLayout layout(name, geometry);
  const auto& keys = detail::field(doc, "keys", "");
  if (!keys.is_array()) detail::malformed("/keys", "expected an array");
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const std::string at = "/keys/" + std::to_string(i);
    const auto& k = keys[i];
    const auto text = detail::string_field(k, "letter", at);
    const auto decoded = utf8::decode(text);
    if (decoded.size() != 1) detail::malformed(at + "/letter", "expected exactly one code point");
    const CodePoint letter = decoded.front();
    if (k.contains("code_point")) {
      CodePoint annotated = 0;
      try {
        annotated = parse_code_point_label(detail::string_field(k, "code_point", at));
      } catch (const Error&) {
        detail::malformed(at + "/code_point", "expected U+XXXX");
      }
      if (annotated != letter) {
        throw Error(ErrorKind::InvariantViolation, at + ": letter and code_point disagree");
      }
    }
    const auto layer_name = detail::string_field(k, "layer", at);
    const auto layer = std::find(geometry.layers.begin(), geometry.layers.end(), layer_name);
    if (layer == geometry.layers.end()) detail::malformed(at + "/layer", "unknown layer '" + layer_name + "'");
    const Slot slot{static_cast<int>(layer - geometry.layers.begin()), detail::int_field(k, "row", at),
                    detail::int_field(k, "column", at)};
    if (!geometry.in_bounds(slot)) throw Error(ErrorKind::InvariantViolation, at + ": slot outside the grid");
    if (k.contains("hand")) {
      Hand hand{};
      try {
        hand = parse_hand(detail::string_field(k, "hand", at));
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::MalformedLayout) throw;
        detail::malformed(at + "/hand", "expected \"left\" or \"right\"");
      }
      if (hand != geometry.hand_of(slot)) {
        throw Error(ErrorKind::InvariantViolation, at + ": hand does not match the column side");
      }
    }
    try {
      layout.place(letter, slot);
    } catch (const Error& e) {
      throw Error(e.kind(), at + ": " + e.what());
    }
  }
  if (doc.contains("config")) layout.set_config(doc.at("config"));
  return layout;
}

}  // namespace layoutforge
