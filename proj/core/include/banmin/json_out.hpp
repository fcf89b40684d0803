#ifndef BANMIN_JSON_OUT_HPP
#define BANMIN_JSON_OUT_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace banmin {

/// Minimal JSON value tree for machine-readable output.  Objects keep
/// insertion order and doubles print with 17 significant digits, so a fixed
/// computation serializes to identical bytes on every run.
class JsonValue {
public:
  JsonValue() : kind_(Kind::Null) {}
  JsonValue(bool b) : kind_(Kind::Bool), bool_(b) {}
  JsonValue(double d) : kind_(Kind::Double), num_(d) {}
  JsonValue(long long i) : kind_(Kind::Int), int_(i) {}
  JsonValue(const char* s) : kind_(Kind::String), str_(s) {}
  JsonValue(std::string s) : kind_(Kind::String), str_(std::move(s)) {}

  static JsonValue array();
  static JsonValue object();

  JsonValue& push_back(JsonValue v);
  JsonValue& set(const std::string& key, JsonValue v);

  std::string dump() const;

private:
  enum class Kind { Null, Bool, Double, Int, String, Array, Object };
  Kind kind_;
  bool bool_ = false;
  double num_ = 0.0;
  long long int_ = 0;
  std::string str_;
  std::vector<JsonValue> items_;
  std::vector<std::pair<std::string, JsonValue>> fields_;

  void dump_to(std::string& out) const;
};

}  // namespace banmin

#endif  // BANMIN_JSON_OUT_HPP
