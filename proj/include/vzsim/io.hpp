// Deterministic text output: number formatting, file helpers, a small
// ordered JSON builder, and the CSV table writers used by the CLI. All
// numeric output uses 17 significant digits so reruns are byte-identical.
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "vzsim/experiment.hpp"
#include "vzsim/signal_chain.hpp"

namespace vzsim {

// Shortest %.17g rendering; round-trips any finite double exactly.
std::string format_double(double value);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Minimal JSON document builder. Keys keep insertion order and numbers go
// through format_double, so serialization is reproducible byte for byte.
class JsonValue {
 public:
  JsonValue();  // empty object

  static JsonValue number(double value);
  static JsonValue integer(std::int64_t value);
  static JsonValue boolean(bool value);
  static JsonValue text(std::string value);
  static JsonValue array(std::vector<JsonValue> items);
  static JsonValue object();

  // Object-only; returns *this so fields can be chained.
  JsonValue& set(std::string key, JsonValue value);

  std::string dump(int indent = 2) const;

 private:
  enum class Kind { Object, Array, Number, Integer, Boolean, Text };

  void write(std::string& out, int indent, int depth) const;

  Kind kind_;
  double number_ = 0.0;
  std::int64_t integer_ = 0;
  bool boolean_ = false;
  std::string text_;
  std::vector<JsonValue> items_;
  std::vector<std::pair<std::string, JsonValue>> members_;
};

// One line per RB point: sequence length, seed index, and the three level
// populations after the recovery Clifford.
std::string rb_curve_csv(const RbResult& result);

// AWG-frame quadratures of a rendered pulse: time in ns, V_I = Re(s),
// V_Q = -Im(s).
std::string waveform_csv(const Waveform& waveform);

struct SweepRow {
  double axis = 0.0;
  double epg = 0.0;
  double epg_stderr = 0.0;
  double lpg = 0.0;
  double lpg_stderr = 0.0;
  bool ok = true;
  std::string note;  // short failure reason; must not contain commas
};

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace vzsim
