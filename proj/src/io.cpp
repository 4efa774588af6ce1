#include "vzsim/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vzsim {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file for reading: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("failed writing file: " + path);
}

JsonValue::JsonValue() : kind_(Kind::Object) {}

JsonValue JsonValue::number(double value) {
  JsonValue v;
  v.kind_ = Kind::Number;
  v.number_ = value;
  return v;
}

JsonValue JsonValue::integer(std::int64_t value) {
  JsonValue v;
  v.kind_ = Kind::Integer;
  v.integer_ = value;
  return v;
}

JsonValue JsonValue::boolean(bool value) {
  JsonValue v;
  v.kind_ = Kind::Boolean;
  v.boolean_ = value;
  return v;
}

JsonValue JsonValue::text(std::string value) {
  JsonValue v;
  v.kind_ = Kind::Text;
  v.text_ = std::move(value);
  return v;
}

JsonValue JsonValue::array(std::vector<JsonValue> items) {
  JsonValue v;
  v.kind_ = Kind::Array;
  v.items_ = std::move(items);
  return v;
}

JsonValue JsonValue::object() { return JsonValue(); }

JsonValue& JsonValue::set(std::string key, JsonValue value) {
  if (kind_ != Kind::Object)
    throw std::logic_error("JsonValue::set called on a non-object value");
  members_.emplace_back(std::move(key), std::move(value));
  return *this;
}

namespace {

void append_escaped(std::string& out, const std::string& text) {
  out.push_back('"');
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buffer[8];
          std::snprintf(buffer, sizeof(buffer), "\\u%04x", c);
          out += buffer;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
}

}  // namespace

void JsonValue::write(std::string& out, int indent, int depth) const {
  const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent) * depth, ' ');
  switch (kind_) {
    case Kind::Number: out += format_double(number_); break;
    case Kind::Integer: out += std::to_string(integer_); break;
    case Kind::Boolean: out += boolean_ ? "true" : "false"; break;
    case Kind::Text: append_escaped(out, text_); break;
    case Kind::Array: {
      if (items_.empty()) {
        out += "[]";
        break;
      }
      out += "[\n";
      for (std::size_t i = 0; i < items_.size(); ++i) {
        out += pad;
        items_[i].write(out, indent, depth + 1);
        out += (i + 1 < items_.size()) ? ",\n" : "\n";
      }
      out += close_pad + "]";
      break;
    }
    case Kind::Object: {
      if (members_.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      for (std::size_t i = 0; i < members_.size(); ++i) {
        out += pad;
        append_escaped(out, members_[i].first);
        out += ": ";
        members_[i].second.write(out, indent, depth + 1);
        out += (i + 1 < members_.size()) ? ",\n" : "\n";
      }
      out += close_pad + "}";
      break;
    }
  }
}

std::string JsonValue::dump(int indent) const {
  std::string out;
  write(out, indent, 0);
  out.push_back('\n');
  return out;
}

std::string rb_curve_csv(const RbResult& result) {
  std::string out = "m,seed,p0,p1,p2\n";
  for (const RbPoint& point : result.points) {
    out += std::to_string(point.length);
    out += ',';
    out += std::to_string(point.seed_index);
    out += ',';
    out += format_double(point.p0);
    out += ',';
    out += format_double(point.p1);
    out += ',';
    out += format_double(point.p2);
    out += '\n';
  }
  return out;
}

std::string waveform_csv(const Waveform& waveform) {
  std::string out = "t_ns,v_i,v_q\n";
  for (std::size_t n = 0; n < waveform.samples.size(); ++n) {
    const double t_ns = 1e9 * static_cast<double>(n) * waveform.sample_period;
    out += format_double(t_ns);
    out += ',';
    out += format_double(waveform.samples[n].real());
    out += ',';
    out += format_double(-waveform.samples[n].imag());
    out += '\n';
  }
  return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "axis,epg,epg_stderr,lpg,lpg_stderr,status\n";
  for (const SweepRow& row : rows) {
    out += format_double(row.axis);
    out += ',';
    out += format_double(row.epg);
    out += ',';
    out += format_double(row.epg_stderr);
    out += ',';
    out += format_double(row.lpg);
    out += ',';
    out += format_double(row.lpg_stderr);
    out += ',';
    out += row.ok ? "ok" : (row.note.empty() ? "failed" : row.note);
    out += '\n';
  }
  return out;
}

}  // namespace vzsim
