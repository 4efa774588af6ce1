#include "vzsim/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "vzsim/angles.hpp"
#include "vzsim/clifford.hpp"
#include "vzsim/io.hpp"
#include "vzsim/su2.hpp"

namespace vzsim {

const char* sweep_axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::None: return "none";
    case SweepAxis::Sideband: return "sideband";
    case SweepAxis::Length: return "length";
    case SweepAxis::Beta: return "beta";
  }
  return "unknown";
}

namespace {

std::string trimmed(const std::string& text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  return text.substr(begin, end - begin);
}

std::string lowered(const std::string& text) {
  std::string out = text;
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = (comma == std::string::npos) ? text.size() : comma;
    items.push_back(trimmed(text.substr(start, end - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return items;
}

[[noreturn]] void fail(int line, const std::string& message) {
  throw std::invalid_argument("config line " + std::to_string(line) + ": " + message);
}

// A numeric token with an optional SI unit suffix. The suffix only scales the
// value; the key decides the dimension.
double parse_number(const std::string& text, int line) {
  const std::string value = trimmed(text);
  if (value.empty()) fail(line, "empty numeric value");
  const char* begin = value.c_str();
  char* tail = nullptr;
  const double number = std::strtod(begin, &tail);
  if (tail == begin) fail(line, "cannot parse number from '" + value + "'");
  const std::string suffix = lowered(trimmed(std::string(tail)));
  double scale = 1.0;
  if (suffix.empty() || suffix == "s" || suffix == "hz" || suffix == "k") {
    scale = 1.0;
  } else if (suffix == "ns") {
    scale = 1e-9;
  } else if (suffix == "us") {
    scale = 1e-6;
  } else if (suffix == "ms" || suffix == "mk") {
    scale = 1e-3;
  } else if (suffix == "khz") {
    scale = 1e3;
  } else if (suffix == "mhz") {
    scale = 1e6;
  } else if (suffix == "ghz") {
    scale = 1e9;
  } else {
    fail(line, "unknown unit suffix '" + std::string(tail) + "'");
  }
  return number * scale;
}

long long parse_integer(const std::string& text, int line) {
  const std::string value = trimmed(text);
  if (value.empty()) fail(line, "empty integer value");
  const char* begin = value.c_str();
  char* tail = nullptr;
  const long long number = std::strtoll(begin, &tail, 10);
  if (tail == begin || *tail != '\0')
    fail(line, "cannot parse integer from '" + value + "'");
  return number;
}

bool parse_boolean(const std::string& text, int line) {
  const std::string value = lowered(trimmed(text));
  if (value == "true" || value == "1" || value == "on") return true;
  if (value == "false" || value == "0" || value == "off") return false;
  fail(line, "cannot parse boolean from '" + text + "'");
}

RbBasis parse_basis(const std::string& text, int line) {
  const std::string value = lowered(trimmed(text));
  if (value == "xy") return RbBasis::XY;
  if (value == "hz") return RbBasis::HZ;
  fail(line, "unknown basis '" + text + "' (expected xy or hz)");
}

// Frequencies are written as ordinary frequencies (Hz) and stored as angular
// rates. The inverse conversion picks the neighbouring double whose product
// with 2*pi reproduces the stored value exactly, so a load/save cycle is the
// identity for any file-originated config.
double natural_frequency(double angular) {
  const double v = angular / two_pi;
  if (v * two_pi == angular) return v;
  const double up = std::nextafter(v, std::numeric_limits<double>::infinity());
  if (up * two_pi == angular) return up;
  const double down = std::nextafter(v, -std::numeric_limits<double>::infinity());
  if (down * two_pi == angular) return down;
  return v;
}

int resolve_interleave(const std::string& text, int line) {
  const std::string value = lowered(trimmed(text));
  if (value == "none") return -1;
  if (value == "s") {
    const CliffordTable table = build_clifford_table();
    return clifford_index_of(table, z_rotation(pi / 2.0));
  }
  const long long index = parse_integer(value, line);
  if (index < -1 || index >= 24)
    fail(line, "interleaved Clifford index out of range: " + value);
  return static_cast<int>(index);
}

void apply_key(ExperimentConfig& config, const std::string& key,
               const std::string& value, int line) {
  // --- device ---
  if (key == "device.frequency") {
    config.device.omega01 = two_pi * parse_number(value, line);
  } else if (key == "device.anharmonicity") {
    config.device.anharmonicity = two_pi * parse_number(value, line);
  } else if (key == "device.t1") {
    config.device.t1 = parse_number(value, line);
  } else if (key == "device.tphi") {
    config.device.tphi = parse_number(value, line);
  } else if (key == "device.temperature") {
    config.device.temperature = parse_number(value, line);
  } else if (key == "device.dims") {
    config.device.dims = static_cast<int>(parse_integer(value, line));
  } else if (key == "device.drive_offset") {
    config.device.drive_frequency_offset = two_pi * parse_number(value, line);
  } else if (key == "device.rwa_single_tone") {
    config.device.rwa_single_tone = parse_boolean(value, line);
  }
  // --- signal chain ---
  else if (key == "chain.awg_sample_period") {
    config.chain.awg_sample_period = parse_number(value, line);
  } else if (key == "chain.awg_bandwidth") {
    config.chain.awg_bandwidth = parse_number(value, line);
  } else if (key == "chain.epsilon_q") {
    config.chain.epsilon_q = parse_number(value, line);
  } else if (key == "chain.epsilon_phi") {
    config.chain.epsilon_phi = parse_number(value, line);
  } else if (key == "chain.epsilon_lo") {
    config.chain.epsilon_lo = parse_number(value, line);
  } else if (key == "chain.filter_cutoff") {
    config.chain.external_filter_cutoff = parse_number(value, line);
  } else if (key == "chain.filter_order") {
    config.chain.external_filter_order = static_cast<int>(parse_integer(value, line));
  } else if (key == "chain.oversampling") {
    config.chain.oversampling = static_cast<int>(parse_integer(value, line));
  } else if (key == "chain.ideal") {
    config.chain.ideal = parse_boolean(value, line);
  }
  // --- pulse ---
  else if (key == "pulse.family") {
    config.pulse.family = pulse_family_from_name(trimmed(value));
  } else if (key == "pulse.amplitude") {
    config.pulse.amplitude = two_pi * parse_number(value, line);
  } else if (key == "pulse.duration") {
    config.pulse.duration = parse_number(value, line);
  } else if (key == "pulse.sigma") {
    config.pulse.sigma = parse_number(value, line);
  } else if (key == "pulse.drag_beta") {
    config.pulse.drag_beta = parse_number(value, line);
  } else if (key == "pulse.drive_phase") {
    config.pulse.drive_phase = parse_number(value, line);
  } else if (key == "pulse.ssb_frequency") {
    config.pulse.ssb_frequency = two_pi * parse_number(value, line);
  } else if (key == "pulse.buffer") {
    config.pulse.buffer = parse_number(value, line);
  } else if (key == "pulse.vz_correction") {
    config.pulse.vz_correction = parse_number(value, line);
    config.auto_vz = false;
  }
  // --- randomized benchmarking ---
  else if (key == "rb.lengths") {
    config.rb_lengths.clear();
    for (const std::string& item : split_list(value))
      config.rb_lengths.push_back(static_cast<int>(parse_integer(item, line)));
  } else if (key == "rb.seeds") {
    config.rb_seeds = static_cast<int>(parse_integer(value, line));
  } else if (key == "rb.bases") {
    config.rb_bases.clear();
    for (const std::string& item : split_list(value))
      config.rb_bases.push_back(parse_basis(item, line));
  } else if (key == "rb.families") {
    config.rb_families.clear();
    for (const std::string& item : split_list(value))
      config.rb_families.push_back(pulse_family_from_name(item));
  } else if (key == "rb.interleave") {
    config.rb_interleave = resolve_interleave(value, line);
  } else if (key == "rb.model") {
    const std::string model = lowered(trimmed(value));
    if (model == "simulated") {
      config.rb_model = GateModel::Simulated;
    } else if (model == "ideal") {
      config.rb_model = GateModel::IdealPulses;
    } else {
      fail(line, "unknown gate model '" + value + "' (expected simulated or ideal)");
    }
  } else if (key == "rb.open_system") {
    config.rb_open_system = parse_boolean(value, line);
  }
  // --- sweep ---
  else if (key == "sweep.axis") {
    const std::string axis = lowered(trimmed(value));
    if (axis == "none") {
      config.sweep.axis = SweepAxis::None;
    } else if (axis == "sideband") {
      config.sweep.axis = SweepAxis::Sideband;
    } else if (axis == "length") {
      config.sweep.axis = SweepAxis::Length;
    } else if (axis == "beta") {
      config.sweep.axis = SweepAxis::Beta;
    } else {
      fail(line, "unknown sweep axis '" + value + "'");
    }
  } else if (key == "sweep.start") {
    config.sweep.start = parse_number(value, line);
  } else if (key == "sweep.stop") {
    config.sweep.stop = parse_number(value, line);
  } else if (key == "sweep.points") {
    config.sweep.points = static_cast<int>(parse_integer(value, line));
  }
  // --- calibration proxy knobs ---
  else if (key == "calibrate.cliffords") {
    config.calibrate.n_cliffords = static_cast<int>(parse_integer(value, line));
  } else if (key == "calibrate.seeds") {
    config.calibrate.n_seeds = static_cast<int>(parse_integer(value, line));
  } else if (key == "calibrate.coarse_points") {
    config.calibrate.coarse_points = static_cast<int>(parse_integer(value, line));
  } else if (key == "calibrate.seed") {
    config.calibrate.seed = static_cast<std::uint64_t>(parse_integer(value, line));
  }
  // --- misc ---
  else if (key == "output.dir") {
    config.output_dir = trimmed(value);
  } else if (key == "seed") {
    config.seed = static_cast<std::uint64_t>(parse_integer(value, line));
  } else {
    fail(line, "unknown key '" + key + "'");
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig config;
  int line_number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t newline = text.find('\n', start);
    const std::size_t end = (newline == std::string::npos) ? text.size() : newline;
    std::string line = text.substr(start, end - start);
    ++line_number;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trimmed(line);
    if (!line.empty()) {
      const std::size_t equals = line.find('=');
      if (equals == std::string::npos)
        fail(line_number, "expected 'key = value', got '" + line + "'");
      const std::string key = trimmed(line.substr(0, equals));
      const std::string value = trimmed(line.substr(equals + 1));
      if (key.empty()) fail(line_number, "missing key before '='");
      apply_key(config, key, value, line_number);
    }
    if (newline == std::string::npos) break;
    start = newline + 1;
  }
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  return parse_config(read_text_file(path));
}

namespace {

void emit(std::string& out, const std::string& key, const std::string& value) {
  out += key;
  out += " = ";
  out += value;
  out += '\n';
}

void emit_number(std::string& out, const std::string& key, double value) {
  emit(out, key, format_double(value));
}

void emit_integer(std::string& out, const std::string& key, long long value) {
  emit(out, key, std::to_string(value));
}

void emit_boolean(std::string& out, const std::string& key, bool value) {
  emit(out, key, value ? "true" : "false");
}

}  // namespace

std::string serialize_config(const ExperimentConfig& config) {
  std::string out;
  emit_number(out, "device.frequency", natural_frequency(config.device.omega01));
  emit_number(out, "device.anharmonicity",
              natural_frequency(config.device.anharmonicity));
  emit_number(out, "device.t1", config.device.t1);
  emit_number(out, "device.tphi", config.device.tphi);
  emit_number(out, "device.temperature", config.device.temperature);
  emit_integer(out, "device.dims", config.device.dims);
  emit_number(out, "device.drive_offset",
              natural_frequency(config.device.drive_frequency_offset));
  emit_boolean(out, "device.rwa_single_tone", config.device.rwa_single_tone);

  emit_number(out, "chain.awg_sample_period", config.chain.awg_sample_period);
  emit_number(out, "chain.awg_bandwidth", config.chain.awg_bandwidth);
  emit_number(out, "chain.epsilon_q", config.chain.epsilon_q);
  emit_number(out, "chain.epsilon_phi", config.chain.epsilon_phi);
  emit_number(out, "chain.epsilon_lo", config.chain.epsilon_lo);
  emit_number(out, "chain.filter_cutoff", config.chain.external_filter_cutoff);
  emit_integer(out, "chain.filter_order", config.chain.external_filter_order);
  emit_integer(out, "chain.oversampling", config.chain.oversampling);
  emit_boolean(out, "chain.ideal", config.chain.ideal);

  emit(out, "pulse.family", pulse_family_name(config.pulse.family));
  emit_number(out, "pulse.amplitude", natural_frequency(config.pulse.amplitude));
  emit_number(out, "pulse.duration", config.pulse.duration);
  emit_number(out, "pulse.sigma", config.pulse.sigma);
  emit_number(out, "pulse.drag_beta", config.pulse.drag_beta);
  emit_number(out, "pulse.drive_phase", config.pulse.drive_phase);
  emit_number(out, "pulse.ssb_frequency",
              natural_frequency(config.pulse.ssb_frequency));
  emit_number(out, "pulse.buffer", config.pulse.buffer);
  if (!config.auto_vz)
    emit_number(out, "pulse.vz_correction", config.pulse.vz_correction);

  std::string lengths;
  for (std::size_t i = 0; i < config.rb_lengths.size(); ++i) {
    if (i) lengths += ", ";
    lengths += std::to_string(config.rb_lengths[i]);
  }
  emit(out, "rb.lengths", lengths);
  emit_integer(out, "rb.seeds", config.rb_seeds);
  std::string bases;
  for (std::size_t i = 0; i < config.rb_bases.size(); ++i) {
    if (i) bases += ", ";
    bases += (config.rb_bases[i] == RbBasis::XY) ? "xy" : "hz";
  }
  emit(out, "rb.bases", bases);
  std::string families;
  for (std::size_t i = 0; i < config.rb_families.size(); ++i) {
    if (i) families += ", ";
    families += pulse_family_name(config.rb_families[i]);
  }
  emit(out, "rb.families", families);
  emit_integer(out, "rb.interleave", config.rb_interleave);
  emit(out, "rb.model",
       config.rb_model == GateModel::Simulated ? "simulated" : "ideal");
  emit_boolean(out, "rb.open_system", config.rb_open_system);

  emit(out, "sweep.axis", sweep_axis_name(config.sweep.axis));
  emit_number(out, "sweep.start", config.sweep.start);
  emit_number(out, "sweep.stop", config.sweep.stop);
  emit_integer(out, "sweep.points", config.sweep.points);

  emit_integer(out, "calibrate.cliffords", config.calibrate.n_cliffords);
  emit_integer(out, "calibrate.seeds", config.calibrate.n_seeds);
  emit_integer(out, "calibrate.coarse_points", config.calibrate.coarse_points);
  emit_integer(out, "calibrate.seed",
               static_cast<long long>(config.calibrate.seed));

  emit(out, "output.dir", config.output_dir);
  emit_integer(out, "seed", static_cast<long long>(config.seed));
  return out;
}

}  // namespace vzsim
