// Config parsing/serialization and end-to-end CLI behavior. The CLI binary
// path arrives via the VZSIM_CLI environment variable (set by CTest).
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "doctest.h"

#include "vzsim/angles.hpp"
#include "vzsim/clifford.hpp"
#include "vzsim/config.hpp"
#include "vzsim/io.hpp"
#include "vzsim/su2.hpp"

namespace {

using namespace vzsim;

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("vzsim_cli_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

struct CliResult {
  int status = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args) {
  const char* cli = std::getenv("VZSIM_CLI");
  REQUIRE_MESSAGE(cli != nullptr,
                  "VZSIM_CLI must point at the CLI binary (set by CTest)");
  static int counter = 0;
  const auto dir = scratch_dir();
  const auto out_path = dir / ("stdout_" + std::to_string(counter));
  const auto err_path = dir / ("stderr_" + std::to_string(counter));
  ++counter;
  const std::string command = std::string("\"") + cli + "\" " + args + " > " +
                              out_path.string() + " 2> " + err_path.string();
  const int raw = std::system(command.c_str());
  CliResult result;
  if (raw != -1 && WIFEXITED(raw)) result.status = WEXITSTATUS(raw);
  result.out = read_text_file(out_path.string());
  result.err = read_text_file(err_path.string());
  return result;
}

double extract_number(const std::string& text, const std::string& key) {
  const std::size_t pos = text.find(key);
  REQUIRE_MESSAGE(pos != std::string::npos, "missing key: " << key);
  return std::strtod(text.c_str() + pos + key.size(), nullptr);
}

int count_lines(const std::string& text) {
  int lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  return lines;
}

std::string write_config(const std::string& name, const std::string& body) {
  const auto path = scratch_dir() / name;
  write_text_file(path.string(), body);
  return path.string();
}

}  // namespace

TEST_SUITE("config_cli") {

TEST_CASE("defaults survive a round trip") {
  const ExperimentConfig defaults;
  const std::string s1 = serialize_config(defaults);
  const ExperimentConfig parsed = parse_config(s1);
  const std::string s2 = serialize_config(parsed);
  CHECK(s1 == s2);

  CHECK(parsed.device.omega01 == defaults.device.omega01);
  CHECK(parsed.device.anharmonicity == defaults.device.anharmonicity);
  CHECK(parsed.device.dims == 4);
  CHECK(parsed.pulse.ssb_frequency == defaults.pulse.ssb_frequency);
  CHECK(parsed.rb_lengths == defaults.rb_lengths);
  CHECK(parsed.rb_seeds == 5);
  CHECK(parsed.seed == 1);
  CHECK(parsed.auto_vz);
  CHECK(parsed.sweep.axis == SweepAxis::None);
}

TEST_CASE("si suffixes scale values") {
  const ExperimentConfig config = parse_config(
      "# comment line\n"
      "\n"
      "device.t1 = 54 us   # trailing comment\n"
      "device.tphi = 135us\n"
      "device.temperature = 46 mK\n"
      "device.frequency = 5.0353 GHz\n"
      "pulse.ssb_frequency = -120 MHz\n"
      "pulse.duration = 13 ns\n"
      "chain.awg_bandwidth = 300 MHz\n"
      "rb.open_system = false\n"
      "rb.lengths = 1, 4, 9\n");
  CHECK(config.device.t1 == 54.0 * 1e-6);
  CHECK(config.device.tphi == 135.0 * 1e-6);
  CHECK(config.device.temperature == 46.0 * 1e-3);
  CHECK(config.device.omega01 == two_pi * (5.0353 * 1e9));
  CHECK(config.pulse.ssb_frequency == two_pi * (-120.0 * 1e6));
  CHECK(config.pulse.duration == 13.0 * 1e-9);
  CHECK(config.chain.awg_bandwidth == 300.0 * 1e6);
  CHECK_FALSE(config.rb_open_system);
  CHECK(config.rb_lengths == std::vector<int>{1, 4, 9});
}

TEST_CASE("parse-serialize-parse is the identity") {
  const std::string text =
      "device.frequency = 5.0353 GHz\n"
      "device.anharmonicity = -235.5 MHz\n"
      "device.drive_offset = 0.3 MHz\n"
      "device.t1 = 54 us\n"
      "pulse.family = dragz\n"
      "pulse.amplitude = 37.5 MHz\n"
      "pulse.drag_beta = 0.68 ns\n"
      "pulse.vz_correction = 0.05\n"
      "rb.bases = xy, hz\n"
      "rb.families = drag, gz\n"
      "rb.model = ideal\n"
      "sweep.axis = sideband\n"
      "sweep.start = -200 MHz\n"
      "sweep.stop = -40 MHz\n"
      "sweep.points = 9\n"
      "output.dir = some/dir\n"
      "seed = 42\n";
  const ExperimentConfig c1 = parse_config(text);
  const std::string s1 = serialize_config(c1);
  const ExperimentConfig c2 = parse_config(s1);
  const std::string s2 = serialize_config(c2);
  CHECK(s1 == s2);

  // The angular-frequency bridge must reproduce stored values exactly.
  CHECK(c2.device.omega01 == c1.device.omega01);
  CHECK(c2.device.anharmonicity == c1.device.anharmonicity);
  CHECK(c2.device.drive_frequency_offset == c1.device.drive_frequency_offset);
  CHECK(c2.pulse.amplitude == c1.pulse.amplitude);
  CHECK(c2.pulse.ssb_frequency == c1.pulse.ssb_frequency);
  CHECK(c2.pulse.drag_beta == c1.pulse.drag_beta);
  CHECK(c2.pulse.vz_correction == c1.pulse.vz_correction);
  CHECK_FALSE(c2.auto_vz);
  CHECK(c2.rb_bases.size() == 2);
  CHECK(c2.rb_families.size() == 2);
  CHECK(c2.rb_model == GateModel::IdealPulses);
  CHECK(c2.sweep.axis == SweepAxis::Sideband);
  CHECK(c2.sweep.start == c1.sweep.start);
  CHECK(c2.sweep.points == 9);
  CHECK(c2.output_dir == "some/dir");
  CHECK(c2.seed == 42);
}

TEST_CASE("vz auto flag follows key presence") {
  CHECK(parse_config("").auto_vz);
  const ExperimentConfig explicit_vz =
      parse_config("pulse.vz_correction = 0.05\n");
  CHECK_FALSE(explicit_vz.auto_vz);
  CHECK(explicit_vz.pulse.vz_correction == 0.05);
  CHECK(serialize_config(explicit_vz).find("pulse.vz_correction") !=
        std::string::npos);
  CHECK(serialize_config(ExperimentConfig{}).find("pulse.vz_correction") ==
        std::string::npos);
}

TEST_CASE("interleave spellings resolve to clifford indices") {
  CHECK(parse_config("rb.interleave = none\n").rb_interleave == -1);
  CHECK(parse_config("rb.interleave = 7\n").rb_interleave == 7);
  const CliffordTable table = build_clifford_table();
  const int s_index = clifford_index_of(table, z_rotation(pi / 2.0));
  CHECK(parse_config("rb.interleave = s\n").rb_interleave == s_index);
  CHECK_THROWS_AS(parse_config("rb.interleave = 24\n"), std::invalid_argument);
}

TEST_CASE("malformed input is rejected with the line number") {
  CHECK_THROWS_AS(parse_config("no.such.key = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("device.t1 = banana\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("device.t1 = 5 parsec\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config("justaword\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("rb.bases = qq\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("sweep.axis = spiral\n"),
                  std::invalid_argument);
  try {
    parse_config("seed = 1\n\ndevice.t1 = oops\n");
    FAIL("expected a parse error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("cli decompose prints canonical angles") {
  const CliResult h = run_cli("decompose h");
  CHECK(h.status == 0);
  CHECK(std::abs(extract_number(h.out, "theta = ") - pi / 2.0) < 1e-12);
  CHECK(std::abs(extract_number(h.out, "phi = ") - pi / 2.0) < 1e-12);
  CHECK(std::abs(extract_number(h.out, "lambda = ") - pi / 2.0) < 1e-12);
  const std::size_t schedule_pos = h.out.find("schedule:\n");
  REQUIRE(schedule_pos != std::string::npos);
  CHECK(count_lines(h.out.substr(schedule_pos)) == 6);  // header + 5 gates

  const CliResult t = run_cli("decompose t");
  CHECK(t.status == 0);
  CHECK(std::abs(extract_number(t.out, "theta = ")) < 1e-12);
  CHECK(std::abs(extract_number(t.out, "phi = ") - pi / 8.0) < 1e-12);
  CHECK(std::abs(extract_number(t.out, "lambda = ") - pi / 8.0) < 1e-12);

  const CliResult id = run_cli("decompose identity");
  CHECK(id.status == 0);
  CHECK(std::abs(extract_number(id.out, "theta = ")) < 1e-12);

  // Matrix entry: x_rotation(pi/2) as eight comma-separated reals.
  const double c = std::sqrt(0.5);
  const std::string entries = format_double(c) + ",0,0," + format_double(-c) +
                              ",0," + format_double(-c) + "," +
                              format_double(c) + ",0";
  const CliResult x90 = run_cli("decompose " + entries);
  CHECK(x90.status == 0);
  CHECK(std::abs(extract_number(x90.out, "theta = ") - pi / 2.0) < 1e-12);
  CHECK(std::abs(extract_number(x90.out, "phi = ")) < 1e-12);
  CHECK(std::abs(extract_number(x90.out, "lambda = ")) < 1e-12);

  const CliResult bad = run_cli("decompose 1,0,0,0,0,0,2,0");
  CHECK(bad.status != 0);
  CHECK(bad.err.find("error") != std::string::npos);
}

TEST_CASE("cli rb writes byte-stable artifacts") {
  const auto out_dir = scratch_dir() / "rb_out";
  const std::string config = write_config(
      "rb.conf",
      "device.dims = 3\n"
      "device.temperature = 0\n"
      "pulse.family = gaussian\n"
      "rb.lengths = 1, 2, 5\n"
      "rb.seeds = 2\n"
      "output.dir = " + out_dir.string() + "\n"
      "seed = 7\n");
  const CliResult first = run_cli("rb --config " + config);
  CHECK(first.status == 0);

  const std::string curve1 = read_text_file((out_dir / "rb_curve.csv").string());
  const std::string summary1 =
      read_text_file((out_dir / "summary.json").string());
  CHECK(count_lines(curve1) == 1 + 3 * 2);  // header + lengths x seeds
  CHECK(summary1.find("\"EPC\"") != std::string::npos);
  CHECK(summary1.find("\"LPG\"") != std::string::npos);
  CHECK(summary1.find("\"seed\": 7") != std::string::npos);
  CHECK(std::filesystem::exists(out_dir / "waveform.csv"));

  const CliResult second = run_cli("rb --config " + config);
  CHECK(second.status == 0);
  CHECK(read_text_file((out_dir / "rb_curve.csv").string()) == curve1);
  CHECK(read_text_file((out_dir / "summary.json").string()) == summary1);

  const CliResult reseeded = run_cli("rb --config " + config + " --seed 9");
  CHECK(reseeded.status == 0);
  const std::string summary9 =
      read_text_file((out_dir / "summary.json").string());
  CHECK(summary9.find("\"seed\": 9") != std::string::npos);
  CHECK(summary9 != summary1);
}

TEST_CASE("cli rb reports the interleaved error") {
  const auto out_dir = scratch_dir() / "rb_inter";
  const std::string config = write_config(
      "inter.conf",
      "rb.model = ideal\n"
      "rb.lengths = 1, 2, 4\n"
      "rb.seeds = 1\n"
      "rb.interleave = s\n"
      "rb.open_system = false\n"
      "device.dims = 3\n"
      "device.temperature = 0\n"
      "output.dir = " + out_dir.string() + "\n");
  const CliResult result = run_cli("rb --config " + config);
  CHECK(result.status == 0);
  const std::string summary =
      read_text_file((out_dir / "summary.json").string());
  CHECK(summary.find("\"interleaved_error\"") != std::string::npos);
  CHECK(std::filesystem::exists(out_dir / "rb_curve_interleaved.csv"));
  // Perfect gates: the interleaved error estimate collapses to zero.
  CHECK(std::abs(extract_number(summary, "\"interleaved_error\": ")) < 1e-9);
}

TEST_CASE("cli calibrate square amplitude hits the analytic area rule") {
  const auto out_dir = scratch_dir() / "cal_amp";
  const std::string config = write_config(
      "amp.conf",
      "device.dims = 2\n"
      "device.temperature = 0\n"
      "chain.ideal = true\n"
      "pulse.family = square\n"
      "output.dir = " + out_dir.string() + "\n");
  const CliResult result = run_cli("calibrate --config " + config +
                                   " --what amplitude");
  CHECK(result.status == 0);
  const std::string report =
      read_text_file((out_dir / "calibration.json").string());
  const double omega = extract_number(report, "\"omega0_rad_per_s\": ");
  const double duration = 16.0 / 1.2e9;
  const double expected = pi / (2.0 * duration);
  // The render path smooths the square's edges at sample resolution.
  CHECK(std::abs(omega - expected) / expected < 5e-3);
}

TEST_CASE("cli calibrate vz vanishes on an ideal device") {
  const auto out_dir = scratch_dir() / "cal_vz";
  const std::string config = write_config(
      "vz.conf",
      "device.dims = 2\n"
      "device.temperature = 0\n"
      "chain.ideal = true\n"
      "chain.oversampling = 64\n"  // integration fine enough for the 1e-8 bar
      "pulse.family = gz\n"
      "output.dir = " + out_dir.string() + "\n");
  const CliResult result = run_cli("calibrate --config " + config +
                                   " --what vz");
  CHECK(result.status == 0);
  const std::string report =
      read_text_file((out_dir / "calibration.json").string());
  CHECK(std::abs(extract_number(report, "\"xi\": ")) < 1e-8);
}

TEST_CASE("cli sweep records every point and rejects an empty axis") {
  const auto out_dir = scratch_dir() / "sweep_out";
  const std::string config = write_config(
      "sweep.conf",
      "device.dims = 3\n"
      "device.temperature = 0\n"
      "pulse.family = gaussian\n"
      "rb.lengths = 1, 2, 5\n"
      "rb.seeds = 1\n"
      "sweep.axis = length\n"
      "sweep.start = 10 ns\n"
      "sweep.stop = 16 ns\n"
      "sweep.points = 3\n"
      "output.dir = " + out_dir.string() + "\n");
  const CliResult result = run_cli("sweep --config " + config);
  CHECK(result.status == 0);
  const std::string csv = read_text_file((out_dir / "sweep.csv").string());
  CHECK(count_lines(csv) == 4);  // header + 3 points
  CHECK(csv.find(",ok\n") != std::string::npos);
  CHECK(csv.find("failed") == std::string::npos);

  const std::string no_axis = write_config(
      "noaxis.conf", "output.dir = " + out_dir.string() + "\n");
  const CliResult rejected = run_cli("sweep --config " + no_axis);
  CHECK(rejected.status != 0);
  CHECK(rejected.err.find("sweep.axis") != std::string::npos);
}

}  // TEST_SUITE
