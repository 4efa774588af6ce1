// vzsim: single-qubit gate-control simulator CLI.
//
// Subcommands:
//   decompose  print the ZXZXZ angles and five-gate schedule of a unitary
//   rb         calibrate pulses and run randomized benchmarking
//   sweep      re-calibrate and benchmark along a parameter axis
//   calibrate  amplitude / virtual-z / drag-coefficient calibration
//
// Every output file is byte-identical across reruns with the same config;
// wall-clock timestamps go only to the sidecar run.log.

#include <cmath>
#include <complex>
#include <cstdint>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "vzsim/angles.hpp"
#include "vzsim/calibration.hpp"
#include "vzsim/config.hpp"
#include "vzsim/experiment.hpp"
#include "vzsim/io.hpp"
#include "vzsim/pulse.hpp"
#include "vzsim/schedule.hpp"
#include "vzsim/signal_chain.hpp"
#include "vzsim/su2.hpp"

namespace {

using namespace vzsim;

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void add_common_options(CLI::App* cmd, CommonArgs* args) {
  cmd->add_option("--config", args->config_path, "experiment config file")
      ->required();
  cmd->add_option("--out", args->out_dir, "output directory (overrides config)");
  cmd->add_option("--seed", args->seed, "master seed (overrides config)")
      ->each([args](const std::string&) { args->seed_set = true; });
}

ExperimentConfig load_with_overrides(const CommonArgs& args) {
  ExperimentConfig config = load_config_file(args.config_path);
  if (!args.out_dir.empty()) config.output_dir = args.out_dir;
  if (args.seed_set) config.seed = args.seed;
  return config;
}

std::filesystem::path prepare_out_dir(const ExperimentConfig& config) {
  const std::filesystem::path dir(config.output_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// The one place wall-clock time is allowed: a human-readable activity log.
void append_run_log(const std::filesystem::path& dir, const std::string& text) {
  std::ofstream log(dir / "run.log", std::ios::app);
  const std::time_t now = std::time(nullptr);
  char stamp[64];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  log << stamp << ' ' << text << '\n';
}

// ---------------------------------------------------------------------------
// decompose
// ---------------------------------------------------------------------------

Mat2 named_gate(const std::string& name) {
  std::string key;
  for (char c : name)
    key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const Complex i(0.0, 1.0);
  if (key == "i" || key == "id" || key == "identity") return Mat2::Identity();
  if (key == "x") return x_rotation(pi);
  if (key == "y") return axis_rotation(pi, pi / 2.0);
  if (key == "z") return z_rotation(pi);
  if (key == "x90") return x_rotation(pi / 2.0);
  if (key == "y90") return axis_rotation(pi / 2.0, pi / 2.0);
  if (key == "z90" || key == "s") return z_rotation(pi / 2.0);
  if (key == "sdg") return z_rotation(-pi / 2.0);
  if (key == "t") return z_rotation(pi / 4.0);
  if (key == "tdg") return z_rotation(-pi / 4.0);
  if (key == "h") {
    Mat2 h;
    const double r = 1.0 / std::sqrt(2.0);
    h << Complex(r, 0), Complex(r, 0), Complex(r, 0), Complex(-r, 0);
    return h;
  }
  throw std::invalid_argument(
      "unknown gate name '" + name +
      "' (try identity, x, y, z, x90, y90, z90, h, s, sdg, t, tdg, or eight "
      "comma-separated reals)");
}

Mat2 parse_matrix(const std::string& text) {
  std::vector<double> entries;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = (comma == std::string::npos) ? text.size() : comma;
    const std::string item = text.substr(start, end - start);
    const char* begin = item.c_str();
    char* tail = nullptr;
    const double value = std::strtod(begin, &tail);
    while (tail && *tail != '\0' &&
           std::isspace(static_cast<unsigned char>(*tail)))
      ++tail;
    if (tail == begin || *tail != '\0')
      throw std::invalid_argument("cannot parse matrix entry '" + item + "'");
    entries.push_back(value);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (entries.size() != 8)
    throw std::invalid_argument(
        "matrix input needs exactly 8 reals "
        "(re00,im00,re01,im01,re10,im10,re11,im11), got " +
        std::to_string(entries.size()));
  Mat2 u;
  u(0, 0) = Complex(entries[0], entries[1]);
  u(0, 1) = Complex(entries[2], entries[3]);
  u(1, 0) = Complex(entries[4], entries[5]);
  u(1, 1) = Complex(entries[6], entries[7]);
  return u;
}

int cmd_decompose(const std::string& input) {
  const Mat2 u = (input.find(',') != std::string::npos) ? parse_matrix(input)
                                                        : named_gate(input);
  const Su2Params params = zxzxz_decompose(u);
  const FiveAngleSchedule frames = five_angle_schedule(params);
  std::cout << "theta = " << format_double(params.theta) << '\n'
            << "phi = " << format_double(params.phi) << '\n'
            << "lambda = " << format_double(params.lambda) << '\n'
            << "z_early = " << format_double(frames.z_early) << '\n'
            << "z_mid = " << format_double(frames.z_mid) << '\n'
            << "z_late = " << format_double(frames.z_late) << '\n'
            << "schedule:\n"
            << serialize_schedule(compile_su2(params, "d0"));
  return 0;
}

// ---------------------------------------------------------------------------
// rb
// ---------------------------------------------------------------------------

// Fills in the auto-calibrated pulse parameters for one family.
PulseSpec calibrated_spec(const ExperimentConfig& config, PulseFamily family) {
  PulseSpec spec = config.pulse;
  spec.family = family;
  if (config.rb_model == GateModel::Simulated) {
    if (spec.amplitude <= 0.0)
      spec.amplitude = calibrate_amplitude(spec, config.chain, config.device);
    if (uses_vz_sandwich(family) && config.auto_vz)
      spec.vz_correction = calibrate_vz_phase(spec, config.chain, config.device);
  }
  return spec;
}

RbConfig make_rb_config(const ExperimentConfig& config, RbBasis basis,
                        const PulseSpec& spec) {
  RbConfig rb;
  rb.lengths = config.rb_lengths;
  rb.n_seeds = config.rb_seeds;
  rb.seed = config.seed;
  rb.basis = basis;
  rb.interleaved_gate = -1;
  rb.model = config.rb_model;
  rb.open_system = config.rb_open_system;
  rb.pulse = spec;
  rb.chain = config.chain;
  rb.device = config.device;
  return rb;
}

JsonValue fit_json(const RbFitResult& fit) {
  JsonValue v = JsonValue::object();
  v.set("A", JsonValue::number(fit.amplitude))
      .set("r", JsonValue::number(fit.rate))
      .set("B", JsonValue::number(fit.baseline))
      .set("A_stderr", JsonValue::number(fit.amplitude_err))
      .set("r_stderr", JsonValue::number(fit.rate_err))
      .set("B_stderr", JsonValue::number(fit.baseline_err))
      .set("residual_norm", JsonValue::number(fit.residual_norm))
      .set("converged", JsonValue::boolean(fit.converged))
      .set("degenerate", JsonValue::boolean(fit.degenerate));
  return v;
}

JsonValue run_json(const RbResult& result, RbBasis basis, PulseFamily family,
                   const PulseSpec& spec) {
  JsonValue v = JsonValue::object();
  v.set("basis", JsonValue::text(basis == RbBasis::XY ? "xy" : "hz"))
      .set("family", JsonValue::text(pulse_family_name(family)))
      .set("amplitude_hz", JsonValue::number(spec.amplitude / two_pi))
      .set("vz_correction", JsonValue::number(spec.vz_correction))
      .set("gates_per_clifford", JsonValue::number(result.gates_per_clifford))
      .set("ground_fit", fit_json(result.ground_fit))
      .set("leak_fit", fit_json(result.leak_fit))
      .set("EPC", JsonValue::number(result.epc))
      .set("EPC_stderr", JsonValue::number(result.epc_stderr))
      .set("EPG", JsonValue::number(result.epg))
      .set("EPG_stderr", JsonValue::number(result.epg_stderr))
      .set("LPG", JsonValue::number(result.lpg))
      .set("LPG_stderr", JsonValue::number(result.lpg_stderr));
  return v;
}

std::string combo_suffix(const ExperimentConfig& config, PulseFamily family,
                         RbBasis basis) {
  if (config.rb_families.size() == 1 && config.rb_bases.size() == 1) return "";
  std::string suffix = "_";
  suffix += pulse_family_name(family);
  suffix += (basis == RbBasis::XY) ? "_xy" : "_hz";
  return suffix;
}

int cmd_rb(const CommonArgs& args) {
  const ExperimentConfig config = load_with_overrides(args);
  const std::filesystem::path dir = prepare_out_dir(config);
  append_run_log(dir, "rb config=" + args.config_path +
                          " seed=" + std::to_string(config.seed));

  JsonValue summary = JsonValue::object();
  summary.set("seed", JsonValue::integer(static_cast<std::int64_t>(config.seed)));
  std::vector<JsonValue> runs;
  bool all_converged = true;

  for (PulseFamily family : config.rb_families) {
    const PulseSpec spec = calibrated_spec(config, family);
    if (config.rb_model == GateModel::Simulated) {
      const Waveform waveform =
          render_pulse(spec, config.chain, config.device.rwa_single_tone);
      const std::string waveform_name =
          (config.rb_families.size() == 1)
              ? "waveform.csv"
              : std::string("waveform_") + pulse_family_name(family) + ".csv";
      write_text_file((dir / waveform_name).string(), waveform_csv(waveform));
    }
    for (RbBasis basis : config.rb_bases) {
      const RbConfig rb = make_rb_config(config, basis, spec);
      const RbResult result = run_rb_experiment(rb);
      const std::string suffix = combo_suffix(config, family, basis);
      write_text_file((dir / ("rb_curve" + suffix + ".csv")).string(),
                      rb_curve_csv(result));
      JsonValue block = run_json(result, basis, family, spec);
      if (!result.ground_fit.converged) {
        all_converged = false;
        std::cerr << "vzsim: rb fit did not converge (family="
                  << pulse_family_name(family) << ", basis="
                  << (basis == RbBasis::XY ? "xy" : "hz") << ")\n";
      }
      if (config.rb_interleave >= 0) {
        RbConfig interleaved = rb;
        interleaved.interleaved_gate = config.rb_interleave;
        const RbResult inter = run_rb_experiment(interleaved);
        write_text_file(
            (dir / ("rb_curve_interleaved" + suffix + ".csv")).string(),
            rb_curve_csv(inter));
        const double r_std = result.ground_fit.rate;
        const double r_int = inter.ground_fit.rate;
        const double err = interleaved_gate_error(r_std, r_int);
        // First-order error propagation of (1 - r_int/r_std)/2.
        const double err_stderr =
            0.5 * std::hypot(inter.ground_fit.rate_err / r_std,
                             r_int * result.ground_fit.rate_err /
                                 (r_std * r_std));
        block.set("interleaved_fit", fit_json(inter.ground_fit))
            .set("interleaved_gate",
                 JsonValue::integer(config.rb_interleave))
            .set("interleaved_error", JsonValue::number(err))
            .set("interleaved_error_stderr", JsonValue::number(err_stderr));
        if (!inter.ground_fit.converged) {
          all_converged = false;
          std::cerr << "vzsim: interleaved rb fit did not converge\n";
        }
      }
      runs.push_back(std::move(block));
    }
  }
  summary.set("runs", JsonValue::array(std::move(runs)));
  write_text_file((dir / "summary.json").string(), summary.dump());
  append_run_log(dir, all_converged ? "rb done" : "rb done (fit failure)");
  if (!all_converged) {
    std::cerr << "vzsim: randomized benchmarking fit failed; see summary.json"
              << std::endl;
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

int cmd_sweep(const CommonArgs& args) {
  const ExperimentConfig config = load_with_overrides(args);
  if (config.sweep.axis == SweepAxis::None)
    throw std::invalid_argument("sweep.axis is 'none'; nothing to sweep");
  if (config.sweep.points < 1)
    throw std::invalid_argument("sweep.points must be at least 1");
  const std::filesystem::path dir = prepare_out_dir(config);
  append_run_log(dir, std::string("sweep axis=") +
                          sweep_axis_name(config.sweep.axis) +
                          " points=" + std::to_string(config.sweep.points));

  const RbBasis basis = config.rb_bases.front();
  const PulseFamily family = config.rb_families.front();
  std::vector<SweepRow> rows;
  int failures = 0;
  for (int i = 0; i < config.sweep.points; ++i) {
    const double t = (config.sweep.points == 1)
                         ? 0.0
                         : static_cast<double>(i) /
                               static_cast<double>(config.sweep.points - 1);
    const double value =
        config.sweep.start + (config.sweep.stop - config.sweep.start) * t;
    SweepRow row;
    row.axis = value;
    try {
      ExperimentConfig point = config;
      switch (config.sweep.axis) {
        case SweepAxis::Sideband:
          point.pulse.ssb_frequency = two_pi * value;
          break;
        case SweepAxis::Length:
          point.pulse.duration = value;
          point.pulse.sigma = value / 4.0;  // keep the sigma:length ratio
          break;
        case SweepAxis::Beta:
          point.pulse.drag_beta = value;
          break;
        case SweepAxis::None:
          break;
      }
      const PulseSpec spec = calibrated_spec(point, family);
      const RbConfig rb = make_rb_config(point, basis, spec);
      const RbResult result = run_rb_experiment(rb);
      row.epg = result.epg;
      row.epg_stderr = result.epg_stderr;
      row.lpg = result.lpg;
      row.lpg_stderr = result.lpg_stderr;
      row.ok = result.ground_fit.converged;
      if (!row.ok) row.note = "fit-not-converged";
    } catch (const std::exception& e) {
      row.ok = false;
      row.epg = row.epg_stderr = row.lpg = row.lpg_stderr =
          std::numeric_limits<double>::quiet_NaN();
      std::string note = e.what();
      for (char& c : note)
        if (c == ',' || c == '\n') c = ';';
      row.note = note;
      ++failures;
    }
    rows.push_back(std::move(row));
  }
  write_text_file((dir / "sweep.csv").string(), sweep_csv(rows));
  append_run_log(dir, "sweep done failures=" + std::to_string(failures));
  if (failures == config.sweep.points) {
    std::cerr << "vzsim: every sweep point failed; see sweep.csv" << std::endl;
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// calibrate
// ---------------------------------------------------------------------------

int cmd_calibrate(const CommonArgs& args, const std::string& what) {
  const ExperimentConfig config = load_with_overrides(args);
  const std::filesystem::path dir = prepare_out_dir(config);
  append_run_log(dir, "calibrate what=" + what);

  PulseSpec spec = config.pulse;
  JsonValue report = JsonValue::object();
  report.set("what", JsonValue::text(what))
      .set("family", JsonValue::text(pulse_family_name(spec.family)));

  if (what == "amplitude") {
    const double omega = calibrate_amplitude(spec, config.chain, config.device);
    report.set("omega0_hz", JsonValue::number(omega / two_pi))
        .set("omega0_rad_per_s", JsonValue::number(omega));
  } else if (what == "vz") {
    spec.amplitude = calibrate_amplitude(spec, config.chain, config.device);
    const double xi = calibrate_vz_phase(spec, config.chain, config.device);
    report.set("omega0_hz", JsonValue::number(spec.amplitude / two_pi))
        .set("omega0_rad_per_s", JsonValue::number(spec.amplitude))
        .set("xi", JsonValue::number(xi));
  } else if (what == "beta") {
    BetaProxyConfig proxy = config.calibrate;
    const BetaCalibration fidelity = calibrate_beta(
        spec, config.chain, config.device, BetaObjective::Fidelity, proxy);
    const BetaCalibration leakage = calibrate_beta(
        spec, config.chain, config.device, BetaObjective::Leakage, proxy);
    auto scan_json = [](const BetaCalibration& cal) {
      std::vector<JsonValue> beta, objective;
      beta.reserve(cal.scan_beta.size());
      objective.reserve(cal.scan_objective.size());
      for (double b : cal.scan_beta) beta.push_back(JsonValue::number(b));
      for (double o : cal.scan_objective)
        objective.push_back(JsonValue::number(o));
      JsonValue v = JsonValue::object();
      v.set("beta", JsonValue::array(std::move(beta)))
          .set("objective", JsonValue::array(std::move(objective)))
          .set("flat", JsonValue::boolean(cal.flat_objective));
      return v;
    };
    report.set("beta_fidelity", JsonValue::number(fidelity.beta))
        .set("beta_leakage", JsonValue::number(leakage.beta))
        .set("fidelity_scan", scan_json(fidelity))
        .set("leakage_scan", scan_json(leakage));
  } else {
    throw std::invalid_argument("unknown calibration target '" + what +
                                "' (expected amplitude, vz, or beta)");
  }
  write_text_file((dir / "calibration.json").string(), report.dump());
  append_run_log(dir, "calibrate done");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"single-qubit gate-control simulator"};
  app.require_subcommand(1);

  std::string decompose_input;
  CLI::App* decompose =
      app.add_subcommand("decompose", "ZXZXZ angles and five-gate schedule");
  decompose
      ->add_option("gate", decompose_input,
                   "gate name or eight comma-separated matrix reals")
      ->required();

  CommonArgs rb_args;
  CLI::App* rb = app.add_subcommand("rb", "randomized benchmarking run");
  add_common_options(rb, &rb_args);

  CommonArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep with per-point"
                                                " recalibration");
  add_common_options(sweep, &sweep_args);

  CommonArgs cal_args;
  std::string what = "amplitude";
  CLI::App* calibrate = app.add_subcommand("calibrate", "pulse calibration");
  add_common_options(calibrate, &cal_args);
  calibrate->add_option("--what", what, "amplitude, vz, or beta");

  CLI11_PARSE(app, argc, argv);

  try {
    if (decompose->parsed()) return cmd_decompose(decompose_input);
    if (rb->parsed()) return cmd_rb(rb_args);
    if (sweep->parsed()) return cmd_sweep(sweep_args);
    if (calibrate->parsed()) return cmd_calibrate(cal_args, what);
  } catch (const std::exception& e) {
    std::cerr << "vzsim: error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}
