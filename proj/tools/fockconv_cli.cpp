// fockconv command-line front end. Talks to the library only through the C API.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fockconv/fockconv.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

enum Exit : int { kOk = 0, kUsage = 1, kInfeasible = 2, kIntegration = 3, kReconstruction = 4 };

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) { throw CliError{code, message}; }

void check(fc_status status, int code, const std::string& context) {
  if (status == FC_OK) return;
  std::string message = context + ": " + fc_status_name(status) + ": " + fc_last_error_message();
  if (status == FC_ERR_INFEASIBLE_TARGET) {
    code = kInfeasible;
    message += " (photon number n=" + std::to_string(fc_last_infeasible_photon()) + ")";
  }
  fail(code, message);
}

// Config quantities are in MHz, us, MS/s and kHz; the library works in SI.
namespace units {
double mhz_to_rad_s(double f) { return 2.0 * kPi * f * 1e6; }
double khz_to_rad_s(double f) { return 2.0 * kPi * f * 1e3; }
double rad_s_to_mhz(double w) { return w / (2.0 * kPi * 1e6); }
double us_to_s(double t) { return t * 1e-6; }
double s_to_us(double t) { return t * 1e6; }
double ns_to_s(double t) { return t * 1e-9; }
double msps_to_hz(double r) { return r * 1e6; }
double hz_to_msps(double r) { return r * 1e-6; }
}  // namespace units

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using State = std::unique_ptr<fc_state, Deleter<fc_state, fc_state_free>>;
using Target = std::unique_ptr<fc_target, Deleter<fc_target, fc_target_free>>;
using Plan = std::unique_ptr<fc_plan, Deleter<fc_plan, fc_plan_free>>;
using Wave = std::unique_ptr<fc_waveform, Deleter<fc_waveform, fc_waveform_free>>;
using Joint = std::unique_ptr<fc_joint, Deleter<fc_joint, fc_joint_free>>;
using Wigner = std::unique_ptr<fc_wigner, Deleter<fc_wigner, fc_wigner_free>>;
using Density = std::unique_ptr<fc_density, Deleter<fc_density, fc_density_free>>;

// ---- configuration

struct TargetConfig {
  std::string kind = "phase";
  int n_max = 5;
  int k = 0;
  double r = 0.8;
  double theta = 0.0;
  int cutoff = 8;
  std::vector<double> re, im;
  json raw;
};

struct RunConfig {
  TargetConfig target;
  double chi_qc_mhz = -1.44;
  double sigma_us = 0.36;
  double sample_rate_msps = 100.0;
  int dim = 24;
  std::optional<double> alpha;
  double omega_cap_mhz = 0.3;
  double dt_max_ns = 1.0;
  double grid_extent = 3.5;
  double grid_spacing = 0.1;
  double measurement_r = 1.0;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
  std::optional<int> reconstruction_dim;
  int bootstrap_resamples = 200;
  double kerr_k_khz = 0.0;
  double kerr_chi_prime_khz = 0.0;
  std::string outputs = "out";
};

double finite(const json& j, const std::string& key) {
  if (!j.is_number()) fail(kUsage, "config field '" + key + "' must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(kUsage, "config field '" + key + "' must be finite");
  return v;
}

int integer(const json& j, const std::string& key) {
  if (!j.is_number_integer()) fail(kUsage, "config field '" + key + "' must be an integer");
  return j.get<int>();
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) fail(kUsage, "unknown config field '" + where + key + "'");
  }
}

TargetConfig parse_target(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    fail(kUsage, "config 'target' must be an object with a string 'kind'");
  }
  TargetConfig t;
  t.raw = j;
  t.kind = j["kind"].get<std::string>();
  if (t.kind == "phase") {
    reject_unknown(j, {"kind", "n_max", "k"}, "target.");
    if (j.contains("n_max")) t.n_max = integer(j["n_max"], "target.n_max");
    if (j.contains("k")) t.k = integer(j["k"], "target.k");
  } else if (t.kind == "squeezed") {
    reject_unknown(j, {"kind", "r", "theta", "cutoff"}, "target.");
    if (j.contains("r")) t.r = finite(j["r"], "target.r");
    if (j.contains("theta")) t.theta = finite(j["theta"], "target.theta");
    if (j.contains("cutoff")) t.cutoff = integer(j["cutoff"], "target.cutoff");
  } else if (t.kind == "custom") {
    reject_unknown(j, {"kind", "amplitudes"}, "target.");
    if (!j.contains("amplitudes") || !j["amplitudes"].is_array()) {
      fail(kUsage, "custom target needs an 'amplitudes' array");
    }
    for (const json& a : j["amplitudes"]) {
      if (a.is_array() && a.size() == 2) {
        t.re.push_back(finite(a[0], "target.amplitudes"));
        t.im.push_back(finite(a[1], "target.amplitudes"));
      } else {
        t.re.push_back(finite(a, "target.amplitudes"));
        t.im.push_back(0.0);
      }
    }
  } else {
    fail(kUsage, "unknown target kind '" + t.kind + "' (expected phase, squeezed or custom)");
  }
  return t;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(kUsage, "cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(kUsage, "config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) fail(kUsage, "config file must hold a JSON object");
  reject_unknown(j,
                 {"target", "chi_qc_mhz", "sigma_us", "sample_rate_msps", "dim", "alpha", "omega_cap_mhz",
                  "dt_max_ns", "grid", "measurement", "reconstruction_dim", "bootstrap_resamples", "kerr",
                  "outputs"},
                 "");
  RunConfig c;
  if (!j.contains("target")) fail(kUsage, "config is missing 'target'");
  c.target = parse_target(j["target"]);
  if (j.contains("chi_qc_mhz")) c.chi_qc_mhz = finite(j["chi_qc_mhz"], "chi_qc_mhz");
  if (j.contains("sigma_us")) c.sigma_us = finite(j["sigma_us"], "sigma_us");
  if (j.contains("sample_rate_msps")) c.sample_rate_msps = finite(j["sample_rate_msps"], "sample_rate_msps");
  if (j.contains("dim")) c.dim = integer(j["dim"], "dim");
  if (j.contains("alpha") && !j["alpha"].is_null()) c.alpha = finite(j["alpha"], "alpha");
  if (j.contains("omega_cap_mhz")) c.omega_cap_mhz = finite(j["omega_cap_mhz"], "omega_cap_mhz");
  if (j.contains("dt_max_ns")) c.dt_max_ns = finite(j["dt_max_ns"], "dt_max_ns");
  if (j.contains("grid")) {
    const json& g = j["grid"];
    reject_unknown(g, {"extent", "spacing"}, "grid.");
    if (g.contains("extent")) c.grid_extent = finite(g["extent"], "grid.extent");
    if (g.contains("spacing")) c.grid_spacing = finite(g["spacing"], "grid.spacing");
  }
  if (j.contains("measurement")) {
    const json& m = j["measurement"];
    reject_unknown(m, {"R", "noise_sigma", "seed"}, "measurement.");
    if (m.contains("R")) c.measurement_r = finite(m["R"], "measurement.R");
    if (m.contains("noise_sigma")) c.noise_sigma = finite(m["noise_sigma"], "measurement.noise_sigma");
    if (m.contains("seed")) {
      if (!m["seed"].is_number_unsigned()) fail(kUsage, "measurement.seed must be a non-negative integer");
      c.seed = m["seed"].get<std::uint64_t>();
    }
  }
  if (j.contains("reconstruction_dim") && !j["reconstruction_dim"].is_null()) {
    c.reconstruction_dim = integer(j["reconstruction_dim"], "reconstruction_dim");
  }
  if (j.contains("bootstrap_resamples")) {
    c.bootstrap_resamples = integer(j["bootstrap_resamples"], "bootstrap_resamples");
  }
  if (j.contains("kerr")) {
    const json& k = j["kerr"];
    reject_unknown(k, {"K_khz", "chi_prime_khz"}, "kerr.");
    if (k.contains("K_khz")) c.kerr_k_khz = finite(k["K_khz"], "kerr.K_khz");
    if (k.contains("chi_prime_khz")) c.kerr_chi_prime_khz = finite(k["chi_prime_khz"], "kerr.chi_prime_khz");
  }
  if (j.contains("outputs")) {
    if (!j["outputs"].is_string()) fail(kUsage, "outputs must be a directory path string");
    c.outputs = j["outputs"].get<std::string>();
  }
  if (!(c.sigma_us > 0.0)) fail(kUsage, "sigma_us must be positive");
  if (!(c.sample_rate_msps > 0.0)) fail(kUsage, "sample_rate_msps must be positive");
  if (!(c.dt_max_ns > 0.0)) fail(kUsage, "dt_max_ns must be positive");
  if (!(c.grid_extent > 0.0) || !(c.grid_spacing > 0.0)) fail(kUsage, "grid extent and spacing must be positive");
  return c;
}

// ---- shared helpers

Target make_target(const RunConfig& c) {
  fc_target* t = nullptr;
  const TargetConfig& tc = c.target;
  fc_status s = FC_OK;
  if (tc.kind == "phase") {
    s = fc_target_phase(tc.n_max, tc.k, c.dim, &t);
  } else if (tc.kind == "squeezed") {
    s = fc_target_squeezed(tc.r, tc.theta, tc.cutoff, c.dim, &t);
  } else {
    s = fc_target_custom(tc.re.data(), tc.im.data(), tc.re.size(), c.dim, &t);
  }
  check(s, kInfeasible, "invalid target");
  Target target(t);
  fc_state* realized = nullptr;
  check(fc_target_state(target.get(), &realized), kInfeasible, "invalid target");
  fc_state_free(realized);
  return target;
}

State target_state(const fc_target* target) {
  fc_state* s = nullptr;
  check(fc_target_state(target, &s), kInfeasible, "invalid target");
  return State(s);
}

double tau_seconds(const RunConfig& c) { return 4.0 * units::us_to_s(c.sigma_us); }

json amplitudes_json(const fc_state* s) {
  json out = json::array();
  for (int n = 0; n < fc_state_dim(s); ++n) {
    double re = 0.0, im = 0.0;
    fc_state_amplitude(s, n, &re, &im);
    out.push_back({re, im});
  }
  return out;
}

void write_json(const fs::path& path, const json& j) {
  const std::string text = j.dump(2) + "\n";
  check(fc_write_file_atomic(path.string().c_str(), text.data(), text.size()), kUsage,
        "writing " + path.string());
}

json read_json(const fs::path& path, const std::string& what) {
  std::ifstream in(path);
  if (!in) fail(kUsage, "missing " + what + " file '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(kUsage, what + " file '" + path.string() + "' is not valid JSON: " + e.what());
  }
}

double json_number(const json& j, const char* key, const std::string& what) {
  if (!j.contains(key) || !j[key].is_number()) fail(kUsage, what + " is missing numeric '" + key + "'");
  return j[key].get<double>();
}

// ---- plan

Plan compute_plan(const RunConfig& c, const fc_target* target) {
  fc_plan* p = nullptr;
  const double chi = units::mhz_to_rad_s(c.chi_qc_mhz);
  if (c.alpha) {
    check(fc_plan_solve(target, *c.alpha, 0.0, chi, tau_seconds(c), &p), kInfeasible, "planning failed");
  } else {
    check(fc_plan_optimize(target, chi, tau_seconds(c), nullptr, &p), kInfeasible, "planning failed");
  }
  return Plan(p);
}

json plan_json(const RunConfig& c, const fc_plan* plan) {
  double are = 0.0, aim = 0.0;
  fc_plan_alpha(plan, &are, &aim);
  json tones = json::array();
  for (std::size_t i = 0; i < fc_plan_tone_count(plan); ++i) {
    fc_tone t{};
    fc_plan_tone(plan, i, &t);
    tones.push_back({{"n", t.n},
                     {"detuning_mhz", units::rad_s_to_mhz(t.detuning) + 0.0},
                     {"beta", t.beta},
                     {"phi", t.phi}});
  }
  return {{"target", c.target.raw},
          {"alpha", are},
          {"alpha_optimized", !c.alpha.has_value()},
          {"chi_qc_mhz", c.chi_qc_mhz},
          {"tau_us", units::s_to_us(fc_plan_tau(plan))},
          {"predicted_success", fc_plan_predicted_success(plan)},
          {"tones", tones}};
}

Plan load_plan(const fs::path& path, const fc_target* target) {
  const json j = read_json(path, "plan");
  if (!j.contains("tones") || !j["tones"].is_array()) fail(kUsage, "plan file has no 'tones' array");
  std::vector<fc_tone> tones;
  const double chi = units::mhz_to_rad_s(json_number(j, "chi_qc_mhz", "plan file"));
  for (const json& t : j["tones"]) {
    fc_tone tone{};
    if (!t.contains("n") || !t["n"].is_number_integer()) fail(kUsage, "plan tone is missing integer 'n'");
    tone.n = t["n"].get<int>();
    tone.detuning = tone.n * chi;
    tone.beta = json_number(t, "beta", "plan tone");
    tone.phi = json_number(t, "phi", "plan tone");
    tones.push_back(tone);
  }
  fc_plan* p = nullptr;
  check(fc_plan_create(target, json_number(j, "alpha", "plan file"), 0.0, chi,
                       units::us_to_s(json_number(j, "tau_us", "plan file")), tones.data(), tones.size(), &p),
        kUsage, "plan file rejected");
  return Plan(p);
}

// ---- simulate

double effective_sample_rate(const RunConfig& c, const fc_plan* plan) {
  const int n_max = static_cast<int>(fc_plan_tone_count(plan)) - 1;
  const double needed = fc_minimum_sample_rate(n_max, units::mhz_to_rad_s(c.chi_qc_mhz));
  double rate = units::msps_to_hz(c.sample_rate_msps);
  while (rate < needed) rate *= 2.0;
  if (rate != units::msps_to_hz(c.sample_rate_msps)) {
    std::cerr << "note: sample rate raised from " << c.sample_rate_msps << " to " << units::hz_to_msps(rate)
              << " MS/s to resolve the N=" << n_max << " detuning\n";
  }
  return rate;
}

json simulate(const RunConfig& c, const fc_plan* plan, const fc_target* target, const std::string& mode,
              const fs::path& out_dir) {
  double are = 0.0, aim = 0.0;
  fc_plan_alpha(plan, &are, &aim);
  fc_joint* jp = nullptr;
  std::optional<double> drift;
  std::optional<double> rate;
  if (mode == "analytic") {
    check(fc_evolve_analytic(are, aim, plan, &jp), kIntegration, "analytic evolution failed");
  } else {
    rate = effective_sample_rate(c, plan);
    fc_waveform* wp = nullptr;
    check(fc_waveform_synthesize(plan, units::us_to_s(c.sigma_us), *rate, units::mhz_to_rad_s(c.omega_cap_mhz), &wp),
          kIntegration, "waveform synthesis failed");
    Wave wave(wp);
    check(fc_waveform_write_csv(wave.get(), (out_dir / "waveform.csv").string().c_str()), kUsage,
          "writing waveform.csv");
    const fc_kerr kerr{units::khz_to_rad_s(c.kerr_k_khz), units::khz_to_rad_s(c.kerr_chi_prime_khz)};
    double d = 0.0;
    check(fc_evolve_numeric(are, aim, wave.get(), units::mhz_to_rad_s(c.chi_qc_mhz), &kerr, c.dim,
                            units::ns_to_s(c.dt_max_ns), &jp, &d),
          kIntegration, "numeric evolution failed");
    drift = d;
  }
  Joint joint(jp);
  fc_state* sp = nullptr;
  double prob = 0.0;
  check(fc_postselect_excited(joint.get(), &sp, &prob), kIntegration, "post-selection failed");
  State cavity(sp);
  State ideal = target_state(target);
  double fid = 0.0;
  check(fc_state_fidelity(cavity.get(), ideal.get(), &fid), kIntegration, "fidelity failed");
  return {{"mode", mode},
          {"target", c.target.raw},
          {"alpha", are},
          {"dim", fc_state_dim(cavity.get())},
          {"success_probability", prob},
          {"predicted_success", fc_plan_predicted_success(plan)},
          {"fidelity", fid},
          {"norm_drift", drift ? json(*drift) : json(nullptr)},
          {"sample_rate_msps", rate ? json(units::hz_to_msps(*rate)) : json(nullptr)},
          {"amplitudes", amplitudes_json(cavity.get())}};
}

State load_state(const fs::path& path) {
  const json j = read_json(path, "state");
  if (!j.contains("amplitudes") || !j["amplitudes"].is_array()) fail(kUsage, "state file has no 'amplitudes'");
  std::vector<double> re, im;
  for (const json& a : j["amplitudes"]) {
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
      fail(kUsage, "state amplitudes must be [re, im] pairs");
    }
    re.push_back(a[0].get<double>());
    im.push_back(a[1].get<double>());
  }
  fc_state* s = nullptr;
  check(fc_state_create(re.data(), im.data(), re.size(), &s), kUsage, "state file rejected");
  return State(s);
}

// ---- tomography

struct TomographyInput {
  State state;
  std::optional<double> success_probability;
  std::optional<double> simulation_fidelity;
  std::optional<double> alpha;
};

json tomography(const RunConfig& c, const fc_target* target, const TomographyInput& input, const fs::path& out_dir) {
  fc_grid_geometry geom{};
  fc_grid_geometry_square(c.grid_extent, c.grid_spacing, &geom);
  int covers = 0;
  check(fc_grid_covers(&geom, input.state.get(), &covers), kReconstruction, "coverage check failed");
  if (!covers) std::cerr << "warning: grid extent " << c.grid_extent << " may not cover the state's support\n";

  fc_wigner* wp = nullptr;
  check(fc_wigner_exact_state(input.state.get(), &geom, &wp), kReconstruction, "Wigner evaluation failed");
  Wigner exact(wp);
  check(fc_wigner_write_csv(exact.get(), (out_dir / "wigner_exact.csv").string().c_str()), kUsage,
        "writing wigner_exact.csv");
  check(fc_wigner_simulate_measurement(exact.get(), c.measurement_r, c.noise_sigma, c.seed, &wp), kReconstruction,
        "measurement simulation failed");
  Wigner measured(wp);
  check(fc_wigner_write_csv(measured.get(), (out_dir / "wigner_measured.csv").string().c_str()), kUsage,
        "writing wigner_measured.csv");

  const int n_max = fc_target_n_max(target);
  const int rec_dim = c.reconstruction_dim.value_or(n_max + 3);
  fc_density* dp = nullptr;
  check(fc_reconstruct_density(measured.get(), rec_dim, 1, &dp), kReconstruction, "reconstruction failed");
  Density rho(dp);
  check(fc_density_write_csv(rho.get(), (out_dir / "rho.csv").string().c_str()), kUsage, "writing rho.csv");

  State ideal = target_state(target);
  fc_state* rp = nullptr;
  check(fc_state_resize(ideal.get(), rec_dim, &rp), kReconstruction, "target does not fit reconstruction dim");
  State ideal_rec(rp);
  double r = 0.0, f = 0.0;
  check(fc_wigner_reduction_factor(measured.get(), &r), kReconstruction, "reduction factor failed");
  check(fc_density_fidelity(rho.get(), ideal_rec.get(), &f), kReconstruction, "fidelity failed");

  json squeezed = nullptr;
  json antisqueezed = nullptr;
  json angle = nullptr;
  if (c.target.kind == "squeezed") {
    const double half = 0.5 * c.target.theta;
    double v = 0.0, w = 0.0;
    check(fc_wigner_quadrature_variance(measured.get(), half, &v), kReconstruction, "quadrature fit failed");
    check(fc_wigner_quadrature_variance(measured.get(), half + 0.5 * kPi, &w), kReconstruction,
          "quadrature fit failed");
    squeezed = v;
    antisqueezed = w;
    angle = half;
  }

  fc_bootstrap_result boot{};
  check(fc_bootstrap(measured.get(), ideal_rec.get(), rec_dim, c.bootstrap_resamples, c.seed, &boot),
        kReconstruction, "bootstrap failed");

  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  return {{"target", c.target.raw},
          {"alpha", opt(input.alpha)},
          {"success_probability", opt(input.success_probability)},
          {"simulation_fidelity", opt(input.simulation_fidelity)},
          {"reduction_factor", r},
          {"reconstruction_fidelity", f},
          {"reconstruction_dim", rec_dim},
          {"quadrature_angle", angle},
          {"squeezed_variance", squeezed},
          {"antisqueezed_variance", antisqueezed},
          {"bootstrap",
           {{"resamples", boot.resamples},
            {"reduction_mean", boot.r_mean},
            {"reduction_std", boot.r_std},
            {"fidelity_mean", boot.f_mean},
            {"fidelity_std", boot.f_std}}},
          {"measurement", {{"R", c.measurement_r}, {"noise_sigma", c.noise_sigma}, {"seed", c.seed}}},
          {"grid", {{"extent", c.grid_extent}, {"spacing", c.grid_spacing}, {"covers_state", covers != 0}}}};
}

TomographyInput input_from_state_file(const fs::path& path) {
  const json j = read_json(path, "state");
  TomographyInput in{load_state(path), std::nullopt, std::nullopt, std::nullopt};
  if (j.contains("success_probability") && j["success_probability"].is_number()) {
    in.success_probability = j["success_probability"].get<double>();
  }
  if (j.contains("fidelity") && j["fidelity"].is_number()) in.simulation_fidelity = j["fidelity"].get<double>();
  if (j.contains("alpha") && j["alpha"].is_number()) in.alpha = j["alpha"].get<double>();
  return in;
}

// ---- commands

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string mode = "numeric";
  std::string state;
  std::string plan;
};

RunConfig prepare(const Options& o, fs::path& out_dir) {
  RunConfig c = load_config(o.config);
  if (o.seed) c.seed = *o.seed;
  out_dir = o.out.empty() ? fs::path(c.outputs) : fs::path(o.out);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) fail(kUsage, "cannot create output directory '" + out_dir.string() + "': " + ec.message());
  return c;
}

int cmd_plan(const Options& o) {
  fs::path out_dir;
  const RunConfig c = prepare(o, out_dir);
  Target target = make_target(c);
  Plan plan = compute_plan(c, target.get());
  write_json(out_dir / "plan.json", plan_json(c, plan.get()));
  return kOk;
}

int cmd_simulate(const Options& o) {
  fs::path out_dir;
  const RunConfig c = prepare(o, out_dir);
  Target target = make_target(c);
  Plan plan = o.plan.empty() ? compute_plan(c, target.get()) : load_plan(o.plan, target.get());
  if (o.plan.empty()) write_json(out_dir / "plan.json", plan_json(c, plan.get()));
  write_json(out_dir / "state.json", simulate(c, plan.get(), target.get(), o.mode, out_dir));
  return kOk;
}

int cmd_tomography(const Options& o) {
  fs::path out_dir;
  const RunConfig c = prepare(o, out_dir);
  Target target = make_target(c);
  TomographyInput input = o.state.empty()
                              ? TomographyInput{target_state(target.get()), std::nullopt, std::nullopt, std::nullopt}
                              : input_from_state_file(o.state);
  write_json(out_dir / "report.json", tomography(c, target.get(), input, out_dir));
  return kOk;
}

int cmd_report(const Options& o) {
  fs::path out_dir;
  const RunConfig c = prepare(o, out_dir);
  Target target = make_target(c);
  Plan plan = compute_plan(c, target.get());
  write_json(out_dir / "plan.json", plan_json(c, plan.get()));
  write_json(out_dir / "state.json", simulate(c, plan.get(), target.get(), o.mode, out_dir));
  const TomographyInput input = input_from_state_file(out_dir / "state.json");
  write_json(out_dir / "report.json", tomography(c, target.get(), input, out_dir));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Plan, simulate and verify coherent-to-Fock-superposition conversion"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fc_version()));
  Options o;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "RunConfig JSON file")->required();
    sub->add_option("--out", o.out, "output directory (overrides config 'outputs')");
    sub->add_option("--seed", seed, "measurement noise and bootstrap seed (overrides config)");
  };
  CLI::App* plan = app.add_subcommand("plan", "solve drive parameters and optimize alpha; writes plan.json");
  add_common(plan);
  CLI::App* sim = app.add_subcommand("simulate", "evolve and post-select; writes state.json (and waveform.csv)");
  add_common(sim);
  sim->add_option("--mode", o.mode, "analytic or numeric")->check(CLI::IsMember({"analytic", "numeric"}));
  sim->add_option("--plan", o.plan, "reuse a plan.json instead of planning inline");
  CLI::App* tomo = app.add_subcommand("tomography", "Wigner grids, reconstruction, report.json");
  add_common(tomo);
  tomo->add_option("--state", o.state, "state.json produced by simulate (default: ideal target)");
  CLI::App* report = app.add_subcommand("report", "full pipeline: plan, simulate, tomography");
  add_common(report);
  report->add_option("--mode", o.mode, "analytic or numeric")->check(CLI::IsMember({"analytic", "numeric"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  for (CLI::App* sub : {plan, sim, tomo, report}) {
    if (sub->count("--seed") > 0) o.seed = seed;
  }

  try {
    if (*plan) return cmd_plan(o);
    if (*sim) return cmd_simulate(o);
    if (*tomo) return cmd_tomography(o);
    return cmd_report(o);
  } catch (const CliError& e) {
    std::cerr << "fockconv: " << e.message << "\n";
    if (e.code == kUsage) std::cerr << app.help();
    return e.code;
  }
}
