// Command-line front end: training, simulation, comparison, transfer and
// gradient-check subcommands. Every run writes its outputs next to a
// manifest of fully resolved settings; re-running with --from-manifest
// reproduces the outputs byte for byte.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polegrad/actor_critic.hpp"
#include "polegrad/bicycle.hpp"
#include "polegrad/cartpole.hpp"
#include "polegrad/gradcheck.hpp"
#include "polegrad/harness.hpp"
#include "polegrad/kv.hpp"
#include "polegrad/mc_trainer.hpp"

namespace {

using namespace polegrad;

constexpr const char* kVersion = "polegrad 0.1.0";

std::uint64_t default_seed() {
  if (const char* env = std::getenv("POLEGRAD_SEED")) {
    return static_cast<std::uint64_t>(std::strtoull(env, nullptr, 10));
  }
  return 42;
}

// Resolved settings for one run. Values are stored as strings in manifest
// form so resolution, serialization and replay share one representation.
class Settings {
 public:
  void set(const std::string& key, const std::string& value) { kv_[key] = value; }
  void set_d(const std::string& key, double value) { kv_[key] = format_double(value); }
  void set_l(const std::string& key, long value) { kv_[key] = std::to_string(value); }
  void set_b(const std::string& key, bool value) { kv_[key] = value ? "1" : "0"; }

  const std::string& get(const std::string& key) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) throw std::runtime_error("settings: missing key " + key);
    return it->second;
  }
  double get_d(const std::string& key) const { return parse_double(get(key)); }
  long get_l(const std::string& key) const { return parse_long(get(key)); }
  bool get_b(const std::string& key) const { return get(key) != "0"; }

  const KvMap& map() const { return kv_; }
  static Settings from_map(KvMap map) {
    Settings s;
    s.kv_ = std::move(map);
    return s;
  }

 private:
  KvMap kv_;
};

void put_env(Settings& s, const EnvConfig& env) {
  s.set_d("env.gravity", env.gravity);
  s.set_d("env.cart_mass", env.cart_mass);
  s.set_d("env.pole_mass", env.pole_mass);
  s.set_d("env.pole_half_length", env.pole_half_length);
  s.set_d("env.force_mag", env.force_mag);
  s.set_d("env.tau", env.tau);
  s.set_d("env.theta_limit", env.theta_limit);
  s.set_d("env.x_limit", env.x_limit);
  s.set_l("env.max_steps", env.max_steps);
}

EnvConfig env_from_settings(const Settings& s) {
  EnvConfig env;
  env.gravity = s.get_d("env.gravity");
  env.cart_mass = s.get_d("env.cart_mass");
  env.pole_mass = s.get_d("env.pole_mass");
  env.pole_half_length = s.get_d("env.pole_half_length");
  env.force_mag = s.get_d("env.force_mag");
  env.tau = s.get_d("env.tau");
  env.theta_limit = s.get_d("env.theta_limit");
  env.x_limit = s.get_d("env.x_limit");
  env.max_steps = static_cast<int>(s.get_l("env.max_steps"));
  return env;
}

std::ofstream open_output(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + (dir / name).string());
  return out;
}

void write_manifest(const Settings& settings, const std::string& subcommand,
                    const std::filesystem::path& dir, const std::string& outputs) {
  KvMap map = settings.map();
  map["subcommand"] = subcommand;
  map["version"] = kVersion;
  map["outputs"] = outputs;
  std::filesystem::create_directories(dir);
  kv_save(map, (dir / "manifest.txt").string());
}

// ---------------------------------------------------------------------------
// Subcommand runners: Settings in, CSV artifacts + manifest out.

int run_random_baseline(const Settings& s, const std::filesystem::path& out_dir) {
  const EnvConfig env = env_from_settings(s);
  Rng rng(static_cast<std::uint64_t>(s.get_l("seed")));
  const long episodes = s.get_l("episodes");

  std::vector<int> lengths;
  lengths.reserve(episodes);
  for (long i = 0; i < episodes; ++i) lengths.push_back(random_rollout(env, rng));

  auto csv = open_output(out_dir, "baseline.csv");
  csv << "episode,length\n";
  double total = 0.0;
  for (long i = 0; i < episodes; ++i) {
    csv << (i + 1) << ',' << lengths[i] << '\n';
    total += lengths[i];
  }
  std::vector<int> sorted = lengths;
  std::sort(sorted.begin(), sorted.end());
  const double median = episodes % 2 == 1
                            ? sorted[episodes / 2]
                            : 0.5 * (sorted[episodes / 2 - 1] + sorted[episodes / 2]);
  write_manifest(s, "random-baseline", out_dir, "baseline.csv");
  std::cout << "random baseline over " << episodes << " episodes: mean length "
            << format_double(total / episodes) << ", median " << format_double(median)
            << "\n";
  return 0;
}

int run_train_mc(const Settings& s, const std::filesystem::path& out_dir) {
  const EnvConfig env = env_from_settings(s);
  Rng rng(static_cast<std::uint64_t>(s.get_l("seed")));

  McConfig config;
  config.lr = s.get_d("lr");
  config.episodes = static_cast<int>(s.get_l("episodes"));
  config.gamma = s.get_d("gamma");
  const std::string mode = s.get("mode");
  if (mode == "paper_faithful") {
    config.mode = McMode::kPaperFaithful;
  } else if (mode == "reinforce") {
    config.mode = McMode::kReinforce;
  } else {
    throw std::runtime_error("train-mc: unknown mode '" + mode + "'");
  }

  LinearPolicyParams theta0;
  for (double& w : theta0.theta) w = rng.uniform(0.0, 1.0);
  const McTrainResult result = train_mc(env, config, theta0, rng);

  auto csv = open_output(out_dir, "mc_history.csv");
  csv << "episode,length\n";
  int best = 0;
  for (std::size_t i = 0; i < result.lengths.size(); ++i) {
    csv << (i + 1) << ',' << result.lengths[i] << '\n';
    best = std::max(best, result.lengths[i]);
  }
  write_manifest(s, "train-mc", out_dir, "mc_history.csv");
  std::cout << "train-mc (" << mode << "): " << config.episodes
            << " episodes, best length " << best << ", final theta [";
  for (int i = 0; i < 4; ++i) {
    std::cout << (i ? ", " : "") << format_double(result.theta.theta[i]);
  }
  std::cout << "]\n";
  return 0;
}

int run_train_ac(const Settings& s, const std::filesystem::path& out_dir) {
  const EnvConfig env = env_from_settings(s);
  Rng rng(static_cast<std::uint64_t>(s.get_l("seed")));

  AcTrainConfig config;
  config.gamma = s.get_d("gamma");
  config.lr = s.get_d("lr");
  config.max_steps_per_episode = static_cast<int>(s.get_l("max_steps_per_episode"));
  config.solve_threshold = s.get_d("solve_threshold");
  config.running_alpha = s.get_d("running_alpha");
  config.value_grad_in_actor_loss = s.get_b("value_grad_in_actor_loss");
  config.episode_cap = static_cast<int>(s.get_l("episode_cap"));

  const AcTrainResult result = train_ac(env, config, rng, &std::cout);

  auto csv = open_output(out_dir, "ac_history.csv");
  csv << "episode,episode_reward,running_reward\n";
  for (std::size_t i = 0; i < result.history.size(); ++i) {
    csv << (i + 1) << ',' << format_double(result.history[i].episode_reward) << ','
        << format_double(result.history[i].running_reward) << '\n';
  }
  ac_save(result.net, (out_dir / "net.txt").string());
  write_manifest(s, "train-ac", out_dir, "ac_history.csv,net.txt");
  if (result.solved_at) {
    std::cout << "Solved at episode " << *result.solved_at << "!\n";
  } else {
    std::cout << "Not solved within " << config.episode_cap << " episodes\n";
  }
  return 0;
}

void write_trajectory_csv(std::ofstream& csv, const std::vector<TrajectoryPoint>& trajectory) {
  csv << "t,x,y,heading,speed,steer,accel,clamped\n";
  for (const TrajectoryPoint& p : trajectory) {
    csv << format_double(p.t) << ',' << format_double(p.state.x) << ','
        << format_double(p.state.y) << ',' << format_double(p.state.heading) << ','
        << format_double(p.state.speed) << ',' << format_double(p.control.steer) << ','
        << format_double(p.control.accel) << ',' << (p.clamped ? 1 : 0) << '\n';
  }
}

int run_sim_bicycle(const Settings& s, const std::filesystem::path& out_dir) {
  BicycleConfig config;
  config.wheelbase = s.get_d("wheelbase");
  config.dt = s.get_d("dt");
  config.steer_limit = s.get_d("steer_limit");

  BicycleState initial;
  initial.x = s.get_d("x0");
  initial.y = s.get_d("y0");
  initial.heading = s.get_d("heading0");
  initial.speed = s.get_d("speed0");

  const BicycleControl constant{s.get_d("accel"), s.get_d("steer")};
  const auto trajectory = simulate(
      initial, [&](const BicycleState&) { return constant; }, config, s.get_d("duration"));

  auto csv = open_output(out_dir, "trajectory.csv");
  write_trajectory_csv(csv, trajectory);
  write_manifest(s, "sim-bicycle", out_dir, "trajectory.csv");

  const BicycleState& last = trajectory.back().state;
  std::cout << "sim-bicycle: " << trajectory.size() - 1 << " steps, final position ("
            << format_double(last.x) << ", " << format_double(last.y) << "), heading "
            << format_double(last.wrapped_heading());
  const double radius = turning_radius(config.wheelbase, constant.steer);
  std::cout << ", turning radius " << format_double(radius) << "\n";
  return 0;
}

int run_transfer(const Settings& s, const std::filesystem::path& out_dir) {
  const AcNetwork actor = ac_load(s.get("net"));

  TransferMapping mapping;
  mapping.lateral_offset_scale = s.get_d("lateral_offset_scale");
  mapping.lateral_vel_scale = s.get_d("lateral_vel_scale");
  mapping.heading_err_scale = s.get_d("heading_err_scale");
  mapping.heading_rate_scale = s.get_d("heading_rate_scale");
  mapping.steer_command = s.get_d("steer_command");

  BicycleConfig config;
  config.wheelbase = s.get_d("wheelbase");
  config.dt = s.get_d("dt");
  config.steer_limit = s.get_d("steer_limit");

  BicycleState initial;
  initial.y = s.get_d("y0");
  initial.heading = s.get_d("heading0");
  initial.speed = s.get_d("speed0");

  const TransferResult result =
      transfer_drive(actor, mapping, config, initial, s.get_d("duration"));

  auto traj_csv = open_output(out_dir, "transfer_trajectory.csv");
  write_trajectory_csv(traj_csv, result.trajectory);
  auto metrics_csv = open_output(out_dir, "transfer_metrics.csv");
  metrics_csv << "max_abs_y,max_abs_heading,survived\n";
  metrics_csv << format_double(result.metrics.max_abs_y) << ','
              << format_double(result.metrics.max_abs_heading) << ','
              << (result.metrics.survived ? 1 : 0) << '\n';
  write_manifest(s, "transfer", out_dir, "transfer_trajectory.csv,transfer_metrics.csv");

  std::cout << "transfer: max |y| " << format_double(result.metrics.max_abs_y)
            << " m, max |heading| " << format_double(result.metrics.max_abs_heading)
            << " rad, survived " << (result.metrics.survived ? "yes" : "no") << "\n";
  return 0;
}

int run_compare(const Settings& s, const std::filesystem::path& out_dir) {
  CompareConfig config = default_compare_config();
  config.env = env_from_settings(s);
  config.threshold = s.get_d("threshold");
  config.mc.lr = s.get_d("mc_lr");
  config.mc.episodes = static_cast<int>(s.get_l("mc_episodes"));
  config.mc.gamma = s.get_d("mc_gamma");
  config.ac.lr = s.get_d("ac_lr");
  config.ac.gamma = s.get_d("ac_gamma");
  config.ac.episode_cap = static_cast<int>(s.get_l("ac_episode_cap"));
  config.ac.value_grad_in_actor_loss = s.get_b("ac_value_grad_in_actor_loss");

  std::vector<std::uint64_t> seeds;
  std::istringstream seed_stream(s.get("seeds"));
  std::string token;
  while (std::getline(seed_stream, token, ',')) {
    if (!token.empty()) seeds.push_back(std::strtoull(token.c_str(), nullptr, 10));
  }

  const ComparisonReport report = compare_convergence(config, seeds);

  auto csv = open_output(out_dir, "report.csv");
  csv << "seed,method,episodes_to_threshold,converged\n";
  for (const SeedComparison& row : report.rows) {
    csv << row.seed << ",mc,"
        << (row.mc_episodes_to_threshold ? std::to_string(*row.mc_episodes_to_threshold) : "")
        << ',' << (row.mc_episodes_to_threshold ? 1 : 0) << '\n';
    csv << row.seed << ",ac,"
        << (row.ac_episodes_to_threshold ? std::to_string(*row.ac_episodes_to_threshold) : "")
        << ',' << (row.ac_episodes_to_threshold ? 1 : 0) << '\n';
  }
  write_manifest(s, "compare", out_dir, "report.csv");

  for (const SeedComparison& row : report.rows) {
    std::cout << "seed " << row.seed << ": mc "
              << (row.mc_episodes_to_threshold ? std::to_string(*row.mc_episodes_to_threshold)
                                               : "not converged")
              << ", ac "
              << (row.ac_episodes_to_threshold ? std::to_string(*row.ac_episodes_to_threshold)
                                               : "not converged")
              << "\n";
  }
  return 0;
}

int run_check_grad(const Settings& s, const std::filesystem::path& out_dir) {
  const GradCheckReport report = run_gradient_checks(
      static_cast<int>(s.get_l("ac_episodes")), static_cast<int>(s.get_l("policy_instances")),
      static_cast<int>(s.get_l("mdp_instances")),
      static_cast<std::uint64_t>(s.get_l("seed")));
  const GradCheckThresholds thresholds;

  write_manifest(s, "check-grad", out_dir, "");
  std::cout << "ac episode-loss gradient vs central FD: max rel err "
            << format_double(report.ac_loss_max_rel_err) << " (< "
            << format_double(thresholds.ac_loss) << ")\n"
            << "softmax score vs FD of log pi:          max err "
            << format_double(report.softmax_score_max_err) << " (< "
            << format_double(thresholds.softmax_score) << ")\n"
            << "likelihood-ratio identity residual:     max "
            << format_double(report.lr_residual_max) << " (< "
            << format_double(thresholds.lr_residual) << ")\n"
            << "tabular policy gradient theorem:        max discrepancy "
            << format_double(report.pg_theorem_max) << " (< "
            << format_double(thresholds.pg_theorem) << ")\n";
  const bool ok = gradient_checks_pass(report, thresholds);
  std::cout << (ok ? "all gradient checks passed\n" : "GRADIENT CHECKS FAILED\n");
  return ok ? 0 : 2;
}

int dispatch(const Settings& settings, const std::string& subcommand,
             const std::filesystem::path& out_dir) {
  if (subcommand == "random-baseline") return run_random_baseline(settings, out_dir);
  if (subcommand == "train-mc") return run_train_mc(settings, out_dir);
  if (subcommand == "train-ac") return run_train_ac(settings, out_dir);
  if (subcommand == "sim-bicycle") return run_sim_bicycle(settings, out_dir);
  if (subcommand == "transfer") return run_transfer(settings, out_dir);
  if (subcommand == "compare") return run_compare(settings, out_dir);
  if (subcommand == "check-grad") return run_check_grad(settings, out_dir);
  throw std::runtime_error("unknown subcommand in manifest: " + subcommand);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"policy-gradient cart-pole trainer and bicycle-model transfer harness"};
  // 0 subcommands is legal only with --from-manifest; enforced after parsing.
  app.require_subcommand(0, 1);

  std::uint64_t seed = default_seed();
  std::string out_dir = ".";
  std::string env_config_path;
  std::string manifest_path;
  app.add_option("--seed", seed, "PRNG seed (env POLEGRAD_SEED is the fallback)");
  auto* out_opt = app.add_option("--out", out_dir, "output directory");
  app.add_option("--env-config", env_config_path, "cart-pole env config (key = value file)");
  app.add_option("--from-manifest", manifest_path,
                 "re-run a previous run from its manifest (other flags except --out ignored)");

  auto* baseline = app.add_subcommand("random-baseline", "random-action episode lengths");
  long baseline_episodes = 200;
  baseline->add_option("--episodes", baseline_episodes, "episode count");

  auto* train_mc_cmd = app.add_subcommand("train-mc", "Monte-Carlo policy gradient training");
  std::string mc_mode = "paper_faithful";
  double mc_lr = 0.02, mc_gamma = 1.0;
  long mc_episodes = 10;
  train_mc_cmd->add_option("--mode", mc_mode, "paper_faithful or reinforce")
      ->check(CLI::IsMember({"paper_faithful", "reinforce"}));
  train_mc_cmd->add_option("--lr", mc_lr, "learning rate");
  train_mc_cmd->add_option("--episodes", mc_episodes, "episode count");
  train_mc_cmd->add_option("--gamma", mc_gamma, "discount (reinforce mode)");

  auto* train_ac_cmd = app.add_subcommand("train-ac", "actor-critic training");
  double ac_gamma = 0.99, ac_lr = 0.01, ac_solve = 195.0, ac_alpha = 0.05;
  long ac_max_steps = 10000, ac_cap = 5000;
  bool ac_detach_value = false;
  train_ac_cmd->add_option("--gamma", ac_gamma, "discount factor");
  train_ac_cmd->add_option("--lr", ac_lr, "Adam learning rate");
  train_ac_cmd->add_option("--solve-threshold", ac_solve, "running-reward solve level");
  train_ac_cmd->add_option("--running-alpha", ac_alpha, "running-reward smoothing");
  train_ac_cmd->add_option("--max-steps-per-episode", ac_max_steps, "per-episode step cap");
  train_ac_cmd->add_option("--episode-cap", ac_cap, "training episode cap");
  train_ac_cmd->add_flag("--detach-value", ac_detach_value,
                         "exclude the critic value from the actor-loss gradient");

  auto* sim_cmd = app.add_subcommand("sim-bicycle", "constant-control bicycle simulation");
  double sim_wheelbase = 0.3, sim_dt = 0.01, sim_steer_limit = 1.0;
  double sim_steer = 0.0, sim_accel = 0.0, sim_speed = 1.0, sim_heading = 0.0;
  double sim_x = 0.0, sim_y = 0.0, sim_duration = 10.0;
  sim_cmd->add_option("--wheelbase", sim_wheelbase, "axle distance L (m)");
  sim_cmd->add_option("--dt", sim_dt, "integration step (s)");
  sim_cmd->add_option("--steer-limit", sim_steer_limit, "max |steer| (rad)");
  sim_cmd->add_option("--steer", sim_steer, "steering angle (rad, left positive)");
  sim_cmd->add_option("--accel", sim_accel, "acceleration (m/s^2)");
  sim_cmd->add_option("--speed", sim_speed, "initial speed (m/s)");
  sim_cmd->add_option("--heading", sim_heading, "initial heading (rad)");
  sim_cmd->add_option("--x", sim_x, "initial x (m)");
  sim_cmd->add_option("--y", sim_y, "initial y (m)");
  sim_cmd->add_option("--duration", sim_duration, "simulated time (s)");

  auto* transfer_cmd = app.add_subcommand("transfer", "drive the bicycle with a trained actor");
  std::string transfer_net;
  double tr_k1 = 1.0, tr_k2 = 1.0, tr_k3 = -1.0, tr_k4 = -1.0, tr_cmd_steer = 0.2;
  double tr_wheelbase = 0.3, tr_dt = 0.02, tr_steer_limit = 0.5236;
  double tr_y0 = 0.1, tr_heading0 = 5.0 * std::numbers::pi / 180.0, tr_speed = 1.0;
  double tr_duration = 20.0;
  transfer_cmd->add_option("--net", transfer_net, "trained network file (train-ac net.txt)")
      ->required();
  transfer_cmd->add_option("--lateral-offset-scale", tr_k1, "y -> cart position scale");
  transfer_cmd->add_option("--lateral-vel-scale", tr_k2, "y rate -> cart velocity scale");
  transfer_cmd->add_option("--heading-err-scale", tr_k3, "heading -> pole angle scale");
  transfer_cmd->add_option("--heading-rate-scale", tr_k4, "heading rate -> pole rate scale");
  transfer_cmd->add_option("--steer-command", tr_cmd_steer, "steer magnitude per action (rad)");
  transfer_cmd->add_option("--wheelbase", tr_wheelbase, "axle distance L (m)");
  transfer_cmd->add_option("--dt", tr_dt, "control step (s)");
  transfer_cmd->add_option("--steer-limit", tr_steer_limit, "max |steer| (rad)");
  transfer_cmd->add_option("--y0", tr_y0, "initial lateral offset (m)");
  transfer_cmd->add_option("--heading0", tr_heading0, "initial heading error (rad)");
  transfer_cmd->add_option("--speed", tr_speed, "constant speed (m/s)");
  transfer_cmd->add_option("--duration", tr_duration, "simulated time (s)");

  auto* compare_cmd = app.add_subcommand("compare", "MC vs AC convergence race");
  std::string compare_seeds = "1,2,3,4,5";
  double cmp_threshold = 195.0, cmp_mc_lr = 2e-4, cmp_mc_gamma = 1.0;
  double cmp_ac_lr = 0.015, cmp_ac_gamma = 0.999;
  long cmp_mc_episodes = 2000, cmp_ac_cap = 5000;
  compare_cmd->add_option("--seeds", compare_seeds, "comma-separated seed list");
  compare_cmd->add_option("--threshold", cmp_threshold, "trailing-100 mean reward level");
  compare_cmd->add_option("--mc-lr", cmp_mc_lr, "REINFORCE learning rate");
  compare_cmd->add_option("--mc-episodes", cmp_mc_episodes, "MC episode budget");
  compare_cmd->add_option("--mc-gamma", cmp_mc_gamma, "REINFORCE discount");
  compare_cmd->add_option("--ac-lr", cmp_ac_lr, "AC learning rate");
  compare_cmd->add_option("--ac-gamma", cmp_ac_gamma, "AC discount");
  compare_cmd->add_option("--ac-episode-cap", cmp_ac_cap, "AC episode budget");
  bool cmp_ac_live_value = false;
  compare_cmd->add_flag("--ac-value-in-actor-loss", cmp_ac_live_value,
                        "let gradient flow through the critic value in the actor "
                        "loss (default: detached for a like-for-like race)");

  auto* check_cmd = app.add_subcommand("check-grad", "run the gradient oracle suite");
  long chk_ac_episodes = 10, chk_policy_instances = 20, chk_mdp_instances = 20;
  check_cmd->add_option("--ac-episodes", chk_ac_episodes, "frozen AC episodes to check");
  check_cmd->add_option("--policy-instances", chk_policy_instances,
                        "random softmax policy instances");
  check_cmd->add_option("--mdp-instances", chk_mdp_instances, "random tabular MDPs");

  // Let --seed/--out/--env-config appear after the subcommand name too.
  for (CLI::App* sub : {baseline, train_mc_cmd, train_ac_cmd, sim_cmd, transfer_cmd,
                        compare_cmd, check_cmd}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      std::cout << app.help() << std::flush;
      return 0;
    }
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 1;
  }

  try {
    if (!manifest_path.empty()) {
      KvMap map = kv_load(manifest_path);
      const std::string subcommand = map.at("subcommand");
      map.erase("subcommand");
      map.erase("version");
      map.erase("outputs");
      const std::filesystem::path dir =
          out_opt->count() > 0 ? std::filesystem::path(out_dir)
                               : std::filesystem::path(manifest_path).parent_path();
      return dispatch(Settings::from_map(std::move(map)), subcommand, dir);
    }

    EnvConfig env;
    if (!env_config_path.empty()) env = env_config_from_file(env_config_path);

    Settings s;
    s.set_l("seed", static_cast<long>(seed));

    if (baseline->parsed()) {
      put_env(s, env);
      s.set_l("episodes", baseline_episodes);
      return run_random_baseline(s, out_dir);
    }
    if (train_mc_cmd->parsed()) {
      put_env(s, env);
      s.set("mode", mc_mode);
      s.set_d("lr", mc_lr);
      s.set_l("episodes", mc_episodes);
      s.set_d("gamma", mc_gamma);
      return run_train_mc(s, out_dir);
    }
    if (train_ac_cmd->parsed()) {
      put_env(s, env);
      s.set_d("gamma", ac_gamma);
      s.set_d("lr", ac_lr);
      s.set_d("solve_threshold", ac_solve);
      s.set_d("running_alpha", ac_alpha);
      s.set_l("max_steps_per_episode", ac_max_steps);
      s.set_l("episode_cap", ac_cap);
      s.set_b("value_grad_in_actor_loss", !ac_detach_value);
      return run_train_ac(s, out_dir);
    }
    if (sim_cmd->parsed()) {
      s.set_d("wheelbase", sim_wheelbase);
      s.set_d("dt", sim_dt);
      s.set_d("steer_limit", sim_steer_limit);
      s.set_d("steer", sim_steer);
      s.set_d("accel", sim_accel);
      s.set_d("speed0", sim_speed);
      s.set_d("heading0", sim_heading);
      s.set_d("x0", sim_x);
      s.set_d("y0", sim_y);
      s.set_d("duration", sim_duration);
      return run_sim_bicycle(s, out_dir);
    }
    if (transfer_cmd->parsed()) {
      s.set("net", transfer_net);
      s.set_d("lateral_offset_scale", tr_k1);
      s.set_d("lateral_vel_scale", tr_k2);
      s.set_d("heading_err_scale", tr_k3);
      s.set_d("heading_rate_scale", tr_k4);
      s.set_d("steer_command", tr_cmd_steer);
      s.set_d("wheelbase", tr_wheelbase);
      s.set_d("dt", tr_dt);
      s.set_d("steer_limit", tr_steer_limit);
      s.set_d("y0", tr_y0);
      s.set_d("heading0", tr_heading0);
      s.set_d("speed0", tr_speed);
      s.set_d("duration", tr_duration);
      return run_transfer(s, out_dir);
    }
    if (compare_cmd->parsed()) {
      EnvConfig race_env = env;
      if (env_config_path.empty()) race_env.max_steps = 200;
      put_env(s, race_env);
      s.set("seeds", compare_seeds);
      s.set_d("threshold", cmp_threshold);
      s.set_d("mc_lr", cmp_mc_lr);
      s.set_l("mc_episodes", cmp_mc_episodes);
      s.set_d("mc_gamma", cmp_mc_gamma);
      s.set_d("ac_lr", cmp_ac_lr);
      s.set_d("ac_gamma", cmp_ac_gamma);
      s.set_l("ac_episode_cap", cmp_ac_cap);
      s.set_b("ac_value_grad_in_actor_loss", cmp_ac_live_value);
      return run_compare(s, out_dir);
    }
    if (check_cmd->parsed()) {
      s.set_l("ac_episodes", chk_ac_episodes);
      s.set_l("policy_instances", chk_policy_instances);
      s.set_l("mdp_instances", chk_mdp_instances);
      return run_check_grad(s, out_dir);
    }
    std::cerr << app.help() << std::flush;
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
