#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <vector>

#include "artiprior/artsim.hpp"
#include "artiprior/nn.hpp"

namespace artiprior::rl {

using geometry::Interaction;
using sim::TaskSpec;

inline constexpr int kStateDim = 33;
inline constexpr int kActionDim = 6;

using StateVec = Eigen::Matrix<double, kStateDim, 1>;
using ActionVec = Eigen::Matrix<double, kActionDim, 1>;

// 33-dim state layout: part-pose change, task, remaining gap, first gripper
// pose (position + 6d rotation), current gripper pose (position + euler),
// finger positions, contact point, joint axis, joint location (closest axis
// point to the contact), contact-to-axis distance, axis-to-contact direction.
StateVec build_state(const sim::EpisodeState& env, const TaskSpec& task);

// Signed reward contributions; total() is their plain sum.
struct RewardTerms {
  double success = 0.0;
  double guidance = 0.0;
  double distance = 0.0;  // <= 0
  double curiosity = 0.0; // <= 0
  double total() const { return success + guidance + distance + curiosity; }
};

RewardTerms compute_reward(double prev_dtheta, double new_dtheta, double theta, double d_gc,
                           bool done_success, std::optional<double> curiosity_score);

struct Transition {
  StateVec state;
  ActionVec action;
  double reward = 0.0;
  StateVec next_state;
  bool done = false;
};

// FIFO ring buffer of transitions.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity = 2048) : capacity_(capacity) {}

  void push(const Transition& t);
  std::size_t size() const { return data_.size(); }
  std::size_t capacity() const { return capacity_; }
  const Transition& at(std::size_t i) const { return data_[i]; }

 private:
  std::size_t capacity_;
  std::size_t next_ = 0;
  std::vector<Transition> data_;
};

// One finished interaction episode. Everything needed to replay it
// deterministically is stored (start pose, reset seed, contact anchor).
struct InteractionRecord {
  sim::Category category = sim::Category::Drawer;
  std::uint64_t object_seed = 0;
  sim::CameraView view;
  std::uint64_t render_seed = 0;
  int cloud_points = 0;
  sim::ContactAnchor anchor;
  Vec3 contact_world = Vec3::Zero();  // contact position at theta0
  TaskSpec task;
  double theta0 = 0.0;
  geometry::Trajectory trajectory;
  geometry::Waypoint init_gripper;
  std::uint64_t reset_seed = 0;
  double achieved = 0.0;
  bool success = false;
  bool grasped = false;
  int epoch_tag = 0;

  std::string object_id() const;
};

struct TD3Config {
  int hidden = 512;
  int batch_size = 512;
  double lr = 1e-4;
  // Unstated by the source hyperparameter table; standard TD3 defaults.
  double gamma = 0.99;
  double tau = 0.005;
  int policy_delay = 2;
  double target_noise = 0.2;
  double target_noise_clip = 0.5;
  double noise_init = 0.1;
  int noise_decay_every = 500;   // epochs
  int episodes_per_epoch = 100;  // one epoch = 100 environment episodes
  Eigen::Matrix<double, kActionDim, 1> action_scale =
      (Eigen::Matrix<double, kActionDim, 1>() << 0.25, 0.25, 0.25, 0.5, 0.5, 0.5).finished();
};

struct LossReport {
  double critic_loss = 0.0;
  double actor_loss = 0.0;
  bool actor_updated = false;
  double mean_q = 0.0;
};

// TD3 with twin critics, delayed deterministic actor updates and target
// policy smoothing. The actor trunk is 4 hidden layers of `hidden` units
// with two output heads (mean and log-std); control uses the tanh-squashed
// mean head, exploration noise comes from the decaying external schedule.
class TD3Agent {
 public:
  TD3Agent(const TD3Config& cfg, std::uint64_t seed);

  ActionVec act(const StateVec& state) const;
  ActionVec act_noisy(const StateVec& state, double sigma, Rng& rng) const;

  LossReport update(const ReplayBuffer& buffer, Rng& rng);

  // noise_init halved every noise_decay_every epochs.
  double exploration_sigma(int episode_index) const;

  const TD3Config& config() const { return cfg_; }
  void save(nn::TensorMap& out) const;
  void load(const nn::TensorMap& in);

 private:
  Mat actor_forward(const Mat& states);               // trains
  Mat actor_infer(const Mat& states) const;           // no caches
  Mat target_actor_infer(const Mat& states) const;

  TD3Config cfg_;
  nn::MLP actor_trunk_;
  nn::Linear actor_mean_;
  nn::Linear actor_logstd_;
  nn::MLP target_actor_trunk_;
  nn::Linear target_actor_mean_;
  nn::MLP critic1_, critic2_;
  nn::MLP target_critic1_, target_critic2_;
  nn::Adam actor_opt_, critic_opt_;
  int update_count_ = 0;

  using Mat = nn::Mat;
};

// Everything sampled for one episode; the cloud is the perception input
// rendered at theta0.
struct EpisodeSetup {
  int object_index = 0;
  sim::CameraView view;
  std::uint64_t render_seed = 0;
  sim::PointCloud cloud;
  int contact_index = 0;  // index into cloud
  sim::ContactAnchor anchor;
  TaskSpec task;
  double theta0 = 0.0;
  std::uint64_t reset_seed = 0;
};

struct StepMeta {
  double prev_dtheta = 0.0;
  double new_dtheta = 0.0;
  double d_gc = 0.0;
};

struct EpisodeResult {
  InteractionRecord record;
  std::vector<Transition> transitions;
  std::vector<StepMeta> steps;
  double curiosity_r = 0.0;
};

using PolicyFn = std::function<ActionVec(const StateVec&)>;
// Success-likelihood of the finished episode trajectory, used as the
// intrinsic curiosity signal (reward term -500 * r).
using CuriosityFn = std::function<double(const InteractionRecord&)>;

EpisodeResult run_episode(const PolicyFn& policy, const sim::ArticulatedObject& obj,
                          const EpisodeSetup& setup, int max_steps = 5,
                          const CuriosityFn& curiosity = nullptr,
                          const sim::EngineConfig& engine_cfg = {});

// Deterministic open-loop replay of a recorded trajectory; returns the
// achieved joint-coordinate change.
double replay_record(const sim::ArticulatedObject& obj, const InteractionRecord& record,
                     const sim::EngineConfig& engine_cfg = {});

// Hindsight relabel: the episode becomes a success for the task it actually
// achieved. Throws when nothing moved.
InteractionRecord her_relabel(const InteractionRecord& record);
// Also rewrites states and rewards of the stored transitions.
EpisodeResult her_relabel_result(const EpisodeResult& result);

struct SampleOptions {
  int cloud_points = 256;
  int render_resolution = 96;
  int max_attempts = 64;
};

// Draws (shape, view, contact, task, start pose) per the training
// distribution: categories uniform, shapes uniform within the category,
// contact uniform over movable-part cloud points, task magnitude uniform in
// [10deg, 70deg] (revolute) or [0.1, 0.7] (prismatic) clipped to the joint
// range, sign opening for pulls and along the pushable direction for pushes.
EpisodeSetup sample_training_task(const std::vector<sim::ArticulatedObject>& fleet,
                                  Interaction interaction, const SampleOptions& opts, Rng& rng);

struct RLTrainConfig {
  TD3Config td3;
  std::size_t buffer_size = 2048;
  int episodes = 4000;
  int warmup_episodes = 110;  // random-action episodes before updates start
  int updates_per_episode = 1;
  bool use_her = true;
  int max_steps = 5;
  int eval_every = 250;
  int eval_episodes = 48;
  double success_target = -1.0;  // stop early once eval success reaches this
  SampleOptions sampling;
};

struct RLTrainReport {
  std::vector<std::pair<int, double>> eval_curve;  // (episode, eval success)
  double final_eval_success = 0.0;
  int episodes_run = 0;
};

RLTrainReport train_rl(TD3Agent& agent, ReplayBuffer& buffer,
                       const std::vector<sim::ArticulatedObject>& fleet, Interaction interaction,
                       const RLTrainConfig& cfg, Rng& rng, std::ostream* log = nullptr,
                       const CuriosityFn& curiosity = nullptr, int epoch_tag = 0);

// Greedy-policy success rate over freshly sampled tasks.
double evaluate_policy(const TD3Agent& agent, const std::vector<sim::ArticulatedObject>& fleet,
                       Interaction interaction, int episodes, const SampleOptions& opts, Rng& rng,
                       int max_steps = 5);

}  // namespace artiprior::rl
