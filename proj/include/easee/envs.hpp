#pragma once

// Deterministic environments behind one simulation interface. All randomness
// happens in reset(seed); step() is a pure function of state and action.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "easee/action_algebra.hpp"

namespace easee {

struct StepResult {
  double reward = 0.0;
  bool done = false;
};

class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::string name() const = 0;
  virtual const ActionSet& actions() const = 0;
  std::size_t action_count() const { return actions().size(); }

  virtual void reset(std::uint64_t seed) = 0;
  // Stepping a finished episode throws ValidationError.
  virtual StepResult step(Action a) = 0;
  virtual bool done() const = 0;
  // Equal byte strings iff equal states.
  virtual std::string encode() const = 0;
  virtual std::unique_ptr<Environment> clone() const = 0;
};

// Grid with the four cardinal moves (right, left, up, down); up is +y.
// Moves into the border are no-ops. No episode end of its own.
class CardinalGrid : public Environment {
 public:
  explicit CardinalGrid(int width = 100, int height = 100);

  std::string name() const override { return "cardinal"; }
  const ActionSet& actions() const override { return actions_; }
  void reset(std::uint64_t seed) override;
  StepResult step(Action a) override;
  bool done() const override { return false; }
  std::string encode() const override;
  std::unique_ptr<Environment> clone() const override { return std::make_unique<CardinalGrid>(*this); }

  int x() const { return x_; }
  int y() const { return y_; }
  void place(int x, int y);

 private:
  ActionSet actions_;
  int width_, height_;
  int x_ = 0, y_ = 0;
};

// Grid with forward / rotate-left / rotate-right. Heading 0..3 is east,
// north, west, south; the agent starts in the middle facing north.
class RotationGrid : public Environment {
 public:
  explicit RotationGrid(int width = 100, int height = 100);

  std::string name() const override { return "rotation"; }
  const ActionSet& actions() const override { return actions_; }
  void reset(std::uint64_t seed) override;
  StepResult step(Action a) override;
  bool done() const override { return false; }
  std::string encode() const override;
  std::unique_ptr<Environment> clone() const override { return std::make_unique<RotationGrid>(*this); }

  int x() const { return x_; }
  int y() const { return y_; }
  int heading() const { return heading_; }
  void place(int x, int y, int heading);

 private:
  ActionSet actions_;
  int width_, height_;
  int x_ = 0, y_ = 0, heading_ = 1;
};

// Two rooms (12 and 4 columns, 17 rows) split by a wall column with a locked
// door in its middle. Reward 1 on stepping onto the goal.
class DoorKey : public Environment {
 public:
  static constexpr int kWidth = 17;
  static constexpr int kHeight = 17;
  static constexpr int kWallX = 12;
  static constexpr int kDoorY = 8;
  static constexpr int kStepCap = 3249;

  DoorKey();

  std::string name() const override { return "doorkey"; }
  const ActionSet& actions() const override { return actions_; }
  void reset(std::uint64_t seed) override;
  StepResult step(Action a) override;
  bool done() const override { return done_; }
  std::string encode() const override;
  std::unique_ptr<Environment> clone() const override { return std::make_unique<DoorKey>(*this); }

  struct Cell {
    int x, y;
    friend bool operator==(const Cell&, const Cell&) = default;
  };
  Cell agent() const { return agent_; }
  int heading() const { return heading_; }
  bool has_key() const { return has_key_; }
  bool door_open() const { return door_open_; }
  Cell key() const { return key_; }
  Cell goal() const { return goal_; }
  int steps() const { return steps_; }
  // Test hook: teleport the agent to a free cell.
  void place_agent(Cell c, int heading);

 private:
  bool passable(Cell c) const;
  Cell ahead() const;

  ActionSet actions_;
  Cell agent_{0, 0}, key_{0, 0}, goal_{0, 0};
  int heading_ = 0;
  bool has_key_ = false, door_open_ = false, done_ = false;
  int steps_ = 0;
};

// One ball drop: the ball falls from the top row one cell per step, the
// 1-wide paddle moves left or right (clamped at the walls). After 30 steps the
// ball reaches the paddle row: +1 if caught, -1 otherwise.
class Catcher : public Environment {
 public:
  static constexpr int kWidth = 60;
  static constexpr int kHeight = 30;
  static constexpr int kStart = 29;

  Catcher();

  std::string name() const override { return "catcher"; }
  const ActionSet& actions() const override { return actions_; }
  void reset(std::uint64_t seed) override;
  StepResult step(Action a) override;
  bool done() const override { return ball_y_ == 0; }
  std::string encode() const override;
  std::unique_ptr<Environment> clone() const override { return std::make_unique<Catcher>(*this); }

  int paddle() const { return paddle_; }
  int ball_x() const { return ball_x_; }
  int ball_y() const { return ball_y_; }
  // Test hook: put the ball in a given column at the top.
  void drop_at(int column);

 private:
  ActionSet actions_;
  int paddle_ = kStart, ball_x_ = 0, ball_y_ = kHeight;
};

std::unique_ptr<Environment> make_env(const std::string& name);
std::vector<std::string> env_names();

// The equivalence priors used in the experiments: cardinal 1..4, rotation
// 1..3, doorkey "default", catcher "default". Cardinal 2..4 read "all actions
// commute" as every pair commuting; "2-listed".."4-listed" keep only the two
// commuting pairs that are written out. Variant "empty" gives no equivalences
// for every environment.
Prior builtin_omega(const std::string& env, const std::string& variant);
std::vector<std::string> builtin_variants(const std::string& env);

}  // namespace easee
