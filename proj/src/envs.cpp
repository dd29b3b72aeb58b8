#include "easee/envs.hpp"

#include <algorithm>
#include <random>

#include "easee/error.hpp"

namespace easee {

namespace {

constexpr int kDx[4] = {1, 0, -1, 0};
constexpr int kDy[4] = {0, 1, 0, -1};

void check_action(const Environment& env, Action a) {
  if (a >= env.action_count())
    throw ValidationError("action " + std::to_string(a) + " out of range for " + env.name());
}

std::string pack(std::initializer_list<int> values) {
  std::string out;
  for (int v : values) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
  }
  return out;
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

CardinalGrid::CardinalGrid(int width, int height)
    : actions_({"right", "left", "up", "down"}), width_(width), height_(height) {
  if (width < 1 || height < 1) throw ValidationError("grid dimensions must be positive");
  reset(0);
}

void CardinalGrid::reset(std::uint64_t) {
  x_ = width_ / 2;
  y_ = height_ / 2;
}

StepResult CardinalGrid::step(Action a) {
  check_action(*this, a);
  static constexpr int dir[4] = {0, 2, 1, 3};  // right left up down -> heading
  x_ = std::clamp(x_ + kDx[dir[a]], 0, width_ - 1);
  y_ = std::clamp(y_ + kDy[dir[a]], 0, height_ - 1);
  return {};
}

std::string CardinalGrid::encode() const { return pack({x_, y_}); }

void CardinalGrid::place(int x, int y) {
  if (x < 0 || x >= width_ || y < 0 || y >= height_) throw ValidationError("cell outside the grid");
  x_ = x;
  y_ = y;
}

RotationGrid::RotationGrid(int width, int height)
    : actions_({"forward", "left", "right"}), width_(width), height_(height) {
  if (width < 1 || height < 1) throw ValidationError("grid dimensions must be positive");
  reset(0);
}

void RotationGrid::reset(std::uint64_t) {
  x_ = width_ / 2;
  y_ = height_ / 2;
  heading_ = 1;
}

StepResult RotationGrid::step(Action a) {
  check_action(*this, a);
  switch (a) {
    case 0:
      x_ = std::clamp(x_ + kDx[heading_], 0, width_ - 1);
      y_ = std::clamp(y_ + kDy[heading_], 0, height_ - 1);
      break;
    case 1: heading_ = (heading_ + 1) % 4; break;
    default: heading_ = (heading_ + 3) % 4; break;
  }
  return {};
}

std::string RotationGrid::encode() const { return pack({x_, y_, heading_}); }

void RotationGrid::place(int x, int y, int heading) {
  if (x < 0 || x >= width_ || y < 0 || y >= height_ || heading < 0 || heading > 3)
    throw ValidationError("pose outside the grid");
  x_ = x;
  y_ = y;
  heading_ = heading;
}

DoorKey::DoorKey() : actions_({"forward", "left", "right", "pickup", "open"}) { reset(0); }

void DoorKey::reset(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  agent_ = {uniform_int(rng, 0, kWallX - 1), uniform_int(rng, 0, kHeight - 1)};
  do {
    key_ = {uniform_int(rng, 0, kWallX - 1), uniform_int(rng, 0, kHeight - 1)};
  } while (key_ == agent_);
  goal_ = {uniform_int(rng, kWallX + 1, kWidth - 1), uniform_int(rng, 0, kHeight - 1)};
  heading_ = uniform_int(rng, 0, 3);
  has_key_ = door_open_ = done_ = false;
  steps_ = 0;
}

DoorKey::Cell DoorKey::ahead() const { return {agent_.x + kDx[heading_], agent_.y + kDy[heading_]}; }

bool DoorKey::passable(Cell c) const {
  if (c.x < 0 || c.x >= kWidth || c.y < 0 || c.y >= kHeight) return false;
  if (c.x == kWallX) return c.y == kDoorY && door_open_;
  return has_key_ || !(c == key_);
}

StepResult DoorKey::step(Action a) {
  check_action(*this, a);
  if (done_) throw ValidationError("doorkey episode is over; reset first");
  StepResult r;
  const Cell front = ahead();
  switch (a) {
    case 0:
      if (passable(front)) agent_ = front;
      break;
    case 1: heading_ = (heading_ + 1) % 4; break;
    case 2: heading_ = (heading_ + 3) % 4; break;
    case 3:
      if (!has_key_ && front == key_) has_key_ = true;
      break;
    default:
      if (has_key_ && front == Cell{kWallX, kDoorY}) door_open_ = true;
      break;
  }
  ++steps_;
  if (agent_ == goal_) {
    r.reward = 1.0;
    done_ = true;
  } else if (steps_ >= kStepCap) {
    done_ = true;
  }
  r.done = done_;
  return r;
}

void DoorKey::place_agent(Cell c, int heading) {
  if (!passable(c) || heading < 0 || heading > 3) throw ValidationError("agent cannot stand there");
  agent_ = c;
  heading_ = heading;
}

// The step counter is left out: it only matters for the time limit, and
// tabular learners need positions to repeat across time.
std::string DoorKey::encode() const {
  const Cell key = has_key_ ? Cell{-1, -1} : key_;
  return pack({agent_.x, agent_.y, heading_, has_key_, door_open_, key.x, key.y, goal_.x, goal_.y});
}

Catcher::Catcher() : actions_({"left", "right"}) { reset(0); }

void Catcher::reset(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  drop_at(uniform_int(rng, 0, kWidth - 1));
}

void Catcher::drop_at(int column) {
  if (column < 0 || column >= kWidth) throw ValidationError("ball column outside the field");
  paddle_ = kStart;
  ball_x_ = column;
  ball_y_ = kHeight;
}

StepResult Catcher::step(Action a) {
  check_action(*this, a);
  if (done()) throw ValidationError("catcher episode is over; reset first");
  paddle_ = std::clamp(paddle_ + (a == 0 ? -1 : 1), 0, kWidth - 1);
  --ball_y_;
  StepResult r;
  if (ball_y_ == 0) {
    r.reward = paddle_ == ball_x_ ? 1.0 : -1.0;
    r.done = true;
  }
  return r;
}

std::string Catcher::encode() const { return pack({paddle_, ball_x_, ball_y_}); }

std::unique_ptr<Environment> make_env(const std::string& name) {
  if (name == "cardinal") return std::make_unique<CardinalGrid>();
  if (name == "rotation") return std::make_unique<RotationGrid>();
  if (name == "doorkey") return std::make_unique<DoorKey>();
  if (name == "catcher") return std::make_unique<Catcher>();
  throw UnknownEnv("unknown environment '" + name + "'");
}

std::vector<std::string> env_names() { return {"cardinal", "rotation", "doorkey", "catcher"}; }

namespace {

#define EASEE_CARDINAL_COMMUTE                                                                              \
  "actions: right left up down\nequiv: right left ~ left right\nequiv: up down ~ down up\n"              \
  "equiv: right up ~ up right\nequiv: right down ~ down right\nequiv: left up ~ up left\n"               \
  "equiv: left down ~ down left\n"

struct Builtin {
  const char* env;
  const char* variant;
  const char* dsl;
};

constexpr Builtin kBuiltins[] = {
    {"cardinal", "1", "actions: right left up down\nequiv: right left ~ left right\n"},
    // "All actions commute": every pair of distinct moves.
    {"cardinal", "2", EASEE_CARDINAL_COMMUTE},
    {"cardinal", "3", EASEE_CARDINAL_COMMUTE "equiv: right left ~ -\n"},
    {"cardinal", "4", EASEE_CARDINAL_COMMUTE "equiv: right left ~ -\nequiv: up down ~ -\n"},
    // Only the commuting pairs written out in the bullet lists.
    {"cardinal", "2-listed",
     "actions: right left up down\nequiv: right left ~ left right\nequiv: up down ~ down up\n"},
    {"cardinal", "3-listed",
     "actions: right left up down\nequiv: right left ~ left right\nequiv: up down ~ down up\n"
     "equiv: right left ~ -\n"},
    {"cardinal", "4-listed",
     "actions: right left up down\nequiv: right left ~ left right\nequiv: up down ~ down up\n"
     "equiv: right left ~ -\nequiv: up down ~ -\n"},
    {"rotation", "1", "actions: forward left right\nequiv: right left ~ -\n"},
    {"rotation", "2", "actions: forward left right\nequiv: right left ~ -\nequiv: left right ~ -\n"},
    {"rotation", "3",
     "actions: forward left right\nequiv: right left ~ -\nequiv: left right ~ -\n"
     "equiv: right right ~ left left\n"},
    {"doorkey", "default",
     "actions: forward left right pickup open\nequiv: right left ~ -\nequiv: left right ~ -\n"
     "equiv: left left ~ right right\nequiv: open ~ open open\nequiv: pickup ~ pickup pickup\n"},
    {"catcher", "default", "actions: left right\nequiv: left right ~ right left\n"},
};

#undef EASEE_CARDINAL_COMMUTE

}  // namespace

Prior builtin_omega(const std::string& env, const std::string& variant) {
  if (variant == "empty") return Prior{make_env(env)->actions(), EquivalenceSet{}};
  bool known_env = false;
  for (const auto& b : kBuiltins) {
    if (env != b.env) continue;
    known_env = true;
    if (variant == b.variant) return parse_prior(b.dsl);
  }
  if (!known_env) throw UnknownEnv("unknown environment '" + env + "'");
  throw UnknownVariant("no built-in prior '" + variant + "' for " + env);
}

std::vector<std::string> builtin_variants(const std::string& env) {
  std::vector<std::string> out;
  for (const auto& b : kBuiltins)
    if (env == b.env) out.push_back(b.variant);
  if (out.empty()) throw UnknownEnv("unknown environment '" + env + "'");
  out.push_back("empty");
  return out;
}

}  // namespace easee
