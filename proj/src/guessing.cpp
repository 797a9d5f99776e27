#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "srsearch/errors.hpp"
#include "srsearch/strategies.hpp"

namespace srsearch {

GuessSchedule GuessSchedule::doubling() { return GuessSchedule{}; }

GuessSchedule GuessSchedule::explicit_lists(std::vector<int> f, std::vector<int> g) {
  if (f.empty() || f.front() != 1) throw InvalidParam("schedule needs f_0 = 1");
  if (g.empty() || g.front() != 0) throw InvalidParam("schedule needs g_0 = 0");
  for (std::size_t i = 1; i < f.size(); ++i)
    if (f[i] <= f[i - 1]) throw InvalidParam("f must be strictly increasing");
  for (std::size_t i = 1; i < g.size(); ++i)
    if (g[i] <= g[i - 1]) throw InvalidParam("g must be strictly increasing");
  GuessSchedule s;
  s.unbounded_ = false;
  s.f_ = std::move(f);
  s.g_ = std::move(g);
  return s;
}

namespace {
// 2^(2^i) stays finite in a double up to i = 9.
constexpr std::size_t kDoublingTerms = 10;
}  // namespace

std::optional<int> GuessSchedule::f(std::size_t i) const {
  if (unbounded_) return i < kDoublingTerms ? std::optional<int>(1 << i) : std::nullopt;
  if (i < f_.size()) return f_[i];
  return std::nullopt;
}

std::optional<int> GuessSchedule::g(std::size_t i) const {
  if (unbounded_) {
    if (i == 0) return 0;
    return i < kDoublingTerms ? std::optional<int>(1 << i) : std::nullopt;
  }
  if (i < g_.size()) return g_[i];
  return std::nullopt;
}

std::optional<double> GuessSchedule::speed_guess(std::size_t i) const {
  auto e = f(i);
  if (!e) return std::nullopt;
  return 1.0 - std::ldexp(1.0, -*e);
}

std::optional<double> GuessSchedule::distance_guess(std::size_t i) const {
  auto e = g(i);
  if (!e) return std::nullopt;
  return std::ldexp(1.0, *e);
}

GuessPlan::GuessPlan(std::optional<double> known_d, GuessSchedule schedule)
    : known_d_(known_d), schedule_(std::move(schedule)) {
  if (known_d_ && !(*known_d_ > 0.0 && std::isfinite(*known_d_)))
    throw InvalidParam("d must be positive");
}

std::optional<GuessRound> GuessPlan::round(std::size_t i, double start_t, double start_x) const {
  // 1/(1 - v_j) is exactly 2^f_j; computing it from v_j would round to
  // infinity once f_j exceeds the mantissa width.
  struct Guess {
    double inv_gap;
    double d;
  };
  auto guess = [&](std::size_t j) -> std::optional<Guess> {
    auto fj = schedule_.f(j);
    if (!fj) return std::nullopt;
    double d = 0.0;
    if (known_d_) {
      d = *known_d_;
    } else {
      auto dj = schedule_.distance_guess(j);
      if (!dj) return std::nullopt;
      d = *dj;
    }
    return Guess{std::ldexp(1.0, *fj), d};
  };
  const auto gs = guess(2 * i);
  const auto gr = guess(2 * i + 1);
  if (!gs || !gr) return std::nullopt;

  GuessRound r;
  r.index = i;
  r.start_t = start_t;
  r.start_x = start_x;

  // Leftward interception of a guessed target at -(d + v t):
  // start_x - (t - start_t) = -(d + v t).
  const double ts = (start_x + start_t + gs->d) * gs->inv_gap;
  r.sender_turn = {ts, start_x - (ts - start_t)};
  // Rightward: start_x + (t - start_t) = d + v t.
  const double tr = (gr->d + start_t - start_x) * gr->inv_gap;
  r.receiver_turn = {tr, start_x + (tr - start_t)};

  const double tm = 0.5 * (r.receiver_turn.x - r.sender_turn.x + ts + tr);
  if (tm < ts || tm < tr) throw std::logic_error("rendezvous precedes a turning point");
  r.rendezvous = {tm, r.sender_turn.x + (tm - ts)};

  const double tc = (r.rendezvous.x + tm + gr->d) * gr->inv_gap;
  r.confirm_turn = {tc, r.rendezvous.x - (tc - tm)};
  return r;
}

namespace {

class GuessingRobot final : public Controller {
 public:
  GuessingRobot(std::shared_ptr<const GuessPlan> plan, Role role)
      : plan_(std::move(plan)), role_(role) {}

  Reaction react(const Observation& o) override {
    switch (o.cue) {
      case Cue::Start:
        return begin_round(0, o.t, o.x);
      case Cue::Arrived:
        return on_arrival(o);
      case Cue::Sighted:
        phase_ = Phase::Escort;
        if (role_ == Role::Sender) return {Command::escort(), Intel{o.t, o.x}};
        return Reaction::go(Command::escort());
      case Cue::Message:
        phase_ = Phase::Pursue;
        return Reaction::go(Command::travel(o.intel->x < o.x ? -1.0 : 1.0));
      default:
        return Reaction::none();
    }
  }

 private:
  enum class Phase { Out, Back, Confirm, Pursue, Escort, Exhausted };

  Reaction begin_round(std::size_t i, double t, double x) {
    round_ = plan_->round(i, t, x);
    if (!round_) {
      phase_ = Phase::Exhausted;
      return Reaction::go(Command::wait());
    }
    phase_ = Phase::Out;
    const Turn& turn = role_ == Role::Sender ? round_->sender_turn : round_->receiver_turn;
    return Reaction::go(Command::move_to(turn.x));
  }

  Reaction on_arrival(const Observation& o) {
    switch (phase_) {
      case Phase::Out:
        phase_ = Phase::Back;
        return Reaction::go(Command::move_to(round_->rendezvous.x));
      case Phase::Back:
        if (o.partner_here) {
          phase_ = Phase::Confirm;
          return Reaction::go(Command::move_to(round_->confirm_turn.x));
        }
        phase_ = Phase::Pursue;
        return Reaction::go(Command::travel(role_ == Role::Sender ? 1.0 : -1.0));
      case Phase::Confirm:
        return begin_round(round_->index + 1, o.t, o.x);
      default:
        return Reaction::none();
    }
  }

  std::shared_ptr<const GuessPlan> plan_;
  Role role_;
  Phase phase_ = Phase::Out;
  std::optional<GuessRound> round_;
};

class GuessingStrategy final : public Strategy {
 public:
  GuessingStrategy(std::shared_ptr<const GuessPlan> plan, Role role)
      : plan_(std::move(plan)), role_(role) {}
  std::unique_ptr<Controller> start() const override {
    return std::make_unique<GuessingRobot>(plan_, role_);
  }

 private:
  std::shared_ptr<const GuessPlan> plan_;
  Role role_;
};

Team guessing_team(std::string name, std::shared_ptr<const GuessPlan> plan) {
  return Team{std::move(name), std::make_shared<GuessingStrategy>(plan, Role::Sender),
              std::make_shared<GuessingStrategy>(plan, Role::Receiver)};
}

}  // namespace

Team nospeed_away(double d, GuessSchedule schedule) {
  return guessing_team("alg5", std::make_shared<GuessPlan>(d, std::move(schedule)));
}

Team noknowledge_away(GuessSchedule schedule) {
  return guessing_team("alg6", std::make_shared<GuessPlan>(std::nullopt, std::move(schedule)));
}

}  // namespace srsearch
