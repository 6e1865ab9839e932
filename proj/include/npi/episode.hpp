#pragma once

#include <vector>

#include "npi/schema.hpp"

namespace npi {

enum class Outcome { Solved, BudgetExhausted, TerminatedWrong };

struct StepResult {
  double reward = 0.0;
  bool terminal = false;  // a terminal instruction ended the episode
  bool wrong = false;     // the terminal answer was incorrect
};

template <class Obs>
struct EpisodeTrace {
  std::vector<Instruction> actions;
  std::vector<double> rewards;
  std::vector<Obs> observations;  // filled only when requested
  Outcome outcome = Outcome::BudgetExhausted;
  int total_steps = 0;
  double total_reward = 0.0;
};

// Lightweight episode summary for evaluation loops.
struct EpisodeStats {
  Outcome outcome = Outcome::BudgetExhausted;
  int total_steps = 0;
  double total_reward = 0.0;
  long data_swaps = 0;  // SwapWithNext/Swap instructions issued (sorting audit)
};

// Runs one episode: observe, act, apply, until the environment reports
// solved, a terminal instruction fires, the env aborts (e.g. call-stack
// overflow), or max_steps instructions have been issued.
//
// Env contract: using Obs; bool solved(); bool aborted(); Obs observe();
// StepResult apply(const Instruction&); const InstructionSchema& schema().
// Agent contract: Instruction operator()(const Obs&).
template <class Env, class Agent>
EpisodeTrace<typename Env::Obs> run_episode(Env& env, Agent&& agent, int max_steps,
                                            bool record_observations = false) {
  EpisodeTrace<typename Env::Obs> trace;
  if (env.solved()) {
    trace.outcome = Outcome::Solved;
    return trace;
  }
  while (trace.total_steps < max_steps) {
    auto obs = env.observe();
    Instruction a = agent(obs);
    env.schema().validate(a);
    if (record_observations) trace.observations.push_back(obs);
    StepResult res = env.apply(a);
    trace.actions.push_back(std::move(a));
    trace.rewards.push_back(res.reward);
    trace.total_reward += res.reward;
    ++trace.total_steps;
    if (res.terminal) {
      trace.outcome = res.wrong ? Outcome::TerminatedWrong : Outcome::Solved;
      return trace;
    }
    if (env.solved()) {
      trace.outcome = Outcome::Solved;
      return trace;
    }
    if (env.aborted()) {
      trace.outcome = Outcome::BudgetExhausted;
      return trace;
    }
  }
  trace.outcome = Outcome::BudgetExhausted;
  return trace;
}

// Same loop without storing the per-step records.
template <class Env, class Agent>
EpisodeStats run_episode_stats(Env& env, Agent&& agent, int max_steps) {
  EpisodeStats stats;
  if (env.solved()) {
    stats.outcome = Outcome::Solved;
    return stats;
  }
  while (stats.total_steps < max_steps) {
    Instruction a = agent(env.observe());
    const Op op = env.schema().type(a.type).op;
    if (op == Op::SwapWithNext || op == Op::Swap) ++stats.data_swaps;
    StepResult res = env.apply(a);
    stats.total_reward += res.reward;
    ++stats.total_steps;
    if (res.terminal) {
      stats.outcome = res.wrong ? Outcome::TerminatedWrong : Outcome::Solved;
      return stats;
    }
    if (env.solved()) {
      stats.outcome = Outcome::Solved;
      return stats;
    }
    if (env.aborted()) return stats;
  }
  return stats;
}

}  // namespace npi
