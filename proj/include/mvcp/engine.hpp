#ifndef MVCP_ENGINE_HPP
#define MVCP_ENGINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mvcp/graph_state.hpp"
#include "mvcp/rate_index.hpp"
#include "mvcp/rng.hpp"

namespace mvcp {

// One realized transition. Transmit events record the target's infection
// count before the event, so a log is replayable without re-drawing.
struct Event {
  enum class Kind : std::uint8_t { Heal, Transmit };
  double time;
  Kind kind;
  VertexId x;  // healed vertex, or transmission source
  VertexId y;  // transmission target (Transmit only)
  TransmissionOutcome outcome;  // Transmit only
  std::int32_t pre_count;       // target count before the event (Transmit only)
};

// First-triggered-rule-wins stop condition. Extinction (total rate zero)
// always stops the run. The boundary-hit rule requires a graph with
// boundary flags (truncated regular trees).
struct StopRule {
  std::optional<double> time_horizon;
  std::optional<std::uint64_t> max_events;
  bool on_boundary_hit = false;

  static StopRule extinction_only() { return {}; }
  static StopRule at_time(double t) { return {t, std::nullopt, false}; }
  static StopRule at_events(std::uint64_t k) { return {std::nullopt, k, false}; }
};

struct Summary {
  enum class Kind : std::uint8_t { Extinction, HorizonReached, BoundaryHit };
  Kind kind = Kind::Extinction;
  double time = 0.0;
  std::int64_t remaining_infections = 0;  // HorizonReached
  VertexId vertex = 0;                    // BoundaryHit
};

struct Trajectory {
  std::uint64_t seed = 0;
  std::string initial_descriptor;
  bool thinned = false;
  std::vector<Event> events;  // empty when thinned
  std::uint64_t event_count = 0;
  Summary summary;
  // Arrivals experienced per vertex: every transmission selecting the vertex
  // as target, including a fatal one.
  std::vector<std::uint32_t> experienced;
  // Final per-vertex infection counts, -1 for dead.
  std::vector<std::int32_t> final_counts;
};

struct RunOptions {
  bool thin = false;           // keep only the summary and counters
  bool verify_rates = false;   // recompute the total rate after every event
  GraphState* final_state = nullptr;  // optional copy-out of the end state
};

// Samples the next event of the chain. Draw order per event, fixed:
//   1. waiting time  2. vertex  3. heal-vs-transmit  4. neighbor index
//   5. death draw (transmissions only).
// Returns nullopt when the total rate is zero (extinction; not an error).
// The event is NOT applied to the state.
std::optional<Event> next_event(const GraphState& state, const RateIndex& rates,
                                const MvcpConfig& cfg, double now,
                                SplitMix64& rng);

// Runs one replica to its stop condition. Deterministic in
// (initial, cfg, stop, seed).
Trajectory run(const GraphState& initial, const MvcpConfig& cfg,
               const StopRule& stop, std::uint64_t seed,
               const RunOptions& opts = {});

// Independent replicas, one per seed (seeds must be distinct); results in
// seed order regardless of thread count. n_threads = 0 picks the hardware
// concurrency.
std::vector<Trajectory> run_ensemble(const GraphState& initial,
                                     const MvcpConfig& cfg, const StopRule& stop,
                                     const std::vector<std::uint64_t>& seeds,
                                     bool thin = true, unsigned n_threads = 0);

// Applies a recorded event list to a copy of the initial state.
GraphState replay(const GraphState& initial, const Trajectory& trajectory);

}  // namespace mvcp

#endif
