#include "mvcp/engine.hpp"

#include <cmath>
#include <cstdlib>
#include <thread>

namespace mvcp {

namespace {

constexpr std::uint64_t kRebuildInterval = 1u << 16;

void fill_rates(RateIndex& idx, const GraphState& st, double lambda) {
  idx.rebuild([&](std::size_t i) {
    return st.vertex_rate(static_cast<VertexId>(i), lambda);
  });
}

}  // namespace

std::optional<Event> next_event(const GraphState& state, const RateIndex& rates,
                                const MvcpConfig& cfg, double now,
                                SplitMix64& rng) {
  double total = rates.total();
  if (!(total > 0.0)) return std::nullopt;

  double wait = rng.exponential(total);                       // draw 1
  VertexId x = static_cast<VertexId>(rates.sample(rng.uniform01()));  // draw 2

  Event ev;
  ev.time = now + wait;
  std::size_t deg = state.live_degree(x);
  double p_heal = 1.0 / (1.0 + cfg.lambda * static_cast<double>(deg));
  if (rng.uniform01() < p_heal) {                             // draw 3
    ev.kind = Event::Kind::Heal;
    ev.x = x;
    ev.y = 0;
    ev.outcome = TransmissionOutcome::Infected;
    ev.pre_count = 0;
    return ev;
  }

  std::size_t k = static_cast<std::size_t>(rng.uniform01() *  // draw 4
                                           static_cast<double>(deg));
  if (k >= deg) k = deg - 1;
  VertexId y = state.neighbors(x)[k];
  std::int32_t pre = state.count(y);
  double death_draw = rng.uniform01();                        // draw 5
  ev.kind = Event::Kind::Transmit;
  ev.x = x;
  ev.y = y;
  ev.pre_count = pre;
  ev.outcome = (death_draw < cfg.profile.phi(pre + 1))
                   ? TransmissionOutcome::Killed
                   : TransmissionOutcome::Infected;
  return ev;
}

Trajectory run(const GraphState& initial, const MvcpConfig& cfg,
               const StopRule& stop, std::uint64_t seed, const RunOptions& opts) {
  if (stop.on_boundary_hit && !initial.has_boundary_flags())
    throw config_error("stop rule: boundary-hit requires a graph with boundary flags");

  GraphState st = initial;
  RateIndex idx(st.vertex_count());
  fill_rates(idx, st, cfg.lambda);
  SplitMix64 rng(seed);

  Trajectory tr;
  tr.seed = seed;
  tr.thinned = opts.thin;
  tr.experienced.assign(st.vertex_count(), 0);

  double t = 0.0;
  std::uint64_t events = 0;
  std::vector<VertexId> doomed_neighbors;

  auto finish = [&](Summary s) {
    tr.summary = s;
    tr.event_count = events;
    tr.final_counts.resize(st.vertex_count());
    for (VertexId v = 0; v < st.vertex_count(); ++v)
      tr.final_counts[v] = st.alive(v) ? st.count(v) : -1;
    if (opts.final_state) *opts.final_state = st;
  };

  // An initial infection already sitting on the boundary counts as a hit.
  if (stop.on_boundary_hit) {
    for (VertexId v = 0; v < st.vertex_count(); ++v) {
      if (st.is_boundary(v) && st.alive(v) && st.count(v) > 0) {
        finish({Summary::Kind::BoundaryHit, 0.0, 0, v});
        return tr;
      }
    }
  }

  for (;;) {
    double total = idx.total();
    if (!(total > 0.0)) {
      finish({Summary::Kind::Extinction, t, 0, 0});
      return tr;
    }

    double wait = rng.exponential(total);                      // draw 1
    if (stop.time_horizon && t + wait > *stop.time_horizon) {
      finish({Summary::Kind::HorizonReached, *stop.time_horizon,
              st.total_infections(), 0});
      return tr;
    }
    t += wait;

    VertexId x = static_cast<VertexId>(idx.sample(rng.uniform01()));  // draw 2
    std::size_t deg = st.live_degree(x);
    double p_heal = 1.0 / (1.0 + cfg.lambda * static_cast<double>(deg));

    Event ev;
    ev.time = t;
    bool boundary_hit = false;

    if (rng.uniform01() < p_heal) {                            // draw 3
      ev.kind = Event::Kind::Heal;
      ev.x = x;
      ev.y = 0;
      ev.outcome = TransmissionOutcome::Infected;
      ev.pre_count = 0;
      st.apply_heal(x);
      idx.set(x, st.vertex_rate(x, cfg.lambda));
    } else {
      std::size_t k = static_cast<std::size_t>(rng.uniform01() *  // draw 4
                                               static_cast<double>(deg));
      if (k >= deg) k = deg - 1;
      VertexId y = st.neighbors(x)[k];
      std::int32_t pre = st.count(y);
      double death_draw = rng.uniform01();                     // draw 5
      bool killed = death_draw < cfg.profile.phi(pre + 1);
      if (killed) doomed_neighbors = st.neighbors(y);

      TransmissionOutcome outcome = st.apply_transmission(y, death_draw, cfg.profile);
      tr.experienced[y] += 1;

      ev.kind = Event::Kind::Transmit;
      ev.x = x;
      ev.y = y;
      ev.pre_count = pre;
      ev.outcome = outcome;

      if (outcome == TransmissionOutcome::Killed) {
        idx.set(y, 0.0);
        // Degrees of the victim's former neighbors changed.
        for (VertexId nb : doomed_neighbors)
          idx.set(nb, st.vertex_rate(nb, cfg.lambda));
      } else {
        idx.set(y, st.vertex_rate(y, cfg.lambda));
        boundary_hit = stop.on_boundary_hit && st.is_boundary(y);
      }
    }

    if (!opts.thin) tr.events.push_back(ev);
    ++events;

    if (opts.verify_rates) {
      double fresh = st.total_event_rate(cfg);
      if (std::abs(idx.total() - fresh) > 1e-9)
        throw std::logic_error("engine: rate index diverged from state");
    }
    if (events % kRebuildInterval == 0) fill_rates(idx, st, cfg.lambda);

    if (boundary_hit) {
      finish({Summary::Kind::BoundaryHit, t, 0, ev.y});
      return tr;
    }
    if (stop.max_events && events >= *stop.max_events) {
      finish({Summary::Kind::HorizonReached, t, st.total_infections(), 0});
      return tr;
    }
  }
}

std::vector<Trajectory> run_ensemble(const GraphState& initial,
                                     const MvcpConfig& cfg, const StopRule& stop,
                                     const std::vector<std::uint64_t>& seeds,
                                     bool thin, unsigned n_threads) {
  for (std::size_t i = 0; i < seeds.size(); ++i)
    for (std::size_t j = i + 1; j < seeds.size(); ++j)
      if (seeds[i] == seeds[j])
        throw config_error("run_ensemble: seeds must be distinct");

  std::vector<Trajectory> out(seeds.size());
  if (seeds.empty()) return out;

  unsigned hw = std::thread::hardware_concurrency();
  unsigned workers = n_threads > 0 ? n_threads : (hw > 0 ? hw : 1);
  if (workers > seeds.size()) workers = static_cast<unsigned>(seeds.size());

  RunOptions opts;
  opts.thin = thin;

  if (workers <= 1) {
    for (std::size_t i = 0; i < seeds.size(); ++i)
      out[i] = run(initial, cfg, stop, seeds[i], opts);
    return out;
  }

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < seeds.size(); i += workers)
        out[i] = run(initial, cfg, stop, seeds[i], opts);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

GraphState replay(const GraphState& initial, const Trajectory& trajectory) {
  if (trajectory.thinned)
    throw std::domain_error("replay: trajectory carries no event list");
  GraphState st = initial;
  for (const Event& ev : trajectory.events) {
    if (ev.kind == Event::Kind::Heal)
      st.apply_heal(ev.x);
    else
      st.apply_transmission_outcome(ev.y, ev.outcome);
  }
  return st;
}

}  // namespace mvcp
