// Copyright 2026 The cbslab Authors
// SPDX-License-Identifier: Apache-2.0

#include "cbs/engine.hpp"

#include "json.hpp"

#include "cbs/error.hpp"

namespace cbs {

namespace {

void check_inputs(const ProblemInstance& inst, const Schedule& sched) {
  inst.validate();
  require_valid(sched);
  if (sched.n != inst.n) {
    throw ArgumentError("schedule built for n=" + std::to_string(sched.n) +
                        " used with n=" + std::to_string(inst.n));
  }
}

}  // namespace

RunTrace run_cbs(const ProblemInstance& inst, const Schedule& sched, NoiseSource& noise) {
  check_inputs(inst, sched);
  const unsigned s0 = step_count(inst.n);
  const std::uint64_t draws_before = noise.draws();

  RunTrace trace{inst, sched, {}, 0, false, 0};
  trace.steps.reserve(s0);
  DyadicInterval support{0, inst.n};
  for (unsigned s = 1; s <= s0; ++s) {
    StepRecord rec;
    rec.s = s;
    rec.interval = support;
    rec.statistic = measure_step(inst, support, s, sched.count_at(s), noise);
    rec.chose_left = rec.statistic > 0.0;
    support = rec.chose_left ? support.left() : support.right();
    rec.spike_still_inside = support.contains(inst.spike_index);
    trace.steps.push_back(rec);
  }
  trace.estimated_index = support.start;
  trace.success = trace.estimated_index == inst.spike_index;
  trace.draws = noise.draws() - draws_before;
  return trace;
}

RunTrace run_cbs_noiseless(const ProblemInstance& inst, const Schedule& sched) {
  if (!(inst.mu > 0.0)) {
    throw ArgumentError("noiseless runs need mu > 0");
  }
  auto noise = NoiseSource::zero();
  return run_cbs(inst, sched, noise);
}

std::uint64_t locate(const ProblemInstance& inst, const Schedule& sched, NoiseSource& noise) {
  check_inputs(inst, sched);
  const unsigned s0 = step_count(inst.n);
  DyadicInterval support{0, inst.n};
  for (unsigned s = 1; s <= s0; ++s) {
    const double t = measure_step(inst, support, s, sched.count_at(s), noise);
    support = t > 0.0 ? support.left() : support.right();
  }
  return support.start;
}

std::string trace_to_json(const RunTrace& trace, int indent) {
  using nlohmann::json;
  json steps = json::array();
  for (const auto& r : trace.steps) {
    steps.push_back({{"s", r.s},
                     {"interval_start", r.interval.start},
                     {"interval_length", r.interval.length},
                     {"m_s", trace.schedule.count_at(r.s)},
                     {"statistic", r.statistic},
                     {"chose_left", r.chose_left},
                     {"spike_still_inside", r.spike_still_inside}});
  }
  json j = {{"instance",
             {{"n", trace.instance.n},
              {"spike_index", trace.instance.spike_index},
              {"mu", trace.instance.mu}}},
            {"indexing", "0-based"},
            {"schedule", {{"kind", std::string(to_string(trace.schedule.kind))},
                          {"budget", trace.schedule.budget},
                          {"counts", trace.schedule.counts}}},
            {"steps", std::move(steps)},
            {"estimated_index", trace.estimated_index},
            {"success", trace.success},
            {"draws", trace.draws}};
  return j.dump(indent);
}

}  // namespace cbs
