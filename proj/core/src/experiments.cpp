// Copyright 2026 The rwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include "rwrs/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rwrs/error.hpp"
#include "rwrs/parallel.hpp"
#include "rwrs/rwrs.hpp"
#include "rwrs/stats.hpp"
#include "rwrs/walk.hpp"

namespace rwrs {

namespace {

constexpr std::uint64_t kSweepFamily = 0x4653;

template <class... Ts>
void row(std::string& csv, const Ts&... fields) {
  bool first = true;
  auto put = [&](const auto& v) {
    if (!first) csv += ',';
    first = false;
    using V = std::decay_t<decltype(v)>;
    if constexpr (std::is_floating_point_v<V>) csv += format_double(v);
    else if constexpr (std::is_arithmetic_v<V>) csv += std::to_string(v);
    else csv += v;
  };
  (put(fields), ...);
  csv += '\n';
}

// |a - b| in units of the combined standard error.
double z_score(double a, double b, double se) {
  const double d = std::abs(a - b);
  if (se > 0.0) return d / se;
  return d == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace

std::vector<std::vector<double>> gamma_samples(const LimitConfig& config, std::uint64_t first,
                                               std::size_t count, std::span<const std::size_t> at,
                                               unsigned workers) {
  struct State {
    GammaSampler sampler;
    std::vector<double> path;
  };
  return parallel_map(
      count, workers, [&] { return State{GammaSampler(config), std::vector<double>(config.steps() + 1)}; },
      [&](State& st, std::size_t i) {
        st.sampler.gamma_path(first + i, st.path);
        std::vector<double> out;
        for (auto k : at) out.push_back(st.path.at(k));
        return out;
      });
}

// ---------------------------------------------------------------------------

CommandResult run_walk_scaling(const ExperimentConfig& config) {
  const SchemaConfig schema = config.schema();
  const WalkIncrementLaw law = schema.walk_law();
  std::vector<std::int64_t> checkpoints;
  for (auto k = config.n_min_log2; k <= config.n_max_log2; ++k) checkpoints.push_back(std::int64_t{1} << k);
  const std::int64_t n_max = checkpoints.back();

  const auto scans = parallel_map(
      static_cast<std::size_t>(config.replicas), config.workers,
      [] { return std::vector<std::int64_t>{}; },
      [&](std::vector<std::int64_t>& pos, std::size_t r) {
        CounterRng rng(StreamKey(config.seed).child(r).child(kWalkStream));
        generate_positions(n_max, law, rng, pos);
        return scan_functionals(pos, checkpoints);
      });

  CommandResult res;
  res.command = config.command;
  for (std::size_t r = 0; r < scans.size(); ++r)
    for (const auto& f : scans[r])
      row(res.raw_csv, r, f.time, f.self_intersections, f.range, f.max_abs, f.max_local_time);
  res.raw_csv.insert(0, "replica,n,V,R,M,max_N\n");

  std::vector<std::pair<double, double>> ev;
  std::vector<std::pair<double, double>> er;
  std::vector<std::pair<double, double>> em;
  std::vector<std::pair<double, double>> en;
  for (std::size_t j = 0; j < checkpoints.size(); ++j) {
    KahanSum v;
    KahanSum r;
    KahanSum m;
    KahanSum x;
    for (const auto& s : scans) {
      v.add(static_cast<double>(s[j].self_intersections));
      r.add(static_cast<double>(s[j].range));
      m.add(static_cast<double>(s[j].max_abs));
      x.add(static_cast<double>(s[j].max_local_time));
    }
    const double n = static_cast<double>(checkpoints[j]);
    const double count = static_cast<double>(scans.size());
    ev.emplace_back(n, v.value() / count);
    er.emplace_back(n, r.value() / count);
    em.emplace_back(n, m.value() / count);
    en.emplace_back(n, x.value() / count);
  }
  const double a = schema.alpha;
  const Estimate sv = loglog_slope(ev);
  const Estimate sr = loglog_slope(er);
  const Estimate sm = loglog_slope(em);
  const Estimate sn = loglog_slope(en);
  const double tol = config.tolerance;
  res.checks.push_back(make_check("slope_V", sv.value, sv.std_error, 2.0 - 1.0 / a - tol, 2.0 - 1.0 / a + tol));
  res.checks.push_back(make_check("slope_R", sr.value, sr.std_error, 1.0 / a - tol, 1.0 / a + tol));
  res.estimates = {{"slope_M", sm.value},         {"slope_M_std_error", sm.std_error},
                   {"slope_max_N", sn.value},     {"slope_max_N_std_error", sn.std_error},
                   {"target_slope_V", 2.0 - 1.0 / a}, {"target_slope_R", 1.0 / a}};
  Plot p{"slopes.svg", "Walk functionals", "n", "mean", true, true, {}};
  p.series.push_back({"E V_n", ev, true});
  p.series.push_back({"E R_n", er, true});
  p.series.push_back({"E M_n", em, true});
  res.plots.push_back(std::move(p));
  return res;
}

// ---------------------------------------------------------------------------

CommandResult run_schema_cf(const ExperimentConfig& config) {
  const SchemaConfig schema = config.schema();
  const double t = schema.times.front();
  const auto g = parallel_map(
      static_cast<std::size_t>(config.replicas), config.workers,
      [&] { return SchemaEvaluator(schema); },
      [](SchemaEvaluator& ev, std::size_t r) { return ev.sample(r).front(); });

  CommandResult res;
  res.command = config.command;
  res.raw_csv = "replica,t,G\n";
  for (std::size_t r = 0; r < g.size(); ++r) row(res.raw_csv, r, t, g[r]);

  LimitConfig limit = config.limit();
  limit.horizon = t;
  const SampleSet samples{g, "G_n(t)"};
  Series emp_re{"empirical Re", {}, true};
  Series orc_re{"oracle Re", {}, false};
  for (double th : config.theta) {
    const double theta[] = {th};
    const double times[] = {t};
    const CfOracle oracle = gamma_cf(limit, theta, times, config.mc_reps, config.workers);
    const CfEstimate emp = empirical_cf(samples, th);
    const double se_re = std::hypot(emp.std_error_re, oracle.std_error_re);
    const double se_im = std::hypot(emp.std_error_im, oracle.std_error_im);
    const double z = std::max(z_score(emp.value.real(), oracle.value.real(), se_re),
                              z_score(emp.value.imag(), oracle.value.imag(), se_im));
    const std::string tag = "theta=" + format_double(th);
    res.checks.push_back(make_check("cf_z " + tag, z, 0.0, 0.0, 3.0));
    res.estimates.push_back({"empirical_re " + tag, emp.value.real()});
    res.estimates.push_back({"empirical_im " + tag, emp.value.imag()});
    res.estimates.push_back({"oracle_re " + tag, oracle.value.real()});
    res.estimates.push_back({"oracle_im " + tag, oracle.value.imag()});
    res.estimates.push_back({"combined_se_re " + tag, se_re});
    res.estimates.push_back({"combined_se_im " + tag, se_im});
    emp_re.points.emplace_back(th, emp.value.real());
    orc_re.points.emplace_back(th, oracle.value.real());
  }
  res.estimates.push_back({"delta", schema.delta()});
  res.estimates.push_back({"copies", static_cast<double>(schema.copy_count())});
  res.plots.push_back({"cf.svg", "CF of G_n(t) vs limit", "theta", "Re CF", false, false,
                       {emp_re, orc_re}});
  return res;
}

// ---------------------------------------------------------------------------

CommandResult run_limit_selfsim(const ExperimentConfig& config) {
  const LimitConfig limit = config.limit();
  const std::size_t steps = limit.steps();
  const std::size_t at[] = {steps / 4, steps / 2, 3 * steps / 4, steps};
  const double T = limit.horizon;
  const double times[] = {T / 4, T / 2, 3 * T / 4, T};
  const auto reps = static_cast<std::size_t>(config.replicas);
  const auto rows = gamma_samples(limit, 0, 2 * reps, at, config.workers);

  CommandResult res;
  res.command = config.command;
  res.raw_csv = "replica,t,Gamma\n";
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t j = 0; j < 4; ++j) row(res.raw_csv, r, times[j], rows[r][j]);

  // Set A: replicas [0, R); set B: [R, 2R).
  const double scale = std::pow(2.0, -limit.delta());
  SampleSet selfsim{{}, "2^-delta Gamma(T)"};
  SampleSet incr{{}, "Gamma(3T/4) - Gamma(T/4)"};
  SampleSet half{{}, "Gamma(T/2)"};
  for (std::size_t r = 0; r < reps; ++r) {
    selfsim.values.push_back(scale * rows[r][3]);
    incr.values.push_back(rows[r][2] - rows[r][0]);
    half.values.push_back(rows[reps + r][1]);
  }
  const double crit = ks_critical_value(reps, reps, 0.01);
  const KsResult ks_ss = ks_distance(selfsim, half);
  const KsResult ks_si = ks_distance(incr, half);
  res.checks.push_back(make_check("ks_self_similarity", ks_ss.distance, 0.0, 0.0, 2.0 * crit));
  res.checks.push_back(make_check("ks_stationary_increments", ks_si.distance, 0.0, 0.0, 2.0 * crit));
  res.estimates = {{"p_value_self_similarity", ks_ss.p_value},
                   {"p_value_stationary_increments", ks_si.p_value},
                   {"ks_critical_1pct", crit},
                   {"delta", limit.delta()},
                   {"time_step", limit.horizon / static_cast<double>(steps)},
                   {"bin_width", limit.effective_bin_width()},
                   {"skewness_half", sample_skewness(half.values)},
                   {"excess_kurtosis_half", excess_kurtosis(half.values)}};

  // Quantile-quantile view of the self-similarity comparison.
  auto qq = [](std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<std::pair<double, double>> pts;
    for (int i = 1; i < 100; ++i) {
      const auto k = static_cast<std::size_t>(i * static_cast<double>(a.size()) / 100.0);
      pts.emplace_back(b[k], a[k]);
    }
    return pts;
  };
  res.plots.push_back({"qq.svg", "Quantiles against Gamma(T/2)", "Gamma(T/2)", "quantile", false, false,
                       {{"2^-delta Gamma(T)", qq(selfsim.values, half.values), true},
                        {"increment", qq(incr.values, half.values), true},
                        {"identity", qq(half.values, half.values), false}}});
  return res;
}

// ---------------------------------------------------------------------------

CommandResult run_tail_check(const ExperimentConfig& config) {
  const LimitConfig limit = config.limit();
  const auto reps = static_cast<std::size_t>(config.replicas);
  struct Row {
    double sup = 0.0;
    double sup_abs = 0.0;
    double lt = 0.0;
  };
  struct State {
    GammaSampler sampler;
    std::vector<double> path;
  };
  const auto rows = parallel_map(
      reps, config.workers,
      [&] { return State{GammaSampler(limit), std::vector<double>(limit.steps() + 1)}; },
      [&](State& st, std::size_t r) {
        Row out;
        st.sampler.gamma_path(r, st.path);
        for (double v : st.path) {
          out.sup = std::max(out.sup, v);
          out.sup_abs = std::max(out.sup_abs, std::abs(v));
        }
        out.lt = st.sampler.local_time_power_integral(r, limit.horizon, limit.beta());
        return out;
      });

  CommandResult res;
  res.command = config.command;
  res.raw_csv = "replica,sup,sup_abs,int_L_beta\n";
  SampleSet one{{}, "sup Gamma"};
  SampleSet two{{}, "sup |Gamma|"};
  SampleSet lt{{}, "int L_T^beta"};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    row(res.raw_csv, r, rows[r].sup, rows[r].sup_abs, rows[r].lt);
    one.values.push_back(rows[r].sup);
    two.values.push_back(rows[r].sup_abs);
    lt.values.push_back(rows[r].lt);
  }
  const double beta = limit.beta();
  const double nu = limit.scenery.skewness;
  const TailReport rep =
      sup_tail_check(one, two, lt, beta, limit.scenery.scale, nu, config.u_grid);

  res.checks.push_back(make_check("hill_tail_index", rep.hill_default, 0.0, beta - 0.15, beta + 0.15));
  const TailPoint& pt = rep.points.at(rep.resolvable);
  const bool resolvable = pt.exceed_two_sided >= 100;
  const double expected_ratio = 0.5 * (1.0 + nu);
  const double ratio = pt.scaled_one_sided.value / pt.scaled_two_sided.value;
  res.checks.push_back(make_check("one_to_two_sided_ratio", resolvable ? ratio : NAN, 0.0,
                                  expected_ratio - 0.1, expected_ratio + 0.1));
  const double plateau = pt.scaled_two_sided.value / rep.constant_two_sided.value;
  res.checks.push_back(make_check("plateau_over_constant", resolvable ? plateau : NAN,
                                  pt.scaled_two_sided.std_error / rep.constant_two_sided.value, 0.5, 2.0));
  res.estimates = {{"u_resolvable", pt.u},
                   {"exceedances_two_sided", static_cast<double>(pt.exceed_two_sided)},
                   {"scaled_two_sided", pt.scaled_two_sided.value},
                   {"scaled_one_sided", pt.scaled_one_sided.value},
                   {"constant_two_sided", rep.constant_two_sided.value},
                   {"constant_two_sided_std_error", rep.constant_two_sided.std_error},
                   {"constant_one_sided", rep.constant_one_sided.value},
                   {"constant_ratio", rep.constant_one_sided.value / rep.constant_two_sided.value},
                   {"lt_integral", rep.lt_integral.value},
                   {"c_beta", c_beta(beta)},
                   {"hill_k", static_cast<double>(default_hill_k(two.size()))}};
  for (const auto& [k, h] : rep.hill_sweep) res.estimates.push_back({"hill_k=" + std::to_string(k), h});

  Plot p{"tail.svg", "u^beta P(sup |Gamma| >= u)", "u", "scaled tail", true, false, {}};
  Series scaled{"two-sided", {}, true};
  Series constant{"constant", {}, false};
  for (const auto& q : rep.points) {
    scaled.points.emplace_back(q.u, q.scaled_two_sided.value);
    constant.points.emplace_back(q.u, rep.constant_two_sided.value);
  }
  p.series = {scaled, constant};
  res.plots.push_back(std::move(p));
  return res;
}

// ---------------------------------------------------------------------------

CommandResult run_holder_check(const ExperimentConfig& config) {
  const LimitConfig limit = config.limit();
  const std::size_t steps = limit.steps();
  const double step = limit.horizon / static_cast<double>(steps);
  const double eps = holder_epsilon(limit.beta());
  const std::int64_t grids[] = {config.holder_coarse_log2, config.holder_fine_log2};

  struct State {
    GammaSampler sampler;
    std::vector<double> path;
  };
  const auto moduli = parallel_map(
      static_cast<std::size_t>(config.replicas), config.workers,
      [&] { return State{GammaSampler(limit), std::vector<double>(steps + 1)}; },
      [&](State& st, std::size_t r) {
        st.sampler.gamma_path(r, st.path);
        std::vector<double> out;
        for (auto g : grids) {
          const auto stride = static_cast<std::size_t>(
              std::llround(std::ldexp(1.0, -static_cast<int>(g)) / step));
          std::vector<double> t;
          std::vector<double> v;
          for (std::size_t k = 0; k <= steps; k += stride) {
            t.push_back(static_cast<double>(k) * step);
            v.push_back(st.path[k]);
          }
          out.push_back(holder_modulus(t, v, limit.alpha(), eps));
        }
        return out;
      });

  CommandResult res;
  res.command = config.command;
  res.raw_csv = "replica,grid_log2,modulus\n";
  std::vector<double> coarse;
  std::vector<double> fine;
  for (std::size_t r = 0; r < moduli.size(); ++r) {
    row(res.raw_csv, r, grids[0], moduli[r][0]);
    row(res.raw_csv, r, grids[1], moduli[r][1]);
    coarse.push_back(moduli[r][0]);
    fine.push_back(moduli[r][1]);
  }
  const double mc = median(coarse);
  const double mf = median(fine);
  res.checks.push_back(make_check("median_ratio_fine_over_coarse", mf / mc, 0.0, 0.75, 1.25));
  res.estimates = {{"median_coarse", mc},
                   {"median_fine", mf},
                   {"epsilon", eps},
                   {"time_step", step}};
  res.plots.push_back({"holder.svg", "Median Holder modulus", "grid spacing", "median", true, false,
                       {{"median", {{std::ldexp(1.0, -static_cast<int>(grids[0])), mc},
                                    {std::ldexp(1.0, -static_cast<int>(grids[1])), mf}}, false}}});
  return res;
}

// ---------------------------------------------------------------------------

CommandResult run_feasible_sweep(const ExperimentConfig& config) {
  struct Pair {
    double alpha;
    double beta;
  };
  // Boundary and table cases first, then uniform draws on (1,2] x (0,2].
  const std::vector<Pair> fixed = {{2.0, 2.0}, {2.0, 1.0}, {1.5, 1.0}, {2.0, 0.5},
                                   {1.2, 0.5}, {1.5, 0.8}, {2.0, 1.5}, {1.5, 1.5}};
  const auto count = static_cast<std::size_t>(config.replicas);
  struct Outcome {
    Pair p;
    double h = 0.0;
    std::string branch;
    bool ok = false;
  };
  const auto outcomes = parallel_map(count + fixed.size(), config.workers, [&](std::size_t i) {
    Outcome o;
    if (i < fixed.size()) {
      o.p = fixed[i];
    } else {
      CounterRng rng(StreamKey(config.seed).child({kSweepFamily, i}));
      o.p = {2.0 - rng.uniform(), 2.0 * (1.0 - rng.uniform())};  // (1,2) x (0,2)
    }
    o.h = delta_exponent(o.p.alpha, o.p.beta);
    try {
      o.branch = feasible_pair(o.p.alpha, o.p.beta).label();
      o.ok = true;
    } catch (const std::logic_error&) {
      o.branch = "violation";
    }
    return o;
  });

  CommandResult res;
  res.command = config.command;
  res.raw_csv = "index,alpha,beta,H,branch,ok\n";
  std::size_t violations = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    row(res.raw_csv, i, o.p.alpha, o.p.beta, o.h, o.branch, o.ok ? 1 : 0);
    violations += !o.ok;
  }
  res.checks.push_back(make_check("violations", static_cast<double>(violations), 0.0, 0.0, 0.0));
  res.estimates = {{"pairs", static_cast<double>(outcomes.size())}};
  Series pts{"(beta, H)", {}, true};
  for (std::size_t i = 0; i < std::min<std::size_t>(outcomes.size(), 2000); ++i)
    pts.points.emplace_back(outcomes[i].p.beta, outcomes[i].h);
  res.plots.push_back({"feasible.svg", "delta(alpha, beta)", "beta", "H", false, true, {pts}});
  return res;
}

CommandResult run_command(const ExperimentConfig& config) {
  config.validate();
  const std::string& c = config.command;
  if (c == "walk-scaling") return run_walk_scaling(config);
  if (c == "schema-cf") return run_schema_cf(config);
  if (c == "limit-selfsim") return run_limit_selfsim(config);
  if (c == "tail-check") return run_tail_check(config);
  if (c == "holder-check") return run_holder_check(config);
  if (c == "feasible-sweep") return run_feasible_sweep(config);
  throw ConfigError("unknown command '" + c + "'");
}

}  // namespace rwrs
