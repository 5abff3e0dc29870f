#include "holderlab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "holderlab/error.hpp"
#include "holderlab/retraction.hpp"
#include "holderlab/rng.hpp"

namespace holderlab {

namespace {

constexpr double kDegenerate = 1e-13;
constexpr double kRatioSlack = 1e-9;
constexpr double kAbsSlack = 1e-12;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

unsigned worker_count(unsigned requested, Index items) {
  unsigned w = requested;
  if (w == 0) w = std::clamp(std::thread::hardware_concurrency(), 1u, 8u);
  return static_cast<unsigned>(std::clamp<Index>(items, 1, w));
}

/// Splits [0, count) into contiguous chunks, one per worker, and returns the
/// per-chunk accumulators in index order. Merging them left to right with
/// strict comparisons keeps the lowest-index extremum, so the outcome does
/// not depend on the worker count.
template <class Acc, class Body>
std::vector<Acc> run_chunks(Index count, unsigned threads, Body body) {
  const unsigned w = worker_count(threads, count);
  std::vector<Acc> accs(w);
  std::vector<std::exception_ptr> errors(w);
  auto work = [&](unsigned k) {
    const Index lo = count * k / w;
    const Index hi = count * (k + 1) / w;
    try {
      for (Index i = lo; i < hi; ++i) body(accs[k], i);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };
  if (w == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (unsigned k = 0; k < w; ++k) pool.emplace_back(work, k);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return accs;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

double slack(const CheckRequest& req, double fallback) { return req.tolerance.value_or(fallback); }

Index samples_or(const CheckRequest& req, Index fallback) {
  const Index n = req.samples.value_or(fallback);
  if (n < 1) throw Error(ErrorCode::invalid_budget, "samples must be >= 1");
  return n;
}

CheckRecord make_record(CheckKind kind, std::string label, double claimed, Direction dir) {
  CheckRecord r{kind, std::move(label), claimed, kNaN, Verdict::report_only, dir, {}, {}, {}, 0.0, std::nullopt};
  return r;
}

std::string fmt(double v) { return format_double(v); }

/// Canonical points followed by `count` seeded samples.
std::vector<SeqVec> probe_points(const DomainSpec& K, Index count, std::uint64_t seed) {
  std::vector<SeqVec> pts = canonical_points(K);
  pts.reserve(pts.size() + static_cast<std::size_t>(count));
  for (Index i = 0; i < count; ++i) pts.push_back(sample(K, mix_seed(seed, static_cast<std::uint64_t>(i))));
  return pts;
}

}  // namespace

double CheckRecord::detail(const std::string& key) const {
  for (const auto& [k, v] : details) {
    if (k == key) return v;
  }
  throw Error(ErrorCode::unknown_name, "record has no detail '" + key + "'");
}

std::string to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::holder_ratio: return "holder_ratio";
    case CheckKind::invariance: return "invariance";
    case CheckKind::orbit: return "orbit";
    case CheckKind::displacement: return "displacement";
    case CheckKind::uniform_profile: return "uniform_profile";
    case CheckKind::asymptotic_profile: return "asymptotic_profile";
    case CheckKind::oracle_compare: return "oracle_compare";
    case CheckKind::approx_fixed_set: return "approx_fixed_set";
    case CheckKind::fixed_point: return "fixed_point";
    case CheckKind::constancy: return "constancy";
  }
  return "unknown";
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::report_only: return "report-only";
  }
  return "unknown";
}

std::string to_string(Direction direction) {
  switch (direction) {
    case Direction::lower_bound: return "lower bound on the true value";
    case Direction::upper_bound: return "upper bound on the true value";
    case Direction::exact: return "exact evaluation";
  }
  return "unknown";
}

CheckKind parse_check_kind(const std::string& name) {
  for (auto k : {CheckKind::holder_ratio, CheckKind::invariance, CheckKind::orbit,
                 CheckKind::displacement, CheckKind::uniform_profile,
                 CheckKind::asymptotic_profile, CheckKind::oracle_compare,
                 CheckKind::approx_fixed_set, CheckKind::fixed_point, CheckKind::constancy}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::invalid_check, "unknown check kind '" + name + "'");
}

std::string to_string(DisplacementStrategy strategy) {
  switch (strategy) {
    case DisplacementStrategy::sample_min: return "sample_min";
    case DisplacementStrategy::orbit_min: return "orbit_min";
    case DisplacementStrategy::lambda_scaling: return "lambda_scaling";
    case DisplacementStrategy::cesaro_affine: return "cesaro_affine";
  }
  return "unknown";
}

DisplacementStrategy parse_strategy(const std::string& name) {
  for (auto s : {DisplacementStrategy::sample_min, DisplacementStrategy::orbit_min,
                 DisplacementStrategy::lambda_scaling, DisplacementStrategy::cesaro_affine}) {
    if (to_string(s) == name) return s;
  }
  throw Error(ErrorCode::invalid_strategy, "unknown displacement strategy '" + name + "'");
}

// ---------------------------------------------------------------------------
// Ratio estimation

namespace {

struct ProfileAcc {
  std::vector<RatioEstimate> est;
  std::vector<bool> seen;
};

}  // namespace

std::vector<RatioEstimate> estimate_ratio_profile(const RatioProblem& problem,
                                                  const std::vector<Index>& n_list, Index pairs,
                                                  std::uint64_t seed, unsigned threads) {
  if (pairs < 1) throw Error(ErrorCode::invalid_budget, "pairs must be >= 1");
  if (n_list.empty()) throw Error(ErrorCode::invalid_budget, "iterate list is empty");
  for (Index n : n_list) {
    if (n < 1) throw Error(ErrorCode::invalid_budget, "iterate must be >= 1");
  }
  const Index n_top = *std::max_element(n_list.begin(), n_list.end());

  std::vector<std::pair<std::size_t, std::size_t>> anchor_pairs;
  for (std::size_t i = 0; i < problem.anchors.size(); ++i) {
    for (std::size_t j = i + 1; j < problem.anchors.size(); ++j) anchor_pairs.emplace_back(i, j);
  }
  const Index total = static_cast<Index>(anchor_pairs.size()) + pairs;
  const double log_lo = std::log(1e-6);

  auto accs = run_chunks<ProfileAcc>(total, threads, [&](ProfileAcc& acc, Index i) {
    if (acc.est.empty()) {
      acc.est.resize(n_list.size());
      acc.seen.assign(n_list.size(), false);
    }
    SeqVec x, y;
    if (i < static_cast<Index>(anchor_pairs.size())) {
      x = problem.anchors[anchor_pairs[static_cast<std::size_t>(i)].first];
      y = problem.anchors[anchor_pairs[static_cast<std::size_t>(i)].second];
    } else {
      const Index k = i - static_cast<Index>(anchor_pairs.size());
      const std::uint64_t s = mix_seed(seed, static_cast<std::uint64_t>(k));
      x = problem.sampler(mix_seed(s, 1));
      const SeqVec z = problem.sampler(mix_seed(s, 2));
      if (!problem.near_pairs || k % 2 == 0) {
        y = z;
      } else {
        Rng rng(mix_seed(s, 3));
        const double t = std::exp(rng.uniform(log_lo, 0.0));
        y = axpy(1.0 - t, x, t, z);
      }
    }
    const double d = distance(x, y, problem.norm);
    if (!(d >= kDegenerate)) {
      for (auto& e : acc.est) ++e.skipped;
      return;
    }
    const double denom = std::pow(d, problem.exponent);
    SeqVec fx = x;
    SeqVec fy = y;
    Index done = 0;
    for (Index n = 1; n <= n_top; ++n) {
      fx = problem.map(fx);
      fy = problem.map(fy);
      done = n;
      for (std::size_t j = 0; j < n_list.size(); ++j) {
        if (n_list[j] != done) continue;
        const double ratio = distance(fx, fy, problem.norm) / denom;
        auto& e = acc.est[j];
        ++e.evaluated;
        if (!acc.seen[j]) {
          acc.seen[j] = true;
          e.sup_ratio = e.inf_ratio = ratio;
          e.sup_x = e.inf_x = x;
          e.sup_y = e.inf_y = y;
          continue;
        }
        if (ratio > e.sup_ratio) {
          e.sup_ratio = ratio;
          e.sup_x = x;
          e.sup_y = y;
        }
        if (ratio < e.inf_ratio) {
          e.inf_ratio = ratio;
          e.inf_x = x;
          e.inf_y = y;
        }
      }
    }
  });

  std::vector<RatioEstimate> out(n_list.size());
  std::vector<bool> seen(n_list.size(), false);
  for (auto& acc : accs) {
    if (acc.est.empty()) continue;
    for (std::size_t j = 0; j < n_list.size(); ++j) {
      auto& o = out[j];
      const auto& e = acc.est[j];
      o.skipped += e.skipped;
      if (!acc.seen[j]) continue;
      o.evaluated += e.evaluated;
      if (!seen[j]) {
        seen[j] = true;
        const Index ev = o.evaluated;
        const Index sk = o.skipped;
        o = e;
        o.evaluated = ev;
        o.skipped = sk;
        continue;
      }
      if (e.sup_ratio > o.sup_ratio) {
        o.sup_ratio = e.sup_ratio;
        o.sup_x = e.sup_x;
        o.sup_y = e.sup_y;
      }
      if (e.inf_ratio < o.inf_ratio) {
        o.inf_ratio = e.inf_ratio;
        o.inf_x = e.inf_x;
        o.inf_y = e.inf_y;
      }
    }
  }
  for (std::size_t j = 0; j < n_list.size(); ++j) {
    if (!seen[j]) {
      throw Error(ErrorCode::insufficient_samples,
                  "every sampled pair was closer than 1e-13; no ratio could be formed");
    }
  }
  return out;
}

RatioProblem ratio_problem(const MapInstance& T, std::optional<double> exponent) {
  RatioProblem p;
  p.map = T.apply;
  p.sampler = [K = T.domain](std::uint64_t s) { return sample(K, s); };
  p.anchors = canonical_points(T.domain);
  p.norm = T.norm;
  p.exponent = exponent.value_or(T.claims.alpha);
  return p;
}

RatioEstimate estimate_holder_ratio(const MapInstance& T, Index pairs, std::uint64_t seed,
                                    Index iterate, std::optional<double> exponent,
                                    unsigned threads) {
  return estimate_ratio_profile(ratio_problem(T, exponent), {iterate}, pairs, seed, threads).front();
}

// ---------------------------------------------------------------------------
// Orbits and displacement

OrbitTrace orbit(const MapInstance& T, const SeqVec& x0, Index n) {
  if (n < 0) throw Error(ErrorCode::invalid_budget, "orbit length must be >= 0");
  if (!contains(T.domain, x0)) {
    throw Error(ErrorCode::domain_violation, "orbit start " + to_literal(x0) + " is not in " +
                                                 T.domain.describe());
  }
  OrbitTrace out;
  out.iterates.reserve(static_cast<std::size_t>(n) + 1);
  out.iterates.push_back(x0);
  out.max_norm = norm(x0, T.norm);
  for (Index k = 0; k < n; ++k) {
    SeqVec next = T.apply(out.iterates.back());
    out.displacements.push_back(distance(out.iterates.back(), next, T.norm));
    out.max_norm = std::max(out.max_norm, norm(next, T.norm));
    out.iterates.push_back(std::move(next));
  }
  return out;
}

namespace {

struct MinAcc {
  double best = std::numeric_limits<double>::infinity();
  SeqVec witness;
  Index evaluated = 0;
};

void consider(MinAcc& acc, double d, const SeqVec& x) {
  ++acc.evaluated;
  if (d < acc.best) {
    acc.best = d;
    acc.witness = x;
  }
}

DisplacementEstimate finish(const MinAcc& acc) {
  DisplacementEstimate out;
  out.upper = acc.best;
  out.witness = acc.witness;
  out.evaluated = acc.evaluated;
  return out;
}

}  // namespace

DisplacementEstimate estimate_displacement(const MapInstance& T, DisplacementStrategy strategy,
                                           Index budget, std::uint64_t seed,
                                           std::optional<SeqVec> x0) {
  if (budget < 1) throw Error(ErrorCode::invalid_budget, "displacement budget must be >= 1");
  const Norm& k = T.norm;
  auto displacement = [&](const SeqVec& x) { return distance(x, T.apply(x), k); };

  switch (strategy) {
    case DisplacementStrategy::sample_min: {
      const auto pts = probe_points(T.domain, budget, seed);
      auto accs = run_chunks<MinAcc>(static_cast<Index>(pts.size()), 0, [&](MinAcc& acc, Index i) {
        consider(acc, displacement(pts[static_cast<std::size_t>(i)]), pts[static_cast<std::size_t>(i)]);
      });
      MinAcc all;
      for (const auto& a : accs) {
        all.evaluated += a.evaluated;
        if (a.best < all.best) {
          all.best = a.best;
          all.witness = a.witness;
        }
      }
      return finish(all);
    }
    case DisplacementStrategy::orbit_min: {
      std::vector<SeqVec> starts;
      if (x0) starts.push_back(*x0);
      for (auto& p : canonical_points(T.domain)) starts.push_back(std::move(p));
      MinAcc acc;
      Index truncated = 0;
      for (const auto& s : starts) {
        SeqVec x = s;
        for (Index n = 0; n < budget; ++n) {
          SeqVec next;
          try {
            next = T.apply(x);
          } catch (const Error& e) {
            // Index-doubling maps leave the representable range after ~62 steps.
            if (e.code() != ErrorCode::invalid_index) throw;
            ++truncated;
            break;
          }
          consider(acc, distance(x, next, k), x);
          x = std::move(next);
        }
      }
      auto out = finish(acc);
      out.details.emplace_back("orbits_truncated", static_cast<double>(truncated));
      return out;
    }
    case DisplacementStrategy::lambda_scaling: {
      if (!T.domain.star_shaped()) {
        throw Error(ErrorCode::invalid_strategy,
                    "lambda_scaling needs a star-shaped domain; " + T.domain.kind_name() + " is not");
      }
      const SeqVec start = x0.value_or(SeqVec());
      if (!contains(T.domain, start)) {
        throw Error(ErrorCode::domain_violation, "lambda_scaling start is not in the domain");
      }
      MinAcc acc;
      DisplacementEstimate out;
      for (double lambda : kLambdaSchedule) {
        const Index want = static_cast<Index>(std::ceil(std::log(kLambdaTarget) / std::log(lambda)));
        const Index steps = std::min({want, kLambdaStepCap, budget});
        MinAcc local;
        SeqVec y = start;
        for (Index n = 0; n <= steps; ++n) {
          SeqVec ty = T.apply(y);
          consider(local, distance(y, ty, k), y);
          if (n == steps) break;
          y = T.apply(lambda * y);
        }
        const double eps = std::pow(lambda, static_cast<double>(steps));
        const std::string tag = "lambda=" + fmt(lambda);
        out.details.emplace_back(tag + ".steps", static_cast<double>(steps));
        out.details.emplace_back(tag + ".min_displacement", local.best);
        out.details.emplace_back(tag + ".chain_bound", eps + std::pow(1.0 - lambda, T.claims.alpha));
        acc.evaluated += local.evaluated;
        if (local.best < acc.best) {
          acc.best = local.best;
          acc.witness = local.witness;
        }
      }
      auto details = std::move(out.details);
      out = finish(acc);
      out.details = std::move(details);
      return out;
    }
    case DisplacementStrategy::cesaro_affine: {
      if (!T.claims.affine) {
        throw Error(ErrorCode::invalid_strategy, "cesaro_affine needs an affine map; " + T.name +
                                                     " makes no affine claim");
      }
      const SeqVec start = x0.value_or(canonical_points(T.domain).front());
      MinAcc acc;
      SeqVec sum = start;
      SeqVec power = start;
      for (Index n = 1; n <= budget; ++n) {
        // y_n = (x + T x + ... + T^(n-1) x) / n
        const SeqVec y = (1.0 / static_cast<double>(n)) * sum;
        consider(acc, displacement(y), y);
        power = T.apply(power);
        sum = sum + power;
      }
      return finish(acc);
    }
  }
  throw Error(ErrorCode::invalid_strategy, "unhandled strategy");
}

// ---------------------------------------------------------------------------
// Checks

CheckRecord check_holder_ratio(const MapInstance& T, const CheckRequest& req) {
  Stopwatch sw;
  const double exponent = req.exponent.value_or(T.claims.alpha);
  const bool classical = exponent == 1.0 && T.claims.alpha != 1.0;
  double claimed = T.claims.holder_constant;
  bool hard = T.claims.holder_hard;
  std::string label = "sup ||T^" + std::to_string(req.iterate) + "x - T^" +
                      std::to_string(req.iterate) + "y|| / ||x-y||^" + fmt(exponent);
  if (classical) {
    claimed = T.claims.classical_lipschitz.value_or(kNaN);
  } else if (exponent != T.claims.alpha) {
    claimed = kNaN;
  } else if (req.iterate > 1 && !T.claims.uniform) {
    if (T.claims.asymptotic) {
      claimed = T.claims.asymptotic->bound(req.iterate);
    } else {
      claimed = kNaN;
    }
  }
  if (req.iterate > 1 && T.claims.uniform && !T.claims.uniform_hard) hard = false;

  CheckRecord rec = make_record(CheckKind::holder_ratio, label, claimed, Direction::lower_bound);
  RatioProblem problem = ratio_problem(T, exponent);
  // Near pairs sit ~1e-7 apart, where rounding in T alone moves the ratio by
  // ~1e-9; an isometry test at 1e-12 needs well-separated pairs.
  const bool iso = classical && T.claims.isometry;
  if (iso) problem.near_pairs = false;
  const auto est =
      estimate_ratio_profile(problem, {req.iterate}, req.pairs, req.seed, req.threads).front();
  rec.measured = est.sup_ratio;
  rec.witnesses = {{"x", est.sup_x}, {"y", est.sup_y}};
  rec.details = {{"inf_ratio", est.inf_ratio},
                 {"pairs_evaluated", static_cast<double>(est.evaluated)},
                 {"pairs_skipped", static_cast<double>(est.skipped)},
                 {"exponent", exponent},
                 {"iterate", static_cast<double>(req.iterate)}};
  const double tol = slack(req, kRatioSlack);
  if (std::isnan(claimed)) {
    rec.verdict = Verdict::report_only;
  } else {
    bool ok = est.sup_ratio <= claimed * (1.0 + tol);
    if (iso) {
      // An isometry must also keep the ratio from dropping below 1.
      const double iso_tol = req.tolerance.value_or(kAbsSlack);
      ok = std::abs(est.sup_ratio - 1.0) <= iso_tol && std::abs(est.inf_ratio - 1.0) <= iso_tol;
      rec.notes.emplace_back("isometry", "sup and inf ratio within " + fmt(iso_tol) + " of 1");
    }
    rec.verdict = !hard ? Verdict::report_only : (ok ? Verdict::pass : Verdict::fail);
    if (!hard) {
      rec.claim_met = ok;
      rec.notes.emplace_back("claim", ok ? "within claimed constant" : "exceeds claimed constant");
    }
  }
  if (T.claims.lower_lipschitz && req.iterate == 1) {
    const auto low = estimate_holder_ratio(T, req.pairs, req.seed, 1, 1.0, req.threads);
    rec.details.emplace_back("lower_lipschitz_claimed", *T.claims.lower_lipschitz);
    rec.details.emplace_back("lower_lipschitz_measured_inf", low.inf_ratio);
    rec.notes.emplace_back("lower_bound", std::string("report-only: ") +
                                              (low.inf_ratio >= *T.claims.lower_lipschitz * (1.0 - tol)
                                                   ? "respected on samples"
                                                   : "violated on samples"));
  }
  rec.runtime_ms = sw.ms();
  return rec;
}

namespace {

struct InvAcc {
  Index violations = 0;
  Index first = -1;
  SeqVec x, tx;
  std::string error;
  double excess = 0.0;
};

/// How far y sits outside a ball-type domain; 0 for other kinds.
double ball_excess(const DomainSpec& K, const SeqVec& y) {
  if (const auto* b = std::get_if<Ball>(&K.kind())) {
    if (b->norm.kind() != Norm::Kind::sup && y.tail() != 0.0) return kNaN;
    return std::max(0.0, norm(y, b->norm) - b->r);
  }
  if (const auto* b = std::get_if<PositiveBall>(&K.kind())) {
    if (b->norm.kind() != Norm::Kind::sup && y.tail() != 0.0) return kNaN;
    return std::max(0.0, norm(positive_part(y), b->norm) - b->r);
  }
  return 0.0;
}

}  // namespace

CheckRecord check_invariance(const MapInstance& T, const CheckRequest& req) {
  Stopwatch sw;
  const Index n = samples_or(req, 10000);
  const auto pts = probe_points(T.domain, n, req.seed);
  auto accs = run_chunks<InvAcc>(static_cast<Index>(pts.size()), req.threads, [&](InvAcc& acc, Index i) {
    const SeqVec& x = pts[static_cast<std::size_t>(i)];
    SeqVec y;
    std::string err;
    bool ok = true;
    try {
      y = T.apply(x);
      ok = contains(T.domain, y);
    } catch (const Error& e) {
      ok = false;
      err = e.what();
    }
    if (ok) return;
    ++acc.violations;
    if (err.empty()) {
      const double ex = ball_excess(T.domain, y);
      if (ex > acc.excess) acc.excess = ex;
    }
    if (acc.first < 0) {
      acc.first = i;
      acc.x = x;
      acc.tx = y;
      acc.error = err;
    }
  });
  InvAcc all;
  for (const auto& a : accs) {
    all.violations += a.violations;
    all.excess = std::max(all.excess, a.excess);
    if (all.first < 0 && a.first >= 0) {
      all.first = a.first;
      all.x = a.x;
      all.tx = a.tx;
      all.error = a.error;
    }
  }
  CheckRecord rec = make_record(CheckKind::invariance, "T(K) inside K: violations among points", 0.0,
                                Direction::exact);
  rec.measured = static_cast<double>(all.violations);
  rec.details = {{"points", static_cast<double>(pts.size())},
                 {"canonical_points", static_cast<double>(pts.size() - static_cast<std::size_t>(n))},
                 {"max_norm_excess", all.excess}};
  rec.verdict = all.violations == 0 ? Verdict::pass : Verdict::fail;
  if (all.first >= 0) {
    rec.witnesses = {{"x", all.x}, {"T(x)", all.tx}};
    if (!all.error.empty()) rec.notes.emplace_back("error", all.error);
  }
  rec.notes.emplace_back("domain", T.domain.describe());
  rec.runtime_ms = sw.ms();
  return rec;
}

CheckRecord check_orbit(const MapInstance& T, const CheckRequest& req) {
  Stopwatch sw;
  std::vector<SeqVec> starts;
  if (req.x0) {
    starts.push_back(*req.x0);
  } else {
    starts = probe_points(T.domain, samples_or(req, 100), req.seed);
  }
  const Index n = req.n_max;
  const auto decay = T.claims.orbit_decay;
  const double tol = slack(req, kAbsSlack);

  struct OrbAcc {
    double max_norm = 0.0;
    double last = 0.0;
    double min_disp = std::numeric_limits<double>::infinity();
    // Largest displacement / lambda^k and where it occurs.
    double worst = -1.0;
    SeqVec worst_x;
    Index worst_k = -1;
    // First displacement above lambda^k + tol.
    bool violated = false;
    SeqVec bad_x;
    Index bad_k = -1;
  };
  auto accs = run_chunks<OrbAcc>(static_cast<Index>(starts.size()), req.threads, [&](OrbAcc& acc, Index i) {
    const SeqVec& x0 = starts[static_cast<std::size_t>(i)];
    const auto tr = orbit(T, x0, n);
    acc.max_norm = std::max(acc.max_norm, tr.max_norm);
    if (!tr.displacements.empty()) acc.last = std::max(acc.last, tr.displacements.back());
    for (std::size_t k = 0; k < tr.displacements.size(); ++k) {
      const double d = tr.displacements[k];
      acc.min_disp = std::min(acc.min_disp, d);
      if (!decay) continue;
      const double bound = std::pow(*decay, static_cast<double>(k));
      if (d / bound > acc.worst) {
        acc.worst = d / bound;
        acc.worst_x = x0;
        acc.worst_k = static_cast<Index>(k);
      }
      if (d > bound + tol && !acc.violated) {
        acc.violated = true;
        acc.bad_x = x0;
        acc.bad_k = static_cast<Index>(k);
      }
    }
  });
  OrbAcc all;
  for (const auto& a : accs) {
    all.max_norm = std::max(all.max_norm, a.max_norm);
    all.min_disp = std::min(all.min_disp, a.min_disp);
    all.last = std::max(all.last, a.last);
    if (a.worst > all.worst) {
      all.worst = a.worst;
      all.worst_x = a.worst_x;
      all.worst_k = a.worst_k;
    }
    if (a.violated && !all.violated) {
      all.violated = true;
      all.bad_x = a.bad_x;
      all.bad_k = a.bad_k;
    }
  }
  CheckRecord rec = make_record(CheckKind::orbit, "", kNaN, Direction::exact);
  rec.details = {{"orbits", static_cast<double>(starts.size())},
                 {"steps", static_cast<double>(n)},
                 {"max_orbit_norm", all.max_norm},
                 {"max_final_displacement", all.last},
                 {"min_displacement", n > 0 ? all.min_disp : kNaN}};
  if (decay) {
    rec.label = "max_k ||T^k x - T^(k+1) x|| / lambda^k";
    rec.claimed = 1.0;
    rec.measured = all.worst;
    rec.verdict = all.violated ? Verdict::fail : Verdict::pass;
    rec.details.emplace_back("lambda", *decay);
    const SeqVec& w = all.violated ? all.bad_x : all.worst_x;
    const Index wk = all.violated ? all.bad_k : all.worst_k;
    if (wk >= 0) {
      rec.witnesses = {{"x0", w}};
      rec.details.emplace_back("witness_step", static_cast<double>(wk));
    }
  } else {
    rec.label = "max orbit norm (boundedness)";
    rec.measured = all.max_norm;
    rec.verdict = Verdict::report_only;
  }
  rec.runtime_ms = sw.ms();
  return rec;
}

CheckRecord check_displacement(const MapInstance& T, const CheckRequest& req) {
  Stopwatch sw;
  const auto est = estimate_displacement(T, req.strategy, req.budget, req.seed, req.x0);
  const auto& bound = T.claims.displacement;
  double claimed = kNaN;
  if (req.target) {
    claimed = *req.target;
  } else if (bound && bound->value > 0.0) {
    claimed = bound->value;
  }
  CheckRecord rec = make_record(CheckKind::displacement,
                                "d(T,K) estimate via " + to_string(req.strategy), claimed,
                                Direction::upper_bound);
  rec.measured = est.upper;
  rec.witnesses = {{"argmin", est.witness}};
  rec.details = est.details;
  rec.details.emplace_back("evaluated", static_cast<double>(est.evaluated));
  rec.details.emplace_back("budget", static_cast<double>(req.budget));
  if (bound) {
    rec.details.emplace_back("claimed_bound", bound->value);
    rec.notes.emplace_back("bound", bound->formula);
  }
  if (std::isnan(claimed)) {
    rec.verdict = Verdict::report_only;
  } else {
    rec.verdict = est.upper <= claimed + slack(req, kAbsSlack) ? Verdict::pass : Verdict::fail;
  }
  rec.runtime_ms = sw.ms();
  return rec;
}

CheckRecord check_uniform_profile(const MapInstance& T, const CheckRequest& req) {
  if (!T.claims.uniform) {
    throw Error(ErrorCode::invalid_check, T.name + " makes no uniform (all iterates) claim");
  }
  Stopwatch sw;
  const auto est =
      estimate_ratio_profile(ratio_problem(T, req.exponent), req.n_list, req.pairs, req.seed, req.threads);
  const double claimed = T.claims.holder_constant;
  const double tol = slack(req, kRatioSlack);
  CheckRecord rec = make_record(CheckKind::uniform_profile,
                                "max_n sup ||T^n x - T^n y|| / ||x-y||^" + fmt(T.claims.alpha),
                                claimed, Direction::lower_bound);
  rec.measured = 0.0;
  bool ok = true;
  for (std::size_t j = 0; j < est.size(); ++j) {
    const auto& e = est[j];
    rec.details.emplace_back("n=" + std::to_string(req.n_list[j]), e.sup_ratio);
    if (e.sup_ratio > claimed * (1.0 + tol)) ok = false;
    if (j == 0 || e.sup_ratio > rec.measured) {
      rec.measured = e.sup_ratio;
      rec.witnesses = {{"x", e.sup_x}, {"y", e.sup_y}};
    }
  }
  rec.verdict = !T.claims.uniform_hard ? Verdict::report_only : (ok ? Verdict::pass : Verdict::fail);
  if (!T.claims.uniform_hard) {
    rec.claim_met = ok;
    rec.notes.emplace_back("claim", ok ? "within claimed constant" : "exceeds claimed constant");
  }
  rec.runtime_ms = sw.ms();
  return rec;
}

CheckRecord check_asymptotic_profile(const MapInstance& T, const CheckRequest& req) {
  if (!T.claims.asymptotic) {
    throw Error(ErrorCode::invalid_check, T.name + " has no asymptotic profile claim");
  }
  if (req.n_max < 1) throw Error(ErrorCode::invalid_budget, "n_max must be >= 1");
  Stopwatch sw;
  std::vector<Index> ns;
  for (Index n = 1; n <= req.n_max; ++n) ns.push_back(n);
  const auto est = estimate_ratio_profile(ratio_problem(T), ns, req.pairs, req.seed, req.threads);
  const double tol = slack(req, kRatioSlack);
  CheckRecord rec = make_record(CheckKind::asymptotic_profile,
                                "max_n sup ratio / profile(n), profile = " + T.claims.asymptotic->description,
                                1.0, Direction::lower_bound);
  rec.measured = 0.0;
  bool ok = true;
  for (std::size_t j = 0; j < est.size(); ++j) {
    const double bound = T.claims.asymptotic->bound(ns[j]);
    const double r = est[j].sup_ratio / bound;
    rec.details.emplace_back("n=" + std::to_string(ns[j]) + ".measured", est[j].sup_ratio);
    rec.details.emplace_back("n=" + std::to_string(ns[j]) + ".bound", bound);
    if (est[j].sup_ratio > bound * (1.0 + tol)) ok = false;
    if (j == 0 || r > rec.measured) {
      rec.measured = r;
      rec.witnesses = {{"x", est[j].sup_x}, {"y", est[j].sup_y}};
    }
  }
  rec.verdict = ok ? Verdict::pass : Verdict::fail;
  rec.runtime_ms = sw.ms();
  return rec;
}

CheckRecord approx_fixed_set_check(const MapInstance& T, const CheckRequest& req) {
  if (!(req.delta >= 1.0)) {
    throw Error(ErrorCode::invalid_parameter,
                "approx_fixed_set needs delta >= 1, got " + fmt(req.delta));
  }
  Stopwatch sw;
  const auto pts = probe_points(T.domain, samples_or(req, 1000), req.seed);
  const double tol = slack(req, kAbsSlack);
  struct Acc {
    Index members = 0;
    double worst = -1.0;
    SeqVec witness;
    bool failed = false;
    SeqVec fail_x;
  };
  auto accs = run_chunks<Acc>(static_cast<Index>(pts.size()), req.threads, [&](Acc& acc, Index i) {
    const SeqVec& x = pts[static_cast<std::size_t>(i)];
    const SeqVec tx = T.apply(x);
    if (distance(x, tx, T.norm) > req.delta) return;
    ++acc.members;
    const double d2 = distance(tx, T.apply(tx), T.norm);
    if (d2 > acc.worst) {
      acc.worst = d2;
      acc.witness = x;
    }
    if (d2 > req.delta + tol && !acc.failed) {
      acc.failed = true;
      acc.fail_x = x;
    }
  });
  Acc all;
  for (const auto& a : accs) {
    all.members += a.members;
    if (a.worst > all.worst) {
      all.worst = a.worst;
      all.witness = a.witness;
    }
    if (a.failed && !all.failed) {
      all.failed = true;
      all.fail_x = a.fail_x;
    }
  }
  all.worst = std::max(all.worst, 0.0);
  CheckRecord rec = make_record(CheckKind::approx_fixed_set,
                                "max ||Tx - T^2x|| over x with ||x - Tx|| <= delta", req.delta,
                                Direction::lower_bound);
  rec.measured = all.worst;
  rec.details = {{"points", static_cast<double>(pts.size())},
                 {"members", static_cast<double>(all.members)},
                 {"delta", req.delta}};
  rec.verdict = all.failed ? Verdict::fail : Verdict::pass;
  rec.witnesses = {{"x", all.failed ? all.fail_x : all.witness}};
  rec.runtime_ms = sw.ms();
  return rec;
}

CheckRecord oracle_compare(const MapInstance& T, const CheckRequest& req) {
  if (!T.has_oracle()) throw Error(ErrorCode::invalid_check, T.name + " has no iterate oracle");
  Stopwatch sw;
  std::vector<SeqVec> starts;
  if (req.x0) {
    if (!contains(T.domain, *req.x0)) {
      throw Error(ErrorCode::domain_violation, "oracle start " + to_literal(*req.x0) + " is not in " +
                                                   T.domain.describe());
    }
    starts.push_back(*req.x0);
  } else {
    starts = probe_points(T.domain, samples_or(req, 100), req.seed);
  }
  const Norm sup = Norm::sup();
  struct Acc {
    double worst = 0.0;
    SeqVec witness;
    Index at = 0;
    bool any = false;
  };
  auto accs = run_chunks<Acc>(static_cast<Index>(starts.size()), req.threads, [&](Acc& acc, Index i) {
    const SeqVec& x = starts[static_cast<std::size_t>(i)];
    SeqVec y = x;
    for (Index n = 1; n <= req.n_max; ++n) {
      y = T.apply(y);
      const double d = distance(y, T.oracle(x, n), sup);
      if (!acc.any || d > acc.worst) {
        acc.any = true;
        acc.worst = d;
        acc.witness = x;
        acc.at = n;
      }
    }
  });
  Acc all;
  for (const auto& a : accs) {
    if (a.any && (!all.any || a.worst > all.worst)) all = a;
  }
  const double tol = slack(req, kAbsSlack);
  CheckRecord rec = make_record(CheckKind::oracle_compare,
                                "max_n ||apply^n(x) - oracle(x, n)||_sup", tol, Direction::exact);
  rec.measured = all.worst;
  rec.details = {{"starts", static_cast<double>(starts.size())},
                 {"n_max", static_cast<double>(req.n_max)},
                 {"worst_n", static_cast<double>(all.at)}};
  if (all.any) rec.witnesses = {{"x0", all.witness}};
  rec.verdict = all.worst <= tol ? Verdict::pass : Verdict::fail;
  rec.runtime_ms = sw.ms();
  return rec;
}

CheckRecord check_fixed_point(const MapInstance& T, const CheckRequest& req) {
  Stopwatch sw;
  const auto& fp = T.claims.fixed_points;
  CheckRecord rec = make_record(CheckKind::fixed_point, "", kNaN, Direction::exact);
  rec.notes.emplace_back("fixed_point_set", to_string(fp.kind));
  if (fp.kind == FixedPointKind::singleton) {
    const double tol = slack(req, 1e-10) + fp.residual;
    rec.label = "||z - T z|| at the claimed fixed point";
    rec.claimed = tol;
    rec.measured = distance(fp.point, T.apply(fp.point), T.norm);
    rec.witnesses = {{"z", fp.point}};
    rec.details = {{"truncation_residual", fp.residual}};
    rec.verdict = rec.measured <= tol ? Verdict::pass : Verdict::fail;
  } else {
    // Never asserted zero: report the smallest sampled displacement.
    const auto est = estimate_displacement(T, DisplacementStrategy::sample_min,
                                           samples_or(req, 1000), req.seed);
    rec.label = "min sampled ||x - T x||";
    rec.direction = Direction::upper_bound;
    rec.measured = est.upper;
    rec.witnesses = {{"argmin", est.witness}};
    rec.verdict = Verdict::report_only;
  }
  rec.runtime_ms = sw.ms();
  return rec;
}

CheckRecord constancy_probe(const MapInstance& T, const CheckRequest& req) {
  if (!(T.claims.alpha > 1.0)) {
    throw Error(ErrorCode::invalid_check, "constancy probe applies only to claimed alpha > 1");
  }
  Stopwatch sw;
  const auto pts = probe_points(T.domain, samples_or(req, 100), req.seed);
  const SeqVec ref = T.apply(pts.front());
  double spread = 0.0;
  SeqVec witness = pts.front();
  for (const auto& x : pts) {
    const double d = distance(T.apply(x), ref, T.norm);
    if (d > spread) {
      spread = d;
      witness = x;
    }
  }
  const double tol = slack(req, kAbsSlack);
  CheckRecord rec = make_record(CheckKind::constancy, "max ||T x - T x_ref|| over probe points", tol,
                                Direction::lower_bound);
  rec.measured = spread;
  rec.witnesses = {{"x_ref", pts.front()}, {"x", witness}};
  rec.details = {{"points", static_cast<double>(pts.size())}};
  rec.verdict = spread <= tol ? Verdict::pass : Verdict::fail;
  rec.runtime_ms = sw.ms();
  return rec;
}

CheckRecord run_check(const MapInstance& T, const CheckRequest& req) {
  if (req.pairs < 1) throw Error(ErrorCode::invalid_budget, "pairs must be >= 1");
  if (req.iterate < 0 || req.n_max < 0) {
    throw Error(ErrorCode::invalid_budget, "iterate depth must be >= 0");
  }
  switch (req.kind) {
    case CheckKind::holder_ratio: return check_holder_ratio(T, req);
    case CheckKind::invariance: return check_invariance(T, req);
    case CheckKind::orbit: return check_orbit(T, req);
    case CheckKind::displacement: return check_displacement(T, req);
    case CheckKind::uniform_profile: return check_uniform_profile(T, req);
    case CheckKind::asymptotic_profile: return check_asymptotic_profile(T, req);
    case CheckKind::oracle_compare: return oracle_compare(T, req);
    case CheckKind::approx_fixed_set: return approx_fixed_set_check(T, req);
    case CheckKind::fixed_point: return check_fixed_point(T, req);
    case CheckKind::constancy: return constancy_probe(T, req);
  }
  throw Error(ErrorCode::invalid_check, "unhandled check kind");
}

}  // namespace holderlab
