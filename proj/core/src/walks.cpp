#include "iug/walks.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>
#include <unordered_map>

namespace iug {

namespace {

std::string str(std::size_t x) { return std::to_string(x); }

void check_sets(const Graph& f, std::span<const std::vector<Vertex>> sets, std::size_t q) {
  if (q == 0) throw ArgumentError("q-expanding test requires q >= 1");
  if (sets.size() != q) {
    throw ArgumentError("expected " + str(q) + " sets S_0..S_{q-1}, got " + str(sets.size()));
  }
  for (const auto& s : sets) {
    for (Vertex x : s) {
      if (x >= f.vertex_count()) throw ArgumentError("set vertex out of range: " + str(x));
    }
  }
}

/// Sorted vertices at distance 1..radius from a centre; scratch arrays are
/// reused across calls.
class BallMaker {
 public:
  BallMaker(const Graph& f, std::size_t radius)
      : f_(f), radius_(radius), stamp_(f.vertex_count(), 0), depth_(f.vertex_count(), 0) {}

  std::vector<Vertex> operator()(Vertex center) {
    ++epoch_;
    std::vector<Vertex> queue{center};
    stamp_[center] = epoch_;
    depth_[center] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex u = queue[head];
      if (depth_[u] >= radius_) continue;
      for (Vertex w : f_.neighbors(u)) {
        if (stamp_[w] != epoch_) {
          stamp_[w] = epoch_;
          depth_[w] = depth_[u] + 1;
          queue.push_back(w);
        }
      }
    }
    queue.erase(queue.begin());
    std::sort(queue.begin(), queue.end());
    return queue;
  }

 private:
  const Graph& f_;
  std::size_t radius_;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint32_t> depth_;
  std::uint32_t epoch_ = 0;
};

}  // namespace

void WalkParams::validate() const {
  if (ell == 0) throw ArgumentError("walk parameters: ell must be positive");
  if (step == 0) throw ArgumentError("walk parameters: step must be >= 1");
  if (usage_cap == 0) throw ArgumentError("walk parameters: usage_cap must be >= 1");
  if (avoid_radius == 0) throw ArgumentError("walk parameters: avoid_radius must be >= 1");
}

std::size_t walk_step_for(std::size_t ell) {
  std::size_t k = 0;
  unsigned __int128 power = 1;
  while (power < ell) {
    power *= 10;
    ++k;
  }
  return std::max<std::size_t>(k, 1);
}

WalkParams paper_walk_params(std::size_t ell, std::size_t n, std::size_t d) {
  if (ell == 0) throw ArgumentError("paper walk parameters need ell > 0");
  WalkParams p;
  p.ell = ell;
  p.step = walk_step_for(ell);
  p.usage_cap = 40 * ((n + ell - 1) / ell);
  if (p.usage_cap == 0) p.usage_cap = 40;
  p.avoid_radius = 5;
  const unsigned __int128 d4 = static_cast<unsigned __int128>(d) * d * d * d * 160;
  p.sigma_cap = d4 == 0 ? kUnboundedSigma : static_cast<std::size_t>(ell / d4);
  return p;
}

ConstraintSchedule::ConstraintSchedule(std::vector<std::vector<std::size_t>> sigma)
    : sigma_(std::move(sigma)) {
  for (auto& s : sigma_) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
}

void ConstraintSchedule::add(std::size_t t, std::size_t t_prime) {
  if (t >= sigma_.size()) throw ArgumentError("schedule index out of range: " + str(t));
  auto& s = sigma_[t];
  auto it = std::lower_bound(s.begin(), s.end(), t_prime);
  if (it == s.end() || *it != t_prime) s.insert(it, t_prime);
}

std::size_t ConstraintSchedule::max_set_size() const noexcept {
  std::size_t m = 0;
  for (const auto& s : sigma_) m = std::max(m, s.size());
  return m;
}

std::size_t ConstraintSchedule::total_size() const noexcept {
  std::size_t m = 0;
  for (const auto& s : sigma_) m += s.size();
  return m;
}

std::optional<std::size_t> ConstraintSchedule::latest_allowed(std::size_t t, std::size_t step) {
  const std::size_t k = t / step;
  if (k < 2) return std::nullopt;
  return (k - 1) * step - 1;
}

void ConstraintSchedule::validate(std::size_t step, std::size_t sigma_cap) const {
  if (step == 0) throw ArgumentError("schedule validation needs step >= 1");
  for (std::size_t t = 0; t < sigma_.size(); ++t) {
    const auto& s = sigma_[t];
    if (s.size() > sigma_cap) {
      throw ArgumentError("sigma(" + str(t) + ") has " + str(s.size()) +
                          " entries, cap is " + str(sigma_cap));
    }
    if (s.empty()) continue;
    const auto latest = latest_allowed(t, step);
    if (!latest || s.back() > *latest) {
      throw ArgumentError("sigma(" + str(t) + ") contains " + str(s.back()) +
                          ", outside the admissible range for step " + str(step));
    }
  }
}

std::string ConstraintSchedule::digest() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(sigma_.size());
  for (const auto& s : sigma_) {
    mix(s.size());
    for (std::size_t x : s) mix(x);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// q-expanding vertices

bool is_q_expanding(const Graph& f, Vertex v, std::span<const std::vector<Vertex>> sets,
                    std::size_t q, std::size_t budget) {
  check_sets(f, sets, q);
  const std::size_t n = f.vertex_count();
  if (v >= n) throw ArgumentError("vertex out of range: " + str(v));

  std::vector<std::vector<char>> in_set(q, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < q; ++i) {
    for (Vertex x : sets[i]) in_set[i][x] = 1;
  }

  // Every path (v, w_0, ..., w_{q-1}) avoiding the S_i, flattened.
  std::vector<Vertex> cand;
  {
    std::vector<Vertex> walk{v};
    std::vector<std::size_t> next_index{0};
    while (!walk.empty()) {
      const std::size_t depth = walk.size() - 1;  // w_{depth-1} is walk.back()
      if (depth == q) {
        cand.insert(cand.end(), walk.begin() + 1, walk.end());
        if (cand.size() > budget) throw BudgetError("too many candidate paths from vertex " + str(v));
        walk.pop_back();
        next_index.pop_back();
        continue;
      }
      auto nb = f.neighbors(walk.back());
      std::size_t& idx = next_index.back();
      bool pushed = false;
      while (idx < nb.size()) {
        const Vertex w = nb[idx++];
        if (in_set[depth][w]) continue;
        if (std::find(walk.begin(), walk.end(), w) != walk.end()) continue;
        walk.push_back(w);
        next_index.push_back(0);
        pushed = true;
        break;
      }
      if (!pushed) {
        walk.pop_back();
        next_index.pop_back();
      }
    }
  }
  const std::size_t paths = cand.size() / q;

  std::vector<std::uint32_t> end_stamp(n, 0), p_stamp(n, 0);
  std::uint32_t epoch = 0;
  auto count_endpoints = [&](std::span<const Vertex> blocked) {
    ++epoch;
    for (Vertex x : blocked) p_stamp[x] = epoch;
    std::size_t count = 0;
    for (std::size_t k = 0; k < paths; ++k) {
      const Vertex* w = cand.data() + k * q;
      bool ok = true;
      for (std::size_t i = 0; i < q && ok; ++i) ok = p_stamp[w[i]] != epoch;
      if (ok && end_stamp[w[q - 1]] != epoch) {
        end_stamp[w[q - 1]] = epoch;
        ++count;
      }
    }
    return count;
  };

  if (2 * count_endpoints({}) < n) return false;

  // Only paths P meeting some w_i can lower the count; all of them lie
  // within distance q-1 of those vertices.
  std::vector<char> relevant(n, 0);
  for (Vertex x : cand) relevant[x] = 1;
  std::vector<std::uint32_t> dist(n, kUnreached);
  std::vector<Vertex> region;
  for (Vertex x = 0; x < n; ++x) {
    if (relevant[x]) {
      dist[x] = 0;
      region.push_back(x);
    }
  }
  for (std::size_t head = 0; head < region.size(); ++head) {
    const Vertex u = region[head];
    if (dist[u] + 1 >= q) continue;
    for (Vertex w : f.neighbors(u)) {
      if (dist[w] == kUnreached) {
        dist[w] = dist[u] + 1;
        region.push_back(w);
      }
    }
  }

  double fanout = 1.0;
  for (std::size_t i = 1; i < q; ++i) fanout *= static_cast<double>(std::max<std::size_t>(f.max_degree(), 1));
  const double estimate = static_cast<double>(region.size()) * fanout * static_cast<double>(paths + 1);
  if (estimate > static_cast<double>(budget)) {
    throw BudgetError("q-expanding enumeration estimate exceeds budget for vertex " + str(v));
  }

  std::vector<char> on_path(n, 0);
  auto maximal_end = [&](Vertex x) {
    for (Vertex w : f.neighbors(x)) {
      if (!on_path[w]) return false;
    }
    return true;
  };
  std::vector<Vertex> path;
  std::vector<std::size_t> next_index;
  for (Vertex s : region) {
    path.assign(1, s);
    next_index.assign(1, 0);
    on_path[s] = 1;
    bool fresh = true;
    while (!path.empty()) {
      if (fresh) {
        fresh = false;
        const std::size_t k = path.size();
        const bool evaluate =
            (k == q || (maximal_end(path.front()) && maximal_end(path.back()))) &&
            path.front() <= path.back() &&
            std::any_of(path.begin(), path.end(), [&](Vertex x) { return relevant[x] != 0; });
        if (evaluate && 2 * count_endpoints(path) < n) {
          for (Vertex x : path) on_path[x] = 0;
          return false;
        }
        if (k == q) {
          on_path[path.back()] = 0;
          path.pop_back();
          next_index.pop_back();
          continue;
        }
      }
      auto nb = f.neighbors(path.back());
      std::size_t& idx = next_index.back();
      bool pushed = false;
      while (idx < nb.size()) {
        const Vertex w = nb[idx++];
        if (on_path[w]) continue;
        on_path[w] = 1;
        path.push_back(w);
        next_index.push_back(0);
        pushed = fresh = true;
        break;
      }
      if (!pushed) {
        on_path[path.back()] = 0;
        path.pop_back();
        next_index.pop_back();
      }
    }
  }
  return true;
}

ExpandingCount count_q_expanding(const Graph& f, std::span<const std::vector<Vertex>> sets,
                                 std::size_t q, std::size_t budget) {
  check_sets(f, sets, q);
  ExpandingCount result;
  const std::size_t n = f.vertex_count();
  for (const auto& s : sets) {
    if (20 * s.size() > n) result.lemma_regime = false;
  }
  std::atomic<std::size_t> next{0}, count{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::size_t v = next++; v < n; v = next++) {
        if (is_q_expanding(f, static_cast<Vertex>(v), sets, q, budget)) ++count;
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = n;
    }
  };
  const std::size_t threads =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(n, 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  result.count = count;
  return result;
}

// ---------------------------------------------------------------------------
// Walk builder

namespace {

class BallCache {
 public:
  BallCache(const Graph& f, std::size_t radius) : radius_(radius), make_(f, radius) {}

  /// True when dist(a, b) < avoid radius, i.e. b lies in the closed ball of
  /// radius avoid_radius - 1 around a.
  bool near(Vertex a, Vertex b) {
    if (a == b) return true;
    if (radius_ == 0) return false;
    const auto& bl = get(a);
    return std::binary_search(bl.begin(), bl.end(), b);
  }

  const std::vector<Vertex>& get(Vertex a) {
    auto it = cache_.find(a);
    if (it == cache_.end()) it = cache_.emplace(a, make_(a)).first;
    return it->second;
  }

 private:
  std::size_t radius_;
  BallMaker make_;
  std::unordered_map<Vertex, std::vector<Vertex>> cache_;
};

class WalkSearch {
 public:
  WalkSearch(const Graph& f, const ConstraintSchedule& schedule, const WalkParams& params,
             const WalkOptions& options)
      : f_(f),
        sigma_(schedule),
        p_(params),
        options_(options),
        balls_(f, params.avoid_radius - 1),
        usage_(f.vertex_count(), 0) {}

  std::size_t window_start(std::size_t t) const {
    const std::size_t k = t / p_.step;
    return k == 0 ? 0 : (k - 1) * p_.step;
  }

  bool admissible(std::size_t t, Vertex c) {
    if (c >= f_.vertex_count()) return false;
    if (usage_[c] >= p_.usage_cap) return false;
    if (t > 0 && !f_.has_edge(placed_[t - 1], c)) return false;
    for (std::size_t s = window_start(t); s < t; ++s) {
      if (placed_[s] == c) return false;
    }
    for (std::size_t tp : sigma_.at(t)) {
      if (balls_.near(placed_[tp], c)) return false;
    }
    if (options_.extra && !options_.extra(t, c, std::span<const Vertex>(placed_.data(), t))) {
      return false;
    }
    return true;
  }

  std::vector<Vertex> candidates(std::size_t t) {
    std::vector<Vertex> out;
    if (t == 0) {
      for (Vertex c = 0; c < f_.vertex_count(); ++c) {
        if (admissible(0, c)) out.push_back(c);
      }
    } else {
      for (Vertex c : f_.neighbors(placed_[t - 1])) {
        if (admissible(t, c)) out.push_back(c);
      }
    }
    std::stable_sort(out.begin(), out.end(),
                     [&](Vertex a, Vertex b) { return usage_[a] < usage_[b]; });
    return out;
  }

  void place(Vertex c) {
    placed_.push_back(c);
    ++usage_[c];
  }

  void unplace() {
    --usage_[placed_.back()];
    placed_.pop_back();
  }

  WalkStuckError stuck(const std::string& why, const std::vector<Vertex>& deepest) {
    WalkStuckError::Blocking b;
    const std::size_t t = deepest.size();
    b.position = t;
    b.block = t / p_.step;
    std::vector<std::size_t> use(f_.vertex_count(), 0);
    for (Vertex x : deepest) ++use[x];
    b.saturated = static_cast<std::size_t>(
        std::count_if(use.begin(), use.end(), [&](std::size_t u) { return u >= p_.usage_cap; }));
    if (t < sigma_.size()) {
      std::vector<Vertex> forbidden;
      for (std::size_t tp : sigma_.at(t)) {
        forbidden.push_back(deepest[tp]);
        const auto& bl = balls_.get(deepest[tp]);
        forbidden.insert(forbidden.end(), bl.begin(), bl.end());
      }
      std::sort(forbidden.begin(), forbidden.end());
      b.scheduled_forbidden = static_cast<std::size_t>(
          std::unique(forbidden.begin(), forbidden.end()) - forbidden.begin());
    }
    b.window = t - window_start(t);
    return WalkStuckError(why + " at position " + str(t) + " (block " + str(b.block) +
                              "): |D| = " + str(b.scheduled_forbidden) +
                              ", |A| = " + str(b.saturated) + ", window = " + str(b.window),
                          b, deepest);
  }

  std::vector<Vertex> run(std::size_t budget) {
    const std::size_t n = sigma_.size();
    placed_.reserve(n);
    for (std::size_t t = 0; t < options_.prefix.size(); ++t) {
      if (!admissible(t, options_.prefix[t])) {
        throw ArgumentError("walk prefix is not admissible at position " + str(t));
      }
      place(options_.prefix[t]);
    }
    const std::size_t fixed = placed_.size();
    if (fixed >= n) {
      placed_.resize(n);
      return placed_;
    }
    struct Frame {
      std::vector<Vertex> cands;
      std::size_t next = 0;
    };
    std::vector<Frame> frames;
    frames.push_back({candidates(fixed), 0});
    std::vector<Vertex> deepest = placed_;
    std::size_t assignments = 0;
    while (placed_.size() < n) {
      Frame& fr = frames.back();
      if (fr.next == fr.cands.size()) {
        if (placed_.size() > deepest.size() || deepest.size() == fixed) deepest = placed_;
        frames.pop_back();
        if (frames.empty()) throw stuck("no admissible walk extends the prefix", deepest);
        unplace();
        continue;
      }
      const Vertex c = fr.cands[fr.next++];
      if (++assignments > budget) {
        if (placed_.size() > deepest.size()) deepest = placed_;
        throw stuck("search budget of " + str(budget) + " assignments exhausted", deepest);
      }
      place(c);
      if (placed_.size() < n) frames.push_back({candidates(placed_.size()), 0});
    }
    return placed_;
  }

  const std::vector<std::size_t>& usage() const { return usage_; }

 private:
  const Graph& f_;
  const ConstraintSchedule& sigma_;
  WalkParams p_;
  const WalkOptions& options_;
  BallCache balls_;
  std::vector<std::size_t> usage_;
  std::vector<Vertex> placed_;
};

}  // namespace

WalkMap build_walk_map(const Graph& f, const ConstraintSchedule& schedule,
                       const WalkParams& params, std::size_t search_budget,
                       const WalkOptions& options) {
  params.validate();
  if (params.ell != f.vertex_count()) {
    throw ArgumentError("walk parameters say ell = " + str(params.ell) + " but F has " +
                        str(f.vertex_count()) + " vertices");
  }
  schedule.validate(params.step, params.sigma_cap);
  const std::size_t n = schedule.size();
  if ((n + params.ell - 1) / params.ell > params.usage_cap) {
    throw ArgumentError("walk of length " + str(n) + " cannot respect usage cap " +
                        str(params.usage_cap) + " on " + str(params.ell) + " vertices");
  }
  if (options.prefix.size() > n) throw ArgumentError("walk prefix longer than the walk");

  WalkSearch search(f, schedule, params, options);
  WalkMap wm;
  wm.assignment = search.run(search_budget);
  wm.schedule = schedule;
  wm.usage = search.usage();
  const WalkReport report = verify_walk_map(f, schedule, params, wm);
  if (!report.ok()) {
    throw IntegrityError("constructed walk fails verification: " +
                         report.violations.front().detail);
  }
  return wm;
}

// ---------------------------------------------------------------------------
// Verification

std::string to_string(WalkProperty p) {
  switch (p) {
    case WalkProperty::kShape: return "shape";
    case WalkProperty::kF1: return "F1";
    case WalkProperty::kF2: return "F2";
    case WalkProperty::kF3: return "F3";
  }
  return "unknown";
}

std::size_t WalkReport::count(WalkProperty p) const {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(), [p](const WalkViolation& v) { return v.property == p; }));
}

WalkReport verify_walk_map(const Graph& f, const ConstraintSchedule& schedule,
                           const WalkParams& params, const WalkMap& wm) {
  WalkReport report;
  auto add = [&](WalkProperty p, std::size_t where, std::string detail) {
    report.violations.push_back({p, where, std::move(detail)});
  };
  const std::size_t n = schedule.size();
  const std::size_t ell = f.vertex_count();
  const auto& a = wm.assignment;
  if (a.size() != n) {
    add(WalkProperty::kShape, 0, "assignment has " + str(a.size()) + " entries, schedule has " + str(n));
    return report;
  }
  for (std::size_t t = 0; t < n; ++t) {
    if (a[t] >= ell) {
      add(WalkProperty::kShape, t, "f(" + str(t) + ") = " + str(a[t]) + " is not a vertex of F");
      return report;
    }
  }
  if (!(wm.schedule == schedule)) add(WalkProperty::kShape, 0, "walk map carries a different schedule");

  std::vector<std::size_t> hist(ell, 0);
  for (Vertex x : a) ++hist[x];
  if (!wm.usage.empty() && wm.usage != hist) {
    add(WalkProperty::kShape, 0, "stored usage counts disagree with the assignment");
  }
  for (Vertex x = 0; x < ell; ++x) {
    if (hist[x] > params.usage_cap) {
      add(WalkProperty::kF1, x, "vertex " + str(x) + " used " + str(hist[x]) + " times, cap " +
                                    str(params.usage_cap));
    }
  }

  // Balls of radius avoid_radius - 1, recomputed here rather than shared
  // with the builder.
  std::unordered_map<Vertex, std::vector<Vertex>> near;
  BallMaker make_ball(f, params.avoid_radius > 0 ? params.avoid_radius - 1 : 0);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t tp : schedule.at(t)) {
      if (tp >= n) {
        add(WalkProperty::kShape, t, "sigma(" + str(t) + ") names index " + str(tp));
        continue;
      }
      bool close = a[t] == a[tp];
      if (!close && params.avoid_radius > 1) {
        auto it = near.find(a[tp]);
        if (it == near.end()) it = near.emplace(a[tp], make_ball(a[tp])).first;
        close = std::binary_search(it->second.begin(), it->second.end(), a[t]);
      }
      if (close) {
        const auto d = distance(f, a[t], a[tp]);
        add(WalkProperty::kF2, t, "f(" + str(t) + ") = " + str(a[t]) + " is at distance " +
                                      str(d.value_or(0)) + " from f(" + str(tp) + ") = " + str(a[tp]));
      }
    }
  }

  for (std::size_t k = 0; k * params.step < n; ++k) {
    const std::size_t start = k * params.step;
    const std::size_t len = std::min(2 * params.step, n - start);
    std::span<const Vertex> block(a.data() + start, len);
    if (!is_path(f, block)) {
      add(WalkProperty::kF3, k, "block " + str(k) + " (positions " + str(start) + ".." +
                                    str(start + len - 1) + ") is not a path");
    }
  }
  return report;
}

}  // namespace iug
