#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <set>
#include <thread>

#include "ekr/analysis.hpp"

namespace ekr {

// -- Bits ---------------------------------------------------------------------

bool Bits::any() const {
  for (auto w : w_)
    if (w) return true;
  return false;
}

std::size_t Bits::count() const {
  std::size_t c = 0;
  for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::size_t Bits::first() const {
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (w_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(w_[i]));
  return n_;
}

Bits& Bits::operator&=(const Bits& o) {
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
  return *this;
}

Bits& Bits::and_not(const Bits& o) {
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
  return *this;
}

std::vector<std::size_t> Bits::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    auto w = w_[i];
    while (w) {
      out.push_back(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

// -- graph --------------------------------------------------------------------

IntersectionGraph::IntersectionGraph(const Action& action, std::size_t clique_cap, std::size_t enumeration_cap) {
  // stop enumerating as soon as the clique cap is passed
  const ElementSet<Permutation>* found = nullptr;
  try {
    found = &action.elements(std::min(clique_cap, enumeration_cap));
  } catch (const CapExceeded&) {
    if (clique_cap >= enumeration_cap) throw;
    throw CapExceeded("intersection graph would exceed " + std::to_string(clique_cap) +
                          " vertices (clique cap); analyse intersecting subgroups instead",
                      clique_cap + 1);
  }
  const auto& elems = *found;
  vertices_ = elems.elements();
  const auto n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) index_.emplace(vertices_[i], i);
  std::vector<Permutation> conn_inv;
  for (std::size_t i = 1; i < n; ++i) {
    if (vertices_[i].has_fixed_point()) {
      connection_.push_back(i);
      conn_inv.push_back(vertices_[i].inverse());
    }
  }
  // y ~ x iff y = d^-1 x for some non-identity d with a fixed point
  adj_.assign(n, Bits(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& di : conn_inv) adj_[i].set(index_of(di * vertices_[i]));
  }
}

std::size_t IntersectionGraph::index_of(const Permutation& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) throw InvalidArgument("element not in the group: " + format_cycles(g));
  return it->second;
}

std::size_t IntersectionGraph::ratio(std::size_t i, std::size_t j) const {
  return index_of(vertices_[i] * vertices_[j].inverse());
}

Bits IntersectionGraph::derangement_row(std::size_t i) const {
  Bits r(size());
  for (std::size_t j = 0; j < size(); ++j)
    if (j != i && !adj_[i].test(j)) r.set(j);
  return r;
}

// -- set checks ---------------------------------------------------------------

PairCheck is_intersecting_set(const std::vector<Permutation>& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!intersects(s[i], s[j])) return {false, i, j};
  return {};
}

bool is_intersecting_subgroup(const PermGroup& s, std::size_t cap) {
  for (const auto& x : s.elements(cap))
    if (!x.has_fixed_point()) return false;
  return true;
}

StructuralResult intersecting_subgroup_check(const ConstructionResult& c, const std::string& role, std::size_t cap) {
  if (c.structural_intersecting) {
    try {
      return c.structural_intersecting(role);
    } catch (const InvalidArgument&) {
      // not covered structurally; small subgroups are realised below
    }
  }
  const auto& sub = c.subgroup(role);
  StructuralResult r;
  std::vector<Permutation> elems;
  if (sub.is_set) {
    elems = sub.elements;
  } else {
    const PermGroup g(Permutation(c.action.degree()), sub.generators);
    elems = g.elements(cap).elements();
  }
  r.holds = true;
  for (const auto& x : elems) {
    ++r.checked;
    if (!x.has_fixed_point()) {
      r.holds = false;
      r.counterexample = format_cycles(x);
      break;
    }
  }
  return r;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::NotComputed: return "not-computed";
  }
  return "not-computed";
}

bool EkrReport::rho_at_least_one() const { return !rho || rho->num >= rho->den; }

bool EkrReport::rho_within_third() const {
  if (!rho || degree <= 3) return true;
  // rho <= degree/3  <=>  3 num <= degree den
  return static_cast<unsigned __int128>(rho->num) * 3 <= static_cast<unsigned __int128>(degree) * rho->den;
}

// -- clique search --------------------------------------------------------------

namespace {

// Branch and bound over a local graph with greedy colouring bounds (the
// colour-sort scheme of Tomita and San Segundo). Deterministic: colour
// classes depend only on the candidate set, so the first clique of any
// given size in DFS order does not depend on the incumbent history.
class CliqueSearch {
 public:
  explicit CliqueSearch(const std::vector<Bits>& adj) : adj_(adj) {}

  std::size_t best = 0;  // local clique size to beat
  std::size_t stop_at = static_cast<std::size_t>(-1);
  std::vector<std::size_t> witness;
  std::uint64_t nodes = 0;
  std::uint64_t budget = static_cast<std::uint64_t>(-1);
  bool stopped = false;
  std::atomic<std::size_t>* shared_best = nullptr;

  // enumeration mode: collect every clique of exactly `target`
  bool enumerate = false;
  std::size_t target = 0;
  std::size_t limit = 0;
  std::vector<std::vector<std::size_t>> found;

  void colour_sort(Bits p, std::vector<std::size_t>& order, std::vector<std::size_t>& colour) const {
    std::size_t k = 0;
    while (p.any()) {
      ++k;
      Bits q = p;
      while (q.any()) {
        const auto v = q.first();
        q.reset(v);
        q.and_not(adj_[v]);
        p.reset(v);
        order.push_back(v);
        colour.push_back(k);
      }
    }
  }

  std::size_t bound() const {
    if (shared_best) return std::max(best, shared_best->load(std::memory_order_relaxed));
    return best;
  }

  void expand(Bits p) {
    if (++nodes > budget) {
      stopped = true;
      return;
    }
    std::vector<std::size_t> order, colour;
    colour_sort(p, order, colour);
    for (std::size_t i = order.size(); i-- > 0;) {
      if (enumerate) {
        if (cur_.size() + colour[i] < target) return;
      } else if (cur_.size() + colour[i] <= bound()) {
        return;
      }
      const auto v = order[i];
      cur_.push_back(v);
      Bits np = p & adj_[v];
      if (np.any()) {
        expand(std::move(np));
      } else {
        record();
      }
      cur_.pop_back();
      if (stopped) return;
      p.reset(v);
    }
  }

  void start(std::size_t v, Bits p) {
    cur_.assign(1, v);
    if (p.any())
      expand(std::move(p));
    else
      record();
    cur_.clear();
  }

 private:
  void record() {
    if (enumerate) {
      if (cur_.size() == target) {
        found.push_back(cur_);
        if (found.size() > limit) stopped = true;
      }
      return;
    }
    if (cur_.size() > bound()) {
      best = cur_.size();
      witness = cur_;
      if (shared_best) {
        auto seen = shared_best->load();
        while (seen < best && !shared_best->compare_exchange_weak(seen, best)) {
        }
      }
      if (best >= stop_at) stopped = true;
    }
  }

  const std::vector<Bits>& adj_;
  std::vector<std::size_t> cur_;
};

struct Local {
  std::vector<std::size_t> map;  // local -> global vertex
  std::vector<Bits> adj;
};

// Subgraph on `vertices`, renumbered in degeneracy order (densest core first).
Local induced(const std::vector<Bits>& rows, const std::vector<std::size_t>& vertices) {
  const auto m = vertices.size();
  std::vector<std::vector<std::size_t>> nb(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (a != b && rows[a].test(b)) nb[a].push_back(b);
  std::vector<std::size_t> deg(m);
  for (std::size_t a = 0; a < m; ++a) deg[a] = nb[a].size();
  std::vector<bool> gone(m, false);
  std::vector<std::size_t> removal;
  for (std::size_t step = 0; step < m; ++step) {
    std::size_t pick = m;
    for (std::size_t a = 0; a < m; ++a)
      if (!gone[a] && (pick == m || deg[a] < deg[pick])) pick = a;
    gone[pick] = true;
    removal.push_back(pick);
    for (auto b : nb[pick])
      if (!gone[b]) --deg[b];
  }
  std::reverse(removal.begin(), removal.end());
  std::vector<std::size_t> pos(m);
  for (std::size_t i = 0; i < m; ++i) pos[removal[i]] = i;
  Local l;
  l.map.resize(m);
  l.adj.assign(m, Bits(m));
  for (std::size_t a = 0; a < m; ++a) {
    l.map[pos[a]] = vertices[a];
    for (auto b : nb[a]) l.adj[pos[a]].set(pos[b]);
  }
  return l;
}

// rows restricted to `vertices` (still indexed by position in `vertices`)
std::vector<Bits> restrict_rows(const std::vector<Bits>& full, const std::vector<std::size_t>& vertices) {
  std::vector<Bits> out(vertices.size(), Bits(vertices.size()));
  for (std::size_t a = 0; a < vertices.size(); ++a)
    for (std::size_t b = 0; b < vertices.size(); ++b)
      if (full[vertices[a]].test(vertices[b])) out[a].set(b);
  return out;
}

Local neighbourhood_of_identity(const IntersectionGraph& g) {
  std::vector<Bits> rows;
  rows.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) rows.push_back(g.row(i));
  return induced(restrict_rows(rows, g.connection_set()), g.connection_set());
}

struct SearchOutcome {
  std::size_t best;  // local size
  std::vector<std::size_t> witness;
  std::uint64_t nodes;
  bool stopped_by_budget;
};

// Tasks split at the root: branch i takes order[i] with candidates among
// order[0..i-1], exactly as the sequential loop would.
SearchOutcome run_search(const Local& l, std::size_t best, std::size_t stop_at, unsigned workers,
                         std::uint64_t budget = static_cast<std::uint64_t>(-1)) {
  const auto m = l.adj.size();
  if (m == 0) return {best, {}, 0, false};
  if (workers <= 1) {
    CliqueSearch s(l.adj);
    s.best = best;
    s.stop_at = stop_at;
    s.budget = budget;
    Bits all(m);
    for (std::size_t i = 0; i < m; ++i) all.set(i);
    s.expand(all);
    return {s.best, s.witness, s.nodes, s.stopped && s.nodes > budget};
  }
  CliqueSearch root(l.adj);
  std::vector<std::size_t> order, colour;
  Bits all(m);
  for (std::size_t i = 0; i < m; ++i) all.set(i);
  root.colour_sort(all, order, colour);

  std::atomic<std::size_t> shared{best};
  std::atomic<std::size_t> next{0};
  std::atomic<bool> done{false};
  std::mutex mu;
  std::size_t found_best = best;
  std::vector<std::size_t> found_witness;
  auto worker = [&] {
    for (;;) {
      const auto t = next.fetch_add(1);
      if (t >= order.size() || done.load()) return;
      const auto i = order.size() - 1 - t;
      if (colour[i] <= shared.load()) return;
      Bits p(m);
      for (std::size_t j = 0; j < i; ++j) p.set(order[j]);
      p &= l.adj[order[i]];
      CliqueSearch s(l.adj);
      s.shared_best = &shared;
      s.best = shared.load();
      s.stop_at = stop_at;
      s.start(order[i], p);
      if (!s.witness.empty()) {
        std::lock_guard lock(mu);
        if (s.witness.size() > found_best) {
          found_best = s.witness.size();
          found_witness = s.witness;
        }
      }
      if (shared.load() >= stop_at) done = true;
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  // the parallel node total depends on scheduling, so only the sequential
  // pass below is counted
  SearchOutcome out{found_best, found_witness, 0, false};
  if (found_best > best) {
    // the witness must not depend on scheduling: redo the sequential search
    // with the size known, which stops at the first clique of that size
    CliqueSearch s(l.adj);
    s.best = found_best - 1;
    s.stop_at = found_best;
    s.expand(all);
    if (s.best != found_best) throw InternalError("parallel clique search disagrees with sequential pass");
    out.witness = s.witness;
    out.nodes += s.nodes;
  }
  return out;
}

std::vector<std::size_t> indices_through_identity(const IntersectionGraph& g, const std::vector<Permutation>& s) {
  std::vector<std::size_t> out;
  if (s.empty()) return out;
  const auto shift = s.front().inverse();
  for (const auto& x : s) out.push_back(g.index_of(x * shift));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_clique(const IntersectionGraph& g, const std::vector<std::size_t>& s) {
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b)
      if (!g.adjacent(s[a], s[b])) return false;
  return true;
}

std::vector<Permutation> to_perms(const IntersectionGraph& g, std::vector<std::size_t> idx) {
  std::sort(idx.begin(), idx.end());
  std::vector<Permutation> out;
  for (auto i : idx) out.push_back(g.vertices()[i]);
  return out;
}

// Largest derangement clique through the identity we can find within the
// budget. Any such set of size a gives omega <= |G|/a (clique-coclique bound
// for the vertex-transitive intersection graph).
std::vector<std::size_t> derangement_clique(const IntersectionGraph& g, std::size_t degree, std::uint64_t budget) {
  std::vector<std::size_t> der;
  for (std::size_t i = 1; i < g.size(); ++i)
    if (!g.vertices()[i].has_fixed_point()) der.push_back(i);
  std::vector<Bits> rows;
  rows.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) rows.push_back(g.derangement_row(i));
  const auto l = induced(restrict_rows(rows, der), der);
  // a coclique never exceeds the degree
  const auto out = run_search(l, 0, degree - 1, 1, budget);
  std::vector<std::size_t> set{0};
  for (auto v : out.witness) set.push_back(l.map[v]);
  return set;
}

std::uint64_t stabilizer_size(const IntersectionGraph& g) {
  std::uint64_t s = 0;
  for (const auto& x : g.vertices()) s += x[0] == 0;
  return s;
}

}  // namespace

EkrReport max_intersecting(const Action& action, const AnalysisConfig& cfg,
                           const std::vector<std::vector<Permutation>>& seeds) {
  if (!is_transitive(action)) throw InvalidArgument("max_intersecting needs a transitive action");
  const IntersectionGraph g(action, cfg.clique_cap, cfg.enumeration_cap);
  EkrReport r;
  r.degree = action.degree();
  r.group_order = g.size();
  r.stabilizer_order = stabilizer_size(g);

  // lower bound: the stabiliser of 0, or a larger seed
  std::vector<std::size_t> best;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.vertices()[i][0] == 0) best.push_back(i);
  std::string lb_source = "stabilizer";
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    const auto idx = indices_through_identity(g, seeds[k]);
    if (idx.size() > best.size() && is_clique(g, idx)) {
      best = idx;
      lb_source = "seed";
    }
  }

  const auto local = neighbourhood_of_identity(g);
  std::uint64_t ub = local.adj.size() + 1;
  std::string ub_source = "neighbourhood";
  {
    CliqueSearch cs(local.adj);
    std::vector<std::size_t> order, colour;
    Bits all(local.adj.size());
    for (std::size_t i = 0; i < local.adj.size(); ++i) all.set(i);
    cs.colour_sort(all, order, colour);
    const std::uint64_t cb = (colour.empty() ? 0 : colour.back()) + 1;
    if (cb < ub) {
      ub = cb;
      ub_source = "colouring";
    }
  }
  if (best.size() < ub) {
    const auto co = derangement_clique(g, r.degree, std::min<std::uint64_t>(cfg.node_budget, 200'000));
    r.coclique = co.size();
    const std::uint64_t cb = g.size() / co.size();
    if (cb < ub) {
      ub = cb;
      ub_source = "clique-coclique";
    }
  }
  r.upper_bound = ub;

  if (best.size() < ub) {
    const auto out = run_search(local, best.size() - 1, ub - 1, cfg.workers);
    r.nodes = out.nodes;
    if (out.best + 1 > best.size()) {
      best.assign(1, 0);
      for (auto v : out.witness) best.push_back(local.map[v]);
      lb_source = "search";
    }
    r.method = "clique-search";
  } else {
    r.method = lb_source + "+" + ub_source + "-bound";
  }
  if (!is_clique(g, best)) throw InternalError("clique witness failed validation");
  r.max_intersecting = best.size();
  r.witness = to_perms(g, best);
  r.rho = Rational(best.size(), r.stabilizer_order);
  r.ekr = best.size() == r.stabilizer_order ? Verdict::Holds : Verdict::Fails;
  r.extra["lower_bound_source"] = lb_source;
  r.extra["upper_bound_source"] = ub_source;
  return r;
}

namespace {

bool is_point_stabilizer(const std::vector<Permutation>& s, std::uint64_t stab) {
  if (s.size() != stab || s.empty()) return false;
  const auto n = s.front().degree();
  for (std::size_t pt = 0; pt < n; ++pt) {
    bool all = true;
    for (const auto& x : s) all = all && x[pt] == pt;
    if (all) return true;
  }
  return false;
}

}  // namespace

MaximumSets enumerate_maximum_intersecting_sets(const Action& action, std::size_t limit, const AnalysisConfig& cfg) {
  const auto rep = max_intersecting(action, cfg);
  const IntersectionGraph g(action, cfg.clique_cap, cfg.enumeration_cap);
  MaximumSets out;
  out.size = *rep.max_intersecting;
  const auto local = neighbourhood_of_identity(g);
  std::vector<std::vector<std::size_t>> cliques;
  if (out.size == 1) {
    cliques.push_back({0});
  } else {
    CliqueSearch s(local.adj);
    s.enumerate = true;
    s.target = out.size - 1;
    s.limit = limit;
    Bits all(local.adj.size());
    for (std::size_t i = 0; i < local.adj.size(); ++i) all.set(i);
    s.expand(all);
    out.exhausted = !s.stopped;
    for (auto& c : s.found) {
      std::vector<std::size_t> full{0};
      for (auto v : c) full.push_back(local.map[v]);
      std::sort(full.begin(), full.end());
      cliques.push_back(std::move(full));
    }
    if (cliques.size() > limit) cliques.resize(limit);
  }
  std::sort(cliques.begin(), cliques.end());
  for (const auto& c : cliques) {
    TaggedSet t;
    t.elements = to_perms(g, c);
    t.is_coset = is_coset_of_subgroup(t.elements);
    t.is_stabilizer_coset = is_point_stabilizer(t.elements, rep.stabilizer_order);
    out.through_identity.push_back(std::move(t));
  }
  // all maximum sets are the right translates C g
  if (out.exhausted && cliques.size() * g.size() * out.size <= 4'000'000) {
    std::set<std::vector<std::size_t>> all;
    for (const auto& c : cliques) {
      for (std::size_t gi = 0; gi < g.size(); ++gi) {
        std::vector<std::size_t> t;
        for (auto v : c) t.push_back(g.index_of(g.vertices()[v] * g.vertices()[gi]));
        std::sort(t.begin(), t.end());
        all.insert(std::move(t));
      }
    }
    out.total = all.size();
  }
  return out;
}

void strict_ekr_check(const Action& action, EkrReport& report, const AnalysisConfig& cfg) {
  if (!report.max_intersecting) {
    report.strict_ekr = Verdict::NotComputed;
    return;
  }
  if (*report.max_intersecting > report.stabilizer_order) {
    report.strict_ekr = Verdict::Fails;
    report.strict_witness = report.witness;
    return;
  }
  const auto sets = enumerate_maximum_intersecting_sets(action, cfg.enum_limit, cfg);
  report.extra["maximum_sets_through_identity"] = sets.through_identity.size();
  if (sets.total) report.extra["maximum_sets_total"] = *sets.total;
  for (const auto& t : sets.through_identity) {
    if (!t.is_stabilizer_coset) {
      report.strict_ekr = Verdict::Fails;
      report.strict_witness = t.elements;
      return;
    }
  }
  report.strict_ekr = sets.exhausted ? Verdict::Holds : Verdict::NotComputed;
}

std::vector<std::string> cycle_strings(const std::vector<Permutation>& s) {
  std::vector<std::string> out;
  out.reserve(s.size());
  for (const auto& x : s) out.push_back(format_cycles(x));
  return out;
}

}  // namespace ekr
