#include "pav/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>

namespace pav {

namespace {

struct ConfigHash {
  size_t operator()(const Configuration& c) const {
    size_t h = 1469598103934665603ull;
    for (int x : c) h = (h ^ static_cast<size_t>(x + 1)) * 1099511628211ull;
    return h;
  }
};

}  // namespace

Behavior::Behavior(const GroundSystem& g, const std::vector<ComponentType>& components) {
  for (const auto& [n, ty] : g.instances) {
    const ComponentType* c = nullptr;
    for (const auto& ct : components)
      if (ct.name == ty) c = &ct;
    if (!c) throw Error("UnknownComponent", ty);
    nodes_.push_back(n);
    types_.push_back(c);
    auto it = g.init.find(n);
    init_.push_back(c->state_index(it == g.init.end() ? c->init : it->second));
  }
  for (const auto& inter : g.arch) {
    std::vector<Part> ps;
    for (const auto& p : inter) {
      int i = index_of(p.sym);
      if (i < 0) throw Error("DanglingPort", p.port + "(" + node_name(p.sym) + ")");
      const Transition* tr = types_[i]->rule_for(p.port);
      if (!tr) throw Error("PortWithoutTransition", p.port);
      ps.push_back(Part{i, types_[i]->state_index(tr->pre), types_[i]->state_index(tr->post)});
    }
    inters_.push_back(inter);
    parts_.push_back(ps);
  }
}

int Behavior::index_of(const Node& n) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), n);
  return (it != nodes_.end() && *it == n) ? static_cast<int>(it - nodes_.begin()) : -1;
}

int Behavior::interaction_index(const GroundInteraction& pi) const {
  auto it = std::lower_bound(inters_.begin(), inters_.end(), pi);
  if (it == inters_.end() || *it != pi) throw Error("UnknownInteraction", "interaction not in the architecture");
  return static_cast<int>(it - inters_.begin());
}

bool Behavior::enabled(const Configuration& s, int k) const {
  for (const auto& p : parts_[k])
    if (s[p.inst] != p.pre) return false;
  return true;
}

Configuration Behavior::fire(const Configuration& s, int k) const {
  Configuration t = s;
  for (const auto& p : parts_[k]) t[p.inst] = p.post;
  return t;
}

bool Behavior::enabled(const Configuration& s, const GroundInteraction& pi) const {
  return enabled(s, interaction_index(pi));
}
Configuration Behavior::fire(const Configuration& s, const GroundInteraction& pi) const {
  return fire(s, interaction_index(pi));
}

bool Behavior::deadlocked(const Configuration& s) const {
  for (size_t k = 0; k < parts_.size(); ++k)
    if (enabled(s, static_cast<int>(k))) return false;
  return true;
}

std::map<Node, std::string> Behavior::named(const Configuration& s) const {
  std::map<Node, std::string> m;
  for (size_t i = 0; i < nodes_.size(); ++i) m[nodes_[i]] = types_[i]->states.at(s[i]);
  return m;
}

Configuration Behavior::from_named(const std::map<Node, std::string>& m) const {
  Configuration c(nodes_.size());
  for (size_t i = 0; i < nodes_.size(); ++i) {
    auto it = m.find(nodes_[i]);
    if (it == m.end()) throw Error("PartialConfiguration", node_name(nodes_[i]));
    c[i] = types_[i]->state_index(it->second);
    if (c[i] < 0) throw Error("UnknownState", it->second);
  }
  return c;
}

PlaceSet Behavior::support(const Configuration& s) const {
  PlaceSet p;
  for (size_t i = 0; i < nodes_.size(); ++i) p.insert({nodes_[i], types_[i]->states.at(s[i])});
  return p;
}

PlaceSet Behavior::all_places() const {
  PlaceSet p;
  for (size_t i = 0; i < nodes_.size(); ++i)
    for (const auto& st : types_[i]->states) p.insert({nodes_[i], st});
  return p;
}

PlaceSet Behavior::pre(int k) const {
  PlaceSet p;
  for (const auto& x : parts_[k]) p.insert({nodes_[x.inst], types_[x.inst]->states[x.pre]});
  return p;
}

PlaceSet Behavior::post(int k) const {
  PlaceSet p;
  for (const auto& x : parts_[k]) p.insert({nodes_[x.inst], types_[x.inst]->states[x.post]});
  return p;
}

bool Behavior::is_trap(const PlaceSet& theta) const {
  for (size_t k = 0; k < parts_.size(); ++k) {
    bool hit_pre = false, hit_post = false;
    for (const auto& x : parts_[k]) {
      hit_pre |= theta.count({nodes_[x.inst], types_[x.inst]->states[x.pre]}) > 0;
      hit_post |= theta.count({nodes_[x.inst], types_[x.inst]->states[x.post]}) > 0;
    }
    if (hit_pre && !hit_post) return false;
  }
  return true;
}

bool Behavior::is_marked(const PlaceSet& theta) const {
  for (size_t i = 0; i < nodes_.size(); ++i)
    if (theta.count({nodes_[i], types_[i]->states[init_[i]]})) return true;
  return false;
}

namespace {

struct Offsets {
  std::vector<int> at;
  int total = 0;
};

}  // namespace

static Offsets offsets_of(const std::vector<const ComponentType*>& types) {
  Offsets o;
  for (const auto* t : types) {
    o.at.push_back(o.total);
    o.total += static_cast<int>(t->states.size());
  }
  return o;
}

void Behavior::shrink_to_trap(std::vector<char>& in, const std::vector<int>& offset) const {
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& ps : parts_) {
      bool hit_pre = false, hit_post = false;
      for (const auto& x : ps) {
        hit_pre |= in[offset[x.inst] + x.pre] != 0;
        hit_post |= in[offset[x.inst] + x.post] != 0;
      }
      if (hit_pre && !hit_post) {
        for (const auto& x : ps) in[offset[x.inst] + x.pre] = 0;
        changed = true;
      }
    }
  }
}

PlaceSet Behavior::maximal_trap_within(const PlaceSet& q) const {
  Offsets o = offsets_of(types_);
  std::vector<char> in(o.total, 0);
  for (size_t i = 0; i < nodes_.size(); ++i)
    for (size_t s = 0; s < types_[i]->states.size(); ++s)
      in[o.at[i] + s] = q.count({nodes_[i], types_[i]->states[s]}) > 0;
  shrink_to_trap(in, o.at);
  PlaceSet out;
  for (size_t i = 0; i < nodes_.size(); ++i)
    for (size_t s = 0; s < types_[i]->states.size(); ++s)
      if (in[o.at[i] + s]) out.insert({nodes_[i], types_[i]->states[s]});
  return out;
}

bool Behavior::trap_invariant_holds(const Configuration& s) const {
  Offsets o = offsets_of(types_);
  std::vector<char> in(o.total, 1);
  for (size_t i = 0; i < nodes_.size(); ++i) in[o.at[i] + s[i]] = 0;
  shrink_to_trap(in, o.at);
  for (size_t i = 0; i < nodes_.size(); ++i)
    if (in[o.at[i] + init_[i]]) return false;
  return true;
}

bool Behavior::matches_pattern(const Configuration& s, const SafetyQuery& q) const {
  std::vector<char> used(nodes_.size(), 0);
  std::function<bool(size_t)> place = [&](size_t k) {
    if (k == q.pattern.size()) return true;
    const auto& [ty, st] = q.pattern[k];
    for (size_t i = 0; i < nodes_.size(); ++i) {
      if (used[i] || types_[i]->name != ty || types_[i]->states[s[i]] != st) continue;
      used[i] = 1;
      if (place(k + 1)) return true;
      used[i] = 0;
    }
    return false;
  };
  return place(0);
}

bool Behavior::is_bad(const Configuration& s, const SafetyQuery& q) const {
  return q.kind == SafetyQuery::Kind::Deadlock ? deadlocked(s) : matches_pattern(s, q);
}

std::vector<int> ReachResult::path_to(int idx) const {
  std::vector<int> p;
  for (int i = idx; i > 0; i = parent[i]) p.push_back(via[i]);
  std::reverse(p.begin(), p.end());
  return p;
}

ReachResult reachable(const Behavior& b, long limit) {
  ReachResult r;
  std::unordered_map<Configuration, int, ConfigHash> seen;
  r.configs.push_back(b.initial());
  r.parent.push_back(-1);
  r.via.push_back(-1);
  seen[b.initial()] = 0;
  int n_inter = static_cast<int>(b.interactions().size());
  for (size_t head = 0; head < r.configs.size(); ++head) {
    for (int k = 0; k < n_inter; ++k) {
      if (!b.enabled(r.configs[head], k)) continue;
      Configuration t = b.fire(r.configs[head], k);
      if (seen.count(t)) continue;
      if (static_cast<long>(r.configs.size()) >= limit) {
        r.overflow = true;
        return r;
      }
      seen.emplace(t, static_cast<int>(r.configs.size()));
      r.configs.push_back(t);
      r.parent.push_back(static_cast<int>(head));
      r.via.push_back(k);
    }
  }
  return r;
}

std::string verdict_name(GroundVerdict::Kind k) {
  switch (k) {
    case GroundVerdict::Kind::SafeProved:
      return "safe-proved";
    case GroundVerdict::Kind::UnsafeWitness:
      return "unsafe-witness";
    case GroundVerdict::Kind::Inconclusive:
      return "inconclusive";
    case GroundVerdict::Kind::Overflow:
      return "overflow";
  }
  return "?";
}

bool trap_method_proves(const Behavior& b, const SafetyQuery& q, std::optional<Configuration>* cex) {
  int n = b.n_instances();
  Configuration s(n, 0);
  // interactions grouped by their last participant, for early pruning
  std::vector<std::vector<int>> closing(n);
  for (size_t k = 0; k < b.interactions().size(); ++k) {
    int last = -1;
    for (const auto& p : b.interactions()[k]) {
      int i = static_cast<int>(std::lower_bound(b.nodes().begin(), b.nodes().end(), p.sym) - b.nodes().begin());
      last = std::max(last, i);
    }
    if (last >= 0) closing[last].push_back(static_cast<int>(k));
  }
  bool deadlock = q.kind == SafetyQuery::Kind::Deadlock;
  std::function<bool(int)> rec = [&](int i) -> bool {  // true = counterexample found
    if (i == n) {
      if (!deadlock && !b.matches_pattern(s, q)) return false;
      if (!b.trap_invariant_holds(s)) return false;
      if (cex) *cex = s;
      return true;
    }
    int ns = static_cast<int>(b.type_of(i).states.size());
    for (int st = 0; st < ns; ++st) {
      s[i] = st;
      bool ok = true;
      if (deadlock)
        for (int k : closing[i])
          if (b.enabled(s, k)) {
            ok = false;
            break;
          }
      if (ok && rec(i + 1)) return true;
    }
    return false;
  };
  return !rec(0);
}

GroundVerdict verify_ground(const Behavior& b, const SafetyQuery& q, long limit) {
  GroundVerdict v;
  ReachResult r = reachable(b, limit);
  v.explored = static_cast<long>(r.configs.size());
  for (size_t i = 0; i < r.configs.size(); ++i) {
    if (!b.is_bad(r.configs[i], q)) continue;
    for (int k : r.path_to(static_cast<int>(i))) v.witness.push_back(b.interactions()[k]);
    v.exact_safe = false;
    v.kind = GroundVerdict::Kind::UnsafeWitness;
    break;
  }
  std::optional<Configuration> cex;
  v.trap_proved = trap_method_proves(b, q, &cex);
  v.bad_in_theta = cex;
  if (v.kind == GroundVerdict::Kind::UnsafeWitness) {
    if (v.trap_proved) throw Error("InternalError", "trap method proved a reachable bad configuration away");
    return v;
  }
  if (!r.overflow) v.exact_safe = true;
  if (v.trap_proved)
    v.kind = GroundVerdict::Kind::SafeProved;
  else
    v.kind = r.overflow ? GroundVerdict::Kind::Overflow : GroundVerdict::Kind::Inconclusive;
  return v;
}

}  // namespace pav
