#include "pav/eval.hpp"

#include <algorithm>
#include <bitset>
#include <climits>
#include <functional>
#include <unordered_map>

#include "pav/sat.hpp"

namespace pav {

namespace {

constexpr int kMaxNodes = 1024;
using NodeSet = std::bitset<kMaxNodes>;
constexpr int kUnknown = INT_MIN;

struct CTerm {
  int var = -1;  // -1: root constant
  std::vector<int> succ;
};

struct CN {
  FK kind;
  CTerm t1, t2;
  int slot = -1;
  std::vector<int> kids;
  std::vector<int> ffo, fso;  // sorted slots of free variables
  bool soq = false;           // contains a set quantifier
  int neg_body = -1;          // All2: negation of the innermost body of the block
};

bool has(const std::vector<int>& v, int x) { return std::binary_search(v.begin(), v.end(), x); }

template <class Fn>
void for_bits(const NodeSet& s, Fn fn) {
  for (size_t i = s._Find_first(); i < s.size(); i = s._Find_next(i)) fn(static_cast<int>(i));
}

struct Guard {
  NodeSet T;  // outside T the formula is true
  NodeSet F;  // outside F the formula is false
};

using Callback = std::function<bool()>;  // false stops the enumeration

}  // namespace

struct BoundedEvaluator::Impl {
  EvalOptions opt;
  int kappa = 1;
  int budget = 0;
  int nesting = 0;

  std::vector<Node> nodes;
  std::unordered_map<Node, int> index;
  std::vector<int> child, parent, digit, depth;
  NodeSet univ;

  std::vector<CN> cn;
  int root = -1;
  std::map<std::string, int> fo_slot, so_slot;
  std::vector<std::string> fo_name, so_name;
  std::vector<NodeSet> user_carrier;

  std::vector<int> fo;
  std::vector<NodeSet> so;
  std::vector<char> known;
  std::vector<NodeSet> carrier;

  std::unordered_map<std::string, bool> memo_bool;
  std::unordered_map<std::string, std::vector<std::vector<NodeSet>>> memo_models;
  EvalStats stats;

  // ---- domain -------------------------------------------------------------

  void build_domain() {
    nodes.push_back("");
    parent.push_back(-1);
    digit.push_back(-1);
    depth.push_back(0);
    size_t level_begin = 0;
    for (int d = 1; d <= budget; ++d) {
      size_t level_end = nodes.size();
      for (size_t p = level_begin; p < level_end; ++p)
        for (int a = 0; a < kappa; ++a) {
          if (nodes.size() >= static_cast<size_t>(kMaxNodes))
            throw Error("BudgetExceeded", "window of depth " + std::to_string(budget) + " has more than " +
                                              std::to_string(kMaxNodes) + " nodes");
          nodes.push_back(child_name(nodes[p], a));
          parent.push_back(static_cast<int>(p));
          digit.push_back(a);
          depth.push_back(d);
        }
      level_begin = level_end;
    }
    child.assign(nodes.size() * kappa, -1);
    for (size_t i = 1; i < nodes.size(); ++i) child[parent[i] * kappa + digit[i]] = static_cast<int>(i);
    for (size_t i = 0; i < nodes.size(); ++i) {
      index[nodes[i]] = static_cast<int>(i);
      univ.set(i);
    }
  }

  static Node child_name(const Node& n, int a) { return pav::child(n, a); }

  int node_id(const Node& n) const {
    for (char ch : n)
      if (ch < '0' || ch - '0' >= kappa) throw Error("BadNode", "node " + node_name(n) + " is not over [0," + std::to_string(kappa - 1) + "]");
    auto it = index.find(n);
    if (it == index.end()) throw Error("BudgetExceeded", "node " + node_name(n) + " is deeper than the budget");
    return it->second;
  }

  NodeSet to_set(const std::set<Node>& s) const {
    NodeSet r;
    for (const auto& n : s) r.set(node_id(n));
    return r;
  }

  std::set<Node> from_set(const NodeSet& s) const {
    std::set<Node> r;
    for_bits(s, [&](int i) { r.insert(nodes[i]); });
    return r;
  }

  // ---- compilation --------------------------------------------------------

  int fo_slot_of(const std::string& v) {
    auto it = fo_slot.find(v);
    if (it != fo_slot.end()) return it->second;
    int s = static_cast<int>(fo_name.size());
    fo_slot[v] = s;
    fo_name.push_back(v);
    return s;
  }

  int so_slot_of(const std::string& v) {
    auto it = so_slot.find(v);
    if (it != so_slot.end()) return it->second;
    int s = static_cast<int>(so_name.size());
    so_slot[v] = s;
    so_name.push_back(v);
    return s;
  }

  CTerm cterm(const FTerm& t) {
    CTerm r;
    r.var = t.var.empty() ? -1 : fo_slot_of(t.var);
    r.succ = t.succ;
    return r;
  }

  int compile(const FormulaPtr& f, std::unordered_map<const Formula*, int>& memo) {
    auto it = memo.find(f.get());
    if (it != memo.end()) return it->second;
    CN c;
    c.kind = f->kind;
    std::set<int> ffo, fso;
    switch (f->kind) {
      case FK::True:
      case FK::False:
        break;
      case FK::Eq:
        c.t1 = cterm(f->t1);
        c.t2 = cterm(f->t2);
        if (c.t1.var >= 0) ffo.insert(c.t1.var);
        if (c.t2.var >= 0) ffo.insert(c.t2.var);
        break;
      case FK::In:
        c.t1 = cterm(f->t1);
        c.slot = so_slot_of(f->var);
        if (c.t1.var >= 0) ffo.insert(c.t1.var);
        fso.insert(c.slot);
        break;
      default: {
        bool fo_q = f->kind == FK::Ex1 || f->kind == FK::All1;
        bool so_q = f->kind == FK::Ex2 || f->kind == FK::All2;
        if (fo_q) c.slot = fo_slot_of(f->var);
        if (so_q) c.slot = so_slot_of(f->var);
        for (const auto& k : f->kids) {
          int id = compile(k, memo);
          c.kids.push_back(id);
          ffo.insert(cn[id].ffo.begin(), cn[id].ffo.end());
          fso.insert(cn[id].fso.begin(), cn[id].fso.end());
          c.soq |= cn[id].soq;
        }
        if (fo_q) ffo.erase(c.slot);
        if (so_q) {
          fso.erase(c.slot);
          c.soq = true;
        }
        if (f->kind == FK::All2) {
          const CN& body = cn[c.kids[0]];
          if (body.kind == FK::All2) {
            c.neg_body = body.neg_body;
          } else {
            CN neg;
            neg.kind = FK::Not;
            neg.kids = {c.kids[0]};
            neg.ffo = body.ffo;
            neg.fso = body.fso;
            neg.soq = body.soq;
            cn.push_back(neg);
            c.neg_body = static_cast<int>(cn.size()) - 1;
          }
        }
      }
    }
    c.ffo.assign(ffo.begin(), ffo.end());
    c.fso.assign(fso.begin(), fso.end());
    cn.push_back(std::move(c));
    int id = static_cast<int>(cn.size()) - 1;
    memo[f.get()] = id;
    return id;
  }

  void size_env() {
    fo.assign(fo_name.size(), kUnknown);
    so.resize(so_name.size());
    known.resize(so_name.size(), 0);
    carrier.resize(so_name.size(), univ);
    user_carrier.resize(so_name.size(), univ);
  }

  // ---- terms and guards ---------------------------------------------------

  int succ_of(int v, int a) const {
    if (v < 0) throw Error("BudgetExceeded", "successor term leaves the window by more than one level");
    int c = child[v * kappa + a];
    return c >= 0 ? c : -1 - (v * kappa + a);
  }

  bool term_known(const CTerm& t) const { return t.var < 0 || fo[t.var] != kUnknown; }

  int tval(const CTerm& t) const {
    int v = t.var < 0 ? 0 : fo[t.var];
    if (v == kUnknown) throw Error("InternalError", "unbound first-order variable " + fo_name[t.var]);
    for (int a : t.succ) v = succ_of(v, a);
    return v;
  }

  // The window node v with succ-chain(v) = w, or -1.
  int solve_chain(const std::vector<int>& succ, int w) const {
    for (auto it = succ.rbegin(); it != succ.rend(); ++it) {
      int a = *it;
      if (w >= 0) {
        if (depth[w] == 0 || digit[w] != a) return -1;
        w = parent[w];
      } else {
        int code = -1 - w;
        if (code % kappa != a) return -1;
        w = code / kappa;
      }
    }
    return w >= 0 ? w : -1;
  }

  NodeSet preimage(const NodeSet& s, const std::vector<int>& succ) const {
    if (succ.empty()) return s & univ;
    NodeSet r;
    for_bits(s, [&](int id) {
      int p = solve_chain(succ, id);
      if (p >= 0) r.set(p);
    });
    return r;
  }

  void block_of(int n, std::vector<int>& slots, int& body) const {
    FK k = cn[n].kind;
    body = n;
    while (cn[body].kind == k) {
      slots.push_back(cn[body].slot);
      body = cn[body].kids[0];
    }
  }

  struct Saved {
    std::vector<int> slots;
    std::vector<char> known;
    std::vector<NodeSet> so, carrier;
  };

  Saved save(const std::vector<int>& slots) const {
    Saved s;
    s.slots = slots;
    for (int x : slots) {
      s.known.push_back(known[x]);
      s.so.push_back(so[x]);
      s.carrier.push_back(carrier[x]);
    }
    return s;
  }

  void restore(const Saved& s) {
    for (size_t i = 0; i < s.slots.size(); ++i) {
      known[s.slots[i]] = s.known[i];
      so[s.slots[i]] = s.so[i];
      carrier[s.slots[i]] = s.carrier[i];
    }
  }

  void flatten_and(int n, std::vector<int>& out) const {
    if (cn[n].kind == FK::And)
      out.insert(out.end(), cn[n].kids.begin(), cn[n].kids.end());
    else
      out.push_back(n);
  }

  // Carriers of freshly bound set variables, narrowed by conjuncts of the
  // shape  all1 w. V(w) -> W(w)  with W known.
  void bind_block(const std::vector<int>& slots, int body) {
    for (int s : slots) {
      known[s] = 0;
      carrier[s] = user_carrier[s];
    }
    std::vector<int> conj;
    flatten_and(body, conj);
    for (int k : conj) {
      const CN& c = cn[k];
      if (c.kind != FK::All1) continue;
      const CN& b = cn[c.kids[0]];
      if (b.kind != FK::Implies) continue;
      const CN& p = cn[b.kids[0]];
      const CN& q = cn[b.kids[1]];
      if (p.kind != FK::In || q.kind != FK::In) continue;
      if (p.t1.var != c.slot || !p.t1.succ.empty() || q.t1.var != c.slot || !q.t1.succ.empty()) continue;
      if (std::find(slots.begin(), slots.end(), p.slot) == slots.end() || !known[q.slot]) continue;
      carrier[p.slot] &= so[q.slot];
    }
  }

  Guard guard(int n, int v) {
    const CN& c = cn[n];
    if (!has(c.ffo, v)) return {univ, univ};
    switch (c.kind) {
      case FK::Eq: {
        const CTerm* a = &c.t1;
        const CTerm* b = &c.t2;
        if (b->var == v) std::swap(a, b);
        if (a->var != v || b->var == v || !term_known(*b)) return {univ, univ};
        NodeSet F;
        int s = solve_chain(a->succ, tval(*b));
        if (s >= 0) F.set(s);
        return {univ & ~F, F};
      }
      case FK::In: {
        if (known[c.slot]) {
          NodeSet F = preimage(so[c.slot], c.t1.succ);
          return {univ & ~F, F};
        }
        return {univ, preimage(carrier[c.slot], c.t1.succ)};
      }
      case FK::Not: {
        Guard g = guard(c.kids[0], v);
        return {g.F, g.T};
      }
      case FK::And: {
        Guard r{NodeSet(), univ};
        for (int k : c.kids) {
          Guard g = guard(k, v);
          r.T |= g.T;
          r.F &= g.F;
        }
        return r;
      }
      case FK::Or: {
        Guard r{univ, NodeSet()};
        for (int k : c.kids) {
          Guard g = guard(k, v);
          r.T &= g.T;
          r.F |= g.F;
        }
        return r;
      }
      case FK::Implies: {
        Guard a = guard(c.kids[0], v), b = guard(c.kids[1], v);
        return {a.F & b.T, a.T | b.F};
      }
      case FK::Iff: {
        Guard a = guard(c.kids[0], v), b = guard(c.kids[1], v);
        return {(a.F & b.T) | (a.T & b.F), (a.F & b.F) | (a.T & b.T)};
      }
      case FK::Ex1:
      case FK::All1: {
        int saved = fo[c.slot];
        fo[c.slot] = kUnknown;
        Guard g = guard(c.kids[0], v);
        fo[c.slot] = saved;
        return g;
      }
      case FK::Ex2:
      case FK::All2: {
        std::vector<int> slots;
        int body;
        block_of(n, slots, body);
        Saved sv = save(slots);
        bind_block(slots, body);
        Guard g = guard(body, v);
        restore(sv);
        return g;
      }
      default:
        return {univ, univ};
    }
  }

  // ---- memo keys ----------------------------------------------------------

  std::string key(char tag, int n, const std::vector<int>* targets) const {
    std::string k(1, tag);
    k += std::to_string(n);
    k += '|';
    if (targets)
      for (int t : *targets) k += std::to_string(t) + ",";
    k += '|';
    for (int s : cn[n].ffo) k += std::to_string(fo[s]) + ",";
    k += '|';
    for (int s : cn[n].fso) {
      if (targets && std::find(targets->begin(), targets->end(), s) != targets->end()) continue;
      if (!known[s]) {
        k += "?;";
        continue;
      }
      for_bits(so[s], [&](int i) { k += std::to_string(i) + ","; });
      k += ';';
    }
    return k;
  }

  // ---- evaluation ---------------------------------------------------------

  bool ev(int n) {
    const CN& c = cn[n];
    switch (c.kind) {
      case FK::True:
        return true;
      case FK::False:
        return false;
      case FK::Eq:
        return tval(c.t1) == tval(c.t2);
      case FK::In: {
        if (!known[c.slot]) throw Error("InternalError", "set variable " + so_name[c.slot] + " has no value");
        int v = tval(c.t1);
        return v >= 0 && so[c.slot][v];
      }
      case FK::Not:
        return !ev(c.kids[0]);
      case FK::And:
        for (int k : c.kids)
          if (!ev(k)) return false;
        return true;
      case FK::Or:
        for (int k : c.kids)
          if (ev(k)) return true;
        return false;
      case FK::Implies:
        return !ev(c.kids[0]) || ev(c.kids[1]);
      case FK::Iff:
        return ev(c.kids[0]) == ev(c.kids[1]);
      case FK::Ex1: {
        Guard g = guard(c.kids[0], c.slot);
        int saved = fo[c.slot];
        bool r = false;
        for (size_t i = g.F._Find_first(); i < g.F.size() && !r; i = g.F._Find_next(i)) {
          fo[c.slot] = static_cast<int>(i);
          r = ev(c.kids[0]);
        }
        fo[c.slot] = saved;
        return r;
      }
      case FK::All1: {
        Guard g = guard(c.kids[0], c.slot);
        int saved = fo[c.slot];
        bool r = true;
        for (size_t i = g.T._Find_first(); i < g.T.size() && r; i = g.T._Find_next(i)) {
          fo[c.slot] = static_cast<int>(i);
          r = ev(c.kids[0]);
        }
        fo[c.slot] = saved;
        return r;
      }
      case FK::Ex2:
        return so_exists(n);
      case FK::All2:
        return so_forall(n);
    }
    return false;
  }

  bool so_exists(int n) {
    std::string k = key('E', n, nullptr);
    auto it = memo_bool.find(k);
    if (it != memo_bool.end()) {
      ++stats.memo_hits;
      return it->second;
    }
    std::vector<int> slots;
    int body;
    block_of(n, slots, body);
    Saved sv = save(slots);
    bind_block(slots, body);
    bool found = !models_impl(body, slots, [] { return false; });
    restore(sv);
    memo_bool[k] = found;
    return found;
  }

  bool so_forall(int n) {
    std::string k = key('A', n, nullptr);
    auto it = memo_bool.find(k);
    if (it != memo_bool.end()) {
      ++stats.memo_hits;
      return it->second;
    }
    std::vector<int> slots;
    int body;
    block_of(n, slots, body);
    Saved sv = save(slots);
    bool holds = true;
    if (cn[body].kind == FK::Implies) {
      int a = cn[body].kids[0], b = cn[body].kids[1];
      bind_block(slots, a);
      const auto& ms = collect(a, slots);
      for (const auto& m : ms) {
        for (size_t i = 0; i < slots.size(); ++i) {
          so[slots[i]] = m[i];
          known[slots[i]] = 1;
        }
        if (!ev(b)) {
          holds = false;
          break;
        }
      }
    } else {
      bind_block(slots, body);
      holds = models_impl(cn[n].neg_body, slots, [] { return false; });
    }
    restore(sv);
    memo_bool[k] = holds;
    return holds;
  }

  // ---- model enumeration --------------------------------------------------

  const std::vector<std::vector<NodeSet>>& collect(int n, const std::vector<int>& targets) {
    std::string k = key('M', n, &targets);
    auto it = memo_models.find(k);
    if (it != memo_models.end()) {
      ++stats.memo_hits;
      return it->second;
    }
    std::vector<std::vector<NodeSet>> out;
    std::set<std::string> seen;
    Saved sv = save(targets);
    models_core(n, targets, [&] {
      std::vector<NodeSet> a;
      std::string sig;
      for (int t : targets) {
        a.push_back(so[t]);
        for_bits(so[t], [&](int i) { sig += std::to_string(i) + ","; });
        sig += ';';
      }
      if (seen.insert(sig).second) out.push_back(std::move(a));
      return true;
    });
    restore(sv);
    return memo_models.emplace(k, std::move(out)).first->second;
  }

  bool replay(const std::vector<std::vector<NodeSet>>& ms, const std::vector<int>& targets, const Callback& cb) {
    for (const auto& m : ms) {
      for (size_t i = 0; i < targets.size(); ++i) {
        so[targets[i]] = m[i];
        known[targets[i]] = 1;
      }
      bool r = cb();
      for (int t : targets) known[t] = 0;
      if (!r) return false;
    }
    return true;
  }

  bool models_impl(int n, const std::vector<int>& targets, const Callback& cb) {
    std::vector<int> mentioned, free;
    for (int t : targets) (has(cn[n].fso, t) ? mentioned : free).push_back(t);
    if (!free.empty()) return models_impl(n, mentioned, [&] { return brute(free, cb); });
    if (mentioned.empty()) return ev(n) ? cb() : true;
    if (cn[n].kind == FK::Or) {
      const auto& ms = collect(n, mentioned);
      return replay(ms, mentioned, cb);
    }
    return models_core(n, mentioned, cb);
  }

  bool models_core(int n, const std::vector<int>& targets, const Callback& cb) {
    const CN& c = cn[n];
    switch (c.kind) {
      case FK::Or:
        for (int k : c.kids)
          if (!models_impl(k, targets, cb)) return false;
        return true;
      case FK::Ex1: {
        Guard g = guard(c.kids[0], c.slot);
        int saved = fo[c.slot];
        bool r = true;
        for (size_t i = g.F._Find_first(); i < g.F.size() && r; i = g.F._Find_next(i)) {
          fo[c.slot] = static_cast<int>(i);
          r = models_impl(c.kids[0], targets, cb);
        }
        fo[c.slot] = saved;
        return r;
      }
      case FK::And:
        return models_and(n, targets, cb);
      default:
        if (sat_ok(n)) return sat_models(n, targets, cb);
        return brute(targets, [&] { return ev(n) ? cb() : true; });
    }
  }

  // Assigns V from a conjunct  all1 w. (... & (V(w) <-> d) & ...)  where d
  // mentions no unknown set.  Returns 0: nothing, 1: assigned, -1: no model.
  int try_definition(int lit, int w, const std::vector<int>& targets, std::vector<int>& assigned) {
    const CN& c = cn[lit];
    int in = -1, def = -1;
    bool negated = false;
    auto is_target_in = [&](int x) {
      const CN& d = cn[x];
      return d.kind == FK::In && d.t1.var == w && d.t1.succ.empty() && !known[d.slot] &&
             std::find(targets.begin(), targets.end(), d.slot) != targets.end();
    };
    if (c.kind == FK::Iff) {
      if (is_target_in(c.kids[0])) {
        in = c.kids[0];
        def = c.kids[1];
      } else if (is_target_in(c.kids[1])) {
        in = c.kids[1];
        def = c.kids[0];
      }
    } else if (c.kind == FK::Not && is_target_in(c.kids[0])) {
      in = c.kids[0];
      negated = true;
    }
    if (in < 0) return 0;
    int slot = cn[in].slot;
    NodeSet value;
    if (!negated) {
      for (int s : cn[def].fso)
        if (!known[s]) return 0;
      Guard g = guard(def, w);
      int saved = fo[w];
      for_bits(g.F, [&](int i) {
        fo[w] = i;
        if (ev(def)) value.set(i);
      });
      fo[w] = saved;
    }
    if ((value & ~carrier[slot]).any()) return -1;
    so[slot] = value;
    known[slot] = 1;
    assigned.push_back(slot);
    return 1;
  }

  bool models_and(int n, const std::vector<int>& targets, const Callback& cb) {
    const CN& c = cn[n];
    Saved sv = save(targets);
    std::vector<int> assigned;
    bool dead = false;
    for (bool progress = true; progress && !dead;) {
      progress = false;
      for (int k : c.kids) {
        if (cn[k].kind != FK::All1) continue;
        std::vector<int> lits;
        flatten_and(cn[k].kids[0], lits);
        for (int lit : lits) {
          int r = try_definition(lit, cn[k].slot, targets, assigned);
          if (r < 0) dead = true;
          if (r > 0) progress = true;
        }
      }
    }
    bool result = true;
    std::vector<int> rest;
    for (int t : targets)
      if (!known[t]) rest.push_back(t);
    if (dead) {
      result = true;
    } else if (rest.empty()) {
      result = ev(n) ? cb() : true;
    } else if (!assigned.empty()) {
      result = models_impl(n, rest, cb);
    } else {
      int best = -1;
      size_t cover = 0;
      for (int k : c.kids) {
        size_t m = 0;
        for (int t : rest) m += has(cn[k].fso, t);
        if (cn[k].kind == FK::Or && m == rest.size()) {
          best = k;
          cover = m;
          break;
        }
        if (m > cover) {
          cover = m;
          best = k;
        }
      }
      if (cn[best].kind != FK::Or && sat_ok(n)) {
        result = sat_models(n, rest, cb);
      } else {
        std::vector<int> first, second;
        for (int t : rest) (has(cn[best].fso, t) ? first : second).push_back(t);
        result = models_impl(best, first, [&] { return models_impl(n, second, cb); });
      }
    }
    restore(sv);
    return result;
  }

  bool mentions_unknown(int n) const {
    for (int s : cn[n].fso)
      if (!known[s]) return true;
    return false;
  }

  // True when no set quantifier below n depends on an unknown set.
  bool sat_ok(int n) const {
    if (!mentions_unknown(n)) return true;
    const CN& c = cn[n];
    if (c.kind == FK::Ex2 || c.kind == FK::All2) return false;
    for (int k : c.kids)
      if (!sat_ok(k)) return false;
    return true;
  }

  int ground(int n, Circuit& circ, const std::map<std::pair<int, int>, int>& vars) {
    if (!mentions_unknown(n)) return ev(n) ? Circuit::kTrue : Circuit::kFalse;
    const CN& c = cn[n];
    switch (c.kind) {
      case FK::In: {
        int v = tval(c.t1);
        auto it = vars.find({c.slot, v});
        return it == vars.end() ? Circuit::kFalse : it->second;
      }
      case FK::Not:
        return -ground(c.kids[0], circ, vars);
      case FK::And: {
        std::vector<int> ls;
        for (int k : c.kids) {
          int l = ground(k, circ, vars);
          if (l == Circuit::kFalse) return l;
          ls.push_back(l);
        }
        return circ.conj(ls);
      }
      case FK::Or: {
        std::vector<int> ls;
        for (int k : c.kids) {
          int l = ground(k, circ, vars);
          if (l == Circuit::kTrue) return l;
          ls.push_back(l);
        }
        return circ.disj(ls);
      }
      case FK::Implies:
        return circ.disj({-ground(c.kids[0], circ, vars), ground(c.kids[1], circ, vars)});
      case FK::Iff:
        return circ.iff(ground(c.kids[0], circ, vars), ground(c.kids[1], circ, vars));
      case FK::Ex1:
      case FK::All1: {
        Guard g = guard(c.kids[0], c.slot);
        const NodeSet& dom = c.kind == FK::Ex1 ? g.F : g.T;
        int saved = fo[c.slot];
        std::vector<int> ls;
        for_bits(dom, [&](int i) {
          fo[c.slot] = i;
          ls.push_back(ground(c.kids[0], circ, vars));
        });
        fo[c.slot] = saved;
        return c.kind == FK::Ex1 ? circ.disj(ls) : circ.conj(ls);
      }
      default:
        throw Error("InternalError", "cannot ground a set quantifier over unknown sets");
    }
  }

  bool sat_models(int n, const std::vector<int>& targets, const Callback& cb) {
    ++stats.sat_calls;
    SatSolver s;
    Circuit circ(s);
    std::map<std::pair<int, int>, int> vars;
    for (int t : targets) for_bits(carrier[t], [&](int i) { vars[{t, i}] = circ.input(); });
    circ.require(ground(n, circ, vars));
    bool result = true;
    while (s.solve()) {
      for (int t : targets) {
        NodeSet v;
        for_bits(carrier[t], [&](int i) {
          if (s.value(vars.at({t, i}))) v.set(i);
        });
        so[t] = v;
        known[t] = 1;
      }
      bool r = cb();
      for (int t : targets) known[t] = 0;
      if (!r) {
        result = false;
        break;
      }
      std::vector<int> block;
      for (const auto& [k, var] : vars) block.push_back(s.value(var) ? -var : var);
      if (block.empty()) break;
      s.add_clause(block);
    }
    return result;
  }

  bool brute(const std::vector<int>& targets, const Callback& cb) {
    std::vector<std::pair<int, int>> bits;
    for (int t : targets) for_bits(carrier[t], [&](int i) { bits.push_back({t, i}); });
    if (static_cast<int>(bits.size()) > opt.brute_force_bits)
      throw Error("BudgetExceeded", "enumerating " + std::to_string(bits.size()) + " set bits");
    unsigned long long total = 1ull << bits.size();
    stats.brute_force_sets += static_cast<long>(total);
    bool result = true;
    for (unsigned long long mask = 0; mask < total && result; ++mask) {
      for (int t : targets) {
        so[t].reset();
        known[t] = 1;
      }
      for (size_t b = 0; b < bits.size(); ++b)
        if (mask >> b & 1) so[bits[b].first].set(bits[b].second);
      result = cb();
    }
    for (int t : targets) known[t] = 0;
    return result;
  }

  // ---- entry points -------------------------------------------------------

  void load(const Valuation& v, const std::vector<int>& targets) {
    std::fill(fo.begin(), fo.end(), kUnknown);
    std::fill(known.begin(), known.end(), 0);
    for (size_t s = 0; s < carrier.size(); ++s) carrier[s] = user_carrier[s];
    for (int s : cn[root].ffo) {
      auto it = v.fo.find(fo_name[s]);
      if (it == v.fo.end()) throw Error("Unbound", "no value for first-order variable " + fo_name[s]);
      if (node_depth(it->second) + nesting > budget)
        throw Error("BudgetExceeded", "variable " + fo_name[s] + " at depth " + std::to_string(node_depth(it->second)) +
                                          " with successor nesting " + std::to_string(nesting));
      fo[s] = node_id(it->second);
    }
    for (int s : cn[root].fso) {
      if (std::find(targets.begin(), targets.end(), s) != targets.end()) continue;
      auto it = v.so.find(so_name[s]);
      if (it == v.so.end()) throw Error("Unbound", "no value for set variable " + so_name[s]);
      so[s] = to_set(it->second);
      known[s] = 1;
    }
  }
};

BoundedEvaluator::BoundedEvaluator(const FormulaPtr& f, EvalOptions opt) : impl_(std::make_unique<Impl>()) {
  Impl& m = *impl_;
  m.opt = opt;
  int need = max_succ_index(f) + 1;
  m.kappa = opt.kappa > 0 ? opt.kappa : std::max(1, need);
  if (need > m.kappa)
    throw Error("UnsupportedArity", "formula uses succ_" + std::to_string(need - 1) + " with kappa " + std::to_string(m.kappa));
  if (opt.budget < 0) throw Error("BudgetExceeded", "negative depth budget");
  m.budget = opt.budget;
  m.nesting = succ_nesting(f);
  m.build_domain();
  std::unordered_map<const Formula*, int> memo;
  m.root = m.compile(f, memo);
  m.size_env();
  for (const auto& [name, nodes] : opt.carriers) {
    int s = m.so_slot_of(name);
    m.size_env();
    m.user_carrier[s] = m.to_set(nodes);
  }
}

BoundedEvaluator::~BoundedEvaluator() = default;

bool BoundedEvaluator::eval(const Valuation& v) {
  impl_->load(v, {});
  return impl_->ev(impl_->root);
}

std::vector<SetAssignment> BoundedEvaluator::models(const Valuation& v, const std::vector<std::string>& targets) {
  Impl& m = *impl_;
  std::vector<int> slots;
  for (const auto& t : targets) slots.push_back(m.so_slot_of(t));
  m.size_env();
  m.load(v, slots);
  std::vector<SetAssignment> out;
  for (const auto& a : m.collect(m.root, slots)) {
    SetAssignment sa;
    for (size_t i = 0; i < slots.size(); ++i) sa[targets[i]] = m.from_set(a[i]);
    out.push_back(std::move(sa));
  }
  return out;
}

const EvalStats& BoundedEvaluator::stats() const { return impl_->stats; }

bool bounded_eval(const FormulaPtr& f, const Valuation& v, int budget, int kappa) {
  EvalOptions o;
  o.budget = budget;
  o.kappa = kappa;
  BoundedEvaluator e(f, o);
  return e.eval(v);
}

}  // namespace pav
