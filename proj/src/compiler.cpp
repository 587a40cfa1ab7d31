#include "qaf/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <string>

#include "qaf/factoring.hpp"

namespace qaf {

namespace {

struct EdgeAcc {
  double value = 0.0;
  bool from_gadget = false;  // pinned: fan-out may only move pure wire couplings
};

struct Edge {
  std::size_t u, v;
  double value;
  bool movable;
};

}  // namespace

CompiledModel compile(const Circuit& c, const CompileOptions& options) {
  c.validate();
  const std::size_t n = c.net_count();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  // Union-find over Plain wires; identity when fusion is off.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  if (options.fuse_plain_wires)
    for (const auto& w : c.wires())
      if (w.polarity == WirePolarity::Plain) parent[find(w.x)] = find(w.y);

  // Stable qubit numbering: first mention over inputs, outputs, gates, wires.
  std::vector<std::size_t> group_qubit(n, kNone);
  std::size_t qubits = 0;
  auto mention = [&](NetId id) {
    const std::size_t r = find(id);
    if (group_qubit[r] == kNone) group_qubit[r] = qubits++;
  };
  for (NetId id : c.inputs()) mention(id);
  for (NetId id : c.outputs()) mention(id);
  for (const auto& g : c.gates()) {
    mention(g.a);
    mention(g.b);
    mention(g.out);
  }
  for (const auto& w : c.wires()) {
    mention(w.x);
    mention(w.y);
  }
  for (NetId id = 0; id < n; ++id) mention(id);

  CompiledModel out;
  out.map.net_to_qubit.resize(n);
  for (NetId id = 0; id < n; ++id) out.map.net_to_qubit[id] = group_qubit[find(id)];
  out.map.input_qubits.reserve(c.inputs().size());
  for (NetId id : c.inputs()) out.map.input_qubits.push_back(out.map.net_to_qubit[id]);
  out.map.output_qubits.reserve(c.outputs().size());
  for (NetId id : c.outputs()) out.map.output_qubits.push_back(out.map.net_to_qubit[id]);

  // Accumulate biases and couplings onto qubits. Contributions landing on
  // the same pair are summed; a coupling whose endpoints fused together is
  // a constant and goes to energy_offset.
  std::vector<double> h(qubits, 0.0);
  std::map<IsingModel::Key, EdgeAcc> acc;
  auto accumulate = [&](std::size_t qu, std::size_t qv, double value, bool gadget) {
    if (qu == qv) {
      out.energy_offset += value;
      return false;
    }
    auto& slot = acc[qu < qv ? IsingModel::Key{qu, qv} : IsingModel::Key{qv, qu}];
    slot.value += value;
    slot.from_gadget |= gadget;
    return true;
  };

  const GateGadget nor = nor_gadget();
  const double h_in = nor.local.bias(0), h_out = nor.local.bias(2);
  const double j_in = nor.local.coupling(0, 1), j_out = nor.local.coupling(0, 2);
  auto q_of = [&](NetId id) { return out.map.net_to_qubit[id]; };
  for (const auto& g : c.gates()) {
    h[q_of(g.a)] += h_in;
    h[q_of(g.b)] += h_in;
    h[q_of(g.out)] += h_out;
    accumulate(q_of(g.a), q_of(g.b), j_in, true);
    accumulate(q_of(g.a), q_of(g.out), j_out, true);
    accumulate(q_of(g.b), q_of(g.out), j_out, true);
  }
  out.gate_count = c.gates().size();
  for (const auto& w : c.wires())
    if (accumulate(q_of(w.x), q_of(w.y), wire_coupling(w.polarity), false)) ++out.wire_count;

  std::vector<Edge> edges;
  edges.reserve(acc.size());
  for (const auto& [key, slot] : acc)
    edges.push_back({key.first, key.second, slot.value, !slot.from_gadget});

  // Fan-out insertion: rebalance wire couplings of over-degree qubits onto
  // balanced binary trees of copy qubits (h=0, Plain links). Gadget
  // couplings stay put so each gadget keeps its private qubit triple; that
  // is what makes the certified ground energy and its decode guarantee hold.
  if (!options.fuse_plain_wires && options.max_degree != kUnlimitedDegree) {
    const std::size_t maxdeg = options.max_degree;
    std::vector<std::vector<std::size_t>> adj(qubits);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      adj[edges[e].u].push_back(e);
      adj[edges[e].v].push_back(e);
    }

    auto new_copy = [&](std::size_t parent_qubit) {
      const std::size_t copy = h.size();
      h.push_back(0.0);
      edges.push_back({parent_qubit, copy, wire_coupling(WirePolarity::Plain), false});
      ++out.wire_count;
      out.map.copy_qubits.emplace_back(copy, parent_qubit);
      return copy;
    };

    for (std::size_t q = 0; q < qubits; ++q) {
      if (adj[q].size() <= maxdeg) continue;
      if (maxdeg < 3)
        throw ContractError("compile: fan-out insertion needs max_degree >= 3, got " +
                            std::to_string(maxdeg));
      std::vector<std::size_t> stubs;  // movable edge indices, deterministic order
      for (std::size_t e : adj[q])
        if (edges[e].movable) stubs.push_back(e);
      const std::size_t pinned = adj[q].size() - stubs.size();
      if (pinned + 1 > maxdeg)
        throw CircuitError("compile: qubit " + std::to_string(q) + " carries " +
                           std::to_string(pinned) +
                           " gadget couplings, over the port budget even before fan-out");

      // Re-point an edge's q endpoint at tree node `node`.
      auto attach = [&](std::size_t e, std::size_t node) {
        if (node == q) return;
        if (edges[e].u == q)
          edges[e].u = node;
        else
          edges[e].v = node;
      };
      std::function<void(std::size_t, std::size_t, std::size_t, std::size_t)> place =
          [&](std::size_t node, std::size_t first, std::size_t count, std::size_t reserved) {
            const std::size_t cap = maxdeg - reserved;
            if (count <= cap) {
              for (std::size_t i = 0; i < count; ++i) attach(stubs[first + i], node);
              return;
            }
            if (cap < 2) {  // node can only host the link to one child
              place(new_copy(node), first, count, 1);
              return;
            }
            if (count <= (cap - 1) + (maxdeg - 1)) {
              for (std::size_t i = 0; i < cap - 1; ++i) attach(stubs[first + i], node);
              place(new_copy(node), first + cap - 1, count - (cap - 1), 1);
              return;
            }
            for (std::size_t i = 0; i < cap - 2; ++i) attach(stubs[first + i], node);
            const std::size_t rest = count - (cap - 2);
            const std::size_t left = (rest + 1) / 2;
            place(new_copy(node), first + cap - 2, left, 1);
            place(new_copy(node), first + cap - 2 + left, rest - left, 1);
          };
      place(q, 0, stubs.size(), pinned);
    }
  }

  out.model = IsingModel(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) out.model.set_bias(i, h[i]);
  for (const auto& e : edges) out.model.add_coupling(e.u, e.v, e.value);

  out.stats.qubit_count = out.model.size();
  out.stats.coupling_count = out.model.couplings().size();
  std::vector<std::size_t> degree(out.model.size(), 0);
  for (const auto& [key, value] : out.model.couplings()) {
    (void)value;
    ++degree[key.first];
    ++degree[key.second];
  }
  out.stats.max_degree = degree.empty() ? 0 : *std::max_element(degree.begin(), degree.end());
  return out;
}

namespace {

bool in_set(double x, const std::vector<double>& allowed) {
  for (double a : allowed)
    if (std::abs(x - a) < 1e-9) return true;
  return false;
}

}  // namespace

HardwareReport hardware_check(const CompiledModel& m, const HardwareProfile& profile) {
  HardwareReport report;
  for (std::size_t i = 0; i < m.model.size(); ++i)
    if (!in_set(m.model.bias(i), profile.allowed_h)) report.bad_biases.emplace_back(i, m.model.bias(i));
  std::vector<std::size_t> degree(m.model.size(), 0);
  for (const auto& [key, value] : m.model.couplings()) {
    if (!in_set(std::abs(value), profile.allowed_j_magnitudes))
      report.bad_couplings.emplace_back(key.first, key.second, value);
    ++degree[key.first];
    ++degree[key.second];
  }
  for (std::size_t i = 0; i < degree.size(); ++i)
    if (degree[i] > profile.max_degree) report.bad_degrees.emplace_back(i, degree[i]);
  return report;
}

ResourceEstimate estimate_resources(std::size_t p, bool compile_artifact) {
  if (p < 1) throw ContractError("estimate_resources: bit width must be at least 1");
  ResourceEstimate est;
  est.bit_width = p;
  est.paper_estimate = 25ull * p * p;
  // 20-mm-square chip at 6400 um^2 per qubit.
  est.qubits_per_chip = (20000ull * 20000ull) / 6400ull;
  est.chips = (est.paper_estimate + est.qubits_per_chip - 1) / est.qubits_per_chip;
  const FactoringWidths w = factoring_widths(p);
  est.width_m = w.width_m;
  est.width_n = w.width_n;
  if (compile_artifact) {
    if (p < 2)
      throw ContractError("estimate_resources: compiling the artifact multiplier needs p >= 2");
    est.artifact_qubits = compile(multiplier(w.width_m, w.width_n)).stats.qubit_count;
  }
  return est;
}

}  // namespace qaf
