#include "qaf/netlist.hpp"

#include <cstdint>
#include <deque>
#include <map>

namespace qaf {

NetId Circuit::add_net(const std::string& name) {
  auto [it, inserted] = name_index_.emplace(name, net_names_.size());
  if (!inserted) throw CircuitError("add_net: duplicate net name '" + name + "'");
  (void)it;
  net_names_.push_back(name);
  return net_names_.size() - 1;
}

void Circuit::add_gate(NetId a, NetId b, NetId out) {
  const std::size_t n = net_names_.size();
  if (a >= n || b >= n || out >= n) throw ContractError("add_gate: net id out of range");
  if (a == b)
    throw CircuitError("add_gate: NOR inputs must be distinct nets (use an Inverting wire for NOT)");
  if (out == a || out == b)
    throw CircuitError("add_gate: output net '" + net_names_[out] + "' also used as an input");
  gates_.push_back({a, b, out});
}

void Circuit::add_wire(NetId x, NetId y, WirePolarity polarity) {
  const std::size_t n = net_names_.size();
  if (x >= n || y >= n) throw ContractError("add_wire: net id out of range");
  if (x == y) throw CircuitError("add_wire: wire endpoints must differ");
  wires_.push_back({x, y, polarity});
}

void Circuit::set_inputs(std::vector<NetId> nets) {
  for (NetId id : nets)
    if (id >= net_names_.size()) throw ContractError("set_inputs: net id out of range");
  inputs_ = std::move(nets);
}

void Circuit::set_outputs(std::vector<NetId> nets) {
  for (NetId id : nets)
    if (id >= net_names_.size()) throw ContractError("set_outputs: net id out of range");
  outputs_ = std::move(nets);
}

const std::string& Circuit::net_name(NetId id) const {
  if (id >= net_names_.size()) throw ContractError("net_name: net id out of range");
  return net_names_[id];
}

NetId Circuit::net(const std::string& name) const {
  auto it = name_index_.find(name);
  if (it == name_index_.end()) throw ContractError("net: no net named '" + name + "'");
  return it->second;
}

namespace {

// Incidence lists used by both validate() and eval(): for each net, which
// gates read it and which wires touch it.
struct Incidence {
  std::vector<std::vector<std::size_t>> gates_reading;  // net -> gate indices with a or b == net
  std::vector<std::vector<std::size_t>> wires_touching;  // net -> wire indices
};

Incidence build_incidence(const Circuit& c) {
  Incidence inc;
  inc.gates_reading.resize(c.net_count());
  inc.wires_touching.resize(c.net_count());
  for (std::size_t g = 0; g < c.gates().size(); ++g) {
    inc.gates_reading[c.gates()[g].a].push_back(g);
    inc.gates_reading[c.gates()[g].b].push_back(g);
  }
  for (std::size_t w = 0; w < c.wires().size(); ++w) {
    inc.wires_touching[c.wires()[w].x].push_back(w);
    inc.wires_touching[c.wires()[w].y].push_back(w);
  }
  return inc;
}

}  // namespace

void Circuit::validate() const {
  // A net may be the output of at most one gate.
  std::vector<std::uint8_t> gate_driven(net_count(), 0);
  for (const auto& g : gates_) {
    if (gate_driven[g.out]++)
      throw CircuitError("validate: net '" + net_names_[g.out] + "' driven by two gates");
  }
  for (NetId id : inputs_)
    if (gate_driven[id])
      throw CircuitError("validate: input net '" + net_names_[id] + "' driven by a gate");

  // Forward determinacy sweep from the inputs. Every net must become
  // determined exactly once; a wire or gate that finds its target already
  // determined is a second driver, and anything left undetermined at the
  // fixed point is undriven (or sits on a cycle).
  const Incidence inc = build_incidence(*this);
  std::vector<std::uint8_t> determined(net_count(), 0);
  std::vector<std::uint8_t> wire_used(wires_.size(), 0);
  std::vector<std::uint8_t> gate_fired(gates_.size(), 0);
  std::deque<NetId> queue;

  auto determine = [&](NetId id, const char* via) {
    if (determined[id])
      throw CircuitError("validate: net '" + net_names_[id] + "' driven more than once (via " +
                         via + ")");
    determined[id] = 1;
    queue.push_back(id);
  };

  for (NetId id : inputs_) determine(id, "input list");

  while (!queue.empty()) {
    const NetId x = queue.front();
    queue.pop_front();
    for (std::size_t wi : inc.wires_touching[x]) {
      if (wire_used[wi]) continue;
      const Wire& w = wires_[wi];
      const NetId other = w.x == x ? w.y : w.x;
      wire_used[wi] = 1;
      determine(other, "wire");
    }
    for (std::size_t gi : inc.gates_reading[x]) {
      if (gate_fired[gi]) continue;
      const NorGate& g = gates_[gi];
      if (!determined[g.a] || !determined[g.b]) continue;
      gate_fired[gi] = 1;
      determine(g.out, "gate");
    }
  }

  for (NetId id = 0; id < net_count(); ++id)
    if (!determined[id])
      throw CircuitError("validate: net '" + net_names_[id] + "' is undriven or on a cycle");
}

std::vector<int> Circuit::eval(const std::vector<int>& input_bits) const {
  if (input_bits.size() != inputs_.size())
    throw ContractError("eval: expected " + std::to_string(inputs_.size()) + " input bits, got " +
                        std::to_string(input_bits.size()));
  for (int b : input_bits)
    if (b != 0 && b != 1) throw ContractError("eval: input bits must be 0 or 1");
  validate();

  // validate() guarantees single drivers, so plain forward propagation
  // determines every net; conflicts can no longer occur.
  const Incidence inc = build_incidence(*this);
  std::vector<std::int8_t> value(net_count(), -1);
  std::deque<NetId> queue;
  auto determine = [&](NetId id, int v) {
    if (value[id] >= 0) {
      if (value[id] != v)
        throw CircuitError("eval: conflicting values on net '" + net_names_[id] + "'");
      return;
    }
    value[id] = static_cast<std::int8_t>(v);
    queue.push_back(id);
  };

  for (std::size_t i = 0; i < inputs_.size(); ++i) determine(inputs_[i], input_bits[i]);

  while (!queue.empty()) {
    const NetId x = queue.front();
    queue.pop_front();
    for (std::size_t wi : inc.wires_touching[x]) {
      const Wire& w = wires_[wi];
      const NetId other = w.x == x ? w.y : w.x;
      const int v = w.polarity == WirePolarity::Plain ? value[x] : 1 - value[x];
      determine(other, v);
    }
    for (std::size_t gi : inc.gates_reading[x]) {
      const NorGate& g = gates_[gi];
      if (value[g.a] < 0 || value[g.b] < 0) continue;
      determine(g.out, (value[g.a] == 0 && value[g.b] == 0) ? 1 : 0);
    }
  }

  std::vector<int> out;
  out.reserve(outputs_.size());
  for (NetId id : outputs_) {
    if (value[id] < 0) throw CircuitError("eval: output net '" + net_names_[id] + "' undetermined");
    out.push_back(value[id]);
  }
  return out;
}

Circuit half_adder() {
  Circuit c;
  NetId q[10];  // 1-based to mirror the conventional numbering
  for (int i = 1; i <= 9; ++i) q[i] = c.add_net("q" + std::to_string(i));
  c.add_gate(q[1], q[2], q[3]);
  c.add_gate(q[4], q[5], q[6]);
  c.add_gate(q[7], q[8], q[9]);
  c.add_wire(q[1], q[4], WirePolarity::Inverting);
  c.add_wire(q[2], q[5], WirePolarity::Inverting);
  c.add_wire(q[3], q[8], WirePolarity::Plain);
  c.add_wire(q[6], q[7], WirePolarity::Plain);
  c.set_inputs({q[1], q[2]});
  c.set_outputs({q[9], q[6]});  // SUM, CARRY
  return c;
}

namespace {

// Appends a copy of `sub` to `host`. Net names get `prefix` prepended
// except where `renames` provides a literal name. Returns sub-id -> host-id.
std::vector<NetId> append_circuit(Circuit& host, const Circuit& sub, const std::string& prefix,
                                  const std::map<NetId, std::string>& renames = {}) {
  std::vector<NetId> to_host;
  to_host.reserve(sub.net_count());
  for (NetId id = 0; id < sub.net_count(); ++id) {
    auto it = renames.find(id);
    to_host.push_back(host.add_net(it != renames.end() ? it->second : prefix + sub.net_name(id)));
  }
  for (const auto& g : sub.gates()) host.add_gate(to_host[g.a], to_host[g.b], to_host[g.out]);
  for (const auto& w : sub.wires()) host.add_wire(to_host[w.x], to_host[w.y], w.polarity);
  return to_host;
}

}  // namespace

Circuit full_adder() {
  Circuit c;
  const Circuit ha = half_adder();
  const NetId in_a = ha.net("q1"), in_b = ha.net("q2");
  const NetId sum = ha.net("q9"), carry = ha.net("q6");

  const auto ha1 = append_circuit(c, ha, "ha1.", {{in_a, "a"}, {in_b, "b"}});
  const NetId cin = c.add_net("cin");
  const auto ha2 = append_circuit(c, ha, "ha2.");
  c.add_wire(ha1[sum], ha2[in_a], WirePolarity::Plain);
  c.add_wire(cin, ha2[in_b], WirePolarity::Plain);

  // Carry-merge OR: cout = NOT(NOR(carry1, carry2)).
  const NetId or_a = c.add_net("or.a");
  const NetId or_b = c.add_net("or.b");
  const NetId or_out = c.add_net("or.out");
  c.add_wire(ha1[carry], or_a, WirePolarity::Plain);
  c.add_wire(ha2[carry], or_b, WirePolarity::Plain);
  c.add_gate(or_a, or_b, or_out);
  const NetId cout = c.add_net("cout");
  c.add_wire(or_out, cout, WirePolarity::Inverting);

  c.set_inputs({ha1[in_a], ha1[in_b], cin});
  c.set_outputs({ha2[sum], cout});
  return c;
}

Circuit multiplier(std::size_t p, std::size_t q) {
  if (p < 1 || q < 1) throw ContractError("multiplier: operand widths must be at least 1");
  Circuit c;

  std::vector<NetId> m(p), n(q);
  for (std::size_t i = 0; i < p; ++i) m[i] = c.add_net("m" + std::to_string(i));
  for (std::size_t j = 0; j < q; ++j) n[j] = c.add_net("n" + std::to_string(j));

  // Partial products: AND(M_i, N_j) as NOR over negated operands.
  std::vector<std::deque<NetId>> column(p + q);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      const std::string base = "and" + std::to_string(i) + "_" + std::to_string(j);
      const NetId u = c.add_net(base + ".a");
      const NetId v = c.add_net(base + ".b");
      const NetId w = c.add_net(base + ".out");
      c.add_wire(m[i], u, WirePolarity::Inverting);
      c.add_wire(n[j], v, WirePolarity::Inverting);
      c.add_gate(u, v, w);
      column[i + j].push_back(w);
    }
  }

  const Circuit ha = half_adder();
  const Circuit fa = full_adder();

  // Column-wise reduction, oldest addends first; every adder instance is a
  // fresh sub-circuit fed through Plain wires, and its carry joins the next
  // column's addend list.
  std::vector<NetId> product(p + q);
  NetId zero = static_cast<NetId>(-1);
  for (std::size_t k = 0; k < p + q; ++k) {
    auto& addends = column[k];
    std::size_t adder_index = 0;
    while (addends.size() > 1) {
      const bool use_fa = addends.size() >= 3;
      const Circuit& sub = use_fa ? fa : ha;
      const std::string prefix = "c" + std::to_string(k) + (use_fa ? ".fa" : ".ha") +
                                 std::to_string(adder_index++) + ".";
      const auto ids = append_circuit(c, sub, prefix);
      for (NetId in : sub.inputs()) {
        c.add_wire(addends.front(), ids[in], WirePolarity::Plain);
        addends.pop_front();
      }
      addends.push_back(ids[sub.outputs()[0]]);  // sum stays in this column
      if (k + 1 < p + q) column[k + 1].push_back(ids[sub.outputs()[1]]);
      // A carry out of the top column would mean the product overflows
      // p+q bits, which the arithmetic rules out; drop is unreachable.
    }
    if (addends.empty()) {
      // Column with no partial products and no carries: tie the product
      // bit to a constant 0 = NOR(x, NOT x), shared across such columns.
      if (zero == static_cast<NetId>(-1)) {
        const NetId za = c.add_net("zero.a");
        const NetId zb = c.add_net("zero.b");
        const NetId zout = c.add_net("zero.out");
        c.add_wire(m[0], za, WirePolarity::Plain);
        c.add_wire(m[0], zb, WirePolarity::Inverting);
        c.add_gate(za, zb, zout);
        zero = zout;
      }
      product[k] = zero;
    } else {
      product[k] = addends.front();
    }
  }

  std::vector<NetId> inputs = m;
  inputs.insert(inputs.end(), n.begin(), n.end());
  c.set_inputs(std::move(inputs));
  c.set_outputs(std::move(product));
  return c;
}

}  // namespace qaf
