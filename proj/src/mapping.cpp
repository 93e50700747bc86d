#include "sce/mapping.hpp"

#include <algorithm>
#include <set>

#include "sce/error.hpp"
#include "sce/util.hpp"

namespace sce {

namespace {

std::uint64_t ceil_log2(std::uint64_t n) {
  std::uint64_t bits = 0;
  while (pow2(bits) < n) ++bits;
  return bits;
}

}  // namespace

MappedNetwork index_to_network(const IndexInstance& inst, std::uint64_t uses,
                               std::optional<std::uint64_t> codeword_bits) {
  inst.validate();
  if (uses == 0) throw InputError("uses must be positive");
  size_t k = inst.messages.size();
  size_t l = inst.receivers.size();

  MappedNetwork m;
  m.uses = uses;
  m.codeword_bits = codeword_bits.value_or(uses);  // 1 bit per use default

  NetworkInstance& net = m.net;
  for (size_t i = 0; i < k; ++i)
    net.vertices.push_back("s" + std::to_string(i + 1));
  for (size_t j = 0; j < l; ++j)
    net.vertices.push_back("t" + std::to_string(j + 1));
  net.vertices.push_back("1");
  net.vertices.push_back("2");
  for (size_t i = 0; i < k; ++i) m.source_vertex.push_back(i);
  for (size_t j = 0; j < l; ++j) m.receiver_vertex.push_back(k + j);
  m.hub1 = k + l;
  m.hub2 = k + l + 1;

  Rat bottleneck_cap(m.codeword_bits);
  bottleneck_cap /= static_cast<unsigned long>(uses);

  // Source links first (to the relay, then side-information links), then
  // the bottleneck, then the fan-out links.
  for (size_t i = 0; i < k; ++i) {
    Rat cap(ceil_log2(inst.messages[i].alphabet));
    cap /= static_cast<unsigned long>(uses);
    m.source_hub_edge.push_back(net.edges.size());
    net.edges.push_back({m.source_vertex[i], m.hub1, 0, cap});
    for (size_t j = 0; j < l; ++j)
      if (std::binary_search(inst.receivers[j].has.begin(),
                             inst.receivers[j].has.end(), i))
        net.edges.push_back({m.source_vertex[i], m.receiver_vertex[j], 0, cap});
  }
  m.bottleneck_edge = net.edges.size();
  net.edges.push_back({m.hub1, m.hub2, 0, bottleneck_cap});
  for (size_t j = 0; j < l; ++j) {
    m.fanout_edge.push_back(net.edges.size());
    net.edges.push_back({m.hub2, m.receiver_vertex[j], 0, bottleneck_cap});
  }

  for (size_t i = 0; i < k; ++i) {
    NetworkMessage msg;
    msg.id = inst.messages[i].id;
    msg.alphabet = inst.messages[i].alphabet;
    msg.origin = m.source_vertex[i];
    for (size_t j = 0; j < l; ++j)
      if (std::binary_search(inst.receivers[j].wants.begin(),
                             inst.receivers[j].wants.end(), i))
        msg.destinations.push_back(m.receiver_vertex[j]);
    net.messages.push_back(msg);
  }

  for (const auto& r : inst.eavesdroppers) {
    NetworkEavesdropper nr;
    nr.id = r.id;
    nr.targets = r.targets;
    nr.taps.push_back(m.bottleneck_edge);
    for (size_t i : r.side)
      for (size_t e : net.out_edges(m.source_vertex[i]))
        nr.taps.push_back(e);
    std::sort(nr.taps.begin(), nr.taps.end());
    net.eavesdroppers.push_back(nr);
  }

  net.validate();
  return m;
}

IndexInstance invert_index_to_network(const NetworkInstance& net) {
  net.validate();
  IndexInstance inst;

  // Sources are the origins of the messages, in message order.
  std::vector<size_t> sources;
  for (const auto& msg : net.messages) {
    if (!net.in_edges(msg.origin).empty())
      throw InputError("not a mapped network: origin of '" + msg.id +
                       "' has incoming links");
    if (std::find(sources.begin(), sources.end(), msg.origin) != sources.end())
      throw InputError("not a mapped network: two messages share a source");
    sources.push_back(msg.origin);
    inst.messages.push_back({msg.id, msg.alphabet});
  }
  if (sources.empty()) throw InputError("not a mapped network: no messages");

  // The relay is the unique common head of one outgoing link per source.
  std::set<size_t> heads0;
  for (size_t e : net.out_edges(sources[0])) heads0.insert(net.edges[e].head);
  size_t hub1 = SIZE_MAX;
  for (size_t h : heads0) {
    bool common = true;
    for (size_t s : sources) {
      bool found = false;
      for (size_t e : net.out_edges(s))
        if (net.edges[e].head == h) found = true;
      if (!found) {
        common = false;
        break;
      }
    }
    if (common && net.out_edges(h).size() == 1 &&
        net.origin_messages(h).empty()) {
      hub1 = h;
      break;
    }
  }
  if (hub1 == SIZE_MAX)
    throw InputError("not a mapped network: no relay vertex found");
  size_t bottleneck = net.out_edges(hub1)[0];
  size_t hub2 = net.edges[bottleneck].head;

  std::vector<size_t> receivers;
  for (size_t e : net.out_edges(hub2)) receivers.push_back(net.edges[e].head);
  if (receivers.empty())
    throw InputError("not a mapped network: fan-out vertex feeds nobody");

  for (size_t j = 0; j < receivers.size(); ++j) {
    IndexReceiver rx;
    rx.id = "t" + std::to_string(j + 1);
    for (size_t i = 0; i < sources.size(); ++i) {
      if (std::binary_search(net.messages[i].destinations.begin(),
                             net.messages[i].destinations.end(), receivers[j]))
        rx.wants.push_back(i);
      for (size_t e : net.out_edges(sources[i]))
        if (net.edges[e].head == receivers[j]) rx.has.push_back(i);
    }
    inst.receivers.push_back(rx);
  }

  for (const auto& r : net.eavesdroppers) {
    IndexEavesdropper ir;
    ir.id = r.id;
    ir.targets = r.targets;
    std::set<size_t> taps(r.taps.begin(), r.taps.end());
    if (!taps.count(bottleneck))
      throw InputError("not a mapped network: eavesdropper '" + r.id +
                       "' does not tap the bottleneck");
    std::set<size_t> expected{bottleneck};
    for (size_t i = 0; i < sources.size(); ++i) {
      auto out = net.out_edges(sources[i]);
      bool all = std::all_of(out.begin(), out.end(),
                             [&](size_t e) { return taps.count(e) > 0; });
      if (all) {
        ir.side.push_back(i);
        for (size_t e : out) expected.insert(e);
      }
    }
    if (expected != taps)
      throw InputError("not a mapped network: eavesdropper '" + r.id +
                       "' taps do not match the eavesdropper mapping");
    inst.eavesdroppers.push_back(ir);
  }

  inst.validate();
  return inst;
}

RecoveredMapping recover_index_instance(const NetworkInstance& net,
                                        std::uint64_t uses) {
  RecoveredMapping rec;
  rec.instance = invert_index_to_network(net);
  // Relay = unique common head of the message origins with one out-edge.
  size_t origin0 = net.messages.at(0).origin;
  size_t hub1 = SIZE_MAX;
  for (size_t e : net.out_edges(origin0)) {
    size_t h = net.edges[e].head;
    if (net.out_edges(h).size() == 1 && net.origin_messages(h).empty()) {
      hub1 = h;
      break;
    }
  }
  if (hub1 == SIZE_MAX) throw InputError("not a mapped network");
  size_t bottleneck = net.out_edges(hub1)[0];
  std::uint64_t bits = floor_scaled(net.edges[bottleneck].capacity, uses);
  rec.mapped = recover_mapped_network(rec.instance, net, uses, bits);
  return rec;
}

MappedNetwork recover_mapped_network(const IndexInstance& inst,
                                     const NetworkInstance& net,
                                     std::uint64_t uses,
                                     std::uint64_t codeword_bits) {
  MappedNetwork rebuilt = index_to_network(inst, uses, codeword_bits);
  const NetworkInstance& a = rebuilt.net;
  bool same = a.vertices == net.vertices &&
              a.edges.size() == net.edges.size() &&
              a.messages.size() == net.messages.size() &&
              a.eavesdroppers.size() == net.eavesdroppers.size();
  for (size_t e = 0; same && e < a.edges.size(); ++e)
    same = a.edges[e].tail == net.edges[e].tail &&
           a.edges[e].head == net.edges[e].head &&
           a.edges[e].copy == net.edges[e].copy &&
           a.edges[e].capacity == net.edges[e].capacity;
  for (size_t i = 0; same && i < a.messages.size(); ++i)
    same = a.messages[i].id == net.messages[i].id &&
           a.messages[i].alphabet == net.messages[i].alphabet &&
           a.messages[i].origin == net.messages[i].origin &&
           a.messages[i].destinations == net.messages[i].destinations;
  for (size_t r = 0; same && r < a.eavesdroppers.size(); ++r)
    same = a.eavesdroppers[r].targets == net.eavesdroppers[r].targets &&
           a.eavesdroppers[r].taps == net.eavesdroppers[r].taps;
  if (!same)
    throw InputError("network instance is not the image of the index instance");
  return rebuilt;
}

std::uint64_t MappedIndex::source_space() const {
  std::vector<std::uint32_t> sizes;
  for (size_t i = 0; i < source_count; ++i)
    sizes.push_back(instance.messages[i].alphabet);
  return space_size(sizes);
}

std::uint64_t MappedIndex::edge_space() const { return pow2(n_hat); }

MappedIndex network_to_index(const AugmentedInstance& aug,
                             std::uint64_t uses) {
  const NetworkInstance& net = aug.net;
  net.validate();
  if (uses == 0) throw InputError("uses must be positive");
  for (size_t v = 0; v < net.vertices.size(); ++v) {
    if (net.in_edges(v).empty() && net.origin_messages(v).empty())
      throw InputError("instance not normalized: vertex '" + net.vertices[v] +
                       "' has no incoming links and originates nothing");
    if (net.out_edges(v).empty() && net.demanded_messages(v).empty())
      throw InputError("instance not normalized: vertex '" + net.vertices[v] +
                       "' has no outgoing links and demands nothing");
  }
  for (size_t s = 0; s < aug.original_message_count; ++s)
    if (net.messages[s].destinations.empty())
      throw InputError("message '" + net.messages[s].id +
                       "' is demanded nowhere");

  MappedIndex m;
  m.uses = uses;
  m.source_count = net.messages.size();

  IndexInstance& inst = m.instance;
  for (const auto& msg : net.messages)
    inst.messages.push_back({msg.id, msg.alphabet});
  m.n_hat = 0;
  for (size_t e = 0; e < net.edges.size(); ++e) {
    std::uint64_t bits = floor_scaled(net.edges[e].capacity, uses);
    m.edge_bits.push_back(bits);
    m.n_hat += bits;
    m.edge_message.push_back(inst.messages.size());
    inst.messages.push_back({"edge:" + net.edges[e].id(net.vertices),
                             static_cast<std::uint32_t>(pow2(bits))});
  }
  if (m.n_hat > 20) throw InputError("mapped codeword too long to enumerate");

  auto side_info_of_vertex = [&](size_t v) {
    std::vector<size_t> has;
    for (size_t msg : net.origin_messages(v)) has.push_back(msg);
    for (size_t e : net.in_edges(v)) has.push_back(m.edge_message[e]);
    std::sort(has.begin(), has.end());
    return has;
  };

  m.receiver_of_vertex.assign(net.vertices.size(), std::nullopt);
  for (size_t v : net.destination_vertices()) {
    IndexReceiver rx;
    rx.id = "t:" + net.vertices[v];
    rx.wants = net.demanded_messages(v);
    rx.has = side_info_of_vertex(v);
    m.receiver_of_vertex[v] = inst.receivers.size();
    inst.receivers.push_back(rx);
  }
  for (size_t e = 0; e < net.edges.size(); ++e) {
    IndexReceiver rx;
    rx.id = "t:" + inst.messages[m.edge_message[e]].id;
    rx.wants = {m.edge_message[e]};
    rx.has = side_info_of_vertex(net.edges[e].tail);
    m.receiver_of_edge.push_back(inst.receivers.size());
    inst.receivers.push_back(rx);
  }

  for (const auto& r : net.eavesdroppers) {
    IndexEavesdropper ir;
    ir.id = r.id;
    ir.targets = r.targets;
    for (size_t e : r.taps) ir.side.push_back(m.edge_message[e]);
    std::sort(ir.side.begin(), ir.side.end());
    inst.eavesdroppers.push_back(ir);
  }

  inst.validate();
  return m;
}

}  // namespace sce
