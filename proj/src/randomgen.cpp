#include "sce/randomgen.hpp"

#include <algorithm>
#include <map>

#include "sce/error.hpp"
#include "sce/util.hpp"

namespace sce {

namespace {

// Posterior-maximizing decoder tables for an index code under uniform
// messages: for every (codeword, side-information) cell pick the most
// frequent wants-tuple among consistent realizations, smallest on ties.
void fill_map_decoders(const IndexInstance& inst, IndexCode& code) {
  auto sizes = inst.message_sizes();
  std::uint64_t msg_space = inst.message_space();
  std::uint64_t cw = pow2(code.codeword_bits);
  code.decoders.assign(inst.receivers.size(), {});
  for (size_t t = 0; t < inst.receivers.size(); ++t) {
    const auto& rx = inst.receivers[t];
    std::vector<std::uint32_t> has_sizes, want_sizes;
    for (size_t m : rx.has) has_sizes.push_back(sizes[m]);
    for (size_t m : rx.wants) want_sizes.push_back(sizes[m]);
    std::uint64_t has_space = 1, want_space = 1;
    for (auto s : has_sizes) has_space *= s;
    for (auto s : want_sizes) want_space *= s;
    std::vector<std::map<std::uint64_t, std::uint64_t>> counts(cw * has_space);
    for (std::uint64_t mr = 0; mr < msg_space; ++mr) {
      auto vals = unpack_mixed(mr, sizes);
      std::vector<std::uint32_t> has_vals, want_vals;
      for (size_t m : rx.has) has_vals.push_back(vals[m]);
      for (size_t m : rx.wants) want_vals.push_back(vals[m]);
      std::uint64_t hr = pack_mixed(has_vals, has_sizes);
      std::uint64_t wr = pack_mixed(want_vals, want_sizes);
      // deterministic codes only reach this path (key dimension is 1)
      std::uint64_t b = code.encoder[mr];
      ++counts[b * has_space + hr][wr];
    }
    std::vector<std::uint64_t> table(cw * has_space, 0);
    for (std::uint64_t cell = 0; cell < table.size(); ++cell) {
      std::uint64_t best = 0, best_count = 0;
      for (const auto& [wr, c] : counts[cell])
        if (c > best_count) {
          best = wr;
          best_count = c;
        }
      table[cell] = best;
    }
    code.decoders[t] = std::move(table);
  }
}

}  // namespace

Pmf random_key_pmf(std::uint32_t alphabet, Rng& rng) {
  if (alphabet <= 1) return Pmf::uniform(1);
  if (alphabet == 2 && rng.chance(1, 2)) {
    unsigned long a = 1 + rng.below(7);
    return Pmf({rat_u(a, 8), rat_u(8 - a, 8)});
  }
  return Pmf::uniform(alphabet);
}

IndexCode random_index_code(const IndexInstance& inst, std::uint64_t n_hat,
                            std::uint32_t max_key_alphabet, Rng& rng) {
  IndexCode code;
  code.codeword_bits = n_hat;
  code.key_alphabet =
      static_cast<std::uint32_t>(rng.below(max_key_alphabet + 1));
  if (code.key_alphabet > 0)
    code.key_pmf = random_key_pmf(code.key_alphabet, rng);
  std::uint64_t cw = pow2(n_hat);
  std::uint64_t domain = inst.message_space() * code.effective_key_alphabet();
  code.encoder.resize(domain);
  for (auto& v : code.encoder) v = rng.below(cw);
  auto sizes = inst.message_sizes();
  for (const auto& rx : inst.receivers) {
    std::uint64_t has_space = 1, want_space = 1;
    for (size_t m : rx.has) has_space *= sizes[m];
    for (size_t m : rx.wants) want_space *= sizes[m];
    std::vector<std::uint64_t> table(cw * has_space);
    for (auto& v : table) v = rng.below(want_space);
    code.decoders.push_back(std::move(table));
  }
  code.validate(inst);
  return code;
}

NetworkCode random_network_code_on_mapped(const IndexInstance& inst,
                                          const MappedNetwork& mapped,
                                          std::uint32_t max_key_alphabet,
                                          Rng& rng) {
  const NetworkInstance& net = mapped.net;
  NetworkCode code;
  code.uses = mapped.uses;
  code.node_keys.assign(net.vertices.size(), Pmf::uniform(1));
  for (size_t hub : {mapped.hub1, mapped.hub2}) {
    std::uint32_t ka =
        1 + static_cast<std::uint32_t>(rng.below(max_key_alphabet));
    code.node_keys[hub] = random_key_pmf(ka, rng);
  }
  code.edge_encoders.assign(net.edges.size(), {});
  for (size_t i = 0; i < inst.messages.size(); ++i) {
    // any deterministic function of the message, one table per link
    for (size_t e : net.out_edges(mapped.source_vertex[i])) {
      std::uint64_t alpha = edge_alphabet(net, code.uses, e);
      std::vector<std::uint64_t> table(inst.messages[i].alphabet);
      for (auto& v : table) v = rng.below(alpha);
      code.edge_encoders[e] = std::move(table);
    }
  }
  for (size_t hub : {mapped.hub1, mapped.hub2}) {
    std::uint32_t ka = code.node_keys[hub].support_size();
    for (size_t e : net.out_edges(hub)) {
      std::vector<std::uint32_t> dom;
      for (size_t d : net.in_edges(hub))
        dom.push_back(
            static_cast<std::uint32_t>(edge_alphabet(net, code.uses, d)));
      dom.push_back(ka);
      std::uint64_t alpha = edge_alphabet(net, code.uses, e);
      std::vector<std::uint64_t> table(space_size(dom));
      for (auto& v : table) v = rng.below(alpha);
      code.edge_encoders[e] = std::move(table);
    }
  }
  for (size_t j = 0; j < inst.receivers.size(); ++j) {
    size_t tj = mapped.receiver_vertex[j];
    std::vector<std::uint32_t> dom;
    for (size_t d : net.in_edges(tj))
      dom.push_back(
          static_cast<std::uint32_t>(edge_alphabet(net, code.uses, d)));
    std::uint64_t want_space = 1;
    for (size_t m : inst.receivers[j].wants)
      want_space *= inst.messages[m].alphabet;
    std::vector<std::uint64_t> table(space_size(dom));
    for (auto& v : table) v = rng.below(want_space);
    code.decoders[tj] = std::move(table);
  }
  code.validate(net);
  return code;
}

NetworkInstance random_dag_instance(Rng& rng, const DagOptions& opts) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::uint32_t nv = 2 + static_cast<std::uint32_t>(
                               rng.below(opts.max_vertices - 1));
    std::uint32_t ne =
        1 + static_cast<std::uint32_t>(rng.below(opts.max_edges));

    struct RawEdge {
      std::uint32_t tail, head, copy;
      Rat cap;
    };
    std::vector<RawEdge> raw;
    for (std::uint32_t i = 0; i < ne; ++i) {
      std::uint32_t t = static_cast<std::uint32_t>(rng.below(nv - 1));
      std::uint32_t h =
          t + 1 + static_cast<std::uint32_t>(rng.below(nv - 1 - t));
      std::uint32_t copy = 0;
      for (const auto& e : raw)
        if (e.tail == t && e.head == h) ++copy;
      Rat cap;
      if (i > 0 && opts.allow_zero_bit_edges && rng.chance(1, 8))
        cap = Rat(1, 2);
      else
        cap = rng.chance(1, 4) ? Rat(3, 2) : Rat(1);
      raw.push_back({t, h, copy, cap});
    }

    // keep only vertices that touch an edge
    std::vector<size_t> remap(nv, SIZE_MAX);
    NetworkInstance net;
    for (std::uint32_t v = 0; v < nv; ++v) {
      bool used = false;
      for (const auto& e : raw) used = used || e.tail == v || e.head == v;
      if (used) {
        remap[v] = net.vertices.size();
        net.vertices.push_back(std::to_string(v + 1));
      }
    }
    for (const auto& e : raw)
      net.edges.push_back({remap[e.tail], remap[e.head], e.copy, e.cap});

    std::vector<size_t> sources, sinks;
    for (size_t v = 0; v < net.vertices.size(); ++v) {
      if (net.in_edges(v).empty()) sources.push_back(v);
      if (net.out_edges(v).empty()) sinks.push_back(v);
    }
    if (sources.empty() || sinks.empty()) continue;

    std::uint32_t nmsg = std::max<std::uint32_t>(
        static_cast<std::uint32_t>(sources.size()),
        1 + static_cast<std::uint32_t>(rng.below(opts.max_messages)));
    for (std::uint32_t m = 0; m < nmsg; ++m) {
      NetworkMessage msg;
      msg.id = "m" + std::to_string(m + 1);
      msg.alphabet = 2;
      msg.origin = m < sources.size() ? sources[m]
                                      : sources[rng.below(sources.size())];
      for (size_t s : sinks)
        if (rng.chance(1, 2)) msg.destinations.push_back(s);
      if (msg.destinations.empty())
        msg.destinations.push_back(sinks[rng.below(sinks.size())]);
      net.messages.push_back(msg);
    }
    // every sink must demand something
    for (size_t s : sinks) {
      bool covered = false;
      for (const auto& m : net.messages)
        covered = covered || std::binary_search(m.destinations.begin(),
                                                m.destinations.end(), s);
      if (!covered) {
        auto& m = net.messages[rng.below(net.messages.size())];
        m.destinations.push_back(s);
        std::sort(m.destinations.begin(), m.destinations.end());
      }
    }

    std::uint32_t nr =
        1 + static_cast<std::uint32_t>(rng.below(opts.max_eavesdroppers));
    for (std::uint32_t r = 0; r < nr; ++r) {
      NetworkEavesdropper ne_;
      ne_.id = "r" + std::to_string(r + 1);
      for (size_t e = 0; e < net.edges.size(); ++e)
        if (rng.chance(1, 2)) ne_.taps.push_back(e);
      if (ne_.taps.empty()) ne_.taps.push_back(rng.below(net.edges.size()));
      for (size_t m = 0; m < net.messages.size(); ++m)
        if (rng.chance(1, 2)) ne_.targets.push_back(m);
      if (ne_.targets.empty())
        ne_.targets.push_back(rng.below(net.messages.size()));
      net.eavesdroppers.push_back(ne_);
    }

    try {
      net.validate();
    } catch (const InputError&) {
      continue;
    }
    return net;
  }
  throw EvalError("random DAG generation failed to converge");
}

NetworkCode random_network_code(const NetworkInstance& inst,
                                std::uint64_t uses, std::uint32_t max_key,
                                bool map_decoders, Rng& rng) {
  NetworkCode code;
  code.uses = uses;
  code.node_keys.assign(inst.vertices.size(), Pmf::uniform(1));
  if (max_key > 1)
    for (size_t v = 0; v < inst.vertices.size(); ++v)
      if (!inst.out_edges(v).empty() && rng.chance(1, 2))
        code.node_keys[v] = random_key_pmf(
            1 + static_cast<std::uint32_t>(rng.below(max_key)), rng);

  code.edge_encoders.assign(inst.edges.size(), {});
  for (size_t e = 0; e < inst.edges.size(); ++e) {
    size_t tail = inst.edges[e].tail;
    std::vector<std::uint32_t> dom;
    for (size_t d : inst.in_edges(tail))
      dom.push_back(static_cast<std::uint32_t>(edge_alphabet(inst, uses, d)));
    for (size_t m : inst.origin_messages(tail))
      dom.push_back(inst.messages[m].alphabet);
    dom.push_back(code.node_keys[tail].support_size());
    std::uint64_t alpha = edge_alphabet(inst, uses, e);
    std::vector<std::uint64_t> table(space_size(dom));
    for (auto& v : table) v = rng.below(alpha);
    code.edge_encoders[e] = std::move(table);
  }

  // placeholder decoders so the code validates before we can inspect the
  // global tables
  for (size_t v : inst.destination_vertices()) {
    std::vector<std::uint32_t> dom;
    for (size_t d : inst.in_edges(v))
      dom.push_back(static_cast<std::uint32_t>(edge_alphabet(inst, uses, d)));
    for (size_t m : inst.origin_messages(v))
      dom.push_back(inst.messages[m].alphabet);
    code.decoders[v] = std::vector<std::uint64_t>(space_size(dom), 0);
  }

  if (!map_decoders) {
    for (size_t v : inst.destination_vertices()) {
      std::uint64_t want_space = 1;
      for (size_t m : inst.demanded_messages(v))
        want_space *= inst.messages[m].alphabet;
      for (auto& val : code.decoders[v]) val = rng.below(want_space);
    }
    code.validate(inst);
    return code;
  }

  GlobalTables g = global_encodings(inst, code);
  for (size_t v : inst.destination_vertices()) {
    std::vector<std::uint32_t> dom;
    for (size_t d : inst.in_edges(v))
      dom.push_back(static_cast<std::uint32_t>(edge_alphabet(inst, uses, d)));
    for (size_t m : inst.origin_messages(v))
      dom.push_back(inst.messages[m].alphabet);
    std::vector<std::uint32_t> want_sizes;
    for (size_t m : inst.demanded_messages(v))
      want_sizes.push_back(inst.messages[m].alphabet);
    std::vector<std::map<std::uint64_t, std::uint64_t>> counts(
        space_size(dom));
    for (std::uint64_t rank = 0; rank < g.realizations; ++rank) {
      auto vals = unpack_mixed(rank, g.domain_sizes);
      std::vector<std::uint32_t> obs;
      for (size_t d : inst.in_edges(v))
        obs.push_back(static_cast<std::uint32_t>(g.edge_values[d][rank]));
      for (size_t m : inst.origin_messages(v)) obs.push_back(vals[m]);
      std::vector<std::uint32_t> want_vals;
      for (size_t m : inst.demanded_messages(v)) want_vals.push_back(vals[m]);
      ++counts[pack_mixed(obs, dom)][pack_mixed(want_vals, want_sizes)];
    }
    auto& table = code.decoders[v];
    for (std::uint64_t cell = 0; cell < table.size(); ++cell) {
      std::uint64_t best = 0, best_count = 0;
      for (const auto& [wr, c] : counts[cell])
        if (c > best_count) {
          best = wr;
          best_count = c;
        }
      table[cell] = best;
    }
  }
  code.validate(inst);
  return code;
}

IndexCode random_index_code_on_mapped(const MappedIndex& mapped,
                                      bool map_decoders, Rng& rng) {
  const IndexInstance& inst = mapped.instance;
  IndexCode code;
  code.codeword_bits = mapped.n_hat;
  std::uint64_t cw = pow2(mapped.n_hat);
  code.encoder.resize(inst.message_space());
  for (auto& v : code.encoder) v = rng.below(cw);
  if (map_decoders) {
    fill_map_decoders(inst, code);
  } else {
    auto sizes = inst.message_sizes();
    for (const auto& rx : inst.receivers) {
      std::uint64_t has_space = 1, want_space = 1;
      for (size_t m : rx.has) has_space *= sizes[m];
      for (size_t m : rx.wants) want_space *= sizes[m];
      std::vector<std::uint64_t> table(cw * has_space);
      for (auto& v : table) v = rng.below(want_space);
      code.decoders.push_back(std::move(table));
    }
  }
  code.validate(inst);
  return code;
}

IndexCode linear_index_code_on_mapped(const MappedIndex& mapped, Rng& rng) {
  const IndexInstance& inst = mapped.instance;
  std::uint64_t total_bits = 0;
  for (const auto& m : inst.messages) {
    std::uint64_t b = 0;
    while (pow2(b) < m.alphabet) ++b;
    if (pow2(b) != m.alphabet)
      throw InputError("linear code needs power-of-two alphabets");
    total_bits += b;
  }
  std::uint64_t n_hat = mapped.n_hat;
  if (total_bits < n_hat || total_bits > 62)
    throw InputError("unsupported bit widths for the linear fixture");

  // One K-bit mask per codeword bit; identity on the trailing edge-message
  // bits keeps the map surjective, hence the broadcast exactly uniform.
  std::vector<std::uint64_t> masks(n_hat);
  for (std::uint64_t row = 0; row < n_hat; ++row) {
    std::uint64_t high = rng.next() & ((pow2(total_bits - n_hat)) - 1);
    masks[row] = (high << n_hat) | pow2(n_hat - 1 - row);
  }

  IndexCode code;
  code.codeword_bits = n_hat;
  std::uint64_t msg_space = inst.message_space();
  code.encoder.resize(msg_space);
  for (std::uint64_t mr = 0; mr < msg_space; ++mr) {
    std::uint64_t b = 0;
    for (std::uint64_t row = 0; row < n_hat; ++row) {
      std::uint64_t parity = __builtin_parityll(masks[row] & mr);
      b |= parity << (n_hat - 1 - row);
    }
    code.encoder[mr] = b;
  }
  fill_map_decoders(inst, code);
  code.validate(inst);
  return code;
}

void corrupt_index_decoders(const MappedIndex& mapped, IndexCode& code,
                            int flips, Rng& rng) {
  const IndexInstance& inst = mapped.instance;
  auto sizes = inst.message_sizes();
  for (int f = 0; f < flips; ++f) {
    size_t t = rng.below(inst.receivers.size());
    std::uint64_t want_space = 1;
    for (size_t m : inst.receivers[t].wants) want_space *= sizes[m];
    if (want_space <= 1) continue;
    auto& table = code.decoders[t];
    std::uint64_t cell = rng.below(table.size());
    table[cell] = (table[cell] + 1 + rng.below(want_space - 1)) % want_space;
  }
}

}  // namespace sce
