#include "sce/translation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "sce/error.hpp"
#include "sce/util.hpp"

namespace sce {

namespace {

constexpr double kLog2E = 1.4426950408889634;

std::string fmt_bits(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", v);
  return buf;
}

// Index-message alphabet of each edge message, in edge order.
std::vector<std::uint32_t> edge_alphas(const MappedIndex& mapped) {
  std::vector<std::uint32_t> a;
  for (auto bits : mapped.edge_bits)
    a.push_back(static_cast<std::uint32_t>(pow2(bits)));
  return a;
}

std::vector<std::uint32_t> source_sizes(const MappedIndex& mapped) {
  std::vector<std::uint32_t> s;
  for (size_t i = 0; i < mapped.source_count; ++i)
    s.push_back(mapped.instance.messages[i].alphabet);
  return s;
}

void validate_mapped_pair(const AugmentedInstance& aug,
                          const MappedIndex& mapped) {
  const NetworkInstance& net = aug.net;
  if (mapped.source_count != net.messages.size() ||
      mapped.edge_bits.size() != net.edges.size())
    throw InputError("index instance is not the image of this network");
  for (size_t s = 0; s < net.messages.size(); ++s)
    if (mapped.instance.messages[s].id != net.messages[s].id ||
        mapped.instance.messages[s].alphabet != net.messages[s].alphabet)
      throw InputError("index instance is not the image of this network");
  for (size_t e = 0; e < net.edges.size(); ++e)
    if (mapped.edge_bits[e] != floor_scaled(net.edges[e].capacity, mapped.uses))
      throw InputError("index instance is not the image of this network");
}

bool all_receivers_decode(const IndexInstance& inst, const IndexCode& code,
                          const std::vector<std::uint32_t>& vals,
                          std::uint64_t b) {
  auto sizes = inst.message_sizes();
  for (size_t t = 0; t < inst.receivers.size(); ++t) {
    const auto& rx = inst.receivers[t];
    std::vector<std::uint32_t> has_vals, want_vals, want_sizes;
    for (size_t m : rx.has) has_vals.push_back(vals[m]);
    for (size_t m : rx.wants) {
      want_vals.push_back(vals[m]);
      want_sizes.push_back(sizes[m]);
    }
    if (code.decode(inst, t, b, has_vals) != pack_mixed(want_vals, want_sizes))
      return false;
  }
  return true;
}

// has-tuple of a mapped-index receiver attached to vertex v, assembled from
// network-side values: origin messages first (message order), then in-edge
// messages (edge order); this matches the sorted has-set of the mapping.
std::vector<std::uint32_t> has_values_for_vertex(
    const std::vector<std::uint32_t>& origin_vals,
    const std::vector<std::uint32_t>& in_edge_vals) {
  std::vector<std::uint32_t> has = origin_vals;
  has.insert(has.end(), in_edge_vals.begin(), in_edge_vals.end());
  return has;
}

}  // namespace

std::vector<Pmf> uniform_index_pmfs(const IndexInstance& inst) {
  std::vector<Pmf> out;
  for (const auto& m : inst.messages) out.push_back(Pmf::uniform(m.alphabet));
  return out;
}

std::vector<Pmf> uniform_network_pmfs(const NetworkInstance& inst) {
  std::vector<Pmf> out;
  for (const auto& m : inst.messages) out.push_back(Pmf::uniform(m.alphabet));
  return out;
}

NetworkCode translate_i2n(const IndexInstance& inst, const IndexCode& code,
                          const MappedNetwork& mapped) {
  inst.validate();
  code.validate(inst);
  if (mapped.source_vertex.size() != inst.messages.size() ||
      mapped.receiver_vertex.size() != inst.receivers.size())
    throw InputError("network instance is not the image of the index instance");
  if (mapped.codeword_bits != code.codeword_bits)
    throw InputError("mapped bottleneck capacity does not fit the codeword");
  const NetworkInstance& net = mapped.net;

  NetworkCode out;
  out.uses = mapped.uses;
  out.node_keys.assign(net.vertices.size(), Pmf::uniform(1));
  out.node_keys[mapped.hub1] = code.effective_key_pmf();
  out.edge_encoders.assign(net.edges.size(), {});

  // Source links transmit the message verbatim.
  for (size_t i = 0; i < inst.messages.size(); ++i) {
    std::uint32_t a = inst.messages[i].alphabet;
    std::vector<std::uint64_t> table(a);
    for (std::uint32_t x = 0; x < a; ++x) table[x] = x;
    for (size_t e : net.out_edges(mapped.source_vertex[i]))
      out.edge_encoders[e] = table;
  }

  // The bottleneck carries the broadcast encoder; each incoming link of the
  // relay holds one source message (values beyond the message alphabet are
  // impossible inputs, reduced mod the alphabet).
  {
    auto relay_in = net.in_edges(mapped.hub1);
    std::vector<size_t> msg_of_pos(relay_in.size());
    std::vector<std::uint32_t> dom;
    for (size_t p = 0; p < relay_in.size(); ++p) {
      size_t i = 0;
      while (mapped.source_hub_edge[i] != relay_in[p]) ++i;
      msg_of_pos[p] = i;
      dom.push_back(static_cast<std::uint32_t>(
          edge_alphabet(net, out.uses, relay_in[p])));
    }
    dom.push_back(code.effective_key_alphabet());
    std::uint64_t space = space_size(dom);
    std::vector<std::uint64_t> table(space);
    std::vector<std::uint32_t> msg_vals(inst.messages.size());
    for (std::uint64_t r = 0; r < space; ++r) {
      auto vals = unpack_mixed(r, dom);
      for (size_t p = 0; p < relay_in.size(); ++p)
        msg_vals[msg_of_pos[p]] =
            vals[p] % inst.messages[msg_of_pos[p]].alphabet;
      table[r] = code.encode(inst, msg_vals, vals.back());
    }
    out.edge_encoders[mapped.bottleneck_edge] = std::move(table);
  }

  // Fan-out links copy the bottleneck value.
  {
    std::uint64_t cw = pow2(code.codeword_bits);
    std::vector<std::uint64_t> copy_table(cw);
    for (std::uint64_t b = 0; b < cw; ++b) copy_table[b] = b;
    for (size_t e : mapped.fanout_edge) out.edge_encoders[e] = copy_table;
  }

  // Receiver decoders carry over, reading side links plus the fan-out link.
  for (size_t j = 0; j < inst.receivers.size(); ++j) {
    size_t tj = mapped.receiver_vertex[j];
    auto in = net.in_edges(tj);
    std::vector<std::uint32_t> dom;
    std::vector<std::optional<size_t>> side_msg_of_pos(in.size());
    size_t fan_pos = SIZE_MAX;
    for (size_t p = 0; p < in.size(); ++p) {
      dom.push_back(
          static_cast<std::uint32_t>(edge_alphabet(net, out.uses, in[p])));
      if (in[p] == mapped.fanout_edge[j]) {
        fan_pos = p;
        continue;
      }
      size_t tail = net.edges[in[p]].tail;
      size_t i = 0;
      while (mapped.source_vertex[i] != tail) ++i;
      side_msg_of_pos[p] = i;
    }
    std::uint64_t space = space_size(dom);
    std::vector<std::uint64_t> table(space);
    const auto& has = inst.receivers[j].has;
    for (std::uint64_t r = 0; r < space; ++r) {
      auto vals = unpack_mixed(r, dom);
      std::vector<std::uint32_t> has_vals(has.size());
      for (size_t p = 0; p < in.size(); ++p) {
        if (!side_msg_of_pos[p]) continue;
        size_t i = *side_msg_of_pos[p];
        size_t slot = std::lower_bound(has.begin(), has.end(), i) - has.begin();
        has_vals[slot] = vals[p] % inst.messages[i].alphabet;
      }
      table[r] = code.decode(inst, j, vals[fan_pos], has_vals);
    }
    out.decoders[tj] = std::move(table);
  }

  out.validate(net);
  return out;
}

IndexCode translate_n2i(const IndexInstance& inst, const MappedNetwork& mapped,
                        const NetworkCode& code,
                        const std::vector<Pmf>& msg_pmfs) {
  inst.validate();
  code.validate(mapped.net);
  if (code.uses != mapped.uses)
    throw InputError("code block length does not match the mapped instance");
  const NetworkInstance& net = mapped.net;

  // Source links must be deterministic functions of their message.
  for (size_t i = 0; i < inst.messages.size(); ++i) {
    size_t si = mapped.source_vertex[i];
    std::uint32_t a = inst.messages[i].alphabet;
    std::uint32_t ka = code.node_keys[si].support_size();
    for (size_t e : net.out_edges(si)) {
      const auto& table = code.edge_encoders[e];
      for (std::uint32_t x = 0; x < a; ++x)
        for (std::uint32_t z = 1; z < ka; ++z)
          if (table[x * ka + z] != table[x * ka + 0])
            throw InputError("source link '" + net.edges[e].id(net.vertices) +
                             "' is not a deterministic function of its message");
    }
  }

  std::uint64_t cw = pow2(mapped.codeword_bits);
  std::uint32_t ka2 = code.node_keys[mapped.hub2].support_size();

  // If the fan-out links do not copy the bottleneck verbatim, replace them
  // with copies: fix the fan-out key at its error-minimizing value and fold
  // the old re-encoding into the receiver decoders. Error cannot increase,
  // and no eavesdropper taps a fan-out link.
  bool copies = true;
  for (size_t e : mapped.fanout_edge) {
    const auto& table = code.edge_encoders[e];
    for (std::uint64_t b = 0; b < cw && copies; ++b)
      for (std::uint32_t z = 0; z < ka2 && copies; ++z)
        if (table[b * ka2 + z] != b) copies = false;
  }

  NetworkCode work = code;
  if (!copies) {
    Rat best_pe;
    std::uint32_t best_z = 0;
    for (std::uint32_t z = 0; z < ka2; ++z) {
      NetworkCode probe = code;
      probe.node_keys[mapped.hub2] = Pmf::point(ka2, z);
      Rat pe = eval_network_error(net, probe, msg_pmfs);
      if (z == 0 || pe < best_pe) {
        best_pe = pe;
        best_z = z;
      }
    }
    work.node_keys[mapped.hub2] = Pmf::uniform(1);
    std::vector<std::uint64_t> copy_table(cw);
    for (std::uint64_t b = 0; b < cw; ++b) copy_table[b] = b;
    for (size_t j = 0; j < inst.receivers.size(); ++j) {
      size_t e = mapped.fanout_edge[j];
      const auto& fan = code.edge_encoders[e];
      size_t tj = mapped.receiver_vertex[j];
      auto in = net.in_edges(tj);
      std::vector<std::uint32_t> dom;
      size_t fan_pos = SIZE_MAX;
      for (size_t p = 0; p < in.size(); ++p) {
        dom.push_back(
            static_cast<std::uint32_t>(edge_alphabet(net, code.uses, in[p])));
        if (in[p] == e) fan_pos = p;
      }
      const auto& old_table = code.decoders.at(tj);
      std::vector<std::uint64_t> table(old_table.size());
      for (std::uint64_t r = 0; r < table.size(); ++r) {
        auto vals = unpack_mixed(r, dom);
        vals[fan_pos] = static_cast<std::uint32_t>(
            fan[vals[fan_pos] * ka2 + best_z]);
        table[r] = old_table[pack_mixed(vals, dom)];
      }
      work.decoders[tj] = std::move(table);
      work.edge_encoders[e] = copy_table;
    }
    work.validate(net);
  }

  IndexCode icode;
  icode.codeword_bits = mapped.codeword_bits;
  const Pmf& z1 = work.node_keys[mapped.hub1];
  if (z1.support_size() > 1) {
    icode.key_alphabet = z1.support_size();
    icode.key_pmf = z1;
  }

  // Broadcast encoder = global encoding of the bottleneck link.
  auto msg_sizes = inst.message_sizes();
  std::uint64_t msg_space = inst.message_space();
  std::uint32_t key_alpha = icode.effective_key_alphabet();
  auto relay_in = net.in_edges(mapped.hub1);
  std::vector<size_t> msg_of_pos(relay_in.size());
  std::vector<std::uint32_t> relay_dom;
  for (size_t p = 0; p < relay_in.size(); ++p) {
    size_t i = 0;
    while (mapped.source_hub_edge[i] != relay_in[p]) ++i;
    msg_of_pos[p] = i;
    relay_dom.push_back(static_cast<std::uint32_t>(
        edge_alphabet(net, work.uses, relay_in[p])));
  }
  relay_dom.push_back(work.node_keys[mapped.hub1].support_size());
  icode.encoder.assign(msg_space * key_alpha, 0);
  for (std::uint64_t mr = 0; mr < msg_space; ++mr) {
    auto mvals = unpack_mixed(mr, msg_sizes);
    std::vector<std::uint32_t> relay_vals(relay_dom.size(), 0);
    for (size_t p = 0; p < relay_in.size(); ++p) {
      size_t i = msg_of_pos[p];
      size_t si = mapped.source_vertex[i];
      std::uint32_t ka_src = work.node_keys[si].support_size();
      relay_vals[p] = static_cast<std::uint32_t>(
          work.edge_encoders[relay_in[p]][mvals[i] * ka_src + 0]);
    }
    for (std::uint32_t z = 0; z < key_alpha; ++z) {
      relay_vals.back() = z;
      icode.encoder[mr * key_alpha + z] =
          work.edge_encoders[mapped.bottleneck_edge][pack_mixed(relay_vals,
                                                                relay_dom)];
    }
  }

  // Receiver decoders: feed the broadcast word where the fan-out link was
  // and the encoded side messages where the side links were.
  for (size_t j = 0; j < inst.receivers.size(); ++j) {
    size_t tj = mapped.receiver_vertex[j];
    auto in = net.in_edges(tj);
    std::vector<std::uint32_t> dom;
    std::vector<std::optional<size_t>> side_msg_of_pos(in.size());
    size_t fan_pos = SIZE_MAX;
    for (size_t p = 0; p < in.size(); ++p) {
      dom.push_back(
          static_cast<std::uint32_t>(edge_alphabet(net, work.uses, in[p])));
      if (in[p] == mapped.fanout_edge[j]) {
        fan_pos = p;
        continue;
      }
      size_t tail = net.edges[in[p]].tail;
      size_t i = 0;
      while (mapped.source_vertex[i] != tail) ++i;
      side_msg_of_pos[p] = i;
    }
    const auto& has = inst.receivers[j].has;
    std::vector<std::uint32_t> has_sizes;
    for (size_t m : has) has_sizes.push_back(msg_sizes[m]);
    std::uint64_t has_space = 1;
    for (auto s : has_sizes) has_space *= s;
    std::vector<std::uint64_t> table(cw * has_space);
    for (std::uint64_t b = 0; b < cw; ++b) {
      for (std::uint64_t hr = 0; hr < has_space; ++hr) {
        auto hvals = unpack_mixed(hr, has_sizes);
        std::vector<std::uint32_t> in_vals(in.size(), 0);
        in_vals[fan_pos] = static_cast<std::uint32_t>(b);
        for (size_t p = 0; p < in.size(); ++p) {
          if (!side_msg_of_pos[p]) continue;
          size_t i = *side_msg_of_pos[p];
          size_t slot =
              std::lower_bound(has.begin(), has.end(), i) - has.begin();
          size_t si = mapped.source_vertex[i];
          std::uint32_t ka_src = work.node_keys[si].support_size();
          in_vals[p] = static_cast<std::uint32_t>(
              work.edge_encoders[in[p]][hvals[slot] * ka_src + 0]);
        }
        table[b * has_space + hr] = work.decoders.at(tj)[pack_mixed(in_vals,
                                                                    dom)];
      }
    }
    icode.decoders.push_back(std::move(table));
  }

  icode.validate(inst);
  return icode;
}

IndexCode translate_n2i_code(const AugmentedInstance& aug,
                             const MappedIndex& mapped,
                             const NetworkCode& code) {
  validate_mapped_pair(aug, mapped);
  code.validate(aug.net);
  if (!code.deterministic())
    throw InputError("code is randomized: augment the instance first");
  if (code.uses != mapped.uses)
    throw InputError("code block length does not match the mapping");
  const NetworkInstance& net = aug.net;
  const IndexInstance& inst = mapped.instance;

  GlobalTables g = global_encodings(net, code);
  auto alphas = edge_alphas(mapped);
  std::uint64_t edge_space = mapped.edge_space();
  std::uint64_t src_space = mapped.source_space();

  IndexCode icode;
  icode.codeword_bits = mapped.n_hat;
  icode.encoder.assign(src_space * edge_space, 0);
  for (std::uint64_t sr = 0; sr < src_space; ++sr) {
    for (std::uint64_t er = 0; er < edge_space; ++er) {
      auto evals = unpack_mixed(er, alphas);
      std::uint64_t b = 0;
      for (size_t e = 0; e < net.edges.size(); ++e) {
        std::uint64_t comp = (evals[e] + g.edge_values[e][sr]) % alphas[e];
        b = b * alphas[e] + comp;
      }
      icode.encoder[sr * edge_space + er] = b;
    }
  }

  // Per-receiver decoders. Both classes first recover the global encodings
  // of the in-edges of their vertex from the broadcast word and their
  // side-information edge messages.
  icode.decoders.assign(inst.receivers.size(), {});
  auto build_decoder = [&](size_t rx_index, size_t vertex,
                           std::optional<size_t> decode_edge) {
    const auto& rx = inst.receivers[rx_index];
    auto msg_sizes = inst.message_sizes();
    std::vector<std::uint32_t> has_sizes;
    for (size_t m : rx.has) has_sizes.push_back(msg_sizes[m]);
    std::uint64_t has_space = 1;
    for (auto s : has_sizes) has_space *= s;
    std::vector<std::uint64_t> table(edge_space * has_space);

    auto in = net.in_edges(vertex);
    auto origins = net.origin_messages(vertex);
    for (std::uint64_t b = 0; b < edge_space; ++b) {
      auto comps = unpack_mixed(b, alphas);  // broadcast components per edge
      for (std::uint64_t hr = 0; hr < has_space; ++hr) {
        auto hvals = unpack_mixed(hr, has_sizes);
        auto value_of = [&](size_t msg) -> std::uint32_t {
          size_t slot =
              std::lower_bound(rx.has.begin(), rx.has.end(), msg) -
              rx.has.begin();
          return hvals[slot];
        };
        // g'_d for the in-edges of the vertex
        std::vector<std::uint32_t> gin, gin_sizes;
        for (size_t d : in) {
          std::uint32_t xe = value_of(mapped.edge_message[d]);
          std::uint32_t gd = static_cast<std::uint32_t>(
              (comps[d] + alphas[d] - xe) % alphas[d]);
          gin.push_back(gd);
          gin_sizes.push_back(alphas[d]);
        }
        std::vector<std::uint32_t> ovals, osizes;
        for (size_t m : origins) {
          ovals.push_back(value_of(m));
          osizes.push_back(msg_sizes[m]);
        }
        std::vector<std::uint32_t> dvals = gin, dsizes = gin_sizes;
        dvals.insert(dvals.end(), ovals.begin(), ovals.end());
        dsizes.insert(dsizes.end(), osizes.begin(), osizes.end());
        std::uint64_t result;
        if (decode_edge) {
          // evaluate the edge encoder, then peel the broadcast component
          size_t e = *decode_edge;
          dvals.push_back(0);  // unit key dimension
          dsizes.push_back(1);
          std::uint64_t ge = code.edge_encoders[e][pack_mixed(dvals, dsizes)];
          result = (comps[e] + alphas[e] - ge % alphas[e]) % alphas[e];
        } else {
          result = code.decoders.at(vertex)[pack_mixed(dvals, dsizes)];
        }
        table[b * has_space + hr] = result;
      }
    }
    icode.decoders[rx_index] = std::move(table);
  };

  for (size_t v = 0; v < net.vertices.size(); ++v)
    if (mapped.receiver_of_vertex[v])
      build_decoder(*mapped.receiver_of_vertex[v], v, {});
  for (size_t e = 0; e < net.edges.size(); ++e)
    build_decoder(mapped.receiver_of_edge[e], net.edges[e].tail, e);

  icode.validate(inst);
  return icode;
}

std::vector<std::uint64_t> decodable_set(const MappedIndex& mapped,
                                         const IndexCode& code,
                                         std::uint64_t source_rank) {
  const IndexInstance& inst = mapped.instance;
  if (!code.deterministic())
    throw InputError("decodable set needs a deterministic code");
  code.validate(inst);
  auto alphas = edge_alphas(mapped);
  auto src_sizes = source_sizes(mapped);
  std::uint64_t edge_space = mapped.edge_space();
  std::vector<std::uint64_t> out;
  auto svals = unpack_mixed(source_rank, src_sizes);
  for (std::uint64_t er = 0; er < edge_space; ++er) {
    auto evals = unpack_mixed(er, alphas);
    std::vector<std::uint32_t> vals = svals;
    vals.insert(vals.end(), evals.begin(), evals.end());
    std::uint64_t b = code.encoder[source_rank * edge_space + er];
    if (all_receivers_decode(inst, code, vals, b)) out.push_back(er);
  }
  return out;
}

GoodSets good_sets(const MappedIndex& mapped, const IndexCode& code) {
  std::uint64_t edge_space = mapped.edge_space();
  std::uint64_t src_space = mapped.source_space();
  GoodSets gs;
  gs.member.assign(edge_space, std::vector<bool>(src_space, false));
  gs.count.assign(edge_space, 0);
  for (std::uint64_t sr = 0; sr < src_space; ++sr) {
    for (std::uint64_t er : decodable_set(mapped, code, sr)) {
      std::uint64_t sigma = code.encoder[sr * edge_space + er];
      if (!gs.member[sigma][sr]) {
        gs.member[sigma][sr] = true;
        ++gs.count[sigma];
      }
    }
  }
  return gs;
}

NetworkCode build_network_code_from_sigma(const AugmentedInstance& aug,
                                          const MappedIndex& mapped,
                                          const IndexCode& code,
                                          std::uint64_t sigma) {
  validate_mapped_pair(aug, mapped);
  code.validate(mapped.instance);
  if (!code.deterministic())
    throw InputError("sigma rebuild needs a deterministic index code");
  if (sigma >= mapped.edge_space()) throw InputError("sigma out of range");
  const NetworkInstance& net = aug.net;
  const IndexInstance& inst = mapped.instance;
  auto msg_sizes = inst.message_sizes();

  NetworkCode out;
  out.uses = mapped.uses;
  out.node_keys.assign(net.vertices.size(), Pmf::uniform(1));
  out.edge_encoders.assign(net.edges.size(), {});

  auto domain_for_vertex = [&](size_t v) {
    std::vector<std::uint32_t> dom;
    for (size_t d : net.in_edges(v))
      dom.push_back(
          static_cast<std::uint32_t>(edge_alphabet(net, out.uses, d)));
    for (size_t m : net.origin_messages(v))
      dom.push_back(net.messages[m].alphabet);
    return dom;
  };

  for (size_t e = 0; e < net.edges.size(); ++e) {
    size_t u = net.edges[e].tail;
    auto dom = domain_for_vertex(u);
    size_t n_in = net.in_edges(u).size();
    std::vector<std::uint32_t> enc_dom = dom;
    enc_dom.push_back(1);  // unit key dimension
    std::uint64_t space = space_size(dom);
    std::vector<std::uint64_t> table(space);
    for (std::uint64_t r = 0; r < space; ++r) {
      auto vals = unpack_mixed(r, dom);
      std::vector<std::uint32_t> origin_vals(vals.begin() + n_in, vals.end());
      std::vector<std::uint32_t> in_vals(vals.begin(), vals.begin() + n_in);
      auto has_vals = has_values_for_vertex(origin_vals, in_vals);
      table[r] =
          code.decode(inst, mapped.receiver_of_edge[e], sigma, has_vals);
    }
    out.edge_encoders[e] = std::move(table);
  }

  for (size_t v : net.destination_vertices()) {
    auto dom = domain_for_vertex(v);
    size_t n_in = net.in_edges(v).size();
    std::uint64_t space = space_size(dom);
    std::vector<std::uint64_t> table(space);
    for (std::uint64_t r = 0; r < space; ++r) {
      auto vals = unpack_mixed(r, dom);
      std::vector<std::uint32_t> origin_vals(vals.begin() + n_in, vals.end());
      std::vector<std::uint32_t> in_vals(vals.begin(), vals.begin() + n_in);
      auto has_vals = has_values_for_vertex(origin_vals, in_vals);
      table[r] =
          code.decode(inst, *mapped.receiver_of_vertex[v], sigma, has_vals);
    }
    out.decoders[v] = std::move(table);
  }

  out.validate(net);
  return out;
}

std::vector<std::uint64_t> phi_sigma(const AugmentedInstance& aug,
                                     const MappedIndex& mapped,
                                     const IndexCode& code,
                                     std::uint64_t sigma) {
  NetworkCode built = build_network_code_from_sigma(aug, mapped, code, sigma);
  GlobalTables g = global_encodings(aug.net, built);
  auto alphas = edge_alphas(mapped);
  std::vector<std::uint64_t> out(g.realizations);
  for (std::uint64_t sr = 0; sr < g.realizations; ++sr) {
    std::uint64_t packed = 0;
    for (size_t e = 0; e < aug.net.edges.size(); ++e)
      packed = packed * alphas[e] + g.edge_values[e][sr];
    out[sr] = packed;
  }
  return out;
}

SigmaSelection select_sigma(const AugmentedInstance& aug,
                            const MappedIndex& mapped, const IndexCode& code) {
  validate_mapped_pair(aug, mapped);
  const IndexInstance& inst = mapped.instance;
  if (!code.deterministic())
    throw InputError("sigma selection needs a deterministic index code");

  JointPmf joint = index_joint(inst, code, uniform_index_pmfs(inst));
  GoodSets gs = good_sets(mapped, code);
  Pmf pb = joint.marginal_pmf("bcast");
  std::uint64_t src_space = mapped.source_space();
  std::uint64_t edge_space = mapped.edge_space();

  SigmaSelection sel;
  bool found = false;
  for (std::uint64_t sigma = 0; sigma < edge_space; ++sigma) {
    if (pb.weight(static_cast<std::uint32_t>(sigma)) == 0) continue;
    JointPmf js = joint.condition({{"bcast", static_cast<std::uint32_t>(sigma)}});
    Rat p1 = js.event_probability({{"decode_ok", 1}});
    Rat p0 = 1 - p1;

    SigmaDiagnostics diag;
    diag.sigma = sigma;
    diag.broadcast_prob = pb.weight(static_cast<std::uint32_t>(sigma));
    diag.bad_fraction =
        Rat(static_cast<unsigned long>(src_space - gs.count[sigma])) /
        Rat(static_cast<unsigned long>(src_space));

    double sec = 0.0;
    for (const auto& r : inst.eavesdroppers) {
      std::vector<std::string> a, b;
      for (size_t m : r.targets) a.push_back("msg:" + inst.messages[m].id);
      for (size_t m : r.side) b.push_back("msg:" + inst.messages[m].id);
      std::vector<std::string> d{"decode_ok"};
      double t1 = js.mutual_information(a, d);
      double t2 = js.conditional_mutual_information(a, d, b);
      double t3 =
          p1 > 0 ? js.conditional_mi_given_event(a, b, {{"decode_ok", 1}})
                 : 0.0;
      double t4 =
          p0 > 0 ? js.conditional_mi_given_event(a, b, {{"decode_ok", 0}})
                 : 0.0;
      sec += t1 - t2 + rat_double(p1) * t3 + rat_double(p0) * t4;
    }
    diag.security_sum = sec;
    diag.objective = rat_double(diag.bad_fraction) + sec;
    sel.scanned.push_back(diag);
    if (!found || diag.objective < sel.objective) {
      found = true;
      sel.sigma = sigma;
      sel.objective = diag.objective;
    }
  }
  if (!found)
    throw EvalError("no broadcast value has positive probability");
  return sel;
}

double zeta(double eps, std::uint64_t n_hat, double tv, double tv_coeff) {
  if (eps < 0.0 || eps > 1.0) throw InputError("zeta needs epsilon in [0,1]");
  if (tv < 0.0 || tv > 1.0)
    throw InputError("zeta needs total variation in [0,1]");
  double a = eps * (1.0 + tv_coeff * tv);
  double b = eps * (1.0 + eps * std::ldexp(1.0, static_cast<int>(n_hat)));
  return std::min({a, b, 1.0});
}

std::string zeta_active_branch(double eps, std::uint64_t n_hat, double tv,
                               double tv_coeff) {
  double z = zeta(eps, n_hat, tv, tv_coeff);
  if (z == eps * (1.0 + tv_coeff * tv)) return "tv";
  if (z == eps * (1.0 + eps * std::ldexp(1.0, static_cast<int>(n_hat))))
    return "eps2n";
  return "one";
}

double gamma_bound(double eps, double eta, size_t r_count,
                   std::uint64_t n_hat, double log_source_alphabet,
                   double zeta_val) {
  if (eps < 0.0 || eps > 0.5)
    throw InputError("gamma needs epsilon in [0, 0.5]");
  if (eta < 0.0) throw InputError("gamma needs nonnegative eta");
  double nh = static_cast<double>(n_hat);
  double a = static_cast<double>(r_count) * eta + zeta_val;
  if (a >= 1.0) return nh;
  double branch =
      a * (1.0 / (1.0 - eps) + (kLog2E + nh) / (1.0 - a) +
           log_source_alphabet) +
      (1.0 / (1.0 - eps)) * static_cast<double>(r_count) *
          binary_entropy(eps) -
      std::log2(1.0 - a);
  return std::min(branch, nh);
}

double gamma_prime_bound(double eps, double eta, size_t r_count,
                         std::uint64_t n_hat, double log_source_alphabet) {
  return gamma_bound(eps, eta, r_count, n_hat, log_source_alphabet, eps);
}

Lemma1Report check_lemma1(const AugmentedInstance& aug,
                          const MappedIndex& mapped, const IndexCode& code,
                          std::uint64_t sigma, size_t eavesdropper) {
  validate_mapped_pair(aug, mapped);
  const IndexInstance& inst = mapped.instance;
  if (eavesdropper >= inst.eavesdroppers.size())
    throw InputError("unknown eavesdropper");
  if (sigma >= mapped.edge_space()) throw InputError("sigma out of range");

  GoodSets gs = good_sets(mapped, code);
  std::uint64_t src_space = mapped.source_space();
  Rat eps_prime = Rat(static_cast<unsigned long>(src_space -
                                                 gs.count[sigma])) /
                  Rat(static_cast<unsigned long>(src_space));
  if (eps_prime == 1)
    throw InputError("no decodable realization maps to this sigma");

  const auto& r = inst.eavesdroppers[eavesdropper];
  std::vector<std::string> a, b;
  for (size_t m : r.targets) a.push_back("msg:" + inst.messages[m].id);
  for (size_t m : r.side) b.push_back("msg:" + inst.messages[m].id);
  std::vector<std::string> ab = a;
  ab.insert(ab.end(), b.begin(), b.end());

  JointPmf joint = index_joint(inst, code, uniform_index_pmfs(inst));
  JointPmf cond = joint.condition(
      {{"decode_ok", 1}, {"bcast", static_cast<std::uint32_t>(sigma)}});
  double h_b_cond = cond.entropy(b);
  double h_b_given_a_cond = cond.entropy(ab) - cond.entropy(a);
  double mi_cond = cond.mutual_information(a, b);

  NetworkCode built = build_network_code_from_sigma(aug, mapped, code, sigma);
  JointPmf njoint =
      network_joint(aug.net, built, uniform_network_pmfs(aug.net));
  const auto& nr = aug.net.eavesdroppers[eavesdropper];
  std::vector<std::string> na, nb;
  for (size_t m : nr.targets) na.push_back("msg:" + aug.net.messages[m].id);
  for (size_t e : nr.taps)
    nb.push_back("edge:" + aug.net.edges[e].id(aug.net.vertices));
  std::vector<std::string> nab = na;
  nab.insert(nab.end(), nb.begin(), nb.end());
  double h_bp = njoint.entropy(nb);
  double h_bp_given_ap = njoint.entropy(nab) - njoint.entropy(na);
  double lhs = njoint.mutual_information(na, nb);

  double ep = rat_double(eps_prime);
  double slack3 =
      ep * std::log2(static_cast<double>(src_space)) - std::log2(1.0 - ep);
  double slack4 = ep / (1.0 - ep) *
                  (kLog2E + static_cast<double>(mapped.n_hat));

  Lemma1Report rep;
  rep.eps_prime = ep;
  rep.index_cond_mi = mi_cond;
  rep.lhs = lhs;
  rep.rhs = mi_cond + slack3 + slack4;
  rep.holds = lhs <= rep.rhs + kLeakageTol;
  rep.prop3_lhs = h_bp - h_b_cond;
  rep.prop3_rhs = slack3;
  rep.prop3_holds = rep.prop3_lhs <= slack3 + kLeakageTol;
  rep.prop4_lhs = h_b_given_a_cond - h_bp_given_ap;
  rep.prop4_rhs = slack4;
  rep.prop4_holds = rep.prop4_lhs <= slack4 + kLeakageTol;
  return rep;
}

std::optional<TheoremId> theorem_id_from_string(const std::string& s) {
  if (s == "thm1_fwd") return TheoremId::Thm1Fwd;
  if (s == "thm1_bwd") return TheoremId::Thm1Bwd;
  if (s == "thm2_p1") return TheoremId::Thm2P1;
  if (s == "thm2_p2a") return TheoremId::Thm2P2a;
  if (s == "thm2_p2b") return TheoremId::Thm2P2b;
  if (s == "cor1") return TheoremId::Cor1;
  return std::nullopt;
}

std::string TranslationReport::format() const {
  std::string out = "report " + name + "\n";
  out += "source-error " + rat_str(source_error) + "\n";
  for (size_t i = 0; i < source_leakage.size(); ++i)
    out += "source-leakage " + eavesdropper_ids[i] + " " +
           fmt_bits(source_leakage[i]) + "\n";
  out += "target-error " + rat_str(target_error) + "\n";
  for (size_t i = 0; i < target_leakage.size(); ++i)
    out += "target-leakage " + eavesdropper_ids[i] + " " +
           fmt_bits(target_leakage[i]) + "\n";
  if (chosen_sigma) out += "sigma " + std::to_string(*chosen_sigma) + "\n";
  if (measured_tv) out += "tv " + rat_str(*measured_tv) + "\n";
  if (bound_zeta) out += "zeta " + fmt_bits(*bound_zeta) + "\n";
  if (zeta_branch) out += "zeta-branch " + *zeta_branch + "\n";
  if (bound_gamma) out += "gamma " + fmt_bits(*bound_gamma) + "\n";
  if (bound_gamma_prime)
    out += "gamma-prime " + fmt_bits(*bound_gamma_prime) + "\n";
  for (const auto& [label, ok] : clauses)
    out += "clause " + label + (ok ? " pass" : " fail") + "\n";
  out += std::string("satisfied ") + (satisfied ? "true" : "false") + "\n";
  return out;
}

namespace {

std::vector<std::string> eavesdropper_ids_of(const IndexInstance& inst) {
  std::vector<std::string> ids;
  for (const auto& r : inst.eavesdroppers) ids.push_back(r.id);
  return ids;
}

bool leakages_close(const std::vector<double>& x, const std::vector<double>& y,
                    double tol) {
  if (x.size() != y.size()) return false;
  for (size_t i = 0; i < x.size(); ++i)
    if (std::abs(x[i] - y[i]) > tol) return false;
  return true;
}

bool leakages_bounded(const std::vector<double>& x,
                      const std::vector<double>& cap, double tol) {
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] > cap[i] + tol) return false;
  return true;
}

}  // namespace

TranslationReport verify_thm1_fwd(const IndexInstance& inst,
                                  const IndexCode& code,
                                  const std::vector<Pmf>& msg_pmfs) {
  TranslationReport rep;
  rep.name = "thm1_fwd";
  rep.eavesdropper_ids = eavesdropper_ids_of(inst);
  rep.source_error = eval_index_error(inst, code, msg_pmfs);
  rep.source_leakage = eval_index_leakage(inst, code, msg_pmfs);
  MappedNetwork mapped = index_to_network(inst, 1, code.codeword_bits);
  NetworkCode ncode = translate_i2n(inst, code, mapped);
  rep.target_error = eval_network_error(mapped.net, ncode, msg_pmfs);
  rep.target_leakage = eval_network_leakage(mapped.net, ncode, msg_pmfs);
  rep.add_clause("error_equal", rep.target_error == rep.source_error);
  rep.add_clause("leakage_equal",
                 leakages_close(rep.source_leakage, rep.target_leakage,
                                kLeakageTol));
  return rep;
}

TranslationReport verify_thm1_bwd(const IndexInstance& inst,
                                  const MappedNetwork& mapped,
                                  const NetworkCode& code,
                                  const std::vector<Pmf>& msg_pmfs) {
  TranslationReport rep;
  rep.name = "thm1_bwd";
  rep.eavesdropper_ids = eavesdropper_ids_of(inst);
  rep.source_error = eval_network_error(mapped.net, code, msg_pmfs);
  rep.source_leakage = eval_network_leakage(mapped.net, code, msg_pmfs);
  IndexCode icode = translate_n2i(inst, mapped, code, msg_pmfs);
  rep.target_error = eval_index_error(inst, icode, msg_pmfs);
  rep.target_leakage = eval_index_leakage(inst, icode, msg_pmfs);
  rep.add_clause("error_not_increased",
                 rep.target_error <= rep.source_error);
  rep.add_clause("leakage_bounded",
                 leakages_bounded(rep.target_leakage, rep.source_leakage,
                                  kLeakageTol));
  rep.add_clause("leakage_equal",
                 leakages_close(rep.source_leakage, rep.target_leakage,
                                kLeakageTol));
  return rep;
}

TranslationReport verify_thm2_p1(const AugmentedInstance& aug,
                                 const MappedIndex& mapped,
                                 const NetworkCode& code,
                                 const std::vector<Pmf>& aug_pmfs) {
  TranslationReport rep;
  rep.name = "thm2_p1";
  rep.eavesdropper_ids = eavesdropper_ids_of(mapped.instance);
  rep.source_error = eval_network_error(aug.net, code, aug_pmfs);
  rep.source_leakage = eval_network_leakage(aug.net, code, aug_pmfs);
  IndexCode icode = translate_n2i_code(aug, mapped, code);
  std::vector<Pmf> index_pmfs = aug_pmfs;
  for (size_t e = 0; e < aug.net.edges.size(); ++e)
    index_pmfs.push_back(Pmf::uniform(
        mapped.instance.messages[mapped.edge_message[e]].alphabet));
  rep.target_error = eval_index_error(mapped.instance, icode, index_pmfs);
  rep.target_leakage = eval_index_leakage(mapped.instance, icode, index_pmfs);
  rep.add_clause("error_not_increased",
                 rep.target_error <= rep.source_error);
  rep.add_clause("leakage_equal",
                 leakages_close(rep.source_leakage, rep.target_leakage,
                                kLeakageTol));
  return rep;
}

TranslationReport verify_thm2_p2a(const AugmentedInstance& aug,
                                  const MappedIndex& mapped,
                                  const IndexCode& code) {
  const IndexInstance& inst = mapped.instance;
  auto pmfs = uniform_index_pmfs(inst);
  TranslationReport rep;
  rep.name = "thm2_p2a";
  rep.eavesdropper_ids = eavesdropper_ids_of(inst);
  rep.source_error = eval_index_error(inst, code, pmfs);
  if (rep.source_error != 0)
    throw InputError("part 2a needs a zero-error index code");
  rep.source_leakage = eval_index_leakage(inst, code, pmfs);

  auto net_pmfs = uniform_network_pmfs(aug.net);
  bool all_zero_error = true;
  bool found_sigma = false;
  for (std::uint64_t sigma = 0; sigma < mapped.edge_space(); ++sigma) {
    NetworkCode built = build_network_code_from_sigma(aug, mapped, code, sigma);
    Rat pe = eval_network_error(aug.net, built, net_pmfs);
    if (pe != 0) all_zero_error = false;
    auto leak = eval_network_leakage(aug.net, built, net_pmfs);
    if (!found_sigma &&
        leakages_bounded(leak, rep.source_leakage, kLeakageTol)) {
      found_sigma = true;
      rep.chosen_sigma = sigma;
      rep.target_error = pe;
      rep.target_leakage = leak;
    }
  }
  if (!found_sigma) {
    rep.target_error = 0;
    rep.target_leakage.assign(rep.source_leakage.size(), 0.0);
  }
  rep.add_clause("error_zero_for_every_sigma", all_zero_error);
  rep.add_clause("leakage_sigma_exists", found_sigma);
  return rep;
}

TranslationReport verify_thm2_p2b(const AugmentedInstance& aug,
                                  const MappedIndex& mapped,
                                  const IndexCode& code, double tv_coeff,
                                  std::optional<std::uint64_t> sigma) {
  const IndexInstance& inst = mapped.instance;
  auto pmfs = uniform_index_pmfs(inst);
  TranslationReport rep;
  rep.name = "thm2_p2b";
  rep.eavesdropper_ids = eavesdropper_ids_of(inst);
  rep.source_error = eval_index_error(inst, code, pmfs);
  rep.source_leakage = eval_index_leakage(inst, code, pmfs);
  double eps = rat_double(rep.source_error);
  if (rep.source_error == 0)
    throw InputError("part 2b needs a nonzero-error code; use part 2a");
  if (eps > 0.5)
    throw InputError("theorem hypothesis needs epsilon <= 0.5");

  double eta = 0.0;
  for (double l : rep.source_leakage) eta = std::max(eta, l);
  JointPmf joint = index_joint(inst, code, pmfs);
  Pmf pb = joint.marginal_pmf("bcast");
  rep.measured_tv = total_variation(
      pb, Pmf::uniform(static_cast<std::uint32_t>(mapped.edge_space())));
  double tv = rat_double(*rep.measured_tv);
  double z = zeta(eps, mapped.n_hat, tv, tv_coeff);
  size_t r_count = inst.eavesdroppers.size();
  double log_alpha = std::log2(static_cast<double>(mapped.source_space()));
  double g = gamma_bound(eps, eta, r_count, mapped.n_hat, log_alpha, z);
  rep.bound_zeta = z;
  rep.zeta_branch = zeta_active_branch(eps, mapped.n_hat, tv, tv_coeff);
  rep.bound_gamma = g;

  std::uint64_t chosen = sigma ? *sigma : select_sigma(aug, mapped, code).sigma;
  rep.chosen_sigma = chosen;
  NetworkCode built = build_network_code_from_sigma(aug, mapped, code, chosen);
  auto net_pmfs = uniform_network_pmfs(aug.net);
  rep.target_error = eval_network_error(aug.net, built, net_pmfs);
  rep.target_leakage = eval_network_leakage(aug.net, built, net_pmfs);

  double error_cap = static_cast<double>(r_count) * eta + z;
  rep.add_clause("error_bound",
                 rat_double(rep.target_error) <= error_cap + kLeakageTol);
  std::vector<double> caps(rep.target_leakage.size(), g);
  rep.add_clause("leakage_bound",
                 leakages_bounded(rep.target_leakage, caps, 1e-6));
  return rep;
}

TranslationReport verify_cor1(const AugmentedInstance& aug,
                              const MappedIndex& mapped, const IndexCode& code,
                              bool linear_encoder) {
  if (!linear_encoder)
    throw InputError("corollary 1 needs a linear index code");
  const IndexInstance& inst = mapped.instance;
  auto pmfs = uniform_index_pmfs(inst);
  TranslationReport rep;
  rep.name = "cor1";
  rep.eavesdropper_ids = eavesdropper_ids_of(inst);
  rep.source_error = eval_index_error(inst, code, pmfs);
  rep.source_leakage = eval_index_leakage(inst, code, pmfs);
  double eps = rat_double(rep.source_error);
  if (rep.source_error == 0 || eps > 0.5)
    throw InputError("corollary hypothesis needs epsilon in (0, 0.5]");

  double eta = 0.0;
  for (double l : rep.source_leakage) eta = std::max(eta, l);
  JointPmf joint = index_joint(inst, code, pmfs);
  Pmf pb = joint.marginal_pmf("bcast");
  rep.measured_tv = total_variation(
      pb, Pmf::uniform(static_cast<std::uint32_t>(mapped.edge_space())));
  rep.add_clause("broadcast_uniform", *rep.measured_tv == 0);

  size_t r_count = inst.eavesdroppers.size();
  double log_alpha = std::log2(static_cast<double>(mapped.source_space()));
  double gp = gamma_prime_bound(eps, eta, r_count, mapped.n_hat, log_alpha);
  rep.bound_gamma_prime = gp;
  rep.bound_zeta = eps;  // uniform broadcast forces zeta = eps

  std::uint64_t chosen = select_sigma(aug, mapped, code).sigma;
  rep.chosen_sigma = chosen;
  NetworkCode built = build_network_code_from_sigma(aug, mapped, code, chosen);
  auto net_pmfs = uniform_network_pmfs(aug.net);
  rep.target_error = eval_network_error(aug.net, built, net_pmfs);
  rep.target_leakage = eval_network_leakage(aug.net, built, net_pmfs);

  double error_cap = static_cast<double>(r_count) * eta + eps;
  rep.add_clause("error_bound",
                 rat_double(rep.target_error) <= error_cap + kLeakageTol);
  std::vector<double> caps(rep.target_leakage.size(), gp);
  rep.add_clause("leakage_bound",
                 leakages_bounded(rep.target_leakage, caps, 1e-6));
  return rep;
}

}  // namespace sce
