#include "sce/serialize.hpp"

#include <fstream>
#include <sstream>

#include "sce/error.hpp"

namespace sce {

namespace {

std::string join_ids(const std::vector<size_t>& indices,
                     const std::vector<std::string>& ids) {
  if (indices.empty()) return "-";
  std::string out;
  for (size_t i = 0; i < indices.size(); ++i) {
    if (i) out += ",";
    out += ids[indices[i]];
  }
  return out;
}

std::vector<std::string> split_csv(const std::string& s) {
  if (s == "-") return {};
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string join_table(const std::vector<std::uint64_t>& table) {
  std::string out;
  for (size_t i = 0; i < table.size(); ++i) {
    if (i) out += " ";
    out += std::to_string(table[i]);
  }
  return out;
}

struct Tokens {
  std::vector<std::string> parts;
  int line = 0;

  const std::string& at(size_t i) const {
    if (i >= parts.size()) throw ParseError("missing field", line);
    return parts[i];
  }
  std::uint64_t num(size_t i) const {
    const std::string& s = at(i);
    try {
      size_t pos = 0;
      std::uint64_t v = std::stoull(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ParseError("bad number '" + s + "'", line);
    }
  }
};

Pmf parse_pmf_weights(const Tokens& t, size_t from, size_t count) {
  std::vector<Rat> w;
  for (size_t i = 0; i < count; ++i) {
    try {
      w.push_back(rat_parse(t.at(from + i)));
    } catch (const InputError& e) {
      throw ParseError(e.what(), t.line);
    }
  }
  if (t.parts.size() != from + count)
    throw ParseError("pmf weight count mismatch", t.line);
  try {
    return Pmf(std::move(w));
  } catch (const InputError& e) {
    throw ParseError(e.what(), t.line);
  }
}

std::vector<std::uint64_t> parse_table(const Tokens& t, size_t from) {
  std::vector<std::uint64_t> out;
  for (size_t i = from; i < t.parts.size(); ++i) out.push_back(t.num(i));
  return out;
}

}  // namespace

bool SceFile::operator==(const SceFile& other) const {
  auto inst_eq = [&]() {
    if (kind == Kind::Index) {
      if (!index || !other.index) return index.has_value() == other.index.has_value();
      const auto& a = *index;
      const auto& b = *other.index;
      if (a.messages.size() != b.messages.size() ||
          a.receivers.size() != b.receivers.size() ||
          a.eavesdroppers.size() != b.eavesdroppers.size())
        return false;
      for (size_t i = 0; i < a.messages.size(); ++i)
        if (a.messages[i].id != b.messages[i].id ||
            a.messages[i].alphabet != b.messages[i].alphabet)
          return false;
      for (size_t i = 0; i < a.receivers.size(); ++i)
        if (a.receivers[i].id != b.receivers[i].id ||
            a.receivers[i].wants != b.receivers[i].wants ||
            a.receivers[i].has != b.receivers[i].has)
          return false;
      for (size_t i = 0; i < a.eavesdroppers.size(); ++i)
        if (a.eavesdroppers[i].id != b.eavesdroppers[i].id ||
            a.eavesdroppers[i].targets != b.eavesdroppers[i].targets ||
            a.eavesdroppers[i].side != b.eavesdroppers[i].side)
          return false;
      return true;
    }
    if (!network || !other.network)
      return network.has_value() == other.network.has_value();
    const auto& a = *network;
    const auto& b = *other.network;
    if (a.vertices != b.vertices || a.edges.size() != b.edges.size() ||
        a.messages.size() != b.messages.size() ||
        a.eavesdroppers.size() != b.eavesdroppers.size())
      return false;
    for (size_t i = 0; i < a.edges.size(); ++i)
      if (a.edges[i].tail != b.edges[i].tail ||
          a.edges[i].head != b.edges[i].head ||
          a.edges[i].copy != b.edges[i].copy ||
          a.edges[i].capacity != b.edges[i].capacity)
        return false;
    for (size_t i = 0; i < a.messages.size(); ++i)
      if (a.messages[i].id != b.messages[i].id ||
          a.messages[i].alphabet != b.messages[i].alphabet ||
          a.messages[i].origin != b.messages[i].origin ||
          a.messages[i].destinations != b.messages[i].destinations)
        return false;
    for (size_t i = 0; i < a.eavesdroppers.size(); ++i)
      if (a.eavesdroppers[i].id != b.eavesdroppers[i].id ||
          a.eavesdroppers[i].targets != b.eavesdroppers[i].targets ||
          a.eavesdroppers[i].taps != b.eavesdroppers[i].taps)
        return false;
    return true;
  };
  auto code_eq = [&]() {
    if (kind == Kind::Index) {
      if (index_code.has_value() != other.index_code.has_value()) return false;
      if (!index_code) return true;
      const auto& a = *index_code;
      const auto& b = *other.index_code;
      return a.codeword_bits == b.codeword_bits &&
             a.key_alphabet == b.key_alphabet && a.key_pmf == b.key_pmf &&
             a.encoder == b.encoder && a.decoders == b.decoders;
    }
    if (network_code.has_value() != other.network_code.has_value())
      return false;
    if (!network_code) return true;
    const auto& a = *network_code;
    const auto& b = *other.network_code;
    return a.uses == b.uses && a.node_keys == b.node_keys &&
           a.edge_encoders == b.edge_encoders && a.decoders == b.decoders;
  };
  return kind == other.kind && meta == other.meta &&
         augmented_original_count == other.augmented_original_count &&
         pmfs == other.pmfs && inst_eq() && code_eq();
}

std::string serialize(const SceFile& file) {
  std::string out = "sce 1\n";
  out += std::string("kind ") +
         (file.kind == SceFile::Kind::Index ? "index" : "network") + "\n";
  for (const auto& [k, v] : file.meta) out += "meta " + k + " " + v + "\n";

  if (file.kind == SceFile::Kind::Index) {
    const IndexInstance& inst = file.index.value();
    std::vector<std::string> ids;
    for (const auto& m : inst.messages) {
      ids.push_back(m.id);
      out += "message " + m.id + " alphabet " + std::to_string(m.alphabet) +
             "\n";
    }
    for (const auto& t : inst.receivers)
      out += "receiver " + t.id + " wants " + join_ids(t.wants, ids) +
             " has " + join_ids(t.has, ids) + "\n";
    for (const auto& r : inst.eavesdroppers)
      out += "eavesdropper " + r.id + " targets " + join_ids(r.targets, ids) +
             " side " + join_ids(r.side, ids) + "\n";
    for (const auto& m : inst.messages) {
      auto it = file.pmfs.find(m.id);
      if (it == file.pmfs.end()) continue;
      out += "pmf " + m.id;
      for (const Rat& w : it->second.weights()) out += " " + rat_str(w);
      out += "\n";
    }
    if (file.index_code) {
      const IndexCode& code = *file.index_code;
      out += "code\n";
      out += "bits " + std::to_string(code.codeword_bits) + "\n";
      out += "key " + std::to_string(code.key_alphabet) + "\n";
      if (code.key_alphabet > 0) {
        out += "keypmf";
        for (const Rat& w : code.key_pmf.weights()) out += " " + rat_str(w);
        out += "\n";
      }
      out += "encoder " + join_table(code.encoder) + "\n";
      for (size_t t = 0; t < code.decoders.size(); ++t)
        out += "decoder " + inst.receivers[t].id + " " +
               join_table(code.decoders[t]) + "\n";
      out += "end\n";
    }
    return out;
  }

  const NetworkInstance& net = file.network.value();
  for (const auto& v : net.vertices) out += "vertex " + v + "\n";
  for (const auto& e : net.edges)
    out += "edge " + net.vertices[e.tail] + " " + net.vertices[e.head] + " " +
           std::to_string(e.copy) + " capacity " + rat_str(e.capacity) + "\n";
  for (const auto& m : net.messages) {
    out += "message " + m.id + " alphabet " + std::to_string(m.alphabet) +
           " origin " + net.vertices[m.origin] + " dests " +
           join_ids(m.destinations, net.vertices) + "\n";
  }
  {
    std::vector<std::string> msg_ids, edge_ids;
    for (const auto& m : net.messages) msg_ids.push_back(m.id);
    for (const auto& e : net.edges) edge_ids.push_back(e.id(net.vertices));
    for (const auto& r : net.eavesdroppers)
      out += "eavesdropper " + r.id + " targets " +
             join_ids(r.targets, msg_ids) + " taps " +
             join_ids(r.taps, edge_ids) + "\n";
  }
  if (file.augmented_original_count)
    out += "augmented " + std::to_string(*file.augmented_original_count) +
           "\n";
  for (const auto& m : net.messages) {
    auto it = file.pmfs.find(m.id);
    if (it == file.pmfs.end()) continue;
    out += "pmf " + m.id;
    for (const Rat& w : it->second.weights()) out += " " + rat_str(w);
    out += "\n";
  }
  if (file.network_code) {
    const NetworkCode& code = *file.network_code;
    out += "code\n";
    out += "uses " + std::to_string(code.uses) + "\n";
    for (size_t v = 0; v < net.vertices.size(); ++v) {
      if (code.node_keys[v].support_size() <= 1) continue;
      out += "key " + net.vertices[v] + " " +
             std::to_string(code.node_keys[v].support_size());
      for (const Rat& w : code.node_keys[v].weights()) out += " " + rat_str(w);
      out += "\n";
    }
    for (size_t e = 0; e < net.edges.size(); ++e)
      out += "encoder " + net.edges[e].id(net.vertices) + " " +
             join_table(code.edge_encoders[e]) + "\n";
    for (const auto& [v, table] : code.decoders)
      out += "decoder " + net.vertices[v] + " " + join_table(table) + "\n";
    out += "end\n";
  }
  return out;
}

SceFile parse_sce(const std::string& text) {
  SceFile file;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool seen_header = false, seen_kind = false, in_code = false,
       code_done = false;
  std::vector<std::string> decoder_owner;  // receiver/vertex id per decoder

  // index-kind construction buffers
  struct PendingReceiver {
    std::string id;
    std::vector<std::string> wants, has;
    int line;
  };
  struct PendingEav {
    std::string id;
    std::vector<std::string> targets, observed;
    int line;
  };
  std::vector<PendingReceiver> receivers;
  std::vector<PendingEav> eavesdroppers;
  struct PendingMessage {
    std::string id;
    std::uint32_t alphabet;
    std::string origin;
    std::vector<std::string> dests;
  };
  std::vector<PendingMessage> messages;
  std::vector<std::pair<Tokens, int>> pmf_lines;
  std::vector<std::pair<std::string, std::vector<std::uint64_t>>> decoders;
  std::map<std::string, std::pair<std::uint32_t, Pmf>> node_key_lines;
  std::vector<std::pair<std::string, std::vector<std::uint64_t>>> encoders;
  IndexCode icode;
  NetworkCode ncode;
  bool has_code = false;
  bool icode_bits_seen = false, icode_key_seen = false,
       icode_encoder_seen = false, ncode_uses_seen = false;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string s = raw;
    // '#' opens a comment only at line start or after whitespace; edge ids
    // carry '#' internally ("tail->head#copy")
    for (size_t pos = 0; pos < s.size(); ++pos)
      if (s[pos] == '#' &&
          (pos == 0 || s[pos - 1] == ' ' || s[pos - 1] == '\t')) {
        s = s.substr(0, pos);
        break;
      }
    Tokens t;
    t.line = line_no;
    {
      std::istringstream ls(s);
      std::string w;
      while (ls >> w) t.parts.push_back(w);
    }
    if (t.parts.empty()) continue;
    const std::string& head = t.parts[0];

    if (!seen_header) {
      if (head != "sce" || t.at(1) != "1")
        throw ParseError("expected header 'sce 1'", line_no);
      seen_header = true;
      continue;
    }
    if (!seen_kind) {
      if (head != "kind") throw ParseError("expected 'kind'", line_no);
      if (t.at(1) == "index")
        file.kind = SceFile::Kind::Index;
      else if (t.at(1) == "network")
        file.kind = SceFile::Kind::Network;
      else
        throw ParseError("kind must be 'index' or 'network'", line_no);
      seen_kind = true;
      continue;
    }

    if (in_code) {
      if (head == "end") {
        in_code = false;
        code_done = true;
      } else if (file.kind == SceFile::Kind::Index) {
        if (head == "bits") {
          icode.codeword_bits = t.num(1);
          icode_bits_seen = true;
        } else if (head == "key") {
          icode.key_alphabet = static_cast<std::uint32_t>(t.num(1));
          icode_key_seen = true;
        } else if (head == "keypmf") {
          icode.key_pmf = parse_pmf_weights(t, 1, icode.key_alphabet);
        } else if (head == "encoder") {
          icode.encoder = parse_table(t, 1);
          icode_encoder_seen = true;
        } else if (head == "decoder") {
          decoders.emplace_back(t.at(1), parse_table(t, 2));
        } else {
          throw ParseError("unknown code line '" + head + "'", line_no);
        }
      } else {
        if (head == "uses") {
          ncode.uses = t.num(1);
          ncode_uses_seen = true;
        } else if (head == "key") {
          std::uint32_t alpha = static_cast<std::uint32_t>(t.num(2));
          node_key_lines[t.at(1)] = {alpha, parse_pmf_weights(t, 3, alpha)};
        } else if (head == "encoder") {
          encoders.emplace_back(t.at(1), parse_table(t, 2));
        } else if (head == "decoder") {
          decoders.emplace_back(t.at(1), parse_table(t, 2));
        } else {
          throw ParseError("unknown code line '" + head + "'", line_no);
        }
      }
      continue;
    }

    if (head == "meta") {
      std::string value = t.at(2);
      for (size_t i = 3; i < t.parts.size(); ++i) value += " " + t.parts[i];
      file.meta[t.at(1)] = value;
    } else if (head == "message") {
      PendingMessage m;
      m.id = t.at(1);
      if (t.at(2) != "alphabet")
        throw ParseError("expected 'alphabet'", line_no);
      m.alphabet = static_cast<std::uint32_t>(t.num(3));
      if (file.kind == SceFile::Kind::Network) {
        if (t.at(4) != "origin") throw ParseError("expected 'origin'", line_no);
        m.origin = t.at(5);
        if (t.at(6) != "dests") throw ParseError("expected 'dests'", line_no);
        m.dests = split_csv(t.at(7));
      }
      messages.push_back(m);
    } else if (head == "vertex") {
      if (file.kind != SceFile::Kind::Network)
        throw ParseError("'vertex' is a network line", line_no);
      if (!file.network) file.network.emplace();
      file.network->vertices.push_back(t.at(1));
    } else if (head == "edge") {
      if (file.kind != SceFile::Kind::Network)
        throw ParseError("'edge' is a network line", line_no);
      if (!file.network) file.network.emplace();
      if (t.at(4) != "capacity")
        throw ParseError("expected 'capacity'", line_no);
      NetworkEdge e;
      try {
        e.tail = file.network->vertex_index(t.at(1));
        e.head = file.network->vertex_index(t.at(2));
        e.capacity = rat_parse(t.at(5));
      } catch (const InputError& err) {
        throw ParseError(err.what(), line_no);
      }
      e.copy = static_cast<std::uint32_t>(t.num(3));
      file.network->edges.push_back(e);
    } else if (head == "receiver") {
      if (file.kind != SceFile::Kind::Index)
        throw ParseError("'receiver' is an index line", line_no);
      if (t.at(2) != "wants" || t.at(4) != "has")
        throw ParseError("expected 'wants ... has ...'", line_no);
      receivers.push_back(
          {t.at(1), split_csv(t.at(3)), split_csv(t.at(5)), line_no});
    } else if (head == "eavesdropper") {
      if (t.at(2) != "targets")
        throw ParseError("expected 'targets'", line_no);
      const std::string& fourth = t.at(4);
      if (file.kind == SceFile::Kind::Index && fourth != "side")
        throw ParseError("expected 'side'", line_no);
      if (file.kind == SceFile::Kind::Network && fourth != "taps")
        throw ParseError("expected 'taps'", line_no);
      eavesdroppers.push_back(
          {t.at(1), split_csv(t.at(3)), split_csv(t.at(5)), line_no});
    } else if (head == "augmented") {
      if (file.kind != SceFile::Kind::Network)
        throw ParseError("'augmented' is a network line", line_no);
      file.augmented_original_count = t.num(1);
    } else if (head == "pmf") {
      pmf_lines.emplace_back(t, line_no);
    } else if (head == "code") {
      if (code_done) throw ParseError("second code section", line_no);
      in_code = true;
      has_code = true;
    } else {
      throw ParseError("unknown line '" + head + "'", line_no);
    }
  }
  if (!seen_header) throw ParseError("empty file", 0);
  if (!seen_kind) throw ParseError("missing 'kind'", line_no);
  if (in_code) throw ParseError("unterminated code section", line_no);

  // Assemble the instance.
  if (file.kind == SceFile::Kind::Index) {
    IndexInstance inst;
    for (const auto& m : messages) inst.messages.push_back({m.id, m.alphabet});
    auto resolve = [&](const std::vector<std::string>& names, int line) {
      std::vector<size_t> out;
      for (const auto& n : names) {
        try {
          out.push_back(inst.message_index(n));
        } catch (const InputError& e) {
          throw ParseError(e.what(), line);
        }
      }
      std::sort(out.begin(), out.end());
      return out;
    };
    for (const auto& r : receivers)
      inst.receivers.push_back(
          {r.id, resolve(r.wants, r.line), resolve(r.has, r.line)});
    for (const auto& r : eavesdroppers)
      inst.eavesdroppers.push_back(
          {r.id, resolve(r.targets, r.line), resolve(r.observed, r.line)});
    inst.validate();
    file.index = std::move(inst);
  } else {
    if (!file.network) throw ParseError("network file without vertices", 0);
    NetworkInstance& net = *file.network;
    for (const auto& m : messages) {
      NetworkMessage nm;
      nm.id = m.id;
      nm.alphabet = m.alphabet;
      nm.origin = net.vertex_index(m.origin);
      for (const auto& d : m.dests)
        nm.destinations.push_back(net.vertex_index(d));
      std::sort(nm.destinations.begin(), nm.destinations.end());
      net.messages.push_back(nm);
    }
    for (const auto& r : eavesdroppers) {
      NetworkEavesdropper nr;
      nr.id = r.id;
      for (const auto& n : r.targets) {
        bool found = false;
        for (size_t i = 0; i < net.messages.size(); ++i)
          if (net.messages[i].id == n) {
            nr.targets.push_back(i);
            found = true;
          }
        if (!found)
          throw ParseError("unknown message id '" + n + "'", r.line);
      }
      for (const auto& n : r.observed) {
        try {
          nr.taps.push_back(net.edge_index(n));
        } catch (const InputError& e) {
          throw ParseError(e.what(), r.line);
        }
      }
      std::sort(nr.targets.begin(), nr.targets.end());
      std::sort(nr.taps.begin(), nr.taps.end());
      net.eavesdroppers.push_back(nr);
    }
    net.validate();
    if (file.augmented_original_count &&
        *file.augmented_original_count > net.messages.size())
      throw ParseError("augmented original count exceeds message count", 0);
  }

  // Per-message pmfs.
  for (const auto& [t, ln] : pmf_lines) {
    const std::string& id = t.at(1);
    std::uint32_t alpha = 0;
    if (file.kind == SceFile::Kind::Index)
      alpha = file.index->messages[file.index->message_index(id)].alphabet;
    else {
      bool found = false;
      for (const auto& m : file.network->messages)
        if (m.id == id) {
          alpha = m.alphabet;
          found = true;
        }
      if (!found) throw ParseError("pmf for unknown message '" + id + "'", ln);
    }
    if (file.pmfs.count(id))
      throw ParseError("duplicate pmf for message '" + id + "'", ln);
    file.pmfs[id] = parse_pmf_weights(t, 2, alpha);
  }

  // Codes.
  if (has_code && file.kind == SceFile::Kind::Index) {
    if (!icode_bits_seen || !icode_key_seen || !icode_encoder_seen)
      throw ParseError("index code needs bits, key, and encoder lines", 0);
    icode.decoders.assign(file.index->receivers.size(), {});
    std::vector<bool> seen(file.index->receivers.size(), false);
    for (auto& [id, table] : decoders) {
      size_t t_idx = SIZE_MAX;
      for (size_t t2 = 0; t2 < file.index->receivers.size(); ++t2)
        if (file.index->receivers[t2].id == id) t_idx = t2;
      if (t_idx == SIZE_MAX)
        throw ParseError("decoder for unknown receiver '" + id + "'", 0);
      if (seen[t_idx])
        throw ParseError("duplicate decoder for receiver '" + id + "'", 0);
      seen[t_idx] = true;
      icode.decoders[t_idx] = std::move(table);
    }
    icode.validate(*file.index);
    file.index_code = std::move(icode);
  } else if (has_code) {
    if (!ncode_uses_seen) throw ParseError("network code needs a uses line", 0);
    const NetworkInstance& net = *file.network;
    ncode.node_keys.assign(net.vertices.size(), Pmf::uniform(1));
    for (const auto& [vid, key] : node_key_lines)
      ncode.node_keys[net.vertex_index(vid)] = key.second;
    ncode.edge_encoders.assign(net.edges.size(), {});
    std::vector<bool> enc_seen(net.edges.size(), false);
    for (auto& [eid, table] : encoders) {
      size_t e = net.edge_index(eid);
      if (enc_seen[e])
        throw ParseError("duplicate encoder for edge '" + eid + "'", 0);
      enc_seen[e] = true;
      ncode.edge_encoders[e] = std::move(table);
    }
    for (auto& [vid, table] : decoders) {
      size_t v = net.vertex_index(vid);
      if (ncode.decoders.count(v))
        throw ParseError("duplicate decoder for vertex '" + vid + "'", 0);
      ncode.decoders[v] = std::move(table);
    }
    ncode.validate(net);
    file.network_code = std::move(ncode);
  }

  return file;
}

SceFile load_sce_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sce(buf.str());
}

void save_sce_file(const std::string& path, const SceFile& file) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << serialize(file);
}

std::vector<Pmf> resolve_index_pmfs(const SceFile& file) {
  const IndexInstance& inst = file.index.value();
  std::vector<Pmf> out;
  for (const auto& m : inst.messages) {
    auto it = file.pmfs.find(m.id);
    out.push_back(it == file.pmfs.end() ? Pmf::uniform(m.alphabet)
                                        : it->second);
  }
  return out;
}

std::vector<Pmf> resolve_network_pmfs(const SceFile& file) {
  const NetworkInstance& net = file.network.value();
  std::vector<Pmf> out;
  for (const auto& m : net.messages) {
    auto it = file.pmfs.find(m.id);
    out.push_back(it == file.pmfs.end() ? Pmf::uniform(m.alphabet)
                                        : it->second);
  }
  return out;
}

AugmentedInstance as_augmented(const SceFile& file) {
  if (file.kind != SceFile::Kind::Network || !file.augmented_original_count)
    throw InputError("file is not an augmented network instance");
  AugmentedInstance aug;
  aug.net = file.network.value();
  aug.original_message_count = *file.augmented_original_count;
  const NetworkInstance& net = aug.net;
  if (net.messages.size() !=
      aug.original_message_count + net.vertices.size())
    throw InputError("augmented instance needs one key message per vertex");
  for (size_t v = 0; v < net.vertices.size(); ++v) {
    const auto& km = net.messages[aug.key_message_of_vertex(v)];
    if (km.origin != v || !km.destinations.empty())
      throw InputError(
          "augmented key messages must follow the originals, one per vertex, "
          "demanded nowhere");
  }
  return aug;
}

}  // namespace sce
