#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sce/error.hpp"
#include "sce/mapping.hpp"
#include "sce/randomgen.hpp"
#include "sce/verify_suite.hpp"

using namespace sce;

TEST_CASE("four-message index instance maps to the 9-vertex network") {
  IndexInstance inst = fig1_index_instance();
  MappedNetwork m = index_to_network(inst);
  const NetworkInstance& net = m.net;

  CHECK(net.vertices.size() == 9);
  CHECK(net.edges.size() == 12);
  CHECK(net.vertices[m.hub1] == "1");
  CHECK(net.vertices[m.hub2] == "2");

  // structural identities: wants and side information survive the mapping
  for (size_t j = 0; j < inst.receivers.size(); ++j) {
    std::vector<size_t> wants, has;
    for (size_t i = 0; i < inst.messages.size(); ++i) {
      if (std::binary_search(net.messages[i].destinations.begin(),
                             net.messages[i].destinations.end(),
                             m.receiver_vertex[j]))
        wants.push_back(i);
      for (size_t e : net.out_edges(m.source_vertex[i]))
        if (net.edges[e].head == m.receiver_vertex[j]) has.push_back(i);
    }
    CHECK(wants == inst.receivers[j].wants);
    CHECK(has == inst.receivers[j].has);
  }

  // the eavesdropper taps the bottleneck and both outgoing links of s4
  REQUIRE(net.eavesdroppers.size() == 1);
  const auto& r = net.eavesdroppers[0];
  CHECK(r.targets == std::vector<size_t>{1});
  REQUIRE(r.taps.size() == 3);
  bool has_bottleneck = false;
  for (size_t e : r.taps) has_bottleneck |= e == m.bottleneck_edge;
  CHECK(has_bottleneck);
  for (size_t e : r.taps)
    if (e != m.bottleneck_edge) CHECK(net.edges[e].tail == m.source_vertex[3]);

  // exactly one relay collects every source, over one bottleneck link
  for (size_t i = 0; i < inst.messages.size(); ++i) {
    bool feeds_relay = false;
    for (size_t e : net.out_edges(m.source_vertex[i]))
      feeds_relay |= net.edges[e].head == m.hub1;
    CHECK(feeds_relay);
  }
  CHECK(net.out_edges(m.hub1).size() == 1);
  CHECK(net.in_edges(m.hub2) == std::vector<size_t>{m.bottleneck_edge});
}

TEST_CASE("smallest index instance maps to a path") {
  IndexInstance inst;
  inst.messages = {{"1", 2}};
  inst.receivers = {{"t1", {0}, {}}};
  inst.validate();
  MappedNetwork m = index_to_network(inst);
  CHECK(m.net.vertices.size() == 4);
  REQUIRE(m.net.edges.size() == 3);
  CHECK(m.net.edges[0].id(m.net.vertices) == "s1->1#0");
  CHECK(m.net.edges[1].id(m.net.vertices) == "1->2#0");
  CHECK(m.net.edges[2].id(m.net.vertices) == "2->t1#0");
}

TEST_CASE("empty eavesdropper side information taps only the bottleneck") {
  IndexInstance inst = fig1_index_instance();
  inst.eavesdroppers = {{"r", {1}, {}}};
  MappedNetwork m = index_to_network(inst);
  CHECK(m.net.eavesdroppers[0].taps ==
        std::vector<size_t>{m.bottleneck_edge});
}

TEST_CASE("two-link instance maps to the five-message index instance") {
  P1Fixture f = fig2_p1_fixture();
  const MappedIndex& m = f.mapped;
  const IndexInstance& inst = m.instance;

  CHECK(inst.messages.size() == 5);
  CHECK(inst.receivers.size() == 3);
  CHECK(inst.eavesdroppers.size() == 2);
  CHECK(m.n_hat == 2);

  CHECK(inst.messages[0].id == "1");
  CHECK(inst.messages[1].id == "key:1");
  CHECK(inst.messages[2].id == "key:2");
  CHECK(inst.messages[2].alphabet == 1);
  CHECK(inst.messages[3].id == "edge:1->2#0");
  CHECK(inst.messages[4].id == "edge:1->2#1");

  // the destination receiver knows both edge messages plus its local key
  const auto& t2 = inst.receivers[0];
  CHECK(t2.id == "t:2");
  CHECK(t2.wants == std::vector<size_t>{0});
  CHECK(t2.has == std::vector<size_t>({2, 3, 4}));

  // each edge receiver knows the tail's inputs and origin messages
  const auto& te1 = inst.receivers[1];
  CHECK(te1.id == "t:edge:1->2#0");
  CHECK(te1.wants == std::vector<size_t>{3});
  CHECK(te1.has == std::vector<size_t>({0, 1}));

  CHECK(inst.eavesdroppers[0].side == std::vector<size_t>{3});
  CHECK(inst.eavesdroppers[1].side == std::vector<size_t>{4});
  CHECK(inst.eavesdroppers[0].targets == std::vector<size_t>{0});
}

TEST_CASE("single-link network maps to two receivers") {
  NetworkInstance net;
  net.vertices = {"u", "v"};
  net.edges = {{0, 1, 0, Rat(1)}};
  net.messages = {{"m", 2, 0, {1}}};
  net.validate();
  NetworkCode code;
  code.uses = 1;
  code.node_keys = {Pmf::uniform(1), Pmf::uniform(1)};
  code.edge_encoders = {{0, 1}};
  code.decoders[1] = {0, 1};
  auto [aug, det] = augment(net, code);
  MappedIndex m = network_to_index(aug, 1);
  CHECK(m.instance.receivers.size() == 2);
  CHECK(m.n_hat == 1);
}

TEST_CASE("codeword length follows the floored capacity sum") {
  NetworkInstance net;
  net.vertices = {"u", "v"};
  net.edges = {{0, 1, 0, Rat(3, 2)}, {0, 1, 1, rat_u(7, 10)}};
  net.messages = {{"m", 2, 0, {1}}};
  net.validate();
  NetworkCode code;
  code.uses = 2;
  code.node_keys = {Pmf::uniform(1), Pmf::uniform(1)};
  // floor(3/2 * 2) = 3 bits, floor(7/10 * 2) = 1 bit
  code.edge_encoders = {{0, 1}, {0, 1}};
  code.decoders[1] = {0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0};
  auto [aug, det] = augment(net, code);
  MappedIndex m = network_to_index(aug, 2);
  CHECK(m.edge_bits == std::vector<std::uint64_t>({3, 1}));
  CHECK(m.n_hat == 4);
  CHECK(m.instance.messages[m.edge_message[0]].alphabet == 8);
  CHECK(m.instance.messages[m.edge_message[1]].alphabet == 2);
}

TEST_CASE("mapping counts are preserved for random instances") {
  Rng rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    NetworkInstance net = random_dag_instance(rng);
    NetworkCode code = random_network_code(net, 1, 2, false, rng);
    auto [aug, det] = augment(net, code);
    MappedIndex m = network_to_index(aug, 1);
    size_t destinations = aug.net.destination_vertices().size();
    CHECK(m.instance.receivers.size() == destinations + aug.net.edges.size());
    CHECK(m.instance.messages.size() ==
          aug.net.messages.size() + aug.net.edges.size());
    CHECK(m.instance.eavesdroppers.size() == aug.net.eavesdroppers.size());
    m.instance.validate();
  }
}

TEST_CASE("index-to-network images can be inverted") {
  IndexInstance inst = fig1_index_instance();
  for (std::uint64_t bits = 1; bits <= 3; ++bits) {
    MappedNetwork m = index_to_network(inst, 1, bits);
    IndexInstance back = invert_index_to_network(m.net);
    REQUIRE(back.messages.size() == inst.messages.size());
    for (size_t i = 0; i < inst.messages.size(); ++i)
      CHECK(back.messages[i].id == inst.messages[i].id);
    REQUIRE(back.receivers.size() == inst.receivers.size());
    for (size_t j = 0; j < inst.receivers.size(); ++j) {
      CHECK(back.receivers[j].wants == inst.receivers[j].wants);
      CHECK(back.receivers[j].has == inst.receivers[j].has);
    }
    REQUIRE(back.eavesdroppers.size() == 1);
    CHECK(back.eavesdroppers[0].targets == inst.eavesdroppers[0].targets);
    CHECK(back.eavesdroppers[0].side == inst.eavesdroppers[0].side);

    RecoveredMapping rec = recover_index_instance(m.net, 1);
    CHECK(rec.mapped.bottleneck_edge == m.bottleneck_edge);
    CHECK(rec.mapped.codeword_bits == bits);
  }
}

TEST_CASE("non-images are rejected") {
  IndexInstance inst = fig1_index_instance();
  MappedNetwork m = index_to_network(inst, 1, 2);
  NetworkInstance broken = m.net;
  broken.edges[m.bottleneck_edge].capacity = Rat(5);
  CHECK_THROWS_AS(recover_mapped_network(inst, broken, 1, 2), InputError);
}
