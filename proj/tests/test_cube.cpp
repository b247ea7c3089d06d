#include <doctest.h>

#include <set>

#include "latmon/cube.hpp"

using namespace latmon;

namespace {

Node mk(std::vector<std::uint32_t> eta, std::vector<std::uint8_t> phi) {
  return Node::from_sequences(eta, phi);
}

}  // namespace

TEST_CASE("bit ids are injective over the indexed nodes") {
  const Truncation t = Truncation::make(2, 3);
  std::set<std::uint64_t> seen;
  for (const auto& n : all_nodes(t, 3, 1000)) {
    if (n.last_phi()) continue;
    const std::uint64_t b = bit_id(t, n);
    CHECK(b < t.bit_count());
    CHECK(seen.insert(b).second);
    CHECK(bit_node(t, b) == n);
  }
  CHECK(seen.size() == t.bit_count());
  CHECK_THROWS_AS(bit_id(t, mk({0}, {1})), DomainError);
}

TEST_CASE("node literal flips polarity with the last phi entry") {
  const Truncation t = Truncation::make(1, 3);
  const Literal pos = node_literal(t, mk({0}, {0}));
  CHECK(pos.positive);
  CHECK(pos.bit == bit_id(t, mk({0}, {0})));

  const Literal neg = node_literal(t, mk({0}, {1}));
  CHECK_FALSE(neg.positive);
  CHECK(neg.bit == bit_id(t, mk({0}, {0})));

  const Literal deep = node_literal(t, mk({0, 0}, {0, 1}));
  CHECK_FALSE(deep.positive);
  CHECK(deep.bit == bit_id(t, mk({0, 0}, {0, 0})));

  // polarity involution between siblings, same bit
  for (const auto& n : all_nodes(t, 3, 1000)) {
    const Literal a = node_literal(t, n);
    const Literal b = node_literal(t, n.sibling());
    CHECK(a.bit == b.bit);
    CHECK(a.positive != b.positive);
  }
}

TEST_CASE("path cubes stack one literal per initial segment") {
  const Truncation t = Truncation::make(1, 3);
  const Cube root = path_cube(t, mk({0}, {0}));
  REQUIRE(root.size() == 1);
  CHECK(root.literals()[0] == Literal{bit_id(t, mk({0}, {0})), true});

  const Cube c = path_cube(t, mk({0, 0}, {0, 1}));
  REQUIRE(c.size() == 2);
  CHECK(c.literals()[0] == Literal{bit_id(t, mk({0}, {0})), true});
  CHECK(c.literals()[1] == Literal{bit_id(t, mk({0, 0}, {0, 0})), false});

  for (const auto& n : all_nodes(t, 3, 1000))
    CHECK(path_cube(t, n).size() == n.depth());

  CHECK_THROWS_AS(Cube({Literal{3, true}, Literal{3, false}}), DomainError);
}

TEST_CASE("explicit grounds realize every combination") {
  std::vector<std::uint64_t> bits{4, 7, 9};
  const auto g = ExplicitGround::over_bits(bits);
  CHECK(g.m() == 3);
  CHECK(g.point_count() == 8);
  // every full cube holds exactly one point
  for (int s = 0; s < 8; ++s) {
    std::vector<Literal> lits;
    for (int i = 0; i < 3; ++i)
      lits.push_back(
          Literal{bits[static_cast<std::size_t>(i)], ((s >> i) & 1) != 0});
    const Cube c{std::move(lits)};
    int hits = 0;
    for (std::uint64_t p = 0; p < 8; ++p) hits += g.contains(c, p);
    CHECK(hits == 1);
  }
  // k literals cut out 2^(m-k) points
  for (int k = 0; k <= 3; ++k) {
    std::vector<Literal> lits;
    for (int i = 0; i < k; ++i)
      lits.push_back(Literal{bits[static_cast<std::size_t>(i)], i % 2 == 0});
    const Cube c{std::move(lits)};
    int hits = 0;
    for (std::uint64_t p = 0; p < 8; ++p) hits += g.contains(c, p);
    CHECK(hits == (1 << (3 - k)));
  }
  // the trivial ground: one point, contained in the empty cube
  const auto g0 = ExplicitGround::over_bits({});
  CHECK(g0.point_count() == 1);
  CHECK(g0.contains(Cube{}, 0));

  CHECK_THROWS_AS(ExplicitGround::over_bits({1, 2, 3}, 2), ResourceError);
  CHECK_THROWS_AS(g.contains(Cube({Literal{1, true}}), 0), DomainError);
}

TEST_CASE("child cubes partition the parent cube") {
  const Truncation t = Truncation::make(2, 3);
  for (const auto& n : all_nodes(t, 2, 1000)) {
    for (std::uint32_t alpha = 0; alpha < t.kappa(); ++alpha) {
      const auto [c0, c1] = children(t, n, alpha);
      const Cube parent = path_cube(t, n);
      const Cube k0 = path_cube(t, c0);
      const Cube k1 = path_cube(t, c1);
      // symbolically: the parent's literals plus one fresh bit, both ways
      REQUIRE(k0.size() == parent.size() + 1);
      REQUIRE(k1.size() == parent.size() + 1);
      const auto g = ExplicitGround::covering(t, {Word({c0}), Word({c1})});
      for (std::uint64_t p = 0; p < g.point_count(); ++p) {
        const bool in_parent = g.contains(parent, p);
        const int in_kids = g.contains(k0, p) + g.contains(k1, p);
        CHECK(in_kids == (in_parent ? 1 : 0));
      }
    }
  }
}

TEST_CASE("assignments evaluate cubes three-valued") {
  const Truncation t = Truncation::make(1, 2);
  const Cube c = path_cube(t, mk({0, 0}, {0, 1}));
  Assignment a;
  CHECK(a.eval(c) == Assignment::Eval::Unknown);
  // contradicting one literal settles the cube even with bits missing
  a.set(bit_id(t, mk({0, 0}, {0, 0})), true);
  CHECK(a.eval(c) == Assignment::Eval::False);
  Assignment b;
  b.set(bit_id(t, mk({0}, {0})), true);
  b.set(bit_id(t, mk({0, 0}, {0, 0})), false);
  CHECK(b.eval(c) == Assignment::Eval::True);
  CHECK_FALSE(b.set(bit_id(t, mk({0}, {0})), false));
}

TEST_CASE("separating points split a node from a word") {
  const Truncation t2 = Truncation::make(2, 2);

  // complementary root sets
  {
    const Assignment a =
        separating_point(t2, mk({0}, {0}), Word({mk({0}, {1})}));
    CHECK(a.eval(path_cube(t2, mk({0}, {0}))) == Assignment::Eval::True);
    CHECK(a.eval(path_cube(t2, mk({0}, {1}))) == Assignment::Eval::False);
  }

  // distinct branches, solved by pinning both root bits
  {
    const Assignment a =
        separating_point(t2, mk({0}, {0}), Word({mk({1}, {0})}));
    CHECK(a.get(bit_id(t2, mk({0}, {0}))) == std::optional<bool>(true));
    CHECK(a.get(bit_id(t2, mk({1}, {0}))) == std::optional<bool>(false));
  }

  // exhaustively verified against an explicit ground
  {
    const Node n = mk({0, 1}, {0, 0});
    const Word q({mk({0}, {1}), mk({1, 0}, {0, 1}), mk({0, 1}, {0, 1})});
    const Assignment a = separating_point(t2, n, q);
    std::vector<Word> cover{q};
    cover.push_back(Word({n}));
    const auto g = ExplicitGround::covering(t2, cover);
    std::uint64_t consistent = 0;
    for (std::uint64_t p = 0; p < g.point_count(); ++p) {
      bool match = true;
      for (const auto& [bit, val] : a.bits())
        if (((p >> g.coordinate(bit)) & 1ull) != (val ? 1ull : 0ull))
          match = false;
      if (!match) continue;
      ++consistent;
      CHECK(g.contains(path_cube(t2, n), p));
      for (const auto& e : q.entries())
        CHECK_FALSE(g.contains(path_cube(t2, e), p));
    }
    CHECK(consistent > 0);
  }

  // preconditions: reduced word, no proper prefix, node absent
  CHECK_THROWS_AS(
      separating_point(t2, mk({0}, {0}),
                       Word({mk({0, 0}, {0, 0}), mk({0, 0}, {0, 1})})),
      DomainError);
  CHECK_THROWS_AS(
      separating_point(t2, mk({0, 0}, {0, 0}), Word({mk({0}, {0})})),
      DomainError);
  CHECK_THROWS_AS(separating_point(t2, mk({0}, {0}), Word({mk({0}, {0})})),
                  DomainError);
}
