#include <doctest.h>

#include <algorithm>
#include <random>

#include "zdim/semiring.hpp"

using namespace zdim;

namespace {

SemiringTables mod4_tables() {
  SemiringTables t;
  t.name = "Z4";
  t.order = 4;
  t.one = 1;
  t.add.assign(4, std::vector<int>(4));
  t.mul.assign(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      t.add[a][b] = (a + b) % 4;
      t.mul[a][b] = (a * b) % 4;
    }
  return t;
}

}  // namespace

TEST_SUITE("semiring") {
  TEST_CASE("boolean builtin has 1+1=1 and passes every axiom") {
    const auto b = builtin_boolean();
    CHECK(b.order() == 2);
    CHECK(b.add(1, 1) == 1);
    CHECK(b.mul(1, 1) == 1);
    CHECK(b.mul(0, 1) == 0);
    CHECK(b.mul(1, 0) == 0);
    const auto report = check_axioms(b.tables());
    CHECK(report.all_hold());
    CHECK(report.holds(Axiom::kEntire));
    CHECK(report.holds(Axiom::kAntinegative));
  }

  TEST_CASE("mod 4 integers fail antinegativity at (1,3)") {
    const auto report = check_axioms(mod4_tables());
    CHECK_FALSE(report.all_hold());
    CHECK_FALSE(report.holds(Axiom::kAntinegative));
    CHECK(report.verdict(Axiom::kAntinegative).witness == std::vector{1, 3});
    CHECK_FALSE(report.holds(Axiom::kEntire));
    CHECK(report.verdict(Axiom::kEntire).witness == std::vector{2, 2});
    // Z4 is still a commutative semiring.
    CHECK(report.holds(Axiom::kLeftDistributive));
    CHECK(report.holds(Axiom::kMulCommutative));
    CHECK_THROWS_AS(FiniteSemiring::validated(mod4_tables()), AxiomViolation);
  }

  TEST_CASE("chain of order 3 is a commutative entire antiring") {
    const auto c = builtin_chain(3);
    CHECK(c.one() == 2);
    CHECK(c.mul(1, 2) == 1);
    CHECK(c.add(1, 2) == 2);
    // Independent check over all 27 triples with max/min written out.
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int x = 0; x < 3; ++x) {
          CHECK(std::min(a, std::max(b, x)) == std::max(std::min(a, b), std::min(a, x)));
          CHECK(c.mul(a, c.add(b, x)) == c.add(c.mul(a, b), c.mul(a, x)));
        }
    CHECK(check_axioms(c.tables()).all_hold());
  }

  TEST_CASE("chain of order 2 equals the boolean semiring") {
    CHECK(builtin_chain(2) == builtin_boolean());
    CHECK_THROWS_AS(builtin_chain(1), InputError);
  }

  TEST_CASE("builtin names") {
    CHECK(builtin_by_name("boolean") == builtin_boolean());
    CHECK(builtin_by_name("chain4").order() == 4);
    CHECK_THROWS_AS(builtin_by_name("chain"), InputError);
    CHECK_THROWS_AS(builtin_by_name("lattice"), InputError);
  }

  TEST_CASE("malformed tables name the offending cell") {
    auto t = builtin_boolean().tables();
    t.add[1][1] = 7;
    try {
      check_axioms(t);
      FAIL("expected InputError");
    } catch (const InputError& e) {
      CHECK(std::string(e.what()).find("add[1][1]") != std::string::npos);
    }
    t = builtin_boolean().tables();
    t.mul.pop_back();
    CHECK_THROWS_AS(check_axioms(t), InputError);
    t = builtin_boolean().tables();
    t.order = 1;
    CHECK_THROWS_AS(check_axioms(t), InputError);
  }

  TEST_CASE("GF(2) fails only antinegativity") {
    auto t = builtin_boolean().tables();
    t.add[1][1] = 0;
    const auto report = check_axioms(t);
    for (const auto& v : report.verdicts) {
      CHECK_MESSAGE(v.holds == (v.axiom != Axiom::kAntinegative), axiom_name(v.axiom));
    }
    CHECK(report.verdict(Axiom::kAntinegative).witness == std::vector{1, 1});
  }

  TEST_CASE("witnesses replay on random tables") {
    std::mt19937 rng(20261016);
    for (int trial = 0; trial < 300; ++trial) {
      const int q = 2 + static_cast<int>(rng() % 3);
      SemiringTables t;
      t.name = "random";
      t.order = q;
      t.one = static_cast<int>(rng() % q);
      t.add.assign(q, std::vector<int>(q));
      t.mul.assign(q, std::vector<int>(q));
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
          t.add[a][b] = static_cast<int>(rng() % q);
          t.mul[a][b] = static_cast<int>(rng() % q);
        }
      const auto report = check_axioms(t);
      for (const auto& v : report.verdicts) {
        if (!v.holds) CHECK(witness_reproduces(t, v.axiom, v.witness));
      }
    }
  }

  TEST_CASE("accepted semirings are distributive, entire and antinegative") {
    for (int q = 2; q <= 6; ++q) {
      const auto s = builtin_chain(q);
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
          if (a != 0 && b != 0) CHECK(s.mul(a, b) != 0);
          if (a != 0 || b != 0) CHECK(s.add(a, b) != 0);
          for (int c = 0; c < q; ++c) {
            CHECK(s.mul(a, s.add(b, c)) == s.add(s.mul(a, b), s.mul(a, c)));
            CHECK(s.mul(s.add(a, b), c) == s.add(s.mul(a, c), s.mul(b, c)));
          }
        }
    }
  }

  TEST_CASE("load from JSON") {
    const auto b = load_semiring(semiring_to_json(builtin_boolean().tables()));
    CHECK(b == builtin_boolean());
    CHECK(load_semiring_file(ZDIM_TEST_DATA "/boolean.json") == builtin_boolean());
    CHECK(load_semiring_file(ZDIM_TEST_DATA "/chain3.json") == builtin_chain(3));
    try {
      load_semiring_file(ZDIM_TEST_DATA "/mod4.json");
      FAIL("expected AxiomViolation");
    } catch (const AxiomViolation& e) {
      CHECK(e.report().verdict(Axiom::kAntinegative).witness == std::vector{1, 3});
    }
    CHECK_THROWS_AS(load_semiring_file(ZDIM_TEST_DATA "/bad_cell.json"), InputError);
    CHECK_THROWS_AS(load_semiring_file(ZDIM_TEST_DATA "/missing.json"), InputError);
    CHECK_THROWS_AS(load_semiring(nlohmann::json{{"order", 2}}), InputError);
  }
}
