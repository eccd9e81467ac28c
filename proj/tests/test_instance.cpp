#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "partcount/instance.hpp"
#include "partcount/rng.hpp"

using namespace partcount;

TEST_CASE("plain parsing") {
  const Instance inst = parse_instance("1 2 3 4", InstanceFormat::kPlain);
  CHECK(inst.values() == std::vector<std::uint64_t>{1, 2, 3, 4});
  CHECK_FALSE(inst.constraint());

  const Instance with_c = parse_instance("1 2 3 4\nC=2\n", InstanceFormat::kPlain);
  CHECK(with_c.constraint() == 2);

  CHECK_THROWS_AS(parse_instance("0 3", InstanceFormat::kPlain), ParseError);
  CHECK_THROWS_AS(parse_instance("", InstanceFormat::kPlain), ParseError);
  CHECK_THROWS_AS(parse_instance("1 2\nC=x", InstanceFormat::kPlain), ParseError);
  CHECK_THROWS_AS(parse_instance("1 -2 3", InstanceFormat::kPlain), ParseError);
  CHECK_THROWS_AS(parse_instance("1 2.5", InstanceFormat::kPlain), ParseError);
  CHECK_THROWS_AS(parse_instance("1 2\nC=1\nC=2", InstanceFormat::kPlain), ParseError);
}

TEST_CASE("json parsing") {
  const Instance inst = parse_instance(R"({"a":[1,1,1,4]})", InstanceFormat::kJson);
  CHECK(inst.values() == std::vector<std::uint64_t>{1, 1, 1, 4});

  const Instance with_c =
      parse_instance(R"({"a":[1,2,3,4],"constraint":0})", InstanceFormat::kJson);
  REQUIRE(with_c.constraint());
  CHECK(*with_c.constraint() == 0);

  CHECK_THROWS_AS(parse_instance(R"({"a":[0,3]})", InstanceFormat::kJson), ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"a":[1.5]})", InstanceFormat::kJson), ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"a":[]})", InstanceFormat::kJson), ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"a":[1],"bogus":1})", InstanceFormat::kJson),
                  ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"a":[1,2],"constraint":5})", InstanceFormat::kJson),
                  ParseError);
  CHECK_THROWS_AS(parse_instance(R"([1,2,3])", InstanceFormat::kJson), ParseError);
  CHECK_THROWS_AS(parse_instance("{", InstanceFormat::kJson), ParseError);
}

TEST_CASE("auto format detection") {
  CHECK(parse_instance(R"(  {"a":[7]})", InstanceFormat::kAuto).values()[0] == 7);
  CHECK(parse_instance("7 9", InstanceFormat::kAuto).values()[1] == 9);
}

TEST_CASE("size and sum ceilings") {
  std::vector<std::uint64_t> too_many(31, 1);
  CHECK_THROWS_AS(Instance(too_many, std::nullopt), ParseError);
  std::vector<std::uint64_t> ok(30, 1);
  CHECK_NOTHROW(Instance(ok, std::nullopt));
  CHECK_THROWS_AS(Instance({std::uint64_t{1} << 32}, std::nullopt), ParseError);
  CHECK_THROWS_AS(Instance({(std::uint64_t{1} << 32) - 1, 1}, std::nullopt),
                  ParseError);
  CHECK_NOTHROW(Instance({(std::uint64_t{1} << 32) - 1}, std::nullopt));
}

TEST_CASE("derived parameters") {
  SUBCASE("{1,2,3,4}") {
    const auto p = derive_params(Instance({1, 2, 3, 4}, std::nullopt));
    CHECK(p.sum == 10);
    CHECK(p.delta == 0);
    CHECK(p.modulus == 11);
    CHECK(p.number_qubits == 4);
  }
  SUBCASE("{1,1,1,4}") {
    const auto p = derive_params(Instance({1, 1, 1, 4}, std::nullopt));
    CHECK(p.sum == 7);
    CHECK(p.delta == 1);
    CHECK(p.modulus == 9);
    CHECK(p.number_qubits == 4);
  }
  SUBCASE("{1}") {
    const auto p = derive_params(Instance({1}, std::nullopt));
    CHECK(p.sum == 1);
    CHECK(p.delta == 1);
    CHECK(p.modulus == 3);
    CHECK(p.number_qubits == 2);
  }
  SUBCASE("cardinality modulus") {
    const auto p = derive_params(Instance({1, 2, 3, 4}, 2));
    REQUIRE(p.cardinality_modulus);
    CHECK(*p.cardinality_modulus == 7);
  }
  SUBCASE("just past a power of two") {
    // M = B + delta + 1 is always odd; 17 needs five qubits.
    const auto p = derive_params(Instance({3, 3, 4, 5}, std::nullopt));  // B=15
    CHECK(p.modulus == 17);
    CHECK(p.number_qubits == 5);
  }
  SUBCASE("just under a power of two") {
    const auto p = derive_params(Instance({3, 3, 4, 4}, std::nullopt));  // B=14
    CHECK(p.modulus == 15);
    CHECK(p.number_qubits == 4);
  }
}

TEST_CASE("derive invariants on random instances") {
  SplitMix64 rng(0xABCD1234);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.next() % 12);
    std::vector<std::uint64_t> values(n);
    for (auto& v : values) v = rng.next_in(50);
    const Instance inst(values, std::nullopt);
    const auto p = derive_params(inst);
    CHECK(p.delta == static_cast<int>(p.sum % 2));
    CHECK(p.modulus == p.sum + p.delta + 1);
    CHECK(p.modulus <= (std::uint64_t{1} << p.number_qubits));
    if (p.number_qubits > 1) {
      CHECK(p.modulus > (std::uint64_t{1} << (p.number_qubits - 1)));
    }

    // Order independence under a deterministic shuffle.
    std::vector<std::uint64_t> shuffled = values;
    for (std::size_t i = shuffled.size(); i > 1; --i) {
      std::swap(shuffled[i - 1], shuffled[rng.next() % i]);
    }
    const auto q = derive_params(Instance(shuffled, std::nullopt));
    CHECK(q.sum == p.sum);
    CHECK(q.delta == p.delta);
    CHECK(q.modulus == p.modulus);
    CHECK(q.number_qubits == p.number_qubits);
  }
}

TEST_CASE("verify_partition") {
  const Instance inst({1, 2, 3, 4}, std::nullopt);
  CHECK(verify_partition(inst, SpinConfig{{+1, -1, -1, +1}}));
  CHECK_FALSE(verify_partition(inst, SpinConfig{{+1, +1, +1, +1}}));

  const Instance constrained({1, 2, 3, 4}, 2);
  CHECK_FALSE(verify_partition(constrained, SpinConfig{{+1, -1, -1, +1}}));

  CHECK_THROWS_AS(verify_partition(inst, SpinConfig{{+1, -1}}),
                  std::invalid_argument);
}

TEST_CASE("spin configuration properties") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.next() % 10);
    std::vector<std::uint64_t> values(n);
    for (auto& v : values) v = rng.next_in(40);
    Instance inst(values, std::nullopt);
    const auto params = derive_params(inst);

    SpinConfig cfg;
    cfg.spins.resize(n);
    for (auto& s : cfg.spins) s = rng.next() & 1 ? 1 : -1;

    const std::int64_t sum = signed_sum(inst, cfg);
    CHECK(std::abs(sum) <= static_cast<std::int64_t>(params.sum));
    std::int64_t card = 0;
    for (auto s : cfg.spins) card += s;
    CHECK(((card % 2) + 2) % 2 == n % 2);

    // Global flip symmetry for delta = 0 unconstrained instances.
    if (params.delta == 0) {
      SpinConfig flipped = cfg;
      for (auto& s : flipped.spins) s = -s;
      CHECK(verify_partition(inst, cfg) == verify_partition(inst, flipped));
    }
  }
}

TEST_CASE("odd-parity constraint accepted") {
  // C with parity different from n is legal; the count is simply zero.
  CHECK_NOTHROW(Instance({1, 2, 3, 4}, 1));
}

TEST_CASE("parser survives garbage input") {
  const char* cases[] = {
      "",
      "   \n\n  ",
      "C=2",
      "1 2 3\nC=",
      "999999999999999999999999",
      "18446744073709551616",  // 2^64
      "{\"a\":[true]}",
      "{\"a\":[[1]]}",
      "{\"a\":1}",
      "{\"a\":[1], \"constraint\": \"x\"}",
      "{\"a\":[1], \"constraint\": null}",
      "\x01\x02\xff garbage",
      "1 2 three",
  };
  for (const char* text : cases) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_instance(text, InstanceFormat::kAuto), ParseError);
  }
}
