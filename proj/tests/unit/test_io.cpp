#include <doctest.h>

#include "bnf/io.hpp"
#include "instances.hpp"

using namespace bnf;
using bnf::testing::Rng;
using Q = QComplex;

namespace {

const char* kHeader = "VFAM/1\nn 1\nN 1\ntrunc 3\nmode rational\n";

int error_line(const std::string& text) {
  try {
    parse_family(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("family file basics") {
  const auto empty = parse_family(kHeader);
  CHECK(empty.n == 1);
  CHECK(empty.N == 1);
  CHECK(empty.as<Q>().member(1).empty());
  CHECK(serialize_family(empty) == kHeader);

  const auto one = parse_family(std::string(kHeader) + "1  1  1^2  1  0\n");
  CHECK(one.as<Q>().member(1) == monomial_field<Q>(1, 3, MultiIndex{{1, 2}}, 1, Q{1}));

  const std::string third = std::string(kHeader) + "1  -1  -1,1  1/3  -2/7\n";
  CHECK(serialize_family(parse_family(third)) == third);

  CHECK(error_line(std::string(kHeader) + "1  1  1^2  1  0\n1  1  1^2  2  0\n") == 7);
  CHECK(error_line(std::string(kHeader) + "1  1  1^4  1  0\n") == 6);
  CHECK(error_line(std::string(kHeader) + "1  2  1  1  0\n") == 6);
  CHECK(error_line(std::string(kHeader) + "2  1  1  1  0\n") == 6);
  CHECK(error_line(std::string(kHeader) + "1  1  1  x  0\n") == 6);
  CHECK(error_line("VFAM/2\n") == 1);
  CHECK(error_line("VFAM/1\nn 1\n1 1 1 1 0\n") == 3);
  CHECK_THROWS_AS(parse_family("VFAM/1\nn 1\n"), ParseError);
}

TEST_CASE("family file round trips") {
  Rng rng(31);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 1 + rep % 3;
    std::vector<VectorField<Q>> members;
    for (int i = 0; i < 2; ++i) members.push_back(testing::random_field<Q>(rng, n, 0, 5, 8, 5));
    const Family<Q> f(n, 5, members);
    const std::string text = serialize_family(f);
    const auto back = parse_family(text);
    CHECK(back.as<Q>() == f);
    CHECK(serialize_family(back) == text);

    std::vector<VectorField<DComplex>> dm;
    for (int i = 0; i < 2; ++i) dm.push_back(testing::random_field<DComplex>(rng, n, 0, 5, 8, 5));
    const Family<DComplex> g(n, 5, dm);
    const std::string gt = serialize_family(g, WeightTable::geometric(n, 1.5));
    const auto gb = parse_family(gt);
    CHECK(gb.mode == Mode::floating);
    CHECK(gb.as<DComplex>() == g);
    CHECK(gb.weights.has_value());
    CHECK(serialize_family(gb) == gt);
  }
}

TEST_CASE("ledger and norm table") {
  LedgerRow a;
  a.k = 0;
  a.m = 1;
  a.norm_r = 0.5;
  a.eps_k = 0.25;
  a.r_k = 0.125;
  a.i1_ok = true;
  a.r11 = 1.0;
  a.r12 = 0.0;
  a.r2 = 2.0;
  a.r3 = 3.0;
  LedgerRow b;
  b.k = 1;
  b.m = 2;
  const std::vector<LedgerRow> rows{a, b};
  const std::string text = ledger_jsonl(rows);
  CHECK(text ==
        "{\"k\":0,\"m\":1,\"norm_R\":0.5,\"norm_N\":0.0,\"norm_DN\":0.0,\"eps_k\":0.25,\"r_k\":0.125,"
        "\"i1_ok\":true,\"i2_ok\":false,\"i3_ok\":false,\"r11_norm\":1.0,\"r12_norm\":0.0,\"r2_norm\":2.0,"
        "\"r3_norm\":3.0}\n"
        "{\"k\":1,\"m\":2,\"norm_R\":0.0,\"norm_N\":0.0,\"norm_DN\":0.0,\"eps_k\":0.0,\"r_k\":0.0,"
        "\"i1_ok\":false,\"i2_ok\":false,\"i3_ok\":false,\"r11_norm\":null,\"r12_norm\":null,\"r2_norm\":null,"
        "\"r3_norm\":null}\n");
  const std::vector<NormReport> norms{{"X1", 0.5, 1.25, 1.0, Mode::rational}};
  CHECK(norm_table_csv(norms) == "id,r,box,sample,mode\nX1,0.5,1.25,1,rational\n");
}

TEST_CASE("config file") {
  const auto c = parse_config(R"({"steps": 2, "trunc": 8, "method": "both", "b": 21, "w1": [1, 2]})");
  CHECK(c.run.steps == 2);
  CHECK(c.run.trunc == 8);
  CHECK(c.run.method == SolverMethod::both);
  CHECK(c.b.value() == 21);
  CHECK(c.run.weights.w2 == std::vector<double>{1, 2});
  CHECK_THROWS_AS(parse_config(R"({"stepz": 2})"), InputError);
  CHECK_THROWS_AS(parse_config("[1]"), InputError);
  CHECK_THROWS_AS(parse_config("{"), InputError);
}
